use rand::Rng;
use serde::{Deserialize, Serialize};

use super::surfaces::{construct_surface, symmetric_d8_matrix, SurfaceRecipe};
use super::{degenerate, with_retries, Attempted};
use crate::error::{Error, Result};
use crate::idealops::{eliminate, random_scalar, CoordinateChange, Ideal, Seed};
use crate::invariants::dimension_degree;
use crate::linalg::DenseMatrix;
use crate::polyring::{Field, Monomial};

/// Draws for the completion of a projection center to a basis.
const COMPLETION_DRAWS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectionSpec {
    pub recipe: SurfaceRecipe,
    /// Dimension of the center plus one: 1 for a point, 2 for a line, 3 for a plane.
    pub times: usize,
    pub seed: Seed,
}

/// Image of `V(I)` under the projection from the span of `center` (points
/// given by coordinate vectors). The center is completed to a basis, the
/// ideal is rewritten in that basis and the center coordinates are
/// eliminated; the image lives in the ring of the remaining variables.
pub fn project_with_center<F: Field>(ideal: &Ideal<F>, center: &[Vec<F::Elem>], seed: Seed) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let field = ring.field();
    let n = ring.nvars();
    let k = center.len();
    if k == 0 || k >= n {
        return Err(Error::OutOfRange(format!("a center of {k} points in {n} variables")));
    }
    if let Some(p) = center.iter().find(|p| p.len() != n) {
        return Err(Error::LengthMismatch { expected: n, got: p.len() });
    }
    let mut rng = seed.rng("projection completion");
    for _ in 0..COMPLETION_DRAWS {
        // Column j of the matrix is the j-th new basis vector.
        let matrix: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                (0..n).map(|j| if j < k { center[j][i].clone() } else { random_scalar(&mut rng, field, 100) }).collect()
            })
            .collect();
        let Ok(change) = CoordinateChange::from_matrix(field, matrix) else { continue };
        let moved = change.apply(ideal)?;
        let names: Vec<&str> = ring.vars()[..k].iter().map(String::as_str).collect();
        return eliminate(&moved, &names);
    }
    Err(degenerate("center points are linearly dependent"))
}

/// Projection from a seeded random center of `times` points.
pub fn project_ideal<F: Field>(ideal: &Ideal<F>, times: usize, seed: Seed) -> Result<Ideal<F>> {
    let field = ideal.ring().field();
    let n = ideal.ring().nvars();
    let mut rng = seed.rng("projection center");
    let center: Vec<Vec<F::Elem>> =
        (0..times).map(|_| (0..n).map(|_| random_scalar(&mut rng, field, 100)).collect()).collect();
    project_with_center(ideal, &center, seed)
}

fn require_isomorphic<F: Field>(before: (i64, i64), image: &Ideal<F>) -> Result<()> {
    let after = dimension_degree(image)?;
    if after != before {
        return Err(degenerate(format!("projection changed (dimension, degree) from {before:?} to {after:?}")));
    }
    Ok(())
}

/// The surface of `spec.recipe` projected from a generic center; the image
/// must keep the dimension and degree.
pub fn project_surface<F: Field>(spec: ProjectionSpec, field: &F) -> Result<Attempted<Ideal<F>>> {
    let n = spec.recipe.kind.ambient_dimension();
    if spec.times == 0 || spec.times > 3 || spec.times + 3 > n {
        return Err(Error::OutOfRange(format!(
            "cannot project {} from {} points",
            spec.recipe.kind.name(),
            spec.times
        )));
    }
    let surface = construct_surface(spec.recipe, field)?.value;
    let before = dimension_degree(&surface)?;
    with_retries(spec.seed.derive("projection"), "projection", |seed| {
        let image = project_ideal(&surface, spec.times, seed)?;
        require_isomorphic(before, &image)?;
        image.minimalized()
    })
}

/// The quadric `q(v) = lambda(v v^T)` whose zeros `v` give the points `v v^T`
/// of the symmetric determinantal surface, and the linear map `x -> A(x)`.
struct SymmetricModel<F: Field> {
    field: F,
    /// Rows indexed by the entries `(a, b)`, `a <= b`; columns by variables.
    map: Vec<Vec<F::Elem>>,
    functional: Vec<F::Elem>,
}

fn upper_entries() -> Vec<(usize, usize)> {
    (0..4).flat_map(|a| (a..4).map(move |b| (a, b))).collect()
}

impl<F: Field> SymmetricModel<F> {
    fn new(matrix: &crate::polyring::PolyMatrix<F>) -> Result<Self> {
        let field = matrix.ring().field().clone();
        let n = matrix.ring().nvars();
        let map: Vec<Vec<F::Elem>> = upper_entries()
            .into_iter()
            .map(|(a, b)| (0..n).map(|j| matrix.get(a, b).coeff(&Monomial::var(j, 1))).collect())
            .collect();
        // The image of the 9 coordinates is a hyperplane of the 10 entries.
        let transposed: Vec<Vec<F::Elem>> = (0..n).map(|j| map.iter().map(|row| row[j].clone()).collect()).collect();
        let kernel = DenseMatrix::from_rows(&field, map.len(), transposed).kernel();
        if kernel.len() != 1 {
            return Err(degenerate("symmetric matrix entries are not independent"));
        }
        Ok(SymmetricModel { field, map, functional: kernel.into_iter().next().unwrap() })
    }

    fn q(&self, v: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        upper_entries()
            .into_iter()
            .zip(&self.functional)
            .fold(f.zero(), |acc, ((a, b), l)| f.add(&acc, &f.mul(l, &f.mul(&v[a], &v[b]))))
    }

    /// Some zero of `q`, solving for the last coordinate.
    fn first_zero(&self, rng: &mut rand_chacha::ChaCha8Rng) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        for _ in 0..200 {
            let mut v: Vec<F::Elem> = (0..3).map(|_| random_scalar(rng, f, 100)).collect();
            v.push(f.zero());
            // q(v + s e_3) = a s^2 + b s + c
            let c = self.q(&v);
            let mut e = v.clone();
            e[3] = f.one();
            let q1 = self.q(&e);
            e[3] = f.neg(&f.one());
            let qm = self.q(&e);
            let two = f.from_i64(2);
            let a = f.div(&f.sub(&f.add(&q1, &qm), &f.mul(&two, &c)), &two)?;
            let b = f.div(&f.sub(&q1, &qm), &two)?;
            if f.is_zero(&a) {
                continue;
            }
            let disc = f.sub(&f.mul(&b, &b), &f.mul(&f.from_i64(4), &f.mul(&a, &c)));
            let Some(root) = f.sqrt(&disc) else { continue };
            v[3] = f.div(&f.sub(&root, &b), &f.mul(&two, &a))?;
            if v.iter().any(|x| !f.is_zero(x)) {
                return Some(v);
            }
        }
        None
    }

    /// Another zero on the line through `base` in direction `w`.
    fn second_zero(&self, base: &[F::Elem], w: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let qw = self.q(w);
        if f.is_zero(&qw) {
            return None;
        }
        let sum: Vec<F::Elem> = base.iter().zip(w).map(|(a, b)| f.add(a, b)).collect();
        let s = f.neg(&f.div(&f.sub(&self.q(&sum), &qw), &qw)?);
        Some(base.iter().zip(w).map(|(a, b)| f.add(a, &f.mul(&s, b))).collect())
    }

    /// Coordinates `x` with `A(x) = v v^T`.
    fn point(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let n = self.map[0].len();
        let rows: Vec<Vec<F::Elem>> = upper_entries()
            .into_iter()
            .zip(&self.map)
            .map(|((a, b), row)| {
                let mut r = row.clone();
                r.push(f.mul(&v[a], &v[b]));
                r
            })
            .collect();
        let mut m = DenseMatrix::from_rows(f, n + 1, rows);
        let pivots = m.rref();
        if pivots.contains(&n) {
            return None;
        }
        let mut x = vec![f.zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = m.get(r, n).clone();
        }
        Some(x)
    }

    fn rank_at(&self, x: &[F::Elem]) -> usize {
        let f = &self.field;
        let mut sym = DenseMatrix::zeros(f, 4, 4);
        for ((a, b), row) in upper_entries().into_iter().zip(&self.map) {
            let v = row.iter().zip(x).fold(f.zero(), |acc, (c, y)| f.add(&acc, &f.mul(c, y)));
            sym.set(a, b, v.clone());
            sym.set(b, a, v);
        }
        sym.rank()
    }
}

/// The degree 8 surface `P^1 x P^1` projected from a point of a plane spanned
/// by three of its points (rank 3 locus, off the secant variety).
pub fn project_from_trisecant_point<F: Field>(field: &F, seed: Seed) -> Result<Attempted<Ideal<F>>> {
    with_retries(seed, "trisecant-plane projection", |seed| {
        let matrix = symmetric_d8_matrix(field, seed)?;
        let surface = Ideal::new(matrix.ring(), matrix.minors(2)?)?;
        let before = dimension_degree(&surface)?;
        if before != (2, 8) {
            return Err(degenerate(format!("surface came out as {before:?}")));
        }
        let model = SymmetricModel::new(&matrix)?;
        let mut rng = seed.rng("trisecant points");
        let v0 = model.first_zero(&mut rng).ok_or_else(|| degenerate("no point found on the quadric"))?;
        let mut vs = vec![v0.clone()];
        while vs.len() < 3 {
            let w: Vec<F::Elem> = (0..4).map(|_| random_scalar(&mut rng, field, 100)).collect();
            if let Some(v) = model.second_zero(&v0, &w) {
                vs.push(v);
            }
            if rng.random_range(0..1000) == 0 {
                return Err(degenerate("could not find three points"));
            }
        }
        let points: Vec<Vec<F::Elem>> =
            vs.iter().map(|v| model.point(v)).collect::<Option<_>>().ok_or_else(|| degenerate("inconsistent point"))?;
        let weights: Vec<F::Elem> = (0..3).map(|_| random_scalar(&mut rng, field, 100)).collect();
        let center: Vec<F::Elem> = (0..points[0].len())
            .map(|i| (0..3).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&weights[k], &points[k][i]))))
            .collect();
        if model.rank_at(&center) != 3 {
            return Err(degenerate("center lies on the secant variety"));
        }
        let image = project_with_center(&surface, &[center], seed)?;
        require_isomorphic(before, &image)?;
        image.minimalized()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delpezzo::SurfaceKind;
    use crate::invariants::generator_census;
    use crate::polyring::{PolyRing, PrimeField};

    #[test]
    fn projecting_a_twisted_cubic_from_a_point() {
        let r = PolyRing::with_indexed_vars("x", 4, PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, &["x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"]).unwrap();
        let image = project_ideal(&i, 1, Seed(1)).unwrap();
        assert_eq!(image.ring().nvars(), 3);
        // A plane cubic curve.
        assert_eq!(dimension_degree(&image).unwrap(), (1, 3));
        assert_eq!(image.generators().len(), 1);
    }

    #[test]
    fn projected_sextic() {
        let spec = ProjectionSpec { recipe: SurfaceRecipe::new(SurfaceKind::D6, Seed(7)), times: 1, seed: Seed(7) };
        let image = project_surface(spec, &PrimeField::default()).unwrap().value;
        assert_eq!(image.ring().nvars(), 6);
        assert_eq!(generator_census(&image).unwrap().to_string(), "{2:2, 3:7}");
    }
}
