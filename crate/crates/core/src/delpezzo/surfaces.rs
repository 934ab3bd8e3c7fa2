use serde::{Deserialize, Serialize};

use super::{degenerate, with_retries, Attempted};
use crate::error::Result;
use crate::idealops::{ideal_from_parametrization, random_scalar, Ideal, Seed};
use crate::invariants::{dimension_degree, generator_census, GeneratorCensus};
use crate::polyring::{Field, Monomial, MonomialOrder, PolyMatrix, PolyRing, Polynomial, Ring};

/// Coefficients of random linear forms are drawn from `[-7, 7]`.
const COEFF_BOUND: i64 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SurfaceKind {
    D6,
    D7,
    D8,
    F1,
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 4] = [SurfaceKind::D6, SurfaceKind::D7, SurfaceKind::D8, SurfaceKind::F1];

    /// `N` with the anticanonical model in `P^N`.
    pub fn ambient_dimension(self) -> usize {
        match self {
            SurfaceKind::D6 => 6,
            SurfaceKind::D7 => 7,
            SurfaceKind::D8 | SurfaceKind::F1 => 8,
        }
    }

    /// Degree in the anticanonical embedding, equal to `K^2`.
    pub fn degree(self) -> i64 {
        self.ambient_dimension() as i64
    }

    pub fn k_squared(self) -> i64 {
        self.degree()
    }

    /// Topological Euler number `12 - K^2`.
    pub fn euler_number(self) -> i64 {
        12 - self.degree()
    }

    /// Number of quadrics minimally generating the ideal.
    pub fn quadric_count(self) -> usize {
        let n = self.ambient_dimension();
        (n - 1) * (n - 2) / 2 - 1
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::D6 => "D6",
            SurfaceKind::D7 => "D7",
            SurfaceKind::D8 => "D8",
            SurfaceKind::F1 => "F1",
        }
    }

    pub fn parse(s: &str) -> Option<SurfaceKind> {
        SurfaceKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceRecipe {
    pub kind: SurfaceKind,
    pub seed: Seed,
}

impl SurfaceRecipe {
    pub fn new(kind: SurfaceKind, seed: Seed) -> Self {
        SurfaceRecipe { kind, seed }
    }
}

pub(crate) fn ambient_ring<F: Field>(field: &F, n: usize) -> Result<Ring<F>> {
    PolyRing::with_indexed_vars("x", n + 1, field.clone())
}

fn random_linear_matrix<F: Field>(ring: &Ring<F>, rows: usize, cols: usize, seed: Seed) -> Result<PolyMatrix<F>> {
    let mut rng = seed.rng("linear matrix");
    let field = ring.field();
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    Polynomial::from_terms(
                        ring,
                        (0..ring.nvars()).map(|i| (Monomial::var(i, 1), random_scalar(&mut rng, field, COEFF_BOUND))),
                    )
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_rows(ring, entries)
}

/// `A + A^T` for a seeded random `4 x 4` matrix of linear forms on `P^8`; its
/// `2 x 2` minors cut out the degree 8 del Pezzo surface `P^1 x P^1`.
pub fn symmetric_d8_matrix<F: Field>(field: &F, seed: Seed) -> Result<PolyMatrix<F>> {
    let ring = ambient_ring(field, 8)?;
    let a = random_linear_matrix(&ring, 4, 4, seed)?;
    a.add(&a.transpose())
}

fn raw_ideal<F: Field>(kind: SurfaceKind, field: &F, seed: Seed) -> Result<Ideal<F>> {
    match kind {
        SurfaceKind::D6 => {
            let ring = ambient_ring(field, 6)?;
            let a = random_linear_matrix(&ring, 3, 3, seed)?;
            Ideal::new(&ring, a.minors(2)?)
        }
        SurfaceKind::D7 => {
            let ring = ambient_ring(field, 7)?;
            let a = random_linear_matrix(&ring, 5, 5, seed)?;
            let sym = a.add(&a.transpose())?;
            Ideal::new(&ring, sym.submatrix(&[1, 2, 3], &[0, 1, 2, 3])?.minors(2)?)
        }
        SurfaceKind::D8 => {
            let m = symmetric_d8_matrix(field, seed)?;
            Ideal::new(m.ring(), m.minors(2)?)
        }
        SurfaceKind::F1 => {
            // Cubics on P^2 through the point (a : b : 1).
            let plane = PolyRing::new(&["s0", "s1", "s2"], field.clone(), MonomialOrder::DegRevLex)?;
            let mut rng = seed.rng("blown-up point");
            let point =
                [random_scalar(&mut rng, field, COEFF_BOUND), random_scalar(&mut rng, field, COEFF_BOUND), field.one()];
            let base = Monomial::var(2, 3);
            let forms: Vec<Polynomial<F>> = Monomial::all_of_degree(3, 3)
                .into_iter()
                .filter(|m| *m != base)
                .map(|m| {
                    let value =
                        (0..3).fold(field.one(), |acc, i| (0..m.exp(i)).fold(acc, |a, _| field.mul(&a, &point[i])));
                    Polynomial::monomial(&plane, m, field.one()).sub(&Polynomial::monomial(&plane, base, value))
                })
                .collect();
            ideal_from_parametrization(&forms, &ambient_ring(field, 8)?)
        }
    }
}

/// Checks dimension 2, the expected degree and the quadric census.
fn validate<F: Field>(kind: SurfaceKind, ideal: &Ideal<F>) -> Result<()> {
    let (dim, deg) = dimension_degree(ideal)?;
    if (dim, deg) != (2, kind.degree()) {
        return Err(degenerate(format!("{} came out with dimension {dim} and degree {deg}", kind.name())));
    }
    let census = generator_census(ideal)?;
    let expected = GeneratorCensus::from_pairs(&[(2, kind.quadric_count())]);
    if census != expected {
        return Err(degenerate(format!("{} has census {census}, expected {expected}", kind.name())));
    }
    Ok(())
}

/// The surface's ideal, with the seed actually used.
pub fn construct_surface<F: Field>(recipe: SurfaceRecipe, field: &F) -> Result<Attempted<Ideal<F>>> {
    with_retries(recipe.seed, recipe.kind.name(), |seed| {
        let ideal = raw_ideal(recipe.kind, field, seed)?.minimalized()?;
        validate(recipe.kind, &ideal)?;
        Ok(ideal)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PrimeField;

    #[test]
    fn kind_metadata() {
        let counts: Vec<usize> = SurfaceKind::ALL.iter().map(|k| k.quadric_count()).collect();
        assert_eq!(counts, vec![9, 14, 20, 20]);
        assert_eq!(SurfaceKind::F1.euler_number(), 4);
        assert_eq!(SurfaceKind::parse("d7"), Some(SurfaceKind::D7));
    }

    #[test]
    fn sextic_surface() {
        let s = construct_surface(SurfaceRecipe::new(SurfaceKind::D6, Seed(7)), &PrimeField::default()).unwrap();
        assert_eq!(dimension_degree(&s.value).unwrap(), (2, 6));
        assert_eq!(s.value.ring().nvars(), 7);
    }
}
