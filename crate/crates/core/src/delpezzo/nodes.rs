use serde::Serialize;

use super::{degenerate, with_retries, Attempted};
use crate::error::{Error, Result};
use crate::groebner::reduce;
use crate::idealops::{
    jacobian_ideal, random_scalar, saturate_by_element, saturate_irrelevant, CoordinateChange, Ideal, Seed,
};
use crate::invariants::{dimension_degree, hilbert_series, minimal_generators, HilbertSeries};
use crate::linalg::{DenseMatrix, IncrementalEchelon};
use crate::polyring::{Field, Monomial, Polynomial, Ring};

/// Coefficient range for random multipliers.
const COEFF_BOUND: i64 = 100;

fn random_form<F: Field>(ring: &Ring<F>, degree: u32, rng: &mut rand_chacha::ChaCha8Rng) -> Polynomial<F> {
    let field = ring.field();
    Polynomial::from_terms(
        ring,
        Monomial::all_of_degree(ring.nvars(), degree).into_iter().map(|m| (m, random_scalar(rng, field, COEFF_BOUND))),
    )
}

/// A random element of `I_d`, as a combination of the minimal generators of
/// degree at most `d` with random form coefficients.
pub(crate) fn random_member<F: Field>(ideal: &Ideal<F>, degree: u32, seed: Seed, tag: &str) -> Result<Polynomial<F>> {
    let gens = minimal_generators(ideal)?;
    let ring = ideal.ring();
    let mut rng = seed.rng(tag);
    let mut f = Polynomial::zero(ring);
    for g in gens.iter().filter(|g| g.degree().is_some_and(|e| e <= degree)) {
        let e = g.degree().expect("nonzero");
        f = f.add(&random_form(ring, degree - e, &mut rng).mul(g));
    }
    if f.is_zero() {
        return Err(Error::InvalidInput(format!("the ideal has no elements of degree {degree}")));
    }
    Ok(f)
}

/// `k` random members of `I` of the given degrees, checked to cut a complete
/// intersection of the expected dimension and degree.
pub fn random_complete_intersection<F: Field>(ideal: &Ideal<F>, multidegree: &[u32], seed: Seed) -> Result<Ideal<F>> {
    ideal.require_homogeneous()?;
    let n = ideal.ring().nvars() as i64;
    let k = multidegree.len() as i64;
    if k == 0 || k >= n - 1 {
        return Err(Error::OutOfRange(format!("{k} hypersurfaces in {n} variables")));
    }
    let forms = multidegree
        .iter()
        .enumerate()
        .map(|(idx, &d)| random_member(ideal, d, seed, &format!("complete intersection {idx}")))
        .collect::<Result<Vec<_>>>()?;
    let ci = Ideal::new(ideal.ring(), forms)?;
    let expected = (n - 1 - k, multidegree.iter().map(|&d| d as i64).product::<i64>());
    let got = dimension_degree(&ci)?;
    if got != expected {
        return Err(degenerate(format!("complete intersection came out as {got:?}, expected {expected:?}")));
    }
    Ok(ci)
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeReport<F: Field> {
    #[serde(skip)]
    pub surface: Ideal<F>,
    pub multidegree: Vec<u32>,
    pub seed: crate::idealops::Seed,
    #[serde(skip)]
    pub complete_intersection: Ideal<F>,
    /// The singular scheme, saturated.
    #[serde(skip)]
    pub singular: Ideal<F>,
    pub dimension: i64,
    pub degree: i64,
    pub nodes_on_surface: bool,
    /// Certified when `Some(true)`; `None` if no test was possible.
    pub reduced: Option<bool>,
}

fn same_polynomial(a: &HilbertSeries, b: &HilbertSeries) -> bool {
    a.krull_dimension() == b.krull_dimension()
        && (0..=a.krull_dimension() as i64).all(|d| a.hilbert_polynomial(d) == b.hilbert_polynomial(d))
}

/// The singular locus of a seeded complete intersection of the given
/// multidegree containing `V(I)`. Nodes are counted as the degree of the
/// zero-dimensional singular scheme.
pub fn count_nodes<F: Field>(ideal: &Ideal<F>, multidegree: &[u32], seed: Seed) -> Result<Attempted<NodeReport<F>>> {
    with_retries(seed, "node count", |s| {
        let ci = random_complete_intersection(ideal, multidegree, s)?;
        let jac = jacobian_ideal(ci.generators(), multidegree.len())?;
        let hs = hilbert_series(&jac)?;
        if hs.krull_dimension() == 0 {
            return Err(degenerate("complete intersection is smooth"));
        }
        if hs.projective_dimension() != 0 {
            return Err(degenerate(format!("singular locus has dimension {}", hs.projective_dimension())));
        }
        // V(J) lies on V(I) iff adding I does not change the Hilbert polynomial.
        let with_surface = hilbert_series(&jac.sum(ideal)?)?;
        let nodes_on_surface = same_polynomial(&hs, &with_surface);
        let singular = saturate_irrelevant(&jac, s)?.ideal;
        let reduced = is_reduced_points(&singular, s)?;
        Ok(NodeReport {
            surface: ideal.clone(),
            multidegree: multidegree.to_vec(),
            seed: s,
            complete_intersection: ci,
            singular,
            dimension: 0,
            degree: hs.degree(),
            nodes_on_surface,
            reduced,
        })
    })
}

/// Whether a seeded complete intersection of the multidegree containing
/// `V(I)` is smooth.
pub fn check_smooth_ci<F: Field>(ideal: &Ideal<F>, multidegree: &[u32], seed: Seed) -> Result<bool> {
    let ci =
        with_retries(seed, "complete intersection", |s| random_complete_intersection(ideal, multidegree, s))?.value;
    let jac = jacobian_ideal(ci.generators(), multidegree.len())?;
    // Smooth iff the singular scheme is empty: J is primary to the irrelevant ideal.
    Ok(hilbert_series(&jac)?.krull_dimension() == 0)
}

fn poly_trim<F: Field>(f: &F, mut p: Vec<F::Elem>) -> Vec<F::Elem> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

fn poly_rem<F: Field>(f: &F, mut a: Vec<F::Elem>, b: &[F::Elem]) -> Vec<F::Elem> {
    let lead = f.inv(b.last().expect("nonzero divisor")).expect("nonzero");
    while a.len() >= b.len() {
        let c = f.mul(a.last().unwrap(), &lead);
        let shift = a.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            a[shift + k] = f.sub_mul(&a[shift + k], &c, bk);
        }
        a.pop();
        a = poly_trim(f, a);
    }
    a
}

fn poly_gcd_degree<F: Field>(f: &F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> usize {
    let (mut a, mut b) = (poly_trim(f, a), poly_trim(f, b));
    while !b.is_empty() {
        let r = poly_rem(f, a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Reducedness of a saturated zero-dimensional scheme: in an affine chart
/// containing every point, the minimal polynomial of a random linear form
/// acting on the cyclic vector `1` is computed. Degree equal to the length and
/// squarefree certifies `A = k[t]/(p)` reduced; a non-squarefree `p` of full
/// degree certifies non-reducedness. Three forms are tried.
fn is_reduced_points<F: Field>(ideal: &Ideal<F>, seed: Seed) -> Result<Option<bool>> {
    let ring = ideal.ring();
    let field = ring.field();
    let n = ring.nvars();
    let last = n - 1;
    let mut work = ideal.clone();
    let mut gb = work.gb()?;
    if gb.leading_monomials().iter().any(|m| m.exp(last) > 0) {
        let change = CoordinateChange::random(field, n, seed, "affine chart", 100);
        work = change.apply(ideal)?;
        gb = work.gb()?;
        if gb.leading_monomials().iter().any(|m| m.exp(last) > 0) {
            return Ok(None);
        }
    }
    let lms = gb.leading_monomials();
    let affine: Vec<Polynomial<F>> = gb.elements().iter().map(|g| g.set_var_one(last)).collect();
    let top = lms.iter().map(|m| m.degree()).max().unwrap_or(0);
    let standard: Vec<Monomial> = (0..=top)
        .flat_map(|d| Monomial::all_of_degree(last, d))
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .collect();
    let length = standard.len();
    if length == 0 {
        return Ok(Some(true));
    }
    let index: std::collections::HashMap<Monomial, usize> = standard.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let to_vec = |p: &Polynomial<F>| -> Vec<F::Elem> {
        let mut v = vec![field.zero(); length];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let mut rng = seed.rng("separating form");
    for _ in 0..3 {
        let mut ell = Polynomial::constant(ring, random_scalar(&mut rng, field, COEFF_BOUND));
        for i in 0..last {
            ell = ell.add(&Polynomial::var(ring, i).scale(&random_scalar(&mut rng, field, COEFF_BOUND)));
        }
        let mut echelon = IncrementalEchelon::new(field);
        let mut power = Polynomial::one(ring);
        let mut columns = Vec::new();
        loop {
            let v = to_vec(&power);
            columns.push(v.clone());
            if !echelon.insert(v) {
                break;
            }
            power = reduce(&ell.mul(&power), &affine);
        }
        let degree = columns.len() - 1;
        if degree < length {
            continue;
        }
        // Dependency among 1, l, ..., l^degree gives the minimal polynomial.
        let rows: Vec<Vec<F::Elem>> = (0..length).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        let kernel = DenseMatrix::from_rows(field, degree + 1, rows).kernel();
        let p = kernel.into_iter().next().expect("dependent by construction");
        let dp: Vec<F::Elem> =
            p.iter().enumerate().skip(1).map(|(k, c)| field.mul(&field.from_i64(k as i64), c)).collect();
        return Ok(Some(poly_gcd_degree(field, p, dp) == 0));
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkReport<F: Field> {
    #[serde(skip)]
    pub complete_intersection: Ideal<F>,
    #[serde(skip)]
    pub linked: Ideal<F>,
    pub ci_degree: i64,
    pub linked_dimension: i64,
    pub linked_degree: i64,
}

/// The surface linked to `V(I)` by a seeded complete intersection:
/// `CI : I`, computed as `CI : f^∞` for a random `f ∈ I` (the complete
/// intersection is unmixed, so both remove exactly the components on `V(I)`).
pub fn linked_surface<F: Field>(ideal: &Ideal<F>, ci_degrees: &[u32], seed: Seed) -> Result<Attempted<LinkReport<F>>> {
    with_retries(seed, "linkage", |s| {
        let ci = random_complete_intersection(ideal, ci_degrees, s)?;
        let top = minimal_generators(ideal)?.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        let f = random_member(ideal, top, s, "linking element")?;
        let linked = saturate_by_element(&ci, &f)?.ideal.minimalized()?;
        let (ci_dim, ci_degree) = dimension_degree(&ci)?;
        let (linked_dimension, linked_degree) = dimension_degree(&linked)?;
        if linked_dimension != ci_dim {
            return Err(degenerate(format!("linked scheme has dimension {linked_dimension}")));
        }
        Ok(LinkReport { complete_intersection: ci, linked, ci_degree, linked_dimension, linked_degree })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PolyRing, PrimeField};

    #[test]
    fn quadric_through_a_line_is_smooth() {
        let r = PolyRing::with_indexed_vars("x", 4, PrimeField::default()).unwrap();
        let line = Ideal::parse(&r, &["x0", "x1"]).unwrap();
        assert!(check_smooth_ci(&line, &[2], Seed(3)).unwrap());
    }

    #[test]
    fn cubic_threefold_through_a_plane() {
        // x0*a + x1*b is singular where a = b = 0 on the plane: 4 points.
        let r = PolyRing::with_indexed_vars("x", 5, PrimeField::default()).unwrap();
        let plane = Ideal::parse(&r, &["x0", "x1"]).unwrap();
        let report = count_nodes(&plane, &[3], Seed(7)).unwrap().value;
        assert_eq!((report.dimension, report.degree), (0, 4));
        assert!(report.nodes_on_surface);
        assert_eq!(report.reduced, Some(true));
    }

    #[test]
    fn squarefree_test() {
        let f = PrimeField::default();
        // (t-1)^2 (t+2) and its derivative share t-1.
        let p: Vec<u32> = vec![f.from_i64(2), f.from_i64(-3), 0, 1];
        let dp = vec![f.from_i64(-3), 0, f.from_i64(3)];
        assert_eq!(poly_gcd_degree(&f, p, dp), 1);
        let q: Vec<u32> = vec![f.from_i64(-1), 0, 1];
        assert_eq!(poly_gcd_degree(&f, q, vec![0, 2]), 0);
    }

    #[test]
    fn line_links_to_twisted_cubic() {
        let r = PolyRing::with_indexed_vars("x", 4, PrimeField::default()).unwrap();
        let line = Ideal::parse(&r, &["x0", "x1"]).unwrap();
        let link = linked_surface(&line, &[2, 2], Seed(5)).unwrap().value;
        assert_eq!((link.linked_dimension, link.linked_degree), (1, 3));
        assert_eq!(link.ci_degree, 4);
    }
}
