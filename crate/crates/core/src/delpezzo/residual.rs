use serde::Serialize;

use super::nodes::random_member;
use crate::error::{Error, Result};
use crate::idealops::{saturate_by_element, Ideal, Seed};
use crate::invariants::{hilbert_series, minimal_generators, HilbertSeries};
use crate::polyring::Field;

#[derive(Clone, Debug, Serialize)]
pub struct ResidualReport<F: Field> {
    #[serde(skip)]
    pub input: Ideal<F>,
    pub cut_degree: u32,
    /// The ideal generated by the elements of degree at most `cut_degree`.
    #[serde(skip)]
    pub cut: Ideal<F>,
    #[serde(skip)]
    pub residual: Ideal<F>,
    /// `-1` (and degree 0) when the residual is empty.
    pub dimension: i64,
    pub degree: i64,
    /// `V(cut) = V(I) ∪ V(residual)` as schemes.
    pub scheme_equality: bool,
    pub saturation_exponent: u32,
}

/// The part of `V(I_{<=d})` not on `V(I)`: `I_{<=d} : f^∞` for a random
/// `f ∈ I`, which removes exactly the primary components whose radical
/// contains `I`.
///
/// Scheme equality is decided with Hilbert polynomials: the cut is contained
/// in `I ∩ residual`, so both saturate to the same ideal exactly when
/// `HP(cut) = HP(I) + HP(residual) - HP(I + residual)`.
pub fn multisecant_residual<F: Field>(ideal: &Ideal<F>, d: u32, seed: Seed) -> Result<ResidualReport<F>> {
    let gens = minimal_generators(ideal)?;
    let cut_gens: Vec<_> = gens.iter().filter(|g| g.degree().is_some_and(|e| e <= d)).cloned().collect();
    if cut_gens.is_empty() {
        return Err(Error::InvalidInput(format!("no generators of degree at most {d}")));
    }
    let top = gens.iter().filter_map(|g| g.degree()).max().expect("nonempty");
    let cut = Ideal::new(ideal.ring(), cut_gens)?;
    let f = random_member(ideal, top, seed, "residual element")?;
    let sat = saturate_by_element(&cut, &f)?;
    let residual = sat.ideal.minimalized()?;

    let hs_cut = hilbert_series(&cut)?;
    let hs_i = hilbert_series(ideal)?;
    let hs_r = hilbert_series(&residual)?;
    let hs_sum = hilbert_series(&ideal.sum(&residual)?)?;
    let top_dim = [&hs_cut, &hs_i, &hs_r].iter().map(|h| h.krull_dimension()).max().unwrap_or(0) as i64;
    let hp = |h: &HilbertSeries, t: i64| if h.is_zero() { 0 } else { h.hilbert_polynomial(t) };
    let scheme_equality = (0..=top_dim).all(|t| hp(&hs_cut, t) == hp(&hs_i, t) + hp(&hs_r, t) - hp(&hs_sum, t));
    let (dimension, degree) = if hs_r.is_zero() || hs_r.krull_dimension() == 0 {
        (-1, 0)
    } else {
        (hs_r.projective_dimension(), hs_r.degree())
    };
    Ok(ResidualReport {
        input: ideal.clone(),
        cut_degree: d,
        cut,
        residual,
        dimension,
        degree,
        scheme_equality,
        saturation_exponent: sat.exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PolyRing, PrimeField};

    #[test]
    fn quadric_cut_adds_a_line() {
        // The quadrics cut out two skew lines; the cubics remove x2 = x3 = 0
        // up to a fat point, leaving the line x0 = x1 = 0.
        let r = PolyRing::with_indexed_vars("x", 4, PrimeField::default()).unwrap();
        let i = Ideal::parse(&r, &["x0*x2", "x0*x3", "x1*x2", "x1*x3", "x2^3", "x3^3"]).unwrap();
        let report = multisecant_residual(&i, 2, Seed(7)).unwrap();
        assert_eq!((report.dimension, report.degree), (1, 1));
        assert!(report.residual.contains(&crate::polyring::parse_polynomial("x0", &r).unwrap()).unwrap());
        assert!(report.scheme_equality);
    }
}
