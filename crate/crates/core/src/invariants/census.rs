use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groebner::{groebner_basis_with, GbOptions};
use crate::idealops::Ideal;
use crate::polyring::{Field, MonomialOrder, Polynomial};

/// Number of minimal generators in each degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorCensus(BTreeMap<u32, usize>);

impl GeneratorCensus {
    pub fn new(counts: BTreeMap<u32, usize>) -> Self {
        GeneratorCensus(counts.into_iter().filter(|&(_, c)| c > 0).collect())
    }

    pub fn from_pairs(pairs: &[(u32, usize)]) -> Self {
        Self::new(pairs.iter().copied().collect())
    }

    pub fn get(&self, degree: u32) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u32, usize> {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }
}

impl fmt::Display for GeneratorCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (d, c)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{c}")?;
        }
        write!(f, "}}")
    }
}

/// A minimal homogeneous generating set, sorted by degree.
///
/// The matrix engine processes inputs degree by degree after all pairs of that
/// degree, so an input that still contributes a new pivot is independent of
/// `R_1 * I_{d-1}`: exactly the graded Nakayama count.
pub fn minimal_generators<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Polynomial<F>>> {
    ideal.require_homogeneous()?;
    if ideal.is_zero() {
        return Ok(Vec::new());
    }
    let cached = ideal.gb()?;
    let mut gens = match cached.minimal_generators() {
        Some(m) => m.to_vec(),
        None => {
            let gb = groebner_basis_with(ideal.generators(), MonomialOrder::DegRevLex, GbOptions::default())?;
            gb.minimal_generators().expect("homogeneous input").to_vec()
        }
    };
    gens.sort_by_key(|g| g.degree());
    gens.into_iter().map(|g| g.in_ring(ideal.ring())).collect()
}

pub fn generator_census<F: Field>(ideal: &Ideal<F>) -> Result<GeneratorCensus> {
    let mut counts = BTreeMap::new();
    for g in minimal_generators(ideal)? {
        *counts.entry(g.degree().expect("nonzero")).or_insert(0) += 1;
    }
    Ok(GeneratorCensus::new(counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PolyRing, PrimeField};

    #[test]
    fn redundant_generators_are_dropped() {
        let r = PolyRing::new(&["a", "b", "c", "d"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let i = Ideal::parse(&r, &["a*c-b^2", "a*d-b*c", "b*d-c^2", "a*(a*c-b^2)+d*(b*d-c^2)", "a^3"]).unwrap();
        let c = generator_census(&i).unwrap();
        assert_eq!(c, GeneratorCensus::from_pairs(&[(2, 3), (3, 1)]));
        assert_eq!(c.to_string(), "{2:3, 3:1}");
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"2":3,"3":1}"#);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let r = PolyRing::new(&["x", "y"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let i = Ideal::parse(&r, &["x^2-y"]).unwrap();
        assert!(generator_census(&i).is_err());
    }
}
