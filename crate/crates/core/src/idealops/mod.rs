//! Ideals with cached Groebner bases, and the constructions built on them:
//! elimination, quotients, saturation, intersection, Jacobian ideals,
//! parametrized images and seeded coordinate changes.

mod construct;
mod coords;
mod ops;
mod seed;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis_with, GbOptions, GroebnerBasis};
use crate::polyring::{parse_polynomial, Field, MonomialOrder, PolyRing, Polynomial, Ring};

pub use construct::{ideal_from_parametrization, jacobian_ideal};
pub use coords::{generic_change_of_coordinates, random_invertible_matrix, CoordinateChange};
pub use ops::{
    eliminate, eliminate_truncated, ideal_quotient, intersect, saturate, saturate_by_element, saturate_irrelevant,
    Saturation,
};
pub use seed::{random_scalar, Seed};

/// An ideal given by generators, with reduced Groebner bases cached per order.
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    generators: Vec<Polynomial<F>>,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("cache lock").clone();
        Ideal { ring: self.ring.clone(), generators: self.generators.clone(), cache: RwLock::new(cache) }
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal").field("vars", &self.ring.vars()).field("generators", &self.generators).finish()
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; every generator must live over the
    /// variables and field of `ring` (it is re-sorted into `ring`'s order).
    pub fn new(ring: &Ring<F>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        let generators =
            generators.into_iter().filter(|g| !g.is_zero()).map(|g| g.in_ring(ring)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal { ring: ring.clone(), generators, cache: RwLock::new(HashMap::new()) })
    }

    pub fn parse<S: AsRef<str>>(ring: &Ring<F>, generators: &[S]) -> Result<Self> {
        let gens = generators.iter().map(|g| parse_polynomial(g.as_ref(), ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    /// The ideal generated by all variables.
    pub fn irrelevant(ring: &Ring<F>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Self::new(ring, gens).expect("same ring")
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub(crate) fn require_homogeneous(&self) -> Result<()> {
        match self.generators.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::NotHomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    pub(crate) fn require_same_ring(&self, other: &Ideal<F>) -> Result<()> {
        if self.ring.same_space(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("ideals over {:?} and {:?}", self.ring.vars(), other.ring.vars())))
        }
    }

    /// Reduced Groebner basis for `order`, computed once and cached.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(g) = self.cache.read().expect("cache lock").get(&order) {
            return Ok(g.clone());
        }
        let gb = if self.generators.is_empty() {
            GroebnerBasis::from_reduced(&self.ring.with_order(order)?, Vec::new())
        } else {
            groebner_basis_with(&self.generators, order, GbOptions::default())?
        };
        let gb = Arc::new(gb);
        let mut cache = self.cache.write().expect("cache lock");
        Ok(cache.entry(order).or_insert(gb).clone())
    }

    /// Degree-revlex basis, the default for every graded invariant.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<F>>> {
        self.groebner(MonomialOrder::DegRevLex)
    }

    /// Installs a basis computed elsewhere (for example by saturation).
    pub(crate) fn with_basis(self, gb: GroebnerBasis<F>) -> Self {
        self.cache.write().expect("cache lock").insert(gb.order(), Arc::new(gb));
        self
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        let gb = self.gb()?;
        gb.contains(&f.in_ring(gb.ring())?)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        self.require_same_ring(other)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (same reduced degree-revlex basis).
    pub fn same_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        self.require_same_ring(other)?;
        Ok(self.gb()?.elements() == other.gb()?.elements())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.require_same_ring(other)?;
        let mut gens = self.generators.clone();
        for g in &other.generators {
            gens.push(g.in_ring(&self.ring)?);
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.require_same_ring(other)?;
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.mul(&b.in_ring(&self.ring)?));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// Generators of degree at most `d`.
    pub fn truncate_generators(&self, d: u32) -> Ideal<F> {
        let gens = self.generators.iter().filter(|g| g.degree().is_some_and(|e| e <= d)).cloned().collect();
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// The reduced degree-revlex basis as a new generating set.
    pub fn minimalized_by_gb(&self) -> Result<Ideal<F>> {
        let gb = self.gb()?;
        let gens: Vec<Polynomial<F>> = gb.elements().iter().map(|g| g.in_ring(&self.ring)).collect::<Result<_>>()?;
        Ok(Ideal::new(&self.ring, gens)?.with_basis((*gb).clone()))
    }

    /// The same ideal presented by a minimal homogeneous generating set; cached
    /// bases are kept.
    pub fn minimalized(&self) -> Result<Ideal<F>> {
        let gens = crate::invariants::minimal_generators(self)?;
        let cache = self.cache.read().expect("cache lock").clone();
        Ok(Ideal { ring: self.ring.clone(), generators: gens, cache: RwLock::new(cache) })
    }

    /// Applies `x_i -> images[i]` to every generator.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Ideal<F>> {
        let target =
            images.first().map(|p| p.ring().clone()).ok_or_else(|| Error::InvalidInput("empty substitution".into()))?;
        let gens = self.generators.iter().map(|g| g.substitute(images)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&target, gens)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            ring: RingJson { vars: self.ring.vars().to_vec(), char: self.ring.field().characteristic() },
            gens: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    /// Parses the JSON form into `field` (whose characteristic must match).
    pub fn from_json(json: &IdealJson, field: F) -> Result<Self> {
        if json.ring.char != field.characteristic() {
            return Err(Error::InvalidField(format!(
                "ideal declares characteristic {}, field has {}",
                json.ring.char,
                field.characteristic()
            )));
        }
        let ring = PolyRing::new(&json.ring.vars, field, MonomialOrder::DegRevLex)?;
        Self::parse(&ring, &json.gens)
    }
}

/// Serialized ideal: `{"ring": {"vars": [...], "char": p}, "gens": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: RingJson,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub vars: Vec<String>,
    pub char: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PrimeField, Rationals};

    #[test]
    fn json_round_trip() {
        let r = PolyRing::new(&["x", "y", "z"], Rationals, MonomialOrder::DegRevLex).unwrap();
        let i = Ideal::parse(&r, &["x^2-y*z", "1/2*x*y"]).unwrap();
        let json = serde_json::to_string(&i.to_json()).unwrap();
        let back: IdealJson = serde_json::from_str(&json).unwrap();
        let j = Ideal::from_json(&back, Rationals).unwrap();
        assert!(i.same_ideal(&j).unwrap());
        assert!(Ideal::from_json(&back, PrimeField::default()).is_err());
    }

    #[test]
    fn membership_and_sum() {
        let r = PolyRing::new(&["x", "y"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let i = Ideal::parse(&r, &["x"]).unwrap();
        let j = Ideal::parse(&r, &["y"]).unwrap();
        let s = i.sum(&j).unwrap();
        assert!(s.contains(&parse_polynomial("x*y+y^2", &r).unwrap()).unwrap());
        assert!(!i.contains(&parse_polynomial("y", &r).unwrap()).unwrap());
        assert!(s.same_ideal(&Ideal::irrelevant(&r)).unwrap());
    }
}
