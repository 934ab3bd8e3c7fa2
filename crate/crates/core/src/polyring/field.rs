//! Exact coefficient fields: the rationals and prime fields of odd characteristic.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Characteristic used for every seeded computation unless overridden.
pub const DEFAULT_PRIME: u32 = 32003;

/// A field with exact arithmetic. Elements carry no reference to the field, so
/// every operation goes through the field value (which knows `p`).
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// Human-readable value; prime-field elements use the symmetric representative.
    fn format(&self, a: &Self::Elem) -> String;
    /// Short description, e.g. `QQ` or `GF(32003)`.
    fn name(&self) -> String;

    /// `a - c * b`, the inner step of every elimination loop.
    #[inline]
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// A square root of `a`, if the field has one.
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// The prime field `GF(p)` for an odd prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("characteristic {p} is not an odd prime below 2^31")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    fn pow(&self, mut b: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.reduce(r as u64 * b as u64);
            }
            b = self.reduce(b as u64 * b as u64);
            e >>= 1;
        }
        r
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p as u64 - 2))
        }
    }
    #[inline]
    fn sub_mul(&self, a: &u32, c: &u32, b: &u32) -> u32 {
        let prod = self.reduce(*c as u64 * *b as u64);
        self.sub(a, &prod)
    }
    fn sqrt(&self, a: &u32) -> Option<u32> {
        let p = self.p;
        let a = *a % p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(a, (p as u64 - 1) / 2) != 1 {
            return None;
        }
        // Tonelli-Shanks.
        let mut q = p as u64 - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| self.pow(z, (p as u64 - 1) / 2) == p - 1).expect("non-residue exists");
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.reduce(tt as u64 * tt as u64);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.reduce(b as u64 * b as u64);
            t = self.reduce(t as u64 * c as u64);
            r = self.reduce(r as u64 * b as u64);
        }
        Some(r)
    }

    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u32().expect("residue fits in u32")
    }
    fn format(&self, a: &u32) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let n = a.numer().sqrt();
        let d = a.denom().sqrt();
        (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
}

/// Runtime description of a coefficient field, as it appears in JSON and on the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CoefficientField {
    Rationals,
    Prime(u32),
}

impl CoefficientField {
    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::Prime(p) => *p as u64,
        }
    }

    pub fn from_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(CoefficientField::Rationals)
        } else {
            let p = u32::try_from(c).map_err(|_| Error::InvalidField(format!("characteristic {c} too large")))?;
            PrimeField::new(p)?;
            Ok(CoefficientField::Prime(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn square_roots() {
        let f = PrimeField::default();
        let mut residues = 0;
        for a in 0..200u32 {
            if let Some(r) = f.sqrt(&a) {
                assert_eq!(f.mul(&r, &r), a);
                residues += 1;
            }
        }
        assert!(residues > 50 && residues < 150);
        let q = Rationals;
        let nine_quarters = BigRational::new(BigInt::from(9), BigInt::from(4));
        assert_eq!(q.sqrt(&nine_quarters), Some(BigRational::new(BigInt::from(3), BigInt::from(2))));
        assert_eq!(q.sqrt(&q.from_i64(2)), None);
    }

    #[test]
    fn symmetric_representatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.format(&6), "-1");
        assert_eq!(f.format(&3), "3");
        assert_eq!(f.from_i64(-8), 6);
    }

    proptest! {
        #[test]
        fn prime_field_division_undoes_multiplication(a in 0u32..32003, b in 1u32..32003) {
            let f = PrimeField::default();
            let ab = f.mul(&a, &b);
            prop_assert_eq!(f.mul(&ab, &f.inv(&b).unwrap()), a);
            prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a);
        }

        #[test]
        fn rational_division_undoes_multiplication(an in -1000i64..1000, ad in 1i64..1000, bn in 1i64..1000, bd in 1i64..1000) {
            let q = Rationals;
            let a = BigRational::new(an.into(), ad.into());
            let b = BigRational::new(bn.into(), bd.into());
            let ab = q.mul(&a, &b);
            prop_assert_eq!(q.mul(&ab, &q.inv(&b).unwrap()), a);
        }
    }
}
