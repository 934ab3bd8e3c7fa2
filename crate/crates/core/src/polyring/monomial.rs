//! Dense exponent vectors and the monomial orders used throughout.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of ring variables. The largest ring in use is the
/// graph ring of a parametrization `P^2 -> P^8` (12 variables).
pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], deg: 0 };

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::OutOfRange(format!(
                "{} variables exceed the supported maximum of {MAX_VARS}",
                exps.len()
            )));
        }
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            let e = u8::try_from(e).map_err(|_| Error::OutOfRange(format!("exponent {e} exceeds 255")))?;
            m.exps[i] = e;
            m.deg += e as u16;
        }
        Ok(m)
    }

    /// The monomial `x_i^e`.
    pub fn var(i: usize, e: u8) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = e;
        m.deg = e as u16;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].checked_add(other.exps[i]).expect("monomial exponent overflow");
        }
        Monomial { exps, deg: self.deg + other.deg }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial { exps, deg: other.deg - self.deg }
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u8; MAX_VARS];
        let mut deg = 0u16;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            deg += exps[i] as u16;
        }
        Monomial { exps, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Drops variable `i` (sets its exponent to zero).
    pub fn without_var(&self, i: usize) -> Monomial {
        let mut m = *self;
        m.deg -= m.exps[i] as u16;
        m.exps[i] = 0;
        m
    }

    /// Re-indexes variables: exponent of old variable `i` moves to `map[i]`.
    /// Variables mapped to `None` must have exponent zero.
    pub fn remap(&self, map: &[Option<usize>]) -> Option<Monomial> {
        let mut out = Monomial::ONE;
        for (i, target) in map.iter().enumerate() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            let t = (*target)?;
            out.exps[t] += e;
            out.deg += e as u16;
        }
        Some(out)
    }

    /// Enumerates every monomial of total degree `d` in the first `nvars`
    /// variables, in lexicographic order with `x_0` largest.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = exps.len();
            if i + 1 == n {
                exps[i] = left;
                out.push(Monomial::from_exponents(exps).expect("small exponents"));
                return;
            }
            for e in (0..=left).rev() {
                exps[i] = e;
                rec(i + 1, left - e, exps, out);
            }
            exps[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(0, d, &mut exps, &mut out);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Monomial orders. `Block(k)` compares the first `k` variables by degrevlex
/// and breaks ties with degrevlex on the remaining variables; it is an
/// elimination order for the first `k` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    Block(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| revlex_tail(&a.exps, &b.exps, 0, MAX_VARS)),
            MonomialOrder::Block(k) => {
                let da: u16 = a.exps[..k].iter().map(|&e| e as u16).sum();
                let db: u16 = b.exps[..k].iter().map(|&e| e as u16).sum();
                da.cmp(&db)
                    .then_with(|| revlex_tail(&a.exps, &b.exps, 0, k))
                    .then_with(|| (a.deg - da).cmp(&(b.deg - db)))
                    .then_with(|| revlex_tail(&a.exps, &b.exps, k, MAX_VARS))
            }
        }
    }

    /// Checked comparison of raw exponent vectors.
    pub fn compare_exponents(&self, a: &[u32], b: &[u32]) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { expected: a.len(), got: b.len() });
        }
        if let MonomialOrder::Block(k) = self {
            if *k > a.len() {
                return Err(Error::OutOfRange(format!("block split {k} exceeds {} variables", a.len())));
            }
        }
        Ok(self.compare(&Monomial::from_exponents(a)?, &Monomial::from_exponents(b)?))
    }

    /// True when every monomial of positive degree is larger than 1 and the
    /// order refines total degree (needed for degree-truncated bases).
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::DegRevLex)
    }
}

/// Equal-degree revlex tie-break: the monomial with the smaller exponent in the
/// last differing position is larger.
#[inline]
fn revlex_tail(a: &[u8; MAX_VARS], b: &[u8; MAX_VARS], lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn textbook_examples() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.compare(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.compare(&m(&[0, 3]), &m(&[1, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[1, 1, 1]), &m(&[1, 1, 1])), Ordering::Equal);
        // x*z < y^2 in degrevlex with x > y > z
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(MonomialOrder::Lex.compare_exponents(&[1, 2], &[1]).is_err());
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Block(1);
        // t*y (contains t) beats any pure x,y monomial of any degree
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn enumerates_degree_pieces() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(9, 2).len(), 45);
        assert_eq!(Monomial::all_of_degree(2, 0), vec![Monomial::ONE]);
    }

    fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::DegRevLex),
            (0usize..=4).prop_map(MonomialOrder::Block)
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(
            order in order_strategy(),
            a in prop::collection::vec(0u32..5, 4),
            b in prop::collection::vec(0u32..5, 4),
            c in prop::collection::vec(0u32..5, 4),
        ) {
            let (a, b, c) = (m(&a), m(&b), m(&c));
            // antisymmetry and totality
            prop_assert_eq!(order.compare(&a, &b), order.compare(&b, &a).reverse());
            prop_assert_eq!(order.compare(&a, &b) == Ordering::Equal, a == b);
            // multiplicative compatibility
            prop_assert_eq!(order.compare(&a.mul(&c), &b.mul(&c)), order.compare(&a, &b));
            // 1 is the minimum
            if a != Monomial::ONE {
                prop_assert_eq!(order.compare(&a, &Monomial::ONE), Ordering::Greater);
            }
            // transitivity
            if order.compare(&a, &b) == Ordering::Less && order.compare(&b, &c) == Ordering::Less {
                prop_assert_eq!(order.compare(&a, &c), Ordering::Less);
            }
        }
    }
}
