//! Polynomial rings and their elements.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::error::{Error, Result};

/// `k[x_0, ..., x_n]` together with the monomial order its polynomials are sorted by.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    vars: Vec<String>,
    field: F,
    order: MonomialOrder,
}

pub type Ring<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(vars: &[S], field: F, order: MonomialOrder) -> Result<Ring<F>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("need between 1 and {MAX_VARS} variables, got {}", vars.len())));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidRing(format!("block split {k} exceeds variable count")));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    /// Ring with variables `x0, ..., x{n-1}` in degrevlex.
    pub fn with_indexed_vars(prefix: &str, n: usize, field: F) -> Result<Ring<F>> {
        let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Self::new(&names, field, MonomialOrder::DegRevLex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring<F>> {
        Self::new(&self.vars, self.field.clone(), order)
    }

    /// Same variables and field (possibly a different order).
    pub fn same_space(&self, other: &PolyRing<F>) -> bool {
        self.vars == other.vars && self.field == other.field
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b)
    }
}

pub type Term<F> = (Monomial, <F as Field>::Elem);

/// A polynomial with terms sorted strictly decreasing in the ring's order and
/// no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_space(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::ONE, c)
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Ring<F>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(i, 1), ring.field.one())
    }

    pub fn monomial(ring: &Ring<F>, m: Monomial, c: F::Elem) -> Self {
        if ring.field.is_zero(&c) {
            Self::zero(ring)
        } else {
            Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms: like terms are combined,
    /// zeros dropped, and the result sorted.
    pub fn from_terms(ring: &Ring<F>, terms: impl IntoIterator<Item = Term<F>>) -> Self {
        let field = &ring.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Wraps terms already sorted decreasingly with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Ring<F>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field.is_zero(c)));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximal total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// The coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        match self.terms.binary_search_by(|t| self.ring.cmp(m, &t.0)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.ring.field.zero(),
        }
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring,
            "polynomials live in different rings"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let field = &self.ring.field;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = field.add(&a[i].1, &b[j].1);
                    if !field.is_zero(&c) {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        let field = &self.ring.field;
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (*m, field.mul(a, c))).collect() }
    }

    /// Multiplication by the term `c * m`; preserves sortedness.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let field = &self.ring.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let p = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = field.add(v, &p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ring.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let field = &self.ring.field;
        let terms = self.terms.iter().filter(|(m, _)| m.exp(i) > 0).map(|(m, c)| {
            let e = m.exp(i);
            let mut q = *m;
            q = Monomial::var(i, 1).quotient_of(&q);
            (q, field.mul(c, &field.from_i64(e as i64)))
        });
        Self::from_terms(&self.ring, terms)
    }

    /// Substitutes `images[i]` for variable `i`; the images determine the target ring.
    pub fn substitute(&self, images: &[Polynomial<F>]) -> Result<Self> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: images.len() });
        }
        let target =
            images.first().map(|p| p.ring.clone()).ok_or_else(|| Error::InvalidInput("no images given".into()))?;
        let mut powers: Vec<Vec<Polynomial<F>>> =
            images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// The same polynomial viewed in a ring with the same variables and field
    /// but possibly another order.
    pub fn in_ring(&self, target: &Ring<F>) -> Result<Self> {
        if !self.ring.same_space(target) {
            return Err(Error::RingMismatch(format!(
                "cannot move polynomial from {:?} to {:?}",
                self.ring.vars, target.vars
            )));
        }
        if self.ring.order == target.order {
            return Ok(Polynomial { ring: target.clone(), terms: self.terms.clone() });
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: target.clone(), terms })
    }

    /// Moves into `target` sending variable `i` to `map[i]`; fails if a
    /// variable mapped to `None` occurs.
    pub fn remap(&self, target: &Ring<F>, map: &[Option<usize>]) -> Result<Self> {
        if map.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch { expected: self.ring.nvars(), got: map.len() });
        }
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let m2 = m
                .remap(map)
                .ok_or_else(|| Error::InvalidInput("polynomial involves a variable that is being dropped".into()))?;
            terms.push((m2, c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Sets variable `i` to zero.
    pub fn set_var_zero(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(i) == 0).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Sets variable `i` to one (dehomogenization).
    pub fn set_var_one(&self, i: usize) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.without_var(i), c.clone())))
    }

    /// Largest `e` with `x_i^e` dividing every term.
    pub fn var_content(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    /// Divides by `x_i^e`, assuming it divides.
    pub fn divide_by_var_power(&self, i: usize, e: u8) -> Self {
        let d = Monomial::var(i, e);
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (d.quotient_of(m), c.clone())).collect(),
        }
    }

    /// Exact division by a polynomial; `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.assert_same_ring(divisor);
        let field = &self.ring.field;
        let (lm, lc) = divisor.terms.first()?;
        let lc_inv = field.inv(lc)?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = m.checked_div(lm)?;
            let qc = field.mul(&c, &lc_inv);
            rem = rem.sub(&divisor.mul_term(&q, &qc));
            quot.push((q, qc));
        }
        Some(Self::from_terms(&self.ring, quot))
    }
}

fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(v.clone()),
            e => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = field.format(c);
            let body = if *m == Monomial::ONE {
                cs
            } else {
                let mono = format_monomial(m, &self.ring.vars);
                match cs.as_str() {
                    "1" => mono,
                    "-1" => format!("-{mono}"),
                    _ => format!("{cs}*{mono}"),
                }
            };
            if k > 0 && !body.starts_with('-') {
                out.push('+');
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::PrimeField;

    fn ring() -> Ring<PrimeField> {
        PolyRing::new(&["x", "y", "z"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn rejects_duplicate_variables() {
        assert!(PolyRing::new(&["x", "x"], PrimeField::default(), MonomialOrder::Lex).is_err());
    }

    #[test]
    fn arithmetic_and_printing() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.to_string(), "x^2+2*x*y+y^2");
        assert_eq!(p.sub(&p).to_string(), "0");
        assert_eq!(x.mul(&x).sub(&y).to_string(), "x^2-y");
        let d = p.derivative(0);
        assert_eq!(d.to_string(), "2*x+2*y");
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let f = x.add(&y);
        let g = x.sub(&y);
        assert_eq!(f.mul(&g).exact_div(&g).unwrap(), f);
        assert!(f.mul(&g).add(&Polynomial::one(&r)).exact_div(&g).is_none());
    }

    #[test]
    fn substitution_composes() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let z = Polynomial::var(&r, 2);
        let f = x.mul(&y).sub(&z.pow(2));
        let g = f.substitute(&[y.clone(), x.clone(), z.add(&x)]).unwrap();
        assert_eq!(g, y.mul(&x).sub(&z.add(&x).pow(2)));
    }
}
