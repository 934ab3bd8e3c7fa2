//! Normal forms, reduced Groebner bases and first syzygies.

mod buchberger;
mod f4;
mod syzygy;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyring::{Field, Monomial, MonomialOrder, Polynomial, Ring, Term};

pub use buchberger::buchberger_basis;
pub use f4::GbOptions;
pub use syzygy::{module_syzygies, SyzygyModule};

/// A Groebner basis of monic polynomials, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    elements: Vec<Polynomial<F>>,
    reduced: bool,
    degree_bound: Option<u32>,
    minimal_generators: Option<Vec<Polynomial<F>>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub(crate) fn from_reduced(ring: &Ring<F>, elements: Vec<Polynomial<F>>) -> Self {
        GroebnerBasis { ring: ring.clone(), elements, reduced: true, degree_bound: None, minimal_generators: None }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// `Some(d)` when the basis was truncated at degree `d`.
    pub fn degree_bound(&self) -> Option<u32> {
        self.degree_bound
    }

    /// For homogeneous input, a minimal generating set extracted from the
    /// input generators while the basis was built (complete through the
    /// degree bound, if any).
    pub fn minimal_generators(&self) -> Option<&[Polynomial<F>]> {
        self.minimal_generators.as_deref()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| *g.leading_monomial().expect("nonzero element")).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True when every S-polynomial of every pair reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let s = s_polynomial(&self.elements[i], &self.elements[j]);
                reduce(&s, &self.elements).is_zero()
            })
        })
    }

    /// Same check as [`Self::satisfies_buchberger_criterion`] on the pairs
    /// `(i, j)` accepted by `pick`, for sampling large bases.
    pub fn satisfies_buchberger_criterion_on(&self, mut pick: impl FnMut(usize, usize) -> bool) -> bool {
        let n = self.elements.len();
        for i in 0..n {
            for j in i + 1..n {
                if pick(i, j) {
                    let s = s_polynomial(&self.elements[i], &self.elements[j]);
                    if !reduce(&s, &self.elements).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let field = f.field();
    let (mf, cf) = (f.leading_monomial().expect("nonzero"), f.leading_coeff().expect("nonzero"));
    let (mg, cg) = (g.leading_monomial().expect("nonzero"), g.leading_coeff().expect("nonzero"));
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), &field.inv(cf).expect("nonzero"));
    let b = g.mul_term(&mg.quotient_of(&l), &field.inv(cg).expect("nonzero"));
    a.sub(&b)
}

/// Full reduction of `f` by `divisors`: the greatest reducible monomial is
/// reduced first, using the first divisor in list order.
pub(crate) fn reduce<F: Field>(f: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Polynomial<F> {
    let ring = f.ring();
    let field = ring.field();
    let lts: Vec<(Monomial, F::Elem)> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (*g.leading_monomial().unwrap(), field.inv(g.leading_coeff().unwrap()).unwrap()))
        .collect();
    let divisors: Vec<&Polynomial<F>> = divisors.iter().filter(|g| !g.is_zero()).collect();

    let mut remainder: Vec<Term<F>> = Vec::new();
    // `work` holds the terms still to inspect, in increasing order so the
    // greatest is popped from the back.
    let mut work: Vec<Term<F>> = f.terms().iter().rev().cloned().collect();
    while let Some((m, c)) = work.pop() {
        let Some(k) = lts.iter().position(|(lt, _)| lt.divides(&m)) else {
            remainder.push((m, c));
            continue;
        };
        let mult = lts[k].0.quotient_of(&m);
        let coef = field.mul(&c, &lts[k].1);
        // Subtract coef * mult * tail(g) from work.
        let tail: Vec<Term<F>> =
            divisors[k].terms()[1..].iter().map(|(t, a)| (t.mul(&mult), field.neg(&field.mul(a, &coef)))).collect();
        work = merge_increasing(ring, work, tail);
    }
    Polynomial::from_sorted_terms(ring, remainder)
}

/// Merges an increasing term list with a decreasing one into an increasing list.
fn merge_increasing<F: Field>(ring: &Ring<F>, inc: Vec<Term<F>>, dec: Vec<Term<F>>) -> Vec<Term<F>> {
    let field = ring.field();
    let mut out = Vec::with_capacity(inc.len() + dec.len());
    let mut a = inc.into_iter().peekable();
    let mut b = dec.into_iter().rev().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let c = field.add(&c1, &c2);
                    if !field.is_zero(&c) {
                        out.push((m, c));
                    }
                }
            },
            (Some(_), None) => out.push(a.next().unwrap()),
            (None, Some(_)) => out.push(b.next().unwrap()),
            (None, None) => break,
        }
    }
    out
}

/// Remainder of `f` on division by `g`; no monomial of the result is
/// divisible by a leading monomial of `g`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, g: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    if **f.ring() != *g.ring {
        if f.ring().same_space(&g.ring) {
            return Err(Error::RingMismatch(format!(
                "polynomial order {:?} differs from basis order {:?}",
                f.ring().order(),
                g.ring.order()
            )));
        }
        return Err(Error::RingMismatch("polynomial and basis live in different rings".into()));
    }
    Ok(reduce(f, &g.elements))
}

fn common_ring<F: Field>(gens: &[Polynomial<F>], order: MonomialOrder) -> Result<Ring<F>> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    if gens.iter().any(|g| !g.ring().same_space(first.ring())) {
        return Err(Error::RingMismatch("generators live in different rings".into()));
    }
    first.ring().with_order(order)
}

pub fn reduced_groebner_basis<F: Field>(gens: &[Polynomial<F>], order: MonomialOrder) -> Result<GroebnerBasis<F>> {
    groebner_basis_with(gens, order, GbOptions::default())
}

/// Reduced basis via the matrix engine, optionally truncated at a degree.
///
/// Inhomogeneous input under lex or a block order goes to the Buchberger
/// engine instead: symbolic preprocessing with unreduced rows has no degree
/// bound there, and the multiples it builds can overflow the exponent range.
pub fn groebner_basis_with<F: Field>(
    gens: &[Polynomial<F>],
    order: MonomialOrder,
    options: GbOptions,
) -> Result<GroebnerBasis<F>> {
    let ring = common_ring(gens, order)?;
    let mapped: Vec<Polynomial<F>> = gens.iter().map(|g| g.in_ring(&ring)).collect::<Result<_>>()?;
    let homogeneous = mapped.iter().all(|g| g.is_homogeneous());
    if !homogeneous && !order.is_degree_compatible() && options.degree_bound.is_none() {
        return buchberger_basis(&mapped, order);
    }
    let out = f4::run(&ring, &mapped, options);
    let elements: Vec<Polynomial<F>> =
        f4::interreduce(&ring, out.basis).into_iter().map(|t| Polynomial::from_sorted_terms(&ring, t)).collect();
    let minimal_generators = homogeneous
        .then(|| out.minimal_generators.into_iter().map(|t| Polynomial::from_sorted_terms(&ring, t)).collect());
    Ok(GroebnerBasis {
        ring,
        elements,
        reduced: true,
        degree_bound: if out.truncated { options.degree_bound } else { None },
        minimal_generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, PolyRing, PrimeField, Rationals};

    fn ring_q(order: MonomialOrder) -> Ring<Rationals> {
        PolyRing::new(&["x", "y"], Rationals, order).unwrap()
    }

    #[test]
    fn one_step_division() {
        let r = ring_q(MonomialOrder::DegRevLex);
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let g = reduced_groebner_basis(&[p("x^2-y")], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(g.normal_form(&p("x^2*y")).unwrap(), p("y^2"));
        let g = reduced_groebner_basis(&[p("y")], MonomialOrder::DegRevLex).unwrap();
        assert_eq!(g.normal_form(&p("x")).unwrap(), p("x"));
    }

    #[test]
    fn principal_ideal() {
        let r = ring_q(MonomialOrder::DegRevLex);
        let x = parse_polynomial("x", &r).unwrap();
        let g = reduced_groebner_basis(std::slice::from_ref(&x), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(g.elements(), &[x]);
    }

    #[test]
    fn lex_elimination_of_parabolas() {
        let r = ring_q(MonomialOrder::Lex);
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let g = reduced_groebner_basis(&[p("x-y^2"), p("y-x^2")], MonomialOrder::Lex).unwrap();
        assert_eq!(g.elements(), &[p("y^4-y"), p("x-y^2")]);
        assert!(g.satisfies_buchberger_criterion());
    }

    #[test]
    fn rejects_mismatched_order() {
        let r = ring_q(MonomialOrder::Lex);
        let p = parse_polynomial("x", &r).unwrap();
        let g = reduced_groebner_basis(std::slice::from_ref(&p), MonomialOrder::DegRevLex).unwrap();
        assert!(matches!(g.normal_form(&p), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn unit_ideal() {
        let r = PolyRing::new(&["x", "y"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let g = reduced_groebner_basis(&[p("x*y-1"), p("x")], MonomialOrder::DegRevLex).unwrap();
        assert!(g.is_unit());
        assert_eq!(g.len(), 1);
    }
}
