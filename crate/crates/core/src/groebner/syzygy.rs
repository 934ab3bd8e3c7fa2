//! First syzygies of homogeneous generators, degree by degree.

use std::collections::{BTreeMap, HashMap};

use super::reduced_groebner_basis;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, IncrementalEchelon};
use crate::polyring::{Field, Monomial, MonomialOrder, Polynomial, Ring};

/// A graded submodule of `R^rank` given by generating vectors; basis vector
/// `i` has degree `shifts[i]`.
#[derive(Clone, Debug)]
pub struct SyzygyModule<F: Field> {
    ring: Ring<F>,
    shifts: Vec<u32>,
    generators: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> SyzygyModule<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }

    pub fn generators(&self) -> &[Vec<Polynomial<F>>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Degree of a homogeneous generating vector in the shifted grading.
    pub fn generator_degree(&self, k: usize) -> u32 {
        let v = &self.generators[k];
        v.iter()
            .zip(&self.shifts)
            .find(|(p, _)| !p.is_zero())
            .map(|(p, s)| p.degree().unwrap() + s)
            .expect("nonzero syzygy")
    }

    /// Number of generators in each degree.
    pub fn degree_counts(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for k in 0..self.generators.len() {
            *out.entry(self.generator_degree(k)).or_insert(0) += 1;
        }
        out
    }

    /// Checks `sum v_i f_i = 0` for every generator.
    pub fn annihilates(&self, gens: &[Polynomial<F>]) -> bool {
        self.generators
            .iter()
            .all(|v| v.iter().zip(gens).fold(Polynomial::zero(&self.ring), |acc, (a, f)| acc.add(&a.mul(f))).is_zero())
    }
}

/// A minimal generating set of the syzygies of `gens`.
///
/// Degree by degree, the kernel of `(a_i) -> sum a_i f_i` on the graded piece
/// is computed by linear algebra, and only kernel vectors not generated by
/// syzygies of lower degree are kept. The search stops at the largest degree
/// in which a syzygy generator can occur, the maximum of the generator
/// degrees and of the lcm degrees of pairs in a Groebner basis.
pub fn module_syzygies<F: Field>(gens: &[Polynomial<F>]) -> Result<SyzygyModule<F>> {
    let first = gens.first().ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
    let ring = first.ring().clone();
    let gens: Vec<Polynomial<F>> = gens.iter().map(|g| g.in_ring(&ring)).collect::<Result<_>>()?;
    for g in &gens {
        if g.is_zero() {
            return Err(Error::InvalidInput("zero generator".into()));
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
    }
    let shifts: Vec<u32> = gens.iter().map(|g| g.degree().unwrap()).collect();
    let mut out = SyzygyModule { ring: ring.clone(), shifts: shifts.clone(), generators: Vec::new() };
    if gens.len() < 2 {
        return Ok(out);
    }

    let gb = reduced_groebner_basis(&gens, MonomialOrder::DegRevLex)?;
    let lms = gb.leading_monomials();
    let mut bound = *shifts.iter().max().unwrap();
    for i in 0..lms.len() {
        for j in i + 1..lms.len() {
            bound = bound.max(lms[i].lcm(&lms[j]).degree());
        }
    }

    let field = ring.field().clone();
    let n = ring.nvars();
    let min_shift = *shifts.iter().min().unwrap();
    // Found generators as (degree, vector).
    let mut found: Vec<(u32, Vec<Polynomial<F>>)> = Vec::new();
    for e in min_shift + 1..=bound {
        // Column layout: (generator i, monomial of degree e - d_i).
        let mut cols: Vec<(usize, Monomial)> = Vec::new();
        for (i, &d) in shifts.iter().enumerate() {
            if d <= e {
                cols.extend(Monomial::all_of_degree(n, e - d).into_iter().map(|m| (i, m)));
            }
        }
        let col_of: HashMap<(usize, Monomial), usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let row_monos = Monomial::all_of_degree(n, e);
        let row_of: HashMap<Monomial, usize> = row_monos.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let mut mat = DenseMatrix::zeros(&field, row_monos.len(), cols.len());
        for (k, (i, m)) in cols.iter().enumerate() {
            for (t, c) in gens[*i].terms() {
                mat.set(row_of[&t.mul(m)], k, c.clone());
            }
        }
        let kernel = mat.kernel();
        if kernel.is_empty() {
            continue;
        }
        let to_coords = |v: &[Polynomial<F>]| -> Vec<F::Elem> {
            let mut x = vec![field.zero(); cols.len()];
            for (i, p) in v.iter().enumerate() {
                for (t, c) in p.terms() {
                    x[col_of[&(i, *t)]] = c.clone();
                }
            }
            x
        };
        let mut ech = IncrementalEchelon::new(&field);
        for (d, v) in &found {
            for u in Monomial::all_of_degree(n, e - d) {
                let uv: Vec<Polynomial<F>> = v.iter().map(|p| p.mul_term(&u, &field.one())).collect();
                ech.insert(to_coords(&uv));
            }
        }
        for k in kernel {
            if ech.insert(k.clone()) {
                let mut v: Vec<Polynomial<F>> = vec![Polynomial::zero(&ring); gens.len()];
                for (idx, c) in k.iter().enumerate() {
                    if !field.is_zero(c) {
                        let (i, m) = cols[idx];
                        v[i] = v[i].add(&Polynomial::monomial(&ring, m, c.clone()));
                    }
                }
                found.push((e, v));
            }
        }
    }
    out.generators = found.into_iter().map(|(_, v)| v).collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, PolyRing, PrimeField};

    #[test]
    fn koszul_pair() {
        let r = PolyRing::new(&["x", "y", "z"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let f = parse_polynomial("x^2+y*z", &r).unwrap();
        let g = parse_polynomial("z^3", &r).unwrap();
        let s = module_syzygies(&[f.clone(), g.clone()]).unwrap();
        assert_eq!(s.generators().len(), 1);
        let v = &s.generators()[0];
        // Proportional to (g, -f).
        let c = v[0].leading_coeff().unwrap();
        let scale = r.field().inv(c).unwrap();
        assert_eq!(v[0].scale(&scale), g);
        assert_eq!(v[1].scale(&scale), f.neg());
        assert!(s.annihilates(&[f, g]));
    }

    #[test]
    fn single_generator_has_no_syzygies() {
        let r = PolyRing::new(&["x", "y"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let f = parse_polynomial("x*y", &r).unwrap();
        assert!(module_syzygies(&[f]).unwrap().is_zero());
    }

    #[test]
    fn rejects_inhomogeneous() {
        let r = PolyRing::new(&["x", "y"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let f = parse_polynomial("x*y+x", &r).unwrap();
        assert!(matches!(module_syzygies(&[f.clone(), f]), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn twisted_cubic_has_two_linear_syzygies() {
        let r = PolyRing::new(&["a", "b", "c", "d"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let gens = [p("a*c-b^2"), p("a*d-b*c"), p("b*d-c^2")];
        let s = module_syzygies(&gens).unwrap();
        assert_eq!(s.degree_counts(), BTreeMap::from([(3, 2)]));
        assert!(s.annihilates(&gens));
    }
}
