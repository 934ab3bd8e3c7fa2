//! Graded Betti numbers through Koszul homology.
//!
//! `beta^{R/I}_{k,j} = dim H_k(x; R/I)_j`. In generic coordinates the trailing
//! variables that divide no leading monomial of the degree-revlex basis form
//! a regular sequence on `R/I`; they are set to zero first, which leaves the
//! Betti numbers unchanged and shrinks the Koszul complex considerably. The
//! remaining complex is finite-dimensional in each degree and its ranks are
//! computed directly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::census::GeneratorCensus;
use super::hilbert::HilbertSeries;
use crate::error::{Error, Result};
use crate::groebner::reduce;
use crate::idealops::{generic_change_of_coordinates, Ideal, Seed};
use crate::linalg::DenseMatrix;
use crate::polyring::{subsets, Field, Monomial, Polynomial, MAX_VARS};

/// Graded Betti numbers `beta_{i,j}` of an ideal: `i = 0` counts minimal
/// generators, `i = 1` their minimal syzygies, and so on.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), usize>,
    /// `true` unless an index or degree cap cut the computation short.
    complete: bool,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, u32), usize)>, complete: bool) -> Self {
        BettiTable { entries: entries.into_iter().filter(|&(_, b)| b > 0).collect(), complete }
    }

    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u32), usize> {
        &self.entries
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Projective dimension of the ideal (largest `i` with a nonzero entry).
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Total rank of each module of the resolution.
    pub fn ranks(&self) -> Vec<usize> {
        let Some(len) = self.length() else { return Vec::new() };
        let mut out = vec![0; len + 1];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }

    /// The `i = 0` row: minimal generators per degree.
    pub fn census(&self) -> GeneratorCensus {
        GeneratorCensus::new(self.entries.iter().filter(|((i, _), _)| *i == 0).map(|(&(_, j), &b)| (j, b)).collect())
    }

    /// `max (j - i)`: the regularity of the ideal (one more than that of `R/I`).
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j as i64 - i as i64).max()
    }

    /// `1 - sum (-1)^i beta_{i,j} t^j`, the Hilbert series numerator of `R/I`
    /// over `(1-t)^n`.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|&(_, j)| j as usize).max().unwrap_or(0);
        let mut out = vec![0i64; top + 1];
        out[0] = 1;
        for (&(i, j), &b) in &self.entries {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            out[j as usize] += sign * b as i64;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        out
    }
}

/// Macaulay-style grid: columns are `i`, rows are `j - i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks = self.ranks();
        if ranks.is_empty() {
            return writeln!(f, "total: 0");
        }
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.entries.keys().map(|&(i, j)| j as i64 - i as i64).collect();
            r.sort();
            r.dedup();
            r
        };
        let width = self.entries.values().chain(ranks.iter()).map(|b| b.to_string().len()).max().unwrap_or(1).max(2);
        let label = rows.iter().map(|r| r.to_string().len() + 1).max().unwrap_or(1).max(6);
        write!(f, "{:>label$}", "")?;
        for i in 0..ranks.len() {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:")?;
        for b in &ranks {
            write!(f, " {b:>width$}")?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{:>label$}", format!("{r}:"))?;
            for i in 0..ranks.len() {
                let j = r + i as i64;
                let b = if j >= 0 { self.get(i, j as u32) } else { 0 };
                if b == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {b:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        if !self.complete {
            writeln!(f, "(truncated)")?;
        }
        Ok(())
    }
}

/// JSON form: `{"i,j": count, ...}` plus a `complete` flag.
impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        let entries: BTreeMap<String, usize> =
            self.entries.iter().map(|(&(i, j), &b)| (format!("{i},{j}"), b)).collect();
        map.serialize_entry("entries", &entries)?;
        map.serialize_entry("complete", &self.complete)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for BettiTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            entries: BTreeMap<String, usize>,
            complete: bool,
        }
        let raw = Raw::deserialize(d)?;
        let mut entries = BTreeMap::new();
        for (k, b) in raw.entries {
            let (i, j) = k.split_once(',').ok_or_else(|| serde::de::Error::custom(format!("bad key {k:?}")))?;
            let i = i.trim().parse().map_err(serde::de::Error::custom)?;
            let j = j.trim().parse().map_err(serde::de::Error::custom)?;
            entries.insert((i, j), b);
        }
        Ok(BettiTable::from_entries(entries, raw.complete))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    /// Largest homological index `i` of the ideal's resolution to compute.
    pub max_index: usize,
    /// Skip internal degrees `j` above this.
    pub degree_bound: Option<u32>,
    /// Drives the generic change of coordinates.
    pub seed: Seed,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { max_index: usize::MAX, degree_bound: None, seed: Seed::default() }
    }
}

pub fn betti_table<F: Field>(ideal: &Ideal<F>, max_i: usize) -> Result<BettiTable> {
    betti_table_with(ideal, BettiOptions { max_index: max_i, ..BettiOptions::default() })
}

pub fn regularity<F: Field>(ideal: &Ideal<F>) -> Result<i64> {
    let t = betti_table_with(ideal, BettiOptions::default())?;
    t.regularity().ok_or_else(|| Error::InvalidInput("the zero ideal has no regularity".into()))
}

/// Stable monomial ideals: `x_i * u / x_max(u)` stays inside for `i < max(u)`.
/// Their regularity is the largest generator degree.
fn is_stable(lms: &[Monomial]) -> bool {
    lms.iter().all(|u| {
        let Some(t) = (0..MAX_VARS).rfind(|&k| u.exp(k) > 0) else {
            return true;
        };
        let drop = Monomial::var(t, 1).quotient_of(u);
        (0..t).all(|i| {
            let w = drop.mul(&Monomial::var(i, 1));
            lms.iter().any(|l| l.divides(&w))
        })
    })
}

/// Sparse images of each standard monomial under multiplication by each variable.
type MultTable<F> = Vec<Vec<Vec<(usize, <F as Field>::Elem)>>>;

/// The quotient `A = k[x_0..x_{m-1}] / J` on which Koszul homology is taken.
struct Quotient<F: Field> {
    field: F,
    m: usize,
    basis: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    standard: HashMap<u32, (Vec<Monomial>, HashMap<Monomial, usize>)>,
    /// `mult[e][s][u]`: normal form of `x_s * u` for `u` standard of degree `e`.
    mult: HashMap<u32, MultTable<F>>,
}

impl<F: Field> Quotient<F> {
    fn standard(&mut self, e: u32) -> &(Vec<Monomial>, HashMap<Monomial, usize>) {
        let (m, lms) = (self.m, &self.lms);
        self.standard.entry(e).or_insert_with(|| {
            let mons: Vec<Monomial> =
                Monomial::all_of_degree(m, e).into_iter().filter(|u| !lms.iter().any(|l| l.divides(u))).collect();
            let index = mons.iter().enumerate().map(|(k, u)| (*u, k)).collect();
            (mons, index)
        })
    }

    fn dim(&mut self, e: i64) -> usize {
        if e < 0 {
            0
        } else {
            self.standard(e as u32).0.len()
        }
    }

    fn multiplication(&mut self, e: u32) -> &MultTable<F> {
        if !self.mult.contains_key(&e) {
            let src = self.standard(e).0.clone();
            let target = self.standard(e + 1).1.clone();
            let ring = self.basis[0].ring().clone();
            let one = self.field.one();
            let table = (0..self.m)
                .map(|s| {
                    src.iter()
                        .map(|u| {
                            let w = u.mul(&Monomial::var(s, 1));
                            if let Some(&k) = target.get(&w) {
                                return vec![(k, one.clone())];
                            }
                            let nf = reduce(&Polynomial::monomial(&ring, w, one.clone()), &self.basis);
                            nf.terms().iter().map(|(v, c)| (target[v], c.clone())).collect()
                        })
                        .collect()
                })
                .collect();
            self.mult.insert(e, table);
        }
        &self.mult[&e]
    }

    /// Rank of the Koszul differential `K_k -> K_{k-1}` in internal degree `j`.
    fn koszul_rank(&mut self, k: usize, j: u32) -> usize {
        if k == 0 || k > self.m || (j as usize) < k {
            return 0;
        }
        let e = j - k as u32;
        let src_dim = self.dim(e as i64);
        let tgt_dim = self.dim(e as i64 + 1);
        if src_dim == 0 || tgt_dim == 0 {
            return 0;
        }
        let sources = subsets(self.m, k);
        let targets: HashMap<Vec<usize>, usize> =
            subsets(self.m, k - 1).into_iter().enumerate().map(|(n, t)| (t, n)).collect();
        let table = self.multiplication(e).clone();
        let field = self.field.clone();
        let mut mat = DenseMatrix::zeros(&field, targets.len() * tgt_dim, sources.len() * src_dim);
        for (si, set) in sources.iter().enumerate() {
            for (p, &s) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(p);
                let ti = targets[&rest];
                for (u, image) in table[s].iter().enumerate() {
                    for (v, c) in image {
                        let c = if p % 2 == 0 { c.clone() } else { field.neg(c) };
                        mat.set(ti * tgt_dim + v, si * src_dim + u, c);
                    }
                }
            }
        }
        mat.rank()
    }
}

pub fn betti_table_with<F: Field>(ideal: &Ideal<F>, options: BettiOptions) -> Result<BettiTable> {
    ideal.require_homogeneous()?;
    if ideal.is_zero() {
        return Ok(BettiTable::from_entries([], true));
    }
    if ideal.is_unit()? {
        return Ok(BettiTable::from_entries([((0, 0), 1)], true));
    }
    let (generic, _) = generic_change_of_coordinates(ideal, options.seed)?;
    let gb = generic.gb()?;
    let lms = gb.leading_monomials();
    let n = ideal.ring().nvars();
    let m = 1 + (0..n).filter(|&v| lms.iter().any(|l| l.exp(v) > 0)).max().unwrap_or(0);
    let basis: Vec<Polynomial<F>> =
        gb.elements().iter().map(|g| (m..n).fold(g.clone(), |p, v| p.set_var_zero(v))).collect();
    log::debug!("betti: {} variables after dropping {} regular linear forms", m, n - m);

    let max_deg = lms.iter().map(|l| l.degree()).max().unwrap_or(0);
    let min_deg = lms.iter().map(|l| l.degree()).min().unwrap_or(0);
    let hs = HilbertSeries::from_leading_monomials(m, &lms);
    // Upper bound on j - k for nonzero beta^{R/I}_{k,j}.
    let mut reg_bound: Option<u32> = None;
    if hs.krull_dimension() == 0 {
        let socle = (hs.reduced_numerator().len() as u32).saturating_sub(1);
        reg_bound = Some(socle);
    }
    if is_stable(&lms) {
        reg_bound = Some(reg_bound.map_or(max_deg - 1, |b| b.min(max_deg - 1)));
    }
    let lcm_all = lms.iter().fold(Monomial::ONE, |a, b| a.lcm(b)).degree();

    let mut q = Quotient {
        field: ideal.ring().field().clone(),
        m,
        basis,
        lms: lms.clone(),
        standard: HashMap::new(),
        mult: HashMap::new(),
    };
    let top_k = m.min(options.max_index.saturating_add(1));
    let mut complete = options.max_index.saturating_add(1) >= m;
    let mut entries = Vec::new();
    let mut ranks: HashMap<(usize, u32), usize> = HashMap::new();
    for k in 1..=top_k {
        let hi = match reg_bound {
            Some(r) => k as u32 + r,
            None => (k as u32 * max_deg).min(lcm_all),
        };
        let hi = match options.degree_bound {
            Some(b) if b < hi => {
                complete = false;
                b
            }
            _ => hi,
        };
        let lo = k as u32 + min_deg - 1;
        for j in lo..=hi {
            let dim = subsets(m, k).len() * q.dim(j as i64 - k as i64);
            if dim == 0 {
                continue;
            }
            let r_out = *ranks.entry((k, j)).or_insert_with(|| q.koszul_rank(k, j));
            let r_in = *ranks.entry((k + 1, j)).or_insert_with(|| q.koszul_rank(k + 1, j));
            let b = dim - r_out - r_in;
            if b > 0 {
                entries.push(((k - 1, j), b));
            }
        }
    }
    Ok(BettiTable::from_entries(entries, complete))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::hilbert_series;
    use crate::polyring::{MonomialOrder, PolyRing, PrimeField};

    fn ring(n: usize) -> crate::polyring::Ring<PrimeField> {
        PolyRing::with_indexed_vars("x", n, PrimeField::default()).unwrap()
    }

    #[test]
    fn complete_intersection_is_koszul() {
        let r = ring(4);
        let i = Ideal::parse(&r, &["x0^2+x1*x2", "x3^3-x0*x1*x2+x2^3"]).unwrap();
        let t = betti_table(&i, 5).unwrap();
        assert_eq!(t, BettiTable::from_entries([((0, 2), 1), ((0, 3), 1), ((1, 5), 1)], true));
        assert_eq!(t.regularity(), Some(4));
        assert_eq!(t.hilbert_numerator(), hilbert_series(&i).unwrap().numerator());
    }

    #[test]
    fn twisted_cubic() {
        let r = PolyRing::new(&["a", "b", "c", "d"], PrimeField::default(), MonomialOrder::DegRevLex).unwrap();
        let i = Ideal::parse(&r, &["a*c-b^2", "a*d-b*c", "b*d-c^2"]).unwrap();
        let t = betti_table(&i, 5).unwrap();
        assert_eq!(t.ranks(), vec![3, 2]);
        assert_eq!(t.get(1, 3), 2);
        assert_eq!(t.regularity(), Some(2));
        assert_eq!(t.census(), GeneratorCensus::from_pairs(&[(2, 3)]));
    }

    #[test]
    fn points_in_the_plane() {
        // Three general points: ideal generated by three quadrics with two linear syzygies.
        let r = ring(3);
        let i = Ideal::parse(&r, &["x0*x1", "x0*x2", "x1*x2"]).unwrap();
        let t = betti_table(&i, 3).unwrap();
        assert_eq!(t.get(0, 2), 3);
        assert_eq!(t.get(1, 3), 2);
        assert_eq!(t.hilbert_numerator(), hilbert_series(&i).unwrap().numerator());
    }

    #[test]
    fn index_cap_marks_incomplete() {
        let r = ring(3);
        let i = Ideal::parse(&r, &["x0", "x1", "x2"]).unwrap();
        let full = betti_table(&i, 5).unwrap();
        assert_eq!(full.ranks(), vec![3, 3, 1]);
        let cut = betti_table(&i, 0).unwrap();
        assert_eq!(cut.ranks(), vec![3]);
        assert!(!cut.is_complete());
    }

    #[test]
    fn json_and_grid() {
        let t = BettiTable::from_entries([((0, 2), 9), ((1, 3), 16), ((2, 4), 9), ((3, 6), 1)], true);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"entries":{"0,2":9,"1,3":16,"2,4":9,"3,6":1},"complete":true}"#);
        assert_eq!(serde_json::from_str::<BettiTable>(&s).unwrap(), t);
        let grid = t.to_string();
        assert!(grid.contains("total:  9 16  9  1"), "{grid}");
        assert!(grid.contains("3:  .  .  .  1"), "{grid}");
        assert_eq!(t.regularity(), Some(3));
    }
}
