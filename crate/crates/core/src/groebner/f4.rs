//! Matrix-based Groebner engine: pairs of equal sugar are processed together
//! as one Macaulay-style matrix, with Gebauer-Moeller pair management.

use std::collections::{HashMap, HashSet};

use crate::polyring::{Field, Monomial, Polynomial, Ring, Term, MAX_VARS};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbOptions {
    /// Ignore pairs and inputs whose sugar exceeds this degree. The result is a
    /// truncated basis: complete through this degree for homogeneous input.
    pub degree_bound: Option<u32>,
}

pub(crate) struct EngineOutput<F: Field> {
    pub basis: Vec<Vec<Term<F>>>,
    /// Input rows that were independent of everything of lower degree, in the
    /// order found (homogeneous input only).
    pub minimal_generators: Vec<Vec<Term<F>>>,
    pub truncated: bool,
}

struct Elem<F: Field> {
    terms: Vec<Term<F>>,
    lm: Monomial,
    mask: u32,
    sugar: u32,
    redundant: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn divmask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for i in 0..MAX_VARS {
        if m.exp(i) > 0 {
            mask |= 1 << i;
        }
    }
    mask
}

struct Engine<'a, F: Field> {
    ring: &'a Ring<F>,
    field: F,
    basis: Vec<Elem<F>>,
    pairs: Vec<Pair>,
}

type SparseRow<F> = Vec<(usize, <F as Field>::Elem)>;

impl<'a, F: Field> Engine<'a, F> {
    fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        let mm = divmask(m);
        let mut fallback = None;
        for (k, e) in self.basis.iter().enumerate() {
            if e.mask & !mm != 0 || !e.lm.divides(m) {
                continue;
            }
            if !e.redundant {
                return Some(k);
            }
            fallback.get_or_insert(k);
        }
        fallback
    }

    fn sugar_of(&self, i: usize, lcm: &Monomial) -> u32 {
        let e = &self.basis[i];
        e.sugar + lcm.degree() - e.lm.degree()
    }

    /// Gebauer-Moeller update for a newly added element at index `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.basis[h].lm;
        let candidates: Vec<(usize, Monomial)> =
            (0..h).filter(|&g| !self.basis[g].redundant).map(|g| (g, lm_h.lcm(&self.basis[g].lm))).collect();

        // Chain criterion among the new pairs themselves.
        let mut keep = vec![true; candidates.len()];
        for (a, (ga, la)) in candidates.iter().enumerate() {
            if lm_h.is_coprime(&self.basis[*ga].lm) {
                continue;
            }
            for (b, (_, lb)) in candidates.iter().enumerate() {
                if a == b || !keep[b] {
                    continue;
                }
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // Coprime leading monomials: the pair reduces to zero.
        let new_pairs: Vec<Pair> = candidates
            .iter()
            .zip(&keep)
            .filter(|((g, _), k)| **k && !lm_h.is_coprime(&self.basis[*g].lm))
            .map(|((g, l), _)| Pair { i: *g, j: h, lcm: *l, sugar: self.sugar_of(*g, l).max(self.sugar_of(h, l)) })
            .collect();

        // Old pairs whose lcm is strictly covered through h.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !lm_h.divides(&p.lcm) {
                return true;
            }
            let li = lm_h.lcm(&basis[p.i].lm);
            let lj = lm_h.lcm(&basis[p.j].lm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);

        for g in 0..h {
            if !self.basis[g].redundant && lm_h.divides(&self.basis[g].lm) {
                self.basis[g].redundant = true;
            }
        }
    }

    fn add_element(&mut self, terms: Vec<Term<F>>, sugar: u32) {
        let lm = terms[0].0;
        self.basis.push(Elem { mask: divmask(&lm), lm, terms, sugar, redundant: false });
        let h = self.basis.len() - 1;
        self.update(h);
    }

    fn multiple(&self, k: usize, m: &Monomial) -> Vec<Term<F>> {
        self.basis[k].terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect()
    }

    /// One matrix step. Returns new rows, each tagged with whether it came
    /// from an input polynomial.
    fn step(&mut self, pairs: &[Pair], inputs: &[Vec<Term<F>>]) -> Vec<(Vec<Term<F>>, bool)> {
        let field = self.field.clone();
        let mut reducers: HashMap<Monomial, Vec<Term<F>>> = HashMap::new();
        let mut to_reduce: Vec<Vec<Term<F>>> = Vec::new();
        let mut seen_rows: HashSet<(usize, Monomial)> = HashSet::new();
        for p in pairs {
            for (k, side) in [(p.i, 0), (p.j, 1)] {
                let mult = self.basis[k].lm.quotient_of(&p.lcm);
                if !seen_rows.insert((k, mult)) {
                    continue;
                }
                let row = self.multiple(k, &mult);
                if side == 0 && !reducers.contains_key(&p.lcm) {
                    reducers.insert(p.lcm, row);
                } else {
                    to_reduce.push(row);
                }
            }
        }
        let n_pair_rows = to_reduce.len();
        to_reduce.extend(inputs.iter().cloned());

        // Symbolic preprocessing.
        let mut done: HashSet<Monomial> = reducers.keys().copied().collect();
        let mut queue: Vec<Monomial> = Vec::new();
        for row in reducers.values() {
            queue.extend(row.iter().skip(1).map(|t| t.0));
        }
        for row in &to_reduce {
            queue.extend(row.iter().map(|t| t.0));
        }
        while let Some(m) = queue.pop() {
            if !done.insert(m) {
                continue;
            }
            if let Some(k) = self.find_divisor(&m) {
                let mult = self.basis[k].lm.quotient_of(&m);
                let row = self.multiple(k, &mult);
                queue.extend(row.iter().skip(1).map(|t| t.0).filter(|t| !done.contains(t)));
                reducers.insert(m, row);
            }
        }

        let mut cols: Vec<Monomial> = done.into_iter().collect();
        cols.sort_by(|a, b| self.ring.cmp(b, a));
        let col_of: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let ncols = cols.len();
        let to_sparse = |row: &[Term<F>]| -> SparseRow<F> { row.iter().map(|(m, c)| (col_of[m], c.clone())).collect() };

        let mut pivots: Vec<Option<SparseRow<F>>> = vec![None; ncols];
        for (m, row) in &reducers {
            pivots[col_of[m]] = Some(to_sparse(row));
        }

        let mut out = Vec::new();
        let mut dense = vec![field.zero(); ncols];
        for (idx, row) in to_reduce.iter().enumerate() {
            let sparse = to_sparse(row);
            let mut first = ncols;
            for (c, v) in &sparse {
                dense[*c] = v.clone();
                first = first.min(*c);
            }
            let mut lead = None;
            for c in first..ncols {
                if field.is_zero(&dense[c]) {
                    continue;
                }
                match &pivots[c] {
                    Some(prow) => {
                        let a = dense[c].clone();
                        for (cc, x) in prow {
                            dense[*cc] = field.sub_mul(&dense[*cc], &a, x);
                        }
                    }
                    None => {
                        if lead.is_none() {
                            lead = Some(c);
                        }
                    }
                }
            }
            if let Some(l) = lead {
                let inv = field.inv(&dense[l]).expect("nonzero lead");
                let mut new_row: SparseRow<F> = Vec::new();
                for c in l..ncols {
                    if !field.is_zero(&dense[c]) {
                        new_row.push((c, field.mul(&dense[c], &inv)));
                        dense[c] = field.zero();
                    }
                }
                let terms: Vec<Term<F>> = new_row.iter().map(|(c, v)| (cols[*c], v.clone())).collect();
                pivots[l] = Some(new_row);
                out.push((terms, idx >= n_pair_rows));
            }
            debug_assert!(dense.iter().all(|x| field.is_zero(x)));
        }
        out
    }
}

fn poly_sugar<F: Field>(terms: &[Term<F>]) -> u32 {
    terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

/// Computes a Groebner basis (not yet reduced) of the inputs in `ring`'s order.
/// Inputs must live in `ring` already.
pub(crate) fn run<F: Field>(ring: &Ring<F>, inputs: &[Polynomial<F>], options: GbOptions) -> EngineOutput<F> {
    let field = ring.field().clone();
    let mut engine = Engine { ring, field: field.clone(), basis: Vec::new(), pairs: Vec::new() };
    let mut pending: Vec<(u32, Vec<Term<F>>)> = inputs
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let p = p.monic();
            let terms = p.terms().to_vec();
            (poly_sugar::<F>(&terms), terms)
        })
        .collect();
    let mut minimal = Vec::new();
    let mut truncated = false;

    loop {
        let next_pair = engine.pairs.iter().map(|p| p.sugar).min();
        let next_input = pending.iter().map(|p| p.0).min();
        let Some(s) = [next_pair, next_input].into_iter().flatten().min() else {
            break;
        };
        if options.degree_bound.is_some_and(|b| s > b) {
            truncated = true;
            break;
        }
        let (selected, rest): (Vec<Pair>, Vec<Pair>) =
            std::mem::take(&mut engine.pairs).into_iter().partition(|p| p.sugar == s);
        engine.pairs = rest;
        let (inp, rest_inputs): (Vec<_>, Vec<_>) = pending.into_iter().partition(|p| p.0 == s);
        pending = rest_inputs;
        let inp: Vec<Vec<Term<F>>> = inp.into_iter().map(|p| p.1).collect();

        let mut new_rows = engine.step(&selected, &inp);
        new_rows.sort_by(|a, b| ring.cmp(&a.0[0].0, &b.0[0].0));
        for (terms, from_input) in new_rows {
            if terms[0].0 == Monomial::ONE {
                // Unit ideal: the basis is {1}.
                return EngineOutput {
                    basis: vec![terms],
                    minimal_generators: if from_input { vec![vec![(Monomial::ONE, field.one())]] } else { minimal },
                    truncated: false,
                };
            }
            if from_input {
                minimal.push(terms.clone());
            }
            let sugar = s.max(poly_sugar::<F>(&terms));
            engine.add_element(terms, sugar);
        }
    }

    // Rows found in the same step can still divide one another when the input
    // is not homogeneous.
    let kept: Vec<Elem<F>> = engine.basis.into_iter().filter(|e| !e.redundant).collect();
    let basis = kept
        .iter()
        .enumerate()
        .filter(|(a, e)| {
            !kept.iter().enumerate().any(|(b, o)| b != *a && o.lm.divides(&e.lm) && (o.lm != e.lm || b < *a))
        })
        .map(|(_, e)| e.terms.clone())
        .collect();
    EngineOutput { basis, minimal_generators: minimal, truncated }
}

/// Fully interreduces a minimal basis (distinct leading monomials, none
/// dividing another) into the reduced basis, sorted by increasing leading monomial.
pub(crate) fn interreduce<F: Field>(ring: &Ring<F>, minimal: Vec<Vec<Term<F>>>) -> Vec<Vec<Term<F>>> {
    let field = ring.field().clone();
    let lms: Vec<Monomial> = minimal.iter().map(|t| t[0].0).collect();
    let masks: Vec<u32> = lms.iter().map(divmask).collect();
    let find = |m: &Monomial| -> Option<usize> {
        let mm = divmask(m);
        (0..lms.len()).find(|&k| masks[k] & !mm == 0 && lms[k].divides(m))
    };

    // Rows: the basis itself plus reducers for every reducible tail monomial.
    let mut rows: HashMap<Monomial, Vec<Term<F>>> = HashMap::new();
    let mut done: HashSet<Monomial> = HashSet::new();
    let mut queue: Vec<Monomial> = Vec::new();
    for t in &minimal {
        done.insert(t[0].0);
        queue.extend(t.iter().skip(1).map(|x| x.0));
        rows.insert(t[0].0, t.clone());
    }
    while let Some(m) = queue.pop() {
        if !done.insert(m) {
            continue;
        }
        if let Some(k) = find(&m) {
            let mult = lms[k].quotient_of(&m);
            let row: Vec<Term<F>> = minimal[k].iter().map(|(t, c)| (t.mul(&mult), c.clone())).collect();
            queue.extend(row.iter().skip(1).map(|x| x.0).filter(|x| !done.contains(x)));
            rows.insert(m, row);
        }
    }
    let mut cols: Vec<Monomial> = done.into_iter().collect();
    cols.sort_by(|a, b| ring.cmp(b, a));
    let col_of: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let ncols = cols.len();

    // Back substitution from the smallest pivot upwards.
    let mut reduced: Vec<Option<SparseRow<F>>> = vec![None; ncols];
    let mut pivot_cols: Vec<usize> = rows.keys().map(|m| col_of[m]).collect();
    pivot_cols.sort_unstable_by(|a, b| b.cmp(a));
    let mut dense = vec![field.zero(); ncols];
    for pc in pivot_cols {
        let row = &rows[&cols[pc]];
        for (m, c) in row {
            dense[col_of[m]] = c.clone();
        }
        for c in pc + 1..ncols {
            if field.is_zero(&dense[c]) {
                continue;
            }
            if let Some(prow) = &reduced[c] {
                let a = dense[c].clone();
                for (cc, x) in prow {
                    dense[*cc] = field.sub_mul(&dense[*cc], &a, x);
                }
            }
        }
        let mut out: SparseRow<F> = Vec::new();
        for c in pc..ncols {
            if !field.is_zero(&dense[c]) {
                out.push((c, std::mem::replace(&mut dense[c], field.zero())));
            }
        }
        reduced[pc] = Some(out);
    }

    let mut result: Vec<Vec<Term<F>>> = lms
        .iter()
        .map(|m| {
            reduced[col_of[m]].as_ref().expect("basis row reduced").iter().map(|(c, v)| (cols[*c], v.clone())).collect()
        })
        .collect();
    result.sort_by(|a: &Vec<Term<F>>, b| ring.cmp(&a[0].0, &b[0].0));
    result
}
