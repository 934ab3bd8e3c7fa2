//! Textbook Buchberger algorithm, kept as an independent reference for the
//! matrix engine.

use super::{common_ring, reduce, s_polynomial, GroebnerBasis};
use crate::error::Result;
use crate::polyring::{Field, Monomial, MonomialOrder, Polynomial};

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Groebner basis by pairwise S-polynomial reduction with the
/// coprime and chain criteria.
pub fn buchberger_basis<F: Field>(gens: &[Polynomial<F>], order: MonomialOrder) -> Result<GroebnerBasis<F>> {
    let ring = common_ring(gens, order)?;
    let mut basis: Vec<Polynomial<F>> = Vec::new();
    for g in gens {
        let g = g.in_ring(&ring)?;
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    let lm = |p: &Polynomial<F>| *p.leading_monomial().unwrap();
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push(Pair { i, j, lcm: lm(&basis[i]).lcm(&lm(&basis[j])) });
        }
    }
    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();

    while !pairs.is_empty() {
        // Normal strategy: smallest lcm first, ties by index.
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                ring.cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(k);
        done.insert((i, j));
        if lm(&basis[i]).is_coprime(&lm(&basis[j])) {
            continue;
        }
        let chain = (0..basis.len()).any(|c| {
            c != i
                && c != j
                && lm(&basis[c]).divides(&lcm)
                && done.contains(&(i.min(c), i.max(c)))
                && done.contains(&(j.min(c), j.max(c)))
        });
        if chain {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        let h = basis.len();
        for g in 0..h {
            pairs.push(Pair { i: g, j: h, lcm: lm(&basis[g]).lcm(&lm(&r)) });
        }
        basis.push(r);
    }

    // Minimalize, then interreduce.
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (a, g) in basis.iter().enumerate() {
        let redundant =
            basis.iter().enumerate().any(|(b, h)| b != a && lm(h).divides(&lm(g)) && (lm(h) != lm(g) || b < a));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Polynomial<F>> = (0..minimal.len())
        .map(|a| {
            let others: Vec<Polynomial<F>> =
                minimal.iter().enumerate().filter(|(b, _)| *b != a).map(|(_, g)| g.clone()).collect();
            let head = Polynomial::monomial(&ring, lm(&minimal[a]), ring.field().one());
            let tail = minimal[a].sub(&head);
            head.add(&reduce(&tail, &others))
        })
        .collect();
    reduced.sort_by(|a, b| ring.cmp(&lm(a), &lm(b)));
    Ok(GroebnerBasis::from_reduced(&ring, reduced))
}
