//! Brute-force Groebner oracle shared by the test targets.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use dpcy::groebner::reduced_groebner_basis;
use dpcy::polyring::{Field, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const P: u64 = 32003;

pub fn inv(a: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Row-reduced echelon form mod P; returns (pivot column, row) pairs.
pub fn rref(mut rows: Vec<Vec<u64>>, cols: usize) -> Vec<(usize, Vec<u64>)> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let s = inv(rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = *v * s % P;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] + (P - f) * rows[r][j]) % P;
                }
            }
        }
        pivots.push((c, r));
        r += 1;
    }
    pivots.into_iter().map(|(c, r)| (c, rows[r].clone())).collect()
}

pub fn to_u64(field: &PrimeField, a: &<PrimeField as Field>::Elem) -> u64 {
    let v: i64 = field.format(a).parse().unwrap();
    v.rem_euclid(P as i64) as u64
}

/// Polynomial as a map monomial -> coefficient in [0, P).
pub fn coefficients(p: &Polynomial<PrimeField>) -> BTreeMap<Monomial, u64> {
    p.terms().iter().map(|(m, c)| (*m, to_u64(p.field(), c))).collect()
}

/// The reduced Groebner basis of a homogeneous ideal, degree by degree: the
/// echelon rows of `I_d` whose pivots are not multiples of lower-degree
/// leading monomials.
pub fn staircase_oracle(
    gens: &[Polynomial<PrimeField>],
    order: MonomialOrder,
    nvars: usize,
    top: u32,
) -> Vec<BTreeMap<Monomial, u64>> {
    let mut basis = Vec::new();
    let mut previous: Vec<Monomial> = Vec::new();
    for d in 0..=top {
        let mut cols = Monomial::all_of_degree(nvars, d);
        cols.sort_by(|a, b| order.compare(b, a));
        let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            let gd = g.degree().unwrap();
            if gd > d {
                continue;
            }
            for m in Monomial::all_of_degree(nvars, d - gd) {
                let mut row = vec![0u64; cols.len()];
                for (t, c) in coefficients(g) {
                    row[index[&t.mul(&m)]] = c;
                }
                rows.push(row);
            }
        }
        let echelon = rref(rows, cols.len());
        let mut current = Vec::new();
        for (c, row) in echelon {
            let lm = cols[c];
            let is_new = !previous.iter().any(|q| q.divides(&lm));
            if is_new {
                basis.push(row.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (cols[j], v)).collect());
            }
            current.push(lm);
        }
        previous = current;
    }
    basis
}

pub fn random_form(ring: &Ring<PrimeField>, rng: &mut ChaCha8Rng, d: u32) -> Polynomial<PrimeField> {
    let field = *ring.field();
    let monomials = Monomial::all_of_degree(ring.nvars(), d);
    // Sparse forms give more interesting staircases than dense ones.
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    for m in monomials {
        if rng.random_bool(0.5) {
            terms.push((m, rng.random_range(1..P as u32)));
        }
    }
    Polynomial::from_terms(ring, terms.into_iter().map(|(m, c)| (m, field.from_i64(c as i64))))
}

pub fn random_ideal(rng: &mut ChaCha8Rng, ring: &Ring<PrimeField>) -> Vec<Polynomial<PrimeField>> {
    let k = rng.random_range(1..=4);
    (0..k)
        .map(|_| loop {
            let d = rng.random_range(1..=4);
            let f = random_form(ring, rng, d);
            if !f.is_zero() {
                break f;
            }
        })
        .collect()
}

/// Compares the engine with the staircase oracle on `trials` random
/// homogeneous ideals in two or three variables with generators of degree at
/// most four. Returns the first disagreement.
pub fn staircase_trials(seed: u64, trials: usize) -> Result<(), String> {
    let field = PrimeField::new(P as u32).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let nvars = rng.random_range(2..=3);
        let order = if trial % 3 == 0 { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let ring = PolyRing::new(&["x", "y", "z"][..nvars], field, order).unwrap();
        let gens = random_ideal(&mut rng, &ring);

        let gb = reduced_groebner_basis(&gens, order).map_err(|e| e.to_string())?;
        let mut engine: Vec<BTreeMap<Monomial, u64>> = gb.elements().iter().map(coefficients).collect();
        let engine_top = gb.elements().iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        // Three extra degrees past the last basis element must add nothing.
        let mut oracle = staircase_oracle(&gens, order, nvars, engine_top + 3);
        engine.sort();
        oracle.sort();
        if engine != oracle {
            let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            return Err(format!("trial {trial}, {order:?}: generators {shown:?}"));
        }
    }
    Ok(())
}
