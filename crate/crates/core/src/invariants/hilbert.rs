//! Hilbert series of monomial ideals by pivot recursion, and everything read
//! off from it: Hilbert function, Hilbert polynomial, dimension and degree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idealops::Ideal;
use crate::polyring::{Field, Monomial, MAX_VARS};

/// `HS(t) = numerator(t) / (1-t)^nvars = reduced(t) / (1-t)^krull_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: Vec<i64>,
    reduced: Vec<i64>,
    krull_dim: usize,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn support_mask(m: &Monomial) -> u32 {
    (0..MAX_VARS).filter(|&i| m.exp(i) > 0).fold(0, |acc, i| acc | (1 << i))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator of the Hilbert series of `R/M` over `(1-t)^n`, for `M`
/// generated by `gens` (the result does not depend on `n`).
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    numerator_rec(minimalize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    let masks: Vec<u32> = gens.iter().map(support_mask).collect();
    let mut seen = 0u32;
    let mut coprime = true;
    for m in &masks {
        if seen & m != 0 {
            coprime = false;
            break;
        }
        seen |= m;
    }
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return trim(acc);
    }
    // Pivot on the variable occurring in the most generators, at its
    // smallest positive exponent among them.
    let mut counts = [0usize; MAX_VARS];
    for g in &gens {
        for (i, c) in counts.iter_mut().enumerate() {
            if g.exp(i) > 0 {
                *c += 1;
            }
        }
    }
    let v = (0..MAX_VARS).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let e = gens.iter().map(|g| g.exp(v)).filter(|&x| x > 0).min().unwrap();
    let pivot = Monomial::var(v, e as u8);

    let mut plus = gens.clone();
    plus.push(pivot);
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let cut = g.exp(v).min(e);
            Monomial::var(v, cut as u8).quotient_of(g)
        })
        .collect();
    let mut out = numerator_rec(minimalize(plus));
    poly_add_shifted(&mut out, &numerator_rec(minimalize(quotient)), e as usize);
    trim(out)
}

fn binom(n: i128, k: usize) -> i128 {
    // Polynomial binomial coefficient x(x-1)...(x-k+1)/k!, valid for any integer x.
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

impl HilbertSeries {
    pub fn from_numerator(nvars: usize, numerator: Vec<i64>) -> Self {
        let numerator = trim(numerator);
        let mut reduced = numerator.clone();
        // The unit ideal has the zero series; give it dimension 0.
        let mut krull_dim = if numerator.iter().all(|&c| c == 0) { 0 } else { nvars };
        while krull_dim > 0 && reduced.iter().sum::<i64>() == 0 && reduced.iter().any(|&c| c != 0) {
            // Divide by (1 - t): q_k = sum_{i<=k} p_i.
            let mut q = Vec::with_capacity(reduced.len() - 1);
            let mut acc = 0;
            for c in &reduced[..reduced.len() - 1] {
                acc += c;
                q.push(acc);
            }
            reduced = trim(q);
            krull_dim -= 1;
        }
        HilbertSeries { nvars, numerator, reduced, krull_dim }
    }

    pub fn from_leading_monomials(nvars: usize, lms: &[Monomial]) -> Self {
        Self::from_numerator(nvars, monomial_numerator(lms))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Coefficients of the numerator over `(1-t)^nvars`, constant term first.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    /// Coefficients of the numerator over `(1-t)^krull_dim`.
    pub fn reduced_numerator(&self) -> &[i64] {
        &self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.iter().all(|&c| c == 0)
    }

    /// Krull dimension of `R/I`.
    pub fn krull_dimension(&self) -> usize {
        self.krull_dim
    }

    /// Dimension of the projective scheme; `-1` when it is empty.
    pub fn projective_dimension(&self) -> i64 {
        self.krull_dim as i64 - 1
    }

    pub fn degree(&self) -> i64 {
        self.reduced.iter().sum()
    }

    /// `dim (R/I)_d`.
    pub fn hilbert_function(&self, d: u32) -> i64 {
        let d = d as usize;
        if self.krull_dim == 0 {
            return self.reduced.get(d).copied().unwrap_or(0);
        }
        let r = self.krull_dim - 1;
        let v: i128 =
            self.reduced.iter().enumerate().take(d + 1).map(|(k, &h)| h as i128 * binom((d - k + r) as i128, r)).sum();
        v as i64
    }

    /// Value at `d` of the Hilbert polynomial (any integer argument).
    pub fn hilbert_polynomial(&self, d: i64) -> i64 {
        if self.krull_dim == 0 {
            return 0;
        }
        let r = self.krull_dim - 1;
        let v: i128 = self
            .reduced
            .iter()
            .enumerate()
            .map(|(k, &h)| h as i128 * binom(d as i128 - k as i128 + r as i128, r))
            .sum();
        v as i64
    }

    /// Hilbert polynomial as `(numerator, denominator)` coefficient pairs in
    /// increasing powers of `d`, each reduced to lowest terms.
    pub fn hilbert_polynomial_coefficients(&self) -> Vec<(i64, i64)> {
        if self.krull_dim == 0 {
            return vec![(0, 1)];
        }
        // Interpolate from values at 0..=r with exact rationals.
        use num_rational::Ratio;
        let r = self.krull_dim - 1;
        let xs: Vec<i64> = (0..=r as i64).collect();
        let ys: Vec<i64> = xs.iter().map(|&x| self.hilbert_polynomial(x)).collect();
        let mut coeffs = vec![Ratio::<i128>::from_integer(0); r + 1];
        for (i, &xi) in xs.iter().enumerate() {
            // Lagrange basis polynomial for node i.
            let mut basis = vec![Ratio::<i128>::from_integer(1)];
            let mut denom = Ratio::<i128>::from_integer(1);
            for (j, &xj) in xs.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Ratio::from_integer(0); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += *b;
                    next[k] -= *b * Ratio::from_integer(xj as i128);
                }
                basis = next;
                denom *= Ratio::from_integer((xi - xj) as i128);
            }
            for (k, b) in basis.iter().enumerate() {
                coeffs[k] += *b * Ratio::from_integer(ys[i] as i128) / denom;
            }
        }
        coeffs.iter().map(|c| (*c.numer() as i64, *c.denom() as i64)).collect()
    }
}

/// Hilbert series of `R/I` from the leading monomials of its degree-revlex basis.
pub fn hilbert_series<F: Field>(ideal: &Ideal<F>) -> Result<HilbertSeries> {
    ideal.require_homogeneous()?;
    let gb = ideal.gb()?;
    Ok(HilbertSeries::from_leading_monomials(ideal.ring().nvars(), &gb.leading_monomials()))
}

/// `dim (R/I)_d`, counted on the standard monomials of the leading-term ideal.
pub fn hilbert_function<F: Field>(ideal: &Ideal<F>, d: u32) -> Result<u64> {
    Ok(hilbert_series(ideal)?.hilbert_function(d) as u64)
}

/// `dim I_d`, the number of independent forms of degree `d` in the ideal.
pub fn graded_piece_dimension<F: Field>(ideal: &Ideal<F>, d: u32) -> Result<u64> {
    let n = ideal.ring().nvars() as u64;
    let all = (1..=d as u64).fold(1u64, |acc, k| acc * (n - 1 + k) / k);
    Ok(all - hilbert_function(ideal, d)?)
}

/// `(dimension of V(I) in projective space, degree)`.
pub fn dimension_degree<F: Field>(ideal: &Ideal<F>) -> Result<(i64, i64)> {
    let hs = hilbert_series(ideal)?;
    if hs.is_zero() {
        return Err(Error::UnitIdeal);
    }
    Ok((hs.projective_dimension(), hs.degree()))
}

/// Direct count of degree-`d` monomials outside the monomial ideal; used to
/// cross-check the series.
pub fn count_standard_monomials(nvars: usize, lms: &[Monomial], d: u32) -> u64 {
    Monomial::all_of_degree(nvars, d).iter().filter(|m| !lms.iter().any(|l| l.divides(m))).count() as u64
}
