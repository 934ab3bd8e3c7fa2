use super::coords::CoordinateChange;
use super::seed::Seed;
use super::Ideal;
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis_with, GbOptions, GroebnerBasis};
use crate::invariants::HilbertSeries;
use crate::polyring::{Field, MonomialOrder, PolyRing, Polynomial, Ring};

fn var_indices<F: Field>(ring: &Ring<F>, vars: &[&str]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for v in vars {
        let i = ring.var_index(v)?;
        if !out.contains(&i) {
            out.push(i);
        }
    }
    Ok(out)
}

/// Block-order basis with the variables `elim` placed first; returns the
/// elements free of them, moved into the ring of the remaining variables.
fn elimination_part<F: Field>(
    ideal: &Ideal<F>,
    elim: &[usize],
    degree_bound: Option<u32>,
) -> Result<(Ring<F>, Vec<Polynomial<F>>, bool)> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let k = elim.len();
    let rest: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    if rest.is_empty() {
        return Err(Error::InvalidInput("cannot eliminate every variable".into()));
    }
    let mut perm = vec![0usize; n];
    let mut names = Vec::with_capacity(n);
    for (pos, &i) in elim.iter().chain(&rest).enumerate() {
        perm[i] = pos;
        names.push(ring.vars()[i].clone());
    }
    let block_ring = PolyRing::new(&names, ring.field().clone(), MonomialOrder::Block(k))?;
    let map: Vec<Option<usize>> = perm.iter().map(|&p| Some(p)).collect();
    let gens: Vec<Polynomial<F>> =
        ideal.generators().iter().map(|g| g.remap(&block_ring, &map)).collect::<Result<_>>()?;
    let small_names: Vec<String> = rest.iter().map(|&i| ring.vars()[i].clone()).collect();
    let small = PolyRing::new(&small_names, ring.field().clone(), MonomialOrder::DegRevLex)?;
    if gens.is_empty() {
        return Ok((small, Vec::new(), true));
    }
    let gb = groebner_basis_with(&gens, MonomialOrder::Block(k), GbOptions { degree_bound })?;
    let back: Vec<Option<usize>> = (0..n).map(|p| p.checked_sub(k)).collect();
    let kept: Vec<Polynomial<F>> = gb
        .elements()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| (0..k).all(|i| m.exp(i) == 0)))
        .map(|g| g.remap(&small, &back))
        .collect::<Result<_>>()?;
    Ok((small, kept, gb.degree_bound().is_none()))
}

/// `I ∩ k[remaining variables]`, living in the ring of the remaining variables.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, vars: &[&str]) -> Result<Ideal<F>> {
    let elim = var_indices(ideal.ring(), vars)?;
    if elim.is_empty() {
        return Ok(ideal.clone());
    }
    let (small, kept, complete) = elimination_part(ideal, &elim, None)?;
    debug_assert!(complete);
    // The block order restricted to the remaining variables is degree-revlex,
    // so the kept elements already form its reduced basis.
    let gb = GroebnerBasis::from_reduced(&small, kept.clone());
    Ok(Ideal::new(&small, kept)?.with_basis(gb))
}

/// Elimination through generators of degree at most `degree_bound` only
/// (homogeneous input): the result is the part of the elimination ideal
/// generated in degrees up to the bound.
pub fn eliminate_truncated<F: Field>(ideal: &Ideal<F>, vars: &[&str], degree_bound: u32) -> Result<Ideal<F>> {
    ideal.require_homogeneous()?;
    let elim = var_indices(ideal.ring(), vars)?;
    if elim.is_empty() {
        return Ok(ideal.truncate_generators(degree_bound));
    }
    let (small, kept, complete) = elimination_part(ideal, &elim, Some(degree_bound))?;
    let kept: Vec<Polynomial<F>> = kept.into_iter().filter(|g| g.degree().is_some_and(|d| d <= degree_bound)).collect();
    let out = Ideal::new(&small, kept.clone())?;
    if complete {
        let gb = GroebnerBasis::from_reduced(&small, kept);
        return Ok(out.with_basis(gb));
    }
    Ok(out)
}

fn fresh_name<F: Field>(ring: &Ring<F>) -> String {
    (0..).map(|k| format!("t{k}")).find(|n| !ring.vars().contains(n)).expect("infinite supply")
}

/// `I ∩ J` by eliminating `t` from `t*I + (1-t)*J`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    i.require_same_ring(j)?;
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ideal::new(ring, Vec::new());
    }
    if i.is_unit()? {
        return Ideal::new(ring, j.generators().to_vec());
    }
    if j.is_unit()? {
        return Ok(i.clone());
    }
    let t = fresh_name(ring);
    let mut names = vec![t.clone()];
    names.extend(ring.vars().iter().cloned());
    let big = PolyRing::new(&names, ring.field().clone(), ring.order())?;
    let shift: Vec<Option<usize>> = (1..=ring.nvars()).map(Some).collect();
    let tv = Polynomial::var(&big, 0);
    let one_minus_t = Polynomial::one(&big).sub(&tv);
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(tv.mul(&g.remap(&big, &shift)?));
    }
    for g in j.generators() {
        gens.push(one_minus_t.mul(&g.in_ring(ring)?.remap(&big, &shift)?));
    }
    let elim = eliminate(&Ideal::new(&big, gens)?, &[t.as_str()])?;
    // Same variable names as `ring`; restore its order.
    let gens = elim.generators().iter().map(|g| g.in_ring(ring)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// `I : J = {f : f J ⊆ I}`, as the intersection over generators `g` of `J`
/// of `(I ∩ <g>) / g`.
pub fn ideal_quotient<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    i.require_same_ring(j)?;
    let ring = i.ring();
    let mut acc: Option<Ideal<F>> = None;
    for g in j.generators() {
        let g = g.in_ring(ring)?;
        let part = if i.contains(&g)? {
            Ideal::unit(ring)
        } else {
            let principal = Ideal::new(ring, vec![g.clone()])?;
            let meet = intersect(i, &principal)?;
            let gens = meet
                .generators()
                .iter()
                .map(|h| h.exact_div(&g).ok_or_else(|| Error::InvalidInput("inexact division in quotient".into())))
                .collect::<Result<Vec<_>>>()?;
            Ideal::new(ring, gens)?
        };
        acc = Some(match acc {
            None => part,
            Some(a) => intersect(&a, &part)?,
        });
    }
    acc.unwrap_or_else(|| Ideal::unit(ring)).minimalized_by_gb()
}

/// Result of a saturation.
#[derive(Clone, Debug)]
pub struct Saturation<F: Field> {
    pub ideal: Ideal<F>,
    /// Number of quotient steps that changed the ideal.
    pub exponent: u32,
}

/// `I : J^∞` by iterated quotients. When `J` is the irrelevant ideal and `I`
/// is homogeneous the faster route of [`saturate_irrelevant`] is taken.
pub fn saturate<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Saturation<F>> {
    i.require_same_ring(j)?;
    if i.is_homogeneous() && j.is_homogeneous() && j.same_ideal(&Ideal::irrelevant(i.ring()))? {
        return saturate_irrelevant(i, Seed::default());
    }
    let mut current = i.clone();
    let mut exponent = 0;
    loop {
        let next = ideal_quotient(&current, j)?;
        if current.contains_ideal(&next)? {
            return Ok(Saturation { ideal: next, exponent });
        }
        current = next;
        exponent += 1;
    }
}

/// `I : f^∞`.
///
/// For homogeneous `I` and `f` of degree `e` this uses a new variable `z`:
/// `I : f^∞ = ((I + <f - z^e>) : z^∞) ∩ k[x]`, since `k[x, z] / <f - z^e>` is
/// free over `k[x]` and inverting `z` there inverts `f`. Saturating by the last
/// variable is read off a degree-revlex basis, so everything stays
/// homogeneous. The exponent reported is `ceil(E / e)` for the largest power
/// `E` of `z` removed, an upper bound for the least `k` with
/// `I : f^k = I : f^∞`. Other input falls back to iterated quotients.
pub fn saturate_by_element<F: Field>(i: &Ideal<F>, f: &Polynomial<F>) -> Result<Saturation<F>> {
    let ring = i.ring();
    let f = f.in_ring(ring)?;
    if f.is_zero() {
        return Err(Error::InvalidInput("saturation by the zero polynomial".into()));
    }
    if !(i.is_homogeneous() && f.is_homogeneous()) || f.is_constant() {
        return saturate_by_quotients(i, &f);
    }
    let e = f.degree().expect("nonzero");
    let z = fresh_name(ring);
    let mut names = ring.vars().to_vec();
    names.push(z.clone());
    let big = PolyRing::new(&names, ring.field().clone(), MonomialOrder::DegRevLex)?;
    let n = ring.nvars();
    let embed: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut gens: Vec<Polynomial<F>> = i.generators().iter().map(|g| g.remap(&big, &embed)).collect::<Result<_>>()?;
    let zpow = Polynomial::monomial(&big, crate::polyring::Monomial::var(n, e as u8), big.field().one());
    gens.push(f.remap(&big, &embed)?.sub(&zpow));
    let gb = groebner_basis_with(&gens, MonomialOrder::DegRevLex, GbOptions::default())?;
    let (divided, removed) = divide_last_variable(&gb);
    let eliminated = eliminate(&Ideal::new(&big, divided)?, &[z.as_str()])?;
    let gens = eliminated.generators().iter().map(|g| g.in_ring(ring)).collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(ring, gens)?;
    Ok(Saturation { ideal, exponent: removed.div_ceil(e) })
}

fn saturate_by_quotients<F: Field>(i: &Ideal<F>, f: &Polynomial<F>) -> Result<Saturation<F>> {
    let j = Ideal::new(i.ring(), vec![f.clone()])?;
    let mut current = i.clone();
    let mut exponent = 0;
    loop {
        let next = ideal_quotient(&current, &j)?;
        if current.contains_ideal(&next)? {
            return Ok(Saturation { ideal: next, exponent });
        }
        current = next;
        exponent += 1;
    }
}

/// Saturation of `gb`'s ideal by the last variable: in degree-revlex the
/// basis elements divided by their powers of the last variable form a basis
/// of `I : x_last^∞`. Returns the divided elements and the largest power removed.
fn divide_last_variable<F: Field>(gb: &GroebnerBasis<F>) -> (Vec<Polynomial<F>>, u32) {
    let last = gb.ring().nvars() - 1;
    let mut exponent = 0;
    let out = gb
        .elements()
        .iter()
        .map(|g| {
            let e = g.var_content(last);
            exponent = exponent.max(e);
            if e == 0 {
                g.clone()
            } else {
                g.divide_by_var_power(last, e as u8)
            }
        })
        .collect();
    (out, exponent)
}

/// `I : m^∞` for homogeneous `I` and the irrelevant ideal `m`.
///
/// In coordinates where the last variable avoids every non-irrelevant
/// associated prime, `I : m^∞ = I : x_last^∞`, which is read off the
/// degree-revlex basis. Whether the coordinates were good is certified
/// exactly: the two ideals must have the same Hilbert polynomial. The
/// original coordinates are tried first, then seeded random ones. The
/// reported exponent is the largest power of the last variable removed.
pub fn saturate_irrelevant<F: Field>(i: &Ideal<F>, seed: Seed) -> Result<Saturation<F>> {
    i.require_homogeneous()?;
    let ring = i.ring();
    let n = ring.nvars();
    for attempt in 0..6u64 {
        let (work, change) = if attempt == 0 {
            (i.clone(), None)
        } else {
            let ch =
                CoordinateChange::random(ring.field(), n, Seed(seed.0.wrapping_add(attempt - 1)), "saturation", 1000);
            (ch.apply(i)?, Some(ch))
        };
        let gb = work.gb()?;
        let (divided, exponent) = divide_last_variable(&gb);
        let before = HilbertSeries::from_leading_monomials(n, &gb.leading_monomials());
        let sat_gb = groebner_basis_with(&divided, MonomialOrder::DegRevLex, GbOptions::default())?;
        let after = HilbertSeries::from_leading_monomials(n, &sat_gb.leading_monomials());
        let agree = before.krull_dimension() == after.krull_dimension()
            && (0..=before.krull_dimension() as i64)
                .all(|d| before.hilbert_polynomial(d) == after.hilbert_polynomial(d));
        if !agree {
            log::debug!("saturation attempt {attempt}: last variable not generic");
            continue;
        }
        let gens: Vec<Polynomial<F>> = sat_gb.elements().iter().map(|g| g.in_ring(ring)).collect::<Result<_>>()?;
        let ideal = match change {
            None => Ideal::new(ring, gens)?.with_basis(sat_gb),
            Some(ch) => ch.apply_inverse(&Ideal::new(ring, gens)?)?.minimalized_by_gb()?,
        };
        return Ok(Saturation { ideal, exponent });
    }
    Err(Error::Degenerate { what: "saturation by the irrelevant ideal".into(), attempts: 6 })
}
