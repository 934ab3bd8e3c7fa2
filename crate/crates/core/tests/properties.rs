//! Structural identities checked on random homogeneous ideals.

use dpcy::idealops::{ideal_quotient, saturate_by_element, saturate_irrelevant, CoordinateChange, Ideal, Seed};
use dpcy::invariants::{betti_table_with, generator_census, hilbert_series, BettiOptions};
use dpcy::polyring::{Field, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn ring(n: usize) -> Ring<PrimeField> {
    PolyRing::new(&NAMES[..n], PrimeField::default(), MonomialOrder::DegRevLex).unwrap()
}

/// A random form with about `density` of the monomials present.
fn form(ring: &Ring<PrimeField>, rng: &mut ChaCha8Rng, d: u32, density: f64) -> Polynomial<PrimeField> {
    let field = *ring.field();
    let mut terms = Vec::new();
    for m in Monomial::all_of_degree(ring.nvars(), d) {
        if rng.random_bool(density) {
            terms.push((m, field.from_i64(rng.random_range(-9..=9))));
        }
    }
    Polynomial::from_terms(ring, terms)
}

fn random_ideal(seed: u64, n: usize, k: usize) -> Ideal<PrimeField> {
    let r = ring(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = Vec::new();
    while gens.len() < k {
        let d = rng.random_range(1..=3);
        let f = form(&r, &mut rng, d, 0.4);
        if !f.is_zero() {
            gens.push(f);
        }
    }
    Ideal::new(&r, gens).unwrap()
}

fn linear_form(ring: &Ring<PrimeField>, seed: u64) -> Polynomial<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    loop {
        let f = form(ring, &mut rng, 1, 0.7);
        if !f.is_zero() {
            return f;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn basis_passes_buchberger_criterion(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4) {
        let i = random_ideal(seed, n, k);
        let gb = i.gb().unwrap();
        prop_assert!(gb.satisfies_buchberger_criterion());
        for g in i.generators() {
            prop_assert!(gb.normal_form(g).unwrap().is_zero());
        }
    }

    #[test]
    fn betti_numbers_give_the_hilbert_numerator(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4) {
        let i = random_ideal(seed, n, k);
        let t = betti_table_with(&i, BettiOptions::default()).unwrap();
        prop_assert!(t.is_complete());
        prop_assert_eq!(t.hilbert_numerator(), hilbert_series(&i).unwrap().numerator().to_vec());
        prop_assert!(t.length().unwrap() <= n);
    }

    #[test]
    fn hilbert_function_is_polynomial_from_the_regularity(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4) {
        let i = random_ideal(seed, n, k);
        let reg = betti_table_with(&i, BettiOptions::default()).unwrap().regularity().unwrap();
        let hs = hilbert_series(&i).unwrap();
        for d in reg.max(0)..reg.max(0) + 5 {
            prop_assert_eq!(hs.hilbert_function(d as u32), hs.hilbert_polynomial(d), "degree {}", d);
        }
    }

    #[test]
    fn census_is_invariant_under_coordinate_change(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4) {
        let i = random_ideal(seed, n, k);
        let ch = CoordinateChange::random(i.ring().field(), n, Seed(seed), "property", 50);
        let j = ch.apply(&i).unwrap();
        prop_assert_eq!(generator_census(&i).unwrap(), generator_census(&j).unwrap());
        prop_assert_eq!(hilbert_series(&i).unwrap(), hilbert_series(&j).unwrap());
        prop_assert!(ch.apply_inverse(&j).unwrap().same_ideal(&i).unwrap());
    }

    #[test]
    fn element_saturation_is_a_fixed_point(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4) {
        let i = random_ideal(seed, n, k);
        let f = linear_form(i.ring(), seed);
        let s = saturate_by_element(&i, &f).unwrap().ideal;
        prop_assert!(s.contains_ideal(&i).unwrap());
        let fj = Ideal::new(i.ring(), vec![f.clone()]).unwrap();
        prop_assert!(ideal_quotient(&s, &fj).unwrap().same_ideal(&s).unwrap());
        prop_assert!(saturate_by_element(&s, &f).unwrap().ideal.same_ideal(&s).unwrap());
    }

    #[test]
    fn irrelevant_saturation_is_a_fixed_point(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4) {
        let i = random_ideal(seed, n, k);
        let s = saturate_irrelevant(&i, Seed(seed)).unwrap().ideal;
        prop_assert!(s.contains_ideal(&i).unwrap());
        prop_assert!(saturate_irrelevant(&s, Seed(seed.wrapping_add(1))).unwrap().ideal.same_ideal(&s).unwrap());
        // Saturation changes the Hilbert function only in finitely many degrees.
        let (a, b) = (hilbert_series(&i).unwrap(), hilbert_series(&s).unwrap());
        if !b.is_zero() {
            prop_assert_eq!(a.krull_dimension(), b.krull_dimension());
            prop_assert_eq!(a.degree(), b.degree());
        }
    }
}
