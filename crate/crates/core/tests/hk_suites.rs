//! Behavioral suites for Hilbert-Kunz lengths, relative lengths, uniform
//! bound fits, and Frobenius splitting numbers on reference rings.
//!
//! The quadric cone `F_3[x,y,z]/(xy - z^2)` is the main nontrivial fixture:
//! its bracket-power lengths, splitting numbers, and bound constants are
//! known in closed form, so every value asserted here is independently
//! checkable by hand.

mod support;

use kunzite_core::fsplit::{
    fsig_series, socle_generator, splitting_number, ParameterChainSpec,
};
use kunzite_core::hilbert::finite_length;
use kunzite_core::hk::{
    hk_length, hk_series, relative_hk_length, verify_double_index_bound,
    verify_primary_pair_bound,
};
use kunzite_core::{IdealHandle, PolyRing, Polynomial, RingPresentation};
use num::{BigInt, BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::rand_artinian_gens;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn cone() -> RingPresentation {
    let ring = PolyRing::new(3, &["x", "y", "z"]).unwrap();
    let rel = ring.parse("x*y - z^2").unwrap();
    RingPresentation::new(&ring, vec![rel]).unwrap()
}

fn ideal(pres: &RingPresentation, gens: &[&str]) -> IdealHandle {
    let polys: Vec<Polynomial> =
        gens.iter().map(|s| pres.ring().parse(s).unwrap()).collect();
    IdealHandle::new(pres, polys).unwrap()
}

#[test]
fn frobenius_is_flat_on_regular_rings() {
    // Kunz's criterion, the easy direction: over a polynomial ring the
    // bracket power scales lengths by exactly q^n.
    let mut rng = ChaCha8Rng::seed_from_u64(0x26112);
    for _ in 0..15 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let nvars = rng.gen_range(2..=3usize);
        let names: &[&str] = if nvars == 2 { &["x", "y"] } else { &["x", "y", "z"] };
        let ring = PolyRing::new(p, names).unwrap();
        let pres = RingPresentation::free(&ring);
        let gens = rand_artinian_gens(&mut rng, &ring, 2);
        let handle = IdealHandle::new(&pres, gens).unwrap();

        let base = finite_length(&handle).unwrap();
        let q = p;
        let scaled = hk_length(&handle, q, None).unwrap();
        assert_eq!(scaled, q.pow(nvars as u32) * base);
    }
}

#[test]
fn cone_series_is_monotone_with_known_normalizations() {
    let pres = cone();
    let m = ideal(&pres, &["x", "y", "z"]);
    let series = hk_series(&m, 3, None).unwrap();
    assert!(!series.partial);
    let lengths: Vec<u64> = series.entries.iter().map(|e| e.length).collect();
    assert_eq!(lengths, vec![13, 121, 1093]);
    let normalized: Vec<BigRational> =
        series.entries.iter().map(|e| e.normalized.clone()).collect();
    assert_eq!(
        normalized,
        vec![rat(13, 9), rat(121, 81), rat(1093, 729)]
    );
    for pair in series.entries.windows(2) {
        assert!(pair[0].length <= pair[1].length);
    }
}

#[test]
fn primary_pair_bound_holds_with_explicit_chains() {
    // Refining a pair I within J through an intermediate ideal exercises the
    // chain checks (endpoints, stepwise containment, additivity) on random
    // inputs, and the uniform bound must hold on every witness.
    let mut rng = ChaCha8Rng::seed_from_u64(0xC4A1);
    for _ in 0..20 {
        let p = [2u64, 3][rng.gen_range(0..2)];
        let ring = PolyRing::new(p, &["x", "y"]).unwrap();
        let pres = RingPresentation::free(&ring);
        let inner_gens = rand_artinian_gens(&mut rng, &ring, 1);
        let inner = IdealHandle::new(&pres, inner_gens.clone()).unwrap();

        let mut mid_gens = inner_gens.clone();
        mid_gens.push(support::rand_homogeneous(&mut rng, &ring, 2));
        let mid = IdealHandle::new(&pres, mid_gens.clone()).unwrap();

        let mut outer_gens = mid_gens.clone();
        outer_gens.push(support::rand_homogeneous(&mut rng, &ring, 1));
        let outer = IdealHandle::new(&pres, outer_gens).unwrap();

        let q_list = [p, p * p];
        let chain = [inner.clone(), mid, outer.clone()];
        let fit =
            verify_primary_pair_bound(&inner, &outer, Some(&chain), &q_list)
                .unwrap();
        assert!(fit.satisfied);
        assert_eq!(fit.witnesses.len(), q_list.len());
    }
}

#[test]
fn relative_length_telescopes_through_intermediate_ideals() {
    let pres = cone();
    let inner = ideal(&pres, &["x^3", "y^3", "z^3"]);
    let mid = ideal(&pres, &["x^2", "y^3", "z^3"]);
    let outer = ideal(&pres, &["x", "y", "z"]);
    for q in [3u64, 9] {
        let whole = relative_hk_length(&inner, &outer, q).unwrap();
        let first = relative_hk_length(&inner, &mid, q).unwrap();
        let second = relative_hk_length(&mid, &outer, q).unwrap();
        assert_eq!(whole, first + second);
    }
}

#[test]
fn double_index_bound_is_exact_on_regular_rings() {
    let ring = PolyRing::new(3, &["x", "y"]).unwrap();
    let pres = RingPresentation::free(&ring);
    let m = ideal(&pres, &["x", "y"]);
    let unit = ideal(&pres, &["1"]);
    let fit = verify_double_index_bound(&m, &unit, None, &[3, 9], &[3, 9]).unwrap();
    // lambda(q) = q^2 exactly, so every double-index defect vanishes.
    assert!(fit.fit.constant.is_zero());
    assert!(fit.covers);
    for w in &fit.fit.witnesses {
        assert!(w.lhs.is_zero());
    }
}

#[test]
fn double_index_defect_vanishes_at_q2_equal_one() {
    let pres = cone();
    let m = ideal(&pres, &["x", "y", "z"]);
    let unit = ideal(&pres, &["1"]);
    let fit = verify_double_index_bound(&m, &unit, None, &[3, 9], &[1, 3]).unwrap();
    let trivial: Vec<_> = fit
        .fit
        .witnesses
        .iter()
        .filter(|w| w.q2 == Some(1))
        .collect();
    assert_eq!(trivial.len(), 2);
    for w in trivial {
        assert!(w.lhs.is_zero(), "nonzero defect at q2 = 1 for q1 = {}", w.q1);
    }
}

#[test]
fn parameter_socles_have_closed_form_in_two_variables() {
    // For I = (x^a, y^b) in F_p[x, y] the socle of R/I is generated by
    // x^(a-1) * y^(b-1).
    let mut rng = ChaCha8Rng::seed_from_u64(0x50C1E);
    for _ in 0..10 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let ring = PolyRing::new(p, &["x", "y"]).unwrap();
        let pres = RingPresentation::free(&ring);
        let a = rng.gen_range(1..=5u32);
        let b = rng.gen_range(1..=5u32);
        let handle = ideal(&pres, &[&format!("x^{a}"), &format!("y^{b}")]);
        let socle = socle_generator(&handle).unwrap();
        let expected = match (a - 1, b - 1) {
            (0, 0) => "1".to_string(),
            (0, eb) => format!("y^{eb}"),
            (ea, 0) => format!("x^{ea}"),
            (ea, eb) => format!("x^{ea}*y^{eb}"),
        };
        let expected = ring.parse(&expected).unwrap();
        assert_eq!(socle.terms(), expected.terms());
    }
}

#[test]
fn cone_splitting_numbers_match_closed_form() {
    // b_q = (q^2 + 1) / 2 on the quadric cone, stabilizing immediately.
    let pres = cone();
    let chain = ParameterChainSpec::with_default_cap(vec![
        pres.ring().parse("x").unwrap(),
        pres.ring().parse("y").unwrap(),
    ])
    .unwrap();
    for q in [3u64, 9] {
        let (b, stabilized_at) = splitting_number(&pres, &chain, q).unwrap();
        assert_eq!(b, (q * q + 1) / 2);
        assert_eq!(stabilized_at, 1);
    }
}

#[test]
fn chain_values_match_direct_colon_lengths_on_the_cone() {
    // v_t computed by the length-difference identity must equal the length
    // of R / (I_t^[q] : u_t^q) computed through an explicit colon, and the
    // values must not increase with t.
    let pres = cone();
    let q = 3u64;
    let mut previous: Option<u64> = None;
    for t in 1..=3u32 {
        let it = ideal(&pres, &[&format!("x^{t}"), &format!("y^{t}")]);
        let u = socle_generator(&it).unwrap();
        let bracket = it.bracket_power(q).unwrap();

        let total =
            finite_length(&bracket.including_relations().unwrap()).unwrap();
        let mut cut_gens = bracket.gens().to_vec();
        cut_gens.push(u.frobenius_power(q).unwrap());
        let cut = finite_length(
            &IdealHandle::new(&pres, cut_gens)
                .unwrap()
                .including_relations()
                .unwrap(),
        )
        .unwrap();
        let difference = total - cut;

        let colon = bracket
            .including_relations()
            .unwrap()
            .colon(&u.frobenius_power(q).unwrap())
            .unwrap();
        let via_colon = finite_length(&colon).unwrap();

        assert_eq!(difference, via_colon, "routes disagree at t = {t}");
        if let Some(prev) = previous {
            assert!(difference <= prev, "chain value increased at t = {t}");
        }
        previous = Some(difference);
    }
    assert_eq!(previous, Some(5));
}

#[test]
fn splitting_number_at_q_equal_one_is_one() {
    let pres = cone();
    let chain = ParameterChainSpec::with_default_cap(vec![
        pres.ring().parse("x").unwrap(),
        pres.ring().parse("y").unwrap(),
    ])
    .unwrap();
    assert_eq!(splitting_number(&pres, &chain, 1).unwrap().0, 1);
}

#[test]
fn non_reduced_line_has_vanishing_splitting_numbers() {
    // On F_2[x,y]/(x^2) the socle generator of R/(y^t) is x*y^(t-1), whose
    // q-th power dies on the nilpotent for every q >= 2, so every b_q
    // vanishes and the estimated limit is zero: the degenerate end of the
    // "positive limit iff strongly F-regular" dichotomy.
    let ring = PolyRing::new(2, &["x", "y"]).unwrap();
    let rel = ring.parse("x^2").unwrap();
    let pres = RingPresentation::new(&ring, vec![rel]).unwrap();
    let chain =
        ParameterChainSpec::with_default_cap(vec![ring.parse("y").unwrap()]).unwrap();

    for q in [2u64, 4, 8] {
        assert_eq!(splitting_number(&pres, &chain, q).unwrap().0, 0);
    }
    let series = fsig_series(&pres, &chain, 3).unwrap();
    let estimate = series.fsig_estimate.expect("full series");
    assert!(estimate.fsig.is_zero());
}
