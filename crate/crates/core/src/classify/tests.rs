use super::*;
use crate::families::{elliptic, genus2, grassmann, rnc, scroll, scroll_secant_minors, trigonal_g3};
use crate::field::PrimeField;
use crate::ring::Ring;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f() -> PrimeField {
    PrimeField::default()
}

fn opts() -> InterpOptions {
    InterpOptions::default()
}

#[test]
fn closed_forms_at_small_parameters() {
    assert_eq!(d_min(1, 2), 3);
    assert_eq!(d_min(3, 2), 10);
    assert_eq!(d_almost(2, 2), 9);
    assert_eq!(d_almost(3, 1), 5);
    assert_eq!(b_prime(3, 1, 1).unwrap(), 5);
    assert_eq!(b_prime(3, 2, 1).unwrap(), 5);
    assert_eq!(b_prime(3, 3, 1).unwrap(), 0);
    assert!(b_prime(3, 4, 1).is_err());
    assert_eq!(genus_dp_max(2, 2), 10);
    assert_eq!(genus_min(1, 2), 1);
    assert_eq!(binom(-2, 3), -4);
    assert_eq!(almost_genus(3, 2, 1), 6);
}

#[test]
fn formula_suite_holds() {
    for c in formula_suite(8, 6) {
        assert!(c.holds(), "{}: {:?}", c.name, c.failures);
        assert!(c.cases > 0);
    }
}

proptest! {
    #[test]
    fn pascal_rule(n in 0i64..40, k in 1i64..40) {
        prop_assert_eq!(binom(n + 1, k), binom(n, k) + binom(n, k - 1));
    }

    #[test]
    fn b_recurrence(e in 1u32..12, q in 1u32..8, p in 1u32..12) {
        prop_assume!(p <= e);
        prop_assert_eq!(b_bound(e, p, q), b_bound(e - 1, p, q) + b_bound(e - 1, p - 1, q) + b_bound(e, p, q - 1));
    }

    #[test]
    fn b_prime_below_b(e in 1u32..12, q in 1u32..8, p in 1u32..12) {
        prop_assume!(p <= e);
        let bp = b_prime(e, p, q).unwrap();
        prop_assert!(bp >= 0 && bp <= b_bound(e, p, q));
    }

    #[test]
    fn almost_minimal_degree_exceeds_minimal(e in 1u32..12, q in 1u32..8) {
        prop_assert!(d_almost(e, q) > d_min(e, q));
        prop_assert!(genus_dp_max(e, q) > genus_min(e, q));
    }
}

#[test]
fn secant_of_rnc6_is_of_minimal_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x = rnc(f(), 6).unwrap();
    let r = classify_secant(&x, 2, SecantRoute::Interpolation, &opts(), &mut rng).unwrap();
    assert_eq!((r.e, r.degree), (3, 10));
    assert!(r.verdicts.is_minimal_degree);
    assert_eq!(r.verdicts.q_pure_cm, Some(true));
    assert!(r.minimal_conditions_all(true), "{:?}", r.thm_minimal);
    assert!(r.del_pezzo_conditions_all(false), "{:?}", r.thm_del_pezzo);
    assert!(r.consistent(), "{:?}", r.consistency);
    assert!(verify_equivalences(&r).iter().all(|e| e.agreed));
    let minors = scroll_secant_minors(f(), &[6], 2).unwrap();
    let direct = classify_ideal(&minors, 2).unwrap();
    assert_eq!(direct.sampled_fingerprint(), r.sampled_fingerprint());
}

#[test]
fn secant_of_elliptic_sextic_is_del_pezzo() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let x = elliptic(f(), 2, &mut rng).unwrap();
    let r = classify_secant(&x, 2, SecantRoute::Interpolation, &opts(), &mut rng).unwrap();
    assert_eq!((r.e, r.degree, r.genus), (2, 9, Some(10)));
    assert_eq!(r.verdicts.is_del_pezzo, Some(true));
    assert_eq!(r.verdicts.q_pure_gorenstein, Some(true));
    assert!(r.del_pezzo_conditions_all(true), "{:?}", r.thm_del_pezzo);
    assert!(r.minimal_conditions_all(false), "{:?}", r.thm_minimal);
    assert!(r.consistent(), "{:?}", r.consistency);
}

#[test]
fn grassmannian_is_a_del_pezzo_variety() {
    let x = grassmann(f(), 5).unwrap();
    let r = classify_ideal(&x.ideal, 1).unwrap();
    assert_eq!((r.e, r.degree), (3, 5));
    assert!(r.del_pezzo_conditions_all(true), "{:?}", r.thm_del_pezzo);
    assert!(r.minimal_conditions_all(false));
    assert_eq!(r.max_np, Some(2));
}

#[test]
fn classification_rejects_degenerate_input() {
    let r = Ring::new(f(), 3).unwrap();
    assert!(classify_ideal(&Ideal::irrelevant(r), 0).is_err());
    assert!(classify_ideal(&Ideal::new(r, vec![]).unwrap(), 1).is_err());
}

#[test]
fn prolongation_of_rnc4_quadrics_is_the_hankel_cubic() {
    let x = rnc(f(), 4).unwrap();
    let q2 = x.ideal.graded_piece(2).unwrap();
    assert_eq!(q2.len(), 6);
    let p = prolongation(x.ring(), 2, &q2).unwrap();
    assert_eq!(p.len(), 1);
    let sec = scroll_secant_minors(f(), &[4], 2).unwrap();
    assert!(sec.contains_poly(&p[0]).unwrap());
    let (ok, dp, ds) = prolongation_contains_next_slice(&x.ideal, &sec, 2).unwrap();
    assert!(ok);
    assert_eq!((dp, ds), (1, 1));
}

#[test]
fn prolongation_extremes() {
    let r = Ring::new(f(), 3).unwrap();
    assert!(prolongation(r, 2, &[]).unwrap().is_empty());
    let all = Ideal::irrelevant(r).graded_piece(2).unwrap();
    assert_eq!(prolongation(r, 2, &all).unwrap().len(), 10);
}

#[test]
fn property_ic() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let x = rnc(f(), 6).unwrap();
    let sec = scroll_secant_minors(f(), &[6], 2).unwrap();
    assert!(verify_ic(&x, &sec, 2, &mut rng).unwrap().holds);
    let y = genus2(f(), &mut rng).unwrap();
    let ic = verify_ic(&y, &y.ideal, 1, &mut rng).unwrap();
    assert!(!ic.holds, "{ic:?}");
}

#[test]
fn tangential_projection_criterion() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for x in [rnc(f(), 7).unwrap(), scroll(f(), &[2, 3]).unwrap()] {
        let r = classify_secant(&x, 2, SecantRoute::Interpolation, &opts(), &mut rng).unwrap();
        let g = verify_gbcwf_corollary(&x, 2, &r, &mut rng).unwrap();
        assert!(g.lhs && g.rhs, "{} {g:?}", x.label);
    }
    let x = trigonal_g3(f(), &mut rng).unwrap();
    let y = tangential_projection(&x, 1, &mut rng).unwrap();
    let h = crate::invariants::hilbert(&y.ideal).unwrap();
    assert_eq!((y.nvars(), h.degree()), (3, 5));
}

#[test]
fn property_suite_on_rnc6() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let x = rnc(f(), 6).unwrap();
    let sec = scroll_secant_minors(f(), &[6], 2).unwrap();
    let r = classify_ideal(&sec, 2).unwrap();
    let m = matryoshka(&x, &sec, 2, SecantRoute::Interpolation, &opts(), &mut rng).unwrap();
    for c in property_suite(&r, &m).unwrap() {
        assert_ne!(c.ok, Some(false), "{} {}", c.name, c.detail);
    }
}
