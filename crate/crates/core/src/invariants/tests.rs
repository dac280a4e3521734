use super::*;
use crate::field::PrimeField;
use crate::groebner::Ideal;
use crate::ring::{binomial, monomials_of_degree, parse_polynomial, Polynomial, Ring, Term};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(n: usize) -> Ring {
    Ring::new(PrimeField::default(), n).unwrap()
}

fn ideal(r: Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
}

fn random_form(r: Ring, rng: &mut ChaCha8Rng, d: u32, density: f64) -> Polynomial {
    let mut terms = Vec::new();
    for m in monomials_of_degree(r.nvars, d) {
        if rng.gen_bool(density) {
            terms.push(Term { coeff: rng.gen_range(1..r.p()), mono: m });
        }
    }
    Polynomial::from_terms(r, terms)
}

fn twisted_cubic() -> Ideal {
    ideal(ring(4), &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"])
}

fn entries(b: &BettiWindow) -> Vec<(usize, usize, u64)> {
    b.nonzero()
}

#[test]
fn polynomial_ring_series() {
    let h = hilbert(&Ideal::zero(ring(4))).unwrap();
    assert_eq!(h.numerator, vec![1]);
    assert_eq!((h.dim(), h.codim(), h.degree()), (3, 0, 1));
    assert_eq!(h.hilbert_function(2), 10);
    assert_eq!(h.hilbert_polynomial(2), 10);
}

#[test]
fn twisted_cubic_invariants() {
    let h = hilbert(&twisted_cubic()).unwrap();
    assert_eq!((h.dim(), h.codim(), h.degree(), h.sectional_genus()), (1, 2, 3, Some(0)));
    assert_eq!(h.chi, vec![1, 3]);
    let b = betti_table(&twisted_cubic()).unwrap();
    assert!(b.is_complete());
    assert_eq!(entries(&b), vec![(0, 0, 1), (1, 1, 3), (2, 1, 2)]);
    assert_eq!(b.regularity(), Regularity { value: 2, exact: true });
    assert_eq!(b.strand_length(1), Some(2));
    assert_eq!(b.property_n(2, 2), Some(true));
}

#[test]
fn plane_curve_genus() {
    let r = ring(3);
    for d in 1..7u32 {
        let f = parse_polynomial(r, &format!("x0^{d} + x1^{d} + x2^{d}")).unwrap();
        let h = hilbert(&Ideal::new(r, vec![f]).unwrap()).unwrap();
        assert_eq!(h.degree(), d as i64);
        assert_eq!(h.sectional_genus(), Some((d as i64 - 1) * (d as i64 - 2) / 2));
    }
}

#[test]
fn hankel_cubic_secant() {
    // secant variety of the rational normal quartic: the 3×3 Hankel determinant
    let r = ring(5);
    let det = "x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3";
    let h = hilbert(&ideal(r, &[det])).unwrap();
    assert_eq!((h.degree(), h.sectional_genus()), (3, Some(1)));
}

#[test]
fn koszul_complex_of_irrelevant_ideal() {
    for n in 1..6 {
        let b = betti_table(&Ideal::irrelevant(ring(n))).unwrap();
        for i in 0..=n {
            assert_eq!(b.get(i, 0), Some(binomial(n as u64, i as u64)));
        }
        assert_eq!(b.row_bound, 0);
    }
}

#[test]
fn complete_intersection_of_cubics() {
    let r = ring(6);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let gens = (0..2).map(|_| random_form(r, &mut rng, 3, 0.5)).collect();
    let i = Ideal::new(r, gens).unwrap();
    let b = betti_table(&i).unwrap();
    assert_eq!(entries(&b), vec![(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
    let h = hilbert(&i).unwrap();
    assert_eq!((h.degree(), h.dim()), (9, 3));
}

#[test]
fn skew_lines_not_cohen_macaulay() {
    let i = ideal(ring(4), &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    let (_, k) = regular_restriction(&i, 1).unwrap();
    assert_eq!(k, 1);
    let b = betti_table(&i).unwrap();
    assert_eq!(entries(&b), vec![(0, 0, 1), (1, 1, 4), (2, 1, 4), (3, 1, 1)]);
}

#[test]
fn unit_ideal_is_empty() {
    let r = ring(3);
    let i = Ideal::new(r, vec![Polynomial::constant(r, 1)]).unwrap();
    assert!(hilbert(&i).unwrap().is_empty());
    assert!(betti_table(&i).unwrap().nonzero().is_empty());
}

#[test]
fn window_truncation_is_reported() {
    let r = ring(5);
    let det = "x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3";
    let b = koszul_betti(&ideal(r, &[det]), 1, 1).unwrap();
    assert!(!b.is_complete());
    assert_eq!(b.get(1, 2), None);
    let small = koszul_betti(&ideal(r, &[det]), 1, 2).unwrap();
    assert!(small.is_complete());
    assert_eq!(small.property_n(2, 1), Some(false));
}

#[test]
fn render_layout() {
    let text = betti_table(&twisted_cubic()).unwrap().render();
    assert_eq!(text, "   0 1 2\n0: 1 - -\n1: - 3 2\n");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn series_matches_slice_dims(seed in any::<u64>(), n in 2usize..5, ngen in 1usize..4) {
        let r = ring(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens = Vec::new();
        for _ in 0..ngen {
            let d = rng.gen_range(1..4);
            gens.push(random_form(r, &mut rng, d, 0.4));
        }
        let i = Ideal::new(r, gens).unwrap();
        let h = hilbert(&i).unwrap();
        for d in 0..=6u32 {
            let total = binomial(n as u64 + d as u64 - 1, d as u64) as i64;
            prop_assert_eq!(h.hilbert_function(d as i64), total - i.graded_dim(d).unwrap() as i64);
        }
        if !h.is_empty() {
            // polynomial agrees with the function in large degree
            prop_assert_eq!(h.hilbert_polynomial(30), h.hilbert_function(30));
        }
    }

    #[test]
    fn betti_alternating_sums_match_series(seed in any::<u64>(), n in 2usize..5, ngen in 1usize..4) {
        let r = ring(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens = Vec::new();
        for _ in 0..ngen {
            let d = rng.gen_range(1..3);
            gens.push(random_form(r, &mut rng, d, 0.5));
        }
        let i = Ideal::new(r, gens).unwrap();
        let h = hilbert(&i).unwrap();
        let b = betti_table(&i).unwrap();
        prop_assert!(b.is_complete());
        for j in 0..=b.row_bound + b.col_bound + 1 {
            prop_assert_eq!(b.alternating_sum(j), Some(h.alternating_sum(j as i64)));
        }
        // the restriction is random but the answer is not
        let again = koszul_betti_seeded(&i, b.imax, b.jmax, seed).unwrap();
        prop_assert_eq!(again.nonzero(), b.nonzero());
    }
}
