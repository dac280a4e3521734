use super::*;
use crate::field::PrimeField;
use crate::ring::parse_polynomial;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(n: usize) -> Ring {
    Ring::new(PrimeField::default(), n).unwrap()
}

fn ideal(r: Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect()).unwrap()
}

fn twisted_cubic() -> Ideal {
    ideal(ring(4), &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"])
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

#[test]
fn principal_and_linear() {
    let r = ring(3);
    let i = ideal(r, &["x0*x2 - x1^2"]);
    assert_eq!(i.grevlex().unwrap().polynomials(), vec![parse_polynomial(r, "x1^2 - x0*x2").unwrap()]);
    let j = ideal(r, &["x0", "x0 + x1"]);
    let gb = j.grevlex().unwrap().polynomials();
    assert_eq!(gb.len(), 2);
    assert!(gb.contains(&Polynomial::var(r, 0)) && gb.contains(&Polynomial::var(r, 1)));
}

#[test]
fn twisted_cubic_basis() {
    let i = twisted_cubic();
    let gb = i.grevlex().unwrap();
    assert_eq!(gb.len(), 3);
    assert!(gb.verify_s_pairs());
    for g in i.gens() {
        assert!(gb.reduces_to_zero(g));
    }
    let r = i.ring();
    let nf = gb.normal_form(&parse_polynomial(r, "x1^2").unwrap());
    assert_eq!(nf, parse_polynomial(r, "x0*x2").unwrap());
}

#[test]
fn normal_form_properties() {
    let i = twisted_cubic();
    let r = i.ring();
    let gb = i.grevlex().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let g = &i.gens()[rng.gen_range(0..3)];
        let m = random_form(r, &mut rng, 2, 0.5);
        assert!(gb.reduces_to_zero(&g.mul(&m)));
        let f = random_form(r, &mut rng, 3, 0.6);
        let nf = gb.normal_form(&f);
        assert_eq!(gb.normal_form(&nf), nf);
        assert!(i.contains_poly(&f.sub(&nf)).unwrap());
        for t in nf.terms() {
            assert!(!gb.lm_divides(&t.mono));
        }
    }
}

#[test]
fn elimination_examples() {
    let r = ring(3);
    let i = ideal(r, &["x0 - x1", "x1 - x2"]);
    let e = i.eliminate(&[0]).unwrap();
    let r2 = ring(2);
    assert!(e.equals(&ideal(r2, &["x0 - x1"])).unwrap());
    let tc = twisted_cubic().eliminate(&[0]).unwrap();
    assert!(tc.equals(&ideal(ring(3), &["x0*x2 - x1^2"])).unwrap());
}

fn det2(a: &Polynomial, b: &Polynomial, c: &Polynomial, d: &Polynomial) -> Polynomial {
    a.mul(d).sub(&b.mul(c))
}

#[test]
fn elimination_matches_resultant() {
    // f = a2 x0^2 + a1 x0 + a0, g = b1 x0 + b0 with ai, bi forms in x1, x2
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let r = ring(3);
    let sub = ring(2);
    let lift = |p: &Polynomial| p.remap(r, &[Some(1), Some(2)]);
    for _ in 0..5 {
        let a2 = random_form(sub, &mut rng, 0, 1.0);
        let a1 = random_form(sub, &mut rng, 1, 1.0);
        let a0 = random_form(sub, &mut rng, 2, 1.0);
        let b1 = random_form(sub, &mut rng, 0, 1.0);
        let b0 = random_form(sub, &mut rng, 1, 1.0);
        let x0 = Polynomial::var(r, 0);
        let f = lift(&a2).mul(&x0.pow(2)).add(&lift(&a1).mul(&x0)).add(&lift(&a0));
        let g = lift(&b1).mul(&x0).add(&lift(&b0));
        // Sylvester determinant of [[a2,a1,a0],[b1,b0,0],[0,b1,b0]]
        let zero = Polynomial::zero(sub);
        let res = a2
            .mul(&det2(&b0, &zero, &b1, &b0))
            .sub(&a1.mul(&det2(&b1, &zero, &zero, &b0)))
            .add(&a0.mul(&det2(&b1, &b0, &zero, &b1)));
        let e = Ideal::new(r, vec![f, g]).unwrap().eliminate(&[0]).unwrap();
        assert!(e.equals(&Ideal::new(sub, vec![res]).unwrap()).unwrap());
    }
}

#[test]
fn containment_and_equality() {
    let r = ring(2);
    let a = ideal(r, &["x0"]);
    let b = ideal(r, &["x0^2"]);
    assert!(a.contains(&b).unwrap());
    assert!(!b.contains(&a).unwrap());
    assert!(!a.equals(&b).unwrap());
    assert!(a.equals(&a.clone()).unwrap());
}

#[test]
fn graded_piece_dims() {
    let i = twisted_cubic();
    assert_eq!(i.graded_dim(2).unwrap(), 3);
    assert_eq!(i.graded_dim(1).unwrap(), 0);
    let piece = i.graded_piece(3).unwrap();
    assert_eq!(piece.len(), 10);
    for f in &piece {
        assert!(i.contains_poly(f).unwrap());
    }
}

#[test]
fn degree_cap_is_loud() {
    // three general cubics in three variables: the basis reaches degree 7
    let r = ring(3);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let gens = (0..3).map(|_| random_form(r, &mut rng, 3, 1.0)).collect();
    let i = Ideal::new(r, gens).unwrap();
    let capped = i.clone().with_caps(Caps { max_degree: 5, ..Caps::default() });
    assert!(matches!(capped.grevlex(), Err(Error::TooLarge(_))));
    assert!(i.grevlex().unwrap().polynomials().iter().any(|g| g.degree() == Some(7)));
}

#[test]
fn truncated_basis_agrees_below_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let r = ring(4);
    let gens: Vec<Polynomial> = (0..3).map(|_| random_form(r, &mut rng, 2, 0.4)).collect();
    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::X0Partial] {
        let full = Ideal::new(r, gens.clone()).unwrap().groebner(order).unwrap();
        let tr = Ideal::new(r, gens.clone()).unwrap().groebner_truncated(order, Some(4)).unwrap();
        let low: Vec<Polynomial> =
            full.polynomials().into_iter().filter(|g| g.degree().unwrap() <= 4).collect();
        assert_eq!(tr.polynomials(), low);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn buchberger_criterion_holds(seed in any::<u64>(), oi in 0usize..4, ngen in 1usize..4) {
        let order = [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::BlockElim(1), MonomialOrder::X0Partial][oi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring(4);
        let mut gens = Vec::new();
        for _ in 0..ngen {
            let d = rng.gen_range(1..3);
            gens.push(random_form(r, &mut rng, d, 0.3));
        }
        let i = Ideal::new(r, gens).unwrap();
        let gb = i.groebner(order).unwrap();
        prop_assert!(gb.verify_s_pairs());
        for g in i.gens() {
            prop_assert!(gb.reduces_to_zero(g));
        }
        let lms = gb.leading_monomials();
        for a in 0..lms.len() {
            for b in 0..lms.len() {
                prop_assert!(a == b || !lms[a].divides(&lms[b]));
            }
        }
        prop_assert!(gb.polynomials().iter().all(|p| p.lead_in(order).unwrap().coeff == 1));
    }

    #[test]
    fn ideal_equality_rewritten_generators(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = ring(4);
        let gens: Vec<Polynomial> = (0..3).map(|_| random_form(r, &mut rng, 2, 0.4)).collect();
        let i = Ideal::new(r, gens.clone()).unwrap();
        // invertible recombination of the generators
        let mut mixed = gens.clone();
        let c = rng.gen_range(1..r.p());
        mixed[0] = gens[0].add(&gens[1].scale(c));
        mixed[2] = gens[2].scale(rng.gen_range(1..r.p()));
        mixed.reverse();
        let j = Ideal::new(r, mixed).unwrap();
        prop_assert!(i.equals(&j).unwrap());
        prop_assert!(j.equals(&i).unwrap());
        let k = j.canonical().unwrap();
        prop_assert!(i.equals(&k).unwrap());
    }
}
