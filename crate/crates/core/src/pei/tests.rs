use super::*;
use crate::field::PrimeField;
use crate::geometry::{secant_ideal_elim, Parametrization};
use crate::ring::{parse_polynomial, Monomial, Polynomial, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(n: usize) -> Ring {
    Ring::new(PrimeField::default(), n).unwrap()
}

fn rnc(e: usize) -> Variety {
    let r = ring(e + 1);
    let mut gens = Vec::new();
    for i in 0..e {
        for j in i + 1..e {
            gens.push(parse_polynomial(r, &format!("x{i}*x{} - x{}*x{j}", j + 1, i + 1)).unwrap());
        }
    }
    let src = ring(2);
    let comps = (0..=e)
        .map(|k| Polynomial::monomial(src, 1, Monomial::from_exps(&[(e - k) as u32, k as u32])))
        .collect();
    Variety::new(Ideal::new(r, gens).unwrap(), Some(Parametrization::new(src, comps)), format!("RNC{e}"))
}

fn check_slices(c: &PeiChain, emax: u32) {
    for (i, k) in c.chain.iter().enumerate() {
        for e in 0..=emax {
            assert_eq!(brute_pei_slice_dim(&c.moved, i, e).unwrap(), k.graded_dim(e).unwrap(), "K_{i} in degree {e}");
        }
    }
}

#[test]
fn twisted_cubic_chain() {
    let x = rnc(3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let z = x.sample_point(&mut rng).unwrap();
    let c = pei_chain(&x.ideal, &z, &mut rng).unwrap();
    assert_eq!(c.s, 1);
    assert_eq!(c.strict_steps().unwrap(), vec![true]);
    let h0 = hilbert(c.k(0)).unwrap();
    assert_eq!((h0.dim(), h0.degree()), (1, 2));
    // K_1 cuts the point of P^2 the tangent line maps to
    let h1 = hilbert(c.k(1)).unwrap();
    assert_eq!((h1.dim(), h1.degree()), (0, 1));
    assert_eq!(projection_degree(&c).unwrap(), 1);
    check_slices(&c, 4);
    let d = hilbert_decomposition_check(&c).unwrap();
    assert!(d.holds(), "{d:?}");
    assert_eq!((d.degree, d.degree_projection, d.degree_tangent_cone), (3, 2, 1));
    assert!(alternating_check(&c, SumSource::Koszul).unwrap().holds());
    assert!(alternating_check(&c, SumSource::Series).unwrap().holds());
    let b = basic_inequality_check(&c, 1).unwrap();
    assert!(b.hypotheses && b.holds(), "{b:?}");
}

#[test]
fn chain_at_a_point_off_the_variety_is_the_unit_ideal() {
    let r = ring(3);
    let i = Ideal::new(r, vec![parse_polynomial(r, "x0*x2 - x1^2").unwrap()]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let z = PointProj::new(&r.field, vec![0, 1, 0]).unwrap();
    let c = pei_chain(&i, &z, &mut rng).unwrap();
    assert_eq!(c.s, 2);
    assert!(c.k_inf().is_unit().unwrap());
    // a double cover of P^1 from a point off the conic
    assert_eq!(projection_degree(&c).unwrap(), 2);
    assert!(hilbert_decomposition_check(&c).unwrap().holds());
}

#[test]
fn principal_quadric_alternating_pattern() {
    let r = ring(4);
    let i = Ideal::new(r, vec![parse_polynomial(r, "x0*x1 - x2*x3").unwrap()]).unwrap();
    let z = PointProj::unit(4, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = pei_chain(&i, &z, &mut rng).unwrap();
    assert_eq!(c.s, 1);
    assert!(c.k(0).gens().is_empty());
    let a = alternating_check(&c, SumSource::Koszul).unwrap();
    assert!(a.holds());
    assert_eq!(&a.lhs[..4], &[0, 0, 1, 0]);
}

#[test]
fn secant_of_sextic_curve_has_simple_tangent_cone() {
    let x = rnc(6);
    let s2 = secant_ideal_elim(&x.ideal, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let z = x.sample_point(&mut rng).unwrap();
    let setup = tangential_setup(&x, &z, &mut rng).unwrap();
    assert_eq!(setup.projected.nvars(), 5);
    let hp = hilbert(&setup.projected.ideal).unwrap();
    assert_eq!((hp.dim(), hp.degree()), (1, 4));
    let c = pei_chain_in_frame(&s2, &setup.frame).unwrap();
    let lifted = setup.lift_to_sz(&setup.projected.ideal).unwrap();
    assert_eq!(simple_tangent_cone_check(&c, &lifted).unwrap(), ConeVerdict::Simple);
    assert_eq!(projection_degree(&c).unwrap(), 1);
    check_slices(&c, 4);
    let d = hilbert_decomposition_check(&c).unwrap();
    assert!(d.holds(), "{d:?}");
    assert!(alternating_check(&c, SumSource::Koszul).unwrap().holds());
    let b = basic_inequality_check(&c, 2).unwrap();
    assert!(b.hypotheses && b.holds(), "{b:?}");
}
