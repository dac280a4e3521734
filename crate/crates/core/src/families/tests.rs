use super::*;
use crate::invariants::{betti_table, hilbert};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f() -> PrimeField {
    PrimeField::default()
}

fn invariants(v: &Variety) -> (i64, i64, Option<i64>) {
    let h = hilbert(&v.ideal).unwrap();
    (h.dim(), h.degree(), h.sectional_genus())
}

fn points_lie_on(v: &Variety, rng: &mut ChaCha8Rng) {
    for _ in 0..5 {
        let z = v.sample_point(rng).unwrap();
        assert!(v.contains_point(z.coords()), "{}", v.label);
    }
}

#[test]
fn determinant_of_a_hankel_matrix() {
    let r = Ring::new(f(), 5).unwrap();
    let m = scroll_matrix(r, &[4], 3);
    let det = determinant(&m);
    assert_eq!(det.degree(), Some(3));
    assert_eq!(maximal_minors(&m).len(), 1);
}

#[test]
fn rational_normal_cubic() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let v = rnc(f(), 3).unwrap();
    assert_eq!(v.ideal.gens().len(), 3);
    assert_eq!(invariants(&v), (1, 3, Some(0)));
    points_lie_on(&v, &mut rng);
}

#[test]
fn scroll_is_a_surface_of_the_right_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let v = scroll(f(), &[2, 3]).unwrap();
    assert_eq!(v.nvars(), 7);
    let (dim, deg, _) = invariants(&v);
    assert_eq!((dim, deg), (2, 5));
    points_lie_on(&v, &mut rng);
}

#[test]
fn veronese_surface() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let v = veronese(f(), 2, 2).unwrap();
    assert_eq!(v.ideal.gens().len(), 6);
    assert_eq!(invariants(&v), (2, 4, Some(0)));
    points_lie_on(&v, &mut rng);
}

#[test]
fn trigonal_genus_three_curve() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let v = trigonal_g3(f(), &mut rng).unwrap();
    assert_eq!(v.nvars(), 5);
    assert_eq!(invariants(&v), (1, 7, Some(3)));
    points_lie_on(&v, &mut rng);
}

#[test]
fn genus_two_sextic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let v = genus2(f(), &mut rng).unwrap();
    assert_eq!(v.nvars(), 5);
    assert_eq!(invariants(&v), (1, 6, Some(2)));
    points_lie_on(&v, &mut rng);
}

#[test]
fn elliptic_normal_sextic() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let v = elliptic(f(), 2, &mut rng).unwrap();
    assert_eq!(v.nvars(), 6);
    assert_eq!(v.ideal.gens().len(), 9);
    assert_eq!(invariants(&v), (1, 6, Some(1)));
    points_lie_on(&v, &mut rng);
}

#[test]
fn grassmannian_of_lines_in_p4() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let v = grassmann(f(), 5).unwrap();
    assert_eq!(v.nvars(), 10);
    assert_eq!(invariants(&v), (6, 5, Some(1)));
    let b = betti_table(&v.ideal).unwrap();
    assert_eq!(b.nonzero(), vec![(0, 0, 1), (1, 1, 5), (2, 1, 5), (3, 2, 1)]);
    points_lie_on(&v, &mut rng);
}

#[test]
fn char2_example_is_a_fourfold() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let v = char2().unwrap();
    assert_eq!(v.ring().p(), 2);
    let (dim, _, _) = invariants(&v);
    assert_eq!(dim, 4);
    points_lie_on(&v, &mut rng);
}

#[test]
fn projections_from_each_kind_of_center() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cases = [(Center::OnVariety, 4), (Center::OnSecant, 5), (Center::Outer, 5)];
    for (center, deg) in cases {
        let spec = FamilySpec::Project { base: Box::new(FamilySpec::Rnc { d: 5 }), center };
        let (v, z) = spec.build_with_center(f(), &mut rng).unwrap();
        assert!(z.is_some());
        assert_eq!(v.nvars(), 5);
        let (dim, d, _) = invariants(&v);
        assert_eq!((dim, d), (1, deg), "{center:?}");
        points_lie_on(&v, &mut rng);
    }
}

#[test]
fn labels_round_trip_through_json() {
    let spec = FamilySpec::Project { base: Box::new(FamilySpec::Scroll { a: vec![3, 4] }), center: Center::OnSecant };
    let s = serde_json::to_string(&spec).unwrap();
    let back: FamilySpec = serde_json::from_str(&s).unwrap();
    assert_eq!(back, spec);
    assert_eq!(FamilySpec::Elliptic { k: 2 }.label(), "elliptic-6");
}

#[test]
fn catalecticant_is_the_secant_of_the_curve() {
    let v = catalecticant(f(), 3, 6).unwrap();
    assert_eq!(v.ideal.gens().len(), 10);
    let (dim, deg, _) = invariants(&v);
    assert_eq!((dim, deg), (3, 10));
    assert!(catalecticant(f(), 4, 5).is_err());
}

#[test]
fn corpus_names_are_unique_and_builds_succeed() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let c = corpus();
    let mut names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), c.len());
    for e in &c {
        let v = e.spec.build(f(), &mut rng).unwrap();
        assert!(e.q >= 1 && v.nvars() > 2 * e.q, "{}", e.name);
    }
}

#[test]
fn specs_parse_from_text() {
    let p: FamilySpec = "project(scroll:3,4,on-secant)".parse().unwrap();
    assert_eq!(p, FamilySpec::Project { base: Box::new(FamilySpec::Scroll { a: vec![3, 4] }), center: Center::OnSecant });
    assert_eq!("rnc:6".parse::<FamilySpec>().unwrap(), FamilySpec::Rnc { d: 6 });
    assert_eq!("veronese:2,2".parse::<FamilySpec>().unwrap(), FamilySpec::Veronese { n: 2, d: 2 });
    assert_eq!("char2".parse::<FamilySpec>().unwrap(), FamilySpec::Char2);
    for bad in ["rnc", "rnc:1,2", "torus", "project(rnc:3)", "project(rnc:3,inside)", "scroll:"] {
        assert!(bad.parse::<FamilySpec>().is_err(), "{bad}");
    }
}
