//! The pinned regression corpus: each entry names a family, a secant order and
//! the invariants we expect of S^q(X). Fields left `None` are not pinned.

use super::{Center, FamilySpec};
use crate::geometry::SecantRoute;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expect {
    pub codim: Option<usize>,
    pub degree: Option<i64>,
    pub genus: Option<i64>,
    pub minimal: Option<bool>,
    pub almost_minimal: Option<bool>,
    pub del_pezzo: Option<bool>,
    pub dim_q1: Option<usize>,
    /// Nonzero Betti entries (i, row, value).
    pub betti: Option<Vec<(usize, usize, u64)>>,
    /// Every condition of the minimal-degree characterization has this value.
    pub minimal_conditions: Option<bool>,
    /// Same for the del Pezzo characterization.
    pub del_pezzo_conditions: Option<bool>,
    /// Property IC.
    pub ic: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: FamilySpec,
    pub q: usize,
    pub route: SecantRoute,
    /// Takes seconds rather than milliseconds.
    pub heavy: bool,
    /// Run both secant routes and compare them slice by slice.
    pub dual_route: bool,
    pub expect: Expect,
}

fn entry(spec: FamilySpec, q: usize, expect: Expect) -> CorpusEntry {
    CorpusEntry {
        name: format!("{} q={q}", spec.label()),
        route: if spec == FamilySpec::Char2 { SecantRoute::Elimination } else { SecantRoute::Interpolation },
        spec,
        q,
        heavy: false,
        dual_route: false,
        expect,
    }
}

fn minimal(e: usize) -> Expect {
    Expect {
        codim: Some(e),
        minimal: Some(true),
        almost_minimal: Some(false),
        del_pezzo: Some(false),
        minimal_conditions: Some(true),
        ..Expect::default()
    }
}

fn del_pezzo(e: usize, degree: i64, genus: i64) -> Expect {
    Expect {
        codim: Some(e),
        degree: Some(degree),
        genus: Some(genus),
        minimal: Some(false),
        almost_minimal: Some(true),
        del_pezzo: Some(true),
        minimal_conditions: Some(false),
        del_pezzo_conditions: Some(true),
        ..Expect::default()
    }
}

/// All entries, cheapest first within each group.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for q in 2..=3usize {
        for d in 4..=9usize {
            if d + 1 > 2 * q {
                let e = d + 1 - 2 * q;
                let mut c = entry(FamilySpec::Rnc { d }, q, minimal(e));
                c.expect.ic = (e >= 2 && d <= 7).then_some(true);
                c.dual_route = q == 2 && d <= 5;
                c.heavy = d >= 9 || (d >= 8 && q == 3);
                out.push(c);
            }
        }
    }
    // both secant varieties are cubic hypersurfaces
    for a in [vec![2, 3], vec![2, 2, 2]] {
        let mut c = entry(FamilySpec::Scroll { a }, 2, minimal(1));
        c.expect.degree = Some(3);
        out.push(c);
    }
    let mut s34 = entry(FamilySpec::Scroll { a: vec![3, 4] }, 2, minimal(3));
    s34.expect.ic = Some(true);
    out.push(s34);
    let mut v = entry(FamilySpec::Veronese { n: 2, d: 2 }, 1, minimal(3));
    v.expect.ic = Some(true);
    out.push(v);
    let mut v2 = entry(FamilySpec::Veronese { n: 2, d: 2 }, 2, minimal(1));
    v2.expect.degree = Some(3);
    v2.dual_route = true;
    out.push(v2);

    let mut g = entry(FamilySpec::Grassmann { n: 5 }, 1, del_pezzo(3, 5, 1));
    g.expect.betti = Some(vec![(0, 0, 1), (1, 1, 5), (2, 1, 5), (3, 2, 1)]);
    g.expect.ic = Some(true);
    out.push(g);
    let mut ell = entry(FamilySpec::Elliptic { k: 2 }, 2, del_pezzo(2, 9, 10));
    ell.expect.betti = Some(vec![(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
    ell.expect.dim_q1 = Some(2);
    out.push(ell);
    // a rational curve whose secant variety is nevertheless del Pezzo
    let from_secant = FamilySpec::Project { base: Box::new(FamilySpec::Rnc { d: 6 }), center: Center::OnSecant };
    let mut dp = entry(from_secant, 2, del_pezzo(2, 9, 10));
    dp.expect.dim_q1 = Some(2);
    dp.expect.betti = Some(vec![(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
    out.push(dp);

    let sz = FamilySpec::Project { base: Box::new(FamilySpec::Scroll { a: vec![3, 4] }), center: Center::OnSecant };
    let mut s34 = entry(
        sz,
        2,
        Expect {
            codim: Some(2),
            degree: Some(9),
            genus: Some(6),
            minimal: Some(false),
            almost_minimal: Some(true),
            del_pezzo: Some(false),
            betti: Some(vec![(0, 0, 1), (1, 2, 1), (1, 4, 6), (2, 4, 9), (3, 4, 3)]),
            minimal_conditions: Some(false),
            ..Expect::default()
        },
    );
    s34.heavy = true;
    out.push(s34);

    let negative = |deg: Option<i64>, e: usize| Expect {
        codim: Some(e),
        degree: deg,
        minimal: Some(false),
        minimal_conditions: Some(false),
        ..Expect::default()
    };
    let mut tri = entry(FamilySpec::TrigonalG3, 2, negative(Some(12), 1));
    tri.heavy = true;
    out.push(tri);
    let mut g2 = entry(FamilySpec::Genus2, 1, negative(Some(6), 3));
    g2.expect.ic = Some(false);
    out.push(g2);
    out.push(entry(FamilySpec::Genus2, 2, negative(Some(8), 1)));

    let mut c2 = entry(FamilySpec::Char2, 2, Expect { codim: Some(1), degree: Some(4), ..Expect::default() });
    c2.expect.minimal = Some(false);
    c2.expect.almost_minimal = Some(false);
    out.push(c2);
    out
}
