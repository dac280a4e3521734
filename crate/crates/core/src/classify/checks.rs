//! Checks that need sampled points: property IC, prolongations, the
//! tangential-projection criterion for minimal degree, and the per-case suite of
//! Betti and Hilbert identities around an inner and a tangential projection.

use super::{b_bound, b_prime, binom, ClassificationReport};
use crate::error::{Error, Result};
use crate::geometry::{independent_prefix, secant_ideal, tangent_space, Frame, InterpOptions, SecantRoute, Variety};
use crate::groebner::Ideal;
use crate::invariants::{betti_table, hilbert, BettiWindow};
use crate::linalg::{nullspace, rank, Dense};
use crate::pei::{
    alternating_check, basic_inequality_check, hilbert_decomposition_check, pei_chain_in_frame,
    simple_tangent_cone_check, tangential_setup, ConeVerdict, PeiChain, SumSource, TangentialSetup,
};
use crate::ring::{monomials_of_degree, Monomial, PointProj, Polynomial, Ring, Term};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IcCheck {
    pub holds: bool,
    /// Generator degrees of the sum of the lifted inner-projection ideals.
    pub sum_degrees: Vec<u32>,
    pub secant_degrees: Vec<u32>,
}

/// Property IC: I_{S^q(X)} equals the sum of the ideals of S^q(X_{z_i}) for q+2
/// general points, all taken in one frame whose first columns are the z_i. The
/// projection from z_i then just eliminates y_i, and the result already lies in S.
pub fn verify_ic<R: Rng>(x: &Variety, secant: &Ideal, q: usize, rng: &mut R) -> Result<IcCheck> {
    let ring = x.ring();
    let f = ring.field;
    let n = ring.nvars;
    let k = q + 2;
    if k >= n {
        return Err(Error::InvalidInput(format!("property IC needs {k} independent points in P^{}", n - 1)));
    }
    let mut pts = Vec::new();
    for _ in 0..8 * k {
        pts.push(x.sample_point(rng)?.coords().to_vec());
        pts = independent_prefix(&f, n, &pts);
        if pts.len() == k {
            break;
        }
    }
    if pts.len() < k {
        return Err(Error::RetryExhausted(8 * k));
    }
    let frame = Frame::adapted(&f, n, &pts, rng)?;
    let moved = secant.apply_linear_change(&frame.p)?;
    let mut gens = Vec::new();
    for i in 0..k {
        let proj = moved.eliminate(&[i])?;
        let back: Vec<Option<usize>> = (0..n - 1).map(|v| Some(if v < i { v } else { v + 1 })).collect();
        gens.extend(proj.remap(ring, &back)?.gens().iter().cloned());
    }
    let sum = Ideal::new(ring, gens)?.with_caps(secant.caps()).canonical()?;
    Ok(IcCheck {
        holds: sum.equals(&moved)?,
        sum_degrees: sum.generator_degrees(),
        secant_degrees: moved.canonical()?.generator_degrees(),
    })
}

fn form_vector(p: &Polynomial, index: &HashMap<Monomial, usize>, len: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for t in p.terms() {
        v[index[&t.mono]] = t.coeff;
    }
    v
}

/// Prolongation of a space W of degree-d forms: all degree-(d+1) forms whose
/// first partials lie in W, as a nullspace problem. (In characteristic p, p-th
/// powers have vanishing partials; at the default prime and desk-scale degrees
/// this does not arise.)
pub fn prolongation(ring: Ring, d: u32, w: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let f = ring.field;
    let n = ring.nvars;
    if w.iter().any(|g| !g.is_zero() && (g.ring() != ring || g.degree() != Some(d) || !g.is_homogeneous())) {
        return Err(Error::InvalidInput("prolongation needs forms of one degree in one ring".into()));
    }
    let low = monomials_of_degree(n, d);
    let low_index: HashMap<Monomial, usize> = low.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let rows: Vec<Vec<u32>> = w.iter().filter(|g| !g.is_zero()).map(|g| form_vector(g, &low_index, low.len())).collect();
    // functionals vanishing on W
    let annihilator: Vec<Vec<u32>> = if rows.is_empty() {
        (0..low.len()).map(|k| (0..low.len()).map(|l| (k == l) as u32).collect()).collect()
    } else {
        nullspace(&f, &Dense::from_rows(low.len(), &rows))
    };
    let high = monomials_of_degree(n, d + 1);
    if annihilator.is_empty() {
        return Ok(high.into_iter().map(|m| Polynomial::monomial(ring, 1, m)).collect());
    }
    let mut constraints = Vec::with_capacity(n * annihilator.len());
    for v in 0..n {
        for lam in &annihilator {
            let row: Vec<u32> = high
                .iter()
                .map(|m| {
                    let e = m.exp(v);
                    if e == 0 {
                        return 0;
                    }
                    let mut dm = *m;
                    dm.set_exp(v, e - 1);
                    f.mul(f.from_i64(e as i64), lam[low_index[&dm]])
                })
                .collect();
            constraints.push(row);
        }
    }
    let kernel = nullspace(&f, &Dense::from_rows(high.len(), &constraints));
    Ok(kernel
        .iter()
        .map(|c| {
            let terms =
                c.iter().zip(&high).filter(|(a, _)| **a != 0).map(|(&a, m)| Term { coeff: a, mono: *m }).collect();
            Polynomial::from_terms(ring, terms).make_monic()
        })
        .collect())
}

/// (I_upper)_{q+1} ⊆ prolongation of (I_lower)_q. Returns the containment and the
/// two dimensions (prolongation, slice).
pub fn prolongation_contains_next_slice(lower: &Ideal, upper: &Ideal, q: u32) -> Result<(bool, usize, usize)> {
    let ring = upper.ring();
    let f = ring.field;
    let prol = prolongation(ring, q, &lower.graded_piece(q)?)?;
    let slice = upper.graded_piece(q + 1)?;
    let mons = monomials_of_degree(ring.nvars, q + 1);
    let index: HashMap<Monomial, usize> = mons.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let pv: Vec<Vec<u32>> = prol.iter().map(|p| form_vector(p, &index, mons.len())).collect();
    let mut both = pv.clone();
    both.extend(slice.iter().map(|p| form_vector(p, &index, mons.len())));
    let r0 = if pv.is_empty() { 0 } else { rank(&f, &Dense::from_rows(mons.len(), &pv)) };
    let r1 = if both.is_empty() { 0 } else { rank(&f, &Dense::from_rows(mons.len(), &both)) };
    Ok((r0 == r1, prol.len(), slice.len()))
}

/// Conclusion of the prolongation lemma at the chain's point: every q-form on
/// S^{q−1}(X_{T_zX}) is ∂f/∂x_0 for a (q+1)-form f on S^q(X). Since forms in
/// I_{q+1} have x0-degree ≤ 1, this says (lifted)_q ⊆ K_1.
pub fn prolongation_lemma_check(c: &PeiChain, lifted: &Ideal, q: u32) -> Result<bool> {
    for g in lifted.graded_piece(q)? {
        if !c.k(1).contains_poly(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projection of X from the span of the tangent spaces at m general points.
pub fn tangential_projection<R: Rng>(x: &Variety, m: usize, rng: &mut R) -> Result<Variety> {
    if m == 0 {
        return Ok(x.clone());
    }
    let f = x.ring().field;
    let n = x.nvars();
    let mut lead = Vec::new();
    for _ in 0..m {
        let z = x.sample_point(rng)?;
        lead.push(z.coords().to_vec());
        lead.extend(tangent_space(&x.ideal, &z)?.points().iter().cloned());
    }
    let lead = independent_prefix(&f, n, &lead);
    let frame = Frame::adapted(&f, n, &lead, rng)?;
    x.project(&frame, format!("{}-tangential projection of {}", m, x.label))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbcwfCheck {
    /// S^q(X) has minimal degree.
    pub lhs: bool,
    /// The general (q−1)-tangential projection is a variety of minimal degree.
    pub rhs: bool,
    pub projection_degree: i64,
    pub projection_codim: i64,
}

impl GbcwfCheck {
    pub fn agreed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// X is an M^q-variety iff its general (q−1)-tangential projection has minimal
/// degree (degree = codimension + 1).
pub fn verify_gbcwf_corollary<R: Rng>(
    x: &Variety,
    q: usize,
    report: &ClassificationReport,
    rng: &mut R,
) -> Result<GbcwfCheck> {
    if q < 1 || report.q != q {
        return Err(Error::InvalidInput("report and q disagree".into()));
    }
    let y = tangential_projection(x, q - 1, rng)?;
    let h = hilbert(&y.ideal)?;
    let codim = y.nvars() as i64 - 1 - h.dim();
    Ok(GbcwfCheck {
        lhs: report.verdicts.is_minimal_degree,
        rhs: h.degree() == codim + 1,
        projection_degree: h.degree(),
        projection_codim: codim,
    })
}

/// X, an inner projection, and a tangential projection at one general point z,
/// all in a frame whose leading columns are z and the rest of T_zX.
#[derive(Clone, Debug)]
pub struct Matryoshka {
    pub point: PointProj,
    pub setup: TangentialSetup,
    /// Chain of I_{S^q(X)} at z; K_0 is the ideal of S^q(X_z).
    pub chain: PeiChain,
    /// I_{S^{q−1}(X_{T_zX})} in the ring of the tangential projection.
    pub tangential_secant: Ideal,
    /// The same ideal extended to S_z.
    pub lifted: Ideal,
    pub cone: ConeVerdict,
}

pub fn matryoshka<R: Rng>(
    x: &Variety,
    secant: &Ideal,
    q: usize,
    route: SecantRoute,
    opts: &InterpOptions,
    rng: &mut R,
) -> Result<Matryoshka> {
    let z = x.sample_point(rng)?;
    let setup = tangential_setup(x, &z, rng)?;
    let chain = pei_chain_in_frame(secant, &setup.frame)?;
    let t = &setup.projected;
    let tangential_secant = match q {
        0 => return Err(Error::InvalidInput("q must be at least 1".into())),
        1 => Ideal::irrelevant(t.ring()).with_caps(secant.caps()),
        2 => t.ideal.clone(),
        _ => {
            let route = if t.param.is_some() { route } else { SecantRoute::Elimination };
            secant_ideal(t, q - 1, route, opts, rng)?.ideal
        }
    };
    let lifted = setup.lift_to_sz(&tangential_secant)?;
    let cone = simple_tangent_cone_check(&chain, &lifted)?;
    Ok(Matryoshka { point: z, setup, chain, tangential_secant, lifted, cone })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    /// `None`: not applicable or not decidable with the computed data.
    pub ok: Option<bool>,
    pub detail: String,
}

fn check(name: &str, ok: Option<bool>, detail: impl Into<String>) -> PropertyCheck {
    PropertyCheck { name: name.into(), ok, detail: detail.into() }
}

/// If the tangent cone is simple, β_{i,j−1}(S^{q−1}(X_T)) = 0 and
/// β_{i−1,j}(S^q(X_z)) = β_{i,j}(S^q(X_z)) = 0 force β_{i,j}(S^q(X)) = 0.
/// Returns (instances where the hypotheses held, violations); `None` if some
/// needed entry lies outside a window.
pub fn vanishing_check(x: &BettiWindow, xz: &BettiWindow, t: &BettiWindow) -> Option<(usize, usize)> {
    let mut used = 0;
    let mut bad = 0;
    let rows = x.row_bound.max(xz.row_bound).max(t.row_bound + 1);
    let cols = x.col_bound.max(xz.col_bound + 1).max(t.col_bound);
    for i in 1..=cols {
        for j in 1..=rows {
            let hyp = t.get(i, j - 1)? == 0 && xz.get(i - 1, j)? == 0 && xz.get(i, j)? == 0;
            if hyp {
                used += 1;
                if x.get(i, j)? != 0 {
                    bad += 1;
                }
            }
        }
    }
    Some((used, bad))
}

fn max_x0_exponent(moved: &Ideal, d: u32) -> Result<u32> {
    Ok(moved.graded_piece(d)?.iter().flat_map(|g| g.terms().iter().map(|t| t.mono.exp(0))).max().unwrap_or(0))
}

/// Every identity and bound that applies to S^q(X), checked at one general point.
pub fn property_suite(report: &ClassificationReport, m: &Matryoshka) -> Result<Vec<PropertyCheck>> {
    let q = report.q;
    let (e, qu) = (report.e as u32, q as u32);
    let c = &m.chain;
    let mut out = Vec::new();

    let mut x0_ok = true;
    for d in qu + 1..=qu + 2 {
        x0_ok &= max_x0_exponent(&c.moved, d)? <= d - qu;
    }
    out.push(check("no q-forms", Some(report.dim_q == 0), format!("dim I_q = {}", report.dim_q)));
    out.push(check("x0-degree at most m-q", Some(x0_ok), "degrees q+1, q+2 at a general point of X"));

    let bx = report.betti.as_ref();
    let row = |p: usize| bx.and_then(|b| b.get(p, q));
    let cols = bx.map_or(report.e, |b| b.col_bound.max(report.e));
    let within = |f: &dyn Fn(usize, u64) -> bool, ps: std::ops::RangeInclusive<usize>| -> Option<bool> {
        let mut unknown = false;
        for p in ps {
            match row(p) {
                Some(v) if !f(p, v) => return Some(false),
                None => unknown = true,
                _ => {}
            }
        }
        (!unknown).then_some(true)
    };
    out.push(check("Betti bound B", within(&|p, v| v as i64 <= b_bound(e, p as u32, qu), 1..=cols), ""));
    out.push(check(
        "Betti bound B'",
        if report.verdicts.is_minimal_degree {
            None
        } else {
            within(&|p, v| v as i64 <= b_prime(e, p as u32, qu).unwrap_or(i64::MAX), 1..=report.e)
        },
        "applies off minimal degree",
    ));
    out.push(check("K_{p,q} = 0 for p > e", within(&|_, v| v == 0, report.e + 1..=cols + 1), ""));
    out.push(check(
        "K_{e,q} != 0 iff minimal",
        row(report.e).map(|v| (v != 0) == report.verdicts.is_minimal_degree),
        "",
    ));
    out.push(check(
        "Koszul rank bound",
        within(&|p, v| v == 0 || report.dim_q1 as i64 >= binom((p + q) as i64, qu as i64 + 1), 1..=cols),
        format!("dim I_(q+1) = {}", report.dim_q1),
    ));

    let basic = basic_inequality_check(c, qu)?;
    out.push(check(
        "basic inequality (partial elimination)",
        basic.hypotheses.then(|| basic.holds()),
        format!("{:?}", basic.rows),
    ));

    let bxz = betti_table(c.k(0))?;
    let bt = betti_table(&m.tangential_secant)?;
    if let Some(bx) = bx {
        let mut ok = Some(true);
        let mut rows = Vec::new();
        for p in 1..=bx.col_bound.max(bxz.col_bound + 1) {
            let g = |b: &BettiWindow, i: i64, j: i64| {
                if i < 0 || j < 0 {
                    Some(0)
                } else {
                    b.get(i as usize, j as usize)
                }
            };
            let (p, qi) = (p as i64, q as i64);
            match (g(bx, p, qi), g(&bxz, p, qi), g(&bxz, p - 1, qi), g(&bt, p, qi - 1)) {
                (Some(l), Some(a), Some(b), Some(t)) => {
                    let eq = m.cone == ConeVerdict::Simple
                        && g(&bxz, p - 1, qi + 1) == Some(0)
                        && g(&bt, p - 1, qi) == Some(0);
                    rows.push((p, l, a + b + t, eq));
                    if l > a + b + t || (eq && l != a + b + t) {
                        ok = Some(false);
                    }
                }
                _ => {
                    if ok == Some(true) {
                        ok = None;
                    }
                }
            }
        }
        out.push(check("basic inequality (tangential projection)", ok, format!("{rows:?}")));
        out.push(check(
            "vanishing of Betti numbers",
            if m.cone == ConeVerdict::Simple { vanishing_check(bx, &bxz, &bt).map(|(_, bad)| bad == 0) } else { None },
            format!("{:?}", vanishing_check(bx, &bxz, &bt)),
        ));
    }

    let dec = hilbert_decomposition_check(c)?;
    out.push(check(
        "Hilbert series decomposition",
        Some(dec.series_identity && dec.polynomial_identity && dec.flat_start),
        format!("s = {}, s' = {}", dec.s, dec.s_prime),
    ));
    out.push(check("degree formula", Some(dec.degree_formula), format!("{} = {}·{} + {}", dec.degree, dec.s_prime, dec.degree_projection, dec.degree_tangent_cone)));
    out.push(check("sectional genus formula", dec.genus_formula, format!("deg Z_i = {:?}", dec.deg_z)));
    for source in [SumSource::Koszul, SumSource::Series] {
        let a = alternating_check(c, source)?;
        out.push(check(&format!("alternating identity ({source:?})"), Some(a.holds()), ""));
    }
    out.push(check("tangent cone verdict", Some(true), format!("{:?}, s = {}", m.cone, c.s)));
    out.push(check("prolongation lemma", Some(prolongation_lemma_check(c, &m.lifted, qu)?), ""));
    Ok(out)
}
