//! Secant ideals, exactly by elimination and by interpolation on sampled points.

use super::{tangent_space, Variety};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::invariants::hilbert;
use crate::linalg::{nullspace, rank, Dense};
use crate::par;
use crate::ring::{Monomial, MonomialOrder, Polynomial, Term};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Ideal of S^q(X), the closure of the union of (q−1)-planes spanned by q points
/// of X, computed by eliminating the summands of the join:
/// I_X(y1) + … + I_X(y_{q−1}) + I_X(x − y1 − … − y_{q−1}), then dropping the y's.
pub fn secant_ideal_elim(ix: &Ideal, q: usize) -> Result<Ideal> {
    let r = ix.ring();
    let n = r.nvars;
    match q {
        0 => return Ok(Ideal::irrelevant(r).with_caps(ix.caps())),
        1 => return Ok(ix.clone()),
        _ => {}
    }
    let aux = q - 1;
    let big = r.with_nvars(n * q)?;
    let xoff = aux * n;
    // x_v ↦ x_v − Σ_k y^{(k)}_v, identity elsewhere
    let mut a: Vec<Vec<u32>> = (0..n * q).map(|i| (0..n * q).map(|j| (i == j) as u32).collect()).collect();
    for v in 0..n {
        for k in 0..aux {
            a[xoff + v][k * n + v] = r.field.neg(1);
        }
    }
    let shifted = ix.embed(big, xoff)?.apply_linear_change(&a)?;
    let mut gens = shifted.gens().to_vec();
    for k in 0..aux {
        gens.extend(ix.embed(big, k * n)?.gens().iter().cloned());
    }
    let join = Ideal::new(big, gens)?.with_caps(ix.caps());
    let drop: Vec<usize> = (0..xoff).collect();
    join.eliminate(&drop)?.canonical()
}

/// Codimension of S^q(X) predicted by Terracini's lemma at q sampled points.
pub fn terracini_codim<R: Rng>(x: &Variety, q: usize, rng: &mut R) -> Result<usize> {
    let n = x.nvars();
    if q == 0 {
        return Ok(n);
    }
    let f = x.ring().field;
    let mut rows = Vec::new();
    for _ in 0..q {
        let z = x.sample_point(rng)?;
        rows.extend(tangent_space(&x.ideal, &z)?.points().iter().cloned());
    }
    Ok(n - rank(&f, &Dense::from_rows(n, &rows)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopReason {
    /// q = 0: the empty variety, cut out by the irrelevant ideal.
    Empty,
    /// S^q(X) fills the ambient space; the ideal is zero.
    FillsSpace,
    /// Expected codimension 1 and the first form was found.
    Hypersurface,
    /// Expected codimension reached and no new forms for `stall` degrees.
    Stalled,
    /// The degree bound was reached.
    DegreeBound,
}

#[derive(Clone, Copy, Debug)]
pub struct InterpOptions {
    pub dmax: u32,
    /// Extra sample rows beyond the number of unknowns.
    pub margin: usize,
    /// Empty degrees required before stopping once the expected codimension holds.
    pub stall: u32,
    /// Retries with more rows when the kernel fails at fresh points.
    pub attempts: usize,
}

impl Default for InterpOptions {
    fn default() -> Self {
        InterpOptions { dmax: 20, margin: 32, stall: 2, attempts: 3 }
    }
}

#[derive(Clone, Debug)]
pub struct InterpOutcome {
    pub ideal: Ideal,
    pub stop: StopReason,
    pub last_degree: u32,
    pub expected_codim: usize,
    /// Number of new generators found in each degree with any.
    pub new_forms: Vec<(u32, usize)>,
}

fn monomial_row(f: &crate::field::PrimeField, cols: &[Monomial], pt: &[u32], d: u32) -> Vec<u32> {
    let pows: Vec<Vec<u32>> = pt
        .iter()
        .map(|&c| {
            let mut v = vec![1u32; d as usize + 1];
            for e in 1..=d as usize {
                v[e] = f.mul(v[e - 1], c);
            }
            v
        })
        .collect();
    cols.iter()
        .map(|m| (0..pt.len()).fold(1u32, |acc, i| f.mul(acc, pows[i][m.exp(i) as usize])))
        .collect()
}

/// Forms of degree d vanishing on S^q(X), modulo `known` (given as a truncated
/// grevlex basis through degree d). Verified on fresh points.
fn forms_in_degree<R: Rng>(
    x: &Variety,
    q: usize,
    known: &Ideal,
    d: u32,
    opts: &InterpOptions,
    rng: &mut R,
) -> Result<Vec<Polynomial>> {
    let ring = known.ring();
    let f = ring.field;
    let gb = known.groebner_truncated(MonomialOrder::Grevlex, Some(d))?;
    let cols = gb.standard_monomials(d);
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let mut nrows = cols.len() + opts.margin;
    for _ in 0..opts.attempts {
        known.caps().check_matrix(nrows, cols.len(), "interpolation matrix")?;
        let check = nrows.div_ceil(4);
        let mut pts = Vec::with_capacity(nrows + check);
        for _ in 0..nrows + check {
            pts.push(x.sample_secant_point(q, rng)?.coords().to_vec());
        }
        let rows = par::map(&pts[..nrows], |p| monomial_row(&f, &cols, p, d));
        let kernel = nullspace(&f, &Dense::from_rows(cols.len(), &rows));
        let forms: Vec<Polynomial> = kernel
            .iter()
            .map(|v| {
                let terms = v
                    .iter()
                    .zip(&cols)
                    .filter(|(c, _)| **c != 0)
                    .map(|(&c, m)| Term { coeff: c, mono: *m })
                    .collect();
                Polynomial::from_terms(ring, terms).make_monic()
            })
            .collect();
        let ok = pts[nrows..].iter().all(|p| forms.iter().all(|g| g.evaluate(p) == 0));
        if ok {
            return Ok(forms);
        }
        nrows += check;
    }
    Err(Error::NotStabilized(d))
}

/// Ideal of S^q(X) by degree-wise interpolation through sampled points.
///
/// Each batch of new forms is checked at fresh points. The stopping rule is a
/// heuristic: once the codimension predicted by Terracini is reached, `stall`
/// consecutive empty degrees end the search. `DegreeBound` means the ideal may be
/// incomplete.
pub fn secant_ideal_interp<R: Rng>(x: &Variety, q: usize, opts: &InterpOptions, rng: &mut R) -> Result<InterpOutcome> {
    let ring = x.ring();
    if q == 0 {
        return Ok(InterpOutcome {
            ideal: Ideal::irrelevant(ring).with_caps(x.ideal.caps()),
            stop: StopReason::Empty,
            last_degree: 1,
            expected_codim: ring.nvars,
            new_forms: vec![(1, ring.nvars)],
        });
    }
    let expected = terracini_codim(x, q, rng)?;
    let mut ideal = Ideal::zero(ring).with_caps(x.ideal.caps());
    let mut new_forms = Vec::new();
    if expected == 0 {
        return Ok(InterpOutcome { ideal, stop: StopReason::FillsSpace, last_degree: 0, expected_codim: 0, new_forms });
    }
    let mut empty_run = 0u32;
    for d in 1..=opts.dmax {
        let forms = forms_in_degree(x, q, &ideal, d, opts, rng)?;
        if forms.is_empty() {
            empty_run += 1;
        } else {
            empty_run = 0;
            new_forms.push((d, forms.len()));
            ideal = ideal.add_gens(forms)?;
            if expected == 1 {
                return Ok(InterpOutcome {
                    ideal: ideal.canonical()?,
                    stop: StopReason::Hypersurface,
                    last_degree: d,
                    expected_codim: expected,
                    new_forms,
                });
            }
        }
        if empty_run >= opts.stall && !ideal.gens().is_empty() && hilbert(&ideal)?.codim() == expected as i64 {
            return Ok(InterpOutcome {
                ideal: ideal.canonical()?,
                stop: StopReason::Stalled,
                last_degree: d,
                expected_codim: expected,
                new_forms,
            });
        }
    }
    Ok(InterpOutcome {
        ideal: ideal.canonical()?,
        stop: StopReason::DegreeBound,
        last_degree: opts.dmax,
        expected_codim: expected,
        new_forms,
    })
}

/// How to obtain I_{S^q(X)}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SecantRoute {
    Elimination,
    Interpolation,
}

#[derive(Clone, Debug)]
pub struct SecantIdeal {
    pub ideal: Ideal,
    pub route: SecantRoute,
    /// Set for the interpolation route.
    pub stop: Option<StopReason>,
}

pub fn secant_ideal<R: Rng>(
    x: &Variety,
    q: usize,
    route: SecantRoute,
    opts: &InterpOptions,
    rng: &mut R,
) -> Result<SecantIdeal> {
    match route {
        SecantRoute::Elimination => Ok(SecantIdeal { ideal: secant_ideal_elim(&x.ideal, q)?, route, stop: None }),
        SecantRoute::Interpolation => {
            let out = secant_ideal_interp(x, q, opts, rng)?;
            Ok(SecantIdeal { ideal: out.ideal, route, stop: Some(out.stop) })
        }
    }
}
