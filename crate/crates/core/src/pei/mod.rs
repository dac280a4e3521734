//! Partial elimination ideals K_i(z, I) at a point, and the numerical identities
//! they satisfy.
//!
//! After a frame change putting z at e_0, K_i is generated by the leading
//! x0-coefficients of the x0-partial Gröbner basis elements of x0-degree ≤ i.
//! A reduction f = Σ h_g g with lead(h_g g) ≤ lead(f) never raises the x0-degree,
//! so the top x0-coefficient of any f of x0-degree d is a combination of the g'
//! with deg_{x0} g ≤ d; this is why the basis suffices.

use crate::error::{Error, Result};
use crate::geometry::{independent_prefix, tangent_space, Frame, Variety};
use crate::groebner::{keep_map, Ideal};
use crate::invariants::{betti_table, hilbert, HilbertData, IntPoly};
use crate::linalg::{left_nullspace, rank, Dense};
use crate::ring::{monomials_of_degree, Monomial, MonomialOrder, PointProj, Polynomial, Ring};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct PeiChain {
    pub point: PointProj,
    pub frame: Frame,
    /// The input ideal.
    pub base: Ideal,
    /// The ideal in frame coordinates, where z = e_0.
    pub moved: Ideal,
    /// K_0, …, K_top in S_z = k[y_1, …, y_r].
    pub chain: Vec<Ideal>,
    /// Stabilization number: the first i with K_i = K_∞.
    pub s: usize,
    /// Largest x0-degree among the basis elements.
    pub top_x0_degree: usize,
}

impl PeiChain {
    pub fn k(&self, i: usize) -> &Ideal {
        &self.chain[i.min(self.chain.len() - 1)]
    }

    pub fn k_inf(&self) -> &Ideal {
        self.chain.last().unwrap()
    }

    pub fn subring(&self) -> Ring {
        self.k_inf().ring()
    }

    /// Whether K_i ⊊ K_{i+1}, for i = 0..top−1.
    pub fn strict_steps(&self) -> Result<Vec<bool>> {
        let mut out = Vec::new();
        for w in self.chain.windows(2) {
            if !w[1].contains(&w[0])? {
                return Err(Error::Mismatch("partial elimination chain is not increasing".into()));
            }
            out.push(!w[0].contains(&w[1])?);
        }
        Ok(out)
    }
}

/// Chain at z in a random frame adapted to z.
pub fn pei_chain<R: Rng>(ideal: &Ideal, z: &PointProj, rng: &mut R) -> Result<PeiChain> {
    let frame = Frame::adapted(&ideal.ring().field, ideal.ring().nvars, &[z.coords().to_vec()], rng)?;
    pei_chain_in_frame(ideal, &frame)
}

/// Chain at the point given by the first frame column.
pub fn pei_chain_in_frame(ideal: &Ideal, frame: &Frame) -> Result<PeiChain> {
    let ring = ideal.ring();
    let n = ring.nvars;
    if frame.n() != n || frame.lead == 0 {
        return Err(Error::InvalidInput("frame must have the point as its first column".into()));
    }
    if n < 2 {
        return Err(Error::InvalidInput("partial elimination needs at least two variables".into()));
    }
    let f = ring.field;
    let point = PointProj::new(&f, (0..n).map(|i| frame.p[i][0]).collect())?;
    let moved = ideal.apply_linear_change(&frame.p)?;
    let gb = moved.groebner(MonomialOrder::X0Partial)?;
    let sub = ring.with_nvars(n - 1)?;
    let down = keep_map(n, &[0]);
    let mut leading: Vec<(usize, Polynomial)> = Vec::new();
    for g in gb.polynomials() {
        let d = g.deg_in(0).unwrap_or(0) as usize;
        leading.push((d, g.coeff_of_power(0, d as u32).remap(sub, &down)));
    }
    let top = leading.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let mut chain = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let gens = leading.iter().filter(|(d, _)| *d <= i).map(|(_, p)| p.clone()).collect();
        chain.push(Ideal::new(sub, gens)?.with_caps(ideal.caps()));
    }
    let mut s = top;
    for i in 0..top {
        if chain[i].contains(&chain[top])? {
            s = i;
            break;
        }
    }
    chain.truncate(s + 1);
    Ok(PeiChain { point, frame: frame.clone(), base: ideal.clone(), moved, chain, s, top_x0_degree: top })
}

/// dim (K_i)_e straight from the definition: the x0^j-coefficients of the
/// elements of I_{e+j} with x0-degree ≤ j, over all j ≤ i. `moved` must already
/// have z at e_0.
pub fn brute_pei_slice_dim(moved: &Ideal, i: usize, e: u32) -> Result<usize> {
    let ring = moved.ring();
    let f = ring.field;
    let n = ring.nvars;
    let cols = monomials_of_degree(n - 1, e);
    let index: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let sub = ring.with_nvars(n - 1)?;
    let down = keep_map(n, &[0]);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for j in 0..=i as u32 {
        let basis = moved.graded_piece(e + j)?;
        if basis.is_empty() {
            continue;
        }
        let bad: Vec<Monomial> = monomials_of_degree(n, e + j).into_iter().filter(|m| m.exp(0) > j).collect();
        let combos: Vec<Vec<u32>> = if bad.is_empty() {
            (0..basis.len()).map(|k| (0..basis.len()).map(|l| (k == l) as u32).collect()).collect()
        } else {
            let pos: HashMap<Monomial, usize> = bad.iter().enumerate().map(|(k, m)| (*m, k)).collect();
            let mut m = Dense::zeros(basis.len(), bad.len());
            for (r, b) in basis.iter().enumerate() {
                for t in b.terms() {
                    if let Some(&c) = pos.get(&t.mono) {
                        m.set(r, c, t.coeff);
                    }
                }
            }
            left_nullspace(&f, &m)
        };
        for c in combos {
            let mut poly = Polynomial::zero(ring);
            for (k, &ck) in c.iter().enumerate() {
                if ck != 0 {
                    poly = poly.add(&basis[k].scale(ck));
                }
            }
            let lead = poly.coeff_of_power(0, j).remap(sub, &down);
            let mut row = vec![0u32; cols.len()];
            for t in lead.terms() {
                row[index[&t.mono]] = t.coeff;
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(rank(&f, &Dense::from_rows(cols.len(), &rows)))
}

/// deg π_z = min{ i : dim V(K_i) < dim X_z }.
pub fn projection_degree(c: &PeiChain) -> Result<usize> {
    let dim_x = hilbert(&c.base)?.dim();
    let d0 = hilbert(c.k(0))?.dim();
    if d0 != dim_x {
        return Err(Error::InvalidInput(format!(
            "projection from {} is not generically finite (dim {} → {})",
            c.point, dim_x, d0
        )));
    }
    for (i, k) in c.chain.iter().enumerate() {
        if hilbert(k)?.dim() < d0 {
            return Ok(i);
        }
    }
    Err(Error::InvalidInput(format!("the fibres of the projection from {} are not finite", c.point)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeVerdict {
    Simple,
    NotSimple,
    /// s = 1 but K_∞ is strictly smaller than the tangential secant ideal.
    Inconclusive,
}

/// Simple tangent cone test: s = 1 and K_∞ equals the ideal of S^{q−1}(X_{T_zX}),
/// given in the S_z coordinates of the chain's frame (see [`TangentialSetup`]).
pub fn simple_tangent_cone_check(c: &PeiChain, tangential_secant: &Ideal) -> Result<ConeVerdict> {
    if !tangential_secant.contains(c.k_inf())? {
        return Err(Error::Mismatch("K_∞ is not contained in the tangential secant ideal".into()));
    }
    if c.s != 1 {
        return Ok(ConeVerdict::NotSimple);
    }
    if c.k_inf().contains(tangential_secant)? {
        Ok(ConeVerdict::Simple)
    } else {
        Ok(ConeVerdict::Inconclusive)
    }
}

/// A frame whose leading columns are z followed by the rest of a basis of T_zX,
/// together with the tangential projection in its trailing coordinates.
#[derive(Clone, Debug)]
pub struct TangentialSetup {
    pub frame: Frame,
    pub projected: Variety,
}

impl TangentialSetup {
    /// Extend an ideal on the tangential projection to S_z of the frame.
    pub fn lift_to_sz(&self, ideal: &Ideal) -> Result<Ideal> {
        let n = self.frame.n();
        let sub = ideal.ring().with_nvars(n - 1)?;
        ideal.embed(sub, self.frame.lead - 1)
    }
}

pub fn tangential_setup<R: Rng>(x: &Variety, z: &PointProj, rng: &mut R) -> Result<TangentialSetup> {
    let f = x.ring().field;
    let n = x.nvars();
    let t = tangent_space(&x.ideal, z)?;
    let mut lead = vec![z.coords().to_vec()];
    lead.extend(t.points().iter().cloned());
    let lead = independent_prefix(&f, n, &lead);
    let frame = Frame::adapted(&f, n, &lead, rng)?;
    let projected = x.project(&frame, format!("{} from T_zX", x.label))?;
    Ok(TangentialSetup { frame, projected })
}

fn mul_one_minus_t(p: &IntPoly) -> IntPoly {
    let mut out = vec![0i64; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        out[k] += c;
        out[k + 1] -= c;
    }
    out
}

fn shift(p: &IntPoly, k: usize) -> IntPoly {
    let mut out = vec![0i64; k];
    out.extend_from_slice(p);
    out
}

fn add_into(acc: &mut IntPoly, p: &IntPoly) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0);
    }
    for (a, &b) in acc.iter_mut().zip(p) {
        *a += b;
    }
}

fn trimmed(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

/// Both sides of the inner-projection decomposition of the Hilbert polynomial and
/// the degree and genus formulas it implies.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HilbertDecomposition {
    pub dim: i64,
    pub s: usize,
    pub s_prime: usize,
    pub degree: i64,
    pub degree_projection: i64,
    pub degree_tangent_cone: i64,
    pub genus: Option<i64>,
    pub genus_projection: Option<i64>,
    pub genus_tangent_cone: Option<i64>,
    /// (i, deg Z_i) for s' ≤ i < s, read as χ_{dim−1} of S_z/K_i.
    pub deg_z: Vec<(usize, i64)>,
    /// H_{S/I}(m) = Σ_{i<s} H_{S_z/K_i}(m−i) + H_{S/(K_∞)}(m−s) as series.
    pub series_identity: bool,
    pub polynomial_identity: bool,
    /// K_0 = … = K_{s'−1}.
    pub flat_start: bool,
    pub degree_formula: bool,
    pub genus_formula: Option<bool>,
}

impl HilbertDecomposition {
    pub fn holds(&self) -> bool {
        self.series_identity
            && self.polynomial_identity
            && self.flat_start
            && self.degree_formula
            && self.genus_formula != Some(false)
    }
}

pub fn hilbert_decomposition_check(c: &PeiChain) -> Result<HilbertDecomposition> {
    let hx = hilbert(&c.base)?;
    let n = hx.dim();
    let s = c.s;
    let s_prime = projection_degree(c)?;
    let hk: Vec<HilbertData> = c.chain.iter().map(hilbert).collect::<Result<_>>()?;
    let full = c.base.ring();
    let cone = c.k_inf().embed(full, 1)?;
    let htc = hilbert(&cone)?;

    let mut rhs: IntPoly = vec![0];
    let mut partial: IntPoly = vec![0];
    for i in 0..s {
        add_into(&mut partial, &shift(&hk[i].numerator, i));
    }
    add_into(&mut rhs, &mul_one_minus_t(&partial));
    add_into(&mut rhs, &shift(&htc.numerator, s));
    let series_identity = trimmed(rhs) == trimmed(hx.numerator.clone());

    let poly_rhs = |m: i64| -> i64 {
        let mut v = 0;
        for i in 0..s_prime {
            v += hk[0].hilbert_polynomial(m - i as i64);
        }
        for i in s_prime..s {
            v += hk[i].hilbert_polynomial(m - i as i64);
        }
        v + htc.hilbert_polynomial(m - s as i64)
    };
    let span = 2 * (n.max(0) + 2) + s as i64;
    let polynomial_identity = (0..=span).all(|m| hx.hilbert_polynomial(m) == poly_rhs(m));
    let flat_start = (1..s_prime).all(|i| c.chain[i].equals(&c.chain[0]).unwrap_or(false));

    let degree = hx.chi(n);
    let degree_projection = hk[0].chi(n);
    let degree_tangent_cone = htc.chi(n);
    let degree_formula = degree == s_prime as i64 * degree_projection + degree_tangent_cone;
    let deg_z: Vec<(usize, i64)> = (s_prime..s).map(|i| (i, hk[i].chi(n - 1))).collect();
    let (genus, genus_projection, genus_tangent_cone, genus_formula) = if n >= 1 {
        let g = 1 - hx.chi(n - 1);
        let gz = 1 - hk[0].chi(n - 1);
        let gt = 1 - htc.chi(n - 1);
        let sp = s_prime as i64;
        let rhs = sp * gz - sp + sp * (sp - 1) / 2 * degree_projection - deg_z.iter().map(|(_, d)| d).sum::<i64>()
            + gt
            + s as i64 * degree_tangent_cone;
        (Some(g), Some(gz), Some(gt), Some(g == rhs))
    } else {
        (None, None, None, None)
    };
    Ok(HilbertDecomposition {
        dim: n,
        s,
        s_prime,
        degree,
        degree_projection,
        degree_tangent_cone,
        genus,
        genus_projection,
        genus_tangent_cone,
        deg_z,
        series_identity,
        polynomial_identity,
        flat_start,
        degree_formula,
        genus_formula,
    })
}

/// Where alternating sums come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumSource {
    Koszul,
    Series,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlternatingCheck {
    pub source: SumSource,
    /// B_j(I, V) for j = 0..len.
    pub lhs: Vec<i64>,
    /// B_j(K_0, V_z) + Σ_{i=1}^{s} (B_{j−i}(K_i, V_z) − B_{j−i}(K_{i−1}, V_z)).
    pub rhs: Vec<i64>,
}

impl AlternatingCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// B_j of an ideal (not its quotient): [j = 0] − Σ_i (−1)^i β_{i,j−i}(S/I).
fn ideal_sums(ideal: &Ideal, source: SumSource, len: usize) -> Result<Vec<i64>> {
    let quotient: Vec<i64> = match source {
        SumSource::Series => {
            let h = hilbert(ideal)?;
            (0..len).map(|j| h.alternating_sum(j as i64)).collect()
        }
        SumSource::Koszul => {
            let b = betti_table(ideal)?;
            if !b.is_complete() {
                return Err(Error::Mismatch("Betti window is incomplete".into()));
            }
            (0..len)
                .map(|j| b.alternating_sum(j).ok_or_else(|| Error::Mismatch("Betti window too small".into())))
                .collect::<Result<_>>()?
        }
    };
    Ok(quotient.iter().enumerate().map(|(j, &v)| (j == 0) as i64 - v).collect())
}

pub fn alternating_check(c: &PeiChain, source: SumSource) -> Result<AlternatingCheck> {
    let len = hilbert(&c.base)?.numerator.len() + c.s + hilbert(c.k_inf())?.numerator.len() + 2;
    let lhs = ideal_sums(&c.base, source, len)?;
    let ks: Vec<Vec<i64>> = c.chain.iter().map(|k| ideal_sums(k, source, len)).collect::<Result<_>>()?;
    let at = |v: &Vec<i64>, j: i64| if j < 0 { 0 } else { v[j as usize] };
    let rhs = (0..len as i64)
        .map(|j| {
            let mut v = at(&ks[0], j);
            for i in 1..=c.s {
                v += at(&ks[i], j - i as i64) - at(&ks[i - 1], j - i as i64);
            }
            v
        })
        .collect();
    Ok(AlternatingCheck { source, lhs, rhs })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasicInequality {
    /// I_q = 0, I_{q+1} has x0-degree ≤ 1 and I_{q+2} has x0-degree ≤ 2.
    pub hypotheses: bool,
    /// (p, β_{p,q}(S/I), β_{p,q}(S_z/K_0) + β_{p−1,q}(S_z/K_0) + β_{p,q−1}(S_z/K_1), equality forced)
    pub rows: Vec<(usize, u64, u64, bool)>,
}

impl BasicInequality {
    /// The inequality, and the equality wherever its extra hypotheses hold.
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|&(_, l, r, eq)| l <= r && (!eq || l == r))
    }
}

fn max_x0_degree(moved: &Ideal, d: u32) -> Result<u32> {
    Ok(moved.graded_piece(d)?.iter().filter_map(|g| g.deg_in(0)).max().unwrap_or(0))
}

pub fn basic_inequality_check(c: &PeiChain, q: u32) -> Result<BasicInequality> {
    let hypotheses = c.moved.graded_dim(q)? == 0
        && max_x0_degree(&c.moved, q + 1)? <= 1
        && max_x0_degree(&c.moved, q + 2)? <= 2;
    if !hypotheses {
        return Ok(BasicInequality { hypotheses, rows: vec![] });
    }
    let bi = betti_table(&c.base)?;
    let b0 = betti_table(c.k(0))?;
    let b1 = betti_table(c.k(1))?;
    let get = |b: &crate::invariants::BettiWindow, i: i64, j: i64| -> Result<u64> {
        if i < 0 || j < 0 {
            return Ok(0);
        }
        b.get(i as usize, j as usize).ok_or_else(|| Error::Mismatch("Betti window too small".into()))
    };
    let q = q as i64;
    let top = bi.col_bound.max(b0.col_bound + 1).max(b1.col_bound) as i64;
    let mut rows = Vec::new();
    for p in 1..=top {
        let lhs = get(&bi, p, q)?;
        let rhs = get(&b0, p, q)? + get(&b0, p - 1, q)? + get(&b1, p, q - 1)?;
        let eq = get(&b0, p - 1, q + 1)? == 0 && get(&b1, p - 1, q)? == 0;
        rows.push((p as usize, lhs, rhs, eq));
    }
    Ok(BasicInequality { hypotheses, rows })
}

#[cfg(test)]
mod tests;
