//! Graded Betti numbers of S/I as Koszul homology ranks.
//!
//! Before building Koszul matrices the ideal is restricted to a random linear
//! subspace of codimension k. The restriction is only used when its Hilbert
//! numerator equals that of S/I, which holds exactly when the k linear forms are
//! a regular sequence on S/I; Betti numbers are then unchanged. The Koszul
//! complex is assembled over the smaller quotient with normal forms against its
//! Gröbner basis.

use super::hilbert::HilbertData;
use crate::error::Result;
use crate::groebner::{Caps, GroebnerBasis, Ideal};
use crate::linalg::{sparse_rank, Sparse};
use crate::par;
use crate::ring::{binomial, Monomial, Polynomial, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;

/// β_{i,j} = dim Tor_i(S/I, k)_{i+j} for 0 ≤ i ≤ imax, 0 ≤ j ≤ jmax, plus the
/// vanishing bounds that are known outside the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiWindow {
    pub imax: usize,
    pub jmax: usize,
    /// `table[j][i]`.
    pub table: Vec<Vec<u64>>,
    /// β_{i,j} = 0 whenever j > row_bound.
    pub row_bound: usize,
    /// β_{i,j} = 0 whenever i > col_bound.
    pub col_bound: usize,
    /// Variables of the ring the Koszul complex was built over.
    pub koszul_vars: usize,
}

/// A regularity value that is exact only when the window covers every nonzero row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub value: usize,
    pub exact: bool,
}

impl BettiWindow {
    /// β_{i,j}, or `None` when it lies outside the window and is not known to vanish.
    pub fn get(&self, i: usize, j: usize) -> Option<u64> {
        if i > self.col_bound || j > self.row_bound {
            return Some(0);
        }
        if i <= self.imax && j <= self.jmax {
            return Some(self.table[j][i]);
        }
        None
    }

    /// β_{i,j} inside the window; panics outside of it.
    pub fn beta(&self, i: usize, j: usize) -> u64 {
        self.get(i, j).unwrap_or_else(|| panic!("β_{{{i},{j}}} outside the computed window"))
    }

    /// Every nonzero entry lies in the window.
    pub fn is_complete(&self) -> bool {
        self.row_bound <= self.jmax && self.col_bound <= self.imax
    }

    /// Nonzero entries as (i, j, β).
    pub fn nonzero(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for (j, row) in self.table.iter().enumerate() {
            for (i, &b) in row.iter().enumerate() {
                if b != 0 {
                    out.push((i, j, b));
                }
            }
        }
        out
    }

    /// Smallest m with β_{i,j} = 0 for all j ≥ m.
    pub fn regularity(&self) -> Regularity {
        let top = self.nonzero().iter().map(|&(_, j, _)| j + 1).max().unwrap_or(0);
        Regularity { value: top, exact: self.is_complete() }
    }

    /// Property N_{d,p}: β_{i,j} = 0 for all i ≤ p and j ≥ d. `None` if undecided.
    pub fn property_n(&self, d: usize, p: usize) -> Option<bool> {
        let mut unknown = false;
        for i in 0..=p.min(self.col_bound) {
            if d > self.row_bound {
                break;
            }
            for j in d..=self.row_bound {
                match self.get(i, j) {
                    Some(0) => {}
                    Some(_) => return Some(false),
                    None => unknown = true,
                }
            }
        }
        if unknown {
            None
        } else {
            Some(true)
        }
    }

    /// Largest p with β_{p,row} ≠ 0 (0 if the row is empty). `None` if undecided.
    pub fn strand_length(&self, row: usize) -> Option<usize> {
        let mut best = 0;
        for i in 0..=self.col_bound {
            match self.get(i, row)? {
                0 => {}
                _ => best = i,
            }
        }
        Some(best)
    }

    /// B_j = Σ_i (−1)^i β_{i,j−i}, if every needed entry is known.
    pub fn alternating_sum(&self, j: usize) -> Option<i64> {
        let mut s = 0i64;
        for i in 0..=j.min(self.col_bound) {
            let b = self.get(i, j - i)? as i64;
            s += if i % 2 == 0 { b } else { -b };
        }
        Some(s)
    }

    /// Macaulay2-style text: rows j, columns i, "-" for zero.
    pub fn render(&self) -> String {
        self.render_range(0..=self.row_bound.min(self.jmax), 0..=self.col_bound.min(self.imax))
    }

    /// As [`render`](Self::render), restricted to the given rows and columns.
    /// Entries outside the window that are not known to vanish print as "?".
    pub fn render_range(&self, rows: RangeInclusive<usize>, cols: RangeInclusive<usize>) -> String {
        let cell = |i: usize, j: usize| match self.get(i, j) {
            Some(0) => "-".to_string(),
            Some(v) => v.to_string(),
            None => "?".to_string(),
        };
        let cols: Vec<usize> = cols.collect();
        let rows: Vec<usize> = rows.collect();
        let widths: Vec<usize> = cols
            .iter()
            .map(|&i| rows.iter().map(|&j| cell(i, j).len()).chain([i.to_string().len()]).max().unwrap_or(1))
            .collect();
        let label = rows.iter().map(|j| j.to_string().len()).max().unwrap_or(1) + 1;
        let mut s = String::new();
        let _ = write!(s, "{:>label$}", "");
        for (k, &i) in cols.iter().enumerate() {
            let _ = write!(s, " {:>w$}", i, w = widths[k]);
        }
        s.push('\n');
        for &j in &rows {
            let _ = write!(s, "{:>w$}:", j, w = label - 1);
            for (k, &i) in cols.iter().enumerate() {
                let _ = write!(s, " {:>w$}", cell(i, j), w = widths[k]);
            }
            s.push('\n');
        }
        if !self.is_complete() {
            s.push_str("(window truncated)\n");
        }
        s
    }
}

/// Restrict to the linear subspace where each of the last k variables equals a
/// random combination of the others.
fn restrict_random(ideal: &Ideal, k: usize, rng: &mut ChaCha8Rng) -> Result<Ideal> {
    let r = ideal.ring();
    let n = r.nvars;
    let keep = n - k;
    let p = r.p();
    let forms: Vec<Polynomial> = (0..k)
        .map(|_| {
            let c: Vec<u32> = (0..n).map(|u| if u < keep { rng.gen_range(0..p) } else { 0 }).collect();
            Polynomial::linear_form(r, &c)
        })
        .collect();
    let sub = r.with_nvars(keep)?;
    let map: Vec<Option<usize>> = (0..n).map(|v| (v < keep).then_some(v)).collect();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut h = g.clone();
            for (t, l) in forms.iter().enumerate() {
                h = h.substitute_var(keep + t, l);
            }
            h.remap(sub, &map)
        })
        .collect();
    Ok(Ideal::new(sub, gens)?.with_caps(ideal.caps()))
}

/// Find the largest k ≤ Krull dimension for which a random codimension-k
/// restriction is certified regular; returns the restricted ideal.
pub fn regular_restriction(ideal: &Ideal, seed: u64) -> Result<(Ideal, usize)> {
    let hd = super::hilbert(ideal)?;
    if hd.is_empty() {
        return Ok((ideal.clone(), 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b6f_737a_756c);
    for k in (1..=hd.krull_dim).rev() {
        let cand = restrict_random(ideal, k, &mut rng)?;
        let hk = super::hilbert(&cand)?;
        if hk.numerator == hd.numerator {
            return Ok((cand, k));
        }
    }
    Ok((ideal.clone(), 0))
}

pub const DEFAULT_SEED: u64 = 0x5ec4;

/// Betti window of S/I with the default restriction seed.
pub fn koszul_betti(ideal: &Ideal, imax: usize, jmax: usize) -> Result<BettiWindow> {
    koszul_betti_seeded(ideal, imax, jmax, DEFAULT_SEED)
}

/// The complete Betti table (window grown to the vanishing bounds).
pub fn betti_table(ideal: &Ideal) -> Result<BettiWindow> {
    let (red, _) = regular_restriction(ideal, DEFAULT_SEED)?;
    let gb = red.grevlex()?;
    let (rows, cols) = bounds(&red, &gb)?;
    koszul_on(&red, &gb, cols, rows)
}

pub fn koszul_betti_seeded(ideal: &Ideal, imax: usize, jmax: usize, seed: u64) -> Result<BettiWindow> {
    let (red, _) = regular_restriction(ideal, seed)?;
    let gb = red.grevlex()?;
    koszul_on(&red, &gb, imax, jmax)
}

/// (row bound, column bound) for S'/I' from its Gröbner basis: rows beyond the
/// socle degree of an Artinian quotient vanish, and by upper semicontinuity and
/// the Taylor resolution of the initial ideal no row exceeds deg lcm(LMs) − 1.
fn bounds(ideal: &Ideal, gb: &GroebnerBasis) -> Result<(usize, usize)> {
    let n = ideal.ring().nvars;
    let lms = gb.leading_monomials();
    if gb.is_unit() {
        return Ok((0, 0));
    }
    if lms.is_empty() {
        return Ok((0, 0));
    }
    let mut lcm = lms[0];
    for m in &lms[1..] {
        lcm = lcm.lcm(m);
    }
    let mut row = lcm.degree() as usize - 1;
    let hd = HilbertData::of_monomials(n, &lms);
    if hd.krull_dim == 0 {
        row = row.min(hd.h_vector.len() - 1);
    }
    Ok((row, n))
}

struct Slice {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == k).collect();
    out.sort_unstable();
    out
}

fn koszul_on(ideal: &Ideal, gb: &GroebnerBasis, imax: usize, jmax: usize) -> Result<BettiWindow> {
    let r: Ring = ideal.ring();
    let n = r.nvars;
    let (row_bound, col_bound) = bounds(ideal, gb)?;
    let mut table = vec![vec![0u64; imax + 1]; jmax + 1];
    if gb.is_unit() {
        return Ok(BettiWindow { imax, jmax, table, row_bound: 0, col_bound: 0, koszul_vars: n });
    }
    let caps: Caps = ideal.caps();
    let top = jmax.min(row_bound) + 1;
    let slices: Vec<Slice> = (0..=top)
        .map(|d| {
            let basis = gb.standard_monomials(d as u32);
            let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            Slice { basis, index }
        })
        .collect();
    // mult[d][v][m] = x_v · m in M_{d+1} coordinates
    let mult: Vec<Vec<Vec<Vec<(u32, u32)>>>> = (0..top)
        .map(|d| {
            (0..n)
                .map(|v| {
                    slices[d]
                        .basis
                        .iter()
                        .map(|m| {
                            let prod = Polynomial::monomial(r, 1, m.mul(&Monomial::var(n, v)));
                            gb.normal_form(&prod)
                                .terms()
                                .iter()
                                .map(|t| (slices[d + 1].index[&t.mono] as u32, t.coeff))
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let dim_m = |d: usize| slices.get(d).map_or(0, |s| s.basis.len());

    // ranks of δ_{i,d}: Λ^i ⊗ M_d → Λ^{i−1} ⊗ M_{d+1}
    let mut needed: Vec<(usize, usize)> = Vec::new();
    for j in 0..=jmax.min(row_bound) {
        for i in 0..=imax.min(n) {
            if i >= 1 && j < top {
                needed.push((i, j));
            }
            if i < n && j >= 1 {
                needed.push((i + 1, j - 1));
            }
        }
    }
    needed.sort_unstable();
    needed.dedup();
    for &(i, d) in &needed {
        let rows = binomial(n as u64, i as u64) as usize * dim_m(d);
        let cols = binomial(n as u64, i as u64 - 1) as usize * dim_m(d + 1);
        caps.check_matrix(rows, cols, "Koszul differential")?;
    }
    let field = r.field;
    let ranks: Vec<usize> = par::map(&needed, |&(i, d)| {
        let (src, dst) = (dim_m(d), dim_m(d + 1));
        if src == 0 || dst == 0 {
            return 0;
        }
        let targets = subsets(n, i - 1);
        let tindex: HashMap<u32, usize> = targets.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut mat = Sparse::new(targets.len() * dst);
        for alpha in subsets(n, i) {
            let vars: Vec<usize> = (0..n).filter(|&v| alpha >> v & 1 == 1).collect();
            for m in 0..src {
                let mut row: Vec<(u32, u32)> = Vec::new();
                for (pos, &v) in vars.iter().enumerate() {
                    let base = tindex[&(alpha & !(1 << v))] * dst;
                    for &(c, val) in &mult[d][v][m] {
                        let val = if pos % 2 == 0 { val } else { field.neg(val) };
                        row.push(((base + c as usize) as u32, val));
                    }
                }
                mat.push_row(row);
            }
        }
        sparse_rank(&field, &mat)
    });
    let rank: HashMap<(usize, usize), usize> = needed.iter().copied().zip(ranks).collect();
    for j in 0..=jmax.min(row_bound) {
        for i in 0..=imax.min(n) {
            let chain = binomial(n as u64, i as u64) as usize * dim_m(j);
            let out = if i >= 1 { rank.get(&(i, j)).copied().unwrap_or(0) } else { 0 };
            let inc = if i < n && j >= 1 { rank.get(&(i + 1, j - 1)).copied().unwrap_or(0) } else { 0 };
            table[j][i] = (chain - out - inc) as u64;
        }
    }
    Ok(BettiWindow { imax, jmax, table, row_bound, col_bound, koszul_vars: n })
}
