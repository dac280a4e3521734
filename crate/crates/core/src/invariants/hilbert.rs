//! Hilbert series of S/I from the leading-term ideal (pivot recursion),
//! Hilbert polynomial in the binomial basis, degree and sectional genus.

use crate::error::Result;
use crate::groebner::Ideal;
use crate::linalg::{sparse_rank, Sparse};
use crate::ring::{binomial, monomials_of_degree, Monomial};
use std::collections::HashMap;
use serde::{Deserialize, Serialize};

/// Integer polynomial in t, coefficient of t^k at index k.
pub type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

fn poly_add(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn one_minus_t_pow(d: u32) -> IntPoly {
    let mut p = vec![0i64; d as usize + 1];
    p[0] += 1;
    p[d as usize] -= 1;
    trim(p)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator N(t) with HS(S/M) = N(t)/(1−t)^n for a monomial ideal M.
pub fn monomial_numerator(nvars: usize, gens: &[Monomial]) -> IntPoly {
    numerator_rec(nvars, minimalize(gens.to_vec()))
}

fn numerator_rec(nvars: usize, gens: Vec<Monomial>) -> IntPoly {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.degree() == 0) {
        return vec![0];
    }
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (v, c) in counts.iter_mut().enumerate() {
            if g.exp(v) > 0 {
                *c += 1;
            }
        }
    }
    let (v, &most) = counts.iter().enumerate().max_by_key(|&(i, c)| (*c, std::cmp::Reverse(i))).unwrap();
    if most <= 1 {
        // pairwise coprime generators form a regular sequence
        return gens.iter().fold(vec![1], |acc, g| poly_mul(&acc, &one_minus_t_pow(g.degree())));
    }
    // pivot x_v^e with e taken from a generator that is not a pure power of x_v;
    // minimality guarantees the pivot is outside the ideal
    let mut exps: Vec<u32> = gens
        .iter()
        .filter(|g| g.exp(v) > 0 && g.degree() > g.exp(v))
        .map(|g| g.exp(v))
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pe = vec![0u32; nvars];
    pe[v] = e;
    let pivot = Monomial::from_exps(&pe);
    let mut plus = gens.clone();
    plus.push(pivot);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.gcd(&pivot).quotient_of(g)).collect();
    let a = numerator_rec(nvars, minimalize(plus));
    let mut b = numerator_rec(nvars, minimalize(colon));
    let mut shifted = vec![0i64; e as usize];
    shifted.append(&mut b);
    poly_add(&a, &shifted)
}

/// Hilbert data of a graded quotient S/I.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub nvars: usize,
    /// N(t) with HS(S/I) = N(t)/(1−t)^nvars.
    pub numerator: IntPoly,
    /// h(t) with HS(S/I) = h(t)/(1−t)^krull_dim and h(1) ≠ 0.
    pub h_vector: IntPoly,
    pub krull_dim: usize,
    /// P(m) = Σ chi[i]·C(m+i−1, i), i = 0..=dim.
    pub chi: Vec<i64>,
}

impl HilbertData {
    pub fn from_numerator(nvars: usize, numerator: IntPoly) -> Self {
        let numerator = trim(numerator);
        if numerator == [0] {
            return HilbertData { nvars, numerator, h_vector: vec![0], krull_dim: 0, chi: vec![] };
        }
        // divide by (1−t) while t = 1 is a root
        let mut h = numerator.clone();
        let mut k = nvars;
        while k > 0 && h.iter().sum::<i64>() == 0 {
            let mut q = vec![0i64; h.len() - 1];
            let mut acc = 0i64;
            for i in 0..q.len() {
                acc += h[i];
                q[i] = acc;
            }
            h = trim(q);
            k -= 1;
        }
        let chi = chi_from_h(&h, k);
        HilbertData { nvars, numerator, h_vector: h, krull_dim: k, chi }
    }

    pub fn of_monomials(nvars: usize, lms: &[Monomial]) -> Self {
        Self::from_numerator(nvars, monomial_numerator(nvars, lms))
    }

    /// S/I = 0.
    pub fn is_empty(&self) -> bool {
        self.numerator == [0]
    }

    /// Projective dimension of V(I); −1 when V(I) is empty.
    pub fn dim(&self) -> i64 {
        self.krull_dim as i64 - 1
    }

    pub fn codim(&self) -> i64 {
        (self.nvars as i64 - 1) - self.dim()
    }

    /// h(1): the degree, or the length when S/I is Artinian.
    pub fn degree(&self) -> i64 {
        self.h_vector.iter().sum()
    }

    /// χ_i, or 0 outside 0..=dim.
    pub fn chi(&self, i: i64) -> i64 {
        if i < 0 {
            return 0;
        }
        self.chi.get(i as usize).copied().unwrap_or(0)
    }

    /// 1 − χ_{dim−1}; meaningful for dim ≥ 1.
    pub fn sectional_genus(&self) -> Option<i64> {
        (self.dim() >= 1).then(|| 1 - self.chi(self.dim() - 1))
    }

    /// dim_k (S/I)_d read from the series.
    pub fn hilbert_function(&self, d: i64) -> i64 {
        if d < 0 {
            return 0;
        }
        let n = self.nvars as i64;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(k, _)| (*k as i64) <= d)
            .map(|(k, &c)| c * binom_i(d - k as i64 + n - 1, n - 1))
            .sum()
    }

    /// Hilbert polynomial value at m (any integer m).
    pub fn hilbert_polynomial(&self, m: i64) -> i64 {
        self.chi.iter().enumerate().map(|(i, &c)| c * binom_poly(m + i as i64 - 1, i as i64)).sum()
    }

    /// B_j = [t^j] HS(S/I)·(1−t)^nvars, the alternating Betti sums of S/I.
    pub fn alternating_sum(&self, j: i64) -> i64 {
        if j < 0 {
            return 0;
        }
        self.numerator.get(j as usize).copied().unwrap_or(0)
    }
}

/// C(a, b) with C(a, b) = 0 for a < b or b < 0, a ≥ 0.
fn binom_i(a: i64, b: i64) -> i64 {
    if b < 0 || a < b || a < 0 {
        return 0;
    }
    binomial(a as u64, b as u64) as i64
}

/// The polynomial C(x, k) = x(x−1)…(x−k+1)/k! evaluated at any integer x.
fn binom_poly(x: i64, k: i64) -> i64 {
    let mut num: i128 = 1;
    for i in 0..k {
        num *= (x - i) as i128;
    }
    let mut den: i128 = 1;
    for i in 1..=k {
        den *= i as i128;
    }
    (num / den) as i64
}

/// With h(t) = Σ c_j (1−t)^j, P(m) = Σ_{j<D} c_j Σ_{i<D−j} C(m+i−1, i), so
/// χ_i = Σ_{j ≤ D−1−i} c_j.
fn chi_from_h(h: &IntPoly, krull: usize) -> Vec<i64> {
    if krull == 0 {
        return vec![];
    }
    let c: Vec<i64> = (0..krull)
        .map(|j| {
            let s: i64 = h.iter().enumerate().map(|(k, &hk)| hk * binom_i(k as i64, j as i64)).sum();
            if j % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect();
    (0..krull).map(|i| c[..krull - i].iter().sum()).collect()
}

/// Hilbert data of S/I via the grevlex leading-term ideal.
pub fn hilbert(ideal: &Ideal) -> Result<HilbertData> {
    let gb = ideal.grevlex()?;
    Ok(HilbertData::of_monomials(ideal.ring().nvars, &gb.leading_monomials()))
}

/// dim I_d as the rank of all monomial multiples of the generators in degree d,
/// with no Gröbner basis involved. Generators must be homogeneous.
pub fn slice_dim_from_generators(ideal: &Ideal, d: u32) -> usize {
    let ring = ideal.ring();
    let cols = monomials_of_degree(ring.nvars, d);
    let index: HashMap<Monomial, usize> = cols.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let mut m = Sparse::new(cols.len());
    for g in ideal.gens() {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        for mult in monomials_of_degree(ring.nvars, d - dg) {
            m.push_row(g.terms().iter().map(|t| (index[&t.mono.mul(&mult)] as u32, t.coeff)).collect());
        }
    }
    sparse_rank(&ring.field, &m)
}
