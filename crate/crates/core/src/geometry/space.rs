//! Linear subspaces of P^r and coordinate frames adapted to them.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{inverse, mat_vec, nullspace, rref, Dense};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// A projective linear subspace kept both as spanning points and as the linear
/// forms vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSpace {
    n: usize,
    points: Vec<Vec<u32>>,
    forms: Vec<Vec<u32>>,
}

fn row_basis(f: &PrimeField, n: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if rows.is_empty() {
        return Vec::new();
    }
    rref(f, &Dense::from_rows(n, rows)).rows
}

fn annihilator(f: &PrimeField, n: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if rows.is_empty() {
        return (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
    }
    nullspace(f, &Dense::from_rows(n, rows))
}

impl LinearSpace {
    /// The span of the given coordinate vectors in a space with `n` coordinates.
    pub fn span(f: &PrimeField, n: usize, points: &[Vec<u32>]) -> Self {
        let points = row_basis(f, n, points);
        let forms = row_basis(f, n, &annihilator(f, n, &points));
        LinearSpace { n, points, forms }
    }

    /// The common zero set of the given linear forms.
    pub fn from_forms(f: &PrimeField, n: usize, forms: &[Vec<u32>]) -> Self {
        let forms = row_basis(f, n, forms);
        let points = row_basis(f, n, &annihilator(f, n, &forms));
        LinearSpace { n, points, forms }
    }

    pub fn ambient_vars(&self) -> usize {
        self.n
    }

    /// Projective dimension; −1 for the empty space.
    pub fn dim(&self) -> i64 {
        self.points.len() as i64 - 1
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn forms(&self) -> &[Vec<u32>] {
        &self.forms
    }

    pub fn contains(&self, f: &PrimeField, p: &[u32]) -> bool {
        self.forms.iter().all(|l| l.iter().zip(p).fold(0u32, |acc, (&a, &b)| f.add(acc, f.mul(a, b))) == 0)
    }

    /// The span of two spaces.
    pub fn join(&self, f: &PrimeField, other: &LinearSpace) -> LinearSpace {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        LinearSpace::span(f, self.n, &pts)
    }
}

/// Greedy maximal independent subsequence, keeping the given order.
pub fn independent_prefix(f: &PrimeField, n: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for v in vectors {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if crate::linalg::rank(f, &Dense::from_rows(n, &trial)) == trial.len() {
            kept = trial;
        }
    }
    kept
}

/// Coordinates y with x = P·y, where the first `lead` columns of P are the given
/// points. In y-coordinates point k is e_k, and the forms y_lead..y_{n−1} all
/// vanish on the span of the leading points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    /// `p[i][j]`: row i, column j.
    pub p: Vec<Vec<u32>>,
    /// P^{-1}.
    pub f: Vec<Vec<u32>>,
    pub lead: usize,
}

impl Frame {
    /// Complete linearly independent vectors to a basis with random columns.
    pub fn adapted<R: Rng>(field: &PrimeField, n: usize, lead: &[Vec<u32>], rng: &mut R) -> Result<Frame> {
        if lead.len() > n {
            return Err(Error::InvalidInput("more leading points than coordinates".into()));
        }
        for _ in 0..64 {
            let mut cols: Vec<Vec<u32>> = lead.to_vec();
            while cols.len() < n {
                cols.push((0..n).map(|_| rng.gen_range(0..field.p())).collect());
            }
            let p: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
            if let Ok(f) = inverse(field, &p) {
                return Ok(Frame { p, f, lead: lead.len() });
            }
            if LinearSpace::span(field, n, lead).points().len() < lead.len() {
                return Err(Error::InvalidInput("leading points are dependent".into()));
            }
        }
        Err(Error::RetryExhausted(64))
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// y = F·x.
    pub fn to_frame(&self, field: &PrimeField, x: &[u32]) -> Vec<u32> {
        mat_vec(field, &self.f, x)
    }

    /// x = P·y.
    pub fn from_frame(&self, field: &PrimeField, y: &[u32]) -> Vec<u32> {
        mat_vec(field, &self.p, y)
    }

    /// Rows of F giving the trailing coordinates, i.e. the projection away from
    /// the span of the leading points.
    pub fn projection_rows(&self) -> Vec<Vec<u32>> {
        self.f[self.lead..].to_vec()
    }
}
