//! Exact linear algebra over F_p: dense echelon forms, kernels, inverses and
//! sparse rank.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::par;

/// Row-major dense matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut m = Dense::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Dense {
        let mut t = Dense::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }
}

/// Row echelon form: `rows[k]` has a leading 1 in column `pivots[k]`, zeros before it,
/// and the pivot columns increase strictly.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
    pub reduced: bool,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Forward Gaussian elimination. Reductions are delayed when `p < 2^16`, so every
/// inner update is a plain multiply-add.
pub fn echelon(f: &PrimeField, m: &Dense) -> Echelon {
    let (nr, nc) = (m.rows, m.cols);
    let mut work: Vec<u64> = m.data.iter().map(|&x| x as u64).collect();
    let p = f.p() as u64;
    let lazy = f.is_small();
    let mut pivots = Vec::new();
    let mut k = 0usize;
    let mut steps_since_reduce: u64 = 0;
    for c in 0..nc {
        if k == nr {
            break;
        }
        let mut found = None;
        for i in k..nr {
            let v = f.reduce(work[i * nc + c]) as u64;
            work[i * nc + c] = v;
            if v != 0 && found.is_none() {
                found = Some(i);
            }
        }
        let Some(i) = found else { continue };
        if i != k {
            for j in c..nc {
                work.swap(i * nc + j, k * nc + j);
            }
        }
        let inv = f.inv(work[k * nc + c] as u32) as u64;
        for j in c..nc {
            let v = f.reduce(work[k * nc + j]) as u64;
            work[k * nc + j] = f.reduce(v * inv) as u64;
        }
        let (head, tail) = work.split_at_mut((k + 1) * nc);
        let prow = &head[k * nc + c..k * nc + nc];
        let below = &mut tail[..(nr - k - 1) * nc];
        if lazy {
            par::for_each_row(below, nc, |row| {
                let a = row[c];
                if a != 0 {
                    let fac = p - a;
                    let seg = &mut row[c..];
                    for (x, &y) in seg.iter_mut().zip(prow) {
                        *x += fac * y;
                    }
                }
            });
            steps_since_reduce += 1;
            if steps_since_reduce >= (1u64 << 30) {
                for x in below.iter_mut() {
                    *x = f.reduce(*x) as u64;
                }
                steps_since_reduce = 0;
            }
        } else {
            par::for_each_row(below, nc, |row| {
                let a = row[c];
                if a != 0 {
                    let fac = p - a;
                    for (x, &y) in row[c..].iter_mut().zip(prow) {
                        *x = f.reduce(*x + fac * y) as u64;
                    }
                }
            });
        }
        pivots.push(c);
        k += 1;
    }
    let rows = (0..k)
        .map(|i| work[i * nc..(i + 1) * nc].iter().map(|&x| f.reduce(x)).collect())
        .collect();
    Echelon { cols: nc, rows, pivots, reduced: false }
}

/// Make an echelon form fully reduced (zeros above every pivot).
pub fn back_reduce(f: &PrimeField, e: &mut Echelon) {
    if e.reduced {
        return;
    }
    let r = e.rank();
    for k in (0..r).rev() {
        let pc = e.pivots[k];
        let (upper, lower) = e.rows.split_at_mut(k);
        let prow = &lower[0];
        for row in upper.iter_mut() {
            let a = row[pc];
            if a != 0 {
                let fac = f.neg(a) as u64;
                for j in pc..e.cols {
                    if prow[j] != 0 {
                        row[j] = f.reduce(row[j] as u64 + fac * prow[j] as u64);
                    }
                }
            }
        }
    }
    e.reduced = true;
}

pub fn rref(f: &PrimeField, m: &Dense) -> Echelon {
    let mut e = echelon(f, m);
    back_reduce(f, &mut e);
    e
}

pub fn rank(f: &PrimeField, m: &Dense) -> usize {
    echelon(f, m).rank()
}

/// Basis of the right kernel `{v : M v = 0}`.
pub fn nullspace(f: &PrimeField, m: &Dense) -> Vec<Vec<u32>> {
    let e = echelon(f, m);
    kernel_from_echelon(f, e)
}

pub fn kernel_from_echelon(f: &PrimeField, mut e: Echelon) -> Vec<Vec<u32>> {
    let nc = e.cols;
    let mut is_pivot = vec![false; nc];
    for &c in &e.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..nc).filter(|&c| !is_pivot[c]).collect();
    if free.is_empty() {
        return Vec::new();
    }
    let r = e.rank();
    if free.len() * 2 >= r {
        back_reduce(f, &mut e);
        return free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; nc];
                v[fc] = 1;
                for k in 0..r {
                    v[e.pivots[k]] = f.neg(e.rows[k][fc]);
                }
                v
            })
            .collect();
    }
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; nc];
            v[fc] = 1;
            for k in (0..r).rev() {
                let pc = e.pivots[k];
                let row = &e.rows[k];
                let mut acc = 0u64;
                for j in pc + 1..nc {
                    if row[j] != 0 && v[j] != 0 {
                        acc = f.reduce(acc + row[j] as u64 * v[j] as u64) as u64;
                    }
                }
                v[pc] = f.neg(acc as u32);
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{w : w M = 0}`.
pub fn left_nullspace(f: &PrimeField, m: &Dense) -> Vec<Vec<u32>> {
    nullspace(f, &m.transpose())
}

pub fn inverse(f: &PrimeField, a: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let n = a.len();
    let mut aug = Dense::zeros(n, 2 * n);
    for i in 0..n {
        if a[i].len() != n {
            return Err(Error::InvalidInput("matrix must be square".into()));
        }
        for j in 0..n {
            aug.set(i, j, a[i][j] % f.p());
        }
        aug.set(i, n + i, 1);
    }
    let e = rref(f, &aug);
    if e.rank() < n || e.pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(e.rows.iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(f: &PrimeField, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    let mut acc = 0u64;
                    for (k, &x) in row.iter().enumerate() {
                        acc = f.reduce(acc + x as u64 * b[k][j] as u64) as u64;
                    }
                    acc as u32
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(f: &PrimeField, a: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|row| {
            let mut acc = 0u64;
            for (x, y) in row.iter().zip(v) {
                acc = f.reduce(acc + *x as u64 * *y as u64) as u64;
            }
            acc as u32
        })
        .collect()
}

/// Sparse rows over F_p: each row sorted by column, no zero entries.
#[derive(Clone, Debug, Default)]
pub struct Sparse {
    pub cols: usize,
    pub rows: Vec<Vec<(u32, u32)>>,
}

impl Sparse {
    pub fn new(cols: usize) -> Self {
        Sparse { cols, rows: Vec::new() }
    }

    pub fn push_row(&mut self, mut row: Vec<(u32, u32)>) {
        row.retain(|e| e.1 != 0);
        row.sort_unstable_by_key(|e| e.0);
        self.rows.push(row);
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn to_dense(&self) -> Dense {
        let mut d = Dense::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                d.set(i, c as usize, v);
            }
        }
        d
    }
}

const DENSE_CUTOFF: usize = 512 * 512;

/// Rank of a sparse matrix; dense elimination below 512×512.
pub fn sparse_rank(f: &PrimeField, m: &Sparse) -> usize {
    if m.rows.is_empty() || m.cols == 0 {
        return 0;
    }
    if m.rows.len() * m.cols <= DENSE_CUTOFF {
        return rank(f, &m.to_dense());
    }
    let mut order: Vec<usize> = (0..m.rows.len()).collect();
    order.sort_by_key(|&i| m.rows[i].len());
    let mut pivot_of: Vec<u32> = vec![u32::MAX; m.cols];
    let mut basis: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut scratch = Vec::new();
    for i in order {
        let mut row = m.rows[i].clone();
        loop {
            let Some(&(c, v)) = row.first() else { break };
            let b = pivot_of[c as usize];
            if b == u32::MAX {
                let inv = f.inv(v);
                for e in row.iter_mut() {
                    e.1 = f.mul(e.1, inv);
                }
                pivot_of[c as usize] = basis.len() as u32;
                basis.push(row);
                break;
            }
            let prow = &basis[b as usize];
            sparse_axpy(f, &row, prow, f.neg(v), &mut scratch);
            std::mem::swap(&mut row, &mut scratch);
        }
        if basis.len() == m.cols {
            break;
        }
    }
    basis.len()
}

fn sparse_axpy(f: &PrimeField, a: &[(u32, u32)], b: &[(u32, u32)], c: u32, out: &mut Vec<(u32, u32)>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ca, cb) = (a[i].0, b[j].0);
        if ca < cb {
            out.push(a[i]);
            i += 1;
        } else if cb < ca {
            out.push((cb, f.mul(b[j].1, c)));
            j += 1;
        } else {
            let v = f.add(a[i].1, f.mul(b[j].1, c));
            if v != 0 {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    for e in &b[j..] {
        out.push((e.0, f.mul(e.1, c)));
    }
}
