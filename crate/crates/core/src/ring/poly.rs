use super::monomial::{Monomial, MAX_VARS};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// A polynomial ring `F_p[x0..x(n-1)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub field: PrimeField,
    pub nvars: usize,
}

impl Ring {
    pub fn new(field: PrimeField, nvars: usize) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(Error::TooLarge(format!(
                "{nvars} variables exceed the supported maximum of {MAX_VARS}"
            )));
        }
        Ok(Ring { field, nvars })
    }

    pub fn with_nvars(&self, nvars: usize) -> Result<Ring> {
        Ring::new(self.field, nvars)
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
}

/// A sparse polynomial; terms are kept strictly descending in grevlex with
/// nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sort and merge a term list under `order`, dropping zero coefficients.
pub fn normalize_terms(field: &PrimeField, mut terms: Vec<Term>, order: MonomialOrder) -> Vec<Term> {
    terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        if let Some(last) = out.last_mut() {
            if last.mono == t.mono {
                last.coeff = field.add(last.coeff, t.coeff);
                continue;
            }
        }
        if let Some(last) = out.last() {
            if last.coeff == 0 {
                out.pop();
            }
        }
        out.push(t);
    }
    if let Some(last) = out.last() {
        if last.coeff == 0 {
            out.pop();
        }
    }
    out
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Ring, c: u32) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.nvars))
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        assert!(i < ring.nvars);
        Self::monomial(ring, 1, Monomial::var(ring.nvars, i))
    }

    pub fn monomial(ring: Ring, c: u32, m: Monomial) -> Self {
        let c = c % ring.p();
        if c == 0 {
            return Self::zero(ring);
        }
        Polynomial { ring, terms: vec![Term { coeff: c, mono: m }] }
    }

    pub fn from_terms(ring: Ring, terms: Vec<Term>) -> Self {
        let terms = normalize_terms(&ring.field, terms, MonomialOrder::Grevlex);
        Polynomial { ring, terms }
    }

    /// Build from terms already sorted under some order (re-sorted to grevlex).
    pub fn from_sorted_in(ring: Ring, terms: Vec<Term>, order: MonomialOrder) -> Self {
        if order == MonomialOrder::Grevlex {
            Polynomial { ring, terms }
        } else {
            Self::from_terms(ring, terms)
        }
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear_form(ring: Ring, coeffs: &[u32]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| Term { coeff: c, mono: Monomial::var(ring.nvars, i) })
            .collect();
        Self::from_terms(ring, terms)
    }

    #[inline]
    pub fn ring(&self) -> Ring {
        self.ring
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.ring.field
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Terms sorted descending under `order`.
    pub fn terms_in(&self, order: MonomialOrder) -> Vec<Term> {
        let mut t = self.terms.clone();
        if order != MonomialOrder::Grevlex {
            t.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        }
        t
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in grevlex.
    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_in(&self, order: MonomialOrder) -> Option<Term> {
        if order == MonomialOrder::Grevlex {
            return self.terms.first().copied();
        }
        self.terms
            .iter()
            .copied()
            .max_by(|a, b| order.cmp(&a.mono, &b.mono))
    }

    /// Total degree (maximum over terms); `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.mono.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.degree();
                self.terms.iter().all(|s| s.mono.degree() == d)
            }
        }
    }

    pub fn deg_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.exp(var)).max()
    }

    /// Coefficient of `x_var^k` viewed as a polynomial in the other variables;
    /// stays in the same ring with `x_var` absent.
    pub fn coeff_of_power(&self, var: usize, k: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.exp(var) == k)
            .map(|t| {
                let mut m = t.mono;
                m.set_exp(var, 0);
                Term { coeff: t.coeff, mono: m }
            })
            .collect();
        Polynomial::from_terms(self.ring, terms)
    }

    pub fn is_monic(&self) -> bool {
        self.terms.first().is_some_and(|t| t.coeff == 1)
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(self.field().inv(t.coeff)),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.field();
        let c = c % f.p();
        if c == 0 {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: f.mul(t.coeff, c), mono: t.mono })
                .collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field().neg(1))
    }

    fn check_ring(&self, other: &Polynomial) {
        assert_eq!(self.ring, other.ring, "polynomials from different rings");
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let terms = merge_add(&self.field(), &self.terms, &other.terms, 1, MonomialOrder::Grevlex);
        Polynomial { ring: self.ring, terms }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let f = self.field();
        let terms = merge_add(&f, &self.terms, &other.terms, f.neg(1), MonomialOrder::Grevlex);
        Polynomial { ring: self.ring, terms }
    }

    pub fn mul_term(&self, c: u32, m: &Monomial) -> Polynomial {
        let f = self.field();
        if c.is_multiple_of(f.p()) {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: f.mul(t.coeff, c), mono: t.mono.mul(m) })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let f = self.field();
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.ring);
        }
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let e = acc.entry(a.mono.mul(&b.mono)).or_insert(0);
                *e = f.reduce(*e + a.coeff as u64 * b.coeff as u64) as u64;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(m, c)| Term { coeff: c as u32, mono: m })
            .collect::<Vec<_>>();
        let mut terms = terms;
        terms.sort_by(|a, b| b.mono.cmp_grevlex(&a.mono));
        Polynomial { ring: self.ring, terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::constant(self.ring, 1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.ring.nvars);
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|t| t.mono.exp(var) > 0)
            .filter_map(|t| {
                let e = t.mono.exp(var);
                let c = f.mul(t.coeff, e % f.p());
                if c == 0 {
                    return None;
                }
                let mut m = t.mono;
                m.set_exp(var, e - 1);
                Some(Term { coeff: c, mono: m })
            })
            .collect();
        Polynomial::from_terms(self.ring, terms)
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.ring.nvars, "point has wrong number of coordinates");
        let f = self.field();
        let maxdeg = self.degree().unwrap_or(0) as usize;
        let pows: Vec<Vec<u32>> = point
            .iter()
            .map(|&x| {
                let mut v = Vec::with_capacity(maxdeg + 1);
                let mut c = 1 % f.p();
                for _ in 0..=maxdeg {
                    v.push(c);
                    c = f.mul(c, x);
                }
                v
            })
            .collect();
        let mut acc = 0u32;
        for t in &self.terms {
            let mut v = t.coeff;
            for (i, &e) in t.mono.exps().iter().enumerate() {
                if e > 0 {
                    v = f.mul(v, pows[i][e as usize]);
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Move into `target` using `map[i]` as the image index of `x_i`.
    pub fn remap(&self, target: Ring, map: &[Option<usize>]) -> Polynomial {
        assert_eq!(target.field, self.ring.field);
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff, mono: t.mono.remap(target.nvars, map) })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Set the listed variables to zero, staying in the same ring.
    pub fn set_zero(&self, vars: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|t| vars.iter().all(|&v| t.mono.exp(v) == 0))
            .copied()
            .collect();
        Polynomial { ring: self.ring, terms }
    }

    /// Replace `x_var` by `g` (which must not involve `x_var`).
    pub fn substitute_var(&self, var: usize, g: &Polynomial) -> Polynomial {
        debug_assert!(!g.uses_var(var));
        let top = self.deg_in(var).unwrap_or(0);
        if top == 0 {
            return self.clone();
        }
        let mut acc = Polynomial::zero(self.ring);
        let mut pw = Polynomial::constant(self.ring, 1);
        for k in 0..=top {
            let c = self.coeff_of_power(var, k);
            if !c.is_zero() {
                acc = acc.add(&c.mul(&pw));
            }
            if k < top {
                pw = pw.mul(g);
            }
        }
        acc
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exp(var) > 0)
    }

    /// Composition with the substitution `x ↦ A·x`, i.e. `g(x) = f(Ax)`.
    pub fn apply_linear_change(&self, a: &[Vec<u32>]) -> Result<Polynomial> {
        let ops = elementary_factors(&self.field(), a)?;
        Ok(self.apply_elementary(&ops))
    }

    pub(crate) fn apply_elementary(&self, ops: &[Elementary]) -> Polynomial {
        let mut g = self.clone();
        for op in ops {
            g = g.apply_one(op);
        }
        g
    }

    fn apply_one(&self, op: &Elementary) -> Polynomial {
        let f = self.field();
        match *op {
            Elementary::Swap(i, j) => {
                let terms = self
                    .terms
                    .iter()
                    .map(|t| {
                        let mut m = t.mono;
                        let (ei, ej) = (m.exp(i), m.exp(j));
                        m.set_exp(i, ej);
                        m.set_exp(j, ei);
                        Term { coeff: t.coeff, mono: m }
                    })
                    .collect();
                Polynomial::from_terms(self.ring, terms)
            }
            Elementary::Scale(i, c) => {
                let maxe = self.deg_in(i).unwrap_or(0) as usize;
                let mut pw = vec![1u32; maxe + 1];
                for k in 1..=maxe {
                    pw[k] = f.mul(pw[k - 1], c);
                }
                let terms = self
                    .terms
                    .iter()
                    .map(|t| Term { coeff: f.mul(t.coeff, pw[t.mono.exp(i) as usize]), mono: t.mono })
                    .collect();
                Polynomial { ring: self.ring, terms }
            }
            Elementary::Shear(i, j, c) => {
                // x_i -> x_i + c x_j
                let maxe = self.deg_in(i).unwrap_or(0) as usize;
                let mut pw = vec![1u32; maxe + 1];
                for k in 1..=maxe {
                    pw[k] = f.mul(pw[k - 1], c);
                }
                let binom = binomial_table_mod(&f, maxe);
                let mut out = Vec::with_capacity(self.terms.len() * 2);
                for t in &self.terms {
                    let e = t.mono.exp(i);
                    let ej = t.mono.exp(j);
                    for k in 0..=e {
                        let coeff = f.mul(t.coeff, f.mul(binom[e as usize][k as usize], pw[k as usize]));
                        if coeff == 0 {
                            continue;
                        }
                        let mut m = t.mono;
                        m.set_exp(i, e - k);
                        m.set_exp(j, ej + k);
                        out.push(Term { coeff, mono: m });
                    }
                }
                Polynomial::from_terms(self.ring, out)
            }
        }
    }
}

fn binomial_table_mod(f: &PrimeField, n: usize) -> Vec<Vec<u32>> {
    let mut t = vec![vec![0u32; n + 1]; n + 1];
    for a in 0..=n {
        t[a][0] = 1 % f.p();
        for b in 1..=a {
            t[a][b] = f.add(t[a - 1][b - 1], if b < a { t[a - 1][b] } else { 0 });
        }
    }
    t
}

/// Elementary substitutions, applied in sequence.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Elementary {
    Swap(usize, usize),
    Scale(usize, u32),
    /// `x_i ↦ x_i + c·x_j`
    Shear(usize, usize, u32),
}

/// Factor an invertible matrix into elementary matrices `A = E_1 ⋯ E_k`.
pub(crate) fn elementary_factors(f: &PrimeField, a: &[Vec<u32>]) -> Result<Vec<Elementary>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("linear change must be square".into()));
    }
    let mut m: Vec<Vec<u32>> = a.iter().map(|r| r.iter().map(|&x| x % f.p()).collect()).collect();
    let mut ops = Vec::new();
    for k in 0..n {
        let p = (k..n).find(|&r| m[r][k] != 0).ok_or(Error::Singular)?;
        if p != k {
            m.swap(p, k);
            ops.push(Elementary::Swap(p, k));
        }
        let piv = m[k][k];
        if piv != 1 {
            let inv = f.inv(piv);
            for x in m[k].iter_mut() {
                *x = f.mul(*x, inv);
            }
            ops.push(Elementary::Scale(k, piv));
        }
        for i in 0..n {
            if i != k && m[i][k] != 0 {
                let c = m[i][k];
                let rowk = m[k].clone();
                for (x, y) in m[i].iter_mut().zip(&rowk) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
                ops.push(Elementary::Shear(i, k, c));
            }
        }
    }
    Ok(ops)
}

/// Merge `a + c·b` where both are sorted descending under `order`.
pub fn merge_add(field: &PrimeField, a: &[Term], b: &[Term], c: u32, order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                let v = field.mul(b[j].coeff, c);
                if v != 0 {
                    out.push(Term { coeff: v, mono: b[j].mono });
                }
                j += 1;
            }
            Ordering::Equal => {
                let v = field.add(a[i].coeff, field.mul(b[j].coeff, c));
                if v != 0 {
                    out.push(Term { coeff: v, mono: a[i].mono });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let v = field.mul(t.coeff, c);
        if v != 0 {
            out.push(Term { coeff: v, mono: t.mono });
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, t) in self.terms.iter().enumerate() {
            let c = field.to_signed(t.coeff);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> = t
                .mono
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
