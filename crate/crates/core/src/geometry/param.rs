//! Parametrizations used to draw "general" points: a polynomial map from a
//! source space, optionally restricted to a plane curve, optionally followed by
//! a linear map (projections).

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::mat_vec;
use crate::ring::{Polynomial, Ring};
use rand::Rng;

/// How many degenerate draws are tolerated before giving up.
pub const MAX_RETRIES: usize = 256;

/// Largest prime for which plane-curve points are found by scanning F_p.
pub const MAX_SCAN_PRIME: u32 = 1 << 20;

#[derive(Clone, Debug)]
pub struct Parametrization {
    pub source: Ring,
    pub components: Vec<Polynomial>,
    /// Source points are drawn on this plane curve (source must have 3 variables).
    pub curve: Option<Polynomial>,
    /// Applied to the component vector after evaluation.
    pub transform: Option<Vec<Vec<u32>>>,
}

impl Parametrization {
    pub fn new(source: Ring, components: Vec<Polynomial>) -> Self {
        Parametrization { source, components, curve: None, transform: None }
    }

    pub fn on_curve(curve: Polynomial, components: Vec<Polynomial>) -> Self {
        Parametrization { source: curve.ring(), components, curve: Some(curve), transform: None }
    }

    /// Number of image coordinates.
    pub fn target_vars(&self) -> usize {
        self.transform.as_ref().map_or(self.components.len(), |t| t.len())
    }

    /// Compose with a linear map on the image.
    pub fn then(&self, field: &PrimeField, m: &[Vec<u32>]) -> Parametrization {
        let t = match &self.transform {
            None => m.to_vec(),
            Some(old) => crate::linalg::mat_mul(field, m, old),
        };
        Parametrization { transform: Some(t), ..self.clone() }
    }

    pub fn evaluate_at(&self, src: &[u32]) -> Vec<u32> {
        let f = self.source.field;
        let v: Vec<u32> = self.components.iter().map(|c| c.evaluate(src)).collect();
        match &self.transform {
            None => v,
            Some(t) => mat_vec(&f, t, &v),
        }
    }

    pub fn sample_source<R: Rng>(&self, rng: &mut R) -> Result<Vec<u32>> {
        let p = self.source.p();
        match &self.curve {
            None => Ok((0..self.source.nvars).map(|_| rng.gen_range(0..p)).collect()),
            Some(f) => point_on_plane_curve(f, rng),
        }
    }

    /// A point of the image, re-drawn while it is zero or `reject` holds.
    pub fn sample<R: Rng>(&self, rng: &mut R, reject: &dyn Fn(&[u32]) -> bool) -> Result<Vec<u32>> {
        for _ in 0..MAX_RETRIES {
            let src = self.sample_source(rng)?;
            let v = self.evaluate_at(&src);
            if v.iter().any(|&c| c != 0) && !reject(&v) {
                return Ok(v);
            }
        }
        Err(Error::RetryExhausted(MAX_RETRIES))
    }
}

/// Coefficients of F(1, a, t) as a polynomial in t.
fn slice_coefficients(f: &Polynomial, a: u32) -> Vec<u32> {
    let field = f.field();
    let d = f.degree().unwrap_or(0) as usize;
    let mut c = vec![0u32; d + 1];
    for t in f.terms() {
        let e1 = t.mono.exp(1) as u64;
        let e2 = t.mono.exp(2) as usize;
        c[e2] = field.add(c[e2], field.mul(t.coeff, field.pow(a, e1)));
    }
    c
}

/// Coefficients of u(t) = f(a + t·b), by Newton interpolation at t = 0..=deg f.
fn restrict_to_line(f: &Polynomial, a: &[u32], b: &[u32]) -> Vec<u32> {
    let field = f.field();
    let d = f.degree().unwrap_or(0) as usize;
    let nodes: Vec<u32> = (0..=d as u32).collect();
    let mut dd: Vec<u32> = nodes
        .iter()
        .map(|&t| {
            let x: Vec<u32> = a.iter().zip(b).map(|(&ai, &bi)| field.add(ai, field.mul(t, bi))).collect();
            f.evaluate(&x)
        })
        .collect();
    for k in 1..=d {
        for i in (k..=d).rev() {
            let den = field.inv(field.sub(nodes[i], nodes[i - k]));
            dd[i] = field.mul(field.sub(dd[i], dd[i - 1]), den);
        }
    }
    // expand the Newton form
    let mut c = vec![0u32; d + 1];
    for k in (0..=d).rev() {
        // c := c·(t − nodes[k]) + dd[k]
        let mut next = vec![0u32; d + 1];
        for i in 0..d {
            next[i + 1] = field.add(next[i + 1], c[i]);
            next[i] = field.sub(next[i], field.mul(c[i], nodes[k]));
        }
        next[0] = field.add(next[0], dd[k]);
        c = next;
    }
    c
}

/// A random point of V(I) found on a random line: the restriction of the first
/// generator is scanned for roots over F_p and the remaining generators are
/// checked at each root. Only succeeds reliably when V(I) is a hypersurface.
pub fn point_on_hypersurface<R: Rng>(gens: &[Polynomial], rng: &mut R) -> Result<Vec<u32>> {
    let f = gens
        .iter()
        .filter(|g| !g.is_zero())
        .min_by_key(|g| (g.degree(), g.len()))
        .ok_or_else(|| Error::InvalidInput("the zero ideal has no distinguished points".into()))?;
    let field = f.field();
    let p = field.p();
    let n = f.ring().nvars;
    if p > MAX_SCAN_PRIME {
        return Err(Error::TooLarge(format!("root scan over F_{p} exceeds 2^20 elements")));
    }
    for _ in 0..MAX_RETRIES {
        let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let b: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let c = restrict_to_line(f, &a, &b);
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let start = rng.gen_range(0..p);
        for k in 0..p {
            let t = (start + k) % p;
            let mut acc = 0u64;
            for &ci in c.iter().rev() {
                acc = field.reduce(acc * t as u64 + ci as u64) as u64;
            }
            if acc != 0 {
                continue;
            }
            let x: Vec<u32> = a.iter().zip(&b).map(|(&ai, &bi)| field.add(ai, field.mul(t, bi))).collect();
            if x.iter().any(|&v| v != 0) && gens.iter().all(|g| g.evaluate(&x) == 0) {
                return Ok(x);
            }
        }
    }
    Err(Error::RetryExhausted(MAX_RETRIES))
}

/// A random point of V(F) ⊂ P^2 with x0 = 1: draw x1 = a at random and scan
/// F(1, a, t) for a root, starting at a random offset.
pub fn point_on_plane_curve<R: Rng>(f: &Polynomial, rng: &mut R) -> Result<Vec<u32>> {
    let field = f.field();
    let p = field.p();
    if f.ring().nvars != 3 {
        return Err(Error::InvalidInput("plane curve must live in 3 variables".into()));
    }
    if p > MAX_SCAN_PRIME {
        return Err(Error::TooLarge(format!("root scan over F_{p} exceeds 2^20 elements")));
    }
    for _ in 0..MAX_RETRIES {
        let a = rng.gen_range(0..p);
        let c = slice_coefficients(f, a);
        if c.iter().skip(1).all(|&x| x == 0) {
            continue;
        }
        let start = rng.gen_range(0..p);
        for k in 0..p {
            let t = (start + k) % p;
            let mut acc = 0u64;
            for &ci in c.iter().rev() {
                acc = field.reduce(acc * t as u64 + ci as u64) as u64;
            }
            if acc == 0 {
                return Ok(vec![1, a, t]);
            }
        }
    }
    Err(Error::RetryExhausted(MAX_RETRIES))
}
