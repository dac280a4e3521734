use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

pub const MAX_VARS: usize = 32;

/// A monomial in at most [`MAX_VARS`] variables with its total degree cached.
#[derive(Clone, Copy)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
    nvars: u8,
}

impl PartialEq for Monomial {
    #[inline]
    fn eq(&self, other: &Self) -> bool {
        self.deg == other.deg && self.exps == other.exps
    }
}
impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps[..self.nvars as usize].hash(state);
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
            nvars: nvars as u8,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        let mut m = Self::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent {e} too large");
            m.exps[i] = e as u8;
            m.deg += e as u16;
        }
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn exps(&self) -> &[u8] {
        &self.exps[..self.nvars as usize]
    }

    pub fn exps_u32(&self) -> Vec<u32> {
        self.exps().iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..self.nvars as usize {
            let e = m.exps[i] as u32 + other.exps[i] as u32;
            assert!(e < 256, "exponent overflow");
            m.exps[i] = e as u8;
        }
        m.deg += other.deg;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        self.exps[..self.nvars as usize]
            .iter()
            .zip(&other.exps[..self.nvars as usize])
            .all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut m = *other;
        for i in 0..self.nvars as usize {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut deg = 0u16;
        for i in 0..self.nvars as usize {
            m.exps[i] = m.exps[i].max(other.exps[i]);
            deg += m.exps[i] as u16;
        }
        m.deg = deg;
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut deg = 0u16;
        for i in 0..self.nvars as usize {
            m.exps[i] = m.exps[i].min(other.exps[i]);
            deg += m.exps[i] as u16;
        }
        m.deg = deg;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.nvars as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Bit mask of the variables that occur; bits 32.. mark exponents >= 2.
    #[inline]
    pub fn sev(&self) -> u64 {
        let mut s = 0u64;
        for i in 0..self.nvars as usize {
            let e = self.exps[i];
            if e >= 1 {
                s |= 1 << i;
                if e >= 2 {
                    s |= 1 << (32 + i);
                }
            }
        }
        s
    }

    pub fn set_exp(&mut self, i: usize, e: u32) {
        assert!(e < 256, "exponent {e} too large");
        self.deg = self.deg - self.exps[i] as u16 + e as u16;
        self.exps[i] = e as u8;
    }

    /// Reinterpret in a ring with `nvars` variables using `map[i]` as the new index of
    /// variable `i` (`None` requires the exponent to be zero).
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Monomial {
        let mut m = Monomial::one(nvars);
        for i in 0..self.nvars as usize {
            let e = self.exps[i];
            if e > 0 {
                let j = map[i].expect("remap drops a variable that occurs");
                m.exps[j] += e;
            }
        }
        m.deg = self.deg;
        m
    }

    /// Graded reverse lexicographic comparison.
    #[inline]
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..self.nvars as usize).rev() {
            let (a, b) = (self.exps[i], other.exps[i]);
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }

    /// Grevlex restricted to the variables in `range`.
    #[inline]
    pub fn cmp_grevlex_range(&self, other: &Monomial, lo: usize, hi: usize) -> Ordering {
        let da: u32 = self.exps[lo..hi].iter().map(|&e| e as u32).sum();
        let db: u32 = other.exps[lo..hi].iter().map(|&e| e as u32).sum();
        match da.cmp(&db) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (lo..hi).rev() {
            let (a, b) = (self.exps[i], other.exps[i]);
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps[..self.nvars as usize].cmp(&other.exps[..self.nvars as usize])
    }
}

/// All monomials of degree `d` in `n` variables, in descending lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if i == n - 1 {
            exps[i] = left;
            out.push(Monomial::from_exps(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

/// Binomial coefficient as u64 (0 when k > n).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// Number of monomials of degree d in n variables.
pub fn count_monomials(n: usize, d: u32) -> u64 {
    if n == 0 {
        return (d == 0) as u64;
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Monomial::from_exps(&[2, 0, 1]);
        let b = Monomial::from_exps(&[1, 1, 0]);
        assert_eq!(a.mul(&b).exps_u32(), vec![3, 1, 1]);
        assert_eq!(a.lcm(&b).exps_u32(), vec![2, 1, 1]);
        assert_eq!(a.gcd(&b).exps_u32(), vec![1, 0, 0]);
        assert!(Monomial::from_exps(&[1, 0, 1]).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(b.quotient_of(&a.lcm(&b)).exps_u32(), vec![1, 0, 1]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(count_monomials(5, 12), 1820);
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn grevlex_basic() {
        // x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
        let ms: Vec<Monomial> = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]]
            .iter()
            .map(|e| Monomial::from_exps(e))
            .collect();
        for w in ms.windows(2) {
            assert_eq!(w[0].cmp_grevlex(&w[1]), Ordering::Greater);
        }
    }
}
