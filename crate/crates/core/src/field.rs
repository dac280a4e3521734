//! Prime field arithmetic with Barrett reduction.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub const DEFAULT_PRIME: u32 = 32003;

/// The field F_p for a prime `p < 2^31`.
///
/// Elements are plain `u32` values in `[0, p)`. The struct is `Copy` and carries
/// the precomputed Barrett constant, so it can be passed around freely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
    #[serde(skip)]
    magic: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p >= (1 << 31) {
            return Err(Error::InvalidInput(format!(
                "modulus {p} is not a prime below 2^31"
            )));
        }
        Ok(Self::new_unchecked(p))
    }

    fn new_unchecked(p: u32) -> Self {
        PrimeField {
            p,
            magic: u64::MAX / p as u64,
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// True when `p^2 < 2^32`, which lets dense kernels delay reductions.
    #[inline]
    pub fn is_small(&self) -> bool {
        self.p < (1 << 16)
    }

    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u32 {
        let q = ((x as u128 * self.magic as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        while r >= self.p as u64 {
            r -= self.p as u64;
        }
        r as u32
    }

    #[inline(always)]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn try_inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv(a))
    }

    /// Inverse of a nonzero element; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i64) as u32
    }

    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::new_unchecked(DEFAULT_PRIME)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let f = PrimeField::default();
        assert_eq!(f.add(32002, 5), 4);
        assert_eq!(f.sub(3, 5), 32001);
        assert_eq!(f.mul(f.inv(7), 7), 1);
        assert_eq!(f.from_i64(-1), 32002);
        assert_eq!(f.to_signed(32002), -1);
        assert!(f.try_inv(0).is_err());
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(f2.inv(1), 1);
        assert!(PrimeField::new(32001).is_err());
    }

    proptest! {
        #[test]
        fn barrett_matches_modulo(x in any::<u64>(), pi in 0usize..4) {
            let p = [2u32, 3, 32003, 2147483647][pi];
            let f = PrimeField::new(p).unwrap();
            prop_assert_eq!(f.reduce(x) as u64, x % p as u64);
        }

        #[test]
        fn field_axioms(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let f = PrimeField::default();
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }
}
