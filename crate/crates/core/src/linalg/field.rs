use std::fmt;

use crate::error::{Error, Result};

/// The prime field GF(p), `2 <= p <= 2^31 - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const MAX_PRIME: u64 = (1 << 31) - 1;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..=Self::MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(self) -> u64 {
        self.p
    }

    /// Reduce a signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.from_i64(t0)
    }

    /// Signed representative in `(-p/2, p/2]`, used for display only.
    pub fn signed(self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_bounds() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(PrimeField::MAX_PRIME + 2).is_err());
        assert!(PrimeField::new(PrimeField::MAX_PRIME).is_ok());
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        let big = PrimeField::new(PrimeField::MAX_PRIME).unwrap();
        let a = 123_456_789;
        assert_eq!(big.mul(a, big.inv(a)), 1);
    }
}
