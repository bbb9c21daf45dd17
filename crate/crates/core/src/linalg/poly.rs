use std::fmt;

use rand::Rng;

use super::field::PrimeField;
use super::matrix::Matrix;

/// Univariate polynomial over GF(p), coefficients stored low degree first
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let mut p = Self { field, coeffs: coeffs.into_iter().map(|c| c % field.p()).collect() };
        p.trim();
        p
    }

    pub fn zero(field: PrimeField) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Self { field, coeffs: vec![1] }
    }

    pub fn x(field: PrimeField) -> Self {
        Self { field, coeffs: vec![0, 1] }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(*self.coeffs.get(i).unwrap_or(&0), *o.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(*self.coeffs.get(i).unwrap_or(&0), *o.coeffs.get(i).unwrap_or(&0)))
            .collect();
        Self::new(f, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        let p = f.p();
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % p;
            }
        }
        Self::new(f, c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Self::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(r[k + dd], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn lcm(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field);
        }
        let g = self.gcd(o);
        self.divrem(&g).0.mul(o).monic()
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &a)| f.mul(a, i as u64 % f.p())).collect();
        Self::new(f, c)
    }

    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let f = self.field;
        let id = Matrix::identity(f, n);
        let mut acc = Matrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add(&id.scale(c));
        }
        acc
    }

    /// Square-free factorization of a monic polynomial: pairs (g, m) with the
    /// g pairwise coprime, square-free, and `self = prod g^m`.
    pub fn squarefree_factorization(&self) -> Vec<(Self, usize)> {
        let f = self.field;
        let p = f.p() as usize;
        let me = self.monic();
        if me.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut c = me.gcd(&me.derivative());
        let mut w = me.divrem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.divrem(&y).0;
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.divrem(&w).0;
            i += 1;
        }
        if !c.is_one() {
            // c is a p-th power; over a prime field the p-th root of a coefficient is itself
            let root: Vec<u64> = c.coeffs.iter().step_by(p).copied().collect();
            for (g, m) in Self::new(f, root).squarefree_factorization() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a square-free monic polynomial.
    pub fn distinct_degree_factorization(&self) -> Vec<(Self, usize)> {
        let f = self.field;
        let mut rest = self.monic();
        let mut out = Vec::new();
        let x = Self::x(f);
        let mut h = x.clone();
        let mut i = 1;
        while rest.degree().unwrap_or(0) >= 2 * i {
            h = h.pow_mod(f.p() as u128, &rest);
            let g = h.sub(&x).gcd(&rest);
            if !g.is_one() {
                rest = rest.divrem(&g).0;
                h = h.rem(&rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.degree().unwrap_or(0) > 0 {
            let d = rest.degree().unwrap();
            out.push((rest, d));
        }
        out
    }

    /// Equal-degree splitting (Cantor-Zassenhaus) of a square-free monic
    /// product of irreducibles of degree `d`.
    pub fn equal_degree_factorization<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<Self> {
        let n = self.degree().unwrap_or(0);
        if n <= d {
            return vec![self.monic()];
        }
        let f = self.field;
        let p = f.p();
        loop {
            let a = Self::new(f, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = a.gcd(self);
            let candidate = if !g.is_one() {
                g
            } else if p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc.gcd(self)
            } else {
                // a^((p^d - 1)/2) = prod_i (a^(p^i))^((p-1)/2)
                let half = ((p - 1) / 2) as u128;
                let mut t = a.rem(self);
                let mut acc = Self::one(f);
                for _ in 0..d {
                    acc = acc.mul(&t.pow_mod(half, self)).rem(self);
                    t = t.pow_mod(p as u128, self);
                }
                acc.sub(&Self::one(f)).gcd(self)
            };
            let cd = candidate.degree().unwrap_or(0);
            if cd > 0 && cd < n {
                let other = self.divrem(&candidate).0;
                let mut out = candidate.equal_degree_factorization(d, rng);
                out.extend(other.equal_degree_factorization(d, rng));
                return out;
            }
        }
    }

    /// Full factorization into monic irreducibles with multiplicities, sorted.
    pub fn factor<R: Rng>(&self, rng: &mut R) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        for (g, m) in self.squarefree_factorization() {
            for (h, d) in g.distinct_degree_factorization() {
                for irr in h.equal_degree_factorization(d, rng) {
                    out.push((irr, m));
                }
            }
        }
        out.sort_by(|a, b| a.0.coeffs.len().cmp(&b.0.coeffs.len()).then(a.0.coeffs.cmp(&b.0.coeffs)));
        out
    }

    /// Distinct monic irreducible factors, without needing randomness when
    /// there is at most one per degree.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let sf = self.squarefree_factorization();
        if sf.len() != 1 || sf[0].1 != 1 {
            return false;
        }
        let ddf = self.distinct_degree_factorization();
        ddf.len() == 1 && ddf[0].1 == n
    }

    /// Whether the polynomial is a power of a single irreducible.
    pub fn is_primary(&self) -> bool {
        let sf = self.squarefree_factorization();
        let mut radical = Self::one(self.field);
        for (g, _) in &sf {
            radical = radical.mul(g);
        }
        radical.degree().unwrap_or(0) > 0 && radical.is_irreducible()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}
