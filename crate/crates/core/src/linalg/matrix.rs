use std::fmt;

use super::field::PrimeField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Dense row-major matrix over a prime field. Entries are kept reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = field.from_i64(x);
            }
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p();
            }
        }
        m
    }

    /// A single row vector.
    pub fn row_vector(field: PrimeField, v: &[u64]) -> Self {
        Self { field, rows: 1, cols: v.len(), data: v.iter().map(|x| x % field.p()).collect() }
    }

    /// A single column vector.
    pub fn col_vector(field: PrimeField, v: &[u64]) -> Self {
        Self { field, rows: v.len(), cols: 1, data: v.iter().map(|x| x % field.p()).collect() }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.field.p();
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn data(&self) -> &[u64] {
        &self.data
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_row_vecs(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|x| x % field.p()));
        }
        Self { field, rows: rows.len(), cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Matrix product. Panics on shape mismatch (internal use).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.field.p();
        let (n, m, k) = (self.rows, self.cols, other.cols);
        let mut out = vec![0u64; n * k];
        for i in 0..n {
            let row = &mut out[i * k..(i + 1) * k];
            for l in 0..m {
                let a = self.data[i * m + l];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[l * k..(l + 1) * k];
                for j in 0..k {
                    row[j] = (row[j] + a * orow[j]) % p;
                }
            }
        }
        Self { field: self.field, rows: n, cols: k, data: out }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p();
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    s = (s + a * b) % p;
                }
                s
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.rows, v.len());
        let p = self.field.p();
        let mut out = vec![0u64; self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(i)) {
                *o = (*o + a * b) % p;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        let c = c % f.p();
        Self { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack width mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Self { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack height mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Self { field: self.field, rows: self.rows, cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Self { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    pub fn block_diag(field: PrimeField, blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen as the
    /// first nonzero entry in column order.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let p = f.p();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                for j in c..cols {
                    let v = self.data[r * cols + j];
                    if v != 0 {
                        self.data[i * cols + j] = (self.data[i * cols + j] + neg * v) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows form a basis of `{x : self * x^T = 0}`.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let cols = self.cols;
        let mut is_pivot = vec![None; cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let free: Vec<usize> = (0..cols).filter(|&c| is_pivot[c].is_none()).collect();
        let f = self.field;
        let mut out = Self::zeros(f, free.len(), cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * cols + fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                out.data[k * cols + pc] = f.neg(r.get(i, fc));
            }
        }
        out
    }

    /// One solution `x` of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if self.rows != b.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.get(i, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Self::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Monic minimal polynomial, as the lcm of the local minimal polynomials
    /// of the standard basis vectors.
    pub fn minimal_polynomial(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("minimal polynomial of {}x{} matrix", self.rows, self.cols)));
        }
        let f = self.field;
        let n = self.rows;
        let mut mu = Poly::one(f);
        // span of all Krylov vectors seen so far, kept in echelon form
        let mut span = Echelon::new(f, n);
        for i in 0..n {
            let mut e = vec![0u64; n];
            e[i] = 1;
            if span.contains(&e) {
                continue;
            }
            let local = self.local_min_poly(&e, &mut span);
            mu = mu.lcm(&local);
        }
        Ok(mu)
    }

    /// Minimal polynomial of `v` relative to `self`; Krylov vectors are added to `span`.
    fn local_min_poly(&self, v: &[u64], span: &mut Echelon) -> Poly {
        let f = self.field;
        let n = self.rows;
        // track each Krylov vector as a combination of the previous ones
        let mut krylov = Echelon::with_tracking(f, n);
        let mut cur = v.to_vec();
        loop {
            span.insert(&cur);
            match krylov.insert_tracked(&cur) {
                None => {
                    cur = self.mul_vec(&cur);
                }
                Some(combo) => {
                    // cur = sum combo[k] * A^k v  => x^deg - sum combo[k] x^k
                    let deg = combo.len();
                    let mut coeffs: Vec<u64> = combo.iter().map(|&c| f.neg(c)).collect();
                    coeffs.push(1);
                    debug_assert_eq!(coeffs.len(), deg + 1);
                    return Poly::new(f, coeffs);
                }
            }
        }
    }

    /// Characteristic polynomial via Hessenberg reduction.
    pub fn characteristic_polynomial(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("characteristic polynomial of {}x{} matrix", self.rows, self.cols)));
        }
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let inv = f.inv(h.get(m, m - 1));
            for j in (m + 1)..n {
                let u = f.mul(h.get(j, m - 1), inv);
                if u == 0 {
                    continue;
                }
                for k in 0..n {
                    let v = f.sub(h.get(j, k), f.mul(u, h.get(m, k)));
                    h.data[j * n + k] = v;
                }
                for k in 0..n {
                    let v = f.add(h.get(k, m), f.mul(u, h.get(k, j)));
                    h.data[k * n + m] = v;
                }
            }
        }
        // recurrence on leading principal minors
        let mut polys: Vec<Poly> = vec![Poly::one(f)];
        for m in 1..=n {
            let hh = |i: usize, j: usize| h.get(i - 1, j - 1);
            let lin = Poly::new(f, vec![f.neg(hh(m, m)), 1]);
            let mut pm = lin.mul(&polys[m - 1]);
            let mut t = 1u64;
            for i in 1..m {
                t = f.mul(t, hh(m - i + 1, m - i));
                let c = f.mul(t, hh(m - i, m));
                if c != 0 {
                    pm = pm.sub(&polys[m - i - 1].scale(c));
                }
            }
            polys.push(pm);
        }
        Ok(polys.pop().unwrap())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{:?}; {}x{}](", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, ")")
    }
}

/// Incremental echelon basis used by Krylov iterations and span tests.
pub(crate) struct Echelon {
    field: PrimeField,
    dim: usize,
    // (pivot column, normalized row, tracking combination)
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
    tracking: bool,
    inserted: usize,
}

impl Echelon {
    pub(crate) fn new(field: PrimeField, dim: usize) -> Self {
        Self { field, dim, rows: Vec::new(), tracking: false, inserted: 0 }
    }

    fn with_tracking(field: PrimeField, dim: usize) -> Self {
        Self { field, dim, rows: Vec::new(), tracking: true, inserted: 0 }
    }

    fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let f = self.field;
        let mut v = v.to_vec();
        let mut combo = vec![0u64; if self.tracking { self.inserted + 1 } else { 0 }];
        for (pc, row, track) in &self.rows {
            let c = v[*pc];
            if c == 0 {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if *r != 0 {
                    *x = f.sub(*x, f.mul(c, *r));
                }
            }
            if self.tracking {
                for (x, t) in combo.iter_mut().zip(track) {
                    if *t != 0 {
                        *x = f.sub(*x, f.mul(c, *t));
                    }
                }
            }
        }
        (v, combo)
    }

    /// Pivot column and fully reduced row of each stored vector.
    pub(crate) fn rows(&self) -> impl Iterator<Item = (usize, &[u64])> {
        self.rows.iter().map(|(pc, r, _)| (*pc, r.as_slice()))
    }

    /// Remainder of `v` after reduction by the stored rows.
    pub(crate) fn contains(&self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(v).0.iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns whether the span grew.
    pub(crate) fn insert(&mut self, v: &[u64]) -> bool {
        let (r, _) = self.reduce(v);
        self.push_reduced(r, Vec::new())
    }

    fn push_reduced(&mut self, mut r: Vec<u64>, mut track: Vec<u64>) -> bool {
        let f = self.field;
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(r[pc]);
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for x in track.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // keep rows fully reduced with respect to the new pivot
        for (_, row, t) in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                *x = f.sub(*x, f.mul(c, *y));
            }
            if self.tracking {
                t.resize(track.len(), 0);
                for (x, y) in t.iter_mut().zip(&track) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        self.rows.push((pc, r, track));
        true
    }

    /// Tracked insertion for Krylov sequences: if `v` is dependent on the
    /// previously inserted vectors, returns the combination expressing it.
    fn insert_tracked(&mut self, v: &[u64]) -> Option<Vec<u64>> {
        let f = self.field;
        let idx = self.inserted;
        let (r, mut combo) = self.reduce(v);
        // combo currently holds -sum(c_k * track_k); v - sum = r
        if r.iter().all(|&x| x == 0) {
            // v = -combo (restricted to previous vectors)
            combo.truncate(idx);
            return Some(combo.iter().map(|&c| f.neg(c)).collect());
        }
        combo[idx] = 1;
        for row in self.rows.iter_mut() {
            row.2.resize(idx + 1, 0);
        }
        self.inserted += 1;
        self.push_reduced(r, combo);
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_duplicate_rows_gf2() {
        let m = Matrix::from_rows(gf(2), &[vec![1, 1], vec![1, 1]]);
        let (r, piv) = m.rref();
        assert_eq!(piv, vec![0]);
        assert_eq!(r, Matrix::from_rows(gf(2), &[vec![1, 1], vec![0, 0]]));
    }

    #[test]
    fn rref_identity_gf3() {
        let id = Matrix::identity(gf(3), 3);
        let (r, piv) = id.rref();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);
    }

    #[test]
    fn rref_gf5_hand_reduction() {
        // [[2,4],[1,2]] -> scale row 0 by 2^{-1}=3: [1,2]; row1 - row0 = 0
        let m = Matrix::from_rows(gf(5), &[vec![2, 4], vec![1, 2]]);
        let (r, piv) = m.rref();
        assert_eq!(r, Matrix::from_rows(gf(5), &[vec![1, 2], vec![0, 0]]));
        assert_eq!(piv.len(), 1);
    }

    #[test]
    fn kernel_examples() {
        let k = Matrix::from_rows(gf(2), &[vec![1, 1], vec![0, 0]]).kernel_basis();
        assert_eq!(k, Matrix::from_rows(gf(2), &[vec![1, 1]]));
        let inv = Matrix::from_rows(gf(3), &[vec![1, 2], vec![0, 1]]);
        assert_eq!(inv.kernel_basis().rows(), 0);
        // [[1,2,0]] over GF(3): enumerate all 27 vectors for the oracle
        let m = Matrix::from_rows(gf(3), &[vec![1, 2, 0]]);
        let mut count = 0;
        for a in 0..3u64 {
            for b in 0..3u64 {
                for c in 0..3u64 {
                    if m.mul_vec(&[a, b, c]) == vec![0] {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 9); // 3^2 vectors => dimension 2
        assert_eq!(m.kernel_basis().rows(), 2);
    }

    #[test]
    fn solve_examples() {
        let f = gf(2);
        let id = Matrix::identity(f, 2);
        let b = Matrix::from_rows(f, &[vec![1], vec![0]]);
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);
        let z = Matrix::zeros(f, 2, 2);
        assert!(z.solve(&b).unwrap().is_none());
        // exhaustive GF(2)^2 search oracle
        let a = Matrix::from_rows(f, &[vec![1, 1], vec![0, 1]]);
        let target = vec![0, 1];
        let sols: Vec<Vec<u64>> = (0..4u64)
            .map(|k| vec![k & 1, (k >> 1) & 1])
            .filter(|x| a.mul_vec(x) == target)
            .collect();
        assert_eq!(sols, vec![vec![1, 1]]);
        let x = a.solve(&Matrix::col_vector(f, &target)).unwrap().unwrap();
        assert_eq!(x.col(0), vec![1, 1]);
        assert!(a.solve(&Matrix::zeros(f, 3, 1)).is_err());
    }

    #[test]
    fn minimal_polynomials() {
        let f = gf(2);
        let z = Matrix::zeros(f, 3, 3);
        assert_eq!(z.minimal_polynomial().unwrap(), Poly::new(f, vec![0, 1]));
        let id = Matrix::identity(f, 3);
        assert_eq!(id.minimal_polynomial().unwrap(), Poly::new(f, vec![1, 1])); // x - 1 = x + 1
        let n = Matrix::from_rows(f, &[vec![0, 1], vec![0, 0]]);
        assert!(!n.is_zero());
        assert!(n.mul(&n).is_zero());
        assert_eq!(n.minimal_polynomial().unwrap(), Poly::new(f, vec![0, 0, 1]));
        assert!(Matrix::zeros(f, 2, 3).minimal_polynomial().is_err());
    }

    #[test]
    fn charpoly_matches_determinant_definition() {
        let f = gf(7);
        let a = Matrix::from_rows(f, &[vec![1, 2, 3], vec![0, 4, 5], vec![6, 0, 2]]);
        let chi = a.characteristic_polynomial().unwrap();
        // Cayley-Hamilton
        assert!(chi.eval_matrix(&a).is_zero());
        assert_eq!(chi.degree(), Some(3));
        let mu = a.minimal_polynomial().unwrap();
        assert!(chi.divrem(&mu).1.is_zero());
    }
}
