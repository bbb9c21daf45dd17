use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// A map `A e_{r_1} + ... -> A e_{c_1} + ...` as a matrix of algebra
/// elements, entry `(s, t)` in `e_{r_s} A e_{c_t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjMat {
    rows: Vec<usize>,
    cols: Vec<usize>,
    entries: Vec<Vec<u64>>,
}

impl ProjMat {
    pub fn zero(alg: &Algebra, rows: &[usize], cols: &[usize]) -> Self {
        Self { rows: rows.to_vec(), cols: cols.to_vec(), entries: vec![alg.zero(); rows.len() * cols.len()] }
    }

    pub fn identity(alg: &Algebra, verts: &[usize]) -> Self {
        let mut m = Self::zero(alg, verts, verts);
        for (i, &v) in verts.iter().enumerate() {
            m.set(i, i, alg.idempotent(v));
        }
        m
    }

    /// From a row-major nested list of entries; each entry must lie in its block.
    pub fn from_entries(alg: &Algebra, rows: &[usize], cols: &[usize], entries: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::ShapeMismatch("entry matrix does not match the summand lists".into()));
        }
        let m = Self { rows: rows.to_vec(), cols: cols.to_vec(), entries: entries.into_iter().flatten().collect() };
        m.check_blocks(alg)?;
        Ok(m)
    }

    /// Scalar matrix lifted to the algebra: entry `c` becomes `c e_v`.
    /// Entries between different vertices must vanish.
    pub fn from_scalars(alg: &Algebra, rows: &[usize], cols: &[usize], m: &Matrix) -> Self {
        let mut out = Self::zero(alg, rows, cols);
        for (i, &v) in rows.iter().enumerate() {
            for (j, &w) in cols.iter().enumerate() {
                let c = m.get(i, j);
                if c != 0 {
                    assert_eq!(v, w, "scalar entry between different vertices");
                    out.set(i, j, alg.scale(&alg.idempotent(v), c));
                }
            }
        }
        out
    }

    pub(crate) fn check_blocks(&self, alg: &Algebra) -> Result<()> {
        for (i, &v) in self.rows.iter().enumerate() {
            for (j, &w) in self.cols.iter().enumerate() {
                let x = self.get(i, j);
                if x.len() != alg.dim() || !alg.in_block(x, v, w) {
                    return Err(Error::Invalid(format!("entry ({i}, {j}) is not in e_v A e_w")));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &[u64] {
        &self.entries[r * self.cols.len() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Vec<u64>) {
        let n = self.cols.len();
        self.entries[r * n + c] = x;
    }

    /// Entries as nested rows, the layout used by [`crate::module::free_map`].
    pub fn nested(&self) -> Vec<Vec<Vec<u64>>> {
        let n = self.cols.len();
        (0..self.rows.len()).map(|r| self.entries[r * n..(r + 1) * n].to_vec()).collect()
    }

    /// `self` then `other`.
    pub fn mul(&self, alg: &Algebra, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "composing maps with different middle terms");
        let mut out = Self::zero(alg, &self.rows, &other.cols);
        let k = self.cols.len();
        for i in 0..self.rows.len() {
            for m in 0..k {
                let x = self.get(i, m);
                if Algebra::is_zero(x) {
                    continue;
                }
                for j in 0..other.cols.len() {
                    let y = other.get(m, j);
                    if Algebra::is_zero(y) {
                        continue;
                    }
                    let n = other.cols.len();
                    alg.mul_acc(&mut out.entries[i * n + j], x, y, 1);
                }
            }
        }
        out
    }

    fn zip(&self, alg: &Algebra, other: &Self, f: impl Fn(&Algebra, &[u64], &[u64]) -> Vec<u64>) -> Self {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(alg, a, b)).collect();
        Self { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn add(&self, alg: &Algebra, other: &Self) -> Self {
        self.zip(alg, other, |a, x, y| a.add(x, y))
    }

    pub fn sub(&self, alg: &Algebra, other: &Self) -> Self {
        self.zip(alg, other, |a, x, y| a.sub(x, y))
    }

    pub fn scale(&self, alg: &Algebra, c: u64) -> Self {
        let entries = self.entries.iter().map(|x| alg.scale(x, c)).collect();
        Self { rows: self.rows.clone(), cols: self.cols.clone(), entries }
    }

    pub fn neg(&self, alg: &Algebra) -> Self {
        self.scale(alg, alg.field().neg(1))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| Algebra::is_zero(x))
    }

    pub fn is_radical(&self, alg: &Algebra) -> bool {
        self.entries.iter().all(|x| alg.is_radical(x))
    }

    /// Scalar matrix of `e_v` coefficients between summands with equal
    /// vertices; the image of the map in the top.
    pub fn reduction(&self, alg: &Algebra) -> Matrix {
        Matrix::from_fn(alg.field(), self.rows.len(), self.cols.len(), |i, j| {
            if self.rows[i] == self.cols[j] {
                alg.e_coeff(self.get(i, j), self.rows[i])
            } else {
                0
            }
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let n = self.cols.len();
        let entries = idx.iter().flat_map(|&r| self.entries[r * n..(r + 1) * n].iter().cloned()).collect();
        Self { rows: idx.iter().map(|&r| self.rows[r]).collect(), cols: self.cols.clone(), entries }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let n = self.cols.len();
        let entries = (0..self.rows.len())
            .flat_map(|r| idx.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.entries[r * n + c].clone())
            .collect();
        Self { rows: self.rows.clone(), cols: idx.iter().map(|&c| self.cols[c]).collect(), entries }
    }

    /// `[self | other]`: same source, targets concatenated.
    pub fn hstack(&self, alg: &Algebra, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal sources");
        let cols = [self.cols.as_slice(), other.cols.as_slice()].concat();
        let mut out = Self::zero(alg, &self.rows, &cols);
        for r in 0..self.rows.len() {
            for c in 0..cols.len() {
                let x = if c < self.cols.len() { self.get(r, c) } else { other.get(r, c - self.cols.len()) };
                out.set(r, c, x.to_vec());
            }
        }
        out
    }

    /// `[self ; other]`: sources concatenated, same target.
    pub fn vstack(&self, _alg: &Algebra, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack needs equal targets");
        Self {
            rows: [self.rows.as_slice(), other.rows.as_slice()].concat(),
            cols: self.cols.clone(),
            entries: [self.entries.as_slice(), other.entries.as_slice()].concat(),
        }
    }

    pub fn block_diag(alg: &Algebra, parts: &[Self]) -> Self {
        let rows: Vec<usize> = parts.iter().flat_map(|p| p.rows.iter().copied()).collect();
        let cols: Vec<usize> = parts.iter().flat_map(|p| p.cols.iter().copied()).collect();
        let mut out = Self::zero(alg, &rows, &cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for r in 0..p.rows.len() {
                for c in 0..p.cols.len() {
                    out.set(r0 + r, c0 + c, p.get(r, c).to_vec());
                }
            }
            r0 += p.rows.len();
            c0 += p.cols.len();
        }
        out
    }

    /// Entrywise `nu` (or its inverse), relabelling the summands.
    pub fn nakayama(&self, alg: &Algebra, inverse: bool) -> Result<Self> {
        let nak = alg.require_self_injective()?;
        let perm = if inverse { &nak.inverse_perm } else { &nak.perm };
        let rows: Vec<usize> = self.rows.iter().map(|&v| perm[v]).collect();
        let cols: Vec<usize> = self.cols.iter().map(|&v| perm[v]).collect();
        let mut entries = Vec::with_capacity(self.entries.len());
        for (i, &v) in self.rows.iter().enumerate() {
            for (j, &w) in self.cols.iter().enumerate() {
                let x = self.get(i, j);
                entries.push(if Algebra::is_zero(x) {
                    alg.zero()
                } else if inverse {
                    alg.nakayama_inverse_on_hom(v, w, x)?
                } else {
                    alg.nakayama_on_hom(v, w, x)?
                });
            }
        }
        Ok(Self { rows, cols, entries })
    }

    /// Inverse over the algebra, when the reduction is invertible:
    /// `T^-1 = (sum_k R^k) Tbar^-1` with `R = 1 - Tbar^-1 T` radical.
    pub fn inverse(&self, alg: &Algebra) -> Option<Self> {
        let bar = self.reduction(alg);
        let bar_inv = bar.inverse()?;
        let b = Self::from_scalars(alg, &self.cols, &self.rows, &bar_inv);
        let r = Self::identity(alg, &self.cols).sub(alg, &b.mul(alg, self));
        let mut sum = Self::identity(alg, &self.cols);
        let mut pow = Self::identity(alg, &self.cols);
        for _ in 0..alg.nilpotency_bound() {
            pow = pow.mul(alg, &r);
            if pow.is_zero() {
                break;
            }
            sum = sum.add(alg, &pow);
        }
        let inv = sum.mul(alg, &b);
        debug_assert_eq!(self.mul(alg, &inv), Self::identity(alg, &self.rows));
        Some(inv)
    }

    /// Compact display of the entries.
    pub fn format(&self, alg: &Algebra) -> String {
        let rows: Vec<String> = (0..self.rows.len())
            .map(|r| {
                let cells: Vec<String> = (0..self.cols.len()).map(|c| alg.format_elem(self.get(r, c))).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, fixtures};

    #[test]
    fn inverse_of_unipotent_matrix() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let t = a.path_elem(&[0], 0).unwrap();
        let mut m = ProjMat::identity(&a, &[0, 0]);
        m.set(0, 1, t.clone());
        m.set(1, 1, a.add(&a.one(), &t));
        let inv = m.inverse(&a).unwrap();
        assert_eq!(m.mul(&a, &inv), ProjMat::identity(&a, &[0, 0]));
        assert_eq!(inv.mul(&a, &m), ProjMat::identity(&a, &[0, 0]));
    }

    #[test]
    fn radical_matrix_is_not_invertible() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let mut m = ProjMat::zero(&a, &[0], &[0]);
        m.set(0, 0, a.path_elem(&[0], 0).unwrap());
        assert!(m.inverse(&a).is_none());
    }
}
