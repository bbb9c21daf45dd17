//! Row-span subspaces of `GF(p)^n`.

use super::field::PrimeField;
use super::matrix::Matrix;
use crate::error::{Error, Result};

fn check_ambient(u: &Matrix, v: &Matrix) -> Result<()> {
    if u.cols() != v.cols() {
        return Err(Error::ShapeMismatch(format!(
            "subspaces of different ambient dimensions {} and {}",
            u.cols(),
            v.cols()
        )));
    }
    Ok(())
}

/// Echelon basis (nonzero rows of the rref) of the row span.
pub fn row_basis(m: &Matrix) -> Matrix {
    let (r, piv) = m.rref();
    r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
}

pub fn sum(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    check_ambient(u, v)?;
    Ok(row_basis(&u.vstack(v)))
}

/// Intersection of row spans via the kernel of the stacked matrix.
pub fn intersection(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    check_ambient(u, v)?;
    let u = row_basis(u);
    let v = row_basis(v);
    if u.rows() == 0 || v.rows() == 0 {
        return Ok(Matrix::zeros(u.field(), 0, u.cols()));
    }
    // (a, b) with a*U + b*V = 0  <=>  [U; V]^T (a, b)^T = 0
    let stacked = u.vstack(&v);
    let k = stacked.transpose().kernel_basis();
    let a = k.block(0, 0, k.rows(), u.rows());
    Ok(row_basis(&a.mul(&u)))
}

pub fn contains(u: &Matrix, x: &[u64]) -> Result<bool> {
    if u.cols() != x.len() {
        return Err(Error::ShapeMismatch(format!("vector of length {} in ambient {}", x.len(), u.cols())));
    }
    let base = u.rank();
    Ok(u.vstack(&Matrix::row_vector(u.field(), x)).rank() == base)
}

pub fn is_subspace(u: &Matrix, v: &Matrix) -> Result<bool> {
    check_ambient(u, v)?;
    Ok(v.vstack(u).rank() == v.rank())
}

/// Quotient `V / W` for `W` a subspace of the ambient space `V = GF(p)^n`,
/// realised through the standard basis vectors outside the pivots of `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Matrix,
    pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl Quotient {
    pub fn new(w: &Matrix) -> Self {
        let (r, piv) = w.rref();
        let sub = r.select_rows(&(0..piv.len()).collect::<Vec<_>>());
        let n = w.cols();
        let complement = (0..n).filter(|c| !piv.contains(c)).collect();
        Self { sub, pivots: piv, complement }
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.cols()
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.pivots.len()
    }

    /// The ambient coordinates that index the complement.
    pub fn complement_cols(&self) -> &[usize] {
        &self.complement
    }

    /// Reduce `x` modulo `W`, returning quotient coordinates.
    pub fn project(&self, x: &[u64]) -> Vec<u64> {
        let f = self.sub.field();
        let mut v = x.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            for (vj, &r) in v.iter_mut().zip(self.sub.row(i)) {
                if r != 0 {
                    *vj = f.sub(*vj, f.mul(c, r));
                }
            }
        }
        self.complement.iter().map(|&j| v[j]).collect()
    }

    /// Ambient representative of a quotient coordinate vector.
    pub fn lift(&self, q: &[u64]) -> Vec<u64> {
        let mut v = vec![0; self.ambient_dim()];
        for (&j, &c) in self.complement.iter().zip(q) {
            v[j] = c;
        }
        v
    }

    /// Matrix (dim x ambient) of the projection, for column vectors.
    pub fn projection_matrix(&self) -> Matrix {
        let n = self.ambient_dim();
        let f = self.sub.field();
        let mut m = Matrix::zeros(f, self.dim(), n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            for (i, c) in self.project(&e).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn is_zero_class(&self, x: &[u64]) -> bool {
        self.project(x).iter().all(|&c| c == 0)
    }
}

/// Coordinates with respect to a fixed list of independent vectors.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    field: PrimeField,
    basis: Matrix,
    pivots: Vec<usize>,
    inv: Matrix,
}

impl Coordinatizer {
    /// `basis` rows must be linearly independent.
    pub fn new(basis: &Matrix) -> Self {
        let f = basis.field();
        let (_, piv) = basis.rref();
        assert_eq!(piv.len(), basis.rows(), "coordinatizer basis must be independent");
        let square = basis.select_cols(&piv);
        let inv = square.inverse().expect("pivot minor is invertible");
        Self { field: f, basis: basis.clone(), pivots: piv, inv }
    }

    pub fn len(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `x`, assuming it lies in the span.
    pub fn coords_unchecked(&self, x: &[u64]) -> Vec<u64> {
        let sel: Vec<u64> = self.pivots.iter().map(|&j| x[j]).collect();
        self.inv.vec_mul(&sel)
    }

    /// Coordinates of `x`, or `None` if it is outside the span.
    pub fn coords(&self, x: &[u64]) -> Option<Vec<u64>> {
        let c = self.coords_unchecked(x);
        let back = self.basis.vec_mul(&c);
        if back.iter().zip(x).all(|(a, b)| a % self.field.p() == b % self.field.p()) {
            Some(c)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn equal_subspaces_intersect_to_themselves() {
        let f = gf(3);
        let u = Matrix::from_rows(f, &[vec![1, 2, 0], vec![0, 1, 1]]);
        let i = intersection(&u, &u).unwrap();
        assert_eq!(i, row_basis(&u));
    }

    #[test]
    fn complementary_lines() {
        let f = gf(2);
        let u = Matrix::from_rows(f, &[vec![1, 0]]);
        let v = Matrix::from_rows(f, &[vec![1, 1]]);
        assert_eq!(intersection(&u, &v).unwrap().rows(), 0);
        assert_eq!(sum(&u, &v).unwrap().rows(), 2);
    }

    #[test]
    fn intersection_by_enumeration_gf2() {
        let f = gf(2);
        let u = Matrix::from_rows(f, &[vec![1, 1, 0]]);
        let v = Matrix::from_rows(f, &[vec![0, 1, 1], vec![1, 0, 1]]);
        // enumerate GF(2)^3 oracle
        let common: Vec<Vec<u64>> = (0..8u64)
            .map(|k| vec![k & 1, (k >> 1) & 1, (k >> 2) & 1])
            .filter(|x| contains(&u, x).unwrap() && contains(&v, x).unwrap())
            .collect();
        assert_eq!(common.len(), 2); // {0, (1,1,0)}
        let i = intersection(&u, &v).unwrap();
        assert_eq!(i, Matrix::from_rows(f, &[vec![1, 1, 0]]));
        assert!(intersection(&u, &Matrix::zeros(f, 1, 2)).is_err());
    }

    #[test]
    fn quotient_coordinates() {
        let f = gf(5);
        let w = Matrix::from_rows(f, &[vec![1, 2, 0]]);
        let q = Quotient::new(&w);
        assert_eq!(q.dim(), 2);
        assert!(q.is_zero_class(&[2, 4, 0]));
        let x = [3, 1, 4];
        let back = q.lift(&q.project(&x));
        // x - lift(project(x)) lies in W
        let diff: Vec<u64> = x.iter().zip(&back).map(|(&a, &b)| f.sub(a, b)).collect();
        assert!(contains(&w, &diff).unwrap());
    }

    #[test]
    fn coordinatizer_roundtrip() {
        let f = gf(7);
        let b = Matrix::from_rows(f, &[vec![1, 2, 3, 0], vec![0, 0, 1, 5]]);
        let c = Coordinatizer::new(&b);
        let x = b.vec_mul(&[4, 6]);
        assert_eq!(c.coords(&x), Some(vec![4, 6]));
        assert_eq!(c.coords(&[1, 0, 0, 0]), None);
    }
}
