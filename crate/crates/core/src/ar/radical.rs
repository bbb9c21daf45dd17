//! Jacobson radical of a finite-dimensional algebra over GF(p), given by a
//! multiplication table, using the layered trace forms of the regular
//! representation.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::subspace::Quotient;
use crate::linalg::{Echelon, Matrix, PrimeField};

/// A finite-dimensional associative algebra given by structure constants:
/// `table[i * dim + j]` holds the coordinates of `b_i * b_j`.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    field: PrimeField,
    dim: usize,
    table: Vec<Vec<u64>>,
}

impl FdAlgebra {
    pub fn new(field: PrimeField, dim: usize, table: Vec<Vec<u64>>) -> Result<Self> {
        if table.len() != dim * dim || table.iter().any(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch(format!("multiplication table for dimension {dim}")));
        }
        Ok(Self { field, dim, table })
    }

    /// Build the table by multiplying basis elements with `mul`.
    pub fn from_fn(field: PrimeField, dim: usize, mut mul: impl FnMut(usize, usize) -> Vec<u64>) -> Result<Self> {
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(mul(i, j));
            }
        }
        Self::new(field, dim, table)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut out = vec![0; self.dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, &t) in out.iter_mut().zip(&self.table[i * self.dim + j]) {
                    if t != 0 {
                        *o = f.add(*o, f.mul(c, t));
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Matrix of `y -> x * y`.
    pub fn left_mult_matrix(&self, x: &[u64]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            for (i, c) in self.mul(x, &self.unit(j)).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Associativity on all basis triples.
    pub fn check_associative(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.mul(&self.unit(i), &self.unit(j));
                for k in 0..self.dim {
                    let jk = self.mul(&self.unit(j), &self.unit(k));
                    if self.mul(&ij, &self.unit(k)) != self.mul(&self.unit(i), &jk) {
                        return Err(Error::Invalid(format!("table is not associative at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Semisimple quotient by a two-sided ideal spanned by the rows of `ideal`.
    pub fn quotient(&self, ideal: &Matrix) -> FdAlgebra {
        let q = Quotient::new(ideal);
        let comp = q.complement_cols().to_vec();
        let table = comp
            .iter()
            .flat_map(|&i| comp.iter().map(move |&j| (i, j)))
            .map(|(i, j)| q.project(&self.mul(&self.unit(i), &self.unit(j))))
            .collect();
        FdAlgebra { field: self.field, dim: comp.len(), table }
    }
}

/// Integer matrix power modulo `m`, for `m < 2^32`.
fn pow_mod_matrix(a: &[u64], n: usize, mut e: u64, m: u64) -> Vec<u64> {
    let mul = |x: &[u64], y: &[u64]| {
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = x[i * n + k];
                if xik == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + xik * y[k * n + j]) % m;
                }
            }
        }
        out
    };
    let mut result = vec![0u64; n * n];
    for i in 0..n {
        result[i * n + i] = 1 % m;
    }
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    result
}

/// Jacobson radical, returned as a matrix whose rows are a basis.
///
/// With `n = dim A` and `l = floor(log_p n)`, sets `I_{-1} = A` and
/// `I_i = { a in I_{i-1} : g_i(a b) = 0 for all b }`, where
/// `g_i(x) = Tr(L_x^(p^i)) / p^i mod p` on integer lifts. Then `rad A = I_l`.
pub fn algebra_radical(a: &FdAlgebra) -> Result<Matrix> {
    let f = a.field;
    let p = f.p();
    let n = a.dim;
    if n == 0 {
        return Ok(Matrix::zeros(f, 0, 0));
    }
    let mut l = 0u32;
    while (p as u128).pow(l + 1) <= n as u128 {
        l += 1;
    }
    let mut current = Matrix::identity(f, n);
    let basis_mats: Vec<Matrix> = (0..n).map(|j| a.left_mult_matrix(&a.unit(j))).collect();
    for i in 0..=l {
        let pi = p.pow(i);
        let modulus = pi * p;
        let rows = current.rows();
        let mut g = Matrix::zeros(f, rows, n);
        for r in 0..rows {
            let x = current.row(r);
            // L_{x b} = L_x L_b
            let lx = mat_comb(f, &basis_mats, x);
            for b in 0..n {
                let lxb = lx.mul(&basis_mats[b]);
                let tr = if i == 0 {
                    (0..n).fold(0, |acc, k| f.add(acc, lxb.get(k, k)))
                } else {
                    let pw = pow_mod_matrix(lxb.data(), n, pi, modulus);
                    let t = (0..n).fold(0u64, |acc, k| (acc + pw[k * n + k]) % modulus);
                    if t % pi != 0 {
                        return Err(Error::Invalid("trace form not divisible; input is not associative".into()));
                    }
                    (t / pi) % p
                };
                g.set(r, b, tr);
            }
        }
        // combinations c with sum_r c_r g(x_r b) = 0 for every b
        let ker = g.transpose().kernel_basis();
        current = if ker.rows() == 0 { Matrix::zeros(f, 0, n) } else { ker.mul(&current) };
        if current.rows() == 0 {
            break;
        }
    }
    Ok(current)
}

fn mat_comb(f: PrimeField, mats: &[Matrix], c: &[u64]) -> Matrix {
    let n = mats[0].rows();
    let mut out = Matrix::zeros(f, n, n);
    for (m, &ci) in mats.iter().zip(c) {
        if ci != 0 {
            out = out.add(&m.scale(ci));
        }
    }
    out
}

/// Certificate: the radical is a nilpotent two-sided ideal and the
/// quotient has zero radical.
pub fn certify_radical(a: &FdAlgebra, rad: &Matrix) -> Result<bool> {
    let n = a.dim;
    let f = a.field;
    if rad.rows() == 0 && n == 0 {
        return Ok(true);
    }
    let rows = rad.row_vecs();
    // ideal
    for r in &rows {
        for j in 0..n {
            for prod in [a.mul(r, &a.unit(j)), a.mul(&a.unit(j), r)] {
                if !crate::linalg::subspace::contains(rad, &prod)? {
                    return Ok(false);
                }
            }
        }
    }
    // nilpotent: rad^k shrinks to zero
    let mut power = rows.clone();
    for _ in 0..=n {
        if power.is_empty() {
            break;
        }
        let mut next = Echelon::new(f, n);
        for x in &power {
            for y in &rows {
                next.insert(&a.mul(x, y));
            }
        }
        power = next.rows().map(|(_, r)| r.to_vec()).collect();
    }
    if !power.is_empty() {
        return Ok(false);
    }
    let q = a.quotient(rad);
    Ok(algebra_radical(&q)?.rows() == 0)
}

/// Outcome of the locality test for `A / rad A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locality {
    /// The quotient is a field.
    Local,
    /// An element of `A` whose image in the quotient has a minimal
    /// polynomial with at least two distinct irreducible factors.
    NotLocal(Vec<u64>),
    Inconclusive,
}

/// Decide whether `A / rad A` is a division ring (a finite field here).
pub fn locality<R: Rng>(a: &FdAlgebra, rad: &Matrix, rng: &mut R, tries: usize) -> Result<Locality> {
    let f = a.field;
    let q = Quotient::new(rad);
    let qdim = q.dim();
    if qdim <= 1 {
        return Ok(if qdim == 1 { Locality::Local } else { Locality::Inconclusive });
    }
    let qa = a.quotient(rad);
    let comp = q.complement_cols().to_vec();
    let candidates = (0..qdim)
        .map(|i| {
            let mut v = vec![0; qdim];
            v[i] = 1;
            v
        })
        .chain((0..tries).map(|_| (0..qdim).map(|_| rng.gen_range(0..f.p())).collect()));
    for c in candidates.collect::<Vec<_>>() {
        let mu = qa.left_mult_matrix(&c).minimal_polynomial()?;
        let factors = mu.factor(rng);
        if factors.len() >= 2 {
            let mut lift = vec![0; a.dim];
            for (&j, &cj) in comp.iter().zip(&c) {
                lift[j] = cj;
            }
            return Ok(Locality::NotLocal(lift));
        }
        if factors.len() == 1 && factors[0].1 == 1 && factors[0].0.degree() == Some(qdim) {
            return Ok(Locality::Local);
        }
    }
    Ok(Locality::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn prime_field_alg(p: u64) -> FdAlgebra {
        FdAlgebra::new(gf(p), 1, vec![vec![1]]).unwrap()
    }

    /// k[t]/(t^n) with basis 1, t, ..., t^{n-1}.
    fn truncated(n: usize, p: u64) -> FdAlgebra {
        FdAlgebra::from_fn(gf(p), n, |i, j| {
            let mut v = vec![0; n];
            if i + j < n {
                v[i + j] = 1;
            }
            v
        })
        .unwrap()
    }

    /// Upper triangular 2x2 matrices: basis E11, E12, E22.
    fn upper_triangular(p: u64) -> FdAlgebra {
        let units = [(0, 0), (0, 1), (1, 1)];
        FdAlgebra::from_fn(gf(p), 3, |i, j| {
            let (a, b) = units[i];
            let (c, d) = units[j];
            let mut v = vec![0; 3];
            if b == c {
                v[units.iter().position(|&u| u == (a, d)).unwrap()] = 1;
            }
            v
        })
        .unwrap()
    }

    /// Full matrix algebra M_n(GF(p)).
    fn full_matrix(n: usize, p: u64) -> FdAlgebra {
        FdAlgebra::from_fn(gf(p), n * n, |i, j| {
            let (a, b) = (i / n, i % n);
            let (c, d) = (j / n, j % n);
            let mut v = vec![0; n * n];
            if b == c {
                v[a * n + d] = 1;
            }
            v
        })
        .unwrap()
    }

    #[test]
    fn prime_field_has_zero_radical() {
        for p in [2, 3, 7] {
            assert_eq!(algebra_radical(&prime_field_alg(p)).unwrap().rows(), 0);
        }
    }

    #[test]
    fn truncated_polynomials() {
        for (n, p) in [(2, 2), (3, 3), (4, 2), (5, 2), (9, 3)] {
            let a = truncated(n, p);
            let r = algebra_radical(&a).unwrap();
            assert_eq!(r.rows(), n - 1, "k[t]/(t^{n}) over GF({p})");
            assert!(certify_radical(&a, &r).unwrap());
            // oracle: radical is spanned by t, ..., t^{n-1}
            for row in r.row_vecs() {
                assert_eq!(row[0], 0);
            }
        }
    }

    #[test]
    fn upper_triangular_gf2() {
        let a = upper_triangular(2);
        let r = algebra_radical(&a).unwrap();
        assert_eq!(r.rows(), 1);
        assert_eq!(r.row(0), &[0, 1, 0]);
        // nilpotency oracle: the nilpotent elements of the algebra form exactly span{E12}
        let nilpotent: Vec<Vec<u64>> = (0..8u64)
            .map(|k| vec![k & 1, (k >> 1) & 1, (k >> 2) & 1])
            .filter(|x| a.left_mult_matrix(x).pow(3).is_zero())
            .collect();
        assert_eq!(nilpotent, vec![vec![0, 0, 0], vec![0, 1, 0]]);
    }

    #[test]
    fn matrix_algebras_are_semisimple_and_not_local() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (n, p) in [(2, 2), (2, 3), (3, 2)] {
            let a = full_matrix(n, p);
            let r = algebra_radical(&a).unwrap();
            assert_eq!(r.rows(), 0);
            assert!(matches!(locality(&a, &r, &mut rng, 64).unwrap(), Locality::NotLocal(_)));
        }
    }

    #[test]
    fn field_extension_is_local() {
        // GF(4) = GF(2)[x]/(x^2+x+1)
        let a = FdAlgebra::from_fn(gf(2), 2, |i, j| match (i, j) {
            (0, k) | (k, 0) => {
                let mut v = vec![0, 0];
                v[k] = 1;
                v
            }
            _ => vec![1, 1],
        })
        .unwrap();
        let r = algebra_radical(&a).unwrap();
        assert_eq!(r.rows(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert_eq!(locality(&a, &r, &mut rng, 8).unwrap(), Locality::Local);
        let t = truncated(3, 3);
        let rt = algebra_radical(&t).unwrap();
        assert_eq!(locality(&t, &rt, &mut rng, 8).unwrap(), Locality::Local);
    }
}
