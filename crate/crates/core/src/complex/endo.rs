use rand::Rng;

use super::{hom_k, ComplexMap, HomK, PerfectComplex};
use crate::ar::radical::{algebra_radical, locality, FdAlgebra, Locality};
use crate::error::{Error, Result};
use crate::linalg::subspace::{Coordinatizer, Quotient};
use crate::linalg::{Echelon, Matrix};

/// `End_K(X)` of a minimal complex seen through its reduction to the tops
/// of the terms. Null-homotopic maps of a minimal complex have radical
/// components and maps with radical components are nilpotent, so the
/// radical of `End_K(X)` is the preimage of the radical of the image.
pub(crate) struct ReducedEnd {
    pub hom: HomK,
    pub basis: Vec<ComplexMap>,
    /// The image, with basis the reductions of `basis[pivots[k]]` and
    /// product `x * y` the reduction of `y then x`.
    image: FdAlgebra,
    pivots: Vec<usize>,
    /// Row `i`: image coordinates of the reduction of `basis[i]`.
    to_image: Matrix,
}

fn reduction_blocks(f: &ComplexMap) -> Vec<Matrix> {
    f.source().degrees().map(|d| f.reduction(d)).collect()
}

fn flat(blocks: &[Matrix]) -> Vec<u64> {
    blocks.iter().flat_map(|m| m.data().iter().copied()).collect()
}

impl ReducedEnd {
    pub fn new(x: &PerfectComplex) -> Result<Self> {
        if !x.is_minimal() {
            return Err(Error::Invalid("reduced endomorphisms need a minimal complex".into()));
        }
        let fld = x.algebra().field();
        let hom = hom_k(x, x)?;
        let basis = hom.basis();
        let blocks: Vec<Vec<Matrix>> = basis.iter().map(reduction_blocks).collect();
        let vecs: Vec<Vec<u64>> = blocks.iter().map(|b| flat(b)).collect();
        let len = vecs.first().map_or(0, Vec::len);
        let mut ech = Echelon::new(fld, len);
        let pivots: Vec<usize> = (0..vecs.len()).filter(|&i| ech.insert(&vecs[i])).collect();
        let pivot_rows: Vec<Vec<u64>> = pivots.iter().map(|&i| vecs[i].clone()).collect();
        let coord = Coordinatizer::new(&Matrix::from_row_vecs(fld, len, &pivot_rows));
        let coords = |v: &[u64]| coord.coords(v).ok_or_else(|| Error::Inconsistent("reductions do not close under products".into()));
        let to_image = Matrix::from_row_vecs(fld, pivots.len(), &vecs.iter().map(|v| coords(v)).collect::<Result<Vec<_>>>()?);
        let mut table = Vec::with_capacity(pivots.len() * pivots.len());
        for &i in &pivots {
            for &j in &pivots {
                let prod: Vec<Matrix> = blocks[j].iter().zip(&blocks[i]).map(|(a, b)| a.mul(b)).collect();
                table.push(coords(&flat(&prod))?);
            }
        }
        let image = FdAlgebra::new(fld, pivots.len(), table)?;
        Ok(Self { hom, basis, image, pivots, to_image })
    }

    /// Rows: coordinates (in the `HomK` basis) of a basis of the radical.
    pub fn radical(&self) -> Result<Matrix> {
        let fld = self.image.field();
        let n = self.basis.len();
        if self.image.dim() == 0 {
            return Ok(Matrix::identity(fld, n));
        }
        let rad = algebra_radical(&self.image)?;
        let q = Quotient::new(&rad);
        if q.dim() == 0 {
            return Ok(Matrix::identity(fld, n));
        }
        let rows: Vec<Vec<u64>> = self.to_image.row_vecs().iter().map(|r| q.project(r)).collect();
        Ok(Matrix::from_row_vecs(fld, q.dim(), &rows).transpose().kernel_basis())
    }

    /// Locality of `End_K(X)`; a witness is returned in `HomK` coordinates.
    pub fn locality<R: Rng>(&self, rng: &mut R, tries: usize) -> Result<Locality> {
        match self.image.dim() {
            0 => return Ok(Locality::Inconclusive),
            1 => return Ok(Locality::Local),
            _ => {}
        }
        let rad = algebra_radical(&self.image)?;
        Ok(match locality(&self.image, &rad, rng, tries)? {
            Locality::NotLocal(c) => {
                let mut lift = vec![0; self.basis.len()];
                for (&p, &ci) in self.pivots.iter().zip(&c) {
                    lift[p] = ci;
                }
                Locality::NotLocal(lift)
            }
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::{end_k, tests::two_term};
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::linalg::subspace;

    #[test]
    fn radical_agrees_with_the_trace_form_radical() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let x = two_term(&a, a.path_elem(&[0], 0).unwrap());
        let p = PerfectComplex::stalk(&a, &[0], 0);
        for c in [x.clone(), PerfectComplex::direct_sum(&[&x, &p, &x.shift(1), &x]).unwrap()] {
            let r = ReducedEnd::new(&c).unwrap();
            let fast = r.radical().unwrap();
            let (end, _) = end_k(&c).unwrap();
            let slow = algebra_radical(&end).unwrap();
            assert_eq!(fast.rows(), slow.rows());
            assert!(subspace::is_subspace(&fast, &slow).unwrap());
        }
    }
}
