use std::collections::BTreeMap;

use super::{ComplexMap, PerfectComplex, ProjMat};
use crate::algebra::Algebra;
use crate::ar::radical::FdAlgebra;
use crate::error::{Error, Result};
use crate::linalg::subspace::{self, Coordinatizer};
use crate::linalg::{Echelon, Matrix};

/// Coordinates on the matrices `rows -> cols`: entry by entry, the block
/// coordinates of `e_{r_s} A e_{c_t}`.
#[derive(Clone, Debug)]
pub(crate) struct MatSpace {
    rows: Vec<usize>,
    cols: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

impl MatSpace {
    pub(crate) fn new(alg: &Algebra, rows: &[usize], cols: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() * cols.len());
        let mut dim = 0;
        for &v in rows {
            for &w in cols {
                offsets.push(dim);
                dim += alg.block_dim(v, w);
            }
        }
        Self { rows: rows.to_vec(), cols: cols.to_vec(), offsets, dim }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn coords(&self, alg: &Algebra, m: &ProjMat, out: &mut [u64]) {
        for (s, &v) in self.rows.iter().enumerate() {
            for (t, &w) in self.cols.iter().enumerate() {
                let off = self.offsets[s * self.cols.len() + t];
                for (k, &i) in alg.block(v, w).iter().enumerate() {
                    out[off + k] = m.get(s, t)[i];
                }
            }
        }
    }

    pub(crate) fn from_coords(&self, alg: &Algebra, v: &[u64]) -> ProjMat {
        let mut m = ProjMat::zero(alg, &self.rows, &self.cols);
        for (s, &a) in self.rows.iter().enumerate() {
            for (t, &b) in self.cols.iter().enumerate() {
                let off = self.offsets[s * self.cols.len() + t];
                let n = alg.block_dim(a, b);
                if v[off..off + n].iter().any(|&c| c != 0) {
                    m.set(s, t, alg.from_block_coords(a, b, &v[off..off + n]));
                }
            }
        }
        m
    }

    /// `(s, t, basis index)` for each coordinate.
    pub(crate) fn basis(&self, alg: &Algebra) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::with_capacity(self.dim);
        for (s, &v) in self.rows.iter().enumerate() {
            for (t, &w) in self.cols.iter().enumerate() {
                for &i in alg.block(v, w) {
                    out.push((s, t, i));
                }
            }
        }
        out
    }
}

/// `Hom^k(X, Y) = prod_d Hom(X_d, Y_{d+k})` with concatenated coordinates.
#[derive(Clone, Debug)]
pub(crate) struct GradedHom {
    shift: i64,
    pieces: Vec<(i64, MatSpace, usize)>,
    dim: usize,
}

impl GradedHom {
    pub(crate) fn new(x: &PerfectComplex, y: &PerfectComplex, k: i64) -> Self {
        let alg = x.algebra();
        let mut pieces = Vec::new();
        let mut dim = 0;
        if !x.is_zero() {
            for d in x.degrees() {
                let (a, b) = (x.term(d), y.term(d + k));
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let sp = MatSpace::new(alg, a, b);
                if sp.dim() == 0 {
                    continue;
                }
                pieces.push((d, sp.clone(), dim));
                dim += sp.dim();
            }
        }
        Self { shift: k, pieces, dim }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    fn piece(&self, d: i64) -> Option<&(i64, MatSpace, usize)> {
        self.pieces.iter().find(|p| p.0 == d)
    }

    pub(crate) fn coords(&self, alg: &Algebra, maps: &BTreeMap<i64, ProjMat>) -> Vec<u64> {
        let mut out = vec![0; self.dim];
        for (d, sp, off) in &self.pieces {
            if let Some(m) = maps.get(d) {
                sp.coords(alg, m, &mut out[*off..*off + sp.dim()]);
            }
        }
        out
    }

    pub(crate) fn components(&self, alg: &Algebra, v: &[u64]) -> BTreeMap<i64, ProjMat> {
        let mut out = BTreeMap::new();
        for (d, sp, off) in &self.pieces {
            let m = sp.from_coords(alg, &v[*off..*off + sp.dim()]);
            if !m.is_zero() {
                out.insert(*d, m);
            }
        }
        out
    }

    /// Matrix (columns indexed by this space) of
    /// `g -> (d -> g_d D^Y_{d+k} + sign D^X_d g_{d-1})`, landing in `target`,
    /// which must be `Hom^{k-1}(X, Y)`.
    fn boundary(&self, x: &PerfectComplex, y: &PerfectComplex, target: &GradedHom, sign: u64) -> Matrix {
        let alg = x.algebra();
        let f = alg.field();
        let mut m = Matrix::zeros(f, target.dim, self.dim);
        let k = self.shift;
        for (d, sp, off) in &self.pieces {
            let dy = y.diff(d + k);
            let dx = x.diff(d + 1);
            let tgt_same = target.piece(*d);
            let tgt_next = target.piece(d + 1);
            for (col, (s, t, b)) in sp.basis(alg).into_iter().enumerate() {
                let col = off + col;
                // g_d D^Y_{d+k}: row s, column u gets b * D^Y[t][u]
                if let Some((_, tsp, toff)) = tgt_same {
                    let mut img = ProjMat::zero(alg, x.term(*d), y.term(d + k - 1));
                    for u in 0..dy.cols().len() {
                        let e = dy.get(t, u);
                        if !Algebra::is_zero(e) {
                            img.set(s, u, basis_times(alg, b, e));
                        }
                    }
                    let mut v = vec![0; tsp.dim()];
                    tsp.coords(alg, &img, &mut v);
                    for (i, c) in v.into_iter().enumerate() {
                        if c != 0 {
                            m.set(toff + i, col, f.add(m.get(toff + i, col), c));
                        }
                    }
                }
                // sign D^X_{d+1} g_d: row z, column t gets D^X[z][s] * b
                if let Some((_, tsp, toff)) = tgt_next {
                    let mut img = ProjMat::zero(alg, x.term(d + 1), y.term(d + k));
                    for z in 0..dx.rows().len() {
                        let e = dx.get(z, s);
                        if !Algebra::is_zero(e) {
                            img.set(z, t, alg.scale(&times_basis(alg, e, b), sign));
                        }
                    }
                    let mut v = vec![0; tsp.dim()];
                    tsp.coords(alg, &img, &mut v);
                    for (i, c) in v.into_iter().enumerate() {
                        if c != 0 {
                            m.set(toff + i, col, f.add(m.get(toff + i, col), c));
                        }
                    }
                }
            }
        }
        m
    }
}

fn basis_times(alg: &Algebra, b: usize, x: &[u64]) -> Vec<u64> {
    let f = alg.field();
    let mut out = alg.zero();
    for (j, &c) in x.iter().enumerate() {
        if c != 0 {
            for &(k, s) in alg.product_of_basis(b, j) {
                out[k] = f.add(out[k], f.mul(c, s));
            }
        }
    }
    out
}

fn times_basis(alg: &Algebra, x: &[u64], b: usize) -> Vec<u64> {
    let f = alg.field();
    let mut out = alg.zero();
    for (j, &c) in x.iter().enumerate() {
        if c != 0 {
            for &(k, s) in alg.product_of_basis(j, b) {
                out[k] = f.add(out[k], f.mul(c, s));
            }
        }
    }
    out
}

/// Chain maps modulo null-homotopic maps, with coset representatives.
#[derive(Clone, Debug)]
pub struct HomK {
    source: PerfectComplex,
    target: PerfectComplex,
    space: GradedHom,
    /// Row basis of all chain maps.
    chain: Matrix,
    /// Row basis of the null-homotopic maps.
    null: Matrix,
    /// Chain maps whose classes form a basis of the quotient.
    reps: Vec<Vec<u64>>,
    coord: Option<Coordinatizer>,
}

impl HomK {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn source(&self) -> &PerfectComplex {
        &self.source
    }

    pub fn target(&self) -> &PerfectComplex {
        &self.target
    }

    pub fn chain_dim(&self) -> usize {
        self.chain.rows()
    }

    pub fn null_dim(&self) -> usize {
        self.null.rows()
    }

    /// Representative chain maps of a basis of `Hom_K(X, Y)`.
    pub fn basis(&self) -> Vec<ComplexMap> {
        self.reps.iter().map(|v| self.to_map(v)).collect()
    }

    pub(crate) fn to_map(&self, v: &[u64]) -> ComplexMap {
        let alg = self.source.algebra();
        ComplexMap { source: self.source.clone(), target: self.target.clone(), maps: self.space.components(alg, v) }
    }

    pub(crate) fn coords_of_map(&self, f: &ComplexMap) -> Vec<u64> {
        self.space.coords(self.source.algebra(), &f.maps)
    }

    /// The map `sum c_i rep_i`.
    pub fn combination(&self, c: &[u64]) -> ComplexMap {
        let f = self.source.algebra().field();
        let mut v = vec![0; self.space.dim()];
        for (r, &ci) in self.reps.iter().zip(c) {
            if ci != 0 {
                for (a, &b) in v.iter_mut().zip(r) {
                    *a = f.add(*a, f.mul(ci, b));
                }
            }
        }
        self.to_map(&v)
    }

    /// Coordinates of the class of a chain map in the representative basis.
    pub fn class_of(&self, f: &ComplexMap) -> Result<Vec<u64>> {
        let v = self.coords_of_map(f);
        match &self.coord {
            None => {
                if v.iter().any(|&c| c != 0) {
                    Err(Error::Invalid("not a chain map between these complexes".into()))
                } else {
                    Ok(Vec::new())
                }
            }
            Some(c) => {
                let full = c.coords(&v).ok_or_else(|| Error::Invalid("not a chain map between these complexes".into()))?;
                Ok(full[..self.reps.len()].to_vec())
            }
        }
    }

    pub fn is_null(&self, f: &ComplexMap) -> Result<bool> {
        Ok(self.class_of(f)?.iter().all(|&c| c == 0))
    }
}

/// `Hom_K(X, Y)`: chain maps as the kernel of one linear system, modulo
/// the image of the homotopies.
pub fn hom_k(x: &PerfectComplex, y: &PerfectComplex) -> Result<HomK> {
    x.require_same_algebra(y)?;
    let alg = x.algebra();
    let f = alg.field();
    let h0 = GradedHom::new(x, y, 0);
    let hm1 = GradedHom::new(x, y, -1);
    let h1 = GradedHom::new(x, y, 1);
    let chain = if h0.dim() == 0 {
        Matrix::zeros(f, 0, 0)
    } else if hm1.dim() == 0 {
        Matrix::identity(f, h0.dim())
    } else {
        h0.boundary(x, y, &hm1, f.neg(1)).kernel_basis()
    };
    let null = if h1.dim() == 0 || h0.dim() == 0 {
        Matrix::zeros(f, 0, h0.dim())
    } else {
        subspace::row_basis(&h1.boundary(x, y, &h0, 1).transpose())
    };
    let mut ech = Echelon::new(f, h0.dim());
    for r in null.row_vecs() {
        ech.insert(&r);
    }
    let mut reps = Vec::new();
    for r in chain.row_vecs() {
        if ech.insert(&r) {
            reps.push(r);
        }
    }
    let coord = if h0.dim() == 0 || reps.len() + null.rows() == 0 {
        None
    } else {
        let mut rows = reps.clone();
        rows.extend(null.row_vecs());
        Some(Coordinatizer::new(&Matrix::from_row_vecs(f, h0.dim(), &rows)))
    };
    Ok(HomK { source: x.clone(), target: y.clone(), space: h0, chain, null, reps, coord })
}

/// Basis of all chain maps `X -> Y`.
pub fn chain_maps(x: &PerfectComplex, y: &PerfectComplex) -> Result<Vec<ComplexMap>> {
    let h = hom_k(x, y)?;
    Ok(h.chain.row_vecs().iter().map(|v| h.to_map(v)).collect())
}

pub fn is_nullhomotopic(f: &ComplexMap) -> Result<bool> {
    hom_k(f.source(), f.target())?.is_null(f)
}

/// A homotopy `h` (components `X_d -> Y_{d+1}`) with
/// `f_d = D^X_d h_{d-1} + h_d D^Y_{d+1}`, if one exists.
pub fn null_homotopy(f: &ComplexMap) -> Result<Option<BTreeMap<i64, ProjMat>>> {
    let (x, y) = (f.source(), f.target());
    let alg = x.algebra();
    let fld = alg.field();
    let h0 = GradedHom::new(x, y, 0);
    let h1 = GradedHom::new(x, y, 1);
    let v = h0.coords(alg, &f.maps);
    if h0.dim() == 0 {
        return Ok(Some(BTreeMap::new()));
    }
    if h1.dim() == 0 {
        return Ok(v.iter().all(|&c| c == 0).then(BTreeMap::new));
    }
    let m = h1.boundary(x, y, &h0, 1);
    let sol = m.solve(&Matrix::col_vector(fld, &v))?;
    Ok(sol.map(|s| h1.components(alg, &s.col(0))))
}

/// `End_K(X)` as an abstract algebra with product `x * y = x after y`,
/// together with its representatives.
pub fn end_k(x: &PerfectComplex) -> Result<(FdAlgebra, HomK)> {
    let h = hom_k(x, x)?;
    let f = x.algebra().field();
    let basis = h.basis();
    let alg = FdAlgebra::from_fn(f, basis.len(), |i, j| {
        h.class_of(&basis[j].then(&basis[i])).expect("composite of chain maps is a chain map")
    })?;
    Ok((alg, h))
}
