//! Finite-dimensional left modules given as quiver representations.
//!
//! A representation stores one vector space `e_v M` per vertex and, for each
//! arrow `a: u -> w`, a `dim e_w M x dim e_u M` matrix acting on column
//! vectors. Total coordinates concatenate the vertex spaces in vertex order.

mod decompose;
mod free;
mod json;
mod resolution;

use std::sync::Arc;

use rand::Rng;

use crate::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::linalg::subspace::{self, Coordinatizer, Quotient};
use crate::linalg::{Matrix, PrimeField};

pub use decompose::{decompose, decompose_summands, end_algebra, is_isomorphic, Summand};
pub use free::{free_map, FreeLayout};
pub use json::{ActionDoc, BlockMatrixDoc, EntryDoc, ModuleDoc};
pub(crate) use json::vertex_of;
pub use resolution::{cosyzygy, dual, dual_to, nakayama_module, projective_cover, syzygy, tau, Cover};

#[derive(Clone)]
pub struct Representation {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    arrows: Vec<Matrix>,
}

impl std::fmt::Debug for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Representation(dims {:?})", self.dims)
    }
}

/// A homomorphism given by one matrix per vertex, `dim e_v N x dim e_v M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub maps: Vec<Matrix>,
}

impl Representation {
    /// Validates matrix shapes and that the algebra's relations act as zero.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Self> {
        if dims.len() != alg.num_vertices() || arrows.len() != alg.num_arrows() {
            return Err(Error::ShapeMismatch("dimension vector or arrow list has the wrong length".into()));
        }
        for (ai, m) in arrows.iter().enumerate() {
            let a = alg.arrow(ai);
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::ShapeMismatch("matrix over the wrong field".into()));
            }
        }
        let rep = Self { alg, dims, arrows };
        rep.check_relations()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Self {
        Self { alg, dims, arrows }
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        let f = alg.field();
        let arrows = (0..alg.num_arrows()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        Self { alg: alg.clone(), dims: vec![0; alg.num_vertices()], arrows }
    }

    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Self {
        let f = alg.field();
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let arrows = (0..alg.num_arrows())
            .map(|ai| {
                let a = alg.arrow(ai);
                Matrix::zeros(f, dims[a.target], dims[a.source])
            })
            .collect();
        Self { alg: alg.clone(), dims, arrows }
    }

    /// The indecomposable projective `A e_v`, with basis the paths from `v`.
    pub fn projective(alg: &Arc<Algebra>, v: usize) -> Self {
        FreeLayout::new(alg, &[v]).representation()
    }

    /// `A` as a left module over itself.
    pub fn regular(alg: &Arc<Algebra>) -> Self {
        let vs: Vec<usize> = (0..alg.num_vertices()).collect();
        FreeLayout::new(alg, &vs).representation()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    pub fn arrow_matrix(&self, a: usize) -> &Matrix {
        &self.arrows[a]
    }

    pub fn arrow_matrices(&self) -> &[Matrix] {
        &self.arrows
    }

    /// Composite action of a path (application order) starting at `source`.
    pub fn path_matrix(&self, arrows: &[usize], source: usize) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[source]);
        for &a in arrows {
            m = self.arrows[a].mul(&m);
        }
        m
    }

    /// Action of a basis path of the algebra, as a block between its endpoints.
    pub fn basis_action(&self, i: usize) -> Matrix {
        let b = &self.alg.basis()[i];
        self.path_matrix(&b.arrows, b.source)
    }

    /// Action of an algebra element on total coordinates.
    pub fn elem_matrix(&self, x: &[u64]) -> Matrix {
        let f = self.field();
        let off = self.offsets();
        let mut m = Matrix::zeros(f, self.dim(), self.dim());
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let b = &self.alg.basis()[i];
            let blk = self.basis_action(i).scale(c);
            let cur = m.block(off[b.target], off[b.source], blk.rows(), blk.cols());
            m.set_block(off[b.target], off[b.source], &cur.add(&blk));
        }
        m
    }

    /// Relations and all paths of length `N` act as zero.
    pub fn check_relations(&self) -> Result<()> {
        let f = self.field();
        let q = self.alg.presentation();
        for (r, rel) in q.relations.iter().enumerate() {
            let Some(first) = rel.first() else { continue };
            let (s, t) = q.path_endpoints(&first.path).expect("validated");
            let mut acc = Matrix::zeros(f, self.dims[t], self.dims[s]);
            for term in rel {
                acc = acc.add(&self.path_matrix(&term.path, s).scale(f.from_i64(term.coeff)));
            }
            if !acc.is_zero() {
                return Err(Error::Invalid(format!("relation {r} does not act as zero")));
            }
        }
        // R^N M = 0, by iterating images of the arrows
        let nv = self.dims.len();
        let mut layer: Vec<Matrix> = (0..nv).map(|v| Matrix::identity(f, self.dims[v])).collect();
        for _ in 0..self.alg.nilpotency_bound() {
            let mut next: Vec<Matrix> = (0..nv).map(|v| Matrix::zeros(f, 0, self.dims[v])).collect();
            for (ai, m) in self.arrows.iter().enumerate() {
                let a = self.alg.arrow(ai);
                if layer[a.source].rows() == 0 {
                    continue;
                }
                let img = m.mul(&layer[a.source].transpose()).transpose();
                next[a.target] = subspace::row_basis(&next[a.target].vstack(&img));
            }
            layer = next;
        }
        if layer.iter().any(|m| m.rows() > 0) {
            return Err(Error::Invalid("paths of length N do not act as zero".into()));
        }
        Ok(())
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg)
    }

    pub fn require_same_algebra(&self, other: &Self) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// The module transported along per-vertex invertible matrices `g_v`:
    /// arrows become `g_w a g_u^-1`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Self> {
        let inv: Vec<Matrix> = g
            .iter()
            .map(|m| m.inverse().ok_or_else(|| Error::Invalid("change of basis is singular".into())))
            .collect::<Result<_>>()?;
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, m)| {
                let a = self.alg.arrow(ai);
                g[a.target].mul(m).mul(&inv[a.source])
            })
            .collect();
        Ok(Self { alg: self.alg.clone(), dims: self.dims.clone(), arrows })
    }

    pub fn direct_sum(parts: &[&Representation]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
        for p in parts {
            first.require_same_algebra(p)?;
        }
        let alg = first.alg.clone();
        let f = alg.field();
        let nv = alg.num_vertices();
        let dims = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let arrows = (0..alg.num_arrows())
            .map(|ai| Matrix::block_diag(f, &parts.iter().map(|p| p.arrows[ai].clone()).collect::<Vec<_>>()))
            .collect();
        Ok(Self { alg, dims, arrows })
    }

    /// Multiplicity of each simple as a composition factor: `dim e_v M`.
    pub fn composition_factors(&self) -> Vec<usize> {
        self.dims.clone()
    }

    /// Submodule spanned at each vertex by the rows of `spaces[v]`, which
    /// must be closed under the arrows. Returns it with its inclusion.
    pub fn submodule(&self, spaces: &[Matrix]) -> Result<(Representation, ModuleMap)> {
        let f = self.field();
        let bases: Vec<Matrix> = spaces.iter().map(subspace::row_basis).collect();
        let coords: Vec<Coordinatizer> = bases.iter().map(Coordinatizer::new).collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.rows()).collect();
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (ai, m) in self.arrows.iter().enumerate() {
            let a = self.alg.arrow(ai);
            let mut out = Matrix::zeros(f, dims[a.target], dims[a.source]);
            for j in 0..dims[a.source] {
                let img = m.mul_vec(bases[a.source].row(j));
                let c = if dims[a.target] == 0 {
                    if img.iter().any(|&x| x != 0) {
                        None
                    } else {
                        Some(Vec::new())
                    }
                } else {
                    coords[a.target].coords(&img)
                };
                let c = c.ok_or_else(|| Error::Invalid("subspace is not closed under the arrows".into()))?;
                for (i, x) in c.into_iter().enumerate() {
                    out.set(i, j, x);
                }
            }
            arrows.push(out);
        }
        let incl = ModuleMap { maps: bases.iter().map(|b| b.transpose()).collect() };
        Ok((Representation { alg: self.alg.clone(), dims, arrows }, incl))
    }

    /// Quotient by the submodule spanned by the rows of `spaces[v]`.
    pub fn quotient(&self, spaces: &[Matrix]) -> Result<(Representation, ModuleMap)> {
        let f = self.field();
        let qs: Vec<Quotient> = spaces.iter().map(Quotient::new).collect();
        let dims: Vec<usize> = qs.iter().map(|q| q.dim()).collect();
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (ai, m) in self.arrows.iter().enumerate() {
            let a = self.alg.arrow(ai);
            let mut out = Matrix::zeros(f, dims[a.target], dims[a.source]);
            for (j, &cj) in qs[a.source].complement_cols().iter().enumerate() {
                let img = m.col(cj);
                for (i, x) in qs[a.target].project(&img).into_iter().enumerate() {
                    out.set(i, j, x);
                }
            }
            arrows.push(out);
        }
        // closure check: the submodule maps into itself
        for (ai, m) in self.arrows.iter().enumerate() {
            let a = self.alg.arrow(ai);
            for row in spaces[a.source].row_vecs() {
                if !qs[a.target].is_zero_class(&m.mul_vec(&row)) {
                    return Err(Error::Invalid("subspace is not closed under the arrows".into()));
                }
            }
        }
        let proj = ModuleMap { maps: qs.iter().map(|q| q.projection_matrix()).collect() };
        Ok((Representation { alg: self.alg.clone(), dims, arrows }, proj))
    }

    /// Smallest submodule containing the given vectors (rows per vertex).
    pub fn generated_submodule(&self, gens: &[Matrix]) -> Result<(Representation, ModuleMap)> {
        let mut spaces: Vec<Matrix> = gens.iter().map(subspace::row_basis).collect();
        loop {
            let mut grew = false;
            for (ai, m) in self.arrows.iter().enumerate() {
                let a = self.alg.arrow(ai);
                if spaces[a.source].rows() == 0 {
                    continue;
                }
                let img = m.mul(&spaces[a.source].transpose()).transpose();
                let joined = subspace::row_basis(&spaces[a.target].vstack(&img));
                if joined.rows() > spaces[a.target].rows() {
                    spaces[a.target] = joined;
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        self.submodule(&spaces)
    }

    /// Per-vertex subspaces of the radical `Rad M`.
    pub fn radical_spaces(&self) -> Vec<Matrix> {
        let f = self.field();
        let mut spaces: Vec<Matrix> = self.dims.iter().map(|&d| Matrix::zeros(f, 0, d)).collect();
        for (ai, m) in self.arrows.iter().enumerate() {
            let a = self.alg.arrow(ai);
            spaces[a.target] = subspace::row_basis(&spaces[a.target].vstack(&m.transpose()));
        }
        spaces
    }

    /// Per-vertex subspaces of the socle: joint kernel of outgoing arrows.
    pub fn socle_spaces(&self) -> Vec<Matrix> {
        let f = self.field();
        (0..self.dims.len())
            .map(|v| {
                let mut stacked = Matrix::zeros(f, 0, self.dims[v]);
                for (ai, m) in self.arrows.iter().enumerate() {
                    if self.alg.arrow(ai).source == v {
                        stacked = stacked.vstack(m);
                    }
                }
                stacked.kernel_basis()
            })
            .collect()
    }

    pub fn radical(&self) -> (Representation, ModuleMap) {
        self.submodule(&self.radical_spaces()).expect("the radical is a submodule")
    }

    pub fn socle(&self) -> (Representation, ModuleMap) {
        self.submodule(&self.socle_spaces()).expect("the socle is a submodule")
    }

    pub fn top(&self) -> (Representation, ModuleMap) {
        self.quotient(&self.radical_spaces()).expect("the radical is a submodule")
    }

    /// `Rad M / Soc M`, for modules whose socle lies in the radical.
    pub fn heart(&self) -> Result<Representation> {
        let (rad, incl) = self.radical();
        let soc = self.socle_spaces();
        // socle coordinates inside the radical
        let mut spaces = Vec::new();
        for v in 0..self.dims.len() {
            let b = incl.maps[v].transpose();
            let c = Coordinatizer::new(&b);
            let mut rows = Vec::new();
            for s in soc[v].row_vecs() {
                rows.push(c.coords(&s).ok_or_else(|| Error::Precondition("socle not inside radical".into()))?);
            }
            spaces.push(Matrix::from_row_vecs(self.field(), rad.dims[v], &rows));
        }
        Ok(rad.quotient(&spaces)?.0)
    }

    pub fn is_semisimple(&self) -> bool {
        self.arrows.iter().all(|m| m.is_zero())
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }
}

impl ModuleMap {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        let f = m.field();
        Self { maps: m.dims.iter().zip(&n.dims).map(|(&a, &b)| Matrix::zeros(f, b, a)).collect() }
    }

    pub fn identity(m: &Representation) -> Self {
        let f = m.field();
        Self { maps: m.dims.iter().map(|&d| Matrix::identity(f, d)).collect() }
    }

    /// Intertwines the arrow actions of `m` and `n`.
    pub fn is_homomorphism(&self, m: &Representation, n: &Representation) -> bool {
        if self.maps.len() != m.dims.len() {
            return false;
        }
        for (v, g) in self.maps.iter().enumerate() {
            if g.rows() != n.dims[v] || g.cols() != m.dims[v] {
                return false;
            }
        }
        (0..m.arrows.len()).all(|ai| {
            let a = m.alg.arrow(ai);
            n.arrows[ai].mul(&self.maps[a.source]) == self.maps[a.target].mul(&m.arrows[ai])
        })
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| b.mul(a)).collect() }
    }

    pub fn add(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, g: &ModuleMap) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().zip(&g.maps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: u64) -> ModuleMap {
        ModuleMap { maps: self.maps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(|m| m.is_square() && m.is_invertible())
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        Some(ModuleMap { maps: self.maps.iter().map(|m| m.inverse()).collect::<Option<_>>()? })
    }

    /// Block diagonal matrix on total coordinates.
    pub fn total_matrix(&self) -> Matrix {
        let f = self.maps.first().map(|m| m.field());
        match f {
            Some(f) => Matrix::block_diag(f, &self.maps),
            None => panic!("map over an algebra without vertices"),
        }
    }

    /// Concatenated entries of the vertex matrices.
    pub fn flatten(&self) -> Vec<u64> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    pub fn unflatten(v: &[u64], m: &Representation, n: &Representation) -> ModuleMap {
        let f = m.field();
        let mut maps = Vec::new();
        let mut at = 0;
        for (&a, &b) in m.dims.iter().zip(&n.dims) {
            let mut g = Matrix::zeros(f, b, a);
            for i in 0..b {
                for j in 0..a {
                    g.set(i, j, v[at + i * a + j]);
                }
            }
            at += a * b;
            maps.push(g);
        }
        ModuleMap { maps }
    }

    /// Linear combination of maps with the given coefficients.
    pub fn combination(maps: &[ModuleMap], c: &[u64], m: &Representation, n: &Representation) -> ModuleMap {
        let mut acc = ModuleMap::zero(m, n);
        for (g, &ci) in maps.iter().zip(c) {
            if ci != 0 {
                acc = acc.add(&g.scale(ci));
            }
        }
        acc
    }

    pub fn kernel(&self, m: &Representation) -> Result<(Representation, ModuleMap)> {
        m.submodule(&self.maps.iter().map(|g| g.kernel_basis()).collect::<Vec<_>>())
    }

    pub fn image(&self, n: &Representation) -> Result<(Representation, ModuleMap)> {
        n.submodule(&self.maps.iter().map(|g| g.transpose()).collect::<Vec<_>>())
    }

    pub fn cokernel(&self, n: &Representation) -> Result<(Representation, ModuleMap)> {
        n.quotient(&self.maps.iter().map(|g| g.transpose()).collect::<Vec<_>>())
    }
}

/// Basis of `Hom_A(M, N)` by solving the intertwiner equations.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<ModuleMap>> {
    m.require_same_algebra(n)?;
    let f = m.field();
    let nv = m.dims.len();
    let mut var_off = Vec::with_capacity(nv);
    let mut nvars = 0;
    for v in 0..nv {
        var_off.push(nvars);
        nvars += m.dims[v] * n.dims[v];
    }
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    for ai in 0..m.arrows.len() {
        let a = m.alg.arrow(ai);
        let (s, t) = (a.source, a.target);
        let (ma, na) = (&m.arrows[ai], &n.arrows[ai]);
        // N_a f_s - f_t M_a = 0, entry (r, c) of a dim N_t x dim M_s matrix
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![0u64; nvars];
                for k in 0..n.dims[s] {
                    let x = na.get(r, k);
                    if x != 0 {
                        let idx = var_off[s] + k * m.dims[s] + c;
                        row[idx] = f.add(row[idx], x);
                    }
                }
                for k in 0..m.dims[t] {
                    let x = ma.get(k, c);
                    if x != 0 {
                        let idx = var_off[t] + r * m.dims[t] + k;
                        row[idx] = f.sub(row[idx], x);
                    }
                }
                if row.iter().any(|&x| x != 0) {
                    eqs.push(row);
                }
            }
        }
    }
    let system = Matrix::from_row_vecs(f, nvars, &eqs);
    let ker = system.kernel_basis();
    Ok(ker.row_vecs().iter().map(|v| ModuleMap::unflatten(v, m, n)).collect())
}

/// A uniformly random element of the span of `maps`.
pub fn random_map<R: Rng>(maps: &[ModuleMap], m: &Representation, n: &Representation, rng: &mut R) -> ModuleMap {
    let p = m.field().p();
    let c: Vec<u64> = (0..maps.len()).map(|_| rng.gen_range(0..p)).collect();
    ModuleMap::combination(maps, &c, m, n)
}
