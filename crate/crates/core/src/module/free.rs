use std::sync::Arc;

use super::{ModuleMap, Representation};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Coordinates on `A e_{v_1} + ... + A e_{v_r}`. The space at vertex `u`
/// lists, summand by summand, the basis paths from `v_s` to `u`.
#[derive(Clone, Debug)]
pub struct FreeLayout {
    alg: Arc<Algebra>,
    summands: Vec<usize>,
    // offset[u][s]: start of summand s inside the space at vertex u
    offset: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl FreeLayout {
    pub fn new(alg: &Arc<Algebra>, summands: &[usize]) -> Self {
        let nv = alg.num_vertices();
        let mut offset = vec![Vec::with_capacity(summands.len()); nv];
        let mut dims = vec![0; nv];
        for u in 0..nv {
            for &v in summands {
                offset[u].push(dims[u]);
                dims[u] += alg.block_dim(u, v);
            }
        }
        Self { alg: alg.clone(), summands: summands.to_vec(), offset, dims }
    }

    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn representation(&self) -> Representation {
        let alg = &self.alg;
        let f = alg.field();
        let arrows = (0..alg.num_arrows())
            .map(|ai| {
                let a = alg.arrow(ai);
                let (u, w) = (a.source, a.target);
                let mut m = Matrix::zeros(f, self.dims[w], self.dims[u]);
                let ax = alg.arrow_index(ai);
                for (s, &v) in self.summands.iter().enumerate() {
                    for (k, &i) in alg.block(u, v).iter().enumerate() {
                        for &(j, c) in alg.product_of_basis(ax, i) {
                            m.set(self.offset[w][s] + alg.position_in_block(j), self.offset[u][s] + k, c);
                        }
                    }
                }
                m
            })
            .collect();
        Representation::new_unchecked(alg.clone(), self.dims.clone(), arrows)
    }

    /// Component of summand `s` in the space at vertex `u`, as an element of
    /// `e_u A e_{v_s}`.
    pub fn component(&self, vec_u: &[u64], u: usize, s: usize) -> Vec<u64> {
        let v = self.summands[s];
        let start = self.offset[u][s];
        let n = self.alg.block_dim(u, v);
        self.alg.from_block_coords(u, v, &vec_u[start..start + n])
    }

    /// Vector at vertex `u` whose summand components are the given elements
    /// (each in `e_u A e_{v_s}`).
    pub fn vector(&self, u: usize, comps: &[Vec<u64>]) -> Vec<u64> {
        let mut out = vec![0; self.dims[u]];
        for (s, x) in comps.iter().enumerate() {
            let v = self.summands[s];
            let c = self.alg.block_coords(x, u, v);
            out[self.offset[u][s]..self.offset[u][s] + c.len()].copy_from_slice(&c);
        }
        out
    }

    /// The map `A e_{v_s} -> M` sending `e_{v_s}` to `gens[s]` (a vector
    /// in `e_{v_s} M`), summed over the summands.
    pub fn map_to(&self, m: &Representation, gens: &[Vec<u64>]) -> ModuleMap {
        let alg = &self.alg;
        let f = alg.field();
        let maps = (0..alg.num_vertices())
            .map(|u| {
                let mut g = Matrix::zeros(f, m.dims()[u], self.dims[u]);
                for (s, &v) in self.summands.iter().enumerate() {
                    for (k, &i) in alg.block(u, v).iter().enumerate() {
                        let img = m.basis_action(i).mul_vec(&gens[s]);
                        for (r, x) in img.into_iter().enumerate() {
                            g.set(r, self.offset[u][s] + k, x);
                        }
                    }
                }
                g
            })
            .collect();
        ModuleMap { maps }
    }
}

/// The homomorphism `A e_{v_1} + ... -> A e_{w_1} + ...` given by right
/// multiplication with the matrix of algebra elements `entries[s][t]` in
/// `e_{v_s} A e_{w_t}`: a generator of summand `s` goes to `sum_t entries[s][t]`.
pub fn free_map(source: &FreeLayout, target: &FreeLayout, entries: &[Vec<Vec<u64>>]) -> Result<ModuleMap> {
    let alg = &source.alg;
    if entries.len() != source.summands.len() || entries.iter().any(|r| r.len() != target.summands.len()) {
        return Err(Error::ShapeMismatch("entry matrix does not match the summand lists".into()));
    }
    let f = alg.field();
    let nv = alg.num_vertices();
    let mut maps = Vec::with_capacity(nv);
    for u in 0..nv {
        let mut g = Matrix::zeros(f, target.dims[u], source.dims[u]);
        for (s, &v) in source.summands.iter().enumerate() {
            for (k, &i) in alg.block(u, v).iter().enumerate() {
                for (t, &w) in target.summands.iter().enumerate() {
                    let x = &entries[s][t];
                    if !alg.in_block(x, v, w) {
                        return Err(Error::Invalid(format!("entry ({s},{t}) is not in e_v A e_w")));
                    }
                    for (j, &c) in x.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for &(r, d) in alg.product_of_basis(i, j) {
                            let row = target.offset[u][t] + alg.position_in_block(r);
                            let col = source.offset[u][s] + k;
                            g.set(row, col, f.add(g.get(row, col), f.mul(c, d)));
                        }
                    }
                }
            }
        }
        maps.push(g);
    }
    Ok(ModuleMap { maps })
}
