use std::collections::BTreeMap;

use serde::Serialize;

use super::{column, require_hypotheses, rim_of_column, translate, ComponentSlice};
use crate::ar::{has_section, Triangle};
use crate::complex::{homology, homology_map, PerfectComplex};
use crate::error::{Error, Result};
use crate::module::{is_isomorphic, ModuleMap, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeshKind {
    Exact,
    SplitExact,
    NotExact,
    /// The third term is a stalk projective in degree 0 or 1, where the
    /// connecting map is nonzero on `H_0`.
    Excluded,
}

/// `H_0(A) -> H_0(B) -> H_0(C)` for one mesh.
#[derive(Clone, Debug)]
pub struct MeshSequence {
    pub depth: usize,
    pub h: i64,
    pub kind: MeshKind,
    pub a: Representation,
    pub b: Representation,
    pub c: Representation,
    pub u: ModuleMap,
    pub v: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct HomologyDiagram {
    pub depth: usize,
    pub h_lo: i64,
    pub h_hi: i64,
    pub nodes: BTreeMap<(usize, i64), Representation>,
    pub meshes: Vec<MeshSequence>,
}

impl HomologyDiagram {
    pub fn node(&self, d: usize, h: i64) -> Option<&Representation> {
        self.nodes.get(&(d, h))
    }
}

fn h0(x: &PerfectComplex) -> Result<Representation> {
    Ok(homology(x, 0)?.module)
}

fn mesh_sequence(depth: usize, h: i64, t: &Triangle) -> Result<MeshSequence> {
    let (ha, hb, hc) = (homology(&t.a, 0)?, homology(&t.b, 0)?, homology(&t.c, 0)?);
    let u = homology_map(&t.u, &ha, &hb)?;
    let v = homology_map(&t.v, &hb, &hc)?;
    let kind = if matches!(t.c.stalk_projective_degree(), Some(0 | 1)) {
        MeshKind::Excluded
    } else if u.is_injective() && v.is_surjective() && u.then(&v).is_zero() && hb.dim() == ha.dim() + hc.dim() {
        if has_section(&v, &hc.module, &hb.module)? {
            MeshKind::SplitExact
        } else {
            MeshKind::Exact
        }
    } else {
        MeshKind::NotExact
    };
    Ok(MeshSequence { depth, h, kind, a: ha.module, b: hb.module, c: hc.module, u, v })
}

/// Replace every node of the slice by its zero homology and every mesh by
/// the induced sequence of modules.
pub fn homology_diagram(slice: &ComponentSlice) -> Result<HomologyDiagram> {
    let nodes = slice.nodes.iter().map(|(k, x)| Ok((*k, h0(x)?))).collect::<Result<_>>()?;
    let meshes = slice.meshes.iter().map(|m| mesh_sequence(m.depth, m.h, &m.triangle)).collect::<Result<_>>()?;
    Ok(HomologyDiagram { depth: slice.depth, h_lo: slice.h_lo, h_hi: slice.h_hi, nodes, meshes })
}

/// The stabilization module of a component and the evidence for it.
#[derive(Clone, Debug)]
pub struct Stabilization {
    pub module: Representation,
    /// Node whose `H_0` is returned, relative to the rim complex at `(0, 0)`.
    pub position: (usize, i64),
    pub rim: PerfectComplex,
    pub projective_rim: bool,
    /// `H_0` at the two nodes just below `position` is isomorphic to the
    /// returned module.
    pub stable: bool,
    /// Composition factors agree with the union over the wing rim. Not
    /// applicable in a projective component.
    pub wing_rim_factors: Option<bool>,
    /// Rim entries `H_0` at `(0, h)` over the wing rim of `position`.
    pub wing_rim: Vec<Representation>,
}

fn iso(a: &Representation, b: &Representation) -> Result<bool> {
    Ok(is_isomorphic(a, b, 0)?.is_some())
}

/// Read off the stabilization module of the component of `z`.
///
/// In the component of a stalk projective `P_S` this is the heart of
/// `P_S`, found on the heart complex two rows down. Otherwise, for a rim
/// complex `R` with homology in degrees `[lo, hi]`, it is `H_0` of the
/// node `(hi - lo, -hi)`, whose wing rim carries exactly the nonzero
/// entries `nu^-h H_-h(R)`.
pub fn stabilization(z: &PerfectComplex) -> Result<Stabilization> {
    require_hypotheses(z)?;
    let (_, rim) = rim_of_column(z)?;
    let alg = rim.algebra().clone();
    if let Some(k) = rim.stalk_projective_degree() {
        let s = rim.term(k)[0];
        let heart = Representation::projective(&alg, s).heart()?;
        let col = column(&rim, 3)?;
        let h0_at = |d: usize, h: i64| -> Result<Representation> { h0(&translate(&col[d], h)?) };
        let base = -k;
        let module = h0_at(2, base - 1)?;
        if !iso(&module, &heart)? {
            return Err(Error::Inconsistent("heart complex does not carry the heart".into()));
        }
        let stable = iso(&h0_at(3, base - 1)?, &module)? && iso(&h0_at(3, base - 2)?, &module)?;
        return Ok(Stabilization {
            module,
            position: (2, base - 1),
            rim,
            projective_rim: true,
            stable,
            wing_rim_factors: None,
            wing_rim: vec![Representation::projective(&alg, s)],
        });
    }
    let mut support = Vec::new();
    for d in rim.degrees() {
        if !homology(&rim, d)?.is_zero() {
            support.push(d);
        }
    }
    let (lo, hi) = match (support.first(), support.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Err(Error::Precondition("rim complex is acyclic".into())),
    };
    let depth = (hi - lo) as usize;
    let col = column(&rim, depth + 1)?;
    let h0_at = |d: usize, h: i64| -> Result<Representation> { h0(&translate(&col[d], h)?) };
    let module = h0_at(depth, -hi)?;
    let stable = iso(&h0_at(depth + 1, -hi)?, &module)? && iso(&h0_at(depth + 1, -hi - 1)?, &module)?;
    let wing_rim = (-hi..=-lo).map(|h| h0_at(0, h)).collect::<Result<Vec<_>>>()?;
    let mut union = vec![0; alg.num_vertices()];
    for m in &wing_rim {
        for (u, c) in union.iter_mut().zip(m.composition_factors()) {
            *u += c;
        }
    }
    let factors = module.composition_factors();
    Ok(Stabilization {
        module,
        position: (depth, -hi),
        rim,
        projective_rim: false,
        stable,
        wing_rim_factors: Some(union == factors),
        wing_rim,
    })
}

pub fn stabilization_module(z: &PerfectComplex) -> Result<Representation> {
    Ok(stabilization(z)?.module)
}
