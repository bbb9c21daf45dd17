//! Walking `ZA_inf` components of the Auslander-Reiten quiver of perfect
//! complexes.
//!
//! Positions are pairs `(d, h)`: `d` is the distance from the rim and
//! `h` counts applications of `tau^-1 = nu^-1 [1]`. Node `(d, h)` is
//! `tau^-h C_d`, where `C_0` is a rim complex and `C_{d+1}` is the lower
//! neighbor of `C_d`. The mesh starting at `(d, h)` is the triangle
//! `(d, h) -> (d+1, h) + (d-1, h+1) -> (d, h+1)`.

mod diagram;
mod emit;
mod predicates;

use std::collections::BTreeMap;

use crate::ar::{ar_triangle_starting_at, Triangle};
use crate::complex::{complex_iso, decompose_complex, minimize, PerfectComplex};
use crate::error::{Error, Result};

pub use diagram::{homology_diagram, stabilization, stabilization_module, HomologyDiagram, MeshKind, MeshSequence, Stabilization};
pub use emit::{diagram_ascii, diagram_dot, diagram_json, slice_ascii, slice_dot, slice_json};
pub use predicates::{big_homology_complex, is_shifted_nu_chain, positional_predicates, PositionalReport};

/// Node cap for slices.
pub const DEFAULT_NODE_BUDGET: usize = 500;

/// Neighbors of an indecomposable complex `Z` in its component.
#[derive(Clone, Debug)]
pub struct Neighbors {
    /// `tau Z = nu Z[-1]`.
    pub left: PerfectComplex,
    /// `tau^-1 Z = nu^-1 Z[1]`.
    pub right: PerfectComplex,
    /// The middle summand one step closer to the rim, absent on the rim.
    pub up: Option<PerfectComplex>,
    /// The middle summand one step further from the rim.
    pub down: PerfectComplex,
    pub triangle: Triangle,
}

fn require_hypotheses(z: &PerfectComplex) -> Result<()> {
    let alg = z.algebra();
    alg.require_self_injective()?;
    if !alg.has_no_semisimple_summand() {
        return Err(Error::Precondition("algebra has a semisimple summand".into()));
    }
    Ok(())
}

fn minimal(x: &PerfectComplex) -> Result<PerfectComplex> {
    Ok(if x.is_minimal() { x.clone() } else { minimize(x)?.complex })
}

/// `tau^-h X = nu^-h X[h]` for any integer `h`: the node `h` steps to the
/// right of `X`.
pub fn translate(x: &PerfectComplex, k: i64) -> Result<PerfectComplex> {
    Ok(x.nakayama_power(-k)?.shift(k))
}

/// Split the middle of the triangle starting at `z` into the summands one
/// step up and one step down, classified by length.
pub fn neighbors(z: &PerfectComplex) -> Result<Neighbors> {
    require_hypotheses(z)?;
    let z = minimal(z)?;
    let len = z.length()?;
    let t = ar_triangle_starting_at(&z)?;
    let parts = decompose_complex(&t.b, 0)?;
    let mut by_len: Vec<(usize, PerfectComplex)> =
        parts.into_iter().map(|s| Ok((s.complex.length()?, s.complex))).collect::<Result<_>>()?;
    by_len.sort_by_key(|p| p.0);
    let (up, down) = match by_len.len() {
        1 => {
            let (l, d) = by_len.pop().unwrap();
            if l != len + 1 {
                return Err(Error::MiddleDecompositionUnexpected(format!(
                    "single middle summand of length {l} next to a complex of length {len}"
                )));
            }
            (None, d)
        }
        2 => {
            let (l1, d) = by_len.pop().unwrap();
            let (l0, u) = by_len.pop().unwrap();
            if l1 != len + 1 || l0 + 1 != len {
                return Err(Error::MiddleDecompositionUnexpected(format!(
                    "middle summands of lengths {l0} and {l1} next to a complex of length {len}"
                )));
            }
            (Some(u), d)
        }
        n => return Err(Error::MiddleDecompositionUnexpected(format!("{n} middle summands"))),
    };
    Ok(Neighbors { left: translate(&z, -1)?, right: translate(&z, 1)?, up, down, triangle: t })
}

pub fn is_on_rim(z: &PerfectComplex) -> Result<bool> {
    Ok(neighbors(z)?.up.is_none())
}

/// Distance from the rim and the rim complex reached by walking up.
pub fn rim_distance(z: &PerfectComplex) -> Result<(usize, PerfectComplex)> {
    let mut cur = minimal(z)?;
    let mut d = 0;
    while let Some(u) = neighbors(&cur)?.up {
        cur = u;
        d += 1;
    }
    Ok((d, cur))
}

/// The rim complex `C_0` in the column of `z`, so that `z = C_d` up to
/// isomorphism, together with `d`.
pub fn rim_of_column(z: &PerfectComplex) -> Result<(usize, PerfectComplex)> {
    let (d, r) = rim_distance(z)?;
    // each step up moves one column to the right
    Ok((d, translate(&r, -(d as i64))?))
}

/// The column `C_0, ..., C_depth` below a rim complex.
pub fn column(rim: &PerfectComplex, depth: usize) -> Result<Vec<PerfectComplex>> {
    let mut out = vec![minimal(rim)?];
    for _ in 0..depth {
        let next = neighbors(out.last().unwrap())?.down;
        out.push(next);
    }
    Ok(out)
}

/// A verified mesh of the slice.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub depth: usize,
    pub h: i64,
    pub triangle: Triangle,
}

/// Nodes `(d, h)` for `0 <= d <= depth` and `h` in `[h_lo, h_hi]`.
#[derive(Clone, Debug)]
pub struct ComponentSlice {
    pub depth: usize,
    pub h_lo: i64,
    pub h_hi: i64,
    pub nodes: BTreeMap<(usize, i64), PerfectComplex>,
    pub meshes: Vec<Mesh>,
    /// Position of the input complex.
    pub anchor: (usize, i64),
}

impl ComponentSlice {
    pub fn node(&self, d: usize, h: i64) -> Option<&PerfectComplex> {
        self.nodes.get(&(d, h))
    }

    pub fn width(&self) -> usize {
        (self.h_hi - self.h_lo + 1) as usize
    }
}

/// The window of `depth + 1` rows and `width` columns centred on the
/// column of `z`, with every mesh inside the window checked against the
/// Auslander-Reiten triangle starting at its first node.
pub fn component_slice(z: &PerfectComplex, depth: usize, width: usize, budget: usize) -> Result<ComponentSlice> {
    require_hypotheses(z)?;
    if width == 0 {
        return Err(Error::Invalid("slice width must be positive".into()));
    }
    let count = (depth + 1).saturating_mul(width);
    if count > budget {
        return Err(Error::Budget(format!("slice needs {count} nodes, budget is {budget}")));
    }
    let (d0, rim) = rim_of_column(z)?;
    let col = column(&rim, depth)?;
    let h_lo = -((width as i64 - 1) / 2);
    let h_hi = h_lo + width as i64 - 1;
    let mut nodes = BTreeMap::new();
    for (d, c) in col.iter().enumerate() {
        for h in h_lo..=h_hi {
            nodes.insert((d, h), translate(c, h)?);
        }
    }
    let mut meshes = Vec::new();
    for d in 0..depth {
        for h in h_lo..h_hi {
            let t = ar_triangle_starting_at(&nodes[&(d, h)])?;
            let mut parts = vec![&nodes[&(d + 1, h)]];
            if d > 0 {
                parts.push(&nodes[&(d - 1, h + 1)]);
            }
            let expect = PerfectComplex::direct_sum(&parts)?;
            if complex_iso(&t.b, &expect, 0)?.is_none() || complex_iso(&t.c, &nodes[&(d, h + 1)], 0)?.is_none() {
                return Err(Error::MiddleDecompositionUnexpected(format!("mesh at ({d}, {h}) does not match its neighbors")));
            }
            meshes.push(Mesh { depth: d, h, triangle: t });
        }
    }
    Ok(ComponentSlice { depth, h_lo, h_hi, nodes, meshes, anchor: (d0, 0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::complex::{heart_complex, nu_chain};

    #[test]
    fn neighbors_of_stalk_over_dual_numbers() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let n = neighbors(&p).unwrap();
        assert!(n.up.is_none());
        assert_eq!(n.down.length().unwrap(), 2);
        assert!(complex_iso(&n.down, &nu_chain(&a, 0, 1).unwrap(), 0).unwrap().is_some());
        assert_eq!(rim_distance(&nu_chain(&a, 0, 1).unwrap()).unwrap().0, 1);
    }

    #[test]
    fn heart_sits_at_distance_two() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let h = heart_complex(&a, 0).unwrap();
        let n = neighbors(&h).unwrap();
        assert_eq!(n.up.as_ref().unwrap().length().unwrap(), 2);
        assert_eq!(n.down.length().unwrap(), 4);
        assert_eq!(rim_distance(&h).unwrap().0, 2);
        assert!(complex_iso(&n.left, &h.nakayama().unwrap().shift(-1), 0).unwrap().is_some());
    }

    #[test]
    fn projective_component_slice() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let s = component_slice(&p, 3, 3, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(s.nodes.len(), 12);
        for d in 0..=3 {
            assert!(complex_iso(s.node(d, 0).unwrap(), &nu_chain(&a, 0, d).unwrap(), 0).unwrap().is_some());
        }
        assert_eq!(s.meshes.len(), 3 * 2);
        assert!(matches!(component_slice(&p, 30, 30, DEFAULT_NODE_BUDGET), Err(Error::Budget(_))));
    }

    #[test]
    fn rim_slice_over_kt3() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let t = a.path_elem(&[0], 0).unwrap();
        let mut m = crate::complex::ProjMat::zero(&a, &[0], &[0]);
        m.set(0, 0, t);
        let z = PerfectComplex::new(&a, 0, vec![vec![0], vec![0]], vec![m]).unwrap();
        assert!(is_on_rim(&z).unwrap());
        let s = component_slice(&z, 2, 5, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(s.nodes.len(), 15);
        for ((d, _), c) in &s.nodes {
            assert_eq!(c.length().unwrap(), 2 + d);
        }
    }

    #[test]
    fn semisimple_summand_rejected() {
        let a = build_algebra(&fixtures::semisimple(1, 3)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        assert!(matches!(neighbors(&p), Err(Error::Precondition(_)) | Err(Error::NotSelfInjective)));
    }
}
