//! JSON, DOT and ASCII renderings of slices and homology diagrams.
//!
//! Node `(d, h)` is drawn at column `2h + d` of row `d`, so that meshes
//! appear as diamonds with arrows `(d, h) -> (d+1, h)` and
//! `(d, h) -> (d-1, h+1)`.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use super::{ComponentSlice, HomologyDiagram, MeshKind};
use crate::complex::{homology, ComplexDoc};
use crate::error::Result;

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

#[derive(Serialize)]
struct SliceNodeDoc {
    d: usize,
    h: i64,
    length: usize,
    /// `dim H_i` for `i` from the top degree down.
    homology: Vec<usize>,
    complex: ComplexDoc,
}

#[derive(Serialize)]
struct SliceDoc {
    depth: usize,
    h_range: [i64; 2],
    anchor: (usize, i64),
    nodes: Vec<SliceNodeDoc>,
    meshes: Vec<(usize, i64)>,
}

fn homology_dims(slice: &ComponentSlice) -> Result<BTreeMap<(usize, i64), Vec<usize>>> {
    slice
        .nodes
        .iter()
        .map(|(k, x)| Ok((*k, x.degrees().rev().map(|d| Ok(homology(x, d)?.dim())).collect::<Result<Vec<_>>>()?)))
        .collect()
}

pub fn slice_json(slice: &ComponentSlice) -> Result<String> {
    let dims = homology_dims(slice)?;
    let nodes = slice
        .nodes
        .iter()
        .map(|(&(d, h), x)| {
            Ok(SliceNodeDoc { d, h, length: x.length()?, homology: dims[&(d, h)].clone(), complex: x.to_doc() })
        })
        .collect::<Result<_>>()?;
    let doc = SliceDoc {
        depth: slice.depth,
        h_range: [slice.h_lo, slice.h_hi],
        anchor: slice.anchor,
        nodes,
        meshes: slice.meshes.iter().map(|m| (m.depth, m.h)).collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

#[derive(Serialize)]
struct DiagramNodeDoc {
    d: usize,
    h: i64,
    dim: usize,
    dims: Vec<usize>,
    composition_factors: Vec<usize>,
}

#[derive(Serialize)]
struct MeshDoc {
    d: usize,
    h: i64,
    kind: MeshKind,
    dims: [usize; 3],
}

#[derive(Serialize)]
struct DiagramDoc {
    depth: usize,
    h_range: [i64; 2],
    nodes: Vec<DiagramNodeDoc>,
    meshes: Vec<MeshDoc>,
}

pub fn diagram_json(diagram: &HomologyDiagram) -> Result<String> {
    let doc = DiagramDoc {
        depth: diagram.depth,
        h_range: [diagram.h_lo, diagram.h_hi],
        nodes: diagram
            .nodes
            .iter()
            .map(|(&(d, h), m)| DiagramNodeDoc {
                d,
                h,
                dim: m.dim(),
                dims: m.dims().to_vec(),
                composition_factors: m.composition_factors(),
            })
            .collect(),
        meshes: diagram
            .meshes
            .iter()
            .map(|m| MeshDoc { d: m.depth, h: m.h, kind: m.kind, dims: [m.a.dim(), m.b.dim(), m.c.dim()] })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

fn dot(name: &str, labels: &BTreeMap<(usize, i64), String>, depth: usize, h_lo: i64, h_hi: i64) -> String {
    let id = |d: usize, h: i64| format!("n{}_{}", d, if h < 0 { format!("m{}", -h) } else { h.to_string() });
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for (&(d, h), label) in labels {
        writeln!(out, "  {} [label=\"{}\", pos=\"{},{}!\"];", id(d, h), label, 2 * h + d as i64, -(d as i64)).unwrap();
    }
    for (&(d, h), _) in labels {
        if d < depth {
            writeln!(out, "  {} -> {};", id(d, h), id(d + 1, h)).unwrap();
        }
        if d > 0 && h < h_hi {
            writeln!(out, "  {} -> {};", id(d, h), id(d - 1, h + 1)).unwrap();
        }
    }
    let _ = h_lo;
    out.push_str("}\n");
    out
}

/// DOT graph of the slice, each node labelled by its homology dimensions
/// from the top degree down.
pub fn slice_dot(slice: &ComponentSlice) -> Result<String> {
    let labels = homology_dims(slice)?
        .into_iter()
        .map(|(k, v)| {
            let x = &slice.nodes[&k];
            (k, format!("[{}..{}] {}", x.hi(), x.lo(), join(&v, ",")))
        })
        .collect();
    Ok(dot("slice", &labels, slice.depth, slice.h_lo, slice.h_hi))
}

/// DOT graph of the homology diagram, each node labelled by the dimension
/// vector of its zero homology.
pub fn diagram_dot(diagram: &HomologyDiagram) -> String {
    let labels = diagram.nodes.iter().map(|(&k, m)| (k, format!("({})", join(m.dims(), ",")))).collect();
    dot("homology", &labels, diagram.depth, diagram.h_lo, diagram.h_hi)
}

fn ascii(labels: &BTreeMap<(usize, i64), String>, depth: usize, h_lo: i64, h_hi: i64) -> String {
    let cell = labels.values().map(|s| s.chars().count()).max().unwrap_or(1).max(3) + 1;
    let x0 = 2 * h_lo;
    let cols = (2 * (h_hi - h_lo) + depth as i64 + 1) as usize;
    let width = cols * cell;
    let mut out = String::new();
    for d in 0..=depth {
        let mut row = vec![' '; width];
        for h in h_lo..=h_hi {
            if let Some(label) = labels.get(&(d, h)) {
                let x = (2 * h + d as i64 - x0) as usize * cell;
                for (i, ch) in label.chars().enumerate() {
                    row[x + i] = ch;
                }
            }
        }
        out.push_str(row.iter().collect::<String>().trim_end());
        out.push('\n');
        if d < depth {
            let mut arrows = vec![' '; width];
            for h in h_lo..=h_hi {
                let x = (2 * h + d as i64 - x0) as usize * cell;
                // down to (d+1, h) and up from (d+1, h) to (d, h+1)
                arrows[x + cell / 2] = '\\';
                if h < h_hi {
                    arrows[x + cell + cell / 2] = '/';
                }
            }
            out.push_str(arrows.iter().collect::<String>().trim_end());
            out.push('\n');
        }
    }
    out
}

/// Figure-style layout of the slice labelled by homology dimensions from
/// the top degree down.
pub fn slice_ascii(slice: &ComponentSlice) -> Result<String> {
    let labels = homology_dims(slice)?.into_iter().map(|(k, v)| (k, join(&v, "."))).collect();
    Ok(ascii(&labels, slice.depth, slice.h_lo, slice.h_hi))
}

/// Figure-style layout of the homology diagram labelled by `H_0`
/// dimension vectors.
pub fn diagram_ascii(diagram: &HomologyDiagram) -> String {
    let labels = diagram.nodes.iter().map(|(&k, m)| (k, format!("({})", join(m.dims(), ",")))).collect();
    ascii(&labels, diagram.depth, diagram.h_lo, diagram.h_hi)
}

#[cfg(test)]
mod tests {
    use super::super::{component_slice, homology_diagram, DEFAULT_NODE_BUDGET};
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::complex::PerfectComplex;

    #[test]
    fn emitters_are_deterministic() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let s = component_slice(&p, 2, 3, DEFAULT_NODE_BUDGET).unwrap();
        let d = homology_diagram(&s).unwrap();
        assert_eq!(slice_dot(&s).unwrap(), slice_dot(&s).unwrap());
        let dot = diagram_dot(&d);
        assert_eq!(dot.matches("->").count(), 2 * 3 + 2 * 2);
        let art = slice_ascii(&s).unwrap();
        assert_eq!(art.lines().count(), 5);
        assert!(art.lines().next().unwrap().contains('2'));
        let v: serde_json::Value = serde_json::from_str(&slice_json(&s).unwrap()).unwrap();
        assert_eq!(v["nodes"].as_array().unwrap().len(), 9);
        let v: serde_json::Value = serde_json::from_str(&diagram_json(&d).unwrap()).unwrap();
        assert_eq!(v["meshes"].as_array().unwrap().len(), 4);
        assert!(diagram_ascii(&d).contains("(1)"));
    }
}
