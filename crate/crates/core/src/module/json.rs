use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{free_map, FreeLayout, Representation};
use crate::algebra::{Algebra, TermDoc};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Module file: either explicit arrow actions, or the cokernel of a matrix
/// over the algebra between sums of indecomposable projectives.
#[derive(Serialize, Deserialize)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cokernel: Option<BlockMatrixDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct ActionDoc {
    /// Dimension of each vertex space, keyed by vertex label.
    pub dims: BTreeMap<String, usize>,
    /// Matrix of each arrow (rows index the target space), keyed by name.
    pub arrows: BTreeMap<String, Vec<Vec<i64>>>,
}

/// Matrix over the algebra: row summands map to column summands, entry
/// `(r, c)` lying in `e_{rows[r]} A e_{cols[c]}`. Missing entries are zero.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct BlockMatrixDoc {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    #[serde(default)]
    pub entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct EntryDoc {
    pub row: usize,
    pub col: usize,
    pub element: Vec<TermDoc>,
}

pub(crate) fn vertex_of(alg: &Algebra, label: &str) -> Result<usize> {
    alg.presentation().vertex_index(label).ok_or_else(|| Error::Parse(format!("unknown vertex {label:?}")))
}

/// Parse a block matrix into vertex lists and dense entries.
pub(crate) fn parse_block_matrix(
    alg: &Algebra,
    doc: &BlockMatrixDoc,
) -> Result<(Vec<usize>, Vec<usize>, Vec<Vec<Vec<u64>>>)> {
    let rows = doc.rows.iter().map(|l| vertex_of(alg, l)).collect::<Result<Vec<_>>>()?;
    let cols = doc.cols.iter().map(|l| vertex_of(alg, l)).collect::<Result<Vec<_>>>()?;
    let mut entries = vec![vec![alg.zero(); cols.len()]; rows.len()];
    for e in &doc.entries {
        if e.row >= rows.len() || e.col >= cols.len() {
            return Err(Error::Parse(format!("entry ({}, {}) out of range", e.row, e.col)));
        }
        let x = alg.elem_from_docs(&e.element, rows[e.row], cols[e.col])?;
        entries[e.row][e.col] = alg.add(&entries[e.row][e.col], &x);
    }
    Ok((rows, cols, entries))
}

impl Representation {
    pub fn from_json(alg: &Arc<Algebra>, text: &str) -> Result<Self> {
        let doc: ModuleDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(alg, &doc)
    }

    pub fn from_doc(alg: &Arc<Algebra>, doc: &ModuleDoc) -> Result<Self> {
        match (&doc.action, &doc.cokernel) {
            (Some(a), None) => {
                let f = alg.field();
                let mut dims = vec![0; alg.num_vertices()];
                for (label, &d) in &a.dims {
                    dims[vertex_of(alg, label)?] = d;
                }
                let mut arrows: Vec<Option<Matrix>> = vec![None; alg.num_arrows()];
                for (name, rows) in &a.arrows {
                    let ai = alg
                        .presentation()
                        .arrow_index(name)
                        .ok_or_else(|| Error::Parse(format!("unknown arrow {name:?}")))?;
                    let arr = alg.arrow(ai);
                    if rows.len() != dims[arr.target] || rows.iter().any(|r| r.len() != dims[arr.source]) {
                        return Err(Error::Parse(format!("matrix of arrow {name:?} has the wrong shape")));
                    }
                    arrows[ai] = Some(if rows.is_empty() {
                        Matrix::zeros(f, 0, dims[arr.source])
                    } else {
                        Matrix::from_rows(f, rows)
                    });
                }
                let arrows = arrows
                    .into_iter()
                    .enumerate()
                    .map(|(ai, m)| {
                        let arr = alg.arrow(ai);
                        m.unwrap_or_else(|| Matrix::zeros(f, dims[arr.target], dims[arr.source]))
                    })
                    .collect();
                Representation::new(alg.clone(), dims, arrows)
            }
            (None, Some(c)) => {
                let (rows, cols, entries) = parse_block_matrix(alg, c)?;
                let src = FreeLayout::new(alg, &rows);
                let tgt = FreeLayout::new(alg, &cols);
                let map = free_map(&src, &tgt, &entries)?;
                Ok(map.cokernel(&tgt.representation())?.0)
            }
            _ => Err(Error::Parse("module file needs exactly one of `action` or `cokernel`".into())),
        }
    }

    pub fn to_doc(&self) -> ModuleDoc {
        let alg = self.algebra();
        let dims = (0..alg.num_vertices()).map(|v| (alg.vertex_label(v).to_string(), self.dims()[v])).collect();
        let arrows = (0..alg.num_arrows())
            .map(|ai| {
                let m = self.arrow_matrix(ai);
                let rows = (0..m.rows()).map(|i| m.row(i).iter().map(|&x| x as i64).collect()).collect();
                (alg.arrow(ai).name.clone(), rows)
            })
            .collect();
        ModuleDoc { action: Some(ActionDoc { dims, arrows }), cokernel: None }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::module::is_isomorphic;

    #[test]
    fn action_roundtrip() {
        let a = build_algebra(&fixtures::nakayama(2, 3, 3)).unwrap();
        let p = Representation::projective(&a, 0);
        let back = Representation::from_json(&a, &p.to_json()).unwrap();
        assert_eq!(back.dims(), p.dims());
        assert!(is_isomorphic(&p, &back, 0).unwrap().is_some());
    }

    #[test]
    fn cokernel_form() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let text = r#"{"cokernel": {"rows": ["1"], "cols": ["1"],
            "entries": [{"row": 0, "col": 0, "element": [{"coeff": 1, "path": ["t", "t"]}]}]}}"#;
        let m = Representation::from_json(&a, text).unwrap();
        assert_eq!(m.dims(), &[2]);
    }

    #[test]
    fn action_violating_relations_is_rejected() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let text = r#"{"action": {"dims": {"1": 3}, "arrows": {"t": [[0,0,0],[1,0,0],[0,1,0]]}}}"#;
        assert!(Representation::from_json(&a, text).is_err());
    }
}
