use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{ComplexMap, PerfectComplex, ProjMat};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::module::{vertex_of, EntryDoc};

/// Complex file: degree range, summand labels per degree, and the nonzero
/// entries of each differential `D_d: term_d -> term_{d-1}` keyed by `d`.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ComplexDoc {
    pub range: [i64; 2],
    pub terms: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub differentials: BTreeMap<String, Vec<EntryDoc>>,
}

/// Components of a chain map keyed by degree.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct MapDoc {
    pub components: BTreeMap<String, Vec<EntryDoc>>,
}

fn degree_key(k: &str) -> Result<i64> {
    k.trim().parse().map_err(|_| Error::Parse(format!("degree key {k:?} is not an integer")))
}

fn entries_doc(alg: &Algebra, m: &ProjMat) -> Vec<EntryDoc> {
    let mut out = Vec::new();
    for r in 0..m.rows().len() {
        for c in 0..m.cols().len() {
            let x = m.get(r, c);
            if !Algebra::is_zero(x) {
                out.push(EntryDoc { row: r, col: c, element: alg.elem_to_docs(x) });
            }
        }
    }
    out
}

fn parse_entries(alg: &Algebra, rows: &[usize], cols: &[usize], entries: &[EntryDoc]) -> Result<ProjMat> {
    let mut m = ProjMat::zero(alg, rows, cols);
    for e in entries {
        if e.row >= rows.len() || e.col >= cols.len() {
            return Err(Error::Parse(format!("entry ({}, {}) out of range", e.row, e.col)));
        }
        let x = alg.elem_from_docs(&e.element, rows[e.row], cols[e.col])?;
        let sum = alg.add(m.get(e.row, e.col), &x);
        m.set(e.row, e.col, sum);
    }
    Ok(m)
}

impl PerfectComplex {
    pub fn from_json(alg: &Arc<Algebra>, text: &str) -> Result<Self> {
        let doc: ComplexDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(alg, &doc)
    }

    pub fn from_doc(alg: &Arc<Algebra>, doc: &ComplexDoc) -> Result<Self> {
        let [lo, hi] = doc.range;
        if lo > hi + 1 {
            return Err(Error::Parse(format!("empty degree range [{lo}, {hi}]")));
        }
        let mut terms = BTreeMap::new();
        for (k, labels) in &doc.terms {
            let d = degree_key(k)?;
            if d < lo || d > hi {
                return Err(Error::Parse(format!("term in degree {d} outside the range [{lo}, {hi}]")));
            }
            let verts = labels.iter().map(|l| vertex_of(alg, l)).collect::<Result<Vec<_>>>()?;
            terms.insert(d, verts);
        }
        let mut diffs = BTreeMap::new();
        for (k, entries) in &doc.differentials {
            let d = degree_key(k)?;
            let src = terms.get(&d).cloned().unwrap_or_default();
            let tgt = terms.get(&(d - 1)).cloned().unwrap_or_default();
            if entries.is_empty() {
                continue;
            }
            if src.is_empty() || tgt.is_empty() {
                return Err(Error::Parse(format!("differential out of degree {d} has no terms")));
            }
            diffs.insert(d, parse_entries(alg, &src, &tgt, entries)?);
        }
        Self::from_degrees(alg, &terms, &diffs)
    }

    pub fn to_doc(&self) -> ComplexDoc {
        let alg = self.algebra();
        let mut terms = BTreeMap::new();
        let mut differentials = BTreeMap::new();
        for d in self.degrees() {
            let labels = self.term(d).iter().map(|&v| alg.vertex_label(v).to_string()).collect();
            terms.insert(d.to_string(), labels);
            if d > self.lo() {
                let e = entries_doc(alg, &self.diff(d));
                if !e.is_empty() {
                    differentials.insert(d.to_string(), e);
                }
            }
        }
        ComplexDoc { range: [self.lo(), self.hi()], terms, differentials }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    /// Human-readable layout, top degree first.
    pub fn to_ascii(&self) -> String {
        let alg = self.algebra();
        if self.is_zero() {
            return "0\n".into();
        }
        let mut out = String::new();
        for d in self.degrees().rev() {
            let labels: Vec<&str> = self.term(d).iter().map(|&v| alg.vertex_label(v)).collect();
            let term = if labels.is_empty() { "0".to_string() } else { labels.iter().map(|l| format!("P{l}")).collect::<Vec<_>>().join(" + ") };
            writeln!(out, "{d:>4} | {term}").unwrap();
            if d > self.lo() {
                writeln!(out, "     |   D{d} = {}", self.diff(d).format(alg)).unwrap();
            }
        }
        out
    }
}

impl ComplexMap {
    pub fn to_doc(&self) -> MapDoc {
        let alg = self.source().algebra();
        let components = self.components().iter().map(|(d, m)| (d.to_string(), entries_doc(alg, m))).collect();
        MapDoc { components }
    }

    pub fn from_doc(source: &PerfectComplex, target: &PerfectComplex, doc: &MapDoc) -> Result<Self> {
        let alg = source.algebra();
        let mut maps = BTreeMap::new();
        for (k, entries) in &doc.components {
            let d = degree_key(k)?;
            let m = parse_entries(alg, source.term(d), target.term(d), entries)?;
            if !m.is_zero() {
                maps.insert(d, m);
            }
        }
        ComplexMap::new(source, target, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_term;
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::complex::heart_complex;

    #[test]
    fn roundtrip() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let h = heart_complex(&a, 0).unwrap();
        assert_eq!(PerfectComplex::from_json(&a, &h.to_json()).unwrap(), h);
        let id = ComplexMap::identity(&h);
        assert!(ComplexMap::from_doc(&h, &h, &id.to_doc()).unwrap().sub(&id).is_zero());
    }

    #[test]
    fn parses_handwritten_file() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let text = r#"{"range": [0, 1], "terms": {"0": ["1"], "1": ["1"]},
            "differentials": {"1": [{"row": 0, "col": 0, "element": [{"coeff": 1, "path": ["t"]}]}]}}"#;
        let c = PerfectComplex::from_json(&a, text).unwrap();
        assert_eq!(c, two_term(&a, a.path_elem(&[0], 0).unwrap()));
        assert!(c.to_ascii().contains("D1"));
    }

    #[test]
    fn rejects_nonzero_square() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let text = r#"{"range": [0, 2], "terms": {"0": ["1"], "1": ["1"], "2": ["1"]},
            "differentials": {"1": [{"row": 0, "col": 0, "element": [{"coeff": 1, "path": ["t"]}]}],
                              "2": [{"row": 0, "col": 0, "element": [{"coeff": 1, "path": ["t"]}]}]}}"#;
        assert!(PerfectComplex::from_json(&a, text).is_err());
    }
}
