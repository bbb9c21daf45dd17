use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// One term of a relation: a coefficient times a path, the path listed in
/// the order the arrows are applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: i64,
    pub path: Vec<usize>,
}

/// A bound quiver `(Q, I)` together with a nilpotency bound `N`, meaning
/// all paths of length `N` lie in `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub prime: u64,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<Term>>,
    pub nilpotency_bound: usize,
}

impl QuiverPresentation {
    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Endpoints `(source, target)` of a nonempty composable path.
    pub fn path_endpoints(&self, path: &[usize]) -> Option<(usize, usize)> {
        let first = self.arrows.get(*path.first()?)?;
        let mut at = first.target;
        for &a in &path[1..] {
            let arr = self.arrows.get(a)?;
            if arr.source != at {
                return None;
            }
            at = arr.target;
        }
        Some((first.source, at))
    }

    pub fn path_name(&self, path: &[usize]) -> String {
        path.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }

    pub fn validate(&self) -> Result<()> {
        crate::linalg::PrimeField::new(self.prime)?;
        if self.nilpotency_bound < 2 {
            return Err(Error::Invalid(format!("nilpotency bound {} < 2", self.nilpotency_bound)));
        }
        if self.vertices.is_empty() {
            return Err(Error::Invalid("quiver has no vertices".into()));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate vertex label {v:?}")));
            }
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if self.arrows[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::Invalid(format!("duplicate arrow name {:?}", a.name)));
            }
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::Invalid(format!("arrow {:?} has an unknown endpoint", a.name)));
            }
        }
        for (r, rel) in self.relations.iter().enumerate() {
            let mut ends = None;
            for t in rel {
                if t.path.len() < 2 {
                    return Err(Error::Relation(format!(
                        "relation {r}: term {:?} has length {} < 2",
                        self.path_name(&t.path),
                        t.path.len()
                    )));
                }
                let Some(e) = self.path_endpoints(&t.path) else {
                    return Err(Error::Relation(format!(
                        "relation {r}: path {:?} is not composable",
                        self.path_name(&t.path)
                    )));
                };
                match ends {
                    None => ends = Some(e),
                    Some(prev) if prev != e => {
                        return Err(Error::Relation(format!("relation {r}: paths are not parallel")));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// The presentation of the opposite algebra: arrows and paths reversed.
    pub fn opposite(&self) -> Self {
        Self {
            prime: self.prime,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|rel| {
                    rel.iter()
                        .map(|t| Term { coeff: t.coeff, path: t.path.iter().rev().copied().collect() })
                        .collect()
                })
                .collect(),
            nilpotency_bound: self.nilpotency_bound,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.into_presentation()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AlgebraDoc::from_presentation(self)).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct FieldDoc {
    prime: u64,
}

#[derive(Serialize, Deserialize)]
struct ArrowDoc {
    name: String,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    vertices: Vec<String>,
    arrows: Vec<ArrowDoc>,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct TermDoc {
    pub coeff: i64,
    pub path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    field: FieldDoc,
    quiver: QuiverDoc,
    #[serde(default)]
    relations: Vec<Vec<TermDoc>>,
    nilpotency_bound: usize,
}

impl AlgebraDoc {
    fn into_presentation(self) -> Result<QuiverPresentation> {
        let vertices = self.quiver.vertices;
        let find_v = |s: &str| {
            vertices
                .iter()
                .position(|v| v == s)
                .ok_or_else(|| Error::Parse(format!("unknown vertex {s:?}")))
        };
        let mut arrows = Vec::new();
        for a in &self.quiver.arrows {
            arrows.push(Arrow { name: a.name.clone(), source: find_v(&a.from)?, target: find_v(&a.to)? });
        }
        let mut relations = Vec::new();
        for rel in &self.relations {
            let mut terms = Vec::new();
            for t in rel {
                let path = t
                    .path
                    .iter()
                    .map(|n| {
                        arrows
                            .iter()
                            .position(|a| &a.name == n)
                            .ok_or_else(|| Error::Parse(format!("unknown arrow {n:?} in relation")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                terms.push(Term { coeff: t.coeff, path });
            }
            relations.push(terms);
        }
        let q = QuiverPresentation {
            prime: self.field.prime,
            vertices,
            arrows,
            relations,
            nilpotency_bound: self.nilpotency_bound,
        };
        q.validate()?;
        Ok(q)
    }

    fn from_presentation(q: &QuiverPresentation) -> Self {
        AlgebraDoc {
            field: FieldDoc { prime: q.prime },
            quiver: QuiverDoc {
                vertices: q.vertices.clone(),
                arrows: q
                    .arrows
                    .iter()
                    .map(|a| ArrowDoc {
                        name: a.name.clone(),
                        from: q.vertices[a.source].clone(),
                        to: q.vertices[a.target].clone(),
                    })
                    .collect(),
            },
            relations: q
                .relations
                .iter()
                .map(|rel| {
                    rel.iter()
                        .map(|t| TermDoc {
                            coeff: t.coeff,
                            path: t.path.iter().map(|&a| q.arrows[a].name.clone()).collect(),
                        })
                        .collect()
                })
                .collect(),
            nilpotency_bound: q.nilpotency_bound,
        }
    }
}

/// Standard presentations used throughout the examples and tests.
pub mod fixtures {
    use super::*;

    /// `k[t]/(t^n)` over GF(p).
    pub fn kt(n: usize, p: u64) -> QuiverPresentation {
        QuiverPresentation {
            prime: p,
            vertices: vec!["1".into()],
            arrows: vec![Arrow { name: "t".into(), source: 0, target: 0 }],
            relations: vec![vec![Term { coeff: 1, path: vec![0; n] }]],
            nilpotency_bound: n,
        }
    }

    /// The cyclic Nakayama algebra on `m` vertices with arrows
    /// `a_i: i -> i+1 (mod m)` and all paths of length `n` set to zero.
    pub fn nakayama(m: usize, n: usize, p: u64) -> QuiverPresentation {
        let arrows: Vec<Arrow> = (0..m)
            .map(|i| Arrow { name: format!("a{}", i + 1), source: i, target: (i + 1) % m })
            .collect();
        let relations = (0..m)
            .map(|start| vec![Term { coeff: 1, path: (0..n).map(|k| (start + k) % m).collect() }])
            .collect();
        QuiverPresentation {
            prime: p,
            vertices: (1..=m).map(|i| i.to_string()).collect(),
            arrows,
            relations,
            nilpotency_bound: n,
        }
    }

    /// Path algebra of `1 -> 2`; not self-injective.
    pub fn a2(p: u64) -> QuiverPresentation {
        QuiverPresentation {
            prime: p,
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![Arrow { name: "a".into(), source: 0, target: 1 }],
            relations: vec![],
            nilpotency_bound: 2,
        }
    }

    /// `k[s]/(s^n) x k[t]/(t^n)` as a quiver with two loops on two vertices.
    pub fn kt_product(n: usize, p: u64) -> QuiverPresentation {
        QuiverPresentation {
            prime: p,
            vertices: vec!["1".into(), "2".into()],
            arrows: vec![
                Arrow { name: "s".into(), source: 0, target: 0 },
                Arrow { name: "t".into(), source: 1, target: 1 },
            ],
            relations: vec![
                vec![Term { coeff: 1, path: vec![0; n] }],
                vec![Term { coeff: 1, path: vec![1; n] }],
            ],
            nilpotency_bound: n,
        }
    }

    /// A quiver with vertices and no arrows: a product of copies of GF(p).
    /// The bound is irrelevant but must be at least 2.
    pub fn semisimple(m: usize, p: u64) -> QuiverPresentation {
        QuiverPresentation {
            prime: p,
            vertices: (1..=m).map(|i| i.to_string()).collect(),
            arrows: vec![],
            relations: vec![],
            nilpotency_bound: 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let q = fixtures::nakayama(2, 3, 5);
        let back = QuiverPresentation::from_json(&q.to_json()).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn rejects_bad_relations() {
        let mut q = fixtures::nakayama(2, 3, 3);
        q.relations.push(vec![Term { coeff: 1, path: vec![0, 0] }]);
        assert!(matches!(q.validate(), Err(Error::Relation(_))));
        let mut q = fixtures::kt(3, 3);
        q.relations.push(vec![Term { coeff: 1, path: vec![0] }]);
        assert!(matches!(q.validate(), Err(Error::Relation(_))));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = QuiverPresentation::from_json("{\"field\": {\"prime\": 3},").unwrap_err();
        assert!(err.to_string().contains("line"));
    }
}
