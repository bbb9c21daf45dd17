//! Bounded complexes of finitely generated projective modules.
//!
//! A term is a list of vertices `[v_1, ..., v_r]` standing for
//! `A e_{v_1} + ... + A e_{v_r}`. Maps between such sums are matrices of
//! algebra elements ([`ProjMat`]): row `s` indexes the source summand,
//! column `t` the target summand, and entry `(s, t)` lies in
//! `e_{v_s} A e_{w_t}`, acting by right multiplication. So "`f` then `g`"
//! is the matrix product `f * g`.
//!
//! Grading is homological: `D_d` goes from degree `d` to degree `d - 1`.

mod build;
mod decompose;
mod endo;
mod hom;
mod homology;
mod json;
mod minimize;
mod projmat;

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{same_algebra, Algebra};
use crate::error::{Error, Result};
use crate::module::{FreeLayout, Representation};

pub use build::{heart_complex, nu_chain, presentation_complex, random_complex, socle_map, truncated_resolution};
pub(crate) use endo::ReducedEnd;
pub use decompose::{complex_iso, decompose_complex, is_indecomposable, ComplexSummand};
pub use hom::{chain_maps, end_k, hom_k, is_nullhomotopic, null_homotopy, HomK};
pub use homology::{homology, homology_map, Homology};
pub use json::{ComplexDoc, MapDoc};
pub use minimize::{minimize, Minimized};
pub use projmat::ProjMat;

#[derive(Clone, Debug)]
pub struct PerfectComplex {
    alg: Arc<Algebra>,
    lo: i64,
    terms: Vec<Vec<usize>>,
    // diffs[i] = D_{lo + i + 1}: term(lo + i + 1) -> term(lo + i)
    diffs: Vec<ProjMat>,
}

impl PartialEq for PerfectComplex {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg)
            && self.lo == other.lo
            && self.terms == other.terms
            && self.diffs == other.diffs
    }
}

impl PerfectComplex {
    /// Complex with `terms[i]` in degree `lo + i` and `diffs[i]` the
    /// differential out of degree `lo + i + 1`. Empty outer terms are
    /// trimmed; `d^2 = 0` is checked.
    pub fn new(alg: &Arc<Algebra>, lo: i64, terms: Vec<Vec<usize>>, diffs: Vec<ProjMat>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::ShapeMismatch(format!("{} terms need {} differentials", terms.len(), terms.len().max(1) - 1)));
        }
        let c = Self { alg: alg.clone(), lo, terms, diffs }.trimmed();
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(alg: &Arc<Algebra>, lo: i64, terms: Vec<Vec<usize>>, diffs: Vec<ProjMat>) -> Self {
        let c = Self { alg: alg.clone(), lo, terms, diffs }.trimmed();
        debug_assert!(c.validate().is_ok(), "{:?}", c.validate());
        c
    }

    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self { alg: alg.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// The sum of the given projectives placed in a single degree.
    pub fn stalk(alg: &Arc<Algebra>, vertices: &[usize], degree: i64) -> Self {
        Self { alg: alg.clone(), lo: degree, terms: vec![vertices.to_vec()], diffs: Vec::new() }.trimmed()
    }

    /// Build from a map of degree to (term, differential out of that degree).
    pub fn from_degrees(alg: &Arc<Algebra>, terms: &BTreeMap<i64, Vec<usize>>, diffs: &BTreeMap<i64, ProjMat>) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (terms.keys().next(), terms.keys().next_back()) else {
            return Ok(Self::zero(alg));
        };
        let t: Vec<Vec<usize>> = (lo..=hi).map(|d| terms.get(&d).cloned().unwrap_or_default()).collect();
        let mut ds = Vec::new();
        for d in lo + 1..=hi {
            let (src, tgt) = (&t[(d - lo) as usize], &t[(d - 1 - lo) as usize]);
            let m = diffs.get(&d).cloned().unwrap_or_else(|| ProjMat::zero(alg, src, tgt));
            if m.rows() != src.as_slice() || m.cols() != tgt.as_slice() {
                return Err(Error::ShapeMismatch(format!("differential out of degree {d} does not match the terms")));
            }
            ds.push(m);
        }
        for d in diffs.keys() {
            if *d <= lo || *d > hi {
                let m = &diffs[d];
                if m.rows().len() * m.cols().len() != 0 {
                    return Err(Error::ShapeMismatch(format!("differential out of degree {d} has no terms")));
                }
            }
        }
        Self::new(alg, lo, t, ds)
    }

    fn trimmed(mut self) -> Self {
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(|t| t.is_empty()) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree with a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree with a nonzero term (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn term(&self, d: i64) -> &[usize] {
        if d < self.lo || d > self.hi() {
            return &[];
        }
        &self.terms[(d - self.lo) as usize]
    }

    /// Differential `D_d: term(d) -> term(d - 1)`.
    pub fn diff(&self, d: i64) -> Cow<'_, ProjMat> {
        if d > self.lo && d <= self.hi() {
            Cow::Borrowed(&self.diffs[(d - self.lo - 1) as usize])
        } else {
            Cow::Owned(ProjMat::zero(&self.alg, self.term(d), self.term(d - 1)))
        }
    }

    /// Number of indecomposable summands over all degrees.
    pub fn num_summands(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }

    /// Dimension over the ground field of the term in degree `d`.
    pub fn term_dim(&self, d: i64) -> usize {
        self.term(d).iter().map(|&v| (0..self.alg.num_vertices()).map(|u| self.alg.block_dim(u, v)).sum::<usize>()).sum()
    }

    pub fn layout(&self, d: i64) -> FreeLayout {
        FreeLayout::new(&self.alg, self.term(d))
    }

    pub fn term_module(&self, d: i64) -> Representation {
        self.layout(d).representation()
    }

    pub fn validate(&self) -> Result<()> {
        let alg = &self.alg;
        for d in self.lo + 1..=self.hi() {
            let m = &self.diffs[(d - self.lo - 1) as usize];
            if m.rows() != self.term(d) || m.cols() != self.term(d - 1) {
                return Err(Error::ShapeMismatch(format!("differential out of degree {d} does not match the terms")));
            }
            m.check_blocks(alg)?;
        }
        for d in self.lo + 2..=self.hi() {
            if !self.diff(d).mul(alg, &self.diff(d - 1)).is_zero() {
                return Err(Error::Invalid(format!("D_{} D_{} is not zero", d - 1, d)));
            }
        }
        for t in &self.terms {
            if let Some(&v) = t.iter().find(|&&v| v >= alg.num_vertices()) {
                return Err(Error::Invalid(format!("unknown vertex {v}")));
            }
        }
        Ok(())
    }

    pub fn require_same_algebra(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// `X[n]`: degree `d` holds `X_{d-n}`, differentials times `(-1)^n`.
    pub fn shift(&self, n: i64) -> Self {
        let diffs = if n % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|m| m.neg(&self.alg)).collect() };
        Self { alg: self.alg.clone(), lo: if self.is_zero() { 0 } else { self.lo + n }, terms: self.terms.clone(), diffs }
    }

    /// Degreewise direct sum; summands are listed part by part.
    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Invalid("empty direct sum".into()));
        };
        let alg = first.alg.clone();
        for p in parts {
            first.require_same_algebra(p)?;
        }
        let nonzero: Vec<&&Self> = parts.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(Self::zero(&alg));
        }
        let lo = nonzero.iter().map(|p| p.lo()).min().expect("nonempty");
        let hi = nonzero.iter().map(|p| p.hi()).max().expect("nonempty");
        let terms: Vec<Vec<usize>> =
            (lo..=hi).map(|d| parts.iter().flat_map(|p| p.term(d).iter().copied()).collect()).collect();
        let diffs = (lo + 1..=hi)
            .map(|d| ProjMat::block_diag(&alg, &parts.iter().map(|p| p.diff(d).into_owned()).collect::<Vec<_>>()))
            .collect();
        Ok(Self::new_unchecked(&alg, lo, terms, diffs))
    }

    /// Cone of `f: X -> Y`: degree `d` holds `Y_d + X_{d-1}` with
    /// differential `[[D^Y_d, 0], [f_{d-1}, -D^X_{d-1}]]`.
    pub fn mapping_cone(f: &ComplexMap) -> Self {
        let (x, y) = (f.source(), f.target());
        let alg = x.alg.clone();
        if x.is_zero() && y.is_zero() {
            return Self::zero(&alg);
        }
        let lo = lo_of(&[y.lo(), x.lo() + 1], &[y, &x.shift(1)]);
        let hi = hi_of(&[y.hi(), x.hi() + 1], &[y, &x.shift(1)]);
        let terms: Vec<Vec<usize>> = (lo..=hi).map(|d| [y.term(d), x.term(d - 1)].concat()).collect();
        let diffs = (lo + 1..=hi)
            .map(|d| {
                let top = y.diff(d).hstack(&alg, &ProjMat::zero(&alg, y.term(d), x.term(d - 2)));
                let bottom = f.component(d - 1).hstack(&alg, &x.diff(d - 1).neg(&alg));
                top.vstack(&alg, &bottom)
            })
            .collect();
        Self::new_unchecked(&alg, lo, terms, diffs)
    }

    /// Apply `nu` to every term and every differential entry.
    pub fn nakayama(&self) -> Result<Self> {
        self.twist(false)
    }

    /// Apply the inverse of `nu` termwise.
    pub fn nakayama_inverse(&self) -> Result<Self> {
        self.twist(true)
    }

    fn twist(&self, inverse: bool) -> Result<Self> {
        let nak = self.alg.require_self_injective()?;
        let perm = if inverse { &nak.inverse_perm } else { &nak.perm };
        let terms = self.terms.iter().map(|t| t.iter().map(|&v| perm[v]).collect()).collect();
        let diffs = self.diffs.iter().map(|m| m.nakayama(&self.alg, inverse)).collect::<Result<_>>()?;
        Ok(Self { alg: self.alg.clone(), lo: self.lo, terms, diffs })
    }

    /// `nu^k X` for any integer `k`.
    pub fn nakayama_power(&self, k: i64) -> Result<Self> {
        let mut out = self.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 { out.nakayama()? } else { out.nakayama_inverse()? };
        }
        Ok(out)
    }

    /// All differentials have entries in the radical.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|m| m.is_radical(&self.alg))
    }

    /// Degree of the single term when the complex is one indecomposable
    /// projective placed in one degree.
    pub fn stalk_projective_degree(&self) -> Option<i64> {
        (self.terms.len() == 1 && self.terms[0].len() == 1).then_some(self.lo)
    }

    /// Number of degrees spanned by the minimal model.
    pub fn length(&self) -> Result<usize> {
        let m = if self.is_minimal() { self.clone() } else { minimize(self)?.complex };
        if m.is_zero() {
            return Err(Error::Precondition("the zero complex has no length".into()));
        }
        Ok(m.terms.len())
    }

    /// Euler characteristic of the terms, `sum (-1)^d dim X_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|d| if d % 2 == 0 { 1 } else { -1 } * self.term_dim(d) as i64).sum()
    }
}

fn lo_of(cands: &[i64], parts: &[&PerfectComplex]) -> i64 {
    cands.iter().zip(parts).filter(|(_, p)| !p.is_zero()).map(|(c, _)| *c).min().unwrap_or(0)
}

fn hi_of(cands: &[i64], parts: &[&PerfectComplex]) -> i64 {
    cands.iter().zip(parts).filter(|(_, p)| !p.is_zero()).map(|(c, _)| *c).max().unwrap_or(-1)
}

/// A chain map, stored degreewise on the degrees where both complexes
/// have nonzero terms.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: PerfectComplex,
    target: PerfectComplex,
    maps: BTreeMap<i64, ProjMat>,
}

impl ComplexMap {
    /// Map with the given components; components on degrees where either
    /// term vanishes are dropped. The chain map condition is checked.
    pub fn new(source: &PerfectComplex, target: &PerfectComplex, maps: BTreeMap<i64, ProjMat>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, maps)?;
        if !f.is_chain_map() {
            return Err(Error::Invalid("components do not commute with the differentials".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &PerfectComplex, target: &PerfectComplex, maps: BTreeMap<i64, ProjMat>) -> Result<Self> {
        source.require_same_algebra(target)?;
        let mut kept = BTreeMap::new();
        for (d, m) in maps {
            if m.rows() != source.term(d) || m.cols() != target.term(d) {
                return Err(Error::ShapeMismatch(format!("component in degree {d} does not match the terms")));
            }
            if !source.term(d).is_empty() && !target.term(d).is_empty() {
                kept.insert(d, m);
            }
        }
        Ok(Self { source: source.clone(), target: target.clone(), maps: kept })
    }

    pub fn zero(source: &PerfectComplex, target: &PerfectComplex) -> Self {
        Self { source: source.clone(), target: target.clone(), maps: BTreeMap::new() }
    }

    pub fn identity(x: &PerfectComplex) -> Self {
        let maps = x.degrees().map(|d| (d, ProjMat::identity(&x.alg, x.term(d)))).collect();
        Self { source: x.clone(), target: x.clone(), maps }
    }

    pub fn source(&self) -> &PerfectComplex {
        &self.source
    }

    pub fn target(&self) -> &PerfectComplex {
        &self.target
    }

    pub fn component(&self, d: i64) -> Cow<'_, ProjMat> {
        match self.maps.get(&d) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(ProjMat::zero(&self.source.alg, self.source.term(d), self.target.term(d))),
        }
    }

    pub fn components(&self) -> &BTreeMap<i64, ProjMat> {
        &self.maps
    }

    /// `f_d D^Y_d = D^X_d f_{d-1}` in every degree.
    pub fn is_chain_map(&self) -> bool {
        let alg = &self.source.alg;
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi()) + 1;
        (lo..=hi).all(|d| {
            let l = self.component(d).mul(alg, &self.target.diff(d));
            let r = self.source.diff(d).mul(alg, &self.component(d - 1));
            l == r
        })
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &ComplexMap) -> ComplexMap {
        let alg = &self.source.alg;
        let mut maps = BTreeMap::new();
        for (d, m) in &self.maps {
            if let Some(n) = g.maps.get(d) {
                let p = m.mul(alg, n);
                if !p.is_zero() {
                    maps.insert(*d, p);
                }
            }
        }
        ComplexMap { source: self.source.clone(), target: g.target.clone(), maps }
    }

    fn combine(&self, g: &ComplexMap, sub: bool) -> ComplexMap {
        let alg = &self.source.alg;
        let mut maps = self.maps.clone();
        for (d, n) in &g.maps {
            let cur = self.component(*d).into_owned();
            maps.insert(*d, if sub { cur.sub(alg, n) } else { cur.add(alg, n) });
        }
        ComplexMap { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn add(&self, g: &ComplexMap) -> ComplexMap {
        self.combine(g, false)
    }

    pub fn sub(&self, g: &ComplexMap) -> ComplexMap {
        self.combine(g, true)
    }

    pub fn scale(&self, c: u64) -> ComplexMap {
        let alg = &self.source.alg;
        let maps = self.maps.iter().map(|(d, m)| (*d, m.scale(alg, c))).collect();
        ComplexMap { source: self.source.clone(), target: self.target.clone(), maps }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().all(|m| m.is_zero())
    }

    /// `f[n]`, a map `X[n] -> Y[n]` with the same components.
    pub fn shift(&self, n: i64) -> ComplexMap {
        let maps = self.maps.iter().map(|(d, m)| (d + n, m.clone())).collect();
        ComplexMap { source: self.source.shift(n), target: self.target.shift(n), maps }
    }

    /// `nu f: nu X -> nu Y`.
    pub fn nakayama(&self) -> Result<ComplexMap> {
        let alg = &self.source.alg;
        let maps = self.maps.iter().map(|(d, m)| Ok((*d, m.nakayama(alg, false)?))).collect::<Result<_>>()?;
        Ok(ComplexMap { source: self.source.nakayama()?, target: self.target.nakayama()?, maps })
    }

    /// Reduction of each component modulo the radical: scalar matrices
    /// between the summands with equal vertices.
    pub fn reduction(&self, d: i64) -> crate::linalg::Matrix {
        self.component(d).reduction(&self.source.alg)
    }

    /// Invertible as a chain map between minimal complexes: each reduced
    /// component is invertible.
    pub fn is_invertible(&self) -> bool {
        let (x, y) = (&self.source, &self.target);
        let lo = x.lo().min(y.lo());
        let hi = x.hi().max(y.hi());
        (lo..=hi).all(|d| x.term(d).len() == y.term(d).len() && self.reduction(d).is_invertible())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, fixtures};

    fn kt(n: usize, p: u64) -> Arc<Algebra> {
        build_algebra(&fixtures::kt(n, p)).unwrap()
    }

    fn t_pow(a: &Algebra, k: usize) -> Vec<u64> {
        a.path_elem(&vec![0; k], 0).unwrap()
    }

    pub(crate) fn two_term(a: &Arc<Algebra>, x: Vec<u64>) -> PerfectComplex {
        let mut m = ProjMat::zero(a, &[0], &[0]);
        m.set(0, 0, x);
        PerfectComplex::new(a, 0, vec![vec![0], vec![0]], vec![m]).unwrap()
    }

    #[test]
    fn cone_of_identity_on_stalk() {
        let a = kt(2, 2);
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let c = PerfectComplex::mapping_cone(&ComplexMap::identity(&p));
        assert_eq!(c.lo(), 0);
        assert_eq!(c.hi(), 1);
        assert_eq!(c.diff(1).get(0, 0), a.one().as_slice());
    }

    #[test]
    fn cone_of_zero_map_is_sum_with_shift() {
        let a = kt(3, 3);
        let x = two_term(&a, t_pow(&a, 1));
        let y = PerfectComplex::stalk(&a, &[0], 0);
        let c = PerfectComplex::mapping_cone(&ComplexMap::zero(&x, &y));
        let expect = PerfectComplex::direct_sum(&[&y, &x.shift(1)]).unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn cone_of_socle_map_is_two_term_complex() {
        let a = kt(2, 2);
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let mut m = ProjMat::zero(&a, &[0], &[0]);
        m.set(0, 0, t_pow(&a, 1));
        let f = ComplexMap::new(&p, &p, [(0, m)].into()).unwrap();
        let c = PerfectComplex::mapping_cone(&f);
        assert_eq!(c, two_term(&a, t_pow(&a, 1)));
    }

    #[test]
    fn rejects_nonzero_square() {
        let a = kt(3, 3);
        let mut m = ProjMat::zero(&a, &[0], &[0]);
        m.set(0, 0, t_pow(&a, 1));
        let r = PerfectComplex::new(&a, 0, vec![vec![0], vec![0], vec![0]], vec![m.clone(), m]);
        assert!(r.is_err());
    }

    #[test]
    fn shift_negates_and_composes() {
        let a = kt(3, 3);
        let x = two_term(&a, t_pow(&a, 1));
        let s = x.shift(1);
        assert_eq!(s.lo(), 1);
        assert_eq!(s.diff(2).get(0, 0), a.scale(&t_pow(&a, 1), 2).as_slice());
        assert_eq!(s.shift(-1), x);
    }

    #[test]
    fn nakayama_relabels_on_cyclic_fixture() {
        let a = build_algebra(&fixtures::nakayama(2, 2, 3)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        assert_eq!(p.nakayama().unwrap(), PerfectComplex::stalk(&a, &[1], 0));
        let x = p.shift(1);
        assert_eq!(x.nakayama().unwrap(), p.nakayama().unwrap().shift(1));
    }

    #[test]
    fn nakayama_is_identity_on_symmetric() {
        let a = kt(3, 3);
        let x = two_term(&a, t_pow(&a, 2));
        assert_eq!(x.nakayama().unwrap(), x);
    }
}
