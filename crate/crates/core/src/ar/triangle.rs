use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::complex::{
    complex_iso, decompose_complex, heart_complex, hom_k, homology, homology_map, is_nullhomotopic, minimize,
    nu_chain, presentation_complex, ComplexMap, HomK, PerfectComplex, ProjMat, ReducedEnd,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::Representation;

/// A triangle `A -u-> B -v-> C -w-> A[1]`. `raw_middle` is the cone that
/// `B` was minimized from.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub a: PerfectComplex,
    pub b: PerfectComplex,
    pub c: PerfectComplex,
    pub u: ComplexMap,
    pub v: ComplexMap,
    pub w: ComplexMap,
    pub raw_middle: PerfectComplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

/// Result of [`verify_ar_triangle`]: one entry per check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct TriangleReport {
    pub checks: Vec<Check>,
}

impl TriangleReport {
    fn push(&mut self, name: &str, outcome: Result<Outcome>) {
        let outcome = outcome.unwrap_or_else(|e| Outcome::Fail(format!("error: {e}")));
        self.checks.push(Check { name: name.into(), outcome });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn outcome(&self, name: &str) -> Option<&Outcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter_map(|c| match &c.outcome {
                Outcome::Fail(m) => Some(format!("{}: {m}", c.name)),
                _ => None,
            })
            .collect()
    }
}

fn minimal(x: &PerfectComplex) -> Result<PerfectComplex> {
    Ok(if x.is_minimal() { x.clone() } else { minimize(x)?.complex })
}

/// Chain maps representing a basis of the radical of `End_K(X)`.
pub fn radical_endomorphisms(x: &PerfectComplex) -> Result<(HomK, Vec<ComplexMap>)> {
    if !x.is_minimal() {
        let (end, h) = crate::complex::end_k(x)?;
        let rad = super::radical::algebra_radical(&end)?;
        let maps = rad.row_vecs().iter().map(|r| h.combination(r)).collect();
        return Ok((h, maps));
    }
    let end = ReducedEnd::new(x)?;
    if end.basis.is_empty() {
        return Ok((end.hom, Vec::new()));
    }
    let rad = end.radical()?;
    let maps = rad.row_vecs().iter().map(|r| end.hom.combination(r)).collect();
    Ok((end.hom, maps))
}

/// Matrix whose column `j` holds the class of `basis_j` pushed through
/// `op`, stacked over all operators.
fn stacked_classes(h: &HomK, basis: &[ComplexMap], ops: &[ComplexMap], pre: bool) -> Result<Matrix> {
    let f = h.source().algebra().field();
    let mut m = Matrix::zeros(f, ops.len() * h.dim(), basis.len());
    for (k, op) in ops.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let g = if pre { op.then(b) } else { b.then(op) };
            for (i, c) in h.class_of(&g)?.into_iter().enumerate() {
                m.set(k * h.dim() + i, j, c);
            }
        }
    }
    Ok(m)
}

/// Basis of the maps `w: Z -> nu Z` in `Hom_K` with `r then w = 0` up to
/// homotopy for every radical endomorphism `r` of `Z`.
pub fn socle_connecting_maps(z: &PerfectComplex) -> Result<Vec<ComplexMap>> {
    z.algebra().require_self_injective()?;
    let z = minimal(z)?;
    if z.is_zero() {
        return Err(Error::NoSocleElement);
    }
    let nz = z.nakayama()?;
    let h = hom_k(&z, &nz)?;
    if h.dim() == 0 {
        return Err(Error::NoSocleElement);
    }
    let basis = h.basis();
    let (_, rad) = radical_endomorphisms(&z)?;
    let sol = if rad.is_empty() {
        Matrix::identity(z.algebra().field(), h.dim())
    } else {
        stacked_classes(&h, &basis, &rad, true)?.kernel_basis()
    };
    if sol.rows() == 0 {
        return Err(Error::NoSocleElement);
    }
    Ok(sol.row_vecs().iter().map(|c| h.combination(c)).collect())
}

/// The first basis element of [`socle_connecting_maps`].
pub fn socle_connecting_map(z: &PerfectComplex) -> Result<ComplexMap> {
    Ok(socle_connecting_maps(z)?.swap_remove(0))
}

/// `nu Z[-1] -> E -> Z -> nu Z` with `E` the minimal model of `cone(w)[-1]`.
pub fn ar_triangle_ending_at(z: &PerfectComplex) -> Result<Triangle> {
    let z = minimal(z)?;
    let w = socle_connecting_map(&z)?;
    let t = triangle_on(&w)?;
    let report = verify_ar_triangle(&t, &[]);
    if !report.passed() {
        return Err(Error::Inconsistent(format!("constructed triangle fails: {}", report.failures().join("; "))));
    }
    Ok(t)
}

/// The triangle `Y[-1] -> cone(w)[-1] -> Z -w-> Y` for a chain map
/// `w: Z -> Y`, with the middle term minimized.
pub fn triangle_on(w: &ComplexMap) -> Result<Triangle> {
    let (z, y) = (w.source(), w.target());
    let alg = z.algebra();
    let raw = PerfectComplex::mapping_cone(w).shift(-1);
    let a = y.shift(-1);
    let mut um = BTreeMap::new();
    let mut vm = BTreeMap::new();
    for d in raw.degrees() {
        let (ad, zd) = (a.term(d), z.term(d));
        if !ad.is_empty() {
            um.insert(d, ProjMat::identity(alg, ad).hstack(alg, &ProjMat::zero(alg, ad, zd)));
        }
        if !zd.is_empty() {
            vm.insert(d, ProjMat::zero(alg, ad, zd).vstack(alg, &ProjMat::identity(alg, zd)));
        }
    }
    let u = ComplexMap::new(&a, &raw, um)?;
    let v = ComplexMap::new(&raw, z, vm)?;
    let min = minimize(&raw)?;
    Ok(Triangle {
        a,
        b: min.complex.clone(),
        c: z.clone(),
        u: u.then(&min.to_min),
        v: min.from_min.then(&v),
        w: w.clone(),
        raw_middle: raw,
    })
}

/// The triangle whose first term is `x`: the one ending at `nu^-1 X[1]`.
pub fn ar_triangle_starting_at(x: &PerfectComplex) -> Result<Triangle> {
    let x = minimal(x)?;
    let z = x.nakayama_inverse()?.shift(1);
    let t = ar_triangle_ending_at(&z)?;
    if t.a != x {
        return Err(Error::Inconsistent("nu does not invert nu^-1 on this complex".into()));
    }
    Ok(t)
}

/// Standard test objects: stalk projectives in degrees 0 and 1, and where
/// defined, presentation complexes of simples, hearts and short nu-chains.
pub fn sample_objects(alg: &std::sync::Arc<Algebra>) -> Vec<PerfectComplex> {
    let mut out = Vec::new();
    for v in 0..alg.num_vertices() {
        let p = PerfectComplex::stalk(alg, &[v], 0);
        out.push(p.shift(1));
        out.push(p);
        if let Ok(c) = presentation_complex(&Representation::simple(alg, v)) {
            out.push(c);
        }
        if let Ok(h) = heart_complex(alg, v) {
            out.push(h);
        }
        if let Ok(c) = nu_chain(alg, v, 1) {
            out.push(c);
        }
    }
    out
}

/// Check a triangle `A -> B -> C -> A[1]` for the Auslander-Reiten
/// properties. `sample` lists test objects for the lifting property; `C`
/// itself is always tested.
pub fn verify_ar_triangle(t: &Triangle, sample: &[PerfectComplex]) -> TriangleReport {
    let mut r = TriangleReport::default();
    r.push("w not null-homotopic", is_nullhomotopic(&t.w).map(|n| pass_if(!n, "w is null-homotopic")));
    let rad_c = radical_endomorphisms(&t.c).map(|x| x.1);
    let hom_w = hom_k(&t.c, t.w.target());
    r.push(
        "w kills rad End(C)",
        rad_c.as_ref().map_err(clone_err).and_then(|rad| {
            let h = hom_w.as_ref().map_err(clone_err)?;
            for f in rad {
                if !h.is_null(&f.then(&t.w))? {
                    return Ok(Outcome::Fail("some radical endomorphism composed with w is not null-homotopic".into()));
                }
            }
            Ok(Outcome::Pass)
        }),
    );
    r.push(
        "rad End(A[1]) kills w",
        radical_endomorphisms(t.w.target()).and_then(|(_, rad)| {
            let h = hom_w.as_ref().map_err(clone_err)?;
            for s in &rad {
                if !h.is_null(&t.w.then(s))? {
                    return Ok(Outcome::Fail("w composed with a radical endomorphism is not null-homotopic".into()));
                }
            }
            Ok(Outcome::Pass)
        }),
    );
    r.push("v after u null-homotopic", is_nullhomotopic(&t.u.then(&t.v)).map(|n| pass_if(n, "v u is not null")));
    r.push("middle is the cone of w[-1]", middle_is_cone(t));
    r.push("lifting property", lifting(t, sample, rad_c.ok()));
    r.push("homology splice", splice(t));
    r
}

fn clone_err(e: &Error) -> Error {
    Error::Invalid(e.to_string())
}

fn pass_if(ok: bool, msg: &str) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(msg.into())
    }
}

fn middle_is_cone(t: &Triangle) -> Result<Outcome> {
    let cone = PerfectComplex::mapping_cone(&t.w).shift(-1);
    Ok(pass_if(complex_iso(&cone, &t.b, 0)?.is_some(), "B is not homotopy equivalent to the cone"))
}

/// Every non-split-epi map from an indecomposable test object to `C`
/// factors through `v` up to homotopy.
fn lifting(t: &Triangle, sample: &[PerfectComplex], rad_c: Option<Vec<ComplexMap>>) -> Result<Outcome> {
    let c = minimal(&t.c)?;
    let rad_c = match rad_c {
        Some(r) => r,
        None => radical_endomorphisms(&c)?.1,
    };
    let mut objects = vec![c.clone()];
    for x in sample {
        for s in decompose_complex(x, 0)? {
            objects.push(s.complex);
        }
    }
    for w in &objects {
        let maps: Vec<ComplexMap> = match complex_iso(w, &c, 0)? {
            Some(phi) => rad_c.iter().map(|r| phi.then(r)).collect(),
            None => hom_k(w, &c)?.basis(),
        };
        if maps.is_empty() {
            continue;
        }
        let hwc = hom_k(w, &c)?;
        let lifts = hom_k(w, &t.b)?.basis();
        let pushed: Vec<ComplexMap> = lifts.iter().map(|g| g.then(&t.v)).collect();
        let fld = c.algebra().field();
        let mut m = Matrix::zeros(fld, hwc.dim(), pushed.len());
        for (j, g) in pushed.iter().enumerate() {
            for (i, x) in hwc.class_of(g)?.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        for f in &maps {
            let target = Matrix::col_vector(fld, &hwc.class_of(f)?);
            let ok = if pushed.is_empty() { target.is_zero() } else { m.solve(&target)?.is_some() };
            if !ok {
                return Ok(Outcome::Fail(format!("a non-split-epi map from a {}-summand object does not lift", w.num_summands())));
            }
        }
    }
    Ok(Outcome::Pass)
}

/// `0 -> H_i(A) -> H_i(B) -> H_i(C) -> 0` exact in every degree, unless `C`
/// is a shifted stalk projective.
fn splice(t: &Triangle) -> Result<Outcome> {
    if let Some(d) = t.c.stalk_projective_degree() {
        return Ok(Outcome::Skipped(format!("third term is a stalk projective in degree {d}")));
    }
    let parts = [&t.a, &t.b, &t.c];
    let lo = parts.iter().filter(|x| !x.is_zero()).map(|x| x.lo()).min().unwrap_or(0);
    let hi = parts.iter().filter(|x| !x.is_zero()).map(|x| x.hi()).max().unwrap_or(-1);
    for i in lo..=hi {
        let (ha, hb, hc) = (homology(&t.a, i)?, homology(&t.b, i)?, homology(&t.c, i)?);
        let hu = homology_map(&t.u, &ha, &hb)?;
        let hv = homology_map(&t.v, &hb, &hc)?;
        let exact = hu.is_injective()
            && hv.is_surjective()
            && hu.then(&hv).is_zero()
            && hb.dim() == ha.dim() + hc.dim();
        if !exact {
            return Ok(Outcome::Fail(format!("degree {i}: dims {} -> {} -> {} not short exact", ha.dim(), hb.dim(), hc.dim())));
        }
    }
    Ok(Outcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::complex::is_indecomposable;

    fn path(a: &Algebra, k: usize) -> Vec<u64> {
        a.path_elem(&vec![0; k], 0).unwrap()
    }

    fn two_term(a: &std::sync::Arc<Algebra>, x: Vec<u64>) -> PerfectComplex {
        let mut m = ProjMat::zero(a, &[0], &[0]);
        m.set(0, 0, x);
        PerfectComplex::new(a, 0, vec![vec![0], vec![0]], vec![m]).unwrap()
    }

    #[test]
    fn socle_map_of_stalks() {
        for (n, k) in [(2, 1), (3, 2)] {
            let a = build_algebra(&fixtures::kt(n, 3)).unwrap();
            let p = PerfectComplex::stalk(&a, &[0], 0);
            let w = socle_connecting_maps(&p).unwrap();
            assert_eq!(w.len(), 1);
            let x = w[0].component(0).get(0, 0).to_vec();
            // a nonzero multiple of t^k
            let c = x.iter().find(|&&c| c != 0).copied().unwrap();
            assert_eq!(x, a.scale(&path(&a, k), c));
        }
        let a = build_algebra(&fixtures::nakayama(2, 2, 3)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let w = socle_connecting_map(&p).unwrap();
        assert_eq!(w.target().term(0), &[1]);
        assert!(!w.is_zero());
    }

    #[test]
    fn triangle_at_stalk_over_dual_numbers() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let t = ar_triangle_ending_at(&p).unwrap();
        let expect = two_term(&a, path(&a, 1)).shift(-1);
        assert!(complex_iso(&t.b, &expect, 0).unwrap().is_some());
        let rep = verify_ar_triangle(&t, &sample_objects(&a));
        assert!(rep.passed(), "{:?}", rep.failures());
        assert!(matches!(rep.outcome("homology splice"), Some(Outcome::Skipped(_))));
    }

    #[test]
    fn middle_at_presentation_of_simple_over_kt3() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let z = two_term(&a, path(&a, 2));
        let t = ar_triangle_ending_at(&z).unwrap();
        let parts = decompose_complex(&t.b, 0).unwrap();
        assert_eq!(parts.len(), 2);
        let expect = PerfectComplex::direct_sum(&[&PerfectComplex::stalk(&a, &[0], 0), &heart_complex(&a, 0).unwrap()]).unwrap();
        assert!(complex_iso(&t.b, &expect, 0).unwrap().is_some());
        let rep = verify_ar_triangle(&t, &sample_objects(&a));
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn rim_complex_has_indecomposable_middle() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let z = two_term(&a, path(&a, 1));
        let t = ar_triangle_ending_at(&z).unwrap();
        assert!(is_indecomposable(&t.b, 0).unwrap());
        let rep = verify_ar_triangle(&t, &sample_objects(&a));
        assert_eq!(rep.outcome("homology splice"), Some(&Outcome::Pass));
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn corrupted_connecting_map_fails() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let mut t = ar_triangle_ending_at(&p).unwrap();
        let mut m = ProjMat::zero(&a, &[0], &[0]);
        m.set(0, 0, path(&a, 1));
        let r = ComplexMap::new(&p, &p, [(0, m)].into()).unwrap();
        t.w = r.then(&t.w);
        let rep = verify_ar_triangle(&t, &[]);
        assert!(matches!(rep.outcome("w not null-homotopic"), Some(Outcome::Fail(_))));
    }

    #[test]
    fn starting_triangles() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let t = ar_triangle_starting_at(&p).unwrap();
        assert_eq!(t.a, p);
        assert_eq!(t.c, p.shift(1));
        let n = build_algebra(&fixtures::nakayama(2, 2, 3)).unwrap();
        let p = PerfectComplex::stalk(&n, &[0], 0);
        let t = ar_triangle_starting_at(&p).unwrap();
        assert_eq!(t.c, PerfectComplex::stalk(&n, &[1], 1));
    }

    #[test]
    fn shifting_commutes_with_the_construction() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let z = two_term(&a, path(&a, 1));
        let t0 = ar_triangle_ending_at(&z).unwrap();
        let t1 = ar_triangle_ending_at(&z.shift(1)).unwrap();
        assert!(complex_iso(&t1.b, &t0.b.shift(1), 0).unwrap().is_some());
    }

    #[test]
    fn other_socle_choices_give_isomorphic_middles() {
        let a = build_algebra(&fixtures::nakayama(3, 3, 3)).unwrap();
        let z = presentation_complex(&Representation::simple(&a, 0)).unwrap();
        let w = socle_connecting_map(&z).unwrap();
        let t0 = triangle_on(&w).unwrap();
        let t1 = triangle_on(&w.scale(2)).unwrap();
        assert!(complex_iso(&t0.b, &t1.b, 0).unwrap().is_some());
    }
}
