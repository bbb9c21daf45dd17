use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_space, random_map, ModuleMap, Representation};
use crate::ar::radical::{algebra_radical, locality, FdAlgebra, Locality};
use crate::error::{Error, Result};
use crate::linalg::subspace::{self, Coordinatizer};
use crate::linalg::{Matrix, Poly};
use crate::DEFAULT_BUDGET;

/// Exhaustive Hom searches stop at this many candidates.
const EXHAUSTIVE_CAP: u64 = 1 << 20;
const EXHAUSTIVE_MAX_DIM: usize = 12;

/// An indecomposable direct summand with its inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

/// `End_A(M)` as an abstract algebra with product `x * y = x after y`,
/// together with the basis maps.
pub fn end_algebra(m: &Representation) -> Result<(FdAlgebra, Vec<ModuleMap>)> {
    let basis = hom_space(m, m)?;
    let f = m.field();
    if basis.is_empty() {
        return Ok((FdAlgebra::new(f, 0, Vec::new())?, basis));
    }
    let rows: Vec<Vec<u64>> = basis.iter().map(|g| g.flatten()).collect();
    let coord = Coordinatizer::new(&Matrix::from_row_vecs(f, rows[0].len(), &rows));
    let alg = FdAlgebra::from_fn(f, basis.len(), |i, j| {
        coord.coords(&basis[j].then(&basis[i]).flatten()).expect("End is closed under composition")
    })?;
    Ok((alg, basis))
}

/// Idempotent polynomial in `f` projecting onto the generalized eigenspace
/// of one irreducible factor of its characteristic polynomial; `None` when
/// that polynomial is a power of a single irreducible.
pub(crate) fn splitting_idempotent<R: Rng>(f: &Matrix, rng: &mut R) -> Result<Option<Matrix>> {
    let chi = f.characteristic_polynomial()?;
    let factors = chi.factor(rng);
    if factors.len() < 2 {
        return Ok(None);
    }
    let (g, a) = &factors[0];
    let mut ga = Poly::one(chi.field());
    for _ in 0..*a {
        ga = ga.mul(g);
    }
    let (h, r) = chi.divrem(&ga);
    debug_assert!(r.is_zero());
    let (d, s, _) = h.xgcd(&ga);
    debug_assert!(d.is_one());
    let e_poly = s.mul(&h).rem(&chi);
    let e = e_poly.eval_matrix(f);
    debug_assert_eq!(e.mul(&e), e);
    Ok(Some(e))
}

/// Split `m` into indecomposable summands with inclusions and projections.
pub fn decompose_summands(m: &Representation, seed: u64) -> Result<Vec<Summand>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    split_rec(m, &ModuleMap::identity(m), &ModuleMap::identity(m), &mut rng, &mut out)?;
    Ok(out)
}

fn split_rec(
    m: &Representation,
    incl: &ModuleMap,
    proj: &ModuleMap,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Summand>,
) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    let (end, basis) = end_algebra(m)?;
    let leaf = |out: &mut Vec<Summand>| {
        out.push(Summand { module: m.clone(), inclusion: incl.clone(), projection: proj.clone() });
    };
    if basis.len() == 1 {
        leaf(out);
        return Ok(());
    }
    let rad = algebra_radical(&end)?;
    let e = match locality(&end, &rad, rng, DEFAULT_BUDGET)? {
        Locality::Local => {
            leaf(out);
            return Ok(());
        }
        Locality::NotLocal(c) => {
            let f = ModuleMap::combination(&basis, &c, m, m);
            splitting_idempotent(&f.total_matrix(), rng)?.ok_or(Error::DecompositionInconclusive(DEFAULT_BUDGET))?
        }
        Locality::Inconclusive => return Err(Error::DecompositionInconclusive(DEFAULT_BUDGET)),
    };
    let off = m.offsets();
    let fld = m.field();
    let ev: Vec<Matrix> = (0..m.dims().len()).map(|v| e.block(off[v], off[v], m.dims()[v], m.dims()[v])).collect();
    for part in [ev.clone(), ev.iter().map(|x| Matrix::identity(fld, x.rows()).sub(x)).collect::<Vec<_>>()] {
        let spaces: Vec<Matrix> = part.iter().map(|x| subspace::row_basis(&x.transpose())).collect();
        let (sub, sub_incl) = m.submodule(&spaces)?;
        // projection: x -> part(x) in the coordinates of the image
        let sub_proj = ModuleMap {
            maps: part
                .iter()
                .zip(&spaces)
                .map(|(x, b)| {
                    if b.rows() == 0 {
                        return Matrix::zeros(fld, 0, x.cols());
                    }
                    let c = Coordinatizer::new(b);
                    let cols: Vec<Vec<u64>> = (0..x.cols()).map(|j| c.coords(&x.col(j)).expect("in image")).collect();
                    Matrix::from_row_vecs(fld, b.rows(), &cols).transpose()
                })
                .collect(),
        };
        split_rec(&sub, &sub_incl.then(incl), &proj.then(&sub_proj), rng, out)?;
    }
    Ok(())
}

/// Indecomposable summands grouped into isomorphism classes with multiplicities.
pub fn decompose(m: &Representation, seed: u64) -> Result<Vec<(Representation, usize)>> {
    let leaves = decompose_summands(m, seed)?;
    let mut classes: Vec<(Representation, usize)> = Vec::new();
    for s in leaves {
        let mut found = false;
        for (rep, mult) in classes.iter_mut() {
            if iso_indecomposable(rep, &s.module)?.is_some() {
                *mult += 1;
                found = true;
                break;
            }
        }
        if !found {
            classes.push((s.module, 1));
        }
    }
    Ok(classes)
}

/// Isomorphism test for indecomposables: `M = N` iff some composite
/// `N -> M` after `M -> N` of basis maps leaves the radical of `End(M)`, and
/// then that first basis map is an isomorphism.
pub(crate) fn iso_indecomposable(m: &Representation, n: &Representation) -> Result<Option<ModuleMap>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let mn = hom_space(m, n)?;
    let nm = hom_space(n, m)?;
    if mn.is_empty() || nm.is_empty() {
        return Ok(None);
    }
    if let Some(f) = mn.iter().find(|f| f.is_isomorphism()) {
        return Ok(Some(f.clone()));
    }
    let (end, basis) = end_algebra(m)?;
    let rad = algebra_radical(&end)?;
    let fld = m.field();
    let rows: Vec<Vec<u64>> = basis.iter().map(|g| g.flatten()).collect();
    let coord = Coordinatizer::new(&Matrix::from_row_vecs(fld, rows[0].len(), &rows));
    for f in &mn {
        for g in &nm {
            let c = coord.coords(&f.then(g).flatten()).expect("endomorphism");
            if !subspace::contains(&rad, &c)? {
                debug_assert!(f.is_isomorphism());
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

/// Search for an isomorphism `M -> N`. `Ok(None)` is a definite negative.
pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64) -> Result<Option<ModuleMap>> {
    m.require_same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let mn = hom_space(m, n)?;
    let nm = hom_space(n, m)?;
    if mn.len() != nm.len() || mn.is_empty() {
        return Ok(None);
    }
    if hom_space(m, m)?.len() != mn.len() {
        return Ok(None);
    }
    if let Some(f) = mn.iter().find(|f| f.is_isomorphism()) {
        return Ok(Some(f.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_BUDGET {
        let f = random_map(&mn, m, n, &mut rng);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    let p = m.field().p();
    let k = mn.len();
    if k <= EXHAUSTIVE_MAX_DIM && (p as u128).pow(k as u32) <= EXHAUSTIVE_CAP as u128 {
        let total = p.pow(k as u32);
        for idx in 1..total {
            let mut c = Vec::with_capacity(k);
            let mut x = idx;
            for _ in 0..k {
                c.push(x % p);
                x /= p;
            }
            let f = ModuleMap::combination(&mn, &c, m, n);
            if f.is_isomorphism() {
                return Ok(Some(f));
            }
        }
        return Ok(None);
    }
    iso_by_decomposition(m, n, seed)
}

fn iso_by_decomposition(m: &Representation, n: &Representation, seed: u64) -> Result<Option<ModuleMap>> {
    let sm = decompose_summands(m, seed).map_err(|_| Error::IsoInconclusive(DEFAULT_BUDGET))?;
    let sn = decompose_summands(n, seed).map_err(|_| Error::IsoInconclusive(DEFAULT_BUDGET))?;
    if sm.len() != sn.len() {
        return Ok(None);
    }
    let mut used = vec![false; sn.len()];
    let mut total = ModuleMap::zero(m, n);
    for a in &sm {
        let mut matched = false;
        for (j, b) in sn.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(phi) = iso_indecomposable(&a.module, &b.module)? {
                total = total.add(&a.projection.then(&phi).then(&b.inclusion));
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    if !total.is_isomorphism() {
        return Err(Error::IsoInconclusive(DEFAULT_BUDGET));
    }
    Ok(Some(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, fixtures, Algebra};
    use std::sync::Arc;

    fn jordan(alg: &Arc<Algebra>, i: usize) -> Representation {
        let t = Matrix::from_fn(alg.field(), i, i, |r, c| u64::from(r == c + 1));
        Representation::new(alg.clone(), vec![i], vec![t]).unwrap()
    }

    #[test]
    fn j1_plus_j2_splits() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let m = Representation::direct_sum(&[&jordan(&a, 1), &jordan(&a, 2)]).unwrap();
        let parts = decompose_summands(&m, 1).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|s| s.module.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        for s in &parts {
            assert!(s.inclusion.is_homomorphism(&s.module, &m));
            assert!(s.projection.is_homomorphism(&m, &s.module));
            assert!(s.inclusion.then(&s.projection) == ModuleMap::identity(&s.module));
        }
    }

    #[test]
    fn projective_is_indecomposable() {
        let a = build_algebra(&fixtures::nakayama(2, 3, 2)).unwrap();
        let d = decompose(&Representation::projective(&a, 0), 0).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 1);
    }

    #[test]
    fn isotypic_semisimple() {
        let a = build_algebra(&fixtures::kt(3, 2)).unwrap();
        let j1 = jordan(&a, 1);
        let m = Representation::direct_sum(&[&j1, &j1, &j1]).unwrap();
        let d = decompose(&m, 3).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, 3);
        assert_eq!(d[0].0.dim(), 1);
    }

    #[test]
    fn iso_tests() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let (j1, j2) = (jordan(&a, 1), jordan(&a, 2));
        assert!(is_isomorphic(&j2, &j2, 0).unwrap().is_some());
        assert!(is_isomorphic(&j1, &j2, 0).unwrap().is_none());
        let g = Matrix::from_rows(a.field(), &[vec![2, 1], vec![1, 1]]);
        let j2c = j2.conjugate(&[g]).unwrap();
        assert_ne!(j2c.arrow_matrix(0), j2.arrow_matrix(0));
        let phi = is_isomorphic(&j2, &j2c, 0).unwrap().unwrap();
        assert!(phi.is_homomorphism(&j2, &j2c) && phi.is_isomorphism());
        // same dimension, not isomorphic
        let j1j1 = Representation::direct_sum(&[&j1, &j1]).unwrap();
        assert!(is_isomorphic(&j1j1, &j2, 0).unwrap().is_none());
    }

    #[test]
    fn decomposition_agrees_across_seeds() {
        let a = build_algebra(&fixtures::nakayama(2, 3, 2)).unwrap();
        let s0 = Representation::simple(&a, 0);
        let p1 = Representation::projective(&a, 1);
        let m = Representation::direct_sum(&[&s0, &p1, &s0]).unwrap();
        let d1 = decompose(&m, 1).unwrap();
        let d2 = decompose(&m, 99).unwrap();
        assert_eq!(d1.len(), d2.len());
        for (x, k) in &d1 {
            assert!(d2.iter().any(|(y, l)| k == l && is_isomorphic(x, y, 0).unwrap().is_some()));
        }
    }
}
