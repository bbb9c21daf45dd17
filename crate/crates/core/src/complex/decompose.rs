use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::endo::ReducedEnd;
use super::{hom_k, minimize, ComplexMap, PerfectComplex, ProjMat};
use crate::ar::radical::Locality;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, Poly};
use crate::DEFAULT_BUDGET;

const EXHAUSTIVE_CAP: u64 = 1 << 20;
const EXHAUSTIVE_MAX_DIM: usize = 12;

/// An indecomposable summand of a complex `X` with maps `inclusion` into
/// and `projection` out of `X`; `inclusion` then `projection` is homotopic
/// to the identity.
#[derive(Clone, Debug)]
pub struct ComplexSummand {
    pub complex: PerfectComplex,
    pub inclusion: ComplexMap,
    pub projection: ComplexMap,
}

/// Indecomposable summands of the minimal model of `x`, with maps to and
/// from `x` itself.
pub fn decompose_complex(x: &PerfectComplex, seed: u64) -> Result<Vec<ComplexSummand>> {
    let min = minimize(x)?;
    let m = &min.complex;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    split_rec(m, &ComplexMap::identity(m), &ComplexMap::identity(m), &mut rng, &mut out)?;
    for s in &mut out {
        s.inclusion = s.inclusion.then(&min.from_min);
        s.projection = min.to_min.then(&s.projection);
    }
    Ok(out)
}

/// Whether `End_K(X)` is local for the minimal model of `x` (nonzero).
pub fn is_indecomposable(x: &PerfectComplex, seed: u64) -> Result<bool> {
    let m = if x.is_minimal() { x.clone() } else { minimize(x)?.complex };
    if m.is_zero() {
        return Ok(false);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match end_locality(&m, &mut rng)? {
        (Locality::Local, _) => Ok(true),
        (Locality::NotLocal(_), _) => Ok(false),
        (Locality::Inconclusive, _) => Err(Error::DecompositionInconclusive(DEFAULT_BUDGET)),
    }
}

fn end_locality<R: Rng>(m: &PerfectComplex, rng: &mut R) -> Result<(Locality, super::HomK)> {
    let end = ReducedEnd::new(m)?;
    Ok((end.locality(rng, DEFAULT_BUDGET)?, end.hom))
}

fn split_rec(
    x: &PerfectComplex,
    incl: &ComplexMap,
    proj: &ComplexMap,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<ComplexSummand>,
) -> Result<()> {
    if x.is_zero() {
        return Ok(());
    }
    let f = match end_locality(x, rng)? {
        (Locality::Local, _) => {
            out.push(ComplexSummand { complex: x.clone(), inclusion: incl.clone(), projection: proj.clone() });
            return Ok(());
        }
        (Locality::NotLocal(c), h) => h.combination(&c),
        (Locality::Inconclusive, _) => return Err(Error::DecompositionInconclusive(DEFAULT_BUDGET)),
    };
    let e = chain_idempotent(&f, rng)?.ok_or(Error::DecompositionInconclusive(DEFAULT_BUDGET))?;
    let parts = split_by_idempotent(x, &e)?;
    for (part, part_incl, part_proj) in parts {
        split_rec(&part, &part_incl.then(incl), &proj.then(&part_proj), rng, out)?;
    }
    Ok(())
}

/// An idempotent chain endomorphism, polynomial in `f`, splitting off the
/// generalized eigenspace of one irreducible factor of the characteristic
/// polynomial of the reduction of `f`. `None` when that polynomial is
/// primary.
fn chain_idempotent<R: Rng>(f: &ComplexMap, rng: &mut R) -> Result<Option<ComplexMap>> {
    let x = f.source();
    let alg = x.algebra();
    let fld = alg.field();
    let blocks: Vec<Matrix> = x.degrees().map(|d| f.reduction(d)).collect();
    let bar = Matrix::block_diag(fld, &blocks);
    let chi = bar.characteristic_polynomial()?;
    let factors = chi.factor(rng);
    if factors.len() < 2 {
        return Ok(None);
    }
    // chi(f) has radical entries, so chi^N annihilates f
    let n = alg.nilpotency_bound();
    let (g, a) = &factors[0];
    let mut big_g = Poly::one(fld);
    for _ in 0..a * n {
        big_g = big_g.mul(g);
    }
    let (h, r) = chi.divrem(&poly_pow(g, *a));
    debug_assert!(r.is_zero());
    let big_h = poly_pow(&h, n);
    let (d, s, _) = big_h.xgcd(&big_g);
    debug_assert!(d.is_one());
    let e_poly = s.mul(&big_h).rem(&big_g.mul(&big_h));
    let e = eval_chain(&e_poly, f);
    debug_assert!(e.then(&e).sub(&e).is_zero());
    Ok(Some(e))
}

fn poly_pow(p: &Poly, k: usize) -> Poly {
    let mut out = Poly::one(p.field());
    for _ in 0..k {
        out = out.mul(p);
    }
    out
}

fn eval_chain(p: &Poly, f: &ComplexMap) -> ComplexMap {
    let id = ComplexMap::identity(f.source());
    let mut acc = ComplexMap::zero(f.source(), f.target());
    for &c in p.coeffs().iter().rev() {
        acc = acc.then(f).add(&id.scale(c));
    }
    acc
}

/// Split `x = im e + im (1 - e)` using a change of basis in each degree
/// whose rows are rows of `e` and of `1 - e`.
fn split_by_idempotent(x: &PerfectComplex, e: &ComplexMap) -> Result<Vec<(PerfectComplex, ComplexMap, ComplexMap)>> {
    let alg = x.algebra();
    let fld = alg.field();
    let id = ComplexMap::identity(x);
    let one_minus = id.sub(e);
    let mut t = std::collections::BTreeMap::new();
    let mut t_inv = std::collections::BTreeMap::new();
    let mut sizes = std::collections::BTreeMap::new();
    for d in x.degrees() {
        let n = x.term(d).len();
        let pick = |m: &ProjMat| {
            let bar = m.reduction(alg);
            let mut ech = Echelon::new(fld, n);
            (0..n).filter(|&i| ech.insert(bar.row(i))).collect::<Vec<_>>()
        };
        let (ed, fd) = (e.component(d), one_minus.component(d));
        let s1 = pick(&ed);
        let s2 = pick(&fd);
        let td = ed.select_rows(&s1).vstack(alg, &fd.select_rows(&s2));
        let inv = td.inverse(alg).ok_or_else(|| Error::Inconsistent("idempotent rows do not form a basis".into()))?;
        sizes.insert(d, s1.len());
        t.insert(d, td);
        t_inv.insert(d, inv);
    }
    let mut parts = Vec::new();
    for first in [true, false] {
        let mut terms = std::collections::BTreeMap::new();
        let mut diffs = std::collections::BTreeMap::new();
        let mut incl = std::collections::BTreeMap::new();
        let mut proj = std::collections::BTreeMap::new();
        let sel = |d: i64| -> Vec<usize> {
            let n = x.term(d).len();
            let k = sizes.get(&d).copied().unwrap_or(0);
            if first { (0..k).collect() } else { (k..n).collect() }
        };
        for d in x.degrees() {
            let idx = sel(d);
            terms.insert(d, idx.iter().map(|&i| t[&d].rows()[i]).collect::<Vec<_>>());
            incl.insert(d, t[&d].select_rows(&idx));
            proj.insert(d, t_inv[&d].select_cols(&idx));
        }
        for d in x.lo() + 1..=x.hi() {
            let full = t[&d].mul(alg, &x.diff(d)).mul(alg, &t_inv[&(d - 1)]);
            let (r, c) = (sel(d), sel(d - 1));
            let other_c: Vec<usize> = (0..x.term(d - 1).len()).filter(|i| !c.contains(i)).collect();
            if !full.select_rows(&r).select_cols(&other_c).is_zero() {
                return Err(Error::Inconsistent("idempotent does not split the differential".into()));
            }
            diffs.insert(d, full.select_rows(&r).select_cols(&c));
        }
        let part = PerfectComplex::from_degrees(alg, &terms, &diffs)?;
        let i = ComplexMap::new_unchecked(&part, x, incl)?;
        let p = ComplexMap::new_unchecked(x, &part, proj)?;
        debug_assert!(i.is_chain_map() && p.is_chain_map());
        parts.push((part, i, p));
    }
    Ok(parts)
}

/// Isomorphism between the minimal models of `x` and `y`, if any. The
/// returned map goes between the minimal models.
pub fn complex_iso(x: &PerfectComplex, y: &PerfectComplex, seed: u64) -> Result<Option<ComplexMap>> {
    x.require_same_algebra(y)?;
    let mx = if x.is_minimal() { x.clone() } else { minimize(x)?.complex };
    let my = if y.is_minimal() { y.clone() } else { minimize(y)?.complex };
    if mx.is_zero() || my.is_zero() {
        return Ok((mx.is_zero() && my.is_zero()).then(|| ComplexMap::zero(&mx, &my)));
    }
    if !same_terms(&mx, &my) {
        return Ok(None);
    }
    let h = hom_k(&mx, &my)?;
    let basis = h.basis();
    if let Some(f) = basis.iter().find(|f| f.is_invertible()) {
        return Ok(Some(f.clone()));
    }
    let p = mx.algebra().field().p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_BUDGET {
        let c: Vec<u64> = (0..h.dim()).map(|_| rng.gen_range(0..p)).collect();
        let f = h.combination(&c);
        if f.is_invertible() {
            return Ok(Some(f));
        }
    }
    let k = h.dim();
    if k <= EXHAUSTIVE_MAX_DIM && (p as f64).powi(k as i32) <= EXHAUSTIVE_CAP as f64 {
        let total = p.pow(k as u32);
        for n in 0..total {
            let mut c = Vec::with_capacity(k);
            let mut r = n;
            for _ in 0..k {
                c.push(r % p);
                r /= p;
            }
            let f = h.combination(&c);
            if f.is_invertible() {
                return Ok(Some(f));
            }
        }
        return Ok(None);
    }
    iso_by_decomposition(&mx, &my, seed)
}

fn same_terms(x: &PerfectComplex, y: &PerfectComplex) -> bool {
    if x.lo() != y.lo() || x.hi() != y.hi() {
        return false;
    }
    x.degrees().all(|d| {
        let mut a = x.term(d).to_vec();
        let mut b = y.term(d).to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    })
}

/// Decide isomorphism of minimal complexes by matching indecomposable
/// summands, each match decided through the radical of `End_K`.
fn iso_by_decomposition(x: &PerfectComplex, y: &PerfectComplex, seed: u64) -> Result<Option<ComplexMap>> {
    let xs = decompose_complex(x, seed)?;
    let ys = decompose_complex(y, seed)?;
    if xs.len() != ys.len() {
        return Ok(None);
    }
    let mut used = vec![false; ys.len()];
    let mut total = ComplexMap::zero(x, y);
    for a in &xs {
        let mut matched = false;
        for (j, b) in ys.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(f) = iso_indecomposable(&a.complex, &b.complex)? {
                used[j] = true;
                matched = true;
                total = total.add(&a.projection.then(&f).then(&b.inclusion));
                break;
            }
        }
        if !matched {
            return Ok(None);
        }
    }
    debug_assert!(total.is_invertible());
    Ok(Some(total))
}

/// For minimal indecomposable complexes: `X = Y` iff some composite of basis
/// maps `X -> Y -> X` lies outside the radical of the local ring
/// `End_K(X)`, that is, is invertible.
pub(crate) fn iso_indecomposable(x: &PerfectComplex, y: &PerfectComplex) -> Result<Option<ComplexMap>> {
    if !same_terms(x, y) {
        return Ok(None);
    }
    let xy = hom_k(x, y)?.basis();
    if let Some(f) = xy.iter().find(|f| f.is_invertible()) {
        return Ok(Some(f.clone()));
    }
    let yx = hom_k(y, x)?.basis();
    for f in &xy {
        if yx.iter().any(|g| f.then(g).is_invertible()) {
            return Ok(Some(f.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_term;
    use super::*;
    use crate::algebra::{build_algebra, fixtures};

    #[test]
    fn stalk_projective_is_indecomposable() {
        let a = build_algebra(&fixtures::nakayama(2, 3, 3)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        assert!(is_indecomposable(&p, 0).unwrap());
        assert_eq!(decompose_complex(&p, 0).unwrap().len(), 1);
    }

    #[test]
    fn sum_splits_into_parts() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let x = two_term(&a, a.path_elem(&[0], 0).unwrap());
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let s = PerfectComplex::direct_sum(&[&x, &p, &x.shift(2)]).unwrap();
        assert!(!is_indecomposable(&s, 1).unwrap());
        let parts = decompose_complex(&s, 1).unwrap();
        assert_eq!(parts.len(), 3);
        let mut lens: Vec<usize> = parts.iter().map(|c| c.complex.num_summands()).collect();
        lens.sort();
        assert_eq!(lens, vec![1, 2, 2]);
        for c in &parts {
            let back = c.inclusion.then(&c.projection).sub(&ComplexMap::identity(&c.complex));
            assert!(super::super::is_nullhomotopic(&back).unwrap());
        }
    }

    #[test]
    fn permuted_summands_are_isomorphic() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let x = two_term(&a, a.path_elem(&[0], 0).unwrap());
        let y = two_term(&a, a.path_elem(&[0, 0], 0).unwrap());
        let s1 = PerfectComplex::direct_sum(&[&x, &y]).unwrap();
        let s2 = PerfectComplex::direct_sum(&[&y, &x]).unwrap();
        assert!(complex_iso(&s1, &s2, 0).unwrap().is_some());
        assert!(complex_iso(&x, &y, 0).unwrap().is_none());
        assert!(iso_indecomposable(&x, &x).unwrap().is_some());
    }
}
