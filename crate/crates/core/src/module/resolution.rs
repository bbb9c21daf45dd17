use std::sync::Arc;

use super::{hom_space, FreeLayout, ModuleMap, Representation};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::subspace::{Coordinatizer, Quotient};
use crate::linalg::Matrix;

/// A projective cover `P -> M`, with the generator images in `M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub layout: FreeLayout,
    pub projective: Representation,
    pub map: ModuleMap,
    /// `gens[s]` is the image of `e_{v_s}`, a vector in `e_{v_s} M`.
    pub gens: Vec<Vec<u64>>,
}

/// Projective cover: one copy of `A e_v` for each basis vector of the top
/// at `v`, generators chosen among standard basis vectors outside the radical.
pub fn projective_cover(m: &Representation) -> Result<Cover> {
    if m.is_zero() {
        return Err(Error::Precondition("projective cover of the zero module".into()));
    }
    let rad = m.radical_spaces();
    let mut summands = Vec::new();
    let mut gens = Vec::new();
    for (v, r) in rad.iter().enumerate() {
        let q = Quotient::new(r);
        for &j in q.complement_cols() {
            let mut g = vec![0; m.dims()[v]];
            g[j] = 1;
            summands.push(v);
            gens.push(g);
        }
    }
    let layout = FreeLayout::new(m.algebra(), &summands);
    let projective = layout.representation();
    let map = layout.map_to(m, &gens);
    debug_assert!(map.is_surjective());
    Ok(Cover { layout, projective, map, gens })
}

/// `Omega M`, the kernel of the projective cover, with its inclusion into
/// the cover. The syzygy of zero is zero.
pub fn syzygy(m: &Representation) -> Result<(Representation, ModuleMap, Option<Cover>)> {
    if m.is_zero() {
        let z = Representation::zero(m.algebra());
        let id = ModuleMap::identity(&z);
        return Ok((z, id, None));
    }
    let cover = projective_cover(m)?;
    let (k, incl) = cover.map.kernel(&cover.projective)?;
    Ok((k, incl, Some(cover)))
}

/// The dual `D M = Hom_k(M, k)` as a module over the opposite algebra.
pub fn dual(m: &Representation) -> Representation {
    dual_to(m, &m.algebra().opposite()).expect("opposite algebra matches")
}

/// The dual of `m` as a module over `target`, which must have the same
/// vertices and reversed arrows.
pub fn dual_to(m: &Representation, target: &Arc<Algebra>) -> Result<Representation> {
    let src = m.algebra();
    if target.num_vertices() != src.num_vertices() || target.num_arrows() != src.num_arrows() {
        return Err(Error::AlgebraMismatch);
    }
    for ai in 0..src.num_arrows() {
        let (a, b) = (src.arrow(ai), target.arrow(ai));
        if a.source != b.target || a.target != b.source {
            return Err(Error::AlgebraMismatch);
        }
    }
    let arrows = m.arrow_matrices().iter().map(|x| x.transpose()).collect();
    Ok(Representation::new_unchecked(target.clone(), m.dims().to_vec(), arrows))
}

/// `Omega^-1 M = D(Omega_{A^op}(D M))`.
pub fn cosyzygy(m: &Representation) -> Result<Representation> {
    m.algebra().require_self_injective()?;
    let dm = dual(m);
    let (k, _, _) = syzygy(&dm)?;
    dual_to(&k, m.algebra())
}

/// Module-level Nakayama functor `nu M = D Hom_A(M, A)`, computed vertex by
/// vertex as `D Hom(M, A e_w)`.
pub fn nakayama_module(m: &Representation) -> Result<Representation> {
    let alg = m.algebra();
    let f = alg.field();
    let nv = alg.num_vertices();
    let projs: Vec<Representation> = (0..nv).map(|w| Representation::projective(alg, w)).collect();
    let homs: Vec<Vec<ModuleMap>> = projs.iter().map(|p| hom_space(m, p)).collect::<Result<_>>()?;
    let coords: Vec<Option<Coordinatizer>> = homs
        .iter()
        .map(|h| {
            if h.is_empty() {
                None
            } else {
                let rows: Vec<Vec<u64>> = h.iter().map(|g| g.flatten()).collect();
                Some(Coordinatizer::new(&Matrix::from_row_vecs(f, rows[0].len(), &rows)))
            }
        })
        .collect();
    let dims: Vec<usize> = homs.iter().map(|h| h.len()).collect();
    let mut arrows = Vec::new();
    for ai in 0..alg.num_arrows() {
        let a = alg.arrow(ai);
        let (s, t) = (a.source, a.target);
        // right multiplication by the arrow: A e_t -> A e_s
        let rho = super::free_map(
            &FreeLayout::new(alg, &[t]),
            &FreeLayout::new(alg, &[s]),
            &[vec![alg.arrow_elem(ai)]],
        )?;
        // R: Hom(M, A e_t) -> Hom(M, A e_s), g -> g then rho
        let mut r = Matrix::zeros(f, dims[s], dims[t]);
        for (j, g) in homs[t].iter().enumerate() {
            let img = g.then(&rho);
            let c = coords[s]
                .as_ref()
                .map(|c| c.coords(&img.flatten()).expect("composite is a homomorphism"))
                .unwrap_or_default();
            for (i, x) in c.into_iter().enumerate() {
                r.set(i, j, x);
            }
        }
        // on duals the arrow s -> t acts by the transpose
        arrows.push(r.transpose());
    }
    Ok(Representation::new_unchecked(alg.clone(), dims, arrows))
}

/// Auslander-Reiten translate `tau = nu Omega^2` for self-injective algebras.
pub fn tau(m: &Representation) -> Result<Representation> {
    m.algebra().require_self_injective()?;
    let (o1, _, _) = syzygy(m)?;
    let (o2, _, _) = syzygy(&o1)?;
    nakayama_module(&o2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::module::hom_space;
    use crate::module::is_isomorphic;

    fn jordan(alg: &Arc<Algebra>, i: usize) -> Representation {
        let t = Matrix::from_fn(alg.field(), i, i, |r, c| u64::from(r == c + 1));
        Representation::new(alg.clone(), vec![i], vec![t]).unwrap()
    }

    fn iso(a: &Representation, b: &Representation) -> bool {
        is_isomorphic(a, b, 0).unwrap().is_some()
    }

    #[test]
    fn covers() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let s = Representation::simple(&a, 0);
        let c = projective_cover(&s).unwrap();
        assert_eq!(c.layout.summands(), &[0]);
        assert_eq!(c.projective.dim(), 3);
        let j2 = jordan(&a, 2);
        let c2 = projective_cover(&j2).unwrap();
        assert_eq!(c2.layout.summands(), &[0]);
        assert!(c2.map.is_surjective());
        let p = Representation::projective(&a, 0);
        let cp = projective_cover(&p).unwrap();
        assert!(cp.map.is_isomorphism());
        assert!(projective_cover(&Representation::zero(&a)).is_err());
    }

    #[test]
    fn syzygies_over_kt3() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let (j1, j2) = (jordan(&a, 1), jordan(&a, 2));
        let o1 = syzygy(&j1).unwrap().0;
        assert!(iso(&o1, &j2));
        let o2 = syzygy(&j2).unwrap().0;
        assert!(iso(&o2, &j1));
        assert!(iso(&syzygy(&o1).unwrap().0, &j1));
        assert!(syzygy(&Representation::projective(&a, 0)).unwrap().0.is_zero());
    }

    #[test]
    fn cosyzygy_kt2() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let s = Representation::simple(&a, 0);
        let c = cosyzygy(&s).unwrap();
        assert!(iso(&c, &s));
        let b = build_algebra(&fixtures::a2(3)).unwrap();
        assert!(matches!(cosyzygy(&Representation::simple(&b, 0)), Err(Error::NotSelfInjective)));
    }

    #[test]
    fn cosyzygy_inverts_syzygy() {
        let a = build_algebra(&fixtures::nakayama(2, 3, 3)).unwrap();
        for v in 0..2 {
            let s = Representation::simple(&a, v);
            let o = syzygy(&s).unwrap().0;
            assert!(iso(&cosyzygy(&o).unwrap(), &s));
        }
    }

    #[test]
    fn duality_preserves_hom_dimensions() {
        let a = build_algebra(&fixtures::nakayama(2, 3, 2)).unwrap();
        let mods = [
            Representation::simple(&a, 0),
            Representation::projective(&a, 1),
            syzygy(&Representation::simple(&a, 1)).unwrap().0,
        ];
        for m in &mods {
            for n in &mods {
                let lhs = hom_space(m, n).unwrap().len();
                let rhs = hom_space(&dual(n), &dual(m)).unwrap().len();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn nakayama_module_on_projectives() {
        let a = build_algebra(&fixtures::nakayama(2, 2, 3)).unwrap();
        let nu = nakayama_module(&Representation::projective(&a, 0)).unwrap();
        assert!(iso(&nu, &Representation::projective(&a, 1)));
        let k = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let j1 = jordan(&k, 1);
        assert!(iso(&nakayama_module(&j1).unwrap(), &j1));
        assert!(iso(&tau(&j1).unwrap(), &j1));
    }
}
