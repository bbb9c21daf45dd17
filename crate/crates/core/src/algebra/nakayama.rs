use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Algebra;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::module::{is_isomorphic, ModuleMap, Representation};

/// Nakayama permutation and the transported action of `nu` on each
/// `e_i A e_j`, in block coordinates.
#[derive(Clone, Debug)]
pub struct Nakayama {
    pub perm: Vec<usize>,
    pub inverse_perm: Vec<usize>,
    maps: Vec<Matrix>,
    inverse_maps: Vec<Matrix>,
}

impl Nakayama {
    pub(crate) fn identity(alg: &Algebra) -> Self {
        let n = alg.num_vertices();
        let f = alg.field();
        let maps: Vec<Matrix> =
            (0..n * n).map(|k| Matrix::identity(f, alg.block_dim(k / n, k % n))).collect();
        Self { perm: (0..n).collect(), inverse_perm: (0..n).collect(), inverse_maps: maps.clone(), maps }
    }

    /// Matrix of `nu: e_i A e_j -> e_pi(i) A e_pi(j)`.
    pub fn matrix(&self, n: usize, i: usize, j: usize) -> &Matrix {
        &self.maps[i * n + j]
    }

    pub(crate) fn apply(&self, alg: &Algebra, i: usize, j: usize, x: &[u64], inverse: bool) -> Vec<u64> {
        let n = alg.num_vertices();
        let (m, ti, tj) = if inverse {
            (&self.inverse_maps[i * n + j], self.inverse_perm[i], self.inverse_perm[j])
        } else {
            (&self.maps[i * n + j], self.perm[i], self.perm[j])
        };
        let c = alg.block_coords(x, i, j);
        alg.from_block_coords(ti, tj, &m.mul_vec(&c))
    }
}

/// `D(e_v A)` as a left module: vertex `w` holds the dual of `e_v A e_w`.
pub(crate) fn dual_right_projective(alg: &Arc<Algebra>, v: usize) -> Representation {
    let f = alg.field();
    let nv = alg.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|w| alg.block_dim(v, w)).collect();
    let arrows = (0..alg.num_arrows())
        .map(|ai| {
            let arr = alg.arrow(ai);
            let (a, b) = (arr.source, arr.target);
            // right multiplication by the arrow: e_v A e_b -> e_v A e_a
            let mut r = Matrix::zeros(f, dims[a], dims[b]);
            for (k, &x) in alg.block(v, b).iter().enumerate() {
                for &(j, c) in alg.product_of_basis(x, alg.arrow_index(ai)) {
                    r.set(alg.position_in_block(j), k, c);
                }
            }
            r.transpose()
        })
        .collect();
    Representation::new_unchecked(alg.clone(), dims, arrows)
}

/// `nu(x): D(e_i A) -> D(e_j A)` for `x` in `e_i A e_j`: the dual of left
/// multiplication by `x`.
fn nu_on_duals(alg: &Algebra, i: usize, j: usize, x: &[u64]) -> ModuleMap {
    let f = alg.field();
    let maps = (0..alg.num_vertices())
        .map(|w| {
            // L_x: e_j A e_w -> e_i A e_w
            let mut l = Matrix::zeros(f, alg.block_dim(i, w), alg.block_dim(j, w));
            for (k, &y) in alg.block(j, w).iter().enumerate() {
                let prod = alg.mul(x, &alg.basis_elem(y));
                for (pos, &b) in alg.block(i, w).iter().enumerate() {
                    l.set(pos, k, prod[b]);
                }
            }
            l.transpose()
        })
        .collect();
    ModuleMap { maps }
}

/// Automorphism of `A e_w` given by right multiplication with a unit of
/// `e_w A e_w`, used to vary the chosen isomorphisms.
fn twist(alg: &Arc<Algebra>, w: usize) -> ModuleMap {
    let f = alg.field();
    let mut u = alg.idempotent(w);
    if f.p() > 2 {
        u = alg.scale(&u, 2);
    }
    if let Some(&r) = alg.block(w, w).iter().find(|&&i| !alg.basis()[i].is_trivial()) {
        u[r] = f.add(u[r], 1);
    }
    let lay = crate::module::FreeLayout::new(alg, &[w]);
    crate::module::free_map(&lay, &lay, &[vec![u]]).expect("unit lies in e_w A e_w")
}

/// Nakayama data when `A` is self-injective, `None` otherwise.
pub(crate) fn compute(alg: &Arc<Algebra>, alternate: bool) -> Result<Option<Nakayama>> {
    let nv = alg.num_vertices();
    let f = alg.field();
    let duals: Vec<Representation> = (0..nv).map(|v| dual_right_projective(alg, v)).collect();
    let projs: Vec<Representation> = (0..nv).map(|w| Representation::projective(alg, w)).collect();
    let mut perm = vec![usize::MAX; nv];
    // psi_v: A e_pi(v) -> D(e_v A)
    let mut psi = Vec::with_capacity(nv);
    for v in 0..nv {
        let mut found = None;
        for w in 0..nv {
            if projs[w].dims() != duals[v].dims() || perm.contains(&w) {
                continue;
            }
            if let Some(iso) = is_isomorphic(&projs[w], &duals[v], v as u64)? {
                found = Some((w, iso));
                break;
            }
        }
        let Some((w, iso)) = found else {
            return Ok(None);
        };
        perm[v] = w;
        psi.push(if alternate { twist(alg, w).then(&iso) } else { iso });
    }
    let phi: Vec<ModuleMap> = psi.iter().map(|m| m.inverse().expect("isomorphism")).collect();
    let mut inverse_perm = vec![0; nv];
    for (v, &w) in perm.iter().enumerate() {
        inverse_perm[w] = v;
    }
    let mut maps = Vec::with_capacity(nv * nv);
    let mut inverse_maps = vec![Matrix::zeros(f, 0, 0); nv * nv];
    for i in 0..nv {
        for j in 0..nv {
            let (pi, pj) = (perm[i], perm[j]);
            let unit_pos = alg.position_in_block(alg.idempotent_index(pi));
            let mut m = Matrix::zeros(f, alg.block_dim(pi, pj), alg.block_dim(i, j));
            for (k, &x) in alg.block(i, j).iter().enumerate() {
                let nx = nu_on_duals(alg, i, j, &alg.basis_elem(x));
                // evaluate phi_j . nu(x) . psi_i at e_pi(i)
                let total = psi[i].then(&nx).then(&phi[j]);
                let col = total.maps[pi].col(unit_pos);
                for (r, c) in col.into_iter().enumerate() {
                    m.set(r, k, c);
                }
            }
            let inv = m.inverse().expect("nu is bijective on Hom spaces");
            inverse_maps[pi * nv + pj] = inv;
            maps.push(m);
        }
    }
    Ok(Some(Nakayama { perm, inverse_perm, maps, inverse_maps }))
}

/// Search for a symmetrizing form: `lambda(xy) = lambda(yx)` and
/// non-degenerate, which for a basic self-injective algebra means `lambda`
/// is nonzero on the socle of every `A e_v`.
pub(crate) fn compute_symmetric(alg: &Arc<Algebra>) -> bool {
    let Some(nak) = alg.nakayama() else { return false };
    if nak.perm.iter().enumerate().any(|(i, &j)| i != j) {
        return false;
    }
    let f = alg.field();
    let d = alg.dim();
    let mut eqs = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (alg.basis_elem(i), alg.basis_elem(j));
            let c = alg.sub(&alg.mul(&x, &y), &alg.mul(&y, &x));
            if !Algebra::is_zero(&c) {
                eqs.push(c);
            }
        }
    }
    let forms = Matrix::from_row_vecs(f, d, &eqs).kernel_basis();
    let k = forms.rows();
    if k == 0 {
        return false;
    }
    // socle element of each A e_v
    let mut socle_funcs = Vec::new();
    for v in 0..alg.num_vertices() {
        let p = Representation::projective(alg, v);
        let soc = p.socle_spaces();
        let lay = crate::module::FreeLayout::new(alg, &[v]);
        for (u, s) in soc.iter().enumerate() {
            for row in s.row_vecs() {
                let elem = lay.component(&row, u, 0);
                // values of the basis forms on this socle element
                socle_funcs.push(forms.mul_vec(&elem));
            }
        }
    }
    if socle_funcs.iter().any(|c| c.iter().all(|&x| x == 0)) {
        return false;
    }
    let p = f.p();
    let good = |c: &[u64]| {
        socle_funcs.iter().all(|s| s.iter().zip(c).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))) != 0)
    };
    let mut candidate = None;
    if (p as u128).pow(k as u32) <= 1 << 16 {
        let total = p.pow(k as u32);
        for idx in 1..total {
            let mut c = Vec::with_capacity(k);
            let mut x = idx;
            for _ in 0..k {
                c.push(x % p);
                x /= p;
            }
            if good(&c) {
                candidate = Some(c);
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..256 {
            let c: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            if good(&c) {
                candidate = Some(c);
                break;
            }
        }
    }
    let Some(c) = candidate else { return false };
    let lambda = forms.vec_mul(&c);
    let gram = Matrix::from_fn(f, d, d, |i, j| {
        let prod = alg.mul(&alg.basis_elem(i), &alg.basis_elem(j));
        prod.iter().zip(&lambda).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    });
    gram.rank() == d
}

#[cfg(test)]
mod tests {
    use crate::algebra::{build_algebra, build_algebra_alternate, fixtures, Algebra};
    use crate::error::Error;

    fn check_multiplicative(a: &Algebra) {
        let n = a.num_vertices();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for &x in a.block(i, j) {
                        for &y in a.block(j, k) {
                            let (xe, ye) = (a.basis_elem(x), a.basis_elem(y));
                            let lhs = a.nakayama_on_hom(i, k, &a.mul(&xe, &ye)).unwrap();
                            let rhs = a.mul(
                                &a.nakayama_on_hom(i, j, &xe).unwrap(),
                                &a.nakayama_on_hom(j, k, &ye).unwrap(),
                            );
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kt_is_symmetric_with_identity_permutation() {
        for (n, p) in [(2, 2), (3, 3), (4, 2)] {
            let a = build_algebra(&fixtures::kt(n, p)).unwrap();
            assert_eq!(a.nakayama_permutation(), Some(&[0][..]));
            assert!(a.is_symmetric());
            check_multiplicative(&a);
        }
    }

    #[test]
    fn kt22_nu_of_t_is_a_multiple_of_t() {
        let a = build_algebra_alternate(&fixtures::kt(2, 2)).unwrap();
        let t = a.arrow_elem(0);
        let nt = a.nakayama_on_hom(0, 0, &t).unwrap();
        assert_eq!(nt[a.idempotent_index(0)], 0);
        assert_ne!(nt[a.arrow_index(0)], 0);
    }

    #[test]
    fn nakayama_permutations() {
        // radical square zero on the 2-cycle: tops and socles swap
        let a = build_algebra(&fixtures::nakayama(2, 2, 3)).unwrap();
        assert_eq!(a.nakayama_permutation(), Some(&[1, 0][..]));
        assert!(!a.is_symmetric());
        check_multiplicative(&a);
        let e = a.idempotent(0);
        assert_eq!(a.nakayama_on_hom(0, 0, &e).unwrap(), a.idempotent(1));
        // J^3 on the 2-cycle has socle of A e_v at v
        let b = build_algebra(&fixtures::nakayama(2, 3, 3)).unwrap();
        assert_eq!(b.nakayama_permutation(), Some(&[0, 1][..]));
        check_multiplicative(&b);
        let c = build_algebra(&fixtures::nakayama(3, 3, 2)).unwrap();
        assert_eq!(c.nakayama_permutation(), Some(&[1, 2, 0][..]));
        check_multiplicative(&c);
        let alt = build_algebra_alternate(&fixtures::nakayama(3, 3, 5)).unwrap();
        check_multiplicative(&alt);
    }

    #[test]
    fn path_algebra_a2_is_not_self_injective() {
        let a = build_algebra(&fixtures::a2(3)).unwrap();
        assert!(a.nakayama_permutation().is_none());
        assert!(!a.is_symmetric());
        assert!(matches!(a.nakayama_on_hom(0, 0, &a.idempotent(0)), Err(Error::NotSelfInjective)));
    }

    #[test]
    fn product_of_local_symmetric_algebras() {
        let a = build_algebra(&fixtures::kt_product(2, 2)).unwrap();
        assert!(a.is_symmetric());
        // oracle: lambda = coefficient of s plus coefficient of t
        let lambda: Vec<u64> =
            a.basis().iter().map(|b| u64::from(b.len() == 1)).collect();
        let d = a.dim();
        for i in 0..d {
            for j in 0..d {
                let (x, y) = (a.basis_elem(i), a.basis_elem(j));
                let ev = |z: Vec<u64>| z.iter().zip(&lambda).map(|(p, q)| p * q).sum::<u64>() % 2;
                assert_eq!(ev(a.mul(&x, &y)), ev(a.mul(&y, &x)));
            }
        }
    }

    #[test]
    fn two_cycle_with_cube_radical_is_symmetric() {
        let a = build_algebra(&fixtures::nakayama(2, 3, 3)).unwrap();
        assert!(a.is_symmetric());
    }
}
