use std::sync::Arc;

use rand::Rng;

use super::hom::MatSpace;
use super::{PerfectComplex, ProjMat};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{projective_cover, ModuleMap, Representation};

/// The first basis solution `x` in `e_a A e_b` of `alpha x = 0 = x alpha`
/// for every arrow `alpha`: a map `A e_a -> A e_b` from top to socle.
pub fn socle_map(alg: &Algebra, a: usize, b: usize) -> Result<Vec<u64>> {
    let f = alg.field();
    let block = alg.block(a, b);
    let n = alg.dim();
    let na = alg.num_arrows();
    let mut m = Matrix::zeros(f, 2 * na * n, block.len());
    for (j, &i) in block.iter().enumerate() {
        let x = alg.basis_elem(i);
        for ar in 0..na {
            let al = alg.arrow_elem(ar);
            for (r, c) in alg.mul(&al, &x).into_iter().enumerate() {
                m.set(2 * ar * n + r, j, c);
            }
            for (r, c) in alg.mul(&x, &al).into_iter().enumerate() {
                m.set((2 * ar + 1) * n + r, j, c);
            }
        }
    }
    let k = m.kernel_basis();
    if k.rows() == 0 {
        return Err(Error::Precondition(format!(
            "no socle element in e_{} A e_{}",
            alg.vertex_label(a),
            alg.vertex_label(b)
        )));
    }
    Ok(alg.from_block_coords(a, b, k.row(0)))
}

fn one_by_one(alg: &Algebra, a: usize, b: usize, x: Vec<u64>) -> ProjMat {
    let mut m = ProjMat::zero(alg, &[a], &[b]);
    m.set(0, 0, x);
    m
}

/// `nu^-n P_s -> ... -> nu^-1 P_s -> P_s` in degrees `n, ..., 0`, every
/// differential a socle map.
pub fn nu_chain(alg: &Arc<Algebra>, s: usize, n: usize) -> Result<PerfectComplex> {
    let nak = alg.require_self_injective()?;
    let mut verts = vec![s];
    for _ in 0..n {
        verts.push(nak.inverse_perm[*verts.last().unwrap()]);
    }
    let mut diffs = Vec::with_capacity(n);
    for k in 1..=n {
        let (a, b) = (verts[k], verts[k - 1]);
        diffs.push(one_by_one(alg, a, b, socle_map(alg, a, b)?));
    }
    PerfectComplex::new(alg, 0, verts.into_iter().map(|v| vec![v]).collect(), diffs)
}

/// `nu^-1 P_s -> P_s -> nu P_s` in degrees 1, 0, -1 with socle maps.
pub fn heart_complex(alg: &Arc<Algebra>, s: usize) -> Result<PerfectComplex> {
    let nak = alg.require_self_injective()?;
    let (up, down) = (nak.inverse_perm[s], nak.perm[s]);
    let d1 = one_by_one(alg, up, s, socle_map(alg, up, s)?);
    let d0 = one_by_one(alg, s, down, socle_map(alg, s, down)?);
    PerfectComplex::new(alg, -1, vec![vec![down], vec![s], vec![up]], vec![d0, d1])
}

/// `P_n -> ... -> P_0`, the start of a minimal projective resolution of `m`.
pub fn truncated_resolution(m: &Representation, n: usize) -> Result<PerfectComplex> {
    let alg = m.algebra();
    if m.is_zero() {
        return Err(Error::Precondition("resolution of the zero module".into()));
    }
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut cur = m.clone();
    // inclusion of the current syzygy into the previous cover
    let mut incl: Option<(ModuleMap, crate::module::FreeLayout)> = None;
    for k in 0..=n {
        if cur.is_zero() {
            return Err(Error::Precondition(if k == 1 {
                "module is projective".into()
            } else {
                format!("resolution stops after {} terms", k)
            }));
        }
        let cover = projective_cover(&cur)?;
        let summands = cover.layout.summands().to_vec();
        if let Some((inc, prev)) = &incl {
            let mut d = ProjMat::zero(alg, &summands, prev.summands());
            for (r, (&u, g)) in summands.iter().zip(&cover.gens).enumerate() {
                let vec = inc.maps[u].mul_vec(g);
                for t in 0..prev.summands().len() {
                    d.set(r, t, prev.component(&vec, u, t));
                }
            }
            diffs.push(d);
        }
        terms.push(summands);
        if k < n {
            let (next, inc) = cover.map.kernel(&cover.projective)?;
            cur = next;
            incl = Some((inc, cover.layout));
        }
    }
    PerfectComplex::new(alg, 0, terms, diffs)
}

/// The two-term complex `P_1 -> P_0` of a minimal presentation of `m`.
pub fn presentation_complex(m: &Representation) -> Result<PerfectComplex> {
    truncated_resolution(m, 1)
}

/// A random complex with `widths[i]` summands (random vertices) in degree
/// `lo + i` and random radical differentials satisfying `d^2 = 0`.
pub fn random_complex<R: Rng>(alg: &Arc<Algebra>, rng: &mut R, lo: i64, widths: &[usize]) -> Result<PerfectComplex> {
    let f = alg.field();
    let p = f.p();
    let nv = alg.num_vertices();
    let terms: Vec<Vec<usize>> = widths.iter().map(|&w| (0..w).map(|_| rng.gen_range(0..nv)).collect()).collect();
    let mut diffs: Vec<ProjMat> = Vec::new();
    // build from the top degree down, each new differential killed by the one above
    for i in (1..terms.len()).rev() {
        let (src, tgt) = (&terms[i], &terms[i - 1]);
        let mut basis = Vec::new();
        for (s, &v) in src.iter().enumerate() {
            for (t, &w) in tgt.iter().enumerate() {
                for &b in alg.block(v, w) {
                    if !(v == w && b == alg.idempotent_index(v)) {
                        basis.push((s, t, b));
                    }
                }
            }
        }
        let unit = |&(s, t, b): &(usize, usize, usize)| {
            let mut m = ProjMat::zero(alg, src, tgt);
            m.set(s, t, alg.basis_elem(b));
            m
        };
        let coeffs: Vec<Vec<u64>> = match diffs.last() {
            None => vec![(0..basis.len()).map(|_| rng.gen_range(0..p)).collect()],
            Some(above) => {
                let sp = MatSpace::new(alg, above.rows(), tgt);
                let mut m = Matrix::zeros(f, sp.dim(), basis.len());
                let mut buf = vec![0; sp.dim()];
                for (j, b) in basis.iter().enumerate() {
                    sp.coords(alg, &above.mul(alg, &unit(b)), &mut buf);
                    for (r, &c) in buf.iter().enumerate() {
                        m.set(r, j, c);
                    }
                }
                let k = m.kernel_basis();
                let mut c = vec![0; basis.len()];
                for row in k.row_vecs() {
                    let a = rng.gen_range(0..p);
                    for (x, y) in c.iter_mut().zip(row) {
                        *x = f.add(*x, f.mul(a, y));
                    }
                }
                vec![c]
            }
        };
        let mut d = ProjMat::zero(alg, src, tgt);
        for (j, b) in basis.iter().enumerate() {
            let c = coeffs[0][j];
            if c != 0 {
                let (s, t, idx) = *b;
                let mut x = d.get(s, t).to_vec();
                x[idx] = f.add(x[idx], c);
                d.set(s, t, x);
            }
        }
        diffs.push(d);
    }
    diffs.reverse();
    PerfectComplex::new(alg, lo, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::complex::homology;
    use crate::module::is_isomorphic;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn jordan(a: &Arc<Algebra>, i: usize) -> Representation {
        let t = Matrix::from_fn(a.field(), i, i, |r, c| u64::from(r == c + 1));
        Representation::new(a.clone(), vec![i], vec![t]).unwrap()
    }

    #[test]
    fn socle_map_over_truncated_polynomials() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        assert_eq!(socle_map(&a, 0, 0).unwrap(), a.path_elem(&[0, 0], 0).unwrap());
    }

    #[test]
    fn nu_chain_shapes() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        assert_eq!(nu_chain(&a, 0, 0).unwrap(), PerfectComplex::stalk(&a, &[0], 0));
        let c = nu_chain(&a, 0, 3).unwrap();
        let t = a.path_elem(&[0], 0).unwrap();
        assert_eq!((c.lo(), c.hi()), (0, 3));
        for d in 1..=3 {
            assert_eq!(c.diff(d).get(0, 0), t.as_slice());
        }
        let n = build_algebra(&fixtures::nakayama(2, 2, 3)).unwrap();
        let c = nu_chain(&n, 0, 2).unwrap();
        assert_eq!(c.term(1), &[1]);
        assert_eq!(c.term(2), &[0]);
    }

    #[test]
    fn heart_homology_over_kt3() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let h = heart_complex(&a, 0).unwrap();
        let t2 = a.path_elem(&[0, 0], 0).unwrap();
        assert_eq!(h.diff(1).get(0, 0), t2.as_slice());
        let dims: Vec<usize> = [1, 0, -1].iter().map(|&d| homology(&h, d).unwrap().dim()).collect();
        assert_eq!(dims, vec![2, 1, 2]);
        assert!(is_isomorphic(&homology(&h, 0).unwrap().module, &jordan(&a, 1), 0).unwrap().is_some());
        assert_eq!(h.length().unwrap(), 3);
    }

    #[test]
    fn presentation_of_jordan_blocks() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        for (i, k) in [(1, 1), (2, 2)] {
            let c = presentation_complex(&jordan(&a, i)).unwrap();
            assert_eq!(c.num_summands(), 2);
            // the differential is a unit multiple of t^k
            let d = c.diff(1).get(0, 0).to_vec();
            let tail = |j: usize| a.path_elem(&vec![0; j], 0).unwrap();
            assert!(a.is_radical(&d));
            assert!(Algebra::is_zero(&a.mul(&d, &tail(3 - k))));
            assert!(!Algebra::is_zero(&a.mul(&d, &tail(2 - k))));
            let h0 = homology(&c, 0).unwrap();
            assert!(is_isomorphic(&h0.module, &jordan(&a, i), 0).unwrap().is_some());
            let h1 = homology(&c, 1).unwrap();
            assert!(is_isomorphic(&h1.module, &jordan(&a, i), 0).unwrap().is_some());
            assert_eq!(c.length().unwrap(), 2);
        }
        let b = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let c = presentation_complex(&Representation::simple(&b, 0)).unwrap();
        assert_eq!(c.diff(1).get(0, 0), b.path_elem(&[0], 0).unwrap().as_slice());
        assert!(presentation_complex(&Representation::projective(&b, 0)).is_err());
        assert!(presentation_complex(&Representation::zero(&b)).is_err());
    }

    #[test]
    fn random_complexes_are_complexes() {
        let a = build_algebra(&fixtures::nakayama(3, 3, 3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let c = random_complex(&a, &mut rng, -1, &[2, 3, 2, 1]).unwrap();
            c.validate().unwrap();
            assert!(c.is_minimal());
        }
    }
}
