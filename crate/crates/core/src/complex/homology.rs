use super::{ComplexMap, PerfectComplex};
use crate::error::Result;
use crate::linalg::subspace::{self, Coordinatizer};
use crate::linalg::Matrix;
use crate::module::{free_map, ModuleMap, Representation};

/// `H_i(X) = ker D_i / im D_{i+1}` with the data needed to push chain
/// maps through it.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub module: Representation,
    cycle_incl: ModuleMap,
    proj: ModuleMap,
    lift: Vec<Matrix>,
}

fn diff_map(x: &PerfectComplex, d: i64) -> Result<ModuleMap> {
    free_map(&x.layout(d), &x.layout(d - 1), &x.diff(d).nested())
}

pub fn homology(x: &PerfectComplex, i: i64) -> Result<Homology> {
    let f = x.algebra().field();
    let p = x.term_module(i);
    let (z, incl) = diff_map(x, i)?.kernel(&p)?;
    let incoming = diff_map(x, i + 1)?;
    let nv = p.dims().len();
    let mut spaces = Vec::with_capacity(nv);
    for v in 0..nv {
        let zd = z.dims()[v];
        let img = subspace::row_basis(&incoming.maps[v].transpose());
        if zd == 0 || img.rows() == 0 {
            spaces.push(Matrix::zeros(f, 0, zd));
            continue;
        }
        let c = Coordinatizer::new(&incl.maps[v].transpose());
        let rows: Vec<Vec<u64>> = img.row_vecs().iter().map(|r| c.coords(r).expect("boundaries are cycles")).collect();
        spaces.push(Matrix::from_row_vecs(f, zd, &rows));
    }
    let (h, proj) = z.quotient(&spaces)?;
    let lift = (0..nv)
        .map(|v| {
            let (hd, zd) = (h.dims()[v], z.dims()[v]);
            if hd == 0 {
                return Matrix::zeros(f, zd, 0);
            }
            proj.maps[v].solve(&Matrix::identity(f, hd)).expect("shapes").expect("projection is onto")
        })
        .collect();
    Ok(Homology { degree: i, module: h, cycle_incl: incl, proj, lift })
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }
}

/// `H_i(f): H_i(X) -> H_i(Y)` for homology data computed in the same degree.
pub fn homology_map(f: &ComplexMap, hx: &Homology, hy: &Homology) -> Result<ModuleMap> {
    let alg = f.source().algebra();
    let fld = alg.field();
    let i = hx.degree;
    let fi = free_map(&f.source().layout(i), &f.target().layout(i), &f.component(i).nested())?;
    let qy = hy.module.dims();
    let nv = alg.num_vertices();
    let mut maps = Vec::with_capacity(nv);
    for v in 0..nv {
        let (a, b) = (hx.module.dims()[v], qy[v]);
        if a == 0 || b == 0 {
            maps.push(Matrix::zeros(fld, b, a));
            continue;
        }
        let img = fi.maps[v].mul(&hx.cycle_incl.maps[v]).mul(&hx.lift[v]);
        let z = hy.cycle_incl.maps[v].solve(&img)?.expect("chain maps send cycles to cycles");
        maps.push(hy.proj.maps[v].mul(&z));
    }
    Ok(ModuleMap { maps })
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_term;
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::module::is_isomorphic;

    #[test]
    fn stalk_homology() {
        let a = build_algebra(&fixtures::nakayama(2, 3, 3)).unwrap();
        let p = PerfectComplex::stalk(&a, &[1], 0);
        assert_eq!(homology(&p, 0).unwrap().module.dims(), Representation::projective(&a, 1).dims());
        assert!(homology(&p, 1).unwrap().is_zero());
        assert!(homology(&p, -1).unwrap().is_zero());
    }

    #[test]
    fn two_term_over_dual_numbers() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let x = two_term(&a, a.path_elem(&[0], 0).unwrap());
        let s = Representation::simple(&a, 0);
        for d in [0, 1] {
            let h = homology(&x, d).unwrap();
            assert!(is_isomorphic(&h.module, &s, 0).unwrap().is_some());
        }
    }

    #[test]
    fn identity_induces_identity() {
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let x = two_term(&a, a.path_elem(&[0], 0).unwrap());
        for d in [0, 1] {
            let h = homology(&x, d).unwrap();
            let m = homology_map(&ComplexMap::identity(&x), &h, &h).unwrap();
            assert_eq!(m, ModuleMap::identity(&h.module));
        }
    }
}
