use std::collections::BTreeMap;

use super::{hom_k, ComplexMap, PerfectComplex, ProjMat};
use crate::error::Result;

/// A minimal model with the comparison maps `to_min: X -> M` and
/// `from_min: M -> X`, where `from_min` then `to_min` is the identity and
/// the other composite is homotopic to the identity.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub complex: PerfectComplex,
    pub to_min: ComplexMap,
    pub from_min: ComplexMap,
}

impl Minimized {
    /// Check both composites: one exactly, the other up to homotopy.
    pub fn certify(&self) -> Result<bool> {
        let x = self.to_min.source();
        let id_m = ComplexMap::identity(&self.complex);
        let exact = self.from_min.then(&self.to_min).sub(&id_m).is_zero();
        let round = self.to_min.then(&self.from_min).sub(&ComplexMap::identity(x));
        let homotopic = hom_k(x, x)?.is_null(&round)?;
        Ok(exact && homotopic && self.to_min.is_chain_map() && self.from_min.is_chain_map() && self.complex.is_minimal())
    }
}

/// Cancel differential entries with unit identity component until every
/// entry lies in the radical. Entries are scanned from the top degree down,
/// row by row.
pub fn minimize(x: &PerfectComplex) -> Result<Minimized> {
    let mut cur = x.clone();
    let mut to_min = ComplexMap::identity(x);
    let mut from_min = ComplexMap::identity(x);
    while let Some((d, s, t)) = find_unit(&cur) {
        let (next, f, g) = cancel(&cur, d, s, t);
        to_min = to_min.then(&f);
        from_min = g.then(&from_min);
        cur = next;
    }
    Ok(Minimized { complex: cur, to_min, from_min })
}

fn find_unit(x: &PerfectComplex) -> Option<(i64, usize, usize)> {
    let alg = x.algebra();
    if x.is_zero() {
        return None;
    }
    for d in (x.lo() + 1..=x.hi()).rev() {
        let m = x.diff(d);
        for (s, &v) in m.rows().iter().enumerate() {
            for (t, &w) in m.cols().iter().enumerate() {
                if v == w && alg.e_coeff(m.get(s, t), v) != 0 {
                    return Some((d, s, t));
                }
            }
        }
    }
    None
}

/// One Gaussian cancellation of the unit entry `c = D_d[s][t]`.
/// Writing `D_d = [[c, beta], [gamma, delta]]`, the new complex has
/// `D'_d = delta - gamma c^-1 beta` and drops the two summands.
fn cancel(x: &PerfectComplex, d: i64, s: usize, t: usize) -> (PerfectComplex, ComplexMap, ComplexMap) {
    let alg = x.algebra();
    let dd = x.diff(d).into_owned();
    let v = dd.rows()[s];
    let c_inv = alg.corner_inverse(dd.get(s, t), v).expect("unit entry");
    let mut c_inv_m = ProjMat::zero(alg, &[v], &[v]);
    c_inv_m.set(0, 0, c_inv);

    let src: Vec<usize> = (0..dd.rows().len()).filter(|&i| i != s).collect();
    let tgt: Vec<usize> = (0..dd.cols().len()).filter(|&j| j != t).collect();
    let beta = dd.select_rows(&[s]).select_cols(&tgt);
    let gamma = dd.select_rows(&src).select_cols(&[t]);
    let delta = dd.select_rows(&src).select_cols(&tgt);
    let gamma_c = gamma.mul(alg, &c_inv_m);
    let c_beta = c_inv_m.mul(alg, &beta);

    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for e in x.degrees() {
        let term = if e == d {
            src.iter().map(|&i| dd.rows()[i]).collect()
        } else if e == d - 1 {
            tgt.iter().map(|&j| dd.cols()[j]).collect()
        } else {
            x.term(e).to_vec()
        };
        terms.insert(e, term);
    }
    for e in x.lo() + 1..=x.hi() {
        let m = x.diff(e);
        let m = if e == d {
            delta.sub(alg, &gamma_c.mul(alg, &beta))
        } else if e == d + 1 {
            m.select_cols(&src)
        } else if e == d - 1 {
            m.select_rows(&tgt)
        } else {
            m.into_owned()
        };
        diffs.insert(e, m);
    }
    let y = PerfectComplex::from_degrees(alg, &terms, &diffs).expect("cancellation preserves d^2 = 0");

    // F: X -> Y and G: Y -> X
    let mut fm = BTreeMap::new();
    let mut gm = BTreeMap::new();
    for e in x.degrees() {
        let term = x.term(e);
        if e == d {
            let mut f = ProjMat::zero(alg, term, &terms[&e]);
            let mut g = ProjMat::zero(alg, &terms[&e], term);
            for (k, &i) in src.iter().enumerate() {
                f.set(i, k, alg.idempotent(term[i]));
                g.set(k, i, alg.idempotent(term[i]));
                g.set(k, s, alg.scale(gamma_c.get(k, 0), alg.field().neg(1)));
            }
            fm.insert(e, f);
            gm.insert(e, g);
        } else if e == d - 1 {
            let mut f = ProjMat::zero(alg, term, &terms[&e]);
            let mut g = ProjMat::zero(alg, &terms[&e], term);
            for (k, &j) in tgt.iter().enumerate() {
                f.set(j, k, alg.idempotent(term[j]));
                g.set(k, j, alg.idempotent(term[j]));
                f.set(t, k, alg.scale(c_beta.get(0, k), alg.field().neg(1)));
            }
            fm.insert(e, f);
            gm.insert(e, g);
        } else {
            fm.insert(e, ProjMat::identity(alg, term));
            gm.insert(e, ProjMat::identity(alg, term));
        }
    }
    let f = ComplexMap::new_unchecked(x, &y, fm).expect("shapes match");
    let g = ComplexMap::new_unchecked(&y, x, gm).expect("shapes match");
    debug_assert!(f.is_chain_map() && g.is_chain_map());
    (y, f, g)
}

#[cfg(test)]
mod tests {
    use super::super::tests::two_term;
    use super::*;
    use crate::algebra::{build_algebra, fixtures};

    #[test]
    fn cone_of_identity_minimizes_to_zero() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let c = PerfectComplex::mapping_cone(&ComplexMap::identity(&p));
        let m = minimize(&c).unwrap();
        assert!(m.complex.is_zero());
        assert!(m.certify().unwrap());
    }

    #[test]
    fn minimal_complex_is_unchanged() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let x = two_term(&a, a.path_elem(&[0], 0).unwrap());
        let m = minimize(&x).unwrap();
        assert_eq!(m.complex, x);
        assert!(m.to_min.sub(&ComplexMap::identity(&x)).is_zero());
    }

    #[test]
    fn sum_with_contractible_part() {
        let a = build_algebra(&fixtures::kt(2, 2)).unwrap();
        let x = two_term(&a, a.path_elem(&[0], 0).unwrap());
        let p = PerfectComplex::stalk(&a, &[0], 0);
        let c = PerfectComplex::mapping_cone(&ComplexMap::identity(&p));
        let s = PerfectComplex::direct_sum(&[&c, &x]).unwrap();
        let m = minimize(&s).unwrap();
        assert_eq!(m.complex, x);
        assert!(m.certify().unwrap());
    }

    #[test]
    fn entangled_cancellation() {
        // P --(1 t ; t 1+t)--> P^2 over k[t]/t^3 has a unit off the diagonal
        let a = build_algebra(&fixtures::kt(3, 3)).unwrap();
        let t = a.path_elem(&[0], 0).unwrap();
        let one = a.one();
        let mut m = ProjMat::zero(&a, &[0, 0], &[0, 0]);
        m.set(0, 0, t.clone());
        m.set(0, 1, one.clone());
        m.set(1, 0, a.mul(&t, &t));
        m.set(1, 1, t.clone());
        let x = PerfectComplex::new(&a, 0, vec![vec![0, 0], vec![0, 0]], vec![m]).unwrap();
        let min = minimize(&x).unwrap();
        assert!(min.certify().unwrap());
        // det = t^2 - t^2 = 0 after cancelling: one P -> P with zero map
        assert_eq!(min.complex.num_summands(), 2);
    }
}
