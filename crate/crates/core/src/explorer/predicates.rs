use std::sync::Arc;

use serde::Serialize;

use super::{minimal, require_hypotheses, rim_distance};
use crate::algebra::Algebra;
use crate::ar::{Check, Outcome};
use crate::complex::{complex_iso, hom_k, homology, nu_chain, socle_map, PerfectComplex, ProjMat};
use crate::error::{Error, Result};
use crate::module::{projective_cover, FreeLayout, Representation};

/// Positional facts about an indecomposable complex and the checks of the
/// known constraints relating them.
#[derive(Clone, Debug, Serialize)]
pub struct PositionalReport {
    pub length: usize,
    pub rim_distance: usize,
    pub rim_length: usize,
    /// `dim Hom_K(Z, Z[1])`.
    pub hom_to_shift: usize,
    pub rigid: bool,
    /// `(degree, dim H_degree)` over the span of the complex.
    pub homology_dims: Vec<(i64, usize)>,
    /// Lengths of the maximal runs of consecutive nonzero homology.
    pub homology_strings: Vec<usize>,
    pub checks: Vec<Check>,
}

impl PositionalReport {
    pub fn violations(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter_map(|c| match &c.outcome {
                Outcome::Fail(m) => Some(format!("{}: {m}", c.name)),
                _ => None,
            })
            .collect()
    }

    pub fn consistent(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn outcome(&self, name: &str) -> Option<&Outcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn runs(dims: &[(i64, usize)]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = 0;
    for &(_, n) in dims {
        if n > 0 {
            cur += 1;
        } else if cur > 0 {
            out.push(cur);
            cur = 0;
        }
    }
    if cur > 0 {
        out.push(cur);
    }
    out
}

/// Whether `z` is isomorphic to a shifted nu-chain `nu^-n P_s -> ... -> P_s`.
pub fn is_shifted_nu_chain(z: &PerfectComplex, n: usize) -> Result<bool> {
    let alg = z.algebra();
    for s in 0..alg.num_vertices() {
        if complex_iso(z, &nu_chain(alg, s, n)?.shift(z.lo()), 0)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Length, rim distance, rigidity and homology strings of `z`, each
/// checked against the constraints that relate them:
///
/// - length equals the rim length of the column plus the distance;
/// - complexes of length `n + 1` lie within distance `n`;
/// - at distance `n = length - 1` the complex is a nu-chain;
/// - at distance `n` every nonzero homology string has length `> n`;
/// - an isolated nonzero homology module forces the rim;
/// - over a symmetric algebra a rigid complex lies on the rim.
///
/// The two homology-string checks are skipped in the component of a
/// projective with zero heart, where the ends of a nu-chain carry
/// isolated homology at any distance.
pub fn positional_predicates(z: &PerfectComplex) -> Result<PositionalReport> {
    require_hypotheses(z)?;
    let z = minimal(z)?;
    let alg = z.algebra().clone();
    let length = z.length()?;
    let (distance, rim) = rim_distance(&z)?;
    let rim_length = rim.length()?;
    let hom_to_shift = hom_k(&z, &z.shift(1))?.dim();
    let rigid = hom_to_shift == 0;
    let homology_dims =
        z.degrees().map(|d| Ok((d, homology(&z, d)?.dim()))).collect::<Result<Vec<_>>>()?;
    let strings = runs(&homology_dims);
    let zero_heart_projective = match rim.stalk_projective_degree() {
        Some(k) => Representation::projective(&alg, rim.term(k)[0]).heart()?.is_zero(),
        None => false,
    };

    let mut checks = Vec::new();
    let mut push = |name: &str, outcome: Outcome| checks.push(Check { name: name.into(), outcome });
    push(
        "length = rim length + distance",
        verdict(length == rim_length + distance, || format!("length {length}, rim length {rim_length}, distance {distance}")),
    );
    push(
        "distance at most length - 1",
        verdict(distance < length, || format!("distance {distance} for length {length}")),
    );
    push(
        "maximal distance only on nu-chains",
        if distance + 1 == length {
            verdict(is_shifted_nu_chain(&z, distance)?, || "complex at maximal distance is not a nu-chain".into())
        } else {
            Outcome::Skipped("distance below maximum".into())
        },
    );
    let skip_strings = || Outcome::Skipped("projective component with zero heart".into());
    push(
        "homology strings longer than distance",
        if zero_heart_projective {
            skip_strings()
        } else {
            verdict(strings.iter().all(|&s| s > distance), || format!("strings {strings:?} at distance {distance}"))
        },
    );
    push(
        "isolated homology forces the rim",
        if zero_heart_projective {
            skip_strings()
        } else if strings.contains(&1) {
            verdict(distance == 0, || format!("isolated homology at distance {distance}"))
        } else {
            Outcome::Skipped("no isolated homology".into())
        },
    );
    push(
        "rigid complexes lie on the rim",
        if !alg.is_symmetric() {
            Outcome::Skipped("algebra is not symmetric".into())
        } else if rigid {
            verdict(distance == 0, || format!("rigid complex at distance {distance}"))
        } else {
            Outcome::Skipped("not rigid".into())
        },
    );
    Ok(PositionalReport {
        length,
        rim_distance: distance,
        rim_length,
        hom_to_shift,
        rigid,
        homology_dims,
        homology_strings: strings,
        checks,
    })
}

/// `P -> P_s -> nu P_s -> ... -> nu^(L-2) P_s` in degrees `1, ..., 2 - L`:
/// the projective cover of `Rad P_s` followed by top-to-socle maps. Its
/// zero homology vanishes, which isolates the top homology and puts the
/// complex on the rim.
pub fn big_homology_complex(alg: &Arc<Algebra>, s: usize, len: usize) -> Result<PerfectComplex> {
    let nak = alg.require_self_injective()?;
    if len < 3 || len % 2 == 0 {
        return Err(Error::Precondition(format!("length must be odd and at least 3, got {len}")));
    }
    let p = Representation::projective(alg, s);
    let (rad, incl) = p.radical();
    if rad.radical().0.is_zero() {
        return Err(Error::Precondition(format!("Rad P_{} has radical length below 2", alg.vertex_label(s))));
    }
    let cover = projective_cover(&rad)?;
    let top = cover.layout.summands().to_vec();
    let target = FreeLayout::new(alg, &[s]);
    let mut d1 = ProjMat::zero(alg, &top, &[s]);
    for (r, (&u, g)) in top.iter().zip(&cover.gens).enumerate() {
        d1.set(r, 0, target.component(&incl.maps[u].mul_vec(g), u, 0));
    }
    let mut verts = vec![s];
    for _ in 0..len - 2 {
        verts.push(nak.perm[*verts.last().unwrap()]);
    }
    // terms listed from the lowest degree 2 - len up to degree 1
    let mut terms: Vec<Vec<usize>> = verts.iter().rev().map(|&v| vec![v]).collect();
    terms.push(top);
    let mut diffs = Vec::new();
    for i in (1..verts.len()).rev() {
        let (a, b) = (verts[i - 1], verts[i]);
        let mut m = ProjMat::zero(alg, &[a], &[b]);
        m.set(0, 0, socle_map(alg, a, b)?);
        diffs.push(m);
    }
    diffs.push(d1);
    let x = PerfectComplex::new(alg, 2 - len as i64, terms, diffs)?;
    if !homology(&x, 0)?.is_zero() {
        return Err(Error::Inconsistent("zero homology of the big homology complex is nonzero".into()));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::super::stabilization;
    use super::*;
    use crate::algebra::{build_algebra, fixtures};
    use crate::complex::heart_complex;

    fn kt(n: usize, p: u64) -> Arc<Algebra> {
        build_algebra(&fixtures::kt(n, p)).unwrap()
    }

    #[test]
    fn heart_complex_is_at_maximal_distance() {
        let a = kt(3, 3);
        let r = positional_predicates(&heart_complex(&a, 0).unwrap()).unwrap();
        assert_eq!((r.length, r.rim_distance), (3, 2));
        assert_eq!(r.outcome("maximal distance only on nu-chains"), Some(&Outcome::Pass));
        assert!(r.consistent(), "{:?}", r.violations());
    }

    #[test]
    fn stalk_projective_is_rigid_and_on_rim() {
        let a = kt(3, 3);
        let r = positional_predicates(&PerfectComplex::stalk(&a, &[0], 0)).unwrap();
        assert!(r.rigid);
        assert_eq!(r.rim_distance, 0);
        assert_eq!(r.outcome("rigid complexes lie on the rim"), Some(&Outcome::Pass));
        assert_eq!(r.outcome("isolated homology forces the rim"), Some(&Outcome::Pass));
    }

    #[test]
    fn zero_heart_nu_chain_skips_string_checks() {
        let a = kt(2, 2);
        let r = positional_predicates(&nu_chain(&a, 0, 2).unwrap()).unwrap();
        assert_eq!(r.rim_distance, 2);
        assert_eq!(r.homology_strings, vec![1, 1]);
        assert!(matches!(r.outcome("isolated homology forces the rim"), Some(Outcome::Skipped(_))));
        assert!(r.consistent());
    }

    #[test]
    fn runs_of_nonzero_homology() {
        assert_eq!(runs(&[(2, 1), (1, 0), (0, 3), (-1, 2), (-2, 0)]), vec![1, 2]);
        assert!(runs(&[(0, 0)]).is_empty());
    }

    #[test]
    fn big_homology_shapes() {
        let a = kt(3, 3);
        let x = big_homology_complex(&a, 0, 3).unwrap();
        let t = |k: usize| a.path_elem(&vec![0; k], 0).unwrap();
        assert_eq!((x.lo(), x.hi()), (-1, 1));
        assert_eq!(x.diff(1).get(0, 0), t(1).as_slice());
        assert_eq!(x.diff(0).get(0, 0), t(2).as_slice());
        let y = big_homology_complex(&a, 0, 5).unwrap();
        let dims: Vec<usize> = (-3..=1).rev().map(|d| homology(&y, d).unwrap().dim()).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 2]);
        assert!(matches!(big_homology_complex(&kt(2, 2), 0, 3), Err(Error::Precondition(_))));
        assert!(matches!(big_homology_complex(&a, 0, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn big_homology_stabilizes_to_total_homology() {
        let a = kt(3, 3);
        for len in [3] {
            let x = big_homology_complex(&a, 0, len).unwrap();
            let r = positional_predicates(&x).unwrap();
            assert_eq!(r.rim_distance, 0);
            let st = stabilization(&x).unwrap();
            assert!(st.stable);
            assert_eq!(st.module.dim(), len);
        }
    }
}
