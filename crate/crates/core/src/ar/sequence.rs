use serde::Serialize;

use super::triangle::{ar_triangle_ending_at, Triangle};
use crate::complex::{homology, homology_map, presentation_complex, PerfectComplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::module::{decompose_summands, hom_space, is_isomorphic, nakayama_module, syzygy, tau, ModuleMap, Representation};

/// `0 -> tau M -iota-> E -pi-> M -> 0` together with the triangle it was
/// read off from.
#[derive(Clone, Debug)]
pub struct ArSequence {
    pub tau_m: Representation,
    pub middle: Representation,
    pub end: Representation,
    pub iota: ModuleMap,
    pub pi: ModuleMap,
    pub triangle: Triangle,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub injective: bool,
    pub surjective: bool,
    pub exact_in_middle: bool,
    pub non_split: bool,
}

impl SequenceReport {
    pub fn passed(&self) -> bool {
        self.injective && self.surjective && self.exact_in_middle && self.non_split
    }
}

impl ArSequence {
    /// Exactness, and non-splitness by solving for a section of `pi`.
    pub fn verify(&self) -> Result<SequenceReport> {
        let injective = self.iota.is_injective();
        let surjective = self.pi.is_surjective();
        let exact_in_middle =
            self.iota.then(&self.pi).is_zero() && self.middle.dim() == self.tau_m.dim() + self.end.dim();
        Ok(SequenceReport { injective, surjective, exact_in_middle, non_split: !has_section(&self.pi, &self.end, &self.middle)? })
    }
}

/// Whether some `s: M -> E` has `s then pi = id_M`.
pub fn has_section(pi: &ModuleMap, m: &Representation, e: &Representation) -> Result<bool> {
    let basis = hom_space(m, e)?;
    let id = ModuleMap::identity(m).flatten();
    if basis.is_empty() {
        return Ok(id.is_empty());
    }
    let f = m.field();
    let cols: Vec<Vec<u64>> = basis.iter().map(|s| s.then(pi).flatten()).collect();
    let a = Matrix::from_row_vecs(f, id.len(), &cols).transpose();
    Ok(a.solve(&Matrix::col_vector(f, &id))?.is_some())
}

fn require_indecomposable_nonprojective(m: &Representation) -> Result<()> {
    if m.is_zero() {
        return Err(Error::Precondition("the zero module has no Auslander-Reiten sequence".into()));
    }
    if syzygy(m)?.0.is_zero() {
        return Err(Error::Precondition("module is projective".into()));
    }
    if decompose_summands(m, 0)?.len() != 1 {
        return Err(Error::Precondition("module is decomposable".into()));
    }
    Ok(())
}

fn iso_or(a: &Representation, b: &Representation, what: &str) -> Result<ModuleMap> {
    is_isomorphic(a, b, 0)?.ok_or_else(|| Error::Inconsistent(format!("cross-check failed: {what}")))
}

/// The sequence ending at `m`, from the triangle ending at its
/// presentation complex; `tau M` is checked against `nu Omega^2 M`.
pub fn ar_sequence(m: &Representation) -> Result<ArSequence> {
    m.algebra().require_self_injective()?;
    require_indecomposable_nonprojective(m)?;
    let p = presentation_complex(m)?;
    let t = ar_triangle_ending_at(&p)?;
    let (ha, hb, hc) = (homology(&t.a, 0)?, homology(&t.b, 0)?, homology(&t.c, 0)?);
    let iota = homology_map(&t.u, &ha, &hb)?;
    let to_m = iso_or(&hc.module, m, "H_0 of the presentation complex is M")?;
    let pi = homology_map(&t.v, &hb, &hc)?.then(&to_m);
    iso_or(&ha.module, &tau(m)?, "H_0 of the first term is nu Omega^2 M")?;
    let (o1, _, _) = syzygy(m)?;
    let (o2, _, _) = syzygy(&o1)?;
    iso_or(&homology(&t.b, 1)?.module, &o2, "H_1 of the middle is Omega^2 M")?;
    iso_or(&homology(&t.b, -1)?.module, &nakayama_module(m)?, "H_-1 of the middle is nu M")?;
    Ok(ArSequence { tau_m: ha.module, middle: hb.module, end: m.clone(), iota, pi, triangle: t })
}

/// The three-term middle complex of the triangle ending at the
/// presentation complex of `m`, over a symmetric algebra; its homology in
/// degrees 1, 0, -1 is `tau M`, `E_M`, `M`.
pub fn e_complex(m: &Representation) -> Result<PerfectComplex> {
    if !m.algebra().is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let s = ar_sequence(m)?;
    let b = s.triangle.b;
    iso_or(&homology(&b, 1)?.module, &s.tau_m, "H_1 is tau M")?;
    iso_or(&homology(&b, -1)?.module, m, "H_-1 is M")?;
    Ok(b)
}
