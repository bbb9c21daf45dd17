//! Stabilization modules: a presentation component, a projective
//! component and complexes with big homology.

use arquiver::algebra::{build_algebra, fixtures};
use arquiver::complex::{presentation_complex, PerfectComplex};
use arquiver::explorer::{big_homology_complex, stabilization};
use arquiver::module::Representation;

fn main() -> arquiver::Result<()> {
    let a = build_algebra(&fixtures::kt(3, 3))?;
    let st = stabilization(&presentation_complex(&Representation::simple(&a, 0))?)?;
    println!("P_J1: dim {} at {:?}, stable: {}, wing rim factors: {:?}", st.module.dim(), st.position, st.stable, st.wing_rim_factors);
    let st = stabilization(&PerfectComplex::stalk(&a, &[0], 0))?;
    println!("P: heart of dim {} at {:?}", st.module.dim(), st.position);
    for len in [3, 5] {
        let x = big_homology_complex(&a, 0, len)?;
        println!("length {len}: dim {}", stabilization(&x)?.module.dim());
    }
    Ok(())
}
