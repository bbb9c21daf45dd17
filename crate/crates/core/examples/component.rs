//! The component of a stalk projective over k[t]/(t^2) as ASCII and DOT,
//! and the homology diagram of a projective over k[t]/(t^3).

use arquiver::algebra::{build_algebra, fixtures};
use arquiver::complex::PerfectComplex;
use arquiver::explorer::{component_slice, diagram_ascii, homology_diagram, slice_ascii, slice_dot, DEFAULT_NODE_BUDGET};

fn main() -> arquiver::Result<()> {
    let a = build_algebra(&fixtures::kt(2, 2))?;
    let s = component_slice(&PerfectComplex::stalk(&a, &[0], 0), 3, 5, DEFAULT_NODE_BUDGET)?;
    print!("{}", slice_ascii(&s)?);
    println!();
    print!("{}", slice_dot(&s)?);

    let b = build_algebra(&fixtures::kt(3, 3))?;
    let s = component_slice(&PerfectComplex::stalk(&b, &[0], 0), 2, 3, DEFAULT_NODE_BUDGET)?;
    println!();
    print!("{}", diagram_ascii(&homology_diagram(&s)?));
    Ok(())
}
