//! Rim distance, rigidity and homology strings of a few complexes.

use arquiver::algebra::{build_algebra, fixtures};
use arquiver::complex::{heart_complex, nu_chain, PerfectComplex};
use arquiver::explorer::positional_predicates;

fn main() -> arquiver::Result<()> {
    let a = build_algebra(&fixtures::kt(3, 3))?;
    let samples = [
        ("stalk P", PerfectComplex::stalk(&a, &[0], 0)),
        ("nu-chain of length 2", nu_chain(&a, 0, 1)?),
        ("heart complex", heart_complex(&a, 0)?),
    ];
    for (name, z) in samples {
        let r = positional_predicates(&z)?;
        println!(
            "{name}: length {}, distance {}, rigid {}, strings {:?}, consistent {}",
            r.length, r.rim_distance, r.rigid, r.homology_strings, r.consistent()
        );
    }
    Ok(())
}
