//! Auslander-Reiten sequences over k[t]/(t^3), read off triangles.

use arquiver::algebra::{build_algebra, fixtures};
use arquiver::ar::ar_sequence;
use arquiver::module::{decompose, Representation};

fn main() -> arquiver::Result<()> {
    let a = build_algebra(&fixtures::kt(3, 3))?;
    let s = Representation::simple(&a, 0);
    let j2 = Representation::projective(&a, 0).radical().0;
    for (name, m) in [("J1", s), ("J2", j2)] {
        let seq = ar_sequence(&m)?;
        let middle: Vec<usize> = decompose(&seq.middle, 0)?.iter().flat_map(|(x, k)| vec![x.dim(); *k]).collect();
        println!("{name}: 0 -> dim {} -> {middle:?} -> dim {} -> 0", seq.tau_m.dim(), seq.end.dim());
        println!("  {:?}", seq.verify()?);
    }
    Ok(())
}
