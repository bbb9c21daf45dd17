//! The Auslander-Reiten triangle ending at `P -t-> P` and its checks.

use arquiver::algebra::{build_algebra, fixtures};
use arquiver::ar::{ar_triangle_ending_at, sample_objects, verify_ar_triangle};
use arquiver::complex::presentation_complex;
use arquiver::module::Representation;

fn main() -> arquiver::Result<()> {
    let a = build_algebra(&fixtures::kt(3, 3))?;
    let z = presentation_complex(&Representation::simple(&a, 0))?;
    let t = ar_triangle_ending_at(&z)?;
    for (name, x) in [("A", &t.a), ("B", &t.b), ("C", &t.c)] {
        println!("{name}:");
        print!("{}", x.to_ascii());
    }
    let report = verify_ar_triangle(&t, &sample_objects(&a));
    for c in &report.checks {
        println!("{}: {:?}", c.name, c.outcome);
    }
    Ok(())
}
