//! Build a few algebras and print their basic invariants.

use arquiver::algebra::{build_algebra, fixtures};

fn main() -> arquiver::Result<()> {
    for (name, q) in [
        ("k[t]/(t^3) over GF(3)", fixtures::kt(3, 3)),
        ("cyclic Nakayama, 2 vertices, radical length 3", fixtures::nakayama(2, 3, 5)),
        ("path algebra of 1 -> 2", fixtures::a2(2)),
    ] {
        let a = build_algebra(&q)?;
        println!("{name}");
        println!("  dim {}, loewy length {}", a.dim(), a.loewy_length());
        println!("  cartan {:?}", a.cartan_matrix());
        match a.nakayama_permutation() {
            Some(p) => println!("  self-injective, nakayama permutation {p:?}, symmetric: {}", a.is_symmetric()),
            None => println!("  not self-injective"),
        }
    }
    Ok(())
}
