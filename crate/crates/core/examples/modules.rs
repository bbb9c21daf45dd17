//! Jordan blocks over k[t]/(t^3): syzygies, Hom spaces and decomposition.

use arquiver::algebra::{build_algebra, fixtures};
use arquiver::linalg::Matrix;
use arquiver::module::{decompose, hom_space, syzygy, tau, Representation};

fn main() -> arquiver::Result<()> {
    let a = build_algebra(&fixtures::kt(3, 3))?;
    let jordan = |i: usize| {
        let t = Matrix::from_fn(a.field(), i, i, |r, c| u64::from(r == c + 1));
        Representation::new(a.clone(), vec![i], vec![t])
    };
    let (j1, j2) = (jordan(1)?, jordan(2)?);
    println!("dim Hom(J1, J2) = {}", hom_space(&j1, &j2)?.len());
    println!("dim Hom(J2, J2) = {}", hom_space(&j2, &j2)?.len());
    println!("Omega J1 has dim {}", syzygy(&j1)?.0.dim());
    println!("tau J2 has dim {}", tau(&j2)?.dim());

    let m = Representation::direct_sum(&[&j1, &j2, &j1])?;
    for (x, k) in decompose(&m, 0)? {
        println!("summand of dim {} with multiplicity {k}", x.dim());
    }
    Ok(())
}
