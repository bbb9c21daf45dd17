//! Random complexes of projectives: minimal models, homology and
//! homotopy classes of maps.

use arquiver::algebra::{build_algebra, fixtures};
use arquiver::complex::{decompose_complex, hom_k, homology, minimize, random_complex, ComplexMap, PerfectComplex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> arquiver::Result<()> {
    let a = build_algebra(&fixtures::nakayama(2, 3, 3))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = random_complex(&a, &mut rng, 0, &[2, 2, 1])?;
    let p = PerfectComplex::stalk(&a, &[0], 1);
    let y = PerfectComplex::direct_sum(&[&x, &PerfectComplex::mapping_cone(&ComplexMap::identity(&p))])?;
    print!("{}", y.to_ascii());

    let m = minimize(&y)?;
    println!("minimal model ({} summands, certified: {}):", m.complex.num_summands(), m.certify()?);
    print!("{}", m.complex.to_ascii());
    for d in m.complex.degrees() {
        println!("H_{d} has dimension vector {:?}", homology(&m.complex, d)?.module.dims());
    }
    println!("dim Hom_K(X, X) = {}", hom_k(&m.complex, &m.complex)?.dim());
    println!("dim Hom_K(X, X[1]) = {}", hom_k(&m.complex, &m.complex.shift(1))?.dim());
    for s in decompose_complex(&y, 0)? {
        println!("indecomposable summand of length {}", s.complex.length()?);
    }
    Ok(())
}
