//! Syzygies of the trivial module: dimensions over cyclic groups and
//! the Klein four group, and the periodicity Omega^2 k = k for cyclic
//! groups.
//!
//!     cargo run --example syzygies

use stmod::exactlin::PrimeField;
use stmod::groups::{cyclic, direct_product};
use stmod::stable::StableCat;

fn main() -> Result<(), stmod::Error> {
    for (n, p) in [(2usize, 2u64), (3, 3), (4, 2), (5, 5), (8, 2), (9, 3)] {
        let cat = StableCat::new(cyclic(n)?, PrimeField::new(p)?)?;
        let dims: Vec<usize> = (0..=4)
            .map(|i| cat.omega_k(i).map(|m| m.dim()))
            .collect::<Result<_, _>>()?;
        let periodic = cat
            .is_stable_iso(&cat.omega_k(2)?, &cat.trivial(), 20, 5)?
            .is_iso();
        println!(
            "C{n} (F{p}): dim Omega^i k for i = 0..4: {dims:?}; Omega^2 k = k stably: {periodic}"
        );
    }

    let c2 = cyclic(2)?;
    let v4 = direct_product(&c2, &c2)?;
    let cat = StableCat::new(v4, PrimeField::new(2)?)?;
    let dims: Vec<usize> = (-3..=5)
        .map(|i| cat.omega_k(i).map(|m| m.dim()))
        .collect::<Result<_, _>>()?;
    println!("C2xC2 (F2): dim Omega^i k for i = -3..5: {dims:?} (2|i| + 1, not periodic)");
    Ok(())
}
