//! Stable hom spaces: dimensions of Hom, of the maps factoring
//! through projectives, and of the quotient, plus a stable
//! isomorphism test with explicit witnesses.
//!
//!     cargo run --example stable_maps

use stmod::exactlin::PrimeField;
use stmod::groups::cyclic;
use stmod::reps::{cyclic_module, direct_sum, regular_module};
use stmod::stable::{StableCat, StableIso};

fn main() -> Result<(), stmod::Error> {
    let g = cyclic(4)?;
    let f2 = PrimeField::new(2)?;
    let cat = StableCat::new(g.clone(), f2)?;
    let k = cat.trivial();
    let l2 = cyclic_module(&g, f2, 2)?;
    let l3 = cyclic_module(&g, f2, 3)?;
    let kg = regular_module(&g, f2);

    for (a, la, b, lb) in [
        (&k, "k", &k, "k"),
        (&l2, "cyclic(2)", &l2, "cyclic(2)"),
        (&l2, "cyclic(2)", &l3, "cyclic(3)"),
        (&kg, "kG", &k, "k"),
    ] {
        let sh = cat.stable_hom(a, b)?;
        println!(
            "Hom({la}, {lb}): dim {}, through projectives {}, stable {}",
            sh.hom_dim(),
            sh.phom_dim(),
            sh.stable_dim()
        );
    }

    // M and M + kG are the same object stably
    let padded = direct_sum(&l3, &kg)?;
    match cat.is_stable_iso(&l3, &padded, 20, 5)? {
        StableIso::Yes { forward, .. } => println!(
            "cyclic(3) = cyclic(3) + kG stably, witness is {}x{}",
            forward.mat().rows(),
            forward.mat().cols()
        ),
        other => panic!("expected a stable isomorphism, got {other:?}"),
    }
    // but cyclic(2) and cyclic(3) differ stably (Jordan types 2 vs 3)
    assert!(!cat.is_stable_iso(&l2, &l3, 20, 5)?.is_iso());
    println!("cyclic(2) and cyclic(3) are not stably isomorphic");
    Ok(())
}
