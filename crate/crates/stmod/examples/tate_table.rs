//! Tate cohomology dimension tables for a few modules.
//!
//!     cargo run --example tate_table

use stmod::exactlin::PrimeField;
use stmod::groups::{cyclic, direct_product};
use stmod::reps::{cyclic_module, regular_module};
use stmod::stable::StableCat;

fn main() -> Result<(), stmod::Error> {
    let g = cyclic(4)?;
    let f2 = PrimeField::new(2)?;
    let cat = StableCat::new(g.clone(), f2)?;

    println!("dim H^i(C4, M) for i = -3..3:");
    for (label, m) in [
        ("k          ", cat.trivial()),
        ("cyclic(2)  ", cyclic_module(&g, f2, 2)?),
        ("cyclic(3)  ", cyclic_module(&g, f2, 3)?),
        ("kG (proj)  ", regular_module(&g, f2)),
    ] {
        let dims: Vec<usize> = (-3..=3)
            .map(|i| cat.tate_dim(&m, i))
            .collect::<Result<_, _>>()?;
        println!("  {label} {dims:?}");
    }

    let c2 = cyclic(2)?;
    let v4 = direct_product(&c2, &c2)?;
    let cat = StableCat::new(v4, f2)?;
    let dims: Vec<usize> = (-3..=3)
        .map(|i| cat.tate_dim(&cat.trivial(), i))
        .collect::<Result<_, _>>()?;
    println!("dim H^i(C2xC2, k) for i = -3..3: {dims:?}");
    Ok(())
}
