//! Induction from a subgroup preserves ghosts: push the C4 ghost up
//! along <sigma^2> <= C8 and verify it again over C8. Also checks the
//! dimension identity behind the adjunction between induction and
//! restriction on Tate cohomology.
//!
//!     cargo run --example induction

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stmod::exactlin::PrimeField;
use stmod::groups::{cyclic, subgroup};
use stmod::paperghosts::induced_c8_ghost;
use stmod::reps::induce;
use stmod::stable::StableCat;
use stmod::verify::random_module;

fn main() -> Result<(), stmod::Error> {
    let bundle = induced_c8_ghost()?;
    println!(
        "ghost induced from C4 up to C8: dim {}, verdict: {}",
        bundle.module().dim(),
        bundle.verdict.describe()
    );
    println!("  stably non-trivial: {}", bundle.stably_nontrivial);

    let g = cyclic(8)?;
    let sub = subgroup(&g, &[2])?;
    let h = sub.as_group()?;
    let gcat = StableCat::new(g, PrimeField::new(2)?)?;
    let hcat = StableCat::new(h, PrimeField::new(2)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    println!("adjunction check, dim H^i(C8, L^ind) = dim H^i(C4, L), i = -3..3:");
    for _ in 0..5 {
        let l = random_module(&hcat, 6, &mut rng)?;
        let ind = induce(&sub, &l)?;
        let over_g: Vec<usize> = (-3..=3)
            .map(|i| gcat.tate_dim(&ind, i))
            .collect::<Result<_, _>>()?;
        let over_h: Vec<usize> = (-3..=3)
            .map(|i| hcat.tate_dim(&l, i))
            .collect::<Result<_, _>>()?;
        assert_eq!(over_g, over_h);
        println!("  dim L = {}: {over_h:?} (both sides)", l.dim());
    }
    Ok(())
}
