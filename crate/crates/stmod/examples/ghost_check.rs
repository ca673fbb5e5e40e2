//! The smallest non-trivial ghost: multiplication by sigma - 1 on the
//! two-dimensional cyclic module over C4. It kills all Tate cohomology
//! yet is not stably zero — and the same construction over C3 is
//! stably trivial, so C3 produces no counterexample.
//!
//!     cargo run --example ghost_check

use stmod::exactlin::PrimeField;
use stmod::paperghosts::{cyclic_length2_control, cyclic_length2_ghost};
use stmod::stable::StableCat;

fn main() -> Result<(), stmod::Error> {
    let bundle = cyclic_length2_ghost(4)?;
    println!("over C4, sigma - 1 on the length-two cyclic module:");
    println!("  verdict:            {}", bundle.verdict.describe());
    println!("  stably non-trivial: {}", bundle.stably_nontrivial);
    println!("  counterexample:     {}", bundle.is_verified_counterexample());
    for note in &bundle.notes {
        println!("  note: {note}");
    }

    // double-check both claims directly against the category layer
    let cat = StableCat::new(bundle.group.clone(), PrimeField::new(2)?)?;
    let verdict = cat.is_ghost(&bundle.map, 4, None)?;
    println!("  recheck: {}", verdict.describe());
    assert!(!cat.is_stably_trivial(&bundle.map)?);

    let control = cyclic_length2_control(3)?;
    println!("over C3, the same construction:");
    println!("  verdict:            {}", control.verdict.describe());
    println!("  stably non-trivial: {}", control.stably_nontrivial);
    Ok(())
}
