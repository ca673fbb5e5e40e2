//! A ghost on a module of stable rank two over C_p x C_p: take the
//! one-dimensional module for an index-p subgroup H, induce it up, and
//! multiply by x - 1 for a central x outside H. Non-triviality is
//! detected by restricting back to H.
//!
//!     cargo run --example rank_two_ghost

use stmod::paperghosts::rank2_ghost;

fn main() -> Result<(), stmod::Error> {
    for p in [2u64, 3] {
        let bundle = rank2_ghost(p, None)?;
        println!(
            "C{p}xC{p}: module dim {}, verdict: {}",
            bundle.module().dim(),
            bundle.verdict.describe()
        );
        println!("  stably non-trivial: {}", bundle.stably_nontrivial);
        for note in &bundle.notes {
            println!("  note: {note}");
        }
        assert!(bundle.is_verified_counterexample());
    }
    Ok(())
}
