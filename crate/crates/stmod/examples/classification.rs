//! The headline classification: over a non-trivial finite p-group,
//! every map invisible to Tate cohomology is stably trivial exactly
//! when the group is C2 or C3. Prints the verdict per group and runs
//! the randomized search where it is expected to succeed.
//!
//!     cargo run --example classification

use stmod::groups::{cyclic, direct_product};
use stmod::verify::{classify_gh, verify_no_ghosts, SearchConfig};

fn main() -> Result<(), stmod::Error> {
    let c2 = cyclic(2)?;
    let v4 = direct_product(&c2, &c2)?;
    let groups = [
        (cyclic(2)?, 2u64),
        (cyclic(3)?, 3),
        (cyclic(4)?, 2),
        (cyclic(5)?, 5),
        (cyclic(8)?, 2),
        (cyclic(9)?, 3),
        (v4, 2),
    ];
    for (g, p) in &groups {
        println!(
            "{:>10} (p = {p}): no-ghosts holds: {}",
            g.name(),
            classify_gh(g, *p)?
        );
    }

    for (n, p) in [(2usize, 2u64), (3, 3)] {
        let g = cyclic(n)?;
        let mut cfg = SearchConfig::new(7, p);
        cfg.trials = 50;
        let report = verify_no_ghosts(&g, &cfg, false)?;
        println!(
            "search over C{n}: {} ({} checks)",
            if report.passed() { "no violations" } else { "VIOLATIONS" },
            report.checks.len()
        );
    }
    Ok(())
}
