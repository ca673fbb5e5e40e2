//! Over C2 and C3 every module is stably a sum of suspensions of k;
//! from C4 on this fails, first witness the length-two cyclic module.
//! Jordan types of (sigma - 1) make the check exact.
//!
//!     cargo run --example decomposition

use stmod::groups::cyclic;
use stmod::verify::{verify_decomposition, SearchConfig};

fn main() -> Result<(), stmod::Error> {
    for (n, p) in [(2usize, 2u64), (3, 3), (4, 2), (5, 5)] {
        let g = cyclic(n)?;
        let mut cfg = SearchConfig::new(7, p);
        cfg.trials = 50;
        let report = verify_decomposition(&g, &cfg)?;
        println!(
            "C{n}: all modules decompose into suspensions of k: {}",
            report.passed()
        );
        for check in &report.checks {
            if check.outcome == "fail" {
                if let Some(w) = &check.witness {
                    println!("  witness [{}]: Jordan type {}", check.name, w["jordan_type"]);
                }
            }
        }
    }
    Ok(())
}
