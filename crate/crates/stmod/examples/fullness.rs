//! Windowed fullness of the Tate functor over C2 and C3: stable maps
//! between sums of suspensions of k correspond exactly to graded maps
//! of modules over the Tate cohomology ring of the group.
//!
//!     cargo run --example fullness

use stmod::groups::cyclic;
use stmod::verify::{verify_tate_fullness, SearchConfig};

fn main() -> Result<(), stmod::Error> {
    for (n, p) in [(2usize, 2u64), (3, 3)] {
        let g = cyclic(n)?;
        let report = verify_tate_fullness(&g, &SearchConfig::new(7, p))?;
        println!("C{n}:");
        for check in &report.checks {
            println!(
                "  {:<22} {}  {}",
                check.name,
                check.outcome,
                check.detail.as_deref().unwrap_or("")
            );
        }
        assert!(report.passed());
    }
    Ok(())
}
