//! Exact feasibility of mixed strict and non-strict linear inequalities.
//!
//!     cargo run --example feasibility

use svk::lfp::{feasible, InequalitySystem, LinearInequality};
use svk::model::{format_rational, integer};

fn row(a: i64, b: i64, c: i64, strict: bool) -> LinearInequality {
    LinearInequality::new(vec![integer(a), integer(b)], integer(c), strict)
}

fn main() {
    // x > 0, y > 0, x + y < 1: an open triangle
    let open = InequalitySystem::new(2, vec![row(-1, 0, 0, true), row(0, -1, 0, true), row(1, 1, 1, true)]);
    // x ≥ 0, y ≥ 0, x + y < 0: empty
    let empty = InequalitySystem::new(2, vec![row(-1, 0, 0, false), row(0, -1, 0, false), row(1, 1, 0, true)]);

    for (name, system) in [("open triangle", open), ("empty wedge", empty)] {
        match feasible(&system) {
            Some(p) => {
                let at: Vec<String> = p.coords().iter().map(format_rational).collect();
                println!("{name}: feasible at ({})", at.join(", "));
            }
            None => println!("{name}: infeasible"),
        }
    }
}
