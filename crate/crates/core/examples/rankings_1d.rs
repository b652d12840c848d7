//! Rankings a single voter on the line can hold when only an interval for
//! their position is known.
//!
//!     cargo run --example rankings_1d

use svk::geometry::{enumerate_rankings_1d, tie_points_1d};
use svk::model::{format_rational, integer, Candidate};

fn main() -> svk::Result<()> {
    let candidates: Vec<Candidate> =
        (1..=3).map(|i| Candidate::new(format!("c{i}"), vec![integer(i)])).collect();
    let (lo, hi) = (integer(1), integer(3));

    let ties: Vec<String> = tie_points_1d(&candidates, &lo, &hi)?.iter().map(format_rational).collect();
    println!("tie points in [1, 3]: {}", ties.join(", "));

    for rw in enumerate_rankings_1d(&candidates, &lo, &hi)? {
        let order: Vec<&str> = rw.ranking.order().iter().map(|&c| candidates[c].id.as_str()).collect();
        println!("{:<14} at x = {}", order.join(" > "), format_rational(&rw.witness.0[0]));
    }
    Ok(())
}
