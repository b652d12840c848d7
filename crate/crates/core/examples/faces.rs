//! Faces of the bisector arrangement in the plane, and the rankings a box
//! voter can hold.
//!
//!     cargo run --example faces

use svk::geometry::{bisectors, enumerate_rankings_dd, specify_faces};
use svk::model::{format_rational, integer, Candidate, VoterBox};

fn main() -> svk::Result<()> {
    let candidates: Vec<Candidate> = [(0, 0), (4, 0), (0, 4), (3, 3)]
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| Candidate::new(format!("c{}", i + 1), vec![integer(x), integer(y)]))
        .collect();

    let planes = bisectors(&candidates);
    let faces = specify_faces(2, &planes);
    println!("{} bisectors cut the plane into {} faces", planes.len(), faces.len());

    let voter = VoterBox::new("v", vec![(integer(1), integer(3)), (integer(1), integer(2))]);
    let rankings = enumerate_rankings_dd(&candidates, &voter)?;
    println!("box [1,3] x [1,2] induces {} rankings:", rankings.len());
    for rw in rankings {
        let order: Vec<&str> = rw.ranking.order().iter().map(|&c| candidates[c].id.as_str()).collect();
        let at: Vec<String> = rw.witness.coords().iter().map(format_rational).collect();
        println!("  {:<22} at ({})", order.join(" > "), at.join(", "));
    }
    Ok(())
}
