//! Exhaustive enumeration of ranking completions.
//!
//!     cargo run --example brute_force

use svk::io::{read_instance, Instance};
use svk::model::{winners, ScoringRule};
use svk::oracle::{brute_nw, brute_pw, enumerate_completions, DEFAULT_GUARD};

fn main() -> svk::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/three_candidates.json");
    let Instance::Election(election) = read_instance(path)? else {
        panic!("{path} is not an election");
    };
    let p = &election.profile;
    let name = |c: usize| p.candidates()[c].id.clone();

    let space = enumerate_completions(p, DEFAULT_GUARD)?;
    println!("{} completions", space.count());
    for completion in space.iter() {
        let order: Vec<String> = completion.rankings[0].order().iter().map(|&c| name(c)).collect();
        let won: Vec<String> = winners(&completion, &ScoringRule::Plurality)?.into_iter().map(name).collect();
        println!("  {}  -> plurality winner {}", order.join(" > "), won.join(", "));
    }
    let pw: Vec<String> = brute_pw(p, &ScoringRule::Plurality, DEFAULT_GUARD)?.into_iter().map(name).collect();
    let nw: Vec<String> = brute_nw(p, &ScoringRule::Plurality, DEFAULT_GUARD)?.into_iter().map(name).collect();
    println!("possible: {{{}}}  necessary: {{{}}}", pw.join(", "), nw.join(", "));
    Ok(())
}
