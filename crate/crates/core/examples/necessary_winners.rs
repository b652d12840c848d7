//! Necessary winners for several scoring rules on a small planar election.
//!
//!     cargo run --example necessary_winners

use svk::model::{integer, rational, Candidate, PartialSpatialProfile, ScoringRule, VoterBox};
use svk::winners::necessary_winners;

fn main() -> svk::Result<()> {
    let candidates = vec![
        Candidate::new("a", vec![integer(0), integer(0)]),
        Candidate::new("b", vec![integer(4), integer(0)]),
        Candidate::new("c", vec![integer(2), integer(3)]),
    ];
    let voters = vec![
        VoterBox::new("v1", vec![(integer(0), integer(1)), (integer(0), integer(1))]),
        VoterBox::new("v2", vec![(rational(1, 2), integer(2)), (integer(0), rational(1, 2))]),
        VoterBox::new("v3", vec![(integer(2), integer(4)), (integer(0), integer(3))]),
    ];
    let profile = PartialSpatialProfile::new(2, candidates, voters)?;

    for rule in [ScoringRule::Plurality, ScoringRule::Veto, ScoringRule::Borda, ScoringRule::approval(2)] {
        let ids: Vec<&str> =
            necessary_winners(&profile, &rule)?.iter().map(|&c| profile.candidates()[c].id.as_str()).collect();
        println!("{rule:<12} necessary winners: {{{}}}", ids.join(", "));
    }
    Ok(())
}
