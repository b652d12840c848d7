//! Possible winners on the line under the rules with polynomial algorithms:
//! k-approval, weighted veto and F(k, t) with k > t.
//!
//!     cargo run --example line_rules

use svk::model::{integer, Candidate, PartialSpatialProfile, ScoringRule, VoterBox};
use svk::winners::{possible_winners, Exponential};

fn main() -> svk::Result<()> {
    let candidates = (1..=5).map(|i| Candidate::new(format!("c{i}"), vec![integer(2 * i)])).collect();
    let voters = vec![
        VoterBox::new("v1", vec![(integer(1), integer(4))]),
        VoterBox::new("v2", vec![(integer(5), integer(6))]),
        VoterBox::new("v3", vec![(integer(9), integer(12))]),
        VoterBox::new("v4", vec![(integer(3), integer(3))]),
    ];
    let profile = PartialSpatialProfile::new(1, candidates, voters)?;

    let rules = [
        ScoringRule::approval(2),
        ScoringRule::approval(3),
        ScoringRule::WeightedVeto { alpha: 3, betas: vec![2, 0] },
        ScoringRule::Fkt { k: 2, t: 1 },
    ];
    for rule in rules {
        let ids: Vec<&str> = possible_winners(&profile, &rule, Exponential::Forbid)?
            .iter()
            .map(|&c| profile.candidates()[c].id.as_str())
            .collect();
        println!("{rule:<14} possible winners: {{{}}}", ids.join(", "));
    }

    // Borda has no polynomial algorithm here; opt in to enumeration.
    let borda: Vec<&str> = possible_winners(&profile, &ScoringRule::Borda, Exponential::Allow { guard: 10_000 })?
        .iter()
        .map(|&c| profile.candidates()[c].id.as_str())
        .collect();
    println!("{:<14} possible winners: {{{}}} (enumerated)", "borda", borda.join(", "));
    Ok(())
}
