//! Plurality and veto possible winners in the plane via bipartite flow,
//! checked against exhaustive enumeration.
//!
//!     cargo run --example plurality_veto_plane

use svk::generate::{random_profile, ProfileParams};
use svk::model::ScoringRule;
use svk::oracle::{brute_pw, DEFAULT_GUARD};
use svk::winners::{pw_plurality, pw_veto};

fn main() -> svk::Result<()> {
    let params = ProfileParams { dimension: 2, candidates: 5, voters: 4, range: 8, denominator: 2, max_width: 4 };
    let profile = random_profile(&params, 11)?;

    for (rule, decide) in [(ScoringRule::Plurality, pw_plurality as fn(&_, usize) -> _), (ScoringRule::Veto, pw_veto)] {
        let brute = brute_pw(&profile, &rule, DEFAULT_GUARD)?;
        for (c, cand) in profile.candidates().iter().enumerate() {
            let fast = decide(&profile, c)?;
            assert_eq!(fast, brute.contains(&c));
            println!("{rule:<10} {}: {}", cand.id, if fast { "possible" } else { "not possible" });
        }
    }
    Ok(())
}
