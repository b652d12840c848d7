//! Possible and necessary winners for spatial elections where each voter's
//! position is only known to lie in an axis-aligned box.
//!
//! The crate enumerates the rankings a box can induce (exactly, over the
//! rationals), decides necessary winners for any positional scoring rule,
//! decides possible winners for the rule families that admit polynomial
//! algorithms, and ships a brute-force oracle plus the scheduling reduction
//! used to show hardness on the line.

pub mod cli;
pub mod error;
pub(crate) mod flow;
pub mod generate;
pub mod geometry;
pub mod io;
pub mod lfp;
pub mod model;
pub mod oracle;
pub mod scheduling;
pub mod winners;

pub use error::{Error, Result};
pub use model::{
    Candidate, KParam, PartialSpatialProfile, Ranking, RankingProfile, Rational, ScoringRule, SpatialPoint, VoterBox,
};
pub use winners::{necessary_winners, possible_winners, Exponential};
