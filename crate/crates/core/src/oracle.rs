//! Exhaustive enumeration of ranking completions.
//!
//! The number of completions is the product of the per-voter ranking counts,
//! so everything here is guarded by an explicit bound. Completions stream in
//! odometer order with the last voter changing fastest.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::{profile_rankings, RankingWithWitness};
use crate::model::{add_scores, winners_from_scores, PartialSpatialProfile, Ranking, RankingProfile, ScoringRule};

pub const DEFAULT_GUARD: u128 = 1_000_000;

/// The rankings each voter can cast; their product is the completion space.
#[derive(Debug, Clone)]
pub struct CompletionSpace {
    pub candidates: usize,
    pub per_voter: Vec<Vec<RankingWithWitness>>,
}

impl CompletionSpace {
    pub fn new(profile: &PartialSpatialProfile) -> Result<Self> {
        Ok(CompletionSpace { candidates: profile.num_candidates(), per_voter: profile_rankings(profile)? })
    }

    /// Number of completions, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.per_voter.iter().fold(1u128, |acc, r| acc.saturating_mul(r.len() as u128))
    }

    pub fn iter(&self) -> Completions<'_> {
        Completions { space: self, digits: Some(vec![0; self.per_voter.len()]) }
    }
}

/// Odometer over a [`CompletionSpace`].
#[derive(Debug, Clone)]
pub struct Completions<'a> {
    space: &'a CompletionSpace,
    digits: Option<Vec<usize>>,
}

fn advance(digits: &mut [usize], radix: impl Fn(usize) -> usize) -> bool {
    for j in (0..digits.len()).rev() {
        digits[j] += 1;
        if digits[j] < radix(j) {
            return true;
        }
        digits[j] = 0;
    }
    false
}

impl Iterator for Completions<'_> {
    type Item = RankingProfile;

    fn next(&mut self) -> Option<RankingProfile> {
        let digits = self.digits.as_mut()?;
        let rankings: Vec<Ranking> =
            digits.iter().enumerate().map(|(j, &d)| self.space.per_voter[j][d].ranking.clone()).collect();
        let out = RankingProfile { candidates: self.space.candidates, rankings };
        if !advance(digits, |j| self.space.per_voter[j].len()) {
            self.digits = None;
        }
        Some(out)
    }
}

fn check_guard(what: &'static str, size: u128, guard: u128) -> Result<()> {
    if size > guard {
        return Err(Error::InstanceTooLarge { what, size, guard });
    }
    Ok(())
}

/// Checks the guard and returns the completion space of `profile`.
pub fn enumerate_completions(profile: &PartialSpatialProfile, guard: u128) -> Result<CompletionSpace> {
    let space = CompletionSpace::new(profile)?;
    check_guard("number of completions", space.count(), guard)?;
    Ok(space)
}

/// Distinct per-candidate score contributions of each voter. Completions
/// that differ only in ranking but not in scores are merged.
fn contributions(space: &CompletionSpace, vector: &[u64]) -> Vec<Vec<Vec<u64>>> {
    space
        .per_voter
        .iter()
        .map(|rankings| {
            let set: BTreeSet<Vec<u64>> = rankings
                .iter()
                .map(|rw| {
                    let mut s = vec![0; space.candidates];
                    add_scores(&mut s, &rw.ranking, vector);
                    s
                })
                .collect();
            set.into_iter().collect()
        })
        .collect()
}

/// Calls `visit` with the winner set of every distinct score outcome until it
/// returns `false`.
fn for_each_outcome(
    profile: &PartialSpatialProfile,
    rule: &ScoringRule,
    guard: u128,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    let vector = rule.score_vector(profile.num_candidates())?;
    let space = CompletionSpace::new(profile)?;
    let options = contributions(&space, &vector);
    let size = options.iter().fold(1u128, |acc, o| acc.saturating_mul(o.len() as u128));
    check_guard("number of distinct score outcomes", size, guard)?;

    let m = profile.num_candidates();
    let mut digits = vec![0; options.len()];
    loop {
        let mut scores = vec![0u64; m];
        for (j, &d) in digits.iter().enumerate() {
            for (s, add) in scores.iter_mut().zip(&options[j][d]) {
                *s += add;
            }
        }
        if !visit(&winners_from_scores(&scores)) {
            return Ok(());
        }
        if !advance(&mut digits, |j| options[j].len()) {
            return Ok(());
        }
    }
}

/// Candidates winning in at least one completion, ascending by index.
pub fn brute_pw(profile: &PartialSpatialProfile, rule: &ScoringRule, guard: u128) -> Result<Vec<usize>> {
    let mut found = vec![false; profile.num_candidates()];
    for_each_outcome(profile, rule, guard, |w| {
        for &c in w {
            found[c] = true;
        }
        !found.iter().all(|&f| f)
    })?;
    Ok((0..found.len()).filter(|&c| found[c]).collect())
}

/// Candidates winning in every completion, ascending by index.
pub fn brute_nw(profile: &PartialSpatialProfile, rule: &ScoringRule, guard: u128) -> Result<Vec<usize>> {
    let mut always = vec![true; profile.num_candidates()];
    for_each_outcome(profile, rule, guard, |w| {
        for (c, flag) in always.iter_mut().enumerate() {
            *flag &= w.contains(&c);
        }
        always.iter().any(|&f| f)
    })?;
    Ok((0..always.len()).filter(|&c| always[c]).collect())
}

/// Whether `c` wins in some completion; stops at the first witness.
pub fn brute_is_pw(profile: &PartialSpatialProfile, rule: &ScoringRule, c: usize, guard: u128) -> Result<bool> {
    let mut found = false;
    for_each_outcome(profile, rule, guard, |w| {
        found = w.contains(&c);
        !found
    })?;
    Ok(found)
}

/// Whether `c` wins in every completion; stops at the first counterexample.
pub fn brute_is_nw(profile: &PartialSpatialProfile, rule: &ScoringRule, c: usize, guard: u128) -> Result<bool> {
    let mut always = true;
    for_each_outcome(profile, rule, guard, |w| {
        always = w.contains(&c);
        always
    })?;
    Ok(always)
}
