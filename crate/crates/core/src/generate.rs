//! Seeded random instances. The same parameters and seed always give the
//! same instance.

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{rational, Candidate, PartialSpatialProfile, Rational, VoterBox};
use crate::scheduling::{Job, SchedulingInstance};

/// Coordinates are multiples of `1 / denominator` in `[0, range]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileParams {
    pub dimension: usize,
    pub candidates: usize,
    pub voters: usize,
    pub range: i64,
    pub denominator: i64,
    /// Largest side length of a voter box, in units of `1 / denominator`.
    pub max_width: i64,
}

impl Default for ProfileParams {
    fn default() -> Self {
        ProfileParams { dimension: 1, candidates: 4, voters: 3, range: 10, denominator: 2, max_width: 6 }
    }
}

/// A random profile. On the line candidate positions are distinct.
pub fn random_profile(params: &ProfileParams, seed: u64) -> Result<PartialSpatialProfile> {
    let ProfileParams { dimension, candidates, voters, range, denominator, max_width } = *params;
    if range < 1 || denominator < 1 || max_width < 0 {
        return Err(Error::PreconditionViolated("range and denominator must be positive".into()));
    }
    let steps = range * denominator;
    if dimension == 1 && candidates as i64 > steps + 1 {
        return Err(Error::PreconditionViolated(format!("cannot place {candidates} distinct candidates on {steps} steps")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let at = |v: i64| rational(v, denominator);

    let cands = if dimension == 1 {
        let mut picks = sample(&mut rng, steps as usize + 1, candidates).into_vec();
        picks.sort_unstable();
        picks.iter().enumerate().map(|(i, &x)| Candidate::new(format!("c{}", i + 1), vec![at(x as i64)])).collect()
    } else {
        (0..candidates)
            .map(|i| Candidate::new(format!("c{}", i + 1), (0..dimension).map(|_| at(rng.gen_range(0..=steps))).collect()))
            .collect()
    };
    let boxes = (0..voters)
        .map(|j| {
            let bounds: Vec<(Rational, Rational)> = (0..dimension)
                .map(|_| {
                    let lo = rng.gen_range(0..=steps);
                    let width = rng.gen_range(0..=max_width.min(steps - lo));
                    (at(lo), at(lo + width))
                })
                .collect();
            VoterBox::new(format!("v{}", j + 1), bounds)
        })
        .collect();
    PartialSpatialProfile::new(dimension, cands, boxes)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleParams {
    pub jobs: usize,
    pub machines: usize,
    /// Deadlines are at most `horizon + 1`.
    pub horizon: u64,
    /// Each job's processing time is drawn from this list.
    pub lengths: Vec<u64>,
    /// Extra slack beyond the processing time, drawn from `0..=max_slack`.
    pub max_slack: u64,
}

impl Default for ScheduleParams {
    fn default() -> Self {
        ScheduleParams { jobs: 4, machines: 1, horizon: 12, lengths: vec![3], max_slack: 3 }
    }
}

/// A random scheduling instance in which every job fits its own window.
pub fn random_scheduling(params: &ScheduleParams, seed: u64) -> Result<SchedulingInstance> {
    let longest = params.lengths.iter().copied().max().unwrap_or(0);
    if params.lengths.is_empty() || params.lengths.contains(&0) || longest > params.horizon {
        return Err(Error::PreconditionViolated("lengths must be positive and fit the horizon".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs = (0..params.jobs)
        .map(|i| {
            let p = params.lengths[rng.gen_range(0..params.lengths.len())];
            let arrival = rng.gen_range(1..=params.horizon + 1 - p);
            let slack = rng.gen_range(0..=params.max_slack.min(params.horizon + 1 - p - arrival));
            Job::new(format!("J{}", i + 1), arrival, arrival + p + slack, p)
        })
        .collect();
    SchedulingInstance::new(jobs, params.machines)
}
