//! Non-preemptive scheduling with integer arrival times and deadlines on
//! identical machines, and the translation of single-machine instances with
//! job lengths `k - 1` and `k` into planar possible-winner instances.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geometry::enumerate_rankings_dd;
use crate::model::{integer, rational, Candidate, PartialSpatialProfile, Rational, ScoringRule, VoterBox};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Job {
    pub id: String,
    pub arrival: u64,
    pub deadline: u64,
    pub processing: u64,
}

impl Job {
    pub fn new(id: impl Into<String>, arrival: u64, deadline: u64, processing: u64) -> Self {
        Job { id: id.into(), arrival, deadline, processing }
    }

    /// Last start time that still meets the deadline, if any.
    pub fn latest_start(&self) -> Option<u64> {
        self.deadline.checked_sub(self.processing).filter(|&s| s >= self.arrival)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulingInstance {
    jobs: Vec<Job>,
    machines: usize,
}

impl SchedulingInstance {
    pub fn new(jobs: Vec<Job>, machines: usize) -> Result<Self> {
        if machines == 0 {
            return Err(Error::InvalidSchedule("at least one machine is required".into()));
        }
        Self::unchecked_machines(jobs, machines)
    }

    /// Like [`new`](Self::new) but allows zero machines.
    pub(crate) fn unchecked_machines(jobs: Vec<Job>, machines: usize) -> Result<Self> {
        let mut ids = HashSet::new();
        for job in &jobs {
            if job.arrival < 1 {
                return Err(Error::InvalidSchedule(format!("job `{}` arrives before time 1", job.id)));
            }
            if job.processing < 1 {
                return Err(Error::InvalidSchedule(format!("job `{}` has zero processing time", job.id)));
            }
            if !ids.insert(job.id.as_str()) {
                return Err(Error::InvalidSchedule(format!("duplicate job id `{}`", job.id)));
            }
        }
        Ok(SchedulingInstance { jobs, machines })
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn horizon(&self) -> u64 {
        self.jobs.iter().map(|j| j.deadline).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub start: u64,
    pub machine: usize,
}

/// One assignment per job, in the instance's job order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub assignments: Vec<Assignment>,
}

impl Schedule {
    /// Checks release times, deadlines, machine range and per-machine overlap.
    pub fn verify(&self, instance: &SchedulingInstance) -> Result<(), String> {
        if self.assignments.len() != instance.jobs.len() {
            return Err(format!(
                "{} assignments for {} jobs",
                self.assignments.len(),
                instance.jobs.len()
            ));
        }
        for (job, a) in instance.jobs.iter().zip(&self.assignments) {
            if a.start < job.arrival || a.start + job.processing > job.deadline {
                return Err(format!("job `{}` runs outside its window", job.id));
            }
            if a.machine >= instance.machines {
                return Err(format!("job `{}` uses machine {}", job.id, a.machine));
            }
        }
        for (i, (ji, ai)) in instance.jobs.iter().zip(&self.assignments).enumerate() {
            for (jj, aj) in instance.jobs.iter().zip(&self.assignments).skip(i + 1) {
                let overlap = ai.start < aj.start + jj.processing && aj.start < ai.start + ji.processing;
                if ai.machine == aj.machine && overlap {
                    return Err(format!("jobs `{}` and `{}` overlap", ji.id, jj.id));
                }
            }
        }
        Ok(())
    }
}

struct EqualLengthSearch<'a> {
    jobs: &'a [Job],
    length: u64,
    starts: Vec<Option<Assignment>>,
    free_at: Vec<u64>,
    failed: HashSet<(u64, Vec<u64>, Vec<bool>)>,
}

impl EqualLengthSearch<'_> {
    fn key(&self, time: u64) -> (u64, Vec<u64>, Vec<bool>) {
        let mut free: Vec<u64> = self.free_at.iter().map(|&f| f.max(time)).collect();
        free.sort_unstable();
        (time, free, self.starts.iter().map(Option::is_none).collect())
    }

    fn run(&mut self, time: u64) -> bool {
        let pending: Vec<usize> = (0..self.jobs.len()).filter(|&j| self.starts[j].is_none()).collect();
        if pending.is_empty() {
            return true;
        }
        if pending.iter().any(|&j| time + self.length > self.jobs[j].deadline) {
            return false;
        }
        let key = self.key(time);
        if self.failed.contains(&key) {
            return false;
        }

        let free: Vec<usize> = (0..self.free_at.len()).filter(|&h| self.free_at[h] <= time).collect();
        let mut available: Vec<usize> = pending.iter().copied().filter(|&j| self.jobs[j].arrival <= time).collect();
        available.sort_by_key(|&j| (self.jobs[j].deadline, j));
        let most = free.len().min(available.len());

        // Among available jobs of equal length, starting the earliest
        // deadlines first is never worse; only the count is branched on.
        for count in (0..=most).rev() {
            let saved: Vec<u64> = free[..count].iter().map(|&h| self.free_at[h]).collect();
            for (&j, &h) in available[..count].iter().zip(&free) {
                self.starts[j] = Some(Assignment { start: time, machine: h });
                self.free_at[h] = time + self.length;
            }
            let next = if count < most {
                Some(time + 1)
            } else {
                let arrivals = pending.iter().filter(|&&j| self.starts[j].is_none()).map(|&j| self.jobs[j].arrival);
                let releases = self.free_at.iter().copied();
                arrivals.chain(releases).filter(|&t| t > time).min()
            };
            let done = self.starts.iter().all(Option::is_some);
            if done || next.is_some_and(|t| self.run(t)) {
                return true;
            }
            for (&j, (&h, f)) in available[..count].iter().zip(free.iter().zip(saved)) {
                self.starts[j] = None;
                self.free_at[h] = f;
            }
        }
        self.failed.insert(key);
        false
    }
}

/// Decides feasibility when every job has processing time `length`.
///
/// Chronological search over integer start times that always starts the
/// available jobs with the earliest deadlines, branching on how many to
/// start, with failed states memoized on the pending-job set and machine
/// release times.
pub fn feasible_equal_length(instance: &SchedulingInstance, length: u64) -> Result<Option<Schedule>> {
    if let Some(job) = instance.jobs.iter().find(|j| j.processing != length) {
        return Err(Error::MixedProcessingTimes { expected: length, job: job.id.clone(), found: job.processing });
    }
    if instance.jobs.is_empty() {
        return Ok(Some(Schedule { assignments: vec![] }));
    }
    if instance.jobs.iter().any(|j| j.latest_start().is_none()) || instance.machines == 0 {
        return Ok(None);
    }
    let mut search = EqualLengthSearch {
        jobs: &instance.jobs,
        length,
        starts: vec![None; instance.jobs.len()],
        free_at: vec![0; instance.machines],
        failed: HashSet::new(),
    };
    let first = instance.jobs.iter().map(|j| j.arrival).min().unwrap_or(1);
    if !search.run(first) {
        return Ok(None);
    }
    let schedule = Schedule { assignments: search.starts.into_iter().map(|a| a.expect("all jobs started")).collect() };
    debug_assert_eq!(schedule.verify(instance), Ok(()));
    Ok(Some(schedule))
}

pub const BRUTE_FORCE_MAX_JOBS: usize = 10;
pub const BRUTE_FORCE_MAX_HORIZON: u64 = 20;

/// Exhaustive search over integer start times for instances with at most
/// [`BRUTE_FORCE_MAX_JOBS`] jobs and deadlines at most
/// [`BRUTE_FORCE_MAX_HORIZON`]; processing times may differ.
///
/// Start times are fixed job by job while tracking how many jobs run in each
/// unit slot; a set of intervals whose load never exceeds the machine count
/// is then packed onto machines greedily by start time.
pub fn brute_force_schedule(instance: &SchedulingInstance) -> Result<Option<Schedule>> {
    let n = instance.jobs.len();
    if n > BRUTE_FORCE_MAX_JOBS {
        return Err(Error::InstanceTooLarge { what: "job count", size: n as u128, guard: BRUTE_FORCE_MAX_JOBS as u128 });
    }
    let horizon = instance.horizon();
    if horizon > BRUTE_FORCE_MAX_HORIZON {
        return Err(Error::InstanceTooLarge {
            what: "horizon",
            size: horizon as u128,
            guard: BRUTE_FORCE_MAX_HORIZON as u128,
        });
    }

    fn place(jobs: &[Job], machines: usize, load: &mut [usize], starts: &mut Vec<u64>) -> bool {
        let Some(job) = jobs.get(starts.len()) else {
            return true;
        };
        let Some(last) = job.latest_start() else {
            return false;
        };
        for s in job.arrival..=last {
            let slots = s as usize..(s + job.processing) as usize;
            if load[slots.clone()].iter().any(|&l| l >= machines) {
                continue;
            }
            load[slots.clone()].iter_mut().for_each(|l| *l += 1);
            starts.push(s);
            if place(jobs, machines, load, starts) {
                return true;
            }
            starts.pop();
            load[slots].iter_mut().for_each(|l| *l -= 1);
        }
        false
    }

    let mut load = vec![0; horizon as usize + 1];
    let mut starts = Vec::with_capacity(n);
    if !place(&instance.jobs, instance.machines, &mut load, &mut starts) {
        return Ok(None);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| (starts[j], j));
    let mut free_at = vec![0u64; instance.machines];
    let mut assignments = vec![Assignment { start: 0, machine: 0 }; n];
    for j in order {
        let machine = (0..free_at.len()).find(|&h| free_at[h] <= starts[j]).expect("load never exceeds machines");
        free_at[machine] = starts[j] + instance.jobs[j].processing;
        assignments[j] = Assignment { start: starts[j], machine };
    }
    let schedule = Schedule { assignments };
    debug_assert_eq!(schedule.verify(instance), Ok(()));
    Ok(Some(schedule))
}

/// A planar election in which `target` is a possible winner under `rule`
/// exactly when the source scheduling instance is feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulingReduction {
    pub profile: PartialSpatialProfile,
    pub target: usize,
    pub rule: ScoringRule,
    /// Number of line candidates `c_1 … c_D`, a multiple of `k`.
    pub line_length: u64,
}

/// x-range of a voter at height 0 or `3D` whose approved line candidates are
/// exactly the `width`-long runs inside `c_first … c_last`.
///
/// Line candidate `c_i` sits at `i + 1/2`; the run starting at `c_s` is
/// nearest exactly around its centre `s + width/2`, so the range runs from the
/// centre of the leftmost run to that of the rightmost.
fn window_range(first: u64, last: u64, width: u64) -> (Rational, Rational) {
    let half = rational(width as i64, 2);
    (integer(first as i64) + &half, integer(last as i64 + 1) - half)
}

/// Builds the planar `k`-approval instance for a single-machine instance whose
/// jobs all have length `k - 1` or `k`.
///
/// Line candidates `c_1 … c_D` sit at `(i + 1/2, 0)` and `c*` at `(0, 3D)`.
/// A length-`k` job becomes a voter on the line whose approval runs cover
/// `c_a … c_{d-1}`; a length-`k-1` job becomes a voter at height `3D` that
/// always approves `c*` plus a run of `k - 1` from the same window. Fixed
/// filler voters then give every line candidate `|J_{k-1}| - 1` approvals.
///
/// The equivalence needs at least one job of length `k - 1`; with none, `c*`
/// scores zero and cannot win.
pub fn reduce_scheduling_to_pw(instance: &SchedulingInstance, k: u64) -> Result<SchedulingReduction> {
    if instance.machines != 1 {
        return Err(Error::PreconditionViolated("the reduction needs exactly one machine".into()));
    }
    if k < 3 {
        return Err(Error::PreconditionViolated("the reduction needs k ≥ 3".into()));
    }
    for job in &instance.jobs {
        if job.processing != k && job.processing != k - 1 {
            return Err(Error::PreconditionViolated(format!(
                "job `{}` has length {}, expected {} or {k}",
                job.id,
                job.processing,
                k - 1
            )));
        }
        if job.latest_start().is_none() {
            return Err(Error::PreconditionViolated(format!(
                "job `{}` cannot fit between its arrival and deadline",
                job.id
            )));
        }
    }

    let needed = instance.horizon().saturating_sub(1);
    let line_length = needed.div_ceil(k).max(1) * k;
    let height = integer(3 * line_length as i64);

    let mut candidates = vec![Candidate::new("c*", vec![integer(0), height.clone()])];
    for i in 1..=line_length {
        candidates.push(Candidate::new(format!("c{i}"), vec![rational(2 * i as i64 + 1, 2), integer(0)]));
    }

    let mut voters = Vec::new();
    let short = instance.jobs.iter().filter(|j| j.processing == k - 1).count() as u64;
    for job in instance.jobs.iter().filter(|j| j.processing == k) {
        let (lo, hi) = window_range(job.arrival, job.deadline - 1, k);
        voters.push(VoterBox::new(job.id.clone(), vec![(lo, hi), (integer(0), integer(0))]));
    }
    for job in instance.jobs.iter().filter(|j| j.processing == k - 1) {
        let (lo, hi) = window_range(job.arrival, job.deadline - 1, k - 1);
        voters.push(VoterBox::new(job.id.clone(), vec![(lo, hi), (height.clone(), height.clone())]));
    }
    for block in 0..line_length / k {
        let first = block * k + 1;
        let (centre, _) = window_range(first, first + k - 1, k);
        for copy in 0..short.saturating_sub(1) {
            voters.push(VoterBox::point(format!("_fill_{block}_{copy}"), &[centre.clone(), integer(0)]));
        }
    }

    let profile = PartialSpatialProfile::new(2, candidates, voters)
        .map_err(|e| Error::PreconditionViolated(format!("job ids clash with filler voters: {e}")))?;
    let reduction = SchedulingReduction { profile, target: 0, rule: ScoringRule::approval(k as usize), line_length };
    verify_reduction_windows(&reduction, instance, k)?;
    Ok(reduction)
}

/// Re-derives every job voter's approval sets from its ranking completions
/// and checks they are exactly the runs of the job's window.
pub fn verify_reduction_windows(reduction: &SchedulingReduction, instance: &SchedulingInstance, k: u64) -> Result<()> {
    let profile = &reduction.profile;
    let k = k as usize;
    for job in &instance.jobs {
        let voter = &profile.voters()[profile.voter_index(&job.id)?];
        let long = job.processing as usize == k;
        let width = if long { k } else { k - 1 };
        let (first, last) = (job.arrival as usize, job.deadline as usize - 1);
        let expected: HashSet<Vec<usize>> = (first..=last + 1 - width).map(|s| (s..s + width).collect()).collect();
        let mut seen = HashSet::new();
        for rw in enumerate_rankings_dd(profile.candidates(), voter)? {
            let top = rw.ranking.top(k);
            let has_star = top.contains(&reduction.target);
            let mut run: Vec<usize> = top.iter().copied().filter(|&c| c != reduction.target).collect();
            run.sort_unstable();
            if has_star == long || !expected.contains(&run) {
                return Err(Error::PreconditionViolated(format!(
                    "voter `{}` approves {top:?} outside its window",
                    job.id
                )));
            }
            seen.insert(run);
        }
        if seen != expected {
            return Err(Error::PreconditionViolated(format!("voter `{}` misses part of its window", job.id)));
        }
    }
    Ok(())
}
