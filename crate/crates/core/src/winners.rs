//! Necessary and possible winners over all ranking completions of a partial
//! spatial profile.
//!
//! Necessary winners work for every positional scoring rule in any dimension:
//! `c` fails only if some rival can beat it, and the largest achievable score
//! gap against a rival decomposes into a per-voter maximum over that voter's
//! (polynomially many) ranking completions.
//!
//! Possible winners have polynomial algorithms for plurality and veto in any
//! dimension (a bipartite flow over first- or last-place options), and on the
//! line for two-valued rules (a reduction to equal-length scheduling), weighted
//! veto rules, and `F(k, t)` with `k > t`. Everything else falls back to the
//! brute-force oracle when explicitly allowed.

use std::collections::BTreeSet;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::geometry::{enumerate_rankings_1d, enumerate_rankings_dd, profile_rankings, RankingWithWitness};
use crate::model::{Candidate, PartialSpatialProfile, RankingProfile, ScoringRule, VoterBox};
use crate::oracle;
use crate::scheduling::{feasible_equal_length, Job, SchedulingInstance};

/// Consecutive candidates `lo..=hi` (zero-based, left to right) from which
/// every approval completion of one voter picks a run of length `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ApprovalWindow {
    pub voter: usize,
    pub lo: usize,
    pub hi: usize,
}

impl ApprovalWindow {
    pub fn contains(&self, c: usize) -> bool {
        self.lo <= c && c <= self.hi
    }

    pub fn width(&self) -> usize {
        self.hi - self.lo + 1
    }
}

/// Per candidate, how many voters give it score zero in one ranking profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCount(pub Vec<usize>);

impl ZeroCount {
    pub fn of(profile: &RankingProfile, vector: &[u64]) -> Self {
        let mut zeros = vec![0; profile.candidates];
        for r in &profile.rankings {
            for (rank, &c) in r.order().iter().enumerate() {
                if vector[rank] == 0 {
                    zeros[c] += 1;
                }
            }
        }
        ZeroCount(zeros)
    }
}

/// The `width` leftmost candidates, the `width` rightmost, and the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateBands {
    pub left: Range<usize>,
    pub middle: Range<usize>,
    pub right: Range<usize>,
}

impl CandidateBands {
    pub fn new(m: usize, width: usize) -> Self {
        let width = width.min(m / 2);
        CandidateBands { left: 0..width, middle: width..m - width, right: m - width..m }
    }

    pub fn is_middle(&self, c: usize) -> bool {
        self.middle.contains(&c)
    }
}

/// Which algorithm decides possible winners for a rule on a given dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwAlgorithm {
    Plurality,
    Veto,
    TwoValued { k: usize },
    WeightedVeto { tail: usize },
    Fkt { k: usize, t: usize },
}

/// Whether possible-winner queries without a polynomial algorithm may fall
/// back to exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponential {
    Forbid,
    Allow { guard: u128 },
}

fn distinct_desc(vector: &[u64]) -> Vec<u64> {
    let set: BTreeSet<u64> = vector.iter().copied().collect();
    set.into_iter().rev().collect()
}

/// Number of top positions if `vector` takes exactly two values.
pub fn two_valued_k(vector: &[u64]) -> Option<usize> {
    let values = distinct_desc(vector);
    (values.len() == 2).then(|| vector.iter().filter(|&&s| s == values[0]).count())
}

/// Number of positions below the top score if `vector` is a weighted veto
/// vector `(α, …, α, β_1, …, β_k)` with `2k < m`.
pub fn weighted_veto_tail(vector: &[u64]) -> Option<usize> {
    let m = vector.len();
    let tail = vector.iter().filter(|&&s| s != vector[0]).count();
    (tail >= 1 && 2 * tail < m).then_some(tail)
}

/// `(k, t)` if `vector` is an affine image of `F(k, t)`: three equally spaced
/// values with `k` at the top and `t` at the bottom, or two values when
/// `k + t = m` leaves no middle.
pub fn fkt_shape(vector: &[u64]) -> Option<(usize, usize)> {
    let values = distinct_desc(vector);
    let count = |v: u64| vector.iter().filter(|&&s| s == v).count();
    match values.len() {
        2 => Some((count(values[0]), count(values[1]))),
        3 if values[0] - values[1] == values[1] - values[2] => Some((count(values[0]), count(values[2]))),
        _ => None,
    }
}

/// Picks the polynomial algorithm for `vector` in `dimension`, if any.
pub fn select_algorithm(dimension: usize, vector: &[u64]) -> Option<PwAlgorithm> {
    let m = vector.len();
    if let Some(k) = two_valued_k(vector) {
        if k == 1 {
            return Some(PwAlgorithm::Plurality);
        }
        if k == m - 1 {
            return Some(PwAlgorithm::Veto);
        }
        if dimension == 1 {
            return Some(PwAlgorithm::TwoValued { k });
        }
    }
    if dimension != 1 {
        return None;
    }
    if let Some(tail) = weighted_veto_tail(vector) {
        return Some(PwAlgorithm::WeightedVeto { tail });
    }
    match fkt_shape(vector) {
        Some((k, t)) if k > t => Some(PwAlgorithm::Fkt { k, t }),
        _ => None,
    }
}

fn check_candidate(profile: &PartialSpatialProfile, c: usize) -> Result<()> {
    if c >= profile.num_candidates() {
        return Err(Error::UnknownCandidate(format!("#{c}")));
    }
    Ok(())
}

fn require_line(profile: &PartialSpatialProfile) -> Result<()> {
    if profile.dimension() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: profile.dimension() });
    }
    Ok(())
}

fn max_score_diff(rankings: &[RankingWithWitness], vector: &[u64], c: usize, rival: usize) -> i64 {
    rankings
        .iter()
        .map(|rw| {
            let pos = rw.ranking.positions();
            vector[pos[rival]] as i64 - vector[pos[c]] as i64
        })
        .max()
        .expect("every box has at least one ranking")
}

/// Largest `s(R, rival) - s(R, c)` over the ranking completions `R` of one voter.
pub fn max_score_diff_voter(
    candidates: &[Candidate],
    voter: &VoterBox,
    rule: &ScoringRule,
    c: usize,
    rival: usize,
) -> Result<i64> {
    let vector = rule.score_vector(candidates.len())?;
    let rankings = enumerate_rankings_dd(candidates, voter)?;
    Ok(max_score_diff(&rankings, &vector, c, rival))
}

fn is_necessary(per_voter: &[Vec<RankingWithWitness>], vector: &[u64], c: usize) -> bool {
    (0..vector.len())
        .filter(|&rival| rival != c)
        .all(|rival| per_voter.iter().map(|r| max_score_diff(r, vector, c, rival)).sum::<i64>() <= 0)
}

/// Whether `c` wins in every ranking completion of `profile`.
pub fn necessary_winner(profile: &PartialSpatialProfile, rule: &ScoringRule, c: usize) -> Result<bool> {
    check_candidate(profile, c)?;
    let vector = rule.score_vector(profile.num_candidates())?;
    Ok(is_necessary(&profile_rankings(profile)?, &vector, c))
}

/// All necessary winners, ascending by index.
pub fn necessary_winners(profile: &PartialSpatialProfile, rule: &ScoringRule) -> Result<Vec<usize>> {
    let vector = rule.score_vector(profile.num_candidates())?;
    let per_voter = profile_rankings(profile)?;
    Ok((0..profile.num_candidates()).filter(|&c| is_necessary(&per_voter, &vector, c)).collect())
}

fn window_of<'a>(voter: usize, rankings: impl IntoIterator<Item = &'a RankingWithWitness>, k: usize) -> ApprovalWindow {
    let mut approved = BTreeSet::new();
    for rw in rankings {
        approved.extend(rw.ranking.top(k).iter().copied());
    }
    let lo = *approved.first().expect("at least one completion");
    let hi = *approved.last().expect("at least one completion");
    assert_eq!(approved.len(), hi - lo + 1, "approvals on a line are consecutive");
    ApprovalWindow { voter, lo, hi }
}

/// For each voter, the consecutive candidates approved in some completion
/// under `k`-approval.
pub fn approval_windows_1d(profile: &PartialSpatialProfile, k: usize) -> Result<Vec<ApprovalWindow>> {
    require_line(profile)?;
    profile
        .voters()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let (lo, hi) = &v.bounds[0];
            Ok(window_of(j, &enumerate_rankings_1d(profile.candidates(), lo, hi)?, k))
        })
        .collect()
}

/// Shrinks every window containing `c` to the runs that all contain `c`;
/// other windows are unchanged. Possible-winner status of `c` is preserved.
pub fn restrict_profile(windows: &[ApprovalWindow], k: usize, c: usize) -> Vec<ApprovalWindow> {
    windows
        .iter()
        .map(|w| {
            if !w.contains(c) {
                return *w;
            }
            ApprovalWindow { voter: w.voter, lo: w.lo.max((c + 1).saturating_sub(k)), hi: w.hi.min(c + k - 1) }
        })
        .collect()
}

/// Possible winner under `k`-approval given each voter's approval window:
/// restrict around `c`, then schedule one length-`k` job per voter on as
/// many machines as there are voters who must approve `c`.
fn pw_from_windows(windows: &[ApprovalWindow], k: usize, c: usize) -> Result<bool> {
    let restricted = restrict_profile(windows, k, c);
    let machines = restricted.iter().filter(|w| w.contains(c)).count();
    if machines == 0 {
        return Ok(restricted.is_empty());
    }
    let jobs = restricted
        .iter()
        .map(|w| Job::new(format!("v{}", w.voter), w.lo as u64 + 1, w.hi as u64 + 2, k as u64))
        .collect();
    let instance = SchedulingInstance::new(jobs, machines)?;
    Ok(feasible_equal_length(&instance, k as u64)?.is_some())
}

/// Possible winner on the line under `k`-approval (any two-valued rule).
pub fn pw_two_valued_1d(profile: &PartialSpatialProfile, k: usize, c: usize) -> Result<bool> {
    require_line(profile)?;
    check_candidate(profile, c)?;
    let m = profile.num_candidates();
    if k == 0 || k >= m {
        return Err(Error::PreconditionViolated(format!("k = {k} is outside [1, {}]", m - 1)));
    }
    pw_from_windows(&approval_windows_1d(profile, k)?, k, c)
}

/// Possible winner on the line under a weighted veto rule.
pub fn pw_weighted_veto_1d(profile: &PartialSpatialProfile, rule: &ScoringRule, c: usize) -> Result<bool> {
    require_line(profile)?;
    check_candidate(profile, c)?;
    let m = profile.num_candidates();
    let vector = rule.score_vector(m)?;
    let tail = weighted_veto_tail(&vector)
        .ok_or_else(|| Error::RuleMismatch(format!("{rule} is not a weighted veto rule at m = {m}")))?;
    if CandidateBands::new(m, tail).is_middle(c) {
        return Ok(true);
    }
    // c must collect the top score from every voter
    for v in profile.voters() {
        let (lo, hi) = &v.bounds[0];
        let rankings = enumerate_rankings_1d(profile.candidates(), lo, hi)?;
        if !rankings.iter().any(|rw| rw.ranking.positions()[c] < m - tail) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Possible winner on the line under `F(k, t)` with `k > t`.
pub fn pw_fkt_1d(profile: &PartialSpatialProfile, rule: &ScoringRule, c: usize) -> Result<bool> {
    require_line(profile)?;
    check_candidate(profile, c)?;
    let m = profile.num_candidates();
    let vector = rule.score_vector(m)?;
    let (k, t) = match fkt_shape(&vector) {
        Some((k, t)) if k > t => (k, t),
        _ => return Err(Error::RuleMismatch(format!("{rule} is not F(k, t) with k > t at m = {m}"))),
    };
    if k + t == m {
        return pw_two_valued_1d(profile, k, c);
    }
    if CandidateBands::new(m, t).is_middle(c) {
        return pw_from_windows(&approval_windows_1d(profile, k)?, k, c);
    }
    // A band candidate that gets zero from anyone trails its inner neighbour,
    // so keep only the completions where c is outside every bottom t.
    let mut windows = Vec::with_capacity(profile.num_voters());
    for (j, v) in profile.voters().iter().enumerate() {
        let (lo, hi) = &v.bounds[0];
        let rankings = enumerate_rankings_1d(profile.candidates(), lo, hi)?;
        let admissible: Vec<&RankingWithWitness> =
            rankings.iter().filter(|rw| rw.ranking.positions()[c] < m - t).collect();
        if admissible.is_empty() {
            return Ok(false);
        }
        windows.push(window_of(j, admissible, k));
    }
    pw_from_windows(&windows, k, c)
}

fn extreme_sets(per_voter: &[Vec<RankingWithWitness>], last: bool) -> Vec<BTreeSet<usize>> {
    per_voter
        .iter()
        .map(|rankings| {
            rankings
                .iter()
                .map(|rw| {
                    let order = rw.ranking.order();
                    if last {
                        order[order.len() - 1]
                    } else {
                        order[0]
                    }
                })
                .collect()
        })
        .collect()
}

fn pw_plurality_with(per_voter: &[Vec<RankingWithWitness>], m: usize, c: usize) -> bool {
    let firsts = extreme_sets(per_voter, false);
    let target_score = firsts.iter().filter(|s| s.contains(&c)).count() as u64;
    let others: Vec<&BTreeSet<usize>> = firsts.iter().filter(|s| !s.contains(&c)).collect();
    // source, voters, candidates, sink
    let (source, sink) = (0, 1 + others.len() + m);
    let mut net = FlowNetwork::new(sink + 1);
    for (i, options) in others.iter().enumerate() {
        net.add_edge(source, 1 + i, 1);
        for &d in options.iter() {
            net.add_edge(1 + i, 1 + others.len() + d, 1);
        }
    }
    for d in (0..m).filter(|&d| d != c) {
        net.add_edge(1 + others.len() + d, sink, target_score);
    }
    net.max_flow(source, sink) == others.len() as u64
}

fn pw_veto_with(per_voter: &[Vec<RankingWithWitness>], m: usize, c: usize) -> bool {
    let lasts = extreme_sets(per_voter, true);
    let forced = lasts.iter().filter(|s| s.len() == 1 && s.contains(&c)).count() as u64;
    if forced == 0 {
        return true;
    }
    // every rival needs at least `forced` vetoes; the other voters veto anyone but c
    let free: Vec<&BTreeSet<usize>> = lasts.iter().filter(|s| !(s.len() == 1 && s.contains(&c))).collect();
    let (source, sink) = (0, 1 + free.len() + m);
    let mut net = FlowNetwork::new(sink + 1);
    for (i, options) in free.iter().enumerate() {
        net.add_edge(source, 1 + i, 1);
        for &d in options.iter().filter(|&&d| d != c) {
            net.add_edge(1 + i, 1 + free.len() + d, 1);
        }
    }
    for d in (0..m).filter(|&d| d != c) {
        net.add_edge(1 + free.len() + d, sink, forced);
    }
    net.max_flow(source, sink) == forced * (m as u64 - 1)
}

/// Possible winner under plurality, in any dimension.
pub fn pw_plurality(profile: &PartialSpatialProfile, c: usize) -> Result<bool> {
    check_candidate(profile, c)?;
    Ok(pw_plurality_with(&profile_rankings(profile)?, profile.num_candidates(), c))
}

/// Possible winner under veto, in any dimension.
pub fn pw_veto(profile: &PartialSpatialProfile, c: usize) -> Result<bool> {
    check_candidate(profile, c)?;
    Ok(pw_veto_with(&profile_rankings(profile)?, profile.num_candidates(), c))
}

fn run_algorithm(
    profile: &PartialSpatialProfile,
    per_voter: &[Vec<RankingWithWitness>],
    algorithm: PwAlgorithm,
    rule: &ScoringRule,
    c: usize,
) -> Result<bool> {
    let m = profile.num_candidates();
    match algorithm {
        PwAlgorithm::Plurality => Ok(pw_plurality_with(per_voter, m, c)),
        PwAlgorithm::Veto => Ok(pw_veto_with(per_voter, m, c)),
        PwAlgorithm::TwoValued { k } => pw_two_valued_1d(profile, k, c),
        PwAlgorithm::WeightedVeto { .. } => pw_weighted_veto_1d(profile, rule, c),
        PwAlgorithm::Fkt { .. } => pw_fkt_1d(profile, rule, c),
    }
}

/// Whether `c` wins in some ranking completion of `profile`, using the
/// polynomial algorithm matching `rule` when there is one.
pub fn possible_winner(
    profile: &PartialSpatialProfile,
    rule: &ScoringRule,
    c: usize,
    exponential: Exponential,
) -> Result<bool> {
    check_candidate(profile, c)?;
    let vector = rule.score_vector(profile.num_candidates())?;
    match select_algorithm(profile.dimension(), &vector) {
        Some(algorithm) => run_algorithm(profile, &profile_rankings(profile)?, algorithm, rule, c),
        None => match exponential {
            Exponential::Forbid => {
                Err(Error::NoPolynomialAlgorithm(format!("{rule} in dimension {}", profile.dimension())))
            }
            Exponential::Allow { guard } => oracle::brute_is_pw(profile, rule, c, guard),
        },
    }
}

/// All possible winners, ascending by index.
pub fn possible_winners(
    profile: &PartialSpatialProfile,
    rule: &ScoringRule,
    exponential: Exponential,
) -> Result<Vec<usize>> {
    let vector = rule.score_vector(profile.num_candidates())?;
    match select_algorithm(profile.dimension(), &vector) {
        Some(algorithm) => {
            let per_voter = profile_rankings(profile)?;
            let mut out = Vec::new();
            for c in 0..profile.num_candidates() {
                if run_algorithm(profile, &per_voter, algorithm, rule, c)? {
                    out.push(c);
                }
            }
            Ok(out)
        }
        None => match exponential {
            Exponential::Forbid => {
                Err(Error::NoPolynomialAlgorithm(format!("{rule} in dimension {}", profile.dimension())))
            }
            Exponential::Allow { guard } => oracle::brute_pw(profile, rule, guard),
        },
    }
}
