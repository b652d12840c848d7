//! Core election types: candidates with exact positions, voters known only up
//! to an axis-parallel box, positional scoring rules, and the distance-induced
//! rankings they produce.
//!
//! All coordinates are exact rationals. Distances are compared squared, so no
//! square roots are ever taken. Distance ties are broken by ascending
//! candidate index, everywhere.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds `numer / denom`. Panics if `denom` is zero.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-2.75"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let numer: BigInt = format!("{digits}{frac}").parse().ok()?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let value = Rational::new(numer, denom);
        return Some(if negative { -value } else { value });
    }
    let value: Rational = text.parse().ok()?;
    Some(value)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Candidate {
    pub id: String,
    pub position: Vec<Rational>,
}

impl Candidate {
    pub fn new(id: impl Into<String>, position: Vec<Rational>) -> Self {
        Candidate { id: id.into(), position }
    }
}

/// A voter whose ideal point lies somewhere in `bounds[0] × … × bounds[d-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VoterBox {
    pub id: String,
    pub bounds: Vec<(Rational, Rational)>,
}

impl VoterBox {
    pub fn new(id: impl Into<String>, bounds: Vec<(Rational, Rational)>) -> Self {
        VoterBox { id: id.into(), bounds }
    }

    /// A voter whose ideal point is known exactly.
    pub fn point(id: impl Into<String>, point: &[Rational]) -> Self {
        VoterBox {
            id: id.into(),
            bounds: point.iter().map(|x| (x.clone(), x.clone())).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_degenerate(&self) -> bool {
        self.bounds.iter().all(|(lo, hi)| lo == hi)
    }

    pub fn contains(&self, point: &SpatialPoint) -> bool {
        point.0.len() == self.bounds.len()
            && self.bounds.iter().zip(&point.0).all(|((lo, hi), x)| lo <= x && x <= hi)
    }

    /// The lower corner of the box.
    pub fn lower_corner(&self) -> SpatialPoint {
        SpatialPoint(self.bounds.iter().map(|(lo, _)| lo.clone()).collect())
    }
}

/// A point in issue space: one spatial completion of a voter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpatialPoint(pub Vec<Rational>);

impl SpatialPoint {
    pub fn origin(dimension: usize) -> Self {
        SpatialPoint(vec![Rational::zero(); dimension])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for SpatialPoint {
    fn from(coords: Vec<Rational>) -> Self {
        SpatialPoint(coords)
    }
}

/// Strict total order over candidate indices, best first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking(Vec<usize>);

impl Ranking {
    /// Wraps `order`, checking that it is a permutation of `0..order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &c in &order {
            if c >= order.len() || std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidProfile(format!("{order:?} is not a permutation")));
            }
        }
        Ok(Ranking(order))
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Zero-based rank of each candidate: `positions()[c]` is where `c` sits.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (rank, &c) in self.0.iter().enumerate() {
            pos[c] = rank;
        }
        pos
    }

    pub fn top(&self, k: usize) -> &[usize] {
        &self.0[..k.min(self.0.len())]
    }

    pub fn bottom(&self, t: usize) -> &[usize] {
        &self.0[self.0.len() - t.min(self.0.len())..]
    }
}

/// One ranking per voter, all over the same `candidates` candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingProfile {
    pub candidates: usize,
    pub rankings: Vec<Ranking>,
}

impl RankingProfile {
    pub fn new(candidates: usize, rankings: Vec<Ranking>) -> Result<Self> {
        if let Some(bad) = rankings.iter().find(|r| r.len() != candidates) {
            return Err(Error::DimensionMismatch { expected: candidates, found: bad.len() });
        }
        Ok(RankingProfile { candidates, rankings })
    }
}

/// Candidate set, per-voter boxes, and the shared dimension.
///
/// In one dimension the candidates are kept sorted by position and must have
/// pairwise distinct coordinates, so index order is left-to-right order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSpatialProfile {
    dimension: usize,
    candidates: Vec<Candidate>,
    voters: Vec<VoterBox>,
}

impl PartialSpatialProfile {
    pub fn new(dimension: usize, mut candidates: Vec<Candidate>, voters: Vec<VoterBox>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidProfile("dimension must be positive".into()));
        }
        if candidates.len() < 2 {
            return Err(Error::InvalidProfile("at least two candidates are required".into()));
        }
        let mut ids = HashSet::new();
        for c in &candidates {
            if c.position.len() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: c.position.len() });
            }
            if !ids.insert(c.id.as_str()) {
                return Err(Error::InvalidProfile(format!("duplicate candidate id `{}`", c.id)));
            }
        }
        let mut voter_ids = HashSet::new();
        for v in &voters {
            if v.bounds.len() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: v.bounds.len() });
            }
            if !voter_ids.insert(v.id.as_str()) {
                return Err(Error::InvalidProfile(format!("duplicate voter id `{}`", v.id)));
            }
            if let Some(i) = v.bounds.iter().position(|(lo, hi)| lo > hi) {
                return Err(Error::InvalidProfile(format!(
                    "voter `{}` has lower > upper in dimension {i}",
                    v.id
                )));
            }
        }
        if dimension == 1 {
            candidates.sort_by(|a, b| a.position[0].cmp(&b.position[0]));
            if let Some(w) = candidates.windows(2).find(|w| w[0].position == w[1].position) {
                return Err(Error::InvalidProfile(format!(
                    "candidates `{}` and `{}` share a position",
                    w[0].id, w[1].id
                )));
            }
        }
        Ok(PartialSpatialProfile { dimension, candidates, voters })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn voters(&self) -> &[VoterBox] {
        &self.voters
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_voters(&self) -> usize {
        self.voters.len()
    }

    pub fn candidate_index(&self, id: &str) -> Result<usize> {
        self.candidates
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::UnknownCandidate(id.to_string()))
    }

    pub fn voter_index(&self, id: &str) -> Result<usize> {
        self.voters
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| Error::UnknownVoter(id.to_string()))
    }

    /// Same candidates, different voters.
    pub fn with_voters(&self, voters: Vec<VoterBox>) -> Result<Self> {
        PartialSpatialProfile::new(self.dimension, self.candidates.clone(), voters)
    }
}

/// `k(m) = slope * m + offset`, used by the two-valued families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KParam {
    pub slope: i64,
    pub offset: i64,
}

impl KParam {
    pub const fn constant(k: i64) -> Self {
        KParam { slope: 0, offset: k }
    }

    /// `m - k`.
    pub const fn all_but(k: i64) -> Self {
        KParam { slope: 1, offset: -k }
    }

    pub fn eval(&self, m: usize) -> i64 {
        self.slope * m as i64 + self.offset
    }
}

impl fmt::Display for KParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.slope, self.offset) {
            (0, b) => write!(f, "{b}"),
            (a, b) => {
                match a {
                    1 => write!(f, "m")?,
                    -1 => write!(f, "-m")?,
                    a => write!(f, "{a}*m")?,
                }
                match b {
                    0 => Ok(()),
                    b if b > 0 => write!(f, "+{b}"),
                    b => write!(f, "{b}"),
                }
            }
        }
    }
}

/// A positional scoring rule family `{s_m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScoringRule {
    Plurality,
    Veto,
    /// `k` ones followed by zeros.
    KApproval(KParam),
    /// Ones followed by `k` zeros.
    KVeto(KParam),
    Borda,
    /// `(alpha, …, alpha, betas[0], …, betas[k-1])` with `alpha > betas[0] ≥ … ≥ betas[k-1]`
    /// and `2k < m`.
    WeightedVeto { alpha: u64, betas: Vec<u64> },
    /// `k` twos, then ones, then `t` zeros.
    Fkt { k: usize, t: usize },
    /// A fixed vector, defined only at `m = scores.len()`.
    Explicit(Vec<u64>),
}

impl fmt::Display for ScoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let text = match self {
            ScoringRule::Plurality => "plurality".to_string(),
            ScoringRule::Veto => "veto".to_string(),
            ScoringRule::KApproval(k) => format!("approval:{k}"),
            ScoringRule::KVeto(k) => format!("kveto:{k}"),
            ScoringRule::Borda => "borda".to_string(),
            ScoringRule::WeightedVeto { alpha, betas } => format!("wveto:{alpha}:{}", join(betas)),
            ScoringRule::Fkt { k, t } => format!("fkt:{k}:{t}"),
            ScoringRule::Explicit(v) => format!("vector:{}", join(v)),
        };
        f.pad(&text)
    }
}

impl ScoringRule {
    pub fn approval(k: usize) -> Self {
        ScoringRule::KApproval(KParam::constant(k as i64))
    }

    pub fn kveto(k: usize) -> Self {
        ScoringRule::KVeto(KParam::constant(k as i64))
    }

    /// The score vector `s_m`.
    pub fn score_vector(&self, m: usize) -> Result<Vec<u64>> {
        realize_score_vector(self, m)
    }
}

/// Realizes `rule` at `m` candidates, checking the family's side conditions.
pub fn realize_score_vector(rule: &ScoringRule, m: usize) -> Result<Vec<u64>> {
    let undefined = |reason: String| Error::RuleUndefinedAtM { rule: rule.to_string(), m, reason };
    if m < 2 {
        return Err(undefined("at least two candidates are required".into()));
    }
    let ones_then_zeros = |ones: usize| {
        let mut v = vec![0; m];
        v[..ones].fill(1);
        v
    };
    let vector = match rule {
        ScoringRule::Plurality => ones_then_zeros(1),
        ScoringRule::Veto => ones_then_zeros(m - 1),
        ScoringRule::KApproval(k) | ScoringRule::KVeto(k) => {
            let value = k.eval(m);
            if value < 1 || value > m as i64 - 1 {
                return Err(undefined(format!("k = {value} is outside [1, {}]", m - 1)));
            }
            let value = value as usize;
            match rule {
                ScoringRule::KApproval(_) => ones_then_zeros(value),
                _ => ones_then_zeros(m - value),
            }
        }
        ScoringRule::Borda => (0..m as u64).rev().collect(),
        ScoringRule::WeightedVeto { alpha, betas } => {
            let k = betas.len();
            if k == 0 {
                return Err(undefined("weighted veto needs at least one beta".into()));
            }
            if 2 * k >= m {
                return Err(undefined(format!("k = {k} is not below m/2")));
            }
            if *alpha <= betas[0] {
                return Err(undefined("alpha must exceed every beta".into()));
            }
            if betas.windows(2).any(|w| w[0] < w[1]) {
                return Err(undefined("betas must be nonincreasing".into()));
            }
            let mut v = vec![*alpha; m - k];
            v.extend_from_slice(betas);
            v
        }
        ScoringRule::Fkt { k, t } => {
            if *k == 0 || *t == 0 {
                return Err(undefined("k and t must be positive".into()));
            }
            if k + t > m {
                return Err(undefined(format!("k + t = {} exceeds m", k + t)));
            }
            let mut v = vec![1; m];
            v[..*k].fill(2);
            v[m - t..].fill(0);
            v
        }
        ScoringRule::Explicit(v) => {
            if v.len() != m {
                return Err(undefined(format!("vector has {} entries", v.len())));
            }
            if v.windows(2).any(|w| w[0] < w[1]) {
                return Err(undefined("vector must be nonincreasing".into()));
            }
            if v[0] <= v[m - 1] {
                return Err(undefined("first score must exceed the last".into()));
            }
            v.clone()
        }
    };
    debug_assert!(vector.windows(2).all(|w| w[0] >= w[1]) && vector[0] > vector[m - 1]);
    Ok(vector)
}

pub(crate) fn squared_distance(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        let diff = x - y;
        acc + &diff * &diff
    })
}

/// Ranks `candidates` by squared Euclidean distance from `point`, ties broken
/// by ascending index.
pub fn rank_from_point(point: &SpatialPoint, candidates: &[Candidate]) -> Result<Ranking> {
    let mut keyed = Vec::with_capacity(candidates.len());
    for (i, c) in candidates.iter().enumerate() {
        if c.position.len() != point.dimension() {
            return Err(Error::DimensionMismatch { expected: c.position.len(), found: point.dimension() });
        }
        keyed.push((squared_distance(&c.position, &point.0), i));
    }
    keyed.sort();
    Ok(Ranking(keyed.into_iter().map(|(_, i)| i).collect()))
}

/// Adds `vector[rank of c]` to `scores[c]` for one ranking.
pub(crate) fn add_scores(scores: &mut [u64], ranking: &Ranking, vector: &[u64]) {
    for (rank, &c) in ranking.order().iter().enumerate() {
        scores[c] += vector[rank];
    }
}

pub fn score_with_vector(profile: &RankingProfile, vector: &[u64]) -> Result<Vec<u64>> {
    if vector.len() != profile.candidates {
        return Err(Error::DimensionMismatch { expected: profile.candidates, found: vector.len() });
    }
    let mut scores = vec![0; profile.candidates];
    for r in &profile.rankings {
        add_scores(&mut scores, r, vector);
    }
    Ok(scores)
}

/// Total score of every candidate, indexed by candidate.
pub fn score_profile(profile: &RankingProfile, rule: &ScoringRule) -> Result<Vec<u64>> {
    score_with_vector(profile, &realize_score_vector(rule, profile.candidates)?)
}

/// Indices of all candidates attaining the maximum score, ascending.
pub fn winners_from_scores(scores: &[u64]) -> Vec<usize> {
    let best = scores.iter().copied().max().unwrap_or(0);
    (0..scores.len()).filter(|&c| scores[c] == best).collect()
}

pub fn winners(profile: &RankingProfile, rule: &ScoringRule) -> Result<Vec<usize>> {
    Ok(winners_from_scores(&score_profile(profile, rule)?))
}
