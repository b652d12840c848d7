//! Ranking completions of a single voter box.
//!
//! In one dimension the box is an interval and the distance ranking only
//! changes at midpoints between candidates, so a left-to-right sweep over those
//! tie points finds every ranking. In higher dimensions the bisector
//! hyperplanes of all candidate pairs cut space into faces on which the
//! ranking is constant; faces are built incrementally by splitting along one
//! hyperplane at a time, each split decided by an exact feasibility check.
//!
//! Boundary points belong to the side of the lower-indexed candidate of each
//! pair (`h⁺` is closed, `h⁻` open), which is exactly the index tie-break used
//! by [`rank_from_point`]. With that convention faces partition space, but two
//! faces can still induce the same ranking when bisectors coincide, so results
//! are deduplicated by ranking.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
pub use crate::lfp::LinearInequality;
use crate::lfp::{feasible, InequalitySystem};
use crate::model::{rank_from_point, Candidate, PartialSpatialProfile, Rational, Ranking, SpatialPoint, VoterBox};

/// Points equidistant from candidates `pair.0 < pair.1`:
/// `coefficients · x = constant` with `coefficients = 2(x₁ − x₀)` and
/// `constant = ‖x₁‖² − ‖x₀‖²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub coefficients: Vec<Rational>,
    pub constant: Rational,
    pub pair: (usize, usize),
}

impl Hyperplane {
    pub fn between(candidates: &[Candidate], first: usize, second: usize) -> Self {
        let a = &candidates[first].position;
        let b = &candidates[second].position;
        let two = Rational::from_integer(2.into());
        let norm = |v: &[Rational]| v.iter().fold(Rational::zero(), |acc, x| acc + x * x);
        Hyperplane {
            coefficients: a.iter().zip(b).map(|(x, y)| &two * (y - x)).collect(),
            constant: norm(b) - norm(a),
            pair: (first, second),
        }
    }

    /// `h⁺`: closer to (or tied with) the lower-indexed candidate.
    pub fn plus(&self) -> LinearInequality {
        LinearInequality::new(self.coefficients.clone(), self.constant.clone(), false)
    }

    /// `h⁻`: strictly closer to the higher-indexed candidate.
    pub fn minus(&self) -> LinearInequality {
        self.plus().negated()
    }
}

/// A region given by a (possibly redundant) conjunction of inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub inequalities: Vec<LinearInequality>,
    pub witness: Option<SpatialPoint>,
}

impl Face {
    pub fn contains(&self, point: &SpatialPoint) -> bool {
        self.inequalities.iter().all(|i| i.is_satisfied_by(point.coords()))
    }
}

/// A ranking together with a point of the voter box that realizes it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankingWithWitness {
    pub ranking: Ranking,
    pub witness: SpatialPoint,
}

fn check_line(candidates: &[Candidate]) -> Result<()> {
    match candidates.iter().find(|c| c.position.len() != 1) {
        Some(c) => Err(Error::DimensionMismatch { expected: 1, found: c.position.len() }),
        None => Ok(()),
    }
}

fn check_dimension(candidates: &[Candidate], dimension: usize) -> Result<()> {
    match candidates.iter().find(|c| c.position.len() != dimension) {
        Some(c) => Err(Error::DimensionMismatch { expected: dimension, found: c.position.len() }),
        None => Ok(()),
    }
}

/// Midpoints between candidate pairs that fall inside `[lo, hi]`, sorted and
/// deduplicated.
pub fn tie_points_1d(candidates: &[Candidate], lo: &Rational, hi: &Rational) -> Result<Vec<Rational>> {
    check_line(candidates)?;
    let two = Rational::from_integer(2.into());
    let mut points = Vec::new();
    for (i, a) in candidates.iter().enumerate() {
        for b in &candidates[i + 1..] {
            if a.position[0] == b.position[0] {
                continue;
            }
            let mid = (&a.position[0] + &b.position[0]) / &two;
            if lo <= &mid && &mid <= hi {
                points.push(mid);
            }
        }
    }
    points.sort();
    points.dedup();
    Ok(points)
}

/// Every ranking realized by some point of `[lo, hi]`, in left-to-right order
/// of first appearance.
///
/// Probes the tie points themselves and the midpoint of every gap between
/// consecutive probe boundaries.
pub fn enumerate_rankings_1d(
    candidates: &[Candidate],
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<RankingWithWitness>> {
    let mut boundaries = tie_points_1d(candidates, lo, hi)?;
    boundaries.push(lo.clone());
    boundaries.push(hi.clone());
    boundaries.sort();
    boundaries.dedup();

    let two = Rational::from_integer(2.into());
    let mut probes = Vec::with_capacity(2 * boundaries.len());
    for (i, b) in boundaries.iter().enumerate() {
        probes.push(b.clone());
        if let Some(next) = boundaries.get(i + 1) {
            probes.push((b + next) / &two);
        }
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in probes {
        let witness = SpatialPoint(vec![x]);
        let ranking = rank_from_point(&witness, candidates)?;
        if seen.insert(ranking.clone()) {
            out.push(RankingWithWitness { ranking, witness });
        }
    }
    Ok(out)
}

/// One bisector per unordered pair with distinct positions.
pub fn bisectors(candidates: &[Candidate]) -> Vec<Hyperplane> {
    let mut out = Vec::new();
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            if candidates[i].position != candidates[j].position {
                out.push(Hyperplane::between(candidates, i, j));
            }
        }
    }
    out
}

/// Faces of the arrangement of `hyperplanes` in `R^dimension`, starting from
/// the trivial face `{0 ≤ 0}`.
pub fn specify_faces(dimension: usize, hyperplanes: &[Hyperplane]) -> Vec<Face> {
    specify_faces_within(dimension, vec![LinearInequality::trivial(dimension)], hyperplanes)
        .expect("the whole space is nonempty")
}

/// Faces of the arrangement restricted to the region `seed`, or `None` if the
/// seed region is empty.
///
/// Each face keeps a witness, so deciding whether a hyperplane cuts it takes a
/// single feasibility check for the side the witness is not on. A face is
/// split only when both sides are nonempty.
pub fn specify_faces_within(
    dimension: usize,
    seed: Vec<LinearInequality>,
    hyperplanes: &[Hyperplane],
) -> Option<Vec<Face>> {
    let witness = feasible(&InequalitySystem::new(dimension, seed.clone()))?;
    let mut faces = vec![Face { inequalities: seed, witness: Some(witness) }];
    for h in hyperplanes {
        let (plus, minus) = (h.plus(), h.minus());
        let mut added = Vec::new();
        for face in &mut faces {
            let current = face.witness.clone().expect("faces carry witnesses");
            let on_plus = plus.is_satisfied_by(current.coords());
            let other_side = if on_plus { &minus } else { &plus };
            let mut rows = face.inequalities.clone();
            rows.push(other_side.clone());
            let Some(other) = feasible(&InequalitySystem::new(dimension, rows)) else {
                continue;
            };
            let (plus_witness, minus_witness) = if on_plus { (current, other) } else { (other, current) };
            let mut split = face.inequalities.clone();
            split.push(minus.clone());
            face.inequalities.push(plus.clone());
            face.witness = Some(plus_witness);
            added.push(Face { inequalities: split, witness: Some(minus_witness) });
        }
        faces.extend(added);
    }
    Some(faces)
}

/// The `2d` inequalities `lower_i ≤ x_i ≤ upper_i`.
pub fn box_inequalities(voter: &VoterBox) -> Vec<LinearInequality> {
    let d = voter.dimension();
    let mut rows = Vec::with_capacity(2 * d);
    for (i, (lo, hi)) in voter.bounds.iter().enumerate() {
        let mut up = vec![Rational::zero(); d];
        up[i] = Rational::from_integer(1.into());
        let down = up.iter().map(|a| -a).collect();
        rows.push(LinearInequality::new(up, hi.clone(), false));
        rows.push(LinearInequality::new(down, -lo, false));
    }
    rows
}

fn dedup_rankings(items: impl IntoIterator<Item = RankingWithWitness>) -> Vec<RankingWithWitness> {
    let mut seen = HashSet::new();
    items.into_iter().filter(|rw| seen.insert(rw.ranking.clone())).collect()
}

/// Every ranking completion of `voter`, each with a witness inside the box.
///
/// In one dimension this is [`enumerate_rankings_1d`]; otherwise the
/// arrangement of all bisectors is built inside the box.
pub fn enumerate_rankings_dd(candidates: &[Candidate], voter: &VoterBox) -> Result<Vec<RankingWithWitness>> {
    let d = voter.dimension();
    check_dimension(candidates, d)?;
    if d == 1 {
        let (lo, hi) = &voter.bounds[0];
        return enumerate_rankings_1d(candidates, lo, hi);
    }
    let faces = specify_faces_within(d, box_inequalities(voter), &bisectors(candidates))
        .expect("boxes with lower ≤ upper are nonempty");
    let mut out = Vec::with_capacity(faces.len());
    for face in faces {
        let witness = face.witness.expect("faces carry witnesses");
        out.push(RankingWithWitness { ranking: rank_from_point(&witness, candidates)?, witness });
    }
    Ok(dedup_rankings(out))
}

/// Intersects precomputed whole-space faces with `voter`'s box and ranks the
/// candidates at each feasible witness.
pub fn rankings_from_faces(
    faces: &[Face],
    candidates: &[Candidate],
    voter: &VoterBox,
) -> Result<Vec<RankingWithWitness>> {
    let d = voter.dimension();
    check_dimension(candidates, d)?;
    let bounds = box_inequalities(voter);
    let mut out = Vec::new();
    for face in faces {
        let mut rows = face.inequalities.clone();
        rows.extend(bounds.iter().cloned());
        if let Some(witness) = feasible(&InequalitySystem::new(d, rows)) {
            out.push(RankingWithWitness { ranking: rank_from_point(&witness, candidates)?, witness });
        }
    }
    Ok(dedup_rankings(out))
}

/// Ranking completions of every voter of `profile`, in voter order.
pub fn profile_rankings(profile: &PartialSpatialProfile) -> Result<Vec<Vec<RankingWithWitness>>> {
    profile
        .voters()
        .iter()
        .map(|v| enumerate_rankings_dd(profile.candidates(), v))
        .collect()
}
