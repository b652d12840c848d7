//! Independent oracles shared by the integration tests. They use plain
//! integer arithmetic on a scaled grid and none of the library's geometry.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use svk::model::{Candidate, PartialSpatialProfile, Rational, VoterBox};

/// Least common multiple of all denominators appearing in the candidates and
/// the box.
fn common_denominator(candidates: &[Candidate], voter: &VoterBox) -> i128 {
    let mut l: i128 = 1;
    let mut add = |r: &Rational| {
        let d = r.denom().to_i128().expect("small denominators");
        l = lcm(l, d);
    };
    for c in candidates {
        c.position.iter().for_each(&mut add);
    }
    for (lo, hi) in &voter.bounds {
        add(lo);
        add(hi);
    }
    l
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

fn scaled(r: &Rational, scale: i128) -> i128 {
    let v = r * Rational::from_integer(scale.into());
    assert!(v.is_integer(), "grid scale must clear denominators");
    v.to_integer().to_i128().expect("small coordinates")
}

/// Ranking at an integer grid point, nearest first, ties by index.
fn rank_at(point: &[i128], candidates: &[Vec<i128>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..candidates.len()).collect();
    idx.sort_by_key(|&c| {
        let d: i128 = candidates[c].iter().zip(point).map(|(a, x)| (a - x) * (a - x)).sum();
        (d, c)
    });
    idx
}

/// Every ranking seen on a grid of spacing `1 / (L * refine)` over the box,
/// where `L` clears every denominator.
///
/// On the line with `refine = 4` this is exact: tie points sit on multiples
/// of `1 / 2L`, so every open gap between them holds a grid point.
pub fn grid_rankings(candidates: &[Candidate], voter: &VoterBox, refine: i128) -> BTreeSet<Vec<usize>> {
    let scale = common_denominator(candidates, voter) * refine;
    let cands: Vec<Vec<i128>> = candidates.iter().map(|c| c.position.iter().map(|r| scaled(r, scale)).collect()).collect();
    let ranges: Vec<(i128, i128)> = voter.bounds.iter().map(|(lo, hi)| (scaled(lo, scale), scaled(hi, scale))).collect();
    let mut out = BTreeSet::new();
    let mut point: Vec<i128> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.insert(rank_at(&point, &cands));
        let mut j = 0;
        loop {
            if j == point.len() {
                return out;
            }
            point[j] += 1;
            if point[j] <= ranges[j].1 {
                break;
            }
            point[j] = ranges[j].0;
            j += 1;
        }
    }
}

/// Plurality possible winner by trying every choice of first place per voter.
pub fn plurality_assignment_brute(first_sets: &[BTreeSet<usize>], m: usize, c: usize) -> bool {
    fn go(j: usize, sets: &[BTreeSet<usize>], counts: &mut Vec<u64>, c: usize) -> bool {
        if j == sets.len() {
            return counts.iter().all(|&s| s <= counts[c]);
        }
        for &d in &sets[j] {
            counts[d] += 1;
            let ok = go(j + 1, sets, counts, c);
            counts[d] -= 1;
            if ok {
                return true;
            }
        }
        false
    }
    go(0, first_sets, &mut vec![0; m], c)
}

/// The profile with its voters in reverse order.
pub fn reversed(profile: &PartialSpatialProfile) -> PartialSpatialProfile {
    let mut voters = profile.voters().to_vec();
    voters.reverse();
    profile.with_voters(voters).unwrap()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Whether two candidates at distinct positions are equidistant from `point`,
/// or two candidates share a position.
pub fn has_tie(candidates: &[Candidate], point: &[Rational]) -> bool {
    let dist = |c: &Candidate| -> Rational {
        c.position.iter().zip(point).map(|(a, x)| (a - x) * (a - x)).fold(Rational::from_integer(0.into()), |s, v| s + v)
    };
    let d: Vec<Rational> = candidates.iter().map(dist).collect();
    (0..d.len()).any(|i| (i + 1..d.len()).any(|j| d[i] == d[j]))
}
