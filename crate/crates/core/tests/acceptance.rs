//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed. Instance counts, size limits and time
//! budgets are pinned below.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use svk::generate::{random_profile, random_scheduling, ProfileParams, ScheduleParams};
use svk::geometry::{bisectors, enumerate_rankings_1d, enumerate_rankings_dd, specify_faces, Hyperplane};
use svk::io::{read_instance, Instance};
use svk::model::{integer, rank_from_point, Candidate, PartialSpatialProfile, ScoringRule};
use svk::oracle::{brute_is_pw, brute_nw, brute_pw, enumerate_completions, DEFAULT_GUARD};
use svk::scheduling::{brute_force_schedule, feasible_equal_length, reduce_scheduling_to_pw};
use svk::winners::{
    necessary_winner, necessary_winners, possible_winners, pw_fkt_1d, pw_plurality, pw_two_valued_1d, pw_veto,
    pw_weighted_veto_1d, Exponential,
};

const C2_INSTANCES: u64 = 500;
const C3_INSTANCES: u64 = 200;
const C4_INSTANCES: u64 = 300;
const C5_INSTANCES: u64 = 300;
const C6_INSTANCES: u64 = 200;
const C7_INSTANCES: u64 = 500;
const C8_INSTANCES: u64 = 50;

const C1_BUDGET: Duration = Duration::from_secs(1);
const C2_BUDGET: Duration = Duration::from_secs(30);
const C3_BUDGET: Duration = Duration::from_secs(120);
const C4_BUDGET: Duration = Duration::from_secs(300);
const C5_BUDGET: Duration = Duration::from_secs(300);
const C6_BUDGET: Duration = Duration::from_secs(180);
const C7_BUDGET: Duration = Duration::from_secs(60);
const C8_BUDGET: Duration = Duration::from_secs(300);

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn ids(p: &PartialSpatialProfile, order: &[usize]) -> Vec<String> {
    order.iter().map(|&c| p.candidates()[c].id.clone()).collect()
}

/// Instances touched by criteria 4–6, checked again by criterion 9.
#[derive(Default)]
struct Touched {
    instances: Vec<(PartialSpatialProfile, ScoringRule)>,
}

fn within(budget: Duration, start: Instant) -> String {
    let took = start.elapsed();
    assert!(took <= budget, "took {took:?}, budget {budget:?}");
    format!("{:.2}s of {}s", took.as_secs_f64(), budget.as_secs())
}

fn criterion_1() -> String {
    let start = Instant::now();
    let Instance::Election(e) = read_instance(data("three_candidates.json")).unwrap() else { panic!("not an election") };
    let p = &e.profile;
    let (lo, hi) = &p.voters()[0].bounds[0];
    let got: Vec<Vec<String>> =
        enumerate_rankings_1d(p.candidates(), lo, hi).unwrap().iter().map(|rw| ids(p, rw.ranking.order())).collect();
    let expected = [["c1", "c2", "c3"], ["c2", "c1", "c3"], ["c2", "c3", "c1"], ["c3", "c2", "c1"]];
    assert_eq!(got, expected.map(|r| r.map(String::from).to_vec()).to_vec());
    assert_eq!(enumerate_completions(p, DEFAULT_GUARD).unwrap().count(), 4);
    format!("4 rankings, exact match; {}", within(C1_BUDGET, start))
}

fn criterion_2() -> String {
    let start = Instant::now();
    let mut max_seen = 0;
    for seed in 0..C2_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.gen_range(2..=8);
        let params = ProfileParams { dimension: 1, candidates: m, voters: 1, range: 8, denominator: 2, max_width: 16 };
        let p = random_profile(&params, seed).unwrap();
        let v = &p.voters()[0];
        let (lo, hi) = &v.bounds[0];
        let rankings = enumerate_rankings_1d(p.candidates(), lo, hi).unwrap();
        let bound = common::binomial(m as u64, 2) + 1;
        assert!(rankings.len() as u64 <= bound, "seed {seed}: {} > {bound}", rankings.len());
        max_seen = max_seen.max(rankings.len());
        let got: BTreeSet<Vec<usize>> = rankings.iter().map(|rw| rw.ranking.order().to_vec()).collect();
        assert_eq!(got.len(), rankings.len(), "seed {seed}: duplicate rankings");
        assert_eq!(got, common::grid_rankings(p.candidates(), v, 4), "seed {seed}: differs from the grid oracle");
    }
    format!("{C2_INSTANCES} instances, max {max_seen} rankings; {}", within(C2_BUDGET, start))
}

fn criterion_3() -> String {
    let start = Instant::now();
    let mut max_faces = 0;
    for seed in 0..C3_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let m = rng.gen_range(2..=5);
        let params = ProfileParams { dimension: 2, candidates: m, voters: 2, range: 6, denominator: 2, max_width: 6 };
        let p = random_profile(&params, seed).unwrap();
        let planes = bisectors(p.candidates());
        let faces = specify_faces(2, &planes);
        let h = (m * (m - 1) / 2) as u64;
        let bound: u64 = (0..=2).map(|i| common::binomial(h, i)).sum();
        assert!(faces.len() as u64 <= bound, "seed {seed}: {} faces > {bound}", faces.len());
        max_faces = max_faces.max(faces.len());
        for f in &faces {
            assert!(f.contains(f.witness.as_ref().unwrap()), "seed {seed}: face witness outside its face");
        }
        for v in p.voters() {
            let rankings = enumerate_rankings_dd(p.candidates(), v).unwrap();
            for rw in &rankings {
                assert!(v.contains(&rw.witness), "seed {seed}: witness outside box");
                assert_eq!(rank_from_point(&rw.witness, p.candidates()).unwrap(), rw.ranking, "seed {seed}");
            }
            let got: BTreeSet<Vec<usize>> = rankings.iter().map(|rw| rw.ranking.order().to_vec()).collect();
            assert_eq!(got.len(), rankings.len(), "seed {seed}: duplicate rankings");
            assert!(common::grid_rankings(p.candidates(), v, 4).is_subset(&got), "seed {seed}: grid found a missed ranking");
        }
    }
    let generic = |pts: [(i64, i64); 2]| {
        let cands: Vec<Candidate> =
            pts.iter().enumerate().map(|(i, &(x, y))| Candidate::new(format!("p{i}"), vec![integer(x), integer(y)])).collect();
        Hyperplane::between(&cands, 0, 1)
    };
    let lines = [generic([(0, 0), (2, 0)]), generic([(0, 0), (0, 2)]), generic([(0, 0), (4, 4)])];
    assert_eq!(specify_faces(2, &lines).len(), 7);
    format!("{C3_INSTANCES} instances, max {max_faces} faces, 3 generic lines give 7; {}", within(C3_BUDGET, start))
}

fn random_small(seed: u64, dimension: usize, max_m: usize) -> PartialSpatialProfile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let params = ProfileParams {
        dimension,
        candidates: rng.gen_range(2..=max_m),
        voters: rng.gen_range(1..=4),
        range: 6,
        denominator: 2,
        max_width: if dimension == 1 { 10 } else { 6 },
    };
    random_profile(&params, seed).unwrap()
}

fn criterion_4(touched: &mut Touched) -> String {
    let start = Instant::now();
    let rules = [ScoringRule::Plurality, ScoringRule::Veto, ScoringRule::Borda, ScoringRule::approval(2), ScoringRule::Fkt { k: 2, t: 1 }];
    let (mut checks, mut skipped, mut nonempty) = (0, 0, 0);
    for seed in 0..C4_INSTANCES {
        let p = random_small(seed, 1 + (seed % 2) as usize, 5);
        for rule in &rules {
            if rule.score_vector(p.num_candidates()).is_err() {
                skipped += 1;
                continue;
            }
            let fast = necessary_winners(&p, rule).unwrap();
            let brute = brute_nw(&p, rule, DEFAULT_GUARD).unwrap();
            assert_eq!(fast, brute, "seed {seed}, rule {rule}");
            for c in 0..p.num_candidates() {
                assert_eq!(necessary_winner(&p, rule, c).unwrap(), brute.contains(&c), "seed {seed}, rule {rule}, c {c}");
            }
            nonempty += usize::from(!brute.is_empty());
            checks += 1;
            touched.instances.push((p.clone(), rule.clone()));
        }
    }
    format!(
        "{checks} (instance, rule) pairs, 0 mismatches, {nonempty} with a necessary winner, {skipped} rule undefined at m; {}",
        within(C4_BUDGET, start)
    )
}

/// Decides possible-winner status of one candidate under a fixed rule.
type Decider = Box<dyn Fn(usize) -> bool>;

fn criterion_5(touched: &mut Touched) -> String {
    let start = Instant::now();
    let (mut checks, mut positives) = (0, 0);
    for seed in 0..C5_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
        let p = random_small(20_000 + seed, 1, 6);
        let m = p.num_candidates();
        let mut cases: Vec<(ScoringRule, Decider)> = Vec::new();
        for k in (1..=3).filter(|&k| k < m) {
            let q = p.clone();
            cases.push((ScoringRule::approval(k), Box::new(move |c| pw_two_valued_1d(&q, k, c).unwrap())));
        }
        if m >= 3 {
            let tail = rng.gen_range(1..=(m - 1) / 2);
            let alpha = rng.gen_range(2..=5u64);
            let mut betas: Vec<u64> = (0..tail).map(|_| rng.gen_range(0..alpha)).collect();
            betas.sort_unstable_by(|a, b| b.cmp(a));
            let rule = ScoringRule::WeightedVeto { alpha, betas };
            let (q, r) = (p.clone(), rule.clone());
            cases.push((rule, Box::new(move |c| pw_weighted_veto_1d(&q, &r, c).unwrap())));

            let t = rng.gen_range(1..=(m - 1) / 2);
            let k = rng.gen_range(t + 1..=m - t);
            let rule = ScoringRule::Fkt { k, t };
            let (q, r) = (p.clone(), rule.clone());
            cases.push((rule, Box::new(move |c| pw_fkt_1d(&q, &r, c).unwrap())));
        }
        for (rule, fast) in &cases {
            let brute = brute_pw(&p, rule, DEFAULT_GUARD).unwrap();
            for c in 0..m {
                assert_eq!(fast(c), brute.contains(&c), "seed {seed}, rule {rule}, candidate {c}");
                positives += usize::from(brute.contains(&c));
                checks += 1;
            }
            touched.instances.push((p.clone(), rule.clone()));
        }
    }
    format!("{checks} candidate queries ({positives} possible winners), 0 mismatches; {}", within(C5_BUDGET, start))
}

fn criterion_6(touched: &mut Touched) -> String {
    let start = Instant::now();
    let (mut checks, mut negatives) = (0, 0);
    for seed in 0..C6_INSTANCES {
        let p = random_small(40_000 + seed, 2, 5);
        for (rule, fast) in [(ScoringRule::Plurality, pw_plurality as fn(&_, _) -> _), (ScoringRule::Veto, pw_veto)] {
            let brute = brute_pw(&p, &rule, DEFAULT_GUARD).unwrap();
            for c in 0..p.num_candidates() {
                assert_eq!(fast(&p, c).unwrap(), brute.contains(&c), "seed {seed}, rule {rule}, candidate {c}");
                negatives += usize::from(!brute.contains(&c));
                checks += 1;
            }
            touched.instances.push((p.clone(), rule));
        }
    }
    format!("{checks} candidate queries ({negatives} not possible), 0 mismatches; {}", within(C6_BUDGET, start))
}

fn criterion_7() -> String {
    let start = Instant::now();
    let mut feasible = 0;
    for seed in 0..C7_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
        let p = rng.gen_range(1..=3u64);
        let params = ScheduleParams {
            jobs: rng.gen_range(1..=6),
            machines: rng.gen_range(1..=3),
            horizon: rng.gen_range(p.max(3)..=11),
            lengths: vec![p],
            max_slack: rng.gen_range(0..=5),
        };
        let inst = random_scheduling(&params, seed).unwrap();
        assert!(inst.horizon() <= 12);
        let fast = feasible_equal_length(&inst, p).unwrap();
        let brute = brute_force_schedule(&inst).unwrap();
        assert_eq!(fast.is_some(), brute.is_some(), "seed {seed}: {inst:?}");
        for s in fast.iter().chain(brute.iter()) {
            s.verify(&inst).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
        feasible += usize::from(fast.is_some());
    }
    format!("{C7_INSTANCES} instances ({feasible} feasible), 0 mismatches; {}", within(C7_BUDGET, start))
}

fn criterion_8() -> String {
    let start = Instant::now();
    let (mut done, mut feasible, mut skipped) = (0, 0, 0);
    let mut seed = 0;
    while done < C8_INSTANCES {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x88);
        let params =
            ScheduleParams { jobs: rng.gen_range(1..=4), machines: 1, horizon: 7, lengths: vec![2, 3], max_slack: rng.gen_range(0..=4) };
        let inst = random_scheduling(&params, seed).unwrap();
        assert!(inst.jobs().iter().all(|j| j.deadline <= 8));
        // the construction needs at least one job of length k - 1
        if !inst.jobs().iter().any(|j| j.processing == 2) {
            skipped += 1;
            continue;
        }
        let red = reduce_scheduling_to_pw(&inst, 3).unwrap();
        let sched = brute_force_schedule(&inst).unwrap().is_some();
        let pw = brute_is_pw(&red.profile, &red.rule, red.target, DEFAULT_GUARD).unwrap();
        assert_eq!(sched, pw, "seed {seed}: {inst:?}");
        feasible += usize::from(sched);
        done += 1;
    }
    format!(
        "{C8_INSTANCES} instances ({feasible} feasible), 0 mismatches, {skipped} draws without a length-2 job skipped; {}",
        within(C8_BUDGET, start)
    )
}

fn criterion_9(touched: &Touched) -> String {
    assert!(!touched.instances.is_empty(), "criteria 4-6 touched no instances");
    for (i, (p, rule)) in touched.instances.iter().enumerate() {
        let pw = brute_pw(p, rule, DEFAULT_GUARD).unwrap();
        let nw = brute_nw(p, rule, DEFAULT_GUARD).unwrap();
        assert!(!pw.is_empty(), "instance {i}, rule {rule}: no possible winner");
        assert!(nw.iter().all(|c| pw.contains(c)), "instance {i}, rule {rule}: NW not within PW");
        let fast_nw = necessary_winners(p, rule).unwrap();
        assert!(fast_nw.iter().all(|c| pw.contains(c)), "instance {i}, rule {rule}: fast NW not within PW");

        let r = common::reversed(p);
        assert_eq!(brute_pw(&r, rule, DEFAULT_GUARD).unwrap(), pw, "instance {i}, rule {rule}");
        assert_eq!(brute_nw(&r, rule, DEFAULT_GUARD).unwrap(), nw, "instance {i}, rule {rule}");
        assert_eq!(necessary_winners(&r, rule).unwrap(), fast_nw, "instance {i}, rule {rule}");
        if let Ok(fast_pw) = possible_winners(p, rule, Exponential::Forbid) {
            assert_eq!(fast_pw, pw, "instance {i}, rule {rule}");
            assert_eq!(possible_winners(&r, rule, Exponential::Forbid).unwrap(), fast_pw, "instance {i}, rule {rule}");
        }
    }
    format!("{} (instance, rule) pairs: NW within PW, PW nonempty, voter-order invariant", touched.instances.len())
}

fn main() {
    let mut touched = Touched::default();
    let mut failures = 0;
    let mut report = |n: usize, f: &mut dyn FnMut() -> String| match catch_unwind(AssertUnwindSafe(f)) {
        Ok(detail) => println!("criterion {n}: PASS  {detail}"),
        Err(e) => {
            failures += 1;
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            println!("criterion {n}: FAIL  {}", msg.unwrap_or_default());
        }
    };
    report(1, &mut criterion_1);
    report(2, &mut criterion_2);
    report(3, &mut criterion_3);
    report(4, &mut || criterion_4(&mut touched));
    report(5, &mut || criterion_5(&mut touched));
    report(6, &mut || criterion_6(&mut touched));
    report(7, &mut criterion_7);
    report(8, &mut criterion_8);
    report(9, &mut || criterion_9(&touched));
    if failures > 0 {
        println!("{failures} criterion/criteria failed");
        std::process::exit(1);
    }
}
