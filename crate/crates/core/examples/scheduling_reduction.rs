//! Build the planar 3-approval election for a single-machine scheduling
//! instance and confirm that the special candidate is a possible winner
//! exactly when the jobs can be scheduled.
//!
//!     cargo run --example scheduling_reduction

use svk::io::{read_instance, Instance};
use svk::oracle::{brute_is_pw, DEFAULT_GUARD};
use svk::scheduling::{brute_force_schedule, reduce_scheduling_to_pw};

fn main() -> svk::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/reduction_jobs.json");
    let Instance::Scheduling(instance) = read_instance(path)? else {
        panic!("{path} is not a scheduling instance");
    };
    let reduction = reduce_scheduling_to_pw(&instance, 3)?;
    let p = &reduction.profile;
    println!(
        "{} candidates ({} on the line), {} voters",
        p.num_candidates(),
        reduction.line_length,
        p.num_voters()
    );
    let feasible = brute_force_schedule(&instance)?.is_some();
    let possible = brute_is_pw(p, &reduction.rule, reduction.target, DEFAULT_GUARD)?;
    println!("schedule feasible: {feasible}; c* possible winner: {possible}");
    assert_eq!(feasible, possible);
    Ok(())
}
