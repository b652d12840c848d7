//! Feasibility of equal-length jobs with release times and deadlines on
//! identical machines.
//!
//!     cargo run --example scheduling

use svk::scheduling::{feasible_equal_length, Job, SchedulingInstance};

fn main() -> svk::Result<()> {
    let jobs = vec![
        Job::new("J1", 1, 5, 2),
        Job::new("J2", 1, 4, 2),
        Job::new("J3", 2, 6, 2),
        Job::new("J4", 3, 7, 2),
    ];
    for machines in [1, 2] {
        let instance = SchedulingInstance::new(jobs.clone(), machines)?;
        match feasible_equal_length(&instance, 2)? {
            Some(schedule) => {
                println!("{machines} machine(s): feasible");
                for (job, a) in instance.jobs().iter().zip(&schedule.assignments) {
                    println!("  {} on machine {} during [{}, {})", job.id, a.machine, a.start, a.start + job.processing);
                }
            }
            None => println!("{machines} machine(s): infeasible"),
        }
    }
    Ok(())
}
