//! Command-line front end: argument parsing and command execution.
//!
//! Every command reads a JSON instance file and writes either JSON (the
//! default) or a short text rendering to the given writer.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generate::{random_profile, random_scheduling, ProfileParams, ScheduleParams};
use crate::geometry::{bisectors, box_inequalities, enumerate_rankings_dd, specify_faces, specify_faces_within};
use crate::io::{election_to_json, parse_rule, read_instance, scheduling_to_json, ElectionInstance, Instance, SCHEMA_VERSION};
use crate::model::{format_rational, rank_from_point, PartialSpatialProfile, Ranking, ScoringRule, SpatialPoint};
use crate::oracle::{brute_nw, brute_pw, DEFAULT_GUARD};
use crate::scheduling::{reduce_scheduling_to_pw, SchedulingInstance};
use crate::winners::{necessary_winner, necessary_winners, possible_winner, possible_winners, Exponential};

#[derive(Debug, Parser)]
#[command(name = "svk", version, about = "Possible and necessary winners for box-bounded spatial elections")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Query {
    Pw,
    Nw,
}

#[derive(Debug, Args)]
pub struct ElectionArgs {
    /// Election instance file.
    #[arg(long)]
    pub instance: PathBuf,
    /// Rule such as `plurality`, `approval:2` or `kveto:m-2`; defaults to the instance's rule.
    #[arg(long)]
    pub rule: Option<String>,
    /// Restrict the query to one candidate; defaults to the instance's target, if any.
    #[arg(long)]
    pub candidate: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every ranking each voter's box can induce, with witness points.
    Rankings {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        voter: Option<String>,
    },
    /// Faces of the bisector arrangement, in all of space or inside one voter's box.
    Faces {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        voter: Option<String>,
    },
    /// Necessary winners.
    Nw {
        #[command(flatten)]
        election: ElectionArgs,
    },
    /// Possible winners.
    Pw {
        #[command(flatten)]
        election: ElectionArgs,
        /// Fall back to exhaustive enumeration when no polynomial algorithm applies.
        #[arg(long)]
        allow_exponential: bool,
        #[arg(long, env = "SVK_GUARD", default_value_t = DEFAULT_GUARD)]
        guard: u128,
    },
    /// Exhaustive possible or necessary winners.
    Oracle {
        #[arg(value_enum)]
        query: Query,
        #[command(flatten)]
        election: ElectionArgs,
        #[arg(long, env = "SVK_GUARD", default_value_t = DEFAULT_GUARD)]
        guard: u128,
    },
    /// Turn a single-machine scheduling instance into a planar k-approval election.
    ReduceSched {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        k: u64,
    },
    /// Generate a random instance.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Profile {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        dimension: usize,
        #[arg(long, default_value_t = 4)]
        candidates: usize,
        #[arg(long, default_value_t = 3)]
        voters: usize,
        #[arg(long, default_value_t = 10)]
        range: i64,
        #[arg(long, default_value_t = 2)]
        denominator: i64,
        #[arg(long, default_value_t = 6)]
        max_width: i64,
    },
    Schedule {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        jobs: usize,
        #[arg(long, default_value_t = 1)]
        machines: usize,
        #[arg(long, default_value_t = 12)]
        horizon: u64,
        /// Comma-separated processing times to draw from.
        #[arg(long, default_value = "3", value_delimiter = ',')]
        lengths: Vec<u64>,
        #[arg(long, default_value_t = 3)]
        max_slack: u64,
    },
}

fn load_election(path: &PathBuf) -> Result<ElectionInstance> {
    match read_instance(path)? {
        Instance::Election(e) => Ok(e),
        Instance::Scheduling(_) => Err(Error::parse("kind", "expected an election instance")),
    }
}

fn load_scheduling(path: &PathBuf) -> Result<SchedulingInstance> {
    match read_instance(path)? {
        Instance::Scheduling(s) => Ok(s),
        Instance::Election(_) => Err(Error::parse("kind", "expected a scheduling instance")),
    }
}

fn resolve_rule(args: &ElectionArgs, instance: &ElectionInstance) -> Result<ScoringRule> {
    match (&args.rule, &instance.rule) {
        (Some(text), _) => parse_rule(text),
        (None, Some(rule)) => Ok(rule.clone()),
        (None, None) => Err(Error::InvalidRule("no --rule given and the instance names none".into())),
    }
}

fn resolve_candidate(args: &ElectionArgs, instance: &ElectionInstance) -> Result<Option<usize>> {
    args.candidate
        .as_ref()
        .or(instance.target.as_ref())
        .map(|id| instance.profile.candidate_index(id))
        .transpose()
}

fn point(p: &SpatialPoint) -> Value {
    Value::Array(p.coords().iter().map(|v| Value::String(format_rational(v))).collect())
}

fn order_ids(profile: &PartialSpatialProfile, r: &Ranking) -> Vec<String> {
    r.order().iter().map(|&c| profile.candidates()[c].id.clone()).collect()
}

fn sorted_ids(profile: &PartialSpatialProfile, set: &[usize]) -> Vec<String> {
    let mut ids: Vec<String> = set.iter().map(|&c| profile.candidates()[c].id.clone()).collect();
    ids.sort();
    ids
}

fn voter_filter(profile: &PartialSpatialProfile, voter: &Option<String>) -> Result<Vec<usize>> {
    match voter {
        Some(id) => Ok(vec![profile.voter_index(id)?]),
        None => Ok((0..profile.num_voters()).collect()),
    }
}

fn winner_report(
    out: &mut dyn Write,
    format: Format,
    command: &str,
    profile: &PartialSpatialProfile,
    rule: &ScoringRule,
    single: Option<(usize, bool)>,
    all: Option<Vec<usize>>,
) -> Result<()> {
    let key = if command.ends_with("nw") { "necessary_winner" } else { "possible_winner" };
    let (doc, text) = match (single, all) {
        (Some((c, yes)), _) => {
            let id = &profile.candidates()[c].id;
            (
                json!({"schema_version": SCHEMA_VERSION, "command": command, "rule": rule.to_string(), "candidate": id, key: yes}),
                format!("{id}: {}", if yes { "yes" } else { "no" }),
            )
        }
        (None, Some(set)) => {
            let ids = sorted_ids(profile, &set);
            let text = format!("{} ({rule}): {{{}}}", key.replace('_', " ") + "s", ids.join(", "));
            (json!({"schema_version": SCHEMA_VERSION, "command": command, "rule": rule.to_string(), "winners": ids}), text)
        }
        (None, None) => unreachable!("either one candidate or all"),
    };
    emit(out, format, &doc, &text)
}

fn emit(out: &mut dyn Write, format: Format, doc: &Value, text: &str) -> Result<()> {
    let written = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(doc).expect("values serialize")),
        Format::Text => writeln!(out, "{text}"),
    };
    written.map_err(|e| Error::parse("<stdout>", e.to_string()))
}

/// Executes one parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let format = cli.format;
    match cli.command {
        Command::Rankings { instance, voter } => {
            let e = load_election(&instance)?;
            let p = &e.profile;
            let mut voters = Vec::new();
            let mut text = String::new();
            for j in voter_filter(p, &voter)? {
                let v = &p.voters()[j];
                let rankings = enumerate_rankings_dd(p.candidates(), v)?;
                text.push_str(&format!("{} ({} rankings)\n", v.id, rankings.len()));
                for rw in &rankings {
                    let coords: Vec<String> = rw.witness.coords().iter().map(format_rational).collect();
                    text.push_str(&format!("  {}  at ({})\n", order_ids(p, &rw.ranking).join(" > "), coords.join(", ")));
                }
                voters.push(json!({
                    "id": v.id,
                    "rankings": rankings.iter().map(|rw| json!({"order": order_ids(p, &rw.ranking), "witness": point(&rw.witness)})).collect::<Vec<_>>(),
                }));
            }
            let doc = json!({"schema_version": SCHEMA_VERSION, "command": "rankings", "voters": voters});
            emit(out, format, &doc, text.trim_end())
        }
        Command::Faces { instance, voter } => {
            let e = load_election(&instance)?;
            let p = &e.profile;
            let planes = bisectors(p.candidates());
            let faces = match &voter {
                Some(id) => {
                    let v = &p.voters()[p.voter_index(id)?];
                    specify_faces_within(p.dimension(), box_inequalities(v), &planes).expect("boxes are nonempty")
                }
                None => specify_faces(p.dimension(), &planes),
            };
            let mut text = format!("{} faces from {} bisectors", faces.len(), planes.len());
            let mut listed = Vec::new();
            for face in &faces {
                let w = face.witness.as_ref().expect("faces carry witnesses");
                let order = order_ids(p, &rank_from_point(w, p.candidates())?);
                let coords: Vec<String> = w.coords().iter().map(format_rational).collect();
                text.push_str(&format!("\n  ({})  {}", coords.join(", "), order.join(" > ")));
                listed.push(json!({"witness": point(w), "ranking_at_witness": order, "constraints": face.inequalities.len()}));
            }
            let doc = json!({
                "schema_version": SCHEMA_VERSION, "command": "faces", "voter": voter,
                "bisectors": planes.len(), "count": faces.len(), "faces": listed,
            });
            emit(out, format, &doc, &text)
        }
        Command::Nw { election } => {
            let e = load_election(&election.instance)?;
            let rule = resolve_rule(&election, &e)?;
            let p = &e.profile;
            match resolve_candidate(&election, &e)? {
                Some(c) => winner_report(out, format, "nw", p, &rule, Some((c, necessary_winner(p, &rule, c)?)), None),
                None => winner_report(out, format, "nw", p, &rule, None, Some(necessary_winners(p, &rule)?)),
            }
        }
        Command::Pw { election, allow_exponential, guard } => {
            let e = load_election(&election.instance)?;
            let rule = resolve_rule(&election, &e)?;
            let p = &e.profile;
            let mode = if allow_exponential { Exponential::Allow { guard } } else { Exponential::Forbid };
            match resolve_candidate(&election, &e)? {
                Some(c) => winner_report(out, format, "pw", p, &rule, Some((c, possible_winner(p, &rule, c, mode)?)), None),
                None => winner_report(out, format, "pw", p, &rule, None, Some(possible_winners(p, &rule, mode)?)),
            }
        }
        Command::Oracle { query, election, guard } => {
            let e = load_election(&election.instance)?;
            let rule = resolve_rule(&election, &e)?;
            let p = &e.profile;
            let (name, set) = match query {
                Query::Pw => ("oracle-pw", brute_pw(p, &rule, guard)?),
                Query::Nw => ("oracle-nw", brute_nw(p, &rule, guard)?),
            };
            match resolve_candidate(&election, &e)? {
                Some(c) => winner_report(out, format, name, p, &rule, Some((c, set.contains(&c))), None),
                None => winner_report(out, format, name, p, &rule, None, Some(set)),
            }
        }
        Command::ReduceSched { instance, k } => {
            let sched = load_scheduling(&instance)?;
            let red = reduce_scheduling_to_pw(&sched, k)?;
            let target = red.profile.candidates()[red.target].id.clone();
            let election = ElectionInstance { profile: red.profile, rule: Some(red.rule), target: Some(target.clone()) };
            let text = format!(
                "{} candidates ({} on the line), {} voters, target {target} under approval:{k}",
                election.profile.num_candidates(),
                red.line_length,
                election.profile.num_voters()
            );
            emit(out, format, &election_to_json(&election), &text)
        }
        Command::Gen { what } => {
            let doc = match what {
                GenCommand::Profile { seed, dimension, candidates, voters, range, denominator, max_width } => {
                    let params = ProfileParams { dimension, candidates, voters, range, denominator, max_width };
                    election_to_json(&ElectionInstance { profile: random_profile(&params, seed)?, rule: None, target: None })
                }
                GenCommand::Schedule { seed, jobs, machines, horizon, lengths, max_slack } => {
                    let params = ScheduleParams { jobs, machines, horizon, lengths, max_slack };
                    scheduling_to_json(&random_scheduling(&params, seed)?)
                }
            };
            // instances are always JSON so they can be fed back in
            emit(out, Format::Json, &doc, "")
        }
    }
}

/// Structured diagnostic for a failed command.
pub fn diagnostic(error: &Error) -> Value {
    json!({"schema_version": SCHEMA_VERSION, "error": {"kind": error.kind(), "message": error.to_string()}})
}

/// Process exit code for a failed command: 2 for guard violations, 1 otherwise.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::InstanceTooLarge { .. } => 2,
        _ => 1,
    }
}
