//! JSON instance files and the textual rule syntax.
//!
//! Rationals are written as strings (`"3"`, `"-7/2"`, `"0.25"`); plain JSON
//! integers are accepted on input. Parse errors name the offending field,
//! e.g. `voters[2].box[0][1]`.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{
    format_rational, parse_rational, Candidate, KParam, PartialSpatialProfile, Rational, ScoringRule, VoterBox,
};
use crate::scheduling::{Job, SchedulingInstance};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectionInstance {
    pub profile: PartialSpatialProfile,
    pub rule: Option<ScoringRule>,
    pub target: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Election(ElectionInstance),
    Scheduling(SchedulingInstance),
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| Error::parse(join(path, name), "missing field"))
}

fn join(path: &str, name: &str) -> String {
    if path.is_empty() {
        name.to_string()
    } else {
        format!("{path}.{name}")
    }
}

fn as_object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    value.as_object().ok_or_else(|| Error::parse(path, "expected an object"))
}

fn as_array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    value.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

fn as_str<'a>(value: &'a Value, path: &str) -> Result<&'a str> {
    value.as_str().ok_or_else(|| Error::parse(path, "expected a string"))
}

fn as_u64(value: &Value, path: &str) -> Result<u64> {
    value.as_u64().ok_or_else(|| Error::parse(path, "expected a nonnegative integer"))
}

fn as_rational(value: &Value, path: &str) -> Result<Rational> {
    let parsed = match value {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n.as_i64().map(crate::model::integer),
        _ => None,
    };
    parsed.ok_or_else(|| Error::parse(path, format!("expected a rational such as \"3/2\", found {value}")))
}

fn parse_candidate(value: &Value, path: &str) -> Result<Candidate> {
    let obj = as_object(value, path)?;
    let id = as_str(field(obj, path, "id")?, &join(path, "id"))?;
    let pos_path = join(path, "position");
    let position = as_array(field(obj, path, "position")?, &pos_path)?
        .iter()
        .enumerate()
        .map(|(i, v)| as_rational(v, &format!("{pos_path}[{i}]")))
        .collect::<Result<_>>()?;
    Ok(Candidate::new(id, position))
}

fn parse_voter(value: &Value, path: &str) -> Result<VoterBox> {
    let obj = as_object(value, path)?;
    let id = as_str(field(obj, path, "id")?, &join(path, "id"))?;
    let box_path = join(path, "box");
    let mut bounds = Vec::new();
    for (i, interval) in as_array(field(obj, path, "box")?, &box_path)?.iter().enumerate() {
        let ipath = format!("{box_path}[{i}]");
        let pair = as_array(interval, &ipath)?;
        if pair.len() != 2 {
            return Err(Error::parse(ipath, "expected [lo, hi]"));
        }
        bounds.push((as_rational(&pair[0], &format!("{ipath}[0]"))?, as_rational(&pair[1], &format!("{ipath}[1]"))?));
    }
    Ok(VoterBox::new(id, bounds))
}

fn parse_election(obj: &Map<String, Value>) -> Result<ElectionInstance> {
    let dimension = as_u64(field(obj, "", "dimension")?, "dimension")? as usize;
    let candidates = as_array(field(obj, "", "candidates")?, "candidates")?
        .iter()
        .enumerate()
        .map(|(i, v)| parse_candidate(v, &format!("candidates[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let voters = as_array(field(obj, "", "voters")?, "voters")?
        .iter()
        .enumerate()
        .map(|(i, v)| parse_voter(v, &format!("voters[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let rule = match obj.get("rule") {
        None | Some(Value::Null) => None,
        Some(v) => Some(parse_rule(as_str(v, "rule")?).map_err(|e| Error::parse("rule", e.to_string()))?),
    };
    let target = match obj.get("target") {
        None | Some(Value::Null) => None,
        Some(v) => Some(as_str(v, "target")?.to_string()),
    };
    let profile = PartialSpatialProfile::new(dimension, candidates, voters)?;
    if let Some(t) = &target {
        profile.candidate_index(t).map_err(|e| Error::parse("target", e.to_string()))?;
    }
    Ok(ElectionInstance { profile, rule, target })
}

fn parse_scheduling(obj: &Map<String, Value>) -> Result<SchedulingInstance> {
    let machines = as_u64(field(obj, "", "machines")?, "machines")? as usize;
    let mut jobs = Vec::new();
    for (i, v) in as_array(field(obj, "", "jobs")?, "jobs")?.iter().enumerate() {
        let path = format!("jobs[{i}]");
        let o = as_object(v, &path)?;
        let num = |name: &str| as_u64(field(o, &path, name)?, &join(&path, name));
        jobs.push(Job::new(
            as_str(field(o, &path, "id")?, &join(&path, "id"))?,
            num("arrival")?,
            num("deadline")?,
            num("processing")?,
        ));
    }
    SchedulingInstance::new(jobs, machines)
}

/// Parses an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::parse("$", e.to_string()))?;
    let obj = as_object(&value, "$")?;
    let version = as_u64(field(obj, "", "schema_version")?, "schema_version")?;
    if version != SCHEMA_VERSION {
        return Err(Error::parse("schema_version", format!("unsupported version {version}, expected {SCHEMA_VERSION}")));
    }
    match as_str(field(obj, "", "kind")?, "kind")? {
        "election" => Ok(Instance::Election(parse_election(obj)?)),
        "scheduling" => Ok(Instance::Scheduling(parse_scheduling(obj)?)),
        other => Err(Error::parse("kind", format!("expected \"election\" or \"scheduling\", found \"{other}\""))),
    }
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    parse_instance(&text)
}

fn rationals(values: &[Rational]) -> Value {
    Value::Array(values.iter().map(|v| Value::String(format_rational(v))).collect())
}

pub fn election_to_json(instance: &ElectionInstance) -> Value {
    let p = &instance.profile;
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "election",
        "dimension": p.dimension(),
        "candidates": p.candidates().iter().map(|c| json!({"id": c.id, "position": rationals(&c.position)})).collect::<Vec<_>>(),
        "voters": p.voters().iter().map(|v| json!({
            "id": v.id,
            "box": v.bounds.iter().map(|(lo, hi)| json!([format_rational(lo), format_rational(hi)])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    if let Some(rule) = &instance.rule {
        doc["rule"] = Value::String(rule.to_string());
    }
    if let Some(target) = &instance.target {
        doc["target"] = Value::String(target.clone());
    }
    doc
}

pub fn scheduling_to_json(instance: &SchedulingInstance) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "scheduling",
        "machines": instance.machines(),
        "jobs": instance.jobs().iter().map(|j| json!({
            "id": j.id, "arrival": j.arrival, "deadline": j.deadline, "processing": j.processing,
        })).collect::<Vec<_>>(),
    })
}

pub fn instance_to_json(instance: &Instance) -> Value {
    match instance {
        Instance::Election(e) => election_to_json(e),
        Instance::Scheduling(s) => scheduling_to_json(s),
    }
}

/// Parses `k`, `m`, `m-2`, `2*m+1`, `-m+5` and similar.
pub fn parse_kparam(text: &str) -> Result<KParam> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidRule(format!("cannot read `{text}` as k or a linear expression in m"));
    let int = |t: &str| t.parse::<i64>().map_err(|_| bad());
    let Some((before, after)) = s.split_once('m') else {
        return Ok(KParam::constant(int(&s)?));
    };
    let slope = match before {
        "" | "+" => 1,
        "-" => -1,
        b => int(b.strip_suffix('*').ok_or_else(bad)?)?,
    };
    let offset = match after {
        "" => 0,
        a if a.starts_with('+') || a.starts_with('-') => int(a)?,
        _ => return Err(bad()),
    };
    Ok(KParam { slope, offset })
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::InvalidRule(format!("`{t}` is not a nonnegative integer"))))
        .collect()
}

fn parse_usize(text: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| Error::InvalidRule(format!("`{text}` is not a nonnegative integer")))
}

/// Parses `plurality`, `veto`, `borda`, `approval:K`, `kveto:K`,
/// `wveto:ALPHA:B1,…,Bk`, `fkt:K:T` or `vector:S1,…,Sm`.
pub fn parse_rule(text: &str) -> Result<ScoringRule> {
    let lower = text.trim().to_ascii_lowercase();
    let parts: Vec<&str> = lower.split(':').collect();
    let arity = |n: usize| {
        if parts.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidRule(format!("`{text}`: expected {} argument(s)", n - 1)))
        }
    };
    match parts[0] {
        "plurality" => arity(1).map(|_| ScoringRule::Plurality),
        "veto" => arity(1).map(|_| ScoringRule::Veto),
        "borda" => arity(1).map(|_| ScoringRule::Borda),
        "approval" => {
            arity(2)?;
            Ok(ScoringRule::KApproval(parse_kparam(parts[1])?))
        }
        "kveto" => {
            arity(2)?;
            Ok(ScoringRule::KVeto(parse_kparam(parts[1])?))
        }
        "wveto" => {
            arity(3)?;
            let alpha = parts[1].trim().parse().map_err(|_| Error::InvalidRule(format!("bad alpha in `{text}`")))?;
            Ok(ScoringRule::WeightedVeto { alpha, betas: parse_list(parts[2])? })
        }
        "fkt" => {
            arity(3)?;
            Ok(ScoringRule::Fkt { k: parse_usize(parts[1])?, t: parse_usize(parts[2])? })
        }
        "vector" => {
            arity(2)?;
            Ok(ScoringRule::Explicit(parse_list(parts[1])?))
        }
        other => Err(Error::InvalidRule(format!("unknown rule `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{integer, rational};

    const EXAMPLE: &str = r#"{
        "schema_version": 1, "kind": "election", "dimension": 1,
        "candidates": [{"id": "c1", "position": ["1"]}, {"id": "c2", "position": [2]}, {"id": "c3", "position": ["3"]}],
        "voters": [{"id": "v1", "box": [["1", "3"]]}],
        "rule": "plurality"
    }"#;

    #[test]
    fn reads_example() {
        let Instance::Election(e) = parse_instance(EXAMPLE).unwrap() else { panic!() };
        assert_eq!(e.profile.num_candidates(), 3);
        assert_eq!(e.profile.candidates()[1].position, vec![integer(2)]);
        assert_eq!(e.rule, Some(ScoringRule::Plurality));
    }

    #[test]
    fn round_trip() {
        let inst = parse_instance(EXAMPLE).unwrap();
        let again = parse_instance(&instance_to_json(&inst).to_string()).unwrap();
        assert_eq!(inst, again);
        let sched = Instance::Scheduling(SchedulingInstance::new(vec![Job::new("J1", 1, 4, 3)], 2).unwrap());
        assert_eq!(parse_instance(&instance_to_json(&sched).to_string()).unwrap(), sched);
    }

    #[test]
    fn error_paths() {
        let bad = EXAMPLE.replace(r#"["1", "3"]"#, r#"["1", "x"]"#);
        match parse_instance(&bad).unwrap_err() {
            Error::Parse { path, .. } => assert_eq!(path, "voters[0].box[0][1]"),
            e => panic!("{e}"),
        }
        let bad = EXAMPLE.replace(r#""kind": "election","#, "");
        assert!(matches!(parse_instance(&bad).unwrap_err(), Error::Parse { path, .. } if path == "kind"));
    }

    #[test]
    fn decimal_positions() {
        let text = EXAMPLE.replace(r#"["3"]"#, r#"["2.5"]"#);
        let Instance::Election(e) = parse_instance(&text).unwrap() else { panic!() };
        assert_eq!(e.profile.candidates()[2].position, vec![rational(5, 2)]);
    }

    #[test]
    fn rules() {
        for text in ["plurality", "veto", "borda", "approval:3", "kveto:m-2", "approval:2*m+1", "wveto:3:1,0", "fkt:2:1", "vector:3,1,0"] {
            assert_eq!(parse_rule(text).unwrap().to_string(), text);
        }
        assert_eq!(parse_kparam("-m+5").unwrap(), KParam { slope: -1, offset: 5 });
        assert_eq!(parse_kparam("m").unwrap(), KParam::all_but(0));
        assert!(parse_rule("approval").is_err());
        assert!(parse_rule("copeland").is_err());
        assert!(parse_kparam("m*2").is_err());
    }
}
