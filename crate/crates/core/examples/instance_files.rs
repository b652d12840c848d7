//! Reading, generating and writing JSON instance documents, and parsing rule
//! descriptors.
//!
//!     cargo run --example instance_files

use svk::generate::{random_profile, ProfileParams};
use svk::io::{election_to_json, parse_instance, parse_rule, ElectionInstance};

fn main() -> svk::Result<()> {
    let profile = random_profile(&ProfileParams { candidates: 3, voters: 2, ..Default::default() }, 5)?;
    let instance = ElectionInstance { profile, rule: Some(parse_rule("kveto:m-2")?), target: Some("c2".into()) };
    let text = serde_json::to_string_pretty(&election_to_json(&instance)).expect("values serialize");
    println!("{text}");

    let back = parse_instance(&text)?;
    println!("round trip equal: {}", back == svk::io::Instance::Election(instance));

    for spec in ["approval:m-3", "wveto:4:2,1", "vector:5,3,2,1,0"] {
        let rule = parse_rule(spec)?;
        println!("{spec:<15} at m = 5: {:?}", rule.score_vector(5)?);
    }
    Ok(())
}
