use clap::Parser;

use svk::cli::{diagnostic, exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    if let Err(e) = run(cli, &mut stdout.lock()) {
        eprintln!("{}", serde_json::to_string_pretty(&diagnostic(&e)).expect("values serialize"));
        std::process::exit(exit_code(&e));
    }
}
