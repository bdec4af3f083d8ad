use std::process::ExitCode;

use clap::Parser;
use cue_moments_cli::{run, write_atomic, Cli, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::try_from(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = run(&config).and_then(|r| Ok((r.render(config.output_format)?, r.ok)));
    let (text, ok) = match rendered {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &config.output_path {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
