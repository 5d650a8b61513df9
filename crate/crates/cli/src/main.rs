use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapKind;
use clap::Parser;
use sunada_cli::args::Cli;
use sunada_cli::output::{to_json_text, write_file};
use sunada_cli::{run, CliError};

fn fail(err: &CliError) -> ExitCode {
    let text = serde_json::to_string(&err.to_json()).expect("errors serialize");
    eprintln!("{text}");
    ExitCode::from(err.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapKind::DisplayHelp | ClapKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.render().to_string().trim_end().to_string())),
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let text = to_json_text(&report);
    match &cli.config.out {
        Some(path) => {
            if let Err(e) = write_file(path, &text) {
                return fail(&e);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    ExitCode::SUCCESS
}
