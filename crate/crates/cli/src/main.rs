use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use gvbimod_cli::report::{render_run, render_suite, to_json, write_to_report_dir};
use gvbimod_cli::run::{run_text, EXIT_PARSE};
use gvbimod_cli::suites::{run_suite, SUITES};
use gvbimod_cli::workspace::FieldSpec;

#[derive(Parser)]
#[command(name = "gvbimod", version, about = "Exact verification of bimodule tensor products, duality and distributors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a workspace document.
    #[command(group(ArgGroup::new("format").args(["json", "pretty"])))]
    Run {
        file: PathBuf,
        /// Override the field: `q` or `p=<prime>`.
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the JSON report.
        #[arg(long)]
        json: bool,
        /// Print a readable summary (the default).
        #[arg(long)]
        pretty: bool,
    },
    /// Run a named verification suite: paper-examples, coherence or flatness.
    #[command(group(ArgGroup::new("format").args(["json", "pretty"])))]
    Suite {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        pretty: bool,
    },
}

fn exit(code: i32) -> ExitCode {
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return exit(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match cli.command {
        Command::Run { file, field, seed, json, pretty: _ } => {
            let field = match field.map(|f| f.parse::<FieldSpec>()).transpose() {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit(EXIT_PARSE);
                }
            };
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return exit(EXIT_PARSE);
                }
            };
            let outcome = run_text(&text, field, seed);
            let body = to_json(&outcome.report);
            let stem = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "workspace".into());
            if let Err(e) = write_to_report_dir(&format!("{stem}.report.json"), &body) {
                eprintln!("warning: could not write report: {e}");
            }
            if json {
                print!("{body}");
            } else {
                print!("{}", render_run(&outcome.report));
            }
            exit(outcome.exit_code)
        }
        Command::Suite { name, seed, json, pretty: _ } => {
            let Some(report) = run_suite(&name, seed) else {
                eprintln!("error: unknown suite {name:?}; expected one of {}", SUITES.join(", "));
                return exit(EXIT_PARSE);
            };
            let body = report.to_json();
            if let Err(e) = write_to_report_dir(&format!("{name}-seed{seed}.json"), &body) {
                eprintln!("warning: could not write report: {e}");
            }
            if json {
                print!("{body}");
            } else {
                print!("{}", render_suite(&report));
            }
            exit(if report.pass { 0 } else { 1 })
        }
    }
}
