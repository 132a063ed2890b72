use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use green_etale_cli::config::{Format, RunConfig};
use green_etale_cli::fuzz::fuzz;
use green_etale_cli::pipeline::{run_box, run_decompose, run_pipeline};
use green_etale_cli::report::{box_text, decompose_text, emit_etale, etale_from_json, to_json};
use green_etale_cli::CliError;

/// Exact Green-étale verification for cyclic Galois extensions.
#[derive(Parser)]
#[command(name = "green-etale", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Run the full pipeline and print the verdict report.
    CheckEtale {
        config: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the relative box product with its structure maps.
    Box {
        config: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Eigen decomposition and projectivity certificate of L^fix.
    Decompose {
        config: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Seeded axiom and oracle runs over random functors.
    Fuzz {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
        /// Inject one corruption per sample and expect it to be caught.
        #[arg(long)]
        corrupt: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Emit a report; the input is a config or a JSON report to re-render.
    Report {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn run(verb: Verb) -> Result<bool, CliError> {
    match verb {
        Verb::CheckEtale { config, format } => {
            let cfg = RunConfig::load(&config)?;
            let r = run_pipeline(&cfg)?;
            print!("{}", emit_etale(&r, format.unwrap_or(cfg.output.format)));
            Ok(r.verdict.all_positive())
        }
        Verb::Box { config, format } => {
            let cfg = RunConfig::load(&config)?;
            let r = run_box(&cfg)?;
            match format.unwrap_or(cfg.output.format) {
                Format::Text => print!("{}", box_text(&r)),
                Format::Json => print!("{}", to_json(&r)),
            }
            Ok(r.holds)
        }
        Verb::Decompose { config, format } => {
            let cfg = RunConfig::load(&config)?;
            let r = run_decompose(&cfg)?;
            match format.unwrap_or(cfg.output.format) {
                Format::Text => print!("{}", decompose_text(&r)),
                Format::Json => print!("{}", to_json(&r)),
            }
            Ok(r.holds)
        }
        Verb::Fuzz { config, seed, count, corrupt, format } => {
            let cfg = RunConfig::load(&config)?;
            let f = &cfg.fuzz;
            let s = fuzz(&cfg.base_field()?, cfg.order()?, seed.unwrap_or(f.seed), count.unwrap_or(f.count), f.max_atoms, corrupt || f.corrupt)?;
            match format.unwrap_or(cfg.output.format) {
                Format::Text => print!("{}", s.text()),
                Format::Json => print!("{}", to_json(&s)),
            }
            Ok(s.all_pass())
        }
        Verb::Report { input, format } => {
            let text = std::fs::read_to_string(&input).map_err(|e| CliError::Config(format!("{}: {e}", input.display())))?;
            let r = if input.extension().is_some_and(|e| e == "json") { etale_from_json(&text)? } else { run_pipeline(&RunConfig::parse(&text)?)? };
            print!("{}", emit_etale(&r, format));
            Ok(r.verdict.all_positive())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.verb) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
