use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sea_dyn::config::OutputFormat;
use sea_dyn::scenarios::RunError;
use sea_dyn::{EXIT_NUMERIC, EXIT_SIGNAL, EXIT_VALIDATION};

/// Steepest-entropy-ascent scenario runner.
#[derive(Parser)]
#[command(name = "sea-dyn", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario configuration and write its data files.
    Run {
        /// TOML configuration file.
        config: PathBuf,
        /// Worker threads for sweep cells (default: available cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Output directory (default: current directory).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format override.
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
        /// Seed override (precedence: this flag, then SEA_DYN_SEED, then config).
        #[arg(long)]
        seed: Option<u64>,
        /// Config overrides as dotted.path=value (repeatable).
        #[arg(long = "set", value_parser = parse_override)]
        set: Vec<(String, String)>,
    },
    /// Check a configuration against every documented constraint.
    Validate {
        /// TOML configuration file.
        config: PathBuf,
    },
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format {other}; use csv or json")),
    }
}

fn parse_override(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .ok_or_else(|| format!("override must look like key=value, got {s}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { config } => match sea_dyn::load_config(&config, &[], None) {
            Ok(_) => ExitCode::SUCCESS,
            Err(violations) => {
                for v in violations {
                    eprintln!("invalid: {v}");
                }
                ExitCode::from(EXIT_VALIDATION as u8)
            }
        },
        Command::Run { config, jobs, out, format, seed, set } => {
            let mut resolved = match sea_dyn::load_config(&config, &set, seed) {
                Ok(c) => c,
                Err(violations) => {
                    for v in violations {
                        eprintln!("invalid: {v}");
                    }
                    return ExitCode::from(EXIT_VALIDATION as u8);
                }
            };
            if let Some(f) = format {
                resolved.format = f;
            }
            if let Some(dir) = &out {
                resolved.out = Some(dir.display().to_string());
            }
            let jobs = jobs.unwrap_or_else(|| {
                std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
            });
            let report = match sea_dyn::execute(&resolved, jobs) {
                Ok(r) => r,
                Err(e @ RunError::Numeric(_)) => {
                    eprintln!("{e}");
                    return ExitCode::from(EXIT_NUMERIC as u8);
                }
                Err(e @ RunError::Signal(_)) => {
                    eprintln!("{e}");
                    return ExitCode::from(EXIT_SIGNAL as u8);
                }
            };
            let dir = resolved.out.clone().unwrap_or_else(|| ".".to_string());
            if let Err(e) = std::fs::create_dir_all(&dir) {
                eprintln!("cannot create output directory {dir}: {e}");
                return ExitCode::from(EXIT_VALIDATION as u8);
            }
            let stem = config
                .file_stem()
                .map(|s| s.to_string_lossy().to_string())
                .unwrap_or_else(|| "run".to_string());
            let ext = match resolved.format {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
            };
            let path = std::path::Path::new(&dir).join(format!("{stem}.{ext}"));
            let result = std::fs::File::create(&path).and_then(|mut f| match resolved.format {
                OutputFormat::Csv => report.write_csv(&mut f),
                OutputFormat::Json => report.write_json(&mut f),
            });
            match result {
                Ok(()) => {
                    eprintln!(
                        "wrote {} ({} rows, {:.2}s)",
                        path.display(),
                        report.rows.len(),
                        report.summary.wall_time_s
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("cannot write {}: {e}", path.display());
                    ExitCode::from(EXIT_VALIDATION as u8)
                }
            }
        }
    }
}
