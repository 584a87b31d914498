//! Command-line front end for the library: predict invariants from type
//! vectors, verify predictions against the rank oracle, scan and classify
//! whole families, stress-test extremality, and reproduce the stored
//! worked examples.
//!
//! Exit codes: 0 when every comparison matched (or none applied), 1 on a
//! mathematical mismatch, 2 on usage errors, 3 when randomized sampling
//! could not produce the requested geometry.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fplab::commands::{
    self, CommandOutput, ConfigChoice, ExtremalOptions, ReproduceOptions, ScanOptions, ScanWhat,
    VerifyOptions,
};
use fplab::oracle::ArithmeticMode;
use fplab::{Error, Result};

#[derive(Parser)]
#[command(
    name = "fplab",
    version,
    about = "Hilbert functions and graded Betti numbers of fat-point schemes \
             on line configurations in the projective plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predict invariants from a (pseudo) type vector; no oracle run
    Predict {
        /// Strictly increasing type vector, e.g. 2,4,5
        #[arg(long = "type", value_name = "LIST")]
        type_vector: Option<String>,
        /// Weakly increasing pseudo type vector, e.g. 3,6,6,7,12,14
        #[arg(long, value_name = "LIST")]
        pseudo: Option<String>,
        /// Predict for the double scheme instead of the reduced one
        #[arg(long)]
        double: bool,
        /// Write the machine-readable report here
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Build a configuration, run the oracle, compare against predictions
    Verify {
        #[arg(long = "type", value_name = "LIST")]
        type_vector: Option<String>,
        #[arg(long, value_name = "LIST")]
        pseudo: Option<String>,
        /// Verify the double scheme instead of the support
        #[arg(long)]
        double: bool,
        /// Configuration family: standard, spread-out, standard-pseudo,
        /// generic, generic-lines, ct, ctr, ch
        #[arg(long, value_name = "FAMILY")]
        config: Option<String>,
        /// Number of lines for the ct / ctr families
        #[arg(long)]
        t: Option<u32>,
        /// Points kept on the last line for the ctr family
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Arithmetic: modular (fast, randomized) or exact (rational)
        #[arg(long, default_value = "modular")]
        mode: String,
        /// Also print the interpolation matrix at this degree
        #[arg(long, value_name = "DEGREE")]
        dump_matrix: Option<u32>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Classify every type vector with entries up to a bound
    Scan {
        /// Largest entry allowed in the enumerated vectors
        #[arg(long, default_value_t = 12)]
        max_sigma: u32,
        /// Compare hilbert functions ("hf") or betti tables ("betti")
        #[arg(long, default_value = "hf")]
        what: String,
        /// Run the oracle only on vectors whose largest entry is at most this
        #[arg(long, default_value_t = 5)]
        oracle_cap: u32,
        /// Oracle confirmations (or witness attempts) per vector
        #[arg(long, default_value_t = 2)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "modular")]
        mode: String,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Test whether a doubled intersection configuration has the smallest
    /// Hilbert function among doubles with its support Hilbert function
    Extremal {
        /// Intersection configuration as t or t,r (e.g. 4 or 4,2)
        #[arg(long, value_name = "T[,R]")]
        ct: Option<String>,
        /// Alternatively, the support difference sequence (1,2,...,t-1[,r])
        #[arg(long, value_name = "LIST")]
        delta_h: Option<String>,
        /// Number of random supports to sample
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "modular")]
        mode: String,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Recompute a stored worked example with the exact-arithmetic oracle
    Reproduce {
        /// Example id; see --list
        id: Option<String>,
        /// List the available example ids
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Seed-search budget for examples that hunt for a second table
        #[arg(long, default_value_t = 8)]
        trials: u32,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

fn parse_list(s: &str, flag: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::Usage(format!("{flag} expects comma-separated integers, got {part:?}")))
        })
        .collect()
}

fn parse_opt_list(s: &Option<String>, flag: &str) -> Result<Option<Vec<u32>>> {
    s.as_deref().map(|s| parse_list(s, flag)).transpose()
}

fn parse_mode(s: &str) -> Result<ArithmeticMode> {
    match s {
        "exact" => Ok(ArithmeticMode::Exact),
        "modular" => Ok(ArithmeticMode::Modular),
        other => Err(Error::Usage(format!(
            "unknown arithmetic mode {other:?}; expected exact or modular"
        ))),
    }
}

fn finish(out: CommandOutput, json: Option<PathBuf>) -> Result<i32> {
    print!("{}", out.text);
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&out.report)?;
        std::fs::write(&path, body + "\n")?;
    }
    Ok(out.report.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Predict { type_vector, pseudo, double, json } => {
            let out = commands::predict(
                parse_opt_list(&type_vector, "--type")?,
                parse_opt_list(&pseudo, "--pseudo")?,
                double,
            )?;
            finish(out, json)
        }
        Command::Verify {
            type_vector,
            pseudo,
            double,
            config,
            t,
            r,
            seed,
            mode,
            dump_matrix,
            json,
        } => {
            let opts = VerifyOptions {
                type_vector: parse_opt_list(&type_vector, "--type")?,
                pseudo_vector: parse_opt_list(&pseudo, "--pseudo")?,
                double,
                config: config.as_deref().map(ConfigChoice::from_name).transpose()?,
                t,
                r,
                seed,
                mode: parse_mode(&mode)?,
                dump_matrix,
            };
            finish(commands::verify(&opts)?, json)
        }
        Command::Scan { max_sigma, what, oracle_cap, trials, seed, mode, json } => {
            let opts = ScanOptions {
                max_entry: max_sigma,
                what: ScanWhat::from_name(&what)?,
                oracle_cap,
                trials,
                seed,
                mode: parse_mode(&mode)?,
            };
            let (report, text) = commands::scan(&opts)?;
            print!("{text}");
            if let Some(path) = json {
                let body = serde_json::to_string_pretty(&report)?;
                std::fs::write(&path, body + "\n")?;
            }
            Ok(if report.notes.is_empty() { 0 } else { 1 })
        }
        Command::Extremal { ct, delta_h, trials, seed, mode, json } => {
            let (t, r) = match (&ct, &delta_h) {
                (Some(ct), None) => {
                    let parts = parse_list(ct, "--ct")?;
                    match parts[..] {
                        [t] => (t, 0),
                        [t, r] => (t, r),
                        _ => {
                            return Err(Error::Usage(
                                "--ct expects t or t,r".into(),
                            ))
                        }
                    }
                }
                (None, Some(delta)) => {
                    commands::extremal_target_from_delta(&parse_list(delta, "--delta-h")?)?
                }
                _ => {
                    return Err(Error::Usage(
                        "pass exactly one of --ct or --delta-h".into(),
                    ))
                }
            };
            let opts = ExtremalOptions { t, r, trials, seed, mode: parse_mode(&mode)? };
            finish(commands::extremal(&opts)?, json)
        }
        Command::Reproduce { id, list, seed, trials, json } => {
            if list {
                for id in commands::reproduce_ids() {
                    println!("{id}");
                }
                return Ok(0);
            }
            let id = id.ok_or_else(|| Error::Usage("pass an example id or --list".into()))?;
            let opts = ReproduceOptions {
                id,
                // stored examples are checked with exact arithmetic only
                mode: ArithmeticMode::Exact,
                seed,
                trials,
            };
            finish(commands::reproduce(&opts)?, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(commands::error_exit_code(&err) as u8)
        }
    }
}
