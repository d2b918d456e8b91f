//! Command-line frontend.
//!
//! Every command prints one JSON report document to the output stream (keys
//! sorted, no timestamps unless `--timing` is given) or, with `--pretty`,
//! an indented plain-text rendering of the same document.
//!
//! Exit codes: 0 on success, 1 when a checked law is refuted (or a
//! factorization fails verification), 2 on usage or configuration errors.

mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use config::{Config, Defaults, DEFAULT_CONFIG};

use crate::catalogue::{VariadicFn, CATALOGUE};
use crate::checkers::{check_class, CheckOptions, ClassKind};
use crate::error::{Error, Result};
use crate::factorization::factorize;
use crate::generators::LengthRules;
use crate::hierarchy::{profile, separation_search};

#[derive(Debug, Parser)]
#[command(
    name = "relassoc",
    version,
    about = "Bounded checks of relaxed associativity for functions over words"
)]
struct Cli {
    /// TOML configuration file; the built-in scenario set is used otherwise.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print an indented text rendering instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Worker threads: 1 runs sequentially, 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one class membership.
    Check {
        #[arg(long = "fn")]
        function: String,
        /// A, Ap, P or Pp.
        #[arg(long)]
        class: String,
        #[arg(long)]
        domain: String,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        domain_bound: Option<usize>,
    },
    /// Check a family at every level D_0..D_max_m.
    Profile {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Degree of associativeness (A) or preassociativeness (P).
    Degree {
        #[arg(long = "fn")]
        function: String,
        /// A or P.
        #[arg(long)]
        family: String,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Build and verify the factorization F = f ∘ H.
    Factorize {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        domain: Option<String>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// List catalogue entries.
    Catalogue,
    /// Search for a function inside the first class and outside the second.
    Separate {
        /// Class pair such as `A,Ap`.
        #[arg(long)]
        classes: String,
        #[arg(long)]
        domain: String,
        #[arg(long)]
        bound: Option<usize>,
        /// `rules` (prefix rules per input length) or `config` (configured
        /// functions in order).
        #[arg(long, default_value = "rules")]
        generator: String,
        /// Longest output of the `rules` generator.
        #[arg(long, default_value_t = 2)]
        max_output_len: usize,
    },
}

fn parse_class(s: &str) -> Result<ClassKind> {
    ClassKind::parse(s).ok_or_else(|| Error::Config(format!("unknown class `{s}` (expected A, Ap, P or Pp)")))
}

struct Outcome {
    result: Value,
    exit: i32,
}

fn execute(cli: &Cli, cfg: &Config) -> Result<Outcome> {
    let defaults = cfg.defaults();
    let alphabet = cfg.alphabet();
    let opts_for = |bound: Option<usize>, domain_bound: Option<usize>| {
        let bound = bound.unwrap_or(defaults.bound);
        CheckOptions::new(bound)
            .with_domain_bound(domain_bound.or(defaults.domain_bound).unwrap_or(bound))
            .with_workers(cli.workers)
    };
    match &cli.command {
        Command::Check {
            function,
            class,
            domain,
            bound,
            domain_bound,
        } => {
            let f = cfg.function(function)?;
            let class = parse_class(class)?;
            let d = cfg.domain(domain)?;
            let opts = opts_for(*bound, *domain_bound);
            let v = check_class(f, class, &d, &opts)?;
            let replayed = v.counterexample().map(|ce| ce.replay(f));
            Ok(Outcome {
                exit: if v.passed() { 0 } else { 1 },
                result: json!({
                    "function": function,
                    "class": class.to_string(),
                    "domain": domain,
                    "domain_set": d.describe(),
                    "bound": opts.bound,
                    "domain_bound": opts.domain_bound,
                    "verdict": report::verdict(alphabet, &v),
                    "replayed": replayed,
                }),
            })
        }
        Command::Profile {
            function,
            family,
            max_m,
            bound,
        }
        | Command::Degree {
            function,
            family,
            max_m,
            bound,
        } => {
            let f = cfg.function(function)?;
            let family = parse_class(family)?;
            let is_degree = matches!(cli.command, Command::Degree { .. });
            if is_degree && !matches!(family, ClassKind::A | ClassKind::P) {
                return Err(Error::Config(format!(
                    "degree is defined for families A and P, not {family}"
                )));
            }
            let opts = opts_for(*bound, None);
            let p = profile(f, alphabet, family, max_m.unwrap_or(defaults.max_m), &opts)?;
            let mut result = report::profile(alphabet, &p);
            if is_degree {
                result = json!({
                    "function": function,
                    "family": family.to_string(),
                    "k": p.k.to_string(),
                    "degree": p.degree().map(|d| d.to_string()),
                    "degree_line": p.degree_line(),
                });
            } else {
                result["function"] = json!(function);
            }
            Ok(Outcome { result, exit: 0 })
        }
        Command::Factorize {
            function,
            domain,
            bound,
        } => {
            let f = cfg.function(function)?;
            let d = domain.as_deref().map(|n| cfg.domain(n)).transpose()?;
            let opts = opts_for(*bound, None);
            let fz = factorize(f, alphabet, d.as_ref(), &opts)?;
            let ok = fz.report.injective() && fz.report.round_trip_ok();
            let mut result = report::factorization(alphabet, &fz);
            result["function"] = json!(function);
            result["domain"] = json!(domain);
            Ok(Outcome {
                result,
                exit: if ok { 0 } else { 1 },
            })
        }
        Command::Catalogue => {
            let entries: Vec<Value> = CATALOGUE
                .iter()
                .map(|(key, params, description)| json!({ "key": key, "params": params, "description": description }))
                .collect();
            Ok(Outcome {
                result: json!({ "entries": entries }),
                exit: 0,
            })
        }
        Command::Separate {
            classes,
            domain,
            bound,
            generator,
            max_output_len,
        } => {
            let (inside, outside) = classes
                .split_once([',', ':'])
                .ok_or_else(|| Error::Config(format!("class pair `{classes}` is not of the form `A,Ap`")))?;
            let (inside, outside) = (parse_class(inside.trim())?, parse_class(outside.trim())?);
            let d = cfg.domain(domain)?;
            let opts = opts_for(*bound, None);
            let candidates: Vec<VariadicFn> = match generator.as_str() {
                "rules" => LengthRules::new(opts.bound, *max_output_len).collect(),
                "config" => cfg.functions().iter().map(|(_, f)| f.clone()).collect(),
                other => {
                    return Err(Error::Config(format!(
                        "unknown generator `{other}` (expected rules or config)"
                    )))
                }
            };
            let examined = candidates.len();
            let found = separation_search(inside, outside, &d, candidates, &opts)?;
            let found = found.map(|s| {
                json!({
                    "function": s.function.name(),
                    "member": report::verdict(alphabet, &s.member),
                    "refuted": report::verdict(alphabet, &s.refuted),
                })
            });
            Ok(Outcome {
                result: json!({
                    "inside": inside.to_string(),
                    "outside": outside.to_string(),
                    "domain": domain,
                    "domain_set": d.describe(),
                    "bound": opts.bound,
                    "generator": generator,
                    "generator_size": examined,
                    "found": found,
                }),
                exit: 0,
            })
        }
    }
}

fn load_config(cli: &Cli) -> Result<(Config, String)> {
    match &cli.config {
        None => Ok((Config::default_config()?, "built-in".to_string())),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            Ok((Config::parse(&text)?, path.display().to_string()))
        }
    }
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    let started = Instant::now();
    let outcome = load_config(&cli).and_then(|(cfg, source)| execute(&cli, &cfg).map(|o| (o, cfg, source)));
    let (outcome, cfg, source) = match outcome {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut doc = json!({
        "command": echo,
        "config": { "source": source, "digest": cfg.digest() },
        "result": outcome.result,
        "exit_code": outcome.exit,
    });
    if cli.timing {
        doc["timing"] = json!({ "elapsed_ms": started.elapsed().as_secs_f64() * 1000.0 });
    }
    let text = if cli.pretty {
        report::pretty(&doc)
    } else {
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    };
    if out.write_all(text.as_bytes()).is_err() {
        return 2;
    }
    outcome.exit
}
