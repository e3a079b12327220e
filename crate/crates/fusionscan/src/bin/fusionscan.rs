//! Command-line interface for the fusion-type classifier.
//!
//! Subcommands mirror the pipeline stages: `enumerate` lists candidate
//! type signatures for a global dimension, `filter` applies the
//! arithmetic exclusion rules, `solve` runs the feasibility search on a
//! single signature, `classify` chains all three into a report, and
//! `diff` compares a saved report with the built-in reference lists.
//!
//! Exit codes: 0 success; 1 usage or input error; 2 nonempty reference
//! diff (`diff`, or `classify --check`); 3 Unknown solver outcomes
//! present with `classify --strict`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fusionscan::catalog::reference_for;
use fusionscan::enumerate::{count_signatures, enumerate_signatures};
use fusionscan::filters::{run_filters, RuleId};
use fusionscan::report::{classify_cached, diff_reference, ClassificationReport, ClassifyConfig};
use fusionscan::signature::TypeSignature;
use fusionscan::solver::{solve, solve_with_trace, SolveConfig, SolveStatus, DEFAULT_BUDGET};

const EXIT_USAGE: u8 = 1;
const EXIT_DIFF: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "fusionscan",
    version,
    about = "Classify integral fusion category types by global dimension"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every candidate type signature of a global dimension.
    Enumerate {
        /// Global (Frobenius-Perron) dimension.
        #[arg(long)]
        fpdim: u64,
        /// Print only the number of candidates.
        #[arg(long)]
        count_only: bool,
    },
    /// Apply arithmetic exclusion rules to all candidates of a dimension.
    Filter {
        /// Global (Frobenius-Perron) dimension.
        #[arg(long)]
        fpdim: u64,
        /// Comma-separated rule ids to run instead of the default set.
        #[arg(long, value_delimiter = ',')]
        rules: Option<Vec<RuleId>>,
        /// Additionally apply rule R14, which is valid only at dimension 90.
        #[arg(long)]
        enable_cor90_6: bool,
    },
    /// Decide feasibility of a single type signature by exhaustive search.
    Solve {
        /// Type signature, e.g. "(1,2;2,2;4,5)".
        #[arg(long = "type", value_name = "SIGNATURE")]
        signature: String,
        /// Node budget (value trials) before giving up.
        #[arg(long)]
        budget: Option<u64>,
        /// Write a line-oriented search trace to this file.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
        /// Explore every duality assignment instead of canonical
        /// representatives.
        #[arg(long)]
        no_symmetry_breaking: bool,
    },
    /// Run the full pipeline and emit a classification report.
    Classify {
        /// Global (Frobenius-Perron) dimension.
        #[arg(long)]
        fpdim: u64,
        /// Additionally apply rule R14, which is valid only at dimension 90.
        #[arg(long)]
        enable_cor90_6: bool,
        /// Run the feasibility search on every survivor, not only the
        /// ones that still need an exclusion decision.
        #[arg(long)]
        solve_all: bool,
        /// Node budget per solved signature.
        #[arg(long)]
        budget: Option<u64>,
        /// Report format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
        /// Report cache directory (FUSIONSCAN_CACHE overrides it).
        #[arg(long, value_name = "DIR")]
        cache: Option<PathBuf>,
        /// Compare the final list with the reference catalog; exit 2 on
        /// any difference.
        #[arg(long)]
        check: bool,
        /// Exit 3 if any solver outcome is Unknown.
        #[arg(long)]
        strict: bool,
    },
    /// Compare a saved JSON report against the reference lists.
    Diff {
        /// Global (Frobenius-Perron) dimension to compare against.
        #[arg(long)]
        fpdim: u64,
        /// Path to a JSON report produced by `classify --output json`.
        #[arg(long, value_name = "PATH")]
        report: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes early (`fusionscan … | head`)
    // instead of panicking on the broken-pipe write error.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("fusionscan: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Enumerate { fpdim, count_only } => {
            if count_only {
                println!("{}", count_signatures(fpdim, None));
            } else {
                for sig in enumerate_signatures(fpdim, None) {
                    println!("{sig}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Filter {
            fpdim,
            rules,
            enable_cor90_6,
        } => {
            let rules = effective_rules(rules, enable_cor90_6);
            let candidates = enumerate_signatures(fpdim, None);
            let report =
                run_filters(&candidates, &rules, fpdim).map_err(|e| e.to_string())?;
            let survivors = report.survivors().count();
            let rule_names: Vec<&str> = rules.iter().map(|r| r.as_str()).collect();
            println!(
                "FPdim {fpdim}: {} candidates, {survivors} survivors (rules {})",
                report.records.len(),
                rule_names.join(",")
            );
            for record in &report.records {
                if record.survivor {
                    let marker = if record.requires_exclusion {
                        " [RF]"
                    } else {
                        ""
                    };
                    println!("{} survived{marker}", record.signature);
                } else {
                    let fired: Vec<&str> = record
                        .verdicts
                        .iter()
                        .filter(|v| v.fired && v.rule != RuleId::RF)
                        .map(|v| v.rule.as_str())
                        .collect();
                    println!("{} excluded by {}", record.signature, fired.join("+"));
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Solve {
            signature,
            budget,
            trace,
            no_symmetry_breaking,
        } => {
            let sig: TypeSignature = signature
                .parse()
                .map_err(|e| format!("invalid signature: {e}"))?;
            let config = SolveConfig {
                budget: budget.unwrap_or(DEFAULT_BUDGET),
                symmetry_breaking: !no_symmetry_breaking,
            };
            let result = match trace {
                Some(path) => {
                    let file = File::create(&path)
                        .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
                    let mut writer = BufWriter::new(file);
                    let result = solve_with_trace(&sig, &config, Some(&mut writer));
                    writer
                        .flush()
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    result
                }
                None => solve(&sig, &config),
            };
            println!("{}: {}", result.signature, result.status.name());
            if let SolveStatus::Unknown(reason) = &result.status {
                println!("reason: {reason}");
            }
            println!("nodes: {}", result.nodes);
            println!("combos: {}", result.combos);
            println!("exhaustive: {}", result.exhaustive);
            if let SolveStatus::Realizable(table) = &result.status {
                println!("{}", table.to_canonical_json());
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Classify {
            fpdim,
            enable_cor90_6,
            solve_all,
            budget,
            output,
            cache,
            check,
            strict,
        } => {
            let mut config = ClassifyConfig::new(fpdim);
            config.enable_cor90_6 = enable_cor90_6;
            config.solve_all = solve_all;
            if let Some(budget) = budget {
                config.budget = budget;
            }
            config.cache_dir = cache;
            let (report, _) = classify_cached(&config).map_err(|e| e.to_string())?;
            match output {
                OutputFormat::Json => println!("{}", report.to_json()),
                OutputFormat::Text => print!("{}", report.render_text()),
            }
            if check {
                let entry = reference_for(fpdim).ok_or_else(|| {
                    format!("no reference list for global dimension {fpdim}")
                })?;
                let diff = diff_reference(&report, entry);
                if !diff.is_empty() {
                    eprint!("{}", diff.render_text());
                    return Ok(ExitCode::from(EXIT_DIFF));
                }
            }
            if strict && !report.unresolved.is_empty() {
                eprintln!(
                    "fusionscan: {} unresolved (Unknown) outcomes",
                    report.unresolved.len()
                );
                return Ok(ExitCode::from(EXIT_UNKNOWN));
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Diff { fpdim, report } => {
            let entry = reference_for(fpdim).ok_or_else(|| {
                format!("no reference list for global dimension {fpdim}")
            })?;
            let text = std::fs::read_to_string(&report)
                .map_err(|e| format!("cannot read {}: {e}", report.display()))?;
            let parsed = ClassificationReport::from_json(&text)
                .map_err(|e| format!("invalid report {}: {e}", report.display()))?;
            if parsed.fpdim != fpdim {
                return Err(format!(
                    "report is for global dimension {}, not {fpdim}",
                    parsed.fpdim
                ));
            }
            let diff = diff_reference(&parsed, entry);
            print!("{}", diff.render_text());
            Ok(if diff.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_DIFF)
            })
        }
    }
}

/// The rule list for `filter`: an explicit list is used as given, the
/// default set otherwise; `--enable-cor90-6` appends R14 when absent.
fn effective_rules(explicit: Option<Vec<RuleId>>, enable_cor90_6: bool) -> Vec<RuleId> {
    match (explicit, enable_cor90_6) {
        (Some(mut rules), true) => {
            if !rules.contains(&RuleId::R14) {
                rules.push(RuleId::R14);
            }
            rules
        }
        (Some(rules), false) => rules,
        (None, true) => RuleId::ALL.to_vec(),
        (None, false) => RuleId::DEFAULT.to_vec(),
    }
}
