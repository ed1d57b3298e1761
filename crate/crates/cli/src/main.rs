//! `relcheck` — batch relevance queries over unitary GL parameters.
//!
//! Exit codes: 0 decided (relevant for `check`/`witness`), 1 irrelevant,
//! 2 usage or parse error, 3 resource limit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use relcheck_core::corpus::{
    enumerate_parameters, selftest_equivalence, CorpusError, CorpusSpec,
};
use relcheck_core::io::{
    encode_report, lambda_table_value, parse_parameter, parse_symbol, print_parameter,
    witness_report_value, LambdaTable, Report, WitnessReport,
};
use relcheck_core::params::{FieldProfile, UnitaryParameter};
use relcheck_core::relevance::{
    find_witness_with_cap, lambda_sum, RelevanceError, DEFAULT_INSTANCE_CAP,
};
use relcheck_core::{associated_partition_of, Partition};

const EXIT_OK: u8 = 0;
const EXIT_IRRELEVANT: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "relcheck",
    version,
    about = "Relevance decisions for unitary representations of Archimedean \
             general linear groups, on their formal parameters",
    after_help = "Parameters use the DSL `[mult*]L(label[,k=K][,s=N/D]) x Sd [+ ...]` \
                  or `0`; `⊠` is accepted for `x`.\nThe pair sweep honours \
                  RAYON_NUM_THREADS (default: machine parallelism)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    None,
    Real,
    Complex,
}

impl From<FieldArg> for FieldProfile {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::None => FieldProfile::Any,
            FieldArg::Real => FieldProfile::Real,
            FieldArg::Complex => FieldProfile::Complex,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide relevance of PI and SIGMA and print the full report
    Check {
        pi: String,
        sigma: String,
        /// Require dim(PI) = dim(SIGMA) + 1 before deciding
        #[arg(long)]
        corank_one: bool,
        /// Reject base dimensions unrealizable over the given field
        #[arg(long, value_enum, default_value_t = FieldArg::None)]
        field: FieldArg,
        /// Cap on PI's block instances for witness extraction
        #[arg(long, default_value_t = DEFAULT_INSTANCE_CAP)]
        instance_cap: usize,
    },
    /// Print the canonical witness for a relevant pair, or `none`
    Witness {
        pi: String,
        sigma: String,
        #[arg(long, default_value_t = DEFAULT_INSTANCE_CAP)]
        instance_cap: usize,
    },
    /// Print the nonzero Λ table, or one Λ query with --eta and --a
    Lambda {
        pi: String,
        sigma: String,
        /// Symbol of a single query, e.g. "L(a)" or "L(b,s=1/3)"
        #[arg(long)]
        eta: Option<String>,
        /// Level of a single query (a >= 1)
        #[arg(long)]
        a: Option<u32>,
    },
    /// SL₂-type, associated partition, NT measure, dimension and flags
    #[command(name = "type")]
    TypeInfo { param: String },
    /// Coordinatewise closeness of the SL₂-types of P and Q
    Close { p: String, q: String },
    /// List every parameter of the corpus, one per line
    Enumerate {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Sweep all corpus pairs, checking the engine invariants
    Selftest {
        /// Corpus spec file; defaults to the built-in desk-scale corpus
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn resource(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_RESOURCE,
            message: message.into(),
        }
    }
}

impl From<RelevanceError> for Failure {
    fn from(e: RelevanceError) -> Self {
        match e {
            RelevanceError::ResourceLimit { .. } => Failure::resource(e.to_string()),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<CorpusError> for Failure {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::CardinalityCap { .. } => Failure::resource(e.to_string()),
            other => Failure::usage(other.to_string()),
        }
    }
}

fn parse_arg(name: &str, text: &str) -> Result<UnitaryParameter, Failure> {
    parse_parameter(text).map_err(|e| Failure::usage(format!("{name}: {e}")))
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON encoding")
    );
}

fn partition_json(p: &Partition) -> serde_json::Value {
    json!(p.parts())
}

fn load_spec(path: Option<&PathBuf>) -> Result<CorpusSpec, Failure> {
    match path {
        None => Ok(CorpusSpec::desk_scale()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            CorpusSpec::from_json(&text)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check {
            pi,
            sigma,
            corank_one,
            field,
            instance_cap,
        } => {
            let pi = parse_arg("PI", &pi)?;
            let sigma = parse_arg("SIGMA", &sigma)?;
            let profile = FieldProfile::from(field);
            pi.validate_field_profile(profile)
                .map_err(|e| Failure::usage(format!("PI: {e}")))?;
            sigma
                .validate_field_profile(profile)
                .map_err(|e| Failure::usage(format!("SIGMA: {e}")))?;
            if corank_one && pi.dimension() != sigma.dimension() + 1 {
                return Err(Failure::usage(format!(
                    "corank-one check failed: dim(PI) = {} but dim(SIGMA) + 1 = {}",
                    pi.dimension(),
                    sigma.dimension() + 1
                )));
            }
            let report = Report::analyze_with_cap(&pi, &sigma, instance_cap)?;
            println!("{}", if report.relevant { "relevant" } else { "irrelevant" });
            print!("{}", encode_report(&report));
            Ok(if report.relevant {
                EXIT_OK
            } else {
                EXIT_IRRELEVANT
            })
        }
        Command::Witness {
            pi,
            sigma,
            instance_cap,
        } => {
            let pi = parse_arg("PI", &pi)?;
            let sigma = parse_arg("SIGMA", &sigma)?;
            match find_witness_with_cap(&pi, &sigma, instance_cap)? {
                None => {
                    println!("none");
                    Ok(EXIT_IRRELEVANT)
                }
                Some(w) => {
                    print_json(&witness_report_value(&WitnessReport::from_witness(&w)));
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Lambda { pi, sigma, eta, a } => {
            let pi = parse_arg("PI", &pi)?;
            let sigma = parse_arg("SIGMA", &sigma)?;
            match (eta, a) {
                (Some(eta), Some(a)) => {
                    if a < 1 {
                        return Err(Failure::usage("--a must be at least 1"));
                    }
                    let eta = parse_symbol(&eta)
                        .map_err(|e| Failure::usage(format!("--eta: {e}")))?;
                    print_json(&json!({
                        "eta": eta.to_string(),
                        "a": a,
                        "pi_sigma": lambda_sum(&eta, a, &pi, &sigma),
                        "sigma_pi": lambda_sum(&eta, a, &sigma, &pi),
                    }));
                    Ok(EXIT_OK)
                }
                (None, None) => {
                    print_json(&lambda_table_value(&LambdaTable::compute(&pi, &sigma)));
                    Ok(EXIT_OK)
                }
                _ => Err(Failure::usage(
                    "--eta and --a must be given together for a single query",
                )),
            }
        }
        Command::TypeInfo { param } => {
            let p = parse_arg("P", &param)?;
            print_json(&json!({
                "param": print_parameter(&p),
                "dim": p.dimension(),
                "nt": p.nt_measure(),
                "sl2": partition_json(&p.sl2_type()),
                "ap": partition_json(&associated_partition_of(&p)),
                "generic": p.is_generic(),
                "arthur": p.is_arthur_type(),
            }));
            Ok(EXIT_OK)
        }
        Command::Close { p, q } => {
            let p = parse_arg("P", &p)?;
            let q = parse_arg("Q", &q)?;
            println!("{}", p.sl2_type().is_close(&q.sl2_type()));
            Ok(EXIT_OK)
        }
        Command::Enumerate { spec } => {
            let spec = load_spec(Some(&spec))?;
            for p in enumerate_parameters(&spec)? {
                println!("{}", print_parameter(&p));
            }
            Ok(EXIT_OK)
        }
        Command::Selftest { spec } => {
            let spec = load_spec(spec.as_ref())?;
            let summary = selftest_equivalence(&spec)?;
            print!("{}", summary.to_json());
            eprintln!(
                "swept {} ordered pairs over {} parameters in {:.2?}",
                summary.ordered_pairs, summary.parameters, summary.elapsed
            );
            if let Some(ce) = &summary.first_counterexample {
                eprintln!("{ce}");
            }
            Ok(if summary.passed() {
                EXIT_OK
            } else {
                EXIT_IRRELEVANT
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
