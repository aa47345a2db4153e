//! Subcommands and the exit-code contract: 0 = the property holds (or the
//! command succeeded), 1 = checked and false, 2 = usage or input error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use heisenberg_core::classify::{classify, invariants};
use heisenberg_core::heisenberg::{
    build_companion_rep, build_d, build_m, build_restriction_rep, build_standard, build_v, validate_rep,
};
use heisenberg_core::json::{
    elem_to_json, invariants_to_json, matrix_to_json, params_to_json, rep_from_json, rep_to_json, series_to_json,
    subspace_to_json,
};
use heisenberg_core::module_theory::{
    composition_series, is_irreducible_with, is_uniserial, Irreducibility, IrreducibilityOptions, IrreducibleWitness,
};
use heisenberg_core::{Error, Field, HeisenbergAlgebra, ModuleParams};

use crate::parse::{parse_elem, parse_elem_list, parse_int_list, parse_poly, parse_poly_list};
use crate::suite::{run_suite, SuiteName, SuiteSpec};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hrep", version, about = "Modular representations of Heisenberg Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a representation or matrix and print it as JSON.
    Build(BuildArgs),
    /// Analyze a representation read as JSON from --in or standard input.
    Analyze(AnalyzeArgs),
    /// Run a named verification suite.
    Suite(SuiteArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildKind {
    #[value(name = "V")]
    V,
    Standard,
    Companion,
    Restriction,
    #[value(name = "M")]
    M,
    #[value(name = "D")]
    D,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(value_enum)]
    pub kind: BuildKind,
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Ascending coefficients of a modulus over GF(p) to work in GF(p^k).
    #[arg(long)]
    pub modulus: Option<String>,
    /// Rank of h(n).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub betas: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub gammas: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub deltas: Option<String>,
    /// Polynomial(s), ascending coefficients; several separated by ';'.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Irreducible polynomial defining the extension for `restriction`.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyzeAction {
    Validate,
    Classify,
    Invariants,
    Irreducible,
    Series,
    Uniserial,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(value_enum)]
    pub action: AnalyzeAction,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Seed for the randomized irreducibility test on large modules.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    pub name: String,
    /// Comma-separated characteristics.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Outcome {
    code: i32,
    text: String,
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome {
        code: EXIT_USAGE,
        text: format!("error: {msg}"),
    }
}

fn emit_json(code: i32, v: &Value) -> Outcome {
    Outcome {
        code,
        text: serde_json::to_string_pretty(v).expect("serializable"),
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let (outcome, out) = match cli.command {
        Command::Build(a) => {
            let out = a.out.clone();
            (build(&a).unwrap_or_else(usage), out)
        }
        Command::Analyze(a) => {
            let out = a.out.clone();
            (analyze(&a), out)
        }
        Command::Suite(a) => {
            let out = a.out.clone();
            (suite(&a), out)
        }
    };
    if outcome.code == EXIT_USAGE {
        eprintln!("{}", outcome.text);
        return outcome.code;
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, outcome.text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{}", outcome.text);
        }
    }
    outcome.code
}

fn field_of(a: &BuildArgs) -> Result<Field, String> {
    match &a.modulus {
        None => Field::prime(a.p).map_err(|e| e.to_string()),
        Some(m) => {
            let coeffs: Vec<i64> = parse_int_list(m)?;
            let base = Field::prime(a.p).map_err(|e| e.to_string())?;
            let reduced: Vec<u64> = coeffs.iter().map(|&c| base.from_int(c).value()).collect();
            Field::extension(a.p, &reduced).map_err(|e| e.to_string())
        }
    }
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, String> {
    v.as_deref().ok_or_else(|| format!("--{flag} is required"))
}

fn build(a: &BuildArgs) -> Result<Outcome, String> {
    let field = field_of(a)?;
    let alpha = || parse_elem(&field, required(&a.alpha, "alpha")?);
    let value = match a.kind {
        BuildKind::V => {
            let alg = HeisenbergAlgebra::new(a.n, &field).map_err(|e| e.to_string())?;
            let betas = parse_elem_list(&field, required(&a.betas, "betas")?)?;
            let gammas = parse_elem_list(&field, required(&a.gammas, "gammas")?)?;
            if betas.len() != a.n || gammas.len() != a.n {
                return Err(format!("--betas and --gammas need {} entries each", a.n));
            }
            let params = ModuleParams::new(alpha()?, betas, gammas).map_err(|e| e.to_string())?;
            rep_to_json(&build_v(&alg, &params).map_err(|e| e.to_string())?)
        }
        BuildKind::Standard => {
            let alg = HeisenbergAlgebra::new(a.n, &field).map_err(|e| e.to_string())?;
            rep_to_json(&build_standard(&alg))
        }
        BuildKind::Companion => {
            let beta = parse_elem(&field, required(&a.beta, "beta")?)?;
            let f = parse_poly(&field, required(&a.f, "f")?)?;
            rep_to_json(&build_companion_rep(&alpha()?, &beta, &f).map_err(|e| e.to_string())?)
        }
        BuildKind::Restriction => {
            if a.modulus.is_some() {
                return Err("restriction works over GF(p); give the extension with --q".into());
            }
            let q = parse_poly(&field, required(&a.q, "q")?)?;
            let fs = parse_poly_list(&field, required(&a.f, "f")?)?;
            let gs = parse_poly_list(&field, required(&a.g, "g")?)?;
            if fs.len() != a.n || gs.len() != a.n {
                return Err(format!("--f and --g need {} polynomials each (separated by ';')", a.n));
            }
            let alpha_choice = match &a.alpha {
                None => None,
                Some(s) => {
                    let k = heisenberg_core::field::make_extension(&q).map_err(|e| e.to_string())?;
                    Some(parse_elem(&k, s)?)
                }
            };
            let res = build_restriction_rep(&q, &fs, &gs, alpha_choice.as_ref()).map_err(|e| e.to_string())?;
            rep_to_json(&res.rep)
        }
        BuildKind::M => {
            let beta = parse_elem(&field, required(&a.beta, "beta")?)?;
            matrix_to_json(&build_m(&alpha()?, &beta).map_err(|e| e.to_string())?)
        }
        BuildKind::D => {
            let deltas = parse_elem_list(&field, required(&a.deltas, "deltas")?)?;
            matrix_to_json(&build_d(&alpha()?, &deltas).map_err(|e| e.to_string())?)
        }
    };
    Ok(emit_json(EXIT_HOLDS, &value))
}

fn read_input(path: &Option<PathBuf>) -> Result<Value, String> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| format!("$: malformed JSON: {e}"))
}

fn failed(e: &Error) -> Outcome {
    match e {
        Error::TooLarge(_) | Error::Undecided(_) | Error::Schema { .. } => usage(e),
        _ => emit_json(EXIT_FALSE, &json!({ "error": e.to_string() })),
    }
}

fn analyze(a: &AnalyzeArgs) -> Outcome {
    let value = match read_input(&a.input) {
        Ok(v) => v,
        Err(e) => return usage(e),
    };
    let rep = match rep_from_json(&value) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    match a.action {
        AnalyzeAction::Validate => {
            let report = validate_rep(&rep);
            let code = if report.is_valid() { EXIT_HOLDS } else { EXIT_FALSE };
            emit_json(
                code,
                &json!({
                    "valid": report.is_valid(),
                    "faithful": report.faithful,
                    "z_scalar": report.z_scalar.as_ref().map(elem_to_json),
                    "violations": report.violations,
                }),
            )
        }
        AnalyzeAction::Classify => match classify(&rep) {
            Ok((params, t)) => {
                let mut v = params_to_json(&params);
                v["transform"] = matrix_to_json(&t);
                emit_json(EXIT_HOLDS, &v)
            }
            Err(e) => failed(&e),
        },
        AnalyzeAction::Invariants => match invariants(&rep) {
            Ok(t) => emit_json(EXIT_HOLDS, &invariants_to_json(&t)),
            Err(e) => failed(&e),
        },
        AnalyzeAction::Irreducible => {
            let opts = IrreducibilityOptions {
                seed: a.seed,
                ..Default::default()
            };
            match is_irreducible_with(&rep, &opts) {
                Ok(Irreducibility::Irreducible(w)) => {
                    let certificate = match w {
                        IrreducibleWitness::AllLinesSpin { lines } => json!({"method": "exhaustive", "lines": lines}),
                        IrreducibleWitness::Norton {
                            eigenvalue,
                            samples_used,
                            ..
                        } => json!({
                            "method": "norton",
                            "eigenvalue": elem_to_json(&eigenvalue),
                            "samples_used": samples_used,
                        }),
                    };
                    emit_json(EXIT_HOLDS, &json!({"irreducible": true, "certificate": certificate}))
                }
                Ok(Irreducibility::Reducible(s)) => emit_json(
                    EXIT_FALSE,
                    &json!({"irreducible": false, "submodule": subspace_to_json(&s)}),
                ),
                Err(e) => failed(&e),
            }
        }
        AnalyzeAction::Series => match composition_series(&rep) {
            Ok(s) => emit_json(EXIT_HOLDS, &series_to_json(&s)),
            Err(e) => failed(&e),
        },
        AnalyzeAction::Uniserial => match is_uniserial(&rep) {
            Ok(u) => emit_json(if u { EXIT_HOLDS } else { EXIT_FALSE }, &json!({"uniserial": u})),
            Err(e) => failed(&e),
        },
    }
}

fn suite(a: &SuiteArgs) -> Outcome {
    let name: SuiteName = match a.name.parse() {
        Ok(n) => n,
        Err(e) => return usage(e),
    };
    let parse =
        |s: &Option<String>| -> Result<Vec<usize>, String> { s.as_deref().map_or(Ok(Vec::new()), parse_int_list) };
    let ps = match a.p.as_deref().map_or(Ok(Vec::new()), parse_int_list::<u64>) {
        Ok(v) => v,
        Err(e) => return usage(e),
    };
    let (ns, ms) = match (parse(&a.n), parse(&a.m)) {
        (Ok(n), Ok(m)) => (n, m),
        (Err(e), _) | (_, Err(e)) => return usage(e),
    };
    let spec = SuiteSpec {
        name,
        ps,
        ns,
        ms,
        seed: a.seed,
    };
    match run_suite(&spec, a.jobs) {
        Ok(report) => {
            let code = if report.passed() { EXIT_HOLDS } else { EXIT_FALSE };
            if a.json {
                emit_json(code, &report.to_json())
            } else {
                Outcome {
                    code,
                    text: report.to_string(),
                }
            }
        }
        Err(e) => usage(e),
    }
}
