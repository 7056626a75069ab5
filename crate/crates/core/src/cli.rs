//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process streams.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::json;

use crate::eigencone::{self, DominantSpectrum, Violation};
use crate::error::Error;
use crate::islr01::{Classifier, HornViolation, MemoDump};
use crate::lr_oracle::triple_coefficient;
use crate::quiver::{build_flag_quiver, dense_orbit, DEFAULT_TRIALS};
use crate::schubert::GroupType;
use crate::weights::{GlWeight, IndexSet, WeightTriple};

#[derive(Parser, Debug)]
#[command(name = "lrcone", version, about = "Littlewood-Richardson coefficients, Horn inequalities and eigencones")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the dense-orbit sampler.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// JSON file holding memoized verdicts; read if present, rewritten on exit.
    #[arg(long, global = true, value_name = "FILE")]
    memo_cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Triple coefficients c(λ,μ,ν).
    #[command(subcommand)]
    Lr(LrCommand),
    /// Horn cone membership.
    #[command(subcommand)]
    Horn(HornCommand),
    /// Eigencone inequalities and membership.
    #[command(subcommand)]
    Eigencone(EigenconeCommand),
    /// Dense orbits in products of flag varieties.
    #[command(subcommand)]
    Quiver(QuiverCommand),
}

#[derive(Args, Debug)]
struct TripleArgs {
    #[arg(short = 'n')]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    lam: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
}

#[derive(Subcommand, Debug)]
enum LrCommand {
    /// Decide whether the coefficient is 0, 1 or at least 2.
    Classify {
        #[command(flatten)]
        triple: TripleArgs,
        /// Also print the decision trace.
        #[arg(long)]
        explain: bool,
    },
    /// Exact coefficient by counting tableaux.
    Value {
        #[command(flatten)]
        triple: TripleArgs,
    },
}

#[derive(Subcommand, Debug)]
enum HornCommand {
    /// Test a triple of rational spectra against the Horn inequalities.
    Member {
        #[command(flatten)]
        triple: TripleArgs,
    },
}

#[derive(Subcommand, Debug)]
enum EigenconeCommand {
    /// Print the inequality list.
    List {
        #[arg(long)]
        group: GroupType,
        #[arg(long)]
        rank: usize,
        /// Certify every inequality as a facet with exact LPs (report on stderr).
        #[arg(long)]
        verify: bool,
    },
    /// Test membership of three dominant spectra.
    Member {
        #[arg(long)]
        group: GroupType,
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
}

#[derive(Subcommand, Debug)]
enum QuiverCommand {
    /// Decide whether GL_n has a dense orbit on three flag varieties.
    DenseOrbit {
        /// Three flag types separated by ';', e.g. "1;1;1,2".
        #[arg(long, allow_hyphen_values = true)]
        types: String,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
    },
}

/// Failure of a command: argument problems exit with 2, internal ones with 1.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::LpInfeasible(_) | Error::Overflow => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let classifier = Classifier::new(cli.seed, DEFAULT_TRIALS);
    if let Some(path) = &cli.memo_cache {
        if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let dump: MemoDump =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            classifier.load_memo(&dump)?;
        }
    }
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Lr(LrCommand::Classify { triple, explain }) => {
            let t = parse_triple(triple)?;
            let w = classifier.is_lr_01(&t)?;
            if json {
                let value = if *explain {
                    serde_json::to_value(&w).map_err(internal)?
                } else {
                    json!({ "verdict": w.verdict })
                };
                writeln!(out, "{value}")?;
            } else {
                writeln!(out, "{}", w.verdict)?;
                if *explain {
                    writeln!(out, "{}", serde_json::to_string(&w).map_err(internal)?)?;
                }
            }
        }
        Command::Lr(LrCommand::Value { triple }) => {
            let t = parse_triple(triple)?;
            let v = triple_coefficient(&t)?;
            if json {
                writeln!(out, "{}", json!({ "value": v }))?;
            } else {
                writeln!(out, "{v}")?;
            }
        }
        Command::Horn(HornCommand::Member { triple }) => {
            let x = [
                parse_rationals(&triple.lam)?,
                parse_rationals(&triple.mu)?,
                parse_rationals(&triple.nu)?,
            ];
            for w in &x {
                check_len(w.len(), triple.n)?;
            }
            let violation = classifier.horn_violation([&x[0], &x[1], &x[2]])?;
            let detail = violation.as_ref().map(|v| match v {
                HornViolation::Trace(t) => format!("trace = {t} ≠ 0"),
                HornViolation::Inequality(h, value) => {
                    format!("r = {}, I = {}, J = {}, K = {}: φ = {value} > 0", h.r, h.i, h.j, h.k)
                }
            });
            print_membership(out, json, detail, None)?;
        }
        Command::Eigencone(EigenconeCommand::List { group, rank, verify }) => {
            let facets = eigencone::facets(*group, *rank, &classifier)?;
            for f in &facets {
                if json {
                    writeln!(out, "{}", serde_json::to_string(f).map_err(internal)?)?;
                } else {
                    writeln!(out, "{f}")?;
                }
            }
            if *verify {
                let report = eigencone::verify_irredundant(&facets, *group, *rank)?;
                writeln!(
                    err,
                    "verified {} inequalities: {} non-facets, {} redundant",
                    facets.len(),
                    report.non_facets.len(),
                    report.redundant.len()
                )?;
                if !report.all_facets() {
                    return Err(Failure::Internal(format!(
                        "not irredundant: non-facets {:?}, redundant {:?}",
                        report.non_facets, report.redundant
                    )));
                }
            }
        }
        Command::Eigencone(EigenconeCommand::Member { group, rank, xi, zeta, eta }) => {
            let mut x = Vec::with_capacity(3);
            for s in [xi, zeta, eta] {
                let v = parse_rationals(s)?;
                check_len(v.len(), *rank)?;
                x.push(DominantSpectrum::new(*group, v)?);
            }
            let facets = eigencone::facets(*group, *rank, &classifier)?;
            let violation = eigencone::first_violation([&x[0], &x[1], &x[2]], *group, *rank, &facets)?;
            let (detail, facet) = match violation {
                None => (None, None),
                Some(Violation::Trace(t)) => (Some(format!("trace = {t} ≠ 0")), None),
                Some(Violation::Facet(k, value)) => {
                    (Some(format!("{} (left side {value})", facets[k])), Some(&facets[k]))
                }
            };
            print_membership(out, json, detail, facet)?;
        }
        Command::Quiver(QuiverCommand::DenseOrbit { types, n, trials }) => {
            let parts: Vec<&str> = types.split(';').collect();
            if parts.len() != 3 {
                return Err(Failure::Usage(format!("expected three ';'-separated types, got {types:?}")));
            }
            let mut sets = Vec::with_capacity(3);
            for p in parts {
                let set = IndexSet::from_str(p)?;
                if set.as_slice().last().is_some_and(|&m| m >= *n) {
                    return Err(Failure::Usage(format!("type {set} is not inside [1;{}]", n.saturating_sub(1))));
                }
                sets.push(set);
            }
            let q = build_flag_quiver(&sets[0], &sets[1], &sets[2], *n)?;
            let d = dense_orbit(&q, cli.seed, *trials);
            if json {
                writeln!(out, "{}", serde_json::to_string(&d).map_err(internal)?)?;
            } else {
                writeln!(out, "{}", if d.dense { "dense" } else { "not dense" })?;
                writeln!(out, "alpha = {:?}", q.alpha())?;
                writeln!(out, "dim Rep = {}, dim GL(alpha) = {}, best rank = {}", d.dim_rep, d.dim_group, d.rank)?;
                if d.trials_used == 0 && !d.dense {
                    writeln!(out, "dim Rep ≥ dim GL(alpha) − 1: ruled out without sampling")?;
                } else {
                    writeln!(out, "trials used {}/{} over F_{}", d.trials_used, d.trials, d.field_size)?;
                }
                if !d.dense && d.trials_used > 0 {
                    writeln!(out, "error bound {:e}", d.error_bound)?;
                }
            }
        }
    }
    if let Some(path) = &cli.memo_cache {
        let text = serde_json::to_string_pretty(&classifier.dump_memo()).map_err(internal)?;
        std::fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn check_len(got: usize, expected: usize) -> Outcome {
    if got != expected {
        return Err(Error::LengthMismatch { expected, got }.into());
    }
    Ok(())
}

fn parse_triple(a: &TripleArgs) -> std::result::Result<WeightTriple, Failure> {
    let lam = GlWeight::from_str(&a.lam)?;
    let mu = GlWeight::from_str(&a.mu)?;
    let nu = GlWeight::from_str(&a.nu)?;
    check_len(lam.len(), a.n)?;
    Ok(WeightTriple::new(lam, mu, nu)?)
}

/// Comma-separated rationals, each `p` or `p/q`.
fn parse_rationals(s: &str) -> std::result::Result<Vec<BigRational>, Failure> {
    s.split(',')
        .map(|p| {
            BigRational::from_str(p.trim()).map_err(|_| Failure::Usage(format!("cannot read {p:?} as a rational number")))
        })
        .collect()
}

fn print_membership(
    out: &mut dyn Write,
    json: bool,
    violated: Option<String>,
    facet: Option<&eigencone::EigenconeInequality>,
) -> Outcome {
    if json {
        let value = json!({
            "member": violated.is_none(),
            "violated": violated,
            "facet": facet,
        });
        writeln!(out, "{value}")?;
    } else {
        match violated {
            None => writeln!(out, "yes")?,
            Some(v) => {
                writeln!(out, "no")?;
                writeln!(out, "violated: {v}")?;
            }
        }
    }
    Ok(())
}
