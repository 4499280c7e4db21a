//! Command implementations behind the `mnat` binary. Each command returns
//! its output and exit code instead of printing, so tests can run them
//! in-process.
//!
//! Exit codes: 0 pass / no certificate, 1 axiom failure, 2 input error,
//! 3 certificate produced, 4 internal error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::axioms::{
    check_connected, check_equicardinal, check_local_exchange, check_m_concave, check_m_via_local,
    check_mnat_concave, falsify_submodularity, Verdict,
};
use crate::certificates::{certify_not_mnat, CertificateError, CertificateTarget};
use crate::document::{parse_set_fn, Axiom, AxiomVerdict, ConjugateValue, Report, SetFnDocument, Status, Witness};
use crate::lift::lift;
use crate::rational::parse_rational;
use crate::selftest::run_selftest;
use crate::setfn::{PriceVector, SetFn};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Trials for the base-conjugate search attached to lifted certificates.
const BASE_SEARCH_TRIALS: usize = 2000;

#[derive(Debug, Parser)]
#[command(name = "mnat", version, about = "Check M-concavity and certify conjugate submodularity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run exchange-axiom and domain checks.
    Check(CheckArgs),
    /// Evaluate g(p) = max f(X) - p(X).
    Conjugate(ConjugateArgs),
    /// Certify failure of M♮-concavity through a submodularity violation.
    Certify(FileArg),
    /// Write the equicardinal lift of a function.
    Lift(LiftArgs),
    /// Run the randomized self-test.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct FileArg {
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub axiom: Axiom,
}

#[derive(Debug, Args)]
pub struct ConjugateArgs {
    pub file: PathBuf,
    /// Comma-separated rationals, one per element.
    #[arg(long, allow_hyphen_values = true)]
    pub price: String,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub slots: Option<usize>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<SetFn, Outcome> {
    let text = fs::read_to_string(path).map_err(|e| Outcome::error(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    parse_set_fn(&text).map_err(|e| Outcome::error(EXIT_INPUT, format!("{}: {e}", path.display())))
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Check(a) => cmd_check(&a.file, a.axiom),
        Command::Conjugate(a) => cmd_conjugate(&a.file, &a.price),
        Command::Certify(a) => cmd_certify(&a.file),
        Command::Lift(a) => cmd_lift(&a.file, a.slots, a.output.as_deref()),
        Command::Selftest(a) => cmd_selftest(a.n, a.trials, a.seed),
    }
}

fn verdict<W>(axiom: Axiom, v: Verdict<W>, wrap: impl FnOnce(W) -> Witness) -> AxiomVerdict {
    match v {
        Verdict::Pass => AxiomVerdict {
            axiom,
            status: Status::Pass,
            witness: None,
        },
        Verdict::Fail(w) => AxiomVerdict {
            axiom,
            status: Status::Fail,
            witness: Some(wrap(w)),
        },
    }
}

/// Equicardinal-only checks report `NotApplicable` on other domains.
fn run_axiom(f: &SetFn, axiom: Axiom) -> AxiomVerdict {
    let not_applicable = AxiomVerdict {
        axiom,
        status: Status::NotApplicable,
        witness: None,
    };
    match axiom {
        Axiom::M => verdict(axiom, check_m_concave(f), Witness::Exchange),
        Axiom::Mnat => verdict(axiom, check_mnat_concave(f), Witness::Exchange),
        Axiom::Equicardinal => verdict(axiom, check_equicardinal(f), Witness::Cardinality),
        Axiom::Connected => match check_connected(f) {
            Ok(v) => verdict(axiom, v, Witness::Disconnect),
            Err(_) => not_applicable,
        },
        Axiom::Local => match check_local_exchange(f) {
            Ok(v) => verdict(axiom, v, Witness::Exchange),
            Err(_) => not_applicable,
        },
        Axiom::LocalCharacterization => verdict(axiom, check_m_via_local(f), Witness::LocalCharacterization),
        Axiom::All => unreachable!("expanded by the caller"),
    }
}

/// With `--axiom all` the exit code follows the M♮ verdict; the other
/// checks are reported for information.
pub fn cmd_check(path: &Path, axiom: Axiom) -> Outcome {
    let f = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let mut report = Report::new(&f);
    let code = if axiom == Axiom::All {
        report.verdicts = Axiom::EACH.iter().map(|&a| run_axiom(&f, a)).collect();
        let mnat = report.verdicts.iter().find(|v| v.axiom == Axiom::Mnat).expect("mnat is run");
        if mnat.status == Status::Pass {
            EXIT_OK
        } else {
            EXIT_FAIL
        }
    } else {
        let v = run_axiom(&f, axiom);
        let status = v.status;
        report.verdicts.push(v);
        match status {
            Status::Pass => EXIT_OK,
            Status::Fail => EXIT_FAIL,
            Status::NotApplicable => {
                return Outcome {
                    code: EXIT_INPUT,
                    stdout: with_newline(report.to_json_pretty()),
                    stderr: "error: this check requires an equicardinal effective domain\n".into(),
                }
            }
        }
    };
    Outcome::ok(code, with_newline(report.to_json_pretty()))
}

pub fn parse_price(text: &str) -> Result<PriceVector, String> {
    text.split(',')
        .enumerate()
        .map(|(k, s)| parse_rational(s.trim()).map_err(|e| format!("price entry {}: {e}", k + 1)))
        .collect::<Result<Vec<_>, _>>()
        .map(PriceVector::new)
}

pub fn cmd_conjugate(path: &Path, price: &str) -> Outcome {
    let f = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let p = match parse_price(price) {
        Ok(p) => p,
        Err(e) => return Outcome::error(EXIT_INPUT, e),
    };
    if p.len() != f.n() {
        return Outcome::error(EXIT_INPUT, format!("price has {} entries, expected {}", p.len(), f.n()));
    }
    let (value, maximizer) = f.conjugate_argmax(&p);
    let mut report = Report::new(&f);
    report.conjugate = Some(ConjugateValue {
        price: p.into_entries(),
        value,
        maximizer,
    });
    Outcome::ok(EXIT_OK, with_newline(report.to_json_pretty()))
}

pub fn cmd_certify(path: &Path) -> Outcome {
    let f = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let mut report = Report::new(&f);
    report.verdicts.push(run_axiom(&f, Axiom::Mnat));
    match certify_not_mnat(&f) {
        Ok(None) => Outcome::ok(EXIT_OK, with_newline(report.to_json_pretty())),
        Ok(Some(cert)) => {
            if !cert.verify(&f) {
                return Outcome::error(EXIT_INTERNAL, "certificate failed re-verification");
            }
            if matches!(cert.target, CertificateTarget::Lifted { .. }) {
                report.base_violation = falsify_submodularity(&f, BASE_SEARCH_TRIALS, 0).ok().flatten();
            }
            report.certificate = Some(cert);
            Outcome::ok(EXIT_CERTIFICATE, with_newline(report.to_json_pretty()))
        }
        Err(e @ CertificateError::Lift(_)) => Outcome::error(EXIT_INPUT, format!("cannot lift: {e}")),
        Err(e) => Outcome::error(EXIT_INTERNAL, e),
    }
}

pub fn cmd_lift(path: &Path, slots: Option<usize>, output: Option<&Path>) -> Outcome {
    let f = match load(path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let lf = match lift(&f, slots) {
        Ok(lf) => lf,
        Err(e) => return Outcome::error(EXIT_INPUT, e),
    };
    let text = with_newline(SetFnDocument::from_set_fn(lf.lifted()).to_json_pretty());
    match output {
        None => Outcome::ok(EXIT_OK, text),
        Some(out) => match fs::write(out, text) {
            Ok(()) => Outcome::ok(EXIT_OK, String::new()),
            Err(e) => Outcome::error(EXIT_INPUT, format!("{}: {e}", out.display())),
        },
    }
}

pub fn cmd_selftest(n: usize, trials: usize, seed: u64) -> Outcome {
    let summary = match run_selftest(n, trials, seed) {
        Ok(s) => s,
        Err(e) => return Outcome::error(EXIT_INPUT, e),
    };
    let mut out = format!(
        "selftest n<={} trials={} seed={}{}\n",
        summary.n,
        summary.trials,
        summary.seed,
        if summary.exhaustive { " (exhaustive small domains)" } else { "" }
    );
    for p in &summary.properties {
        out.push_str(&format!("{:<30} checked {:>7}  violations {}\n", p.name, p.checked, p.violations));
    }
    let code = if summary.passed() { EXIT_OK } else { EXIT_FAIL };
    out.push_str(if code == EXIT_OK { "all properties hold\n" } else { "VIOLATIONS FOUND\n" });
    Outcome::ok(code, out)
}
