//! The `diagcert` command line.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::certify;
use crate::diagonalizer::{analyze, diagonalize, AnalyzeBounds, ConditionStatus, Diagonalization};
use crate::error::{Error, Result};
use crate::filtration::{search_minimal_cyclic_filtration, SearchOutcome};
use crate::groebner::set_step_budget;
use crate::homalg::{is_quasi_gorenstein, FPModule, QgResult};
use crate::json::{self, Input, SCHEMA};
use crate::linalg::{smith_normal_form, RingMatrix};

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "diagcert", version, about = "Certified diagonalization of square matrices over factorial domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smith normal form over Z, Q[x] or F_p[x], with certificate.
    Snf(Common),
    /// Full report: quasi-Gorenstein test, filtration search, diagonalization
    /// and their cross-checks.
    Analyze(Common),
    /// Whether the cokernel is quasi-Gorenstein (equivalently m ~ m^T).
    Qg(Common),
    /// Equivalence to a diagonal matrix.
    Diagonalize(Common),
    /// Minimal cyclic filtration of a cokernel or presented module.
    Filtration(Common),
    /// Re-check an equivalence certificate with the independent verifier.
    Verify(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON document.
    #[arg(long)]
    pub input: PathBuf,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Largest monomial degree in search pools.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub degree: Option<u32>,
    /// Largest absolute integer coefficient in search pools.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    pub height: Option<i64>,
    /// Search budget (states, candidates or nodes depending on the command).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: Option<u64>,
    /// Recorded in the output; every analysis is deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl Common {
    fn bounds(&self) -> AnalyzeBounds {
        let mut b = AnalyzeBounds::default();
        if let Some(d) = self.degree {
            b.diagonal.degree = d;
            b.iso.degree = d;
            b.filtration.degree = d;
        }
        if let Some(h) = self.height {
            b.diagonal.height = h;
            b.iso.height = h;
            b.filtration.height = h;
        }
        if let Some(s) = self.steps {
            let s = s as usize;
            b.diagonal.steps = s;
            b.iso.max_candidates = s;
            b.filtration.max_nodes = s;
        }
        b
    }
}

/// Output of one command.
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

fn matrix_input(input: Input) -> Result<RingMatrix> {
    match input {
        Input::Matrix(m) => Ok(m),
        _ => Err(Error::usage("expected a matrix document")),
    }
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => EXIT_INTERNAL,
        Error::Budget(_) => EXIT_UNDECIDED,
        _ => EXIT_USAGE,
    }
}

fn header(cmd: &str, c: &Common) -> Value {
    json!({ "schema": SCHEMA, "command": cmd, "seed": c.seed })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

fn render_rows(m: &RingMatrix) -> String {
    m.to_strings().iter().map(|r| format!("  [{}]", r.join(", "))).collect::<Vec<_>>().join("\n")
}

fn snf(c: &Common, input: Input) -> Result<Outcome> {
    let m = matrix_input(input)?;
    let s = smith_normal_form(&m)?;
    let j = json::smith_json(&s);
    let factors: Vec<String> = s.invariant_factors.iter().map(|p| p.to_string()).collect();
    let text = format!(
        "ring: {}\ninvariant factors: {}\ncertificate verified: {}\n",
        m.ring(),
        factors.join(", "),
        j["certificate"]["verified"]
    );
    Ok(Outcome { code: EXIT_DECIDED, json: merge(header("snf", c), j), text })
}

fn qg(c: &Common, input: Input) -> Result<Outcome> {
    let m = matrix_input(input)?;
    let r = is_quasi_gorenstein(&m, &c.bounds().iso)?;
    let j = json::qg_json(&m, &r);
    let code = if matches!(r, QgResult::Unknown { .. }) { EXIT_UNDECIDED } else { EXIT_DECIDED };
    let text = match &r {
        QgResult::Yes { witness, .. } => format!(
            "quasi-Gorenstein: yes ({})\n",
            match witness {
                crate::homalg::QgWitness::Equivalence(_) => "m ~ m^T certificate",
                crate::homalg::QgWitness::Isomorphism(_) => "isomorphism coker m ~ coker m^T",
            }
        ),
        QgResult::No(o) => format!("quasi-Gorenstein: no\n  {}\n", o.describe()),
        QgResult::Unknown { candidates } => format!("quasi-Gorenstein: unknown after {candidates} candidates\n"),
    };
    Ok(Outcome { code, json: merge(header("qg", c), j), text })
}

fn diagonalization_text(d: &Diagonalization) -> String {
    match d {
        Diagonalization::Yes(cert) => {
            let e: Vec<String> = cert.target.diagonal_entries().iter().map(|p| p.to_string()).collect();
            format!("diagonalizable: yes, equivalent to diag({})\n", e.join(", "))
        }
        Diagonalization::No(r) => {
            let mut s = format!("diagonalizable: no (det = {})\n", r.det);
            for cand in &r.candidates {
                let e: Vec<String> = cand.entries.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(
                    s,
                    "  diag({}): Fitt_{} ({}) vs ({})",
                    e.join(", "),
                    cand.index,
                    cand.matrix_ideal.join(", "),
                    cand.candidate_ideal.join(", ")
                );
            }
            s
        }
        Diagonalization::Unknown { reason, .. } => format!("diagonalizable: unknown ({reason})\n"),
    }
}

fn diag(c: &Common, input: Input) -> Result<Outcome> {
    let m = matrix_input(input)?;
    let d = diagonalize(&m, &c.bounds().diagonal)?;
    let code = if matches!(d, Diagonalization::Unknown { .. }) { EXIT_UNDECIDED } else { EXIT_DECIDED };
    let text = diagonalization_text(&d);
    Ok(Outcome { code, json: merge(header("diagonalize", c), json::diagonalization_json(&m, &d)), text })
}

fn filtration(c: &Common, input: Input) -> Result<Outcome> {
    let module = match input {
        Input::Matrix(m) => FPModule::from_matrix(&m),
        Input::Module(m) => m,
        Input::Certificate(_) => return Err(Error::usage("expected a matrix or module document")),
    };
    let bounds = c.bounds().filtration;
    let s = search_minimal_cyclic_filtration(&module, &bounds)?;
    let (code, mut text) = match &s.outcome {
        SearchOutcome::Found(f) => {
            let mut t = format!("minimal cyclic filtration of length {}\n", f.length());
            for (i, step) in f.steps.iter().enumerate() {
                let _ = writeln!(t, "  M_{} / M_{} = R/({})", i + 1, i, step.key.join(", "));
            }
            (EXIT_DECIDED, t)
        }
        SearchOutcome::NoneWithinBounds => (EXIT_UNDECIDED, "no minimal cyclic filtration within bounds\n".to_string()),
    };
    let _ = writeln!(text, "rejected chains: {}", s.rejected.len());
    Ok(Outcome { code, json: merge(header("filtration", c), json::filtration_json(&s)), text })
}

fn verify(c: &Common, input: Input) -> Result<Outcome> {
    let Input::Certificate(cert) = input else {
        return Err(Error::usage("expected a certificate document"));
    };
    let verdict = certify::check_equivalence(
        &cert.source.to_rows(),
        &cert.left.to_rows(),
        &cert.right.to_rows(),
        &cert.target.to_rows(),
    );
    let (j, text) = match verdict {
        Ok(()) => (json!({ "verdict": "valid" }), "certificate: valid\n".to_string()),
        Err(reason) => {
            (json!({ "verdict": "invalid", "reason": reason }), format!("certificate: invalid ({reason})\n"))
        }
    };
    Ok(Outcome { code: EXIT_DECIDED, json: merge(header("verify", c), j), text })
}

fn analyze_cmd(c: &Common, input: Input) -> Result<Outcome> {
    let m = matrix_input(input)?;
    let r = analyze(&m, &c.bounds())?;
    let undecided = matches!(r.diagonal, Some(Diagonalization::Unknown { .. }));
    let mut t = format!("ring: {}\nmatrix:\n{}\n", m.ring(), render_rows(&m));
    if let Some(d) = &r.det {
        let _ = writeln!(t, "det: {d}");
    }
    if let Some(reason) = &r.degenerate {
        let _ = writeln!(t, "degenerate: {reason}");
    }
    if let Some(q) = &r.qg {
        let v = match q {
            QgResult::Yes { .. } => "yes".to_string(),
            QgResult::No(o) => format!("no ({})", o.describe()),
            QgResult::Unknown { .. } => "unknown".to_string(),
        };
        let _ = writeln!(t, "quasi-Gorenstein: {v}");
    }
    if let Some(f) = &r.filtration {
        let v = match &f.outcome {
            SearchOutcome::Found(ch) => format!("found, length {}", ch.length()),
            SearchOutcome::NoneWithinBounds => "none within bounds".into(),
        };
        let _ = writeln!(t, "minimal cyclic filtration: {v}");
    }
    if let Some(d) = &r.diagonal {
        t.push_str(&diagonalization_text(d));
    }
    t.push_str("conditions:\n");
    for cond in &r.conditions {
        let s = match cond.status {
            ConditionStatus::Holds => "holds",
            ConditionStatus::Fails => "fails",
            ConditionStatus::Undetermined => "undetermined",
        };
        let _ = writeln!(t, "  {}: {s} ({})", cond.name, cond.reason);
    }
    for f in &r.findings {
        let _ = writeln!(t, "finding [{:?}] {}: {}", f.status, f.implication, f.detail);
    }
    for d in &r.discrepancies {
        let _ = writeln!(t, "discrepancy: {d}");
    }
    let code = if undecided { EXIT_UNDECIDED } else { EXIT_DECIDED };
    Ok(Outcome { code, json: merge(header("analyze", c), json::report_json(&r)), text: t })
}

/// Runs a parsed command; errors become exit codes with a message.
pub fn run(cli: &Cli) -> Outcome {
    let (name, c) = match &cli.command {
        Command::Snf(c) => ("snf", c),
        Command::Analyze(c) => ("analyze", c),
        Command::Qg(c) => ("qg", c),
        Command::Diagonalize(c) => ("diagonalize", c),
        Command::Filtration(c) => ("filtration", c),
        Command::Verify(c) => ("verify", c),
    };
    let result = std::fs::read_to_string(&c.input)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", c.input.display())))
        .and_then(|text| json::parse_input(&text))
        .and_then(|input| match &cli.command {
            Command::Snf(_) => snf(c, input),
            Command::Analyze(_) => analyze_cmd(c, input),
            Command::Qg(_) => qg(c, input),
            Command::Diagonalize(_) => diag(c, input),
            Command::Filtration(_) => filtration(c, input),
            Command::Verify(_) => verify(c, input),
        });
    match result {
        Ok(o) => o,
        Err(e) => {
            let code = code_for(&e);
            Outcome {
                code,
                json: merge(header(name, c), json!({ "error": e.to_string(), "exit_code": code })),
                text: format!("error: {e}\n"),
            }
        }
    }
}

/// Entry point for the binary: parses arguments, applies `DIAGCERT_BUDGET`,
/// prints and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_DECIDED };
        }
    };
    if let Ok(b) = std::env::var("DIAGCERT_BUDGET") {
        match b.parse::<u64>() {
            Ok(n) if n > 0 => set_step_budget(Some(n)),
            _ => {
                eprintln!("error: DIAGCERT_BUDGET must be a positive integer, got {b:?}");
                return EXIT_USAGE;
            }
        }
    }
    let out = run(&cli);
    let as_json = match &cli.command {
        Command::Snf(c)
        | Command::Analyze(c)
        | Command::Qg(c)
        | Command::Diagonalize(c)
        | Command::Filtration(c)
        | Command::Verify(c) => c.json,
    };
    // A closed pipe on the reader's side is not an error of ours.
    let _ = if as_json {
        writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&out.json).expect("serializable"))
    } else if out.code == EXIT_USAGE || out.code == EXIT_INTERNAL {
        write!(std::io::stderr(), "{}", out.text)
    } else {
        write!(std::io::stdout(), "{}", out.text)
    };
    out.code
}
