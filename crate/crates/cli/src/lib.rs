//! Command-line front end: system files, solution files and the five
//! subcommands. `run` does all the work and returns the exit code with the
//! output, so tests can drive it without spawning a process.
//!
//! Exit codes: 0 success or stabilized, 2 refuted or obstructed, 3 input
//! error, 4 undecided within the given limits.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use textile_core::approxchain::{
    counterexample_nonexistence, lift, obstruction_scan, stabilization_scan, LiftOptions, LiftResult,
    DEFAULT_BRANCH_LIMIT,
};
use textile_core::exactfield::FieldElem;
use textile_core::multipoly::parse::parse_field;
use textile_core::multipoly::Monomial;
use textile_core::textile::{counterexample_solution, multi_indices, TextileSystem, TruncatedSeries};

use format::{beta_list, parse_scalar_list, parse_solution, parse_system, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_UNDECIDED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "textile", version, about = "Approximate and exact power-series solutions of textile maps")]
pub struct Cli {
    /// Output style: readable text or one `key=value` per line.
    #[arg(long, value_enum, default_value_t = ReportStyle::Text, global = true)]
    pub report: ReportStyle,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportStyle {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a solution satisfies the system modulo (x)^N.
    Verify {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Find the least N <= max-order whose approximate-solution ideal is trivial.
    Obstruct {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        max_order: usize,
    },
    /// Print the chain of closure ideals at level k up to max-order.
    Chain {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_order: usize,
    },
    /// Lift a solution degree by degree with backtracking.
    Lift {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_BRANCH_LIMIT)]
        branch_limit: usize,
    },
    /// Show the order-N approximate solution of the counterexample map and
    /// the certificates that no exact solution starts at a listed alpha.
    Counterexample {
        /// Comma-separated distinct constants a0, a1, ...
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Text lines and machine pairs for one command.
#[derive(Default)]
struct Report {
    text: String,
    machine: Vec<(String, String)>,
}

impl Report {
    fn line(&mut self, s: impl AsRef<str>) {
        writeln!(self.text, "{}", s.as_ref()).unwrap();
    }

    fn kv(&mut self, k: impl Into<String>, v: impl ToString) {
        self.machine.push((k.into(), v.to_string()));
    }

    /// `y<i> = ...` lines as `y<i>=...` pairs.
    fn series(&mut self, y: &TruncatedSeries) {
        for l in y.to_string().lines() {
            if let Some((k, v)) = l.split_once(" = ") {
                self.kv(k, v);
            }
        }
    }

    fn render(&self, style: ReportStyle) -> String {
        match style {
            ReportStyle::Text => self.text.clone(),
            ReportStyle::Machine => self.machine.iter().map(|(k, v)| format!("{k}={v}\n")).collect(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok((code, report)) => Outcome { code, stdout: report.render(cli.report), stderr: String::new() },
        Err(msg) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_system(path: &Path) -> Result<TextileSystem, String> {
    parse_system(&read(path)?).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: FormatError) -> String {
    format!("{}: {e}", path.display())
}

fn execute(cmd: &Command) -> Result<(i32, Report), String> {
    let mut r = Report::default();
    match cmd {
        Command::Verify { system, solution, order } => {
            let sys = load_system(system)?;
            let y = parse_solution(&read(solution)?, sys.n(), sys.m(), sys.field()).map_err(|e| with_path(solution, e))?;
            let code = verify(&sys, &y, *order, &mut r)?;
            Ok((code, r))
        }
        Command::Obstruct { system, max_order } => {
            let sys = load_system(system)?;
            let horizon = sys.max_order().map_or(*max_order, |m| m.min(*max_order));
            r.kv("command", "obstruct");
            r.kv("horizon", horizon);
            match obstruction_scan(&sys, *max_order).map_err(|e| e.to_string())? {
                Some(ob) => {
                    r.line(format!("OBSTRUCTION N={}", ob.order));
                    r.line(format!("certificate={}", ob.certificate));
                    r.kv("result", "obstruction");
                    r.kv("order", ob.order);
                    r.kv("certificate", &ob.certificate);
                    Ok((EXIT_REFUTED, r))
                }
                None => {
                    r.line(format!("OBSTRUCTION NONE <= {horizon}"));
                    r.kv("result", "none");
                    Ok((EXIT_OK, r))
                }
            }
        }
        Command::Chain { system, k, max_order } => {
            let sys = load_system(system)?;
            let rep = stabilization_scan(&sys, *k, *max_order).map_err(|e| e.to_string())?;
            r.text = rep.render();
            r.kv("command", "chain");
            r.kv("k", rep.k);
            r.kv("horizon", rep.horizon);
            for row in &rep.rows {
                let p = format!("row.{}", row.order);
                r.kv(format!("{p}.depend"), row.depend);
                r.kv(format!("{p}.gens"), row.generators);
                r.kv(format!("{p}.trivial"), row.trivial);
                r.kv(format!("{p}.gb"), &row.closure);
            }
            let failures: Vec<String> = rep.containment_failures.iter().map(|n| n.to_string()).collect();
            r.kv("containment_failures", if failures.is_empty() { "none".into() } else { failures.join(",") });
            r.kv("stabilized_at", rep.stabilized_at.map_or("none".into(), |n| n.to_string()));
            r.kv("obstruction_at", rep.obstruction_at.map_or("none".into(), |n| n.to_string()));
            let code = if rep.obstruction_at.is_some() {
                EXIT_REFUTED
            } else if rep.stabilized_at.is_some() {
                EXIT_OK
            } else {
                EXIT_UNDECIDED
            };
            Ok((code, r))
        }
        Command::Lift { system, max_degree, branch_limit } => {
            let sys = load_system(system)?;
            let opts = LiftOptions { branch_limit: *branch_limit, ..LiftOptions::default() };
            let res = lift(&sys, *max_degree, &opts).map_err(|e| e.to_string())?;
            r.line(res.to_string());
            r.kv("command", "lift");
            let code = match &res {
                LiftResult::Exact { y, verified_order } => {
                    r.kv("result", "exact");
                    r.kv("verified_order", verified_order);
                    r.series(y);
                    EXIT_OK
                }
                LiftResult::Partial { y, reached, reason } => {
                    r.kv("result", "partial");
                    r.kv("reached", reached);
                    r.kv("reason", reason);
                    r.series(y);
                    EXIT_UNDECIDED
                }
                LiftResult::Obstructed { level, certificate } => {
                    r.kv("result", "obstructed");
                    r.kv("order", level);
                    r.kv("certificate", certificate);
                    EXIT_REFUTED
                }
            };
            Ok((code, r))
        }
        Command::Counterexample { alphas, order, field } => {
            let field = parse_field(field).map_err(|e| format!("--field: {e}"))?;
            let alphas = parse_scalar_list(alphas, &field).map_err(|e| format!("--alphas: {e}"))?;
            let code = counterexample(alphas, *order, &mut r)?;
            Ok((code, r))
        }
    }
}

/// Reports the first nonzero coefficient of `G(y) mod (x)^N` in graded
/// order, outputs innermost. Coefficients beyond the solution file's
/// polynomials are zero, so the series is padded to the cap the check needs.
fn verify(sys: &TextileSystem, y: &TruncatedSeries, order: usize, r: &mut Report) -> Result<i32, String> {
    if order == 0 {
        return Err("--order must be at least 1".into());
    }
    let d = sys.depend_bound(order).map_err(|e| e.to_string())?;
    let y = y.with_cap(y.cap().max(d as u32));
    let g = sys.evaluate(&y, order).map_err(|e| e.to_string())?;
    r.kv("command", "verify");
    r.kv("order", order);
    for deg in 0..order as u32 {
        for beta in multi_indices(sys.n(), deg) {
            for j in 0..sys.q() {
                let v = g.coeff(j, &beta);
                if v != FieldElem::from_integer(0) {
                    r.line(format!("ORDER FAIL N={order} j={} beta=({}) value={v}", j + 1, beta_list(&beta)));
                    r.kv("result", "fail");
                    r.kv("j", j + 1);
                    r.kv("beta", format!("({})", beta_list(&beta)));
                    r.kv("value", v);
                    return Ok(EXIT_REFUTED);
                }
            }
        }
    }
    r.line(format!("ORDER OK >= {order}"));
    r.kv("result", "ok");
    Ok(EXIT_OK)
}

fn counterexample(alphas: Vec<FieldElem>, order: usize, r: &mut Report) -> Result<i32, String> {
    let field = textile_core::exactfield::Field::spanned_by(&alphas);
    let sys = TextileSystem::counterexample(field, alphas.clone()).map_err(|e| e.to_string())?;
    let y = counterexample_solution(&alphas, order).map_err(|e| e.to_string())?;
    let holds = sys.order_at_least(&y, order + 1).map_err(|e| e.to_string())?;
    let next = sys.evaluate(&y, order + 2).map_err(|e| e.to_string())?;
    let failing = next.coeff(0, &Monomial::new(vec![order as u32 + 1]));
    let minus_one = -FieldElem::from_integer(1);
    let certs = counterexample_nonexistence(&alphas).map_err(|e| e.to_string())?;

    r.kv("command", "counterexample");
    r.kv("order", order);
    r.line(y.to_string());
    r.series(&y);
    r.line(format!("ORDER {} >= {}", if holds { "OK" } else { "FAIL" }, order + 1));
    r.kv("order_ok", holds);
    r.line(format!("COEFFICIENT x^{} = {failing}", order + 1));
    r.kv("failing_coefficient", &failing);
    let mut all = holds && failing == minus_one;
    for c in &certs {
        r.line(format!("CERTIFICATE y0={} G_1,{}={}", c.alpha, c.l0 + 1, c.specialized));
        r.kv(format!("certificate.{}", c.l0), format!("y0={} value={}", c.alpha, c.specialized));
        all &= c.is_minus_one();
    }
    r.kv("result", if all { "ok" } else { "fail" });
    Ok(if all { EXIT_OK } else { EXIT_REFUTED })
}
