//! `qdel` command line: `analyze`, `sweep`, `table1` and `teleport`.
//!
//! Exit codes: 0 success, 2 argument error, 3 numerical failure, 1 I/O.
//! Table output rounds to 6 decimals; CSV and JSON carry full precision
//! (shortest round-trip representation).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::audit::{table1_audit, Table1Audit, MISMATCH_TOL};
use crate::criteria::{analyze, closed_form_u, w_closed_form, CriteriaReport};
use crate::error::Error;
use crate::states::{deletion_output, werner, DeletionParams, DensityMatrix};
use crate::sweep::{run_sweep, SweepConfig, SweepRow};
use crate::teleport::{verify_fidelity, DetBranch, FidelityVerification};
use crate::DEFAULT_M1;

pub const SWEEP_CSV_HEADER: &str = "alpha,w3,w4,ppt_min,u1,u2,u3,M,N,F_max,F_mc,F_mc_stderr";

#[derive(Parser, Debug)]
#[command(
    name = "qdel",
    version,
    about = "Entanglement, Bell-CHSH and teleportation diagnostics for the deletion-machine output"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full criteria report for one state.
    Analyze {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// One row of diagnostics per alpha on a grid.
    Sweep {
        /// Grid as START:STOP:STEP.
        #[arg(long = "sweep", value_parser = parse_range, default_value = "0.01:0.99:0.01")]
        range: (f64, f64, f64),
        #[arg(long, default_value_t = DEFAULT_M1, value_parser = unit_interval)]
        m1: f64,
        /// Monte Carlo teleportation samples per row (0 disables).
        #[arg(long, default_value_t = 0)]
        mc_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare computed F_max with the published table.
    Table1 {
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the fidelity formula by simulating teleportation.
    Teleport {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value_t = 100_000)]
        mc_samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct StateArgs {
    #[command(flatten)]
    pub selector: Selector,
    /// Blank-state amplitude m1 (deletion output only).
    #[arg(long, default_value_t = DEFAULT_M1, value_parser = unit_interval)]
    pub m1: f64,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(required = true, multiple = false)]
pub struct Selector {
    /// Input amplitude alpha of the deletion machine.
    #[arg(long, value_parser = unit_interval)]
    pub alpha: Option<f64>,
    /// Werner state weight p.
    #[arg(long, value_parser = unit_interval)]
    pub werner: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, 1]"))
    }
}

fn parse_range(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err("expected START:STOP:STEP".into());
    }
    let p = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(parts[0])?, p(parts[1])?, p(parts[2])?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_) | Error::InvalidState(_) | Error::Dimension(_) => 2,
            Error::NoConvergence { .. }
            | Error::NotHermitian(_)
            | Error::NotUnitary(_)
            | Error::NonFinite => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Which state a report describes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum StateSpec {
    Deletion { alpha: f64, m1: f64 },
    Werner { p: f64 },
}

impl StateSpec {
    fn from_args(a: &StateArgs) -> Self {
        match (a.selector.alpha, a.selector.werner) {
            (_, Some(p)) => StateSpec::Werner { p },
            (Some(alpha), None) => StateSpec::Deletion { alpha, m1: a.m1 },
            (None, None) => unreachable!("clap enforces one selector"),
        }
    }

    pub fn density(&self) -> Result<DensityMatrix, Error> {
        match *self {
            StateSpec::Deletion { alpha, m1 } => {
                Ok(deletion_output(&DeletionParams::new(alpha, m1)?))
            }
            StateSpec::Werner { p } => werner(p),
        }
    }

    fn describe(&self) -> String {
        match *self {
            StateSpec::Deletion { alpha, m1 } => {
                format!(
                    "deletion output, alpha = {}, m1 = {}",
                    fmt6(alpha),
                    fmt6(m1)
                )
            }
            StateSpec::Werner { p } => format!("Werner, p = {}", fmt6(p)),
        }
    }
}

/// Closed-form values and their distance from the numeric ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormCheck {
    pub w3: f64,
    pub w4: f64,
    pub w3_delta: f64,
    pub w4_delta: f64,
    /// `(u1, u2, u3)` in the closed-form labeling; only for the balanced blank.
    pub u: Option<[f64; 3]>,
    pub u_max_delta: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeOutput {
    #[serde(flatten)]
    pub state: StateSpec,
    #[serde(flatten)]
    pub report: CriteriaReport,
    pub closed_form: Option<ClosedFormCheck>,
    pub notice: Option<String>,
}

pub fn analyze_state(spec: &StateSpec) -> Result<AnalyzeOutput, Error> {
    let rho = spec.density()?;
    let report = analyze(&rho)?;
    let mut notice = None;
    let closed_form = match *spec {
        StateSpec::Deletion { alpha, m1 } => {
            let p = DeletionParams::new(alpha, m1)?;
            if p.is_boundary() {
                notice = Some("alpha at the boundary: the output is a product state".to_string());
            }
            let (w3, w4) = w_closed_form(&p);
            let balanced = (m1 - DEFAULT_M1).abs() < 1e-12;
            let u = if balanced && !p.is_boundary() {
                Some(closed_form_u(alpha)?)
            } else {
                None
            };
            let u_max_delta = u.map(|cf| {
                let mut sorted = cf;
                sorted.sort_by(|a, b| b.total_cmp(a));
                sorted
                    .iter()
                    .zip(report.u)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            });
            Some(ClosedFormCheck {
                w3,
                w4,
                w3_delta: report.w3 - w3,
                w4_delta: report.w4 - w4,
                u,
                u_max_delta,
            })
        }
        StateSpec::Werner { .. } => None,
    };
    Ok(AnalyzeOutput {
        state: spec.clone(),
        report,
        closed_form,
        notice,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TeleportOutput {
    #[serde(flatten)]
    pub state: StateSpec,
    #[serde(flatten)]
    pub verification: FidelityVerification,
    pub note: Option<String>,
}

pub fn teleport_state(
    spec: &StateSpec,
    samples: usize,
    seed: u64,
) -> Result<TeleportOutput, Error> {
    let rho = spec.density()?;
    let verification = verify_fidelity(&rho, samples, seed)?;
    let note = (verification.det_branch == DetBranch::Positive).then(|| {
        "det(C) > 0: the formula value is not reachable by the rotated standard protocol; \
         the simulation is compared with the protocol's own optimum"
            .to_string()
    });
    Ok(TeleportOutput {
        state: spec.clone(),
        verification,
        note,
    })
}

/// Runs a parsed command and returns the rendered output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Analyze { state, out } => {
            let spec = StateSpec::from_args(state);
            let a = analyze_state(&spec)?;
            Ok(render_analyze(&a, out.format))
        }
        Command::Sweep {
            range,
            m1,
            mc_samples,
            seed,
            out,
        } => {
            let cfg = SweepConfig {
                alpha_start: range.0,
                alpha_stop: range.1,
                alpha_step: range.2,
                m1: *m1,
                mc_samples: *mc_samples,
                seed: *seed,
            };
            let rows = run_sweep(&cfg)?;
            Ok(render_sweep(&rows, out.format))
        }
        Command::Table1 { out } => Ok(render_table1(&table1_audit()?, out.format)),
        Command::Teleport {
            state,
            mc_samples,
            seed,
            out,
        } => {
            let spec = StateSpec::from_args(state);
            let t = teleport_state(&spec, *mc_samples, *seed)?;
            Ok(render_teleport(&t, out.format))
        }
    }
}

impl Cli {
    pub fn output(&self) -> &OutputArgs {
        match &self.command {
            Command::Analyze { out, .. }
            | Command::Sweep { out, .. }
            | Command::Table1 { out }
            | Command::Teleport { out, .. } => out,
        }
    }
}

/// Parses `args`, executes, writes the result and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let text = match execute(&cli) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    let written = match &cli.output().output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            1
        }
    }
}

/// Six decimals, switching to scientific notation outside `[1e-3, 1e6)`.
pub fn fmt6(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-3..1e6).contains(&a) {
        format!("{x:.6}")
    } else {
        format!("{x:.6e}")
    }
}

fn opt_csv(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn render_analyze(a: &AnalyzeOutput, format: Format) -> String {
    let r = &a.report;
    match format {
        Format::Json => to_json(a),
        Format::Csv => {
            let (alpha, m1, p) = match a.state {
                StateSpec::Deletion { alpha, m1 } => (Some(alpha), Some(m1), None),
                StateSpec::Werner { p } => (None, None, Some(p)),
            };
            let mut s = String::from(
                "alpha,m1,werner_p,w3,w4,ppt_min,u1,u2,u3,M,N,F_max,inseparable,bell_violated\n",
            );
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                opt_csv(alpha),
                opt_csv(m1),
                opt_csv(p),
                r.w3,
                r.w4,
                r.ppt_min(),
                r.u[0],
                r.u[1],
                r.u[2],
                r.big_m,
                r.big_n,
                r.f_max,
                r.inseparable,
                r.bell_violated
            );
            s
        }
        Format::Table => {
            let mut s = String::new();
            let mut line = |k: &str, v: String| {
                let _ = writeln!(s, "{k:<22}{v}");
            };
            line("state", a.state.describe());
            line("W3", fmt6(r.w3));
            line("W4", fmt6(r.w4));
            line(
                "PPT spectrum",
                r.ppt_spectrum
                    .iter()
                    .map(|x| fmt6(*x))
                    .collect::<Vec<_>>()
                    .join("  "),
            );
            line(
                "u (C^T C)",
                r.u.iter().map(|x| fmt6(*x)).collect::<Vec<_>>().join("  "),
            );
            line("M", fmt6(r.big_m));
            line("N", fmt6(r.big_n));
            line("F_max", fmt6(r.f_max));
            line("inseparable", r.inseparable.to_string());
            line("bell_violated", r.bell_violated.to_string());
            if let Some(cf) = &a.closed_form {
                line(
                    "W3 closed form",
                    format!("{}  (delta {:.3e})", fmt6(cf.w3), cf.w3_delta),
                );
                line(
                    "W4 closed form",
                    format!("{}  (delta {:.3e})", fmt6(cf.w4), cf.w4_delta),
                );
                if let (Some(u), Some(d)) = (cf.u, cf.u_max_delta) {
                    line(
                        "u closed form",
                        format!(
                            "{}  (max delta {d:.3e})",
                            u.iter().map(|x| fmt6(*x)).collect::<Vec<_>>().join("  ")
                        ),
                    );
                }
            }
            if let Some(n) = &a.notice {
                line("notice", n.clone());
            }
            s
        }
    }
}

pub fn render_sweep(rows: &[SweepRow], format: Format) -> String {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from(SWEEP_CSV_HEADER);
            s.push('\n');
            for r in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{},{},{}",
                    r.alpha,
                    r.w3,
                    r.w4,
                    r.ppt_min,
                    r.u1,
                    r.u2,
                    r.u3,
                    r.big_m,
                    r.big_n,
                    r.f_max,
                    opt_csv(r.f_mc),
                    opt_csv(r.f_mc_stderr)
                );
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let cols = SWEEP_CSV_HEADER.split(',').collect::<Vec<_>>();
            let _ = writeln!(
                s,
                "{}",
                cols.iter().map(|c| format!("{c:>14}")).collect::<String>()
            );
            for r in rows {
                let vals = [
                    Some(r.alpha),
                    Some(r.w3),
                    Some(r.w4),
                    Some(r.ppt_min),
                    Some(r.u1),
                    Some(r.u2),
                    Some(r.u3),
                    Some(r.big_m),
                    Some(r.big_n),
                    Some(r.f_max),
                    r.f_mc,
                    r.f_mc_stderr,
                ];
                let _ = writeln!(
                    s,
                    "{}",
                    vals.iter()
                        .map(|v| format!("{:>14}", v.map(fmt6).unwrap_or_else(|| "-".into())))
                        .collect::<String>()
                );
            }
            let all_m = rows.iter().all(|r| r.big_m <= 1.0);
            let all_f = rows.iter().all(|r| r.f_max > 2.0 / 3.0);
            let all_ppt = rows.iter().all(|r| r.ppt_min < 0.0);
            let _ = writeln!(
                s,
                "rows: {}; inseparable on all rows: {all_ppt}; M <= 1 on all rows: {all_m}; F_max > 2/3 on all rows: {all_f}",
                rows.len()
            );
            let checked: Vec<bool> = rows.iter().filter_map(|r| r.mc_consistent()).collect();
            if !checked.is_empty() {
                let _ = writeln!(
                    s,
                    "Monte Carlo within 3 stderr of F_max: {}/{}",
                    checked.iter().filter(|&&b| b).count(),
                    checked.len()
                );
            }
            s
        }
    }
}

pub fn render_table1(audit: &Table1Audit, format: Format) -> String {
    match format {
        Format::Json => to_json(audit),
        Format::Csv => {
            let mut s = String::from("alpha,f_pipeline,f_table1_paper,delta,flag\n");
            for r in &audit.rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.alpha,
                    r.f_pipeline,
                    r.paper_table1_value,
                    r.delta,
                    if r.mismatch_flag { "MISMATCH" } else { "" }
                );
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "{:>8}{:>14}{:>16}{:>14}  flag",
                "alpha", "f_pipeline", "f_table1_paper", "delta"
            );
            for r in &audit.rows {
                let _ = writeln!(
                    s,
                    "{:>8}{:>14}{:>16}{:>14}  {}",
                    format!("{:.1}", r.alpha),
                    fmt6(r.f_pipeline),
                    fmt6(r.paper_table1_value),
                    format!("{:+.6}", r.delta),
                    if r.mismatch_flag { "MISMATCH" } else { "" }
                );
            }
            let flagged = audit.rows.iter().filter(|r| r.mismatch_flag).count();
            let _ = writeln!(
                s,
                "{flagged} of {} rows differ by more than {MISMATCH_TOL}",
                audit.rows.len()
            );
            let sym = &audit.symmetry;
            let _ = writeln!(
                s,
                "symmetry: F(0.6) = {}, F(0.8) = {}, |diff| = {:.3e} ({}); published |diff| = {}",
                fmt6(sym.f_at_0_6),
                fmt6(sym.f_at_0_8),
                sym.abs_diff,
                if sym.passes { "pass" } else { "FAIL" },
                fmt6(sym.published_abs_diff)
            );
            s
        }
    }
}

pub fn render_teleport(t: &TeleportOutput, format: Format) -> String {
    let v = &t.verification;
    match format {
        Format::Json => to_json(t),
        Format::Csv => {
            let mut s = String::from(
                "formula,predicted,channel_exact,mc_mean,mc_stderr,samples,seed,det_c,det_branch,consistent\n",
            );
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                v.formula,
                v.predicted,
                v.channel_exact,
                v.simulated.mean,
                v.simulated.std_error,
                v.simulated.samples,
                v.simulated.seed,
                v.det_c,
                branch_name(v.det_branch),
                v.consistent
            );
            s
        }
        Format::Table => {
            let mut s = String::new();
            let mut line = |k: &str, val: String| {
                let _ = writeln!(s, "{k:<22}{val}");
            };
            line("state", t.state.describe());
            line("F_max (formula)", fmt6(v.formula));
            line("F predicted", fmt6(v.predicted));
            line("F channel (exact)", fmt6(v.channel_exact));
            line(
                "F Monte Carlo",
                format!(
                    "{} +- {}  (n = {}, seed = {})",
                    fmt6(v.simulated.mean),
                    fmt6(v.simulated.std_error),
                    v.simulated.samples,
                    v.simulated.seed
                ),
            );
            line(
                "det(C)",
                format!("{}  ({})", fmt6(v.det_c), branch_name(v.det_branch)),
            );
            line("consistent", v.consistent.to_string());
            if let Some(n) = &t.note {
                line("note", n.clone());
            }
            s
        }
    }
}

fn branch_name(b: DetBranch) -> &'static str {
    match b {
        DetBranch::NonPositive => "det <= 0",
        DetBranch::Positive => "det > 0",
    }
}
