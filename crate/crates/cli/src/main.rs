//! `lgi`: scans, optimisation and oracle cross-checks for two-time
//! Leggett–Garg quasi-probabilities.
//!
//! Exit codes: 0 ok, 2 usage, 3 numerical failure, 4 oracle mismatch.

mod args;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use lgi_core::crosscheck::{cross_check_all, sample_scenarios, CrossCheck, SampleBox};
use lgi_core::explorer::{grid_scan, minimize_q, Axis, OptimizeSpec, OptimizeSystem, ScanSpec, ScanSystem};
use lgi_core::{exec, Complex, Execution, LgiError, OutcomePair};

use output::{Manifest, Run};

#[derive(Parser, Debug)]
#[command(name = "lgi", version, about = "Two-time Leggett-Garg quasi-probabilities")]
struct Cli {
    /// Evaluate on one thread regardless of LGI_THREADS.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scan the oscillator quasi-probability over (theta, beta).
    OscScan(OscScan),
    /// Scan the chiral-field local-mode quasi-probability over (tau, beta).
    FieldScan(FieldScan),
    /// Minimise one quasi-probability with restarted Nelder-Mead.
    Optimize(Optimize),
    /// Compare the closed form with the Fock and displacement-operator oracles.
    OracleCheck(OracleCheck),
}

#[derive(Args, Debug)]
struct BetaAxis {
    /// Projector displacement range lo:hi:n.
    #[arg(long, value_parser = args::axis, default_value = "0:3:200", conflicts_with = "beta")]
    beta_range: Axis,
    /// Single projector displacement instead of a range.
    #[arg(long, value_parser = args::finite)]
    beta: Option<f64>,
}

impl BetaAxis {
    fn axis(&self) -> Axis {
        self.beta.map(Axis::point).unwrap_or(self.beta_range)
    }
}

#[derive(Args, Debug)]
struct OscScan {
    /// Displacement of the thermal state, `re,im`.
    #[arg(long, value_parser = args::complex, default_value = "0,0", allow_hyphen_values = true)]
    alpha: Complex,
    /// Symplectic eigenvalue of the initial state (0.5 is pure).
    #[arg(long, value_parser = args::finite)]
    nu: f64,
    /// Projector squeezing parameter.
    #[arg(long, value_parser = args::finite, default_value_t = 0.0, allow_hyphen_values = true)]
    r: f64,
    /// First measurement time.
    #[arg(long, value_parser = args::finite, default_value_t = 0.0, allow_hyphen_values = true)]
    t1: f64,
    #[command(flatten)]
    beta: BetaAxis,
    /// Time separation range lo:hi:n.
    #[arg(long, value_parser = args::axis, default_value = "0:6.283185307179586:200")]
    theta_range: Axis,
    #[arg(long, value_parser = args::outcomes, default_value = "++,+-,-+,--", allow_hyphen_values = true)]
    outcomes: ::std::vec::Vec<OutcomePair>,
    #[arg(long, default_value = "lgi-out")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct FieldScan {
    /// Dimensionless window size omega * l (> 0).
    #[arg(long, value_parser = args::finite)]
    omega_ell: f64,
    #[command(flatten)]
    beta: BetaAxis,
    /// Range of tau = t21 / l as lo:hi:n.
    #[arg(long, value_parser = args::axis, default_value = "0:8:200")]
    tau_range: Axis,
    #[arg(long, value_parser = args::outcomes, default_value = "++,+-,-+,--", allow_hyphen_values = true)]
    outcomes: ::std::vec::Vec<OutcomePair>,
    #[arg(long, default_value = "lgi-out")]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SystemArg {
    Osc,
    Field,
}

#[derive(Args, Debug)]
struct Optimize {
    #[arg(long, value_enum, default_value = "osc")]
    system: SystemArg,
    /// Outcome pair, e.g. `--` (or `mm`).
    #[arg(long, value_parser = args::outcome, default_value = "--", allow_hyphen_values = true)]
    outcome: OutcomePair,
    /// Three lo:hi pairs: (r, beta, theta) or (omega_ell, beta, tau). lo == hi pins.
    #[arg(long, value_parser = args::bounds)]
    bounds: Option<[[f64; 2]; 3]>,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oscillator state displacement, `re,im`.
    #[arg(long, value_parser = args::complex, default_value = "0,0", allow_hyphen_values = true)]
    alpha: Complex,
    /// Oscillator state symplectic eigenvalue.
    #[arg(long, value_parser = args::finite, default_value_t = 0.5)]
    nu: f64,
    #[arg(long, default_value = "lgi-out")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct OracleCheck {
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = args::finite, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value = "lgi-out")]
    out: PathBuf,
    /// Shift added to every closed-form value before comparison.
    #[arg(long, value_parser = args::finite, hide = true, allow_hyphen_values = true)]
    inject_error: Option<f64>,
}

enum Failure {
    Usage(String),
    Numeric(String),
    Oracle(String),
    Io(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parameter problems are usage errors; everything else is numerical.
fn classify(e: LgiError) -> Failure {
    match e {
        LgiError::InvalidParameter { .. } | LgiError::InvalidProjector { .. } => Failure::Usage(e.to_string()),
        other => Failure::Numeric(other.to_string()),
    }
}

fn usage(e: LgiError) -> Failure {
    Failure::Usage(e.to_string())
}

fn manifest(command: &str, exec: Execution, seed: Option<u64>, parameters: serde_json::Value) -> Manifest {
    Manifest {
        command: command.to_string(),
        argv: std::env::args().collect(),
        version: lgi_core::VERSION,
        execution: exec,
        seed,
        parameters,
        started_at: output::now(),
        finished_at: String::new(),
        files: Vec::new(),
        extra: serde_json::Value::Null,
    }
}

fn scan(command: &str, spec: ScanSpec, out: &Path, exec: Execution) -> Result<(), Failure> {
    spec.validate().map_err(usage)?;
    let mut m = manifest(command, exec, None, serde_json::to_value(&spec).expect("spec serialises"));
    let res = grid_scan(&spec, exec).map_err(classify)?;
    let mut run = Run::new(out)?;
    run.write("grid.csv", &output::grid_csv(&res))?;
    let (contours, index) = output::contours_csv(&res);
    run.write("contours.csv", &contours)?;
    m.extra = json!({
        "minima": res.minima,
        "max_sum_residual": res.max_sum_residual,
        "max_marginal_residual": res.max_marginal_residual,
        "contours": index,
    });
    for g in &res.minima {
        println!(
            "min q_{} = {} at {} = {}, beta = {}",
            g.outcome.tag(),
            output::num(g.q),
            spec.system.x_name(),
            output::num(g.x),
            output::num(g.beta)
        );
    }
    run.finish(m)?;
    Ok(())
}

fn optimize(o: &Optimize, exec: Execution) -> Result<(), Failure> {
    let mut spec = match o.system {
        SystemArg::Osc => OptimizeSpec {
            system: OptimizeSystem::Oscillator { alpha: o.alpha, nu: o.nu },
            ..OptimizeSpec::oscillator_default()
        },
        SystemArg::Field => OptimizeSpec::field_default(),
    };
    spec.outcome = o.outcome;
    spec.restarts = o.restarts;
    spec.seed = o.seed;
    if let Some(b) = o.bounds {
        spec.bounds = b;
    }
    spec.validate().map_err(usage)?;
    if let OptimizeSystem::Oscillator { alpha, nu } = spec.system {
        lgi_core::oscillator::OscillatorState::new(alpha, nu).map_err(usage)?;
    }
    let mut m = manifest("optimize", exec, Some(o.seed), serde_json::to_value(&spec).expect("spec serialises"));
    let res = minimize_q(&spec, exec).map_err(classify)?;
    if res.converged_restarts == 0 {
        return Err(Failure::Numeric(format!(
            "none of the {} restarts converged (best q = {})",
            res.restarts.len(),
            res.q
        )));
    }
    let params: serde_json::Map<String, serde_json::Value> = res
        .param_names
        .iter()
        .zip(res.params)
        .map(|(k, v)| (k.clone(), json!(v)))
        .collect();
    let mut run = Run::new(&o.out)?;
    run.write_json(
        "optimum.json",
        &json!({
            "system": o.system,
            "outcome": res.spec.outcome,
            "params": params,
            "q": res.q,
            "iterations": res.iterations,
            "restart_index": res.restart_index,
            "converged_restarts": res.converged_restarts,
            "restarts": res.restarts,
            "seed": o.seed,
            "bounds": res.spec.bounds,
        }),
    )?;
    println!(
        "q_{}* = {} at {} (restart {}, {}/{} converged)",
        res.spec.outcome.tag(),
        output::num(res.q),
        res.param_names
            .iter()
            .zip(res.params)
            .map(|(k, v)| format!("{k} = {v:.6}"))
            .collect::<Vec<_>>()
            .join(", "),
        res.restart_index,
        res.converged_restarts,
        res.restarts.len()
    );
    m.extra = json!({ "q": res.q });
    run.finish(m)?;
    Ok(())
}

#[derive(Serialize)]
struct OracleRecord {
    index: usize,
    #[serde(flatten)]
    check: CrossCheck,
    delta_fock: f64,
    delta_displacement: f64,
    max_delta: f64,
}

fn oracle_check(o: &OracleCheck, exec: Execution) -> Result<(), Failure> {
    if o.samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    if o.tol <= 0.0 {
        return Err(Failure::Usage("--tol must be positive".into()));
    }
    let bounds = SampleBox::default();
    let mut m = manifest(
        "oracle-check",
        exec,
        Some(o.seed),
        json!({ "samples": o.samples, "tol": o.tol, "sample_box": bounds, "inject_error": o.inject_error }),
    );
    let scenarios = sample_scenarios(o.samples, o.seed, &bounds);
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (index, res) in cross_check_all(&scenarios, exec).into_iter().enumerate() {
        match res {
            Ok(mut check) => {
                if let Some(d) = o.inject_error {
                    check.closed.iter_mut().for_each(|q| *q += d);
                }
                let diff = |a: &[f64; 4], b: &[f64; 4]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                records.push(OracleRecord {
                    index,
                    delta_fock: diff(&check.closed, &check.fock),
                    delta_displacement: diff(&check.closed, &check.displacement),
                    max_delta: check.max_delta(),
                    check,
                });
            }
            Err(e) => errors.push(json!({ "index": index, "scenario": scenarios[index], "error": e.to_string() })),
        }
    }
    let worst = records.iter().max_by(|a, b| a.max_delta.total_cmp(&b.max_delta));
    let max_delta = worst.map_or(0.0, |w| w.max_delta);
    let passed = errors.is_empty() && max_delta < o.tol;
    let mut run = Run::new(&o.out)?;
    run.write_json(
        "oracle_report.json",
        &json!({
            "samples": o.samples,
            "seed": o.seed,
            "tol": o.tol,
            "passed": passed,
            "max_delta": max_delta,
            "worst_index": worst.map(|w| w.index),
            "errors": errors,
            "records": records,
        }),
    )?;
    m.extra = json!({ "passed": passed, "max_delta": max_delta });
    run.finish(m)?;
    println!("{} samples, max delta {:.3e}, tol {:.1e}", o.samples, max_delta, o.tol);
    if !errors.is_empty() {
        return Err(Failure::Numeric(format!("{} samples failed to evaluate: {}", errors.len(), errors[0])));
    }
    if let Some(w) = worst.filter(|w| w.max_delta >= o.tol) {
        let s = &w.check.scenario;
        return Err(Failure::Oracle(format!(
            "sample {} exceeds tol: delta {:.3e} at alpha = {}, nu = {}, beta = {}, r = {}, t1 = {}, t2 = {}",
            w.index, w.max_delta, s.state.alpha, s.state.nu, s.proj.beta, s.proj.r, s.t1, s.t2
        )));
    }
    Ok(())
}

fn threads_from_env() -> Result<(), Failure> {
    let Ok(v) = std::env::var("LGI_THREADS") else {
        return Ok(());
    };
    match v.trim().parse::<usize>() {
        Ok(n) if n >= 1 => {
            exec::configure_threads(n);
            Ok(())
        }
        _ => Err(Failure::Usage(format!("LGI_THREADS must be a positive integer, got {v:?}"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    threads_from_env()?;
    let exec = if cli.sequential || !Execution::parallel_available() {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::OscScan(a) => {
            let spec = ScanSpec {
                system: ScanSystem::Oscillator {
                    alpha: a.alpha,
                    nu: a.nu,
                    r: a.r,
                    t1: a.t1,
                },
                x: a.theta_range,
                beta: a.beta.axis(),
                outcomes: a.outcomes,
            };
            scan("osc-scan", spec, &a.out, exec)
        }
        Command::FieldScan(a) => {
            let spec = ScanSpec {
                system: ScanSystem::field(a.omega_ell),
                x: a.tau_range,
                beta: a.beta.axis(),
                outcomes: a.outcomes,
            };
            scan("field-scan", spec, &a.out, exec)
        }
        Command::Optimize(o) => optimize(&o, exec),
        Command::OracleCheck(o) => oracle_check(&o, exec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Oracle(msg)) => {
            eprintln!("oracle mismatch: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
