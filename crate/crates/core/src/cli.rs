//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification or numerical failure, 2 invalid
//! parameters, 3 no classical-beating regime, 4 I/O failure.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::entanglement::{concurrence, thermal_concurrence, zero_entanglement_temperature};
use crate::error::Error;
use crate::model::{gibbs_state, ModelParams};
use crate::phase::{self, REFERENCE_TABLE, TABLE_TOLERANCE};
use crate::teleport::{
    average_fidelity, mc_average_fidelity, output_fidelity, protocol_average_fidelity,
    protocol_oracle, state_fidelity, PureQubit,
};
use crate::verify::{self, linspace, VerifyConfig};

pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NO_SOLUTION: u8 = 3;
pub const EXIT_IO: u8 = 4;

const DEFAULT_SEED: u64 = 2024;

#[derive(Debug, Parser)]
#[command(
    name = "xxtele",
    version,
    about = "Thermal entanglement and teleportation fidelity of the two-qubit Heisenberg XX chain",
    allow_negative_numbers = true
)]
pub struct Cli {
    /// Output format (defaults to csv for `sweep`, plain otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Seed for stochastic estimates.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thermal concurrence.
    #[command(allow_negative_numbers = true)]
    Concurrence {
        #[command(flatten)]
        point: PointArgs,
        /// Also run the general Wootters algorithm on the Gibbs state.
        #[arg(long)]
        verify: bool,
    },
    /// Teleportation fidelity with the thermal state as resource.
    #[command(allow_negative_numbers = true)]
    Fidelity {
        #[command(flatten)]
        point: PointArgs,
        /// Polar angle of the input for the pointwise fidelity.
        #[arg(long)]
        theta: Option<f64>,
        /// Azimuth used by the protocol cross-check at `--theta`.
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        /// Add a Monte Carlo estimate with this many samples.
        #[arg(long)]
        mc_samples: Option<u64>,
        /// Cross-check against a full simulation of the protocol.
        #[arg(long)]
        verify: bool,
    },
    /// Field-dependent critical temperature for B_m = eta J.
    #[command(allow_negative_numbers = true)]
    Critical {
        #[arg(long)]
        eta: f64,
        #[arg(long, default_value_t = 1.0)]
        j: f64,
    },
    /// Critical temperatures and residual concurrences for eta = 0.1..0.9.
    Table1,
    /// Grid of concurrence and fidelity over (eta, T/J).
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Run every analytic-vs-numerical cross-check.
    #[command(allow_negative_numbers = true)]
    Verify {
        /// Points per axis of the (J, B_m, T) grid.
        #[arg(long, default_value_t = 10)]
        grid_size: usize,
        #[arg(long, default_value_t = 200_000)]
        mc_samples: u64,
        /// Multiply all tolerances (0 forces failure; for testing the failure path).
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
    },
}

/// Model point given raw (`--bm`, `--t`) or reduced (`--eta`, `--t-over-j`).
#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, default_value_t = 1.0)]
    pub j: f64,
    #[arg(long, conflicts_with = "eta")]
    pub bm: Option<f64>,
    /// B_m / J.
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long, conflicts_with = "t_over_j")]
    pub t: Option<f64>,
    /// T / J.
    #[arg(long)]
    pub t_over_j: Option<f64>,
}

impl PointArgs {
    fn params(&self) -> Result<ModelParams, Error> {
        let b_m = match (self.bm, self.eta) {
            (Some(b), _) => b,
            (None, Some(eta)) => eta * self.j,
            (None, None) => 0.0,
        };
        let t = match (self.t, self.t_over_j) {
            (Some(t), _) => t,
            (None, Some(r)) => r * self.j,
            (None, None) => {
                return Err(Error::InvalidParameter(
                    "a temperature is required (--t or --t-over-j)".into(),
                ))
            }
        };
        ModelParams::new(self.j, b_m, t)
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1.0)]
    pub j: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eta_min: f64,
    #[arg(long, default_value_t = 0.9)]
    pub eta_max: f64,
    #[arg(long, default_value_t = 9)]
    pub eta_steps: usize,
    /// Lowest T / J.
    #[arg(long, default_value_t = 0.1)]
    pub t_min: f64,
    /// Highest T / J.
    #[arg(long, default_value_t = 1.2)]
    pub t_max: f64,
    #[arg(long, default_value_t = 12)]
    pub t_steps: usize,
}

/// Ordered record of named fields.
type Row = Vec<(&'static str, Value)>;

/// What a command produced, before formatting.
pub struct Outcome {
    command: &'static str,
    parameters: Map<String, Value>,
    seed: Option<u64>,
    rows: Vec<Row>,
    /// Single-record results print as an object in JSON, tables as an array.
    table: bool,
    exit: u8,
}

impl Outcome {
    fn single(command: &'static str, parameters: Map<String, Value>, row: Row) -> Self {
        Self {
            command,
            parameters,
            seed: None,
            rows: vec![row],
            table: false,
            exit: 0,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Model(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Model(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(Error::InvalidParameter(_)) => EXIT_INVALID,
            CliError::Model(Error::NoClassicalBeatingRegime { .. }) => EXIT_NO_SOLUTION,
            CliError::Model(_) => EXIT_VERIFY_FAILED,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

/// Twelve significant digits, locale independent.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.11e}")
    }
}

fn format_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_float(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn params_map(p: &ModelParams) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("j".into(), json!(p.j));
    m.insert("b_m".into(), json!(p.b_m));
    m.insert("t".into(), json!(p.t));
    m
}

fn cmd_concurrence(point: &PointArgs, verify: bool) -> Result<Outcome, CliError> {
    let p = point.params()?;
    let analytic = thermal_concurrence(&p);
    let mut row: Row = vec![("concurrence", json!(analytic))];
    if verify {
        let general = concurrence(&gibbs_state(&p).rho)?;
        row.push(("wootters", json!(general.value)));
        row.push(("abs_difference", json!((general.value - analytic).abs())));
    }
    let mut params = params_map(&p);
    params.insert("verify".into(), json!(verify));
    Ok(Outcome::single("concurrence", params, row))
}

fn cmd_fidelity(
    point: &PointArgs,
    theta: Option<f64>,
    phi: f64,
    mc_samples: Option<u64>,
    verify: bool,
    seed: u64,
) -> Result<Outcome, CliError> {
    let p = point.params()?;
    let avg = average_fidelity(&p).average;
    let mut row: Row = vec![
        ("avg_fidelity", json!(avg)),
        ("beats_classical", json!(phase::better_than_classical(&p))),
    ];
    let mut params = params_map(&p);
    let psi = theta.map(|th| PureQubit::new(th, phi)).transpose()?;
    if let Some(psi) = psi {
        row.push(("pointwise_fidelity", json!(output_fidelity(&p, psi.theta))));
        params.insert("theta".into(), json!(psi.theta));
    }
    let rho = gibbs_state(&p).rho;
    let mut stochastic = None;
    if let Some(n) = mc_samples {
        let r = mc_average_fidelity(&rho, n, seed)?;
        row.push(("mc_fidelity", json!(r.average)));
        row.push(("mc_stderr", json!(r.stderr.unwrap_or(0.0))));
        row.push(("mc_samples", json!(n)));
        stochastic = Some(seed);
    }
    if verify {
        let oracle = protocol_average_fidelity(&rho)?.average;
        row.push(("protocol_fidelity", json!(oracle)));
        row.push(("protocol_abs_difference", json!((oracle - avg).abs())));
        if let Some(psi) = psi {
            let pointwise = state_fidelity(&protocol_oracle(&rho, &psi)?.output, &psi);
            row.push(("protocol_pointwise_fidelity", json!(pointwise)));
            params.insert("phi".into(), json!(phi));
        }
    }
    let mut out = Outcome::single("fidelity", params, row);
    out.seed = stochastic;
    Ok(out)
}

fn critical_row(cp: &phase::CriticalPoint, j: f64) -> Row {
    vec![
        ("eta", json!(cp.eta)),
        ("t_critical_over_j", json!(cp.t_critical_over_j)),
        ("t_critical", json!(cp.t_critical_over_j * j)),
        ("residual_concurrence", json!(cp.residual_concurrence)),
        ("solver_residual", json!(cp.solver_residual)),
    ]
}

fn cmd_critical(eta: f64, j: f64) -> Result<Outcome, CliError> {
    let cp = phase::critical_temperature(eta, j)?;
    let mut params = Map::new();
    params.insert("eta".into(), json!(eta));
    params.insert("j".into(), json!(j));
    Ok(Outcome::single("critical", params, critical_row(&cp, j)))
}

fn cmd_table1() -> Result<Outcome, CliError> {
    let rows = phase::reproduce_table1()
        .iter()
        .zip(REFERENCE_TABLE.iter())
        .map(|(cp, &(_, t_ref, c_ref))| {
            let pass = (cp.t_critical_over_j - t_ref).abs() / t_ref <= TABLE_TOLERANCE
                && (cp.residual_concurrence - c_ref).abs() <= TABLE_TOLERANCE;
            vec![
                ("eta", json!(cp.eta)),
                ("t_critical_over_j", json!(cp.t_critical_over_j)),
                ("residual_concurrence", json!(cp.residual_concurrence)),
                ("reference_t_critical_over_j", json!(t_ref)),
                ("reference_residual_concurrence", json!(c_ref)),
                ("pass", json!(pass)),
            ]
        })
        .collect::<Vec<Row>>();
    let all_pass = rows
        .iter()
        .all(|r| r.last().map(|(_, v)| v == &json!(true)).unwrap_or(false));
    let mut params = Map::new();
    params.insert("tolerance".into(), json!(TABLE_TOLERANCE));
    params.insert(
        "zero_entanglement_temperature_over_j".into(),
        json!(zero_entanglement_temperature(1.0)?),
    );
    Ok(Outcome {
        command: "table1",
        parameters: params,
        seed: None,
        rows,
        table: true,
        exit: if all_pass { 0 } else { EXIT_VERIFY_FAILED },
    })
}

fn cmd_sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    if args.eta_steps == 0 || args.t_steps == 0 {
        return Err(Error::InvalidParameter("step counts must be positive".into()).into());
    }
    if !(args.t_min > 0.0) || args.t_max < args.t_min {
        return Err(Error::InvalidParameter(
            "temperature range must satisfy 0 < t-min <= t-max".into(),
        )
        .into());
    }
    let etas = linspace(args.eta_min, args.eta_max, args.eta_steps);
    let ts: Vec<f64> = linspace(args.t_min, args.t_max, args.t_steps)
        .into_iter()
        .map(|r| r * args.j)
        .collect();
    let records = phase::sweep(args.j, &etas, &ts)?;
    let rows = records
        .iter()
        .map(|r| {
            vec![
                ("j", json!(r.j)),
                ("b_m", json!(r.b_m)),
                ("t", json!(r.t)),
                ("concurrence", json!(r.concurrence)),
                ("avg_fidelity", json!(r.avg_fidelity)),
                ("beats_classical", json!(r.beats_classical)),
            ]
        })
        .collect();
    let mut params = Map::new();
    params.insert("j".into(), json!(args.j));
    params.insert("eta".into(), json!([args.eta_min, args.eta_max, args.eta_steps]));
    params.insert("t_over_j".into(), json!([args.t_min, args.t_max, args.t_steps]));
    Ok(Outcome {
        command: "sweep",
        parameters: params,
        seed: None,
        rows,
        table: true,
        exit: 0,
    })
}

fn cmd_verify(config: VerifyConfig) -> Result<Outcome, CliError> {
    if config.grid_size == 0 || config.mc_samples == 0 {
        return Err(Error::InvalidParameter("grid size and sample count must be positive".into()).into());
    }
    let report = verify::run(&config)?;
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                ("check", json!(c.name)),
                ("points", json!(c.points)),
                ("max_deviation", json!(c.max_deviation)),
                ("tolerance", json!(c.tolerance)),
                ("pass", json!(c.passed)),
            ]
        })
        .collect();
    let mut params = Map::new();
    params.insert("grid_size".into(), json!(config.grid_size));
    params.insert("mc_samples".into(), json!(config.mc_samples));
    params.insert("tolerance_scale".into(), json!(config.tolerance_scale));
    Ok(Outcome {
        command: "verify",
        parameters: params,
        seed: Some(config.seed),
        rows,
        table: true,
        exit: if report.passed { 0 } else { EXIT_VERIFY_FAILED },
    })
}

fn row_object(row: &Row) -> Value {
    Value::Object(row.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
}

pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => {
            let mut metadata = Map::new();
            metadata.insert("tool".into(), json!("xxtele"));
            metadata.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            metadata.insert("command".into(), json!(outcome.command));
            metadata.insert("parameters".into(), Value::Object(outcome.parameters.clone()));
            if let Some(seed) = outcome.seed {
                metadata.insert("seed".into(), json!(seed));
            }
            let result = if outcome.table {
                Value::Array(outcome.rows.iter().map(row_object).collect())
            } else {
                outcome.rows.first().map(row_object).unwrap_or(Value::Null)
            };
            let doc = json!({ "metadata": Value::Object(metadata), "result": result });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::new();
            let header: Vec<&str> = match outcome.rows.first() {
                Some(row) => row.iter().map(|(k, _)| *k).collect(),
                None => Vec::new(),
            };
            s.push_str(&header.join(","));
            s.push('\n');
            for row in &outcome.rows {
                let cells: Vec<String> = row.iter().map(|(_, v)| format_value(v)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for (i, row) in outcome.rows.iter().enumerate() {
                if i > 0 {
                    s.push('\n');
                }
                for (k, v) in row {
                    s.push_str(&format!("{k}: {}\n", format_value(v)));
                }
            }
            if let Some(seed) = outcome.seed {
                s.push_str(&format!("seed: {seed}\n"));
            }
            s
        }
    }
}

fn execute(cli: &Cli) -> Result<(Outcome, Format), CliError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let (outcome, default_format) = match &cli.command {
        Command::Concurrence { point, verify } => (cmd_concurrence(point, *verify)?, Format::Plain),
        Command::Fidelity {
            point,
            theta,
            phi,
            mc_samples,
            verify,
        } => (
            cmd_fidelity(point, *theta, *phi, *mc_samples, *verify, seed)?,
            Format::Plain,
        ),
        Command::Critical { eta, j } => (cmd_critical(*eta, *j)?, Format::Plain),
        Command::Table1 => (cmd_table1()?, Format::Plain),
        Command::Sweep(args) => (cmd_sweep(args)?, Format::Csv),
        Command::Verify {
            grid_size,
            mc_samples,
            tolerance_scale,
        } => (
            cmd_verify(VerifyConfig {
                seed,
                grid_size: *grid_size,
                mc_samples: *mc_samples,
                tolerance_scale: *tolerance_scale,
            })?,
            Format::Plain,
        ),
    };
    Ok((outcome, cli.format.unwrap_or(default_format)))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut f = File::create(path).map_err(CliError::Io)?;
            f.write_all(text.as_bytes()).map_err(CliError::Io)
        }
        None => io::stdout().write_all(text.as_bytes()).map_err(CliError::Io),
    }
}

/// Runs a parsed command line, printing diagnostics to stderr.
pub fn run(cli: Cli) -> ExitCode {
    let result = execute(&cli).and_then(|(outcome, format)| {
        emit(&render(&outcome, format), cli.out.as_ref())?;
        Ok(outcome.exit)
    });
    match result {
        Ok(code) => {
            if code == EXIT_VERIFY_FAILED {
                eprintln!("xxtele: one or more checks failed");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("xxtele: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
