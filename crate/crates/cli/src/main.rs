mod args;
mod config;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use boundary_spectra::oracle::cross_validate;
use boundary_spectra::perturb::{track_root_convergence, verify_branch_monotonicity, MonotonicityReport};
use boundary_spectra::simulate::{simulate_first_order, simulate_second_order, SimConfig, Trajectory};
use boundary_spectra::spectrum::{classify_regime, compute_spectrum, predicted_seeds, RegimeLabel};
use boundary_spectra::stability::{first_order_verdict, second_order_verdict, SecondOrderParams, StabilityVerdict};
use boundary_spectra::{make_params, MatrixKind, SystemParams};
use clap::Parser;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use args::{Cli, Command, CommonArgs, Format, Kind, SimArgs};
use config::{resolve, Resolved};

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing flags and inputs; exit status 2.
    Usage(String),
    /// The computation itself failed; exit status 1.
    Domain(boundary_spectra::Error),
    /// Output could not be written; exit status 1.
    Io(String),
}

impl From<boundary_spectra::Error> for CliError {
    fn from(err: boundary_spectra::Error) -> Self {
        CliError::Domain(err)
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(flatten)]
    label: RegimeLabel,
    description: String,
    predicted_seeds: Vec<Complex64>,
}

#[derive(Serialize)]
struct StabilityOutput {
    order: &'static str,
    #[serde(flatten)]
    verdict: StabilityVerdict,
}

#[derive(Serialize)]
struct SimulationOutput {
    order: &'static str,
    dt: f64,
    t_end: f64,
    #[serde(flatten)]
    trajectory: Trajectory,
}

#[derive(Serialize)]
struct MonotonicityOutput {
    slope_coefficient: f64,
    total_violations: usize,
    branches: Vec<MonotonicityReport>,
}

#[derive(Deserialize)]
struct InitRow {
    h: f64,
    x0: f64,
    v0: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(err)) => {
            emit_error(err.kind(), err.to_string());
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            emit_error("Io", msg);
            ExitCode::from(1)
        }
    }
}

fn emit_error(kind: &str, message: String) {
    let report = ErrorReport { error: kind, message };
    eprintln!("{}", serde_json::to_string(&report).expect("error report serializes"));
}

fn matrix_kind(kind: Kind) -> MatrixKind {
    match kind {
        Kind::Full => MatrixKind::Full,
        Kind::Reduced => MatrixKind::Reduced,
        Kind::Laplacian => MatrixKind::Laplacian,
    }
}

fn params(r: &Resolved) -> Result<SystemParams, CliError> {
    Ok(make_params(r.a, r.c, r.b, r.d, r.e, r.n)?)
}

fn second_order(r: &Resolved) -> Option<SecondOrderParams> {
    match (r.alpha, r.beta) {
        (Some(alpha), Some(beta)) => Some(SecondOrderParams { alpha, beta }),
        _ => None,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    text
}

fn write_output(common: &CommonArgs, text: &str) -> Result<(), CliError> {
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|err| CliError::Io(format!("{}: {err}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Spectrum { common, kind } => {
            let p = params(&resolve(&common, None, None)?)?;
            let s = compute_spectrum(&p, matrix_kind(kind))?;
            let text = match common.format {
                Format::Json => to_json(&s),
                Format::Csv => s.to_csv(),
            };
            write_output(&common, &text)
        }
        Command::Classify { common } => {
            let p = params(&resolve(&common, None, Some(100))?)?;
            let label = classify_regime(&p);
            let out = ClassifyOutput {
                description: label.to_string(),
                predicted_seeds: predicted_seeds(&p),
                label,
            };
            let text = match common.format {
                Format::Json => to_json(&out),
                Format::Csv => {
                    let predicted = out
                        .label
                        .decentralized_cell
                        .as_ref()
                        .map(|cell| {
                            cell.predicted
                                .iter()
                                .map(|v| format!("{v:.16e}"))
                                .collect::<Vec<_>>()
                                .join(";")
                        })
                        .unwrap_or_default();
                    let regime = serde_json::to_value(out.label.regime).expect("regime serializes");
                    format!(
                        "regime,case,predicted\n{},{},{}\n",
                        regime.as_str().unwrap_or_default(),
                        out.label.case.as_str(),
                        predicted
                    )
                }
            };
            write_output(&common, &text)
        }
        Command::Stability { common } => {
            let r = resolve(&common, None, None)?;
            let p = params(&r)?;
            let (order, verdict) = match second_order(&r) {
                Some(so) => ("second", second_order_verdict(&p, so)?),
                None => ("first", first_order_verdict(&p)?),
            };
            let text = match common.format {
                Format::Json => to_json(&StabilityOutput { order, verdict }),
                Format::Csv => {
                    let stable = serde_json::to_value(verdict.stable).expect("verdict serializes");
                    let (wr, wi) = verdict.witness.map_or((f64::NAN, f64::NAN), |w| (w.re, w.im));
                    format!(
                        "stable,rule,zero_multiplicity,spectral_abscissa,witness_re,witness_im\n{},{},{},{:.16e},{:.16e},{:.16e}\n",
                        stable.as_str().unwrap_or_default(),
                        verdict.rule,
                        verdict.zero_multiplicity,
                        verdict.spectral_abscissa,
                        wr,
                        wi
                    )
                }
            };
            write_output(&common, &text)
        }
        Command::Simulate { common, sim } => {
            let r = resolve(&common, Some(&sim), None)?;
            let p = params(&r)?;
            let so = second_order(&r);
            let t_end = r
                .t_end
                .ok_or_else(|| CliError::Usage("missing required parameter --t-end (flag or config key)".into()))?;
            let cfg = simulation_config(&p, so, t_end, r.dt, &sim)?;
            let traj = match so {
                Some(_) => simulate_second_order(&cfg)?,
                None => simulate_first_order(&cfg)?,
            };
            let text = match common.format {
                Format::Json => to_json(&SimulationOutput {
                    order: if so.is_some() { "second" } else { "first" },
                    dt: cfg.dt,
                    t_end,
                    trajectory: traj,
                }),
                Format::Csv => traj.to_csv(),
            };
            write_output(&common, &text)
        }
        Command::Convergence { common, n_values } => {
            let p = params(&resolve(&common, None, Some(n_values.first().copied().unwrap_or(20)))?)?;
            let report = track_root_convergence(&p, &n_values)?;
            let text = match common.format {
                Format::Json => to_json(&report),
                Format::Csv => report.to_csv(),
            };
            write_output(&common, &text)
        }
        Command::Verify { common, kind } => {
            let p = params(&resolve(&common, None, None)?)?;
            let report = cross_validate(&p, matrix_kind(kind))?;
            let text = match common.format {
                Format::Json => to_json(&report),
                Format::Csv => format!(
                    "n,max_pairing_error,method_agreement,regime,case\n{},{:.16e},{},{},{}\n",
                    report.n,
                    report.max_pairing_error,
                    report.method_agreement.map(|m| format!("{m:.16e}")).unwrap_or_default(),
                    serde_json::to_value(report.regime.regime)
                        .expect("regime serializes")
                        .as_str()
                        .unwrap_or_default(),
                    report.regime.case.as_str()
                ),
            };
            write_output(&common, &text)
        }
        Command::Monotonicity { common, samples } => {
            let p = params(&resolve(&common, None, None)?)?;
            let branches = verify_branch_monotonicity(&p, samples)?;
            let out = MonotonicityOutput {
                slope_coefficient: branches.first().map_or(f64::NAN, |b| b.slope_coefficient),
                total_violations: branches.iter().map(|b| b.violations.len()).sum(),
                branches,
            };
            let text = match common.format {
                Format::Json => to_json(&out),
                Format::Csv => {
                    let mut text = String::from("branch,sample_count,violations,slope_coefficient\n");
                    for b in &out.branches {
                        text.push_str(&format!(
                            "{},{},{},{:.16e}\n",
                            b.branch,
                            b.sample_count,
                            b.violations.len(),
                            b.slope_coefficient
                        ));
                    }
                    text
                }
            };
            write_output(&common, &text)
        }
    }
}

fn read_init(path: &Path) -> Result<Vec<InitRow>, CliError> {
    let usage = |err: &dyn std::fmt::Display| CliError::Usage(format!("--init {}: {err}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(|e| usage(&e))?;
    reader
        .deserialize()
        .collect::<Result<Vec<InitRow>, _>>()
        .map_err(|e| usage(&e))
}

fn simulation_config(
    p: &SystemParams,
    so: Option<SecondOrderParams>,
    t_end: f64,
    dt: Option<f64>,
    sim: &SimArgs,
) -> Result<SimConfig, CliError> {
    let dim = p.n() + 1;
    let (h, x0, v0) = match &sim.init {
        Some(path) => {
            let rows = read_init(path)?;
            let h: Vec<f64> = rows.iter().map(|r| r.h).collect();
            let x0: Vec<f64> = rows.iter().map(|r| r.x0).collect();
            let v0: Vec<f64> = rows.iter().map(|r| r.v0.unwrap_or(0.0)).collect();
            (h, x0, v0)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(sim.seed);
            let h: Vec<f64> = (0..dim).map(|k| -(k as f64) * sim.spacing).collect();
            let x0 = h
                .iter()
                .map(|hk| if sim.noise > 0.0 { hk + rng.gen_range(-sim.noise..sim.noise) } else { *hk })
                .collect();
            (h, x0, vec![0.0; dim])
        }
    };
    let mut cfg = match so {
        Some(so) => SimConfig::second_order(*p, so, h, x0, v0, t_end)?,
        None => SimConfig::first_order(*p, h, x0, t_end)?,
    };
    if let Some(dt) = dt {
        cfg.dt = dt;
    }
    cfg.save_every = sim.save_every;
    Ok(cfg)
}
