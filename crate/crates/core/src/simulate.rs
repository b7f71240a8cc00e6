//! Fixed-step RK4 integration of `x' = -L (x - h)` and
//! `x'' = -alpha L (x - h) - beta L x'`.
//!
//! `L` is the full `(n+1)`-dimensional Laplacian; its leader row is zero so
//! the leader stays put (first order) or keeps its velocity (second order).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::model::{build_laplacian, MatrixKind, SystemParams};
use crate::oracle::qr_spectrum;
use crate::stability::{second_order_eigenvalues, SecondOrderParams};

/// Largest `dt * rho` accepted; inside classical RK4's stability region
/// for the real and imaginary axes alike.
pub const STEP_BOUND: f64 = 1.8;
/// `dt * rho` used when no step is given.
pub const DEFAULT_STEP: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub params: SystemParams,
    /// Offsets `h_k`, length `n + 1`.
    pub h: Vec<f64>,
    pub x0: Vec<f64>,
    /// Initial velocities; second order only.
    pub v0: Option<Vec<f64>>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub t_end: f64,
    pub dt: f64,
    /// Record every this many steps (the final time is always recorded).
    pub save_every: usize,
}

impl SimConfig {
    /// First-order configuration with the default step.
    pub fn first_order(params: SystemParams, h: Vec<f64>, x0: Vec<f64>, t_end: f64) -> Result<Self> {
        let dt = default_dt(&params, None)?;
        Ok(SimConfig {
            params,
            h,
            x0,
            v0: None,
            alpha: None,
            beta: None,
            t_end,
            dt,
            save_every: 1,
        })
    }

    /// Second-order configuration with the default step.
    pub fn second_order(
        params: SystemParams,
        so: SecondOrderParams,
        h: Vec<f64>,
        x0: Vec<f64>,
        v0: Vec<f64>,
        t_end: f64,
    ) -> Result<Self> {
        let dt = default_dt(&params, Some(so))?;
        Ok(SimConfig {
            params,
            h,
            x0,
            v0: Some(v0),
            alpha: Some(so.alpha),
            beta: Some(so.beta),
            t_end,
            dt,
            save_every: 1,
        })
    }

    fn second_order_params(&self) -> Result<SecondOrderParams> {
        match (self.alpha, self.beta) {
            (Some(alpha), Some(beta)) => Ok(SecondOrderParams { alpha, beta }),
            _ => Err(Error::InvalidConfig("second order needs alpha and beta".into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub positions: Vec<Vec<f64>>,
    /// Present for second-order runs.
    pub velocities: Option<Vec<Vec<f64>>>,
    pub coherence_errors: Vec<f64>,
}

impl Trajectory {
    /// Columns `t, x_0..x_n[, v_0..v_n], coherence_error`.
    pub fn to_csv(&self) -> String {
        let dim = self.positions.first().map_or(0, Vec::len);
        let mut header = vec!["t".to_string()];
        header.extend((0..dim).map(|k| format!("x_{k}")));
        if self.velocities.is_some() {
            header.extend((0..dim).map(|k| format!("v_{k}")));
        }
        header.push("coherence_error".into());
        let mut out = header.join(",");
        out.push('\n');
        for (i, t) in self.times.iter().enumerate() {
            let mut row = vec![format!("{t:.16e}")];
            row.extend(self.positions[i].iter().map(|x| format!("{x:.16e}")));
            if let Some(v) = &self.velocities {
                row.extend(v[i].iter().map(|x| format!("{x:.16e}")));
            }
            row.push(format!("{:.16e}", self.coherence_errors[i]));
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Spectral radius of `L`, from the QR oracle.
pub fn laplacian_radius(p: &SystemParams) -> Result<f64> {
    Ok(qr_spectrum(p, MatrixKind::Laplacian)?
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max))
}

fn system_radius(p: &SystemParams, so: Option<SecondOrderParams>) -> Result<f64> {
    match so {
        None => laplacian_radius(p),
        Some(so) => {
            let lambdas = qr_spectrum(p, MatrixKind::Laplacian)?;
            Ok(second_order_eigenvalues(&lambdas, so)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max))
        }
    }
}

/// Largest admissible step: `1.8 / rho` of the first- or second-order
/// system matrix.
pub fn dt_max(p: &SystemParams, so: Option<SecondOrderParams>) -> Result<f64> {
    Ok(STEP_BOUND / system_radius(p, so)?)
}

/// `0.5 / rho` of the first- or second-order system matrix.
pub fn default_dt(p: &SystemParams, so: Option<SecondOrderParams>) -> Result<f64> {
    Ok(DEFAULT_STEP / system_radius(p, so)?)
}

/// `L` stored by its three bands.
struct Banded {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
}

impl Banded {
    fn laplacian(p: &SystemParams) -> Self {
        let l = build_laplacian(p);
        let m = l.order();
        Banded {
            sub: (1..m).map(|i| l[(i, i - 1)]).collect(),
            diag: (0..m).map(|i| l[(i, i)]).collect(),
            sup: (1..m).map(|i| l[(i - 1, i)]).collect(),
        }
    }

    /// `out = scale * L x`.
    fn apply(&self, x: &[f64], scale: f64, out: &mut [f64]) {
        let m = self.diag.len();
        for i in 0..m {
            let mut s = self.diag[i] * x[i];
            if i > 0 {
                s += self.sub[i - 1] * x[i - 1];
            }
            if i + 1 < m {
                s += self.sup[i] * x[i + 1];
            }
            out[i] = scale * s;
        }
    }
}

fn check_len(got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            got,
        })
    }
}

fn validate(cfg: &SimConfig, so: Option<SecondOrderParams>) -> Result<()> {
    let dim = cfg.params.n() + 1;
    check_len(cfg.h.len(), dim)?;
    check_len(cfg.x0.len(), dim)?;
    if let Some(v0) = &cfg.v0 {
        check_len(v0.len(), dim)?;
    }
    if !(cfg.t_end.is_finite() && cfg.t_end > 0.0) {
        return Err(Error::InvalidConfig("t_end must be positive".into()));
    }
    if !(cfg.dt.is_finite() && cfg.dt > 0.0) {
        return Err(Error::InvalidConfig("dt must be positive".into()));
    }
    if cfg.save_every == 0 {
        return Err(Error::InvalidConfig("save_every must be at least 1".into()));
    }
    if cfg.h.iter().chain(&cfg.x0).chain(cfg.v0.iter().flatten()).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { name: "initial state" });
    }
    let limit = dt_max(&cfg.params, so)?;
    if cfg.dt > limit {
        return Err(Error::StepSizeTooLarge {
            dt: cfg.dt,
            dt_max: limit,
        });
    }
    Ok(())
}

/// Classical RK4 on a linear autonomous system `s' = f(s)`, recording the
/// state at every `save_every` steps and at `t_end`.
fn integrate<F>(state: Vec<f64>, cfg: &SimConfig, mut f: F) -> (Vec<f64>, Vec<Vec<f64>>)
where
    F: FnMut(&[f64], &mut [f64]),
{
    let dim = state.len();
    let steps = (cfg.t_end / cfg.dt).ceil().max(1.0) as usize;
    let mut s = state;
    let mut times = vec![0.0];
    let mut states = vec![s.clone()];
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; dim], vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]);
    let mut tmp = vec![0.0; dim];
    for step in 1..=steps {
        let t0 = (step - 1) as f64 * cfg.dt;
        let h = if step == steps { cfg.t_end - t0 } else { cfg.dt };
        f(&s, &mut k1);
        for i in 0..dim {
            tmp[i] = s[i] + 0.5 * h * k1[i];
        }
        f(&tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = s[i] + 0.5 * h * k2[i];
        }
        f(&tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = s[i] + h * k3[i];
        }
        f(&tmp, &mut k4);
        for i in 0..dim {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if step % cfg.save_every == 0 || step == steps {
            times.push(if step == steps { cfg.t_end } else { step as f64 * cfg.dt });
            states.push(s.clone());
        }
    }
    (times, states)
}

/// Integrates `x' = -L (x - h)` from `x0` to `t_end`.
pub fn simulate_first_order(cfg: &SimConfig) -> Result<Trajectory> {
    validate(cfg, None)?;
    let l = Banded::laplacian(&cfg.params);
    let mut lh = vec![0.0; cfg.h.len()];
    l.apply(&cfg.h, 1.0, &mut lh);
    let (times, positions) = integrate(cfg.x0.clone(), cfg, |x, out| {
        l.apply(x, -1.0, out);
        for (o, b) in out.iter_mut().zip(&lh) {
            *o += b;
        }
    });
    let mut traj = Trajectory {
        times,
        positions,
        velocities: None,
        coherence_errors: vec![],
    };
    traj.coherence_errors = coherence_error(&traj, &cfg.h);
    Ok(traj)
}

/// Integrates `x'' = -alpha L (x - h) - beta L x'` as a first-order system
/// in `(x, x')`.
pub fn simulate_second_order(cfg: &SimConfig) -> Result<Trajectory> {
    let so = cfg.second_order_params()?;
    let v0 = cfg
        .v0
        .clone()
        .ok_or_else(|| Error::InvalidConfig("second order needs v0".into()))?;
    validate(cfg, Some(so))?;
    let dim = cfg.h.len();
    let l = Banded::laplacian(&cfg.params);
    let mut alpha_lh = vec![0.0; dim];
    l.apply(&cfg.h, so.alpha, &mut alpha_lh);
    let mut state = cfg.x0.clone();
    state.extend(v0);
    let mut scratch = vec![0.0; dim];
    let (times, states) = integrate(state, cfg, |s, out| {
        let (x, v) = s.split_at(dim);
        let (dx, dv) = out.split_at_mut(dim);
        dx.copy_from_slice(v);
        l.apply(x, -so.alpha, dv);
        l.apply(v, -so.beta, &mut scratch);
        for i in 0..dim {
            dv[i] += scratch[i] + alpha_lh[i];
        }
    });
    let (positions, velocities) = states
        .into_iter()
        .map(|mut s| {
            let v = s.split_off(dim);
            (s, v)
        })
        .unzip();
    let mut traj = Trajectory {
        times,
        positions,
        velocities: Some(velocities),
        coherence_errors: vec![],
    };
    traj.coherence_errors = coherence_error(&traj, &cfg.h);
    Ok(traj)
}

/// Norm of `w` after removing its mean.
fn deviation_norm_sq(w: impl Iterator<Item = f64> + Clone) -> f64 {
    let (sum, count) = w.clone().fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        return 0.0;
    }
    let mean = sum / count as f64;
    w.map(|v| (v - mean) * (v - mean)).sum()
}

/// Distance of each snapshot from the coherent family: `x - h` from the
/// constant vectors, and for second order `(x - h, x')` from
/// `((x_bar + v_bar t) 1, v_bar 1)`. The best fit is the mean in each block.
pub fn coherence_error(traj: &Trajectory, h: &[f64]) -> Vec<f64> {
    (0..traj.times.len())
        .map(|i| {
            let x = &traj.positions[i];
            let mut sq = deviation_norm_sq(x.iter().zip(h).map(|(x, h)| x - h));
            if let Some(v) = &traj.velocities {
                sq += deviation_norm_sq(v[i].iter().copied());
            }
            sq.sqrt()
        })
        .collect()
}

/// Least-squares slope of `ln(coherence_error)` against time over the final
/// third of the run. Snapshots with a zero error are skipped.
pub fn tail_decay_rate(traj: &Trajectory) -> Option<f64> {
    let start = traj.times.len() * 2 / 3;
    let (ts, logs): (Vec<f64>, Vec<f64>) = traj.times[start..]
        .iter()
        .zip(&traj.coherence_errors[start..])
        .filter(|(_, e)| **e > 0.0)
        .map(|(t, e)| (*t, e.ln()))
        .unzip();
    linear_fit(&ts, &logs).map(|(slope, _, _)| slope)
}
