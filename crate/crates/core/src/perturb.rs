//! Finite-`n` behavior of the special roots and of the cotangent branches.
//!
//! A special root `z_1` sits next to a root `z_0` of the quadratic
//! `p(z) = a z^2 - d tau z - e`, at a distance that shrinks like
//! `|z_0|^(-2n)`. That distance drops below the resolution of `z_0` itself
//! for moderate `n`, so it is computed directly: with `p` factored as
//! `a (z - z_0)(z - mu)`, the deviation `delta = z_1 - z_0` solves
//!
//! ```text
//! a delta (z_0 - mu + delta) + q(z_0 + delta) (z_0 + delta)^(-2n) = 0,
//! ```
//!
//! `q(z) = e z^2 + d tau z - a`, which Newton's method resolves to full
//! relative accuracy however small `delta` is.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::charpoly::{coefficient_scale, is_zero_sum, quadratic_roots, slope_coefficient};
use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::model::SystemParams;
use crate::spectrum::predicted_seeds;

/// Deviation of a special root from its quadratic seed at one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootDeviation {
    pub n: usize,
    pub seed: Complex64,
    /// `z_1 - z_0`.
    pub delta: Complex64,
    /// `r_1 - r_0` with `r = sqrt(ac) (z + 1/z)`.
    pub eigenvalue_shift: Complex64,
}

/// Solves for `z_1 - z_0` where `z_0` is a root of `a z^2 - d tau z - e`
/// outside the unit circle.
///
/// Fails with [`Error::NoConvergence`] when no root of the full polynomial
/// lies within half the distance from `z_0` to the unit circle (typical below
/// the dimension where the special root has separated).
pub fn root_deviation(p: &SystemParams, z0: Complex64) -> Result<RootDeviation> {
    let (a, e) = (p.a(), p.e());
    let dt = p.d() * p.tau();
    let modulus = z0.norm();
    if modulus.is_nan() || modulus <= 1.0 {
        return Err(Error::DomainError("seed must lie outside the unit circle"));
    }
    let quad = z0 * (z0 * a - dt) - e;
    if quad.norm() > 1e-10 * coefficient_scale(p) * modulus.max(1.0).powi(2) {
        return Err(Error::DomainError("seed is not a root of the quadratic"));
    }
    let mu = Complex64::new(-e / a, 0.0) / z0;
    let gap = z0 - mu;
    let reach = 0.5 * (modulus - 1.0).min(gap.norm());
    let m = 2 * p.n() as i32;
    let q = |z: Complex64| z * (z * e + dt) - a;
    let q_prime = |z: Complex64| z * (2.0 * e) + dt;

    let mut delta = Complex64::new(0.0, 0.0);
    for it in 0..100 {
        let z = z0 + delta;
        let w = z.inv().powi(m);
        let qz = q(z);
        let g = delta * a * (gap + delta) + qz * w;
        let dg = (gap + delta * 2.0) * a + q_prime(z) * w - qz * w / z * m as f64;
        if g == Complex64::new(0.0, 0.0) {
            break;
        }
        let step = g / dg;
        if !step.is_finite() {
            return Err(Error::NoConvergence { iterations: it, last: z });
        }
        delta -= step;
        if delta.norm() > reach {
            return Err(Error::NoConvergence {
                iterations: it + 1,
                last: z0 + delta,
            });
        }
        if step.norm() <= 1e-15 * delta.norm() {
            break;
        }
        if it == 99 {
            return Err(Error::NoConvergence {
                iterations: 100,
                last: z0 + delta,
            });
        }
    }
    let z1 = z0 + delta;
    let shift = delta * (Complex64::new(1.0, 0.0) - (z0 * z1).inv()) * p.sqrt_ac();
    Ok(RootDeviation {
        n: p.n(),
        seed: z0,
        delta,
        eigenvalue_shift: shift,
    })
}

/// Deviation of one `n` in a [`ConvergenceReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceEntry {
    pub n: usize,
    /// `|z_1(n) - z_0|`.
    pub deviation: Option<f64>,
    /// Sign of `r_1(n) - r_0` for real seeds.
    pub sign: Option<i8>,
    /// Failure message when the refinement did not converge.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// Tracked quadratic root; `None` when the regime predicts no special root.
    pub seed: Option<Complex64>,
    pub entries: Vec<ConvergenceEntry>,
    /// Per-unit-`n` geometric decay `kappa` from a least-squares fit of
    /// `ln |delta|` against `n`.
    pub fitted_rate: Option<f64>,
    /// Coefficient of determination of that fit.
    pub r_squared: Option<f64>,
    /// `|z_0|^2`, the decay rate the fit should reproduce.
    pub expected_rate: Option<f64>,
}

impl ConvergenceReport {
    /// `n,deviation` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,deviation\n");
        for e in &self.entries {
            match e.deviation {
                Some(d) => out.push_str(&format!("{},{:.16e}\n", e.n, d)),
                None => out.push_str(&format!("{},\n", e.n)),
            }
        }
        out
    }
}

/// The quadratic root a convergence study follows: the larger real root if
/// it is outside the circle, otherwise the largest predicted seed.
fn tracked_seed(p: &SystemParams) -> Option<Complex64> {
    if let Some(nu) = larger_real_root(p) {
        if nu.abs() > 1.0 && !predicted_seeds(p).is_empty() {
            return Some(Complex64::new(nu, 0.0));
        }
    }
    predicted_seeds(p)
        .into_iter()
        .filter(|z| z.norm() > 1.0)
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
}

fn larger_real_root(p: &SystemParams) -> Option<f64> {
    let r = quadratic_roots(p);
    if r.y_plus.im != 0.0 || r.y_minus.im != 0.0 {
        return None;
    }
    Some(r.y_plus.re.max(r.y_minus.re))
}

/// Follows the special root across dimensions and fits its geometric
/// approach to the quadratic seed.
pub fn track_root_convergence(p: &SystemParams, n_values: &[usize]) -> Result<ConvergenceReport> {
    if n_values.is_empty() || n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DomainError("n_values must be non-empty and strictly increasing"));
    }
    let seed = tracked_seed(p);
    let mut entries = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let q = p.with_n(n)?;
        let entry = match seed {
            None => ConvergenceEntry {
                n,
                deviation: None,
                sign: None,
                error: Some(
                    Error::NoConvergence {
                        iterations: 0,
                        last: Complex64::new(0.0, 0.0),
                    }
                    .to_string()
                        + ": no special root in this regime",
                ),
            },
            Some(z0) => match root_deviation(&q, z0) {
                Ok(dev) => ConvergenceEntry {
                    n,
                    deviation: Some(dev.delta.norm()),
                    sign: (z0.im == 0.0).then(|| sign_of(dev.eigenvalue_shift.re)),
                    error: None,
                },
                Err(err) => ConvergenceEntry {
                    n,
                    deviation: None,
                    sign: None,
                    error: Some(err.to_string()),
                },
            },
        };
        entries.push(entry);
    }

    // Fit on converged, representable deviations only.
    let (xs, ys): (Vec<f64>, Vec<f64>) = entries
        .iter()
        .filter_map(|e| e.deviation.filter(|d| *d > 0.0 && d.is_finite()).map(|d| (e.n as f64, d.ln())))
        .unzip();
    let fit = linear_fit(&xs, &ys);
    Ok(ConvergenceReport {
        seed,
        entries,
        fitted_rate: fit.map(|(slope, _, _)| (-slope).exp()),
        r_squared: fit.map(|(_, _, r2)| r2),
        expected_rate: seed.map(|z| z.norm_sqr()),
    })
}

fn sign_of(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Sign of `z_1 - z_0` for the larger real quadratic root `z_0`.
///
/// For that root the sign is `-sgn(a + e)` once `n` is large enough; for the
/// smaller root it is the opposite, which is why only the larger one is
/// reported.
pub fn perturbation_sign(p: &SystemParams) -> Result<i8> {
    if is_zero_sum(p) {
        return Err(Error::NotApplicable("a + e = 0"));
    }
    let nu = larger_real_root(p).ok_or(Error::NotApplicable("the special roots are not real"))?;
    if nu.abs() <= 1.0 {
        return Err(Error::NotApplicable("the larger quadratic root is inside the unit circle"));
    }
    let dev = root_deviation(p, Complex64::new(nu, 0.0))?;
    Ok(sign_of(dev.delta.re))
}

/// Sampled shape of `g(phi) = cot(n phi) sin(phi) - B cos(phi)` on one branch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub branch: usize,
    pub sample_count: usize,
    /// `(phi, slope)` at every adjacent sample pair where `g` increased;
    /// `phi` is the midpoint of the pair.
    pub violations: Vec<(f64, f64)>,
    /// `B = (e - a) / (e + a)`.
    pub slope_coefficient: f64,
}

/// Checks on a uniform interior grid that `g` decreases across every branch
/// `((l-1) pi / n, l pi / n)`. For `B <= 1` no violation is expected.
pub fn verify_branch_monotonicity(
    p: &SystemParams,
    samples_per_branch: usize,
) -> Result<Vec<MonotonicityReport>> {
    if is_zero_sum(p) {
        return Err(Error::ZeroDenominator { sum: p.a() + p.e() });
    }
    let n = p.n();
    let nf = n as f64;
    let b = slope_coefficient(p);
    let g = |phi: f64| (nf * phi).cos() / (nf * phi).sin() * phi.sin() - b * phi.cos();
    let samples = samples_per_branch.max(2);
    let width = PI / nf;
    let mut out = Vec::with_capacity(n);
    for ell in 1..=n {
        let left = (ell - 1) as f64 * width;
        let h = width / (samples + 1) as f64;
        let phis: Vec<f64> = (1..=samples).map(|j| left + j as f64 * h).collect();
        let values: Vec<f64> = phis.iter().map(|&phi| g(phi)).collect();
        let violations = (0..samples - 1)
            .filter(|&j| values[j + 1] > values[j])
            .map(|j| (0.5 * (phis[j] + phis[j + 1]), (values[j + 1] - values[j]) / h))
            .collect();
        out.push(MonotonicityReport {
            branch: ell,
            sample_count: samples,
            violations,
            slope_coefficient: b,
        });
    }
    Ok(out)
}
