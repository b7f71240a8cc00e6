//! Scalar equations whose roots generate the spectrum of `Q`.
//!
//! An eigenpair of `Q` has the form `r = sqrt(ac) (y + 1/y)` with
//! `v_k = (tau y)^k - (tau / y)^k`, where `y` is a root of
//!
//! ```text
//! P(y) = (a y^2 - d tau y - e) y^(2n) + (e y^2 + d tau y - a).
//! ```
//!
//! Roots on the unit circle, `y = exp(i phi)`, are the zeros of the
//! cotangent equation
//!
//! ```text
//! cot(n phi) sin(phi) = d tau / (e + a) + (e - a) / (e + a) cos(phi)
//! ```
//!
//! on the branches `I_l = ((l-1) pi / n, l pi / n)`. The remaining roots
//! lie off the circle, close to the roots `y_+-` of `a y^2 - d tau y - e`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Relative threshold on `|e + a|` below which the closed form for
/// `a + e = 0` is used.
pub const ZERO_SUM_TOL: f64 = 1e-12;

/// A unit-circle root `y = exp(i phi)` of the polynomial, tagged with its
/// branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchRoot {
    /// Branch index, `1..=n`.
    pub ell: usize,
    pub phi: f64,
    /// `2 sqrt(ac) cos(phi)`.
    pub eigenvalue: f64,
}

impl BranchRoot {
    pub fn new(p: &SystemParams, ell: usize, phi: f64) -> Self {
        BranchRoot {
            ell,
            phi,
            eigenvalue: 2.0 * p.sqrt_ac() * phi.cos(),
        }
    }

    pub fn y(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phi)
    }
}

/// Roots of `a y^2 - d tau y - e`, square root taken with non-negative real
/// part.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticRoots {
    pub y_plus: Complex64,
    pub y_minus: Complex64,
}

impl QuadraticRoots {
    pub fn both(&self) -> [Complex64; 2] {
        [self.y_plus, self.y_minus]
    }
}

/// Asymptotic special eigenvalues `r_+-`. `None` marks the `e = 0` cases
/// where the limit does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialEigenEstimate {
    pub r_plus: Option<Complex64>,
    pub r_minus: Option<Complex64>,
}

/// Eigenvalues `x_+-` of the 2x2 transfer matrix of the eigenvector
/// recurrence at a given eigenvalue `r`, and `y = x_+ / tau`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferRoots {
    pub x_plus: Complex64,
    pub x_minus: Complex64,
    pub y: Complex64,
}

fn quad(p: &SystemParams, y: Complex64) -> Complex64 {
    let dt = p.d() * p.tau();
    y * (y * p.a() - dt) - p.e()
}

fn quad_prime(p: &SystemParams, y: Complex64) -> Complex64 {
    y * (2.0 * p.a()) - p.d() * p.tau()
}

/// `e y^2 + d tau y - a`, equal to `-y^2 quad(1/y)`.
fn mirror(p: &SystemParams, y: Complex64) -> Complex64 {
    let dt = p.d() * p.tau();
    y * (y * p.e() + dt) - p.a()
}

fn mirror_prime(p: &SystemParams, y: Complex64) -> Complex64 {
    y * (2.0 * p.e()) + p.d() * p.tau()
}

/// Coefficient scale used to normalize residuals.
pub(crate) fn coefficient_scale(p: &SystemParams) -> f64 {
    p.a().abs().max((p.d() * p.tau()).abs()).max(p.e().abs())
}

/// The polynomial `P(y) = (a y^2 - d tau y - e) y^(2n) + (e y^2 + d tau y - a)`.
///
/// This is the symmetric form multiplied through by `y^(n+1)`; it overflows
/// for `|y|^(2n)` beyond the `f64` range, use [`eval_scaled`] there.
pub fn eval_polynomial(p: &SystemParams, y: Complex64) -> Result<Complex64> {
    if y == Complex64::new(0.0, 0.0) {
        return Err(Error::DomainError("y = 0"));
    }
    let big = y.powi(2 * p.n() as i32);
    Ok(quad(p, y) * big + mirror(p, y))
}

/// Overflow-free evaluation of the polynomial and its derivative.
///
/// For `|y| >= 1` returns `P(y) / y^(2n)`, for `|y| < 1` returns `P(y)`; the
/// roots are the same in both cases.
pub fn eval_scaled(p: &SystemParams, y: Complex64) -> Result<(Complex64, Complex64)> {
    if y == Complex64::new(0.0, 0.0) {
        return Err(Error::DomainError("y = 0"));
    }
    let m = 2 * p.n() as i32;
    if y.norm() >= 1.0 {
        let inv = y.inv();
        let small = inv.powi(m);
        let q = mirror(p, y);
        let value = quad(p, y) + q * small;
        let deriv = quad_prime(p, y) + mirror_prime(p, y) * small - q * small * inv * m as f64;
        Ok((value, deriv))
    } else {
        let big = y.powi(m);
        let value = quad(p, y) * big + mirror(p, y);
        let deriv = quad_prime(p, y) * big
            + quad(p, y) * y.powi(m - 1) * m as f64
            + mirror_prime(p, y);
        Ok((value, deriv))
    }
}

/// Scaled residual `|P(y)| / (scale * max(|y|, 1/|y|)^(2n+2))`, dimensionless.
pub fn scaled_residual(p: &SystemParams, y: Complex64) -> Result<f64> {
    let (value, _) = eval_scaled(p, y)?;
    let r = y.norm();
    let weight = if r >= 1.0 { r * r } else { 1.0 };
    Ok(value.norm() / (coefficient_scale(p) * weight))
}

/// `B = (e - a) / (e + a)`, the slope coefficient of the cotangent equation.
pub fn slope_coefficient(p: &SystemParams) -> f64 {
    (p.e() - p.a()) / (p.e() + p.a())
}

/// True when `a + e` is treated as zero.
pub fn is_zero_sum(p: &SystemParams) -> bool {
    (p.e() + p.a()).abs() < ZERO_SUM_TOL * p.a()
}

/// Pole tolerance on `|sin(n phi)|` for [`eval_cotangent_residual`].
pub const POLE_TOL: f64 = 1e-14;

/// Left side minus right side of the cotangent equation.
pub fn eval_cotangent_residual(p: &SystemParams, phi: f64) -> Result<f64> {
    let sum = p.e() + p.a();
    if is_zero_sum(p) {
        return Err(Error::ZeroDenominator { sum });
    }
    let n = p.n() as f64;
    let s = (n * phi).sin();
    if s.abs() < POLE_TOL {
        return Err(Error::BranchPole { phi });
    }
    let lhs = (n * phi).cos() / s * phi.sin();
    let rhs = p.d() * p.tau() / sum + (p.e() - p.a()) / sum * phi.cos();
    Ok(lhs - rhs)
}

/// Pole-free cosine form
/// `(e + a) cos(n phi) sin(phi) - (d tau + (e - a) cos(phi)) sin(n phi)`.
///
/// Inside a branch `sin(n phi)` keeps one sign, so this has exactly the
/// zeros of the cotangent residual there.
pub fn eval_cosine_form(p: &SystemParams, phi: f64) -> f64 {
    let n = p.n() as f64;
    (p.e() + p.a()) * (n * phi).cos() * phi.sin()
        - (p.d() * p.tau() + (p.e() - p.a()) * phi.cos()) * (n * phi).sin()
}

pub fn quadratic_roots(p: &SystemParams) -> QuadraticRoots {
    let a = p.a();
    let dt = p.d() * p.tau();
    let disc = dt * dt + 4.0 * a * p.e();
    if disc >= 0.0 {
        let s = disc.sqrt();
        // Avoid cancellation: compute the larger root directly and the
        // other from the product y_+ y_- = -e / a.
        let (plus, minus) = if dt >= 0.0 {
            let big = (dt + s) / (2.0 * a);
            let small = if big != 0.0 { -p.e() / (a * big) } else { 0.0 };
            (big, small)
        } else {
            let big = (dt - s) / (2.0 * a);
            let small = if big != 0.0 { -p.e() / (a * big) } else { 0.0 };
            (small, big)
        };
        QuadraticRoots {
            y_plus: Complex64::new(plus, 0.0),
            y_minus: Complex64::new(minus, 0.0),
        }
    } else {
        let s = Complex64::new(disc, 0.0).sqrt();
        QuadraticRoots {
            y_plus: (s + dt) / (2.0 * a),
            y_minus: (-s + dt) / (2.0 * a),
        }
    }
}

/// Asymptotic special eigenvalues
/// `r_+- = ((1 - a/e) d +- (1 + a/e) sqrt(d^2 + 4 c e)) / 2`,
/// with the `e -> 0` limits `d + ac/d` (as `r_+` for `d > 0`, `r_-` for
/// `d < 0`).
pub fn special_eigen_estimates(p: &SystemParams) -> SpecialEigenEstimate {
    let (a, c, d, e) = (p.a(), p.c(), p.d(), p.e());
    if e != 0.0 {
        let root = Complex64::new(d * d + 4.0 * c * e, 0.0).sqrt();
        let base = Complex64::new(0.5 * (1.0 - a / e) * d, 0.0);
        let spread = root * (0.5 * (1.0 + a / e));
        SpecialEigenEstimate {
            r_plus: Some(base + spread),
            r_minus: Some(base - spread),
        }
    } else if d > 0.0 {
        SpecialEigenEstimate {
            r_plus: Some(Complex64::new(d + a * c / d, 0.0)),
            r_minus: None,
        }
    } else if d < 0.0 {
        SpecialEigenEstimate {
            r_plus: None,
            r_minus: Some(Complex64::new(d + a * c / d, 0.0)),
        }
    } else {
        SpecialEigenEstimate {
            r_plus: None,
            r_minus: None,
        }
    }
}

/// Maps a root `y` to its eigenvalue `sqrt(ac) (y + 1/y)`.
pub fn eigenvalue_of(p: &SystemParams, y: Complex64) -> Complex64 {
    (y + y.inv()) * p.sqrt_ac()
}

/// Roots of the transfer matrix `[[0, 1], [-tau^2, r tau^2 / a]]`.
pub fn transfer_roots(p: &SystemParams, r: Complex64) -> TransferRoots {
    let t2 = p.tau() * p.tau();
    let trace = r * (t2 / p.a());
    let disc = (trace * trace - 4.0 * t2).sqrt();
    let mut x_plus = (trace + disc) * 0.5;
    let mut x_minus = (trace - disc) * 0.5;
    // Recover the smaller root from the determinant when the difference
    // cancels.
    if x_plus.norm() >= x_minus.norm() {
        if x_plus.norm() > 0.0 {
            x_minus = Complex64::new(t2, 0.0) / x_plus;
        }
    } else if x_minus.norm() > 0.0 {
        x_plus = Complex64::new(t2, 0.0) / x_minus;
    }
    TransferRoots {
        x_plus,
        x_minus,
        y: x_plus / p.tau(),
    }
}

/// Tuning for [`find_branch_roots_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    /// Minimum samples per branch.
    pub min_samples: usize,
    /// Samples per unit of `|B|`, `B = (e - a) / (e + a)`.
    pub samples_per_slope: usize,
    /// Hard cap on samples per branch.
    pub max_samples: usize,
    /// Bracket width at which bisection hands over to the secant polish.
    pub bisect_width: f64,
    /// Absolute terminal tolerance on `phi`.
    pub tol_phi: f64,
    /// Brackets are clipped by `edge_delta / n` at both branch ends.
    pub edge_delta: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings {
            min_samples: 32,
            samples_per_slope: 8,
            max_samples: 1 << 14,
            bisect_width: 1e-3,
            tol_phi: 1e-13,
            edge_delta: 1e-9,
        }
    }
}

impl ScanSettings {
    pub fn samples_for(&self, p: &SystemParams) -> usize {
        let b = slope_coefficient(p).abs();
        let by_slope = if b.is_finite() {
            self.samples_per_slope.saturating_mul(b.ceil() as usize)
        } else {
            self.max_samples
        };
        self.min_samples.max(by_slope).min(self.max_samples)
    }

    /// Copy with the per-branch sample counts multiplied by `factor`.
    pub fn refined(&self, factor: usize) -> Self {
        ScanSettings {
            min_samples: self.min_samples * factor,
            samples_per_slope: self.samples_per_slope * factor,
            max_samples: self.max_samples * factor,
            ..*self
        }
    }
}

/// Unit-circle roots of the polynomial, one scan per branch, with default
/// settings.
pub fn find_branch_roots(p: &SystemParams) -> Result<Vec<BranchRoot>> {
    find_branch_roots_with(p, &ScanSettings::default())
}

/// Scans each branch `I_l` for sign changes of the cosine form, then polishes
/// every bracket by bisection followed by a safeguarded secant.
///
/// Roots at `phi = 0` or `phi = pi` (`y = +-1`) are never emitted. Fails with
/// [`Error::RootCountAnomaly`] if more than `n` roots turn up, which no
/// parameter set admits.
pub fn find_branch_roots_with(p: &SystemParams, settings: &ScanSettings) -> Result<Vec<BranchRoot>> {
    let sum = p.e() + p.a();
    if is_zero_sum(p) {
        return Err(Error::ZeroDenominator { sum });
    }
    let n = p.n();
    let width = PI / n as f64;
    let delta = settings.edge_delta / n as f64;
    let samples = settings.samples_for(p).max(2);
    let f = |phi: f64| eval_cosine_form(p, phi);

    let mut roots = Vec::new();
    let mut values = vec![0.0; samples];
    for ell in 1..=n {
        let left = (ell - 1) as f64 * width;
        let right = ell as f64 * width;
        let lo = left + delta;
        let hi = right - delta;
        let step = (hi - lo) / (samples - 1) as f64;
        let grid = |j: usize| if j + 1 == samples { hi } else { lo + j as f64 * step };
        for (j, v) in values.iter_mut().enumerate() {
            *v = f(grid(j));
        }
        let mut j = 0;
        while j < samples {
            if values[j] == 0.0 {
                roots.push(grid(j));
                j += 1;
                continue;
            }
            if j + 1 < samples && values[j + 1] != 0.0 && values[j].signum() != values[j + 1].signum() {
                let root = polish(f, grid(j), grid(j + 1), values[j], values[j + 1], settings);
                roots.push(root);
            }
            j += 1;
        }
        // Attach branch labels and validate roots hugging an endpoint, where
        // the cotangent form is meaningless.
        let start = roots.len() - roots.iter().rev().take_while(|phi| **phi >= lo - delta).count();
        let mut kept = Vec::new();
        for &phi in &roots[start..] {
            let near_edge = (phi - left) < 10.0 * delta || (right - phi) < 10.0 * delta;
            if near_edge {
                let y = Complex64::from_polar(1.0, phi);
                if scaled_residual(p, y)? > 1e-8 {
                    continue;
                }
            }
            kept.push(phi);
        }
        roots.truncate(start);
        roots.extend(kept);
    }

    let out: Vec<BranchRoot> = roots
        .into_iter()
        .map(|phi| {
            let ell = ((phi / width).floor() as usize + 1).clamp(1, n);
            BranchRoot::new(p, ell, phi)
        })
        .collect();
    if out.len() > n {
        return Err(Error::RootCountAnomaly {
            n,
            branch: out.len(),
            special: 0,
            rejected: Vec::new(),
        });
    }
    Ok(out)
}

fn polish<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    mut flo: f64,
    fhi: f64,
    settings: &ScanSettings,
) -> f64 {
    debug_assert!(flo.signum() != fhi.signum());
    while hi - lo > settings.bisect_width {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let fhi = f(hi);
    let (mut x0, mut f0) = (lo, flo);
    let (mut x1, mut f1) = (hi, fhi);
    for _ in 0..200 {
        let mut x = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let step = (x - x1).abs();
        x0 = x1;
        f0 = f1;
        x1 = x;
        f1 = fx;
        if step <= settings.tol_phi || hi - lo <= settings.tol_phi {
            return x;
        }
    }
    0.5 * (lo + hi)
}

/// Tuning for [`refine_special_root_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonSettings {
    /// Relative step tolerance.
    pub tol_root: f64,
    pub max_iter: usize,
    /// Converged roots closer than this to the unit circle are rejected.
    pub circle_margin: f64,
    /// Iterates are held at least this far outside the unit circle.
    pub damping_floor: f64,
    /// Scaled residual required at convergence.
    pub residual_tol: f64,
}

impl Default for NewtonSettings {
    fn default() -> Self {
        NewtonSettings {
            tol_root: 1e-14,
            max_iter: 100,
            circle_margin: 1e-9,
            damping_floor: 1e-12,
            residual_tol: 1e-10,
        }
    }
}

pub fn refine_special_root(p: &SystemParams, seed: Complex64) -> Result<Complex64> {
    refine_special_root_with(p, seed, &NewtonSettings::default())
}

/// Newton's method on the scaled polynomial, confined to `|y| > 1`.
///
/// Steps that would cross into the unit disc are halved. An iteration that
/// stalls against the circle without reaching a root reports
/// [`Error::NoConvergence`]; a genuine root within `circle_margin` of the
/// circle reports [`Error::UnitCircleCollapse`].
pub fn refine_special_root_with(
    p: &SystemParams,
    seed: Complex64,
    settings: &NewtonSettings,
) -> Result<Complex64> {
    if seed.norm().is_nan() || seed.norm() <= 1.0 {
        return Err(Error::DomainError("seed must lie outside the unit circle"));
    }
    let floor = 1.0 + settings.damping_floor;
    let mut y = seed;
    for it in 0..settings.max_iter {
        let (g, dg) = eval_scaled(p, y)?;
        if g == Complex64::new(0.0, 0.0) {
            return accept(p, y, settings);
        }
        if dg.norm() == 0.0 || !dg.is_finite() {
            return Err(Error::NoConvergence {
                iterations: it,
                last: y,
            });
        }
        let step = g / dg;
        let mut t = 1.0;
        let mut next = y - step;
        let mut halvings = 0;
        while next.norm().is_nan() || next.norm() <= floor {
            t *= 0.5;
            halvings += 1;
            if halvings > 60 {
                return Err(Error::NoConvergence {
                    iterations: it,
                    last: y,
                });
            }
            next = y - step * t;
        }
        let moved = (next - y).norm();
        y = next;
        // Rounding in g limits how well a root with small g' can be located.
        let noise = 8.0 * f64::EPSILON * coefficient_scale(p) * y.norm_sqr().max(1.0) / dg.norm();
        if moved <= (settings.tol_root * y.norm()).max(noise) {
            // A damped final step means the iterate is pinned against the
            // circle (typically drawn to the trivial roots y = +-1), not
            // converging to an exterior root.
            if t == 1.0 && scaled_residual(p, y)? <= settings.residual_tol {
                return accept(p, y, settings);
            }
            return Err(Error::NoConvergence {
                iterations: it + 1,
                last: y,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: settings.max_iter,
        last: y,
    })
}

fn accept(_p: &SystemParams, y: Complex64, settings: &NewtonSettings) -> Result<Complex64> {
    if y.norm() < 1.0 + settings.circle_margin {
        return Err(Error::UnitCircleCollapse { modulus: y.norm() });
    }
    Ok(y)
}
