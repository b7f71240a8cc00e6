//! Asymptotic stability of the consensus system `x' = -L (x - h)` and of
//! the flocking system `x'' = -alpha L (x - h) - beta L x'`.
//!
//! For decentralized parameters the large-`n` verdict is a sign rule on
//! `a + e` and `c + e`. It is combined with a check of the actual spectrum
//! at the given `n`. Two Laplacian modes can sit exponentially close to
//! their limits (the special roots near `y = 1/tau` and
//! `y = -e / sqrt(ac)`); their offsets are recovered exactly through
//! [`crate::perturb::root_deviation`] so that their signs are known even when
//! they are far below any floating-point tolerance around zero.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{is_decentralized_within, MatrixKind, SystemParams};
use crate::perturb::root_deviation;
use crate::spectrum::compute_spectrum;

const DECENTRALIZED_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    Unstable,
    Inconclusive,
}

/// What the spectrum at the given `n` says on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteCheck {
    /// Exactly the expected zero modes, all others strictly in the left half
    /// plane.
    Stable,
    /// Some mode strictly in the right half plane.
    Unstable,
    /// Extra modes within tolerance of zero, nothing strictly unstable.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondOrderParams {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityVerdict {
    pub stable: Stability,
    /// Which sign rule produced the asymptotic verdict.
    pub rule: String,
    /// The mode with the largest real part apart from the leader's zero
    /// mode(s).
    pub witness: Option<Complex64>,
    /// Modes within `1e-8 (a + c)` of zero, not counting those whose sign
    /// was resolved exactly.
    pub zero_multiplicity: usize,
    /// Largest real part over all modes except the leader's.
    pub spectral_abscissa: f64,
    /// Verdict of the sign rule alone.
    pub asymptotic: Stability,
    pub finite_n: FiniteCheck,
}

/// Tolerance for identifying a zero mode.
pub fn zero_tolerance(p: &SystemParams) -> f64 {
    1e-8 * (p.a() + p.c())
}

/// Eigenvalues of `-L`, leader mode first.
pub fn laplacian_spectrum(p: &SystemParams) -> Result<Vec<Complex64>> {
    Ok(compute_spectrum(p, MatrixKind::Laplacian)?.eigenvalues())
}

/// A mode of `-L` with a flag telling whether its value was resolved
/// beyond floating-point cancellation.
#[derive(Debug, Clone, Copy)]
struct Mode {
    value: Complex64,
    resolved: bool,
}

/// Modes of `-L` for decentralized parameters, excluding the leader's zero.
/// Special modes next to `a + c` and `-(ac/e + e)` are evaluated as their
/// limit plus the exact finite-`n` offset.
fn follower_modes(p: &SystemParams) -> Result<Vec<Mode>> {
    let spectrum = compute_spectrum(p, MatrixKind::Laplacian)?;
    let (a, c, e) = (p.a(), p.c(), p.e());
    let mut modes: Vec<Mode> = spectrum
        .bulk
        .iter()
        .map(|b| Mode {
            value: Complex64::new(b.r, 0.0),
            resolved: false,
        })
        .collect();
    let matching_root = 1.0 / p.tau();
    let reflected_root = -e / p.sqrt_ac();
    for s in &spectrum.special {
        // Limits of the two decentralized special modes, in closed form.
        let limit = if (s.seed - matching_root).norm() <= 1e-12 * matching_root {
            Some(0.0)
        } else if e != 0.0 && (s.seed - reflected_root).norm() <= 1e-12 * reflected_root.abs() {
            Some(-(a + e) * (c + e) / e)
        } else {
            None
        };
        let mode = match limit.map(|l| (l, root_deviation(p, s.seed))) {
            Some((l, Ok(dev))) => Mode {
                value: dev.eigenvalue_shift + l,
                resolved: true,
            },
            _ => Mode {
                value: s.r,
                resolved: false,
            },
        };
        modes.push(mode);
    }
    Ok(modes)
}

struct Summary {
    check: FiniteCheck,
    zero_multiplicity: usize,
    witness: Option<Complex64>,
    abscissa: f64,
}

/// Classifies a set of non-leader modes. `leader_zeros` is the number of
/// exact zero modes contributed by the leader.
fn summarize(modes: &[Mode], tol: f64, leader_zeros: usize) -> Summary {
    let is_zero = |m: &Mode| !m.resolved && m.value.norm() <= tol;
    let zeros = modes.iter().filter(|m| is_zero(m)).count();
    let witness = modes
        .iter()
        .max_by(|x, y| x.value.re.total_cmp(&y.value.re))
        .map(|m| m.value);
    let abscissa = witness.map_or(f64::NEG_INFINITY, |w| w.re);
    let unstable = modes
        .iter()
        .any(|m| if m.resolved { m.value.re > 0.0 } else { m.value.re > tol });
    let strictly_stable = modes
        .iter()
        .all(|m| if m.resolved { m.value.re < 0.0 } else { m.value.re < -tol });
    let check = if unstable {
        FiniteCheck::Unstable
    } else if strictly_stable {
        FiniteCheck::Stable
    } else {
        FiniteCheck::Undetermined
    };
    Summary {
        check,
        zero_multiplicity: zeros + leader_zeros,
        witness,
        abscissa,
    }
}

fn combine(rule: Stability, check: FiniteCheck) -> Stability {
    match (rule, check) {
        (Stability::Stable, FiniteCheck::Stable) => Stability::Stable,
        (Stability::Unstable, FiniteCheck::Unstable) | (Stability::Unstable, FiniteCheck::Undetermined) => {
            Stability::Unstable
        }
        _ => Stability::Inconclusive,
    }
}

fn sign_rule(p: &SystemParams) -> (Stability, &'static str) {
    let (a, c, e) = (p.a(), p.c(), p.e());
    let tol = 1e-12 * (a + c);
    if (a + e).abs() <= tol {
        (Stability::Inconclusive, "a+e=0")
    } else if a + e > 0.0 {
        (Stability::Stable, "a+e>0")
    } else if (c + e).abs() <= tol {
        (Stability::Inconclusive, "a+e<0, c+e=0")
    } else {
        (Stability::Unstable, "a+e<0, c+e!=0")
    }
}

fn require_decentralized(p: &SystemParams) -> Result<()> {
    if is_decentralized_within(p, DECENTRALIZED_TOL) {
        Ok(())
    } else {
        Err(Error::NotDecentralized)
    }
}

/// Verdict for `x' = -L (x - h)`.
pub fn first_order_verdict(p: &SystemParams) -> Result<StabilityVerdict> {
    require_decentralized(p)?;
    let (rule, tag) = sign_rule(p);
    let modes = follower_modes(p)?;
    let summary = summarize(&modes, zero_tolerance(p), 1);
    Ok(StabilityVerdict {
        stable: combine(rule, summary.check),
        rule: tag.to_string(),
        witness: summary.witness,
        zero_multiplicity: summary.zero_multiplicity,
        spectral_abscissa: summary.abscissa,
        asymptotic: rule,
        finite_n: summary.check,
    })
}

/// `nu_+- = (beta lambda +- sqrt(beta^2 lambda^2 + 4 alpha lambda)) / 2` for
/// every `lambda`, the roots of `nu^2 - beta lambda nu - alpha lambda = 0`.
pub fn second_order_eigenvalues(lambdas: &[Complex64], so: SecondOrderParams) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(2 * lambdas.len());
    for &lambda in lambdas {
        let bl = lambda * so.beta;
        let root = (bl * bl + lambda * (4.0 * so.alpha)).sqrt();
        out.push((bl + root) * 0.5);
        out.push((bl - root) * 0.5);
    }
    out
}

/// Verdict for `x'' = -alpha L (x - h) - beta L x'`.
///
/// Non-positive `alpha` or `beta` is unstable outright; otherwise the first
/// order sign rule applies. The leader contributes a double zero mode.
pub fn second_order_verdict(p: &SystemParams, so: SecondOrderParams) -> Result<StabilityVerdict> {
    require_decentralized(p)?;
    let (rule, tag) = if so.alpha <= 0.0 || so.beta <= 0.0 {
        (Stability::Unstable, "alpha<=0 or beta<=0")
    } else {
        sign_rule(p)
    };
    let modes: Vec<Mode> = follower_modes(p)?
        .into_iter()
        .flat_map(|m| {
            second_order_eigenvalues(&[m.value], so).into_iter().map(move |nu| Mode {
                value: nu,
                resolved: m.resolved,
            })
        })
        .collect();
    let summary = summarize(&modes, zero_tolerance(p), 2);
    Ok(StabilityVerdict {
        stable: combine(rule, summary.check),
        rule: tag.to_string(),
        witness: summary.witness,
        zero_multiplicity: summary.zero_multiplicity,
        spectral_abscissa: summary.abscissa,
        asymptotic: rule,
        finite_n: summary.check,
    })
}
