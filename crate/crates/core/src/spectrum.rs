//! Regime classification and assembly of the full spectrum.
//!
//! The spectrum of `Q` splits into *bulk* eigenvalues `2 sqrt(ac) cos(phi)`
//! from unit-circle roots and *special* eigenvalues from roots off the
//! circle. Which special roots exist for large `n` depends only on
//! `(a, c, d, e)` through the thresholds `+-(a - e) sqrt(c/a)` and
//! `+-2 sqrt(|ce|)`; [`classify_regime`] encodes those case splits and
//! [`compute_spectrum`] uses them to seed the special-root refinement.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::charpoly::{
    self, eigenvalue_of, find_branch_roots_with, is_zero_sum, quadratic_roots, refine_special_root,
    special_eigen_estimates, BranchRoot, ScanSettings,
};
use crate::error::{Error, Result};
use crate::model::{is_decentralized_within, DenseMatrix, MatrixKind, SystemParams};
use crate::oracle;

/// Relative tolerance used to recognize decentralized parameters.
const DECENTRALIZED_TOL: f64 = 1e-12;

/// Range of the boundary weight `e` relative to `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryRegime {
    /// `-a < e <= a`.
    Moderate,
    /// `e > a`.
    Strong,
    /// `e < -a`.
    Reversed,
    /// `a + e = 0`; the polynomial factors and the spectrum is explicit.
    Cancelling,
}

/// Case index within a regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeCase {
    One,
    Two,
    Three,
    /// Reversed regime, case 2 with `d <= -2 sqrt(|ce|)`: two real
    /// negative special roots.
    TwoA,
    /// Reversed regime, case 2 with `|d| < 2 sqrt(|ce|)`: a complex pair.
    TwoB,
    /// Reversed regime, case 2 with `d >= 2 sqrt(|ce|)`: two real positive
    /// special roots.
    TwoC,
}

impl RegimeCase {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeCase::One => "1",
            RegimeCase::Two => "2",
            RegimeCase::Three => "3",
            RegimeCase::TwoA => "2a",
            RegimeCase::TwoB => "2b",
            RegimeCase::TwoC => "2c",
        }
    }
}

impl Serialize for RegimeCase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Row of the decentralized special-eigenvalue table, by `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellRow {
    /// `e < -a`.
    BelowMinusA,
    /// `|e| <= a`.
    WithinA,
    /// `e > a`.
    AboveA,
}

/// Column of the decentralized table, by `c` against `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellColumn {
    CBelowA,
    CEqualsA,
    CAboveA,
}

/// Position in the decentralized table and the special eigenvalues it
/// predicts for large `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecentralizedCell {
    pub row: CellRow,
    pub column: CellColumn,
    pub predicted: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeLabel {
    pub regime: BoundaryRegime,
    pub case: RegimeCase,
    pub decentralized_cell: Option<DecentralizedCell>,
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.regime {
            BoundaryRegime::Moderate => "moderate",
            BoundaryRegime::Strong => "strong",
            BoundaryRegime::Reversed => "reversed",
            BoundaryRegime::Cancelling => "cancelling",
        };
        write!(f, "{name} case {}", self.case.as_str())
    }
}

/// Which quadratic roots are expected to seed special eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Seeds {
    None,
    Plus,
    Minus,
    Both,
}

fn seeds_for(label: &RegimeLabel) -> Seeds {
    use BoundaryRegime::*;
    use RegimeCase::*;
    match (label.regime, label.case) {
        (Moderate, One) | (Strong, One) | (Reversed, Three) => Seeds::Plus,
        (Moderate, Three) | (Strong, Three) | (Reversed, One) => Seeds::Minus,
        (Strong, Two) | (Reversed, TwoA) | (Reversed, TwoB) | (Reversed, TwoC) => Seeds::Both,
        _ => Seeds::None,
    }
}

/// Quadratic roots that the regime expects to turn into special roots for
/// large `n`. Empty when `a + e = 0`, where the extra root is explicit.
pub fn predicted_seeds(p: &SystemParams) -> Vec<Complex64> {
    let label = classify_regime(p);
    let quad = quadratic_roots(p);
    match seeds_for(&label) {
        Seeds::None => vec![],
        Seeds::Plus => vec![quad.y_plus],
        Seeds::Minus => vec![quad.y_minus],
        Seeds::Both => vec![quad.y_plus, quad.y_minus],
    }
}

/// Case split by the thresholds on `d`.
///
/// Where two cases overlap at an equality the earlier case wins.
pub fn classify_regime(p: &SystemParams) -> RegimeLabel {
    let (a, c, d, e) = (p.a(), p.c(), p.d(), p.e());
    let theta = (a - e) * (c / a).sqrt();
    let (regime, case) = if is_zero_sum(p) {
        let dt = d * p.tau();
        let case = if 2.0 * a < dt {
            RegimeCase::One
        } else if dt >= -2.0 * a {
            RegimeCase::Two
        } else {
            RegimeCase::Three
        };
        (BoundaryRegime::Cancelling, case)
    } else if e > a {
        // theta < 0 here.
        let case = if -theta <= d {
            RegimeCase::One
        } else if theta < d {
            RegimeCase::Two
        } else {
            RegimeCase::Three
        };
        (BoundaryRegime::Strong, case)
    } else if e < -a {
        // theta > 0 here.
        let case = if d <= -theta {
            RegimeCase::One
        } else if d < theta {
            let edge = 2.0 * (c * e).abs().sqrt();
            if d <= -edge {
                RegimeCase::TwoA
            } else if d < edge {
                RegimeCase::TwoB
            } else {
                RegimeCase::TwoC
            }
        } else {
            RegimeCase::Three
        };
        (BoundaryRegime::Reversed, case)
    } else {
        let case = if theta < d {
            RegimeCase::One
        } else if -theta <= d {
            RegimeCase::Two
        } else {
            RegimeCase::Three
        };
        (BoundaryRegime::Moderate, case)
    };
    let decentralized_cell = if is_decentralized_within(p, DECENTRALIZED_TOL) {
        Some(decentralized_cell(a, c, e))
    } else {
        None
    };
    RegimeLabel {
        regime,
        case,
        decentralized_cell,
    }
}

/// Special eigenvalues of a decentralized system for large `n`, tabulated
/// by the sign and size of `e` and the order of `c` and `a`.
pub fn decentralized_cell(a: f64, c: f64, e: f64) -> DecentralizedCell {
    let g = (a * c).sqrt();
    let reflected = -(a * c / e + e);
    let matching = a + c;
    let row = if e < -a {
        CellRow::BelowMinusA
    } else if e <= a {
        CellRow::WithinA
    } else {
        CellRow::AboveA
    };
    let column = if c < a {
        CellColumn::CBelowA
    } else if c == a {
        CellColumn::CEqualsA
    } else {
        CellColumn::CAboveA
    };
    let predicted = match (row, column) {
        (CellRow::BelowMinusA, CellColumn::CBelowA) | (CellRow::BelowMinusA, CellColumn::CEqualsA) => {
            vec![reflected]
        }
        (CellRow::BelowMinusA, CellColumn::CAboveA) => {
            if e < -g {
                vec![matching, reflected]
            } else {
                vec![matching]
            }
        }
        (CellRow::WithinA, CellColumn::CBelowA) => {
            if e.abs() <= g {
                vec![]
            } else {
                vec![reflected]
            }
        }
        (CellRow::WithinA, CellColumn::CEqualsA) => vec![],
        (CellRow::WithinA, CellColumn::CAboveA) => vec![matching],
        (CellRow::AboveA, CellColumn::CBelowA) => vec![reflected],
        (CellRow::AboveA, CellColumn::CEqualsA) => vec![reflected, 2.0 * a],
        (CellRow::AboveA, CellColumn::CAboveA) => {
            if e <= g {
                vec![matching]
            } else {
                vec![reflected, matching]
            }
        }
    };
    DecentralizedCell { row, column, predicted }
}

/// One bulk eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BulkEigenvalue {
    pub ell: usize,
    pub phi: f64,
    pub r: f64,
}

/// One special eigenvalue with the seed it was refined from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialEigenvalue {
    /// Starting point of the refinement (a root of `a y^2 - d tau y - e`).
    pub seed: Complex64,
    /// Large-`n` limit of the eigenvalue, when it exists.
    pub estimate: Option<Complex64>,
    /// Refined root of the full polynomial.
    pub y: Complex64,
    pub r: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub kind: MatrixKind,
    pub n: usize,
    pub params: SystemParams,
    pub regime: RegimeLabel,
    /// Eigenvalue of the leader block (`b`, shifted for the Laplacian kind);
    /// absent for the reduced matrix.
    pub leader: Option<f64>,
    pub bulk: Vec<BulkEigenvalue>,
    pub special: Vec<SpecialEigenvalue>,
    /// Eigenvalues computed by dense QR, used for the Laplacian when the row
    /// sums differ and no shift relates it to `A`.
    pub direct: Vec<Complex64>,
    /// Amount subtracted from every eigenvalue of `A` (`a + c` for the
    /// decentralized Laplacian kind, otherwise 0).
    pub shift: f64,
}

impl Spectrum {
    /// Every eigenvalue: leader first, then bulk, special, and direct.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.len());
        out.extend(self.leader.map(|r| Complex64::new(r, 0.0)));
        out.extend(self.bulk.iter().map(|b| Complex64::new(b.r, 0.0)));
        out.extend(self.special.iter().map(|s| s.r));
        out.extend(self.direct.iter().copied());
        out
    }

    pub fn len(&self) -> usize {
        self.leader.is_some() as usize + self.bulk.len() + self.special.len() + self.direct.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// One eigenvalue per line as `re,im,label` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,label\n");
        let mut row = |z: Complex64, label: &str| {
            out.push_str(&format!("{:.16e},{:.16e},{}\n", z.re, z.im, label));
        };
        if let Some(r) = self.leader {
            row(Complex64::new(r, 0.0), "leader");
        }
        for b in &self.bulk {
            row(Complex64::new(b.r, 0.0), "bulk");
        }
        for s in &self.special {
            row(s.r, "special");
        }
        for z in &self.direct {
            row(*z, "direct");
        }
        out
    }
}

/// Full spectrum of the selected matrix.
///
/// For `Full` and `Reduced` the bulk comes from the branch scan and the
/// special roots are refined from the seeds the regime predicts. If the
/// count comes out wrong the scan is repeated with finer sampling and the
/// remaining quadratic roots are tried as seeds before giving up with
/// [`Error::RootCountAnomaly`]. For `Laplacian` the eigenvalues are those of
/// `-L`: shifted by `a + c` in the decentralized case, computed by dense QR
/// otherwise.
pub fn compute_spectrum(p: &SystemParams, kind: MatrixKind) -> Result<Spectrum> {
    let regime = classify_regime(p);
    let mut out = Spectrum {
        kind,
        n: p.n(),
        params: *p,
        regime,
        leader: None,
        bulk: Vec::new(),
        special: Vec::new(),
        direct: Vec::new(),
        shift: 0.0,
    };
    if kind == MatrixKind::Laplacian && !is_decentralized_within(p, DECENTRALIZED_TOL) {
        out.direct = oracle::qr_spectrum(p, MatrixKind::Laplacian)?;
        return Ok(out);
    }
    let (bulk, special) = reduced_roots(p, &out.regime)?;
    let shift = if kind == MatrixKind::Laplacian {
        p.a() + p.c()
    } else {
        0.0
    };
    out.shift = shift;
    if kind != MatrixKind::Reduced {
        out.leader = Some(p.b() - shift);
    }
    out.bulk = bulk
        .into_iter()
        .map(|b| BulkEigenvalue {
            ell: b.ell,
            phi: b.phi,
            r: b.eigenvalue - shift,
        })
        .collect();
    out.special = special
        .into_iter()
        .map(|s| SpecialEigenvalue { r: s.r - shift, ..s })
        .collect();
    Ok(out)
}

fn cancelling_roots(p: &SystemParams, label: &RegimeLabel) -> (Vec<BranchRoot>, Vec<SpecialEigenvalue>) {
    let n = p.n();
    let bulk = (2..=n)
        .map(|ell| BranchRoot::new(p, ell, (ell - 1) as f64 * std::f64::consts::PI / n as f64))
        .collect();
    // The quadratic factor a y^2 - d tau y + a has reciprocal roots, and
    // y + 1/y = d tau / a, so the extra eigenvalue is exactly d.
    let a = p.a();
    let dt = p.d() * p.tau();
    let root = Complex64::new(dt * dt - 4.0 * a * a, 0.0).sqrt();
    let y = match label.case {
        RegimeCase::Three => (Complex64::new(dt, 0.0) - root) / (2.0 * a),
        _ => (Complex64::new(dt, 0.0) + root) / (2.0 * a),
    };
    let special = vec![SpecialEigenvalue {
        seed: y,
        estimate: None,
        y,
        r: Complex64::new(p.d(), 0.0),
    }];
    (bulk, special)
}

/// The two special roots when the quadratic has a (near) double root `y0`
/// outside the unit circle.
///
/// Near `y0` the scaled equation reads `a (y - y0)^2 + q(y0) y0^(-2n) = 0`
/// with `q(y) = e y^2 + d tau y - a`, so the roots split as `y0 +- delta`.
/// Newton resolves them when `delta` is representable next to `y0`; below
/// that the first-order split is already exact to rounding.
fn split_double_root(p: &SystemParams, quad: &charpoly::QuadraticRoots) -> Option<[Complex64; 2]> {
    let y0 = (quad.y_plus + quad.y_minus) * 0.5;
    if (quad.y_plus - quad.y_minus).norm() > 1e-6 * y0.norm() || y0.norm() <= 1.0 + 1e-9 {
        return None;
    }
    let q = y0 * (y0 * p.e() + p.d() * p.tau()) - p.a();
    let delta = (-q / p.a()).sqrt() * (-(p.n() as f64) * y0.ln()).exp();
    let guesses = [y0 + delta, y0 - delta];
    if delta.norm() <= 1e-7 * y0.norm() {
        return Some(guesses);
    }
    let refined = guesses.map(|g| refine_special_root(p, g).unwrap_or(g));
    if (refined[0] - refined[1]).norm() > delta.norm() {
        Some(refined)
    } else {
        Some(guesses)
    }
}

fn is_new(found: &[SpecialEigenvalue], y: Complex64) -> bool {
    found.iter().all(|s| (s.y - y).norm() > 1e-8 * y.norm())
}

fn reduced_roots(p: &SystemParams, label: &RegimeLabel) -> Result<(Vec<BranchRoot>, Vec<SpecialEigenvalue>)> {
    if label.regime == BoundaryRegime::Cancelling {
        return Ok(cancelling_roots(p, label));
    }
    let n = p.n();
    let quad = quadratic_roots(p);
    let est = special_eigen_estimates(p);
    let plus = (quad.y_plus, est.r_plus);
    let minus = (quad.y_minus, est.r_minus);
    let predicted: Vec<(Complex64, Option<Complex64>)> = match seeds_for(label) {
        Seeds::None => vec![],
        Seeds::Plus => vec![plus],
        Seeds::Minus => vec![minus],
        Seeds::Both => vec![plus, minus],
    };

    let mut special = Vec::new();
    let mut rejected = Vec::new();
    let mut try_seed = |seed: Complex64, estimate: Option<Complex64>, special: &mut Vec<SpecialEigenvalue>| {
        if seed.norm() <= 1.0 {
            rejected.push((seed, "seed inside the unit circle".to_string()));
            return;
        }
        match refine_special_root(p, seed) {
            Ok(y) if is_new(special, y) => special.push(SpecialEigenvalue {
                seed,
                estimate,
                y,
                r: eigenvalue_of(p, y),
            }),
            Ok(_) => {}
            Err(err) => rejected.push((seed, err.to_string())),
        }
    };
    match split_double_root(p, &quad) {
        Some(pair) if !predicted.is_empty() => {
            let seed = (quad.y_plus + quad.y_minus) * 0.5;
            for y in pair {
                special.push(SpecialEigenvalue {
                    seed,
                    estimate: est.r_plus,
                    y,
                    r: eigenvalue_of(p, y),
                });
            }
        }
        _ => {
            for &(seed, estimate) in &predicted {
                try_seed(seed, estimate, &mut special);
            }
        }
    }

    let base = ScanSettings::default();
    let mut bulk = Vec::new();
    for factor in [1, 4, 16] {
        bulk = match find_branch_roots_with(p, &base.refined(factor)) {
            Ok(b) => b,
            Err(Error::RootCountAnomaly { .. }) => continue,
            Err(e) => return Err(e),
        };
        if bulk.len() + special.len() == n {
            return Ok((bulk, special));
        }
    }

    // At moderate n a special root can exist slightly before (or after) the
    // thresholds say it should. Try the remaining quadratic roots and points
    // just outside y = +-1.
    if bulk.len() + special.len() < n {
        let nf = n as f64;
        let mut extra: Vec<(Complex64, Option<Complex64>)> = [plus, minus]
            .into_iter()
            .filter(|(y, _)| !predicted.iter().any(|(q, _)| q == y))
            .collect();
        for s in [4.0, 1.0, 0.25] {
            extra.push((Complex64::new(1.0 + s / nf, 0.0), None));
            extra.push((Complex64::new(-1.0 - s / nf, 0.0), None));
        }
        for (seed, estimate) in extra {
            if bulk.len() + special.len() >= n {
                break;
            }
            try_seed(seed, estimate, &mut special);
        }
        if bulk.len() + special.len() == n {
            return Ok((bulk, special));
        }
    }
    Err(Error::RootCountAnomaly {
        n,
        branch: bulk.len(),
        special: special.len(),
        rejected,
    })
}

/// Eigenvalue with an eigenvector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub eigenvalue: Complex64,
    pub vector: Vec<Complex64>,
}

/// Distance of a root from `+-1` below which [`eigenvector_for`] refuses.
pub const DEGENERATE_ROOT_TOL: f64 = 1e-8;

/// Eigenvector of `Q` for a root `y`: `v_k = (tau y)^k - (tau / y)^k`,
/// `k = 1..n`, scaled to unit norm.
///
/// Evaluated through logarithms so that `tau^n` never materializes.
pub fn eigenvector_for(p: &SystemParams, y: Complex64) -> Result<EigenPair> {
    if y.norm() == 0.0 || !y.is_finite() {
        return Err(Error::DomainError("y must be finite and nonzero"));
    }
    if (y - 1.0).norm() < DEGENERATE_ROOT_TOL || (y + 1.0).norm() < DEGENERATE_ROOT_TOL {
        return Err(Error::DegenerateRoot { y });
    }
    let up = (y * p.tau()).ln();
    let down = (y.inv() * p.tau()).ln();
    let n = p.n();
    let top = (1..=n)
        .map(|k| (k as f64 * up.re).max(k as f64 * down.re))
        .fold(f64::NEG_INFINITY, f64::max);
    let vector: Vec<Complex64> = (1..=n)
        .map(|k| {
            let k = k as f64;
            (up * k - top).exp() - (down * k - top).exp()
        })
        .collect();
    Ok(EigenPair {
        eigenvalue: eigenvalue_of(p, y),
        vector: normalized(vector),
    })
}

fn normalized(mut v: Vec<Complex64>) -> Vec<Complex64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
    v
}

/// Eigenvector of `A` for the leader eigenvalue `b`, indices `0..=n`.
///
/// Interior rows force `v_k = x_+^k + c_- x_-^k` with `x_+-` the roots of
/// `c x^2 - b x + a`; the last row fixes
/// `c_- = -(x_+/x_-)^(n-1) ((a+e) + (d-b) x_+) / ((a+e) + (d-b) x_-)`.
/// Decentralized parameters give the constant vector.
pub fn leader_eigenvector(p: &SystemParams) -> Result<EigenPair> {
    let (a, b, c, d, e, n) = (p.a(), p.b(), p.c(), p.d(), p.e(), p.n());
    let eigenvalue = Complex64::new(b, 0.0);
    // Checked first: the constant vector is exact even when b^2 = 4ac
    // (a = c in the decentralized case).
    if is_decentralized_within(p, DECENTRALIZED_TOL) {
        return Ok(EigenPair {
            eigenvalue,
            vector: vec![Complex64::new(1.0, 0.0); n + 1],
        });
    }
    let disc = b * b - 4.0 * a * c;
    if disc.abs() < 1e-12 * (b * b).max(4.0 * a * c) {
        return Err(Error::DiscriminantCollapse { discriminant: disc });
    }
    let root = Complex64::new(disc, 0.0).sqrt();
    let x_plus = (root + b) / (2.0 * c);
    let x_minus = (-root + b) / (2.0 * c);
    let boundary = |x: Complex64| (x * (d - b)) + (a + e);
    let (f_plus, f_minus) = (boundary(x_plus), boundary(x_minus));
    let (lp, lm) = (x_plus.ln(), x_minus.ln());

    let logs: Vec<(Option<Complex64>, Option<Complex64>)> = if f_minus.norm() == 0.0 {
        (0..=n).map(|k| (None, Some(lm * k as f64))).collect()
    } else if f_plus.norm() == 0.0 {
        (0..=n).map(|k| (Some(lp * k as f64), None)).collect()
    } else {
        let log_coeff = (-f_plus / f_minus).ln() + (lp - lm) * (n as f64 - 1.0);
        (0..=n)
            .map(|k| (Some(lp * k as f64), Some(log_coeff + lm * k as f64)))
            .collect()
    };
    let top = logs
        .iter()
        .flat_map(|(u, w)| u.iter().chain(w.iter()).map(|z| z.re))
        .fold(f64::NEG_INFINITY, f64::max);
    let vector = logs
        .into_iter()
        .map(|(u, w)| {
            u.map_or(Complex64::new(0.0, 0.0), |u| (u - top).exp())
                + w.map_or(Complex64::new(0.0, 0.0), |w| (w - top).exp())
        })
        .collect();
    Ok(EigenPair {
        eigenvalue,
        vector: normalized(vector),
    })
}

/// `||M v - r v||_2 / (||M||_F ||v||_2)`.
pub fn residual(m: &DenseMatrix, r: Complex64, v: &[Complex64]) -> Result<f64> {
    let order = m.order();
    if v.len() != order {
        return Err(Error::DimensionMismatch {
            expected: order,
            got: v.len(),
        });
    }
    let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if vnorm == 0.0 {
        return Err(Error::DomainError("zero vector"));
    }
    let mut err = 0.0;
    for i in 0..order {
        let mv: Complex64 = m.row(i).iter().zip(v).map(|(&mij, &vj)| vj * mij).sum();
        err += (mv - r * v[i]).norm_sqr();
    }
    let mnorm = m.frobenius_norm();
    if mnorm == 0.0 {
        return Ok(err.sqrt() / vnorm);
    }
    Ok(err.sqrt() / (mnorm * vnorm))
}

pub use charpoly::SpecialEigenEstimate;
