//! Independent eigenvalue computations used to check the closed-form path.
//!
//! Two unrelated methods are provided: Francis QR on the dense matrix and
//! Aberth-Ehrlich iteration on the characteristic polynomial. Neither uses the scalar
//! equations of [`crate::charpoly`].

mod pairing;
mod polyroots;
mod qr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::model::{build_matrix, DenseMatrix, MatrixKind, SystemParams};
use crate::spectrum::{classify_regime, compute_spectrum, RegimeLabel};

pub use pairing::{matched_distance, pair_multisets};
pub use polyroots::{polynomial_eigenvalues, tridiagonal_charpoly, MAX_SWEEPS};
pub use qr::qr_eigenvalues;

use polyroots::{tridiagonal_eigenvalues, Tridiagonal};

/// Above this dimension the polynomial path is skipped.
pub const POLYNOMIAL_MAX_N: usize = 400;

/// Outcome of [`cross_validate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    /// Largest matched distance between the closed-form spectrum and QR.
    pub max_pairing_error: f64,
    /// Largest matched distance between QR and the polynomial roots; `None`
    /// when `n` exceeds [`POLYNOMIAL_MAX_N`].
    pub method_agreement: Option<f64>,
    pub n: usize,
    pub regime: RegimeLabel,
}

/// Diagonal similarity scaling entry `(i, j)` by `tau^(j - i)`.
///
/// Makes the interior off-diagonals both equal to `sqrt(ac)`. Only the
/// tridiagonal band is touched, which is where the family has its nonzeros.
pub fn balanced_matrix(p: &SystemParams, kind: MatrixKind) -> DenseMatrix {
    let mut m = build_matrix(p, kind);
    let tau = p.tau();
    let order = m.order();
    for i in 0..order {
        if i + 1 < order {
            m[(i, i + 1)] *= tau;
            m[(i + 1, i)] /= tau;
        }
    }
    m
}

/// Monic characteristic polynomial of the selected matrix, ascending
/// coefficients, from the tridiagonal determinant recurrence.
pub fn charpoly_coeffs(p: &SystemParams, kind: MatrixKind) -> Vec<f64> {
    let m = build_matrix(p, kind);
    let order = m.order();
    let diag: Vec<f64> = (0..order).map(|i| m[(i, i)]).collect();
    let sub: Vec<f64> = (1..order).map(|i| m[(i, i - 1)]).collect();
    let sup: Vec<f64> = (1..order).map(|i| m[(i - 1, i)]).collect();
    tridiagonal_charpoly(&diag, &sub, &sup)
}

/// Eigenvalues of the selected matrix by QR on its balanced form.
pub fn qr_spectrum(p: &SystemParams, kind: MatrixKind) -> Result<Vec<Complex64>> {
    qr_eigenvalues(&balanced_matrix(p, kind))
}

/// Eigenvalues of the selected matrix as roots of its characteristic
/// polynomial. The polynomial is evaluated by recurrence, not from
/// coefficients, so it stays usable well beyond `n = 30` where the
/// coefficient form loses all accuracy.
pub fn polynomial_spectrum(p: &SystemParams, kind: MatrixKind) -> Result<Vec<Complex64>> {
    tridiagonal_eigenvalues(&Tridiagonal::from_matrix(&balanced_matrix(p, kind)))
}

/// Compares the closed-form spectrum against QR, and QR against the
/// polynomial roots when `n <= 400`.
pub fn cross_validate(p: &SystemParams, kind: MatrixKind) -> Result<ValidationReport> {
    let theory = compute_spectrum(p, kind)?.eigenvalues();
    let qr = qr_spectrum(p, kind)?;
    let max_pairing_error = matched_distance(&theory, &qr);
    let method_agreement = if p.n() <= POLYNOMIAL_MAX_N {
        let poly = polynomial_spectrum(p, kind)?;
        Some(matched_distance(&qr, &poly))
    } else {
        None
    };
    Ok(ValidationReport {
        max_pairing_error,
        method_agreement,
        n: p.n(),
        regime: classify_regime(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_params;
    use std::f64::consts::PI;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn charpoly_examples() {
        let p = make_params(1.0, 1.0, 2.0, 3.0, 4.0, 2).unwrap();
        assert_eq!(charpoly_coeffs(&p, MatrixKind::Reduced), vec![-5.0, -3.0, 1.0]);
        // Last row (0, 0, 0): det = -lambda (lambda^2 - 1) up to sign.
        let p = make_params(1.0, 1.0, 2.0, 0.0, -1.0, 3).unwrap();
        assert_eq!(charpoly_coeffs(&p, MatrixKind::Reduced), vec![0.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn qr_on_path_graph() {
        let p = make_params(1.0, 1.0, 2.0, 0.0, 0.0, 5).unwrap();
        let ev = sorted(qr_spectrum(&p, MatrixKind::Reduced).unwrap());
        for (k, got) in ev.iter().enumerate() {
            let want = 2.0 * ((5 - k) as f64 * PI / 6.0).cos();
            assert!((got - want).norm() < 1e-13);
        }
    }

    #[test]
    fn polynomial_on_path_graph() {
        let p = make_params(1.0, 1.0, 2.0, 0.0, 0.0, 4).unwrap();
        let ev = sorted(polynomial_eigenvalues(&charpoly_coeffs(&p, MatrixKind::Reduced)).unwrap());
        for (k, got) in ev.iter().enumerate() {
            let want = 2.0 * ((4 - k) as f64 * PI / 5.0).cos();
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn balancing_preserves_spectrum() {
        let p = make_params(4.0, 0.25, 1.0, 0.3, -0.7, 12).unwrap();
        let plain = qr_eigenvalues(&build_matrix(&p, MatrixKind::Full)).unwrap();
        let balanced = qr_spectrum(&p, MatrixKind::Full).unwrap();
        let poly = polynomial_spectrum(&p, MatrixKind::Full).unwrap();
        // tau = 4 makes the raw matrix strongly non-normal; balancing buys
        // several digits.
        assert!(matched_distance(&plain, &balanced) < 1e-6);
        assert!(matched_distance(&poly, &balanced) < 1e-12);
    }

    #[test]
    fn cross_validate_examples() {
        let p = make_params(1.0, 1.0, 2.0, 0.0, 0.0, 50).unwrap();
        let r = cross_validate(&p, MatrixKind::Full).unwrap();
        assert!(r.max_pairing_error < 1e-8, "{r:?}");
        assert!(r.method_agreement.unwrap() < 1e-6, "{r:?}");

        let p = make_params(1.0, 1.0, 2.0, 3.3, -2.25, 100).unwrap();
        let r = cross_validate(&p, MatrixKind::Full).unwrap();
        assert!(r.max_pairing_error < 1e-6, "{r:?}");

        let p = make_params(1.0, 1.0, 2.0, 2.95, -2.25, 100).unwrap();
        let r = cross_validate(&p, MatrixKind::Full).unwrap();
        assert!(r.max_pairing_error < 1e-6, "{r:?}");
    }
}
