//! Helpers shared by the integration tests, including an eigenvalue oracle
//! that is independent of both the closed form and the library's oracles.

#![allow(dead_code)]

use boundary_spectra::{make_params, SystemParams};
use num_complex::Complex64;

/// Decentralized parameters: `b = a + c`, `d = c - e`.
pub fn dec(a: f64, c: f64, e: f64, n: usize) -> SystemParams {
    make_params(a, c, a + c, c - e, e, n).unwrap()
}

pub fn sorted_re(v: &[Complex64]) -> Vec<f64> {
    let mut out: Vec<f64> = v.iter().map(|z| z.re).collect();
    out.sort_by(f64::total_cmp);
    out
}

/// Eigenvalues of a tridiagonal matrix whose off-diagonal products
/// `T[k+1][k] T[k][k+1]` are all positive, by Sturm-sequence bisection.
///
/// Such a matrix is similar to the symmetric one with off-diagonals
/// `sqrt(product)`, so its spectrum is real and the inertia count applies.
pub fn sturm_eigenvalues(diag: &[f64], products: &[f64]) -> Vec<f64> {
    assert!(products.iter().all(|p| *p > 0.0));
    let m = diag.len();
    let offs: Vec<f64> = products.iter().map(|p| p.sqrt()).collect();
    let radius = (0..m)
        .map(|i| {
            let lo = if i > 0 { offs[i - 1] } else { 0.0 };
            let hi = if i + 1 < m { offs[i] } else { 0.0 };
            diag[i].abs() + lo + hi
        })
        .fold(0.0, f64::max);
    // Number of eigenvalues strictly below x.
    let count_below = |x: f64| {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..m {
            let prev = if i > 0 { products[i - 1] / q } else { 0.0 };
            q = diag[i] - x - prev;
            if q == 0.0 {
                q = -f64::EPSILON * (radius + 1.0);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    (0..m)
        .map(|k| {
            let (mut lo, mut hi) = (-radius - 1.0, radius + 1.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if count_below(mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Spectrum of the reduced matrix `Q` by [`sturm_eigenvalues`]; requires
/// `a + e > 0`.
pub fn sturm_reduced(p: &SystemParams) -> Vec<f64> {
    let n = p.n();
    let mut diag = vec![0.0; n];
    diag[n - 1] = p.d();
    let mut products = vec![p.a() * p.c(); n - 1];
    products[n - 2] = (p.a() + p.e()) * p.c();
    sturm_eigenvalues(&diag, &products)
}

pub fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}
