mod common;

use boundary_spectra::charpoly::{eigenvalue_of, quadratic_roots, transfer_roots};
use boundary_spectra::model::{build_full_matrix, build_laplacian};
use boundary_spectra::oracle::{matched_distance, pair_multisets, qr_spectrum};
use boundary_spectra::simulate::{coherence_error, simulate_first_order, SimConfig};
use boundary_spectra::spectrum::{compute_spectrum, eigenvector_for, residual};
use boundary_spectra::stability::{second_order_eigenvalues, SecondOrderParams};
use boundary_spectra::{make_params, MatrixKind, SystemParams};
use common::{dec, max_abs_diff, sorted_re, sturm_reduced};
use num_complex::Complex64;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SystemParams> {
    (0.2f64..5.0, 0.2f64..5.0, -5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0, 4usize..60)
        .prop_map(|(a, c, b, d, e, n)| make_params(a, c, b, d, e, n).unwrap())
}

fn scale(p: &SystemParams) -> f64 {
    p.a().max(p.c()).max(p.d().abs()).max(p.e().abs()).max(p.b().abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectrum_matches_sturm_when_real(p in params().prop_filter("a + e > 0", |p| p.a() + p.e() > 0.1)) {
        let got = sorted_re(&compute_spectrum(&p, MatrixKind::Reduced).unwrap().eigenvalues());
        let want = sturm_reduced(&p);
        prop_assert!(max_abs_diff(&got, &want) <= 1e-9 * scale(&p));
    }

    #[test]
    fn spectrum_is_closed_under_conjugation_and_has_trace_d(p in params()) {
        let s = compute_spectrum(&p, MatrixKind::Reduced).unwrap();
        let ev = s.eigenvalues();
        prop_assert_eq!(ev.len(), p.n());
        let conj: Vec<Complex64> = ev.iter().map(|z| z.conj()).collect();
        prop_assert!(matched_distance(&ev, &conj) <= 1e-8 * scale(&p));
        // Trace of the reduced matrix is d.
        let trace: Complex64 = ev.iter().sum();
        prop_assert!((trace - p.d()).norm() <= 1e-9 * scale(&p) * p.n() as f64);
    }

    #[test]
    fn full_spectrum_adds_leader(p in params()) {
        let full = compute_spectrum(&p, MatrixKind::Full).unwrap();
        prop_assert_eq!(full.len(), p.n() + 1);
        prop_assert_eq!(full.leader, Some(p.b()));
    }

    #[test]
    fn special_roots_are_exterior_and_map_to_eigenvalues(p in params()) {
        let s = compute_spectrum(&p, MatrixKind::Reduced).unwrap();
        for sp in &s.special {
            if p.a() + p.e() != 0.0 {
                prop_assert!(sp.y.norm() > 1.0);
            }
            let r = (sp.y + sp.y.inv()) * p.sqrt_ac();
            prop_assert!((r - sp.r).norm() <= 1e-12 * r.norm().max(1.0));
        }
    }

    #[test]
    fn transfer_roots_multiply_to_ratio(p in params(), re in -4.0f64..4.0, im in -4.0f64..4.0) {
        // x_+ x_- = a / c and x_+ + x_- = r / c for the transfer matrix.
        let r = Complex64::new(re, im);
        let t = transfer_roots(&p, r);
        prop_assert!((t.x_plus * t.x_minus - p.a() / p.c()).norm() <= 1e-10 * (p.a() / p.c()).max(1.0));
        prop_assert!((t.x_plus + t.x_minus - r / p.c()).norm() <= 1e-10 * (r / p.c()).norm().max(1.0));
        prop_assert!((eigenvalue_of(&p, t.y) - r).norm() <= 1e-9 * r.norm().max(1.0));
    }

    #[test]
    fn quadratic_roots_solve_the_quadratic(p in params()) {
        let dt = p.d() * p.tau();
        for y in quadratic_roots(&p).both() {
            let v = y * y * p.a() - y * dt - p.e();
            prop_assert!(v.norm() <= 1e-12 * scale(&p) * (1.0 + y.norm_sqr()));
        }
    }

    #[test]
    fn bulk_eigenvectors_have_small_residual(p in params()) {
        let s = compute_spectrum(&p, MatrixKind::Reduced).unwrap();
        let q = build_full_matrix(&p).trailing(p.n());
        for b in s.bulk.iter().filter(|b| b.phi > 1e-3 && b.phi < std::f64::consts::PI - 1e-3).take(5) {
            let y = Complex64::from_polar(1.0, b.phi);
            let pair = eigenvector_for(&p, y).unwrap();
            let res = residual(&q, pair.eigenvalue, &pair.vector).unwrap();
            prop_assert!(res <= 1e-8 * scale(&p), "residual {}", res);
        }
    }

    #[test]
    fn second_order_map_satisfies_quadratic(
        re in -10.0f64..1.0, im in -5.0f64..5.0, alpha in -3.0f64..3.0, beta in -3.0f64..3.0
    ) {
        let lambda = Complex64::new(re, im);
        let nu = second_order_eigenvalues(&[lambda], SecondOrderParams { alpha, beta });
        prop_assert_eq!(nu.len(), 2);
        let s = (1.0 + lambda.norm()) * (1.0 + alpha.abs() + beta.abs());
        for v in nu {
            let q = v * v - v * lambda * beta - lambda * alpha;
            prop_assert!(q.norm() <= 1e-12 * s * s);
        }
    }

    #[test]
    fn pairing_is_a_permutation(values in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..40), seed in any::<u64>()) {
        let left: Vec<Complex64> = values.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
        let mut right = left.clone();
        // Deterministic shuffle.
        let mut state = seed | 1;
        for i in (1..right.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            right.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let pairs = pair_multisets(&left, &right);
        let mut seen_l = vec![false; left.len()];
        let mut seen_r = vec![false; right.len()];
        for &(i, j) in &pairs {
            prop_assert!(!seen_l[i] && !seen_r[j]);
            seen_l[i] = true;
            seen_r[j] = true;
        }
        prop_assert!(seen_l.iter().all(|x| *x));
        prop_assert_eq!(matched_distance(&left, &right), 0.0);
    }

    #[test]
    fn decentralized_laplacian_has_constant_kernel(
        a in 0.2f64..5.0, c in 0.2f64..5.0, e in -5.0f64..5.0, n in 4usize..40
    ) {
        let p = dec(a, c, e, n);
        let l = build_laplacian(&p);
        for row in l.to_rows() {
            prop_assert!(row.iter().sum::<f64>().abs() <= 1e-12 * (a + c + e.abs()));
        }
    }

    #[test]
    fn laplacian_kind_is_shifted_full(a in 0.2f64..5.0, c in 0.2f64..5.0, e in -5.0f64..5.0, n in 4usize..40) {
        let p = dec(a, c, e, n);
        let lap = compute_spectrum(&p, MatrixKind::Laplacian).unwrap().eigenvalues();
        let full: Vec<Complex64> = compute_spectrum(&p, MatrixKind::Full)
            .unwrap()
            .eigenvalues()
            .iter()
            .map(|z| z - (a + c))
            .collect();
        prop_assert!(matched_distance(&lap, &full) <= 1e-12 * (a + c + e.abs()));
        prop_assert!(lap.iter().any(|z| z.norm() <= 1e-12));
    }

    #[test]
    fn coherent_start_stays_coherent(a in 0.2f64..3.0, c in 0.2f64..3.0, e in -3.0f64..3.0, shift in -5.0f64..5.0) {
        let n = 12;
        let p = dec(a, c, e, n);
        let h: Vec<f64> = (0..=n).map(|k| -(k as f64) * 0.5).collect();
        let x0: Vec<f64> = h.iter().map(|v| v + shift).collect();
        let cfg = SimConfig::first_order(p, h.clone(), x0, 2.0).unwrap();
        let traj = simulate_first_order(&cfg).unwrap();
        prop_assert!(coherence_error(&traj, &h).iter().all(|err| *err <= 1e-11 * (1.0 + shift.abs() + n as f64)));
    }
}

#[test]
fn qr_matches_sturm_on_symmetric_case() {
    let p = make_params(1.3, 0.7, 2.0, 0.4, 0.9, 80).unwrap();
    let qr = sorted_re(&qr_spectrum(&p, MatrixKind::Reduced).unwrap());
    assert!(max_abs_diff(&qr, &sturm_reduced(&p)) < 1e-12);
}
