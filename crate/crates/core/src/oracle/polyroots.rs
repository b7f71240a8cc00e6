//! Characteristic polynomials of tridiagonal matrices and their roots by
//! Aberth-Ehrlich simultaneous iteration.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::DenseMatrix;

/// Sweep limit for [`polynomial_eigenvalues`].
pub const MAX_SWEEPS: usize = 500;

const RESCALE: f64 = 1e150;
const TWO_498: f64 = 8.183_476_519_740_229e149; // 2^498 ~ 1e150

/// A polynomial whose Newton correction `p / p'` can be formed without
/// overflow.
trait Evaluator {
    fn degree(&self) -> usize;
    /// Radius of a disc containing every root.
    fn root_radius(&self) -> f64;
    /// `p(z) / p'(z)`; infinite where `p'` vanishes.
    fn newton(&self, z: Complex64) -> Complex64;
}

/// Rescales all four recurrence values together; their ratios are what
/// matter.
fn rescale(vals: &mut [&mut Complex64; 4]) {
    let big = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let factor = if big > RESCALE {
        1.0 / TWO_498
    } else if big < 1.0 / RESCALE && big > 0.0 {
        TWO_498
    } else {
        return;
    };
    for v in vals.iter_mut() {
        **v *= factor;
    }
}

/// Monic polynomial from ascending coefficients `c_0 .. c_{m-1}, 1`.
struct Coefficients<'a> {
    coeffs: &'a [f64],
}

impl Evaluator for Coefficients<'_> {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn root_radius(&self) -> f64 {
        let deg = self.degree();
        1.0 + self.coeffs[..deg].iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    fn newton(&self, z: Complex64) -> Complex64 {
        // Horner for p and p', with the constant terms carried at the
        // running scale.
        let mut value = Complex64::new(1.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        let mut scale = Complex64::new(1.0, 0.0);
        let mut spare = Complex64::new(0.0, 0.0);
        for &c in self.coeffs[..self.degree()].iter().rev() {
            deriv = deriv * z + value;
            value = value * z + scale * c;
            rescale(&mut [&mut value, &mut deriv, &mut scale, &mut spare]);
        }
        value / deriv
    }
}

/// `det(z I - T)` of a tridiagonal `T` via the three-term recurrence.
pub(crate) struct Tridiagonal {
    diag: Vec<f64>,
    /// `T[k+1][k] * T[k][k+1]`.
    offdiag_products: Vec<f64>,
    radius: f64,
}

impl Tridiagonal {
    pub(crate) fn from_matrix(m: &DenseMatrix) -> Self {
        let n = m.order();
        let diag = (0..n).map(|i| m[(i, i)]).collect();
        let offdiag_products = (0..n.saturating_sub(1)).map(|i| m[(i + 1, i)] * m[(i, i + 1)]).collect();
        let radius = (0..n)
            .map(|i| {
                let lo = if i > 0 { m[(i, i - 1)].abs() } else { 0.0 };
                let hi = if i + 1 < n { m[(i, i + 1)].abs() } else { 0.0 };
                m[(i, i)].abs() + lo + hi
            })
            .fold(0.0, f64::max);
        Tridiagonal {
            diag,
            offdiag_products,
            radius,
        }
    }
}

impl Evaluator for Tridiagonal {
    fn degree(&self) -> usize {
        self.diag.len()
    }

    fn root_radius(&self) -> f64 {
        // Gershgorin bound, padded so the start circle encloses the roots.
        1.05 * self.radius + 1e-3
    }

    fn newton(&self, z: Complex64) -> Complex64 {
        // p_k = (z - d_k) p_{k-1} - o_{k-1} p_{k-2}, differentiated alongside.
        let mut prev = Complex64::new(1.0, 0.0);
        let mut cur = z - self.diag[0];
        let mut dprev = Complex64::new(0.0, 0.0);
        let mut dcur = Complex64::new(1.0, 0.0);
        for k in 1..self.diag.len() {
            let shift = z - self.diag[k];
            let o = self.offdiag_products[k - 1];
            let next = shift * cur - prev * o;
            let dnext = cur + shift * dcur - dprev * o;
            prev = cur;
            cur = next;
            dprev = dcur;
            dcur = dnext;
            rescale(&mut [&mut prev, &mut cur, &mut dprev, &mut dcur]);
        }
        cur / dcur
    }
}

/// Monic characteristic polynomial `det(lambda I - T)` of a tridiagonal
/// matrix, ascending coefficients.
pub fn tridiagonal_charpoly(diag: &[f64], sub: &[f64], sup: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(sub.len() + 1 == n.max(1) && sup.len() == sub.len(), "ragged tridiagonal");
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![-diag[0], 1.0];
    for k in 1..n {
        let prod = sub[k - 1] * sup[k - 1];
        let mut next = vec![0.0; k + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= diag[k] * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= prod * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Roots of a monic polynomial given by ascending coefficients (the last one
/// must be 1).
pub fn polynomial_eigenvalues(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    if coeffs.len() < 2 {
        return Err(Error::DomainError("polynomial degree must be at least 1"));
    }
    if coeffs.last() != Some(&1.0) {
        return Err(Error::DomainError("polynomial must be monic"));
    }
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite { name: "coeffs" });
    }
    simultaneous_roots(&Coefficients { coeffs })
}

/// Eigenvalues of a tridiagonal matrix as roots of its characteristic
/// polynomial, evaluated by recurrence rather than through coefficients.
pub(crate) fn tridiagonal_eigenvalues(t: &Tridiagonal) -> Result<Vec<Complex64>> {
    simultaneous_roots(t)
}

fn simultaneous_roots<E: Evaluator>(poly: &E) -> Result<Vec<Complex64>> {
    let n = poly.degree();
    let zero = Complex64::new(0.0, 0.0);
    if n == 1 {
        return Ok(vec![-poly.newton(zero)]);
    }
    // Retry from differently sized and rotated circles before giving up.
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    let starts = [(1.0, golden), (0.6, 0.3 * golden), (1.7, 1.9 * golden)];
    let mut last = Err(Error::NoConvergence {
        iterations: 0,
        last: zero,
    });
    for (scale, offset) in starts {
        last = sweep_from(poly, scale * poly.root_radius(), offset);
        if last.is_ok() {
            break;
        }
    }
    last
}

fn sweep_from<E: Evaluator>(poly: &E, radius: f64, offset: f64) -> Result<Vec<Complex64>> {
    let n = poly.degree();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + offset))
        .collect();

    let mut best = f64::INFINITY;
    let mut stalled = 0;
    for _ in 0..MAX_SWEEPS {
        let mut worst = 0.0f64;
        for i in 0..n {
            let ratio = poly.newton(z[i]);
            if ratio == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let mut diff = z[i] - z[j];
                    if diff == Complex64::new(0.0, 0.0) {
                        diff = Complex64::new(f64::EPSILON * radius, 0.0);
                    }
                    repulsion += diff.inv();
                }
            }
            let step = if ratio.is_finite() {
                ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion)
            } else {
                // p' = 0: fall back to pure repulsion.
                repulsion.inv()
            };
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if worst <= 1e-14 {
            return Ok(z);
        }
        // Clustered roots bottom out at a rounding-level floor rather than
        // reaching the tolerance; accept once progress stops there.
        if worst < best * 0.5 {
            best = worst;
            stalled = 0;
        } else {
            stalled += 1;
        }
        if stalled >= 20 && best <= 1e-8 {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_SWEEPS,
        last: z[0],
    })
}
