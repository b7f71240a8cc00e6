//! Parameters of the boundary-modified tridiagonal family and the dense
//! matrices built from them.
//!
//! The full matrix has order `n + 1`:
//!
//! ```text
//!     | b  0  0  ...          |
//!     | a  0  c               |
//! A = |    a  0  c            |
//!     |        ...   ...      |
//!     |           a  0   c    |
//!     |              a+e d    |
//! ```
//!
//! Row 0 is the leader. Removing it (and column 0) leaves the reduced
//! `n x n` matrix `Q`, whose super-diagonal is `c = a / tau^2`.

use serde::Serialize;

use crate::error::{Error, Result};

/// The five scalars `a, b, c, d, e`, the reduced dimension `n`, and
/// `tau = sqrt(a / c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    n: usize,
    tau: f64,
}

/// Validates and builds [`SystemParams`].
///
/// Note the argument order `(a, c, b, d, e, n)`: the two couplings first.
pub fn make_params(a: f64, c: f64, b: f64, d: f64, e: f64, n: usize) -> Result<SystemParams> {
    for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d), ("e", e)] {
        if !v.is_finite() {
            return Err(Error::NonFinite { name });
        }
    }
    if a <= 0.0 || c <= 0.0 {
        return Err(Error::DegenerateCoupling { a, c });
    }
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    Ok(SystemParams {
        a,
        b,
        c,
        d,
        e,
        n,
        tau: (a / c).sqrt(),
    })
}

impl SystemParams {
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn e(&self) -> f64 {
        self.e
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `sqrt(a c)`, the scale of the bulk spectrum.
    pub fn sqrt_ac(&self) -> f64 {
        (self.a * self.c).sqrt()
    }

    /// Same parameters at a different dimension.
    pub fn with_n(&self, n: usize) -> Result<SystemParams> {
        make_params(self.a, self.c, self.b, self.d, self.e, n)
    }

    /// Same parameters with a different leader entry.
    pub fn with_b(&self, b: f64) -> Result<SystemParams> {
        make_params(self.a, self.c, b, self.d, self.e, self.n)
    }

    /// Exact check of `b == a + c` and `c == e + d`.
    pub fn is_decentralized(&self) -> bool {
        is_decentralized(self)
    }
}

/// Exact check of `b == a + c` and `c == e + d` on the stored scalars.
pub fn is_decentralized(p: &SystemParams) -> bool {
    p.b == p.a + p.c && p.c == p.e + p.d
}

/// Tolerant variant for parameters produced by upstream arithmetic.
/// Both identities are compared relative to `a + c`.
pub fn is_decentralized_within(p: &SystemParams, rel_tol: f64) -> bool {
    let scale = p.a + p.c;
    (p.b - (p.a + p.c)).abs() <= rel_tol * scale && (p.c - (p.e + p.d)).abs() <= rel_tol * scale
}

/// Which matrix of the family an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    /// The `(n+1) x (n+1)` matrix `A`.
    Full,
    /// The `n x n` matrix `Q` (leader row and column removed).
    Reduced,
    /// The consensus system matrix `-L = A - D`, `D` the row sums of `A`.
    /// Eigenvalues reported for this kind are those of `-L`.
    Laplacian,
}

impl std::str::FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "a" => Ok(MatrixKind::Full),
            "reduced" | "q" => Ok(MatrixKind::Reduced),
            "laplacian" | "l" => Ok(MatrixKind::Laplacian),
            other => Err(Error::InvalidConfig(format!("unknown matrix kind `{other}`"))),
        }
    }
}

/// Square matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(order: usize) -> Self {
        assert!(order >= 1, "matrix order must be at least 1");
        DenseMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds from nested rows; panics if the rows are ragged or not square.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let order = rows.len();
        assert!(order >= 1, "matrix order must be at least 1");
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            assert_eq!(row.len(), order, "matrix must be square");
            entries.extend_from_slice(row);
        }
        DenseMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.order).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Trailing principal submatrix of the given order.
    pub fn trailing(&self, order: usize) -> DenseMatrix {
        assert!(order >= 1 && order <= self.order);
        let off = self.order - order;
        let mut m = DenseMatrix::zeros(order);
        for i in 0..order {
            for j in 0..order {
                m[(i, j)] = self[(i + off, j + off)];
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.order + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.order + j]
    }
}

/// The full `(n+1) x (n+1)` matrix `A`.
pub fn build_full_matrix(p: &SystemParams) -> DenseMatrix {
    let n = p.n;
    let mut m = DenseMatrix::zeros(n + 1);
    m[(0, 0)] = p.b;
    for k in 1..n {
        m[(k, k - 1)] = p.a;
        m[(k, k + 1)] = p.c;
    }
    m[(n, n - 1)] = p.a + p.e;
    m[(n, n)] = p.d;
    m
}

/// The reduced `n x n` matrix `Q`.
pub fn build_reduced_matrix(p: &SystemParams) -> DenseMatrix {
    let n = p.n;
    // a / tau^2 is c up to rounding; use the stored c directly.
    let sup = p.c;
    let mut m = DenseMatrix::zeros(n);
    for k in 0..n - 1 {
        m[(k, k + 1)] = sup;
        m[(k + 1, k)] = p.a;
    }
    m[(n - 1, n - 2)] = p.a + p.e;
    m[(n - 1, n - 1)] = p.d;
    m
}

/// Directed graph Laplacian `L = D - A`, `D_ii = sum_j A_ij`.
pub fn build_laplacian(p: &SystemParams) -> DenseMatrix {
    let a = build_full_matrix(p);
    let sums = a.row_sums();
    let mut l = DenseMatrix::zeros(a.order());
    for i in 0..a.order() {
        for j in 0..a.order() {
            l[(i, j)] = -a[(i, j)];
        }
        l[(i, i)] += sums[i];
    }
    l
}

/// `-L`, the matrix of the first-order consensus system.
pub fn build_system_matrix(p: &SystemParams) -> DenseMatrix {
    let mut l = build_laplacian(p);
    l.entries.iter_mut().for_each(|x| *x = -*x);
    l
}

/// Materializes the matrix of the requested kind.
pub fn build_matrix(p: &SystemParams, kind: MatrixKind) -> DenseMatrix {
    match kind {
        MatrixKind::Full => build_full_matrix(p),
        MatrixKind::Reduced => build_reduced_matrix(p),
        MatrixKind::Laplacian => build_system_matrix(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, c: f64, b: f64, d: f64, e: f64, n: usize) -> SystemParams {
        make_params(a, c, b, d, e, n).unwrap()
    }

    #[test]
    fn make_params_computes_tau() {
        assert_eq!(p(1.0, 1.0, 2.0, 0.0, 0.0, 10).tau(), 1.0);
        assert_eq!(p(1.0, 4.0, 5.0, 3.0, 1.0, 50).tau(), 0.5);
    }

    #[test]
    fn make_params_rejects_degenerate_input() {
        assert!(matches!(
            make_params(0.0, 1.0, 1.0, 0.0, 0.0, 10),
            Err(Error::DegenerateCoupling { .. })
        ));
        assert!(matches!(
            make_params(1.0, -1.0, 1.0, 0.0, 0.0, 10),
            Err(Error::DegenerateCoupling { .. })
        ));
        assert!(matches!(
            make_params(1.0, 1.0, 1.0, 0.0, 0.0, 1),
            Err(Error::DimensionTooSmall { n: 1 })
        ));
        assert!(matches!(
            make_params(1.0, 1.0, f64::NAN, 0.0, 0.0, 4),
            Err(Error::NonFinite { name: "b" })
        ));
    }

    #[test]
    fn decentralized_definition() {
        assert!(p(1.0, 1.0, 2.0, 0.5, 0.5, 4).is_decentralized());
        assert!(!p(1.0, 1.0, 2.0, 0.0, 0.0, 4).is_decentralized());
        assert!(p(1.0, 2.0, 3.0, 1.0, 1.0, 4).is_decentralized());
        let q = p(0.1, 0.2, 0.1 + 0.2 + 1e-15, 0.1, 0.1, 4);
        assert!(!q.is_decentralized());
        assert!(is_decentralized_within(&q, 1e-12));
    }

    #[test]
    fn full_matrix_transcription() {
        let m = build_full_matrix(&p(1.0, 1.0, 2.0, 3.0, 4.0, 2));
        assert_eq!(
            m.to_rows(),
            vec![vec![2.0, 0.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 5.0, 3.0]]
        );
        let m = build_full_matrix(&p(1.0, 1.0, 0.0, 0.0, 0.0, 2));
        assert_eq!(
            m.to_rows(),
            vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]]
        );
    }

    #[test]
    fn full_matrix_decentralized_row_sums() {
        let q = p(1.0, 1.0, 2.0, 0.5, 0.5, 3);
        let m = build_full_matrix(&q);
        assert_eq!(m.row(3), &[0.0, 0.0, 1.5, 0.5]);
        for s in m.row_sums() {
            assert_eq!(s, 2.0);
        }
    }

    #[test]
    fn reduced_matrix_transcription() {
        let m = build_reduced_matrix(&p(1.0, 1.0, 0.0, 3.0, 4.0, 2));
        assert_eq!(m.to_rows(), vec![vec![0.0, 1.0], vec![5.0, 3.0]]);
        let m = build_reduced_matrix(&p(1.0, 1.0, 0.0, 0.0, -1.0, 3));
        assert_eq!(
            m.to_rows(),
            vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 1.0], vec![0.0, 0.0, 0.0]]
        );
        let m = build_reduced_matrix(&p(4.0, 1.0, 0.0, 1.0, 0.0, 3));
        assert_eq!(
            m.to_rows(),
            vec![vec![0.0, 1.0, 0.0], vec![4.0, 0.0, 1.0], vec![0.0, 4.0, 1.0]]
        );
    }

    #[test]
    fn laplacian_examples() {
        let l = build_laplacian(&p(1.0, 1.0, 2.0, 0.5, 0.5, 2));
        assert_eq!(
            l.to_rows(),
            vec![
                vec![0.0, 0.0, 0.0],
                vec![-1.0, 2.0, -1.0],
                vec![0.0, -1.5, 1.5]
            ]
        );
        // Row sums of A are (0, 2, 1), so D = diag(0, 2, 1).
        let l = build_laplacian(&p(1.0, 1.0, 0.0, 0.0, 0.0, 2));
        assert_eq!(
            l.to_rows(),
            vec![
                vec![0.0, 0.0, 0.0],
                vec![-1.0, 2.0, -1.0],
                vec![0.0, -1.0, 1.0]
            ]
        );
    }

    #[test]
    fn system_matrix_is_negated_laplacian() {
        let q = p(1.0, 2.0, 0.3, -0.4, 0.7, 5);
        let l = build_laplacian(&q);
        let s = build_system_matrix(&q);
        for (x, y) in l.as_slice().iter().zip(s.as_slice()) {
            assert_eq!(*x, -*y);
        }
    }

    #[test]
    fn kind_parses() {
        assert_eq!("full".parse::<MatrixKind>().unwrap(), MatrixKind::Full);
        assert_eq!("laplacian".parse::<MatrixKind>().unwrap(), MatrixKind::Laplacian);
        assert!("banded".parse::<MatrixKind>().is_err());
    }
}
