//! Form-aware dense linear algebra on (2n+1)-dimensional real matrices.
//!
//! Houses the quadratic form `Q = diag(I_n, -I_{n+1})` of signature
//! (n, n+1), its pairing `<x|y> = x^t Q y`, adjugates computed by two
//! independent routes (cofactor expansion and the Cayley–Hamilton
//! trace-power expansion), and kernel extraction for the unit eigenvalue.
//!
//! Everything here is pure and operates on immutable inputs; callers may
//! share values across threads freely.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::tolerances::{CONDITION_LIMIT, KERNEL_RTOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("signature parameter n must be at least 1")]
    ZeroSignature,
    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("trace-power adjugate needs odd dimension, got {0}")]
    EvenDimension(usize),
    #[error("matrix is too ill-conditioned (estimate {estimate:.3e} > {limit:.3e})")]
    IllConditioned { estimate: f64, limit: f64 },
    #[error("matrix must be at least 2x2 for adjugates, got {0}")]
    TooSmall(usize),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// The ambient quadratic space `R^{2n+1}` with `Q = diag(I_n, -I_{n+1})`.
///
/// `Q` is symmetric and involutive (`Q = Q^t = Q^{-1}`); the distinguished
/// vector `v0 = (0_n, 1, 0_n)^t` spans the intersection of the two standard
/// transverse (n+1)-planes and pairs to `<v0|v0> = -1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticSpace {
    n: usize,
    dim: usize,
    q: DMatrix<f64>,
}

impl QuadraticSpace {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(LinalgError::ZeroSignature);
        }
        let dim = 2 * n + 1;
        let q = DMatrix::from_fn(dim, dim, |i, j| {
            if i != j {
                0.0
            } else if i < n {
                1.0
            } else {
                -1.0
            }
        });
        Ok(Self { n, dim, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q_matrix(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// The distinguished vector `(0_n, 1, 0_n)^t`.
    pub fn v0(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim);
        v[self.n] = 1.0;
        v
    }

    /// `<x|y> = x^t Q y`. Symmetric and bilinear.
    pub fn pairing(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<f64> {
        if x.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        let mut acc = 0.0;
        for i in 0..self.n {
            acc += x[i] * y[i];
        }
        for i in self.n..self.dim {
            acc -= x[i] * y[i];
        }
        Ok(acc)
    }

    /// `Q x` without materializing the matrix product.
    pub fn apply_q(&self, x: &DVector<f64>) -> DVector<f64> {
        let mut out = x.clone();
        for i in self.n..self.dim {
            out[i] = -out[i];
        }
        out
    }
}

/// Rejects matrices carrying NaN or infinity.
pub fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if !m[(i, j)].is_finite() {
                return Err(LinalgError::NonFinite { row: i, col: j });
            }
        }
    }
    Ok(())
}

pub fn check_finite_vec(v: &DVector<f64>) -> Result<()> {
    for i in 0..v.len() {
        if !v[i].is_finite() {
            return Err(LinalgError::NonFinite { row: i, col: 0 });
        }
    }
    Ok(())
}

fn check_square(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Adjugate as the transpose of the cofactor matrix.
///
/// Reference route: `adj[j][i] = (-1)^{i+j} det(minor_ij)`. Satisfies
/// `M adj(M) = det(M) I` for every square `M`.
pub fn adjugate_cofactor(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let d = check_square(m)?;
    if d < 2 {
        return Err(LinalgError::TooSmall(d));
    }
    check_finite(m)?;
    let mut adj = DMatrix::zeros(d, d);
    let mut minor = DMatrix::zeros(d - 1, d - 1);
    for i in 0..d {
        for j in 0..d {
            for (mi, si) in (0..d).filter(|&r| r != i).enumerate() {
                for (mj, sj) in (0..d).filter(|&c| c != j).enumerate() {
                    minor[(mi, mj)] = m[(si, sj)];
                }
            }
            let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            adj[(j, i)] = sign * minor.determinant();
        }
    }
    Ok(adj)
}

/// Adjugate through characteristic-polynomial coefficients expressed in
/// trace powers, specialized to odd dimension `2n+1`:
///
/// ```text
/// adj(g) = sum_{s=0}^{2n} c_s g^s,
/// c_s = sum_{(k_1..k_{2n}): sum l k_l = 2n-s}
///         prod_{l=1}^{2n} (-1)^{k_l+1} / (k_l! l^{k_l}) * Tr[g^l]^{k_l}
/// ```
///
/// Trace powers are memoized so the cost is O(dim) matrix multiplies plus
/// the integer-partition combinatorics of the coefficient sums.
pub fn adjugate_trace_power(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let d = check_square(m)?;
    if d < 2 {
        return Err(LinalgError::TooSmall(d));
    }
    if d % 2 == 0 {
        return Err(LinalgError::EvenDimension(d));
    }
    check_finite(m)?;
    let two_n = d - 1;

    // powers[s] = g^s for s = 0..=2n, traces[l-1] = Tr[g^l] for l = 1..=2n
    let mut powers: Vec<DMatrix<f64>> = Vec::with_capacity(d);
    powers.push(DMatrix::identity(d, d));
    for s in 1..=two_n {
        let next = &powers[s - 1] * m;
        powers.push(next);
    }
    let traces: Vec<f64> = (1..=two_n).map(|l| powers[l].trace()).collect();

    let mut adj = DMatrix::zeros(d, d);
    for s in 0..=two_n {
        let target = two_n - s;
        let mut coeff = 0.0;
        for multiplicities in partitions_as_multiplicities(target, two_n) {
            let mut term = 1.0;
            for (idx, &k) in multiplicities.iter().enumerate() {
                let l = idx + 1;
                let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
                term *= sign / (factorial(k) * (l as f64).powi(k as i32));
                if k > 0 {
                    term *= traces[idx].powi(k as i32);
                }
            }
            coeff += term;
        }
        adj += &powers[s] * coeff;
    }
    Ok(adj)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

/// All multiplicity vectors `(k_1..k_max)` with `sum l k_l = target`.
/// `target = 0` yields the single all-zero vector.
fn partitions_as_multiplicities(target: usize, max_part: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; max_part];
    fn descend(
        remaining: usize,
        largest_allowed: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=largest_allowed.min(remaining)).rev() {
            current[part - 1] += 1;
            descend(remaining - part, part, current, out);
            current[part - 1] -= 1;
        }
    }
    descend(target, max_part, &mut current, &mut out);
    out
}

/// Orthonormal basis (Euclidean) of the kernel of `I - L`, i.e. of the
/// eigenspace of eigenvalue 1, via SVD. Singular values at or below
/// `rel_tol * sigma_max` count as zero. Returns the empty list when no
/// singular value qualifies: the element is not regular and the caller
/// must reject the word.
pub fn unit_eigenspace(
    space: &QuadraticSpace,
    l: &DMatrix<f64>,
    rel_tol: f64,
) -> Result<Vec<DVector<f64>>> {
    let d = check_square(l)?;
    if d != space.dim() {
        return Err(LinalgError::DimensionMismatch {
            expected: space.dim(),
            got: d,
        });
    }
    check_finite(l)?;
    let i_minus_l = DMatrix::identity(d, d) - l;
    kernel_basis(&i_minus_l, rel_tol)
}

/// Default relative kernel threshold.
pub fn default_kernel_rtol() -> f64 {
    KERNEL_RTOL
}

/// Euclidean-orthonormal kernel basis of an arbitrary square matrix.
pub fn kernel_basis(m: &DMatrix<f64>, rel_tol: f64) -> Result<Vec<DVector<f64>>> {
    let d = check_square(m)?;
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("svd requested v_t");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    let threshold = rel_tol * sigma_max;
    let mut basis = Vec::new();
    for (idx, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma <= threshold {
            basis.push(v_t.row(idx).transpose().clone_owned());
        }
    }
    // Guard against SVD implementations that return fewer singular values
    // than columns for rank-deficient input; nalgebra returns all of them.
    debug_assert!(svd.singular_values.len() == d);
    Ok(basis)
}

/// Singular values of `m`, descending.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut s: Vec<f64> = svd.singular_values.iter().cloned().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Cheap condition estimate `|M|_inf * |M^{-1}|_inf`; errors past the
/// global guard.
pub fn guard_condition(m: &DMatrix<f64>, m_inv: &DMatrix<f64>) -> Result<f64> {
    let estimate = inf_norm(m) * inf_norm(m_inv);
    if !estimate.is_finite() || estimate > CONDITION_LIMIT {
        return Err(LinalgError::IllConditioned {
            estimate,
            limit: CONDITION_LIMIT,
        });
    }
    Ok(estimate)
}

/// Max-row-sum norm.
pub fn inf_norm(m: &DMatrix<f64>) -> f64 {
    let mut best = 0.0f64;
    for i in 0..m.nrows() {
        let mut row = 0.0;
        for j in 0..m.ncols() {
            row += m[(i, j)].abs();
        }
        best = best.max(row);
    }
    best
}

/// Largest absolute entry.
pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_matches_convention() {
        let s = QuadraticSpace::new(1).unwrap();
        assert_eq!(s.dim(), 3);
        let q = s.q_matrix();
        assert_eq!(q[(0, 0)], 1.0);
        assert_eq!(q[(1, 1)], -1.0);
        assert_eq!(q[(2, 2)], -1.0);
        assert_eq!(s.v0().as_slice(), &[0.0, 1.0, 0.0]);

        let s3 = QuadraticSpace::new(3).unwrap();
        assert_eq!(s3.dim(), 7);
        let diag: Vec<f64> = (0..7).map(|i| s3.q_matrix()[(i, i)]).collect();
        assert_eq!(diag, vec![1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0]);
    }

    #[test]
    fn rejects_zero_signature() {
        assert!(matches!(
            QuadraticSpace::new(0),
            Err(LinalgError::ZeroSignature)
        ));
    }

    #[test]
    fn q_is_involutive() {
        for n in 1..=4 {
            let s = QuadraticSpace::new(n).unwrap();
            let qq = s.q_matrix() * s.q_matrix();
            assert_eq!(qq, DMatrix::identity(s.dim(), s.dim()));
        }
    }

    #[test]
    fn pairing_examples() {
        let s = QuadraticSpace::new(1).unwrap();
        let v0 = s.v0();
        assert_eq!(s.pairing(&v0, &v0).unwrap(), -1.0);
        let e1 = DVector::from_vec(vec![1.0, 0.0, 0.0]);
        assert_eq!(s.pairing(&e1, &e1).unwrap(), 1.0);
        let x = DVector::from_vec(vec![1.0, 1.0, 0.0]);
        let y = DVector::from_vec(vec![1.0, -1.0, 0.0]);
        assert_eq!(s.pairing(&x, &y).unwrap(), 2.0);
    }

    #[test]
    fn pairing_rejects_mismatched_lengths() {
        let s = QuadraticSpace::new(1).unwrap();
        let short = DVector::from_vec(vec![1.0, 2.0]);
        assert!(s.pairing(&short, &s.v0()).is_err());
    }

    #[test]
    fn adjugate_of_identity_and_diagonal() {
        let adj = adjugate_cofactor(&DMatrix::identity(3, 3)).unwrap();
        assert_eq!(adj, DMatrix::identity(3, 3));

        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 3.0, 4.0]));
        let adj = adjugate_cofactor(&m).unwrap();
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![12.0, 8.0, 6.0]));
        assert_eq!(adj, expected);
    }

    #[test]
    fn trace_power_examples() {
        let adj = adjugate_trace_power(&DMatrix::identity(3, 3)).unwrap();
        assert!((adj - DMatrix::identity(3, 3)).amax() < 1e-12);

        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 2.0]));
        let adj = adjugate_trace_power(&m).unwrap();
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 2.0, 1.0]));
        assert!((adj - expected).amax() < 1e-12);
    }

    #[test]
    fn trace_power_rejects_even_dimension() {
        let m = DMatrix::identity(4, 4);
        assert!(matches!(
            adjugate_trace_power(&m),
            Err(LinalgError::EvenDimension(4))
        ));
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = DMatrix::identity(3, 3);
        m[(1, 2)] = f64::NAN;
        assert!(adjugate_cofactor(&m).is_err());
        assert!(adjugate_trace_power(&m).is_err());
    }

    #[test]
    fn unit_eigenspace_of_identity_is_everything() {
        let s = QuadraticSpace::new(1).unwrap();
        let basis = unit_eigenspace(&s, &DMatrix::identity(3, 3), KERNEL_RTOL).unwrap();
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn unit_eigenspace_empty_without_unit_eigenvalue() {
        let s = QuadraticSpace::new(1).unwrap();
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 3.0, 0.5]));
        let basis = unit_eigenspace(&s, &m, KERNEL_RTOL).unwrap();
        assert!(basis.is_empty());
    }

    #[test]
    fn partition_counts() {
        // p(0..8) with unrestricted parts: 1 1 2 3 5 7 11 15 22
        let expect = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (m, &p) in expect.iter().enumerate().map(|(i, p)| (i, p)) {
            assert_eq!(partitions_as_multiplicities(m, m.max(1)).len(), p);
        }
    }
}
