//! Dense complex-matrix substrate: tensor products, Hilbert-Schmidt
//! geometry, null spaces, Hermitian eigendecompositions, and matrix
//! exponentials, plus the [`OperatorSubspace`] type used for generated
//! algebras, commutants, and kernel bases.
//!
//! All functions are pure; values are immutable after construction and safe
//! to share between threads.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen, SVD};
use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Dense complex square (or rectangular) matrix; the universal carrier for
/// states, operators, and superoperators.
pub type CMatrix = DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = DVector<C64>;

/// Numerical tolerances used by every decision procedure in the toolkit.
///
/// The verdicts produced downstream are exact-algebra statements; carrying
/// the thresholds in one explicit value (rather than scattering constants)
/// keeps the independent checkers comparable and makes any disagreement
/// between them diagnosable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Relative singular-value cutoff for rank and null-space decisions:
    /// σ_i ≤ rank_rel·σ_max is treated as zero.
    pub rank_rel: f64,
    /// Absolute singular-value floor, used when σ_max = 0.
    pub rank_abs: f64,
    /// Bound on |⟨B_i,B_j⟩ − δ_ij| for orthonormality audits.
    pub orthonormality: f64,
    /// Bound on ‖A − A†‖ relative to (1 + ‖A‖) for Hermiticity checks.
    pub hermiticity: f64,
    /// Eigenvalue floor for positive-semidefiniteness and support-rank
    /// decisions.
    pub psd: f64,
    /// Relative residual above which a vector counts as a genuinely new
    /// direction (algebra closure admission, span-membership tests,
    /// reducing-projection verification).
    pub residual: f64,
    /// Operators or products with norm below this are discarded as rounding
    /// dust.
    pub tiny: f64,
    /// Width within which eigenvalues are merged into one cluster when
    /// forming eigenspaces and spectral projections.
    pub eig_cluster: f64,
    /// Absolute threshold on stochastic-matrix entries for support-graph
    /// edges.
    pub markov_edge: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank_rel: 1e-9,
            rank_abs: 1e-12,
            orthonormality: 1e-8,
            hermiticity: 1e-8,
            psd: 1e-8,
            residual: 1e-8,
            tiny: 1e-12,
            eig_cluster: 1e-8,
            markov_edge: 1e-10,
        }
    }
}

impl ToleranceConfig {
    /// Config with the relative rank cutoff replaced, everything else at the
    /// defaults.
    pub fn with_rank_rel(rank_rel: f64) -> Self {
        Self { rank_rel, ..Self::default() }
    }
}

/// Complex scalar shorthand.
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Kronecker (tensor) product of two operators; dimensions multiply and
/// `(a⊗b)(c⊗d) = (ac)⊗(bd)`.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Hilbert-Schmidt inner product `Tr(a†b)` of two same-shaped square
/// operators.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<C64> {
    if a.nrows() != a.ncols() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: format!("square matrices of equal dims, got {:?}", a.shape()),
            found: format!("{:?}", b.shape()),
        });
    }
    Ok(a.dotc(b))
}

/// Hilbert-Schmidt norm `√Tr(a†a)`; same as the Frobenius norm.
pub fn hs_norm(a: &CMatrix) -> f64 {
    a.norm()
}

/// `‖A − A†‖` for Hermiticity checks.
pub fn hermiticity_deviation(a: &CMatrix) -> f64 {
    (a - a.adjoint()).norm()
}

fn check_hermitian(m: &CMatrix, tol: &ToleranceConfig) -> Result<()> {
    let dev = hermiticity_deviation(m);
    if dev > tol.hermiticity * (1.0 + m.norm()) {
        return Err(Error::NonHermitian { deviation: dev });
    }
    Ok(())
}

/// Column-stacking vectorization. With this convention
/// `vec(AXB) = (Bᵀ ⊗ A) vec(X)`.
pub fn vec_op(m: &CMatrix) -> CVector {
    CVector::from_column_slice(m.as_slice())
}

/// Inverse of [`vec_op`] for a `d×d` operator.
pub fn unvec_op(v: &CVector, d: usize) -> CMatrix {
    CMatrix::from_column_slice(d, d, v.as_slice())
}

/// Orthonormal basis of `{v : ‖mv‖ ≈ 0}` under the singular-value threshold
/// `σ_i ≤ rank_rel·σ_max` (absolute floor `rank_abs` when σ_max = 0).
///
/// An empty result means the matrix has full column rank.
pub fn null_space(m: &CMatrix, tol: &ToleranceConfig) -> Vec<CVector> {
    // SVD only returns min(rows, cols) right singular vectors; pad wide
    // matrices with zero rows so the full right factor is available.
    let padded;
    let work = if m.nrows() < m.ncols() {
        padded = {
            let mut p = CMatrix::zeros(m.ncols(), m.ncols());
            p.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
            p
        };
        &padded
    } else {
        m
    };
    let svd = SVD::new(work.clone(), false, true);
    let v_t = svd.v_t.as_ref().expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let thr = if sigma_max > 0.0 { tol.rank_rel * sigma_max } else { tol.rank_abs };
    let mut basis = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s <= thr {
            // Rows of v_t are the conjugated right singular vectors.
            basis.push(v_t.row(i).adjoint());
        }
    }
    basis
}

/// Numerical rank under the same threshold rule as [`null_space`].
pub fn rank(m: &CMatrix, tol: &ToleranceConfig) -> usize {
    let svd = SVD::new(m.clone(), false, false);
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let thr = if sigma_max > 0.0 { tol.rank_rel * sigma_max } else { tol.rank_abs };
    svd.singular_values.iter().filter(|&&s| s > thr).count()
}

/// Eigendecomposition of a Hermitian operator.
///
/// Returns eigenvalues in ascending order with matching orthonormal
/// eigenvector columns. The input is symmetrized before decomposition;
/// inputs that fail the Hermiticity audit are rejected.
pub fn eig_hermitian(m: &CMatrix, tol: &ToleranceConfig) -> Result<(Vec<f64>, CMatrix)> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: "square matrix".into(),
            found: format!("{:?}", m.shape()),
        });
    }
    check_hermitian(m, tol)?;
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let columns: Vec<_> = order.iter().map(|&i| eig.eigenvectors.column(i).clone_owned()).collect();
    let vectors = CMatrix::from_columns(&columns);
    Ok((values, vectors))
}

/// Matrix exponential via scaling-and-squaring; `exp(0) = 1` exactly.
pub fn matrix_exp(m: &CMatrix) -> CMatrix {
    m.exp()
}

/// Eigenvalues of a general (not necessarily normal) complex matrix.
pub fn eigenvalues_general(m: &CMatrix) -> Vec<C64> {
    Schur::new(m.clone())
        .eigenvalues()
        .map(|v| v.iter().cloned().collect())
        .unwrap_or_default()
}

/// A linear subspace of operator space carried by a Hilbert-Schmidt
/// orthonormal basis of `d×d` matrices.
#[derive(Debug, Clone)]
pub struct OperatorSubspace {
    dim_hilbert: usize,
    basis: Vec<CMatrix>,
    tol: f64,
}

impl OperatorSubspace {
    /// Wrap an already-orthonormal basis, auditing `|⟨B_i,B_j⟩ − δ_ij| ≤ tol`.
    pub fn from_orthonormal(basis: Vec<CMatrix>, tol: &ToleranceConfig) -> Result<Self> {
        let dim_hilbert = basis.first().map_or(0, |b| b.nrows());
        let space = Self { dim_hilbert, basis, tol: tol.orthonormality };
        space.audit_orthonormality()?;
        Ok(space)
    }

    /// Orthonormalize a spanning set (twice-through modified Gram-Schmidt),
    /// dropping members that are linearly dependent within tolerance.
    pub fn from_span(ops: &[CMatrix], tol: &ToleranceConfig) -> Result<Self> {
        let Some(first) = ops.first() else {
            return Err(Error::EmptyOperatorList);
        };
        let d = first.nrows();
        let mut space = Self { dim_hilbert: d, basis: Vec::new(), tol: tol.orthonormality };
        for op in ops {
            if op.shape() != (d, d) {
                return Err(Error::DimensionMismatch {
                    expected: format!("{d}×{d}"),
                    found: format!("{:?}", op.shape()),
                });
            }
            let norm = op.norm();
            if norm < tol.tiny {
                continue;
            }
            let residual = space.orthogonal_residual(op);
            if residual.norm() > tol.residual * norm {
                space.push_normalized(residual);
            }
        }
        Ok(space)
    }

    /// Empty subspace of the operator space over a `d`-dimensional Hilbert
    /// space.
    pub fn empty(dim_hilbert: usize, tol: &ToleranceConfig) -> Self {
        Self { dim_hilbert, basis: Vec::new(), tol: tol.orthonormality }
    }

    /// Dimension of the Hilbert space the member operators act on.
    pub fn hilbert_dim(&self) -> usize {
        self.dim_hilbert
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthonormal basis members.
    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    /// Component of `x` orthogonal to the subspace (two Gram-Schmidt passes).
    pub fn orthogonal_residual(&self, x: &CMatrix) -> CMatrix {
        let mut r = x.clone();
        for _ in 0..2 {
            for b in &self.basis {
                let coeff = b.dotc(&r);
                r -= b * coeff;
            }
        }
        r
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &CMatrix) -> CMatrix {
        let mut p = CMatrix::zeros(x.nrows(), x.ncols());
        for b in &self.basis {
            let coeff = b.dotc(x);
            p += b * coeff;
        }
        p
    }

    /// True iff the residual of `x` after projection is ≤ tol·‖x‖.
    pub fn contains(&self, x: &CMatrix, tol: &ToleranceConfig) -> bool {
        let norm = x.norm();
        if norm < tol.tiny {
            return true;
        }
        self.orthogonal_residual(x).norm() <= tol.residual * norm
    }

    /// Normalize and append a new basis element. The caller must have
    /// orthogonalized it against the current basis.
    pub(crate) fn push_normalized(&mut self, residual: CMatrix) {
        let norm = residual.norm();
        self.basis.push(residual.unscale(norm));
    }

    /// Max deviation `|⟨B_i,B_j⟩ − δ_ij|` over all pairs; errors beyond the
    /// stored tolerance.
    pub fn audit_orthonormality(&self) -> Result<f64> {
        let mut worst = 0.0_f64;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let g = a.dotc(b);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - c(target, 0.0)).norm());
            }
        }
        if worst > self.tol {
            return Err(Error::OrthonormalityAudit { deviation: worst });
        }
        Ok(worst)
    }
}
