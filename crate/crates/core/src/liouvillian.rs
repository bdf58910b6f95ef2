//! Lindblad generators: the master-equation superoperator, its Heisenberg
//! adjoint, the auxiliary operator K, steady states, and the Liouvillian
//! spectrum.
//!
//! The generator acts as
//!
//! ```text
//! 𝓛(ρ) = −i[H, ρ] + Σ_α ( L_α ρ L_α† − ½{L_α†L_α, ρ} )
//! ```
//!
//! and is represented as a `d²×d²` matrix on column-stacked vectorized
//! operators.

use num_complex::Complex64 as C64;

use crate::operators::{
    c, eig_hermitian, eigenvalues_general, null_space, tensor, unvec_op, vec_op, CMatrix, CVector,
    OperatorSubspace, ToleranceConfig,
};
use crate::{Error, Result};

/// A finite-dimensional Markovian open quantum system: Hermitian Hamiltonian
/// plus a list of Lindblad (jump) operators.
///
/// Dissipation rates are assumed to be absorbed into the operators as
/// `√rate` prefactors, so the dissipator carries no separate rate array.
#[derive(Debug, Clone)]
pub struct LindbladSystem {
    dim: usize,
    hamiltonian: CMatrix,
    lindblads: Vec<CMatrix>,
}

impl LindbladSystem {
    /// Validate Hermiticity of the Hamiltonian and dimensional consistency.
    pub fn new(hamiltonian: CMatrix, lindblads: Vec<CMatrix>, tol: &ToleranceConfig) -> Result<Self> {
        let d = hamiltonian.nrows();
        if hamiltonian.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: "square Hamiltonian".into(),
                found: format!("{:?}", hamiltonian.shape()),
            });
        }
        let dev = (&hamiltonian - hamiltonian.adjoint()).norm();
        if dev > tol.hermiticity * (1.0 + hamiltonian.norm()) {
            return Err(Error::NonHermitian { deviation: dev });
        }
        for l in &lindblads {
            if l.shape() != (d, d) {
                return Err(Error::DimensionMismatch {
                    expected: format!("{d}×{d} Lindblad operator"),
                    found: format!("{:?}", l.shape()),
                });
            }
        }
        Ok(Self { dim: d, hamiltonian, lindblads })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    pub fn lindblads(&self) -> &[CMatrix] {
        &self.lindblads
    }

    /// Apply the generator directly to an operator (no vectorization).
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let h = &self.hamiltonian;
        let mut out = (h * rho - rho * h) * c(0.0, -1.0);
        for l in &self.lindblads {
            let ll = l.adjoint() * l;
            out += l * rho * l.adjoint() - (&ll * rho + rho * &ll).scale(0.5);
        }
        out
    }

    /// Apply the Heisenberg-picture adjoint generator to an observable.
    pub fn apply_adjoint(&self, obs: &CMatrix) -> CMatrix {
        let h = &self.hamiltonian;
        let mut out = (h * obs - obs * h) * c(0.0, 1.0);
        for l in &self.lindblads {
            let ll = l.adjoint() * l;
            out += l.adjoint() * obs * l - (&ll * obs + obs * &ll).scale(0.5);
        }
        out
    }
}

/// A linear map on operator space, stored as a `d²×d²` matrix acting on
/// column-stacked `vec(ρ)`.
#[derive(Debug, Clone)]
pub struct Superoperator {
    pub dim: usize,
    pub matrix: CMatrix,
}

impl Superoperator {
    /// Apply to an operator by vectorizing, multiplying, and unstacking.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        unvec_op(&(&self.matrix * vec_op(rho)), self.dim)
    }

    /// `‖𝓛†(𝟙)‖`, the trace-preservation defect of a generator (zero for any
    /// valid Lindblad generator).
    pub fn trace_preservation_defect(&self) -> f64 {
        let id = CMatrix::identity(self.dim, self.dim);
        (self.matrix.adjoint() * vec_op(&id)).norm()
    }
}

/// Schrödinger-picture generator matrix:
/// `−i(1⊗H − Hᵀ⊗1) + Σ_α [ L̄_α⊗L_α − ½ 1⊗(L_α†L_α) − ½ (L_α†L_α)ᵀ⊗1 ]`.
pub fn build_superoperator(sys: &LindbladSystem) -> Superoperator {
    let d = sys.dim();
    let id = CMatrix::identity(d, d);
    let h = sys.hamiltonian();
    let mut m = (tensor(&id, h) - tensor(&h.transpose(), &id)) * c(0.0, -1.0);
    for l in sys.lindblads() {
        let ll = l.adjoint() * l;
        m += tensor(&l.conjugate(), l)
            - (tensor(&id, &ll) + tensor(&ll.transpose(), &id)).scale(0.5);
    }
    Superoperator { dim: d, matrix: m }
}

/// Heisenberg-picture generator matrix:
/// `i(1⊗H − Hᵀ⊗1) + Σ_α [ L_αᵀ⊗L_α† − ½ 1⊗(L_α†L_α) − ½ (L_α†L_α)ᵀ⊗1 ]`.
///
/// Under the Hilbert-Schmidt pairing this equals the conjugate transpose of
/// [`build_superoperator`]'s matrix.
pub fn adjoint_superoperator(sys: &LindbladSystem) -> Superoperator {
    let d = sys.dim();
    let id = CMatrix::identity(d, d);
    let h = sys.hamiltonian();
    let mut m = (tensor(&id, h) - tensor(&h.transpose(), &id)) * c(0.0, 1.0);
    for l in sys.lindblads() {
        let ll = l.adjoint() * l;
        m += tensor(&l.transpose(), &l.adjoint())
            - (tensor(&id, &ll) + tensor(&ll.transpose(), &id)).scale(0.5);
    }
    Superoperator { dim: d, matrix: m }
}

/// The auxiliary operator `K = −iH − ½ Σ_α L_α†L_α`.
///
/// Together with the Lindblad operators, K drives both the invariant-subspace
/// criterion and the generated-algebra criterion. Note that sign and scale
/// conventions for this operator vary across the literature; this definition
/// is used consistently throughout the toolkit.
pub fn k_operator(sys: &LindbladSystem) -> CMatrix {
    let mut k = sys.hamiltonian() * c(0.0, -1.0);
    for l in sys.lindblads() {
        k -= (l.adjoint() * l).scale(0.5);
    }
    k
}

/// Kernel data of the generator plus a maximal-support steady state.
#[derive(Debug, Clone)]
pub struct SteadyStateSet {
    /// Dimension of the kernel of 𝓛.
    pub null_dim: usize,
    /// Hermitian, PSD, trace-one steady state whose support contains the
    /// support of every steady state.
    pub max_support_state: CMatrix,
    /// Rank of the maximal-support state (eigenvalues above the PSD floor).
    pub support_rank: usize,
    /// Orthonormal basis of the kernel, as operators.
    pub null_basis: OperatorSubspace,
}

/// Solve `𝓛(ρ) = 0`.
///
/// The maximal-support witness is obtained by projecting the full-rank state
/// `𝟙/d` onto the zero eigenspace with the oblique spectral projector built
/// from the kernels of 𝓛 and 𝓛† (the zero eigenvalue of a Lindblad generator
/// is semisimple, so no Jordan analysis is needed). Because `𝟙/d` has full
/// rank, its projection has maximal support among steady states, which makes
/// the support-rank test decisive for irreducibility.
pub fn steady_states(sys: &LindbladSystem, tol: &ToleranceConfig) -> Result<SteadyStateSet> {
    let d = sys.dim();
    let sup = build_superoperator(sys);
    let kernel = null_space(&sup.matrix, tol);
    if kernel.is_empty() {
        return Err(Error::EmptyKernel {
            context: "Liouvillian kernel (every finite-dimensional generator has one)".into(),
        });
    }
    let adj_kernel = null_space(&sup.matrix.adjoint(), tol);
    if adj_kernel.len() != kernel.len() {
        return Err(Error::EmptyKernel {
            context: format!(
                "kernel/cokernel dimension mismatch ({} vs {})",
                kernel.len(),
                adj_kernel.len()
            ),
        });
    }

    let k = kernel.len();
    let right = CMatrix::from_columns(&kernel);
    let left = CMatrix::from_columns(&adj_kernel);

    // Oblique projector onto ker 𝓛 along ran 𝓛: P₀ = R (L†R)⁻¹ L†.
    let gram = left.adjoint() * &right;
    let target = left.adjoint() * vec_op(&CMatrix::identity(d, d).unscale(d as f64));
    let coeffs = gram.lu().solve(&target).ok_or_else(|| Error::EmptyKernel {
        context: "singular kernel/cokernel pairing in spectral projector".into(),
    })?;
    let projected: CVector = &right * coeffs;

    let rho_raw = unvec_op(&projected, d);
    let rho_sym = (&rho_raw + rho_raw.adjoint()).scale(0.5);
    let trace = rho_sym.trace().re;
    if trace.abs() < tol.tiny {
        return Err(Error::EmptyKernel {
            context: "projected steady state has vanishing trace".into(),
        });
    }
    let rho = rho_sym.unscale(trace);

    let (eigs, _) = eig_hermitian(&rho, tol)?;
    let support_rank = eigs.iter().filter(|&&e| e > tol.psd).count();

    let ops: Vec<CMatrix> = kernel.iter().map(|v| unvec_op(v, d)).collect();
    let null_basis = OperatorSubspace::from_orthonormal(ops, tol)?;

    Ok(SteadyStateSet { null_dim: k, max_support_state: rho, support_rank, null_basis })
}

/// Liouvillian spectrum and relaxation data.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    /// Eigenvalues sorted by descending real part (ties by imaginary part).
    pub eigenvalues: Vec<C64>,
    /// `−max{Re λ : |λ| > ε}`, the asymptotic decay rate; zero when every
    /// eigenvalue is (numerically) zero.
    pub gap: f64,
    /// True iff the kernel is one-dimensional, so all initial states relax
    /// to the unique steady state.
    pub relaxing: bool,
}

/// Eigenvalues of the generator, the spectral gap, and the relaxing flag.
pub fn spectrum(sys: &LindbladSystem, tol: &ToleranceConfig) -> Result<SpectrumReport> {
    let sup = build_superoperator(sys);
    let mut eigenvalues = eigenvalues_general(&sup.matrix);
    eigenvalues.sort_by(|a, b| {
        b.re.partial_cmp(&a.re).unwrap().then(b.im.partial_cmp(&a.im).unwrap())
    });
    let eps = tol.rank_rel * sup.matrix.norm().max(1.0);
    let gap = eigenvalues
        .iter()
        .filter(|l| l.norm() > eps)
        .map(|l| -l.re)
        .fold(f64::INFINITY, f64::min);
    let gap = if gap.is_finite() { gap } else { 0.0 };
    let relaxing = steady_states(sys, tol)?.null_dim == 1;
    Ok(SpectrumReport { eigenvalues, gap, relaxing })
}
