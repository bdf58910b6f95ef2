//! Irreducibility verdicts for Markovian quantum dynamics.
//!
//! Two independent Davies checkers are provided: the algebraic route (the
//! multiplicative algebra generated by the Lindblad operators together with
//! K must be the full operator space) and the steady-state route (a unique
//! faithful steady state). In finite dimension both are exact, so the
//! toolkit treats any disagreement between them as a hard error rather than
//! taking a vote.
//!
//! Evans reducibility (the existence of a conserved projection, equivalent
//! to a strong symmetry) is strictly stronger than Davies reducibility and
//! is checked through the commutant of `{L_α, L_α†, H}`. The classic
//! separation is a system with multiple steady states but a trivial
//! commutant, so no conserved projection at all.

use num_complex::Complex64 as C64;

use crate::algebra::{commutant, generate_algebra, is_self_adjoint_span, AlgebraClosureResult};
use crate::liouvillian::{
    adjoint_superoperator, k_operator, steady_states, LindbladSystem, SteadyStateSet,
};
use crate::operators::{
    c, eig_hermitian, eigenvalues_general, CMatrix, CVector, OperatorSubspace, ToleranceConfig,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DaviesVerdict {
    Irreducible,
    Reducible,
}

impl std::fmt::Display for DaviesVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Irreducible => write!(f, "Irreducible"),
            Self::Reducible => write!(f, "Reducible"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvansVerdict {
    EvansIrreducible,
    EvansReducible,
}

impl std::fmt::Display for EvansVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::EvansIrreducible => write!(f, "EvansIrreducible"),
            Self::EvansReducible => write!(f, "EvansReducible"),
        }
    }
}

/// Outcome of the faithful-steady-state uniqueness criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frigerio1Outcome {
    /// A faithful steady state exists and `{L_α, L_α†, H}' = {z𝟙}`, so the
    /// steady state is unique.
    ImpliesUniqueSteadyState,
    NotApplicable,
}

/// Outcome of the self-adjoint-span criterion on the Lindblad operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frigerio2Outcome {
    /// `span{L_α}` is self-adjoint and `{L_α}' = {z𝟙}`, so the system is
    /// irreducible.
    ImpliesIrreducible,
    NotApplicable,
}

/// Outcome of the generalized criterion on a subset of the generated
/// algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetCriterionOutcome {
    ImpliesIrreducible,
    NotApplicable,
    /// Some supplied operator is not in the algebra generated by
    /// `{L_α, K}`, so the criterion does not apply to this subset.
    NotInAlgebra,
}

/// Algebraic Davies checker: irreducible iff the multiplicative algebra
/// generated by `{L_α} ∪ {K}` is the whole operator space.
pub fn check_davies_algebra(
    sys: &LindbladSystem,
    tol: &ToleranceConfig,
) -> Result<(DaviesVerdict, AlgebraClosureResult)> {
    let mut seeds = sys.lindblads().to_vec();
    seeds.push(k_operator(sys));
    let closure = generate_algebra(&seeds, tol, None)?;
    // A one-dimensional Hilbert space has no proper subspace to reduce
    // onto, even when every generator vanishes and the closure is empty.
    let verdict = if closure.is_full || sys.dim() == 1 {
        DaviesVerdict::Irreducible
    } else {
        DaviesVerdict::Reducible
    };
    Ok((verdict, closure))
}

/// Steady-state Davies checker: irreducible iff the kernel of 𝓛 is
/// one-dimensional and the maximal-support steady state has full rank.
pub fn check_davies_steady(
    sys: &LindbladSystem,
    tol: &ToleranceConfig,
) -> Result<(DaviesVerdict, SteadyStateSet)> {
    let ss = steady_states(sys, tol)?;
    let verdict = if ss.null_dim == 1 && ss.support_rank == sys.dim() {
        DaviesVerdict::Irreducible
    } else {
        DaviesVerdict::Reducible
    };
    Ok((verdict, ss))
}

/// Hermitize, eigendecompose, and snap eigenvalues to `{0, 1}` so downstream
/// verification sees a clean orthogonal projection.
pub fn polish_projection(p: &CMatrix, tol: &ToleranceConfig) -> Result<CMatrix> {
    let sym = (p + p.adjoint()).scale(0.5);
    let (eigs, vecs) = eig_hermitian(&sym, tol)?;
    let d = p.nrows();
    let mut out = CMatrix::zeros(d, d);
    for (k, &lambda) in eigs.iter().enumerate() {
        if lambda > 0.5 {
            let v = vecs.column(k);
            out += v * v.adjoint();
        }
    }
    Ok(out)
}

/// Result of verifying a candidate reducing projection.
#[derive(Debug, Clone)]
pub struct ProjectionCheck {
    /// All invariance residuals within tolerance.
    pub passed: bool,
    /// Relative residuals `‖(1−P)L_αP‖/‖L_α‖` for each Lindblad operator,
    /// followed by the same quantity for K.
    pub residuals: Vec<f64>,
    /// True when P is 0 or 𝟙, which reduce any dynamics.
    pub trivial: bool,
}

/// Check the invariant-subspace criterion `(1−P)L_αP = 0 ∀α` and
/// `(1−P)KP = 0` for a given projection.
pub fn verify_reducing_projection(
    sys: &LindbladSystem,
    p: &CMatrix,
    tol: &ToleranceConfig,
) -> Result<ProjectionCheck> {
    let d = sys.dim();
    if p.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            expected: format!("{d}×{d}"),
            found: format!("{:?}", p.shape()),
        });
    }
    let herm = (p - p.adjoint()).norm();
    let idem = (p * p - p).norm();
    let scale = 1.0 + p.norm();
    if herm > tol.residual * scale || idem > tol.residual * scale {
        return Err(Error::NonProjection { idempotency: idem, hermiticity: herm });
    }
    let rank = p.trace().re.round() as usize;
    let trivial = rank == 0 || rank == d;

    let complement = CMatrix::identity(d, d) - p;
    let mut residuals = Vec::new();
    let mut ops: Vec<&CMatrix> = sys.lindblads().iter().collect();
    let k = k_operator(sys);
    ops.push(&k);
    for op in ops {
        let norm = op.norm();
        let r = if norm < tol.tiny { 0.0 } else { (&complement * op * p).norm() / norm };
        residuals.push(r);
    }
    let passed = residuals.iter().all(|&r| r <= tol.residual);
    Ok(ProjectionCheck { passed, residuals, trivial })
}

fn support_projection(rho: &CMatrix, tol: &ToleranceConfig) -> Result<CMatrix> {
    let (eigs, vecs) = eig_hermitian(rho, tol)?;
    let d = rho.nrows();
    let mut p = CMatrix::zeros(d, d);
    for (k, &lambda) in eigs.iter().enumerate() {
        if lambda > tol.psd {
            let v = vecs.column(k);
            p += v * v.adjoint();
        }
    }
    Ok(p)
}

fn projection_rank(p: &CMatrix) -> usize {
    p.trace().re.round() as usize
}

/// Accept a candidate if it is a proper nontrivial verified reducing
/// projection.
fn accept_candidate(
    sys: &LindbladSystem,
    candidate: &CMatrix,
    tol: &ToleranceConfig,
) -> Option<CMatrix> {
    let p = polish_projection(candidate, tol).ok()?;
    let rank = projection_rank(&p);
    if rank == 0 || rank == sys.dim() {
        return None;
    }
    match verify_reducing_projection(sys, &p, tol) {
        Ok(check) if check.passed => Some(p),
        _ => None,
    }
}

/// Hermitian kernel directions, orthogonal to the maximal-support state.
fn hermitian_kernel_directions(
    ss: &SteadyStateSet,
    tol: &ToleranceConfig,
) -> Vec<CMatrix> {
    let rho = &ss.max_support_state;
    let rho_unit = rho.unscale(rho.norm());
    let mut out = Vec::new();
    for b in ss.null_basis.basis() {
        for cand in [(b + b.adjoint()).scale(0.5), (b - b.adjoint()).scale(0.5) * c(0.0, -1.0)] {
            let overlap = rho_unit.dotc(&cand);
            let perp = &cand - &rho_unit * overlap;
            if perp.norm() > tol.residual * (1.0 + cand.norm()) {
                out.push(perp);
            }
        }
    }
    out
}

/// Walk from the maximal-support state along a steady kernel direction to
/// the PSD boundary; the boundary state is steady with strictly smaller
/// support.
fn boundary_support_candidate(
    ss: &SteadyStateSet,
    direction: &CMatrix,
    tol: &ToleranceConfig,
) -> Option<CMatrix> {
    let rho = &ss.max_support_state;
    let (eigs, vecs) = eig_hermitian(rho, tol).ok()?;
    let support: Vec<usize> = (0..eigs.len()).filter(|&i| eigs[i] > tol.psd).collect();
    if support.is_empty() {
        return None;
    }
    let cols: Vec<_> = support.iter().map(|&i| vecs.column(i).clone_owned()).collect();
    let s = CMatrix::from_columns(&cols);
    // Whitened direction M = ρ̃^{-1/2} X̃ ρ̃^{-1/2} on the support subspace.
    let x_s = s.adjoint() * direction * &s;
    let inv_sqrt = CMatrix::from_diagonal(&CVector::from_iterator(
        support.len(),
        support.iter().map(|&i| c(1.0 / eigs[i].sqrt(), 0.0)),
    ));
    let m = &inv_sqrt * x_s * &inv_sqrt;
    let (m_eigs, _) = eig_hermitian(&m, tol).ok()?;
    let lambda_min = *m_eigs.first()?;
    let lambda_max = *m_eigs.last()?;
    // The largest ε with ρ + εX ⪰ 0 is −1/λ_min when the whitened direction
    // has a negative part; otherwise walk the other way.
    let (eps, sign) = if lambda_min < -tol.tiny {
        (-1.0 / lambda_min, 1.0)
    } else if lambda_max > tol.tiny {
        (1.0 / lambda_max, -1.0)
    } else {
        return None;
    };
    let boundary = rho + direction.scale(sign * eps);
    let trace = boundary.trace().re;
    if trace.abs() < tol.tiny {
        return None;
    }
    support_projection(&boundary.unscale(trace), tol).ok()
}

/// Closure of `span{v}` under repeated application of the Lindblad
/// operators and K; a proper closure is an invariant subspace.
fn krylov_invariant_candidate(
    sys: &LindbladSystem,
    v: &CVector,
    tol: &ToleranceConfig,
) -> Option<CMatrix> {
    let d = sys.dim();
    let mut ops: Vec<CMatrix> = sys.lindblads().to_vec();
    ops.push(k_operator(sys));
    let mut basis: Vec<CVector> = vec![v.unscale(v.norm())];
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() && basis.len() < d {
        let current = std::mem::take(&mut frontier);
        for &idx in &current {
            for op in &ops {
                let mut w = op * &basis[idx];
                for _ in 0..2 {
                    for b in &basis {
                        let coeff = b.dotc(&w);
                        w -= b * coeff;
                    }
                }
                let norm = w.norm();
                if norm > tol.residual * (1.0 + op.norm()) {
                    basis.push(w.unscale(norm));
                    frontier.push(basis.len() - 1);
                    if basis.len() >= d {
                        break;
                    }
                }
            }
        }
    }
    if basis.len() >= d {
        return None;
    }
    let mut p = CMatrix::zeros(d, d);
    for b in &basis {
        p += b * b.adjoint();
    }
    Some(p)
}

/// Construct a witness projection for a reducible system.
///
/// Returns `Ok(None)` for irreducible systems. For reducible ones the
/// construction cascades: the support of the steady state when the kernel is
/// simple but rank-deficient; a walk along a steady kernel direction to the
/// PSD boundary when the kernel is degenerate; and finally invariant-subspace
/// closures seeded by eigenvectors of Hermitized kernel elements. Every
/// candidate is polished and verified before being returned, and exhaustion
/// of all candidates is reported as an error since a reducible system always
/// has a witness.
pub fn find_reducing_projection(
    sys: &LindbladSystem,
    tol: &ToleranceConfig,
) -> Result<Option<CMatrix>> {
    let d = sys.dim();
    let ss = steady_states(sys, tol)?;
    if ss.null_dim == 1 && ss.support_rank == d {
        return Ok(None);
    }

    if ss.null_dim == 1 && ss.support_rank < d {
        let p = support_projection(&ss.max_support_state, tol)?;
        if let Some(p) = accept_candidate(sys, &p, tol) {
            return Ok(Some(p));
        }
    }

    if ss.null_dim > 1 {
        for direction in hermitian_kernel_directions(&ss, tol) {
            if let Some(candidate) = boundary_support_candidate(&ss, &direction, tol) {
                if let Some(p) = accept_candidate(sys, &candidate, tol) {
                    return Ok(Some(p));
                }
            }
        }
        // The maximal-support state itself may already be rank deficient.
        if ss.support_rank < d {
            let p = support_projection(&ss.max_support_state, tol)?;
            if let Some(p) = accept_candidate(sys, &p, tol) {
                return Ok(Some(p));
            }
        }
    }

    // Fallback: invariant closures seeded from eigenvectors of Hermitized
    // kernel elements.
    let mut seeds: Vec<CMatrix> = hermitian_kernel_directions(&ss, tol);
    seeds.push(ss.max_support_state.clone());
    for x in &seeds {
        let Ok((_, vecs)) = eig_hermitian(x, tol) else { continue };
        for k in 0..vecs.ncols() {
            let v = vecs.column(k).clone_owned();
            if let Some(candidate) = krylov_invariant_candidate(sys, &v, tol) {
                if let Some(p) = accept_candidate(sys, &candidate, tol) {
                    return Ok(Some(p));
                }
            }
        }
    }

    Err(Error::NoWitnessFound {
        diagnostics: format!(
            "null_dim {}, support_rank {}/{}; boundary and invariant-closure \
             candidates all failed verification",
            ss.null_dim, ss.support_rank, d
        ),
    })
}

fn evans_seeds(sys: &LindbladSystem) -> Vec<CMatrix> {
    let mut seeds = sys.lindblads().to_vec();
    seeds.extend(sys.lindblads().iter().map(|l| l.adjoint()));
    seeds.push(sys.hamiltonian().clone());
    seeds
}

/// Conserved-projection (strong-symmetry) checker.
///
/// A projection is conserved iff it commutes with every Lindblad operator,
/// every adjoint, and the Hamiltonian; the system is Evans reducible iff
/// that commutant is larger than the scalars. On a reducible verdict a
/// witness is built from a non-scalar Hermitian commutant element by
/// splitting its spectrum at the largest gap.
pub fn check_evans(
    sys: &LindbladSystem,
    tol: &ToleranceConfig,
) -> Result<(EvansVerdict, Option<CMatrix>)> {
    let com = commutant(&evans_seeds(sys), tol)?;
    if com.is_trivial {
        return Ok((EvansVerdict::EvansIrreducible, None));
    }
    let d = sys.dim();
    let adjoint = adjoint_superoperator(sys);
    let scale = 1.0 + adjoint.matrix.norm();
    for b in com.basis.basis() {
        for cand in [(b + b.adjoint()).scale(0.5), (b - b.adjoint()).scale(0.5) * c(0.0, -1.0)] {
            let mean = cand.trace() / c(d as f64, 0.0);
            let traceless = &cand - CMatrix::identity(d, d) * mean;
            if traceless.norm() <= tol.residual * (1.0 + cand.norm()) {
                continue;
            }
            let Ok((eigs, vecs)) = eig_hermitian(&cand, tol) else { continue };
            // Split the spectrum at the largest gap.
            let split = (0..eigs.len() - 1)
                .max_by(|&a, &b| {
                    (eigs[a + 1] - eigs[a]).partial_cmp(&(eigs[b + 1] - eigs[b])).unwrap()
                })
                .unwrap_or(0);
            let mut p = CMatrix::zeros(d, d);
            for k in 0..=split {
                let v = vecs.column(k);
                p += v * v.adjoint();
            }
            let p = polish_projection(&p, tol)?;
            let rank = projection_rank(&p);
            if rank == 0 || rank == d {
                continue;
            }
            let conserved_defect = sys.apply_adjoint(&p).norm();
            if conserved_defect <= tol.residual * scale {
                return Ok((EvansVerdict::EvansReducible, Some(p)));
            }
        }
    }
    // Commutant is nontrivial but no clean witness passed verification;
    // report the verdict without one.
    Ok((EvansVerdict::EvansReducible, None))
}

/// Uniqueness criterion: a faithful steady state plus a trivial commutant
/// of `{L_α, L_α†, H}` forces the steady state to be unique.
pub fn check_frigerio_first(
    sys: &LindbladSystem,
    tol: &ToleranceConfig,
) -> Result<Frigerio1Outcome> {
    let ss = steady_states(sys, tol)?;
    if ss.support_rank != sys.dim() {
        return Ok(Frigerio1Outcome::NotApplicable);
    }
    let com = commutant(&evans_seeds(sys), tol)?;
    if com.is_trivial {
        Ok(Frigerio1Outcome::ImpliesUniqueSteadyState)
    } else {
        Ok(Frigerio1Outcome::NotApplicable)
    }
}

/// Sufficient irreducibility criterion: `span{L_α}` self-adjoint with
/// trivial commutant `{L_α}'`.
pub fn check_frigerio_second(
    sys: &LindbladSystem,
    tol: &ToleranceConfig,
) -> Result<Frigerio2Outcome> {
    if sys.lindblads().is_empty() {
        return Ok(Frigerio2Outcome::NotApplicable);
    }
    if !is_self_adjoint_span(sys.lindblads(), tol)? {
        return Ok(Frigerio2Outcome::NotApplicable);
    }
    let com = commutant(sys.lindblads(), tol)?;
    if com.is_trivial {
        Ok(Frigerio2Outcome::ImpliesIrreducible)
    } else {
        Ok(Frigerio2Outcome::NotApplicable)
    }
}

/// Generalized sufficient criterion: any subset of the algebra generated by
/// `{L_α, K}` whose span is self-adjoint and whose commutant is trivial
/// certifies irreducibility.
pub fn check_subset_criterion(
    sys: &LindbladSystem,
    subset: &[CMatrix],
    tol: &ToleranceConfig,
) -> Result<SubsetCriterionOutcome> {
    if subset.is_empty() {
        return Ok(SubsetCriterionOutcome::NotApplicable);
    }
    let mut seeds = sys.lindblads().to_vec();
    seeds.push(k_operator(sys));
    let closure = generate_algebra(&seeds, tol, None)?;
    if !subset.iter().all(|g| closure.basis.contains(g, tol)) {
        return Ok(SubsetCriterionOutcome::NotInAlgebra);
    }
    if !is_self_adjoint_span(subset, tol)? {
        return Ok(SubsetCriterionOutcome::NotApplicable);
    }
    let com = commutant(subset, tol)?;
    if com.is_trivial {
        Ok(SubsetCriterionOutcome::ImpliesIrreducible)
    } else {
        Ok(SubsetCriterionOutcome::NotApplicable)
    }
}

/// Eigendata of a dark-state candidate.
#[derive(Debug, Clone)]
pub struct DarkStateReport {
    /// Unit vector, phase-normalized so its largest component is real
    /// positive.
    pub state: CVector,
    /// Eigenvalues `⟨ψ|L_α|ψ⟩`.
    pub lindblad_eigenvalues: Vec<C64>,
    /// Eigenvalue `⟨ψ|K|ψ⟩`.
    pub k_eigenvalue: C64,
    /// Eigenvector residuals `‖L_αψ − λ_αψ‖` followed by `‖Kψ − κψ‖`.
    pub residuals: Vec<f64>,
    /// `‖𝓛(ψψ†)‖`, the direct stationarity defect of the pure state.
    pub liouvillian_residual: f64,
}

fn canonical_phase(v: &CVector) -> CVector {
    let mut best = 0;
    for i in 0..v.len() {
        if v[i].norm() > v[best].norm() {
            best = i;
        }
    }
    let z = v[best];
    if z.norm() > 0.0 {
        v * (z.conj() / c(z.norm(), 0.0))
    } else {
        v.clone()
    }
}

/// Decide whether `ψ` is a dark state: a common eigenvector of every
/// Lindblad operator and of K, equivalently `𝓛(|ψ⟩⟨ψ|) = 0`.
pub fn check_dark_state(
    sys: &LindbladSystem,
    psi: &CVector,
    tol: &ToleranceConfig,
) -> Result<(DarkStateReport, bool)> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > tol.residual * 10.0 {
        return Err(Error::NonUnitVector { norm });
    }
    let psi = canonical_phase(psi);
    let mut eigenvalues = Vec::new();
    let mut residuals = Vec::new();
    let mut is_dark = true;
    let k = k_operator(sys);
    let mut ops: Vec<&CMatrix> = sys.lindblads().iter().collect();
    ops.push(&k);
    let mut k_eigenvalue = c(0.0, 0.0);
    for (idx, op) in ops.iter().enumerate() {
        let image = *op * &psi;
        let lambda = psi.dotc(&image);
        let residual = (&image - &psi * lambda).norm();
        if residual > tol.residual * (1.0 + op.norm()) {
            is_dark = false;
        }
        residuals.push(residual);
        if idx < sys.lindblads().len() {
            eigenvalues.push(lambda);
        } else {
            k_eigenvalue = lambda;
        }
    }
    let projector = &psi * psi.adjoint();
    let liouvillian_residual = sys.apply(&projector).norm();
    Ok((
        DarkStateReport {
            state: psi,
            lindblad_eigenvalues: eigenvalues,
            k_eigenvalue,
            residuals,
            liouvillian_residual,
        },
        is_dark,
    ))
}

/// Cluster complex eigenvalues that sit within `radius` of a cluster
/// center; returns the centers.
fn cluster_eigenvalues(eigs: &[C64], radius: f64) -> Vec<C64> {
    let mut centers: Vec<(C64, usize)> = Vec::new();
    for &l in eigs {
        if let Some(entry) =
            centers.iter_mut().find(|(center, _)| (l - *center).norm() <= radius)
        {
            let (center, count) = *entry;
            let n = count as f64;
            *entry = ((center * c(n, 0.0) + l) / c(n + 1.0, 0.0), count + 1);
        } else {
            centers.push((l, 1));
        }
    }
    centers.into_iter().map(|(center, _)| center).collect()
}

/// Largest subspace of `col(q)` invariant under `a`, by iterating
/// `V ← {v ∈ V : A v ∈ V}` to a fixed point.
fn largest_invariant_subspace(a: &CMatrix, q: CMatrix, tol: &ToleranceConfig) -> CMatrix {
    let mut q = q;
    let scale = 1.0 + a.norm();
    loop {
        if q.ncols() == 0 {
            return q;
        }
        let image = a * &q;
        let compressed = q.adjoint() * &image;
        let residual = image - &q * &compressed;
        if residual.norm() <= tol.tiny * scale * (q.ncols() as f64) {
            return q;
        }
        let kernel = crate::operators::null_space(&residual, tol);
        if kernel.is_empty() {
            return CMatrix::zeros(q.nrows(), 0);
        }
        if kernel.len() == q.ncols() {
            return q;
        }
        let w = CMatrix::from_columns(&kernel);
        q = &q * w;
    }
}

/// Find every dark state by intersecting eigenspaces.
///
/// Starting from the whole space, each operator (all Lindblad operators,
/// then K) restricts the candidate subspaces to their largest invariant
/// part and splits them along the eigenspaces of the compressed operator.
/// Each surviving one-dimensional branch (or basis vector of a larger
/// branch) is verified with [`check_dark_state`] before being reported.
pub fn find_dark_states(sys: &LindbladSystem, tol: &ToleranceConfig) -> Result<Vec<DarkStateReport>> {
    let d = sys.dim();
    let mut ops: Vec<CMatrix> = sys.lindblads().to_vec();
    ops.push(k_operator(sys));

    let mut branches: Vec<CMatrix> = vec![CMatrix::identity(d, d)];
    for a in &ops {
        let mut next = Vec::new();
        let radius = tol.eig_cluster * (1.0 + a.norm());
        for q in branches {
            let q = largest_invariant_subspace(a, q, tol);
            let m = q.ncols();
            if m == 0 {
                continue;
            }
            let compressed = q.adjoint() * a * &q;
            let eigs = eigenvalues_general(&compressed);
            for center in cluster_eigenvalues(&eigs, radius) {
                let shifted = &compressed - CMatrix::identity(m, m) * center;
                // Accept directions down to the cluster radius so nearly
                // degenerate eigenvalues stay together.
                let svd = nalgebra::SVD::new(shifted.clone(), false, true);
                let sigma_max = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
                let thr = (tol.rank_rel * sigma_max).max(2.0 * radius);
                let v_t = svd.v_t.as_ref().unwrap();
                let mut cols = Vec::new();
                for (i, &s) in svd.singular_values.iter().enumerate() {
                    if s <= thr {
                        cols.push(v_t.row(i).adjoint());
                    }
                }
                if !cols.is_empty() {
                    let e = CMatrix::from_columns(&cols);
                    next.push(&q * e);
                }
            }
        }
        branches = next;
    }

    let mut reports = Vec::new();
    for q in &branches {
        for k in 0..q.ncols() {
            let v = q.column(k).clone_owned();
            let v = v.unscale(v.norm());
            if let Ok((report, true)) = check_dark_state(sys, &v, tol) {
                reports.push(report);
            }
        }
    }
    Ok(reports)
}

/// Aggregated verdicts plus witnesses from every checker.
#[derive(Debug, Clone)]
pub struct ReducibilityReport {
    pub davies_algebra_verdict: DaviesVerdict,
    pub algebra_dim: usize,
    pub davies_steady_verdict: DaviesVerdict,
    pub null_dim: usize,
    pub support_rank: usize,
    pub reducing_projection: Option<CMatrix>,
    pub witness_residuals: Vec<f64>,
    pub evans_verdict: EvansVerdict,
    pub conserved_projection: Option<CMatrix>,
    pub frigerio_first: Frigerio1Outcome,
    pub frigerio_second: Frigerio2Outcome,
}

impl ReducibilityReport {
    /// The agreed Davies verdict.
    pub fn verdict(&self) -> DaviesVerdict {
        self.davies_algebra_verdict
    }
}

/// Run every checker, enforce cross-checker consistency, and attach a
/// verified reducing projection when the system is reducible.
pub fn analyze(sys: &LindbladSystem, tol: &ToleranceConfig) -> Result<ReducibilityReport> {
    let algebra = check_davies_algebra(sys, tol);
    let steady = check_davies_steady(sys, tol);
    let evans = check_evans(sys, tol);
    let f1 = check_frigerio_first(sys, tol);
    let f2 = check_frigerio_second(sys, tol);
    assemble_report(sys, tol, algebra, steady, evans, f1, f2)
}

/// Same as [`analyze`] with the five independent sub-verdicts computed on
/// scoped threads. Results are assembled in a fixed order, so the report is
/// identical to the sequential one.
pub fn analyze_parallel(sys: &LindbladSystem, tol: &ToleranceConfig) -> Result<ReducibilityReport> {
    std::thread::scope(|scope| {
        let algebra = scope.spawn(|| check_davies_algebra(sys, tol));
        let steady = scope.spawn(|| check_davies_steady(sys, tol));
        let evans = scope.spawn(|| check_evans(sys, tol));
        let f1 = scope.spawn(|| check_frigerio_first(sys, tol));
        let f2 = scope.spawn(|| check_frigerio_second(sys, tol));
        let algebra = algebra.join().expect("algebra checker panicked");
        let steady = steady.join().expect("steady checker panicked");
        let evans = evans.join().expect("evans checker panicked");
        let f1 = f1.join().expect("frigerio-1 checker panicked");
        let f2 = f2.join().expect("frigerio-2 checker panicked");
        assemble_report(sys, tol, algebra, steady, evans, f1, f2)
    })
}

#[allow(clippy::type_complexity)]
fn assemble_report(
    sys: &LindbladSystem,
    tol: &ToleranceConfig,
    algebra: Result<(DaviesVerdict, AlgebraClosureResult)>,
    steady: Result<(DaviesVerdict, SteadyStateSet)>,
    evans: Result<(EvansVerdict, Option<CMatrix>)>,
    f1: Result<Frigerio1Outcome>,
    f2: Result<Frigerio2Outcome>,
) -> Result<ReducibilityReport> {
    let (algebra_verdict, closure) = algebra?;
    let (steady_verdict, ss) = steady?;
    if algebra_verdict != steady_verdict {
        return Err(Error::CheckerDisagreement {
            algebra_verdict: algebra_verdict.to_string(),
            algebra_dim: closure.dim,
            steady_verdict: steady_verdict.to_string(),
            null_dim: ss.null_dim,
            support_rank: ss.support_rank,
        });
    }
    let (evans_verdict, conserved_projection) = evans?;
    if evans_verdict == EvansVerdict::EvansReducible
        && algebra_verdict == DaviesVerdict::Irreducible
    {
        return Err(Error::CheckerDisagreement {
            algebra_verdict: algebra_verdict.to_string(),
            algebra_dim: closure.dim,
            steady_verdict: format!("{evans_verdict} (Evans reducibility implies Davies reducibility)"),
            null_dim: ss.null_dim,
            support_rank: ss.support_rank,
        });
    }
    let frigerio_first = f1?;
    let frigerio_second = f2?;

    let (reducing_projection, witness_residuals) = match algebra_verdict {
        DaviesVerdict::Irreducible => (None, Vec::new()),
        DaviesVerdict::Reducible => {
            let p = find_reducing_projection(sys, tol)?;
            match p {
                Some(p) => {
                    let check = verify_reducing_projection(sys, &p, tol)?;
                    (Some(p), check.residuals)
                }
                None => {
                    return Err(Error::NoWitnessFound {
                        diagnostics: "checkers agree on Reducible but the witness search \
                                      claims irreducibility"
                            .into(),
                    })
                }
            }
        }
    };

    Ok(ReducibilityReport {
        davies_algebra_verdict: algebra_verdict,
        algebra_dim: closure.dim,
        davies_steady_verdict: steady_verdict,
        null_dim: ss.null_dim,
        support_rank: ss.support_rank,
        reducing_projection,
        witness_residuals,
        evans_verdict,
        conserved_projection,
        frigerio_first,
        frigerio_second,
    })
}

/// Orthonormal basis of the operator subspace spanned by Hermitized kernel
/// elements of the adjoint generator (the conserved quantities).
pub fn conserved_quantities(sys: &LindbladSystem, tol: &ToleranceConfig) -> Result<OperatorSubspace> {
    let adj = adjoint_superoperator(sys);
    let kernel = crate::operators::null_space(&adj.matrix, tol);
    let d = sys.dim();
    let mut ops = Vec::new();
    for v in &kernel {
        let x = crate::operators::unvec_op(v, d);
        ops.push((&x + x.adjoint()).scale(0.5));
        ops.push((&x - x.adjoint()).scale(0.5) * c(0.0, -1.0));
    }
    OperatorSubspace::from_span(&ops, tol)
}
