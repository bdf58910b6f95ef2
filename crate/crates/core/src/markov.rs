//! Quantum channels from the semigroup, Choi/Kraus machinery, projection of
//! a channel onto classical Markov chains, strong-connectivity tests, and
//! DOT graph export.
//!
//! Choi convention (fixed project-wide, paired with the column-stacking
//! vectorization): `Choi(𝓔) = Σ_ij 𝓔(|i⟩⟨j|) ⊗ |i⟩⟨j|`.

use serde::Serialize;

use crate::liouvillian::{build_superoperator, LindbladSystem};
use crate::operators::{
    c, eig_hermitian, tensor, unvec_op, vec_op, CMatrix, ToleranceConfig,
};
use crate::random::{haar_unitary, rng_from_seed};
use crate::{Error, Result};

/// A completely positive trace-preserving map stored as its `d²×d²`
/// superoperator matrix.
#[derive(Debug, Clone)]
pub struct QuantumChannel {
    pub dim: usize,
    pub matrix: CMatrix,
    /// Evolution time when the channel was built as `e^{𝓛t}`.
    pub time_tag: Option<f64>,
}

impl QuantumChannel {
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        unvec_op(&(&self.matrix * vec_op(rho)), self.dim)
    }
}

/// Build `𝓔 = e^{𝓛t}` and audit trace preservation and complete positivity.
pub fn channel_from_liouvillian(
    sys: &LindbladSystem,
    t: f64,
    tol: &ToleranceConfig,
) -> Result<QuantumChannel> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::ChannelAudit { what: format!("evolution time {t} must be finite and > 0") });
    }
    let sup = build_superoperator(sys);
    let matrix = (sup.matrix.scale(t)).exp();
    let ch = QuantumChannel { dim: sys.dim(), matrix, time_tag: Some(t) };

    let d = ch.dim;
    let id = CMatrix::identity(d, d);
    let tp = (ch.matrix.adjoint() * vec_op(&id) - vec_op(&id)).norm();
    if tp > tol.residual * (d as f64) {
        return Err(Error::ChannelAudit { what: format!("trace preservation defect {tp:e}") });
    }
    let choi = choi_matrix(&ch);
    let (eigs, _) = eig_hermitian(&choi, tol)?;
    let min_eig = eigs.first().copied().unwrap_or(0.0);
    if min_eig < -tol.psd * (d as f64) {
        return Err(Error::NotCompletelyPositive { min_eigenvalue: min_eig });
    }
    Ok(ch)
}

/// Choi matrix `Σ_ij 𝓔(|i⟩⟨j|) ⊗ |i⟩⟨j|`: Hermitian, PSD for a channel,
/// with partial trace over the output factor equal to the identity.
pub fn choi_matrix(ch: &QuantumChannel) -> CMatrix {
    let d = ch.dim;
    let mut choi = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            // vec(|i⟩⟨j|) = e_{jd+i} under column stacking.
            let image = unvec_op(&ch.matrix.column(j * d + i).clone_owned(), d);
            let mut unit = CMatrix::zeros(d, d);
            unit[(i, j)] = c(1.0, 0.0);
            choi += tensor(&image, &unit);
        }
    }
    choi
}

/// Operator-sum representation `𝓔(ρ) = Σ_k M_k ρ M_k†`.
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub operators: Vec<CMatrix>,
}

impl KrausSet {
    /// `‖Σ M_k†M_k − 𝟙‖`, zero for a trace-preserving channel.
    pub fn completeness_defect(&self) -> f64 {
        let d = self.operators.first().map_or(0, |m| m.nrows());
        let mut sum = CMatrix::zeros(d, d);
        for m in &self.operators {
            sum += m.adjoint() * m;
        }
        (sum - CMatrix::identity(d, d)).norm()
    }

    /// Rebuild the superoperator matrix `Σ_k M̄_k ⊗ M_k`.
    pub fn to_superoperator(&self) -> CMatrix {
        let d = self.operators.first().map_or(0, |m| m.nrows());
        let mut sup = CMatrix::zeros(d * d, d * d);
        for m in &self.operators {
            sup += tensor(&m.conjugate(), m);
        }
        sup
    }
}

/// Kraus operators from the eigendecomposition of a Choi matrix.
///
/// Eigenvalues above `tol.rank_rel·λ_max` contribute `M_k = √λ_k·mat(v_k)`,
/// where `mat` unflattens an eigenvector with the index layout of the Choi
/// convention above (component `a·d + i` is entry `(a, i)`). Negative
/// eigenvalues beyond the PSD floor are rejected.
pub fn kraus_from_choi(choi: &CMatrix, tol: &ToleranceConfig) -> Result<KrausSet> {
    let d2 = choi.nrows();
    let d = (d2 as f64).sqrt().round() as usize;
    if d * d != d2 || choi.ncols() != d2 {
        return Err(Error::DimensionMismatch {
            expected: "d²×d² Choi matrix".into(),
            found: format!("{:?}", choi.shape()),
        });
    }
    let (eigs, vecs) = eig_hermitian(choi, tol)?;
    let max_eig = eigs.iter().cloned().fold(0.0_f64, f64::max);
    if let Some(&min_eig) = eigs.first() {
        if min_eig < -tol.psd * (1.0 + max_eig) {
            return Err(Error::NotCompletelyPositive { min_eigenvalue: min_eig });
        }
    }
    let mut operators = Vec::new();
    for (k, &lambda) in eigs.iter().enumerate() {
        if lambda > tol.rank_rel * max_eig.max(tol.rank_abs) {
            let v = vecs.column(k);
            let mut m = CMatrix::zeros(d, d);
            for a in 0..d {
                for i in 0..d {
                    m[(a, i)] = v[a * d + i] * c(lambda.sqrt(), 0.0);
                }
            }
            operators.push(m);
        }
    }
    Ok(KrausSet { operators })
}

/// Kraus decomposition of a channel via its Choi matrix.
pub fn kraus_set(ch: &QuantumChannel, tol: &ToleranceConfig) -> Result<KrausSet> {
    kraus_from_choi(&choi_matrix(ch), tol)
}

/// Column-stochastic matrix of a classical Markov process extracted from a
/// quantum channel in a fixed orthonormal basis.
#[derive(Debug, Clone)]
pub struct StochasticMatrix {
    pub dim: usize,
    /// `entries[(i, j)]` is the probability of `j → i`; columns sum to one.
    pub entries: nalgebra::DMatrix<f64>,
    pub basis_labels: Option<Vec<String>>,
}

/// `P_ij = ⟨i|𝓔(|j⟩⟨j|)|i⟩` with `|i⟩` the columns of a unitary `basis`.
///
/// Entries are clamped to `[0, 1]` after an audit allowing excursions up to
/// the PSD tolerance; column sums must be one within tolerance.
pub fn classical_transition_matrix(
    ch: &QuantumChannel,
    basis: &CMatrix,
    tol: &ToleranceConfig,
) -> Result<StochasticMatrix> {
    let d = ch.dim;
    if basis.shape() != (d, d) {
        return Err(Error::DimensionMismatch {
            expected: format!("{d}×{d} basis"),
            found: format!("{:?}", basis.shape()),
        });
    }
    let unitarity = (basis.adjoint() * basis - CMatrix::identity(d, d)).norm();
    if unitarity > tol.orthonormality * (d as f64) {
        return Err(Error::NonUnitaryBasis { deviation: unitarity });
    }
    let mut entries = nalgebra::DMatrix::<f64>::zeros(d, d);
    for j in 0..d {
        let bj = basis.column(j).clone_owned();
        let proj = &bj * bj.adjoint();
        let image = ch.apply(&proj);
        for i in 0..d {
            let bi = basis.column(i).clone_owned();
            let p = (bi.adjoint() * &image * bi)[(0, 0)];
            if p.re < -tol.psd || p.im.abs() > tol.psd {
                return Err(Error::StochasticAudit {
                    what: format!("entry ({i},{j}) = {p} outside [0,1] beyond tolerance"),
                });
            }
            entries[(i, j)] = p.re.clamp(0.0, 1.0);
        }
    }
    for j in 0..d {
        let sum: f64 = entries.column(j).sum();
        if (sum - 1.0).abs() > tol.residual * (d as f64) {
            return Err(Error::StochasticAudit { what: format!("column {j} sums to {sum}") });
        }
    }
    Ok(StochasticMatrix { dim: d, entries, basis_labels: None })
}

/// Tarjan strongly connected components of a directed adjacency list.
fn tarjan_scc(graph: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State {
        index: usize,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        comps: Vec<Vec<usize>>,
    }

    fn connect(v: usize, graph: &[Vec<usize>], st: &mut State) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &graph[v] {
            if st.idx[w].is_none() {
                connect(w, graph, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }
        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            while let Some(w) = st.stack.pop() {
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.comps.push(comp);
        }
    }

    let n = graph.len();
    let mut st = State {
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, graph, &mut st);
        }
    }
    st.comps.sort();
    st.comps
}

/// Strong-connectivity verdict of the support digraph (edge `j → i` iff
/// `P_ij > support_tol`) plus the strongly connected components.
pub fn is_irreducible_markov(p: &StochasticMatrix, support_tol: f64) -> (bool, Vec<Vec<usize>>) {
    let n = p.dim;
    let mut graph = vec![Vec::new(); n];
    for (j, edges) in graph.iter_mut().enumerate() {
        for i in 0..n {
            if p.entries[(i, j)] > support_tol {
                edges.push(i);
            }
        }
    }
    let comps = tarjan_scc(&graph);
    (comps.len() == 1, comps)
}

/// Outcome of a basis probe. The test is one-sided: a classically reducible
/// basis certifies quantum reducibility, while an all-irreducible outcome
/// proves nothing (reducible channels generally still admit bases whose
/// classical chain is irreducible).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    WitnessFound,
    NoWitnessFound,
}

/// Report of a reducibility basis probe.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    /// Index of the first basis whose classical chain was reducible:
    /// 0 is the computational basis, 1..=trials are the seeded random bases,
    /// trials+1 is the projection-adapted basis when one was supplied.
    pub witness_basis_index: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub t: f64,
}

/// Probe for classical reducibility witnesses over (a) the computational
/// basis, (b) `trials` Haar-random bases with per-trial seeds derived from
/// `seed`, and (c) a basis adapted to a known reducing projection (its image
/// basis extended by the complement) when available.
pub fn basis_probe(
    sys: &LindbladSystem,
    t: f64,
    trials: usize,
    seed: u64,
    reducing_projection: Option<&CMatrix>,
    tol: &ToleranceConfig,
) -> Result<ProbeReport> {
    let d = sys.dim();
    let ch = channel_from_liouvillian(sys, t, tol)?;

    let mut bases: Vec<(usize, CMatrix)> = vec![(0, CMatrix::identity(d, d))];
    for trial in 0..trials {
        let mut rng = rng_from_seed(seed.wrapping_add(trial as u64));
        bases.push((trial + 1, haar_unitary(d, &mut rng)));
    }
    if let Some(p) = reducing_projection {
        let (eigs, vecs) = eig_hermitian(p, tol)?;
        // Image eigenvectors (eigenvalue 1) first, then the complement.
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eigs[b].partial_cmp(&eigs[a]).unwrap());
        let cols: Vec<_> = order.iter().map(|&k| vecs.column(k).clone_owned()).collect();
        bases.push((trials + 1, CMatrix::from_columns(&cols)));
    }

    for (index, basis) in &bases {
        let p = classical_transition_matrix(&ch, basis, tol)?;
        let (irreducible, _) = is_irreducible_markov(&p, tol.markov_edge);
        if !irreducible {
            return Ok(ProbeReport {
                verdict: ProbeVerdict::WitnessFound,
                witness_basis_index: Some(*index),
                trials,
                seed,
                t,
            });
        }
    }
    Ok(ProbeReport {
        verdict: ProbeVerdict::NoWitnessFound,
        witness_basis_index: None,
        trials,
        seed,
        t,
    })
}

/// Format with six significant digits, trimming trailing zeros (the C
/// `%.6g` rule).
pub(crate) fn format_g6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        let mantissa_digits = 5;
        let s = format!("{:.*e}", mantissa_digits, x);
        // Trim trailing zeros in the mantissa: "1.50000e-7" → "1.5e-7".
        if let Some(epos) = s.find('e') {
            let (mant, expn) = s.split_at(epos);
            let mant = mant.trim_end_matches('0').trim_end_matches('.');
            format!("{mant}{expn}")
        } else {
            s
        }
    } else {
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    }
}

/// Render the support graph of a stochastic matrix as DOT text.
///
/// Nodes appear in basis order named by `basis_labels` (or `b<i>`); edges
/// with weight above `threshold` appear in column-major order with `%.6g`
/// labels, so output is deterministic.
pub fn export_dot(p: &StochasticMatrix, threshold: f64) -> String {
    let name = |i: usize| -> String {
        p.basis_labels
            .as_ref()
            .and_then(|labels| labels.get(i).cloned())
            .unwrap_or_else(|| format!("b{i}"))
    };
    let mut out = String::from("digraph markov {\n  rankdir=LR;\n");
    for i in 0..p.dim {
        out.push_str(&format!("  \"{}\";\n", name(i)));
    }
    for j in 0..p.dim {
        for i in 0..p.dim {
            let w = p.entries[(i, j)];
            if w > threshold {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                    name(j),
                    name(i),
                    format_g6(w)
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{dephasing, loss_gain, two_site_ferromagnet, up_driven};
    use crate::random::{random_system, rng_from_seed};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn loss_gain_channel_population_block() {
        // Populations mix as (1 ± e^{−2t})/2 while coherences decay as e^{−t}.
        let t_cfg = tol();
        let t = 0.8;
        let ch = channel_from_liouvillian(&loss_gain(1.0, 1.0), t, &t_cfg).unwrap();
        let p_dn = crate::models::proj_down();
        let out = ch.apply(&p_dn);
        let decay = (-2.0 * t).exp();
        assert!((out[(0, 0)].re - (1.0 - decay) / 2.0).abs() < 1e-12);
        assert!((out[(1, 1)].re - (1.0 + decay) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn dephasing_channel_scales_coherences_only() {
        let t_cfg = tol();
        let t = 1.3;
        let ch = channel_from_liouvillian(&dephasing(), t, &t_cfg).unwrap();
        let rho = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.7, 0.0), c(0.2, 0.1), c(0.2, -0.1), c(0.3, 0.0)],
        );
        let out = ch.apply(&rho);
        let decay = (-2.0 * t).exp();
        assert!((out[(0, 0)] - rho[(0, 0)]).norm() < 1e-12);
        assert!((out[(1, 1)] - rho[(1, 1)]).norm() < 1e-12);
        assert!((out[(0, 1)] - rho[(0, 1)] * c(decay, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn choi_of_identity_channel_is_maximally_entangled() {
        let d = 3;
        let ch = QuantumChannel { dim: d, matrix: CMatrix::identity(d * d, d * d), time_tag: None };
        let choi = choi_matrix(&ch);
        // |Ω⟩⟨Ω| with |Ω⟩ = Σ_i |ii⟩ in the (output ⊗ input) index layout.
        let mut omega = crate::operators::CVector::zeros(d * d);
        for i in 0..d {
            omega[i * d + i] = c(1.0, 0.0);
        }
        let want = &omega * omega.adjoint();
        assert!((choi - want).norm() < 1e-13);
    }

    #[test]
    fn choi_partial_trace_over_output_is_identity() {
        let t_cfg = tol();
        let mut rng = rng_from_seed(19);
        let sys = random_system(3, 2, &mut rng).unwrap();
        let ch = channel_from_liouvillian(&sys, 0.7, &t_cfg).unwrap();
        let choi = choi_matrix(&ch);
        let d = ch.dim;
        // Trace out the first (output) tensor factor.
        let mut reduced = CMatrix::zeros(d, d);
        for a in 0..d {
            for i in 0..d {
                for j in 0..d {
                    reduced[(i, j)] += choi[(a * d + i, a * d + j)];
                }
            }
        }
        assert!((reduced - CMatrix::identity(d, d)).norm() < 1e-10);
    }

    #[test]
    fn kraus_of_identity_channel_is_identity() {
        let t_cfg = tol();
        let d = 2;
        let ch = QuantumChannel { dim: d, matrix: CMatrix::identity(d * d, d * d), time_tag: None };
        let kraus = kraus_set(&ch, &t_cfg).unwrap();
        assert_eq!(kraus.operators.len(), 1);
        let m = &kraus.operators[0];
        // Single Kraus operator proportional to 𝟙 with |phase| = 1.
        assert!((m * m.adjoint() - CMatrix::identity(d, d)).norm() < 1e-12);
        assert!((m[(0, 0)] - m[(1, 1)]).norm() < 1e-12);
        assert!(m[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn kraus_round_trip_reconstructs_channel() {
        let t_cfg = tol();
        let mut rng = rng_from_seed(31);
        for _ in 0..20 {
            let sys = random_system(3, 2, &mut rng).unwrap();
            let ch = channel_from_liouvillian(&sys, 1.0, &t_cfg).unwrap();
            let kraus = kraus_set(&ch, &t_cfg).unwrap();
            assert!(kraus.completeness_defect() < 1e-10);
            assert!((kraus.to_superoperator() - &ch.matrix).norm() < 1e-9);
        }
    }

    #[test]
    fn ferromagnet_chain_in_computational_basis() {
        // At e^{−2t} = 1/2 the cross edges are 1/4 and inner self-loops 1/2.
        let t_cfg = tol();
        let t = 0.5 * 2.0_f64.ln();
        let ch = channel_from_liouvillian(&two_site_ferromagnet(), t, &t_cfg).unwrap();
        let p = classical_transition_matrix(&ch, &CMatrix::identity(4, 4), &t_cfg).unwrap();
        assert!((p.entries[(0, 1)] - 0.25).abs() < 1e-12);
        assert!((p.entries[(3, 1)] - 0.25).abs() < 1e-12);
        assert!((p.entries[(1, 1)] - 0.5).abs() < 1e-12);
        assert!((p.entries[(0, 0)] - 1.0).abs() < 1e-12);
        let (irr, comps) = is_irreducible_markov(&p, t_cfg.markov_edge);
        assert!(!irr);
        // The all-up and all-down states are absorbing singleton classes.
        assert!(comps.contains(&vec![0]));
        assert!(comps.contains(&vec![3]));
    }

    #[test]
    fn driven_two_level_chain_both_bases() {
        let t_cfg = tol();
        let t = 1.0;
        let ch = channel_from_liouvillian(&up_driven(), t, &t_cfg).unwrap();

        let comp = classical_transition_matrix(&ch, &CMatrix::identity(2, 2), &t_cfg).unwrap();
        assert!((comp.entries[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((comp.entries[(1, 1)] - (-t).exp()).abs() < 1e-12);
        assert!((comp.entries[(0, 1)] - (1.0 - (-t).exp())).abs() < 1e-12);
        let (irr, _) = is_irreducible_markov(&comp, t_cfg.markov_edge);
        assert!(!irr, "computational basis witnesses reducibility");

        let s = 0.5_f64.sqrt();
        let rotated = CMatrix::from_row_slice(2, 2, &[c(s, 0.), c(s, 0.), c(s, 0.), c(-s, 0.)]);
        let rot = classical_transition_matrix(&ch, &rotated, &t_cfg).unwrap();
        let stay = (1.0 + (-t / 2.0).exp()) / 2.0;
        let hop = (1.0 - (-t / 2.0).exp()) / 2.0;
        assert!((rot.entries[(0, 0)] - stay).abs() < 1e-12);
        assert!((rot.entries[(1, 1)] - stay).abs() < 1e-12);
        assert!((rot.entries[(0, 1)] - hop).abs() < 1e-12);
        assert!((rot.entries[(1, 0)] - hop).abs() < 1e-12);
        let (irr, _) = is_irreducible_markov(&rot, t_cfg.markov_edge);
        assert!(irr, "rotated basis gives an irreducible chain");
    }

    #[test]
    fn dephasing_chain_is_two_disconnected_loops() {
        let t_cfg = tol();
        let ch = channel_from_liouvillian(&dephasing(), 1.0, &t_cfg).unwrap();
        let p = classical_transition_matrix(&ch, &CMatrix::identity(2, 2), &t_cfg).unwrap();
        assert!((p.entries[(0, 0)] - 1.0).abs() < 1e-12);
        assert!((p.entries[(1, 1)] - 1.0).abs() < 1e-12);
        let (irr, comps) = is_irreducible_markov(&p, t_cfg.markov_edge);
        assert!(!irr);
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn identity_chain_is_reducible_for_two_or_more_states() {
        let p = StochasticMatrix {
            dim: 2,
            entries: nalgebra::DMatrix::identity(2, 2),
            basis_labels: None,
        };
        let (irr, comps) = is_irreducible_markov(&p, 1e-10);
        assert!(!irr);
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn probe_finds_ferromagnet_witness_in_computational_basis() {
        let t_cfg = tol();
        let report = basis_probe(&two_site_ferromagnet(), 1.0, 3, 7, None, &t_cfg).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::WitnessFound);
        assert_eq!(report.witness_basis_index, Some(0));
    }

    #[test]
    fn probe_adapted_basis_catches_rotated_invariant_subspace() {
        // Conjugate the ferromagnet by a fixed unitary: the computational
        // basis no longer witnesses reducibility, but the basis adapted to
        // the rotated invariant subspace must.
        let t_cfg = tol();
        let mut rng = rng_from_seed(12345);
        let u = crate::random::haar_unitary(4, &mut rng);
        let base = two_site_ferromagnet();
        let h = &u * base.hamiltonian() * u.adjoint();
        let lindblads: Vec<CMatrix> =
            base.lindblads().iter().map(|l| &u * l * u.adjoint()).collect();
        let sys =
            crate::liouvillian::LindbladSystem::new(h, lindblads, &t_cfg).unwrap();

        let mut p_up = CMatrix::zeros(4, 4);
        p_up[(0, 0)] = c(1.0, 0.0);
        let rotated_projection = &u * p_up * u.adjoint();

        let trials = 2;
        let report =
            basis_probe(&sys, 1.0, trials, 99, Some(&rotated_projection), &t_cfg).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::WitnessFound);
        assert_eq!(
            report.witness_basis_index,
            Some(trials + 1),
            "the projection-adapted basis is the witness"
        );
    }

    #[test]
    fn probe_reports_no_witness_for_loss_gain() {
        let t_cfg = tol();
        let report = basis_probe(&loss_gain(1.0, 1.0), 1.0, 5, 11, None, &t_cfg).unwrap();
        assert_eq!(report.verdict, ProbeVerdict::NoWitnessFound);
        assert_eq!(report.witness_basis_index, None);
    }

    #[test]
    fn probe_report_serializes_with_fixed_fields() {
        let t_cfg = tol();
        let report = basis_probe(&two_site_ferromagnet(), 1.0, 2, 9, None, &t_cfg).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "witness_found");
        assert_eq!(json["witness_basis_index"], 0);
        assert_eq!(json["trials"], 2);
        assert_eq!(json["seed"], 9);
        assert_eq!(json["t"], 1.0);
    }

    #[test]
    fn g6_formatting() {
        assert_eq!(format_g6(0.25), "0.25");
        assert_eq!(format_g6(1.0), "1");
        assert_eq!(format_g6(0.0), "0");
        assert_eq!(format_g6(0.135335), "0.135335");
        assert_eq!(format_g6(1.5e-7), "1.5e-7");
        assert_eq!(format_g6(123456.0), "123456");
    }

    #[test]
    fn dot_export_shape() {
        let mut entries = nalgebra::DMatrix::zeros(1, 1);
        entries[(0, 0)] = 1.0;
        let p = StochasticMatrix { dim: 1, entries, basis_labels: None };
        let dot = export_dot(&p, 1e-10);
        assert!(dot.contains("\"b0\" -> \"b0\" [label=\"1\"]"));
        // A threshold above every weight removes all edges.
        let none = export_dot(&p, 1.1);
        assert!(!none.contains("->"));
    }
}
