//! Named model constructors: single-qubit systems with exactly solvable
//! steady states, the two-site ferromagnet, and dissipative spin-1/2 chains
//! (transverse Ising, XX, XXZ, and general XYZ couplings).
//!
//! Basis convention: `|↑⟩ = (1,0)ᵀ`, `|↓⟩ = (0,1)ᵀ`, and site 1 is the
//! leftmost tensor factor.

use num_complex::Complex64 as C64;

use crate::liouvillian::LindbladSystem;
use crate::operators::{c, tensor, CMatrix, ToleranceConfig};
use crate::{Error, Result};

pub fn sigma_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
}

pub fn sigma_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
}

pub fn sigma_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
}

/// Raising operator `σ⁺ = |↑⟩⟨↓|`.
pub fn sigma_plus() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)])
}

/// Lowering operator `σ⁻ = |↓⟩⟨↑|`.
pub fn sigma_minus() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)])
}

/// Projector `|↑⟩⟨↑|`.
pub fn proj_up() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)])
}

/// Projector `|↓⟩⟨↓|`.
pub fn proj_down() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)])
}

fn sys(h: CMatrix, lindblads: Vec<CMatrix>) -> LindbladSystem {
    LindbladSystem::new(h, lindblads, &ToleranceConfig::default())
        .expect("model constructors produce valid systems")
}

/// Two-level system with `H = h·σˣ` and explicit Lindblad operators.
pub fn two_level(h: f64, lindblads: Vec<CMatrix>) -> LindbladSystem {
    sys(sigma_x().scale(h), lindblads)
}

/// `H = 0`, `L = [[1,1],[0,1]]`: irreducible with a faithful steady state
/// even though span{L} is not self-adjoint.
pub fn lind1101() -> LindbladSystem {
    let l = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(1., 0.), c(0., 0.), c(1., 0.)]);
    sys(CMatrix::zeros(2, 2), vec![l])
}

/// `H = 0`, `L₁ = [[0,1],[0,1]]`, `L₂ = [[0,1],[0,2]]`: reducible with the
/// unique pure steady state `|↑⟩⟨↑|` despite a trivial commutant.
pub fn lind0101_lind0102() -> LindbladSystem {
    let l1 = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(1., 0.)]);
    let l2 = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(2., 0.)]);
    sys(CMatrix::zeros(2, 2), vec![l1, l2])
}

/// `H = σʸ/2`, `L = [[1,1],[0,1]]`: the Hamiltonian makes L and K jointly
/// upper triangular, so the system is reducible with pure steady state
/// `|↑⟩⟨↑|`.
pub fn lind1101hsy() -> LindbladSystem {
    let l = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(1., 0.), c(0., 0.), c(1., 0.)]);
    sys(sigma_y().scale(0.5), vec![l])
}

/// `H = 0`, `L₁ = [[1,1],[0,1]]`, `L₂ = [[1,−1],[0,1]]`: the second
/// dissipator diagonalizes K and kills irreducibility; steady state
/// `|↑⟩⟨↑|`.
pub fn upper_triangular_pair() -> LindbladSystem {
    let l1 = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(1., 0.), c(0., 0.), c(1., 0.)]);
    let l2 = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(-1., 0.), c(0., 0.), c(1., 0.)]);
    sys(CMatrix::zeros(2, 2), vec![l1, l2])
}

/// `H = hσˣ`, `L = σ⁺`: reducible at `h = 0`, irreducible for `h ≠ 0` with
/// steady state `[[1−a, b],[b*, a]]`, `a = 4h²/(1+8h²)`, `b = 2ih/(1+8h²)`.
pub fn lindsphsx(h: f64) -> LindbladSystem {
    two_level(h, vec![sigma_plus()])
}

/// Loss and gain: `L₊ = √γ₊·σ⁺`, `L₋ = √γ₋·σ⁻`.
pub fn loss_gain(gamma_plus: f64, gamma_minus: f64) -> LindbladSystem {
    sys(
        CMatrix::zeros(2, 2),
        vec![sigma_plus().scale(gamma_plus.sqrt()), sigma_minus().scale(gamma_minus.sqrt())],
    )
}

/// Pure dephasing `L = σᶻ`; both computational projectors are conserved.
pub fn dephasing() -> LindbladSystem {
    sys(CMatrix::zeros(2, 2), vec![sigma_z()])
}

/// Driven two-level system `L = σ⁺` with no Hamiltonian; `|↑⟩` is absorbing.
pub fn up_driven() -> LindbladSystem {
    sys(CMatrix::zeros(2, 2), vec![sigma_plus()])
}

/// Embed a single-site operator at `site` (1-based, site 1 leftmost) in an
/// `n`-site chain: `1 ⊗ … ⊗ op ⊗ … ⊗ 1`.
pub fn site_operator(n: usize, site: usize, op: &CMatrix) -> Result<CMatrix> {
    if site == 0 || site > n {
        return Err(Error::SiteOutOfRange { site, n_sites: n });
    }
    let mut out = CMatrix::identity(1, 1);
    for i in 1..=n {
        let factor = if i == site { op.clone() } else { CMatrix::identity(2, 2) };
        out = tensor(&out, &factor);
    }
    Ok(out)
}

/// Two spins with collective dephasing and correlated flips; no Hamiltonian.
///
/// The Lindblad operators are `σᶻ₁`, `σᶻ₂`, `P₁↑σ₂⁺`, `P₁↓σ₂⁻`, `P₂↑σ₁⁺`,
/// `P₂↓σ₁⁻`. Both `|↑↑⟩⟨↑↑|` and `|↓↓⟩⟨↓↓|` are steady states, yet the
/// commutant of the Lindblad operators and their adjoints is trivial: the
/// standard example separating the two notions of irreducibility.
pub fn two_site_ferromagnet() -> LindbladSystem {
    let n = 2;
    let op = |site, m: &CMatrix| site_operator(n, site, m).unwrap();
    let lindblads = vec![
        op(1, &sigma_z()),
        op(2, &sigma_z()),
        op(1, &proj_up()) * op(2, &sigma_plus()),
        op(1, &proj_down()) * op(2, &sigma_minus()),
        op(2, &proj_up()) * op(1, &sigma_plus()),
        op(2, &proj_down()) * op(1, &sigma_minus()),
    ];
    sys(CMatrix::zeros(4, 4), lindblads)
}

/// Boundary conditions for spin chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Periodic,
}

/// Single-site dissipator kinds; the rate enters as a `√rate` prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DissipatorKind {
    /// `σ⁺` (pumping toward `|↑⟩`).
    Gain,
    /// `σ⁻` (decay toward `|↓⟩`).
    Loss,
    /// `σᶻ`.
    Dephase,
}

/// One dissipator acting on one site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dissipator {
    /// 1-based site index.
    pub site: usize,
    pub kind: DissipatorKind,
    pub rate: f64,
}

/// Parameters of a spin-1/2 chain
/// `H = Σᵢ hᵢσᶻᵢ + Σᵢ (Jˣᵢσˣᵢσˣᵢ₊₁ + Jʸᵢσʸᵢσʸᵢ₊₁ + Jᶻᵢσᶻᵢσᶻᵢ₊₁)`
/// with per-site dissipators.
///
/// Coupling lists have length `n_sites − 1` for open chains and `n_sites`
/// for periodic ones (the last triple couples sites `(N, 1)`).
#[derive(Debug, Clone)]
pub struct SpinChainSpec {
    pub n_sites: usize,
    pub fields: Vec<f64>,
    pub jx: Vec<f64>,
    pub jy: Vec<f64>,
    pub jz: Vec<f64>,
    pub boundary: Boundary,
    pub dissipators: Vec<Dissipator>,
}

impl SpinChainSpec {
    fn validate(&self) -> Result<()> {
        let n = self.n_sites;
        if n < 1 {
            return Err(Error::InvalidSpinChainSpec("need at least one site".into()));
        }
        let bonds = match self.boundary {
            Boundary::Open => n.saturating_sub(1),
            Boundary::Periodic => n,
        };
        if self.fields.len() != n {
            return Err(Error::InvalidSpinChainSpec(format!(
                "expected {n} field values, got {}",
                self.fields.len()
            )));
        }
        for (name, list) in [("jx", &self.jx), ("jy", &self.jy), ("jz", &self.jz)] {
            if list.len() != bonds {
                return Err(Error::InvalidSpinChainSpec(format!(
                    "expected {bonds} {name} couplings, got {}",
                    list.len()
                )));
            }
        }
        for dis in &self.dissipators {
            if dis.site == 0 || dis.site > n {
                return Err(Error::SiteOutOfRange { site: dis.site, n_sites: n });
            }
            if dis.rate < 0.0 {
                return Err(Error::InvalidSpinChainSpec(format!(
                    "negative rate {} on site {}",
                    dis.rate, dis.site
                )));
            }
        }
        Ok(())
    }
}

/// Build the Lindblad system for a general XYZ chain spec.
pub fn xyz_chain(spec: &SpinChainSpec) -> Result<LindbladSystem> {
    spec.validate()?;
    let n = spec.n_sites;
    let d = 1usize << n;
    let op = |site, m: &CMatrix| site_operator(n, site, m);

    let mut h = CMatrix::zeros(d, d);
    for (i, &field) in spec.fields.iter().enumerate() {
        if field != 0.0 {
            h += op(i + 1, &sigma_z())?.scale(field);
        }
    }
    let bonds = match spec.boundary {
        Boundary::Open => n - 1,
        Boundary::Periodic => n,
    };
    for b in 0..bonds {
        let (i, j) = (b + 1, (b % n) + 2);
        let j = if j > n { 1 } else { j };
        for (coupling, pauli) in
            [(&spec.jx, sigma_x()), (&spec.jy, sigma_y()), (&spec.jz, sigma_z())]
        {
            if coupling[b] != 0.0 {
                h += (op(i, &pauli)? * op(j, &pauli)?).scale(coupling[b]);
            }
        }
    }

    let mut lindblads = Vec::new();
    for dis in &spec.dissipators {
        let local = match dis.kind {
            DissipatorKind::Gain => sigma_plus(),
            DissipatorKind::Loss => sigma_minus(),
            DissipatorKind::Dephase => sigma_z(),
        };
        lindblads.push(op(dis.site, &local)?.scale(dis.rate.sqrt()));
    }

    LindbladSystem::new(h, lindblads, &ToleranceConfig::default())
}

/// Transverse Ising chain (`Jʸ = Jᶻ = 0`) with gain and loss at the left
/// boundary.
pub fn transverse_ising_boundary(
    n: usize,
    h: f64,
    j: f64,
    gamma_plus: f64,
    gamma_minus: f64,
) -> Result<LindbladSystem> {
    xyz_chain(&SpinChainSpec {
        n_sites: n,
        fields: vec![h; n],
        jx: vec![j; n - 1],
        jy: vec![0.0; n - 1],
        jz: vec![0.0; n - 1],
        boundary: Boundary::Open,
        dissipators: vec![
            Dissipator { site: 1, kind: DissipatorKind::Gain, rate: gamma_plus },
            Dissipator { site: 1, kind: DissipatorKind::Loss, rate: gamma_minus },
        ],
    })
}

/// XYZ chain with gain and loss at the left boundary.
pub fn xyz_boundary(
    n: usize,
    h: f64,
    jx: f64,
    jy: f64,
    jz: f64,
    gamma_plus: f64,
    gamma_minus: f64,
) -> Result<LindbladSystem> {
    xyz_chain(&SpinChainSpec {
        n_sites: n,
        fields: vec![h; n],
        jx: vec![jx; n - 1],
        jy: vec![jy; n - 1],
        jz: vec![jz; n - 1],
        boundary: Boundary::Open,
        dissipators: vec![
            Dissipator { site: 1, kind: DissipatorKind::Gain, rate: gamma_plus },
            Dissipator { site: 1, kind: DissipatorKind::Loss, rate: gamma_minus },
        ],
    })
}

fn max_driven(dissipator_rates: (f64, f64), n: usize) -> Vec<Dissipator> {
    vec![
        Dissipator { site: 1, kind: DissipatorKind::Gain, rate: dissipator_rates.0 },
        Dissipator { site: n, kind: DissipatorKind::Loss, rate: dissipator_rates.1 },
    ]
}

/// XX chain (`Jˣ = Jʸ = J`, `Jᶻ = 0`) with gain on site 1 and loss on
/// site N.
pub fn xx_chain_max(
    n: usize,
    h: f64,
    j: f64,
    gamma_plus: f64,
    gamma_minus: f64,
) -> Result<LindbladSystem> {
    xyz_chain(&SpinChainSpec {
        n_sites: n,
        fields: vec![h; n],
        jx: vec![j; n - 1],
        jy: vec![j; n - 1],
        jz: vec![0.0; n - 1],
        boundary: Boundary::Open,
        dissipators: max_driven((gamma_plus, gamma_minus), n),
    })
}

/// Transverse Ising chain with gain on site 1 and loss on site N.
pub fn transverse_ising_max(
    n: usize,
    h: f64,
    j: f64,
    gamma_plus: f64,
    gamma_minus: f64,
) -> Result<LindbladSystem> {
    xyz_chain(&SpinChainSpec {
        n_sites: n,
        fields: vec![h; n],
        jx: vec![j; n - 1],
        jy: vec![0.0; n - 1],
        jz: vec![0.0; n - 1],
        boundary: Boundary::Open,
        dissipators: max_driven((gamma_plus, gamma_minus), n),
    })
}

/// XXZ chain `H = J Σ (σˣσˣ + σʸσʸ + Δσᶻσᶻ)` with gain on site 1 and loss
/// on site N.
pub fn xxz_chain_max(
    n: usize,
    j: f64,
    delta: f64,
    gamma_plus: f64,
    gamma_minus: f64,
) -> Result<LindbladSystem> {
    xyz_chain(&SpinChainSpec {
        n_sites: n,
        fields: vec![0.0; n],
        jx: vec![j; n - 1],
        jy: vec![j; n - 1],
        jz: vec![j * delta; n - 1],
        boundary: Boundary::Open,
        dissipators: max_driven((gamma_plus, gamma_minus), n),
    })
}

/// Coefficient iteration for the maximally driven transverse Ising chain
/// with `γ₊ = 1`.
///
/// Repeated commutation of the left-boundary operator strings with K
/// produces operators `A_i = a_i σ₁ˣ + σ₁ᶻ⋯σᶻᵢ₋₁ σˣᵢ` and
/// `B_i = b_i σ₁ʸ + σ₁ᶻ⋯σᶻᵢ₋₁ σʸᵢ`; the scalar pair `(a_i, b_i)` obeys a
/// 2×2 linear recurrence whose iterates this helper returns for
/// `i = 2, …, n`. Useful for checking numerically that the recursion
/// reproduces the explicitly commutator-built operators.
pub fn ising_max_transfer_coefficients(n: usize, h: f64, j: f64) -> Vec<(C64, C64)> {
    let i = c(0.0, 1.0);
    let t11 = c(h / j, 0.0);
    let t12 = -(i + c(4.0 * h, 0.0)) / c(4.0 * j, 0.0);
    let t21 = (i + c(4.0 * h, 0.0)) / c(4.0 * j, 0.0);
    let t22 = (c(1.0 - 16.0 * h * h + 16.0 * j * j, 0.0) - i * 8.0 * h) / c(16.0 * h * j, 0.0);
    let mut coeffs = Vec::new();
    let mut pair = (c(0.0, 0.0), c(-j / h, 0.0));
    if n >= 2 {
        coeffs.push(pair);
    }
    for _ in 3..=n {
        pair = (t11 * pair.0 + t12 * pair.1, t21 * pair.0 + t22 * pair.1);
        coeffs.push(pair);
    }
    coeffs
}
