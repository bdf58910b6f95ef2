//! JSON (schema 1) and plain-text renderings of analysis results.

use num_complex::Complex64 as C64;
use serde::Serialize;

use lindkit::irreducibility::{DarkStateReport, ReducibilityReport};
use lindkit::liouvillian::{SpectrumReport, SteadyStateSet};
use lindkit::markov::KrausSet;
use lindkit::operators::{CMatrix, CVector};

pub const SCHEMA: u32 = 1;

pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn vector_json(v: &CVector) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn complex_str(z: C64) -> String {
    if z.im == 0.0 {
        format!("{:+.6}", z.re)
    } else {
        format!("{:+.6}{:+.6}i", z.re, z.im)
    }
}

pub fn matrix_text(m: &CMatrix, indent: &str) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        out.push_str(indent);
        out.push('[');
        for j in 0..m.ncols() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&complex_str(m[(i, j)]));
        }
        out.push_str("]\n");
    }
    out
}

#[derive(Serialize)]
pub struct CheckJson {
    pub schema: u32,
    pub model: String,
    pub dim: usize,
    pub verdict: String,
    pub davies_algebra_verdict: String,
    pub algebra_dim: usize,
    pub davies_steady_verdict: String,
    pub null_dim: usize,
    pub support_rank: usize,
    pub evans_verdict: String,
    pub frigerio1_applicable: bool,
    pub frigerio1_conclusion: String,
    pub frigerio2_applicable: bool,
    pub frigerio2_conclusion: String,
    pub reducing_projection: Option<MatrixJson>,
    pub witness_residuals: Vec<f64>,
    pub conserved_projection: Option<MatrixJson>,
}

pub fn check_json(model: &str, dim: usize, r: &ReducibilityReport) -> CheckJson {
    use lindkit::irreducibility::{Frigerio1Outcome, Frigerio2Outcome};
    let f1 = r.frigerio_first == Frigerio1Outcome::ImpliesUniqueSteadyState;
    let f2 = r.frigerio_second == Frigerio2Outcome::ImpliesIrreducible;
    CheckJson {
        schema: SCHEMA,
        model: model.to_string(),
        dim,
        verdict: r.verdict().to_string(),
        davies_algebra_verdict: r.davies_algebra_verdict.to_string(),
        algebra_dim: r.algebra_dim,
        davies_steady_verdict: r.davies_steady_verdict.to_string(),
        null_dim: r.null_dim,
        support_rank: r.support_rank,
        evans_verdict: r.evans_verdict.to_string(),
        frigerio1_applicable: f1,
        frigerio1_conclusion: if f1 { "unique steady state".into() } else { "not applicable".into() },
        frigerio2_applicable: f2,
        frigerio2_conclusion: if f2 { "irreducible".into() } else { "not applicable".into() },
        reducing_projection: r.reducing_projection.as_ref().map(matrix_json),
        witness_residuals: r.witness_residuals.clone(),
        conserved_projection: r.conserved_projection.as_ref().map(matrix_json),
    }
}

pub fn check_text(model: &str, dim: usize, r: &ReducibilityReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("model: {model}\n"));
    out.push_str(&format!(
        "davies (algebra):      {:<16} algebra dim {}/{}\n",
        r.davies_algebra_verdict.to_string(),
        r.algebra_dim,
        dim * dim
    ));
    out.push_str(&format!(
        "davies (steady state): {:<16} null_dim {}, support rank {}/{}\n",
        r.davies_steady_verdict.to_string(),
        r.null_dim,
        r.support_rank,
        dim
    ));
    out.push_str(&format!("evans:                 {}\n", r.evans_verdict));
    out.push_str(&format!(
        "frigerio 1:            {}\n",
        match r.frigerio_first {
            lindkit::irreducibility::Frigerio1Outcome::ImpliesUniqueSteadyState =>
                "applicable -> unique steady state",
            lindkit::irreducibility::Frigerio1Outcome::NotApplicable => "not applicable",
        }
    ));
    out.push_str(&format!(
        "frigerio 2:            {}\n",
        match r.frigerio_second {
            lindkit::irreducibility::Frigerio2Outcome::ImpliesIrreducible =>
                "applicable -> irreducible",
            lindkit::irreducibility::Frigerio2Outcome::NotApplicable => "not applicable",
        }
    ));
    if let Some(p) = &r.reducing_projection {
        out.push_str("reducing projection:\n");
        out.push_str(&matrix_text(p, "  "));
        let worst = r.witness_residuals.iter().cloned().fold(0.0_f64, f64::max);
        out.push_str(&format!("  max invariance residual: {worst:.3e}\n"));
    }
    if let Some(p) = &r.conserved_projection {
        out.push_str("conserved projection:\n");
        out.push_str(&matrix_text(p, "  "));
    }
    out.push_str(&format!("verdict: {}\n", r.verdict()));
    out
}

#[derive(Serialize)]
pub struct SteadyJson {
    pub schema: u32,
    pub model: String,
    pub dim: usize,
    pub null_dim: usize,
    pub support_rank: usize,
    pub residual: f64,
    pub max_support_state: MatrixJson,
}

pub fn steady_json(model: &str, dim: usize, ss: &SteadyStateSet, residual: f64) -> SteadyJson {
    SteadyJson {
        schema: SCHEMA,
        model: model.to_string(),
        dim,
        null_dim: ss.null_dim,
        support_rank: ss.support_rank,
        residual,
        max_support_state: matrix_json(&ss.max_support_state),
    }
}

pub fn steady_text(model: &str, dim: usize, ss: &SteadyStateSet, residual: f64) -> String {
    let mut out = String::new();
    out.push_str(&format!("model: {model}\n"));
    out.push_str(&format!("null_dim: {}\n", ss.null_dim));
    out.push_str(&format!("support rank: {}/{}\n", ss.support_rank, dim));
    out.push_str(&format!("steady-state residual |L(rho)|: {residual:.3e}\n"));
    out.push_str("max-support steady state:\n");
    out.push_str(&matrix_text(&ss.max_support_state, "  "));
    out
}

#[derive(Serialize)]
pub struct SpectrumJson {
    pub schema: u32,
    pub model: String,
    pub dim: usize,
    pub eigenvalues: Vec<[f64; 2]>,
    pub gap: f64,
    pub relaxing: bool,
}

pub fn spectrum_json(model: &str, dim: usize, s: &SpectrumReport) -> SpectrumJson {
    SpectrumJson {
        schema: SCHEMA,
        model: model.to_string(),
        dim,
        eigenvalues: s.eigenvalues.iter().map(|l| [l.re, l.im]).collect(),
        gap: s.gap,
        relaxing: s.relaxing,
    }
}

pub fn spectrum_text(model: &str, s: &SpectrumReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("model: {model}\n"));
    out.push_str(&format!("spectral gap: {:.6}\n", s.gap));
    out.push_str(&format!("relaxing: {}\n", s.relaxing));
    out.push_str("eigenvalues (by descending real part):\n");
    for l in &s.eigenvalues {
        out.push_str(&format!("  {}\n", complex_str(*l)));
    }
    out
}

#[derive(Serialize)]
pub struct AlgebraJson {
    pub schema: u32,
    pub model: String,
    pub dim: usize,
    pub algebra_dim: usize,
    pub full_dim: usize,
    pub is_full: bool,
    pub rounds: usize,
    pub commutant_dim_lk: usize,
    pub commutant_dim_l: Option<usize>,
    pub commutant_dim_lldag_h: usize,
}

pub fn algebra_text(a: &AlgebraJson) -> String {
    let mut out = String::new();
    out.push_str(&format!("model: {}\n", a.model));
    out.push_str(&format!(
        "algebra generated by {{L, K}}: dim {}/{} ({} rounds){}\n",
        a.algebra_dim,
        a.full_dim,
        a.rounds,
        if a.is_full { ", full operator space" } else { "" }
    ));
    out.push_str(&format!("commutant dim {{L, K}}:      {}\n", a.commutant_dim_lk));
    match a.commutant_dim_l {
        Some(d) => out.push_str(&format!("commutant dim {{L}}:         {d}\n")),
        None => out.push_str("commutant dim {L}:         - (no Lindblad operators)\n"),
    }
    out.push_str(&format!("commutant dim {{L, L†, H}}:  {}\n", a.commutant_dim_lldag_h));
    out
}

#[derive(Serialize)]
pub struct MarkovBasisJson {
    pub index: usize,
    pub kind: String,
    pub verdict: String,
    pub components: Vec<Vec<usize>>,
    pub dot: String,
}

#[derive(Serialize)]
pub struct MarkovJson {
    pub schema: u32,
    pub model: String,
    pub dim: usize,
    pub t: f64,
    pub seed: u64,
    pub bases: Vec<MarkovBasisJson>,
}

#[derive(Serialize)]
pub struct KrausJson {
    pub schema: u32,
    pub model: String,
    pub dim: usize,
    pub t: f64,
    pub count: usize,
    pub completeness_defect: f64,
    pub reconstruction_defect: f64,
    pub operators: Vec<MatrixJson>,
}

pub fn kraus_json(
    model: &str,
    dim: usize,
    t: f64,
    kraus: &KrausSet,
    reconstruction_defect: f64,
) -> KrausJson {
    KrausJson {
        schema: SCHEMA,
        model: model.to_string(),
        dim,
        t,
        count: kraus.operators.len(),
        completeness_defect: kraus.completeness_defect(),
        reconstruction_defect,
        operators: kraus.operators.iter().map(matrix_json).collect(),
    }
}

#[derive(Serialize)]
pub struct DarkStateJson {
    pub state: Vec<[f64; 2]>,
    pub lindblad_eigenvalues: Vec<[f64; 2]>,
    pub k_eigenvalue: [f64; 2],
    pub residuals: Vec<f64>,
    pub liouvillian_residual: f64,
}

#[derive(Serialize)]
pub struct DarkStatesJson {
    pub schema: u32,
    pub model: String,
    pub dim: usize,
    pub count: usize,
    pub states: Vec<DarkStateJson>,
}

pub fn dark_states_json(model: &str, dim: usize, reports: &[DarkStateReport]) -> DarkStatesJson {
    DarkStatesJson {
        schema: SCHEMA,
        model: model.to_string(),
        dim,
        count: reports.len(),
        states: reports
            .iter()
            .map(|r| DarkStateJson {
                state: vector_json(&r.state),
                lindblad_eigenvalues: r.lindblad_eigenvalues.iter().map(|z| [z.re, z.im]).collect(),
                k_eigenvalue: [r.k_eigenvalue.re, r.k_eigenvalue.im],
                residuals: r.residuals.clone(),
                liouvillian_residual: r.liouvillian_residual,
            })
            .collect(),
    }
}

pub fn dark_states_text(model: &str, reports: &[DarkStateReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!("model: {model}\n"));
    out.push_str(&format!("dark states found: {}\n", reports.len()));
    for (i, r) in reports.iter().enumerate() {
        let comps: Vec<String> = r.state.iter().map(|z| complex_str(*z)).collect();
        out.push_str(&format!("state {i}: [{}]\n", comps.join(", ")));
        let eigs: Vec<String> =
            r.lindblad_eigenvalues.iter().map(|z| complex_str(*z)).collect();
        out.push_str(&format!(
            "  lindblad eigenvalues: [{}], K eigenvalue: {}\n",
            eigs.join(", "),
            complex_str(r.k_eigenvalue)
        ));
        out.push_str(&format!("  stationarity residual: {:.3e}\n", r.liouvillian_residual));
    }
    out
}
