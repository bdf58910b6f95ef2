//! Model selection: named presets with parameter overrides, or explicit
//! matrices from a JSON config file.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::Deserialize;

use lindkit::liouvillian::LindbladSystem;
use lindkit::models;
use lindkit::operators::{CMatrix, ToleranceConfig};

/// Parameter bag shared by the CLI flags and the config-file `params`
/// object. Unset values fall back to per-preset defaults.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct ModelParams {
    pub n: Option<usize>,
    pub h: Option<f64>,
    pub j: Option<f64>,
    pub jx: Option<f64>,
    pub jy: Option<f64>,
    pub jz: Option<f64>,
    pub delta: Option<f64>,
    pub gp: Option<f64>,
    pub gm: Option<f64>,
}

impl ModelParams {
    /// Overlay `self` (CLI flags) on top of `base` (config-file params).
    pub fn overlay(&self, base: &ModelParams) -> ModelParams {
        ModelParams {
            n: self.n.or(base.n),
            h: self.h.or(base.h),
            j: self.j.or(base.j),
            jx: self.jx.or(base.jx),
            jy: self.jy.or(base.jy),
            jz: self.jz.or(base.jz),
            delta: self.delta.or(base.delta),
            gp: self.gp.or(base.gp),
            gm: self.gm.or(base.gm),
        }
    }
}

/// Explicit model: complex entries as `[re, im]` pairs, rows of the matrix
/// listed row-major.
#[derive(Debug, Clone, Deserialize)]
pub struct ExplicitModel {
    pub dim: usize,
    pub hamiltonian: Vec<Vec<[f64; 2]>>,
    pub lindblads: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Tolerance overrides; unset fields keep their defaults.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct ToleranceOverrides {
    pub rank_rel: Option<f64>,
    pub rank_abs: Option<f64>,
    pub orthonormality: Option<f64>,
    pub hermiticity: Option<f64>,
    pub psd: Option<f64>,
    pub residual: Option<f64>,
    pub tiny: Option<f64>,
    pub eig_cluster: Option<f64>,
    pub markov_edge: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: ToleranceConfig) -> ToleranceConfig {
        ToleranceConfig {
            rank_rel: self.rank_rel.unwrap_or(base.rank_rel),
            rank_abs: self.rank_abs.unwrap_or(base.rank_abs),
            orthonormality: self.orthonormality.unwrap_or(base.orthonormality),
            hermiticity: self.hermiticity.unwrap_or(base.hermiticity),
            psd: self.psd.unwrap_or(base.psd),
            residual: self.residual.unwrap_or(base.residual),
            tiny: self.tiny.unwrap_or(base.tiny),
            eig_cluster: self.eig_cluster.unwrap_or(base.eig_cluster),
            markov_edge: self.markov_edge.unwrap_or(base.markov_edge),
        }
    }
}

/// Top-level config file: exactly one of `preset` / `explicit`.
#[derive(Debug, Clone, Deserialize)]
pub struct FileConfig {
    pub preset: Option<String>,
    #[serde(default)]
    pub params: ModelParams,
    pub explicit: Option<ExplicitModel>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    pub seed: Option<u64>,
}

/// A resolved model plus a printable description.
pub struct ResolvedModel {
    pub system: LindbladSystem,
    pub description: String,
}

fn parse_matrix(rows: &[Vec<[f64; 2]>], dim: usize, what: &str) -> Result<CMatrix, String> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(format!("{what}: expected {dim}×{dim} entries"));
    }
    let mut m = CMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            m[(i, j)] = C64::new(re, im);
        }
    }
    Ok(m)
}

pub fn load_config(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let cfg: FileConfig =
        serde_json::from_str(&text).map_err(|e| format!("cannot parse config: {e}"))?;
    match (&cfg.preset, &cfg.explicit) {
        (Some(_), Some(_)) => Err("config must set exactly one of `preset`/`explicit`".into()),
        (None, None) => Err("config sets neither `preset` nor `explicit`".into()),
        _ => Ok(cfg),
    }
}

pub fn build_explicit(model: &ExplicitModel, tol: &ToleranceConfig) -> Result<ResolvedModel, String> {
    let h = parse_matrix(&model.hamiltonian, model.dim, "hamiltonian")?;
    let lindblads = model
        .lindblads
        .iter()
        .enumerate()
        .map(|(i, rows)| parse_matrix(rows, model.dim, &format!("lindblad {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let system = LindbladSystem::new(h, lindblads, tol).map_err(|e| e.to_string())?;
    Ok(ResolvedModel { system, description: format!("explicit (d = {})", model.dim) })
}

/// All preset names, for help text and error messages.
pub const PRESETS: &[&str] = &[
    "lind1101",
    "lind0101-lind0102",
    "lind1101hsy",
    "lind1101-lind1m101",
    "lindsphsx",
    "loss-gain",
    "dephase",
    "sp-driven",
    "ferromagnet2",
    "ising-boundary",
    "xyz-boundary",
    "xx-max",
    "ising-max",
    "xxz-max",
];

/// Build a named preset. Names are case-insensitive and `_` matches `-`.
pub fn build_preset(name: &str, p: &ModelParams) -> Result<ResolvedModel, String> {
    let canonical = name.to_lowercase().replace('_', "-");
    let n = p.n.unwrap_or(3);
    let gp = p.gp.unwrap_or(1.0);
    let gm = p.gm.unwrap_or(1.0);
    let (system, description) = match canonical.as_str() {
        "lind1101" => (models::lind1101(), "lind1101: H = 0, L = [[1,1],[0,1]]".to_string()),
        "lind0101-lind0102" => (
            models::lind0101_lind0102(),
            "lind0101-lind0102: H = 0, L1 = [[0,1],[0,1]], L2 = [[0,1],[0,2]]".to_string(),
        ),
        "lind1101hsy" => (
            models::lind1101hsy(),
            "lind1101hsy: H = sy/2, L = [[1,1],[0,1]]".to_string(),
        ),
        "lind1101-lind1m101" => (
            models::upper_triangular_pair(),
            "lind1101-lind1m101: H = 0, L1 = [[1,1],[0,1]], L2 = [[1,-1],[0,1]]".to_string(),
        ),
        "lindsphsx" => {
            let h = p.h.unwrap_or(1.0);
            (models::lindsphsx(h), format!("lindsphsx: H = h*sx, L = s+, h = {h}"))
        }
        "loss-gain" => (
            models::loss_gain(gp, gm),
            format!("loss-gain: L+ = sqrt({gp})*s+, L- = sqrt({gm})*s-"),
        ),
        "dephase" => (models::dephasing(), "dephase: L = sz".to_string()),
        "sp-driven" => (models::up_driven(), "sp-driven: L = s+".to_string()),
        "ferromagnet2" => (
            models::two_site_ferromagnet(),
            "ferromagnet2: two-site ferromagnet (six Lindblad operators)".to_string(),
        ),
        "ising-boundary" => {
            let (h, j) = (p.h.unwrap_or(1.0), p.j.unwrap_or(1.0));
            let sys = models::transverse_ising_boundary(n, h, j, gp, gm)
                .map_err(|e| e.to_string())?;
            (sys, format!("ising-boundary: N = {n}, h = {h}, J = {j}, gain/loss on site 1"))
        }
        "xyz-boundary" => {
            let h = p.h.unwrap_or(1.0);
            let (jx, jy, jz) = (p.jx.unwrap_or(1.0), p.jy.unwrap_or(1.0), p.jz.unwrap_or(1.0));
            let sys =
                models::xyz_boundary(n, h, jx, jy, jz, gp, gm).map_err(|e| e.to_string())?;
            (
                sys,
                format!(
                    "xyz-boundary: N = {n}, h = {h}, J = ({jx}, {jy}, {jz}), gain/loss on site 1"
                ),
            )
        }
        "xx-max" => {
            let (h, j) = (p.h.unwrap_or(0.5), p.j.unwrap_or(1.0));
            let sys = models::xx_chain_max(n, h, j, gp, gm).map_err(|e| e.to_string())?;
            (sys, format!("xx-max: N = {n}, h = {h}, J = {j}, gain site 1 / loss site {n}"))
        }
        "ising-max" => {
            let (h, j) = (p.h.unwrap_or(1.0), p.j.unwrap_or(1.0));
            let sys = models::transverse_ising_max(n, h, j, gp, gm).map_err(|e| e.to_string())?;
            (sys, format!("ising-max: N = {n}, h = {h}, J = {j}, gain site 1 / loss site {n}"))
        }
        "xxz-max" => {
            let (j, delta) = (p.j.unwrap_or(1.0), p.delta.unwrap_or(1.0));
            let sys = models::xxz_chain_max(n, j, delta, gp, gm).map_err(|e| e.to_string())?;
            (
                sys,
                format!("xxz-max: N = {n}, J = {j}, Delta = {delta}, gain site 1 / loss site {n}"),
            )
        }
        other => {
            return Err(format!(
                "unknown preset `{other}`; available: {}",
                PRESETS.join(", ")
            ))
        }
    };
    Ok(ResolvedModel { system, description })
}

/// Spin-basis labels `↑↑…`, `↑↓…`, … when the dimension is a power of two,
/// `b<i>` otherwise.
pub fn basis_labels(dim: usize) -> Vec<String> {
    let n = dim.trailing_zeros() as usize;
    if dim.is_power_of_two() && dim >= 2 {
        (0..dim)
            .map(|idx| {
                (0..n)
                    .map(|bit| if idx >> (n - 1 - bit) & 1 == 0 { '↑' } else { '↓' })
                    .collect()
            })
            .collect()
    } else {
        (0..dim).map(|i| format!("b{i}")).collect()
    }
}
