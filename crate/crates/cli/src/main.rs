//! Command-line front end: select or load a model, run the irreducibility
//! checkers, and emit human-readable reports, JSON (schema 1), or DOT
//! graphs.
//!
//! Exit codes: 0 = irreducible (or command succeeded), 1 = reducible (or a
//! classical reducibility witness was found), 2 = numerical error or checker
//! disagreement, 3 = configuration/parse failure.

mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lindkit::algebra::{commutant, generate_algebra};
use lindkit::irreducibility::{analyze, analyze_parallel, find_dark_states, DaviesVerdict};
use lindkit::liouvillian::{build_superoperator, k_operator, spectrum, steady_states};
use lindkit::markov::{
    channel_from_liouvillian, classical_transition_matrix, export_dot, is_irreducible_markov,
    kraus_set, StochasticMatrix,
};
use lindkit::operators::{CMatrix, ToleranceConfig};
use lindkit::random::{haar_unitary, rng_from_seed};

use config::{basis_labels, build_explicit, build_preset, load_config, ModelParams, ResolvedModel};

#[derive(Parser)]
#[command(
    name = "lindkit",
    version,
    about = "Irreducibility analysis for Markovian open quantum systems",
    after_help = format!("Presets: {}", config::PRESETS.join(", "))
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Named model preset
    #[arg(long, global = true)]
    preset: Option<String>,

    /// JSON model config file (exactly one of --preset/--config)
    #[arg(long, global = true, conflicts_with = "preset")]
    config: Option<PathBuf>,

    /// Emit machine-readable JSON (schema 1) instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Relative singular-value cutoff for rank decisions (default 1e-9)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for random bases
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Number of chain sites (chain presets)
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Magnetic field strength
    #[arg(long, global = true)]
    h: Option<f64>,

    /// Coupling constant
    #[arg(long, global = true)]
    j: Option<f64>,

    /// XYZ x-coupling
    #[arg(long, global = true)]
    jx: Option<f64>,

    /// XYZ y-coupling
    #[arg(long, global = true)]
    jy: Option<f64>,

    /// XYZ z-coupling
    #[arg(long, global = true)]
    jz: Option<f64>,

    /// Anisotropy (xxz-max preset)
    #[arg(long, global = true)]
    delta: Option<f64>,

    /// Gain rate γ₊
    #[arg(long, global = true)]
    gp: Option<f64>,

    /// Loss rate γ₋
    #[arg(long, global = true)]
    gm: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every irreducibility checker and report verdicts with witnesses
    Check {
        /// Run independent checkers on separate threads
        #[arg(long)]
        parallel: bool,
    },
    /// Solve L(rho) = 0 and print the maximal-support steady state
    Steady,
    /// Liouvillian eigenvalues, spectral gap, and relaxing flag
    Spectrum,
    /// Dimension of the algebra generated by {L, K}, plus commutant dims
    Algebra,
    /// Classical Markov chains of exp(L t) in chosen bases, as DOT graphs
    Markov {
        /// Evolution time
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Basis selection: computational | random:<k> | file:<path>
        #[arg(long, default_value = "computational")]
        basis: String,
        /// Edge threshold for the DOT export (default: support threshold)
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Kraus decomposition of exp(L t)
    Kraus {
        /// Evolution time
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Find all pure steady states
    DarkStates,
}

enum CliError {
    /// Configuration or input parsing problem (exit 3).
    Parse(String),
    /// Numerical/analysis failure, including checker disagreement (exit 2).
    Analysis(String),
}

impl From<lindkit::Error> for CliError {
    fn from(e: lindkit::Error) -> Self {
        CliError::Analysis(e.to_string())
    }
}

fn cli_params(cli: &Cli) -> ModelParams {
    ModelParams {
        n: cli.n,
        h: cli.h,
        j: cli.j,
        jx: cli.jx,
        jy: cli.jy,
        jz: cli.jz,
        delta: cli.delta,
        gp: cli.gp,
        gm: cli.gm,
    }
}

struct Session {
    model: ResolvedModel,
    tol: ToleranceConfig,
    seed: u64,
}

fn resolve(cli: &Cli) -> Result<Session, CliError> {
    let mut tol = ToleranceConfig::default();
    let mut seed = cli.seed.unwrap_or(0);
    let params = cli_params(cli);
    let model = if let Some(path) = &cli.config {
        let file = load_config(path).map_err(CliError::Parse)?;
        tol = file.tolerances.apply(tol);
        if cli.seed.is_none() {
            if let Some(s) = file.seed {
                seed = s;
            }
        }
        if let Some(preset) = &file.preset {
            build_preset(preset, &params.overlay(&file.params)).map_err(CliError::Parse)?
        } else {
            let explicit = file.explicit.as_ref().expect("validated by load_config");
            build_explicit(explicit, &tol).map_err(CliError::Parse)?
        }
    } else if let Some(preset) = &cli.preset {
        build_preset(preset, &params).map_err(CliError::Parse)?
    } else {
        return Err(CliError::Parse(
            "select a model with --preset <name> or --config <path>".into(),
        ));
    };
    if let Some(rank_rel) = cli.tol {
        if !(rank_rel.is_finite() && rank_rel > 0.0 && rank_rel < 1.0) {
            return Err(CliError::Parse(format!("--tol {rank_rel} outside (0, 1)")));
        }
        tol.rank_rel = rank_rel;
    }
    Ok(Session { model, tol, seed })
}

/// Write to stdout, treating a broken pipe (e.g. `lindkit … | head`) as a
/// silent success rather than a panic.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write to stdout: {e}");
        }
    }
    let _ = out.flush();
}

fn print_json<T: serde::Serialize>(value: &T) {
    let mut text = serde_json::to_string_pretty(value).expect("serializable report");
    text.push('\n');
    emit(&text);
}

fn cmd_check(session: &Session, parallel: bool, json: bool) -> Result<u8, CliError> {
    let sys = &session.model.system;
    let report =
        if parallel { analyze_parallel(sys, &session.tol)? } else { analyze(sys, &session.tol)? };
    if json {
        print_json(&render::check_json(&session.model.description, sys.dim(), &report));
    } else {
        emit(&render::check_text(&session.model.description, sys.dim(), &report));
    }
    Ok(match report.verdict() {
        DaviesVerdict::Irreducible => 0,
        DaviesVerdict::Reducible => 1,
    })
}

fn cmd_steady(session: &Session, json: bool) -> Result<u8, CliError> {
    let sys = &session.model.system;
    let ss = steady_states(sys, &session.tol)?;
    let residual = sys.apply(&ss.max_support_state).norm();
    if json {
        print_json(&render::steady_json(&session.model.description, sys.dim(), &ss, residual));
    } else {
        emit(&render::steady_text(&session.model.description, sys.dim(), &ss, residual));
    }
    Ok(0)
}

fn cmd_spectrum(session: &Session, json: bool) -> Result<u8, CliError> {
    let sys = &session.model.system;
    let report = spectrum(sys, &session.tol)?;
    if json {
        print_json(&render::spectrum_json(&session.model.description, sys.dim(), &report));
    } else {
        emit(&render::spectrum_text(&session.model.description, &report));
    }
    Ok(0)
}

fn cmd_algebra(session: &Session, json: bool) -> Result<u8, CliError> {
    let sys = &session.model.system;
    let tol = &session.tol;
    let mut seeds = sys.lindblads().to_vec();
    seeds.push(k_operator(sys));
    let closure = generate_algebra(&seeds, tol, None)?;
    let com_lk = commutant(&seeds, tol)?;
    let com_l =
        if sys.lindblads().is_empty() { None } else { Some(commutant(sys.lindblads(), tol)?.dim) };
    let mut evans_seeds = sys.lindblads().to_vec();
    evans_seeds.extend(sys.lindblads().iter().map(|l| l.adjoint()));
    evans_seeds.push(sys.hamiltonian().clone());
    let com_evans = commutant(&evans_seeds, tol)?;
    let d = sys.dim();
    let report = render::AlgebraJson {
        schema: render::SCHEMA,
        model: session.model.description.clone(),
        dim: d,
        algebra_dim: closure.dim,
        full_dim: d * d,
        is_full: closure.is_full,
        rounds: closure.rounds,
        commutant_dim_lk: com_lk.dim,
        commutant_dim_l: com_l,
        commutant_dim_lldag_h: com_evans.dim,
    };
    if json {
        print_json(&report);
    } else {
        emit(&render::algebra_text(&report));
    }
    Ok(0)
}

enum BasisChoice {
    Computational,
    Random(usize),
    File(PathBuf),
}

fn parse_basis(spec: &str) -> Result<BasisChoice, CliError> {
    if spec == "computational" {
        return Ok(BasisChoice::Computational);
    }
    if let Some(k) = spec.strip_prefix("random:") {
        let k: usize =
            k.parse().map_err(|_| CliError::Parse(format!("bad random basis count in `{spec}`")))?;
        if k == 0 {
            return Err(CliError::Parse("random basis count must be at least 1".into()));
        }
        return Ok(BasisChoice::Random(k));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(BasisChoice::File(PathBuf::from(path)));
    }
    Err(CliError::Parse(format!(
        "unknown basis spec `{spec}`; use computational | random:<k> | file:<path>"
    )))
}

fn load_basis_file(path: &PathBuf, dim: usize) -> Result<CMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read basis file {}: {e}", path.display())))?;
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("cannot parse basis file: {e}")))?;
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(CliError::Parse(format!("basis file must hold a {dim}×{dim} matrix")));
    }
    let mut m = CMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            m[(i, j)] = num_complex::Complex64::new(re, im);
        }
    }
    Ok(m)
}

fn cmd_markov(
    session: &Session,
    t: f64,
    basis_spec: &str,
    threshold: Option<f64>,
    json: bool,
) -> Result<u8, CliError> {
    let sys = &session.model.system;
    let tol = &session.tol;
    let d = sys.dim();
    if !(t.is_finite() && t > 0.0) {
        return Err(CliError::Parse(format!("--t {t} must be finite and positive")));
    }
    let ch = channel_from_liouvillian(sys, t, tol)?;
    let edge_threshold = threshold.unwrap_or(tol.markov_edge);

    let bases: Vec<(usize, String, CMatrix)> = match parse_basis(basis_spec)? {
        BasisChoice::Computational => {
            vec![(0, "computational".to_string(), CMatrix::identity(d, d))]
        }
        BasisChoice::Random(k) => (0..k)
            .map(|trial| {
                let mut rng = rng_from_seed(session.seed.wrapping_add(trial as u64));
                (trial + 1, format!("random[{trial}]"), haar_unitary(d, &mut rng))
            })
            .collect(),
        BasisChoice::File(path) => {
            vec![(0, format!("file:{}", path.display()), load_basis_file(&path, d)?)]
        }
    };

    let labels = basis_labels(d);
    let mut any_reducible = false;
    let mut sections = Vec::new();
    for (index, kind, basis) in &bases {
        let mut p: StochasticMatrix = classical_transition_matrix(&ch, basis, tol)?;
        if kind == "computational" {
            p.basis_labels = Some(labels.clone());
        }
        let (irreducible, components) = is_irreducible_markov(&p, tol.markov_edge);
        any_reducible |= !irreducible;
        let dot = export_dot(&p, edge_threshold);
        sections.push(render::MarkovBasisJson {
            index: *index,
            kind: kind.clone(),
            verdict: if irreducible { "irreducible".into() } else { "reducible".into() },
            components,
            dot,
        });
    }

    if json {
        print_json(&render::MarkovJson {
            schema: render::SCHEMA,
            model: session.model.description.clone(),
            dim: d,
            t,
            seed: session.seed,
            bases: sections,
        });
    } else {
        let mut text = format!("model: {}\nt = {t}\n", session.model.description);
        for section in &sections {
            text.push_str(&format!(
                "// basis {} ({}): {}\n",
                section.index, section.kind, section.verdict
            ));
            if section.verdict == "reducible" {
                let classes: Vec<String> = section
                    .components
                    .iter()
                    .map(|comp| {
                        format!(
                            "{{{}}}",
                            comp.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                text.push_str(&format!(
                    "// strongly connected components: {}\n",
                    classes.join(" ")
                ));
            }
            text.push_str(&section.dot);
        }
        emit(&text);
    }
    Ok(if any_reducible { 1 } else { 0 })
}

fn cmd_kraus(session: &Session, t: f64, json: bool) -> Result<u8, CliError> {
    let sys = &session.model.system;
    let tol = &session.tol;
    if !(t.is_finite() && t > 0.0) {
        return Err(CliError::Parse(format!("--t {t} must be finite and positive")));
    }
    let ch = channel_from_liouvillian(sys, t, tol)?;
    let kraus = kraus_set(&ch, tol)?;
    let reconstruction = (kraus.to_superoperator() - &ch.matrix).norm();
    if json {
        print_json(&render::kraus_json(
            &session.model.description,
            sys.dim(),
            t,
            &kraus,
            reconstruction,
        ));
    } else {
        let mut text = format!(
            "model: {}\nt = {t}\nkraus operators: {}\ncompleteness defect:   {:.3e}\nreconstruction defect: {reconstruction:.3e}\n",
            session.model.description,
            kraus.operators.len(),
            kraus.completeness_defect(),
        );
        for (k, m) in kraus.operators.iter().enumerate() {
            text.push_str(&format!("M[{k}]:\n"));
            text.push_str(&render::matrix_text(m, "  "));
        }
        emit(&text);
    }
    Ok(0)
}

fn cmd_dark_states(session: &Session, json: bool) -> Result<u8, CliError> {
    let sys = &session.model.system;
    let reports = find_dark_states(sys, &session.tol)?;
    if json {
        print_json(&render::dark_states_json(&session.model.description, sys.dim(), &reports));
    } else {
        emit(&render::dark_states_text(&session.model.description, &reports));
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let session = resolve(cli)?;
    // Shared sanity guard: the generator must preserve the trace, which
    // catches malformed explicit configs before any command runs.
    let defect = build_superoperator(&session.model.system).trace_preservation_defect();
    if defect > 1e-6 {
        return Err(CliError::Analysis(format!("generator audit failed: L†(1) defect {defect:e}")));
    }
    match &cli.command {
        Command::Check { parallel } => cmd_check(&session, *parallel, cli.json),
        Command::Steady => cmd_steady(&session, cli.json),
        Command::Spectrum => cmd_spectrum(&session, cli.json),
        Command::Algebra => cmd_algebra(&session, cli.json),
        Command::Markov { t, basis, threshold } => {
            cmd_markov(&session, *t, basis, *threshold, cli.json)
        }
        Command::Kraus { t } => cmd_kraus(&session, *t, cli.json),
        Command::DarkStates => cmd_dark_states(&session, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
