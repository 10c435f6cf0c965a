//! Everything behind the `qrcov` binary: the flat key-value config format,
//! the plain-text state-file format, basis specs, the per-subcommand
//! drivers, and the run-manifest sidecar.
//!
//! Output determinism is part of the contract: the same config and seed must
//! produce byte-identical CSV/JSON. Wall-clock timing therefore lives only
//! in the manifest sidecar, never in the report itself.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{fourier_mu_set, parity_conditional_shift, BoundaryMode, LatticeGrid};
use crate::freefall::{run_simulation, time_linspace, FreefallConfig};
use crate::gaussian::{
    apply_symplectic, crossing_term_params, residual_entanglement, symplectic_for_momentum_swap,
    symplectic_for_position_swap, GaussianState, SymplecticTransform,
};
use crate::hilbert::{CMatrix, DensityMatrix, PureState, SubsystemDims, C64};
use crate::resources::{
    covariance_check, decompose, ObservableBasis, ObservableSet, ResourceReport,
};
use crate::scenarios::{random_pure, random_state, random_unitary, TwoSlitConfig};

/// Gap tolerance for the covariance fuzzing harness.
pub const COVARIANCE_GAP_TOL: f64 = 1e-9;
/// A resource counts as "moved" between frames above this difference.
pub const MOVED_THRESHOLD: f64 = 1e-3;

// ---------------------------------------------------------------------------
// config & file formats
// ---------------------------------------------------------------------------

/// Parses the flat `key = value` config format. `#` starts a comment.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse(format!(
                "line {}: expected `key = value`, got `{raw}`",
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_field<T: FromStr>(kv: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    match kv.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| Error::Parse(format!("bad value `{raw}` for key `{key}`"))),
    }
}

/// Builds a free-fall config from defaults overridden by config-file keys.
/// Unknown keys are rejected so typos cannot silently revert to defaults.
pub fn freefall_config_from_kv(kv: &BTreeMap<String, String>) -> Result<FreefallConfig> {
    const KNOWN: &[&str] = &[
        "half_width",
        "d_bar",
        "sigma_cm_bar",
        "sigma_r_bar",
        "mass_a_kg",
        "mass_b_kg",
        "tau_s",
        "g_m_per_s2",
        "hbar_j_s",
        "boundary",
        "t_bar_max",
        "t_bar_steps",
        "t_bar_list",
        "leak_threshold",
    ];
    for key in kv.keys() {
        if !KNOWN.contains(&key.as_str()) {
            return Err(Error::Parse(format!("unknown config key `{key}`")));
        }
    }
    let mut cfg = FreefallConfig::default();
    if let Some(v) = parse_field(kv, "half_width")? {
        cfg.half_width = v;
    }
    if let Some(v) = parse_field(kv, "d_bar")? {
        cfg.d_bar = v;
    }
    if let Some(v) = parse_field(kv, "sigma_cm_bar")? {
        cfg.sigma_cm_bar = v;
    }
    if let Some(v) = parse_field(kv, "sigma_r_bar")? {
        cfg.sigma_r_bar = v;
    }
    if let Some(v) = parse_field(kv, "mass_a_kg")? {
        cfg.mass_a_kg = v;
    }
    if let Some(v) = parse_field(kv, "mass_b_kg")? {
        cfg.mass_b_kg = v;
    }
    if let Some(v) = parse_field(kv, "tau_s")? {
        cfg.tau_s = v;
    }
    if let Some(v) = parse_field(kv, "g_m_per_s2")? {
        cfg.g_m_per_s2 = v;
    }
    if let Some(v) = parse_field(kv, "hbar_j_s")? {
        cfg.hbar_j_s = v;
    }
    if let Some(v) = kv.get("boundary") {
        cfg.boundary = v.parse()?;
    }
    match kv.get("t_bar_list") {
        Some(list) => {
            cfg.time_grid = list
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad t_bar_list entry `{tok}`")))
                })
                .collect::<Result<Vec<_>>>()?;
        }
        None => {
            let t_max = parse_field(kv, "t_bar_max")?.unwrap_or(8.0);
            let steps = parse_field(kv, "t_bar_steps")?.unwrap_or(50);
            cfg.time_grid = time_linspace(0.0, t_max, steps);
        }
    }
    if let Some(v) = parse_field(kv, "leak_threshold")? {
        cfg.leak_threshold = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_complex(token: &str) -> Result<C64> {
    let body = token
        .strip_suffix('j')
        .ok_or_else(|| Error::Parse(format!("complex entry `{token}` must end in `j`")))?;
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for pos in (1..bytes.len()).rev() {
        let c = bytes[pos];
        if (c == b'+' || c == b'-') && !matches!(bytes[pos - 1], b'e' | b'E') {
            split = Some(pos);
            break;
        }
    }
    let pos = split
        .ok_or_else(|| Error::Parse(format!("complex entry `{token}` needs `re±imj` form")))?;
    let re: f64 = body[..pos]
        .parse()
        .map_err(|_| Error::Parse(format!("bad real part in `{token}`")))?;
    let im: f64 = body[pos..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad imaginary part in `{token}`")))?;
    Ok(C64::new(re, im))
}

fn format_complex(z: C64) -> String {
    format!("{}{:+}j", z.re, z.im)
}

/// Reads the plain-text state format: a `dims: d_A d_B …` header followed by
/// one matrix row per line, entries as `re±imj` separated by whitespace.
pub fn read_state_text(text: &str) -> Result<DensityMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty state file".into()))?;
    let dims_part = header
        .trim()
        .strip_prefix("dims:")
        .ok_or_else(|| Error::Parse("state file must start with a `dims:` header".into()))?;
    let dims_list = dims_part
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension `{tok}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let dims = SubsystemDims::new(&dims_list)?;
    let d = dims.total();
    let mut matrix = CMatrix::zeros(d, d);
    let mut row = 0;
    for line in lines {
        if row >= d {
            return Err(Error::Parse(format!("more than {d} matrix rows")));
        }
        let entries = line.split_whitespace().collect::<Vec<_>>();
        if entries.len() != d {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {d}",
                row + 1,
                entries.len()
            )));
        }
        for (col, tok) in entries.iter().enumerate() {
            matrix[(row, col)] = parse_complex(tok)?;
        }
        row += 1;
    }
    if row != d {
        return Err(Error::Parse(format!(
            "found {row} matrix rows, expected {d}"
        )));
    }
    DensityMatrix::new(dims, matrix)
}

/// Inverse of [`read_state_text`].
pub fn write_state_text(rho: &DensityMatrix) -> String {
    let mut out = String::from("dims:");
    for d in rho.dims().dims() {
        let _ = write!(out, " {d}");
    }
    out.push('\n');
    let d = rho.dims().total();
    for row in 0..d {
        let entries: Vec<String> = (0..d)
            .map(|col| format_complex(rho.matrix()[(row, col)]))
            .collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out
}

/// Builds an observable set from a spec string with one letter per
/// subsystem: `Z` for the computational basis, `X` for its Fourier partner.
pub fn parse_set_spec(spec: &str, dims: &SubsystemDims) -> Result<ObservableSet> {
    let letters: Vec<char> = spec.chars().collect();
    if letters.len() != dims.count() {
        return Err(Error::Parse(format!(
            "basis spec `{spec}` has {} letters for {} subsystems",
            letters.len(),
            dims.count()
        )));
    }
    let mut bases = Vec::with_capacity(letters.len());
    for (k, letter) in letters.iter().enumerate() {
        let d = dims.dims()[k];
        let basis = match letter {
            'Z' | 'z' => ObservableBasis::computational(k, d)?,
            'X' | 'x' => crate::frames::fourier_mu_basis(d)?.on_subsystem(k),
            other => {
                return Err(Error::Parse(format!(
                    "unknown basis letter `{other}` (use Z or X)"
                )))
            }
        };
        bases.push(basis);
    }
    ObservableSet::new(bases)
}

/// Parses `2x3`-style dimension specs.
pub fn parse_dims_spec(spec: &str) -> Result<SubsystemDims> {
    let dims = spec
        .split('x')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dims spec `{spec}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    SubsystemDims::new(&dims)
}

// ---------------------------------------------------------------------------
// run manifest
// ---------------------------------------------------------------------------

/// Reproducibility sidecar written next to every file output.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub command: String,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    pub boundary: Option<String>,
    pub tool_version: String,
    pub duration_seconds: f64,
}

impl Manifest {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            config,
            seed: None,
            boundary: None,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            duration_seconds: 0.0,
        }
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    output.with_file_name(name)
}

/// Writes `content` to `path` and the manifest alongside it.
pub fn write_with_manifest(path: &Path, content: &str, manifest: &Manifest) -> Result<()> {
    std::fs::write(path, content)?;
    let manifest_json = serde_json::to_string_pretty(manifest)
        .map_err(|e| Error::Inconsistency(format!("manifest serialization failed: {e}")))?;
    std::fs::write(manifest_path(path), manifest_json + "\n")?;
    Ok(())
}

/// Serializes a report deterministically (pretty JSON, trailing newline).
pub fn to_json<T: Serialize>(report: &T) -> Result<String> {
    serde_json::to_string_pretty(report)
        .map(|s| s + "\n")
        .map_err(|e| Error::Inconsistency(format!("report serialization failed: {e}")))
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DecomposeArgs {
    pub scenario: Option<String>,
    pub state_file: Option<PathBuf>,
    pub dims: SubsystemDims,
    pub rank: usize,
    pub seed: u64,
    pub basis_spec: String,
    pub mu_spec: String,
}

fn scenario_state(
    name: &str,
    dims: &SubsystemDims,
    rank: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    match name {
        "bell" => {
            if dims.dims() != [2, 2] {
                return Err(Error::InvalidConfig("the bell scenario is 2x2".into()));
            }
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let mut amps = nalgebra::DVector::from_element(4, C64::new(0.0, 0.0));
            amps[0] = C64::new(r, 0.0);
            amps[3] = C64::new(r, 0.0);
            Ok(PureState::new(dims.clone(), amps)?.to_density())
        }
        "product" => {
            let indices = vec![0usize; dims.count()];
            Ok(PureState::basis_state(dims.clone(), &indices)?.to_density())
        }
        "mixed" => Ok(DensityMatrix::maximally_mixed(dims.clone())),
        "random" => random_state(dims.clone(), rank, seed),
        other => Err(Error::InvalidConfig(format!(
            "unknown scenario `{other}` (use bell, product, mixed, or random)"
        ))),
    }
}

pub fn run_decompose(args: &DecomposeArgs) -> Result<ResourceReport> {
    let rho = match (&args.scenario, &args.state_file) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidConfig(
                "give either --scenario or --state, not both".into(),
            ))
        }
        (Some(name), None) => scenario_state(name, &args.dims, args.rank, args.seed)?,
        (None, Some(path)) => read_state_text(&std::fs::read_to_string(path)?)?,
        (None, None) => return Err(Error::InvalidConfig("need --scenario or --state".into())),
    };
    let set = parse_set_spec(&args.basis_spec, rho.dims())?;
    let mu = parse_set_spec(&args.mu_spec, rho.dims())?;
    let report = decompose(&rho, &set, &mu)?;
    // emit gate: never write a report whose decomposition identity is broken
    if (report.info - report.quantumness - report.incompatible_quantumness).abs() > 1e-9 {
        return Err(Error::Inconsistency(
            "decomposition identity failed at emit time".into(),
        ));
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// covariance fuzzing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    RandomUnitary,
    LatticeSwap,
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-unitary" => Ok(Self::RandomUnitary),
            "lattice-swap" => Ok(Self::LatticeSwap),
            other => Err(Error::Parse(format!("unknown transform `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CovarianceArgs {
    pub trials: usize,
    pub dims: SubsystemDims,
    pub transform: TransformKind,
    pub lattice_half_widths: Vec<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CovarianceSummary {
    pub transform: String,
    pub trials: usize,
    pub max_gap: f64,
    pub mean_gap: f64,
    pub moved_fraction: f64,
    pub gap_tolerance: f64,
    pub pass: bool,
}

pub fn run_covariance(args: &CovarianceArgs) -> Result<CovarianceSummary> {
    if args.trials == 0 {
        return Err(Error::InvalidConfig("need at least one trial".into()));
    }
    let mut gaps = Vec::with_capacity(args.trials);
    let mut moved = 0usize;
    match args.transform {
        TransformKind::RandomUnitary => {
            let set = ObservableSet::computational(&args.dims)?;
            let mu = fourier_mu_set(&args.dims)?;
            let d = args.dims.total();
            for trial in 0..args.trials {
                let seed = args.seed.wrapping_add(trial as u64);
                let rank = 1 + trial % d;
                let rho = random_state(args.dims.clone(), rank, seed)?;
                let t = random_unitary(args.dims.clone(), seed ^ 0x9e37_79b9_7f4a_7c15);
                let check = covariance_check(&rho, &set, &mu, &t, &set, &mu)?;
                gaps.push(check.gap);
                if (check.quantumness - check.quantumness_primed).abs() > MOVED_THRESHOLD {
                    moved += 1;
                }
            }
        }
        TransformKind::LatticeSwap => {
            if args.lattice_half_widths.is_empty() {
                return Err(Error::InvalidConfig(
                    "lattice-swap needs at least one half-width".into(),
                ));
            }
            let per = args.trials.div_ceil(args.lattice_half_widths.len());
            'outer: for (block, &l) in args.lattice_half_widths.iter().enumerate() {
                let grid = LatticeGrid::new(l, 1.0, 1.0)?;
                let xi = grid.dimension();
                let dims = SubsystemDims::bipartite(xi, xi)?;
                let t = parity_conditional_shift(&grid, 1, BoundaryMode::Wrap)?.unitary()?;
                let positions = ObservableSet::computational(&dims)?;
                for k in 0..per {
                    if gaps.len() >= args.trials {
                        break 'outer;
                    }
                    let seed = args.seed.wrapping_add((block * per + k) as u64);
                    let rho = random_pure(dims.clone(), seed).to_density();
                    // the exact wrap swap permutes the position basis, so
                    // position quantumness is invariant by symmetry; random
                    // local sets interleave to show the terms moving
                    let set = if k % 2 == 0 {
                        positions.clone()
                    } else {
                        ObservableSet::new(vec![
                            crate::scenarios::random_basis(0, xi, seed ^ 0x5bf0_3635)?,
                            crate::scenarios::random_basis(1, xi, seed ^ 0x94d0_49bb)?,
                        ])?
                    };
                    let mu = crate::frames::fourier_partner_set(&set)?;
                    let check = covariance_check(&rho, &set, &mu, &t, &set, &mu)?;
                    gaps.push(check.gap);
                    if (check.quantumness - check.quantumness_primed).abs() > MOVED_THRESHOLD {
                        moved += 1;
                    }
                }
            }
        }
    }
    let max_gap = gaps.iter().copied().fold(0.0, f64::max);
    let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
    Ok(CovarianceSummary {
        transform: match args.transform {
            TransformKind::RandomUnitary => "random-unitary".into(),
            TransformKind::LatticeSwap => "lattice-swap".into(),
        },
        trials: gaps.len(),
        max_gap,
        mean_gap,
        moved_fraction: moved as f64 / gaps.len() as f64,
        gap_tolerance: COVARIANCE_GAP_TOL,
        pass: max_gap <= COVARIANCE_GAP_TOL,
    })
}

// ---------------------------------------------------------------------------
// freefall
// ---------------------------------------------------------------------------

/// Renders the simulation as CSV with full double precision (17 significant
/// digits), one row per time step.
pub fn freefall_csv(cfg: &FreefallConfig) -> Result<String> {
    let snapshots = run_simulation(cfg)?;
    let mut out = String::from(
        "t_bar,Q_R,Qbar_R,Q_A,Qbar_A,info,delta_percent,leaked_mass_R,leaked_mass_A\n",
    );
    for s in &snapshots {
        let _ = writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.t_bar,
            s.q_lab,
            s.qbar_lab,
            s.q_frame,
            s.qbar_frame,
            s.info,
            s.delta_percent,
            s.leaked_lab,
            s.leaked_frame,
        );
    }
    Ok(out)
}

pub fn run_freefall(cfg: &FreefallConfig, output: &Path, started: Instant) -> Result<()> {
    let csv = freefall_csv(cfg)?;
    let mut manifest = Manifest::new(
        "freefall",
        serde_json::to_value(cfg).map_err(|e| Error::Inconsistency(e.to_string()))?,
    );
    manifest.boundary = Some(cfg.boundary.to_string());
    manifest.duration_seconds = started.elapsed().as_secs_f64();
    write_with_manifest(output, &csv, &manifest)
}

// ---------------------------------------------------------------------------
// two-slit
// ---------------------------------------------------------------------------

/// Both frames' reality diagnostics for the two-slit family.
#[derive(Debug, Clone, Serialize)]
pub struct TwoSlitReport {
    pub half_width: usize,
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub irreality_b_lab: f64,
    pub irreality_b_frame: f64,
    pub coherence_b_lab: f64,
    pub coherence_b_frame: f64,
    pub discord_b_lab: f64,
    pub discord_b_frame: f64,
    pub quantumness_lab: f64,
    pub quantumness_frame: f64,
    pub quantumness_gap: f64,
}

pub fn run_two_slit(cfg: &TwoSlitConfig) -> Result<TwoSlitReport> {
    use crate::resources::{coherence, discord_oneway, irreality, quantumness};
    use crate::scenarios::{two_slit_state, two_slit_transformed};

    let xi = cfg.dimension();
    let dims = SubsystemDims::bipartite(xi, xi)?;
    let rho_lab = two_slit_state(cfg)?.to_density();
    let rho_frame = two_slit_transformed(cfg)?.to_density();
    let x_b = ObservableBasis::computational(1, xi)?;
    let positions = ObservableSet::computational(&dims)?;

    let q_lab = quantumness(&rho_lab, &positions)?;
    let q_frame = quantumness(&rho_frame, &positions)?;
    Ok(TwoSlitReport {
        half_width: cfg.half_width,
        i: cfg.i,
        j: cfg.j,
        k: cfg.k,
        irreality_b_lab: irreality(&rho_lab, &x_b)?,
        irreality_b_frame: irreality(&rho_frame, &x_b)?,
        coherence_b_lab: coherence(&rho_lab.partial_trace(&[1])?, &x_b)?,
        coherence_b_frame: coherence(&rho_frame.partial_trace(&[1])?, &x_b)?,
        discord_b_lab: discord_oneway(&rho_lab, &x_b)?,
        discord_b_frame: discord_oneway(&rho_frame, &x_b)?,
        quantumness_lab: q_lab,
        quantumness_frame: q_frame,
        quantumness_gap: (q_lab - q_frame).abs(),
    })
}

// ---------------------------------------------------------------------------
// gaussian transform
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussianTransformKind {
    PositionSwap,
    MomentumSwap,
}

impl FromStr for GaussianTransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "position-swap" => Ok(Self::PositionSwap),
            "momentum-swap" => Ok(Self::MomentumSwap),
            other => Err(Error::Parse(format!("unknown transform `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GaussianArgs {
    pub center_a: f64,
    pub center_b: f64,
    pub width_a: f64,
    pub width_b: f64,
    pub transform: GaussianTransformKind,
    pub mass_a: f64,
    pub mass_b: f64,
    pub hbar: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GaussianReport {
    pub transform: String,
    pub mean_in: [f64; 4],
    pub mean_out: [f64; 4],
    pub covariance_out: [[f64; 4]; 4],
    /// Cross-term width `ζ = δΔ/√(δ² + Δ²)`.
    pub zeta: f64,
    /// Cross-term center shift `α = a(ζ/Δ)²`.
    pub alpha: f64,
    pub reduced_purity: f64,
    pub entropy: f64,
    pub global_purity: f64,
}

pub fn run_gaussian(args: &GaussianArgs) -> Result<GaussianReport> {
    let state = GaussianState::product_pure(
        args.center_a,
        args.center_b,
        args.width_a,
        args.width_b,
        args.hbar,
    )?;
    let s: SymplecticTransform = match args.transform {
        GaussianTransformKind::PositionSwap => symplectic_for_position_swap(),
        GaussianTransformKind::MomentumSwap => {
            symplectic_for_momentum_swap(args.mass_a, args.mass_b)?
        }
    };
    let out = apply_symplectic(&state, &s)?;
    let ent = residual_entanglement(&out)?;
    let (alpha, zeta) = crossing_term_params(args.center_a, args.width_b, args.width_a)?;
    let mean_in = state.mean();
    let mean_out = out.mean();
    let cov = out.covariance();
    Ok(GaussianReport {
        transform: match args.transform {
            GaussianTransformKind::PositionSwap => "position-swap".into(),
            GaussianTransformKind::MomentumSwap => "momentum-swap".into(),
        },
        mean_in: [mean_in[0], mean_in[1], mean_in[2], mean_in[3]],
        mean_out: [mean_out[0], mean_out[1], mean_out[2], mean_out[3]],
        covariance_out: std::array::from_fn(|i| std::array::from_fn(|j| cov[(i, j)])),
        zeta,
        alpha,
        reduced_purity: ent.reduced_purity,
        entropy: ent.entropy,
        global_purity: out.global_purity(),
    })
}
