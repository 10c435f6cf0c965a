//! Two particles in free fall, described by an observer at rest and by one
//! of the particles. The center-of-mass/relative split evolves analytically
//! (falling Gaussian times spreading Gaussian), is discretized onto the
//! lattice, and the frame change to particle A's perspective is applied as
//! the primed index maps. The score is the percentage gap between the
//! quantumnesses accessible in the two frames, relative to the invariant
//! information `ln ξ²`.
//!
//! Because the two-particle state is pure and stays pure, the quantumness of
//! the position set is the Shannon entropy of the joint position
//! distribution, so the Δ-curve needs no eigensolves and runs at the full
//! paper geometry. The coherence/discord non-invariance checks build the
//! actual `ξ²`-dimensional state and default to a smaller grid.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{BoundaryMode, LatticeGrid};
use crate::hilbert::{shannon_entropy, CVector, DensityMatrix, PureState, SubsystemDims, C64};
use crate::resources::{coherence, discord_symmetric, ObservableBasis, ObservableSet};

/// Tolerance for the per-frame `𝔔 + 𝔔̄ = ln ξ²` identity.
pub const DECOMPOSITION_TOL: f64 = 1e-8;

/// Everything that pins one free-fall run. Lengths with a `_bar` suffix are
/// in units of the spatial resolution `δq`; the rest is SI.
#[derive(Debug, Clone, Serialize)]
pub struct FreefallConfig {
    /// Lattice half-width `L`; the grid has `ξ = 2L + 1` sites per particle.
    pub half_width: usize,
    /// Initial separation of the particles, in `δq` units.
    pub d_bar: f64,
    /// Initial center-of-mass width, in `δq` units.
    pub sigma_cm_bar: f64,
    /// Initial relative-coordinate width, in `δq` units.
    pub sigma_r_bar: f64,
    pub mass_a_kg: f64,
    pub mass_b_kg: f64,
    /// Time unit `τ = 2 m_A δq²/ħ`; fixes `δq` given the mass.
    pub tau_s: f64,
    pub g_m_per_s2: f64,
    pub hbar_j_s: f64,
    #[serde(serialize_with = "serialize_boundary")]
    pub boundary: BoundaryMode,
    /// Scaled times `t̄ = t/τ` to evaluate.
    pub time_grid: Vec<f64>,
    /// Abort when the pre-renormalization probability leak exceeds this.
    pub leak_threshold: f64,
}

fn serialize_boundary<S: serde::Serializer>(
    b: &BoundaryMode,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&b.to_string())
}

impl Default for FreefallConfig {
    /// The reference geometry: `L = 15` (`ξ = 31`), `d̄ = 3`, `σ̄_cm = 7`,
    /// `σ̄_r = 3`, equal masses `2.4×10⁻¹⁰ kg`, `τ ≈ 10⁻¹⁰ s`.
    fn default() -> Self {
        Self {
            half_width: 15,
            d_bar: 3.0,
            sigma_cm_bar: 7.0,
            sigma_r_bar: 3.0,
            mass_a_kg: 2.4e-10,
            mass_b_kg: 2.4e-10,
            tau_s: 1e-10,
            g_m_per_s2: 9.8,
            hbar_j_s: 1.054_571_8e-34,
            boundary: BoundaryMode::TruncateRenormalize,
            time_grid: time_linspace(0.0, 8.0, 50),
            leak_threshold: 0.1,
        }
    }
}

/// Evenly spaced scaled times including both endpoints.
pub fn time_linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![from];
    }
    (0..steps)
        .map(|k| from + (to - from) * k as f64 / (steps - 1) as f64)
        .collect()
}

impl FreefallConfig {
    pub fn validate(&self) -> Result<()> {
        if self.half_width == 0 {
            return Err(Error::InvalidConfig(
                "lattice half-width must be positive".into(),
            ));
        }
        let l = self.half_width as f64;
        for (name, v) in [
            ("sigma_cm_bar", self.sigma_cm_bar),
            ("sigma_r_bar", self.sigma_r_bar),
        ] {
            if v <= 0.0 {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
            if v >= l {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {v} does not fit inside L = {l}"
                )));
            }
        }
        if self.d_bar.abs() >= l {
            return Err(Error::InvalidConfig(format!(
                "d_bar = {} does not fit inside L = {l}",
                self.d_bar
            )));
        }
        if self.mass_a_kg <= 0.0 || self.mass_b_kg <= 0.0 {
            return Err(Error::InvalidConfig("masses must be positive".into()));
        }
        if self.tau_s <= 0.0 || self.hbar_j_s <= 0.0 {
            return Err(Error::InvalidConfig("tau and hbar must be positive".into()));
        }
        if self.g_m_per_s2 < 0.0 {
            return Err(Error::InvalidConfig("g must be nonnegative".into()));
        }
        if self.time_grid.is_empty() {
            return Err(Error::InvalidConfig("time grid is empty".into()));
        }
        if self.time_grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::InvalidConfig(
                "time grid entries must be finite and nonnegative".into(),
            ));
        }
        if !(self.leak_threshold > 0.0 && self.leak_threshold <= 1.0) {
            return Err(Error::InvalidConfig(
                "leak threshold must lie in (0, 1]".into(),
            ));
        }
        Ok(())
    }

    /// Space dimension per particle, `ξ = 2L + 1`.
    pub fn dimension(&self) -> usize {
        2 * self.half_width + 1
    }

    /// Spatial resolution implied by `τ = 2 m_A δq²/ħ`.
    pub fn delta_q(&self) -> f64 {
        (self.hbar_j_s * self.tau_s / (2.0 * self.mass_a_kg)).sqrt()
    }

    pub fn grid(&self) -> Result<LatticeGrid> {
        LatticeGrid::new(self.half_width, self.delta_q(), self.hbar_j_s)
    }

    pub fn total_mass(&self) -> f64 {
        self.mass_a_kg + self.mass_b_kg
    }

    pub fn reduced_mass(&self) -> f64 {
        self.mass_a_kg * self.mass_b_kg / self.total_mass()
    }

    /// Characteristic spreading time of the center-of-mass packet.
    pub fn t_cm_s(&self) -> f64 {
        let sigma = self.sigma_cm_bar * self.delta_q();
        2.0 * self.total_mass() * sigma * sigma / self.hbar_j_s
    }

    /// Characteristic spreading time of the relative packet.
    pub fn t_r_s(&self) -> f64 {
        let sigma = self.sigma_r_bar * self.delta_q();
        2.0 * self.reduced_mass() * sigma * sigma / self.hbar_j_s
    }

    /// Fallen distance `gt²/2` in `δq` units.
    pub fn chi_bar(&self, t_bar: f64) -> f64 {
        let t = t_bar * self.tau_s;
        self.g_m_per_s2 * t * t / (2.0 * self.delta_q())
    }

    pub fn sigma_cm_bar_at(&self, t_bar: f64) -> Result<f64> {
        spread_width(self.sigma_cm_bar, t_bar * self.tau_s, self.t_cm_s())
    }

    pub fn sigma_r_bar_at(&self, t_bar: f64) -> Result<f64> {
        spread_width(self.sigma_r_bar, t_bar * self.tau_s, self.t_r_s())
    }
}

/// Free spreading of a Gaussian width: `σ̄ (1 + t²/t_s²)^{1/2}`.
pub fn spread_width(sigma_bar: f64, t_s: f64, t_char_s: f64) -> Result<f64> {
    if sigma_bar <= 0.0 || t_char_s <= 0.0 {
        return Err(Error::InvalidConfig(
            "spread_width needs positive width and characteristic time".into(),
        ));
    }
    let ratio = t_s / t_char_s;
    Ok(sigma_bar * (1.0 + ratio * ratio).sqrt())
}

/// Normalized Gaussian density in one dimensionless variable.
fn gaussian_density(sigma: f64, x: f64) -> f64 {
    let norm = 1.0 / (2.0 * std::f64::consts::PI * sigma * sigma).sqrt();
    norm * (-x * x / (2.0 * sigma * sigma)).exp()
}

/// Joint position distribution in a frame, before renormalization, together
/// with its raw sum over the grid.
fn raw_probs(cfg: &FreefallConfig, t_bar: f64, primed: bool) -> Result<(DMatrix<f64>, f64)> {
    let xi = cfg.dimension();
    let l = cfg.half_width as i64;
    let sigma_cm = cfg.sigma_cm_bar_at(t_bar)?;
    let sigma_r = cfg.sigma_r_bar_at(t_bar)?;
    let chi = cfg.chi_bar(t_bar);
    let (m_a, m_b, m) = (cfg.mass_a_kg, cfg.mass_b_kg, cfg.total_mass());
    let mut probs = DMatrix::<f64>::zeros(xi, xi);
    let mut sum = 0.0;
    for i in -l..=l {
        for j in -l..=l {
            // primed frame: the index maps (i, j) → (-i, j - i) applied to
            // the analytic center-of-mass and relative coordinates
            let (ri, rj) = if primed { (-i, j - i) } else { (i, j) };
            let r_bar = (m_a * ri as f64 + m_b * rj as f64) / m;
            let s_bar = (rj - ri) as f64;
            let p = gaussian_density(sigma_cm, r_bar - chi)
                * gaussian_density(sigma_r, s_bar - cfg.d_bar);
            probs[((i + l) as usize, (j + l) as usize)] = p;
            sum += p;
        }
    }
    if sum <= 0.0 {
        return Err(Error::InvalidDistribution(
            "no probability mass on the grid".into(),
        ));
    }
    Ok((probs, sum))
}

fn renormalize(cfg: &FreefallConfig, probs: DMatrix<f64>, sum: f64) -> Result<(DMatrix<f64>, f64)> {
    let leaked = (1.0 - sum).max(0.0);
    if leaked > cfg.leak_threshold {
        return Err(Error::LeakAboveThreshold {
            leaked,
            threshold: cfg.leak_threshold,
        });
    }
    Ok((probs / sum, leaked))
}

/// Joint position distribution seen by the resting observer, renormalized
/// over the grid; the second element is the leaked probability mass.
pub fn lab_frame_probs(cfg: &FreefallConfig, t_bar: f64) -> Result<(DMatrix<f64>, f64)> {
    cfg.validate()?;
    let (probs, sum) = raw_probs(cfg, t_bar, false)?;
    renormalize(cfg, probs, sum)
}

/// Joint position distribution seen by particle A.
///
/// In truncate mode the primed analytic expressions are evaluated on the
/// grid and renormalized. In wrap mode the exact lattice frame change is a
/// permutation of the lab distribution, which leaves its entropy unchanged;
/// the leak is then the lab frame's.
pub fn particle_frame_probs(cfg: &FreefallConfig, t_bar: f64) -> Result<(DMatrix<f64>, f64)> {
    cfg.validate()?;
    match cfg.boundary {
        BoundaryMode::TruncateRenormalize => {
            let (probs, sum) = raw_probs(cfg, t_bar, true)?;
            renormalize(cfg, probs, sum)
        }
        BoundaryMode::Wrap => {
            let (raw, sum) = raw_probs(cfg, t_bar, false)?;
            let grid = cfg.grid()?;
            let xi = cfg.dimension();
            let l = cfg.half_width as i64;
            let mut out = DMatrix::<f64>::zeros(xi, xi);
            for i in -l..=l {
                for j in -l..=l {
                    let src_i = grid.index_of(grid.wrap_site(-i))?;
                    let src_j = grid.index_of(grid.wrap_site(j - i))?;
                    out[((i + l) as usize, (j + l) as usize)] = raw[(src_i, src_j)];
                }
            }
            renormalize(cfg, out, sum)
        }
    }
}

/// For the pure two-particle state, the quantumness of the joint position
/// set is the Shannon entropy of the position distribution, and the
/// incompatible part is the remainder of the invariant `ln ξ²`:
/// returns `(𝔔, 𝔔̄) = (ℋ({p}), ln ξ² − ℋ({p}))`.
pub fn quantumness_from_probs(probs: &DMatrix<f64>, dims: &SubsystemDims) -> Result<(f64, f64)> {
    if probs.len() != dims.total() {
        return Err(Error::DimensionMismatch(format!(
            "{} probabilities for total dimension {}",
            probs.len(),
            dims.total()
        )));
    }
    let q = shannon_entropy(probs.as_slice())?;
    let info = (dims.total() as f64).ln();
    Ok((q, info - q))
}

/// One evaluated time step: both frames' position distributions and their
/// resource splits.
#[derive(Debug, Clone, Serialize)]
pub struct FrameSnapshot {
    pub t_bar: f64,
    #[serde(skip)]
    pub probs_lab: DMatrix<f64>,
    #[serde(skip)]
    pub probs_frame: DMatrix<f64>,
    pub q_lab: f64,
    pub qbar_lab: f64,
    pub q_frame: f64,
    pub qbar_frame: f64,
    pub info: f64,
    /// `100 · (𝔔_R − 𝔔_A) / I(ρ₀)`.
    pub delta_percent: f64,
    pub leaked_lab: f64,
    pub leaked_frame: f64,
}

/// Runs the whole time grid. Each snapshot re-checks the per-frame
/// `𝔔 + 𝔔̄ = ln ξ²` identity and the entropy bounds before it is emitted.
pub fn run_simulation(cfg: &FreefallConfig) -> Result<Vec<FrameSnapshot>> {
    cfg.validate()?;
    let dims = SubsystemDims::bipartite(cfg.dimension(), cfg.dimension())?;
    let info = (dims.total() as f64).ln();
    let mut snapshots = Vec::with_capacity(cfg.time_grid.len());
    for &t_bar in &cfg.time_grid {
        let (probs_lab, leaked_lab) = lab_frame_probs(cfg, t_bar)?;
        let (probs_frame, leaked_frame) = particle_frame_probs(cfg, t_bar)?;
        let (q_lab, qbar_lab) = quantumness_from_probs(&probs_lab, &dims)?;
        let (q_frame, qbar_frame) = quantumness_from_probs(&probs_frame, &dims)?;
        for (q, qbar) in [(q_lab, qbar_lab), (q_frame, qbar_frame)] {
            if (q + qbar - info).abs() > DECOMPOSITION_TOL
                || q < -DECOMPOSITION_TOL
                || q > info + DECOMPOSITION_TOL
            {
                return Err(Error::Inconsistency(format!(
                    "per-frame decomposition broken at t̄ = {t_bar}: 𝔔 = {q}, 𝔔̄ = {qbar}, I = {info}"
                )));
            }
        }
        snapshots.push(FrameSnapshot {
            t_bar,
            probs_lab,
            probs_frame,
            q_lab,
            qbar_lab,
            q_frame,
            qbar_frame,
            info,
            delta_percent: 100.0 * (q_lab - q_frame) / info,
            leaked_lab,
            leaked_frame,
        });
    }
    Ok(snapshots)
}

/// Coherence and discord compared across the two frames on the full
/// `ξ²`-dimensional pure state with real positive amplitudes `√p`.
#[derive(Debug, Clone, Serialize)]
pub struct NoninvarianceReport {
    pub t_bar: f64,
    pub discord_lab: f64,
    pub discord_frame: f64,
    pub coherence_lab: f64,
    pub coherence_frame: f64,
    pub leaked_lab: f64,
    pub leaked_frame: f64,
}

fn state_from_probs(dims: &SubsystemDims, probs: &DMatrix<f64>) -> Result<DensityMatrix> {
    let xi = probs.nrows();
    let mut amps = CVector::zeros(dims.total());
    for i in 0..xi {
        for j in 0..xi {
            amps[dims.compose(&[i, j])?] = C64::new(probs[(i, j)].sqrt(), 0.0);
        }
    }
    Ok(PureState::new(dims.clone(), amps)?.to_density())
}

/// Builds both frames' pure states and evaluates the symmetric position
/// discord and the frame particle's position coherence in each. Eigensolves
/// scale as `ξ⁶`, so this is meant for reduced grids.
pub fn coherence_discord_noninvariance(
    cfg: &FreefallConfig,
    t_bar: f64,
) -> Result<NoninvarianceReport> {
    cfg.validate()?;
    let dims = SubsystemDims::bipartite(cfg.dimension(), cfg.dimension())?;
    let (probs_lab, leaked_lab) = lab_frame_probs(cfg, t_bar)?;
    let (probs_frame, leaked_frame) = particle_frame_probs(cfg, t_bar)?;

    let rho_lab = state_from_probs(&dims, &probs_lab)?;
    let rho_frame = state_from_probs(&dims, &probs_frame)?;

    let positions = ObservableSet::computational(&dims)?;
    let basis_a = ObservableBasis::computational(0, cfg.dimension())?;

    Ok(NoninvarianceReport {
        t_bar,
        discord_lab: discord_symmetric(&rho_lab, &positions)?,
        discord_frame: discord_symmetric(&rho_frame, &positions)?,
        coherence_lab: coherence(&rho_lab.partial_trace(&[0])?, &basis_a)?,
        coherence_frame: coherence(&rho_frame.partial_trace(&[0])?, &basis_a)?,
        leaked_lab,
        leaked_frame,
    })
}
