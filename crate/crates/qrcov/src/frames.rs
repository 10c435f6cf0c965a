//! Reference-frame machinery: maximally unbiased basis construction, the
//! lattice transform that promotes an observed particle to the reference
//! frame, active/passive picture changes, and the three-particle relative
//! distance invariance check.
//!
//! Lattice sites live on the symmetric range `[-L, L]`, so the parity map
//! `i ↦ -i` is total. Boundary handling comes in two flavors: `wrap` does
//! cyclic index arithmetic and is exactly unitary (the mode every covariance
//! theorem assumes), while `truncate-renormalize` drops out-of-range
//! components and renormalizes, reporting the leaked probability mass.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, DensityMatrix, PureState, SubsystemDims, UnitaryMatrix, C64};
use crate::resources::{FrameSet, LiftedSet, ObservableBasis, ObservableSet};

/// Relative tolerance for the grid resolution constraint `δq·δp = 2πħ/ξ`.
pub const GRID_PRODUCT_TOL: f64 = 1e-12;
/// Tolerance for the active-vs-passive expectation equivalence check.
pub const PICTURE_TOL: f64 = 1e-9;

/// Symmetric discretized position grid with `ξ = 2L + 1` sites per particle
/// and resolutions tied by `δq·δp = 2πħ/ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeGrid {
    half_width: usize,
    delta_q: f64,
    delta_p: f64,
    hbar: f64,
}

impl LatticeGrid {
    /// Builds the grid from the spatial resolution; the momentum resolution
    /// follows from the dimension constraint.
    pub fn new(half_width: usize, delta_q: f64, hbar: f64) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::InvalidConfig(
                "lattice half-width must be positive".into(),
            ));
        }
        if delta_q <= 0.0 || hbar <= 0.0 {
            return Err(Error::InvalidConfig(
                "lattice resolutions must be positive".into(),
            ));
        }
        let xi = (2 * half_width + 1) as f64;
        let delta_p = 2.0 * std::f64::consts::PI * hbar / (xi * delta_q);
        Ok(Self {
            half_width,
            delta_q,
            delta_p,
            hbar,
        })
    }

    /// Builds the grid from both resolutions, validating the product rule.
    pub fn with_resolutions(
        half_width: usize,
        delta_q: f64,
        delta_p: f64,
        hbar: f64,
    ) -> Result<Self> {
        let grid = Self::new(half_width, delta_q, hbar)?;
        let rel = (delta_p - grid.delta_p).abs() / grid.delta_p;
        if rel > GRID_PRODUCT_TOL {
            return Err(Error::InvalidConfig(format!(
                "δq·δp deviates from 2πħ/ξ by a relative {rel:.3e}"
            )));
        }
        Ok(Self { delta_p, ..grid })
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Space dimension `ξ = 2L + 1` (always odd).
    pub fn dimension(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn delta_q(&self) -> f64 {
        self.delta_q
    }

    pub fn delta_p(&self) -> f64 {
        self.delta_p
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Site label in `[-L, L]` for a storage index in `[0, ξ)`.
    pub fn site_of(&self, index: usize) -> i64 {
        index as i64 - self.half_width as i64
    }

    pub fn index_of(&self, site: i64) -> Result<usize> {
        let l = self.half_width as i64;
        if site < -l || site > l {
            return Err(Error::InvalidIndex(format!(
                "site {site} outside [-{l}, {l}]"
            )));
        }
        Ok((site + l) as usize)
    }

    /// Cyclic reduction of an arbitrary site label into `[-L, L]`.
    pub fn wrap_site(&self, site: i64) -> i64 {
        let xi = self.dimension() as i64;
        let l = self.half_width as i64;
        (site + l).rem_euclid(xi) - l
    }

    /// Dims for `n` particles on this grid.
    pub fn dims(&self, particles: usize) -> Result<SubsystemDims> {
        SubsystemDims::new(&vec![self.dimension(); particles])
    }
}

/// How a lattice frame transform treats sites pushed past the grid edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMode {
    /// Cyclic index arithmetic; the transform is exactly unitary.
    Wrap,
    /// Out-of-range components are dropped; the caller renormalizes and
    /// tracks the leaked mass.
    TruncateRenormalize,
}

impl fmt::Display for BoundaryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryMode::Wrap => write!(f, "wrap"),
            BoundaryMode::TruncateRenormalize => write!(f, "truncate"),
        }
    }
}

impl FromStr for BoundaryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wrap" => Ok(BoundaryMode::Wrap),
            "truncate" | "truncate_renormalize" | "truncate-renormalize" => {
                Ok(BoundaryMode::TruncateRenormalize)
            }
            other => Err(Error::Parse(format!("unknown boundary mode `{other}`"))),
        }
    }
}

/// A lattice frame change acting by a (possibly partial) permutation of the
/// product position basis. In wrap mode the map is a bijection and converts
/// to an exact [`UnitaryMatrix`]; in truncate mode some basis states map to
/// nothing and consumers must renormalize.
#[derive(Debug, Clone)]
pub struct FrameTransform {
    dims: SubsystemDims,
    map: Vec<Option<usize>>,
    boundary: BoundaryMode,
    description: String,
}

impl FrameTransform {
    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn boundary(&self) -> BoundaryMode {
        self.boundary
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Image of a product-basis state, if it survives the boundary.
    pub fn image_of(&self, basis_index: usize) -> Option<usize> {
        self.map.get(basis_index).copied().flatten()
    }

    /// Dense matrix form: one unit entry per surviving input column.
    pub fn matrix(&self) -> CMatrix {
        let d = self.dims.total();
        let mut m = CMatrix::zeros(d, d);
        for (col, target) in self.map.iter().enumerate() {
            if let Some(row) = target {
                m[(*row, col)] = C64::new(1.0, 0.0);
            }
        }
        m
    }

    /// The transform as a validated unitary. Fails in truncate mode whenever
    /// mass-losing columns exist.
    pub fn unitary(&self) -> Result<UnitaryMatrix> {
        UnitaryMatrix::endomorphism(self.dims.clone(), self.matrix())
    }

    /// Applies the transform to a pure state, renormalizing if needed.
    /// Returns the new state and the leaked probability mass.
    pub fn apply_pure(&self, psi: &PureState) -> Result<(PureState, f64)> {
        if psi.dims() != &self.dims {
            return Err(Error::DimensionMismatch(format!(
                "state dims {:?} vs transform dims {:?}",
                psi.dims().dims(),
                self.dims.dims()
            )));
        }
        let mut out = nalgebra::DVector::from_element(self.dims.total(), C64::new(0.0, 0.0));
        for (i, target) in self.map.iter().enumerate() {
            if let Some(j) = target {
                out[*j] += psi.amplitudes()[i];
            }
        }
        let norm2: f64 = out.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::InvalidDistribution(
                "frame transform removed all probability mass".into(),
            ));
        }
        let leaked = (1.0 - norm2).max(0.0);
        out /= C64::new(norm2.sqrt(), 0.0);
        Ok((PureState::new(self.dims.clone(), out)?, leaked))
    }

    /// Applies the transform to a density matrix; same contract as
    /// [`FrameTransform::apply_pure`].
    pub fn apply_density(&self, rho: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
        if rho.dims() != &self.dims {
            return Err(Error::DimensionMismatch(format!(
                "state dims {:?} vs transform dims {:?}",
                rho.dims().dims(),
                self.dims.dims()
            )));
        }
        let d = self.dims.total();
        let mut out = CMatrix::zeros(d, d);
        for (i, ti) in self.map.iter().enumerate() {
            let Some(gi) = ti else { continue };
            for (j, tj) in self.map.iter().enumerate() {
                if let Some(gj) = tj {
                    out[(*gi, *gj)] += rho.matrix()[(i, j)];
                }
            }
        }
        let trace = out.trace().re;
        if trace <= 0.0 {
            return Err(Error::InvalidDistribution(
                "frame transform removed all probability mass".into(),
            ));
        }
        let leaked = (1.0 - trace).max(0.0);
        out /= C64::new(trace, 0.0);
        Ok((DensityMatrix::trusted(self.dims.clone(), out), leaked))
    }
}

/// Discrete-Fourier maximally unbiased basis:
/// `|ā_j⟩ = d^{-1/2} Σ_k exp(2πi jk/d) |a_k⟩`, bound to subsystem 0.
pub fn fourier_mu_basis(d: usize) -> Result<ObservableBasis> {
    if d < 2 {
        return Err(Error::InvalidDims(format!("basis dimension {d} < 2")));
    }
    let scale = 1.0 / (d as f64).sqrt();
    let m = CMatrix::from_fn(d, d, |k, j| {
        let phase = 2.0 * std::f64::consts::PI * (j as f64) * (k as f64) / d as f64;
        C64::new(phase.cos() * scale, phase.sin() * scale)
    });
    ObservableBasis::new(0, m)
}

/// One Fourier basis per subsystem: the default maximally unbiased partner
/// of the computational set.
pub fn fourier_mu_set(dims: &SubsystemDims) -> Result<ObservableSet> {
    let bases = dims
        .dims()
        .iter()
        .enumerate()
        .map(|(k, &d)| Ok(fourier_mu_basis(d)?.on_subsystem(k)))
        .collect::<Result<Vec<_>>>()?;
    ObservableSet::new(bases)
}

/// Maximally unbiased partner of an arbitrary basis: the Fourier basis
/// expressed in that basis's frame, `U·F`.
pub fn fourier_partner(basis: &ObservableBasis) -> Result<ObservableBasis> {
    let f = fourier_mu_basis(basis.dim())?;
    ObservableBasis::new(basis.subsystem(), basis.matrix() * f.matrix())
}

/// Per-subsystem [`fourier_partner`] of a whole set.
pub fn fourier_partner_set(set: &ObservableSet) -> Result<ObservableSet> {
    let bases = set
        .bases()
        .iter()
        .map(fourier_partner)
        .collect::<Result<Vec<_>>>()?;
    ObservableSet::new(bases)
}

/// The lattice realization of the frame promotion
/// `|u⟩|v_1⟩…|v_n⟩ ↦ |-u⟩|v_1 - u⟩…|v_n - u⟩`: parity on the new reference
/// particle plus a shift of every observed particle conditioned on `u`.
pub fn parity_conditional_shift(
    grid: &LatticeGrid,
    n_observed: usize,
    boundary: BoundaryMode,
) -> Result<FrameTransform> {
    if n_observed == 0 {
        return Err(Error::InvalidConfig(
            "need at least one observed particle".into(),
        ));
    }
    let dims = grid.dims(n_observed + 1)?;
    let total = dims.total();
    let mut map = Vec::with_capacity(total);
    let mut sites = vec![0i64; n_observed + 1];
    for input in 0..total {
        for (k, s) in sites.iter_mut().enumerate() {
            *s = grid.site_of(dims.sub_index(input, k));
        }
        let u = sites[0];
        let mut out_indices = Vec::with_capacity(n_observed + 1);
        out_indices.push(
            grid.index_of(-u)
                .expect("parity stays on the symmetric grid"),
        );
        let mut alive = true;
        for &v in &sites[1..] {
            let shifted = v - u;
            let site = match boundary {
                BoundaryMode::Wrap => grid.wrap_site(shifted),
                BoundaryMode::TruncateRenormalize => shifted,
            };
            match grid.index_of(site) {
                Ok(idx) => out_indices.push(idx),
                Err(_) => {
                    alive = false;
                    break;
                }
            }
        }
        map.push(if alive {
            Some(dims.compose(&out_indices)?)
        } else {
            None
        });
    }
    Ok(FrameTransform {
        dims,
        map,
        boundary,
        description: format!(
            "parity-conditional shift, {n_observed} observed particle(s), L = {}, {boundary}",
            grid.half_width()
        ),
    })
}

/// Which side of the frame change carries the transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Picture {
    /// `{ρ', 𝕆'} = {TρT^†, 𝕆}`
    Active,
    /// `{ρ', 𝕆'} = {ρ, T^†𝕆T}`
    Passive,
}

/// A context after a frame change: the state plus every observable set in a
/// representation matching the chosen picture.
#[derive(Debug, Clone)]
pub struct TransformedContext {
    pub state: DensityMatrix,
    pub sets: Vec<FrameSet>,
}

/// Carries a context `{ρ, sets}` through the frame change `T` in the chosen
/// picture. Both pictures are evaluated and their outcome probabilities are
/// required to agree to `1e-9` for every observable before anything is
/// returned.
pub fn transform_context(
    state: &DensityMatrix,
    sets: &[ObservableSet],
    t: &UnitaryMatrix,
    picture: Picture,
) -> Result<TransformedContext> {
    let active_state = t.apply_to(state)?;
    let mut active_sets = Vec::with_capacity(sets.len());
    let mut passive_sets = Vec::with_capacity(sets.len());
    for set in sets {
        let lifted = LiftedSet::lift(set);
        let pulled = lifted.passive_transform(t)?;
        for k in 0..set.dims().count() {
            let p_active = lifted.outcome_probabilities(&active_state, k)?;
            let p_passive = pulled.outcome_probabilities(state, k)?;
            for (pa, pp) in p_active.iter().zip(&p_passive) {
                if (pa - pp).abs() > PICTURE_TOL {
                    return Err(Error::Inconsistency(format!(
                        "active and passive outcome probabilities differ by {:.3e}",
                        (pa - pp).abs()
                    )));
                }
            }
        }
        active_sets.push(FrameSet::Product(set.clone()));
        passive_sets.push(FrameSet::Lifted(pulled));
    }
    Ok(match picture {
        Picture::Active => TransformedContext {
            state: active_state,
            sets: active_sets,
        },
        Picture::Passive => TransformedContext {
            state: state.clone(),
            sets: passive_sets,
        },
    })
}

/// Relative-distance invariance for three observed particles on a grid:
/// returns `⟨X_C - X_B⟩` before and after promoting particle A to the
/// reference frame. Both values are in length units.
pub fn galilean_relative_invariance(psi: &PureState, grid: &LatticeGrid) -> Result<(f64, f64)> {
    let dims = grid.dims(3)?;
    if psi.dims() != &dims {
        return Err(Error::DimensionMismatch(format!(
            "state dims {:?}; expected three particles on a ξ = {} grid",
            psi.dims().dims(),
            grid.dimension()
        )));
    }
    let relative_distance = |state: &PureState| -> f64 {
        let mut acc = 0.0;
        for (g, amp) in state.amplitudes().iter().enumerate() {
            let w = amp.norm_sqr();
            if w == 0.0 {
                continue;
            }
            let b = grid.site_of(dims.sub_index(g, 1));
            let c = grid.site_of(dims.sub_index(g, 2));
            acc += w * (c - b) as f64;
        }
        acc * grid.delta_q()
    };
    let before = relative_distance(psi);
    let transform = parity_conditional_shift(grid, 2, BoundaryMode::Wrap)?;
    let (transformed, _) = transform.apply_pure(psi)?;
    let after = relative_distance(&transformed);
    Ok((before, after))
}
