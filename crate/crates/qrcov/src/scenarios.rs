//! Canonical constructions used across tests and the CLI: the two-slit
//! diatomic-molecule states in both reference frames, and seed-reproducible
//! random states, unitaries, and bases.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hilbert::{
    CMatrix, CVector, DensityMatrix, PureState, SubsystemDims, UnitaryMatrix, C64,
};
use crate::resources::ObservableBasis;

/// Two lattice particles that passed a double slit together: branch
/// positions `(i, j)` and `(i+k, j+k)` with slit separation `k`.
#[derive(Debug, Clone, Copy)]
pub struct TwoSlitConfig {
    pub half_width: usize,
    pub i: i64,
    pub j: i64,
    pub k: i64,
}

impl TwoSlitConfig {
    pub fn new(half_width: usize, i: i64, j: i64, k: i64) -> Result<Self> {
        let cfg = Self {
            half_width,
            i,
            j,
            k,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.half_width == 0 {
            return Err(Error::InvalidConfig(
                "lattice half-width must be positive".into(),
            ));
        }
        if self.i == 0 || self.j == 0 || self.k == 0 {
            return Err(Error::InvalidConfig(
                "i, j, k must be nonzero integers".into(),
            ));
        }
        let l = self.half_width as i64;
        for (name, value) in [
            ("i", self.i),
            ("i+k", self.i + self.k),
            ("j", self.j),
            ("j+k", self.j + self.k),
            ("j-i", self.j - self.i),
        ] {
            if value < -l || value > l {
                return Err(Error::InvalidConfig(format!(
                    "{name} = {value} falls outside the grid [-{l}, {l}]"
                )));
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        2 * self.half_width + 1
    }

    fn index(&self, site: i64) -> usize {
        (site + self.half_width as i64) as usize
    }
}

/// The two-slit superposition `(|i⟩|j⟩ + |i+k⟩|j+k⟩)/√2` on the `ξ × ξ`
/// lattice.
pub fn two_slit_state(cfg: &TwoSlitConfig) -> Result<PureState> {
    cfg.validate()?;
    let xi = cfg.dimension();
    let dims = SubsystemDims::bipartite(xi, xi)?;
    let mut amps = CVector::zeros(dims.total());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let first = dims.compose(&[cfg.index(cfg.i), cfg.index(cfg.j)])?;
    let second = dims.compose(&[cfg.index(cfg.i + cfg.k), cfg.index(cfg.j + cfg.k)])?;
    amps[first] = C64::new(r, 0.0);
    amps[second] = C64::new(r, 0.0);
    PureState::new(dims, amps)
}

/// The same state seen from atom A:
/// `((|-i⟩ + |-i-k⟩)/√2) ⊗ |j-i⟩` — the relative position is sharp, so the
/// state factorizes.
pub fn two_slit_transformed(cfg: &TwoSlitConfig) -> Result<PureState> {
    cfg.validate()?;
    let xi = cfg.dimension();
    let dims = SubsystemDims::bipartite(xi, xi)?;
    let mut amps = CVector::zeros(dims.total());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let first = dims.compose(&[cfg.index(-cfg.i), cfg.index(cfg.j - cfg.i)])?;
    let second = dims.compose(&[cfg.index(-cfg.i - cfg.k), cfg.index(cfg.j - cfg.i)])?;
    amps[first] = C64::new(r, 0.0);
    amps[second] = C64::new(r, 0.0);
    PureState::new(dims, amps)
}

fn complex_normal_vector(rng: &mut ChaCha8Rng, d: usize) -> CVector {
    CVector::from_fn(d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-random pure state, deterministic per seed.
pub fn random_pure(dims: SubsystemDims, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_pure(&mut rng, dims)
}

fn haar_pure(rng: &mut ChaCha8Rng, dims: SubsystemDims) -> PureState {
    let mut v = complex_normal_vector(rng, dims.total());
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v /= C64::new(norm, 0.0);
    PureState::new(dims, v).expect("normalized by construction")
}

/// Rank-limited random density matrix: a convex mixture of `rank` Haar-random
/// pure states with uniform-simplex (flat Dirichlet) weights. Deterministic
/// per seed.
pub fn random_state(dims: SubsystemDims, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let d = dims.total();
    if rank == 0 || rank > d {
        return Err(Error::InvalidConfig(format!(
            "rank {rank} outside [1, {d}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<f64> = (0..rank)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut mat = CMatrix::zeros(d, d);
    for &w in &weights {
        let psi = haar_pure(&mut rng, dims.clone());
        mat += (psi.amplitudes() * psi.amplitudes().adjoint()).scale(w);
    }
    DensityMatrix::new(dims, mat)
}

/// Haar-random unitary, deterministic per seed: QR of a Ginibre matrix with
/// the phase convention fixed by the diagonal of `R`.
pub fn random_unitary(dims: SubsystemDims, seed: u64) -> UnitaryMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = dims.total();
    let g = CMatrix::from_fn(d, d, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let col = q.column(j) * phase;
        q.set_column(j, &col);
    }
    UnitaryMatrix::endomorphism(dims, q).expect("QR produces a unitary factor")
}

/// Haar-random observable eigenbasis on one subsystem.
pub fn random_basis(subsystem: usize, d: usize, seed: u64) -> Result<ObservableBasis> {
    let u = random_unitary(SubsystemDims::single(d)?, seed);
    ObservableBasis::new(subsystem, u.matrix().clone())
}
