//! Continuous-variable layer: Gaussian states as mean vectors plus
//! covariance matrices over the phase-space ordering `(x_A, p_A, x_B, p_B)`,
//! the frame changes realized as symplectic maps, and the residual
//! entanglement left in a transformed product Gaussian.

use nalgebra::{Matrix2, Matrix4, Vector4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{hermitian_eigenvalues, CMatrix, C64};

/// Max allowed asymmetry of a covariance matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Slack for the uncertainty bound `σ + iħΩ/2 ⪰ 0`.
pub const UNCERTAINTY_TOL: f64 = 1e-10;
/// Max allowed entry of `SΩSᵀ − Ω`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// A state counts as globally pure when its purity is within this of 1.
pub const PURITY_TOL: f64 = 1e-6;

/// The symplectic form Ω for two modes in `(x_A, p_A, x_B, p_B)` ordering.
pub fn symplectic_form() -> Matrix4<f64> {
    Matrix4::from_row_slice(&[
        0.0, 1.0, 0.0, 0.0, //
        -1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, -1.0, 0.0,
    ])
}

/// Two-mode Gaussian state: phase-space mean and covariance, with `ħ`
/// carried along so the uncertainty bound can be checked.
#[derive(Debug, Clone, Serialize)]
pub struct GaussianState {
    mean: [f64; 4],
    covariance: [[f64; 4]; 4],
    hbar: f64,
}

impl GaussianState {
    pub fn new(mean: Vector4<f64>, covariance: Matrix4<f64>, hbar: f64) -> Result<Self> {
        if hbar <= 0.0 {
            return Err(Error::InvalidConfig("hbar must be positive".into()));
        }
        let asym = (covariance - covariance.transpose()).abs().max();
        if asym > SYMMETRY_TOL {
            return Err(Error::NotHermitian {
                deviation: asym,
                tolerance: SYMMETRY_TOL,
            });
        }
        // uncertainty bound: σ + iħΩ/2 must be positive semidefinite
        let omega = symplectic_form();
        let bound = CMatrix::from_fn(4, 4, |i, j| {
            C64::new(covariance[(i, j)], 0.5 * hbar * omega[(i, j)])
        });
        let min = hermitian_eigenvalues(&bound)[0];
        if min < -UNCERTAINTY_TOL {
            return Err(Error::NotPositiveSemidefinite(min));
        }
        Ok(Self {
            mean: [mean[0], mean[1], mean[2], mean[3]],
            covariance: std::array::from_fn(|i| std::array::from_fn(|j| covariance[(i, j)])),
            hbar,
        })
    }

    /// Pure product of two real Gaussian wave packets centered at `a` and `b`
    /// with position widths `width_a` and `width_b`: minimum-uncertainty
    /// momentum variances `ħ²/(4σ²)` and no cross-correlations.
    pub fn product_pure(a: f64, b: f64, width_a: f64, width_b: f64, hbar: f64) -> Result<Self> {
        if width_a <= 0.0 || width_b <= 0.0 {
            return Err(Error::InvalidConfig("widths must be positive".into()));
        }
        let mean = Vector4::new(a, 0.0, b, 0.0);
        let cov = Matrix4::from_diagonal(&Vector4::new(
            width_a * width_a,
            hbar * hbar / (4.0 * width_a * width_a),
            width_b * width_b,
            hbar * hbar / (4.0 * width_b * width_b),
        ));
        Self::new(mean, cov, hbar)
    }

    pub fn mean(&self) -> Vector4<f64> {
        Vector4::from_row_slice(&self.mean)
    }

    pub fn covariance(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.covariance[i][j])
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Global purity `(ħ/2)² / √(det σ)`.
    pub fn global_purity(&self) -> f64 {
        let det = self.covariance().determinant();
        (self.hbar / 2.0) * (self.hbar / 2.0) / det.sqrt()
    }

    /// Covariance block of a single mode (0 for A, 1 for B).
    pub fn reduced_covariance(&self, mode: usize) -> Result<Matrix2<f64>> {
        if mode > 1 {
            return Err(Error::InvalidIndex(format!("mode {mode} of 2")));
        }
        let o = 2 * mode;
        Ok(Matrix2::new(
            self.covariance[o][o],
            self.covariance[o][o + 1],
            self.covariance[o + 1][o],
            self.covariance[o + 1][o + 1],
        ))
    }
}

/// Linear canonical map `ξ ↦ Sξ + v` with `SΩSᵀ = Ω`.
#[derive(Debug, Clone)]
pub struct SymplecticTransform {
    matrix: Matrix4<f64>,
    displacement: Vector4<f64>,
}

impl SymplecticTransform {
    pub fn new(matrix: Matrix4<f64>, displacement: Vector4<f64>) -> Result<Self> {
        let omega = symplectic_form();
        let dev = (matrix * omega * matrix.transpose() - omega).abs().max();
        if dev > SYMPLECTIC_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self {
            matrix,
            displacement,
        })
    }

    pub fn identity() -> Self {
        Self {
            matrix: Matrix4::identity(),
            displacement: Vector4::zeros(),
        }
    }

    pub fn displacement_only(v: Vector4<f64>) -> Self {
        Self {
            matrix: Matrix4::identity(),
            displacement: v,
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    pub fn displacement(&self) -> &Vector4<f64> {
        &self.displacement
    }
}

/// Phase-space action of the position frame swap: the map that sends
/// `x_A ↦ -x_A`, `x_B ↦ x_B - x_A`, `p_A ↦ -p_A - p_B`, `p_B ↦ p_B`.
pub fn symplectic_for_position_swap() -> SymplecticTransform {
    let s = Matrix4::from_row_slice(&[
        -1.0, 0.0, 0.0, 0.0, //
        0.0, -1.0, 0.0, -1.0, //
        -1.0, 0.0, 1.0, 0.0, //
        0.0, 0.0, 0.0, 1.0,
    ]);
    SymplecticTransform::new(s, Vector4::zeros()).expect("position swap is symplectic")
}

/// Phase-space action of the momentum frame swap, assembled from parity on
/// the frame particle, the dilation block `diag(e^{-α}, e^{α})` on the
/// observed mode with `α = ln(μ/m_B)`, and the momentum shear. The momentum
/// rows produce `{-p_A, μ(p_B/m_B - p_A/m_A)}`, the correct relative
/// momentum; the position rows are an artifact of the construction and are
/// not relative positions.
pub fn symplectic_for_momentum_swap(mass_a: f64, mass_b: f64) -> Result<SymplecticTransform> {
    if mass_a <= 0.0 || mass_b <= 0.0 {
        return Err(Error::InvalidConfig("masses must be positive".into()));
    }
    let mu = mass_a * mass_b / (mass_a + mass_b);
    let alpha = (mu / mass_b).ln();
    let lambda = mass_b / mass_a;
    let parity = Matrix4::from_diagonal(&Vector4::new(-1.0, -1.0, 1.0, 1.0));
    let dilation = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, (-alpha).exp(), alpha.exp()));
    let shear = Matrix4::from_row_slice(&[
        1.0, 0.0, lambda, 0.0, //
        0.0, 1.0, 0.0, 0.0, //
        0.0, 0.0, 1.0, 0.0, //
        0.0, -lambda, 0.0, 1.0,
    ]);
    SymplecticTransform::new(parity * dilation * shear, Vector4::zeros())
}

/// `mean ↦ S·mean + v`, `σ ↦ SσSᵀ`; the output is re-validated.
pub fn apply_symplectic(state: &GaussianState, s: &SymplecticTransform) -> Result<GaussianState> {
    let mean = s.matrix() * state.mean() + s.displacement();
    let cov = s.matrix() * state.covariance() * s.matrix().transpose();
    GaussianState::new(mean, cov, state.hbar())
}

/// Entanglement content of a pure two-mode Gaussian state, read off mode A's
/// reduced covariance block. For a pure global state both reductions share
/// their symplectic eigenvalue, so the choice of mode is immaterial.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualEntanglement {
    /// `ħ / (2√(det σ_A))`, equal to 1 exactly on product states.
    pub reduced_purity: f64,
    /// Single-mode entropy `g(ν/ħ)` in nats.
    pub entropy: f64,
}

/// `g(ν̄) = (ν̄+½)ln(ν̄+½) − (ν̄−½)ln(ν̄−½)`, the entropy of a thermal mode
/// with symplectic eigenvalue `ν̄` (in units of ħ).
fn single_mode_entropy(nu_bar: f64) -> f64 {
    let plus = nu_bar + 0.5;
    let minus = (nu_bar - 0.5).max(0.0);
    let mut s = plus * plus.ln();
    if minus > 0.0 {
        s -= minus * minus.ln();
    }
    s
}

/// Reduced purity and entropy of one mode of a globally pure Gaussian state.
pub fn residual_entanglement(state: &GaussianState) -> Result<ResidualEntanglement> {
    let purity = state.global_purity();
    if (purity - 1.0).abs() > PURITY_TOL {
        return Err(Error::InvalidConfig(format!(
            "global state is not pure (purity {purity:.8})"
        )));
    }
    let reduced = state.reduced_covariance(0)?;
    let nu = reduced.determinant().sqrt();
    let nu_bar = nu / state.hbar();
    Ok(ResidualEntanglement {
        reduced_purity: 1.0 / (2.0 * nu_bar),
        entropy: single_mode_entropy(nu_bar),
    })
}

/// The widths entering the transformed product Gaussian's cross term:
/// `ζ = δΔ/√(δ² + Δ²)` and `α = a(ζ/Δ)²`.
pub fn crossing_term_params(a: f64, delta: f64, big_delta: f64) -> Result<(f64, f64)> {
    if delta <= 0.0 || big_delta <= 0.0 {
        return Err(Error::InvalidConfig("widths must be positive".into()));
    }
    let zeta = delta * big_delta / (delta * delta + big_delta * big_delta).sqrt();
    let alpha = a * (zeta / big_delta) * (zeta / big_delta);
    Ok((alpha, zeta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn max_entry(m: &Matrix4<f64>) -> f64 {
        m.abs().max()
    }

    #[test]
    fn position_swap_matches_the_stated_classical_action() {
        let s = symplectic_for_position_swap();
        let state = GaussianState::product_pure(2.0, 5.0, 1.0, 1.0, 1.0).unwrap();
        let out = apply_symplectic(&state, &s).unwrap();
        let m = out.mean();
        assert!((m[0] - (-2.0)).abs() < 1e-14);
        assert!(m[1].abs() < 1e-14);
        assert!((m[2] - 3.0).abs() < 1e-14);
        assert!(m[3].abs() < 1e-14);
        // p_B row is the identity
        assert_eq!(
            s.matrix().row(3).clone_owned(),
            Matrix4::identity().row(3).clone_owned()
        );
    }

    #[test]
    fn both_transforms_are_symplectic() {
        let omega = symplectic_form();
        for s in [
            symplectic_for_position_swap(),
            symplectic_for_momentum_swap(1.7, 0.3).unwrap(),
            symplectic_for_momentum_swap(2.4e-10, 2.4e-10).unwrap(),
        ] {
            let dev = max_entry(&(s.matrix() * omega * s.matrix().transpose() - omega));
            assert!(dev < 1e-10, "SΩSᵀ deviates by {dev:.3e}");
        }
    }

    #[test]
    fn momentum_swap_produces_relative_momenta() {
        // equal masses: p_B' = (p_B - p_A)/2
        let s = symplectic_for_momentum_swap(1.0, 1.0).unwrap();
        let row = s.matrix().row(3);
        assert!((row[0]).abs() < 1e-14);
        assert!((row[1] + 0.5).abs() < 1e-14);
        assert!((row[2]).abs() < 1e-14);
        assert!((row[3] - 0.5).abs() < 1e-14);
        // p_A' = -p_A regardless of masses
        let row_pa = s.matrix().row(1);
        assert!((row_pa[1] + 1.0).abs() < 1e-14);

        // m_B/m_A → 0: frame-particle position row tends to -x_A
        let s = symplectic_for_momentum_swap(1.0, 1e-9).unwrap();
        let row_xa = s.matrix().row(0);
        assert!((row_xa[0] + 1.0).abs() < 1e-12);
        assert!(row_xa[2].abs() < 1e-8);
    }

    #[test]
    fn applying_the_identity_and_displacements() {
        let state = GaussianState::product_pure(1.0, -2.0, 0.7, 1.3, 1.0).unwrap();
        let same = apply_symplectic(&state, &SymplecticTransform::identity()).unwrap();
        assert!(max_entry(&(same.covariance() - state.covariance())) < 1e-14);

        let shifted = apply_symplectic(
            &state,
            &SymplecticTransform::displacement_only(Vector4::new(1.0, 0.0, 0.0, 2.0)),
        )
        .unwrap();
        assert!((shifted.mean()[0] - 2.0).abs() < 1e-14);
        assert!((shifted.mean()[3] - 2.0).abs() < 1e-14);
        assert!(max_entry(&(shifted.covariance() - state.covariance())) < 1e-14);
    }

    #[test]
    fn position_swap_entangles_equal_width_products() {
        let state = GaussianState::product_pure(1.0, 0.0, 1.0, 1.0, 1.0).unwrap();
        let out = apply_symplectic(&state, &symplectic_for_position_swap()).unwrap();
        // x_A–x_B cross term appears
        assert!(out.covariance()[(0, 2)].abs() > 0.5);
        let ent = residual_entanglement(&out).unwrap();
        assert!(ent.reduced_purity < 1.0);
        assert!(ent.entropy > 0.0);
        // δ = Δ = 1, ħ = 1: reduced block is diag(1, 1/2), ν = 1/√2
        let nu = 0.5f64.sqrt();
        assert!((ent.reduced_purity - 1.0 / (2.0 * nu)).abs() < 1e-12);
    }

    #[test]
    fn purity_is_symplectic_invariant_and_products_are_pure() {
        let state = GaussianState::product_pure(0.3, -1.0, 0.4, 2.5, 1.0).unwrap();
        assert!((state.global_purity() - 1.0).abs() < 1e-12);
        let ent = residual_entanglement(&state).unwrap();
        assert!((ent.reduced_purity - 1.0).abs() < 1e-12);
        assert!(ent.entropy.abs() < 1e-12);

        for s in [
            symplectic_for_position_swap(),
            symplectic_for_momentum_swap(2.0, 0.5).unwrap(),
        ] {
            let out = apply_symplectic(&state, &s).unwrap();
            assert!((out.global_purity() - state.global_purity()).abs() < 1e-10);
        }
    }

    #[test]
    fn position_swap_never_yields_a_product_across_the_width_grid() {
        for big_delta in [0.2, 1.4, 2.6, 3.8, 5.0] {
            for delta in [0.2, 1.4, 2.6, 3.8, 5.0] {
                let state = GaussianState::product_pure(1.0, 0.5, big_delta, delta, 1.0).unwrap();
                let out = apply_symplectic(&state, &symplectic_for_position_swap()).unwrap();
                let ent = residual_entanglement(&out).unwrap();
                assert!(
                    ent.reduced_purity < 1.0,
                    "(Δ, δ) = ({big_delta}, {delta}): purity {}",
                    ent.reduced_purity
                );
                // closed form: purity = δ/√(δ² + Δ²)
                let want = delta / (delta * delta + big_delta * big_delta).sqrt();
                assert!((ent.reduced_purity - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mixed_states_are_rejected_by_residual_entanglement() {
        let cov = Matrix4::from_diagonal(&nalgebra::Vector4::new(2.0, 2.0, 2.0, 2.0));
        let state = GaussianState::new(Vector4::zeros(), cov, 1.0).unwrap();
        assert!(residual_entanglement(&state).is_err());
    }

    #[test]
    fn uncertainty_bound_is_enforced() {
        let cov = Matrix4::from_diagonal(&nalgebra::Vector4::new(0.01, 0.01, 1.0, 1.0));
        assert!(matches!(
            GaussianState::new(Vector4::zeros(), cov, 1.0),
            Err(Error::NotPositiveSemidefinite(_))
        ));
    }

    #[test]
    fn crossing_term_values() {
        let (alpha, zeta) = crossing_term_params(1.0, 1.0, 1.0).unwrap();
        assert!((zeta - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((alpha - 0.5).abs() < 1e-15);

        // Δ → ∞: ζ → δ and α → 0
        let (alpha, zeta) = crossing_term_params(1.0, 0.8, 1e9).unwrap();
        assert!((zeta - 0.8).abs() < 1e-9);
        assert!(alpha.abs() < 1e-15);

        let (alpha, _) = crossing_term_params(0.0, 0.5, 0.5).unwrap();
        assert_eq!(alpha, 0.0);

        assert!(crossing_term_params(1.0, 0.0, 1.0).is_err());
    }

    /// Discretized Schmidt oracle: sample the transformed two-particle wave
    /// function on a square grid, then read the entanglement entropy off the
    /// singular values.
    fn schmidt_entropy_oracle(a: f64, b: f64, big_delta: f64, delta: f64, points: usize) -> f64 {
        let su = big_delta;
        let sv = (big_delta * big_delta + delta * delta).sqrt();
        let (cu, cv) = (-a, b - a);
        let span = 8.0;
        let mut m = DMatrix::<f64>::zeros(points, points);
        for iu in 0..points {
            let u = cu - span * su + 2.0 * span * su * (iu as f64) / (points - 1) as f64;
            for iv in 0..points {
                let v = cv - span * sv + 2.0 * span * sv * (iv as f64) / (points - 1) as f64;
                let ga = (-(u + a) * (u + a) / (4.0 * big_delta * big_delta)).exp();
                let gb = (-(v - u - b) * (v - u - b) / (4.0 * delta * delta)).exp();
                m[(iu, iv)] = ga * gb;
            }
        }
        let norm = m.norm();
        m /= norm;
        let svd = m.svd(false, false);
        let mut s = 0.0;
        for sv in svd.singular_values.iter() {
            let l = sv * sv;
            if l > 1e-300 {
                s -= l * l.ln();
            }
        }
        s
    }

    #[test]
    fn covariance_entropy_matches_the_discretized_schmidt_oracle() {
        let state = GaussianState::product_pure(1.0, 0.0, 1.0, 1.0, 1.0).unwrap();
        let out = apply_symplectic(&state, &symplectic_for_position_swap()).unwrap();
        let ent = residual_entanglement(&out).unwrap();
        let oracle = schmidt_entropy_oracle(1.0, 0.0, 1.0, 1.0, 201);
        let rel = (ent.entropy - oracle).abs() / oracle;
        assert!(
            rel < 0.01,
            "covariance route {} vs oracle {} (rel {:.3e})",
            ent.entropy,
            oracle,
            rel
        );
    }
}
