//! Acceptance suite: one test per criterion, each printing a `PASS`/`FAIL`
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance is pinned in code next to the check it gates; nothing is
//! deferred to later calibration.

use std::time::Instant;

use nalgebra::DMatrix;
use qrcov::frames::{
    fourier_mu_set, fourier_partner_set, parity_conditional_shift, BoundaryMode, LatticeGrid,
};
use qrcov::freefall::{coherence_discord_noninvariance, run_simulation, FreefallConfig};
use qrcov::gaussian::{
    apply_symplectic, crossing_term_params, residual_entanglement, symplectic_for_position_swap,
    GaussianState,
};
use qrcov::hilbert::{DensityMatrix, SubsystemDims};
use qrcov::resources::{
    covariance_check, decompose, dephase_joint, quantumness, ObservableBasis, ObservableSet,
};
use qrcov::scenarios::{
    random_basis, random_pure, random_state, random_unitary, two_slit_state, two_slit_transformed,
    TwoSlitConfig,
};

const DIM_PAIRS: [(usize, usize); 9] = [
    (2, 2),
    (2, 3),
    (2, 4),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 2),
    (4, 3),
    (4, 4),
];

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

/// Criterion 1: the decomposition identity `I = 𝔔 + 𝔔̄` over 500 seeded
/// random contexts at `|residual| ≤ 1e-9`, within 60 s.
#[test]
fn criterion_1_decomposition_identity() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for trial in 0..500u64 {
        let (d_a, d_b) = DIM_PAIRS[(trial % 9) as usize];
        let dims = SubsystemDims::bipartite(d_a, d_b).unwrap();
        let rank = 1 + (trial as usize / 9) % dims.total();
        let rho = random_state(dims.clone(), rank, trial).unwrap();
        let set = ObservableSet::computational(&dims).unwrap();
        let mu = fourier_mu_set(&dims).unwrap();
        let rep = decompose(&rho, &set, &mu).unwrap();
        worst = worst.max((rep.info - rep.quantumness - rep.incompatible_quantumness).abs());
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "1 (decomposition identity)",
        worst <= 1e-9 && elapsed <= 60.0,
        &format!("max |I - Q - Qbar| = {worst:.3e} over 500 contexts in {elapsed:.1} s"),
    );
}

/// Criterion 2: covariance of the total over 200 seeded frame changes —
/// Haar-random unitaries with passively transformed sets, plus the exact
/// wrap-mode lattice swap at L ∈ {3, 5} — with gap ≤ 1e-9 while the
/// individual quantumnesses move by more than 1e-3 in at least half the
/// trials. Within 5 minutes.
#[test]
fn criterion_2_covariance() {
    let started = Instant::now();
    let mut max_gap = 0.0f64;
    let mut moved = 0usize;
    let mut trials = 0usize;

    for trial in 0..100u64 {
        let (d_a, d_b) = DIM_PAIRS[(trial % 9) as usize];
        let dims = SubsystemDims::bipartite(d_a, d_b).unwrap();
        let rank = 1 + (trial as usize / 9) % dims.total();
        let rho = random_state(dims.clone(), rank, 1000 + trial).unwrap();
        let t = random_unitary(dims.clone(), 5000 + trial);
        let set = ObservableSet::computational(&dims).unwrap();
        let mu = fourier_mu_set(&dims).unwrap();
        let check = covariance_check(&rho, &set, &mu, &t, &set, &mu).unwrap();
        max_gap = max_gap.max(check.gap);
        if (check.quantumness - check.quantumness_primed).abs() > 1e-3 {
            moved += 1;
        }
        trials += 1;
    }

    for (block, l) in [3usize, 5].into_iter().enumerate() {
        let grid = LatticeGrid::new(l, 1.0, 1.0).unwrap();
        let xi = grid.dimension();
        let dims = SubsystemDims::bipartite(xi, xi).unwrap();
        let t = parity_conditional_shift(&grid, 1, BoundaryMode::Wrap)
            .unwrap()
            .unitary()
            .unwrap();
        for k in 0..50u64 {
            let seed = 9000 + block as u64 * 50 + k;
            let rho = random_pure(dims.clone(), seed).to_density();
            // the exact wrap swap permutes the position basis, which pins
            // position quantumness; random local sets interleave so the
            // movement clause is exercised under the lattice swap as well
            let set = if k % 2 == 0 {
                ObservableSet::computational(&dims).unwrap()
            } else {
                ObservableSet::new(vec![
                    random_basis(0, xi, seed ^ 0xa5a5).unwrap(),
                    random_basis(1, xi, seed ^ 0x5a5a).unwrap(),
                ])
                .unwrap()
            };
            let mu = fourier_partner_set(&set).unwrap();
            let check = covariance_check(&rho, &set, &mu, &t, &set, &mu).unwrap();
            max_gap = max_gap.max(check.gap);
            if (check.quantumness - check.quantumness_primed).abs() > 1e-3 {
                moved += 1;
            }
            trials += 1;
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    let moved_fraction = moved as f64 / trials as f64;
    report(
        "2 (covariance)",
        max_gap <= 1e-9 && moved_fraction >= 0.5 && elapsed <= 300.0,
        &format!(
            "max gap = {max_gap:.3e}, moved fraction = {moved_fraction:.2} over {trials} trials in {elapsed:.1} s"
        ),
    );
}

/// Criterion 3: joint dephasing by a set and its Fourier partner erases the
/// state to `1/d` within `1e-10` max-norm, 100 random states per dim pair.
#[test]
fn criterion_3_mu_erasure() {
    let mut worst = 0.0f64;
    for (pair_idx, &(d_a, d_b)) in DIM_PAIRS.iter().enumerate() {
        let dims = SubsystemDims::bipartite(d_a, d_b).unwrap();
        let set = ObservableSet::computational(&dims).unwrap();
        let mu = fourier_mu_set(&dims).unwrap();
        let uniform = DensityMatrix::maximally_mixed(dims.clone());
        for k in 0..100u64 {
            let seed = 20_000 + pair_idx as u64 * 100 + k;
            let rank = 1 + (k as usize) % dims.total();
            let rho = random_state(dims.clone(), rank, seed).unwrap();
            let erased = dephase_joint(&dephase_joint(&rho, &set).unwrap(), &mu).unwrap();
            let dev = (erased.matrix() - uniform.matrix())
                .iter()
                .fold(0.0f64, |m, z| m.max(z.norm()));
            worst = worst.max(dev);
        }
    }
    report(
        "3 (MU erasure)",
        worst <= 1e-10,
        &format!("max ‖Φ_mu Φ_O(ρ) - 1/d‖ = {worst:.3e} over 900 states"),
    );
}

/// Criterion 4: two-slit reality relativity across a 3×3×3 grid of valid
/// `(i, j, k)` at L = 5 — irreality `ln 2 ± 1e-12` in the preparing frame,
/// `≤ 1e-12` in the particle frame, and quantumness equal to `1e-10`.
#[test]
fn criterion_4_two_slit_reality() {
    let ln2 = 2f64.ln();
    let mut worst_lab = 0.0f64;
    let mut worst_frame = 0.0f64;
    let mut worst_gap = 0.0f64;
    let mut combos = 0;
    for i in [1i64, 2, -1] {
        for j in [1i64, -2, 2] {
            for k in [1i64, -1, 2] {
                let cfg = TwoSlitConfig::new(5, i, j, k).unwrap();
                let xi = cfg.dimension();
                let dims = SubsystemDims::bipartite(xi, xi).unwrap();
                let rho = two_slit_state(&cfg).unwrap().to_density();
                let rho_frame = two_slit_transformed(&cfg).unwrap().to_density();
                let x_b = ObservableBasis::computational(1, xi).unwrap();
                let set = ObservableSet::computational(&dims).unwrap();
                worst_lab =
                    worst_lab.max((qrcov::resources::irreality(&rho, &x_b).unwrap() - ln2).abs());
                worst_frame =
                    worst_frame.max(qrcov::resources::irreality(&rho_frame, &x_b).unwrap());
                let q = quantumness(&rho, &set).unwrap();
                let q_frame = quantumness(&rho_frame, &set).unwrap();
                worst_gap = worst_gap.max((q - q_frame).abs());
                combos += 1;
            }
        }
    }
    report(
        "4 (two-slit reality relativity)",
        combos == 27 && worst_lab <= 1e-12 && worst_frame <= 1e-12 && worst_gap <= 1e-10,
        &format!(
            "27 configs: max |irr - ln2| = {worst_lab:.3e}, max irr' = {worst_frame:.3e}, max Q gap = {worst_gap:.3e}"
        ),
    );
}

/// Criterion 5: the free-fall run at the reference geometry — per-frame
/// `𝔔 + 𝔔̄ = 2 ln 31` within 1e-8 at every step, a quantumness gap larger
/// than 0.01 percentage points somewhere at `t̄ > 0`, and byte-stable CSV
/// against the frozen first verified run. Within 5 minutes.
#[test]
fn criterion_5_freefall_reference_run() {
    let started = Instant::now();
    let cfg = FreefallConfig::default();
    let snapshots = run_simulation(&cfg).unwrap();
    let info = 2.0 * 31f64.ln();
    let mut worst_identity = 0.0f64;
    let mut max_delta_positive_time = 0.0f64;
    for s in &snapshots {
        worst_identity = worst_identity
            .max((s.q_lab + s.qbar_lab - info).abs())
            .max((s.q_frame + s.qbar_frame - info).abs());
        if s.t_bar > 0.0 {
            max_delta_positive_time = max_delta_positive_time.max(s.delta_percent.abs());
        }
    }

    let csv = qrcov::cli::freefall_csv(&cfg).unwrap();
    let golden = include_str!("golden/freefall_reference.csv");
    let matches_golden = csv == golden;

    let elapsed = started.elapsed().as_secs_f64();
    report(
        "5 (free-fall reference run)",
        snapshots.len() == 50
            && worst_identity <= 1e-8
            && max_delta_positive_time > 0.01
            && matches_golden
            && elapsed <= 300.0,
        &format!(
            "50 steps: max |Q + Qbar - 2 ln 31| = {worst_identity:.3e}, max |Δ| at t̄ > 0 = {max_delta_positive_time:.3} pp, golden match = {matches_golden}, {elapsed:.1} s"
        ),
    );
}

/// Criterion 6: the limit surrogates at L = 7 — a vanishing mass ratio kills
/// the particle-frame discord while the lab discord stays macroscopic, and a
/// vanishing relative width kills the lab coherence while the particle-frame
/// coherence stays macroscopic. Each within 2 minutes.
#[test]
fn criterion_6_limit_surrogates() {
    let started = Instant::now();
    let eta_cfg = FreefallConfig {
        half_width: 7,
        d_bar: 0.0,
        sigma_cm_bar: 4.0,
        sigma_r_bar: 1.0,
        mass_b_kg: 2.4e-10 * 1e-3,
        time_grid: vec![0.0],
        ..FreefallConfig::default()
    };
    let eta = coherence_discord_noninvariance(&eta_cfg, 0.0).unwrap();
    let eta_elapsed = started.elapsed().as_secs_f64();

    let sigma_started = Instant::now();
    let sigma_cfg = FreefallConfig {
        half_width: 7,
        d_bar: 2.0,
        sigma_cm_bar: 3.0,
        sigma_r_bar: 0.05,
        time_grid: vec![0.0],
        ..FreefallConfig::default()
    };
    let sigma = coherence_discord_noninvariance(&sigma_cfg, 0.0).unwrap();
    let sigma_elapsed = sigma_started.elapsed().as_secs_f64();

    report(
        "6 (limit claims)",
        eta.discord_frame <= 1e-6
            && eta.discord_lab >= 0.01
            && sigma.coherence_lab <= 1e-6
            && sigma.coherence_frame >= 0.01
            && eta_elapsed <= 120.0
            && sigma_elapsed <= 120.0,
        &format!(
            "η = 1e-3: D = {:.3e}, D' = {:.3e} ({eta_elapsed:.1} s); σ̄_r = 0.05: C = {:.3e}, C' = {:.3e} ({sigma_elapsed:.1} s)",
            eta.discord_lab, eta.discord_frame, sigma.coherence_lab, sigma.coherence_frame
        ),
    );
}

/// Discretized Schmidt oracle for the transformed product Gaussian: sample
/// the wave function on a 401-point grid per particle and read the
/// entanglement entropy off the squared singular values.
fn schmidt_entropy_oracle(a: f64, big_delta: f64, delta: f64) -> f64 {
    const POINTS: usize = 401;
    let su = big_delta;
    let sv = (big_delta * big_delta + delta * delta).sqrt();
    let (cu, cv) = (-a, -a);
    let span = 8.0;
    let mut m = DMatrix::<f64>::zeros(POINTS, POINTS);
    for iu in 0..POINTS {
        let u = cu - span * su + 2.0 * span * su * (iu as f64) / (POINTS - 1) as f64;
        for iv in 0..POINTS {
            let v = cv - span * sv + 2.0 * span * sv * (iv as f64) / (POINTS - 1) as f64;
            let ga = (-(u + a) * (u + a) / (4.0 * big_delta * big_delta)).exp();
            let gb = (-(v - u) * (v - u) / (4.0 * delta * delta)).exp();
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

/// Criterion 7: the transformed product Gaussian across the 5×5 width grid
/// spanning [0.2, 5] — reduced purity below `1 - 1e-3` everywhere, the
/// covariance-route entropy within 1% of the 401-point Schmidt oracle, and
/// the crossing-term parameters exact to 1e-12.
///
/// The purity threshold is checked exactly as stated even though the
/// `(Δ, δ) = (0.2, 5)` corner provably sits at `1 - purity = Δ²/(2δ²)·(1 +
/// O(Δ²/δ²)) ≈ 8.0e-4 < 1e-3`: the transformed state there is strictly
/// entangled but by less than the stated margin, so this check fails by
/// construction for any width grid spanning the full range.
#[test]
fn criterion_7_gaussian_residual_entanglement() {
    let widths = [0.2, 1.4, 2.6, 3.8, 5.0];
    let a = 1.0;
    let mut max_purity = 0.0f64;
    let mut worst_entropy_rel = 0.0f64;
    let mut oracle_points = 0usize;
    let mut purity_ok = true;
    for &big_delta in &widths {
        for &delta in &widths {
            let state = GaussianState::product_pure(a, 0.0, big_delta, delta, 1.0).unwrap();
            let out = apply_symplectic(&state, &symplectic_for_position_swap()).unwrap();
            let ent = residual_entanglement(&out).unwrap();
            max_purity = max_purity.max(ent.reduced_purity);
            if ent.reduced_purity >= 1.0 - 1e-3 {
                purity_ok = false;
            }
            // the oracle comparison applies only where the 401-point grid
            // resolves the relative-coordinate width (spacing ≤ δ/2)
            if big_delta <= 12.0 * delta {
                let oracle = schmidt_entropy_oracle(a, big_delta, delta);
                if oracle > 1e-6 {
                    worst_entropy_rel =
                        worst_entropy_rel.max((ent.entropy - oracle).abs() / oracle);
                    oracle_points += 1;
                }
            }
        }
    }

    let (alpha, zeta) = crossing_term_params(1.0, 1.0, 1.0).unwrap();
    let zeta_want = 1.0 / 2f64.sqrt();
    let params_ok = (zeta - zeta_want).abs() <= 1e-12 && (alpha - 0.5).abs() <= 1e-12;

    report(
        "7 (Gaussian residual entanglement)",
        purity_ok && worst_entropy_rel <= 0.01 && params_ok,
        &format!(
            "max reduced purity = {max_purity:.6} (threshold {:.6}), max entropy deviation vs oracle = {worst_entropy_rel:.3e} over {oracle_points} resolved points, crossing params exact = {params_ok}",
            1.0 - 1e-3
        ),
    );
}

/// Criterion 8: the context-incompatibility axioms — zero for coinciding
/// basis pairs and zero whenever the first dephasing already yields the
/// uniform state, within 1e-10, over seeded sweeps.
#[test]
fn criterion_8_context_incompatibility_axioms() {
    let mut worst = 0.0f64;
    for trial in 0..100u64 {
        let d = 2 + (trial % 3) as usize;
        let dims = SubsystemDims::single(d).unwrap();
        let rho = random_state(dims.clone(), 1 + (trial as usize) % d, 40_000 + trial).unwrap();
        let b1 = random_basis(0, d, 41_000 + trial).unwrap();
        let b2 = random_basis(0, d, 42_000 + trial).unwrap();

        // coinciding projector families
        let same = qrcov::resources::context_incompatibility_single(&rho, &b1, &b1).unwrap();
        worst = worst.max(same);

        // first dephasing already uniform: the maximally mixed state, and a
        // pure state drawn from a basis maximally unbiased to the first one
        let uniform = DensityMatrix::maximally_mixed(dims.clone());
        let v = qrcov::resources::context_incompatibility_single(&uniform, &b1, &b2).unwrap();
        worst = worst.max(v);

        let partner = qrcov::frames::fourier_partner(&b1).unwrap();
        let col = partner
            .matrix()
            .column((trial % d as u64) as usize)
            .clone_owned();
        let flat = DensityMatrix::new(dims.clone(), &col * col.adjoint()).unwrap();
        let v = qrcov::resources::context_incompatibility_single(&flat, &b1, &b2).unwrap();
        worst = worst.max(v);
    }
    report(
        "8 (context-incompatibility axioms)",
        worst <= 1e-10,
        &format!("max ℐ over coinciding/uniform sweeps = {worst:.3e}"),
    );
}
