//! Fuzz the covariance identity: under any unitary change of reference
//! frame the individual resources move, but `𝔔 + 𝔔̄` never does.
//!
//! ```text
//! cargo run --example covariance_fuzz -- [trials] [seed]
//! ```

use qrcov::frames::fourier_mu_set;
use qrcov::hilbert::SubsystemDims;
use qrcov::resources::{covariance_check, ObservableSet};
use qrcov::scenarios::{random_state, random_unitary};

fn main() -> qrcov::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let dims = SubsystemDims::bipartite(3, 2)?;
    let set = ObservableSet::computational(&dims)?;
    let mu = fourier_mu_set(&dims)?;

    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10} {:>12}",
        "trial", "Q", "Q'", "Qbar", "Qbar'", "gap"
    );
    let mut max_gap = 0.0f64;
    let mut max_move = 0.0f64;
    for trial in 0..trials as u64 {
        let rank = 1 + (trial as usize) % dims.total();
        let rho = random_state(dims.clone(), rank, seed + trial)?;
        let t = random_unitary(dims.clone(), seed ^ (trial + 1));
        let check = covariance_check(&rho, &set, &mu, &t, &set, &mu)?;
        println!(
            "{trial:>5} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>12.3e}",
            check.quantumness,
            check.quantumness_primed,
            check.incompatible_quantumness,
            check.incompatible_quantumness_primed,
            check.gap
        );
        max_gap = max_gap.max(check.gap);
        max_move = max_move.max((check.quantumness - check.quantumness_primed).abs());
    }
    println!("\nmax total gap     = {max_gap:.3e} (must stay at float noise)");
    println!("max Q displacement = {max_move:.3} nats (free to be large)");
    Ok(())
}
