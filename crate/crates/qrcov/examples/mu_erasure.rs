//! Stepwise information erasure: measuring a set `𝕆` removes exactly the
//! quantumness `𝔔_𝕆`; a second measurement in a maximally unbiased set wipes
//! what is left, landing on the uniform state.
//!
//! ```text
//! cargo run --example mu_erasure
//! ```

use qrcov::frames::fourier_mu_set;
use qrcov::hilbert::{DensityMatrix, SubsystemDims};
use qrcov::resources::{dephase_joint, information, ObservableSet};
use qrcov::scenarios::random_state;

fn main() -> qrcov::Result<()> {
    let dims = SubsystemDims::bipartite(3, 3)?;
    let set = ObservableSet::computational(&dims)?;
    let mu = fourier_mu_set(&dims)?;

    let rho = random_state(dims.clone(), 2, 7)?;
    let after_set = dephase_joint(&rho, &set)?;
    let after_both = dephase_joint(&after_set, &mu)?;

    let steps = [
        ("initial state", &rho),
        ("after measuring {Z_A, Z_B}", &after_set),
        ("after also measuring {X_A, X_B}", &after_both),
    ];
    println!("{:<34} {:>10}", "stage", "info");
    for (label, state) in steps {
        println!("{label:<34} {:>10.6}", information(state)?);
    }

    let uniform = DensityMatrix::maximally_mixed(dims);
    let dev = (after_both.matrix() - uniform.matrix())
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    println!("\nmax |final - 1/d| entry = {dev:.3e}");
    Ok(())
}
