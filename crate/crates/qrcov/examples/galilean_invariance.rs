//! The Galilean counterpart of an invariant interval: the expected relative
//! position ⟨X_C − X_B⟩ does not change when the description jumps from the
//! external observer to particle A's frame.
//!
//! ```text
//! cargo run --example galilean_invariance
//! ```

use qrcov::frames::{galilean_relative_invariance, LatticeGrid};
use qrcov::hilbert::{CVector, PureState, C64};

fn main() -> qrcov::Result<()> {
    let grid = LatticeGrid::new(7, 1.0, 1.0)?;
    let dims = grid.dims(3)?;

    // a sharp configuration: particles A, B, C at sites 1, 4, 6
    let sharp = PureState::basis_state(
        dims.clone(),
        &[grid.index_of(1)?, grid.index_of(4)?, grid.index_of(6)?],
    )?;
    let (before, after) = galilean_relative_invariance(&sharp, &grid)?;
    println!("sharp |1⟩|4⟩|6⟩:        before = {before:+.6} δq, after = {after:+.6} δq");

    // a delocalized three-particle superposition away from the boundary
    let mut amps = CVector::zeros(dims.total());
    let mut s = 23u64;
    let mut next = move || {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    for g in 0..dims.total() {
        let inside = (0..3).all(|k| grid.site_of(dims.sub_index(g, k)).abs() <= 3);
        if inside {
            amps[g] = C64::new(next(), next());
        }
    }
    let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let fuzzy = PureState::new(dims, amps / C64::new(norm, 0.0))?;
    let (before, after) = galilean_relative_invariance(&fuzzy, &grid)?;
    println!("random superposition:   before = {before:+.6} δq, after = {after:+.6} δq");
    println!(
        "                        gap = {:.3e} δq",
        (before - after).abs()
    );
    Ok(())
}
