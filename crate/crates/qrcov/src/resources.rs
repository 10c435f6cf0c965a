//! Dephasing maps and resource quantifiers: coherence, one-way and symmetric
//! discord, quantumness, context incompatibility, incompatible quantumness,
//! and irreality, assembled into the information decomposition
//! `I = 𝔔 + 𝔔̄` and its frame-covariance check.
//!
//! Wherever two algebraically equal routes to a quantity exist (quantumness
//! as coherences-plus-discord vs. as an information gap, incompatible
//! quantumness vs. context incompatibility, irreality vs. coherence plus
//! discord), both are computed and their agreement is enforced at `1e-9`;
//! a violation is reported as [`Error::Inconsistency`], never papered over.
//!
//! Values in `[-1e-9, 0)` arising from float cancellation are clamped to
//! zero; anything more negative is an error, since every quantifier here is
//! provably nonnegative.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, CVector, DensityMatrix, SubsystemDims, UnitaryMatrix, C64};

/// Max allowed Gram-matrix deviation for an observable eigenbasis.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;
/// Max allowed deviation of `|⟨a_i|ā_j⟩|²` from `1/d` for maximally unbiased sets.
pub const UNBIASED_TOL: f64 = 1e-9;
/// Tolerance for the internal dual-route identity checks.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Resource values below `-NEGATIVE_TOL` are errors; in `[-NEGATIVE_TOL, 0)` they clamp to 0.
pub const NEGATIVE_TOL: f64 = 1e-9;

fn clamp_resource(v: f64) -> Result<f64> {
    if v < -NEGATIVE_TOL {
        return Err(Error::NegativeQuantity(v));
    }
    Ok(v.max(0.0))
}

fn check_identity(label: &str, a: f64, b: f64) -> Result<()> {
    if (a - b).abs() > IDENTITY_TOL {
        return Err(Error::Inconsistency(format!(
            "{label}: routes give {a:.12e} and {b:.12e} (|Δ| = {:.3e})",
            (a - b).abs()
        )));
    }
    Ok(())
}

/// Orthonormal eigenbasis of a nondegenerate observable on one subsystem.
///
/// Only the rank-1 projector family enters any quantifier, so eigenvalues are
/// deliberately not stored. Columns of `matrix` are the basis vectors.
#[derive(Debug, Clone)]
pub struct ObservableBasis {
    subsystem: usize,
    matrix: CMatrix,
}

impl ObservableBasis {
    pub fn new(subsystem: usize, matrix: CMatrix) -> Result<Self> {
        let d = matrix.ncols();
        if d < 2 || matrix.nrows() != d {
            return Err(Error::InvalidDims(format!(
                "{}x{} basis matrix",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let gram = matrix.adjoint() * &matrix;
        let dev = (gram - CMatrix::identity(d, d))
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if dev > ORTHONORMALITY_TOL {
            return Err(Error::NotOrthonormal(dev));
        }
        Ok(Self { subsystem, matrix })
    }

    pub fn from_vectors(subsystem: usize, vectors: &[CVector]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidDims("no basis vectors".into()));
        }
        let d = vectors[0].len();
        let mut m = CMatrix::zeros(d, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(Error::DimensionMismatch("ragged basis vectors".into()));
            }
            m.set_column(j, v);
        }
        Self::new(subsystem, m)
    }

    /// Computational (position) basis: the identity matrix.
    pub fn computational(subsystem: usize, d: usize) -> Result<Self> {
        Self::new(subsystem, CMatrix::identity(d, d))
    }

    pub fn subsystem(&self) -> usize {
        self.subsystem
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Same projector family, bound to another subsystem slot.
    pub fn on_subsystem(mut self, subsystem: usize) -> Self {
        self.subsystem = subsystem;
        self
    }

    /// Max deviation of `|⟨a_i|b_j⟩|²` from `1/d` over all vector pairs.
    pub fn unbiased_deviation(&self, other: &Self) -> Result<f64> {
        let d = self.dim();
        if other.dim() != d {
            return Err(Error::DimensionMismatch(format!(
                "bases of dimension {d} and {}",
                other.dim()
            )));
        }
        let overlaps = self.matrix.adjoint() * other.matrix();
        let target = 1.0 / d as f64;
        Ok(overlaps
            .iter()
            .fold(0.0f64, |m, z| m.max((z.norm_sqr() - target).abs())))
    }
}

/// One observable eigenbasis per subsystem, e.g. `{A ⊗ 1, 1 ⊗ B}`.
#[derive(Debug, Clone)]
pub struct ObservableSet {
    bases: Vec<ObservableBasis>,
    dims: SubsystemDims,
}

impl ObservableSet {
    /// Bases must cover subsystems `0..n` exactly once each.
    pub fn new(mut bases: Vec<ObservableBasis>) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::InvalidDims("empty observable set".into()));
        }
        bases.sort_by_key(|b| b.subsystem());
        for (k, b) in bases.iter().enumerate() {
            if b.subsystem() != k {
                return Err(Error::InvalidIndex(format!(
                    "observable set must cover each subsystem exactly once; \
                     found subsystem {} at position {k}",
                    b.subsystem()
                )));
            }
        }
        let dims = SubsystemDims::new(&bases.iter().map(|b| b.dim()).collect::<Vec<_>>())?;
        Ok(Self { bases, dims })
    }

    pub fn computational(dims: &SubsystemDims) -> Result<Self> {
        let bases = dims
            .dims()
            .iter()
            .enumerate()
            .map(|(k, &d)| ObservableBasis::computational(k, d))
            .collect::<Result<Vec<_>>>()?;
        Self::new(bases)
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn bases(&self) -> &[ObservableBasis] {
        &self.bases
    }

    pub fn basis(&self, subsystem: usize) -> Result<&ObservableBasis> {
        self.bases
            .get(subsystem)
            .ok_or_else(|| Error::InvalidIndex(format!("no basis for subsystem {subsystem}")))
    }

    fn check_state(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dims() != &self.dims {
            return Err(Error::DimensionMismatch(format!(
                "state dims {:?} vs observable-set dims {:?}",
                rho.dims().dims(),
                self.dims.dims()
            )));
        }
        Ok(())
    }

    /// Per-subsystem maximal-unbiasedness deviation against another set.
    pub fn unbiased_deviation(&self, other: &Self) -> Result<f64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(
                "observable sets on different spaces".into(),
            ));
        }
        let mut dev = 0.0f64;
        for (a, b) in self.bases.iter().zip(other.bases.iter()) {
            dev = dev.max(a.unbiased_deviation(b)?);
        }
        Ok(dev)
    }

    fn require_unbiased_to(&self, mu: &Self) -> Result<()> {
        let dev = self.unbiased_deviation(mu)?;
        if dev > UNBIASED_TOL {
            return Err(Error::NotUnbiased(dev));
        }
        Ok(())
    }
}

/// A state with two observable sets: the input of the bipartite
/// context-incompatibility measure.
#[derive(Debug, Clone)]
pub struct Context {
    pub state: DensityMatrix,
    pub set1: ObservableSet,
    pub set2: ObservableSet,
}

impl Context {
    pub fn new(state: DensityMatrix, set1: ObservableSet, set2: ObservableSet) -> Result<Self> {
        set1.check_state(&state)?;
        set2.check_state(&state)?;
        Ok(Self { state, set1, set2 })
    }
}

/// The full decomposition for one `(state, observable set, unbiased set)`
/// context. All entries are in nats and clamped at zero from below.
#[derive(Debug, Clone, Serialize)]
pub struct ResourceReport {
    pub info: f64,
    pub coherence_a: f64,
    pub coherence_b: f64,
    pub discord_a: f64,
    pub discord_b_after_a: f64,
    pub discord_sym: f64,
    pub quantumness: f64,
    pub incompatible_quantumness: f64,
    pub irreality_a: f64,
    pub irreality_b_after_a: f64,
}

// ---------------------------------------------------------------------------
// dephasing machinery
// ---------------------------------------------------------------------------

/// `I ⊗ U ⊗ I` with `U` in slot `subsystem`.
fn lift_to_full_space(dims: &SubsystemDims, subsystem: usize, u: &CMatrix) -> CMatrix {
    let mut acc = CMatrix::identity(1, 1);
    for (k, &d) in dims.dims().iter().enumerate() {
        if k == subsystem {
            acc = acc.kronecker(u);
        } else {
            acc = acc.kronecker(&CMatrix::identity(d, d));
        }
    }
    acc
}

/// Zeroes every entry whose row and column composite indices disagree on any
/// subsystem in `which`.
fn mask_offblocks(sigma: &mut CMatrix, dims: &SubsystemDims, which: &[usize]) {
    let n = sigma.nrows();
    let keys: Vec<u64> = (0..n)
        .map(|g| {
            let mut key = 0u64;
            for &k in which {
                key = key * dims.dims()[k] as u64 + dims.sub_index(g, k) as u64;
            }
            key
        })
        .collect();
    for g in 0..n {
        for h in 0..n {
            if keys[g] != keys[h] {
                sigma[(g, h)] = C64::new(0.0, 0.0);
            }
        }
    }
}

fn dephase_in_frame(
    rho: &DensityMatrix,
    frame: &CMatrix,
    index_dims: &SubsystemDims,
    which: &[usize],
) -> DensityMatrix {
    let mut sigma = frame.adjoint() * rho.matrix() * frame;
    mask_offblocks(&mut sigma, index_dims, which);
    let out = frame * sigma * frame.adjoint();
    DensityMatrix::trusted(rho.dims().clone(), out)
}

/// Unrevealed measurement of the observable: `Φ_A(ρ) = Σ_i (A_i⊗1) ρ (A_i⊗1)`.
/// Completely positive, trace-preserving, and idempotent.
pub fn dephase(rho: &DensityMatrix, basis: &ObservableBasis) -> Result<DensityMatrix> {
    let k = basis.subsystem();
    let d_k = rho.dims().dim_of(k)?;
    if d_k != basis.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis of dimension {} on subsystem {k} of dimension {d_k}",
            basis.dim()
        )));
    }
    let lifted = lift_to_full_space(rho.dims(), k, basis.matrix());
    Ok(dephase_in_frame(rho, &lifted, rho.dims(), &[k]))
}

/// Joint local dephasing `Φ_𝕆 = Φ_A Φ_B = Φ_B Φ_A`, applied one subsystem at
/// a time in subsystem order.
pub fn dephase_joint(rho: &DensityMatrix, set: &ObservableSet) -> Result<DensityMatrix> {
    set.check_state(rho)?;
    let mut out = rho.clone();
    for basis in set.bases() {
        out = dephase(&out, basis)?;
    }
    Ok(out)
}

/// Dephasing of a single-subsystem state in the given basis. The basis's
/// subsystem binding is ignored; only the dimension must match.
fn dephase_single(rho: &DensityMatrix, basis: &ObservableBasis) -> Result<DensityMatrix> {
    if rho.dims().count() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "expected a single-subsystem state, got {:?}",
            rho.dims().dims()
        )));
    }
    if rho.dims().total() != basis.dim() {
        return Err(Error::DimensionMismatch(format!(
            "basis of dimension {} on state of dimension {}",
            basis.dim(),
            rho.dims().total()
        )));
    }
    Ok(dephase_in_frame(rho, basis.matrix(), rho.dims(), &[0]))
}

// ---------------------------------------------------------------------------
// quantifiers
// ---------------------------------------------------------------------------

/// Information in nats: `I(ρ) = ln d − S(ρ)`, in `[0, ln d]`.
pub fn information(rho: &DensityMatrix) -> Result<f64> {
    let d = rho.dims().total() as f64;
    clamp_resource(d.ln() - rho.entropy()?)
}

/// Quantum coherence of a single-subsystem state in the given basis:
/// `C_A = S(Φ_A(ρ)) − S(ρ)`.
pub fn coherence(rho_sub: &DensityMatrix, basis: &ObservableBasis) -> Result<f64> {
    let dephased = dephase_single(rho_sub, basis)?;
    clamp_resource(dephased.entropy()? - rho_sub.entropy()?)
}

fn require_bipartite(rho: &DensityMatrix) -> Result<()> {
    if rho.dims().count() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "expected a bipartite state, got {:?}",
            rho.dims().dims()
        )));
    }
    Ok(())
}

/// Mutual information `I_{A:B}(ρ) = S(ρ_A) + S(ρ_B) − S(ρ)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    require_bipartite(rho)?;
    let s_a = rho.partial_trace(&[0])?.entropy()?;
    let s_b = rho.partial_trace(&[1])?.entropy()?;
    let mi = s_a + s_b - rho.entropy()?;
    if mi < -NEGATIVE_TOL {
        return Err(Error::NegativeQuantity(mi));
    }
    Ok(mi)
}

/// One-way quantum discord for an unrevealed local measurement:
/// `D_A(ρ) = I_{A:B}(ρ) − I_{A:B}(Φ_A(ρ))`.
pub fn discord_oneway(rho: &DensityMatrix, basis: &ObservableBasis) -> Result<f64> {
    require_bipartite(rho)?;
    let dephased = dephase(rho, basis)?;
    clamp_resource(mutual_information(rho)? - mutual_information(&dephased)?)
}

/// Symmetric quantum discord `D_AB(ρ) = I_{A:B}(ρ) − I_{A:B}(Φ_AB(ρ))`.
/// The chain rule `D_A(ρ) + D_B(Φ_A(ρ)) = D_AB(ρ)` is verified on the side.
pub fn discord_symmetric(rho: &DensityMatrix, set: &ObservableSet) -> Result<f64> {
    set.check_state(rho)?;
    require_bipartite(rho)?;
    let joint = dephase_joint(rho, set)?;
    let d_ab = mutual_information(rho)? - mutual_information(&joint)?;

    let phi_a = dephase(rho, set.basis(0)?)?;
    let d_a = mutual_information(rho)? - mutual_information(&phi_a)?;
    let d_b_after =
        mutual_information(&phi_a)? - mutual_information(&dephase(&phi_a, set.basis(1)?)?)?;
    check_identity("discord chain rule", d_a + d_b_after, d_ab)?;

    clamp_resource(d_ab)
}

/// Quantumness of the set: `𝔔_𝕆(ρ) = C_A(ρ_A) + C_B(ρ_B) + D_AB(ρ)`,
/// cross-checked against the information gap `I(ρ) − I(Φ_BA(ρ))`.
pub fn quantumness(rho: &DensityMatrix, set: &ObservableSet) -> Result<f64> {
    set.check_state(rho)?;
    require_bipartite(rho)?;
    let c_a = coherence(&rho.partial_trace(&[0])?, set.basis(0)?)?;
    let c_b = coherence(&rho.partial_trace(&[1])?, set.basis(1)?)?;
    let d_ab = discord_symmetric(rho, set)?;
    let summed = c_a + c_b + d_ab;

    let joint = dephase_joint(rho, set)?;
    let info_gap = joint.entropy()? - rho.entropy()?;
    check_identity("quantumness", summed, info_gap)?;

    clamp_resource(info_gap)
}

/// Single-system context incompatibility:
/// `ℐ = I(Φ_{A1}(ρ)) − I(Φ_{A2}Φ_{A1}(ρ))`. Vanishes when the bases share
/// their projector family or when the first dephasing is already uniform.
pub fn context_incompatibility_single(
    rho_sub: &DensityMatrix,
    basis1: &ObservableBasis,
    basis2: &ObservableBasis,
) -> Result<f64> {
    let first = dephase_single(rho_sub, basis1)?;
    let second = dephase_single(&first, basis2)?;
    clamp_resource(second.entropy()? - first.entropy()?)
}

/// Bipartite context incompatibility
/// `ℐ = I(Φ_{𝕆1}(ρ)) − I(Φ_{𝕆2}Φ_{𝕆1}(ρ))`.
pub fn context_incompatibility(ctx: &Context) -> Result<f64> {
    let first = dephase_joint(&ctx.state, &ctx.set1)?;
    let second = dephase_joint(&first, &ctx.set2)?;
    clamp_resource(second.entropy()? - first.entropy()?)
}

/// Incompatible quantumness `𝔔̄_𝕆(ρ) = 𝔔_𝕆̄(Φ_𝕆(ρ))`, with `𝕆̄` required to
/// be maximally unbiased to `𝕆`. Cross-checked against the context
/// incompatibility of `{ρ, 𝕆, 𝕆̄}`.
pub fn incompatible_quantumness(
    rho: &DensityMatrix,
    set: &ObservableSet,
    mu_set: &ObservableSet,
) -> Result<f64> {
    set.check_state(rho)?;
    set.require_unbiased_to(mu_set)?;
    let dephased = dephase_joint(rho, set)?;
    let as_quantumness = quantumness(&dephased, mu_set)?;
    let as_incompatibility =
        context_incompatibility(&Context::new(rho.clone(), set.clone(), mu_set.clone())?)?;
    check_identity(
        "incompatible quantumness",
        as_quantumness,
        as_incompatibility,
    )?;
    clamp_resource(as_incompatibility)
}

/// Irreality `𝕴_A(ρ) = S(Φ_A(ρ)) − S(ρ)`: the degree to which the observable
/// fails to be an element of reality for `ρ`. Zero exactly on dephased
/// (`A`-reality) states. For bipartite states it equals
/// `C_A(ρ_A) + D_A(ρ)`, which is verified on the side.
pub fn irreality(rho: &DensityMatrix, basis: &ObservableBasis) -> Result<f64> {
    let value = match rho.dims().count() {
        1 => {
            let dephased = dephase_single(rho, basis)?;
            let v = dephased.entropy()? - rho.entropy()?;
            check_identity("irreality (single system)", v, coherence(rho, basis)?)?;
            v
        }
        2 => {
            let dephased = dephase(rho, basis)?;
            let v = dephased.entropy()? - rho.entropy()?;
            let reduced = rho.partial_trace(&[basis.subsystem()])?;
            let c = coherence(&reduced, basis)?;
            let d = discord_oneway(rho, basis)?;
            check_identity("irreality = coherence + discord", v, c + d)?;
            v
        }
        _ => {
            return Err(Error::DimensionMismatch(
                "irreality expects a single-subsystem or bipartite state".into(),
            ))
        }
    };
    clamp_resource(value)
}

/// Full decomposition of the information of `ρ` with respect to `𝕆` and a
/// maximally unbiased partner `𝕆̄`. Every stepwise identity the decomposition
/// rests on is re-verified before the report is emitted.
pub fn decompose(
    rho: &DensityMatrix,
    set: &ObservableSet,
    mu_set: &ObservableSet,
) -> Result<ResourceReport> {
    set.check_state(rho)?;
    require_bipartite(rho)?;
    set.require_unbiased_to(mu_set)?;

    let d = rho.dims().total() as f64;
    let s_rho = rho.entropy()?;
    let info = d.ln() - s_rho;

    let rho_a = rho.partial_trace(&[0])?;
    let rho_b = rho.partial_trace(&[1])?;
    let c_a = coherence(&rho_a, set.basis(0)?)?;
    let c_b = coherence(&rho_b, set.basis(1)?)?;

    let phi_a = dephase(rho, set.basis(0)?)?;
    let phi_ba = dephase(&phi_a, set.basis(1)?)?;
    let s_phi_a = phi_a.entropy()?;
    let s_phi_ba = phi_ba.entropy()?;

    let mi = mutual_information(rho)?;
    let mi_after_a = mutual_information(&phi_a)?;
    let mi_after_ba = mutual_information(&phi_ba)?;
    let d_a = mi - mi_after_a;
    let d_b_after_a = mi_after_a - mi_after_ba;
    let d_sym = discord_symmetric(rho, set)?;
    check_identity("discord chain rule", d_a + d_b_after_a, d_sym)?;

    // stepwise erasure: each measurement removes exactly its coherence+discord
    let irr_a = s_phi_a - s_rho;
    let irr_b_after_a = s_phi_ba - s_phi_a;
    check_identity("first-step information drop", irr_a, c_a + d_a)?;
    check_identity(
        "second-step information drop",
        irr_b_after_a,
        c_b + d_b_after_a,
    )?;

    let q = quantumness(rho, set)?;
    check_identity(
        "quantumness as summed irrealities",
        q,
        irr_a + irr_b_after_a,
    )?;

    let qbar = incompatible_quantumness(rho, set, mu_set)?;
    check_identity("information decomposition", info, q + qbar)?;

    Ok(ResourceReport {
        info: clamp_resource(info)?,
        coherence_a: c_a,
        coherence_b: c_b,
        discord_a: clamp_resource(d_a)?,
        discord_b_after_a: clamp_resource(d_b_after_a)?,
        discord_sym: d_sym,
        quantumness: q,
        incompatible_quantumness: qbar,
        irreality_a: clamp_resource(irr_a)?,
        irreality_b_after_a: clamp_resource(irr_b_after_a)?,
    })
}

// ---------------------------------------------------------------------------
// frame-transformed (lifted) observable sets
// ---------------------------------------------------------------------------

/// An observable set represented by its joint eigenframe: a unitary whose
/// columns, indexed row-major by measurement outcome, are the joint
/// eigenvectors. Product sets lift to the Kronecker product of their basis
/// matrices; a passive frame change maps the columns through `T^†`, which in
/// general destroys the product structure while keeping the outcome layout.
#[derive(Debug, Clone)]
pub struct LiftedSet {
    index_dims: SubsystemDims,
    frame: CMatrix,
}

impl LiftedSet {
    pub fn lift(set: &ObservableSet) -> Self {
        let mut frame = CMatrix::identity(1, 1);
        for basis in set.bases() {
            frame = frame.kronecker(basis.matrix());
        }
        Self {
            index_dims: set.dims().clone(),
            frame,
        }
    }

    /// Passive-picture transform: every projector `P ↦ T^† P T`, i.e. every
    /// eigenvector column `|v⟩ ↦ T^†|v⟩`.
    pub fn passive_transform(&self, t: &UnitaryMatrix) -> Result<Self> {
        if t.dims_out().total() != self.frame.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "transform output dimension {} vs frame dimension {}",
                t.dims_out().total(),
                self.frame.nrows()
            )));
        }
        Ok(Self {
            index_dims: self.index_dims.clone(),
            frame: t.matrix().adjoint() * &self.frame,
        })
    }

    pub fn index_dims(&self) -> &SubsystemDims {
        &self.index_dims
    }

    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    fn check_state(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dims().total() != self.frame.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "state dimension {} vs frame dimension {}",
                rho.dims().total(),
                self.frame.nrows()
            )));
        }
        Ok(())
    }

    /// Dephasing in the eigenframe of one observable of the set.
    pub fn dephase_one(&self, rho: &DensityMatrix, subsystem: usize) -> Result<DensityMatrix> {
        self.check_state(rho)?;
        if subsystem >= self.index_dims.count() {
            return Err(Error::InvalidIndex(format!("observable slot {subsystem}")));
        }
        Ok(dephase_in_frame(
            rho,
            &self.frame,
            &self.index_dims,
            &[subsystem],
        ))
    }

    /// Joint dephasing over the whole set: projects onto the joint eigenbasis.
    pub fn dephase_joint(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_state(rho)?;
        let all: Vec<usize> = (0..self.index_dims.count()).collect();
        Ok(dephase_in_frame(rho, &self.frame, &self.index_dims, &all))
    }

    /// Outcome probabilities of one observable of the set on `ρ`.
    pub fn outcome_probabilities(&self, rho: &DensityMatrix, subsystem: usize) -> Result<Vec<f64>> {
        self.check_state(rho)?;
        let d_k = self.index_dims.dim_of(subsystem)?;
        let mut probs = vec![0.0; d_k];
        for col in 0..self.frame.ncols() {
            let v = self.frame.column(col);
            let p = (v.adjoint() * rho.matrix() * v)[(0, 0)].re;
            probs[self.index_dims.sub_index(col, subsystem)] += p;
        }
        Ok(probs)
    }

    /// Quantumness via the information gap `I(ρ) − I(Φ_𝕆(ρ))`.
    pub fn quantumness(&self, rho: &DensityMatrix) -> Result<f64> {
        let joint = self.dephase_joint(rho)?;
        clamp_resource(joint.entropy()? - rho.entropy()?)
    }

    /// Global maximal-unbiasedness deviation: `|⟨f_i|g_j⟩|²` against `1/d`.
    pub fn unbiased_deviation(&self, other: &Self) -> Result<f64> {
        if self.frame.nrows() != other.frame.nrows() {
            return Err(Error::DimensionMismatch(
                "lifted sets on different spaces".into(),
            ));
        }
        let d = self.frame.ncols() as f64;
        let overlaps = self.frame.adjoint() * &other.frame;
        Ok(overlaps
            .iter()
            .fold(0.0f64, |m, z| m.max((z.norm_sqr() - 1.0 / d).abs())))
    }
}

/// Incompatible quantumness for lifted sets:
/// `S(Φ_𝕆̄ Φ_𝕆(ρ)) − S(Φ_𝕆(ρ))` with the global unbiasedness check enforced.
pub fn incompatible_quantumness_lifted(
    rho: &DensityMatrix,
    set: &LiftedSet,
    mu_set: &LiftedSet,
) -> Result<f64> {
    let dev = set.unbiased_deviation(mu_set)?;
    if dev > UNBIASED_TOL {
        return Err(Error::NotUnbiased(dev));
    }
    let first = set.dephase_joint(rho)?;
    let second = mu_set.dephase_joint(&first)?;
    clamp_resource(second.entropy()? - first.entropy()?)
}

/// A set in either representation, as produced by picture changes.
#[derive(Debug, Clone)]
pub enum FrameSet {
    Product(ObservableSet),
    Lifted(LiftedSet),
}

impl FrameSet {
    pub fn quantumness(&self, rho: &DensityMatrix) -> Result<f64> {
        match self {
            FrameSet::Product(set) => quantumness(rho, set),
            FrameSet::Lifted(set) => set.quantumness(rho),
        }
    }

    pub fn incompatible_quantumness(&self, rho: &DensityMatrix, mu: &FrameSet) -> Result<f64> {
        match (self, mu) {
            (FrameSet::Product(set), FrameSet::Product(mu)) => {
                incompatible_quantumness(rho, set, mu)
            }
            _ => incompatible_quantumness_lifted(rho, &self.lifted(), &mu.lifted()),
        }
    }

    pub fn dephase_joint(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        match self {
            FrameSet::Product(set) => dephase_joint(rho, set),
            FrameSet::Lifted(set) => set.dephase_joint(rho),
        }
    }

    pub fn lifted(&self) -> LiftedSet {
        match self {
            FrameSet::Product(set) => LiftedSet::lift(set),
            FrameSet::Lifted(set) => set.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// covariance
// ---------------------------------------------------------------------------

/// Outcome of one covariance trial: the decomposition total on each side of
/// a frame change, the gap between them, and the individual terms (which are
/// free to move as long as the totals agree).
#[derive(Debug, Clone, Serialize)]
pub struct CovarianceCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub quantumness: f64,
    pub incompatible_quantumness: f64,
    pub quantumness_primed: f64,
    pub incompatible_quantumness_primed: f64,
}

/// Evaluates `𝔔_𝕆(ρ) + 𝔔̄_𝕆(ρ)` against `𝔔_𝕆′(TρT^†) + 𝔔̄_𝕆′(TρT^†)`.
///
/// The primed side is computed twice: actively (transform the state, keep the
/// primed product sets) and passively (keep the state, pull the primed sets
/// back through `T^†`). The two pictures must agree to `1e-9`; the active
/// value is reported.
pub fn covariance_check(
    rho: &DensityMatrix,
    set: &ObservableSet,
    mu_set: &ObservableSet,
    t: &UnitaryMatrix,
    set_primed: &ObservableSet,
    mu_set_primed: &ObservableSet,
) -> Result<CovarianceCheck> {
    let q = quantumness(rho, set)?;
    let qbar = incompatible_quantumness(rho, set, mu_set)?;
    let lhs = q + qbar;

    let rho_primed = t.apply_to(rho)?;
    let q_primed = quantumness(&rho_primed, set_primed)?;
    let qbar_primed = incompatible_quantumness(&rho_primed, set_primed, mu_set_primed)?;
    let rhs_active = q_primed + qbar_primed;

    let pulled = LiftedSet::lift(set_primed).passive_transform(t)?;
    let pulled_mu = LiftedSet::lift(mu_set_primed).passive_transform(t)?;
    let rhs_passive =
        pulled.quantumness(rho)? + incompatible_quantumness_lifted(rho, &pulled, &pulled_mu)?;
    check_identity("active vs passive picture", rhs_active, rhs_passive)?;

    Ok(CovarianceCheck {
        lhs,
        rhs: rhs_active,
        gap: (lhs - rhs_active).abs(),
        quantumness: q,
        incompatible_quantumness: qbar,
        quantumness_primed: q_primed,
        incompatible_quantumness_primed: qbar_primed,
    })
}
