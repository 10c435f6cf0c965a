//! Dense complex linear algebra on tensor-product state spaces.
//!
//! Everything downstream (dephasing maps, resource quantifiers, frame
//! transforms) is built on the handful of primitives in this module:
//! subsystem bookkeeping, density matrices, Kronecker products, the partial
//! trace, Hermitian eigendecomposition, and the two entropies.
//!
//! Conventions, fixed once and used everywhere:
//! - subsystem ordering is set at construction and never reordered; all
//!   bipartite operations address subsystems by index,
//! - composite indices are row-major (first subsystem most significant),
//!   matching the Kronecker product `A ⊗ B`,
//! - logarithms are natural; entropies are in nats,
//! - eigenvalues in `[-1e-10, 0)` are float noise and clamp to zero;
//!   anything below `-1e-10` is an invalid state and a hard error.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Max allowed `|ρ - ρ^†|` entry for a density matrix.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Max allowed `|Tr ρ - 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[EIGENVALUE_FLOOR, 0)` clamp to zero; below is an error.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Hermiticity tolerance accepted by the eigensolver entry point.
pub const EIG_HERMITICITY_TOL: f64 = 1e-8;
/// Max allowed `|U^†U - 1|` entry for a unitary.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Max allowed `|‖ψ‖² - 1|` for a pure state.
pub const NORM_TOL: f64 = 1e-10;

/// Ordered list of subsystem dimensions `(d_A, d_B, …)` with their product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemDims {
    dims: Vec<usize>,
    total: usize,
}

impl SubsystemDims {
    /// Each entry must be at least 2.
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDims("no subsystems given".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!("subsystem dimension {d} < 2")));
        }
        let total = dims.iter().product();
        Ok(Self {
            dims: dims.to_vec(),
            total,
        })
    }

    pub fn single(d: usize) -> Result<Self> {
        Self::new(&[d])
    }

    pub fn bipartite(d_a: usize, d_b: usize) -> Result<Self> {
        Self::new(&[d_a, d_b])
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of subsystems.
    pub fn count(&self) -> usize {
        self.dims.len()
    }

    pub fn dim_of(&self, subsystem: usize) -> Result<usize> {
        self.dims.get(subsystem).copied().ok_or_else(|| {
            Error::InvalidIndex(format!("subsystem {subsystem} of {}", self.count()))
        })
    }

    /// Dims of `self` followed by dims of `other`, as produced by `tensor`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let total = self.total * other.total;
        Self { dims, total }
    }

    /// Row-major stride of a subsystem: the composite index is
    /// `Σ_k i_k · stride(k)`.
    pub fn stride(&self, subsystem: usize) -> usize {
        self.dims[subsystem + 1..].iter().product()
    }

    /// Extracts subsystem `k`'s index from a composite index.
    pub fn sub_index(&self, composite: usize, subsystem: usize) -> usize {
        (composite / self.stride(subsystem)) % self.dims[subsystem]
    }

    /// Composite index from per-subsystem indices.
    pub fn compose(&self, indices: &[usize]) -> Result<usize> {
        if indices.len() != self.count() {
            return Err(Error::InvalidIndex(format!(
                "{} indices for {} subsystems",
                indices.len(),
                self.count()
            )));
        }
        let mut acc = 0;
        for (k, &i) in indices.iter().enumerate() {
            if i >= self.dims[k] {
                return Err(Error::InvalidIndex(format!(
                    "index {i} out of range for subsystem {k} (dim {})",
                    self.dims[k]
                )));
            }
            acc += i * self.stride(k);
        }
        Ok(acc)
    }
}

fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let mut dev = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Normalized state vector over a tensor-product space.
#[derive(Debug, Clone)]
pub struct PureState {
    dims: SubsystemDims,
    amplitudes: CVector,
}

impl PureState {
    pub fn new(dims: SubsystemDims, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "amplitude vector of length {} for total dimension {}",
                amplitudes.len(),
                dims.total()
            )));
        }
        let norm2: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized((norm2 - 1.0).abs()));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Computational basis state `|i_0 i_1 …⟩`.
    pub fn basis_state(dims: SubsystemDims, indices: &[usize]) -> Result<Self> {
        let pos = dims.compose(indices)?;
        let mut amplitudes = CVector::zeros(dims.total());
        amplitudes[pos] = C64::new(1.0, 0.0);
        Ok(Self { dims, amplitudes })
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// Kronecker product; dims are concatenated.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            dims: self.dims.concat(&other.dims),
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    /// Outer product `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> DensityMatrix {
        let mat = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::trusted(self.dims.clone(), mat)
    }
}

/// Trace-one positive-semidefinite Hermitian operator: the universal state
/// carrier of the crate.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    dims: SubsystemDims,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Full validation: Hermiticity, unit trace, and positive semidefiniteness
    /// (the last one costs an eigendecomposition).
    pub fn new(dims: SubsystemDims, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != dims.total() || matrix.ncols() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for total dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                dims.total()
            )));
        }
        let dev = hermiticity_deviation(&matrix);
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: HERMITICITY_TOL,
            });
        }
        let trace_dev = (matrix.trace() - C64::new(1.0, 0.0)).norm();
        if trace_dev > TRACE_TOL {
            return Err(Error::NotUnitTrace(trace_dev));
        }
        let state = Self::trusted(dims, matrix);
        let lambdas = hermitian_eigenvalues(state.matrix());
        if let Some(&min) = lambdas.first() {
            if min < EIGENVALUE_FLOOR {
                return Err(Error::NotPositiveSemidefinite(min));
            }
        }
        Ok(state)
    }

    /// Construction path for operator outputs that preserve state validity by
    /// construction (dephasings, unitary conjugation, partial trace). The
    /// matrix is re-Hermitized to absorb float drift; no eigensolve runs.
    pub(crate) fn trusted(dims: SubsystemDims, matrix: CMatrix) -> Self {
        let matrix = (&matrix + matrix.adjoint()).scale(0.5);
        Self { dims, matrix }
    }

    pub fn maximally_mixed(dims: SubsystemDims) -> Self {
        let d = dims.total();
        let matrix = CMatrix::identity(d, d).scale(1.0 / d as f64);
        Self { dims, matrix }
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Kronecker product; dims are concatenated.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            dims: self.dims.concat(&other.dims),
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// Reduced state on the given subsystems (kept in their original order).
    /// Trace-preserving and positivity-preserving.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidIndex(
                "empty keep set in partial trace".into(),
            ));
        }
        let n = self.dims.count();
        let mut seen = vec![false; n];
        for &k in keep {
            if k >= n {
                return Err(Error::InvalidIndex(format!("subsystem {k} of {n}")));
            }
            if seen[k] {
                return Err(Error::InvalidIndex(format!("subsystem {k} listed twice")));
            }
            seen[k] = true;
        }
        let mut keep_sorted = keep.to_vec();
        keep_sorted.sort_unstable();
        let traced: Vec<usize> = (0..n).filter(|k| !seen[*k]).collect();

        let keep_dims: Vec<usize> = keep_sorted.iter().map(|&k| self.dims.dims()[k]).collect();
        let out_dims = SubsystemDims::new(&keep_dims)?;
        if traced.is_empty() {
            return Ok(Self::trusted(out_dims, self.matrix.clone()));
        }

        // Composite-index offsets contributed by the kept and traced parts.
        let offsets = |subs: &[usize]| -> Vec<usize> {
            let mut table = vec![0usize];
            for &k in subs.iter().rev() {
                let d = self.dims.dims()[k];
                let stride = self.dims.stride(k);
                let mut next = Vec::with_capacity(table.len() * d);
                for i in 0..d {
                    for &base in &table {
                        next.push(base + i * stride);
                    }
                }
                table = next;
            }
            table
        };
        // `offsets` enumerates low-index subsystems fastest; reverse iteration
        // above makes position 0 of `subs` most significant, matching the
        // row-major layout of `out_dims`.
        let keep_offsets = offsets(&keep_sorted);
        let trace_offsets = offsets(&traced);

        let m = out_dims.total();
        let mut out = CMatrix::zeros(m, m);
        for (a, &ka) in keep_offsets.iter().enumerate() {
            for (b, &kb) in keep_offsets.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for &t in &trace_offsets {
                    acc += self.matrix[(ka + t, kb + t)];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(Self::trusted(out_dims, out))
    }

    /// Von Neumann entropy in nats, with the `0·ln 0 = 0` convention.
    pub fn entropy(&self) -> Result<f64> {
        let lambdas = hermitian_eigenvalues(&self.matrix);
        entropy_from_eigenvalues(&lambdas)
    }
}

/// Unitary map between spaces of equal total dimension.
#[derive(Debug, Clone)]
pub struct UnitaryMatrix {
    dims_in: SubsystemDims,
    dims_out: SubsystemDims,
    matrix: CMatrix,
}

impl UnitaryMatrix {
    pub fn new(dims_in: SubsystemDims, dims_out: SubsystemDims, matrix: CMatrix) -> Result<Self> {
        if dims_in.total() != dims_out.total() {
            return Err(Error::DimensionMismatch(format!(
                "total dimensions {} and {} differ",
                dims_in.total(),
                dims_out.total()
            )));
        }
        if matrix.nrows() != dims_in.total() || matrix.ncols() != dims_in.total() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for total dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                dims_in.total()
            )));
        }
        let d = matrix.ncols();
        let gram = matrix.adjoint() * &matrix;
        let dev = max_abs_entry(&(gram - CMatrix::identity(d, d)));
        if dev > UNITARITY_TOL {
            return Err(Error::NotUnitary(dev));
        }
        Ok(Self {
            dims_in,
            dims_out,
            matrix,
        })
    }

    /// Square unitary acting on a single space.
    pub fn endomorphism(dims: SubsystemDims, matrix: CMatrix) -> Result<Self> {
        Self::new(dims.clone(), dims, matrix)
    }

    pub fn identity(dims: SubsystemDims) -> Self {
        let d = dims.total();
        Self {
            dims_in: dims.clone(),
            dims_out: dims,
            matrix: CMatrix::identity(d, d),
        }
    }

    pub fn dims_in(&self) -> &SubsystemDims {
        &self.dims_in
    }

    pub fn dims_out(&self) -> &SubsystemDims {
        &self.dims_out
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            dims_in: self.dims_out.clone(),
            dims_out: self.dims_in.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// `ρ ↦ UρU^†`. Trace and spectrum are preserved.
    pub fn apply_to(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dims() != &self.dims_in {
            return Err(Error::DimensionMismatch(format!(
                "state dims {:?} vs transform input dims {:?}",
                rho.dims().dims(),
                self.dims_in.dims()
            )));
        }
        let mat = &self.matrix * rho.matrix() * self.matrix.adjoint();
        Ok(DensityMatrix::trusted(self.dims_out.clone(), mat))
    }

    pub fn apply_to_pure(&self, psi: &PureState) -> Result<PureState> {
        if psi.dims() != &self.dims_in {
            return Err(Error::DimensionMismatch(format!(
                "state dims {:?} vs transform input dims {:?}",
                psi.dims().dims(),
                self.dims_in.dims()
            )));
        }
        PureState::new(self.dims_out.clone(), &self.matrix * psi.amplitudes())
    }
}

/// `ρ ↦ UρU^†` as a free function, for call sites that read better this way.
pub fn apply_unitary(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<DensityMatrix> {
    u.apply_to(rho)
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// the matching unitary of column eigenvectors, so that `m = V diag(λ) V^†`.
pub fn eig_hermitian(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    let dev = hermiticity_deviation(m);
    if dev > EIG_HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            deviation: dev,
            tolerance: EIG_HERMITICITY_TOL,
        });
    }
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(herm);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok((values, vectors))
}

/// Ascending eigenvalues of a Hermitian matrix (no eigenvectors).
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let herm = (m + m.adjoint()).scale(0.5);
    let mut vals: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    vals
}

fn entropy_from_eigenvalues(lambdas: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in lambdas {
        if l < EIGENVALUE_FLOOR {
            return Err(Error::NotPositiveSemidefinite(l));
        }
        if l > 0.0 {
            s -= l * l.ln();
        }
    }
    Ok(s)
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    rho.entropy()
}

/// Shannon entropy of a probability list, in nats. Entries in `[-1e-12, 0)`
/// clamp to zero and the list is renormalized; a sum off from 1 by more than
/// `1e-8` is an error.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    const ENTRY_FLOOR: f64 = -1e-12;
    const SUM_TOL: f64 = 1e-8;
    let mut sum = 0.0;
    for &x in p {
        if x < ENTRY_FLOOR {
            return Err(Error::InvalidDistribution(format!(
                "negative entry {x:.3e}"
            )));
        }
        sum += x.max(0.0);
    }
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidDistribution(format!(
            "sum deviates from 1 by {:.3e}",
            (sum - 1.0).abs()
        )));
    }
    let mut s = 0.0;
    for &x in p {
        let x = x.max(0.0) / sum;
        if x > 0.0 {
            s -= x * x.ln();
        }
    }
    Ok(s)
}
