//! Error types for validation, eigensolving, geometry and the two
//! decomposition pipelines.

use thiserror::Error;

/// Rejection reasons for raw matrix input.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum ValidationError {
    /// Some entry is NaN or infinite.
    #[error("matrix has a non-finite entry")]
    NotFinite,
    /// Hermiticity violated beyond tolerance.
    #[error("matrix is not Hermitian: max |A[i][j] - conj(A[j][i])| = {deviation:.3e} exceeds {bound:.1e}")]
    NotHermitian { deviation: f64, bound: f64 },
    /// An eigenvalue lies below the negativity dead band.
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} is below -{bound:.1e}")]
    NotPositive { min_eigenvalue: f64, bound: f64 },
    /// Trace differs from one beyond tolerance.
    #[error("trace must be 1: |trace - 1| = {deviation:.3e} exceeds {bound:.1e}")]
    BadTrace { deviation: f64, bound: f64 },
}

/// Eigensolver failure.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum EigError {
    /// The cyclic Jacobi sweep cap was exhausted; only possible for
    /// pathological (non-finite) input, which construction normally rejects.
    #[error("Jacobi eigensolver did not converge within {max_sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { max_sweeps: usize, off_norm: f64 },
}

/// Failures of the product-vector geometry searches.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum GeometryError {
    /// The two generators do not span a plane.
    #[error("plane generators are linearly dependent (Gram determinant {gram:.3e})")]
    DegeneratePlane { gram: f64 },
    /// The requested chart point leaves the partner qubit unconstrained;
    /// the caller should switch charts.
    #[error("chart degenerates at the requested point")]
    EmptyChart,
    /// The chart/grid search budget was exhausted without a solution.
    #[error("no product vector found in both ranges within the search budget")]
    NotFound,
}

/// Failures of the separable decomposition pipeline.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum DecompError {
    /// The state has a negative partial transpose, so no separable
    /// decomposition exists.
    #[error("state is not separable: min partial-transpose eigenvalue {min_eigenvalue:.3e}")]
    NotSeparable { min_eigenvalue: f64 },
    /// The subtraction direction has a component outside the range of the
    /// state.
    #[error("vector lies outside the range of the state (residual {residual:.3e})")]
    NotInRange { residual: f64 },
    /// Subtracting the requested weight makes the remainder indefinite.
    #[error("subtraction breaks positivity (min eigenvalue {min_eigenvalue:.3e})")]
    BreaksPositivity { min_eigenvalue: f64 },
    /// No sign change of s - s_twin over the seed terms; signals a
    /// numerical fault upstream.
    #[error("no sign change of the weight gap over the seed decomposition")]
    NoSignChange,
    /// A rank-2 state whose range does not split into two product states.
    #[error("rank-2 split inconsistent: {0}")]
    InconsistentPlane(String),
    /// Rank did not decrease between subtraction stages.
    #[error("rank descent stalled")]
    Stalled,
    /// The assembled mixture does not reproduce the input.
    #[error("decomposition reconstruction residual {residual:.3e} exceeds tolerance")]
    ReconstructionFailed { residual: f64 },
    /// Input validation failed mid-pipeline.
    #[error(transparent)]
    Validation(#[from] ValidationError),
    /// Eigensolver failure mid-pipeline.
    #[error(transparent)]
    Eig(#[from] EigError),
    /// Geometry search failure mid-pipeline.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Failures of the pseudomixture pipeline.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum PseudoError {
    /// The state is PPT, hence separable; there is nothing to lift.
    #[error("state is separable; a pseudomixture applies only to entangled states")]
    NotEntangled,
    /// More than one negative partial-transpose eigenvalue; impossible for
    /// a valid two-qubit state and so a numerical fault.
    #[error("partial transpose has more than one negative eigenvalue (second smallest {second:.3e})")]
    MultipleNegative { second: f64 },
    /// Every candidate for the subtracted part was infeasible.
    #[error("no feasible negative part found within the search budget")]
    SearchExhausted,
    /// The assembled pseudomixture failed its own verification.
    #[error("pseudomixture assembly failed verification: {0}")]
    AssemblyFault(&'static str),
    /// Decomposition of the lifted separable state failed.
    #[error(transparent)]
    Decomp(#[from] DecompError),
    /// Eigensolver failure mid-pipeline.
    #[error(transparent)]
    Eig(#[from] EigError),
    /// Validation failure mid-pipeline.
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// Failures of the random-state generators.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum SampleError {
    /// Rejection sampling for an entangled state exhausted its draw budget.
    #[error("rejection sampling exhausted {budget} draws without an entangled state")]
    RejectionBudget { budget: usize },
}
