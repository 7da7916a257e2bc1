//! Numerical thresholds used across the crate.
//!
//! Every tolerance that an algorithm branches on lives here, so the dead
//! bands between "zero" and "nonzero" stay consistent between the
//! eigensolver, the rank tests and the decomposition pipeline.

/// Maximum allowed deviation |A[i][j] - conj(A[j][i])| for Hermitian input.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Maximum allowed |trace - 1| for a density matrix before rejection.
pub const TRACE_TOL: f64 = 1e-10;

/// Eigenvalues no lower than -PSD_TOL count as nonnegative; lower values
/// reject the input.
pub const PSD_TOL: f64 = 1e-10;

/// Default relative eigenvalue threshold for numerical rank.
pub const RANK_TOL: f64 = 1e-9;

/// Jacobi sweep stop: off-diagonal Frobenius norm below this factor times
/// the Frobenius norm of the input.
pub const JACOBI_OFFDIAG_FACTOR: f64 = 1e-14;

/// Hard cap on Jacobi sweeps; exceeding it signals pathological input.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// A normalized four-amplitude vector is a product vector when the absolute
/// determinant of its 2x2 reshape (equivalently its smaller Schmidt
/// coefficient) is at most this.
pub const PRODUCT_VECTOR_TOL: f64 = 1e-10;

/// A density matrix is a product state when the Frobenius distance to the
/// tensor product of its reduced states is at most this.
pub const PRODUCT_STATE_TOL: f64 = 1e-9;

/// Maximum out-of-range component accepted before a subtraction weight is
/// considered undefined.
pub const RANGE_RESIDUAL_TOL: f64 = 1e-9;

/// Mixture weights must sum to one within this bound.
pub const WEIGHT_SUM_TOL: f64 = 1e-10;

/// All three quadratic coefficients below this means the plane consists of
/// product vectors only (inputs are normalized, so the scale is absolute).
pub const QUAD_ALL_ZERO_TOL: f64 = 1e-12;

/// Discriminant below this times max|coefficient|^2 counts as a double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-10;

/// Generator pairs with a Gram determinant below this do not span a plane.
pub const DEGENERATE_PLANE_TOL: f64 = 1e-12;

/// Chart parameterizations whose forced-component vector is shorter than
/// this (relative to the free component) are degenerate.
pub const EMPTY_CHART_TOL: f64 = 1e-14;

/// Target on |lambda_min| when bisecting the lift parameter q.
pub const LIFT_EIGENVALUE_TOL: f64 = 1e-12;

/// Lift parameters larger than 2^60 are treated as infeasible.
pub const LIFT_Q_CAP: f64 = (1u64 << 60) as f64;

/// Single-product lift candidates with a larger q than this are discarded
/// as numerically spurious (a sound candidate pool always contains far
/// smaller lifts).
pub const LIFT_Q_CANDIDATE_CAP: f64 = 1e6;

/// Relative agreement |s - s_twin| <= this * s accepts an equal-weight term.
pub const EQUAL_WEIGHT_REL_TOL: f64 = 1e-10;

/// Relative target for the equal-weight bisection refinement.
pub const EQUAL_WEIGHT_BISECT_REL: f64 = 1e-12;

/// Iteration cap for the equal-weight bisection.
pub const EQUAL_WEIGHT_MAX_ITERS: usize = 200;

/// Iteration cap for the lift-parameter bisection.
pub const LIFT_MAX_BISECTIONS: usize = 100;

/// User-adjustable tolerances threaded through the pipeline.
///
/// `rank` classifies eigenvalues as zero or nonzero, `psd` is the dead band
/// for positive semidefiniteness, `recon` bounds every reconstruction
/// residual a decomposition must satisfy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative eigenvalue threshold for numerical rank (default 1e-9).
    pub rank: f64,
    /// Eigenvalues above `-psd` count as nonnegative (default 1e-10).
    pub psd: f64,
    /// Frobenius bound on reconstruction residuals (default 1e-8).
    pub recon: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank: 1e-9, psd: 1e-10, recon: 1e-8 }
    }
}
