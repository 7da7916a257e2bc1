//! Dense complex linear algebra sized for two-qubit problems: state and
//! operator types, a Jacobi eigensolver, partial transposition and traces,
//! and the Schmidt decomposition. Everything is closed-form or fixed-size;
//! there are no allocations on the hot paths.

mod eig;
mod ops;
mod schmidt;
mod types;

pub use eig::{
    eigh, herm2_eig, kernel_basis, min_eigenvalue, numerical_rank, pinv_bilinear,
    pinv_quadratic, range_projector, range_residual, rank_threshold, Eig4,
};
pub use ops::{
    index_of_correlation, is_product_state, partial_trace, partial_transpose, Side,
    von_neumann_entropy, von_neumann_entropy2,
};
pub use schmidt::{is_product_vector, reshape_det, schmidt_decompose, SchmidtForm};
pub use types::{C64, DensityMatrix, HermOp2, HermOp4, Ket2, Ket4};

pub(crate) use types::c;
