//! Separability analysis and local decompositions for two-qubit states.
//!
//! Every 4x4 density matrix is either separable (a mixture of pure product
//! states) or entangled, and positivity under partial transposition decides
//! which in this dimension. This crate goes beyond the yes/no test: it
//! produces explicit certificates either way.
//!
//! - A separable state is decomposed into at most four pure product terms
//!   with positive weights ([`decompose`]).
//! - An entangled state is written as `(1 + q) rho_plus - q rho_minus` with
//!   both parts separable and `q > 0` minimal for the chosen subtracted part
//!   ([`pseudomix`]); the two sides together never use more than five terms.
//!
//! Both forms are re-checkable from their parts alone ([`verify_local_mixture`],
//! [`verify_pseudomixture`]). Batch drivers run over state collections in
//! parallel by default (`parallel` feature); disabling the feature yields
//! bit-identical sequential results.
//!
//! ```
//! use sepmix_core::{bell_phi_plus, pseudomix, DensityMatrix, Tolerances};
//!
//! let rho = DensityMatrix::pure(&bell_phi_plus());
//! let pm = pseudomix(&rho, &Tolerances::default()).unwrap();
//! assert!((pm.q - 1.0).abs() < 1e-9);
//! assert_eq!(pm.cardinality(), 5);
//! ```

// Indexed loops over fixed 4x4 operators read better than iterator chains
// and are the dominant idiom here.
#![allow(clippy::needless_range_loop)]

pub mod batch;
pub mod bloch;
pub mod decompose;
pub mod error;
pub mod geometry;
pub mod pseudomix;
pub mod qlinalg;
pub mod sample;
pub mod states;
pub mod tol;

pub use batch::{
    classify_batch, decompose_batch, decompose_batch_seq, pseudomix_batch, pseudomix_batch_seq,
    werner_scan, WernerPoint,
};
pub use decompose::{
    classify, decompose, five_term_decomposition, is_ppt, LocalMixture, MixtureTerm, PptReport,
    Verdict,
};
pub use error::{
    DecompError, EigError, GeometryError, PseudoError, SampleError, ValidationError,
};
pub use geometry::{
    plane_product_vectors, product_in_both_ranges, PlaneProductResult, ProductState,
    ThreeSpaceFamily,
};
pub use pseudomix::{
    find_negative_part, minimal_lift, negative_eigenpair, pseudomix, verify_local_mixture,
    verify_pseudomixture, CheckItem, NegativeEigenpair, Pseudomixture, VerificationReport,
};
pub use qlinalg::{
    eigh, index_of_correlation, is_product_state, is_product_vector, partial_trace,
    partial_transpose, schmidt_decompose, C64, DensityMatrix, HermOp2, HermOp4, Ket2, Ket4,
    SchmidtForm, Side,
};
pub use sample::{
    random_entangled, random_entangled_pure, random_mixed, random_product, random_pure,
    random_separable, PortableRng,
};
pub use states::{
    bell_phi_minus, bell_phi_plus, bell_psi_minus, bell_psi_plus, canonical_pure, werner,
    werner_pt_min_eigenvalue,
};
pub use tol::Tolerances;
