//! Named reference states used across tests, benchmarks and the scan
//! command.

use crate::qlinalg::{c, DensityMatrix, HermOp4, Ket4};

/// (|00> + |11>) / sqrt(2).
pub fn bell_phi_plus() -> Ket4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ket4([c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)])
}

/// (|00> - |11>) / sqrt(2).
pub fn bell_phi_minus() -> Ket4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ket4([c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-s, 0.0)])
}

/// (|01> + |10>) / sqrt(2).
pub fn bell_psi_plus() -> Ket4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ket4([c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)])
}

/// (|01> - |10>) / sqrt(2), the singlet.
pub fn bell_psi_minus() -> Ket4 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ket4([c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)])
}

/// cos(a)|00> + sin(a)|11>: every pure two-qubit state is locally
/// equivalent to one of these.
pub fn canonical_pure(a: f64) -> Ket4 {
    Ket4([c(a.cos(), 0.0), c(0.0, 0.0), c(0.0, 0.0), c(a.sin(), 0.0)])
}

/// Werner state p |psi-><psi-| + (1 - p) I/4 for p in [0, 1].
///
/// Its partial transpose has smallest eigenvalue (1 - 3p)/4, so the state
/// is separable exactly up to p = 1/3.
pub fn werner(p: f64) -> DensityMatrix {
    let singlet = bell_psi_minus().outer() * p;
    let mixed = HermOp4::identity() * ((1.0 - p) * 0.25);
    DensityMatrix::new((singlet + mixed).entries())
        .expect("Werner states are valid for p in [0, 1]")
}

/// Closed-form smallest eigenvalue of the Werner partial transpose.
pub fn werner_pt_min_eigenvalue(p: f64) -> f64 {
    (1.0 - 3.0 * p) / 4.0
}
