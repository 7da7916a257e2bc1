//! Density-matrix validation, partial transpose/trace, product-state test,
//! and the correlation index.

use super::eig::{eigh, Eig4};
use super::types::{c, C64, DensityMatrix, HermOp2, HermOp4};
use crate::error::ValidationError;
use crate::tol;

impl DensityMatrix {
    /// Validates a candidate density matrix.
    ///
    /// Requires Hermiticity within 1e-12, smallest eigenvalue >= -1e-10, and
    /// trace within 1e-10 of 1. Accepted input is repaired to an exact state:
    /// eigenvalues in the dead band [-1e-10, 0) are clipped to zero, the
    /// operator is rebuilt from the clipped spectrum, and the trace is
    /// renormalized to exactly 1.
    pub fn new(entries: [[C64; 4]; 4]) -> Result<Self, ValidationError> {
        let op = HermOp4::new(entries)?;
        let eig = eigh(&op).map_err(|_| ValidationError::NotFinite)?;

        let min = eig.values[0];
        if min < -tol::PSD_TOL {
            return Err(ValidationError::NotPositive {
                min_eigenvalue: min,
                bound: tol::PSD_TOL,
            });
        }
        let trace = op.trace();
        if (trace - 1.0).abs() > tol::TRACE_TOL {
            return Err(ValidationError::BadTrace {
                deviation: (trace - 1.0).abs(),
                bound: tol::TRACE_TOL,
            });
        }

        let clipped: [f64; 4] = std::array::from_fn(|k| eig.values[k].max(0.0));
        let sum: f64 = clipped.iter().sum();
        let mut rebuilt = HermOp4::zero();
        for k in 0..4 {
            if clipped[k] > 0.0 {
                rebuilt = rebuilt + eig.vectors[k].outer() * (clipped[k] / sum);
            }
        }
        Ok(DensityMatrix::from_validated(rebuilt))
    }

    /// Rank-one state |psi><psi| from a normalized vector.
    pub fn pure(psi: &super::types::Ket4) -> Self {
        DensityMatrix::from_validated(psi.normalized().outer())
    }

    /// The maximally mixed state I/4.
    pub fn maximally_mixed() -> Self {
        DensityMatrix::from_validated(HermOp4::identity() * 0.25)
    }

    /// Eigensystem of the state (always converges for valid input).
    pub fn eig(&self) -> Eig4 {
        eigh(self.op()).expect("validated density matrices are well conditioned")
    }
}

/// Transposes the second-qubit indices: out[(i,a),(j,b)] = in[(i,b),(j,a)]
/// with composite index 2i+a. Involutive and trace-preserving; Hermiticity
/// is preserved because the operation swaps conjugate pairs.
pub fn partial_transpose(h: &HermOp4) -> HermOp4 {
    let e = h.entries();
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for a in 0..2 {
            for j in 0..2 {
                for b in 0..2 {
                    out[2 * i + a][2 * j + b] = e[2 * i + b][2 * j + a];
                }
            }
        }
    }
    HermOp4::from_raw(out)
}

/// Which subsystem a reduced state keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Reduced state of one qubit: side A keeps the first factor (traces out b),
/// side B keeps the second.
pub fn partial_trace(rho: &DensityMatrix, side: Side) -> HermOp2 {
    let e = rho.op().entries();
    let mut out = [[c(0.0, 0.0); 2]; 2];
    match side {
        Side::A => {
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = e[2 * i][2 * j] + e[2 * i + 1][2 * j + 1];
                }
            }
        }
        Side::B => {
            for a in 0..2 {
                for b in 0..2 {
                    out[a][b] = e[a][b] + e[2 + a][2 + b];
                }
            }
        }
    }
    HermOp2::from_entries(out)
}

/// True iff rho equals the tensor product of its reduced states within
/// Frobenius distance 1e-9 (the defining property of a factorizable state).
pub fn is_product_state(rho: &DensityMatrix) -> bool {
    let ra = partial_trace(rho, Side::A);
    let rb = partial_trace(rho, Side::B);
    let product = ra.kron(&rb);
    (*rho.op() - product).frobenius() <= tol::PRODUCT_STATE_TOL
}

fn entropy_term(l: f64) -> f64 {
    if l <= 0.0 {
        0.0
    } else {
        -l * l.ln()
    }
}

/// Von Neumann entropy in nats of a 4x4 state (eigenvalues clipped at 0).
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eig().values.iter().copied().map(entropy_term).sum()
}

/// Von Neumann entropy in nats of a single-qubit state.
pub fn von_neumann_entropy2(r: &HermOp2) -> f64 {
    r.eigenvalues().iter().copied().map(entropy_term).sum()
}

/// Index of correlation (quantum mutual information, natural log):
/// I_c = S(rho_a) + S(rho_b) - S(rho). Zero exactly for product states.
pub fn index_of_correlation(rho: &DensityMatrix) -> f64 {
    let sa = von_neumann_entropy2(&partial_trace(rho, Side::A));
    let sb = von_neumann_entropy2(&partial_trace(rho, Side::B));
    sa + sb - von_neumann_entropy(rho)
}
