//! Value types for two-qubit linear algebra.
//!
//! Basis order is |00>, |01>, |10>, |11>; index 2a+b addresses qubit-a
//! component a and qubit-b component b. `HermOp4` stores an exactly
//! Hermitian matrix (construction symmetrizes), `DensityMatrix` adds the
//! positive-semidefinite unit-trace guarantee.

use num_complex::Complex64;

use crate::error::ValidationError;
use crate::tol;

/// Complex amplitude used throughout.
pub type C64 = Complex64;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

const C_ZERO: C64 = Complex64::new(0.0, 0.0);
const C_ONE: C64 = Complex64::new(1.0, 0.0);

/// Single-qubit state vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ket2(pub [C64; 2]);

impl Ket2 {
    /// Basis state |i> for i in {0, 1}.
    pub fn basis(i: usize) -> Self {
        let mut a = [C_ZERO; 2];
        a[i] = C_ONE;
        Ket2(a)
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        (self.0[0].norm_sqr() + self.0[1].norm_sqr()).sqrt()
    }

    /// Unit-norm copy. Panics on the zero vector.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        Ket2([self.0[0] / n, self.0[1] / n])
    }

    /// Hermitian inner product <self|other>.
    pub fn inner(&self, other: &Ket2) -> C64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Ket2([self.0[0].conj(), self.0[1].conj()])
    }

    /// A unit vector orthogonal to `self` (for normalized input).
    pub fn orthogonal(&self) -> Self {
        Ket2([-self.0[1].conj(), self.0[0].conj()]).normalized()
    }

    /// Tensor product |self> (x) |other>.
    pub fn kron(&self, other: &Ket2) -> Ket4 {
        let mut out = [C_ZERO; 4];
        for a in 0..2 {
            for b in 0..2 {
                out[2 * a + b] = self.0[a] * other.0[b];
            }
        }
        Ket4(out)
    }
}

/// Two-qubit state vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ket4(pub [C64; 4]);

impl Ket4 {
    /// Basis state with index 2a+b.
    pub fn basis(i: usize) -> Self {
        let mut a = [C_ZERO; 4];
        a[i] = C_ONE;
        Ket4(a)
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Unit-norm copy. Panics on the zero vector.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        assert!(n > 0.0, "cannot normalize the zero vector");
        let mut out = self.0;
        for z in &mut out {
            *z /= n;
        }
        Ket4(out)
    }

    /// Hermitian inner product <self|other>.
    pub fn inner(&self, other: &Ket4) -> C64 {
        (0..4).map(|i| self.0[i].conj() * other.0[i]).sum()
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Ket4([self.0[0].conj(), self.0[1].conj(), self.0[2].conj(), self.0[3].conj()])
    }

    /// self + t * other.
    pub fn add_scaled(&self, other: &Ket4, t: C64) -> Self {
        let mut out = self.0;
        for i in 0..4 {
            out[i] += t * other.0[i];
        }
        Ket4(out)
    }

    /// 2x2 reshape M with M[a][b] = amplitude of |a>|b>.
    pub fn reshape(&self) -> [[C64; 2]; 2] {
        [[self.0[0], self.0[1]], [self.0[2], self.0[3]]]
    }

    /// Rank-one projector |self><self| (expects unit norm).
    pub fn outer(&self) -> HermOp4 {
        let mut e = [[C_ZERO; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                e[i][j] = self.0[i] * self.0[j].conj();
            }
        }
        HermOp4 { entries: e }
    }

    /// Multiply by a global phase so the first component with modulus above
    /// `1e-10` becomes real positive.
    pub fn phase_normalized(&self) -> Self {
        let mut out = *self;
        for i in 0..4 {
            let m = out.0[i].norm();
            if m > 1e-10 {
                let u = out.0[i].conj() / m;
                for z in &mut out.0 {
                    *z *= u;
                }
                break;
            }
        }
        out
    }
}

/// 2x2 Hermitian operator (reduced single-qubit states).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermOp2 {
    entries: [[C64; 2]; 2],
}

impl HermOp2 {
    /// Builds from raw entries, symmetrizing exactly.
    pub fn from_entries(e: [[C64; 2]; 2]) -> Self {
        let mut out = [[C_ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (e[i][j] + e[j][i].conj()) * 0.5;
            }
        }
        out[0][0] = c(out[0][0].re, 0.0);
        out[1][1] = c(out[1][1].re, 0.0);
        HermOp2 { entries: out }
    }

    /// Entry accessor.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.entries[i][j]
    }

    /// Trace (real for Hermitian storage).
    pub fn trace(&self) -> f64 {
        self.entries[0][0].re + self.entries[1][1].re
    }

    /// Eigenvalues in ascending order (closed form).
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let w = self.entries[0][1];
        let m = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + w.norm_sqr()).sqrt();
        [m - r, m + r]
    }

    /// Tensor product self (x) other as a 4x4 operator.
    pub fn kron(&self, other: &HermOp2) -> HermOp4 {
        let mut e = [[C_ZERO; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                for a in 0..2 {
                    for b in 0..2 {
                        e[2 * i + a][2 * j + b] = self.entries[i][j] * other.entries[a][b];
                    }
                }
            }
        }
        HermOp4 { entries: e }
    }
}

/// 4x4 Hermitian operator with exactly Hermitian storage.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HermOp4 {
    entries: [[C64; 4]; 4],
}

impl HermOp4 {
    /// Validates finiteness and Hermiticity, then stores the symmetrized
    /// matrix (A + A^dagger)/2 so later arithmetic sees an exact invariant.
    pub fn new(e: [[C64; 4]; 4]) -> Result<Self, ValidationError> {
        let mut dev: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                if !e[i][j].re.is_finite() || !e[i][j].im.is_finite() {
                    return Err(ValidationError::NotFinite);
                }
                dev = dev.max((e[i][j] - e[j][i].conj()).norm());
            }
        }
        if dev > tol::HERMITICITY_TOL {
            return Err(ValidationError::NotHermitian { deviation: dev, bound: tol::HERMITICITY_TOL });
        }
        Ok(Self::hermitized(e))
    }

    /// Symmetrizes raw entries without tolerance checks.
    pub(crate) fn hermitized(e: [[C64; 4]; 4]) -> Self {
        let mut out = [[C_ZERO; 4]; 4];
        for i in 0..4 {
            out[i][i] = c(e[i][i].re, 0.0);
            for j in (i + 1)..4 {
                let v = (e[i][j] + e[j][i].conj()) * 0.5;
                out[i][j] = v;
                out[j][i] = v.conj();
            }
        }
        HermOp4 { entries: out }
    }

    /// Wraps entries that are Hermitian by construction.
    pub(crate) fn from_raw(e: [[C64; 4]; 4]) -> Self {
        debug_assert!(
            (0..4).all(|i| (0..4).all(|j| (e[i][j] - e[j][i].conj()).norm() < 1e-12)),
            "raw constructor requires Hermitian entries"
        );
        HermOp4 { entries: e }
    }

    /// The zero operator.
    pub fn zero() -> Self {
        HermOp4 { entries: [[C_ZERO; 4]; 4] }
    }

    /// The identity operator.
    pub fn identity() -> Self {
        let mut e = [[C_ZERO; 4]; 4];
        for i in 0..4 {
            e[i][i] = C_ONE;
        }
        HermOp4 { entries: e }
    }

    /// Diagonal operator from real entries.
    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut e = [[C_ZERO; 4]; 4];
        for i in 0..4 {
            e[i][i] = c(d[i], 0.0);
        }
        HermOp4 { entries: e }
    }

    /// Entry accessor.
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.entries[i][j]
    }

    /// Raw entries copy.
    pub fn entries(&self) -> [[C64; 4]; 4] {
        self.entries
    }

    /// Trace (real for Hermitian storage).
    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i].re).sum()
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Real Frobenius inner product Re tr(A^dagger B); real-valued and
    /// symmetric for Hermitian operands.
    pub fn frobenius_inner(&self, other: &HermOp4) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += (self.entries[i][j].conj() * other.entries[i][j]).re;
            }
        }
        s
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &Ket4) -> Ket4 {
        let mut out = [C_ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.entries[i][j] * v.0[j];
            }
        }
        Ket4(out)
    }

    /// Quadratic form <v|A|v> (real for Hermitian A).
    pub fn expectation(&self, v: &Ket4) -> f64 {
        v.inner(&self.matvec(v)).re
    }
}

impl std::ops::Add for HermOp4 {
    type Output = HermOp4;
    fn add(self, rhs: HermOp4) -> HermOp4 {
        let mut e = self.entries;
        for i in 0..4 {
            for j in 0..4 {
                e[i][j] += rhs.entries[i][j];
            }
        }
        HermOp4 { entries: e }
    }
}

impl std::ops::Sub for HermOp4 {
    type Output = HermOp4;
    fn sub(self, rhs: HermOp4) -> HermOp4 {
        let mut e = self.entries;
        for i in 0..4 {
            for j in 0..4 {
                e[i][j] -= rhs.entries[i][j];
            }
        }
        HermOp4 { entries: e }
    }
}

impl std::ops::Mul<f64> for HermOp4 {
    type Output = HermOp4;
    fn mul(self, rhs: f64) -> HermOp4 {
        let mut e = self.entries;
        for row in &mut e {
            for z in row.iter_mut() {
                *z *= rhs;
            }
        }
        HermOp4 { entries: e }
    }
}

/// Validated two-qubit density matrix: Hermitian, positive semidefinite
/// within the dead band, unit trace after renormalization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    op: HermOp4,
}

impl DensityMatrix {
    /// The underlying operator.
    pub fn op(&self) -> &HermOp4 {
        &self.op
    }

    pub(crate) fn from_validated(op: HermOp4) -> Self {
        DensityMatrix { op }
    }
}
