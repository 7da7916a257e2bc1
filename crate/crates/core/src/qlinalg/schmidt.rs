//! Schmidt decomposition of two-qubit vectors via the 2x2 amplitude
//! reshaping.
//!
//! For psi = sum_ab M[a][b] |a>|b>, the singular value decomposition
//! M = sum_k c_k |g_k><v_k| yields psi = sum_k c_k |g_k> (x) |h_k> with
//! h_k = conj(v_k). At 2x2 the right singular vectors come from a closed
//! form eigensolve of M^dagger M, so no iteration is needed.

use super::types::{c, C64, Ket2, Ket4};
use crate::tol;

/// Schmidt form of a normalized two-qubit vector:
/// psi = c1 g1 (x) h1 + c2 g2 (x) h2 with c1 >= c2 >= 0 and orthonormal
/// pairs on each side.
#[derive(Clone, Copy, Debug)]
pub struct SchmidtForm {
    pub coefficients: [f64; 2],
    pub left: [Ket2; 2],
    pub right: [Ket2; 2],
}

impl SchmidtForm {
    /// Rebuilds the vector sum_k c_k g_k (x) h_k.
    pub fn reassemble(&self) -> Ket4 {
        let mut out = [c(0.0, 0.0); 4];
        for k in 0..2 {
            let term = self.left[k].kron(&self.right[k]);
            for i in 0..4 {
                out[i] += term.0[i] * self.coefficients[k];
            }
        }
        Ket4(out)
    }
}

fn phase_normalized2(v: Ket2) -> Ket2 {
    for i in 0..2 {
        let m = v.0[i].norm();
        if m > 1e-10 {
            let u = v.0[i].conj() / m;
            return Ket2([v.0[0] * u, v.0[1] * u]);
        }
    }
    v
}

/// |det| of the 2x2 reshape; equals c1 * c2 for a normalized vector.
pub fn reshape_det(psi: &Ket4) -> C64 {
    let m = psi.reshape();
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// True iff the vector factorizes: |det(reshape)| <= 1e-10, equivalently
/// its smaller Schmidt coefficient vanishes at that scale.
pub fn is_product_vector(psi: &Ket4) -> bool {
    reshape_det(psi).norm() <= tol::PRODUCT_VECTOR_TOL
}

/// Schmidt decomposition of a normalized vector.
///
/// Deterministic: right singular vectors are phase-normalized before the
/// left ones are generated from them, so reassembly reproduces psi itself
/// (not just up to global phase) within 1e-10.
pub fn schmidt_decompose(psi: &Ket4) -> SchmidtForm {
    let m = psi.reshape();

    // Gram matrix M^dagger M (2x2 Hermitian PSD).
    let mut g = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            g[i][j] = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
        }
    }

    // Closed-form eigensolve: descending eigenvalues s1 >= s2 >= 0.
    let a = g[0][0].re;
    let d = g[1][1].re;
    let w = g[0][1];
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + w.norm_sqr()).sqrt();
    let s1 = (mid + rad).max(0.0);
    let s2 = (mid - rad).max(0.0);

    // Eigenvector for s1: rows of (G - s2 I) span it; pick the larger.
    let v1 = if rad < 1e-15 {
        // Degenerate Gram matrix: any orthonormal basis works.
        Ket2::basis(0)
    } else {
        let cand_a = Ket2([w, c(d - s2, 0.0)]);
        let cand_b = Ket2([c(a - s2, 0.0), w.conj()]);
        if cand_a.norm() >= cand_b.norm() {
            phase_normalized2(cand_a.normalized())
        } else {
            phase_normalized2(cand_b.normalized())
        }
    };
    let v2 = phase_normalized2(v1.orthogonal());

    let c1 = s1.sqrt();
    let c2 = s2.sqrt();

    let apply = |v: &Ket2| -> Ket2 {
        Ket2([
            m[0][0] * v.0[0] + m[0][1] * v.0[1],
            m[1][0] * v.0[0] + m[1][1] * v.0[1],
        ])
    };

    // Left vectors u_k = M v_k / c_k; for a vanishing coefficient any unit
    // vector orthogonal to u_1 completes the basis.
    let u1 = if c1 > 1e-12 {
        let raw = apply(&v1);
        Ket2([raw.0[0] / c1, raw.0[1] / c1])
    } else {
        Ket2::basis(0)
    };
    let u2 = if c2 > 1e-12 {
        let raw = apply(&v2);
        Ket2([raw.0[0] / c2, raw.0[1] / c2])
    } else {
        u1.orthogonal()
    };

    SchmidtForm {
        coefficients: [c1, c2],
        left: [u1, u2],
        right: [v1.conj(), v2.conj()],
    }
}
