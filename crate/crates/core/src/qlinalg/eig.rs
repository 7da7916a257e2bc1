//! Cyclic Jacobi eigensolver for 4x4 complex Hermitian matrices, plus the
//! rank and range helpers built on it.
//!
//! Jacobi is preferred here over a general QR route: at fixed size 4 it is
//! branch-light, needs no workspace, and converges quadratically once the
//! off-diagonal mass is small, which keeps eigenvalues reproducible across
//! platforms to the last few ulps.

use num_complex::Complex64;

use super::types::{c, C64, HermOp4, Ket4};
use crate::error::EigError;
use crate::tol;

/// Eigendecomposition of a Hermitian operator: `values` ascending,
/// `vectors[k]` the unit eigenvector for `values[k]`.
#[derive(Clone, Copy, Debug)]
pub struct Eig4 {
    pub values: [f64; 4],
    pub vectors: [Ket4; 4],
}

/// Full eigensystem by cyclic Jacobi sweeps.
///
/// Terminates when the off-diagonal Frobenius mass falls below
/// `1e-14 * ||H||_F`; a zero-norm input returns immediately. Eigenvectors
/// carry a deterministic phase: the first component with modulus above
/// 1e-10 is made real positive.
pub fn eigh(h: &HermOp4) -> Result<Eig4, EigError> {
    let mut a = h.entries();
    let mut v = [[c(0.0, 0.0); 4]; 4];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = c(1.0, 0.0);
    }

    let norm = h.frobenius();
    let threshold = tol::JACOBI_OFFDIAG_FACTOR * norm;

    let mut converged = norm == 0.0;
    for _ in 0..tol::JACOBI_MAX_SWEEPS {
        if off_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_norm(&a) > threshold {
        return Err(EigError::NoConvergence {
            max_sweeps: tol::JACOBI_MAX_SWEEPS,
            off_norm: off_norm(&a),
        });
    }

    let mut pairs: [(f64, usize); 4] = [
        (a[0][0].re, 0),
        (a[1][1].re, 1),
        (a[2][2].re, 2),
        (a[3][3].re, 3),
    ];
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    let mut values = [0.0; 4];
    let mut vectors = [Ket4::basis(0); 4];
    for (k, (val, col)) in pairs.into_iter().enumerate() {
        values[k] = val;
        let raw = Ket4([v[0][col], v[1][col], v[2][col], v[3][col]]);
        vectors[k] = raw.phase_normalized();
    }
    Ok(Eig4 { values, vectors })
}

fn off_norm(a: &[[C64; 4]; 4]) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a[i][j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation zeroing A[p][q].
///
/// With h = A[p][q] = |h| phi, the similarity uses the unitary whose columns
/// are (c, s conj(phi)) and (-s, c conj(phi)) in the (p, q) plane; t is the
/// smaller-angle root of the annihilation quadratic, which bounds |t| <= 1
/// and keeps the iteration contractive.
fn rotate(a: &mut [[C64; 4]; 4], v: &mut [[C64; 4]; 4], p: usize, q: usize) {
    let h = a[p][q];
    let habs = h.norm();
    if habs == 0.0 {
        return;
    }
    let phi = h / habs;
    let alpha = a[p][p].re;
    let beta = a[q][q].re;
    let theta = (alpha - beta) / (2.0 * habs);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;

    let app = alpha + t * habs;
    let aqq = beta - t * habs;

    for k in 0..4 {
        if k == p || k == q {
            continue;
        }
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = akp * cs + akq * (sn * phi.conj());
        a[k][q] = akp * (-sn) + akq * (cs * phi.conj());
        a[p][k] = a[k][p].conj();
        a[q][k] = a[k][q].conj();
    }
    a[p][p] = c(app, 0.0);
    a[q][q] = c(aqq, 0.0);
    a[p][q] = c(0.0, 0.0);
    a[q][p] = c(0.0, 0.0);

    for row in v.iter_mut() {
        let vkp = row[p];
        let vkq = row[q];
        row[p] = vkp * cs + vkq * (sn * phi.conj());
        row[q] = vkp * (-sn) + vkq * (cs * phi.conj());
    }
}

/// Cutoff below which an eigenvalue counts as zero: `tol * max(1, |lambda|_max)`.
///
/// The `max(1, ..)` floor keeps the threshold absolute for unit-trace inputs
/// while still scaling for operators far from unit size.
pub fn rank_threshold(eig: &Eig4, rank_tol: f64) -> f64 {
    let max_abs = eig.values.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    rank_tol * max_abs.max(1.0)
}

/// Number of eigenvalues above the rank threshold in magnitude.
pub fn numerical_rank(eig: &Eig4, rank_tol: f64) -> usize {
    let t = rank_threshold(eig, rank_tol);
    eig.values.iter().filter(|l| l.abs() > t).count()
}

/// Orthogonal projector onto the span of eigenvectors above the rank
/// threshold.
pub fn range_projector(eig: &Eig4, rank_tol: f64) -> HermOp4 {
    let t = rank_threshold(eig, rank_tol);
    let mut p = HermOp4::zero();
    for k in 0..4 {
        if eig.values[k].abs() > t {
            p = p + eig.vectors[k].outer();
        }
    }
    p
}

/// Orthonormal basis of the numerical kernel (eigenvectors at or below the
/// rank threshold).
pub fn kernel_basis(eig: &Eig4, rank_tol: f64) -> Vec<Ket4> {
    let t = rank_threshold(eig, rank_tol);
    (0..4)
        .filter(|&k| eig.values[k].abs() <= t)
        .map(|k| eig.vectors[k])
        .collect()
}

/// Moore-Penrose quadratic form <v|A^+|v> computed from the eigensystem,
/// treating eigenvalues at or below the rank threshold as zero.
pub fn pinv_quadratic(eig: &Eig4, v: &Ket4, rank_tol: f64) -> f64 {
    let t = rank_threshold(eig, rank_tol);
    let mut s = 0.0;
    for k in 0..4 {
        if eig.values[k].abs() > t {
            s += eig.vectors[k].inner(v).norm_sqr() / eig.values[k];
        }
    }
    s
}

/// Moore-Penrose bilinear form <u|A^+|v> with the same zero convention.
pub fn pinv_bilinear(eig: &Eig4, u: &Ket4, v: &Ket4, rank_tol: f64) -> C64 {
    let t = rank_threshold(eig, rank_tol);
    let mut s = c(0.0, 0.0);
    for k in 0..4 {
        if eig.values[k].abs() > t {
            s += eig.vectors[k].inner(u).conj() * eig.vectors[k].inner(v) / eig.values[k];
        }
    }
    s
}

/// Distance from `v` to the range: ||(I - P) v|| for the range projector P.
pub fn range_residual(eig: &Eig4, v: &Ket4, rank_tol: f64) -> f64 {
    let t = rank_threshold(eig, rank_tol);
    let mut out = v.0;
    for k in 0..4 {
        if eig.values[k].abs() > t {
            let coef = eig.vectors[k].inner(v);
            for (o, e) in out.iter_mut().zip(eig.vectors[k].0.iter()) {
                *o -= coef * e;
            }
        }
    }
    Ket4(out).norm()
}

/// Smallest eigenvalue without the full vector bookkeeping.
pub fn min_eigenvalue(h: &HermOp4) -> Result<f64, EigError> {
    Ok(eigh(h)?.values[0])
}

/// Eigenvalues of a 2x2 Hermitian matrix given as (a, w, d) for
/// [[a, w], [conj(w), d]], ascending.
pub fn herm2_eig(a: f64, w: Complex64, d: f64) -> [f64; 2] {
    let m = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + w.norm_sqr()).sqrt();
    [m - r, m + r]
}
