//! Bloch-sphere coordinates for single-qubit states.
//!
//! The decomposition search interpolates between product states along great
//! circles of the local Bloch spheres; working in R^3 removes the gauge
//! phase, which is legitimate because every weight formula downstream is
//! phase-invariant.

use crate::qlinalg::{c, Ket2};

/// Bloch vector (x, y, z) of a normalized single-qubit state.
pub fn bloch(e: &Ket2) -> [f64; 3] {
    let cross = e.0[0].conj() * e.0[1];
    [
        2.0 * cross.re,
        2.0 * cross.im,
        e.0[0].norm_sqr() - e.0[1].norm_sqr(),
    ]
}

/// Unit state with the given Bloch vector (input need not be normalized).
pub fn ket_from_bloch(n: [f64; 3]) -> Ket2 {
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if len == 0.0 {
        return Ket2::basis(0);
    }
    let z = (n[2] / len).clamp(-1.0, 1.0);
    let theta = z.acos();
    let phi = n[1].atan2(n[0]);
    let (h_sin, h_cos) = (0.5 * theta).sin_cos();
    Ket2([c(h_cos, 0.0), c(phi.cos() * h_sin, phi.sin() * h_sin)])
}

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / len, v[1] / len, v[2] / len]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Spherical linear interpolation between unit vectors, t in [0, 1].
///
/// Near-parallel inputs fall back to normalized linear interpolation;
/// antipodal inputs take the great circle through a deterministically
/// chosen perpendicular axis (any continuous path suffices for the
/// sign-change bisection this supports).
pub fn slerp(n1: [f64; 3], n2: [f64; 3], t: f64) -> [f64; 3] {
    let dot = (n1[0] * n2[0] + n1[1] * n2[1] + n1[2] * n2[2]).clamp(-1.0, 1.0);
    let omega = dot.acos();
    if omega < 1e-9 {
        return normalize3([
            n1[0] + t * (n2[0] - n1[0]),
            n1[1] + t * (n2[1] - n1[1]),
            n1[2] + t * (n2[2] - n1[2]),
        ]);
    }
    if std::f64::consts::PI - omega < 1e-9 {
        // Antipodal: rotate n1 by t*pi around a perpendicular axis.
        let seed = if n1[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let axis = normalize3(cross3(n1, seed));
        let perp = cross3(axis, n1);
        let (s, co) = (t * std::f64::consts::PI).sin_cos();
        return normalize3([
            n1[0] * co + perp[0] * s,
            n1[1] * co + perp[1] * s,
            n1[2] * co + perp[2] * s,
        ]);
    }
    let so = omega.sin();
    let a = ((1.0 - t) * omega).sin() / so;
    let b = (t * omega).sin() / so;
    [
        a * n1[0] + b * n2[0],
        a * n1[1] + b * n2[1],
        a * n1[2] + b * n2[2],
    ]
}

/// i-th of `count` points of a Fibonacci lattice on the unit sphere.
pub fn fibonacci_sphere(count: usize, i: usize) -> [f64; 3] {
    let golden_angle = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = golden_angle * i as f64;
    [r * phi.cos(), r * phi.sin(), z]
}
