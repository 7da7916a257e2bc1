//! Product vectors inside planes and 3-spaces of the two-qubit Hilbert
//! space.
//!
//! A vector is product iff the determinant of its 2x2 amplitude reshape
//! vanishes. On a plane span{v1, v2} that determinant restricts to a binary
//! quadratic in the span coordinates, so the plane holds exactly one or two
//! product rays unless the quadratic vanishes identically, in which case
//! every vector in the plane is product. A corank-1 range carries a
//! one-complex-parameter family of product vectors, parameterized here by
//! charts on the first factor.

use crate::error::GeometryError;
use crate::qlinalg::{
    c, eigh, kernel_basis, range_residual, schmidt_decompose, C64, DensityMatrix, Ket2, Ket4,
    partial_transpose,
};
use crate::tol;

/// Pure product state |e> (x) |f| with both factors normalized.
#[derive(Clone, Copy, Debug)]
pub struct ProductState {
    pub e: Ket2,
    pub f: Ket2,
}

impl ProductState {
    /// Builds from factors, normalizing each.
    pub fn new(e: Ket2, f: Ket2) -> Self {
        ProductState { e: e.normalized(), f: f.normalized() }
    }

    /// Splits a (near-)product four-vector into its factors by dropping the
    /// smaller Schmidt component. The caller is responsible for the input
    /// actually being product; the residual is the dropped coefficient.
    pub fn from_ket(psi: &Ket4) -> Self {
        let s = schmidt_decompose(&psi.normalized());
        ProductState { e: s.left[0], f: s.right[0] }
    }

    /// The assembled four-vector e (x) f.
    pub fn ket(&self) -> Ket4 {
        self.e.kron(&self.f)
    }

    /// The conjugate twin e (x) f*: the vector whose projector is the
    /// partial transpose of this state's projector.
    pub fn twin_ket(&self) -> Ket4 {
        self.e.kron(&self.f.conj())
    }

    /// Rank-one projector of the assembled state.
    pub fn projector(&self) -> crate::qlinalg::HermOp4 {
        self.ket().outer()
    }
}

/// Outcome of the product-vector search in a plane.
#[derive(Clone, Debug)]
pub enum PlaneProductResult {
    /// Every vector in the plane is product; the witnesses are two product
    /// generators spanning the plane.
    AllProduct([ProductState; 2]),
    /// The quadratic has a double root: a single product ray.
    ExactlyOne(ProductState),
    /// The generic case: two distinct product rays.
    ExactlyTwo([ProductState; 2]),
}

fn reshape2(v: &Ket4) -> [[C64; 2]; 2] {
    v.reshape()
}

fn det2(m: &[[C64; 2]; 2]) -> C64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Polarization of the 2x2 determinant: det(a M1 + b M2) =
/// a^2 det(M1) + a b mixed(M1, M2) + b^2 det(M2).
fn det_polarization(m1: &[[C64; 2]; 2], m2: &[[C64; 2]; 2]) -> C64 {
    m1[0][0] * m2[1][1] + m2[0][0] * m1[1][1] - m1[0][1] * m2[1][0] - m2[0][1] * m1[1][0]
}

fn lex_key(v: &Ket4) -> [(f64, f64); 4] {
    let p = v.phase_normalized();
    [
        (p.0[0].re, p.0[0].im),
        (p.0[1].re, p.0[1].im),
        (p.0[2].re, p.0[2].im),
        (p.0[3].re, p.0[3].im),
    ]
}

fn lex_less(a: &Ket4, b: &Ket4) -> bool {
    let (ka, kb) = (lex_key(a), lex_key(b));
    for i in 0..4 {
        if ka[i].0 != kb[i].0 {
            return ka[i].0 < kb[i].0;
        }
        if ka[i].1 != kb[i].1 {
            return ka[i].1 < kb[i].1;
        }
    }
    false
}

/// Finds the product vectors in span{v1, v2}.
///
/// Solves det(reshape(alpha v1 + beta v2)) = 0, a binary quadratic in
/// (alpha, beta). All coefficients vanishing means the whole plane is
/// product; a double root means one product ray; otherwise two.
pub fn plane_product_vectors(v1: &Ket4, v2: &Ket4) -> Result<PlaneProductResult, GeometryError> {
    let v1 = v1.normalized();
    let v2 = v2.normalized();
    let g12 = v1.inner(&v2);
    let gram = 1.0 - g12.norm_sqr();
    if gram <= tol::DEGENERATE_PLANE_TOL {
        return Err(GeometryError::DegeneratePlane { gram });
    }

    let m1 = reshape2(&v1);
    let m2 = reshape2(&v2);
    let a = det2(&m1);
    let b = det_polarization(&m1, &m2);
    let cc = det2(&m2);
    let scale = a.norm().max(b.norm()).max(cc.norm());

    if scale <= tol::QUAD_ALL_ZERO_TOL {
        return Ok(PlaneProductResult::AllProduct([
            ProductState::from_ket(&v1),
            ProductState::from_ket(&v2),
        ]));
    }

    // Both quadratic endpoints negligible: the roots are the generators
    // themselves (alpha beta = 0).
    let tiny = 1e-14 * scale;
    if a.norm() <= tiny && cc.norm() <= tiny {
        return Ok(ordered_pair(&v1, &v2));
    }

    // Work with the larger of |a|, |c| as the leading coefficient so the
    // ratio root stays bounded; swapping exchanges alpha and beta.
    let (lead, mid, last, first_vec, second_vec) = if a.norm() >= cc.norm() {
        (a, b, cc, v1, v2)
    } else {
        (cc, b, a, v2, v1)
    };

    let disc = mid * mid - lead * last * 4.0;
    if disc.norm() <= tol::DOUBLE_ROOT_TOL * scale * scale {
        // Double root r = -mid / (2 lead) in "first_vec per second_vec".
        let r = -mid / (lead * 2.0);
        let w = second_vec.add_scaled(&first_vec, r).normalized();
        return Ok(PlaneProductResult::ExactlyOne(ProductState::from_ket(&w)));
    }

    let sq = disc.sqrt();
    let d1 = -mid + sq;
    let d2 = -mid - sq;
    let dmax = if d1.norm() >= d2.norm() { d1 } else { d2 };
    // Citardauq pairing avoids cancellation: r1 * r2 = last / lead.
    let r1 = dmax / (lead * 2.0);
    let r2 = (last * 2.0) / dmax;

    let w1 = second_vec.add_scaled(&first_vec, r1).normalized();
    let w2 = second_vec.add_scaled(&first_vec, r2).normalized();
    Ok(ordered_pair(&w1, &w2))
}

fn ordered_pair(w1: &Ket4, w2: &Ket4) -> PlaneProductResult {
    let (first, second) = if lex_less(w1, w2) { (w1, w2) } else { (w2, w1) };
    PlaneProductResult::ExactlyTwo([
        ProductState::from_ket(first),
        ProductState::from_ket(second),
    ])
}

/// One-complex-parameter family of product vectors in the 3-space
/// orthogonal to a kernel vector |k>.
///
/// The orthogonality constraint <k|e (x) f> = 0 is bilinear in the local
/// coordinates; fixing e on a chart determines f up to scale, so the family
/// is indexed by one chart coordinate plus the point at infinity.
#[derive(Clone, Copy, Debug)]
pub struct ThreeSpaceFamily {
    // Constraint matrix K[a][b] = conj(k_{ab}); <k|e(x)f> = sum K[a][b] e_a f_b.
    k: [[C64; 2]; 2],
}

/// Builds the family sampler from the normalized kernel vector.
pub fn product_vectors_in_3space(kernel_vector: &Ket4) -> ThreeSpaceFamily {
    let kn = kernel_vector.normalized();
    let m = kn.reshape();
    ThreeSpaceFamily {
        k: [
            [m[0][0].conj(), m[0][1].conj()],
            [m[1][0].conj(), m[1][1].conj()],
        ],
    }
}

impl ThreeSpaceFamily {
    fn solve_f(&self, e: Ket2) -> Result<ProductState, GeometryError> {
        let c0 = self.k[0][0] * e.0[0] + self.k[1][0] * e.0[1];
        let c1 = self.k[0][1] * e.0[0] + self.k[1][1] * e.0[1];
        let norm = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
        if norm <= tol::EMPTY_CHART_TOL {
            // The constraint vanished identically: f is unconstrained here
            // and the chart point carries no canonical representative.
            return Err(GeometryError::EmptyChart);
        }
        let f = Ket2([-c1 / norm, c0 / norm]);
        Ok(ProductState::new(e.normalized(), f))
    }

    /// Family member at finite chart coordinate x: e = (1, x), f forced by
    /// the kernel constraint.
    pub fn sample(&self, x: C64) -> Result<ProductState, GeometryError> {
        self.solve_f(Ket2([c(1.0, 0.0), x]))
    }

    /// Family member at the point at infinity: e = (0, 1).
    pub fn sample_infinity(&self) -> Result<ProductState, GeometryError> {
        self.solve_f(Ket2([c(0.0, 0.0), c(1.0, 0.0)]))
    }
}

/// Search state for the two-range product hunt.
struct BothRangesSearch {
    family: ThreeSpaceFamily,
    // Kernel of the partially transposed state; the second constraint is
    // g(x) = <k_tb | e(x) (x) conj(f(x))>.
    k_tb: Ket4,
}

impl BothRangesSearch {
    fn target(&self, p: &ProductState) -> C64 {
        self.k_tb.inner(&p.e.kron(&p.f.conj()))
    }

    fn eval(&self, x: C64) -> Option<(ProductState, f64)> {
        match self.family.sample(x) {
            Ok(p) => {
                let g = self.target(&p).norm();
                Some((p, g))
            }
            Err(_) => None,
        }
    }

    /// Nested grid refinement of |g| around `x0`: scans a shrinking square,
    /// recentering on the best point each level. Robust against the
    /// anisotropy that defeats derivative-based steps near the solution
    /// curve of one constraint component.
    fn zoom(&self, x0: C64, half0: f64) -> C64 {
        let mut center = x0;
        let mut best_g = match self.eval(x0) {
            Some((_, g)) => g,
            None => f64::INFINITY,
        };
        let mut half = half0;
        for _ in 0..12 {
            let mut improved = center;
            for iu in 0..33 {
                for iv in 0..33 {
                    let u = center.re - half + 2.0 * half * iu as f64 / 32.0;
                    let v = center.im - half + 2.0 * half * iv as f64 / 32.0;
                    let x = c(u, v);
                    if let Some((_, g)) = self.eval(x) {
                        if g < best_g {
                            best_g = g;
                            improved = x;
                        }
                    }
                }
            }
            center = improved;
            half /= 6.0;
        }
        center
    }
}

/// Coefficients of the twin-range constraint in chart form. With e = (1, x)
/// the forced second factor f(x) is holomorphic in x, so the conjugated
/// overlap with the second kernel reads
///
/// ```text
/// conj(g)(x) = h0(x) + conj(x) h1(x) = a0 + a1 x + b0 conj(x) + b1 |x|^2
/// ```
///
/// with h0, h1 linear. Its real and imaginary parts are two circles in the
/// chart plane (u, v); their intersection solves g = 0 exactly.
struct TwinConstraint {
    a0: C64,
    a1: C64,
    b0: C64,
    b1: C64,
}

fn twin_constraint(kernel: &Ket4, kernel_tb: &Ket4) -> TwinConstraint {
    let m = kernel.reshape();
    // Forced-f coefficients: c_b(x) = conj(m[0][b]) + conj(m[1][b]) x,
    // with f(x) = (-c_1(x), c_0(x)).
    let c00 = m[0][0].conj();
    let c01 = m[1][0].conj();
    let c10 = m[0][1].conj();
    let c11 = m[1][1].conj();
    let t = kernel_tb.0;
    TwinConstraint {
        a0: -t[0] * c10 + t[1] * c00,
        a1: -t[0] * c11 + t[1] * c01,
        b0: -t[2] * c10 + t[3] * c00,
        b1: -t[2] * c11 + t[3] * c01,
    }
}

impl TwinConstraint {
    fn scale(&self) -> f64 {
        self.a0
            .norm()
            .max(self.a1.norm())
            .max(self.b0.norm())
            .max(self.b1.norm())
    }

    /// Real/imaginary circle equations lambda*s + alpha*u + beta*v + gamma = 0
    /// with s = u^2 + v^2.
    fn circles(&self) -> ([f64; 4], [f64; 4]) {
        let e_re = [
            self.b1.re,
            self.a1.re + self.b0.re,
            self.b0.im - self.a1.im,
            self.a0.re,
        ];
        let e_im = [
            self.b1.im,
            self.a1.im + self.b0.im,
            self.a1.re - self.b0.re,
            self.a0.im,
        ];
        (e_re, e_im)
    }
}

/// Intersection points of two circle equations `[lambda, alpha, beta, gamma]`
/// (each lambda*(u^2+v^2) + alpha*u + beta*v + gamma = 0; lambda = 0 gives a
/// line). Returns up to two points; coincident curves contribute probe
/// points on the shared locus.
fn circle_pair_roots(e1: [f64; 4], e2: [f64; 4], scale: f64) -> Vec<C64> {
    let tiny = 1e-12 * scale.max(1e-300);
    let line_points = |l: [f64; 4]| -> Vec<C64> {
        // Points on the line alpha*u + beta*v + gamma = 0.
        let n2 = l[1] * l[1] + l[2] * l[2];
        if n2 <= tiny * tiny {
            return Vec::new();
        }
        let p0 = c(-l[3] * l[1] / n2, -l[3] * l[2] / n2);
        let d = c(-l[2], l[1]) / n2.sqrt();
        vec![p0, p0 + d, p0 - d]
    };
    let circle_points = |l: [f64; 4]| -> Vec<C64> {
        if l[0].abs() <= tiny {
            return line_points(l);
        }
        let cu = -l[1] / (2.0 * l[0]);
        let cv = -l[2] / (2.0 * l[0]);
        let r2 = cu * cu + cv * cv - l[3] / l[0];
        if r2 < 0.0 {
            return Vec::new();
        }
        let r = r2.sqrt();
        vec![c(cu + r, cv), c(cu - r, cv), c(cu, cv + r), c(cu, cv - r)]
    };

    let l1_is_line = e1[0].abs() <= tiny;
    let l2_is_line = e2[0].abs() <= tiny;

    if l1_is_line && l2_is_line {
        let det = e1[1] * e2[2] - e2[1] * e1[2];
        let mag = (e1[1].abs() + e1[2].abs()) * (e2[1].abs() + e2[2].abs());
        if det.abs() > 1e-12 * mag.max(tiny) {
            let u = (-e1[3] * e2[2] + e2[3] * e1[2]) / det;
            let v = (-e1[1] * e2[3] + e2[1] * e1[3]) / det;
            return vec![c(u, v)];
        }
        // Parallel or coincident lines: probe along whichever is nontrivial.
        let mut pts = line_points(e1);
        pts.extend(line_points(e2));
        return pts;
    }

    // Radical line lambda2*E1 - lambda1*E2 removes the quadratic term.
    let alpha = e2[0] * e1[1] - e1[0] * e2[1];
    let beta = e2[0] * e1[2] - e1[0] * e2[2];
    let gamma = e2[0] * e1[3] - e1[0] * e2[3];
    let ln = (alpha * alpha + beta * beta).sqrt();
    if ln <= tiny * tiny {
        // Proportional equations: same circle (or empty); probe the locus.
        return if gamma.abs() <= tiny {
            circle_points(if l1_is_line { e2 } else { e1 })
        } else {
            Vec::new()
        };
    }

    // Parameterize the radical line and substitute into the better circle.
    let p0 = c(-gamma * alpha / (ln * ln), -gamma * beta / (ln * ln));
    let d = c(-beta, alpha) / ln;
    let eq = if e1[0].abs() >= e2[0].abs() { e1 } else { e2 };
    // s = |p0|^2 + t^2 because p0 is orthogonal to d.
    let qa = eq[0];
    let qb = eq[1] * d.re + eq[2] * d.im;
    let qc = eq[0] * p0.norm_sqr() + eq[1] * p0.re + eq[2] * p0.im + eq[3];
    let mut out = Vec::new();
    if qa.abs() <= tiny {
        if qb.abs() > tiny {
            out.push(p0 + d * (-qc / qb));
        }
        return out;
    }
    let disc = qb * qb - 4.0 * qa * qc;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        // Citardauq pairing avoids cancellation in the small root.
        let big = -0.5 * (qb + qb.signum() * sq);
        if big.abs() > 0.0 {
            out.push(p0 + d * (big / qa));
            out.push(p0 + d * (qc / big));
        } else {
            out.push(p0);
        }
    } else if disc > -1e-9 * (qb * qb + 4.0 * qa.abs() * qc.abs()).max(tiny) {
        // Tangent within tolerance: the vertex is the near-intersection.
        out.push(p0 + d * (-qb / (2.0 * qa)));
    }
    out
}

/// Finds a product state |e, f> with e (x) f in the range of `rho` and
/// e (x) conj(f) in the range of the partial transpose.
///
/// Requires both ranks to be 3. The chart coordinates solving both kernel
/// constraints are the intersection of two circles ([`TwinConstraint`]),
/// solved in closed form; chart points where the first constraint leaves f
/// free, the point at infinity, and a grid-plus-zoom sweep cover the
/// degenerate cases.
pub fn product_in_both_ranges(
    rho: &DensityMatrix,
    tolerance: f64,
) -> Result<ProductState, GeometryError> {
    let eig = rho.eig();
    let pt = partial_transpose(rho.op());
    let eig_tb = eigh(&pt).expect("partial transpose of a valid state is well conditioned");

    // Corank-1 kernels: the smallest-eigenvalue directions.
    let kernel = eig.vectors[0].normalized();
    let kernel_tb = eig_tb.vectors[0].normalized();

    let search = BothRangesSearch {
        family: product_vectors_in_3space(&kernel),
        k_tb: kernel_tb,
    };

    let accept = |p: &ProductState| -> bool {
        let in_range = range_residual(&eig, &p.ket(), tol::RANK_TOL) <= tolerance;
        let twin_in_range = range_residual(&eig_tb, &p.twin_ket(), tol::RANK_TOL) <= tolerance;
        in_range && twin_in_range
    };

    let tc = twin_constraint(&kernel, &kernel_tb);
    let scale = tc.scale();

    // Vanishing constraint: every family member already carries its twin
    // into the second range (e.g. partial-transpose invariant states).
    if scale <= 1e-12 {
        if let Ok(p) = search.family.sample_infinity() {
            if accept(&p) {
                return Ok(p);
            }
        }
        for x in [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(2.0, -1.0)] {
            if let Ok(p) = search.family.sample(x) {
                if accept(&p) {
                    return Ok(p);
                }
            }
        }
    }

    // Closed-form chart roots, best residual first.
    let (e_re, e_im) = tc.circles();
    let roots = circle_pair_roots(e_re, e_im, scale);
    let mut scored: Vec<(f64, ProductState)> = roots
        .iter()
        .filter_map(|&x| search.eval(x).map(|(p, g)| (g, p)))
        .collect();
    scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for (_, p) in &scored {
        if accept(p) {
            return Ok(*p);
        }
    }

    // The point at infinity (e = |1>) is outside the finite chart.
    if let Ok(p) = search.family.sample_infinity() {
        if search.target(&p).norm() <= 1e-9 && accept(&p) {
            return Ok(p);
        }
    }

    // Chart points where the first constraint degenerates leave f free, so
    // f can be chosen from the second constraint alone.
    let m = kernel.reshape();
    let (c00, c01) = (m[0][0].conj(), m[1][0].conj());
    let (c10, c11) = (m[0][1].conj(), m[1][1].conj());
    let t = kernel_tb.0;
    let free_f = |e: Ket2| -> ProductState {
        let m0 = t[0].conj() * e.0[0] + t[2].conj() * e.0[1];
        let m1 = t[1].conj() * e.0[0] + t[3].conj() * e.0[1];
        let f = if m0.norm() + m1.norm() <= 1e-14 {
            Ket2([c(1.0, 0.0), c(0.0, 0.0)])
        } else {
            Ket2([-m1.conj(), m0.conj()])
        };
        ProductState::new(e.normalized(), f.normalized())
    };
    let mut free_xs: Vec<C64> = Vec::new();
    if c01.norm() > 1e-10 {
        free_xs.push(-c00 / c01);
    }
    if c11.norm() > 1e-10 {
        free_xs.push(-c10 / c11);
    }
    for x in free_xs {
        if (c00 + c01 * x).norm() <= 1e-9 && (c10 + c11 * x).norm() <= 1e-9 {
            let p = free_f(Ket2([c(1.0, 0.0), x]));
            if accept(&p) {
                return Ok(p);
            }
        }
    }
    if c01.norm() <= 1e-10 && c11.norm() <= 1e-10 {
        let p = free_f(Ket2([c(0.0, 0.0), c(1.0, 0.0)]));
        if accept(&p) {
            return Ok(p);
        }
    }

    // Fallback for ill-conditioned intersections: refine the closed-form
    // roots and the best coarse grid starts by nested grid zoom.
    let mut seeds: Vec<C64> = roots.clone();
    const GRID: usize = 48;
    let mut coarse: Vec<(f64, usize, C64)> = Vec::with_capacity(2 * GRID * GRID);
    for (pass, chart) in [false, true].into_iter().enumerate() {
        for iu in 0..GRID {
            for iv in 0..GRID {
                let u = -1.5 + 3.0 * (iu as f64 + 0.5) / GRID as f64;
                let v = -1.5 + 3.0 * (iv as f64 + 0.5) / GRID as f64;
                let w = c(u, v);
                // The reciprocal chart covers |x| >= 1.
                let x = if chart {
                    if w.norm() < 1e-9 {
                        continue;
                    }
                    w.inv()
                } else {
                    w
                };
                if let Some((_, g)) = search.eval(x) {
                    coarse.push((g, pass * GRID * GRID + iu * GRID + iv, x));
                }
            }
        }
    }
    coarse.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    seeds.extend(coarse.into_iter().take(4).map(|(_, _, x)| x));
    for x0 in seeds {
        let x = search.zoom(x0, 0.1 * (1.0 + x0.norm()));
        if let Some((p, _)) = search.eval(x) {
            if accept(&p) {
                return Ok(p);
            }
        }
    }
    Err(GeometryError::NotFound)
}

/// Convenience: product vectors in the range of a rank-3 state, used by the
/// staged subtraction when only one side needs a range constraint.
pub fn range_product(rho_eig_kernel: &Ket4) -> Result<ProductState, GeometryError> {
    let family = product_vectors_in_3space(rho_eig_kernel);
    if let Ok(p) = family.sample(c(0.0, 0.0)) {
        return Ok(p);
    }
    for x in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.5, -0.5), c(2.0, 1.0)] {
        if let Ok(p) = family.sample(x) {
            return Ok(p);
        }
    }
    family.sample_infinity()
}

/// Kernel vector of a corank-1 state (the smallest-eigenvalue direction).
pub fn corank1_kernel(rho: &DensityMatrix) -> Ket4 {
    rho.eig().vectors[0]
}

/// Kernel vectors below the rank threshold, for feasibility compressions.
pub fn kernel_vectors(h: &crate::qlinalg::HermOp4, rank_tol: f64) -> Vec<Ket4> {
    let eig = eigh(h).expect("kernel extraction requires a finite Hermitian operator");
    kernel_basis(&eig, rank_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::is_product_vector;

    fn span_residual(w: &Ket4, v1: &Ket4, v2: &Ket4) -> f64 {
        // Orthonormalize {v1, v2} and project.
        let b1 = v1.normalized();
        let raw = v2.add_scaled(&b1, -b1.inner(v2));
        let b2 = raw.normalized();
        let mut rem = *w;
        for b in [&b1, &b2] {
            let coef = b.inner(&rem);
            rem = rem.add_scaled(b, -coef);
        }
        rem.norm()
    }

    #[test]
    fn basis_generators_are_the_two_witnesses() {
        let v1 = Ket4::basis(0);
        let v2 = Ket4::basis(3);
        match plane_product_vectors(&v1, &v2).unwrap() {
            PlaneProductResult::ExactlyTwo(ws) => {
                for w in &ws {
                    assert!(is_product_vector(&w.ket()));
                    assert!(span_residual(&w.ket(), &v1, &v2) < 1e-10);
                }
                // Witnesses are |00> and |11> in some order.
                let overlaps: Vec<f64> = ws
                    .iter()
                    .map(|w| w.ket().inner(&v1).norm().max(w.ket().inner(&v2).norm()))
                    .collect();
                assert!(overlaps.iter().all(|o| (o - 1.0).abs() < 1e-10));
            }
            other => panic!("expected ExactlyTwo, got {other:?}"),
        }
    }

    #[test]
    fn shared_first_factor_plane_is_all_product() {
        let v1 = Ket4::basis(0); // |0>|0>
        let v2 = Ket4::basis(1); // |0>|1>
        match plane_product_vectors(&v1, &v2).unwrap() {
            PlaneProductResult::AllProduct(ws) => {
                for w in &ws {
                    assert!(is_product_vector(&w.ket()));
                    assert!(span_residual(&w.ket(), &v1, &v2) < 1e-10);
                }
            }
            other => panic!("expected AllProduct, got {other:?}"),
        }
    }

    #[test]
    fn bell_pair_plane_has_two_products() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = Ket4([c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        let psi_minus = Ket4([c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)]);
        match plane_product_vectors(&phi, &psi_minus).unwrap() {
            PlaneProductResult::ExactlyTwo(ws) => {
                for w in &ws {
                    let k = w.ket();
                    assert!(is_product_vector(&k), "witness not product: {k:?}");
                    assert!(span_residual(&k, &phi, &psi_minus) < 1e-10);
                }
            }
            other => panic!("expected ExactlyTwo, got {other:?}"),
        }
    }

    #[test]
    fn dependent_generators_are_rejected() {
        let v = Ket4::basis(2);
        let w = Ket4([c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]);
        assert!(matches!(
            plane_product_vectors(&v, &w),
            Err(GeometryError::DegeneratePlane { .. })
        ));
    }

    #[test]
    fn three_space_family_respects_the_constraint() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = Ket4([c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        let family = product_vectors_in_3space(&phi);
        // x = 0: e = (1, 0), the constraint forces f to (0, 1).
        let p = family.sample(c(0.0, 0.0)).unwrap();
        assert!((p.e.0[0].norm() - 1.0).abs() < 1e-12);
        assert!((p.f.0[1].norm() - 1.0).abs() < 1e-12);
        for x in [c(0.5, 0.0), c(-1.0, 2.0), c(0.0, -0.3), c(3.0, 1.0)] {
            let p = family.sample(x).unwrap();
            let k = p.ket();
            assert!(is_product_vector(&k));
            assert!(phi.inner(&k).norm() < 1e-12, "constraint violated at {x:?}");
        }
        let inf = family.sample_infinity().unwrap();
        assert!(phi.inner(&inf.ket()).norm() < 1e-12);
    }

    #[test]
    fn basis_kernel_chart_degenerates_only_at_isolated_points() {
        let family = product_vectors_in_3space(&Ket4::basis(3));
        // Kernel |11>: at x = 0 the e = (1, 0) chart leaves f free.
        assert!(matches!(family.sample(c(0.0, 0.0)), Err(GeometryError::EmptyChart)));
        // Elsewhere the forced f is |0>, orthogonal to the kernel.
        let p = family.sample(c(1.0, 0.0)).unwrap();
        assert!(Ket4::basis(3).inner(&p.ket()).norm() < 1e-12);
        assert!((p.f.0[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn both_ranges_search_on_symmetric_diagonal_state() {
        // rho = (|00><00| + |01><01| + |10><10|) / 3 is invariant under
        // partial transposition, so any in-range product qualifies.
        let mut e = [[c(0.0, 0.0); 4]; 4];
        e[0][0] = c(1.0 / 3.0, 0.0);
        e[1][1] = c(1.0 / 3.0, 0.0);
        e[2][2] = c(1.0 / 3.0, 0.0);
        let rho = DensityMatrix::new(e).unwrap();
        let p = product_in_both_ranges(&rho, 1e-9).unwrap();
        let eig = rho.eig();
        assert!(range_residual(&eig, &p.ket(), 1e-9) <= 1e-9);
        assert!(range_residual(&eig, &p.twin_ket(), 1e-9) <= 1e-9);
    }
}
