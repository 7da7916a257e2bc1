//! Pseudomixture construction for entangled two-qubit states.
//!
//! An entangled density matrix cannot be written as a mixture of product
//! states, but it can always be written as an affine combination
//!
//! ```text
//! rho = (1 + q) rho_plus - q rho_minus
//! ```
//!
//! where both parts are separable, `rho_minus` uses at most two pure product
//! terms, and `q > 0` is minimal for the chosen negative part. The search
//! below exploits that the partially transposed state has exactly one
//! negative eigenvalue: the negative part is chosen so that adding it (after
//! partial transposition) lifts that eigenvalue to zero, and the minimal `q`
//! is the smallest root of `lambda_min(A + q D) = 0`, which is monotone and
//! concave in `q`.

use crate::decompose::{decompose, is_ppt, LocalMixture, MixtureTerm};
use crate::error::PseudoError;
use crate::geometry::{
    plane_product_vectors, product_vectors_in_3space, PlaneProductResult, ProductState,
};
use crate::bloch::{fibonacci_sphere, ket_from_bloch};
use crate::qlinalg::{
    eigh, kernel_basis, numerical_rank, partial_transpose, pinv_bilinear, pinv_quadratic,
    schmidt_decompose, C64, DensityMatrix, Eig4, HermOp4, Ket4,
};
use crate::tol::{self, Tolerances};

/// The single negative eigenvalue of a partially transposed entangled state,
/// reported with its magnitude and eigenvector.
#[derive(Clone, Debug)]
pub struct NegativeEigenpair {
    /// Magnitude of the negative eigenvalue (a positive number).
    pub magnitude: f64,
    /// Corresponding unit eigenvector.
    pub vector: Ket4,
}

/// Extract the negative eigenpair of `rho` after partial transposition.
///
/// Fails with `NotEntangled` when no eigenvalue is below `-tolerances.psd`,
/// and with `MultipleNegative` if a second one is: a valid two-qubit density
/// matrix never has two, so that signals corrupted input.
pub fn negative_eigenpair(
    rho: &DensityMatrix,
    tolerances: &Tolerances,
) -> Result<NegativeEigenpair, PseudoError> {
    let pt = partial_transpose(rho.op());
    let eig = eigh(&pt)?;
    if eig.values[0] >= -tolerances.psd {
        return Err(PseudoError::NotEntangled);
    }
    if eig.values[1] < -tolerances.psd {
        return Err(PseudoError::MultipleNegative {
            second: eig.values[1],
        });
    }
    Ok(NegativeEigenpair {
        magnitude: -eig.values[0],
        vector: eig.vectors[0],
    })
}

/// A state written as an affine combination of two separable mixtures:
/// `rho = (1 + q) * positive_part - q * negative_part`.
#[derive(Clone, Debug)]
pub struct Pseudomixture {
    /// Minimal weight on the subtracted separable part.
    pub q: f64,
    /// Separable decomposition of `(rho + q N) / (1 + q)`.
    pub positive_part: LocalMixture,
    /// The subtracted mixture; one term for mixed inputs, two for pure.
    pub negative_part: LocalMixture,
    /// True when a rank-3 input had to settle for a rank-4 positive part
    /// because no in-range candidate kept the lifted state at rank 3.
    pub rank4_fallback: bool,
}

impl Pseudomixture {
    /// Total number of pure product terms across both parts.
    pub fn cardinality(&self) -> usize {
        self.positive_part.len() + self.negative_part.len()
    }

    /// Reassemble `(1 + q) rho_plus - q rho_minus`.
    pub fn assemble(&self) -> HermOp4 {
        self.positive_part.assemble() * (1.0 + self.q) - self.negative_part.assemble() * self.q
    }

    /// Frobenius distance between the reassembled combination and `target`.
    pub fn reconstruction_residual(&self, target: &HermOp4) -> f64 {
        (self.assemble() - *target).frobenius()
    }
}

/// Closed-form minimal lift for a single product candidate with weight `w`:
/// the unique sign change of `det(A + q w |t><t|)` is at `q = -1 / (w eta)`
/// with `eta = <t|A^{-1}|t>`, so the candidate is feasible exactly when
/// `eta < 0`. Candidates past the practical cap are rejected as spurious.
fn single_product_lift_q(a_eig: &Eig4, twin: &Ket4, weight: f64, rank_tol: f64) -> Option<f64> {
    let eta = pinv_quadratic(a_eig, twin, rank_tol);
    if eta >= 0.0 {
        return None;
    }
    let q = -1.0 / (weight * eta);
    (q > 0.0 && q <= tol::LIFT_Q_CANDIDATE_CAP).then_some(q)
}

/// Closed-form minimal lift for a two-term candidate
/// `D = w |t1><t1| + (1 - w) |t2><t2|`. By the determinant identity
/// `det(A + q D) = det(A) det(I_2 + q K)` with `K[i][j] = <t_i|A^{-1}|t_j> w_j`,
/// the crossing points are the real roots of `det(K) q^2 + tr(K) q + 1`,
/// and the minimal lift is the smallest positive one.
fn two_term_lift_q(a_eig: &Eig4, t1: &Ket4, t2: &Ket4, w: f64, rank_tol: f64) -> Option<f64> {
    let g11 = pinv_quadratic(a_eig, t1, rank_tol);
    let g22 = pinv_quadratic(a_eig, t2, rank_tol);
    let g12 = pinv_bilinear(a_eig, t1, t2, rank_tol);
    let trace = w * g11 + (1.0 - w) * g22;
    let det = w * (1.0 - w) * (g11 * g22 - g12.norm_sqr());

    let smallest_positive = if det.abs() <= 1e-300 {
        (trace < 0.0).then(|| -1.0 / trace)
    } else {
        let disc = trace * trace - 4.0 * det;
        if disc < 0.0 {
            None
        } else {
            let s = disc.sqrt();
            let r1 = (-trace - s) / (2.0 * det);
            let r2 = (-trace + s) / (2.0 * det);
            [r1, r2]
                .into_iter()
                .filter(|r| *r > 0.0)
                .min_by(|a, b| a.total_cmp(b))
        }
    };
    smallest_positive.filter(|q| *q <= tol::LIFT_Q_CAP)
}

/// Minimum eigenvalue of the compression of `a` onto the span of `basis`
/// (at most three vectors). The compression is embedded into a padded 4x4
/// problem; the padding diagonal sits far above any attainable eigenvalue,
/// so it never contaminates the minimum.
fn compression_min_eigenvalue(a: &HermOp4, basis: &[Ket4]) -> f64 {
    let m = basis.len().min(4);
    let mut entries = [[C64::new(0.0, 0.0); 4]; 4];
    for (j, e) in entries.iter_mut().enumerate() {
        for (l, v) in e.iter_mut().enumerate() {
            if j < m && l < m {
                *v = basis[j].inner(&a.matvec(&basis[l]));
            } else if j == l {
                *v = C64::new(10.0 * (1.0 + a.frobenius()), 0.0);
            }
        }
    }
    match eigh(&HermOp4::hermitized(entries)) {
        Ok(eig) => eig.values[0],
        Err(_) => f64::NEG_INFINITY,
    }
}

/// Smallest `q >= 0` such that `rho^{T_b} + q * candidate^{T_b}` is positive
/// semidefinite, or `None` when no finite `q` achieves it.
///
/// `lambda_min(A + q D)` is nondecreasing (D is PSD) and concave (a minimum
/// of affine functions), so a sign change bracketed by doubling can be
/// closed by bisection. Feasibility is prechecked by compressing `A` onto
/// the kernel of `D`: the supremum of `lambda_min` over `q` equals the
/// minimum eigenvalue of that compression, so a negative compression means
/// the search can never succeed.
pub fn minimal_lift(
    rho: &DensityMatrix,
    candidate: &LocalMixture,
    tolerances: &Tolerances,
) -> Option<f64> {
    let a = partial_transpose(rho.op());
    let d = candidate.assemble_partial_transpose();
    let a_eig = eigh(&a).ok()?;
    if a_eig.values[0] >= -tol::LIFT_EIGENVALUE_TOL {
        return Some(0.0);
    }

    let d_eig = eigh(&d).ok()?;
    let kernel = kernel_basis(&d_eig, tolerances.rank);
    if !kernel.is_empty()
        && compression_min_eigenvalue(&a, &kernel) < -tol::LIFT_EIGENVALUE_TOL
    {
        return None;
    }

    let lambda_min = |q: f64| -> Option<f64> { Some(eigh(&(a + d * q)).ok()?.values[0]) };

    let mut lo = 0.0;
    let mut hi = 1.0;
    loop {
        let l = lambda_min(hi)?;
        if l >= 0.0 {
            break;
        }
        lo = hi;
        hi *= 2.0;
        if hi > tol::LIFT_Q_CAP {
            return None;
        }
    }

    for _ in 0..tol::LIFT_MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let l = lambda_min(mid)?;
        if l.abs() <= tol::LIFT_EIGENVALUE_TOL {
            return Some(mid);
        }
        if l < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Product states aligned with the Schmidt components of the negative
/// eigenvector, dominant coefficient first. Their twins span the
/// eigenvector's components, which is what makes them effective lifts.
fn schmidt_candidates(vector: &Ket4) -> [ProductState; 2] {
    let s = schmidt_decompose(vector);
    [
        ProductState::new(s.left[0], s.right[0].conj()),
        ProductState::new(s.left[1], s.right[1].conj()),
    ]
}

/// Deterministic grid of product states covering both Bloch spheres.
fn bloch_pair_grid(per_side: usize) -> Vec<ProductState> {
    let mut out = Vec::with_capacity(per_side * per_side);
    for i in 0..per_side {
        let e = ket_from_bloch(fibonacci_sphere(per_side, i));
        for j in 0..per_side {
            let f = ket_from_bloch(fibonacci_sphere(per_side, j));
            out.push(ProductState::new(e, f));
        }
    }
    out
}

/// Product vectors inside the range of a rank-3 state, sampled from the
/// one-parameter family orthogonal to its kernel: a handful of special
/// chart points plus two uniform grids (the chart and its reciprocal).
fn range_family_samples(kernel: &Ket4, per_side: usize) -> Vec<ProductState> {
    let family = product_vectors_in_3space(kernel);
    let mut out = Vec::new();
    let mut push = |r: Result<ProductState, crate::error::GeometryError>| {
        if let Ok(p) = r {
            out.push(p);
        }
    };
    push(family.sample_infinity());
    for special in [
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, 1.0),
        C64::new(0.0, -1.0),
    ] {
        push(family.sample(special));
    }
    let n = per_side as f64;
    for iu in 0..per_side {
        for iv in 0..per_side {
            let re = -1.0 + 2.0 * (iu as f64 + 0.5) / n;
            let im = -1.0 + 2.0 * (iv as f64 + 0.5) / n;
            let x = C64::new(re, im);
            push(family.sample(x));
            if x.norm_sqr() > 1e-12 {
                push(family.sample(x.inv()));
            }
        }
    }
    out
}

/// Candidate single-product states for the negative part of a mixed state,
/// in a stable preference order. In-range candidates come first so that a
/// rank-3 input can keep its lifted state at rank 3.
fn primary_candidates(rho: &DensityMatrix, rank: usize, pair: &NegativeEigenpair) -> Vec<ProductState> {
    match rank {
        2 => {
            let eig = rho.eig();
            match plane_product_vectors(&eig.vectors[3], &eig.vectors[2]) {
                Ok(PlaneProductResult::AllProduct(two)) => two.to_vec(),
                Ok(PlaneProductResult::ExactlyOne(p)) => vec![p],
                Ok(PlaneProductResult::ExactlyTwo(two)) => two.to_vec(),
                Err(_) => Vec::new(),
            }
        }
        3 => {
            let eig = rho.eig();
            range_family_samples(&eig.vectors[0], 32)
        }
        _ => {
            let mut pool = schmidt_candidates(&pair.vector).to_vec();
            pool.extend(bloch_pair_grid(32));
            pool
        }
    }
}

/// Pick the best feasible candidate from `pool` using the closed-form lift:
/// prefer those that keep the lifted state at rank 3 or lower (only possible
/// for low-rank inputs), then the smallest lift, then pool order.
fn select_candidate(
    rho: &DensityMatrix,
    pool: &[ProductState],
    a_eig: &Eig4,
    input_rank: usize,
    tolerances: &Tolerances,
) -> Option<ProductState> {
    let mut best: Option<(bool, f64, usize)> = None;
    for (idx, cand) in pool.iter().enumerate() {
        let Some(q) = single_product_lift_q(a_eig, &cand.twin_ket(), 1.0, tolerances.rank) else {
            continue;
        };
        let keeps_low_rank = if input_rank >= 4 {
            false
        } else {
            let lifted = (*rho.op() + cand.projector() * q) * (1.0 / (1.0 + q));
            match eigh(&lifted) {
                Ok(eig) => numerical_rank(&eig, tolerances.rank) <= 3,
                Err(_) => false,
            }
        };
        let better = match &best {
            None => true,
            Some((best_low, best_q, _)) => {
                keeps_low_rank && !best_low || (keeps_low_rank == *best_low && q < *best_q)
            }
        };
        if better {
            best = Some((keeps_low_rank, q, idx));
        }
    }
    best.map(|(_, _, idx)| pool[idx])
}

/// Golden-section search for the Schmidt weight that minimizes the two-term
/// lift of a pure entangled state; the symmetric 1/2 split is also tried
/// directly since it is exact for maximally entangled inputs.
fn pure_negative_part(
    a_eig: &Eig4,
    pair: &NegativeEigenpair,
    tolerances: &Tolerances,
) -> Result<LocalMixture, PseudoError> {
    let [p1, p2] = schmidt_candidates(&pair.vector);
    let t1 = p1.twin_ket();
    let t2 = p2.twin_ket();
    let q_of = |w: f64| {
        two_term_lift_q(a_eig, &t1, &t2, w, tolerances.rank).unwrap_or(f64::INFINITY)
    };

    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    let mut wa = hi - inv_phi * (hi - lo);
    let mut wb = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (q_of(wa), q_of(wb));
    for _ in 0..90 {
        if fa < fb {
            hi = wb;
            wb = wa;
            fb = fa;
            wa = hi - inv_phi * (hi - lo);
            fa = q_of(wa);
        } else {
            lo = wa;
            wa = wb;
            fa = fb;
            wb = lo + inv_phi * (hi - lo);
            fb = q_of(wb);
        }
    }
    let mut w = if fa < fb { wa } else { wb };
    if q_of(0.5) <= q_of(w) {
        w = 0.5;
    }
    if !q_of(w).is_finite() {
        return Err(PseudoError::SearchExhausted);
    }
    Ok(LocalMixture::new(vec![
        MixtureTerm { weight: w, state: p1 },
        MixtureTerm { weight: 1.0 - w, state: p2 },
    ]))
}

/// Choose the negative part of the pseudomixture: a weighted pair of the
/// negative eigenvector's Schmidt products for pure states, a single pure
/// product otherwise. Mixed-state selection scans a rank-dependent pool and
/// falls back to the Schmidt products and a Bloch grid before giving up.
pub fn find_negative_part(
    rho: &DensityMatrix,
    tolerances: &Tolerances,
) -> Result<LocalMixture, PseudoError> {
    let pair = negative_eigenpair(rho, tolerances)?;
    let a = partial_transpose(rho.op());
    let a_eig = eigh(&a)?;
    let rank = numerical_rank(&rho.eig(), tolerances.rank);

    if rank == 1 {
        return pure_negative_part(&a_eig, &pair, tolerances);
    }

    let pool = primary_candidates(rho, rank, &pair);
    let chosen = select_candidate(rho, &pool, &a_eig, rank, tolerances).or_else(|| {
        let mut fallback = schmidt_candidates(&pair.vector).to_vec();
        if rank < 4 {
            fallback.extend(bloch_pair_grid(32));
        }
        select_candidate(rho, &fallback, &a_eig, rank, tolerances)
    });
    let state = chosen.ok_or(PseudoError::SearchExhausted)?;
    Ok(LocalMixture::new(vec![MixtureTerm { weight: 1.0, state }]))
}

/// Decompose an entangled state as `(1 + q) rho_plus - q rho_minus` with both
/// parts separable and `q` minimal for the selected negative part.
pub fn pseudomix(
    rho: &DensityMatrix,
    tolerances: &Tolerances,
) -> Result<Pseudomixture, PseudoError> {
    if is_ppt(rho, tolerances).is_ppt {
        return Err(PseudoError::NotEntangled);
    }
    let input_rank = numerical_rank(&rho.eig(), tolerances.rank);
    let negative_part = find_negative_part(rho, tolerances)?;
    let q = minimal_lift(rho, &negative_part, tolerances)
        .ok_or(PseudoError::AssemblyFault("selected negative part lost feasibility"))?;
    if q <= 0.0 {
        return Err(PseudoError::AssemblyFault("lift collapsed to zero"));
    }

    let lifted = (*rho.op() + negative_part.assemble() * q) * (1.0 / (1.0 + q));
    let positive_state = DensityMatrix::new(lifted.entries())?;
    let positive_part = decompose(&positive_state, tolerances)?;
    let rank4_fallback = input_rank == 3 && positive_part.len() == 4;

    let result = Pseudomixture {
        q,
        positive_part,
        negative_part,
        rank4_fallback,
    };
    if result.reconstruction_residual(rho.op()) > tolerances.recon {
        return Err(PseudoError::AssemblyFault("reconstruction residual above bound"));
    }
    Ok(result)
}

/// One named check in a verification report.
#[derive(Clone, Debug)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    /// The measured quantity (a residual, deviation, or extremal value).
    pub measured: f64,
    /// The bound it was compared against.
    pub bound: f64,
}

/// Outcome of re-deriving every claimed property of a decomposition.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub checks: Vec<CheckItem>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &'static str, measured: f64, bound: f64) {
        self.checks.push(CheckItem {
            name,
            passed: measured <= bound,
            measured,
            bound,
        });
    }

    fn push_min(&mut self, name: &'static str, measured: f64, bound: f64) {
        self.checks.push(CheckItem {
            name,
            passed: measured >= bound,
            measured,
            bound,
        });
    }
}

fn mixture_checks(
    report: &mut VerificationReport,
    mixture: &LocalMixture,
    names: [&'static str; 4],
) {
    let min_weight = mixture
        .terms
        .iter()
        .map(|t| t.weight)
        .fold(f64::INFINITY, f64::min);
    report.push_min(names[0], min_weight, 0.0);

    let sum: f64 = mixture.terms.iter().map(|t| t.weight).sum();
    report.push(names[1], (sum - 1.0).abs(), tol::WEIGHT_SUM_TOL);

    let worst_norm = mixture
        .terms
        .iter()
        .flat_map(|t| [t.state.e.norm(), t.state.f.norm()])
        .map(|n| (n - 1.0).abs())
        .fold(0.0, f64::max);
    report.push(names[2], worst_norm, 1e-9);

    let worst_det = mixture
        .terms
        .iter()
        .map(|t| crate::qlinalg::reshape_det(&t.state.ket()).norm())
        .fold(0.0, f64::max);
    report.push(names[3], worst_det, tol::PRODUCT_VECTOR_TOL);
}

/// Re-derive every property a separable decomposition claims: weights form a
/// distribution, every term is a normalized pure product, and the mixture
/// reassembles the target within tolerance.
pub fn verify_local_mixture(
    rho: &DensityMatrix,
    mixture: &LocalMixture,
    tolerances: &Tolerances,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    mixture_checks(
        &mut report,
        mixture,
        ["weights-positive", "weight-sum", "factors-normalized", "terms-product"],
    );
    report.push_min(
        "term-count",
        if (1..=4).contains(&mixture.len()) { 1.0 } else { 0.0 },
        1.0,
    );
    report.push(
        "reconstruction",
        mixture.reconstruction_residual(rho.op()),
        tolerances.recon,
    );
    report
}

/// Re-derive every property a pseudomixture claims: a positive minimal
/// weight `q`, both parts valid mixtures with legal term counts, a positive
/// part that passes the positivity-under-partial-transposition test, and an
/// affine combination that reassembles the target.
pub fn verify_pseudomixture(
    rho: &DensityMatrix,
    pm: &Pseudomixture,
    tolerances: &Tolerances,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    report.push_min("q-positive", pm.q, f64::MIN_POSITIVE);
    report.push_min(
        "positive-term-count",
        if (1..=4).contains(&pm.positive_part.len()) { 1.0 } else { 0.0 },
        1.0,
    );
    report.push_min(
        "negative-term-count",
        if (1..=2).contains(&pm.negative_part.len()) { 1.0 } else { 0.0 },
        1.0,
    );
    mixture_checks(
        &mut report,
        &pm.positive_part,
        [
            "positive-weights-positive",
            "positive-weight-sum",
            "positive-factors-normalized",
            "positive-terms-product",
        ],
    );
    mixture_checks(
        &mut report,
        &pm.negative_part,
        [
            "negative-weights-positive",
            "negative-weight-sum",
            "negative-factors-normalized",
            "negative-terms-product",
        ],
    );

    let positive_pt = pm.positive_part.assemble_partial_transpose();
    let min_pt = match eigh(&positive_pt) {
        Ok(eig) => eig.values[0],
        Err(_) => f64::NEG_INFINITY,
    };
    report.push_min("positive-part-ppt", min_pt, -tolerances.psd);

    report.push(
        "reconstruction",
        pm.reconstruction_residual(rho.op()),
        tolerances.recon,
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::Verdict;
    use crate::qlinalg::c;
    use crate::states::{bell_phi_plus, canonical_pure, werner};

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn bell_negative_eigenpair_has_magnitude_half() {
        let rho = DensityMatrix::pure(&bell_phi_plus());
        let pair = negative_eigenpair(&rho, &tols()).unwrap();
        assert!((pair.magnitude - 0.5).abs() < 1e-12);
        // Eigenvector is the singlet (|01> - |10>)/sqrt(2) up to phase.
        let singlet = Ket4([
            c(0.0, 0.0),
            c(1.0 / 2f64.sqrt(), 0.0),
            c(-1.0 / 2f64.sqrt(), 0.0),
            c(0.0, 0.0),
        ]);
        assert!(pair.vector.inner(&singlet).norm() > 1.0 - 1e-10);
    }

    #[test]
    fn canonical_pure_negative_magnitude_is_cos_sin() {
        for a in [0.1, 0.3, 0.7] {
            let rho = DensityMatrix::pure(&canonical_pure(a));
            let pair = negative_eigenpair(&rho, &tols()).unwrap();
            assert!(
                (pair.magnitude - a.cos() * a.sin()).abs() < 1e-12,
                "magnitude off at angle {a}"
            );
        }
    }

    #[test]
    fn werner_negative_magnitude_matches_formula() {
        let rho = werner(0.9);
        let pair = negative_eigenpair(&rho, &tols()).unwrap();
        assert!((pair.magnitude - 0.425).abs() < 1e-12);
    }

    #[test]
    fn separable_state_reports_not_entangled() {
        let rho = DensityMatrix::maximally_mixed();
        assert!(matches!(
            negative_eigenpair(&rho, &tols()),
            Err(PseudoError::NotEntangled)
        ));
    }

    #[test]
    fn bell_symmetric_candidate_lifts_at_one() {
        let rho = DensityMatrix::pure(&bell_phi_plus());
        let e0 = crate::qlinalg::Ket2::basis(0);
        let e1 = crate::qlinalg::Ket2::basis(1);
        let candidate = LocalMixture::new(vec![
            MixtureTerm { weight: 0.5, state: ProductState::new(e0, e1) },
            MixtureTerm { weight: 0.5, state: ProductState::new(e1, e0) },
        ]);
        let q = minimal_lift(&rho, &candidate, &tols()).unwrap();
        assert!((q - 1.0).abs() < 1e-9, "q = {q}");
    }

    #[test]
    fn infeasible_candidate_is_rejected() {
        // |00><00| leaves the negative block of the Bell partial transpose
        // untouched, so no amount of it can lift the eigenvalue.
        let rho = DensityMatrix::pure(&bell_phi_plus());
        let e0 = crate::qlinalg::Ket2::basis(0);
        let candidate = LocalMixture::new(vec![MixtureTerm {
            weight: 1.0,
            state: ProductState::new(e0, e0),
        }]);
        assert!(minimal_lift(&rho, &candidate, &tols()).is_none());
    }

    #[test]
    fn two_term_closed_form_matches_bisection_on_bell() {
        let rho = DensityMatrix::pure(&bell_phi_plus());
        let a_eig = eigh(&partial_transpose(rho.op())).unwrap();
        let e0 = crate::qlinalg::Ket2::basis(0);
        let e1 = crate::qlinalg::Ket2::basis(1);
        let p1 = ProductState::new(e0, e1);
        let p2 = ProductState::new(e1, e0);
        for w in [0.2, 0.35, 0.5, 0.8] {
            let closed = two_term_lift_q(&a_eig, &p1.twin_ket(), &p2.twin_ket(), w, 1e-9).unwrap();
            let expected = 1.0 / (2.0 * (w * (1.0 - w)).sqrt());
            assert!((closed - expected).abs() < 1e-10, "w = {w}");
        }
    }

    #[test]
    fn bell_pseudomixture_is_five_term_with_unit_q() {
        let rho = DensityMatrix::pure(&bell_phi_plus());
        let pm = pseudomix(&rho, &tols()).unwrap();
        assert!((pm.q - 1.0).abs() < 1e-9, "q = {}", pm.q);
        assert_eq!(pm.negative_part.len(), 2);
        assert_eq!(pm.positive_part.len(), 3);
        assert_eq!(pm.cardinality(), 5);
        assert!(!pm.rank4_fallback);
        assert!(pm.reconstruction_residual(rho.op()) < 1e-8);
        assert!(verify_pseudomixture(&rho, &pm, &tols()).all_passed());
    }

    #[test]
    fn pure_family_lift_matches_sine_formula() {
        for a in [0.1, 0.3, 0.7] {
            let rho = DensityMatrix::pure(&canonical_pure(a));
            let pm = pseudomix(&rho, &tols()).unwrap();
            let expected = (2.0 * a).sin();
            assert!(
                (pm.q - expected).abs() < 1e-6,
                "angle {a}: q = {} expected {expected}",
                pm.q
            );
            assert_eq!(pm.negative_part.len(), 2);
            assert_eq!(pm.positive_part.len(), 3);
        }
    }

    #[test]
    fn werner_pseudomixture_uses_single_negative_term() {
        let rho = werner(0.9);
        let pm = pseudomix(&rho, &tols()).unwrap();
        assert_eq!(pm.negative_part.len(), 1);
        assert_eq!(pm.positive_part.len(), 4);
        assert!(!pm.rank4_fallback);
        assert!(pm.q > 0.0);
        assert!(pm.reconstruction_residual(rho.op()) < 1e-8);
        assert!(verify_pseudomixture(&rho, &pm, &tols()).all_passed());
    }

    #[test]
    fn rank_two_entangled_state_gets_rank_three_lift() {
        // 0.2 |00><00| + 0.8 Bell: rank 2, entangled; no in-range candidate
        // can ever be feasible, so the fallback products must serve, and the
        // lifted state lands at rank 3.
        let bell = bell_phi_plus();
        let e00 = Ket4([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let mixed = bell.outer() * 0.8 + e00.outer() * 0.2;
        let rho = DensityMatrix::new(mixed.entries()).unwrap();
        let pm = pseudomix(&rho, &tols()).unwrap();
        assert_eq!(pm.negative_part.len(), 1);
        let lifted = (*rho.op() + pm.negative_part.assemble() * pm.q) * (1.0 / (1.0 + pm.q));
        let lifted_eig = eigh(&lifted).unwrap();
        assert_eq!(numerical_rank(&lifted_eig, tols().rank), 3);
        assert_eq!(pm.positive_part.len(), 3);
        assert!(verify_pseudomixture(&rho, &pm, &tols()).all_passed());
    }

    #[test]
    fn verification_flags_tampered_weight() {
        let rho = DensityMatrix::pure(&bell_phi_plus());
        let mut pm = pseudomix(&rho, &tols()).unwrap();
        pm.positive_part.terms[0].weight += 1e-3;
        let report = verify_pseudomixture(&rho, &pm, &tols());
        assert!(!report.all_passed());
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|ch| !ch.passed)
            .map(|ch| ch.name)
            .collect();
        assert!(failed.contains(&"positive-weight-sum"));
        assert!(failed.contains(&"reconstruction"));
    }

    #[test]
    fn pseudomix_rejects_separable_input() {
        let rho = DensityMatrix::maximally_mixed();
        assert!(matches!(
            pseudomix(&rho, &tols()),
            Err(PseudoError::NotEntangled)
        ));
        assert_eq!(crate::decompose::classify(&rho, &tols()), Verdict::Product);
    }
}
