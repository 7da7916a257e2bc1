//! Separability test and constructive decomposition of separable states
//! into at most four pure product states.
//!
//! The engine repeatedly subtracts a pure product projector with the
//! largest weight that keeps both the state and its partial transpose
//! positive. Each subtraction creates a new exact zero eigenvalue on the
//! limiting side, so the rank pair descends until a rank-2 remainder
//! splits on its plane of support. A rank-(4,4) state first spends one
//! subtraction on a product whose two weight bounds coincide, which makes
//! the rank pair drop to (3,3) in a single step and caps the total term
//! count at four.

use crate::error::DecompError;
use crate::geometry::{
    plane_product_vectors, product_in_both_ranges, range_product, PlaneProductResult,
    ProductState,
};
use crate::bloch::{bloch, ket_from_bloch, slerp};
use crate::qlinalg::{
    eigh, is_product_state, numerical_rank, partial_transpose, pinv_quadratic, range_residual,
    DensityMatrix, Eig4, HermOp4, Ket4,
};
use crate::tol::{self, Tolerances};

/// One weighted product projector of a mixture.
#[derive(Clone, Copy, Debug)]
pub struct MixtureTerm {
    pub weight: f64,
    pub state: ProductState,
}

/// Convex mixture of pure product states.
#[derive(Clone, Debug)]
pub struct LocalMixture {
    pub terms: Vec<MixtureTerm>,
}

impl LocalMixture {
    pub fn new(terms: Vec<MixtureTerm>) -> Self {
        LocalMixture { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    /// The operator sum_i p_i |e_i, f_i><e_i, f_i|.
    pub fn assemble(&self) -> HermOp4 {
        let mut acc = HermOp4::zero();
        for t in &self.terms {
            acc = acc + t.state.projector() * t.weight;
        }
        acc
    }

    /// Partial transpose of the assembled operator, built term-wise from
    /// the conjugate twins (exact by the product structure).
    pub fn assemble_partial_transpose(&self) -> HermOp4 {
        let mut acc = HermOp4::zero();
        for t in &self.terms {
            acc = acc + t.state.twin_ket().outer() * t.weight;
        }
        acc
    }

    /// Frobenius distance between the assembled operator and a target.
    pub fn reconstruction_residual(&self, target: &HermOp4) -> f64 {
        (self.assemble() - *target).frobenius()
    }
}

/// Verdict of the positivity test on the partial transpose.
#[derive(Clone, Copy, Debug)]
pub struct PptReport {
    pub is_ppt: bool,
    pub min_eigenvalue: f64,
    /// Eigenvector of the negative eigenvalue; present iff not PPT.
    pub negative_eigenvector: Option<Ket4>,
}

/// Three-way classification of a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Product,
    Separable,
    Entangled,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Product => write!(f, "product"),
            Verdict::Separable => write!(f, "separable"),
            Verdict::Entangled => write!(f, "entangled"),
        }
    }
}

/// Positivity of the partial transpose, which decides separability for two
/// qubits. The dead band `tol.psd` absorbs eigensolver noise at the
/// boundary.
pub fn is_ppt(rho: &DensityMatrix, tolerances: &Tolerances) -> PptReport {
    let pt = partial_transpose(rho.op());
    let eig = eigh(&pt).expect("partial transpose of a valid state is well conditioned");
    let min = eig.values[0];
    let ok = min >= -tolerances.psd;
    PptReport {
        is_ppt: ok,
        min_eigenvalue: min,
        negative_eigenvector: if ok { None } else { Some(eig.vectors[0]) },
    }
}

/// Product / separable / entangled classification.
pub fn classify(rho: &DensityMatrix, tolerances: &Tolerances) -> Verdict {
    if is_product_state(rho) {
        Verdict::Product
    } else if is_ppt(rho, tolerances).is_ppt {
        Verdict::Separable
    } else {
        Verdict::Entangled
    }
}

fn max_weight_from(eig: &Eig4, v: &Ket4, tolerances: &Tolerances) -> Result<f64, DecompError> {
    let residual = range_residual(eig, v, tolerances.rank);
    if residual > tol::RANGE_RESIDUAL_TOL {
        return Err(DecompError::NotInRange { residual });
    }
    Ok(1.0 / pinv_quadratic(eig, v, tolerances.rank))
}

/// Largest weight s with rho - s |v><v| still positive semidefinite:
/// s = 1 / <v| rho^+ |v> with the pseudo-inverse taken on the range.
/// The subtraction at exactly this weight gains a new zero eigenvalue.
pub fn max_weight(
    rho: &DensityMatrix,
    v: &Ket4,
    tolerances: &Tolerances,
) -> Result<f64, DecompError> {
    max_weight_from(&rho.eig(), &v.normalized(), tolerances)
}

/// Normalized remainder (rho - p |v><v|) / (1 - p).
pub fn subtract(
    rho: &DensityMatrix,
    v: &Ket4,
    p: f64,
    _tolerances: &Tolerances,
) -> Result<DensityMatrix, DecompError> {
    assert!(p > 0.0 && p < 1.0, "subtraction weight must lie in (0, 1)");
    let vn = v.normalized();
    let remainder = (*rho.op() - vn.outer() * p) * (1.0 / (1.0 - p));
    DensityMatrix::new(remainder.entries()).map_err(|e| match e {
        crate::error::ValidationError::NotPositive { min_eigenvalue, .. } => {
            DecompError::BreaksPositivity { min_eigenvalue }
        }
        other => DecompError::Validation(other),
    })
}

fn dominant_product(eig: &Eig4) -> ProductState {
    ProductState::from_ket(&eig.vectors[3])
}

fn conjugate_second_factor(p: ProductState) -> ProductState {
    ProductState { e: p.e, f: p.f.conj() }
}

/// The staged subtraction loop. `first_product` overrides the arbitrary
/// starting product used while both ranks are 4.
fn staged_subtraction(
    rho: &DensityMatrix,
    mut first_product: Option<ProductState>,
    tolerances: &Tolerances,
) -> Result<Vec<MixtureTerm>, DecompError> {
    let mut terms: Vec<MixtureTerm> = Vec::with_capacity(5);
    let mut prefix = 1.0;
    let mut cur = *rho;

    // The rank sum drops by at least one per subtraction, so eight
    // iterations exceed every reachable descent path.
    for _ in 0..8 {
        let eig = cur.eig();
        let r = numerical_rank(&eig, tolerances.rank);
        if r == 1 {
            // Pure and positive under partial transposition: a pure product.
            terms.push(MixtureTerm { weight: prefix, state: dominant_product(&eig) });
            return Ok(terms);
        }
        if r <= 2 {
            for t in decompose_rank2(&cur, tolerances)?.terms {
                terms.push(MixtureTerm { weight: prefix * t.weight, state: t.state });
            }
            return Ok(terms);
        }
        let pt = partial_transpose(cur.op());
        let pt_eig = eigh(&pt).expect("partial transpose stays well conditioned");
        let rb = numerical_rank(&pt_eig, tolerances.rank);

        let v = match (r, rb) {
            (3, 3) => product_in_both_ranges(&cur, tol::RANGE_RESIDUAL_TOL)
                .map_err(DecompError::Geometry)?,
            (3, _) => range_product(&eig.vectors[0]).map_err(DecompError::Geometry)?,
            (_, 3) => conjugate_second_factor(
                range_product(&pt_eig.vectors[0]).map_err(DecompError::Geometry)?,
            ),
            _ => first_product.take().unwrap_or_else(|| dominant_product(&eig)),
        };

        let s = max_weight_from(&eig, &v.ket(), tolerances)?;
        let s_twin = max_weight_from(&pt_eig, &v.twin_ket(), tolerances)?;
        let p = s.min(s_twin);
        if !(p.is_finite() && p > 1e-13 && p < 1.0) {
            return Err(DecompError::Stalled);
        }
        terms.push(MixtureTerm { weight: prefix * p, state: v });
        cur = subtract(&cur, &v.ket(), p, tolerances)?;
        prefix *= 1.0 - p;
    }
    Err(DecompError::Stalled)
}

fn check_reconstruction(
    mixture: &LocalMixture,
    target: &HermOp4,
    tolerances: &Tolerances,
) -> Result<(), DecompError> {
    let sum_dev = (mixture.weight_sum() - 1.0).abs();
    if sum_dev > tol::WEIGHT_SUM_TOL {
        return Err(DecompError::ReconstructionFailed { residual: sum_dev });
    }
    let residual = mixture.reconstruction_residual(target);
    if residual > tolerances.recon {
        return Err(DecompError::ReconstructionFailed { residual });
    }
    Ok(())
}

/// Decomposition guaranteed to exist with at most five terms: one
/// arbitrary product subtraction plus the rank-descent stages. Used as the
/// seed for the equal-weight search; `decompose` is the four-term entry
/// point.
pub fn five_term_decomposition(
    rho: &DensityMatrix,
    tolerances: &Tolerances,
) -> Result<LocalMixture, DecompError> {
    five_term_with_start(rho, None, tolerances)
}

/// Same as `five_term_decomposition` with an explicit starting product
/// (must have positive weight bounds; any product does when both ranks are
/// 4). Different starts yield different valid decompositions of the same
/// state.
pub fn five_term_with_start(
    rho: &DensityMatrix,
    start: Option<ProductState>,
    tolerances: &Tolerances,
) -> Result<LocalMixture, DecompError> {
    let report = is_ppt(rho, tolerances);
    if !report.is_ppt {
        return Err(DecompError::NotSeparable { min_eigenvalue: report.min_eigenvalue });
    }
    let mixture = LocalMixture::new(staged_subtraction(rho, start, tolerances)?);
    check_reconstruction(&mixture, rho.op(), tolerances)?;
    Ok(mixture)
}

/// Product state whose two weight bounds coincide: s(v) = s_twin(v) within
/// 1e-10 relative. Subtracting it drops both ranks at once.
///
/// The seed mixture always contains terms on both sides of g = s - s_twin
/// or a term with g = 0 (the weighted averages of 1/s and 1/s_twin across
/// any decomposition are equal), so the scan either returns a seed term or
/// brackets a sign change and bisects along the connecting great circles
/// of the two local Bloch spheres.
pub fn find_equal_weight_product(
    rho: &DensityMatrix,
    seed: &LocalMixture,
    tolerances: &Tolerances,
) -> Result<ProductState, DecompError> {
    let eig = rho.eig();
    let pt = partial_transpose(rho.op());
    let pt_eig = eigh(&pt).expect("partial transpose stays well conditioned");

    let weights = |p: &ProductState| -> (f64, f64) {
        let s = 1.0 / pinv_quadratic(&eig, &p.ket(), tolerances.rank);
        let s_twin = 1.0 / pinv_quadratic(&pt_eig, &p.twin_ket(), tolerances.rank);
        (s, s_twin)
    };

    let mut best_pos: Option<(f64, ProductState)> = None;
    let mut best_neg: Option<(f64, ProductState)> = None;
    for term in &seed.terms {
        let (s, s_twin) = weights(&term.state);
        let g = s - s_twin;
        if g.abs() <= tol::EQUAL_WEIGHT_REL_TOL * s {
            return Ok(term.state);
        }
        if g > 0.0 && best_pos.as_ref().is_none_or(|(gp, _)| g > *gp) {
            best_pos = Some((g, term.state));
        }
        if g < 0.0 && best_neg.as_ref().is_none_or(|(gn, _)| g < *gn) {
            best_neg = Some((g, term.state));
        }
    }
    let (Some((_, pos)), Some((_, neg))) = (best_pos, best_neg) else {
        return Err(DecompError::NoSignChange);
    };

    let e_pos = bloch(&pos.e);
    let e_neg = bloch(&neg.e);
    let f_pos = bloch(&pos.f);
    let f_neg = bloch(&neg.f);
    let state_at = |t: f64| -> ProductState {
        ProductState::new(
            ket_from_bloch(slerp(e_pos, e_neg, t)),
            ket_from_bloch(slerp(f_pos, f_neg, t)),
        )
    };

    let mut lo = 0.0; // g > 0 side
    let mut hi = 1.0; // g < 0 side
    for _ in 0..tol::EQUAL_WEIGHT_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        let p = state_at(mid);
        let (s, s_twin) = weights(&p);
        let g = s - s_twin;
        if g.abs() <= tol::EQUAL_WEIGHT_BISECT_REL * s {
            return Ok(p);
        }
        if g > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let p = state_at(0.5 * (lo + hi));
    let (s, s_twin) = weights(&p);
    if (s - s_twin).abs() <= tol::EQUAL_WEIGHT_REL_TOL * s {
        Ok(p)
    } else {
        Err(DecompError::Stalled)
    }
}

/// Splits a rank-2 separable state on its plane of support.
pub fn decompose_rank2(
    rho: &DensityMatrix,
    tolerances: &Tolerances,
) -> Result<LocalMixture, DecompError> {
    let eig = rho.eig();
    // Ascending order: the two support eigenvectors sit at indices 2, 3.
    let v_major = eig.vectors[3];
    let v_minor = eig.vectors[2];

    let mixture = match plane_product_vectors(&v_major, &v_minor).map_err(DecompError::Geometry)? {
        PlaneProductResult::AllProduct(_) => {
            // Every vector in the plane is product, so the spectral
            // decomposition is already a product mixture.
            LocalMixture::new(vec![
                MixtureTerm { weight: eig.values[3], state: ProductState::from_ket(&v_major) },
                MixtureTerm { weight: eig.values[2], state: ProductState::from_ket(&v_minor) },
            ])
        }
        PlaneProductResult::ExactlyOne(_) => {
            return Err(DecompError::InconsistentPlane(
                "support plane of a separable rank-2 state holds a single product ray".into(),
            ));
        }
        PlaneProductResult::ExactlyTwo([wa, wb]) => {
            // Least squares for rho = p Pa + (1 - p) Pb on the 16 real
            // entries: p = <rho - Pb, Pa - Pb> / ||Pa - Pb||^2.
            let pa = wa.projector();
            let pb = wb.projector();
            let diff = pa - pb;
            let denom = diff.frobenius_inner(&diff);
            if denom < 1e-20 {
                return Err(DecompError::InconsistentPlane(
                    "product witnesses coincide".into(),
                ));
            }
            let p = (*rho.op() - pb).frobenius_inner(&diff) / denom;
            if !(-1e-10..=1.0 + 1e-10).contains(&p) {
                return Err(DecompError::InconsistentPlane(format!(
                    "mixing weight {p:.3e} outside [0, 1]"
                )));
            }
            let p = p.clamp(1e-12, 1.0 - 1e-12);
            LocalMixture::new(vec![
                MixtureTerm { weight: p, state: wa },
                MixtureTerm { weight: 1.0 - p, state: wb },
            ])
        }
    };
    check_reconstruction(&mixture, rho.op(), tolerances)?;
    Ok(mixture)
}

/// Minimal local decomposition of a separable state: at most
/// max(rank, rank of the partial transpose) <= 4 product terms.
pub fn decompose(
    rho: &DensityMatrix,
    tolerances: &Tolerances,
) -> Result<LocalMixture, DecompError> {
    let report = is_ppt(rho, tolerances);
    if !report.is_ppt {
        return Err(DecompError::NotSeparable { min_eigenvalue: report.min_eigenvalue });
    }

    let eig = rho.eig();
    let r = numerical_rank(&eig, tolerances.rank);
    if r == 1 {
        // A pure PPT state is necessarily a pure product.
        let mixture = LocalMixture::new(vec![MixtureTerm {
            weight: 1.0,
            state: dominant_product(&eig),
        }]);
        check_reconstruction(&mixture, rho.op(), tolerances)?;
        return Ok(mixture);
    }
    let pt = partial_transpose(rho.op());
    let pt_eig = eigh(&pt).expect("partial transpose stays well conditioned");
    let rb = numerical_rank(&pt_eig, tolerances.rank);

    let terms = if r.max(rb) <= 2 {
        decompose_rank2(rho, tolerances)?.terms
    } else if r == 4 && rb == 4 {
        // One equal-weight subtraction sends the rank pair to (3, 3),
        // keeping the total at four terms.
        let seed = five_term_decomposition(rho, tolerances)?;
        let v = find_equal_weight_product(rho, &seed, tolerances)?;
        let s = max_weight_from(&eig, &v.ket(), tolerances)?;
        let s_twin = max_weight_from(&pt_eig, &v.twin_ket(), tolerances)?;
        let p = s.min(s_twin);
        if !(p.is_finite() && p > 1e-13 && p < 1.0) {
            return Err(DecompError::Stalled);
        }
        let remainder = subtract(rho, &v.ket(), p, tolerances)?;
        let mut terms = vec![MixtureTerm { weight: p, state: v }];
        for t in staged_subtraction(&remainder, None, tolerances)? {
            terms.push(MixtureTerm { weight: (1.0 - p) * t.weight, state: t.state });
        }
        terms
    } else {
        staged_subtraction(rho, None, tolerances)?
    };

    let mixture = LocalMixture::new(terms);
    check_reconstruction(&mixture, rho.op(), tolerances)?;
    Ok(mixture)
}
