//! Batch drivers over many states, parallel when the `parallel` feature is
//! enabled (the default) and sequential otherwise. Both paths produce
//! identical results in identical order; the feature only changes scheduling.

use crate::decompose::{decompose, is_ppt, LocalMixture, Verdict};
use crate::error::DecompError;
use crate::pseudomix::{pseudomix, Pseudomixture};
use crate::qlinalg::DensityMatrix;
use crate::states::werner;
use crate::tol::Tolerances;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Separable decomposition of every state, sequentially.
pub fn decompose_batch_seq(
    states: &[DensityMatrix],
    tolerances: &Tolerances,
) -> Vec<Result<LocalMixture, DecompError>> {
    states.iter().map(|rho| decompose(rho, tolerances)).collect()
}

/// Separable decomposition of every state, in parallel when available.
#[cfg(feature = "parallel")]
pub fn decompose_batch(
    states: &[DensityMatrix],
    tolerances: &Tolerances,
) -> Vec<Result<LocalMixture, DecompError>> {
    states.par_iter().map(|rho| decompose(rho, tolerances)).collect()
}

/// Separable decomposition of every state, in parallel when available.
#[cfg(not(feature = "parallel"))]
pub fn decompose_batch(
    states: &[DensityMatrix],
    tolerances: &Tolerances,
) -> Vec<Result<LocalMixture, DecompError>> {
    decompose_batch_seq(states, tolerances)
}

/// Pseudomixture of every state, sequentially.
pub fn pseudomix_batch_seq(
    states: &[DensityMatrix],
    tolerances: &Tolerances,
) -> Vec<Result<Pseudomixture, crate::error::PseudoError>> {
    states.iter().map(|rho| pseudomix(rho, tolerances)).collect()
}

/// Pseudomixture of every state, in parallel when available.
#[cfg(feature = "parallel")]
pub fn pseudomix_batch(
    states: &[DensityMatrix],
    tolerances: &Tolerances,
) -> Vec<Result<Pseudomixture, crate::error::PseudoError>> {
    states.par_iter().map(|rho| pseudomix(rho, tolerances)).collect()
}

/// Pseudomixture of every state, in parallel when available.
#[cfg(not(feature = "parallel"))]
pub fn pseudomix_batch(
    states: &[DensityMatrix],
    tolerances: &Tolerances,
) -> Vec<Result<Pseudomixture, crate::error::PseudoError>> {
    pseudomix_batch_seq(states, tolerances)
}

/// One row of a parameter sweep along the isotropic-noise family.
#[derive(Clone, Debug)]
pub struct WernerPoint {
    /// Mixing parameter in [0, 1].
    pub p: f64,
    /// Whether the state stays positive under partial transposition.
    pub is_ppt: bool,
    /// Smallest eigenvalue after partial transposition.
    pub min_pt_eigenvalue: f64,
    /// Minimal pseudomixture weight; present only on the entangled side.
    pub q: Option<f64>,
    /// Total number of pure product terms in the emitted decomposition.
    pub cardinality: usize,
}

fn werner_point(p: f64, tolerances: &Tolerances) -> WernerPoint {
    let rho = werner(p);
    let report = is_ppt(&rho, tolerances);
    if report.is_ppt {
        let cardinality = decompose(&rho, tolerances).map(|m| m.len()).unwrap_or(0);
        WernerPoint {
            p,
            is_ppt: true,
            min_pt_eigenvalue: report.min_eigenvalue,
            q: None,
            cardinality,
        }
    } else {
        let (q, cardinality) = match pseudomix(&rho, tolerances) {
            Ok(pm) => (Some(pm.q), pm.cardinality()),
            Err(_) => (None, 0),
        };
        WernerPoint {
            p,
            is_ppt: false,
            min_pt_eigenvalue: report.min_eigenvalue,
            q,
            cardinality,
        }
    }
}

/// Sweep the isotropic-noise family over `steps` evenly spaced mixing
/// parameters from 0 to 1 inclusive, decomposing each point.
pub fn werner_scan(steps: usize, tolerances: &Tolerances) -> Vec<WernerPoint> {
    let ps: Vec<f64> = (0..steps.max(2))
        .map(|i| i as f64 / (steps.max(2) - 1) as f64)
        .collect();

    #[cfg(feature = "parallel")]
    {
        ps.par_iter().map(|&p| werner_point(p, tolerances)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ps.iter().map(|&p| werner_point(p, tolerances)).collect()
    }
}

/// Classify every state (product / separable / entangled).
pub fn classify_batch(states: &[DensityMatrix], tolerances: &Tolerances) -> Vec<Verdict> {
    #[cfg(feature = "parallel")]
    {
        states
            .par_iter()
            .map(|rho| crate::decompose::classify(rho, tolerances))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        states
            .iter()
            .map(|rho| crate::decompose::classify(rho, tolerances))
            .collect()
    }
}
