//! Seedable random state generation.
//!
//! Built on the ChaCha8 stream cipher so corpora are reproducible from a
//! 64-bit seed on every platform: the stream is specified independently of
//! the host, uniform doubles take the top 53 bits of each 64-bit word, and
//! Gaussians come from Box-Muller on that stream. Reimplementations in
//! other languages can reproduce every corpus from the seed alone.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SampleError;
use crate::geometry::ProductState;
use crate::qlinalg::{c, C64, DensityMatrix, HermOp4, Ket2, Ket4};
use crate::decompose::is_ppt;
use crate::tol::Tolerances;

/// Draws exhausted before an entangled state appeared.
const REJECTION_BUDGET: usize = 10_000;

/// Deterministic, platform-portable random stream.
pub struct PortableRng {
    inner: ChaCha8Rng,
    spare_gaussian: Option<f64>,
}

impl PortableRng {
    /// Stream seeded from a 64-bit integer.
    pub fn new(seed: u64) -> Self {
        PortableRng { inner: ChaCha8Rng::seed_from_u64(seed), spare_gaussian: None }
    }

    /// Uniform double in [0, 1) with 53 significant bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller; pairs are cached.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        // 1 - u lies in (0, 1], so the log is finite.
        let r = (-2.0 * (1.0 - self.uniform()).ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.uniform();
        self.spare_gaussian = Some(r * theta.sin());
        r * theta.cos()
    }

    fn complex_gaussian(&mut self) -> C64 {
        c(self.gaussian(), self.gaussian())
    }
}

/// Haar-uniform pure state (normalized complex Gaussian 4-vector).
pub fn random_pure(rng: &mut PortableRng) -> Ket4 {
    let v = Ket4([
        rng.complex_gaussian(),
        rng.complex_gaussian(),
        rng.complex_gaussian(),
        rng.complex_gaussian(),
    ]);
    v.normalized()
}

/// Haar-uniform single-qubit state.
pub fn random_ket2(rng: &mut PortableRng) -> Ket2 {
    Ket2([rng.complex_gaussian(), rng.complex_gaussian()]).normalized()
}

/// Random pure product state.
pub fn random_product(rng: &mut PortableRng) -> ProductState {
    ProductState::new(random_ket2(rng), random_ket2(rng))
}

/// Random mixed state of the requested rank: normalized G G^dagger with G
/// a 4 x rank standard complex Gaussian matrix (Wishart construction).
pub fn random_mixed(rng: &mut PortableRng, rank: usize) -> DensityMatrix {
    let rank = rank.clamp(1, 4);
    let mut acc = HermOp4::zero();
    for _ in 0..rank {
        let col = Ket4([
            rng.complex_gaussian(),
            rng.complex_gaussian(),
            rng.complex_gaussian(),
            rng.complex_gaussian(),
        ]);
        acc = acc + col.outer();
    }
    let acc = acc * (1.0 / acc.trace());
    DensityMatrix::new(acc.entries()).expect("Wishart construction is PSD with unit trace")
}

/// Random separable state: `terms` random products with Dirichlet-uniform
/// weights (normalized unit-rate exponentials).
pub fn random_separable(rng: &mut PortableRng, terms: usize) -> DensityMatrix {
    let terms = terms.max(1);
    let mut weights = Vec::with_capacity(terms);
    for _ in 0..terms {
        weights.push(-(1.0 - rng.uniform()).ln());
    }
    let total: f64 = weights.iter().sum();
    let mut acc = HermOp4::zero();
    for w in weights {
        acc = acc + random_product(rng).projector() * (w / total);
    }
    DensityMatrix::new(acc.entries()).expect("product mixtures are valid states")
}

/// Random entangled mixed state: rejection-sample Wishart states of the
/// given rank until the partial transpose fails positivity.
pub fn random_entangled(
    rng: &mut PortableRng,
    rank: usize,
    tolerances: &Tolerances,
) -> Result<DensityMatrix, SampleError> {
    for _ in 0..REJECTION_BUDGET {
        let rho = random_mixed(rng, rank);
        if !is_ppt(&rho, tolerances).is_ppt {
            return Ok(rho);
        }
    }
    Err(SampleError::RejectionBudget { budget: REJECTION_BUDGET })
}

/// Random entangled pure state: rejection-sample Haar vectors until the
/// smaller Schmidt coefficient is clearly nonzero.
pub fn random_entangled_pure(rng: &mut PortableRng) -> Result<Ket4, SampleError> {
    for _ in 0..REJECTION_BUDGET {
        let psi = random_pure(rng);
        if crate::qlinalg::reshape_det(&psi).norm() > 1e-3 {
            return Ok(psi);
        }
    }
    Err(SampleError::RejectionBudget { budget: REJECTION_BUDGET })
}
