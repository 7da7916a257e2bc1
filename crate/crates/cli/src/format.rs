//! File formats: density-matrix state files and result certificates.
//!
//! Both are JSON with complex numbers as `[re, im]` pairs. Writing is
//! canonical: fixed layout, two-space indent, every float printed with 17
//! significant digits (`{:.16e}`), `.` as the decimal separator regardless
//! of locale. Canonical output survives a parse/write round trip
//! byte-identically, which is what makes fixed-seed corpora reproducible.

use serde::Deserialize;
use sepmix_core::qlinalg::{C64, DensityMatrix, Ket2};
use sepmix_core::{LocalMixture, MixtureTerm, ProductState, Pseudomixture, Tolerances};

/// 17 significant digits, enough to reproduce any f64 exactly on parse.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_pair(z: C64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

/// A density matrix on disk: 4x4 complex entries, row-major over the basis
/// |00>, |01>, |10>, |11>, plus optional provenance metadata.
#[derive(Clone, Debug, Deserialize)]
pub struct StateFile {
    pub matrix: [[[f64; 2]; 4]; 4],
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix, label: Option<String>, seed: Option<u64>) -> Self {
        let e = rho.op().entries();
        let mut matrix = [[[0.0; 2]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                matrix[i][j] = [e[i][j].re, e[i][j].im];
            }
        }
        StateFile { matrix, label, seed }
    }

    pub fn to_density(&self) -> Result<DensityMatrix, String> {
        let mut e = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                e[i][j] = C64::new(self.matrix[i][j][0], self.matrix[i][j][1]);
            }
        }
        DensityMatrix::new(e).map_err(|err| format!("not a valid density matrix: {err}"))
    }

    /// Canonical JSON serialization.
    pub fn to_canonical_json(&self) -> String {
        let mut out = String::from("{\n  \"matrix\": [\n");
        for (i, row) in self.matrix.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .map(|p| format!("[{}, {}]", fmt_f64(p[0]), fmt_f64(p[1])))
                .collect();
            let comma = if i + 1 < 4 { "," } else { "" };
            out.push_str(&format!("    [{}]{comma}\n", cells.join(", ")));
        }
        out.push_str("  ]");
        if let Some(label) = &self.label {
            out.push_str(&format!(",\n  \"label\": {}", json_string(label)));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!(",\n  \"seed\": {seed}"));
        }
        out.push_str("\n}\n");
        out
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// One pure product term: weight and the two local factors.
#[derive(Clone, Debug, Deserialize)]
pub struct TermJson {
    pub weight: f64,
    pub e: [[f64; 2]; 2],
    pub f: [[f64; 2]; 2],
}

fn ket2_from_pairs(p: &[[f64; 2]; 2]) -> Ket2 {
    Ket2([C64::new(p[0][0], p[0][1]), C64::new(p[1][0], p[1][1])])
}

impl TermJson {
    /// Rebuild without renormalizing: verification must judge the stored
    /// factors, not repaired ones.
    pub fn to_term(&self) -> MixtureTerm {
        MixtureTerm {
            weight: self.weight,
            state: ProductState {
                e: ket2_from_pairs(&self.e),
                f: ket2_from_pairs(&self.f),
            },
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct PseudoJson {
    pub q: f64,
    pub rank4_fallback: bool,
    pub positive_part: Vec<TermJson>,
    pub negative_part: Vec<TermJson>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TolerancesJson {
    pub rank: f64,
    pub psd: f64,
    pub recon: f64,
}

impl TolerancesJson {
    pub fn to_tolerances(&self) -> Tolerances {
        Tolerances { rank: self.rank, psd: self.psd, recon: self.recon }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct PptJson {
    pub is_ppt: bool,
    pub min_pt_eigenvalue: f64,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CardinalityJson {
    pub total: usize,
    #[serde(default)]
    pub n_plus: Option<usize>,
    #[serde(default)]
    pub n_minus: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ResidualsJson {
    pub reconstruction: f64,
}

/// The re-checkable result of `check` or `decompose`: verdict, the PPT
/// evidence, the decomposition when one was computed, and the tolerances it
/// was computed under, so verification is self-contained.
#[derive(Clone, Debug, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub generator: String,
    pub verdict: String,
    pub tolerances: TolerancesJson,
    pub ppt: PptJson,
    #[serde(default)]
    pub mixture: Option<Vec<TermJson>>,
    #[serde(default)]
    pub pseudomixture: Option<PseudoJson>,
    #[serde(default)]
    pub cardinality: Option<CardinalityJson>,
    #[serde(default)]
    pub residuals: Option<ResidualsJson>,
}

pub const CERTIFICATE_FORMAT: &str = "sepmix-certificate";

pub fn generator_id() -> String {
    format!("sepmix {}", env!("CARGO_PKG_VERSION"))
}

/// Canonical certificate builder used by both `check` and `decompose`.
pub struct CertificateData {
    pub verdict: String,
    pub tolerances: Tolerances,
    pub is_ppt: bool,
    pub min_pt_eigenvalue: f64,
    pub mixture: Option<LocalMixture>,
    pub pseudomixture: Option<Pseudomixture>,
    pub reconstruction: Option<f64>,
}

fn terms_to_json(terms: &[MixtureTerm], indent: &str, out: &mut String) {
    out.push_str("[\n");
    for (i, t) in terms.iter().enumerate() {
        let comma = if i + 1 < terms.len() { "," } else { "" };
        out.push_str(&format!(
            "{indent}  {{\"weight\": {}, \"e\": [{}, {}], \"f\": [{}, {}]}}{comma}\n",
            fmt_f64(t.weight),
            fmt_pair(t.state.e.0[0]),
            fmt_pair(t.state.e.0[1]),
            fmt_pair(t.state.f.0[0]),
            fmt_pair(t.state.f.0[1]),
        ));
    }
    out.push_str(&format!("{indent}]"));
}

impl CertificateData {
    pub fn to_canonical_json(&self) -> String {
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"format\": {},\n", json_string(CERTIFICATE_FORMAT)));
        out.push_str(&format!("  \"generator\": {},\n", json_string(&generator_id())));
        out.push_str(&format!("  \"verdict\": {},\n", json_string(&self.verdict)));
        out.push_str(&format!(
            "  \"tolerances\": {{\"rank\": {}, \"psd\": {}, \"recon\": {}}},\n",
            fmt_f64(self.tolerances.rank),
            fmt_f64(self.tolerances.psd),
            fmt_f64(self.tolerances.recon),
        ));
        out.push_str(&format!(
            "  \"ppt\": {{\"is_ppt\": {}, \"min_pt_eigenvalue\": {}}}",
            self.is_ppt,
            fmt_f64(self.min_pt_eigenvalue),
        ));
        if let Some(mixture) = &self.mixture {
            out.push_str(",\n  \"mixture\": ");
            terms_to_json(&mixture.terms, "  ", &mut out);
            out.push_str(&format!(
                ",\n  \"cardinality\": {{\"total\": {}}}",
                mixture.len()
            ));
        }
        if let Some(pm) = &self.pseudomixture {
            out.push_str(&format!(
                ",\n  \"pseudomixture\": {{\n    \"q\": {},\n    \"rank4_fallback\": {},\n    \"positive_part\": ",
                fmt_f64(pm.q),
                pm.rank4_fallback,
            ));
            terms_to_json(&pm.positive_part.terms, "    ", &mut out);
            out.push_str(",\n    \"negative_part\": ");
            terms_to_json(&pm.negative_part.terms, "    ", &mut out);
            out.push_str("\n  }");
            out.push_str(&format!(
                ",\n  \"cardinality\": {{\"total\": {}, \"n_plus\": {}, \"n_minus\": {}}}",
                pm.cardinality(),
                pm.positive_part.len(),
                pm.negative_part.len(),
            ));
        }
        if let Some(r) = self.reconstruction {
            out.push_str(&format!(
                ",\n  \"residuals\": {{\"reconstruction\": {}}}",
                fmt_f64(r)
            ));
        }
        out.push_str("\n}\n");
        out
    }
}
