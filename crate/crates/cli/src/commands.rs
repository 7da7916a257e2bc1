//! Implementations of the five subcommands. Each returns `Ok(())` on
//! success; failures carry the exit-code class in [`CliError`].

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sepmix_core::qlinalg::{index_of_correlation, DensityMatrix};
use sepmix_core::sample::{
    random_entangled, random_mixed, random_product, random_pure, random_separable, PortableRng,
};
use sepmix_core::{
    classify, decompose, is_ppt, pseudomix, verify_local_mixture, verify_pseudomixture,
    werner_scan, LocalMixture, Pseudomixture, Tolerances, Verdict,
};

use crate::format::{fmt_f64, Certificate, CertificateData, StateFile, CERTIFICATE_FORMAT};

/// Failure classes, one per nonzero exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: a certificate failed verification.
    VerificationFailed,
    /// Exit 2: unreadable, unparseable, or invalid input.
    Parse(String),
    /// Exit 3: the numerical pipeline faulted on valid input.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Parse(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::VerificationFailed => write!(f, "verification failed"),
            CliError::Parse(msg) => write!(f, "invalid input: {msg}"),
            CliError::Internal(msg) => write!(f, "numerical fault: {msg}"),
        }
    }
}

fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let sf: StateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    sf.to_density()
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_check(
    file: &Path,
    output: Option<&PathBuf>,
    tolerances: &Tolerances,
) -> Result<(), CliError> {
    let rho = read_state(file)?;
    let verdict = classify(&rho, tolerances);
    let report = is_ppt(&rho, tolerances);
    let ic = index_of_correlation(&rho);

    println!("verdict: {verdict}");
    println!("min_pt_eigenvalue: {}", fmt_f64(report.min_eigenvalue));
    println!("index_of_correlation: {}", fmt_f64(ic));

    if output.is_some() {
        let cert = CertificateData {
            verdict: verdict.to_string(),
            tolerances: *tolerances,
            is_ppt: report.is_ppt,
            min_pt_eigenvalue: report.min_eigenvalue,
            mixture: None,
            pseudomixture: None,
            reconstruction: None,
        };
        emit(&cert.to_canonical_json(), output)?;
    }
    Ok(())
}

pub fn cmd_decompose(
    file: &Path,
    output: Option<&PathBuf>,
    tolerances: &Tolerances,
) -> Result<(), CliError> {
    let rho = read_state(file)?;
    let verdict = classify(&rho, tolerances);
    let report = is_ppt(&rho, tolerances);

    let (mixture, pm): (Option<LocalMixture>, Option<Pseudomixture>) = match verdict {
        Verdict::Entangled => {
            let pm = pseudomix(&rho, tolerances).map_err(|e| CliError::Internal(e.to_string()))?;
            (None, Some(pm))
        }
        _ => {
            let m = decompose(&rho, tolerances).map_err(|e| CliError::Internal(e.to_string()))?;
            (Some(m), None)
        }
    };

    let reconstruction = match (&mixture, &pm) {
        (Some(m), _) => m.reconstruction_residual(rho.op()),
        (_, Some(p)) => (p.assemble() - *rho.op()).frobenius(),
        _ => unreachable!("one branch always fills"),
    };
    let summary = match (&mixture, &pm) {
        (Some(m), _) => format!("{verdict}: {} product terms", m.len()),
        (_, Some(p)) => format!(
            "{verdict}: q = {}, cardinality {} ({} + {})",
            fmt_f64(p.q),
            p.cardinality(),
            p.positive_part.len(),
            p.negative_part.len()
        ),
        _ => unreachable!(),
    };

    let cert = CertificateData {
        verdict: verdict.to_string(),
        tolerances: *tolerances,
        is_ppt: report.is_ppt,
        min_pt_eigenvalue: report.min_eigenvalue,
        mixture,
        pseudomixture: pm,
        reconstruction: Some(reconstruction),
    };
    emit(&cert.to_canonical_json(), output)?;
    if let Some(path) = output {
        println!("{summary}; certificate written to {}", path.display());
    }
    Ok(())
}

pub fn cmd_verify(
    state_path: &Path,
    cert_path: &Path,
    tol_override: Option<Tolerances>,
) -> Result<(), CliError> {
    let rho = read_state(state_path)?;
    let text = fs::read_to_string(cert_path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", cert_path.display())))?;
    let cert: Certificate = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", cert_path.display())))?;
    if cert.format != CERTIFICATE_FORMAT {
        return Err(CliError::Parse(format!(
            "{}: not a certificate (format {})",
            cert_path.display(),
            cert.format
        )));
    }
    let tolerances = tol_override.unwrap_or_else(|| cert.tolerances.to_tolerances());

    // Checks: (name, passed, measured, bound).
    let mut checks: Vec<(String, bool, f64, f64)> = Vec::new();

    let fresh_verdict = classify(&rho, &tolerances).to_string();
    checks.push((
        "verdict-matches".into(),
        fresh_verdict == cert.verdict,
        0.0,
        0.0,
    ));

    let report = is_ppt(&rho, &tolerances);
    let ppt_dev = (report.min_eigenvalue - cert.ppt.min_pt_eigenvalue).abs();
    checks.push(("stated-pt-eigenvalue".into(), ppt_dev <= 1e-9, ppt_dev, 1e-9));
    checks.push((
        "stated-ppt-flag".into(),
        report.is_ppt == cert.ppt.is_ppt,
        0.0,
        0.0,
    ));

    let mut recomputed_residual: Option<f64> = None;
    if let Some(terms) = &cert.mixture {
        let mixture = LocalMixture::new(terms.iter().map(|t| t.to_term()).collect());
        recomputed_residual = Some(mixture.reconstruction_residual(rho.op()));
        let inner = verify_local_mixture(&rho, &mixture, &tolerances);
        for item in inner.checks {
            checks.push((item.name.to_string(), item.passed, item.measured, item.bound));
        }
    }
    if let Some(pj) = &cert.pseudomixture {
        let pm = Pseudomixture {
            q: pj.q,
            positive_part: LocalMixture::new(
                pj.positive_part.iter().map(|t| t.to_term()).collect(),
            ),
            negative_part: LocalMixture::new(
                pj.negative_part.iter().map(|t| t.to_term()).collect(),
            ),
            rank4_fallback: pj.rank4_fallback,
        };
        recomputed_residual = Some((pm.assemble() - *rho.op()).frobenius());
        let inner = verify_pseudomixture(&rho, &pm, &tolerances);
        for item in inner.checks {
            checks.push((item.name.to_string(), item.passed, item.measured, item.bound));
        }
    }

    // The stated cardinalities must match the embedded term counts.
    if let Some(card) = &cert.cardinality {
        let counted = cert.mixture.as_ref().map(|m| m.len()).unwrap_or(0)
            + cert
                .pseudomixture
                .as_ref()
                .map(|p| p.positive_part.len() + p.negative_part.len())
                .unwrap_or(0);
        checks.push(("stated-cardinality".into(), card.total == counted, counted as f64, card.total as f64));
        if let (Some(n_plus), Some(pj)) = (card.n_plus, &cert.pseudomixture) {
            checks.push((
                "stated-n-plus".into(),
                n_plus == pj.positive_part.len(),
                pj.positive_part.len() as f64,
                n_plus as f64,
            ));
        }
        if let (Some(n_minus), Some(pj)) = (card.n_minus, &cert.pseudomixture) {
            checks.push((
                "stated-n-minus".into(),
                n_minus == pj.negative_part.len(),
                pj.negative_part.len() as f64,
                n_minus as f64,
            ));
        }
    }

    // An independent reader must land within twice the stated residual
    // (or deep inside the noise floor).
    if let (Some(stated), Some(recomputed)) = (&cert.residuals, recomputed_residual) {
        let bound = (2.0 * stated.reconstruction).max(1e-14);
        checks.push((
            "stated-residual".into(),
            recomputed <= bound,
            recomputed,
            bound,
        ));
    }

    println!("certificate generator: {}", cert.generator);
    let mut all = true;
    let mut table = String::new();
    for (name, passed, measured, bound) in &checks {
        all &= passed;
        let _ = writeln!(
            table,
            "{}\t{name}\t{}\t{}",
            if *passed { "PASS" } else { "FAIL" },
            fmt_f64(*measured),
            fmt_f64(*bound)
        );
    }
    print!("{table}");
    if all {
        println!("certificate verified: {} checks passed", checks.len());
        Ok(())
    } else {
        println!("certificate REJECTED");
        Err(CliError::VerificationFailed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RandomKind {
    Pure,
    Mixed,
    Separable,
    Entangled,
    Product,
}

pub fn cmd_random(
    kind: RandomKind,
    rank: Option<usize>,
    seed: u64,
    output: Option<&PathBuf>,
    tolerances: &Tolerances,
) -> Result<(), CliError> {
    let mut rng = PortableRng::new(seed);
    let rank_value = rank.unwrap_or(4).clamp(1, 4);
    let (rho, label) = match kind {
        RandomKind::Pure => (
            DensityMatrix::pure(&random_pure(&mut rng)),
            "pure".to_string(),
        ),
        RandomKind::Mixed => (
            random_mixed(&mut rng, rank_value),
            format!("mixed rank={rank_value}"),
        ),
        RandomKind::Separable => (
            random_separable(&mut rng, rank_value),
            format!("separable terms={rank_value}"),
        ),
        RandomKind::Entangled => (
            random_entangled(&mut rng, rank_value, tolerances)
                .map_err(|e| CliError::Internal(e.to_string()))?,
            format!("entangled rank={rank_value}"),
        ),
        RandomKind::Product => (
            DensityMatrix::pure(&random_product(&mut rng).ket()),
            "product".to_string(),
        ),
    };
    let sf = StateFile::from_density(&rho, Some(label), Some(seed));
    emit(&sf.to_canonical_json(), output)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ScanFamily {
    Werner,
}

pub fn cmd_scan(
    family: ScanFamily,
    grid: usize,
    output: Option<&PathBuf>,
    tolerances: &Tolerances,
) -> Result<(), CliError> {
    if grid < 2 {
        return Err(CliError::Parse("grid must be at least 2".into()));
    }
    let ScanFamily::Werner = family;
    let mut table = String::from("p\tverdict\tmin_pt_eigenvalue\tq\tcardinality\n");
    for point in werner_scan(grid, tolerances) {
        let verdict = if point.is_ppt { "separable" } else { "entangled" };
        let q = point.q.map_or_else(|| "-".to_string(), fmt_f64);
        let _ = writeln!(
            table,
            "{}\t{verdict}\t{}\t{q}\t{}",
            fmt_f64(point.p),
            fmt_f64(point.min_pt_eigenvalue),
            point.cardinality
        );
    }
    emit(&table, output)
}
