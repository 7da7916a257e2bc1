//! Helpers shared by the CLI integration tests: spawn the compiled binary,
//! write minimal state files, and pull numbers out of report lines.
#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use sepmix_core::DensityMatrix;

pub fn sepmix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepmix"))
        .args(args)
        .output()
        .expect("binary launches")
}

pub fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal termination")
}

/// Minimal state file; any float formatting that parses back exactly is
/// acceptable on the read side, canonical formatting only matters on write.
pub fn write_state(path: &Path, rho: &DensityMatrix) {
    let e = rho.op().entries();
    let rows: Vec<Vec<[f64; 2]>> = (0..4)
        .map(|i| (0..4).map(|j| [e[i][j].re, e[i][j].im]).collect())
        .collect();
    let text = serde_json::to_string(&serde_json::json!({ "matrix": rows })).unwrap();
    std::fs::write(path, text).unwrap();
}

/// Value of a `key: number` report line.
pub fn field(report: &str, key: &str) -> f64 {
    let prefix = format!("{key}: ");
    report
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{key}` line in:\n{report}"))
        .trim()
        .parse()
        .unwrap_or_else(|e| panic!("unparseable `{key}` value: {e}"))
}
