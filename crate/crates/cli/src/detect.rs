use std::fmt::Write as _;

use posmap_core::choi::{choi_map_test, choi_matrix, partial_transpose};
use posmap_core::linalg::{eig_herm, HermitianMatrix};
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::CliError;
use crate::family::{Family, Grid};

pub const STATE_TOL: f64 = 1e-8;

/// Findings at or above this value are reported as not detecting.
pub const DETECTION_TOL: f64 = -1e-10;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    re: [[f64; 9]; 9],
    #[serde(default)]
    im: [[f64; 9]; 9],
}

/// Reads a state file: `{"re": [[..9]; 9], "im": [[..9]; 9]}` row-major, `im`
/// optional. The matrix must be Hermitian, trace one and PSD to 1e−8.
pub fn parse_state(text: &str) -> Result<HermitianMatrix, CliError> {
    let file: StateFile = serde_json::from_str(text)?;
    for i in 0..9 {
        for j in 0..9 {
            let (re, im) = (file.re[i][j], file.im[i][j]);
            if !re.is_finite() || !im.is_finite() {
                return Err(CliError::Input(format!("entry (row {}, column {}) is not finite", i + 1, j + 1)));
            }
            let dre = (re - file.re[j][i]).abs();
            let dim = (im + file.im[j][i]).abs();
            if dre > STATE_TOL || dim > STATE_TOL {
                return Err(CliError::Input(format!(
                    "not Hermitian: entry (row {}, column {}) is not the conjugate of (row {}, column {})",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    let re: Vec<f64> = file.re.iter().flatten().copied().collect();
    let im: Vec<f64> = file.im.iter().flatten().copied().collect();
    let rho = HermitianMatrix::from_parts_approx(9, re, im, STATE_TOL)?;
    let trace = rho.trace();
    if (trace - 1.0).abs() > STATE_TOL {
        return Err(CliError::Input(format!("trace is {trace}, expected 1")));
    }
    let min = eig_herm(&rho)?.min();
    if min < -STATE_TOL {
        return Err(CliError::Input(format!("not positive semidefinite: smallest eigenvalue {min:e}")));
    }
    Ok(rho)
}

/// Smallest `Tr(C(Ψ)ρ)` over one witness family's default grid.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessFinding {
    pub family: Family,
    pub params: Vec<f64>,
    pub value: f64,
    pub negatives: usize,
    pub scanned: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionReport {
    pub ppt_min_eigenvalue: f64,
    pub choi_map_min_eigenvalue: f64,
    pub bank: Vec<WitnessFinding>,
}

impl DetectionReport {
    pub fn is_ppt(&self) -> bool {
        self.ppt_min_eigenvalue >= -STATE_TOL
    }

    pub fn choi_map_detects(&self) -> bool {
        self.choi_map_min_eigenvalue < DETECTION_TOL
    }
}

fn scan_family(family: Family, rho: &HermitianMatrix) -> WitnessFinding {
    let points: Vec<Vec<f64>> =
        Grid::Axes { axes: family.default_axes() }.points().into_iter().filter(|p| family.in_region(p)).collect();
    let values: Vec<f64> =
        points.par_iter().map(|p| choi_matrix(&family.witness(p)).matrix().hs_inner(rho)).collect();
    let (best, value) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, v)| if v < acc.1 { (k, v) } else { acc });
    WitnessFinding {
        family,
        params: points[best].clone(),
        value,
        negatives: values.iter().filter(|&&v| v < DETECTION_TOL).count(),
        scanned: points.len(),
    }
}

pub fn detect(rho: &HermitianMatrix) -> Result<DetectionReport, CliError> {
    Ok(DetectionReport {
        ppt_min_eigenvalue: eig_herm(&partial_transpose(rho))?.min(),
        choi_map_min_eigenvalue: choi_map_test(rho)?[0],
        bank: [Family::T, Family::Pq, Family::Mn].into_iter().map(|f| scan_family(f, rho)).collect(),
    })
}

fn params_text(params: &[f64]) -> String {
    params.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(", ")
}

pub fn render(report: &DetectionReport) -> String {
    let mut s = String::new();
    let verdict = |neg: bool| if neg { "detected" } else { "not detected" };
    let _ = writeln!(
        s,
        "ppt: {} (min eigenvalue of partial transpose {:e})",
        if report.is_ppt() { "yes" } else { "no" },
        report.ppt_min_eigenvalue
    );
    let _ = writeln!(
        s,
        "choi_map: {} (min eigenvalue of the lifted adjoint Choi map {:e})",
        verdict(report.choi_map_detects()),
        report.choi_map_min_eigenvalue
    );
    for f in &report.bank {
        let _ = writeln!(
            s,
            "witness {}: {} (min Tr(C(Psi) rho) = {:e} at ({}); {} of {} grid points negative)",
            f.family,
            verdict(f.value < DETECTION_TOL),
            f.value,
            params_text(&f.params),
            f.negatives,
            f.scanned
        );
    }
    let best = report.bank.iter().min_by(|a, b| a.value.total_cmp(&b.value));
    match best {
        Some(f) if f.value < DETECTION_TOL => {
            let _ = writeln!(s, "witness_bank: detected by {} at ({}), value {:e}", f.family, params_text(&f.params), f.value);
        }
        _ => {
            let _ = writeln!(s, "witness_bank: not detected");
        }
    }
    s
}
