use std::io::Write;

use posmap_core::sdp::{build_problem, signature_values, solve_with_status, SdpOptions, SdpStatus};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::family::{Family, Grid};

/// What to do with grid points outside the family's certified region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutsidePolicy {
    /// Leave the point out of the records and list it under `skipped`.
    Skip,
    /// Solve anyway, flag the row with `in_region = false` and warn.
    Warn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Everything that determines the contents of a sweep file. Its hash is
/// written into the output header.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub family: Family,
    /// 1 drops the Choi-map constraint, 2 keeps it.
    pub algorithm: u8,
    pub grid: Grid,
    pub outside: OutsidePolicy,
    pub gap_tol: f64,
    pub max_iter: usize,
    pub mu_shrink: f64,
}

impl SweepConfig {
    pub fn new(family: Family, algorithm: u8, grid: Grid, outside: OutsidePolicy) -> Self {
        let opts = SdpOptions::default();
        Self { family, algorithm, grid, outside, gap_tol: opts.gap_tol, max_iter: opts.max_iter, mu_shrink: opts.mu_shrink }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !matches!(self.algorithm, 1 | 2) {
            return Err(CliError::Input(format!("algorithm must be 1 or 2, got {}", self.algorithm)));
        }
        if !(self.gap_tol > 0.0 && self.gap_tol.is_finite()) {
            return Err(CliError::Input("gap tolerance must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(CliError::Input("iteration limit must be positive".into()));
        }
        if !(self.mu_shrink > 0.0 && self.mu_shrink < 1.0) {
            return Err(CliError::Input("mu shrink factor must lie in (0, 1)".into()));
        }
        self.grid.validate(self.family)
    }

    pub fn options(&self) -> SdpOptions {
        SdpOptions { gap_tol: self.gap_tol, max_iter: self.max_iter, mu_shrink: self.mu_shrink }
    }

    /// SHA-256 of the canonical JSON encoding plus the crate version.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update(b"\n");
        h.update(serde_json::to_vec(self).expect("config serialises"));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub params: Vec<f64>,
    pub in_region: bool,
    pub objective: f64,
    pub status: SdpStatus,
    pub iterations: usize,
    pub gap: f64,
    pub signature: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutput {
    pub config: SweepConfig,
    pub records: Vec<Record>,
    pub skipped: Vec<Vec<f64>>,
}

impl SweepOutput {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status != SdpStatus::Optimal).count()
    }
}

/// Solves every grid point on the rayon pool. Records come back in grid
/// order whatever the scheduling.
pub fn run(config: &SweepConfig) -> Result<SweepOutput, CliError> {
    config.validate()?;
    let family = config.family;
    let (inside, skipped): (Vec<_>, Vec<_>) = config
        .grid
        .points()
        .into_iter()
        .map(|p| (family.in_region(&p), p))
        .partition(|(inside, _)| *inside || config.outside == OutsidePolicy::Warn);
    let skipped = skipped.into_iter().map(|(_, p)| p).collect();
    let opts = config.options();
    let with_choi = config.algorithm == 2;
    let records = inside
        .into_par_iter()
        .map(|(in_region, params)| {
            let problem = build_problem(&family.witness(&params), with_choi)
                .map_err(|e| CliError::Input(format!("{family} point {params:?}: {e}")))?;
            let sol = solve_with_status(&problem, &opts);
            Ok(Record {
                signature: signature_values(family.signature(), &sol.rho),
                params,
                in_region,
                objective: sol.objective_value,
                status: sol.status,
                iterations: sol.iterations,
                gap: sol.duality_gap_estimate,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(SweepOutput { config: config.clone(), records, skipped })
}

pub const CSV_FIXED_COLUMNS: [&str; 7] = ["param1", "param2", "in_region", "objective", "status", "iters", "gap"];

fn csv_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

/// Header comment lines, a column line, then one row per record. Missing
/// values (`param2` for `t`, non-finite numbers) are empty fields.
pub fn write_csv(out: &SweepOutput, w: &mut impl Write) -> std::io::Result<()> {
    let cfg = &out.config;
    writeln!(w, "# posmap sweep config_hash={}", cfg.hash())?;
    writeln!(w, "# config={}", serde_json::to_string(cfg).expect("config serialises"))?;
    writeln!(w, "# records={} skipped_outside_region={}", out.records.len(), out.skipped.len())?;
    let names: Vec<&str> = cfg.family.signature().iter().map(|s| s.0).collect();
    writeln!(w, "{},{}", CSV_FIXED_COLUMNS.join(","), names.join(","))?;
    for r in &out.records {
        let mut fields = vec![
            csv_number(r.params[0]),
            r.params.get(1).map_or(String::new(), |&v| csv_number(v)),
            r.in_region.to_string(),
            csv_number(r.objective),
            r.status.as_str().to_string(),
            r.iterations.to_string(),
            csv_number(r.gap),
        ];
        fields.extend(r.signature.iter().map(|&v| csv_number(v)));
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    param1: f64,
    param2: Option<f64>,
    in_region: bool,
    /// Non-finite values serialise as `null`.
    objective: f64,
    status: &'static str,
    iters: usize,
    gap: f64,
    signature: &'a [f64],
}

#[derive(Serialize)]
struct JsonSweep<'a> {
    format: &'static str,
    version: u32,
    config_hash: String,
    config: &'a SweepConfig,
    signature_fields: Vec<&'static str>,
    records: Vec<JsonRecord<'a>>,
    skipped: &'a [Vec<f64>],
}

pub fn write_json(out: &SweepOutput, w: &mut impl Write) -> std::io::Result<()> {
    let doc = JsonSweep {
        format: "posmap-sweep",
        version: 1,
        config_hash: out.config.hash(),
        config: &out.config,
        signature_fields: out.config.family.signature().iter().map(|s| s.0).collect(),
        records: out
            .records
            .iter()
            .map(|r| JsonRecord {
                param1: r.params[0],
                param2: r.params.get(1).copied(),
                in_region: r.in_region,
                objective: r.objective,
                status: r.status.as_str(),
                iters: r.iterations,
                gap: r.gap,
                signature: &r.signature,
            })
            .collect(),
        skipped: &out.skipped,
    };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}
