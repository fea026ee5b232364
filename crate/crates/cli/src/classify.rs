use std::fmt::Write as _;

use posmap_core::choi::{classify, kraus_rank, spectrum_fixture_check};
use posmap_core::qmaps::FamilyParams;

use crate::error::CliError;

pub const KRAUS_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ClassifyFamily {
    T,
    Pq,
    Mn,
    ChoiFamily,
}

pub fn family_params(family: ClassifyFamily, params: &[f64]) -> Result<FamilyParams, CliError> {
    let need = match family {
        ClassifyFamily::T => 1,
        ClassifyFamily::Pq | ClassifyFamily::Mn => 2,
        ClassifyFamily::ChoiFamily => 5,
    };
    if params.len() != need || params.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Input(format!("{family:?} takes {need} finite parameter(s), got {}", params.len())));
    }
    let p = params;
    Ok(match family {
        ClassifyFamily::T => FamilyParams::T { t: p[0] },
        ClassifyFamily::Pq => FamilyParams::Pq { p: p[0], q: p[1] },
        ClassifyFamily::Mn => FamilyParams::Mn { m: p[0], n: p[1] },
        ClassifyFamily::ChoiFamily => FamilyParams::ChoiFamily { r: p[0], r0: p[1], r1: p[2], r2: p[3], c: p[4] },
    })
}

/// `key: value` lines describing one family member.
pub fn report(params: &FamilyParams) -> Result<String, CliError> {
    let map = params.map();
    let class = classify(&map)?;
    let mut s = String::new();
    let _ = writeln!(s, "in_region: {}", params.in_region());
    if let Some((b, c)) = params.mn_derived() {
        let _ = writeln!(s, "b: {b}");
        let _ = writeln!(s, "c: {c}");
    }
    let _ = writeln!(s, "is_cp: {}", class.is_cp);
    let _ = writeln!(s, "is_co_cp: {}", class.is_co_cp);
    let _ = writeln!(s, "min_choi_eigenvalue: {:e}", class.min_choi_eig);
    let _ = writeln!(s, "min_co_choi_eigenvalue: {:e}", class.min_co_choi_eig);
    let _ = writeln!(s, "kraus_rank: {}", kraus_rank(&map, KRAUS_TOL)?);
    let fixture = spectrum_fixture_check(params)?;
    let _ = writeln!(s, "spectrum_fixture: {}", if fixture { "pass" } else { "fail" });
    Ok(s)
}
