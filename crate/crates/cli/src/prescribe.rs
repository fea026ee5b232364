use std::io::Write;

use posmap_core::choi::ZeroPoint;
use posmap_core::prescribe::{solve_family, FamilySolution, PhaseOrbit, ZeroSet};
use posmap_core::qmaps::{make_choi_map, make_psi_mn, make_psi_pq, make_psi_t, QuantumMap};
use posmap_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A named zero set together with the map the theory places in its family.
pub struct NamedSet {
    pub label: String,
    pub zeros: ZeroSet,
    pub reference: QuantumMap,
}

/// `choi`, `t(T)`, `pq(P,Q)` or `mn(M,N)`; `name:args` is accepted too.
pub fn parse_named_set(spec: &str) -> Result<NamedSet, CliError> {
    let spec = spec.trim();
    let (name, args) = match spec.find(['(', ':']) {
        Some(k) => {
            let rest = spec[k + 1..].trim_end_matches(')');
            (&spec[..k], rest)
        }
        None => (spec, ""),
    };
    let values: Vec<f64> = args
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|e| CliError::Input(format!("zero set `{spec}`: `{s}`: {e}"))))
        .collect::<Result<_, _>>()?;
    let want = |n: usize| {
        if values.len() == n && values.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(CliError::Input(format!("zero set `{name}` takes {n} finite parameter(s), got `{args}`")))
        }
    };
    let (zeros, reference) = match name.trim() {
        "choi" => {
            want(0)?;
            (ZeroSet::choi(), make_choi_map())
        }
        "t" => {
            want(1)?;
            (ZeroSet::psi_t(values[0]), make_psi_t(values[0]))
        }
        "pq" => {
            want(2)?;
            (ZeroSet::psi_pq(values[0], values[1]), make_psi_pq(values[0], values[1]))
        }
        "mn" => {
            want(2)?;
            (ZeroSet::psi_mn(values[0], values[1]), make_psi_mn(values[0], values[1]))
        }
        other => return Err(CliError::Input(format!("unknown zero set `{other}` (expected choi, t, pq or mn)"))),
    };
    Ok(NamedSet { label: spec.to_string(), zeros, reference })
}

/// A coordinate is a real number or a `[re, im]` pair.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
enum Coord {
    Real(f64),
    Complex([f64; 2]),
}

impl Coord {
    fn value(self) -> Complex64 {
        match self {
            Coord::Real(r) => Complex64::new(r, 0.0),
            Coord::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    x: [Coord; 3],
    y: [Coord; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ZeroSetFile {
    #[serde(default)]
    points: Vec<PointEntry>,
    /// Adds the orbit `(1, e^{ia}, e^{ib})` paired with itself.
    #[serde(default)]
    diagonal_orbit: bool,
    /// Adds the four canonical zeros `(±1, ±1, ±1)` with one sign flipped or none.
    #[serde(default)]
    canonical_points: bool,
}

/// Reads a zero-set file:
/// `{"points": [{"x": [..3], "y": [..3]}], "diagonal_orbit": bool, "canonical_points": bool}`.
pub fn parse_zero_set_file(text: &str) -> Result<ZeroSet, CliError> {
    if text.trim().is_empty() {
        return Err(posmap_core::Error::EmptyZeroSet.into());
    }
    let file: ZeroSetFile = serde_json::from_str(text)?;
    let mut fixed = Vec::with_capacity(file.points.len());
    for (k, p) in file.points.iter().enumerate() {
        let point = ZeroPoint::new(p.x.map(Coord::value), p.y.map(Coord::value))
            .map_err(|e| CliError::Input(format!("point {}: {e}", k + 1)))?;
        fixed.push(point);
    }
    let orbits = if file.diagonal_orbit { vec![PhaseOrbit::diagonal()] } else { Vec::new() };
    let zeros = ZeroSet::new(fixed, orbits);
    Ok(if file.canonical_points { zeros.with_canonical_points() } else { zeros })
}

#[derive(Serialize)]
struct BasisElement {
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize)]
struct BasisFile<'a> {
    format: &'static str,
    version: u32,
    zero_set: &'a str,
    phase_grid: usize,
    rank_tol: f64,
    dimension: usize,
    coarse_dimension: usize,
    /// Flat index of coefficient `a_ijkl`.
    layout: &'static str,
    basis: Vec<BasisElement>,
}

pub fn write_basis(
    sol: &FamilySolution,
    label: &str,
    coarse_grid: usize,
    rank_tol: f64,
    w: &mut impl Write,
) -> std::io::Result<()> {
    let doc = BasisFile {
        format: "posmap-basis",
        version: 1,
        zero_set: label,
        phase_grid: coarse_grid,
        rank_tol,
        dimension: sol.dimension(),
        coarse_dimension: sol.coarse_dimension,
        layout: "((i*3+j)*3+k)*3+l",
        basis: sol
            .basis
            .iter()
            .map(|b| BasisElement {
                re: b.coefficients().iter().map(|c| c.re).collect(),
                im: b.coefficients().iter().map(|c| c.im).collect(),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut *w, &doc)?;
    writeln!(w)
}

pub fn solve(zeros: &ZeroSet, phase_grid: usize, rank_tol: f64) -> Result<FamilySolution, CliError> {
    Ok(solve_family(zeros, phase_grid, rank_tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use posmap_core::prescribe::DEFAULT_RANK_TOL;

    #[test]
    fn named_sets() {
        let choi = parse_named_set("choi").unwrap();
        let sol = solve(&choi.zeros, 4, DEFAULT_RANK_TOL).unwrap();
        assert_eq!(sol.dimension(), 5);
        assert!(sol.projection_residual(&choi.reference) < 1e-8);
        for spec in ["t(2.0)", "t:2"] {
            let set = parse_named_set(spec).unwrap();
            let sol = solve(&set.zeros, 8, DEFAULT_RANK_TOL).unwrap();
            assert_eq!(sol.dimension(), 1);
            assert!(sol.projection_residual(&set.reference) < 1e-8);
        }
        assert!(parse_named_set("pq(0.5)").is_err());
        assert!(parse_named_set("xyz").is_err());
        assert!(parse_named_set("t(abc)").is_err());
    }

    #[test]
    fn unstable_dimension_maps_to_exit_3() {
        let err = solve(&ZeroSet::choi(), 2, DEFAULT_RANK_TOL).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn zero_set_files() {
        assert!(matches!(parse_zero_set_file(""), Err(CliError::Input(_))));
        let empty = parse_zero_set_file("{}").unwrap();
        assert_eq!(solve(&empty, 4, DEFAULT_RANK_TOL).unwrap_err().exit_code(), 2);
        let text = r#"{"points": [{"x": [1, 0, 0], "y": [0, 1, 0]},
                                  {"x": [0, 1, 0], "y": [0, 0, 1]},
                                  {"x": [0, 0, 1], "y": [1, 0, 0]}],
                       "diagonal_orbit": true, "canonical_points": true}"#;
        let zeros = parse_zero_set_file(text).unwrap();
        assert_eq!(zeros, ZeroSet::choi());
        let complex = parse_zero_set_file(r#"{"points": [{"x": [[1, 0], [0, 1], 0], "y": [1, 0, 0]}]}"#).unwrap();
        assert_eq!(complex.fixed_points[0].x[1], Complex64::new(0.0, 1.0));
        assert!(parse_zero_set_file(r#"{"points": [{"x": [0, 0, 0], "y": [1, 0, 0]}]}"#).is_err());
        assert!(parse_zero_set_file(r#"{"pts": []}"#).is_err());
    }
}
