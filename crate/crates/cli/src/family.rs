use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use posmap_core::qmaps::{in_region_a, in_region_r, make_psi_mn, make_psi_pq, make_psi_t_unital, QuantumMap};
use posmap_core::sdp::{Signature, MN_SIGNATURE, PQ_SIGNATURE, T_SIGNATURE};
use serde::Serialize;

use crate::error::CliError;

/// Families that can be swept. The objective for `t` is the unital
/// normalisation; `pq` and `mn` use the raw maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    T,
    Pq,
    Mn,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::T => "t",
            Family::Pq => "pq",
            Family::Mn => "mn",
        }
    }

    pub fn dims(self) -> usize {
        match self {
            Family::T => 1,
            _ => 2,
        }
    }

    pub fn in_region(self, x: &[f64]) -> bool {
        match self {
            Family::T => x[0].is_finite(),
            Family::Pq => in_region_r(x[0], x[1]),
            Family::Mn => in_region_a(x[0], x[1]),
        }
    }

    pub fn witness(self, x: &[f64]) -> QuantumMap {
        match self {
            Family::T => make_psi_t_unital(x[0]),
            Family::Pq => make_psi_pq(x[0], x[1]),
            Family::Mn => make_psi_mn(x[0], x[1]),
        }
    }

    pub fn signature(self) -> Signature {
        match self {
            Family::T => T_SIGNATURE,
            Family::Pq => PQ_SIGNATURE,
            Family::Mn => MN_SIGNATURE,
        }
    }

    /// 81 points on `[−10, 10]`; 60×35 cell centres over `(0, 1/√2)×(0, √2)`;
    /// 80×80 over `[−1, 1]²`.
    pub fn default_axes(self) -> Vec<Axis> {
        match self {
            Family::T => vec![Axis { lo: -10.0, hi: 10.0, count: 81, centered: false }],
            Family::Pq => vec![
                Axis { lo: 0.0, hi: FRAC_1_SQRT_2, count: 60, centered: true },
                Axis { lo: 0.0, hi: SQRT_2, count: 35, centered: true },
            ],
            Family::Mn => vec![
                Axis { lo: -1.0, hi: 1.0, count: 80, centered: false },
                Axis { lo: -1.0, hi: 1.0, count: 80, centered: false },
            ],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One grid axis. `lo:hi:n` is `n` equispaced points including both ends;
/// `lo:hi:n:centered` takes the centres of `n` equal cells instead, so open
/// intervals can be covered.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub centered: bool,
}

impl Axis {
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        if self.centered {
            let h = (self.hi - self.lo) / n as f64;
            (0..n).map(|i| self.lo + (i as f64 + 0.5) * h).collect()
        } else if n == 1 {
            vec![self.lo]
        } else {
            let h = (self.hi - self.lo) / (n - 1) as f64;
            (0..n).map(|i| if i + 1 == n { self.hi } else { self.lo + i as f64 * h }).collect()
        }
    }
}

impl FromStr for Axis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let centered = match parts.get(3) {
            None => false,
            Some(&"centered") | Some(&"c") => true,
            Some(other) => return Err(format!("unknown axis flag `{other}` (expected `centered`)")),
        };
        if parts.len() < 3 || parts.len() > 4 {
            return Err(format!("axis `{s}` must look like lo:hi:n or lo:hi:n:centered"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("axis `{s}`: `{t}`: {e}"));
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let count: usize = parts[2].trim().parse().map_err(|e| format!("axis `{s}`: count: {e}"))?;
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(format!("axis `{s}`: need finite lo <= hi"));
        }
        if count == 0 {
            return Err(format!("axis `{s}`: count must be positive"));
        }
        Ok(Axis { lo, hi, count, centered })
    }
}

/// Grid points, either a Cartesian product of axes (first axis outermost) or
/// an explicit list.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Grid {
    Axes { axes: Vec<Axis> },
    Points { points: Vec<Vec<f64>> },
}

impl Grid {
    pub fn points(&self) -> Vec<Vec<f64>> {
        match self {
            Grid::Points { points } => points.clone(),
            Grid::Axes { axes } => {
                let mut out: Vec<Vec<f64>> = vec![Vec::new()];
                for axis in axes {
                    let values = axis.points();
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            values.iter().map(move |&v| {
                                let mut p = prefix.clone();
                                p.push(v);
                                p
                            })
                        })
                        .collect();
                }
                out
            }
        }
    }

    pub fn validate(&self, family: Family) -> Result<(), CliError> {
        let dims = match self {
            Grid::Axes { axes } => {
                if axes.len() != family.dims() {
                    return Err(CliError::Input(format!(
                        "family {family} needs {} grid axes, got {}",
                        family.dims(),
                        axes.len()
                    )));
                }
                return Ok(());
            }
            Grid::Points { points } => points,
        };
        if dims.is_empty() {
            return Err(CliError::Input("point list is empty".into()));
        }
        for (k, p) in dims.iter().enumerate() {
            if p.len() != family.dims() {
                return Err(CliError::Input(format!(
                    "point {} has {} coordinates, family {family} needs {}",
                    k + 1,
                    p.len(),
                    family.dims()
                )));
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(CliError::Input(format!("point {} is not finite", k + 1)));
            }
        }
        Ok(())
    }
}

/// Parses `a,b;c,d;...` (or `a;b;...` for one-parameter families).
pub fn parse_point_list(s: &str) -> Result<Vec<Vec<f64>>, CliError> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .enumerate()
        .map(|(k, p)| {
            p.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|e| CliError::Input(format!("point {} (`{p}`): `{}`: {e}", k + 1, v.trim())))
                })
                .collect()
        })
        .collect()
}
