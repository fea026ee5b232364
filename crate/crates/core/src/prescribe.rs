//! Constructing maps by prescribing zeros of the biquadratic form.
//!
//! A zero `(x, y)` of `p_Ψ` for a positive `Ψ` forces `Ψ(|x⟩⟨x|)|y⟩ = 0` and
//! `Ψ†(|y⟩⟨y|)|x⟩ = 0`. Both are linear in the coefficients `a_ijkl`, so a set
//! of zeros cuts out a linear family. Unknowns are the 162 reals
//! `(Re a_0, Im a_0, Re a_1, …)` in tensor order.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::choi::ZeroPoint;
use crate::linalg::{nullspace, RealMatrix};
use crate::qmaps::{idx, QuantumMap};
use crate::{Error, Result};

/// Default relative singular-value cutoff for solution families.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `coeff · exp(i (e₀ φ₀ + e₁ φ₁))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitCoord {
    pub coeff: Complex64,
    pub exponents: [i32; 2],
}

impl OrbitCoord {
    pub const fn fixed(coeff: Complex64) -> Self {
        Self { coeff, exponents: [0, 0] }
    }

    pub const fn phase(coeff: f64, exponents: [i32; 2]) -> Self {
        Self { coeff: Complex64::new(coeff, 0.0), exponents }
    }

    fn eval(&self, phases: [f64; 2]) -> Complex64 {
        let angle = self.exponents[0] as f64 * phases[0] + self.exponents[1] as f64 * phases[1];
        self.coeff * Complex64::from_polar(1.0, angle)
    }
}

/// A family of zero pairs parameterised by one or two phases.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseOrbit {
    pub x: [OrbitCoord; 3],
    pub y: [OrbitCoord; 3],
    /// Number of free phases (1 or 2).
    pub phases: usize,
}

impl PhaseOrbit {
    /// `(1, e^{iφ₀}, e^{iφ₁}; same)`: the diagonal torus orbit up to a global phase.
    pub fn diagonal() -> Self {
        let c = [OrbitCoord::fixed(ONE), OrbitCoord::phase(1.0, [1, 0]), OrbitCoord::phase(1.0, [0, 1])];
        Self { x: c, y: c, phases: 2 }
    }

    /// Concrete points on a `grid`-per-phase uniform grid of `[0, 2π)`.
    pub fn sample(&self, grid: usize) -> Vec<ZeroPoint> {
        let step = TAU / grid as f64;
        let count = if self.phases == 2 { grid * grid } else { grid };
        (0..count)
            .map(|n| {
                let phases = [(n % grid) as f64 * step, (n / grid) as f64 * step];
                ZeroPoint { x: self.x.map(|c| c.eval(phases)), y: self.y.map(|c| c.eval(phases)) }
            })
            .collect()
    }
}

fn real_point(x: [f64; 3], y: [f64; 3]) -> ZeroPoint {
    ZeroPoint { x: x.map(|v| Complex64::new(v, 0.0)), y: y.map(|v| Complex64::new(v, 0.0)) }
}

/// The four zeros that can always be assumed after a change of coordinates.
pub fn canonical_points() -> [ZeroPoint; 4] {
    [
        real_point([1.0, 1.0, -1.0], [1.0, 1.0, -1.0]),
        real_point([1.0, -1.0, 1.0], [1.0, -1.0, 1.0]),
        real_point([-1.0, 1.0, 1.0], [-1.0, 1.0, 1.0]),
        real_point([1.0, 1.0, 1.0], [1.0, 1.0, 1.0]),
    ]
}

/// Prescribed zeros: isolated points plus phase orbits.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZeroSet {
    pub fixed_points: Vec<ZeroPoint>,
    pub phase_orbits: Vec<PhaseOrbit>,
}

impl ZeroSet {
    pub fn new(fixed_points: Vec<ZeroPoint>, phase_orbits: Vec<PhaseOrbit>) -> Self {
        Self { fixed_points, phase_orbits }
    }

    pub fn is_empty(&self) -> bool {
        self.fixed_points.is_empty() && self.phase_orbits.is_empty()
    }

    /// Appends any of the four canonical zeros not already listed.
    pub fn with_canonical_points(mut self) -> Self {
        for p in canonical_points() {
            if !self.fixed_points.contains(&p) {
                self.fixed_points.push(p);
            }
        }
        self
    }

    pub fn contains_canonical_points(&self) -> bool {
        canonical_points().iter().all(|p| self.fixed_points.contains(p))
    }

    /// Zeros of the Choi map: the diagonal orbit and three isolated points.
    pub fn choi() -> Self {
        let fixed = vec![
            real_point([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
            real_point([0.0, 1.0, 0.0], [0.0, 0.0, 1.0]),
            real_point([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]),
        ];
        Self::new(fixed, vec![PhaseOrbit::diagonal()]).with_canonical_points()
    }

    /// Zeros of `Ψ_t`: the diagonal orbit and three circles of radius `t`.
    pub fn psi_t(t: f64) -> Self {
        let one = OrbitCoord::fixed(ONE);
        let zero = OrbitCoord::fixed(ZERO);
        let up = OrbitCoord::phase(t, [1, 0]);
        let down = OrbitCoord::phase(t, [-1, 0]);
        let orbits = vec![
            PhaseOrbit::diagonal(),
            PhaseOrbit { x: [one, up, zero], y: [down, one, zero], phases: 1 },
            PhaseOrbit { x: [zero, one, up], y: [zero, down, one], phases: 1 },
            PhaseOrbit { x: [up, zero, one], y: [one, zero, down], phases: 1 },
        ];
        Self::new(Vec::new(), orbits).with_canonical_points()
    }

    /// Zeros of `Ψ_{p,q}`.
    pub fn psi_pq(p: f64, q: f64) -> Self {
        let one = OrbitCoord::fixed(ONE);
        let zero = OrbitCoord::fixed(ZERO);
        let orbits = vec![
            PhaseOrbit::diagonal(),
            PhaseOrbit {
                x: [one, OrbitCoord::phase(p, [1, 0]), zero],
                y: [OrbitCoord::phase(q, [-1, 0]), one, zero],
                phases: 1,
            },
            PhaseOrbit {
                x: [zero, one, OrbitCoord::phase(q, [1, 0])],
                y: [zero, OrbitCoord::phase(p, [-1, 0]), one],
                phases: 1,
            },
        ];
        let fixed = vec![real_point([0.0, 0.0, 1.0], [1.0, 0.0, 0.0])];
        Self::new(fixed, orbits).with_canonical_points()
    }

    /// Zeros of `Ψ_{m,n}`.
    pub fn psi_mn(m: f64, n: f64) -> Self {
        let one = OrbitCoord::fixed(ONE);
        let minus = OrbitCoord::fixed(-ONE);
        let e = OrbitCoord::phase(1.0, [1, 0]);
        let orbits = vec![
            PhaseOrbit { x: [one, one, e], y: [one, one, e], phases: 1 },
            PhaseOrbit { x: [one, minus, e], y: [one, minus, e], phases: 1 },
        ];
        let fixed = vec![
            real_point([1.0, 0.0, 0.0], [m, 1.0, 0.0]),
            real_point([1.0, n, 0.0], [0.0, 1.0, 0.0]),
            real_point([0.0, 1.0, 0.0], [0.0, 0.0, 1.0]),
            real_point([0.0, 0.0, 1.0], [1.0, 0.0, 0.0]),
        ];
        Self::new(fixed, orbits)
    }

    /// All concrete points, each rescaled to max-modulus 1.
    pub fn expand(&self, phase_grid: usize) -> Vec<ZeroPoint> {
        let mut out: Vec<ZeroPoint> = self.fixed_points.clone();
        for orbit in &self.phase_orbits {
            out.extend(orbit.sample(phase_grid));
        }
        out.iter().map(ZeroPoint::max_normalized).collect()
    }
}

/// Real or imaginary part of a complex equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

/// Which kernel condition produced a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    /// `Ψ(|x⟩⟨x|)|y⟩ = 0`.
    Map,
    /// `Ψ†(|y⟩⟨y|)|x⟩ = 0`.
    Adjoint,
}

/// Origin of one row of a [`LinearSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowTag {
    SelfAdjoint { index: [usize; 4], part: Part },
    Zero { point: usize, component: usize, equation: Equation, part: Part },
}

/// Real homogeneous system on the 162 coefficient reals, with row provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub matrix: RealMatrix,
    pub provenance: Vec<RowTag>,
    /// Concrete zero points referenced by `RowTag::Zero::point`.
    pub points: Vec<ZeroPoint>,
}

impl LinearSystem {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn nullspace(&self, rank_tol: f64) -> Vec<Vec<f64>> {
        nullspace(&self.matrix, rank_tol)
    }
}

/// Rows expressing `a_ijkl = conj(a_jilk)`.
pub fn self_adjointness_system() -> LinearSystem {
    let mut matrix = RealMatrix::with_cols(162);
    let mut provenance = Vec::new();
    let mut row = [0.0; 162];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let (n, m) = (idx(i, j, k, l), idx(j, i, l, k));
                    if n > m {
                        continue;
                    }
                    if n < m {
                        row[2 * n] = 1.0;
                        row[2 * m] = -1.0;
                        matrix.push_row(&row);
                        row[2 * n] = 0.0;
                        row[2 * m] = 0.0;
                        provenance.push(RowTag::SelfAdjoint { index: [i, j, k, l], part: Part::Re });
                    }
                    row[2 * n + 1] = 1.0;
                    row[2 * m + 1] = 1.0;
                    matrix.push_row(&row);
                    row[2 * n + 1] = 0.0;
                    row[2 * m + 1] = 0.0;
                    provenance.push(RowTag::SelfAdjoint { index: [i, j, k, l], part: Part::Im });
                }
            }
        }
    }
    LinearSystem { matrix, provenance, points: Vec::new() }
}

/// Appends the two real rows of `Σ_n w_n a_n = 0` for complex weights `w`.
fn push_complex_equation(matrix: &mut RealMatrix, weights: &[(usize, Complex64)]) {
    let mut re_row = [0.0; 162];
    let mut im_row = [0.0; 162];
    for &(n, w) in weights {
        re_row[2 * n] += w.re;
        re_row[2 * n + 1] -= w.im;
        im_row[2 * n] += w.im;
        im_row[2 * n + 1] += w.re;
    }
    matrix.push_row(&re_row);
    matrix.push_row(&im_row);
}

/// Self-adjointness rows plus 12 real rows per concrete zero point.
pub fn assemble(zeros: &ZeroSet, phase_grid: usize) -> Result<LinearSystem> {
    if phase_grid == 0 {
        return Err(Error::InvalidInput("phase grid must be at least 1"));
    }
    if zeros.is_empty() {
        return Err(Error::EmptyZeroSet);
    }
    let mut system = self_adjointness_system();
    let points = zeros.expand(phase_grid);
    let mut weights = Vec::with_capacity(27);
    for (pi, z) in points.iter().enumerate() {
        let (x, y) = (z.x, z.y);
        for (equation, (u, v)) in [(Equation::Map, (x, y)), (Equation::Adjoint, (y, x))] {
            for i in 0..3 {
                weights.clear();
                for j in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            let w = u[k] * u[l].conj() * v[j];
                            let n = match equation {
                                Equation::Map => idx(i, j, k, l),
                                Equation::Adjoint => idx(l, k, j, i),
                            };
                            weights.push((n, w));
                        }
                    }
                }
                push_complex_equation(&mut system.matrix, &weights);
                for part in [Part::Re, Part::Im] {
                    system.provenance.push(RowTag::Zero { point: pi, component: i, equation, part });
                }
            }
        }
    }
    system.points = points;
    Ok(system)
}

/// Orthonormal basis of a prescribed-zero family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySolution {
    pub basis: Vec<QuantumMap>,
    /// Phase grid the basis was computed on (twice the requested one).
    pub phase_grid: usize,
    /// Dimension found on the requested grid; equals `basis.len()`.
    pub coarse_dimension: usize,
}

impl FamilySolution {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `‖Ψ − P Ψ‖ / ‖Ψ‖` with `P` the orthogonal projector onto the span, in
    /// the 162-real coordinates.
    pub fn projection_residual(&self, map: &QuantumMap) -> f64 {
        projection_residual(&self.basis, map)
    }
}

pub fn projection_residual(basis: &[QuantumMap], map: &QuantumMap) -> f64 {
    let norm = map.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let mut rest = map.clone();
    for b in basis {
        let c = map.real_inner(b);
        rest = &rest - &b.scaled(c);
    }
    rest.norm() / norm
}

/// Solves the prescription system on `phase_grid` and `2·phase_grid`; the two
/// nullspace dimensions must agree.
pub fn solve_family(zeros: &ZeroSet, phase_grid: usize, rank_tol: f64) -> Result<FamilySolution> {
    if !(rank_tol > 0.0) {
        return Err(Error::InvalidInput("rank tolerance must be positive"));
    }
    let coarse = assemble(zeros, phase_grid)?.nullspace(rank_tol).len();
    let fine_grid = phase_grid * 2;
    let fine = assemble(zeros, fine_grid)?.nullspace(rank_tol);
    if fine.len() != coarse {
        return Err(Error::UnstableDimension { coarse, fine: fine.len() });
    }
    let basis = fine
        .iter()
        .map(|v| QuantumMap::from_real_vector(v, 1e-10))
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilySolution { basis, phase_grid: fine_grid, coarse_dimension: coarse })
}
