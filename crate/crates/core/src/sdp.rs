//! Log-barrier path following for the 9×9 witness programs
//!
//! ```text
//! minimize ⟨C, ρ⟩  subject to  Tr ρ = 1,  block_b(ρ) ⪰ 0 for every block
//! ```
//!
//! over real symmetric `ρ`. The trace constraint is eliminated by writing
//! `ρ = I/9 + Σ_a x_a B_a` with an orthonormal basis `B_a` of the 44-dimensional
//! space of trace-zero symmetric matrices; Newton steps then run on `x`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::choi::choi_matrix;
use crate::linalg::{cholesky_in_place, cholesky_solve, eigvals_sym, RealSymMatrix};
use crate::qmaps::{make_choi_map, QuantumMap};
use crate::{Error, Result};

/// Dimension of the trace-zero slice of 9×9 symmetric matrices.
pub const SLICE_DIM: usize = 44;

const N: usize = 9;
const NN: usize = N * N;
const CENTERING_TOL: f64 = 1e-8;
const ARMIJO: f64 = 0.25;
const MAX_HALVINGS: usize = 80;
/// Past this many Newton steps at one t, a decrement below `LOOSE_CENTERING_TOL`
/// counts as centred. At large t rounding in `t·c` keeps the decrement near 1e−7.
const STAGE_STEPS: usize = 40;
const LOOSE_CENTERING_TOL: f64 = 1e-5;

/// A linear constraint map applied to `ρ` before the PSD test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockMap {
    /// `ρ ⪰ 0`.
    Identity,
    /// `ρ^Γ ⪰ 0`.
    PartialTranspose,
    /// `(Ψ_C† ⊗ Id) ρ ⪰ 0`.
    ChoiAdjointLift,
}

impl BlockMap {
    pub fn apply(&self, rho: &RealSymMatrix) -> RealSymMatrix {
        let mut out = [0.0; NN];
        self.apply_raw(rho.as_slice(), &mut out);
        RealSymMatrix::from_row_major(N, &out).expect("block maps preserve symmetry")
    }

    fn apply_raw(&self, rho: &[f64], out: &mut [f64; NN]) {
        match self {
            Self::Identity => out.copy_from_slice(rho),
            Self::PartialTranspose => {
                for r in 0..N {
                    for c in 0..N {
                        let (i, k, j, l) = (r / 3, r % 3, c / 3, c % 3);
                        out[r * N + c] = rho[(3 * j + k) * N + 3 * i + l];
                    }
                }
            }
            Self::ChoiAdjointLift => {
                // Real coefficients of Ψ_C†; block (i,j) = Σ_kl a_ijkl ρ_block(k,l).
                let adj = choi_adjoint();
                out.iter_mut().for_each(|v| *v = 0.0);
                for &(i, j, k, l, a) in adj.iter() {
                    for s in 0..3 {
                        for u in 0..3 {
                            out[(3 * i + s) * N + 3 * j + u] += a * rho[(3 * k + s) * N + 3 * l + u];
                        }
                    }
                }
                // Rounding-level asymmetry cannot occur: all coefficients are ±1.
            }
        }
    }
}

/// Nonzero coefficients of `Ψ_C†` as `(i, j, k, l, a_ijkl)`.
fn choi_adjoint() -> Vec<(usize, usize, usize, usize, f64)> {
    let adj = make_choi_map().adjoint();
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let a = adj.coeff(i, j, k, l);
                    if a != Complex64::new(0.0, 0.0) {
                        out.push((i, j, k, l, a.re));
                    }
                }
            }
        }
    }
    out
}

/// Orthonormal basis of trace-zero symmetric 9×9 matrices: 36 scaled
/// off-diagonal units followed by 8 Helmert diagonals.
pub fn trace_zero_basis() -> Vec<RealSymMatrix> {
    let mut basis = Vec::with_capacity(SLICE_DIM);
    for i in 0..N {
        for j in i + 1..N {
            let mut b = RealSymMatrix::zeros(N);
            b.set(i, j, 1.0 / SQRT_2);
            basis.push(b);
        }
    }
    for k in 1..N {
        let mut d = [0.0; N];
        let s = 1.0 / ((k * (k + 1)) as f64).sqrt();
        d[..k].iter_mut().for_each(|v| *v = s);
        d[k] = -(k as f64) * s;
        basis.push(RealSymMatrix::diagonal(&d));
    }
    basis
}

/// `min Tr(C ρ)` over trace-one real symmetric `ρ` with PSD blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpProblem {
    objective: RealSymMatrix,
    blocks: Vec<BlockMap>,
    trace_target: f64,
}

impl SdpProblem {
    /// Checks that every block is linear on the slice basis and that `I/9` is
    /// strictly feasible (every block has minimum eigenvalue at least 1/18).
    pub fn new(objective: RealSymMatrix, blocks: Vec<BlockMap>) -> Result<Self> {
        if objective.n() != N {
            return Err(Error::InvalidInput("objective must be 9x9"));
        }
        if !objective.is_finite() {
            return Err(Error::InvalidInput("objective has non-finite entries"));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidInput("at least one block constraint is required"));
        }
        let basis = trace_zero_basis();
        let centre = RealSymMatrix::identity(N).scaled(1.0 / N as f64);
        for block in &blocks {
            if block.apply(&RealSymMatrix::zeros(N)).frobenius_norm() != 0.0 {
                return Err(Error::InternalError("block map is not linear"));
            }
            for w in basis.windows(2) {
                let sum = block.apply(&w[0].add_scaled(1.0, &w[1]));
                let parts = block.apply(&w[0]).add_scaled(1.0, &block.apply(&w[1]));
                if sum.add_scaled(-1.0, &parts).frobenius_norm() > 1e-14 {
                    return Err(Error::InternalError("block map is not linear"));
                }
            }
            let min = eigvals_sym(&block.apply(&centre))?[0];
            if min < 1.0 / 18.0 {
                return Err(Error::InternalError("maximally mixed state is not strictly feasible"));
            }
        }
        Ok(Self { objective, blocks, trace_target: 1.0 })
    }

    pub fn objective(&self) -> &RealSymMatrix {
        &self.objective
    }

    pub fn blocks(&self) -> &[BlockMap] {
        &self.blocks
    }

    pub fn trace_target(&self) -> f64 {
        self.trace_target
    }

    /// Same constraints, objective multiplied by `factor`.
    pub fn with_scaled_objective(&self, factor: f64) -> Self {
        Self { objective: self.objective.scaled(factor), ..self.clone() }
    }

    /// Total constraint dimension `m`; the barrier gap at parameter `t` is `m/t`.
    pub fn barrier_degree(&self) -> usize {
        N * self.blocks.len()
    }
}

/// Solver knobs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SdpOptions {
    pub gap_tol: f64,
    /// Cap on Newton steps across all centering stages.
    pub max_iter: usize,
    /// Barrier weight multiplier per stage is `1 / mu_shrink`.
    pub mu_shrink: f64,
}

impl Default for SdpOptions {
    fn default() -> Self {
        Self { gap_tol: 1e-9, max_iter: 200, mu_shrink: 0.2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdpStatus {
    Optimal,
    MaxIterations,
    NumericalFailure,
}

impl SdpStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Optimal => "optimal",
            Self::MaxIterations => "max_iterations",
            Self::NumericalFailure => "numerical_failure",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SdpSolution {
    pub rho: RealSymMatrix,
    pub objective_value: f64,
    pub duality_gap_estimate: f64,
    /// Newton steps taken.
    pub iterations: usize,
    pub status: SdpStatus,
}

impl SdpSolution {
    /// Smallest eigenvalue of each constraint block at the returned `ρ`.
    pub fn block_min_eigenvalues(&self, problem: &SdpProblem) -> Result<Vec<f64>> {
        problem.blocks.iter().map(|b| Ok(eigvals_sym(&b.apply(&self.rho))?[0])).collect()
    }
}

/// Per-block precomputation: `S_b(x) = F_b + Σ_a x_a G_{b,a}`.
struct BlockData {
    offset: [f64; NN],
    generators: Vec<[f64; NN]>,
}

struct Workspace {
    blocks: Vec<BlockData>,
    cost: [f64; SLICE_DIM],
    basis: Vec<RealSymMatrix>,
}

impl Workspace {
    fn new(problem: &SdpProblem) -> Self {
        let basis = trace_zero_basis();
        let centre = RealSymMatrix::identity(N).scaled(1.0 / N as f64);
        let blocks = problem
            .blocks
            .iter()
            .map(|b| {
                let mut offset = [0.0; NN];
                b.apply_raw(centre.as_slice(), &mut offset);
                let generators = basis
                    .iter()
                    .map(|e| {
                        let mut g = [0.0; NN];
                        b.apply_raw(e.as_slice(), &mut g);
                        g
                    })
                    .collect();
                BlockData { offset, generators }
            })
            .collect();
        let mut cost = [0.0; SLICE_DIM];
        for (c, e) in cost.iter_mut().zip(&basis) {
            *c = problem.objective.dot(e);
        }
        Self { blocks, cost, basis }
    }

    fn rho(&self, x: &[f64; SLICE_DIM]) -> RealSymMatrix {
        let mut rho = RealSymMatrix::identity(N).scaled(1.0 / N as f64);
        for (xa, e) in x.iter().zip(&self.basis) {
            rho = rho.add_scaled(*xa, e);
        }
        rho
    }

    /// Cholesky factors of every block at `x`, or `None` if one is not PD.
    fn factors(&self, x: &[f64; SLICE_DIM]) -> Option<Vec<[f64; NN]>> {
        self.blocks
            .iter()
            .map(|b| {
                let mut s = b.offset;
                for (xa, g) in x.iter().zip(&b.generators) {
                    if *xa != 0.0 {
                        s.iter_mut().zip(g).for_each(|(v, gv)| *v += xa * gv);
                    }
                }
                cholesky_in_place(N, &mut s)?;
                Some(s)
            })
            .collect()
    }
}

fn log_det(l: &[f64; NN]) -> f64 {
    2.0 * (0..N).map(|i| l[i * N + i].ln()).sum::<f64>()
}

/// `L⁻¹ G L⁻ᵀ` for lower-triangular `L` and symmetric `G`.
fn whiten(l: &[f64; NN], g: &[f64; NN], out: &mut [f64; NN]) {
    // Y = L⁻¹ G (columns of G solved independently).
    let mut y = *g;
    for c in 0..N {
        for i in 0..N {
            let mut s = y[i * N + c];
            for k in 0..i {
                s -= l[i * N + k] * y[k * N + c];
            }
            y[i * N + c] = s / l[i * N + i];
        }
    }
    // M = Y L⁻ᵀ, i.e. Mᵀ = L⁻¹ Yᵀ: solve row by row.
    for r in 0..N {
        for j in 0..N {
            let mut s = y[r * N + j];
            for k in 0..j {
                s -= l[j * N + k] * out[r * N + k];
            }
            out[r * N + j] = s / l[j * N + j];
        }
    }
}

/// Solves `H d = rhs` for symmetric positive (semi)definite `H`, with diagonal
/// scaling and escalating jitter if the plain factorisation breaks down.
fn solve_newton_system(h: &[f64], rhs: &[f64; SLICE_DIM]) -> Option<[f64; SLICE_DIM]> {
    const M: usize = SLICE_DIM;
    let scale: Vec<f64> = (0..M).map(|i| 1.0 / h[i * M + i].max(1e-300).sqrt()).collect();
    let mut jitter = 0.0;
    for _ in 0..12 {
        let mut a = vec![0.0; M * M];
        for i in 0..M {
            for j in 0..M {
                a[i * M + j] = h[i * M + j] * scale[i] * scale[j];
            }
            a[i * M + i] += jitter;
        }
        if cholesky_in_place(M, &mut a).is_some() {
            let mut b: Vec<f64> = (0..M).map(|i| rhs[i] * scale[i]).collect();
            cholesky_solve(M, &a, &mut b);
            let mut out = [0.0; M];
            for i in 0..M {
                out[i] = b[i] * scale[i];
            }
            if out.iter().all(|v| v.is_finite()) {
                return Some(out);
            }
        }
        jitter = if jitter == 0.0 { 1e-14 } else { jitter * 100.0 };
    }
    None
}

/// Runs the barrier method and always returns the last iterate, tagged with
/// its status.
pub fn solve_with_status(problem: &SdpProblem, opts: &SdpOptions) -> SdpSolution {
    let ws = Workspace::new(problem);
    let m = problem.barrier_degree() as f64;
    let mut x = [0.0; SLICE_DIM];
    let mut t = 1.0;
    let mut iterations = 0;
    let mut factors = ws.factors(&x).expect("centre is strictly feasible");
    let finish = |x: &[f64; SLICE_DIM], t: f64, iterations: usize, status: SdpStatus| {
        let rho = ws.rho(x);
        SdpSolution {
            objective_value: problem.objective.dot(&rho),
            rho,
            duality_gap_estimate: m / t,
            iterations,
            status,
        }
    };
    let valid = opts.gap_tol > 0.0 && opts.mu_shrink > 0.0 && opts.mu_shrink < 1.0;
    if !valid {
        return finish(&x, t, 0, SdpStatus::NumericalFailure);
    }
    let mut hess = vec![0.0; SLICE_DIM * SLICE_DIM];
    let mut whitened = vec![[0.0; NN]; SLICE_DIM];
    loop {
        // Centre at the current t.
        let mut stage_steps = 0;
        loop {
            if iterations >= opts.max_iter {
                return finish(&x, t, iterations, SdpStatus::MaxIterations);
            }
            let mut grad = [0.0; SLICE_DIM];
            for (g, c) in grad.iter_mut().zip(&ws.cost) {
                *g = t * c;
            }
            hess.iter_mut().for_each(|v| *v = 0.0);
            for (block, l) in ws.blocks.iter().zip(&factors) {
                for (a, g) in block.generators.iter().enumerate() {
                    whiten(l, g, &mut whitened[a]);
                    grad[a] -= (0..N).map(|i| whitened[a][i * N + i]).sum::<f64>();
                }
                for a in 0..SLICE_DIM {
                    for b in a..SLICE_DIM {
                        let v: f64 = whitened[a].iter().zip(&whitened[b]).map(|(p, q)| p * q).sum();
                        hess[a * SLICE_DIM + b] += v;
                    }
                }
            }
            for a in 0..SLICE_DIM {
                for b in 0..a {
                    hess[a * SLICE_DIM + b] = hess[b * SLICE_DIM + a];
                }
            }
            let neg_grad = grad.map(|g| -g);
            let Some(dx) = solve_newton_system(&hess, &neg_grad) else {
                return finish(&x, t, iterations, SdpStatus::NumericalFailure);
            };
            iterations += 1;
            let slope: f64 = grad.iter().zip(&dx).map(|(g, d)| g * d).sum();
            let decrement = -slope;
            if !decrement.is_finite() {
                return finish(&x, t, iterations, SdpStatus::NumericalFailure);
            }
            stage_steps += 1;
            if decrement / 2.0 <= CENTERING_TOL || (stage_steps > STAGE_STEPS && decrement / 2.0 <= LOOSE_CENTERING_TOL) {
                break;
            }
            let cost_slope: f64 = ws.cost.iter().zip(&dx).map(|(c, d)| c * d).sum();
            let old_logdet: f64 = factors.iter().map(log_det).sum();
            let mut alpha = 1.0;
            let mut accepted = None;
            let mut any_feasible = false;
            for _ in 0..MAX_HALVINGS {
                let mut trial = x;
                trial.iter_mut().zip(&dx).for_each(|(v, d)| *v += alpha * d);
                if let Some(f) = ws.factors(&trial) {
                    any_feasible = true;
                    let new_logdet: f64 = f.iter().map(log_det).sum();
                    let change = t * alpha * cost_slope - (new_logdet - old_logdet);
                    if change <= ARMIJO * alpha * slope {
                        accepted = Some((trial, f));
                        break;
                    }
                }
                alpha *= 0.5;
            }
            match accepted {
                Some((trial, f)) => {
                    x = trial;
                    factors = f;
                }
                // No sufficient decrease at any step length: the iterate is
                // centred as well as rounding allows.
                None if any_feasible => break,
                None => return finish(&x, t, iterations, SdpStatus::NumericalFailure),
            }
        }
        if m / t <= opts.gap_tol {
            return finish(&x, t, iterations, SdpStatus::Optimal);
        }
        t /= opts.mu_shrink;
    }
}

/// Strict variant: non-optimal terminations become errors.
pub fn solve(problem: &SdpProblem, opts: &SdpOptions) -> Result<SdpSolution> {
    if !(opts.gap_tol > 0.0) || !(opts.mu_shrink > 0.0 && opts.mu_shrink < 1.0) || opts.max_iter == 0 {
        return Err(Error::InvalidInput("invalid solver options"));
    }
    let sol = solve_with_status(problem, opts);
    match sol.status {
        SdpStatus::Optimal => Ok(sol),
        SdpStatus::MaxIterations => Err(Error::MaxIterations),
        SdpStatus::NumericalFailure => Err(Error::NumericalFailure),
    }
}

/// Program with objective `Re C(witness)`; blocks are `ρ ⪰ 0`, `ρ^Γ ⪰ 0` and,
/// if requested, `(Ψ_C† ⊗ Id)ρ ⪰ 0`.
///
/// Restricting to real symmetric `ρ` is exact only when the objective does not
/// see `Im ρ`, so witnesses with `‖Im C‖_F > 1e-12` are rejected.
pub fn build_problem(witness: &QuantumMap, with_choi_constraint: bool) -> Result<SdpProblem> {
    let c = choi_matrix(witness).into_inner();
    let imag_norm = c.imag_norm();
    if imag_norm > 1e-12 {
        return Err(Error::ComplexObjective { imag_norm });
    }
    let mut blocks = vec![BlockMap::Identity, BlockMap::PartialTranspose];
    if with_choi_constraint {
        blocks.push(BlockMap::ChoiAdjointLift);
    }
    SdpProblem::new(c.real_part(), blocks)
}

/// Result of the three-variable reduction for `Ψ_t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedT {
    pub objective_value: f64,
    pub s11: f64,
    pub s22: f64,
    pub s04: f64,
}

/// Penalty weight making the reduced problem exact on the feasible set.
const REDUCED_PENALTY: f64 = 1e3;

/// Reduced `Ψ_t` program in `(s11, s22, s04)`.
///
/// The objective decreases in `s04`, so `s04` sits at the smallest of its upper
/// bounds; what remains is a convex function of `(s11, s22)` (infeasibility is
/// handled by an exact penalty). A 1e-3 grid gives a first estimate, then
/// nested golden-section searches (exact coordinate minimisation) refine it.
pub fn reduced_t_program(t: f64) -> ReducedT {
    let t2 = t * t;
    let t4 = t2 * t2;
    let norm = 2.0 * (1.0 - t2 + t4);
    let third = 1.0 / 3.0;
    let upper = |s11: f64, s22: f64| -> f64 {
        (s11 * s22).max(0.0).sqrt().min(third - s11 - s22).min((third - s22) / 2.0).min(third)
    };
    let lower = |s11: f64, s22: f64| -> f64 { (-(s11 * s22).max(0.0).sqrt()).max(-(third - s11 - s22) / 2.0).max(-third) };
    let raw = |s11: f64, s22: f64, s04: f64| -> f64 {
        ((1.0 - t2).powi(2) + 3.0 * t2 * (2.0 - t2) * s11 - 3.0 * (1.0 - 2.0 * t2) * s22
            - 6.0 * (1.0 - t2 + t4) * s04)
            / norm
    };
    let penalised = |s11: f64, s22: f64| -> f64 {
        let u = upper(s11, s22);
        raw(s11, s22, u) + REDUCED_PENALTY * (lower(s11, s22) - u).max(0.0)
    };

    let steps = 334;
    let h = third / (steps - 1) as f64;
    let mut grid_best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..steps {
        for j in 0..steps {
            let (s11, s22) = (i as f64 * h, j as f64 * h);
            let v = penalised(s11, s22);
            if v < grid_best.0 {
                grid_best = (v, s11, s22);
            }
        }
    }
    // Convexity makes full-range golden sections exact, so the grid only
    // guards against a polish that went wrong.
    let inner_min = |s11: f64| golden_min(|s22| penalised(s11, s22), 0.0..=third);
    let mut s11 = golden_min(|s11| penalised(s11, inner_min(s11)), 0.0..=third);
    let mut s22 = inner_min(s11);
    if penalised(s11, s22) > grid_best.0 {
        (_, s11, s22) = grid_best;
    }
    let s04 = upper(s11, s22);
    ReducedT { objective_value: raw(s11, s22, s04), s11, s22, s04 }
}

fn golden_min(f: impl Fn(f64) -> f64, range: core::ops::RangeInclusive<f64>) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (*range.start(), *range.end());
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..90 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    // The bracket ends are candidates too (minimum on the boundary).
    let (lo, hi) = (*range.start(), *range.end());
    [mid, lo, hi].into_iter().min_by(|p, q| f(*p).total_cmp(&f(*q))).unwrap()
}

/// Optimal values of the `Ψ_t` program (unital scaling) in closed form.
pub fn closed_form_min_t(t: f64) -> f64 {
    let t2 = t * t;
    let t4 = t2 * t2;
    let denom = 1.0 - t2 + t4;
    if t.abs() >= 1.0 {
        (3.0 * (1.0 + t4) - 2.0 * (3.0 + 3.0 * t4 + 3.0 * t4 * t4).sqrt()) / (6.0 * denom)
    } else {
        t2 * (t2 - 4.0 + (12.0 - 3.0 * t4).sqrt()) / (4.0 * denom)
    }
}

/// `(s00, s11, s22, s04)` of the closed-form optimiser.
pub fn closed_form_entries_t(t: f64) -> [f64; 4] {
    let t4 = t.powi(4);
    let third = 1.0 / 3.0;
    if t.abs() >= 1.0 {
        let root = (3.0 + 3.0 * t4 + 3.0 * t4 * t4).sqrt();
        let s11 = 2.0 / 9.0 - 1.0 / (3.0 * root);
        let s22 = 2.0 / 9.0 - t4 / (3.0 * root);
        let s00 = third - s11 - s22;
        [s00, s11, s22, s00]
    } else {
        let root = (12.0 - 3.0 * t4).sqrt();
        let s11 = (4.0 + t * t) / (6.0 * root) - 1.0 / 6.0;
        let s22 = root / (9.0 * (2.0 + t * t));
        let s00 = third - s11 - s22;
        [s00, s11, s22, 0.5 * (s00 + s11)]
    }
}

/// The sparse optimiser: `s11` on (1,5,6), `s22` on (2,3,7), `s00` on
/// (0,4,8) and `s04` on the pairs among (0,4,8).
pub fn closed_form_state_t(t: f64) -> RealSymMatrix {
    let [s00, s11, s22, s04] = closed_form_entries_t(t);
    let mut rho = RealSymMatrix::zeros(N);
    for i in [1, 5, 6] {
        rho.set(i, i, s11);
    }
    for i in [2, 3, 7] {
        rho.set(i, i, s22);
    }
    for i in [0, 4, 8] {
        rho.set(i, i, s00);
    }
    for (i, j) in [(0, 4), (0, 8), (4, 8)] {
        rho.set(i, j, s04);
    }
    rho
}

/// Named entries of an optimiser reported by parameter sweeps.
pub type Signature = &'static [(&'static str, usize, usize)];

pub const T_SIGNATURE: Signature = &[("s00", 0, 0), ("s11", 1, 1), ("s22", 2, 2), ("s04", 0, 4)];

pub const PQ_SIGNATURE: Signature = &[
    ("s00", 0, 0),
    ("s11", 1, 1),
    ("s22", 2, 2),
    ("s33", 3, 3),
    ("s44", 4, 4),
    ("s55", 5, 5),
    ("s66", 6, 6),
    ("s77", 7, 7),
    ("s88", 8, 8),
    ("s04", 0, 4),
    ("s08", 0, 8),
    ("s48", 4, 8),
];

pub const MN_SIGNATURE: Signature = &[
    ("r00", 0, 0),
    ("r11", 1, 1),
    ("r22", 2, 2),
    ("r33", 3, 3),
    ("r44", 4, 4),
    ("r55", 5, 5),
    ("r66", 6, 6),
    ("r77", 7, 7),
    ("r88", 8, 8),
    ("r01", 0, 1),
    ("r03", 0, 3),
    ("r04", 0, 4),
    ("r08", 0, 8),
    ("r13", 1, 3),
    ("r14", 1, 4),
    ("r18", 1, 8),
    ("r25", 2, 5),
    ("r34", 3, 4),
    ("r38", 3, 8),
    ("r48", 4, 8),
    ("r67", 6, 7),
];

pub fn signature_values(signature: Signature, rho: &RealSymMatrix) -> Vec<f64> {
    signature.iter().map(|&(_, i, j)| rho.get(i, j)).collect()
}
