//! Linear maps `M₃ → M₃` that preserve self-adjointness, stored as coefficient
//! tensors, together with the named families and their region tests.
//!
//! A map is `Ψ(Z)_ij = Σ_kl a_ijkl z_kl`; self-adjointness preservation is the
//! relation `a_ijkl = conj(a_jilk)`.

use core::f64::consts::FRAC_1_SQRT_2;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{eig_herm, inv_sqrt, ComplexMatrix, HermitianMatrix};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub(crate) const fn idx(i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * 3 + j) * 3 + k) * 3 + l
}

#[inline]
fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// Coefficient tensor of a self-adjointness preserving map on 3×3 matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumMap {
    a: [Complex64; 81],
}

impl QuantumMap {
    pub fn zero() -> Self {
        Self { a: [ZERO; 81] }
    }

    /// `Z ↦ Z`.
    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.a[idx(i, j, i, j)] = ONE;
            }
        }
        m
    }

    /// `Z ↦ Zᵀ`.
    pub fn transposition() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.a[idx(i, j, j, i)] = ONE;
            }
        }
        m
    }

    /// Builds a tensor from `f(i, j, k, l)` and checks the self-adjointness
    /// relation to `tol` (absolute); the result is projected onto it exactly.
    pub fn from_fn(tol: f64, mut f: impl FnMut(usize, usize, usize, usize) -> Complex64) -> Result<Self> {
        let mut a = [ZERO; 81];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        a[idx(i, j, k, l)] = f(i, j, k, l);
                    }
                }
            }
        }
        Self::from_coefficients(a, tol)
    }

    /// Wraps a raw tensor, requiring `|a_ijkl − conj(a_jilk)| ≤ tol` everywhere.
    pub fn from_coefficients(a: [Complex64; 81], tol: f64) -> Result<Self> {
        if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite coefficient"));
        }
        let raw = Self { a };
        if raw.self_adjointness_residual() > tol {
            return Err(Error::InvalidInput("coefficients do not preserve self-adjointness"));
        }
        Ok(raw.symmetrized())
    }

    /// Rebuilds a map from the 162-real encoding `(Re a_0, Im a_0, Re a_1, …)`.
    pub fn from_real_vector(v: &[f64], tol: f64) -> Result<Self> {
        if v.len() != 162 {
            return Err(Error::InvalidInput("coefficient vector must have 162 entries"));
        }
        let mut a = [ZERO; 81];
        for (n, c) in a.iter_mut().enumerate() {
            *c = Complex64::new(v[2 * n], v[2 * n + 1]);
        }
        Self::from_coefficients(a, tol)
    }

    /// The 162-real encoding used by the zero-prescription systems.
    pub fn to_real_vector(&self) -> [f64; 162] {
        let mut out = [0.0; 162];
        for (n, c) in self.a.iter().enumerate() {
            out[2 * n] = c.re;
            out[2 * n + 1] = c.im;
        }
        out
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        self.a[idx(i, j, k, l)]
    }

    pub fn coefficients(&self) -> &[Complex64; 81] {
        &self.a
    }

    /// `max |a_ijkl − conj(a_jilk)|`.
    pub fn self_adjointness_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let d = self.a[idx(i, j, k, l)] - self.a[idx(j, i, l, k)].conj();
                        worst = worst.max(d.norm());
                    }
                }
            }
        }
        worst
    }

    /// Orthogonal projection onto the self-adjointness preserving tensors.
    pub fn symmetrized(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let n = idx(i, j, k, l);
                        let m = idx(j, i, l, k);
                        if n == m {
                            out.a[n] = re(self.a[n].re);
                        } else {
                            out.a[n] = (self.a[n] + self.a[m].conj()) * 0.5;
                        }
                    }
                }
            }
        }
        out
    }

    /// Euclidean norm of the coefficient tensor.
    pub fn norm(&self) -> f64 {
        self.a.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Real inner product of the 162-real encodings.
    pub fn real_inner(&self, other: &Self) -> f64 {
        self.a.iter().zip(&other.a).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.a.iter().zip(&other.a).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.a.iter_mut().for_each(|c| *c *= factor);
        out
    }

    /// `Ψ(Z)` for a Hermitian input; the output is Hermitian by construction.
    pub fn apply(&self, z: &HermitianMatrix) -> HermitianMatrix {
        assert_eq!(z.n(), 3, "maps act on 3x3 matrices");
        let mut out = HermitianMatrix::zeros(3);
        for i in 0..3 {
            for j in i..3 {
                let mut s = ZERO;
                for k in 0..3 {
                    for l in 0..3 {
                        s += self.a[idx(i, j, k, l)] * z.get(k, l);
                    }
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// `Ψ(Z)` for an arbitrary complex input, e.g. a matrix unit.
    pub fn apply_matrix(&self, z: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(z.n(), 3, "maps act on 3x3 matrices");
        ComplexMatrix::from_fn(3, |i, j| {
            let mut s = ZERO;
            for k in 0..3 {
                for l in 0..3 {
                    s += self.a[idx(i, j, k, l)] * z.get(k, l);
                }
            }
            s
        })
    }

    /// Hilbert–Schmidt adjoint: `a†_ijkl = a_lkji`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        out.a[idx(i, j, k, l)] = self.a[idx(l, k, j, i)];
                    }
                }
            }
        }
        out
    }

    /// `T ∘ Ψ`: `a′_ijkl = a_jikl`.
    pub fn compose_transpose(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        out.a[idx(i, j, k, l)] = self.a[idx(j, i, k, l)];
                    }
                }
            }
        }
        out
    }

    /// `Z ↦ Q Ψ(Z) Q†`.
    pub fn conjugate(&self, q: &ComplexMatrix) -> Self {
        assert_eq!(q.n(), 3, "conjugating matrix must be 3x3");
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let mut s = ZERO;
                        for p in 0..3 {
                            for r in 0..3 {
                                s += q.get(i, p) * self.a[idx(p, r, k, l)] * q.get(j, r).conj();
                            }
                        }
                        out.a[idx(i, j, k, l)] = s;
                    }
                }
            }
        }
        out
    }

    /// `Ψ(I)` as a Hermitian matrix.
    pub fn image_of_identity(&self) -> HermitianMatrix {
        self.apply(&HermitianMatrix::identity(3))
    }

    /// Unital normalisation `X ↦ Φ̂(I)^{-1/2} Φ̂(X) Φ̂(I)^{-1/2}` with
    /// `Φ̂(X) = Ψ(X) + ε·Tr(X)·I`.
    pub fn unitalize(&self, eps: f64) -> Result<Self> {
        if !eps.is_finite() {
            return Err(Error::InvalidInput("epsilon must be finite"));
        }
        let mut hat = self.clone();
        for i in 0..3 {
            for k in 0..3 {
                hat.a[idx(i, i, k, k)] += eps;
            }
        }
        let b = inv_sqrt(&hat.image_of_identity())?;
        Ok(hat.conjugate(&b.to_complex()).symmetrized())
    }
}

impl Add for &QuantumMap {
    type Output = QuantumMap;
    fn add(self, rhs: &QuantumMap) -> QuantumMap {
        let mut out = self.clone();
        out.a.iter_mut().zip(&rhs.a).for_each(|(x, y)| *x += y);
        out
    }
}

impl Sub for &QuantumMap {
    type Output = QuantumMap;
    fn sub(self, rhs: &QuantumMap) -> QuantumMap {
        let mut out = self.clone();
        out.a.iter_mut().zip(&rhs.a).for_each(|(x, y)| *x -= y);
        out
    }
}

impl Mul<&QuantumMap> for f64 {
    type Output = QuantumMap;
    fn mul(self, rhs: &QuantumMap) -> QuantumMap {
        rhs.scaled(self)
    }
}

/// Accumulates `Ψ(Z)_ij += coeff · z_kl` terms. Callers write both halves of
/// each conjugate pair themselves.
struct Builder(QuantumMap);

impl Builder {
    fn new() -> Self {
        Self(QuantumMap::zero())
    }

    fn add(&mut self, (i, j): (usize, usize), (k, l): (usize, usize), c: Complex64) -> &mut Self {
        self.0.a[idx(i, j, k, l)] += c;
        self
    }

    fn addr(&mut self, out: (usize, usize), input: (usize, usize), c: f64) -> &mut Self {
        self.add(out, input, re(c))
    }

    fn finish(&mut self) -> QuantumMap {
        debug_assert!(self.0.self_adjointness_residual() == 0.0);
        self.0.clone()
    }
}

/// The Choi map `Ψ_C`.
pub fn make_choi_map() -> QuantumMap {
    let mut b = Builder::new();
    for (i, k) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)] {
        b.addr((i, i), (k, k), 1.0);
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                b.addr((i, j), (i, j), -1.0);
            }
        }
    }
    b.finish()
}

/// Five-parameter family obtained from the Choi zero set; `(1,1,1,1,0)` is the
/// Choi map itself.
pub fn make_choi_family(r: f64, r0: f64, r1: f64, r2: f64, c: f64) -> QuantumMap {
    let a01 = -0.5 * (r + r0 + r1 - r2);
    let a02 = -0.5 * (r + r0 - r1 + r2);
    let a12 = -0.5 * (r - r0 + r1 + r2);
    let mut b = Builder::new();
    b.addr((0, 0), (0, 0), r0).addr((0, 0), (1, 1), r);
    b.addr((1, 1), (1, 1), r1).addr((1, 1), (2, 2), r);
    b.addr((2, 2), (0, 0), r).addr((2, 2), (2, 2), r2);
    b.add((0, 1), (0, 1), Complex64::new(a01, c)).add((1, 0), (1, 0), Complex64::new(a01, -c));
    b.add((0, 2), (0, 2), Complex64::new(a02, -c)).add((2, 0), (2, 0), Complex64::new(a02, c));
    b.add((1, 2), (1, 2), Complex64::new(a12, c)).add((2, 1), (2, 1), Complex64::new(a12, -c));
    b.finish()
}

/// `Ψ_t`; `t = 0` gives the Choi map.
pub fn make_psi_t(t: f64) -> QuantumMap {
    let t2 = t * t;
    let t4 = t2 * t2;
    let d = (t2 - 1.0) * (t2 - 1.0);
    let off = -(t4 - t2 + 1.0);
    let mut b = Builder::new();
    b.addr((0, 0), (0, 0), d).addr((0, 0), (1, 1), 1.0).addr((0, 0), (2, 2), t4);
    b.addr((1, 1), (0, 0), t4).addr((1, 1), (1, 1), d).addr((1, 1), (2, 2), 1.0);
    b.addr((2, 2), (0, 0), 1.0).addr((2, 2), (1, 1), t4).addr((2, 2), (2, 2), d);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                b.addr((i, j), (i, j), off);
            }
        }
    }
    b.finish()
}

/// `Ψ_t / (2(1 − t² + t⁴))`, which is unital.
pub fn make_psi_t_unital(t: f64) -> QuantumMap {
    make_psi_t(t).scaled(1.0 / (2.0 * (1.0 - t * t + t.powi(4))))
}

/// `Ψ_{p,q}`.
pub fn make_psi_pq(p: f64, q: f64) -> QuantumMap {
    let (p2, q2) = (p * p, q * q);
    let pq = p * q;
    let w = q * (2.0 * p - q);
    let s = (pq - 1.0) * (pq - 1.0);
    let near = -pq * (1.0 - q2 + p2 * q2);
    let far = (pq - 1.0) * (p2 + pq - p2 * pq - q2 + p2 * q2);
    let mut b = Builder::new();
    b.addr((0, 0), (0, 0), p2 * s).addr((0, 0), (1, 1), w);
    b.addr((1, 1), (0, 0), p2 * q2 * q * (2.0 * p - q))
        .addr((1, 1), (1, 1), q2 * s)
        .addr((1, 1), (2, 2), w);
    b.addr((2, 2), (0, 0), w * (1.0 - p2 * q2))
        .addr((2, 2), (1, 1), p2 * q2 * q * (2.0 * p - q))
        .addr((2, 2), (2, 2), p2 * s);
    for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
        b.addr((i, j), (i, j), near);
    }
    b.addr((0, 2), (0, 2), far).addr((2, 0), (2, 0), far);
    b.finish()
}

/// `b(m, n)` of the `Ψ_{m,n}` family.
pub fn mn_b(m: f64, n: f64) -> f64 {
    let common = -2.0 * m * n - m * m * n * n;
    (common - n * n).min(common - m * m)
}

/// `c(m, n)` of the `Ψ_{m,n}` family. Outside `|m|, |n| ≤ 1` the radicands
/// are clamped at zero so the constructor stays total.
pub fn mn_c(m: f64, n: f64) -> f64 {
    let mn = m * n;
    let root = |x: f64| (1.0 - x * x).max(0.0).sqrt();
    (-0.5 * mn * (1.0 + mn - root(n))).max(-0.5 * mn * (1.0 + mn - root(m)))
}

/// `Ψ_{m,n}` with `b`, `c` from [`mn_b`] and [`mn_c`].
pub fn make_psi_mn(m: f64, n: f64) -> QuantumMap {
    let (bb, cc) = (mn_b(m, n), mn_c(m, n));
    let (m2, n2) = (m * m, n * n);
    let mn = m * n;
    let s = m + n;
    let mut b = Builder::new();
    b.addr((0, 0), (0, 0), n2)
        .addr((0, 0), (0, 1), n2 * m)
        .addr((0, 0), (1, 0), n2 * m)
        .addr((0, 0), (1, 1), n2 * m2);
    for (i, j) in [(0, 1), (1, 0)] {
        b.addr((i, j), (0, 0), -mn * n)
            .addr((i, j), (i, j), mn)
            .addr((i, j), (j, i), -mn * mn)
            .addr((i, j), (1, 1), mn * m);
    }
    b.addr((0, 2), (0, 2), -n * s).addr((0, 2), (1, 2), -mn * s);
    b.addr((2, 0), (2, 0), -n * s).addr((2, 0), (2, 1), -mn * s);
    b.addr((1, 1), (0, 0), m2 * n2)
        .addr((1, 1), (0, 1), -m2 * n)
        .addr((1, 1), (1, 0), -m2 * n)
        .addr((1, 1), (1, 1), m2);
    b.addr((1, 2), (0, 2), mn * s).addr((1, 2), (1, 2), -m * s);
    b.addr((2, 1), (2, 0), mn * s).addr((2, 1), (2, 1), -m * s);
    b.addr((2, 2), (2, 2), s * s);
    // b-term
    b.addr((0, 0), (1, 1), bb)
        .addr((0, 2), (0, 2), -bb)
        .addr((1, 1), (2, 2), bb)
        .addr((1, 2), (1, 2), -bb)
        .addr((2, 0), (2, 0), -bb)
        .addr((2, 1), (2, 1), -bb)
        .addr((2, 2), (0, 0), bb)
        .addr((2, 2), (2, 2), bb);
    // c-term
    b.addr((0, 1), (0, 1), cc).addr((0, 1), (1, 0), -cc);
    b.addr((1, 0), (1, 0), cc).addr((1, 0), (0, 1), -cc);
    b.finish()
}

/// Parameters of one of the named families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilyParams {
    ChoiFamily { r: f64, r0: f64, r1: f64, r2: f64, c: f64 },
    T { t: f64 },
    Pq { p: f64, q: f64 },
    Mn { m: f64, n: f64 },
}

impl FamilyParams {
    pub fn map(&self) -> QuantumMap {
        match *self {
            Self::ChoiFamily { r, r0, r1, r2, c } => make_choi_family(r, r0, r1, r2, c),
            Self::T { t } => make_psi_t(t),
            Self::Pq { p, q } => make_psi_pq(p, q),
            Self::Mn { m, n } => make_psi_mn(m, n),
        }
    }

    /// Whether the parameters lie where positivity is certified in closed form.
    /// Every real `t` qualifies.
    pub fn in_region(&self) -> bool {
        match *self {
            Self::ChoiFamily { r, r0, r1, r2, c } => choi_family_is_positive(r, r0, r1, r2, c),
            Self::T { t } => t.is_finite(),
            Self::Pq { p, q } => in_region_r(p, q),
            Self::Mn { m, n } => in_region_a(m, n),
        }
    }

    /// `(b, c)` for the `(m, n)` family, recomputed on every call.
    pub fn mn_derived(&self) -> Option<(f64, f64)> {
        match *self {
            Self::Mn { m, n } => Some((mn_b(m, n), mn_c(m, n))),
            _ => None,
        }
    }
}

/// Region `R` of the `(p, q)` family.
pub fn in_region_r(p: f64, q: f64) -> bool {
    let p2 = p * p;
    p > 0.0
        && p < FRAC_1_SQRT_2
        && q > 0.0
        && q < core::f64::consts::SQRT_2
        && 2.0 * p - q >= 0.0
        && (p2 - 1.0) * (p2 - 1.0) * q * q - p2 >= 0.0
}

/// Region `A` of the `(m, n)` family.
pub fn in_region_a(m: f64, n: f64) -> bool {
    let common = -2.0 * m * n - m * m * n * n;
    (-1.0..=1.0).contains(&m)
        && (-1.0..=1.0).contains(&n)
        && common - n * n >= 0.0
        && common - m * m >= 0.0
}

/// Closed-form positivity conditions of the five-parameter family.
pub fn choi_family_is_positive(r: f64, r0: f64, r1: f64, r2: f64, c: f64) -> bool {
    let s = r + r0 + r1 + r2;
    let big_r = r0 * r1 + r0 * r2 + r1 * r2 - 0.25 * s * s - c * c;
    r >= 0.0
        && r0 >= 0.0
        && r1 >= 0.0
        && r2 >= 0.0
        && big_r + r * r2 >= 0.0
        && big_r + r * r1 >= 0.0
        && big_r + r * r0 >= 0.0
}

/// Outcome of randomized positivity falsification.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub min_eigenvalue: f64,
    pub worst_point: [Complex64; 3],
    /// Index of the first trial that attained the minimum.
    pub worst_trial: usize,
    pub trials: usize,
}

/// Unit vector with i.i.d. complex standard normal components, normalized.
pub fn random_unit_vector<R: rand::Rng + ?Sized>(rng: &mut R) -> [Complex64; 3] {
    loop {
        let mut x = [ZERO; 3];
        for c in x.iter_mut() {
            *c = Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
        }
        let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            x.iter_mut().for_each(|c| *c /= norm);
            return x;
        }
    }
}

/// Samples `trials` random unit vectors `x` and reports the smallest eigenvalue
/// of `Ψ(|x⟩⟨x|)`. A negative result disproves positivity; a nonnegative one
/// proves nothing.
pub fn verify_positivity_sampling(map: &QuantumMap, trials: usize, seed: u64) -> Result<PositivityReport> {
    if trials == 0 {
        return Err(Error::InvalidInput("at least one trial is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<PositivityReport> = None;
    for trial in 0..trials {
        let x = random_unit_vector(&mut rng);
        let out = map.apply(&HermitianMatrix::projector(&x));
        let min = eig_herm(&out)?.min();
        if best.as_ref().map_or(true, |b| min < b.min_eigenvalue) {
            best = Some(PositivityReport { min_eigenvalue: min, worst_point: x, worst_trial: trial, trials });
        }
    }
    Ok(best.expect("trials >= 1"))
}
