//! Choi matrices, partial transposition, `Φ ⊗ Id` lifts and the biquadratic
//! form of a map.
//!
//! Bipartite 9×9 matrices use the composite index `(i, k) ↦ 3i + k`, where `i`
//! belongs to the first factor (the one maps act on) and `k` to the second.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::{eig_herm, numeric_rank, ComplexMatrix, HermitianMatrix, Spectrum, DEFAULT_PSD_TOL};
use crate::qmaps::{mn_b, FamilyParams, QuantumMap};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Absolute tolerance for spectrum fixtures.
pub const SPECTRUM_TOL: f64 = 1e-9;

/// `C(Ψ) = Σ_kl Ψ(E_kl) ⊗ E_kl`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    inner: HermitianMatrix,
}

impl ChoiMatrix {
    pub fn matrix(&self) -> &HermitianMatrix {
        &self.inner
    }

    pub fn into_inner(self) -> HermitianMatrix {
        self.inner
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        eig_herm(&self.inner)
    }
}

/// Choi matrix built entry by entry: `((i,k),(j,l)) ↦ a_ijkl`.
pub fn choi_matrix(map: &QuantumMap) -> ChoiMatrix {
    let mut inner = HermitianMatrix::zeros(9);
    for r in 0..9 {
        for c in r..9 {
            let (i, k) = (r / 3, r % 3);
            let (j, l) = (c / 3, c % 3);
            inner.set(r, c, map.coeff(i, j, k, l));
        }
    }
    ChoiMatrix { inner }
}

/// Choi matrix built as `(Ψ ⊗ Id)(|χ⟩⟨χ|)`.
pub fn choi_matrix_via_lift(map: &QuantumMap) -> ChoiMatrix {
    ChoiMatrix { inner: lift(map, &maximally_entangled_projector()) }
}

/// `|χ⟩⟨χ|` with `χ = Σ_i e_i ⊗ e_i` (unnormalised, trace 3).
pub fn maximally_entangled_projector() -> HermitianMatrix {
    let mut chi = [ZERO; 9];
    for i in 0..3 {
        chi[4 * i] = Complex64::new(1.0, 0.0);
    }
    HermitianMatrix::projector(&chi)
}

/// `(T ⊗ Id) ρ`: entry `((i,k),(j,l))` becomes `ρ((j,k),(i,l))`.
pub fn partial_transpose(rho: &HermitianMatrix) -> HermitianMatrix {
    assert_eq!(rho.n(), 9, "bipartite matrices are 9x9");
    let mut out = HermitianMatrix::zeros(9);
    for r in 0..9 {
        for c in r..9 {
            let (i, k) = (r / 3, r % 3);
            let (j, l) = (c / 3, c % 3);
            out.set(r, c, rho.get(3 * j + k, 3 * i + l));
        }
    }
    out
}

/// `(Φ ⊗ Id) ρ`: output block `(i, j)` is `Σ_kl a_ijkl ρ_block(k, l)`.
pub fn lift(map: &QuantumMap, rho: &HermitianMatrix) -> HermitianMatrix {
    assert_eq!(rho.n(), 9, "bipartite matrices are 9x9");
    let mut out = HermitianMatrix::zeros(9);
    for r in 0..9 {
        for c in r..9 {
            let (i, s) = (r / 3, r % 3);
            let (j, u) = (c / 3, c % 3);
            let mut acc = ZERO;
            for k in 0..3 {
                for l in 0..3 {
                    let a = map.coeff(i, j, k, l);
                    if a != ZERO {
                        acc += a * rho.get(3 * k + s, 3 * l + u);
                    }
                }
            }
            out.set(r, c, acc);
        }
    }
    out
}

/// A pair of projective points `(x, y)`, stored as given.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroPoint {
    pub x: [Complex64; 3],
    pub y: [Complex64; 3],
}

fn norm3(v: &[Complex64; 3]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

impl ZeroPoint {
    pub fn new(x: [Complex64; 3], y: [Complex64; 3]) -> Result<Self> {
        let ok = |v: &[Complex64; 3]| v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) && norm3(v) > 0.0;
        if !ok(&x) || !ok(&y) {
            return Err(Error::InvalidInput("zero point coordinates must be finite and nonzero"));
        }
        Ok(Self { x, y })
    }

    /// Real representatives, as in the classical zero lists.
    pub fn real(x: [f64; 3], y: [f64; 3]) -> Result<Self> {
        Self::new(x.map(|v| Complex64::new(v, 0.0)), y.map(|v| Complex64::new(v, 0.0)))
    }

    /// Both representatives rescaled to unit Euclidean norm.
    pub fn normalized(&self) -> Self {
        let (nx, ny) = (norm3(&self.x), norm3(&self.y));
        Self { x: self.x.map(|c| c / nx), y: self.y.map(|c| c / ny) }
    }

    /// Both representatives rescaled so the largest coordinate modulus is 1.
    pub fn max_normalized(&self) -> Self {
        let m = |v: &[Complex64; 3]| v.iter().fold(0.0f64, |a, c| a.max(c.norm()));
        let (mx, my) = (m(&self.x), m(&self.y));
        Self { x: self.x.map(|c| c / mx), y: self.y.map(|c| c / my) }
    }
}

/// `p_Ψ(x, y) = ⟨y| Ψ(|x⟩⟨x|) |y⟩` on the stored representatives.
pub fn biquadratic_form(map: &QuantumMap, z: &ZeroPoint) -> f64 {
    let image = map.apply(&HermitianMatrix::projector(&z.x));
    let mut acc = ZERO;
    for i in 0..3 {
        for j in 0..3 {
            acc += z.y[i].conj() * image.get(i, j) * z.y[j];
        }
    }
    acc.re
}

/// `‖Ψ(|x⟩⟨x|)|y⟩‖` on unit-norm representatives; vanishes at every zero of a
/// positive map.
pub fn kernel_residual(map: &QuantumMap, z: &ZeroPoint) -> f64 {
    let z = z.normalized();
    let image = map.apply(&HermitianMatrix::projector(&z.x));
    (0..3)
        .map(|i| (0..3).map(|j| image.get(i, j) * z.y[j]).sum::<Complex64>().norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// CP / co-CP verdicts from the Choi matrices of `Ψ` and `T ∘ Ψ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub is_cp: bool,
    pub is_co_cp: bool,
    pub min_choi_eig: f64,
    pub min_co_choi_eig: f64,
}

pub fn classify(map: &QuantumMap) -> Result<Classification> {
    let c = choi_matrix(map).into_inner();
    let co = choi_matrix(&map.compose_transpose()).into_inner();
    let (min_c, min_co) = (eig_herm(&c)?.min(), eig_herm(&co)?.min());
    let psd = |min: f64, m: &HermitianMatrix| min >= -DEFAULT_PSD_TOL * m.frobenius_norm().max(1.0);
    Ok(Classification {
        is_cp: psd(min_c, &c),
        is_co_cp: psd(min_co, &co),
        min_choi_eig: min_c,
        min_co_choi_eig: min_co,
    })
}

/// Whether `Ψ(Z) = scale · A Z A†` on every matrix unit, to `1e-10` relative.
pub fn check_kraus_rank1(map: &QuantumMap, a: &ComplexMatrix, scale: f64) -> bool {
    let ad = a.adjoint();
    let mut diff = 0.0f64;
    let mut size = 0.0f64;
    for k in 0..3 {
        for l in 0..3 {
            let e = ComplexMatrix::unit(3, k, l);
            let expect = a.matmul(&e).matmul(&ad).scaled(Complex64::new(scale, 0.0));
            let got = map.apply_matrix(&e);
            diff = diff.max(got.sub(&expect).frobenius_norm());
            size = size.max(expect.frobenius_norm()).max(got.frobenius_norm());
        }
    }
    diff <= 1e-10 * size.max(1e-300)
}

/// Numeric rank of `C(Ψ)`.
pub fn kraus_rank(map: &QuantumMap, tol: f64) -> Result<usize> {
    numeric_rank(choi_matrix(map).matrix(), tol)
}

fn sorted<const N: usize>(mut v: [f64; N]) -> [f64; N] {
    v.sort_by(f64::total_cmp);
    v
}

/// Closed-form spectrum of `C(Ψ_t)`, ascending.
pub fn choi_spectrum_t(t: f64) -> [f64; 9] {
    let t4 = t.powi(4);
    let e = 2.0 - 3.0 * t * t + 2.0 * t4;
    sorted([1.0, 1.0, 1.0, t4, t4, t4, -(1.0 + t4), e, e])
}

/// Closed-form spectrum of `C(T ∘ Ψ_t)`, ascending.
pub fn co_choi_spectrum_t(t: f64) -> [f64; 9] {
    let t2 = t * t;
    let t4 = t2 * t2;
    let d = (t2 - 1.0) * (t2 - 1.0);
    let root = (5.0 - 8.0 * t2 + 10.0 * t4 - 8.0 * t4 * t2 + 5.0 * t4 * t4).sqrt();
    let (lo, hi) = (0.5 * (1.0 + t4 - root), 0.5 * (1.0 + t4 + root));
    sorted([d, d, d, lo, lo, lo, hi, hi, hi])
}

/// Closed-form spectrum of `C(Ψ_{p,q})`, ascending.
pub fn choi_spectrum_pq(p: f64, q: f64) -> [f64; 9] {
    let (p2, q2) = (p * p, q * q);
    let pq = p * q;
    let c00 = (1.0 - pq) * (1.0 - pq);
    let c04 = -pq * (1.0 + (p2 - 1.0) * q2);
    let c11 = (2.0 * p - q) * q;
    let c08 = -(1.0 - pq) * (p2 + (p2 - 1.0) * (q2 - pq));
    let s = c08 + (p2 + q2) * c00;
    let d = 2.0 * c04 * c04 - q2 * c00 * c08 - p2 * q2 * c00 * c00;
    let root = (s * s + 4.0 * d).max(0.0).sqrt();
    sorted([
        0.0,
        c11,
        c11,
        (1.0 - p2 * q2) * c11,
        p2 * c00 - c08,
        p2 * q2 * c11,
        p2 * q2 * c11,
        0.5 * (s - root),
        0.5 * (s + root),
    ])
}

/// The negative eigenvalue of `C(T ∘ Ψ_{p,q})`.
pub fn co_choi_negative_eigenvalue_pq(p: f64, q: f64) -> f64 {
    let pq = p * q;
    let w = (1.0 + pq * pq) * (2.0 * p - q);
    let under = w * w + 4.0 * p * p * (1.0 - pq).powi(2) * ((1.0 + pq).powi(2) - 2.0 * q * q);
    0.5 * q * (w - under.max(0.0).sqrt())
}

/// Closed-form spectrum of the Choi matrix of the five-parameter family.
pub fn choi_spectrum_choi_family(r: f64, r0: f64, r1: f64, r2: f64, c: f64) -> [f64; 9] {
    let half = 0.5 * (r + r0 + r1 + r2);
    let root = (3.0 * c * c + r0 * r0 + r1 * r1 + r2 * r2 - r0 * r1 - r0 * r2 - r1 * r2).max(0.0).sqrt();
    sorted([-r, r, r, r, 0.0, 0.0, 0.0, half - root, half + root])
}

fn lists_match(numeric: &[f64], closed: &[f64]) -> bool {
    numeric.len() == closed.len() && numeric.iter().zip(closed).all(|(a, b)| (a - b).abs() <= SPECTRUM_TOL)
}

fn count_near(values: &[f64], target: f64) -> usize {
    values.iter().filter(|v| (*v - target).abs() <= SPECTRUM_TOL).count()
}

/// Compares numeric Choi spectra with the closed forms available for the
/// family, to [`SPECTRUM_TOL`] absolute.
///
/// For `(m, n)` only partial information is available in closed form: the
/// spectrum must contain `0, 0, b, b` and at most one negative eigenvalue.
pub fn spectrum_fixture_check(params: &FamilyParams) -> Result<bool> {
    let map = params.map();
    let numeric = choi_matrix(&map).spectrum()?.eigenvalues;
    Ok(match *params {
        FamilyParams::T { t } => {
            let co = choi_matrix(&map.compose_transpose()).spectrum()?.eigenvalues;
            lists_match(&numeric, &choi_spectrum_t(t)) && lists_match(&co, &co_choi_spectrum_t(t))
        }
        FamilyParams::Pq { p, q } => {
            let co = choi_matrix(&map.compose_transpose()).spectrum()?.eigenvalues;
            let neg = co_choi_negative_eigenvalue_pq(p, q);
            lists_match(&numeric, &choi_spectrum_pq(p, q)) && count_near(&co, neg) >= 1
        }
        FamilyParams::ChoiFamily { r, r0, r1, r2, c } => {
            lists_match(&numeric, &choi_spectrum_choi_family(r, r0, r1, r2, c))
        }
        FamilyParams::Mn { m, n } => {
            let b = mn_b(m, n);
            let negatives = numeric.iter().filter(|&&v| v < -SPECTRUM_TOL).count();
            let (zeros, bs) = (count_near(&numeric, 0.0), count_near(&numeric, b));
            let values_ok = if b.abs() <= SPECTRUM_TOL { zeros >= 4 } else { zeros >= 2 && bs >= 2 };
            values_ok && negatives <= 1
        }
    })
}

/// Eigenvalues of `lift(Ψ_C†, ρ)`; negative entries detect `ρ` as entangled.
pub fn choi_map_test(rho: &HermitianMatrix) -> Result<Vec<f64>> {
    Ok(eig_herm(&lift(&crate::qmaps::make_choi_map().adjoint(), rho))?.eigenvalues)
}
