//! Random fixtures shared by unit tests.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{ComplexMatrix, HermitianMatrix};

pub fn random_herm3(rng: &mut ChaCha8Rng) -> HermitianMatrix {
    random_herm(rng, 3)
}

pub fn random_herm(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
    HermitianMatrix::from_fn(n, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

pub fn random_complex3(rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(3, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

pub fn random_vec3(rng: &mut ChaCha8Rng) -> [Complex64; 3] {
    core::array::from_fn(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}
