//! Positive but not completely positive maps on 3×3 Hermitian matrices.
//!
//! The crate covers the whole numerical pipeline behind the construction of
//! entangled PPT states on C³⊗C³:
//!
//! * [`linalg`]: small dense real-symmetric / Hermitian linear algebra
//!   (cyclic Jacobi eigensolver, inverse square roots, Jacobi SVD nullspaces).
//! * [`qmaps`]: self-adjointness preserving maps M₃ → M₃ stored as coefficient
//!   tensors, the named families and their closed-form positivity regions.
//! * [`choi`]: Choi matrices, partial transposition, `Φ ⊗ Id` lifts,
//!   biquadratic forms and CP / co-CP classification.
//! * [`prescribe`]: the linear system obtained by prescribing zeros of the
//!   biquadratic form, and its solution family.
//! * [`sdp`]: a log-barrier path-following solver for the two 9×9 programs
//!   that search for PPT states not detected by transposition or the Choi map.
//!
//! Everything here is `no_std` (with `alloc`); file formats, sweeps and the
//! command line live in the companion `posmap` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod choi;
mod error;
pub mod linalg;
pub mod prescribe;
pub mod qmaps;
pub mod sdp;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use num_complex::Complex64;
