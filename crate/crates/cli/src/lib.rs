//! Sweeps, classification, entanglement detection and zero prescription for
//! positive maps on 3×3 matrices, with CSV/JSON file formats.

pub mod classify;
pub mod detect;
pub mod error;
pub mod family;
pub mod prescribe;
pub mod sweep;

pub use error::CliError;
