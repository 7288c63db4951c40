//! Complex tight framelet filter banks with frequency separation.
//!
//! The crate is `no_std` with `alloc`. It covers Laurent polynomial
//! arithmetic, spectral factorization, the frequency-separation bound and
//! its pointwise optimizer, shortest-support bank construction, lattice
//! optimization of the separation integral, and cascade rendering of the
//! refinable function, wavelets and 2D tensor generators.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod catalog;
pub mod construct;
mod error;
pub mod laurent;
pub mod optimize;
pub mod render;
pub mod spectral;

pub use analysis::{Field, FilterBank, SeparationReport, TightCheck};
pub use error::{Error, Result};
pub use laurent::{combine, LaurentPoly, RingOp};
pub use num_complex::Complex64;
