//! Constructive realizations of complex spectra by nonnegative, mostly
//! permutative, matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`spectra`]: candidate spectra, conjugate-pairing classification and the
//!   pairing-preserving reorderings used by the condition checker.
//! * [`dft`]: the unitary DFT matrix `F`, the half-shifted matrix `G`, and the
//!   forward/inverse maps between first rows and (skew) circulant spectra.
//! * [`structured`]: circulant, skew circulant and absolutely circulant
//!   matrices, plus recognition of permutative matrices.
//! * [`block`]: 2×2-block spectrum splits and the nonnegative block builds.
//! * [`realize`]: end-to-end realizers (4×4 closed form, the `(1, r, a±ib)`
//!   region, the sufficient-condition checker, rank-one augmentation).
//! * [`oracle`]: an independent dense eigensolver and multiset matching used to
//!   verify every construction.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod block;
pub mod dft;
mod error;
pub mod matrix;
pub mod oracle;
pub mod realize;
pub mod spectra;
pub mod structured;

pub use error::Error;
pub use matrix::{ComplexMatrix, RealMatrix};
pub use num_complex::Complex64;
pub use spectra::ComplexList;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
