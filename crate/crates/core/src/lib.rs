//! Positive stable laws and their free analogue, built around Kanter's
//! random variable `a_α(U)`.
//!
//! The crate is `no_std` and only needs `alloc`. It provides
//!
//! * a numerics kernel ([`numerics`]): complex log-Gamma, reciprocal Gamma,
//!   safeguarded root finding, adaptive Gauss–Kronrod quadrature,
//!   compensated series summation and counter-based random streams;
//! * Kanter's function, its inverse and exact samplers ([`kanter`]);
//! * series and closed forms for the stable density, the density of
//!   `X_α^{-α}` and the density `h_α` of the Kanter variable ([`stable_series`]);
//! * the Fox H-function pieces needed here: existence functionals, residue
//!   series and vertical-line Mellin–Barnes quadrature ([`fox_h`]);
//! * the positive free stable density and its contour constructions
//!   ([`free_stable`]);
//! * executable checks of the distributional identities ([`verify`]).
//!
//! File formats, the CLI and threaded execution live in the `kanter-cli`
//! companion crate.

#![no_std]

extern crate alloc;

mod error;
pub mod fox_h;
pub mod free_stable;
pub mod kanter;
pub mod numerics;
pub mod stable_series;
pub mod verify;

pub use error::{Error, Result};
pub use kanter::{SampleBatch, StabilityIndex, Transform};
pub use numerics::rng::RandomStream;
pub use numerics::series::SeriesPolicy;
