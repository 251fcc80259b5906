//! Foundation numerics shared by every other module.

pub mod gamma;
pub mod quad;
pub mod rng;
pub mod roots;
pub mod series;
pub mod stats;

pub use gamma::{
    gamma, gamma_multiplication, ln_gamma, ln_gamma_complex, ln_recip_gamma, recip_gamma, sin_pi,
};
pub use quad::{integrate, integrate_semi_infinite, QuadResult};
pub use roots::find_root_monotone;
pub use series::{sum_series, CompensatedSum, SeriesOutcome, SeriesPolicy};
