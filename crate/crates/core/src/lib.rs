//! Exact arithmetic for Cauchy numbers and their higher-order binomial
//! convolutions.
//!
//! The crate computes Stirling triangles, Cauchy numbers, binomial
//! convolutions of truncated sequences and the Irwin-Hall density as an exact
//! spline, then checks that the `m`-fold convolution identity holds by four
//! independent routes.

pub mod cli;
pub mod combinatorics;
pub mod convolution;
pub mod error;
pub mod exactnum;
pub mod irwinhall;
pub mod poly;
pub mod render;
pub mod verify;

pub use combinatorics::{cauchy_number, cauchy_numbers, descending_factorial_at, descending_factorial_poly, StirlingTable};
pub use convolution::{CompositionList, EgfSequence};
pub use error::{Error, Result};
pub use exactnum::{binomial, multinomial, ExactRational};
pub use irwinhall::PiecewisePoly;
pub use poly::DensePoly;
pub use verify::{IdentityReport, MonteCarloReport};
