//! Fixed-outage capacity of antenna-diversity, time/frequency-diversity and
//! hybrid-ARQ schemes over iid Rayleigh block fading.
//!
//! The crate is layered bottom-up:
//!
//! - [`special`]: CDF and inverse CDF of a sum of iid unit-mean exponentials.
//! - [`solver`]: bracketed bisection for monotone scalar functions.
//! - [`channel`]: seeded fading draws and per-draw mutual-information functionals.
//! - [`analytic`]: closed-form outage capacities and chase-combining metrics.
//! - [`montecarlo`]: quantile estimators and an event-level H-ARQ simulator.
//! - [`harq`]: operating points and asymptotic diagnostics.
//! - [`report`]: SNR sweeps, figure presets and CSV/JSON output.
//!
//! Monte Carlo work is split into fixed-size chunks, each owning its own RNG
//! substream. With the `parallel` feature (default) chunks run on rayon;
//! without it, or with [`Execution::Sequential`], they run in order on the
//! calling thread. Results are bit-identical either way.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod channel;
mod error;
mod exec;
pub mod harq;
pub mod montecarlo;
pub mod report;
pub mod solver;
pub mod special;

pub use channel::SnrPoint;
pub use error::{Error, Result};
pub use exec::Execution;
pub use montecarlo::{McConfig, McEstimate};
