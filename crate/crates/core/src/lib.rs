//! Performance of dual-hop fixed-gain amplify-and-forward links that mix an
//! RF first hop (η-μ or κ-μ fading) with an FSO second hop (gamma-gamma
//! turbulence with pointing errors).
//!
//! The crate provides the end-to-end CDF, PDF, outage probability, its
//! high-SNR asymptote and the average BER of binary modulations, all as
//! finite sums of Meijer G-functions, together with two independent
//! verification engines: a seeded Monte-Carlo simulator and adaptive
//! quadrature of the defining integrals.

// NaN must fail parameter checks, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod cli;
pub mod endtoend;
pub mod error;
pub mod oracles;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
