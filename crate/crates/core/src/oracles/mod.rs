//! Independent reference engines: Monte-Carlo simulation of the relayed link
//! and adaptive quadrature of the defining integrals.

pub mod mc;
pub mod quadrature;
pub mod stats;

pub use mc::{
    draw, end_to_end_snr, mc_ber, mc_outage, sample_etamu, sample_gg_pointing, sample_kappamu, sample_rf, stream,
    McConfig, BLOCK_SIZE,
};
pub use quadrature::{quad_ber, quad_ber_relay, quad_cdf};

/// Estimate with its standard error (Monte-Carlo) or absolute error bound
/// (quadrature) and the number of samples or integrand evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub n: u64,
}
