//! Per-hop channel models: η-μ and κ-μ RF fading, Gamma-Gamma FSO turbulence
//! with pointing errors.

pub mod etamu;
pub mod fso;
pub mod kappamu;
pub mod mixture;

pub use etamu::{etamu_cdf, EtaMuParams};
pub use fso::{
    derive_turbulence, gg_pdf, gg_pdf_with, pointing_fraction, Detection, FsoChannelParams, LinkGeometry, Turbulence,
    DEFAULT_RYTOV_COEFF,
};
pub use kappamu::{kappamu_cdf, kappamu_pdf, nakagami_cdf, KappaMuParams, SeriesValue, MAX_SERIES_TERMS};
pub use mixture::{ErlangMixture, ErlangTerm};

/// RF-hop fading model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RfFading {
    EtaMu(EtaMuParams),
    KappaMu(KappaMuParams),
}

impl RfFading {
    pub fn gamma_bar1(&self) -> f64 {
        match self {
            RfFading::EtaMu(p) => p.gamma_bar1(),
            RfFading::KappaMu(p) => p.gamma_bar1(),
        }
    }

    pub fn with_gamma_bar1(&self, g: f64) -> crate::Result<Self> {
        Ok(match self {
            RfFading::EtaMu(p) => RfFading::EtaMu(p.with_gamma_bar1(g)?),
            RfFading::KappaMu(p) => RfFading::KappaMu(p.with_gamma_bar1(g)?),
        })
    }

    /// Marginal CDF of the RF SNR.
    pub fn cdf(&self, gamma1: f64) -> f64 {
        match self {
            RfFading::EtaMu(p) => p.cdf(gamma1),
            RfFading::KappaMu(p) => p.cdf(gamma1),
        }
    }

    pub fn pdf(&self, gamma1: f64) -> f64 {
        match self {
            RfFading::EtaMu(p) => p.pdf(gamma1),
            RfFading::KappaMu(p) => p.pdf(gamma1),
        }
    }
}
