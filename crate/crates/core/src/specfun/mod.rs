//! Special functions needed by the closed forms: log-gamma, regularized
//! incomplete gamma, modified Bessel I and the Meijer G-function.

pub mod bessel;
pub mod gamma;
pub mod incgamma;
pub mod meijer;

pub use bessel::{bessel_i, ln_bessel_i};
pub use gamma::{gamma, ln_gamma, ln_gamma_signed};
pub use incgamma::{gamma_lower_reg, gamma_upper_reg, poisson_tail};
pub use meijer::{
    meijer_g, meijer_g_detailed, meijer_g_leading_residues, meijer_g_residue_series, GDiagnostics,
    GEvalOptions, GMethod, GValue, MeijerGSpec,
};
