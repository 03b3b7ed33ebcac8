//! Special functions: Mittag-Leffler, upper incomplete gamma, `E₁`, and
//! Tricomi's `U`.

mod incgamma;
mod mittag_leffler;

use crate::error::{Error, Result};

pub use incgamma::{exp_integral_e1, exp_scaled_e1, gamma_upper, tricomi_u, E1_SWITCH, EULER_GAMMA};
pub use mittag_leffler::{
    mittag_leffler_complex, mittag_leffler_neg, mittag_leffler_one, ml_asymptotic, ml_series,
    ml_spectral, ml_spectral_density, MLArg, ASYMPTOTIC_MIN_X, ASYMPTOTIC_TERMS, SERIES_MAX_X,
};

/// Controls for series evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 2000,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms == 0 {
            return Err(Error::DomainError(format!(
                "series config needs rel_tol > 0 and max_terms >= 1, got {} and {}",
                self.rel_tol, self.max_terms
            )));
        }
        Ok(())
    }
}
