//! Numerical thresholds, grid sizes, and retry budgets shared by all operations.

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// All tolerances used by the library.
///
/// Every operation that certifies something (regularity, zero area, genericity,
/// homotopy validity) reads its thresholds from here, so a single config value
/// pins the behaviour of the whole pipeline. The random seed lives here too:
/// there is no hidden global state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative speed floor: a curve is regular when `min |c'| >= eps_speed * max |c'|`.
    pub eps_speed: f64,
    /// Absolute bound on the signed area of a curve that claims to be zero-area.
    pub eps_area: f64,
    /// Simple-zero threshold: at a zero of `y'` we need `|y''| >= eps_zero` and `|x'| >= eps_zero`.
    pub eps_zero: f64,
    /// Certification grids use `grid_refine * n` parameter samples.
    pub grid_refine: usize,
    /// Frames sampled per homotopy segment during certification.
    pub frame_count: usize,
    /// Retry budget for seeded randomized fallbacks (perturbation, pump weights, bisection).
    pub retry_budget: usize,
    /// Seed for every randomized fallback in the library.
    pub rng_seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_speed: 1e-4,
            eps_area: 1e-9,
            eps_zero: 1e-6,
            grid_refine: 8,
            frame_count: 64,
            retry_budget: 16,
            rng_seed: 0,
        }
    }
}

impl ToleranceConfig {
    /// Checks that every threshold is strictly positive and `frame_count >= 2`.
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.eps_speed > 0.0 && self.eps_area > 0.0 && self.eps_zero > 0.0) {
            return Err(Error::Precondition(
                "tolerances must be strictly positive".into(),
            ));
        }
        if self.grid_refine == 0 {
            return Err(Error::Precondition("grid_refine must be positive".into()));
        }
        if self.frame_count < 2 {
            return Err(Error::Precondition("frame_count must be at least 2".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        ToleranceConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_nonpositive_thresholds() {
        let cfg = ToleranceConfig {
            eps_speed: 0.0,
            ..ToleranceConfig::default()
        };
        assert!(cfg.validate().is_err());

        let cfg = ToleranceConfig {
            frame_count: 1,
            ..ToleranceConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
