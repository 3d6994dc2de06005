//! Seeded randomized curve machinery: generic perturbation and band-limited
//! random curve generation for tests, fuzzing, and planner retries.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::homotopy::{verify, Interpolator, RegularHomotopy};
use crate::legendrian::scan_cusps;
use crate::pump::{correct_area_exact, pump_weights};

impl PlanarClosedCurve {
    /// Perturbs the curve until every zero of `y'` is simple with `x'` bounded
    /// away from zero there, using seeded low-order trigonometric bumps
    /// (harmonics at most 8, so no small-scale features appear). The signed
    /// area is restored exactly and the output is connected to the input by a
    /// certified straight-line homotopy. Already-generic curves come back
    /// untouched with an identity homotopy.
    pub fn perturb_generic(
        &self,
        magnitude: f64,
        cfg: &ToleranceConfig,
    ) -> Result<(Self, RegularHomotopy)> {
        self.require_regular(cfg)?;
        if scan_cusps(self, cfg).is_ok() {
            return Ok((self.clone(), RegularHomotopy::constant(self.clone())));
        }
        let area0 = self.signed_area();
        let rot0 = self.rotation_number(cfg)?;
        let n = self.n();
        let mut last: Option<Error> = None;

        for attempt in 0..cfg.retry_budget.max(1) {
            let mut rng =
                ChaCha8Rng::seed_from_u64(cfg.rng_seed ^ (0x70657274 + attempt as u64));
            let mut xs = self.xs().to_vec();
            let mut ys = self.ys().to_vec();
            let gain = magnitude * (1.0 + attempt as f64 / 4.0);
            for k in 1..=8usize {
                let (ax, bx, ay, by): (f64, f64, f64, f64) = (
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                );
                let amp = gain / (k * k) as f64;
                for i in 0..n {
                    let w = k as f64 * self.node(i);
                    xs[i] += amp * (ax * w.cos() + bx * w.sin());
                    ys[i] += amp * (ay * w.cos() + by * w.sin());
                }
            }
            let candidate = match PlanarClosedCurve::try_new(xs, ys) {
                Ok(c) => c,
                Err(e) => {
                    last = Some(e);
                    continue;
                }
            };
            let weights = pump_weights(&candidate, |_| 1.0);
            let candidate = match correct_area_exact(&candidate, &weights, area0) {
                Ok(c) => c,
                Err(e) => {
                    last = Some(e);
                    continue;
                }
            };
            if candidate.require_regular(cfg).is_err() {
                continue;
            }
            if scan_cusps(&candidate, cfg).is_err() {
                last = Some(Error::Genericity(format!(
                    "attempt {attempt} still degenerate"
                )));
                continue;
            }
            if candidate.rotation_number(cfg).ok() != Some(rot0) {
                continue;
            }
            let h = RegularHomotopy::single(
                self.clone(),
                candidate.clone(),
                Interpolator::StraightLine {
                    area_target: Some(area0),
                },
            )?;
            let expect_zero = area0.abs() <= cfg.eps_area;
            let report = verify(&h, self, &candidate, expect_zero, cfg);
            if report.pass {
                return Ok((candidate, h));
            }
            last = Some(Error::Certification {
                stage: "perturb_generic".into(),
                report: Box::new(report),
            });
        }
        Err(match last {
            Some(Error::Genericity(msg)) => Error::Genericity(msg),
            Some(other) => other,
            None => Error::Genericity("perturbation budget exhausted".into()),
        })
    }
}

/// A seeded random band-limited regular curve: a unit circle plus harmonics
/// up to `max_harmonic`, retried until the regularity certificate holds.
pub fn random_band_limited(
    seed: u64,
    n: usize,
    max_harmonic: usize,
    cfg: &ToleranceConfig,
) -> Result<PlanarClosedCurve> {
    for round in 0..32u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e3779b97f4a7c15) ^ round);
        let mut coeffs = Vec::new();
        for k in 1..=max_harmonic {
            let amp = 0.45 / (k * k) as f64;
            coeffs.push((
                k as f64,
                amp * rng.random_range(-1.0..1.0f64),
                amp * rng.random_range(-1.0..1.0f64),
                amp * rng.random_range(-1.0..1.0f64),
                amp * rng.random_range(-1.0..1.0f64),
            ));
        }
        let curve = PlanarClosedCurve::from_fn(n, |s| {
            let mut x = s.cos();
            let mut y = s.sin();
            for &(k, a, b, c, d) in &coeffs {
                x += a * (k * s).cos() + b * (k * s).sin();
                y += c * (k * s).cos() + d * (k * s).sin();
            }
            (x, y)
        })?;
        if curve.require_regular(cfg).is_ok() {
            return Ok(curve.with_name(format!("random({seed})")));
        }
    }
    Err(Error::Regularity {
        min_speed: 0.0,
        max_speed: 0.0,
    })
}

/// A seeded random regular curve with exactly zero signed area and simple
/// cusps. Used by the acceptance suite's 100-curve sweeps.
pub fn random_zero_area_generic(
    seed: u64,
    n: usize,
    cfg: &ToleranceConfig,
) -> Result<PlanarClosedCurve> {
    for round in 0..16u64 {
        let Ok(curve) = random_band_limited(seed ^ (round << 32), n, 4, cfg) else {
            continue;
        };
        let weights = pump_weights(&curve, |_| 1.0);
        let Ok(flat) = correct_area_exact(&curve, &weights, 0.0) else {
            continue;
        };
        if flat.require_regular(cfg).is_err() {
            continue;
        }
        let generic = if scan_cusps(&flat, cfg).is_ok() {
            flat
        } else {
            let magnitude = 0.01 * flat.bbox_diagonal();
            match flat.perturb_generic(magnitude, cfg) {
                Ok((c, _)) => c,
                Err(_) => continue,
            }
        };
        if generic.signed_area().abs() <= cfg.eps_area {
            return Ok(generic);
        }
    }
    Err(Error::Genericity(format!(
        "no generic zero-area curve for seed {seed}"
    )))
}
