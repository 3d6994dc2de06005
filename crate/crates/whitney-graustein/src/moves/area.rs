//! Area normalization: a certified regular homotopy from any regular curve to
//! a curve of exactly zero signed area.
//!
//! The curve is pushed along `x_u = x - u·φ·y'` for a positive weight `φ`.
//! The signed area is affine in `u` with slope `-∮ φ y'² ds`, so the zero is
//! one division away; what needs certifying is that the straight path stays
//! regular. The path pinches exactly when some zero `s_z` of `y'` reaches
//! `x'(s_z) = u·(φ y')'(s_z)` inside `[0, u*]`, which depends on the weight —
//! hence a deterministic ladder of weights followed by seeded random ones.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::homotopy::{verify, Interpolator, RegularHomotopy};
use crate::pump::{correct_area_exact, pump_slope, pump_weights};

/// Deforms `curve` to signed area zero (machine precision) through a
/// certified regular homotopy; the rotation number is untouched.
pub fn normalize_area(
    curve: &PlanarClosedCurve,
    cfg: &ToleranceConfig,
) -> Result<(PlanarClosedCurve, RegularHomotopy)> {
    let area0 = curve.signed_area();
    if area0.abs() <= cfg.eps_area {
        return Ok((curve.clone(), RegularHomotopy::constant(curve.clone())));
    }
    curve.require_regular(cfg)?;

    // A certified path is not enough: a nearly-pinched endpoint (tiny
    // relative speed, huge curvature) poisons every later pipeline stage, so
    // keep looking until the endpoint is comfortably regular and fall back
    // to the best certifying endpoint otherwise.
    const GOOD_RATIO: f64 = 0.02;
    let attempts = 29 + cfg.retry_budget;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed ^ 0x6172_6561);
    let mut best: Option<(f64, PlanarClosedCurve, RegularHomotopy)> = None;
    for attempt in 0..attempts {
        let phi = weight_for_attempt(curve, attempt, &mut rng, cfg);
        let weights = pump_weights(curve, phi);
        let slope = pump_slope(curve, &weights);
        let scale = curve.bbox_diagonal().max(1.0);
        if slope.abs() < 1e-10 * scale * scale {
            continue;
        }
        let u_star = area0 / slope;
        let xs: Vec<f64> = curve
            .xs()
            .iter()
            .zip(&weights)
            .map(|(x, w)| x - u_star * w)
            .collect();
        let Ok(endpoint) = PlanarClosedCurve::try_new(xs, curve.ys().to_vec()) else {
            continue;
        };
        let Ok(endpoint) = correct_area_exact(&endpoint, &weights, 0.0) else {
            continue;
        };
        let Ok(cert) = endpoint.require_regular(cfg) else {
            continue;
        };
        let Ok(h) = RegularHomotopy::single(
            curve.clone(),
            endpoint.clone(),
            Interpolator::StraightLine { area_target: None },
        ) else {
            continue;
        };
        let report = verify(&h, curve, &endpoint, false, cfg);
        if !report.pass {
            continue;
        }
        let quality = cert.ratio();
        if quality >= GOOD_RATIO {
            return Ok((endpoint, h));
        }
        if best.as_ref().is_none_or(|(q, _, _)| quality > *q) {
            best = Some((quality, endpoint, h));
        }
    }
    match best {
        Some((_, endpoint, h)) => Ok((endpoint, h)),
        None => Err(Error::Normalization { attempts }),
    }
}

/// Weight ladder: the constant weight, then single-harmonic perturbations
/// `1 ± cos(ks)/2`, `1 ± sin(ks)/2` for `k <= 6` (smooth weights give smooth
/// endpoints, which the rest of the pipeline is happiest with), then
/// pinch-safe needle profiles, then seeded random weights.
///
/// The path can only pinch at a zero `s_z` of `y'`, where the singular
/// parameter is `u = x'(s_z) / (φ(s_z)·y''(s_z))`. Varying the harmonic
/// moves those singular parameters around; the needle profiles, which nearly
/// vanish wherever `y'` is small, push them beyond the path end outright.
fn weight_for_attempt(
    curve: &PlanarClosedCurve,
    attempt: usize,
    rng: &mut ChaCha8Rng,
    cfg: &ToleranceConfig,
) -> Box<dyn Fn(f64) -> f64> {
    match attempt {
        0 => Box::new(|_| 1.0),
        1..=24 => {
            // Harmonic order 2 first (it resolves the unit circle), then the rest.
            let k = [2.0, 1.0, 3.0, 4.0, 5.0, 6.0][(attempt - 1) / 4];
            match (attempt - 1) % 4 {
                0 => Box::new(move |s| 1.0 + 0.5 * (k * s).cos()),
                1 => Box::new(move |s| 1.0 - 0.5 * (k * s).cos()),
                2 => Box::new(move |s| 1.0 + 0.5 * (k * s).sin()),
                _ => Box::new(move |s| 1.0 - 0.5 * (k * s).sin()),
            }
        }
        25..=28 => {
            let eps = [0.1, 0.03, 0.01, 0.003][attempt - 25];
            Box::new(safety_profile(curve, eps, cfg))
        }
        _ => {
            let coeffs: Vec<(f64, f64)> = (0..3)
                .map(|_| (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let sup: f64 = coeffs.iter().map(|(a, b)| a.abs() + b.abs()).sum();
            let gain = if sup > 0.0 { 0.5 / sup } else { 0.0 };
            let needle = attempt.is_multiple_of(2);
            let safety = safety_profile(curve, 0.03, cfg);
            Box::new(move |s| {
                let ripple: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, (a, b))| {
                        let w = (k + 1) as f64 * s;
                        a * w.cos() + b * w.sin()
                    })
                    .sum();
                let base = if needle { safety(s) } else { 1.0 };
                base * (1.0 + gain * ripple)
            })
        }
    }
}

/// A positive weight that dips to `eps` wherever `y'` is small.
fn safety_profile(
    curve: &PlanarClosedCurve,
    eps: f64,
    cfg: &ToleranceConfig,
) -> impl Fn(f64) -> f64 + 'static {
    let m = cfg.grid_refine.max(1) * curve.n();
    let max_yp = (0..m)
        .map(|k| curve.derivative(std::f64::consts::TAU * k as f64 / m as f64).1.abs())
        .fold(0.0f64, f64::max)
        .max(1e-12);
    let floor = 0.2 * max_yp;
    let yp_samples: Vec<f64> = (0..curve.n()).map(|i| curve.derivative(curve.node(i)).1).collect();
    let n = curve.n();
    move |s: f64| {
        // Nearest-sample lookup keeps the closure cheap and deterministic.
        let i = ((s.rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU * n as f64)
            .round() as usize)
            % n;
        let r = (yp_samples[i] / floor).abs().min(1.0);
        eps + (1.0 - eps) * r * r
    }
}
