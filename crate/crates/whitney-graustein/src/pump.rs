//! The 1-D area pump: pushing a curve along `x ↦ x - u·w` with `w = φ·y'`
//! changes the signed area affinely in `u`, so hitting any target area is one
//! linear solve. Everything that needs exact area control (normalization,
//! per-frame restoration inside homotopies, surgery outputs) goes through
//! here.

use std::f64::consts::TAU;

use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::spline::{integral_f_gprime, PeriodicSpline};

/// Width of the smooth shoulder a mask grows from zero to one outside an
/// excluded zone.
pub const MASK_RAMP: f64 = 0.15;

/// Pump direction samples `w_i = φ(s_i) · y'(s_i)`.
pub fn pump_weights(curve: &PlanarClosedCurve, phi: impl Fn(f64) -> f64) -> Vec<f64> {
    (0..curve.n())
        .map(|i| {
            let s = curve.node(i);
            phi(s) * curve.derivative(s).1
        })
        .collect()
}

/// Pump direction that vanishes smoothly on every excluded parameter zone.
///
/// Zones are intervals `(a, b)` on the circle; `a > b` means the zone wraps
/// through `2π`. Surgery code excludes the replacement window (so the pump
/// cannot feed back into the surgery) and a neighbourhood of every surviving
/// cusp (so the pump cannot flip a label).
pub fn masked_pump_weights(
    curve: &PlanarClosedCurve,
    excluded: &[(f64, f64)],
) -> Vec<f64> {
    (0..curve.n())
        .map(|i| {
            let s = curve.node(i);
            mask_value(s, excluded) * curve.derivative(s).1
        })
        .collect()
}

pub(crate) fn mask_value(s: f64, excluded: &[(f64, f64)]) -> f64 {
    let mut m = 1.0;
    for &(a, b) in excluded {
        m *= zone_factor(s, a, b);
        if m == 0.0 {
            return 0.0;
        }
    }
    m
}

fn zone_factor(s: f64, a: f64, b: f64) -> f64 {
    let a = a.rem_euclid(TAU);
    let b = b.rem_euclid(TAU);
    let t = s.rem_euclid(TAU);
    let inside = if a <= b { t >= a && t <= b } else { t >= a || t <= b };
    if inside {
        return 0.0;
    }
    // Cyclic distance to the nearer zone endpoint; C² ramp so masked pump
    // directions stay kink-free in their second derivative.
    let d = cyclic_distance(t, a).min(cyclic_distance(t, b));
    let u = (d / MASK_RAMP).clamp(0.0, 1.0);
    u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)
}

pub(crate) fn cyclic_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Slope `∮ W y' ds` of the area along the pump direction `w`.
pub fn pump_slope(curve: &PlanarClosedCurve, weights: &[f64]) -> f64 {
    let w_spline = PeriodicSpline::new(weights.to_vec());
    integral_f_gprime(&w_spline, curve.y_spline())
}

/// Moves the curve along the pump until its signed area equals `target`
/// exactly (up to rounding). Fails when the pump direction has no grip on the
/// area.
pub fn correct_area_exact(
    curve: &PlanarClosedCurve,
    weights: &[f64],
    target: f64,
) -> Result<PlanarClosedCurve> {
    let slope = pump_slope(curve, weights);
    let scale = curve.bbox_diagonal().max(1.0);
    if slope.abs() < 1e-12 * scale * scale {
        return Err(Error::Normalization { attempts: 0 });
    }
    let mut out = curve.clone();
    // The area is affine in u, so one step lands on target; a second pass
    // mops up rounding.
    for _ in 0..2 {
        let u = (out.signed_area() - target) / slope;
        if u == 0.0 {
            break;
        }
        let xs: Vec<f64> = out
            .xs()
            .iter()
            .zip(weights)
            .map(|(x, w)| x - u * w)
            .collect();
        out = PlanarClosedCurve::try_new(xs, out.ys().to_vec())?;
    }
    Ok(out)
}
