//! Builtin curve catalog, addressable as `catalog:NAME` from the CLI.
//!
//! * `circle` — `(cos s, sin s)`, rotation number 1.
//! * `kcircle(k)` — `(cos ks, sin ks)`, rotation number `k` (nonzero).
//! * `figure8` — `(cos s, sin 2s)`, rotation number 0, zero area.
//! * `std(n)` — the standard model of rotation number `n`.
//! * `fig2(t)` / `fig2-family(t)` — the shrinking-loop limaçon family used as
//!   the verifier's negative test: every slice is regular away from the
//!   pinch, but the rotation number drops from 2 to 1 as the inner loop dies.

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::moves::standard_curve;

/// Builds a catalog curve at `n` samples.
pub fn catalog(name: &str, n: usize, cfg: &ToleranceConfig) -> Result<PlanarClosedCurve> {
    let trimmed = name.trim();
    match trimmed {
        "circle" => {
            return Ok(PlanarClosedCurve::from_fn(n, |s| (s.cos(), s.sin()))?
                .with_name("circle"));
        }
        "figure8" => {
            return Ok(
                PlanarClosedCurve::from_fn(n, |s| (s.cos(), (2.0 * s).sin()))?
                    .with_name("figure8"),
            );
        }
        _ => {}
    }
    if let Some(arg) = argument_of(trimmed, "kcircle") {
        let k: i64 = arg
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        if k == 0 {
            return Err(Error::Precondition("kcircle(0) is not regular".into()));
        }
        let kf = k as f64;
        return Ok(
            PlanarClosedCurve::from_fn(n, move |s| ((kf * s).cos(), (kf * s).sin()))?
                .with_name(format!("kcircle({k})")),
        );
    }
    if let Some(arg) = argument_of(trimmed, "std") {
        let rot: i64 = arg
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        return standard_curve(rot, n, cfg);
    }
    for prefix in ["fig2-family", "fig2"] {
        if let Some(arg) = argument_of(trimmed, prefix) {
            let t: f64 = arg
                .parse()
                .map_err(|_| Error::UnknownName(name.to_string()))?;
            return Ok(fig2_family(t, n)?.with_name(format!("fig2({t})")));
        }
    }
    Err(Error::UnknownName(name.to_string()))
}

fn argument_of<'a>(name: &'a str, prefix: &str) -> Option<&'a str> {
    name.strip_prefix(prefix)?
        .strip_prefix('(')?
        .strip_suffix(')')
}

/// Limaçon slice `((b + cos s)·cos s, (b + cos s)·sin s)` with
/// `b = 0.3 + 0.75·t`: an inner loop (rotation number 2) that pinches off at
/// `t = 14/15` and leaves a plain loop (rotation number 1). The crossing
/// parameter is not a dyadic rational, so uniform frame grids never sample
/// the singular slice itself.
pub fn fig2_family(t: f64, n: usize) -> Result<PlanarClosedCurve> {
    let b = 0.3 + 0.75 * t;
    PlanarClosedCurve::from_fn(n, move |s| {
        let r = b + s.cos();
        (r * s.cos(), r * s.sin())
    })
}
