//! Geometric Reidemeister-I surgeries on zero-area generic curves: cancelling
//! or creating an adjacent pair of opposite-orientation cusps by rewriting
//! `y` on a parameter window, with `x` untouched inside the window.
//!
//! Cancellation replaces `y` on a window around the pair by a monotone C¹
//! profile matching the boundary values and slopes. Three facts make the
//! blended homotopy `y_t = (1-t)·y + t·y_target` work:
//!
//! * outside the inter-cusp arc, `y'` and the target slope share one sign, so
//!   the blend's `y'` never vanishes there for any `t`;
//! * on the inter-cusp arc the blend must die once (that is the move), and
//!   regularity survives because `x'` keeps one sign on a guard interval
//!   around that arc — which is exactly why equal-label pairs are excluded:
//!   their guard necessarily contains a zero of `x'`;
//! * the area lost by the rewrite is restored by a pump supported away from
//!   the window and away from every surviving cusp, so no label can flip.
//!
//! A monotone profile with the right boundary data exists only when the rise
//! across the window dominates the boundary slopes; the window is therefore
//! widened toward the neighbouring cusps until the profile has enough room.
//! Creation is the inverse move: carve a dip into a cusp-free window whose
//! forced labels match the request.

use std::f64::consts::TAU;

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::homotopy::{concatenate, verify, Interpolator, RegularHomotopy};
use crate::legendrian::{scan_cusps, Cusp, CuspOrientation, CuspWord, Side};
use crate::pump::{correct_area_exact, cyclic_distance, masked_pump_weights, MASK_RAMP};

/// The window data a surgery certifies against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurgeryWindow {
    /// Replacement interval (unwrapped: `start < end`, membership is cyclic).
    pub start: f64,
    pub end: f64,
    /// Interval on which `x'` was certified to keep one sign.
    pub guard: (f64, f64),
    /// Sign of `y'` at the window boundary.
    pub slope_sign: f64,
}

/// Margin fractions tried when searching for a feasible window, widest first:
/// the monotone profile needs room, while the spline junctions prefer staying
/// off the neighbouring cusps.
const MARGIN_GRID: [(f64, f64); 12] = [
    (0.95, 0.95),
    (0.9, 0.9),
    (0.95, 0.75),
    (0.75, 0.95),
    (0.85, 0.85),
    (0.75, 0.75),
    (0.9, 0.55),
    (0.55, 0.9),
    (0.6, 0.6),
    (0.45, 0.45),
    (0.8, 0.3),
    (0.3, 0.8),
];

/// Cancels the adjacent cusp pair `(first, first+1)` (indices into the
/// traversal-ordered cusp list). Returns the surgered curve and the certified
/// homotopy to it.
pub fn cancel_cusp_pair(
    curve: &PlanarClosedCurve,
    first: usize,
    cfg: &ToleranceConfig,
) -> Result<(PlanarClosedCurve, RegularHomotopy)> {
    let area = curve.signed_area();
    if area.abs() > cfg.eps_area {
        return Err(Error::NonZeroArea { area, t: None });
    }
    let cusps = scan_cusps(curve, cfg)?;
    let m = cusps.len();
    let i = first % m;
    let j = (i + 1) % m;
    if cusps[i].orientation == cusps[j].orientation {
        return Err(Error::NotCancellable(format!(
            "cusps {i} and {j} carry equal labels {}",
            cusps[i].orientation
        )));
    }
    if m == 2 {
        return Err(Error::NotCancellable(
            "a closed front keeps at least one left and one right cusp".into(),
        ));
    }

    // Unwrapped picture: s0 < s1 < s2 < s3 with the pair in the middle.
    let s1 = cusps[i].s;
    let mut s2 = cusps[j].s;
    if s2 <= s1 {
        s2 += TAU;
    }
    let mut s0 = cusps[(i + m - 1) % m].s;
    while s0 >= s1 {
        s0 -= TAU;
    }
    let mut s3 = cusps[(j + 1) % m].s;
    while s3 <= s2 {
        s3 += TAU;
    }

    // x' must keep one sign where the blend's y' can vanish.
    let delta = 0.1 * (s1 - s0).min(s3 - s2);
    let guard = (s1 - delta, s2 + delta);
    let guard_sign = x_prime_span_sign(curve, guard, cfg)?;
    debug_assert_eq!(guard_sign, cusps[i].x_prime_sign as f64);

    let survivors: Vec<&Cusp> = cusps
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, c)| c)
        .collect();
    let expected: Vec<(CuspOrientation, Side)> = survivors
        .iter()
        .map(|c| (c.orientation, c.side))
        .collect();
    let guards = cusp_guard_zones(&survivors, &cusps);

    let sigma = sign_of(curve.derivative(s1 - delta).1);
    let mut last_feasible_error: Option<Error> = None;
    let mut found_monotone_window = false;

    for (a, b) in MARGIN_GRID {
        let sa = s1 - a * (s1 - s0);
        let sb = s2 + b * (s3 - s2);
        let Some(target) = monotone_profile(curve, sa, sb, sigma) else {
            continue;
        };
        found_monotone_window = true;
        let window = SurgeryWindow {
            start: sa,
            end: sb,
            guard,
            slope_sign: sigma,
        };
        match apply_y_rewrite(curve, &window, &target, &guards, &expected, cfg) {
            Ok(done) => return Ok(done),
            Err(e) => last_feasible_error = Some(e),
        }
    }

    if !found_monotone_window {
        return Err(Error::WindowObstruction(format!(
            "no window around cusps {i},{j} admits a monotone replacement"
        )));
    }
    Err(last_feasible_error.unwrap())
}

/// Creates a cusp pair with the requested `labels` inside the cusp-free
/// window `location = (start, end)`; the labels must match the ones forced by
/// the local signs of `y'` and `x'`.
pub fn create_cusp_pair(
    curve: &PlanarClosedCurve,
    location: (f64, f64),
    labels: (CuspOrientation, CuspOrientation),
    cfg: &ToleranceConfig,
) -> Result<(PlanarClosedCurve, RegularHomotopy)> {
    let area = curve.signed_area();
    if area.abs() > cfg.eps_area {
        return Err(Error::NonZeroArea { area, t: None });
    }
    let cusps = scan_cusps(curve, cfg)?;
    let (wa, mut wb) = location;
    if wb <= wa {
        wb += TAU;
    }
    for c in &cusps {
        if cyclic_contains(wa, wb, c.s) {
            return Err(Error::Precondition(format!(
                "window ({wa:.4}, {wb:.4}) contains the cusp at s = {:.4}",
                c.s
            )));
        }
    }
    let sigma = sign_of(curve.derivative(0.5 * (wa + wb)).1);
    let min_yp = span_min(|s| sigma * curve.derivative(s).1, wa, wb, 64);
    if min_yp <= cfg.eps_zero {
        return Err(Error::Precondition(
            "y' nearly vanishes in the creation window".into(),
        ));
    }
    let xsign = x_prime_span_sign(curve, (wa, wb), cfg).map_err(|_| {
        Error::IncompatibleLabels("x' changes sign inside the window".into())
    })?;

    let forced = forced_labels(sigma, xsign);
    if labels != forced {
        return Err(Error::IncompatibleLabels(format!(
            "window forces labels {}{}, requested {}{}",
            forced.0, forced.1, labels.0, labels.1
        )));
    }

    // Expected word after insertion: splice the new pair where the window sits.
    let first_new_side = if sigma > 0.0 { Side::Right } else { Side::Left };
    let mut expected: Vec<(CuspOrientation, Side)> = Vec::with_capacity(cusps.len() + 2);
    let mut inserted = false;
    for c in &cusps {
        if !inserted && c.s > wa.rem_euclid(TAU) {
            expected.push((forced.0, first_new_side));
            expected.push((forced.1, first_new_side.opposite()));
            inserted = true;
        }
        expected.push((c.orientation, c.side));
    }
    if !inserted {
        expected.push((forced.0, first_new_side));
        expected.push((forced.1, first_new_side.opposite()));
    }

    let guards = cusp_guard_zones(&cusps.iter().collect::<Vec<_>>(), &cusps);
    let window = SurgeryWindow {
        start: wa,
        end: wb,
        guard: (wa, wb),
        slope_sign: sigma,
    };

    // Dip amplitude ladder: deepen until exactly two fresh crossings appear.
    let span_max = span_max(|s| (sigma * curve.derivative(s).1).abs(), wa, wb, 64);
    let mut c_gain = 1.8 * span_max / 3.08;
    let mut last_err = None;
    for _ in 0..8 {
        let target = dip_profile(curve, wa, wb, sigma, c_gain);
        match apply_y_rewrite(curve, &window, &target, &guards, &expected, cfg) {
            Ok(done) => return Ok(done),
            Err(e) => last_err = Some(e),
        }
        c_gain *= 1.4;
    }
    Err(last_err.unwrap_or_else(|| Error::Precondition("creation failed".into())))
}

/// Converts a reduced word `(-,+)` into `(+,-)` by inserting a compatible
/// pair with a first move and cancelling the original pair with the inverse
/// of the rotated move. Curves already in the `(+,-)` class come back with an
/// identity homotopy.
pub fn normalize_word_orientation(
    curve: &PlanarClosedCurve,
    cfg: &ToleranceConfig,
) -> Result<(PlanarClosedCurve, RegularHomotopy)> {
    let cusps = scan_cusps(curve, cfg)?;
    if cusps.len() != 2 {
        return Err(Error::Precondition(format!(
            "orientation normalization needs a reduced 2-cusp word, found {} cusps",
            cusps.len()
        )));
    }
    let word = CuspWord::from_cusps(&cusps)?;
    if word.value() != 0 {
        return Err(Error::Precondition(format!(
            "word {word} is not a rotation-zero normal form"
        )));
    }
    if word.right_cusp_label() == CuspOrientation::Up {
        return Ok((curve.clone(), RegularHomotopy::constant(curve.clone())));
    }

    // First try the two-move composite: insert a pair in an x' > 0 window
    // (its right cusp is forced Up), then cancel the original pair.
    let mut last_err: Option<Error> = None;
    for window in positive_xprime_windows(curve, &cusps, cfg) {
        let sigma = sign_of(curve.derivative(0.5 * (window.0 + window.1)).1);
        let labels = forced_labels(sigma, 1.0);
        let created = match create_cusp_pair(curve, window, labels, cfg) {
            Ok(v) => v,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let (mid, h_create) = created;
        // Locate the original pair among the four cusps and cancel it.
        let mid_cusps = match scan_cusps(&mid, cfg) {
            Ok(v) => v,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        let Some(first) = (0..mid_cusps.len()).find(|&k| {
            let a = &mid_cusps[k];
            let b = &mid_cusps[(k + 1) % mid_cusps.len()];
            is_original(a, &cusps) && is_original(b, &cusps)
        }) else {
            last_err = Some(Error::Planner {
                stage: "normalize_word_orientation".into(),
                message: "original pair no longer adjacent".into(),
            });
            continue;
        };
        match cancel_cusp_pair(&mid, first, cfg) {
            Ok((out, h_cancel)) => {
                let out_word = CuspWord::from_cusps(&scan_cusps(&out, cfg)?)?;
                if out_word.right_cusp_label() != CuspOrientation::Up {
                    last_err = Some(Error::Planner {
                        stage: "normalize_word_orientation".into(),
                        message: format!("landed on word {out_word}"),
                    });
                    continue;
                }
                let h = concatenate(&h_create, &h_cancel)?;
                return Ok((out, h));
            }
            Err(e) => last_err = Some(e),
        }
    }

    // The composite needs the original pair's arc to keep one sign of x',
    // which fails whenever the two cusps sit in different sign components —
    // surgeries never touch x, so no amount of inserting can fix that. A
    // rigid half-turn does: rotating the plane by π keeps every cusp's label
    // and parameter while swapping its side, which exchanges the two reduced
    // classes. The turn is a certified regular homotopy (eight straight-line
    // chords between rotated keyframes) that preserves the area exactly.
    match rotation_path(curve, std::f64::consts::PI, 8, cfg) {
        Ok((rotated, h)) => {
            let word = CuspWord::from_cusps(&scan_cusps(&rotated, cfg)?)?;
            if word.right_cusp_label() == CuspOrientation::Up {
                return Ok((rotated, h));
            }
            Err(last_err.unwrap_or(Error::WindowObstruction(
                "rotation fallback did not flip the word class".into(),
            )))
        }
        Err(e) => Err(last_err.unwrap_or(e)),
    }
}

/// A certified homotopy rotating the curve rigidly about the origin, cut into
/// `steps` straight-line chords. Chord blends of rotations are uniformly
/// scaled rotations, so frames stay regular and a zero area stays zero.
fn rotation_path(
    curve: &PlanarClosedCurve,
    angle: f64,
    steps: usize,
    cfg: &ToleranceConfig,
) -> Result<(PlanarClosedCurve, RegularHomotopy)> {
    let keep_zero = curve.signed_area().abs() <= cfg.eps_area;
    let mut keyframes = Vec::with_capacity(steps + 1);
    keyframes.push(curve.clone());
    for k in 1..=steps {
        let theta = angle * k as f64 / steps as f64;
        let (c, s) = (theta.cos(), theta.sin());
        let xs: Vec<f64> = curve
            .xs()
            .iter()
            .zip(curve.ys())
            .map(|(&x, &y)| c * x - s * y)
            .collect();
        let ys: Vec<f64> = curve
            .xs()
            .iter()
            .zip(curve.ys())
            .map(|(&x, &y)| s * x + c * y)
            .collect();
        keyframes.push(PlanarClosedCurve::try_new(xs, ys)?);
    }
    let segments = (0..steps)
        .map(|_| {
            crate::homotopy::Segment::new(Interpolator::StraightLine {
                area_target: keep_zero.then_some(0.0),
            })
        })
        .collect();
    let h = RegularHomotopy::new(
        keyframes,
        segments,
        crate::homotopy::HomotopyMetadata::default(),
    )?;
    let out = h.last().clone();
    let report = verify(&h, curve, &out, keep_zero, cfg);
    if !report.pass {
        return Err(Error::Certification {
            stage: "rotation path".into(),
            report: Box::new(report),
        });
    }
    Ok((out, h))
}

fn is_original(c: &Cusp, originals: &[Cusp]) -> bool {
    originals
        .iter()
        .any(|o| cyclic_distance(o.s, c.s) < 1e-3 && o.orientation == c.orientation)
}

/// Candidate insertion windows with `x' > 0`, cusp-free, ordered by width.
fn positive_xprime_windows(
    curve: &PlanarClosedCurve,
    cusps: &[Cusp],
    cfg: &ToleranceConfig,
) -> Vec<(f64, f64)> {
    let m = cfg.grid_refine.max(1) * curve.n();
    let mut windows = Vec::new();
    // Walk the refined grid, collecting maximal runs where x' > 0 that avoid
    // cusp neighbourhoods.
    let ok = |s: f64| {
        curve.derivative(s).0 > 0.0
            && cusps
                .iter()
                .all(|c| cyclic_distance(c.s, s) > 0.12)
    };
    let mut run_start: Option<f64> = None;
    let mut first_run_start: Option<f64> = None;
    let mut wrap_run = false;
    for k in 0..=m {
        let s = TAU * k as f64 / m as f64;
        if k < m && ok(s) {
            if run_start.is_none() {
                run_start = Some(s);
                if k == 0 {
                    wrap_run = true;
                }
            }
        } else if let Some(start) = run_start.take() {
            let end = TAU * (k as f64 - 1.0) / m as f64;
            if wrap_run && first_run_start.is_none() {
                first_run_start = Some(end);
            } else {
                windows.push((start, end));
            }
            wrap_run = false;
        }
    }
    if let Some(start) = run_start {
        // Run reaching 2π: merge with a run starting at 0 if there was one.
        let end = first_run_start.map(|e| e + TAU).unwrap_or(TAU);
        windows.push((start, end));
    } else if let Some(end) = first_run_start {
        windows.push((0.0, end));
    }
    // Shrink by 15% margins, keep usable widths, widest first.
    let mut out: Vec<(f64, f64)> = windows
        .into_iter()
        .filter_map(|(a, b)| {
            let w = b - a;
            (w > 0.3).then_some((a + 0.15 * w, b - 0.15 * w))
        })
        .collect();
    out.sort_by(|p, q| (q.1 - q.0).partial_cmp(&(p.1 - p.0)).unwrap());
    out
}

/// Labels forced on a created pair by the window's `y'` sign `sigma` and `x'`
/// sign `xsign`.
fn forced_labels(sigma: f64, xsign: f64) -> (CuspOrientation, CuspOrientation) {
    let first_side = if sigma > 0.0 { Side::Right } else { Side::Left };
    let xs = if xsign > 0.0 { 1 } else { -1 };
    let first = CuspOrientation::from_rule(first_side, xs);
    let second = CuspOrientation::from_rule(first_side.opposite(), xs);
    (first, second)
}

/// A monotone replacement for `y` on `[sa, sb]` with C² junctions, or `None`
/// when the boundary data admits no monotone profile.
///
/// The slope profile (in σ-units, on `u ∈ [0,1]`) is
/// `p = d_a(1-u)³ + d_b u³ + m_c·30u²(1-u)²` plus two short-support
/// correctors that bend `p'` to the curve's junction curvature without
/// spending monotonicity budget in the interior. Matching `y''` at the
/// junctions keeps the resampled data kink-free, which the Legendrian lift
/// of the surgered curve is sensitive to. Monotonicity is certified by a
/// dense positivity scan.
fn monotone_profile(
    curve: &PlanarClosedCurve,
    sa: f64,
    sb: f64,
    sigma: f64,
) -> Option<YRewrite> {
    let va = curve.evaluate(sa).1;
    let vb = curve.evaluate(sb).1;
    let da = sigma * curve.derivative(sa).1;
    let db = sigma * curve.derivative(sb).1;
    if da <= 0.0 || db <= 0.0 {
        return None;
    }
    let l = sb - sa;
    let rise = sigma * (vb - va);

    // Corrector coefficients: p'(0) must move from -3 d_a to σ·L·y''(sa),
    // and p'(1) from 3 d_b to σ·L·y''(sb).
    let ca = sigma * l * curve.second_derivative(sa).1 + 3.0 * da;
    let cb = 3.0 * db - sigma * l * curve.second_derivative(sb).1;
    // Support widths: local enough to perturb at most ~45% of the boundary
    // slope (the corrector's max is 4w/27·|coef|), wide enough to be resolved
    // by the sample grid.
    let h_samples = std::f64::consts::TAU / curve.n() as f64 / l;
    let width = |d: f64, c: f64| -> f64 {
        (3.0375 * d / c.abs().max(1e-12)).clamp((8.0 * h_samples).min(0.25), 0.25)
    };
    let wa = width(da, ca);
    let wb = width(db, cb);

    let mc = rise / l
        - 0.25 * (da + db)
        - ca * wa * wa / 12.0
        - cb * wb * wb / 12.0;
    let profile = MonotoneProfile {
        va,
        da,
        db,
        mc,
        ca,
        wa,
        cb,
        wb,
        sigma,
    };
    let floor = 0.02 * da.max(db);
    for k in 0..=512 {
        if profile.slope(k as f64 / 512.0) < floor {
            return None;
        }
    }
    Some(YRewrite {
        sa,
        sb,
        kind: RewriteKind::Monotone(profile),
    })
}

#[derive(Debug, Clone, Copy)]
struct MonotoneProfile {
    va: f64,
    da: f64,
    db: f64,
    mc: f64,
    ca: f64,
    wa: f64,
    cb: f64,
    wb: f64,
    sigma: f64,
}

/// `ρ_w(u) = u(1 - u/w)²` on `[0, w]`: unit slope at 0, flat at `w`.
fn corrector(u: f64, w: f64) -> f64 {
    if u <= 0.0 || u >= w {
        0.0
    } else {
        let r = 1.0 - u / w;
        u * r * r
    }
}

/// `∫₀ᵘ ρ_w`; total mass `w²/12`.
fn corrector_integral(u: f64, w: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= w {
        w * w / 12.0
    } else {
        u * u / 2.0 - 2.0 * u.powi(3) / (3.0 * w) + u.powi(4) / (4.0 * w * w)
    }
}

impl MonotoneProfile {
    /// σ-units slope `p(u)`.
    fn slope(&self, u: f64) -> f64 {
        let v = 1.0 - u;
        self.da * v * v * v
            + self.db * u * u * u
            + self.mc * 30.0 * u * u * v * v
            + self.ca * corrector(u, self.wa)
            + self.cb * corrector(v, self.wb)
    }

    /// `∫₀ᵘ p`, analytic.
    fn slope_integral(&self, u: f64) -> f64 {
        let v = 1.0 - u;
        let (u3, u4, u5) = (u.powi(3), u.powi(4), u.powi(5));
        self.da * (1.0 - v.powi(4)) / 4.0
            + self.db * u4 / 4.0
            + self.mc * (10.0 * u3 - 15.0 * u4 + 6.0 * u5)
            + self.ca * corrector_integral(u, self.wa)
            + self.cb * (self.wb * self.wb / 12.0 - corrector_integral(v, self.wb))
    }
}

/// A dip profile for cusp creation: `y - σ·(c·L)·B(u)` with the flat-ended
/// bump `B(u) = 64 u³(1-u)³`, whose derivative perturbation `-σ c B'(u)`
/// pushes `σ y'` negative on the first half-window.
fn dip_profile(curve: &PlanarClosedCurve, sa: f64, sb: f64, sigma: f64, c_gain: f64) -> YRewrite {
    let _ = curve;
    YRewrite {
        sa,
        sb,
        kind: RewriteKind::Dip { sigma, c_gain },
    }
}

#[derive(Debug, Clone, Copy)]
enum RewriteKind {
    Monotone(MonotoneProfile),
    Dip { sigma: f64, c_gain: f64 },
}

#[derive(Debug, Clone, Copy)]
struct YRewrite {
    sa: f64,
    sb: f64,
    kind: RewriteKind,
}

impl YRewrite {
    /// The replacement value at `s` (which must lie in the window); for the
    /// dip this is the original `y` plus the bump.
    fn value(&self, curve: &PlanarClosedCurve, s: f64) -> f64 {
        let l = self.sb - self.sa;
        let u = ((s - self.sa) / l).clamp(0.0, 1.0);
        match self.kind {
            RewriteKind::Monotone(profile) => {
                profile.va + profile.sigma * l * profile.slope_integral(u)
            }
            RewriteKind::Dip { sigma, c_gain } => {
                let bump = 64.0 * u.powi(3) * (1.0 - u).powi(3);
                curve.evaluate(s).1 - sigma * c_gain * l * bump
            }
        }
    }
}

/// Replaces `y` samples inside the window, restores the area with a pump that
/// avoids the window and all surviving cusps, checks the cusp bookkeeping,
/// and certifies the straight-line homotopy to the result.
fn apply_y_rewrite(
    curve: &PlanarClosedCurve,
    window: &SurgeryWindow,
    rewrite: &YRewrite,
    guards: &[(f64, f64)],
    expected: &[(CuspOrientation, Side)],
    cfg: &ToleranceConfig,
) -> Result<(PlanarClosedCurve, RegularHomotopy)> {
    let mut ys = curve.ys().to_vec();
    let mut replaced = 0usize;
    for (i, y) in ys.iter_mut().enumerate() {
        let s = curve.node(i);
        if let Some(unwrapped) = unwrap_into(window.start, window.end, s) {
            *y = rewrite.value(curve, unwrapped);
            replaced += 1;
        }
    }
    if replaced < 8 {
        return Err(Error::Precondition(format!(
            "window holds only {replaced} samples; resample the curve finer"
        )));
    }

    let raw = PlanarClosedCurve::try_new(curve.xs().to_vec(), ys)?;
    let mut zones = vec![(
        window.start.rem_euclid(TAU),
        window.end.rem_euclid(TAU),
    )];
    zones.extend_from_slice(guards);
    let weights = masked_pump_weights(curve, &zones);
    let out = correct_area_exact(&raw, &weights, 0.0)
        .map_err(|_| Error::WindowObstruction("area pump has no support left".into()))?;

    // Bookkeeping check: the surviving cusps must be exactly the expected word.
    let got = scan_cusps(&out, cfg).map_err(|e| Error::Planner {
        stage: "surgery bookkeeping".into(),
        message: e.to_string(),
    })?;
    let got_pairs: Vec<(CuspOrientation, Side)> =
        got.iter().map(|c| (c.orientation, c.side)).collect();
    if !cyclic_eq(&got_pairs, expected) {
        return Err(Error::Planner {
            stage: "surgery bookkeeping".into(),
            message: format!(
                "expected {} cusps with prescribed labels, found {}",
                expected.len(),
                got.len()
            ),
        });
    }

    let h = RegularHomotopy::single(
        curve.clone(),
        out.clone(),
        Interpolator::SurgeryBump {
            window: zones[0],
            guards: guards.to_vec(),
        },
    )?;
    let report = verify(&h, curve, &out, true, cfg);
    if !report.pass {
        return Err(Error::Certification {
            stage: "cusp surgery".into(),
            report: Box::new(report),
        });
    }
    Ok((out, h))
}

/// Guard zones around every surviving cusp so the area pump cannot move them
/// or flip their labels.
fn cusp_guard_zones(survivors: &[&Cusp], all: &[Cusp]) -> Vec<(f64, f64)> {
    let min_gap = all
        .iter()
        .enumerate()
        .map(|(k, c)| cyclic_distance(c.s, all[(k + 1) % all.len()].s))
        .fold(TAU, f64::min);
    let radius = (0.25 * min_gap).min(MASK_RAMP);
    survivors
        .iter()
        .map(|c| (c.s - radius, c.s + radius))
        .collect()
}

/// Requires `x'` to keep one sign over `(a, b)` (scanned densely); returns
/// that sign.
fn x_prime_span_sign(
    curve: &PlanarClosedCurve,
    span: (f64, f64),
    cfg: &ToleranceConfig,
) -> Result<f64> {
    let samples = 256;
    let mut min_abs = f64::INFINITY;
    let mut sign = 0.0;
    for k in 0..=samples {
        let s = span.0 + (span.1 - span.0) * k as f64 / samples as f64;
        let xp = curve.derivative(s).0;
        min_abs = min_abs.min(xp.abs());
        if k == 0 {
            sign = sign_of(xp);
        } else if sign_of(xp) != sign {
            return Err(Error::WindowObstruction(format!(
                "x' changes sign on ({:.4}, {:.4})",
                span.0, span.1
            )));
        }
    }
    if min_abs < cfg.eps_zero {
        return Err(Error::WindowObstruction(format!(
            "x' dips to {min_abs:.3e} on the guard interval"
        )));
    }
    Ok(sign)
}

fn span_min(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    (0..=steps)
        .map(|k| f(a + (b - a) * k as f64 / steps as f64))
        .fold(f64::INFINITY, f64::min)
}

fn span_max(f: impl Fn(f64) -> f64, a: f64, b: f64, steps: usize) -> f64 {
    (0..=steps)
        .map(|k| f(a + (b - a) * k as f64 / steps as f64))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn sign_of(v: f64) -> f64 {
    if v >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// If the circle point `s` lies in the unwrapped interval `(a, b)`, returns
/// its unwrapped representative.
fn unwrap_into(a: f64, b: f64, s: f64) -> Option<f64> {
    for k in [-1.0, 0.0, 1.0] {
        let cand = s + k * TAU;
        if cand > a && cand < b {
            return Some(cand);
        }
    }
    None
}

fn cyclic_contains(a: f64, b: f64, s: f64) -> bool {
    unwrap_into(a, b, s).is_some()
}

fn cyclic_eq(a: &[(CuspOrientation, Side)], b: &[(CuspOrientation, Side)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    (0..n).any(|r| (0..n).all(|i| a[i] == b[(i + r) % n]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendrian::rot_from_cusps;
    use crate::moves::standard_curve;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn figure8(n: usize) -> PlanarClosedCurve {
        PlanarClosedCurve::from_fn(n, |s| (s.cos(), (2.0 * s).sin())).unwrap()
    }

    #[test]
    fn cancel_first_pair_of_figure8() {
        let cfg = cfg();
        let c = figure8(512);
        let (out, h) = cancel_cusp_pair(&c, 0, &cfg).unwrap();
        let cusps = scan_cusps(&out, &cfg).unwrap();
        assert_eq!(cusps.len(), 2);
        let word = CuspWord::from_cusps(&cusps).unwrap();
        assert_eq!(word.right_cusp_label(), CuspOrientation::Up);
        assert_eq!(rot_from_cusps(&word).unwrap(), 0);
        // Surviving cusps stay put at 5π/4 and 7π/4.
        assert_abs_diff_eq!(cusps[0].s, 5.0 * PI / 4.0, epsilon = 1e-3);
        assert_abs_diff_eq!(cusps[1].s, 7.0 * PI / 4.0, epsilon = 1e-3);
        let report = verify(&h, &c, &out, true, &cfg);
        assert!(report.pass, "{}", report.summary());
    }

    #[test]
    fn equal_label_pair_is_not_cancellable() {
        // Pair (3π/4, 5π/4) on the figure-eight carries (+,+).
        let c = figure8(512);
        match cancel_cusp_pair(&c, 1, &cfg()) {
            Err(Error::NotCancellable(_)) => {}
            other => panic!("expected NotCancellable, got {other:?}"),
        }
    }

    #[test]
    fn reduced_curve_refuses_cancellation() {
        let std0 = standard_curve(0, 512, &cfg()).unwrap();
        match cancel_cusp_pair(&std0, 0, &cfg()) {
            Err(Error::NotCancellable(_)) => {}
            other => panic!("expected NotCancellable, got {other:?}"),
        }
    }

    #[test]
    fn create_then_cancel_round_trips_the_word() {
        let cfg = cfg();
        let std0 = standard_curve(0, 512, &cfg).unwrap();
        // Window inside (π/4, π/2): x' = -cos(2s)/2 > 0 there, no cusps.
        let window = (0.9, 1.4);
        let labels = forced_labels(1.0, 1.0);
        assert_eq!(labels, (CuspOrientation::Up, CuspOrientation::Down));
        let (mid, h1) = create_cusp_pair(&std0, window, labels, &cfg).unwrap();
        let mid_cusps = scan_cusps(&mid, &cfg).unwrap();
        assert_eq!(mid_cusps.len(), 4);

        // Cancel the freshly created pair (the two cusps inside the window).
        let first = (0..4)
            .find(|&k| {
                mid_cusps[k].s > window.0
                    && mid_cusps[k].s < window.1
                    && mid_cusps[(k + 1) % 4].s < window.1
            })
            .expect("created pair is adjacent");
        let (back, h2) = cancel_cusp_pair(&mid, first, &cfg).unwrap();
        let back_word = CuspWord::from_cusps(&scan_cusps(&back, &cfg).unwrap()).unwrap();
        assert_eq!(back_word.to_string(), "+-");

        let h = concatenate(&h1, &h2).unwrap();
        let report = verify(&h, &std0, &back, true, &cfg);
        assert!(report.pass, "{}", report.summary());
    }

    #[test]
    fn incompatible_labels_are_rejected() {
        let cfg = cfg();
        let std0 = standard_curve(0, 512, &cfg).unwrap();
        let bad = (CuspOrientation::Down, CuspOrientation::Up);
        match create_cusp_pair(&std0, (0.9, 1.4), bad, &cfg) {
            Err(Error::IncompatibleLabels(_)) => {}
            other => panic!("expected IncompatibleLabels, got {other:?}"),
        }
    }

    #[test]
    fn orientation_normalization_flips_the_reduced_word() {
        let cfg = cfg();
        let std0 = standard_curve(0, 512, &cfg).unwrap();
        let reflected = std0.mirror_y();
        let word = CuspWord::from_cusps(&scan_cusps(&reflected, &cfg).unwrap()).unwrap();
        assert_eq!(word.right_cusp_label(), CuspOrientation::Down);

        let (out, h) = normalize_word_orientation(&reflected, &cfg).unwrap();
        let out_word = CuspWord::from_cusps(&scan_cusps(&out, &cfg).unwrap()).unwrap();
        assert_eq!(out_word.right_cusp_label(), CuspOrientation::Up);
        assert_eq!(out.rotation_number(&cfg).unwrap(), 0);
        let report = verify(&h, &reflected, &out, true, &cfg);
        assert!(report.pass, "{}", report.summary());
    }

    #[test]
    fn already_normalized_curve_is_untouched() {
        let cfg = cfg();
        let std0 = standard_curve(0, 512, &cfg).unwrap();
        let (out, h) = normalize_word_orientation(&std0, &cfg).unwrap();
        assert!(h.is_constant());
        assert_eq!(out.xs(), std0.xs());
    }

    #[test]
    fn long_words_are_rejected_by_orientation_normalization() {
        let c = figure8(512);
        match normalize_word_orientation(&c, &cfg()) {
            Err(Error::Precondition(_)) => {}
            other => panic!("expected PreconditionError, got {other:?}"),
        }
    }
}
