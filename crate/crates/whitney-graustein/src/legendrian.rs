//! Legendrian lifts of zero-area plane curves, their front and Lagrangian
//! projections, cusp detection, and the cusp-count formulas for the rotation
//! number.
//!
//! A space curve `(x, y, z)` is Legendrian for the plane field annihilated by
//! `dz + x dy` exactly when `z' + x y' = 0`, so a zero-area plane curve lifts
//! to a closed Legendrian curve by integrating `z' = -x y'`. Cusps of the
//! front `(y, z)` sit over the zeros of `y'`, and their side/orientation
//! labels reduce the rotation number to cusp counting.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::ToleranceConfig;
use crate::curve::{winding_of, PlanarClosedCurve};
use crate::error::{Error, Result};
use crate::spline::cumulative_f_gprime;

/// A regular closed Legendrian curve, sampled at `s_i = 2πi/n`.
///
/// `x` and `y` carry the usual periodic cubic splines. `z` is stored as node
/// samples and evaluated by exact partial-segment quadrature of `-x y'`
/// (plus a linear blend of the per-node closure defects), so the Legendrian
/// condition `z' + x y' = 0` holds identically between nodes: the residual of
/// the curve is exactly the defect of its stored data.
#[derive(Debug, Clone)]
pub struct LegendrianCurve {
    lagrangian: PlanarClosedCurve,
    zs: Vec<f64>,
    /// `z_{i+1} - z_i + ∫ x y' ds` over segment `i`; zero for honest lifts.
    defects: Vec<f64>,
}

impl LegendrianCurve {
    /// Validates the Legendrian condition and the regularity of the
    /// Lagrangian projection, then builds the curve.
    pub fn try_new(
        xs: Vec<f64>,
        ys: Vec<f64>,
        zs: Vec<f64>,
        cfg: &ToleranceConfig,
    ) -> Result<Self> {
        if zs.len() != xs.len() {
            return Err(Error::Precondition(
                "z sample count must match x and y".into(),
            ));
        }
        if zs.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("z samples must be finite".into()));
        }
        let lagrangian = PlanarClosedCurve::try_new(xs, ys)?;
        let cum = cumulative_f_gprime(lagrangian.x_spline(), lagrangian.y_spline());
        let n = zs.len();
        let defects: Vec<f64> = (0..n)
            .map(|i| zs[(i + 1) % n] - zs[i] + (cum[i + 1] - cum[i]))
            .collect();
        let curve = Self {
            lagrangian,
            zs,
            defects,
        };
        curve.lagrangian.require_regular(cfg)?;
        let residual = curve.legendrian_residual(cfg);
        let cert = curve.lagrangian.regularity(cfg);
        if residual > 1e-6 * cert.max_speed.max(1.0) {
            return Err(Error::Precondition(format!(
                "legendrian residual {residual:.3e} too large"
            )));
        }
        Ok(curve)
    }

    /// Max of `|z' + x y'|`: the per-segment closure defect over the segment
    /// width, since the quadrature evaluation is exact elsewhere.
    pub fn legendrian_residual(&self, _cfg: &ToleranceConfig) -> f64 {
        let h = TAU / self.n() as f64;
        self.defects.iter().fold(0.0f64, |a, d| a.max(d.abs())) / h
    }

    pub fn n(&self) -> usize {
        self.lagrangian.n()
    }

    pub fn zs(&self) -> &[f64] {
        &self.zs
    }

    pub fn evaluate(&self, s: f64) -> (f64, f64, f64) {
        let (x, y) = self.lagrangian.evaluate(s);
        (x, y, self.z_at(s))
    }

    /// Exact antiderivative evaluation: `z_i - ∫_{s_i}^{s} x y' + u·δ_i`.
    fn z_at(&self, s: f64) -> f64 {
        let n = self.n();
        let h = TAU / n as f64;
        let t = s.rem_euclid(TAU);
        let mut i = (t / h) as usize;
        if i >= n {
            i = n - 1;
        }
        let u = (t / h - i as f64).clamp(0.0, 1.0);
        // 3-point Gauss on [0, u]: exact for the quintic cell of x y'.
        const GAUSS3: [(f64, f64); 3] = [
            (0.112_701_665_379_258_31, 5.0 / 18.0),
            (0.5, 4.0 / 9.0),
            (0.887_298_334_620_741_7, 5.0 / 18.0),
        ];
        let x = self.lagrangian.x_spline();
        let yy = self.lagrangian.y_spline();
        let mut partial = 0.0;
        for (g, w) in GAUSS3 {
            let uu = u * g;
            partial += w * x.segment_value(i, uu) * yy.segment_derivative(i, uu);
        }
        partial *= h * u;
        self.zs[i] - partial + u * self.defects[i]
    }

    /// The plane curve `(x, y)`; shares the original samples bit-for-bit.
    pub fn lagrangian_projection(&self) -> PlanarClosedCurve {
        self.lagrangian.clone()
    }

    /// The front `(y, z)` with its detected cusps.
    pub fn front_projection(&self, cfg: &ToleranceConfig) -> Result<FrontPolyline> {
        let cusps = self.detect_cusps(cfg)?;
        let points = (0..self.n())
            .map(|i| (self.lagrangian.ys()[i], self.zs[i]))
            .collect();
        Ok(FrontPolyline { points, cusps })
    }

    /// Cusps of the front in traversal order; see [`detect_cusps`].
    pub fn detect_cusps(&self, cfg: &ToleranceConfig) -> Result<Vec<Cusp>> {
        scan_cusps(&self.lagrangian, cfg)
    }

    /// Winding of `(x', y')`: the rotation number of the Legendrian curve in
    /// the global frame of the contact planes. Coincides with the rotation
    /// number of the Lagrangian projection.
    pub fn rotation_number(&self, cfg: &ToleranceConfig) -> Result<i64> {
        self.lagrangian.require_regular(cfg)?;
        let m = cfg.grid_refine.max(1) * self.n();
        let total = winding_of(|s| self.lagrangian.derivative(s), m)?;
        let turns = total / TAU;
        let k = turns.round();
        if (turns - k).abs() > 0.01 {
            return Err(Error::Aliasing);
        }
        Ok(k as i64)
    }

    /// Shifts `z` so its mean vanishes; Legendrian curves are compared up to
    /// this translation.
    pub fn normalize_z(&self) -> Self {
        let mean = self.zs.iter().sum::<f64>() / self.zs.len() as f64;
        let zs: Vec<f64> = self.zs.iter().map(|z| z - mean).collect();
        Self {
            lagrangian: self.lagrangian.clone(),
            zs,
            defects: self.defects.clone(),
        }
    }
}

/// Lifts a zero-area plane curve to the Legendrian curve with
/// `z(s) = z0 - ∫_0^s x y' du`.
///
/// The cumulative integral is segment-exact for the spline; the wrap-around
/// gap equals minus the signed area and must already be below `eps_area`
/// (run area normalization first). Whatever tiny gap remains is closed by a
/// linear ramp, which perturbs `z'` by at most `|area| / 2π`.
pub fn lift(
    curve: &PlanarClosedCurve,
    z0: f64,
    cfg: &ToleranceConfig,
) -> Result<LegendrianCurve> {
    let area = curve.signed_area();
    if area.abs() > cfg.eps_area {
        return Err(Error::NonZeroArea { area, t: None });
    }
    let cum = cumulative_f_gprime(curve.x_spline(), curve.y_spline());
    let n = curve.n();
    let gap = cum[n]; // equals the signed area
    let zs: Vec<f64> = (0..n)
        .map(|i| z0 - cum[i] + gap * i as f64 / n as f64)
        .collect();
    LegendrianCurve::try_new(curve.xs().to_vec(), curve.ys().to_vec(), zs, cfg)
}

/// Cusps of a Legendrian curve's front in traversal order.
pub fn detect_cusps(gamma: &LegendrianCurve, cfg: &ToleranceConfig) -> Result<Vec<Cusp>> {
    gamma.detect_cusps(cfg)
}

/// Which way a cusp opens along the front: left cusps sit at local minima of
/// `y`, right cusps at local maxima.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

/// Traversal orientation of a cusp. `Up` cusps are labelled `+`, `Down`
/// cusps `-`. The label is determined by the side together with the sign of
/// `x'` at the cusp: the tangent points along `+∂x` exactly at left-down and
/// right-up cusps, which is what makes the crossing count work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CuspOrientation {
    Up,
    Down,
}

impl CuspOrientation {
    pub fn sign(self) -> i64 {
        match self {
            CuspOrientation::Up => 1,
            CuspOrientation::Down => -1,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            CuspOrientation::Up => CuspOrientation::Down,
            CuspOrientation::Down => CuspOrientation::Up,
        }
    }

    pub fn from_rule(side: Side, x_prime_sign: i8) -> Self {
        // Down iff (Left, x' > 0) or (Right, x' < 0).
        match (side, x_prime_sign > 0) {
            (Side::Left, true) | (Side::Right, false) => CuspOrientation::Down,
            _ => CuspOrientation::Up,
        }
    }
}

impl fmt::Display for CuspOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CuspOrientation::Up => "+",
            CuspOrientation::Down => "-",
        })
    }
}

/// A detected front cusp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cusp {
    /// Parameter of the underlying zero of `y'`.
    pub s: f64,
    pub side: Side,
    pub orientation: CuspOrientation,
    /// Sign of `x'` at the cusp.
    pub x_prime_sign: i8,
}

/// Finds all zeros of `y'` on a plane curve and classifies them as cusps of
/// the front of its lift. This only needs the plane data, so surgery code can
/// use it without lifting.
///
/// Zeros are isolated by a sign scan over the refined grid and sharpened by
/// bisection to 1e-10. Each must be simple (`|y''| >= eps_zero`) with
/// `|x'| >= eps_zero` there, otherwise the curve is not generic.
pub fn scan_cusps(curve: &PlanarClosedCurve, cfg: &ToleranceConfig) -> Result<Vec<Cusp>> {
    let n = curve.n();
    let m = cfg.grid_refine.max(1) * n;
    let yp = |s: f64| curve.derivative(s).1;

    let mut roots: Vec<f64> = Vec::new();
    let mut prev_s = 0.0;
    let mut prev_v = yp(0.0);
    for k in 1..=m {
        let s = TAU * k as f64 / m as f64;
        let v = yp(s);
        if prev_v == 0.0 {
            // Exact grid hit: classify by the neighbours.
            let before = yp(prev_s - TAU / m as f64 * 0.5);
            if before * v < 0.0 {
                roots.push(prev_s);
            } else if before != 0.0 && v != 0.0 {
                return Err(Error::Genericity(format!(
                    "y' touches zero without crossing near s = {prev_s:.6}"
                )));
            } else {
                return Err(Error::Genericity(format!(
                    "y' vanishes on an interval near s = {prev_s:.6}"
                )));
            }
        } else if prev_v * v < 0.0 {
            roots.push(bisect_root(&yp, prev_s, s, prev_v));
        }
        prev_s = s;
        prev_v = v;
    }

    if roots.len() < 2 || !roots.len().is_multiple_of(2) {
        return Err(Error::Genericity(format!(
            "found {} sign changes of y'; a closed generic front has an even count >= 2",
            roots.len()
        )));
    }

    // A tangential zero of y' produces no sign change, so hunt for grid points
    // where |y'| is tiny yet no detected root is nearby.
    let h_grid = TAU / m as f64;
    let max_ypp = (0..m)
        .map(|k| curve.second_derivative(TAU * k as f64 / m as f64).1.abs())
        .fold(0.0f64, f64::max);
    let touch_tol = cfg.eps_zero.max(h_grid * h_grid * max_ypp);
    for k in 0..m {
        let s = TAU * k as f64 / m as f64;
        if yp(s).abs() >= touch_tol {
            continue;
        }
        let near_root = roots.iter().any(|r| {
            let d = (s - r).rem_euclid(TAU);
            d.min(TAU - d) <= 2.0 * h_grid
        });
        if !near_root {
            return Err(Error::Genericity(format!(
                "y' nearly vanishes without crossing near s = {s:.6}; perturb first"
            )));
        }
    }

    let mut cusps = Vec::with_capacity(roots.len());
    for s in roots {
        let ypp = curve.second_derivative(s).1;
        let xp = curve.derivative(s).0;
        if ypp.abs() < cfg.eps_zero {
            return Err(Error::Genericity(format!(
                "degenerate zero of y' at s = {s:.6} (|y''| = {:.3e}); perturb first",
                ypp.abs()
            )));
        }
        if xp.abs() < cfg.eps_zero {
            return Err(Error::Genericity(format!(
                "x' = {xp:.3e} at the cusp s = {s:.6}; perturb first"
            )));
        }
        let side = if ypp > 0.0 { Side::Left } else { Side::Right };
        let x_prime_sign = if xp > 0.0 { 1 } else { -1 };
        cusps.push(Cusp {
            s,
            side,
            orientation: CuspOrientation::from_rule(side, x_prime_sign),
            x_prime_sign,
        });
    }

    for pair in cusps.windows(2) {
        if pair[0].side == pair[1].side {
            return Err(Error::Genericity(
                "cusp sides do not alternate; detection missed a zero".into(),
            ));
        }
    }
    if cusps.len() >= 2 && cusps[0].side == cusps[cusps.len() - 1].side {
        return Err(Error::Genericity(
            "cusp sides do not alternate around the wrap".into(),
        ));
    }
    Ok(cusps)
}

fn bisect_root(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..80 {
        if b - a <= 1e-12 {
            break;
        }
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fa * fm < 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Tally of cusp labels by side and orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspTally {
    pub left_up: i64,
    pub left_down: i64,
    pub right_up: i64,
    pub right_down: i64,
}

impl CuspTally {
    pub fn up(&self) -> i64 {
        self.left_up + self.right_up
    }

    pub fn down(&self) -> i64 {
        self.left_down + self.right_down
    }
}

/// Cyclic sequence of cusp labels in traversal order, plus the side of the
/// first letter (sides alternate, so one side determines all).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspWord {
    letters: Vec<CuspOrientation>,
    first_side: Side,
    tally: CuspTally,
}

impl CuspWord {
    pub fn new(letters: Vec<CuspOrientation>, first_side: Side) -> Result<Self> {
        if letters.len() < 2 || !letters.len().is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "cusp word length must be even and >= 2, got {}",
                letters.len()
            )));
        }
        let tally = tally_of(&letters, first_side);
        Ok(Self {
            letters,
            first_side,
            tally,
        })
    }

    pub fn from_cusps(cusps: &[Cusp]) -> Result<Self> {
        if cusps.is_empty() {
            return Err(Error::Precondition("no cusps".into()));
        }
        Self::new(
            cusps.iter().map(|c| c.orientation).collect(),
            cusps[0].side,
        )
    }

    /// Constructs a word with an explicit tally, bypassing the derivation.
    /// Meant for exercising the consistency check in [`rot_from_cusps`].
    pub fn with_tally(
        letters: Vec<CuspOrientation>,
        first_side: Side,
        tally: CuspTally,
    ) -> Self {
        Self {
            letters,
            first_side,
            tally,
        }
    }

    pub fn letters(&self) -> &[CuspOrientation] {
        &self.letters
    }

    pub fn first_side(&self) -> Side {
        self.first_side
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn side_at(&self, i: usize) -> Side {
        if i.is_multiple_of(2) {
            self.first_side
        } else {
            self.first_side.opposite()
        }
    }

    pub fn tally(&self) -> CuspTally {
        self.tally
    }

    /// `(c₋ - c₊) / 2`, the reduction invariant.
    pub fn value(&self) -> i64 {
        (self.tally.down() - self.tally.up()) / 2
    }

    /// Label of the first right cusp in traversal order. For reduced length-2
    /// words this separates the `(+,-)` class from `(-,+)`.
    pub fn right_cusp_label(&self) -> CuspOrientation {
        let start = if self.first_side == Side::Right { 0 } else { 1 };
        self.letters[start]
    }

    /// True when the two words agree as cyclic sequences of (label, side).
    pub fn cyclically_equal(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let n = self.len();
        (0..n).any(|r| {
            (0..n).all(|i| {
                let j = (i + r) % n;
                self.letters[i] == other.letters[j] && self.side_at(i) == other.side_at(j)
            })
        })
    }

    /// All rotation offsets under which the words agree with sides.
    pub fn matching_rotations(&self, other: &Self) -> Vec<usize> {
        if self.len() != other.len() {
            return Vec::new();
        }
        let n = self.len();
        (0..n)
            .filter(|&r| {
                (0..n).all(|i| {
                    let j = (i + r) % n;
                    self.letters[i] == other.letters[j]
                        && self.side_at(i) == other.side_at(j)
                })
            })
            .collect()
    }
}

impl fmt::Display for CuspWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn tally_of(letters: &[CuspOrientation], first_side: Side) -> CuspTally {
    let mut t = CuspTally {
        left_up: 0,
        left_down: 0,
        right_up: 0,
        right_down: 0,
    };
    for (i, l) in letters.iter().enumerate() {
        let side = if i % 2 == 0 {
            first_side
        } else {
            first_side.opposite()
        };
        match (side, l) {
            (Side::Left, CuspOrientation::Up) => t.left_up += 1,
            (Side::Left, CuspOrientation::Down) => t.left_down += 1,
            (Side::Right, CuspOrientation::Up) => t.right_up += 1,
            (Side::Right, CuspOrientation::Down) => t.right_down += 1,
        }
    }
    t
}

/// The rotation number from cusp counts, three ways:
/// `λ₋ - ρ₊`, `ρ₋ - λ₊`, and `(c₋ - c₊)/2`. The three must agree; a
/// disagreement means the word's tally record is corrupt.
pub fn rot_from_cusps(word: &CuspWord) -> Result<i64> {
    let t = word.tally();
    let derived = tally_of(word.letters(), word.first_side());
    if t != derived {
        return Err(Error::InconsistentWord);
    }
    let a = t.left_down - t.right_up;
    let b = t.right_down - t.left_up;
    let twice_c = t.down() - t.up();
    if a != b || twice_c != 2 * a {
        return Err(Error::InconsistentWord);
    }
    Ok(a)
}

/// The semicubical model arc for each (orientation, side) combination,
/// obtained from `(s, s²/2, -s³/3)` by the reflections `x ↦ -x` (flips the
/// orientation label) and `(y, z) ↦ (-y, -z)` (flips the side). Satisfies
/// `z' + x y' = 0` identically.
pub fn cusp_model_curve(
    orientation: CuspOrientation,
    side: Side,
    samples: usize,
) -> Vec<(f64, f64, f64)> {
    let n = samples.max(3);
    let sx = match (side, orientation) {
        (Side::Left, CuspOrientation::Down) | (Side::Right, CuspOrientation::Up) => 1.0,
        _ => -1.0,
    };
    let syz = match side {
        Side::Left => 1.0,
        Side::Right => -1.0,
    };
    (0..n)
        .map(|i| {
            let s = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            (sx * s, syz * s * s / 2.0, -syz * sx * s * s * s / 3.0)
        })
        .collect()
}

/// Front projection `(y, z)` with its cusps.
#[derive(Debug, Clone)]
pub struct FrontPolyline {
    pub points: Vec<(f64, f64)>,
    pub cusps: Vec<Cusp>,
}

impl FrontPolyline {
    /// Checks that `|y'|` is bounded away from zero between consecutive
    /// cusps: the front has no vertical tangencies away from cusp points.
    pub fn validate_no_vertical_tangency(
        &self,
        curve: &LegendrianCurve,
        cfg: &ToleranceConfig,
    ) -> bool {
        let m = cfg.grid_refine.max(1) * curve.n();
        let guard = TAU / self.cusps.len().max(1) as f64 / 8.0;
        for k in 0..m {
            let s = TAU * k as f64 / m as f64;
            let near_cusp = self.cusps.iter().any(|c| {
                let d = (s - c.s).rem_euclid(TAU);
                d.min(TAU - d) < guard
            });
            if near_cusp {
                continue;
            }
            if curve.lagrangian.derivative(s).1.abs() == 0.0 {
                return false;
            }
        }
        true
    }
}
