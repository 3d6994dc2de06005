//! Regular closed plane curves: evaluation, regularity, rotation number,
//! signed area, and the elementary symmetries.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::config::ToleranceConfig;
use crate::error::{Error, Result};
use crate::spline::{integral_f_gprime, PeriodicSpline};

/// Minimum number of samples a curve must carry.
pub const MIN_SAMPLES: usize = 32;

/// A closed plane curve, stored as uniform samples at `s_i = 2πi/n` and
/// interpolated per coordinate with a periodic cubic spline.
///
/// Values are immutable after construction; every operation returns a new
/// curve, so sharing across threads is safe.
#[derive(Debug, Clone)]
pub struct PlanarClosedCurve {
    xs: Vec<f64>,
    ys: Vec<f64>,
    x_spline: PeriodicSpline,
    y_spline: PeriodicSpline,
    name: Option<String>,
}

/// Outcome of the regularity scan: speed extrema over the refined grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularityCertificate {
    pub min_speed: f64,
    pub max_speed: f64,
    /// Parameter where the minimum was attained.
    pub argmin: f64,
    /// Number of grid points scanned.
    pub grid: usize,
}

impl RegularityCertificate {
    pub fn ratio(&self) -> f64 {
        if self.max_speed > 0.0 {
            self.min_speed / self.max_speed
        } else {
            0.0
        }
    }
}

impl PlanarClosedCurve {
    /// Builds a curve from coordinate samples. Requires at least
    /// [`MIN_SAMPLES`] finite samples per coordinate.
    pub fn try_new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Precondition(format!(
                "coordinate sample counts differ: {} vs {}",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < MIN_SAMPLES {
            return Err(Error::Precondition(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                xs.len()
            )));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Precondition("samples must be finite".into()));
        }
        let x_spline = PeriodicSpline::new(xs.clone());
        let y_spline = PeriodicSpline::new(ys.clone());
        Ok(Self {
            xs,
            ys,
            x_spline,
            y_spline,
            name: None,
        })
    }

    /// Samples a parametric formula at `n` uniform parameters.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> (f64, f64)) -> Result<Self> {
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for i in 0..n {
            let (x, y) = f(TAU * i as f64 / n as f64);
            xs.push(x);
            ys.push(y);
        }
        Self::try_new(xs, ys)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn sample(&self, i: usize) -> (f64, f64) {
        (self.xs[i], self.ys[i])
    }

    /// Parameter of sample `i`.
    pub fn node(&self, i: usize) -> f64 {
        TAU * i as f64 / self.n() as f64
    }

    pub(crate) fn x_spline(&self) -> &PeriodicSpline {
        &self.x_spline
    }

    pub(crate) fn y_spline(&self) -> &PeriodicSpline {
        &self.y_spline
    }

    /// Spline value at any parameter (2π-periodic).
    pub fn evaluate(&self, s: f64) -> (f64, f64) {
        (self.x_spline.value(s), self.y_spline.value(s))
    }

    /// Spline derivative at any parameter (2π-periodic, continuous).
    pub fn derivative(&self, s: f64) -> (f64, f64) {
        (self.x_spline.derivative(s), self.y_spline.derivative(s))
    }

    pub fn second_derivative(&self, s: f64) -> (f64, f64) {
        (
            self.x_spline.second_derivative(s),
            self.y_spline.second_derivative(s),
        )
    }

    pub fn speed(&self, s: f64) -> f64 {
        let (dx, dy) = self.derivative(s);
        dx.hypot(dy)
    }

    /// Speed extrema over the refined grid `grid_refine * n`.
    pub fn regularity(&self, cfg: &ToleranceConfig) -> RegularityCertificate {
        let m = cfg.grid_refine.max(1) * self.n();
        let mut min_speed = f64::INFINITY;
        let mut max_speed = 0.0f64;
        let mut argmin = 0.0;
        for k in 0..m {
            let s = TAU * k as f64 / m as f64;
            let v = self.speed(s);
            if v < min_speed {
                min_speed = v;
                argmin = s;
            }
            max_speed = max_speed.max(v);
        }
        RegularityCertificate {
            min_speed,
            max_speed,
            argmin,
            grid: m,
        }
    }

    /// Fails with [`Error::Regularity`] when the relative speed floor is violated.
    pub fn require_regular(&self, cfg: &ToleranceConfig) -> Result<RegularityCertificate> {
        let cert = self.regularity(cfg);
        if cert.min_speed < cfg.eps_speed * cert.max_speed || cert.max_speed == 0.0 {
            return Err(Error::Regularity {
                min_speed: cert.min_speed,
                max_speed: cert.max_speed,
            });
        }
        Ok(cert)
    }

    /// Winding number of the tangent map `s ↦ c'(s)` about the origin.
    ///
    /// Angle increments are summed over the refined grid, splitting any step
    /// that turns more than π/2 until it behaves; the unwrapped total must land
    /// within 0.01 of an integer multiple of 2π or the whole grid is refined
    /// again.
    pub fn rotation_number(&self, cfg: &ToleranceConfig) -> Result<i64> {
        self.require_regular(cfg)?;
        let mut m = cfg.grid_refine.max(1) * self.n();
        for _ in 0..4 {
            let total = winding_of(|s| self.derivative(s), m)?;
            let turns = total / TAU;
            let k = turns.round();
            if (turns - k).abs() <= 0.01 {
                return Ok(k as i64);
            }
            m *= 2;
        }
        Err(Error::Aliasing)
    }

    /// Signed enclosed area `∮ x dy`, integrated segment-exactly for the
    /// spline representation.
    pub fn signed_area(&self) -> f64 {
        integral_f_gprime(&self.x_spline, &self.y_spline)
    }

    /// Resamples the interpolant at `n` uniform parameters. A same-`n`
    /// resample returns the identical samples.
    pub fn resample(&self, n: usize) -> Result<Self> {
        if n == self.n() {
            return Ok(self.clone());
        }
        let mut out = Self::from_fn(n, |s| self.evaluate(s))?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Precomposition with an orientation-preserving circle diffeomorphism:
    /// new samples are `c(φ(s_i))`. Preserves rotation number and signed area.
    pub fn reparametrize(&self, phi: &CircleDiffeo) -> Result<Self> {
        let mut out = Self::from_fn(self.n(), |s| self.evaluate(phi.apply(s)))?;
        out.name = self.name.clone();
        Ok(out)
    }

    /// Reflection across the y-axis, `(x, y) ↦ (-x, y)`. Negates both the
    /// rotation number and the signed area, and flips every cusp label.
    pub fn mirror_y(&self) -> Self {
        let xs: Vec<f64> = self.xs.iter().map(|x| -x).collect();
        let mut out = Self::try_new(xs, self.ys.clone()).expect("mirror keeps validity");
        out.name = self.name.clone();
        out
    }

    /// Uniform scaling about the origin; area scales by λ².
    pub fn scale(&self, lambda: f64) -> Result<Self> {
        if lambda <= 0.0 || lambda.is_nan() {
            return Err(Error::Precondition("scale factor must be positive".into()));
        }
        let xs = self.xs.iter().map(|x| lambda * x).collect();
        let ys = self.ys.iter().map(|y| lambda * y).collect();
        let mut out = Self::try_new(xs, ys)?;
        out.name = self.name.clone();
        Ok(out)
    }

    pub fn translate(&self, dx: f64, dy: f64) -> Self {
        let xs = self.xs.iter().map(|x| x + dx).collect();
        let ys = self.ys.iter().map(|y| y + dy).collect();
        Self::try_new(xs, ys).expect("translation keeps validity")
    }

    /// Sample order reversed; traverses the same trace backwards.
    pub fn reverse_orientation(&self) -> Self {
        let xs: Vec<f64> = self.xs.iter().rev().copied().collect();
        let ys: Vec<f64> = self.ys.iter().rev().copied().collect();
        Self::try_new(xs, ys).expect("reversal keeps validity")
    }

    /// Axis-aligned bounding box `((min_x, min_y), (max_x, max_y))` of the samples.
    pub fn bounding_box(&self) -> ((f64, f64), (f64, f64)) {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (&x, &y) in self.xs.iter().zip(&self.ys) {
            min.0 = min.0.min(x);
            min.1 = min.1.min(y);
            max.0 = max.0.max(x);
            max.1 = max.1.max(y);
        }
        (min, max)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let (min, max) = self.bounding_box();
        (max.0 - min.0).hypot(max.1 - min.1)
    }

    /// Largest coordinate difference against another curve with the same
    /// sample count.
    pub fn max_sample_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.n(), other.n());
        self.xs
            .iter()
            .zip(&other.xs)
            .chain(self.ys.iter().zip(&other.ys))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Sums principal rotations of `v` between consecutive grid points, splitting
/// intervals whose turn exceeds π/2.
pub(crate) fn winding_of(v: impl Fn(f64) -> (f64, f64), m: usize) -> Result<f64> {
    let mut total = 0.0;
    let mut prev_s = 0.0;
    let mut prev_v = v(0.0);
    for k in 1..=m {
        let s = TAU * k as f64 / m as f64;
        let cur = v(s);
        total += turn_between(&v, prev_s, s, prev_v, cur, 0)?;
        prev_s = s;
        prev_v = cur;
    }
    Ok(total)
}

fn turn_between(
    v: &impl Fn(f64) -> (f64, f64),
    s0: f64,
    s1: f64,
    v0: (f64, f64),
    v1: (f64, f64),
    depth: usize,
) -> Result<f64> {
    let cross = v0.0 * v1.1 - v0.1 * v1.0;
    let dot = v0.0 * v1.0 + v0.1 * v1.1;
    let theta = cross.atan2(dot);
    if theta.abs() <= FRAC_PI_2 {
        return Ok(theta);
    }
    if depth >= 48 {
        return Err(Error::Aliasing);
    }
    let mid = 0.5 * (s0 + s1);
    let vm = v(mid);
    Ok(turn_between(v, s0, mid, v0, vm, depth + 1)?
        + turn_between(v, mid, s1, vm, v1, depth + 1)?)
}

/// An orientation-preserving diffeomorphism of the circle, stored as the
/// periodic displacement `φ(s) - s` so that `φ(s + 2π) = φ(s) + 2π` holds by
/// construction.
#[derive(Debug, Clone)]
pub struct CircleDiffeo {
    displacement: PeriodicSpline,
}

impl CircleDiffeo {
    /// Builds the diffeomorphism from displacement samples `φ(s_i) - s_i`.
    /// Fails with [`Error::Monotonicity`] unless `φ' = 1 + D' > 0` on a
    /// refined grid.
    pub fn from_displacement_samples(displacement: Vec<f64>) -> Result<Self> {
        if displacement.len() < 3 {
            return Err(Error::Precondition(
                "diffeomorphism needs at least 3 samples".into(),
            ));
        }
        if displacement.iter().any(|v| !v.is_finite()) {
            return Err(Error::Precondition("displacement must be finite".into()));
        }
        let spline = PeriodicSpline::new(displacement);
        let m = 8 * spline.len();
        for k in 0..m {
            let s = TAU * k as f64 / m as f64;
            let slope = 1.0 + spline.derivative(s);
            if slope <= 0.0 {
                return Err(Error::Monotonicity(format!(
                    "phi'({s:.4}) = {slope:.3e}"
                )));
            }
        }
        Ok(Self {
            displacement: spline,
        })
    }

    /// Constant rotation `s ↦ s + offset`.
    pub fn rotation(n: usize, offset: f64) -> Self {
        Self::from_displacement_samples(vec![offset; n.max(3)])
            .expect("constant displacement is monotone")
    }

    pub fn apply(&self, s: f64) -> f64 {
        s + self.displacement.value(s)
    }

    pub fn derivative(&self, s: f64) -> f64 {
        1.0 + self.displacement.derivative(s)
    }

    pub fn displacement_samples(&self) -> &[f64] {
        self.displacement.values()
    }

    /// Minimum of `φ'` over a refined grid.
    pub fn min_slope(&self) -> f64 {
        let m = 8 * self.displacement.len();
        (0..m)
            .map(|k| self.derivative(TAU * k as f64 / m as f64))
            .fold(f64::INFINITY, f64::min)
    }
}
