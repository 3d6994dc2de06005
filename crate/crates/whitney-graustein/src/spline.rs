//! Uniform periodic cubic splines on the circle `[0, 2π)`.
//!
//! Curves are stored as samples at `s_i = 2πi/n` and interpolated with the
//! classical moment (second-derivative) formulation. The cyclic tridiagonal
//! moment system is solved with the Sherman–Morrison trick around a Thomas
//! sweep, which is stable here because the matrix is strictly diagonally
//! dominant.

use std::f64::consts::TAU;

/// Periodic cubic interpolant of uniform samples on `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicSpline {
    values: Vec<f64>,
    moments: Vec<f64>,
    h: f64,
}

impl PeriodicSpline {
    pub fn new(values: Vec<f64>) -> Self {
        let n = values.len();
        assert!(n >= 3, "periodic spline needs at least 3 samples");
        let h = TAU / n as f64;
        let rhs: Vec<f64> = (0..n)
            .map(|i| {
                let ym = values[(i + n - 1) % n];
                let yp = values[(i + 1) % n];
                6.0 * (ym - 2.0 * values[i] + yp) / (h * h)
            })
            .collect();
        let moments = solve_cyclic_tridiagonal(1.0, 4.0, 1.0, &rhs);
        Self { values, moments, h }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    /// Segment index and local coordinate `u ∈ [0, 1)` for a parameter value.
    fn locate(&self, s: f64) -> (usize, f64) {
        let n = self.values.len();
        let mut t = s.rem_euclid(TAU);
        if !t.is_finite() {
            t = 0.0;
        }
        let mut i = (t / self.h) as usize;
        if i >= n {
            i = n - 1;
        }
        let u = t / self.h - i as f64;
        (i, u.clamp(0.0, 1.0))
    }

    /// Value of the interpolant; exact sample value at nodes.
    pub fn value(&self, s: f64) -> f64 {
        let (i, u) = self.locate(s);
        self.segment_value(i, u)
    }

    pub fn derivative(&self, s: f64) -> f64 {
        let (i, u) = self.locate(s);
        self.segment_derivative(i, u)
    }

    pub fn second_derivative(&self, s: f64) -> f64 {
        let (i, u) = self.locate(s);
        let j = (i + 1) % self.values.len();
        (1.0 - u) * self.moments[i] + u * self.moments[j]
    }

    /// Cubic piece `i` evaluated at local coordinate `u ∈ [0, 1]`.
    pub(crate) fn segment_value(&self, i: usize, u: f64) -> f64 {
        let j = (i + 1) % self.values.len();
        let v = 1.0 - u;
        self.values[i] * v
            + self.values[j] * u
            + self.h * self.h / 6.0
                * ((v * v * v - v) * self.moments[i] + (u * u * u - u) * self.moments[j])
    }

    pub(crate) fn segment_derivative(&self, i: usize, u: f64) -> f64 {
        let j = (i + 1) % self.values.len();
        let v = 1.0 - u;
        (self.values[j] - self.values[i]) / self.h
            + self.h / 6.0
                * ((1.0 - 3.0 * v * v) * self.moments[i] + (3.0 * u * u - 1.0) * self.moments[j])
    }
}

/// Solves the cyclic tridiagonal system with constant bands `(a, b, c)`.
fn solve_cyclic_tridiagonal(a: f64, b: f64, c: f64, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    assert!(n >= 3);
    // Sherman-Morrison: perturb the two corner entries into a rank-one update.
    let gamma = -b;
    let mut diag = vec![b; n];
    diag[0] = b - gamma;
    diag[n - 1] = b - a * c / gamma;

    let x = solve_tridiagonal(a, &diag, c, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = a;
    let z = solve_tridiagonal(a, &diag, c, &u);

    let fact = (x[0] + c * x[n - 1] / gamma) / (1.0 + z[0] + c * z[n - 1] / gamma);
    x.iter().zip(z.iter()).map(|(xi, zi)| xi - fact * zi).collect()
}

/// Thomas sweep for a (non-cyclic) tridiagonal system with constant off-diagonals.
fn solve_tridiagonal(a: f64, diag: &[f64], c: f64, rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    cp[0] = c / diag[0];
    dp[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - a * cp[i - 1];
        cp[i] = c / m;
        dp[i] = (rhs[i] - a * dp[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

// Three-point Gauss-Legendre on [0, 1]: exact for polynomials of degree <= 5,
// which covers the product of a cubic piece and a quadratic derivative piece.
const GAUSS3: [(f64, f64); 3] = [
    (0.112_701_665_379_258_31, 5.0 / 18.0),
    (0.5, 4.0 / 9.0),
    (0.887_298_334_620_741_7, 5.0 / 18.0),
];

/// `∮ f(s) g'(s) ds` over the full period, exact for the spline representation.
pub fn integral_f_gprime(f: &PeriodicSpline, g: &PeriodicSpline) -> f64 {
    assert_eq!(f.len(), g.len());
    let n = f.len();
    let mut total = 0.0;
    for i in 0..n {
        let mut seg = 0.0;
        for (u, w) in GAUSS3 {
            seg += w * f.segment_value(i, u) * g.segment_derivative(i, u);
        }
        total += seg * f.h;
    }
    total
}

/// Partial integrals `∫_0^{s_i} f g' ds` at every node; the last entry is the
/// full-period integral. Length `n + 1`.
pub fn cumulative_f_gprime(f: &PeriodicSpline, g: &PeriodicSpline) -> Vec<f64> {
    assert_eq!(f.len(), g.len());
    let n = f.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    let mut acc = 0.0;
    for i in 0..n {
        let mut seg = 0.0;
        for (u, w) in GAUSS3 {
            seg += w * f.segment_value(i, u) * g.segment_derivative(i, u);
        }
        acc += seg * f.h;
        out.push(acc);
    }
    out
}
