//! Cubic interpolation of sampled meridians.

use crate::error::{Error, Result};

/// Not-a-knot cubic spline through `(x_i, y_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives at the nodes.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        let n = x.len();
        if n != y.len() {
            return Err(Error::InvalidParameter("spline nodes and values differ in length".into()));
        }
        if n < 4 {
            return Err(Error::InvalidParameter(format!("cubic spline needs at least 4 nodes, got {n}")));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("spline nodes must be strictly increasing".into()));
        }
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();

        // Unknowns M_1 .. M_{n-2}; rows i = 1 .. n-2.
        let k = n - 2;
        let mut sub = vec![0.0; k];
        let mut diag = vec![0.0; k];
        let mut sup = vec![0.0; k];
        let mut rhs = vec![0.0; k];
        for i in 1..=k {
            let r = i - 1;
            sub[r] = h[i - 1];
            diag[r] = 2.0 * (h[i - 1] + h[i]);
            sup[r] = h[i];
            rhs[r] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        // Not-a-knot: third derivative continuous at x_1 and x_{n-2}.
        let (h0, h1) = (h[0], h[1]);
        diag[0] += h0 + h0 * h0 / h1;
        sup[0] -= h0 * h0 / h1;
        let (a, b) = (h[n - 3], h[n - 2]);
        diag[k - 1] += b + b * b / a;
        sub[k - 1] -= b * b / a;

        let inner = solve_tridiagonal(&sub, &diag, &sup, &rhs);
        let mut m = Vec::with_capacity(n);
        m.push(inner[0] * (1.0 + h0 / h1) - inner[1] * h0 / h1);
        m.extend_from_slice(&inner);
        m.push(inner[k - 1] * (1.0 + b / a) - inner[k - 2] * b / a);
        Ok(Self { x: x.to_vec(), y: y.to_vec(), m })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    fn interval(&self, t: f64) -> usize {
        let i = self.x.partition_point(|&xi| xi <= t);
        i.saturating_sub(1).min(self.x.len() - 2)
    }

    /// Value, first and second derivative at `t`; extrapolates with the end pieces.
    pub fn eval(&self, t: f64) -> (f64, f64, f64) {
        let i = self.interval(t);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let h = x1 - x0;
        let (a, b) = (x1 - t, t - x0);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let c0 = self.y[i] / h - m0 * h / 6.0;
        let c1 = self.y[i + 1] / h - m1 * h / 6.0;
        let value = (m0 * a * a * a + m1 * b * b * b) / (6.0 * h) + c0 * a + c1 * b;
        let slope = (-m0 * a * a + m1 * b * b) / (2.0 * h) - c0 + c1;
        let curvature = (m0 * a + m1 * b) / h;
        (value, slope, curvature)
    }
}

fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i] * c[i - 1];
        c[i] = sup[i] / denom;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Cubic Hermite interpolant through values and slopes.
fn hermite(x0: f64, x1: f64, y0: f64, y1: f64, s0: f64, s1: f64, t: f64) -> f64 {
    let h = x1 - x0;
    let r = (t - x0) / h;
    let r2 = r * r;
    let r3 = r2 * r;
    (2.0 * r3 - 3.0 * r2 + 1.0) * y0
        + (r3 - 2.0 * r2 + r) * h * s0
        + (-2.0 * r3 + 3.0 * r2) * y1
        + (r3 - r2) * h * s1
}

/// One coordinate of a sampled curve: values and slopes at the nodes.
///
/// The value is the cubic Hermite interpolant of `(value, slope)`; the
/// slope and its derivative come from the not-a-knot spline of the slopes.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledChannel {
    values: Vec<f64>,
    slopes: Vec<f64>,
    slope_spline: CubicSpline,
}

impl SampledChannel {
    pub fn new(nodes: &[f64], values: &[f64], slopes: &[f64]) -> Result<Self> {
        if values.len() != nodes.len() || slopes.len() != nodes.len() {
            return Err(Error::InvalidParameter("sample columns differ in length".into()));
        }
        Ok(Self {
            values: values.to_vec(),
            slopes: slopes.to_vec(),
            slope_spline: CubicSpline::new(nodes, slopes)?,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// Value, first and second derivative at `t`.
    pub fn eval(&self, t: f64) -> (f64, f64, f64) {
        let x = self.slope_spline.nodes();
        let i = self.slope_spline.interval(t);
        let value = hermite(
            x[i],
            x[i + 1],
            self.values[i],
            self.values[i + 1],
            self.slopes[i],
            self.slopes[i + 1],
            t,
        );
        let (slope, curvature, _) = self.slope_spline.eval(t);
        (value, slope, curvature)
    }

    /// Estimated error of the second derivative, from comparing against the
    /// spline on every other node (third-order convergence assumed).
    pub fn curvature_error_estimate(&self) -> Option<f64> {
        let x = self.slope_spline.nodes();
        if x.len() < 9 {
            return None;
        }
        let mut xs: Vec<f64> = x.iter().step_by(2).copied().collect();
        let mut ys: Vec<f64> = self.slopes.iter().step_by(2).copied().collect();
        if (x.len() - 1) % 2 == 1 {
            // keep the last node so both splines cover the same interval
            xs.push(x[x.len() - 1]);
            ys.push(self.slopes[x.len() - 1]);
        }
        let coarse = CubicSpline::new(&xs, &ys).ok()?;
        let worst = x
            .iter()
            .skip(1)
            .step_by(2)
            .map(|&t| (coarse.eval(t).1 - self.slope_spline.eval(t).1).abs())
            .fold(0.0_f64, f64::max);
        Some(worst / 7.0)
    }
}
