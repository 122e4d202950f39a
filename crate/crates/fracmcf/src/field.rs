//! Sampled periodic scalar fields on a uniform grid, plus the Fourier
//! helpers (projections, filtered derivatives, trigonometric evaluation)
//! that the kernel corrections and the flow filters are built on.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Where the field lives: the unit circle (angles, cell 2*pi) or the
/// 1-periodic line (cell 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Domain {
    Circle,
    PeriodicLine,
}

impl Domain {
    /// Length of one periodicity cell.
    pub fn cell(self) -> f64 {
        match self {
            Domain::Circle => 2.0 * PI,
            Domain::PeriodicLine => 1.0,
        }
    }
}

/// Fractional order s in (0,1). Constructed through `new` so every
/// evaluation routine can rely on the open-interval invariant.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) || !s.is_finite() {
            return Err(Error::InvalidOrder(s));
        }
        Ok(FractionalOrder(s))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Uniformly sampled periodic field. Index arithmetic is modulo N;
/// N is even and at least 8 so offsets can be paired antipodally.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightField {
    domain: Domain,
    values: Vec<f64>,
}

/// Cell average, squared L2 norm and sup of the centered-difference gradient.
#[derive(Debug, Clone, Copy)]
pub struct L2Stats {
    pub mean: f64,
    pub l2_sq: f64,
    pub sup_grad: f64,
}

impl HeightField {
    pub fn new(domain: Domain, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 8 || n % 2 != 0 {
            return Err(Error::GridTooCoarse(n));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(HeightField { domain, values })
    }

    pub fn constant(domain: Domain, n: usize, c: f64) -> Result<Self> {
        Self::new(domain, vec![c; n])
    }

    /// Sample a function of the native coordinate (angle in [0,2pi) or
    /// position in [0,1)) on the uniform grid.
    pub fn from_fn(domain: Domain, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let cell = domain.cell();
        let vals = (0..n).map(|i| f(cell * i as f64 / n as f64)).collect();
        Self::new(domain, vals)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid spacing in the native coordinate.
    pub fn spacing(&self) -> f64 {
        self.domain.cell() / self.len() as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Native coordinate of node i.
    pub fn coord(&self, i: usize) -> f64 {
        self.domain.cell() * i as f64 / self.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Quadrature inner product h * sum u_i v_i (trapezoid on the periodic grid).
    pub fn dot(&self, other: &HeightField) -> f64 {
        assert_eq!(self.len(), other.len());
        let h = self.spacing();
        let mut acc = 0.0;
        for (a, b) in self.values.iter().zip(&other.values) {
            acc += a * b;
        }
        acc * h
    }

    /// Cell average, squared L2 norm, and sup of |centered difference| / (2h).
    pub fn l2_stats(&self) -> Result<L2Stats> {
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = self.len();
        let h = self.spacing();
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        let mut sup_grad: f64 = 0.0;
        for i in 0..n {
            let v = self.values[i];
            sum += v;
            sum_sq += v * v;
            let d = (self.values[(i + 1) % n] - self.values[(i + n - 1) % n]).abs() / (2.0 * h);
            sup_grad = sup_grad.max(d);
        }
        Ok(L2Stats {
            mean: sum / n as f64,
            l2_sq: sum_sq * h,
            sup_grad,
        })
    }

    /// Centered-difference gradient field.
    pub fn gradient_fd(&self) -> HeightField {
        let n = self.len();
        let h = self.spacing();
        let vals = (0..n)
            .map(|i| (self.values[(i + 1) % n] - self.values[(i + n - 1) % n]) / (2.0 * h))
            .collect();
        HeightField {
            domain: self.domain,
            values: vals,
        }
    }

    /// Fourier coefficients (a_k, b_k), k = 0..=kmax, with the convention
    /// u = a_0 + sum_k a_k cos(k w x) + b_k sin(k w x), w = 2*pi/cell.
    /// The k >= 1 projections act on u minus its mean, so constant fields
    /// produce exact zeros.
    pub fn fourier_coeffs(&self, kmax: usize) -> (Vec<f64>, Vec<f64>) {
        let n = self.len();
        let kmax = kmax.min(n / 2);
        let tab = trig_table(n);
        let mean = self.values.iter().sum::<f64>() / n as f64;
        let mut a = vec![0.0; kmax + 1];
        let mut b = vec![0.0; kmax + 1];
        a[0] = mean;
        for k in 1..=kmax {
            let mut ca = 0.0;
            let mut cb = 0.0;
            for i in 0..n {
                let m = (k * i) % n;
                let v = self.values[i] - mean;
                ca += v * tab.cos[m];
                cb += v * tab.sin[m];
            }
            let norm = if 2 * k == n { 1.0 } else { 2.0 };
            a[k] = norm * ca / n as f64;
            b[k] = norm * cb / n as f64;
        }
        (a, b)
    }

    /// Spectral derivative of given order; modes above `kcut` (if set) are
    /// dropped. The Nyquist mode's odd-order derivative samples to zero.
    pub fn spectral_derivative(&self, order: u32, kcut: Option<usize>) -> HeightField {
        let n = self.len();
        let half = n / 2;
        let kc = kcut.unwrap_or(half).min(half);
        let (a, b) = self.fourier_coeffs(kc);
        let w = 2.0 * PI / self.domain.cell();
        let tab = trig_table(n);
        let mut vals = vec![0.0; n];
        for k in 1..=kc {
            let f = (k as f64 * w).powi(order as i32);
            // d/dx^order of (a cos + b sin): rotate coefficients by order*pi/2
            let (ca, cb) = match order % 4 {
                0 => (a[k] * f, b[k] * f),
                1 => (b[k] * f, -a[k] * f),
                2 => (-a[k] * f, -b[k] * f),
                _ => (-b[k] * f, a[k] * f),
            };
            if 2 * k == n && order % 2 == 1 {
                continue; // sawtooth derivative invisible on the grid
            }
            for (i, v) in vals.iter_mut().enumerate() {
                let m = (k * i) % n;
                *v += ca * tab.cos[m] + cb * tab.sin[m];
            }
        }
        HeightField {
            domain: self.domain,
            values: vals,
        }
    }

    /// Hard spectral truncation: keep modes k <= kmax.
    pub fn low_pass(&self, kmax: usize) -> HeightField {
        let n = self.len();
        let (a, b) = self.fourier_coeffs(kmax.min(n / 2));
        let tab = trig_table(n);
        let mut vals = vec![a[0]; n];
        for k in 1..a.len() {
            for (i, v) in vals.iter_mut().enumerate() {
                let m = (k * i) % n;
                *v += a[k] * tab.cos[m] + b[k] * tab.sin[m];
            }
        }
        HeightField {
            domain: self.domain,
            values: vals,
        }
    }

    /// Trigonometric interpolation at an arbitrary native coordinate.
    /// Exact (to rounding) on band-limited fields.
    pub fn eval_trig(&self, x: f64) -> f64 {
        self.interpolant().eval(x)
    }

    /// Reusable trigonometric interpolant (coefficients computed once).
    pub fn interpolant(&self) -> TrigInterp {
        let half = self.len() / 2;
        let (a, b) = self.fourier_coeffs(half);
        TrigInterp {
            a,
            b,
            omega: 2.0 * PI / self.domain.cell(),
        }
    }

    /// Magnitude of the k-th Fourier mode, sqrt(a_k^2 + b_k^2).
    pub fn mode_amplitude(&self, k: usize) -> f64 {
        let (a, b) = self.fourier_coeffs(k);
        (a[k] * a[k] + b[k] * b[k]).sqrt()
    }
}

/// Truncated Fourier series of a sampled field, evaluable anywhere.
#[derive(Debug, Clone)]
pub struct TrigInterp {
    a: Vec<f64>,
    b: Vec<f64>,
    omega: f64,
}

impl TrigInterp {
    pub fn eval(&self, x: f64) -> f64 {
        let mut v = self.a[0];
        for k in 1..self.a.len() {
            let (skx, ckx) = (k as f64 * self.omega * x).sin_cos();
            v += self.a[k] * ckx + self.b[k] * skx;
        }
        v
    }
}

struct TrigTable {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

/// cos/sin of 2*pi*m/N for m = 0..N; indexing (k*i) mod N keeps the
/// discrete symmetries of the projections exact.
fn trig_table(n: usize) -> TrigTable {
    let mut cos = Vec::with_capacity(n);
    let mut sin = Vec::with_capacity(n);
    for m in 0..n {
        let (s, c) = (2.0 * PI * m as f64 / n as f64).sin_cos();
        cos.push(c);
        sin.push(s);
    }
    TrigTable { cos, sin }
}
