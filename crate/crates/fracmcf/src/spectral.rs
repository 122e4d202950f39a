//! Fourier analysis on the circle standing in for spherical harmonics in
//! dimension two: the degree-(0,1,rest) splitting and eigenvalues of the
//! hypersingular Riesz operator.

use crate::error::{Error, Result};
use crate::field::{Domain, FractionalOrder, HeightField};
use crate::kernel::riesz_apply;
use std::f64::consts::PI;

/// Reference grid for `eigenvalue`; documented so identity tolerances are
/// meaningful.
pub const EIGEN_GRID: usize = 512;

/// Degree-(0,1) coefficients and the orthogonal remainder of a circle field,
/// in the orthonormal basis Y0 = 1/sqrt(2 pi), Y1_i = x_i/sqrt(pi).
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    pub a: f64,
    pub b: [f64; 2],
    pub remainder: HeightField,
}

/// Project onto the degree-0 and degree-1 harmonics; the reconstruction
/// u = a Y0 + b . Y1 + R is exact to rounding and R is orthogonal to both.
pub fn decompose(u: &HeightField) -> Result<SpectralSplit> {
    assert_eq!(u.domain(), Domain::Circle, "decompose expects a circle field");
    if u.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let n = u.len();
    let h = u.spacing();
    let y0 = 1.0 / (2.0 * PI).sqrt();
    let y1 = 1.0 / PI.sqrt();
    let mut a = 0.0;
    let mut b = [0.0; 2];
    for i in 0..n {
        let t = u.coord(i);
        let v = u.values()[i];
        a += v * y0;
        b[0] += v * t.cos() * y1;
        b[1] += v * t.sin() * y1;
    }
    a *= h;
    b[0] *= h;
    b[1] *= h;
    let rem: Vec<f64> = (0..n)
        .map(|i| {
            let t = u.coord(i);
            u.values()[i] - a * y0 - b[0] * t.cos() * y1 - b[1] * t.sin() * y1
        })
        .collect();
    Ok(SpectralSplit {
        a,
        b,
        remainder: HeightField::new(Domain::Circle, rem)?,
    })
}

/// k-th eigenvalue of the Riesz operator on the reference grid, as the
/// Rayleigh quotient of the mode-k cosine.
pub fn eigenvalue(k: usize, s: FractionalOrder) -> Result<f64> {
    eigenvalue_on_grid(k, s, EIGEN_GRID)
}

/// Rayleigh quotient <cos k., riesz cos k.> / ||cos k.||^2 on an N-node grid.
pub fn eigenvalue_on_grid(k: usize, s: FractionalOrder, n: usize) -> Result<f64> {
    if k > n / 4 {
        return Err(Error::ModeUnderResolved { k, n });
    }
    if k == 0 {
        // constants are the kernel of the operator
        let u = HeightField::constant(Domain::Circle, n, 1.0)?;
        let v = riesz_apply(&u, s)?;
        return Ok(u.dot(&v) / u.dot(&u));
    }
    let u = HeightField::from_fn(Domain::Circle, n, |t| (k as f64 * t).cos())?;
    let v = riesz_apply(&u, s)?;
    Ok(u.dot(&v) / u.dot(&u))
}

/// Magnitude of the k-th Fourier coefficient (cosine and sine combined).
pub fn mode_amplitude(u: &HeightField, k: usize) -> Result<f64> {
    if k > u.len() / 2 {
        return Err(Error::ModeUnderResolved { k, n: u.len() });
    }
    Ok(u.mode_amplitude(k))
}
