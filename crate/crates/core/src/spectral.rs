//! Periodic trigonometric interpolation on equispaced grids: differentiation,
//! evaluation at shifted points, and upsampling.
//!
//! Vector fields are packed as `x + i y` so one complex FFT handles both
//! components; every multiplier below is the symbol of a real operator (the
//! Nyquist mode is treated symmetrically), so the packing is exact.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::linalg::Vec2;

#[derive(Clone)]
pub struct Spectral {
    m: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral").field("m", &self.m).finish()
    }
}

/// Signed wavenumber of FFT bin `j` (Nyquist reported as `+m/2`).
#[inline]
fn wavenumber(j: usize, m: usize) -> i64 {
    if j <= m / 2 {
        j as i64
    } else {
        j as i64 - m as i64
    }
}

impl Spectral {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 || m % 2 == 1 {
            return Err(Error::Config(format!("spectral grids need an even size, got {m}")));
        }
        let mut planner = FftPlanner::new();
        Ok(Spectral { m, fwd: planner.plan_fft_forward(m), inv: planner.plan_fft_inverse(m) })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// Normalized coefficients `c_k = (1/m) Σ f_j e^{−ikθ_j}`.
    pub fn forward(&self, f: &[Vec2]) -> Vec<Complex64> {
        assert_eq!(f.len(), self.m);
        let mut buf: Vec<Complex64> = f.iter().map(|v| Complex64::new(v.x, v.y)).collect();
        self.fwd.process(&mut buf);
        let s = 1.0 / self.m as f64;
        buf.iter_mut().for_each(|c| *c *= s);
        buf
    }

    fn inverse(&self, mut buf: Vec<Complex64>) -> Vec<Vec2> {
        self.inv.process(&mut buf);
        buf.into_iter().map(|c| Vec2::new(c.re, c.im)).collect()
    }

    /// d/dθ of the trigonometric interpolant (Nyquist mode dropped).
    pub fn derivative(&self, f: &[Vec2]) -> Vec<Vec2> {
        let m = self.m;
        let mut c = self.forward(f);
        for (j, cj) in c.iter_mut().enumerate() {
            let k = wavenumber(j, m);
            *cj = if 2 * k.unsigned_abs() as usize == m {
                Complex64::new(0.0, 0.0)
            } else {
                *cj * Complex64::new(0.0, k as f64)
            };
        }
        self.inverse(c)
    }

    /// Phase table for evaluating the interpolant at `θ_i + σ` for each offset σ.
    pub fn shifter(&self, offsets: &[f64]) -> Shifter {
        let m = self.m;
        let phases = offsets
            .iter()
            .map(|&s| {
                (0..m)
                    .map(|j| {
                        let k = wavenumber(j, m);
                        if 2 * k.unsigned_abs() as usize == m {
                            Complex64::new((k as f64 * s).cos(), 0.0)
                        } else {
                            Complex64::from_polar(1.0, k as f64 * s)
                        }
                    })
                    .collect()
            })
            .collect();
        Shifter { spectral: self.clone(), offsets: offsets.to_vec(), phases }
    }

    /// Values of the interpolant on a grid `factor` times finer.
    pub fn upsample(&self, f: &[Vec2], factor: usize) -> Vec<Vec2> {
        let m = self.m;
        let big = m * factor;
        let c = self.forward(f);
        let mut out = vec![Complex64::new(0.0, 0.0); big];
        for (j, cj) in c.iter().enumerate() {
            let k = wavenumber(j, m);
            if 2 * k.unsigned_abs() as usize == m && factor > 1 {
                // Split the Nyquist mode into ±m/2 so the interpolant stays real.
                out[m / 2] += *cj * 0.5;
                out[big - m / 2] += *cj * 0.5;
            } else {
                let idx = if k >= 0 { k as usize } else { (big as i64 + k) as usize };
                out[idx] += *cj;
            }
        }
        let mut planner = FftPlanner::new();
        planner.plan_fft_inverse(big).process(&mut out);
        out.into_iter().map(|c| Vec2::new(c.re, c.im)).collect()
    }
}

/// Precomputed shifts of a grid function by a fixed set of offsets.
#[derive(Debug, Clone)]
pub struct Shifter {
    spectral: Spectral,
    offsets: Vec<f64>,
    phases: Vec<Vec<Complex64>>,
}

impl Shifter {
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// `out[q][i] = f(θ_i + σ_q)`.
    pub fn apply(&self, f: &[Vec2]) -> Vec<Vec<Vec2>> {
        let c = self.spectral.forward(f);
        self.phases
            .iter()
            .map(|ph| {
                let buf: Vec<Complex64> = c.iter().zip(ph).map(|(a, b)| a * b).collect();
                self.spectral.inverse(buf)
            })
            .collect()
    }
}

/// Equispaced parameter grid `θ_i = 2πi/m`.
pub fn theta_grid(m: usize) -> Vec<f64> {
    (0..m).map(|i| 2.0 * PI * i as f64 / m as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: usize, f: impl Fn(f64) -> Vec2) -> Vec<Vec2> {
        theta_grid(m).into_iter().map(f).collect()
    }

    #[test]
    fn derivative_exact_on_trig_polynomials() {
        let m = 32;
        let s = Spectral::new(m).unwrap();
        let f = field(m, |t| Vec2::new((3.0 * t).sin() + 1.0, (15.0 * t).cos()));
        let d = s.derivative(&f);
        for (i, t) in theta_grid(m).into_iter().enumerate() {
            let e = Vec2::new(3.0 * (3.0 * t).cos(), -15.0 * (15.0 * t).sin());
            assert!((d[i] - e).norm() < 1e-12);
        }
    }

    #[test]
    fn shift_and_upsample_match_interpolant() {
        let m = 24;
        let s = Spectral::new(m).unwrap();
        let g = |t: f64| Vec2::new((2.0 * t).cos() - 0.3 * (11.0 * t).sin(), (5.0 * t).sin());
        let f = field(m, g);
        let sigma = 0.123;
        let sh = s.shifter(&[sigma]).apply(&f);
        for (i, t) in theta_grid(m).into_iter().enumerate() {
            assert!((sh[0][i] - g(t + sigma)).norm() < 1e-13);
        }
        let up = s.upsample(&f, 3);
        for (i, t) in theta_grid(3 * m).into_iter().enumerate() {
            assert!((up[i] - g(t)).norm() < 1e-13);
        }
    }

    #[test]
    fn odd_size_rejected() {
        assert!(Spectral::new(15).is_err());
    }
}
