//! Finite truncations of `l^p`. Vectors of different lengths are compared
//! after zero padding, so a fresh coordinate is just a longer vector.

use crate::error::{Error, Result};
use crate::metric::MetricSpace;

/// `||v||_p`.
pub fn lp_norm(v: &[f64], p: f64) -> f64 {
    if p == 2.0 {
        return v.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    if p == 1.0 {
        return v.iter().map(|x| x.abs()).sum();
    }
    v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

pub(crate) fn padded_diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpSpace {
    pub p: f64,
    /// Dimension used for sampling; evaluation accepts any length.
    pub dim: usize,
}

impl LpSpace {
    pub fn new(p: f64, dim: usize) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be finite and >= 1"
            )));
        }
        Ok(LpSpace { p, dim })
    }

    /// The conjugate exponent `q` with `1/p + 1/q = 1` (`inf` for `p = 1`).
    pub fn conjugate(&self) -> f64 {
        if self.p == 1.0 {
            f64::INFINITY
        } else {
            self.p / (self.p - 1.0)
        }
    }
}

impl MetricSpace for LpSpace {
    type Point = Vec<f64>;
    type Scalar = f64;

    fn distance(&self, a: &Vec<f64>, b: &Vec<f64>) -> Result<f64> {
        Ok(lp_norm(&padded_diff(a, b), self.p))
    }

    fn base_point(&self) -> Vec<f64> {
        vec![0.0; self.dim]
    }

    fn point_functional_value(&self, y: &Vec<f64>, x: &Vec<f64>) -> Result<f64> {
        Ok(crate::functionals::lp_point_functional(x, y, self.p))
    }
}
