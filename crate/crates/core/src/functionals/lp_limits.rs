//! Convergence of point functionals of `l^p` to the closed-form limits.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::lp::padded_diff;
use crate::spaces::lp_norm;

use super::model::ModelFunctional;

/// `||y - x||_p - ||x||_p`. For `p = 2` the difference is formed as
/// `(||y||^2 - 2<y, x>) / (||y - x|| + ||x||)` to avoid cancellation when
/// `x` is far away.
pub fn lp_point_functional(x: &[f64], y: &[f64], p: f64) -> f64 {
    let diff = padded_diff(y, x);
    if p == 2.0 {
        let yy: f64 = y.iter().map(|t| t * t).sum();
        let xy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        let denom = lp_norm(&diff, 2.0) + lp_norm(x, 2.0);
        if denom == 0.0 {
            return 0.0;
        }
        return (yy - 2.0 * xy) / denom;
    }
    lp_norm(&diff, p) - lp_norm(x, p)
}

/// The limit functional whose witness construction is checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LpLimitTarget {
    /// Witnesses `z + s e_k` with `s = (c^p - ||z||_p^p)^(1/p)`.
    Zc { z: Vec<f64>, c: f64 },
    /// `l^2` only. Witnesses `t_k (v + sqrt(1 - ||v||^2) e_j)` with `t_k = 2^k`
    /// and `j` a coordinate outside every input's support.
    Linear { v: Vec<f64> },
    /// `l^2` only. Witnesses `k^3 e_k`.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpLimitReport {
    /// Largest deviation over the test vectors at witness `k = 1, 2, ...`.
    pub deviations: Vec<f64>,
    /// Smallest `k` from which every computed deviation is within `tol`.
    pub threshold: Option<usize>,
    pub limit_values: Vec<f64>,
}

/// Evaluates `h_{x_k}` on `tests` for `k = 1..=steps` and compares with the
/// closed-form limit.
pub fn lp_limit_convergence_check(
    target: &LpLimitTarget,
    p: f64,
    tests: &[Vec<f64>],
    steps: usize,
    tol: f64,
) -> Result<LpLimitReport> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!("p = {p} must be >= 1")));
    }
    let support = tests.iter().map(Vec::len).max().unwrap_or(0);
    let (limit, witness): (ModelFunctional, Box<dyn Fn(usize) -> Vec<f64>>) = match target {
        LpLimitTarget::Zc { z, c } => {
            let zn = lp_norm(z, p);
            if *c < zn {
                return Err(Error::InvalidParameter(format!("c = {c} < ||z||_p = {zn}")));
            }
            let s = (c.powf(p) - zn.powf(p)).max(0.0).powf(1.0 / p);
            let z = z.clone();
            (
                ModelFunctional::LpZc {
                    z: z.clone(),
                    c: *c,
                },
                Box::new(move |k| {
                    let mut x = z.clone();
                    if x.len() < k {
                        x.resize(k, 0.0);
                    }
                    x[k - 1] += s;
                    x
                }),
            )
        }
        LpLimitTarget::Linear { v } => {
            if p != 2.0 {
                return Err(Error::Unsupported(
                    "linear witnesses are built in l^2".into(),
                ));
            }
            let vn = lp_norm(v, 2.0);
            if vn > 1.0 {
                return Err(Error::InvalidParameter(format!("||v|| = {vn} > 1")));
            }
            let s = (1.0 - vn * vn).max(0.0).sqrt();
            let base = support.max(v.len());
            let v = v.clone();
            (
                ModelFunctional::Linear { v: v.clone() },
                Box::new(move |k| {
                    let t = 2f64.powi(k as i32);
                    let mut x: Vec<f64> = v.iter().map(|c| t * c).collect();
                    x.resize(base + k, 0.0);
                    x[base + k - 1] = t * s;
                    x
                }),
            )
        }
        LpLimitTarget::Zero => {
            if p != 2.0 {
                return Err(Error::Unsupported(
                    "zero-functional witnesses are built in l^2".into(),
                ));
            }
            (
                ModelFunctional::Zero,
                Box::new(|k| {
                    let mut x = vec![0.0; k];
                    x[k - 1] = (k as f64).powi(3);
                    x
                }),
            )
        }
    };
    let limit_values = tests
        .iter()
        .map(|x| limit.eval_lp(p, x))
        .collect::<Result<Vec<_>>>()?;
    let deviations: Vec<f64> = (1..=steps)
        .map(|k| {
            let w = witness(k);
            tests
                .iter()
                .zip(&limit_values)
                .map(|(x, lim)| (lp_point_functional(&w, x, p) - lim).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    let threshold = match deviations.iter().rposition(|&d| !(d <= tol)) {
        None if !deviations.is_empty() => Some(1),
        None => None,
        Some(i) if i + 1 < deviations.len() => Some(i + 2),
        Some(_) => None,
    };
    Ok(LpLimitReport {
        deviations,
        threshold,
        limit_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vectors_to_sqrt2_minus_one() {
        let tests = vec![vec![1.0]];
        let target = LpLimitTarget::Zc {
            z: vec![0.0],
            c: 1.0,
        };
        let r = lp_limit_convergence_check(&target, 2.0, &tests, 10, 1e-12).unwrap();
        assert!((r.limit_values[0] - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        // e_1 itself is not fresh for the test vector e_1
        assert_eq!(r.threshold, Some(2));
        assert!(r.deviations[0] > 0.1);
    }

    #[test]
    fn linear_limit() {
        let tests = vec![vec![4.0, 1.0]];
        let target = LpLimitTarget::Linear { v: vec![0.5] };
        let r = lp_limit_convergence_check(&target, 2.0, &tests, 60, 1e-6).unwrap();
        assert_eq!(r.limit_values, vec![-2.0]);
        assert!(r.threshold.is_some());
        assert!(*r.deviations.last().unwrap() < 1e-9);
    }

    #[test]
    fn zero_limit_and_linear_scale_contrast() {
        let x = vec![1.0, 1.0];
        let r = lp_limit_convergence_check(
            &LpLimitTarget::Zero,
            2.0,
            std::slice::from_ref(&x),
            1000,
            1e-6,
        )
        .unwrap();
        assert!(r.deviations[999] <= 1e-6);
        // Witnesses k e_k only reach ~1/k.
        let mut w = vec![0.0; 1000];
        w[999] = 1000.0;
        let linear_scale = lp_point_functional(&w, &x, 2.0);
        assert!((linear_scale - 1e-3).abs() < 1e-5);
    }

    #[test]
    fn rejects_small_c() {
        let target = LpLimitTarget::Zc {
            z: vec![3.0, 4.0],
            c: 4.0,
        };
        assert!(matches!(
            lp_limit_convergence_check(&target, 2.0, &[vec![1.0]], 3, 1e-6),
            Err(Error::InvalidParameter(_))
        ));
    }
}
