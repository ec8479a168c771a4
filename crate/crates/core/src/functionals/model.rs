use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::Functional;
use crate::spaces::{
    cayley_to_disk, cayley_to_half_plane, lp_norm, HyperbolicModel, HyperbolicVariant, LpSpace,
};

use super::lp_limits::lp_point_functional;

/// Closed-form metric functionals of `l^p` truncations and of the hyperbolic
/// plane. Each vanishes at its ambient base point (the origin, `0` in the
/// disk, `i` in the half-plane).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelFunctional {
    /// `h_x` in `l^p`.
    Point {
        anchor: Vec<f64>,
    },
    /// `(||x - z||_p^p + c^p - ||z||_p^p)^(1/p) - c` with `c >= ||z||_p`.
    LpZc {
        z: Vec<f64>,
        c: f64,
    },
    /// `-sum mu_j x_j` with `||mu||_q <= 1`.
    LpMu {
        mu: Vec<f64>,
    },
    /// `-<x, v>` with `||v|| <= 1` (dual norm of the ambient `l^p`).
    Linear {
        v: Vec<f64>,
    },
    Zero,
    /// `h_x` of the hyperbolic plane, anchor given in disk coordinates.
    HyperbolicPoint {
        anchor: [f64; 2],
    },
    /// `log(|zeta - z|^2 / (1 - |z|^2))` for a unit `zeta`.
    DiskBusemann {
        zeta: [f64; 2],
    },
    /// `-log Im z` in the half-plane.
    HalfPlaneBusemannAtInfinity,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl ModelFunctional {
    pub fn disk_busemann(zeta: Complex64) -> Self {
        ModelFunctional::DiskBusemann {
            zeta: [zeta.re, zeta.im],
        }
    }

    pub fn is_normed_kind(&self) -> bool {
        matches!(
            self,
            ModelFunctional::Point { .. }
                | ModelFunctional::LpZc { .. }
                | ModelFunctional::LpMu { .. }
                | ModelFunctional::Linear { .. }
                | ModelFunctional::Zero
        )
    }

    pub fn is_hyperbolic_kind(&self) -> bool {
        matches!(
            self,
            ModelFunctional::HyperbolicPoint { .. }
                | ModelFunctional::DiskBusemann { .. }
                | ModelFunctional::HalfPlaneBusemannAtInfinity
                | ModelFunctional::Zero
        )
    }

    /// Checks the parameter constraints against the ambient exponent `p`.
    pub fn validate_lp(&self, p: f64) -> Result<()> {
        let q = if p == 1.0 {
            f64::INFINITY
        } else {
            p / (p - 1.0)
        };
        let dual = |v: &[f64]| {
            if q.is_infinite() {
                v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
            } else {
                lp_norm(v, q)
            }
        };
        match self {
            ModelFunctional::LpZc { z, c } if *c < lp_norm(z, p) => Err(Error::InvalidParameter(
                format!("c = {c} is below ||z||_p = {}", lp_norm(z, p)),
            )),
            ModelFunctional::LpMu { mu: v } | ModelFunctional::Linear { v }
                if dual(v) > 1.0 + 1e-15 =>
            {
                Err(Error::InvalidParameter(format!(
                    "dual norm {} exceeds 1",
                    dual(v)
                )))
            }
            f if !f.is_normed_kind() => Err(Error::Unsupported(format!(
                "{f:?} is not an l^p functional"
            ))),
            _ => Ok(()),
        }
    }

    /// Evaluation at a vector of `l^p`.
    pub fn eval_lp(&self, p: f64, x: &[f64]) -> Result<f64> {
        self.validate_lp(p)?;
        Ok(match self {
            ModelFunctional::Point { anchor } => lp_point_functional(anchor, x, p),
            ModelFunctional::LpZc { z, c } => {
                let diff = crate::spaces::lp::padded_diff(x, z);
                let inner = lp_norm(&diff, p).powf(p) + c.powf(p) - lp_norm(z, p).powf(p);
                inner.max(0.0).powf(1.0 / p) - c
            }
            ModelFunctional::LpMu { mu: v } | ModelFunctional::Linear { v } => -dot(v, x),
            ModelFunctional::Zero => 0.0,
            _ => unreachable!("validated as an l^p functional"),
        })
    }

    /// Evaluation at a point of the given hyperbolic model. Disk-coordinate
    /// functionals are pulled back through the Cayley transform when the
    /// point is given in the half-plane, and vice versa.
    pub fn eval_hyperbolic(&self, model: &HyperbolicModel, z: Complex64) -> Result<f64> {
        model.check_point(z)?;
        let disk_point = || match model.variant {
            HyperbolicVariant::Disk => z,
            HyperbolicVariant::HalfPlane => cayley_to_disk(z),
        };
        Ok(match self {
            ModelFunctional::Zero => 0.0,
            ModelFunctional::HyperbolicPoint { anchor } => {
                let disk = HyperbolicModel::disk();
                let a = to_c(*anchor);
                disk.check_point(a)?;
                let w = disk_point();
                crate::spaces::hyperbolic_distance(&disk, w, a)?
                    - crate::spaces::hyperbolic_distance(&disk, Complex64::new(0.0, 0.0), a)?
            }
            ModelFunctional::DiskBusemann { zeta } => {
                let zeta = to_c(*zeta);
                if (zeta.norm() - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "|zeta| = {} is not 1",
                        zeta.norm()
                    )));
                }
                let w = disk_point();
                ((zeta - w).norm_sqr() / (1.0 - w.norm_sqr())).ln()
            }
            ModelFunctional::HalfPlaneBusemannAtInfinity => {
                let w = match model.variant {
                    HyperbolicVariant::HalfPlane => z,
                    HyperbolicVariant::Disk => cayley_to_half_plane(z),
                };
                -w.im.ln()
            }
            f => {
                return Err(Error::Unsupported(format!(
                    "{f:?} is not a hyperbolic functional"
                )))
            }
        })
    }
}

impl Functional<LpSpace> for ModelFunctional {
    fn eval(&self, space: &LpSpace, y: &Vec<f64>) -> Result<f64> {
        self.eval_lp(space.p, y)
    }
}

impl Functional<HyperbolicModel> for ModelFunctional {
    fn eval(&self, space: &HyperbolicModel, y: &Complex64) -> Result<f64> {
        self.eval_hyperbolic(space, *y)
    }
}
