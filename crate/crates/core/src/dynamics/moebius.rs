use num_complex::Complex64;
use serde::Serialize;

use super::maps::{MapKind, SelfMap};
use crate::error::{Error, Result};
use crate::spaces::{cayley_to_disk, cayley_to_half_plane, HyperbolicModel, HyperbolicVariant};

const DET_TOL: f64 = 1e-12;
const RENORMALIZE_TOL: f64 = 1e-13;
const RENORMALIZE_MAX_ENTRY: f64 = 1e6;
/// Powers are rescaled once an entry exceeds this magnitude.
const RESCALE_AT: f64 = 1e64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoebiusClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// `z -> (a z + b) / (c z + d)` with real `[a, b, c, d]` of determinant 1,
/// acting on the half-plane, or on the disk by conjugation with the Cayley
/// transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MoebiusMap {
    pub matrix: [f64; 4],
    pub model: HyperbolicVariant,
    /// Trace used for the closed forms; for products it is the
    /// order-independent sum of the four entry products.
    pub trace: f64,
}

fn mul(x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn det(m: &[f64; 4]) -> f64 {
    m[0] * m[3] - m[1] * m[2]
}

/// Divides by `sqrt(det)` when the determinant has drifted. Skipped for
/// large entries, where the computed determinant is dominated by
/// cancellation.
fn renormalize(m: [f64; 4]) -> [f64; 4] {
    if m.iter().any(|v| v.abs() > RENORMALIZE_MAX_ENTRY) {
        return m;
    }
    let d = det(&m);
    if (d - 1.0).abs() > RENORMALIZE_TOL && d > 0.0 {
        let s = d.sqrt();
        m.map(|v| v / s)
    } else {
        m
    }
}

/// `tr(XY)` as a sorted sum of four products, so `tr(XY)` and `tr(YX)` are
/// bitwise equal.
fn product_trace(x: &[f64; 4], y: &[f64; 4]) -> f64 {
    let mut terms = [x[0] * y[0], x[1] * y[2], x[2] * y[1], x[3] * y[3]];
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

/// `arccosh(1 + u)` without cancellation for small `u`.
fn acosh1p(u: f64) -> f64 {
    (u + (u * (u + 2.0)).sqrt()).ln_1p()
}

impl MoebiusMap {
    pub fn new(matrix: [f64; 4], model: HyperbolicVariant) -> Result<Self> {
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        let d = det(&matrix);
        if (d - 1.0).abs() > DET_TOL {
            return Err(Error::InvalidParameter(format!("determinant {d} is not 1")));
        }
        Ok(MoebiusMap {
            matrix,
            model,
            trace: matrix[0] + matrix[3],
        })
    }

    pub fn half_plane(matrix: [f64; 4]) -> Result<Self> {
        Self::new(matrix, HyperbolicVariant::HalfPlane)
    }

    pub fn disk(matrix: [f64; 4]) -> Result<Self> {
        Self::new(matrix, HyperbolicVariant::Disk)
    }

    pub fn classify(&self) -> MoebiusClass {
        let t = self.trace.abs();
        if (t - 2.0).abs() <= DET_TOL {
            MoebiusClass::Parabolic
        } else if t < 2.0 {
            MoebiusClass::Elliptic
        } else {
            MoebiusClass::Hyperbolic
        }
    }

    /// `self . other`.
    pub fn compose(&self, other: &MoebiusMap) -> Result<MoebiusMap> {
        if self.model != other.model {
            return Err(Error::FamilyMismatch("maps act on different models".into()));
        }
        let matrix = renormalize(mul(&self.matrix, &other.matrix));
        Ok(MoebiusMap {
            matrix,
            model: self.model,
            trace: product_trace(&self.matrix, &other.matrix),
        })
    }

    pub fn inverse(&self) -> MoebiusMap {
        let [a, b, c, d] = self.matrix;
        MoebiusMap {
            matrix: [d, -b, -c, a],
            model: self.model,
            trace: self.trace,
        }
    }

    /// `A^n` by repeated multiplication, renormalizing the determinant
    /// whenever it drifts by more than `1e-13`.
    pub fn power_matrix(&self, n: i64) -> [f64; 4] {
        let base = if n < 0 {
            self.inverse().matrix
        } else {
            self.matrix
        };
        let mut m = [1.0, 0.0, 0.0, 1.0];
        for _ in 0..n.unsigned_abs() {
            m = renormalize(mul(&m, &base));
        }
        m
    }

    fn act_half_plane(m: &[f64; 4], z: Complex64) -> Complex64 {
        (z * m[0] + m[1]) / (z * m[2] + m[3])
    }

    fn half_plane_of(&self, z: Complex64) -> Complex64 {
        match self.model {
            HyperbolicVariant::HalfPlane => z,
            HyperbolicVariant::Disk => cayley_to_half_plane(z),
        }
    }

    fn model_of(&self, z: Complex64) -> Complex64 {
        match self.model {
            HyperbolicVariant::HalfPlane => z,
            HyperbolicVariant::Disk => cayley_to_disk(z),
        }
    }

    /// `f^n(z)` computed from the renormalized power.
    pub fn orbit_point(&self, z: Complex64, n: i64) -> Complex64 {
        self.model_of(Self::act_half_plane(
            &self.power_matrix(n),
            self.half_plane_of(z),
        ))
    }

    /// `d(x0, f^k x0)` for `k = 0..=n` via `d(i, M i) = arccosh(1 + ((a-d)^2 + (b+c)^2) / 2)`
    /// for `M` conjugated to move `x0` to `i`. Powers carry a separate log
    /// scale, so long hyperbolic orbits do not overflow.
    pub fn displacement_sequence(&self, x0: Complex64, n: usize) -> Vec<f64> {
        let z = self.half_plane_of(x0);
        let (x, y) = (z.re, z.im);
        let s = y.sqrt();
        // P i = z with P = [s, x/s; 0, 1/s]
        let p = [s, x / s, 0.0, 1.0 / s];
        let p_inv = [1.0 / s, -x / s, 0.0, s];
        let conj = mul(&mul(&p_inv, &self.matrix), &p);
        let mut out = Vec::with_capacity(n + 1);
        let mut m = [1.0, 0.0, 0.0, 1.0];
        let mut log_scale = 0.0f64;
        for k in 0..=n {
            if k > 0 {
                m = mul(&m, &conj);
                let big = m.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                if big > RESCALE_AT {
                    m = m.map(|v| v / big);
                    log_scale += big.ln();
                }
            }
            let q = (m[0] - m[3]).powi(2) + (m[1] + m[2]).powi(2);
            let log_u = 2.0 * log_scale + (q / 2.0).ln();
            out.push(if q == 0.0 {
                0.0
            } else if log_u < 30.0 {
                acosh1p(log_u.exp())
            } else {
                std::f64::consts::LN_2 + log_u
            });
        }
        out
    }
}

impl SelfMap<HyperbolicModel> for MoebiusMap {
    fn apply(&self, space: &HyperbolicModel, z: &Complex64) -> Result<Complex64> {
        if space.variant != self.model {
            return Err(Error::FamilyMismatch(format!(
                "map on {:?} applied in {:?}",
                self.model, space.variant
            )));
        }
        space.check_point(*z)?;
        Ok(self.model_of(Self::act_half_plane(&self.matrix, self.half_plane_of(*z))))
    }

    fn kind(&self) -> MapKind {
        MapKind::Isometry
    }

    fn displacements(&self, space: &HyperbolicModel, x0: &Complex64, n: usize) -> Result<Vec<f64>> {
        space.check_point(*x0)?;
        if space.variant != self.model {
            return Err(Error::FamilyMismatch(format!(
                "map on {:?} applied in {:?}",
                self.model, space.variant
            )));
        }
        Ok(self.displacement_sequence(*x0, n))
    }

    /// `2 arccosh(|tr| / 2)` for hyperbolic maps, 0 otherwise.
    fn translation_length(&self) -> Option<f64> {
        Some(match self.classify() {
            MoebiusClass::Hyperbolic => 2.0 * (self.trace.abs() / 2.0).acosh(),
            _ => 0.0,
        })
    }
}
