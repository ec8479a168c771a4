//! The hyperbolic plane in the Poincaré disk and upper half-plane models.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::MetricSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperbolicVariant {
    Disk,
    HalfPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperbolicModel {
    pub variant: HyperbolicVariant,
}

impl HyperbolicModel {
    pub fn disk() -> Self {
        HyperbolicModel {
            variant: HyperbolicVariant::Disk,
        }
    }

    pub fn half_plane() -> Self {
        HyperbolicModel {
            variant: HyperbolicVariant::HalfPlane,
        }
    }

    pub fn check_point(&self, z: Complex64) -> Result<()> {
        let inside = match self.variant {
            HyperbolicVariant::Disk => z.norm_sqr() < 1.0,
            HyperbolicVariant::HalfPlane => z.im > 0.0 && z.re.is_finite(),
        };
        if inside && z.re.is_finite() && z.im.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{z} is not inside the {:?} model",
                self.variant
            )))
        }
    }

    /// Maps a point of this model to the other one via the Cayley transform.
    pub fn to_other(&self, z: Complex64) -> Complex64 {
        match self.variant {
            HyperbolicVariant::Disk => cayley_to_half_plane(z),
            HyperbolicVariant::HalfPlane => cayley_to_disk(z),
        }
    }
}

/// `z -> (z - i) / (z + i)`, half-plane to disk, `i -> 0`, `inf -> 1`.
pub fn cayley_to_disk(z: Complex64) -> Complex64 {
    (z - Complex64::i()) / (z + Complex64::i())
}

/// `w -> i (1 + w) / (1 - w)`, inverse of [`cayley_to_disk`].
pub fn cayley_to_half_plane(w: Complex64) -> Complex64 {
    Complex64::i() * (1.0 + w) / (1.0 - w)
}

/// Disk: `2 artanh(|z - w| / |1 - conj(z) w|)`.
/// Half-plane: `arccosh(1 + |z - w|^2 / (2 Im z Im w))`.
pub fn hyperbolic_distance(model: &HyperbolicModel, z: Complex64, w: Complex64) -> Result<f64> {
    model.check_point(z)?;
    model.check_point(w)?;
    Ok(match model.variant {
        HyperbolicVariant::Disk => {
            let ratio = (z - w).norm() / (1.0 - z.conj() * w).norm();
            2.0 * ratio.min(1.0).atanh()
        }
        HyperbolicVariant::HalfPlane => {
            let arg = (z - w).norm_sqr() / (2.0 * z.im * w.im);
            // arccosh(1 + x) = log(1 + x + sqrt(x (x + 2))), stable for small x
            (arg + (arg * (arg + 2.0)).sqrt()).ln_1p()
        }
    })
}

impl MetricSpace for HyperbolicModel {
    type Point = Complex64;
    type Scalar = f64;

    fn distance(&self, a: &Complex64, b: &Complex64) -> Result<f64> {
        hyperbolic_distance(self, *a, *b)
    }

    fn base_point(&self) -> Complex64 {
        match self.variant {
            HyperbolicVariant::Disk => Complex64::new(0.0, 0.0),
            HyperbolicVariant::HalfPlane => Complex64::i(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms() {
        let disk = HyperbolicModel::disk();
        let d = hyperbolic_distance(&disk, c(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((d - 3f64.ln()).abs() < 1e-15);
        assert_eq!(
            hyperbolic_distance(&disk, c(0.3, 0.2), c(0.3, 0.2)).unwrap(),
            0.0
        );
        let hp = HyperbolicModel::half_plane();
        let d = hyperbolic_distance(&hp, c(0.0, 1.0), c(1.0, 1.0)).unwrap();
        assert!((d - 1.5f64.acosh()).abs() < 1e-15);
    }

    #[test]
    fn rejects_boundary_points() {
        let disk = HyperbolicModel::disk();
        assert!(matches!(
            hyperbolic_distance(&disk, c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::Domain(_))
        ));
        let hp = HyperbolicModel::half_plane();
        assert!(hyperbolic_distance(&hp, c(1.0, 0.0), c(0.0, 1.0)).is_err());
    }

    #[test]
    fn cayley_is_an_isometry() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let disk = HyperbolicModel::disk();
        let hp = HyperbolicModel::half_plane();
        for _ in 0..1000 {
            let z = c(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0));
            let w = c(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..3.0));
            let dh = hyperbolic_distance(&hp, z, w).unwrap();
            let dd = hyperbolic_distance(&disk, cayley_to_disk(z), cayley_to_disk(w)).unwrap();
            assert!((dh - dd).abs() < 1e-10, "{dh} vs {dd}");
            let back = cayley_to_half_plane(cayley_to_disk(z));
            assert!((back - z).norm() < 1e-12);
        }
        assert!((cayley_to_disk(Complex64::i())).norm() < 1e-16);
    }

    #[test]
    fn disk_rotations_preserve_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let disk = HyperbolicModel::disk();
        for _ in 0..1000 {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..6.3));
            let w = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..6.3));
            let rot = Complex64::from_polar(1.0, rng.gen_range(0.0..6.3));
            let a = hyperbolic_distance(&disk, z, w).unwrap();
            let b = hyperbolic_distance(&disk, rot * z, rot * w).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
