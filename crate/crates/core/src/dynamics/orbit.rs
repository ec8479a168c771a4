use num_complex::Complex64;
use serde::Serialize;

use super::maps::SelfMap;
use super::moebius::MoebiusMap;
use crate::error::{Error, Result};
use crate::functionals::ModelFunctional;
use crate::metric::MetricSpace;
use crate::scalar::Scalar;
use crate::spaces::HyperbolicModel;

/// The orbit `{g^n x0}` of an isometry with the induced metric
/// `d(m, n) = D(|m - n|)`, `D(k) = d(x0, g^k x0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitSpace<T> {
    pub displacements: Vec<T>,
    /// Least index from which `D` is nondecreasing.
    pub n0: usize,
}

impl<T: Scalar> OrbitSpace<T> {
    /// Checks `D(0) = 0` and the triangle inequality of the induced metric:
    /// `D(a + b) <= D(a) + D(b)` and `|D(a) - D(b)| <= D(|a - b|)`.
    pub fn new(displacements: Vec<T>, tol: T) -> Result<Self> {
        let d = &displacements;
        if d.is_empty() || d[0].to_f64().abs() > tol.to_f64() {
            return Err(Error::InvalidSpace {
                a: "0".into(),
                b: "0".into(),
                reason: "D(0) is not 0".into(),
            });
        }
        let n = d.len() - 1;
        for a in 0..=n {
            for b in 0..=a {
                let bad_sum = a + b <= n && d[a + b] > d[a] + d[b] + tol;
                let bad_diff = d[a] - d[b] > d[a - b] + tol;
                if bad_sum || bad_diff {
                    return Err(Error::InvalidSpace {
                        a: a.to_string(),
                        b: b.to_string(),
                        reason: "orbit displacements violate the triangle inequality".into(),
                    });
                }
            }
        }
        let mut n0 = n;
        while n0 > 0 && d[n0 - 1] <= d[n0] {
            n0 -= 1;
        }
        Ok(OrbitSpace { displacements, n0 })
    }

    pub fn from_map<S, F>(space: &S, f: &F, x0: &S::Point, n: usize, tol: T) -> Result<Self>
    where
        S: MetricSpace<Scalar = T> + ?Sized,
        F: SelfMap<S> + ?Sized,
    {
        Self::new(f.displacements(space, x0, n)?, tol)
    }

    pub fn len(&self) -> usize {
        self.displacements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.displacements.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitFunctionalConfig {
    /// Candidate values are reported on orbit indices `0..=k`.
    pub k: usize,
    /// Number of shifts in the Cesàro average.
    pub m: usize,
    /// Required upper bound on the translation number.
    pub delta: f64,
    pub tol: f64,
}

impl Default for OrbitFunctionalConfig {
    fn default() -> Self {
        OrbitFunctionalConfig {
            k: 16,
            m: 64,
            delta: 1.0,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitFunctionalReport {
    pub n0: usize,
    /// `D(N) > D(n0)`.
    pub divergent: bool,
    pub tau_bound: f64,
    /// Indices `n` of the subsequence along which `D(n - j) - D(n)` is taken.
    pub subsequence: Vec<usize>,
    /// `D(n - j) - D(n)` for `j = 0..=k + m` at each subsequence index.
    pub trace: Vec<Vec<f64>>,
    /// Candidate `h(j)` for `j = 0..=k + m`: the last row of `trace`.
    pub values: Vec<f64>,
    /// `h(j) <= h(i)` for all `j >= i`.
    pub monotone: bool,
    /// `(1/m) sum_{s < m} (h(j + s) - h(s))` for `j = 0..=k`.
    pub averaged: Vec<f64>,
    pub max_average: f64,
    pub pass: bool,
}

/// Candidate orbit functional `h(j) = lim_n D(n - j) - D(n)` on the orbit
/// indices, the monotone-set check, and the Cesàro-averaged vanishing audit.
///
/// For exact `D` the subsequence consists of the ends of the constant runs
/// of `D` in the tail `[max(N/2, k + m + n0), N]`; for float `D` it is the
/// whole tail.
pub fn parabolic_orbit_functional<T: Scalar>(
    orbit: &OrbitSpace<T>,
    config: OrbitFunctionalConfig,
) -> Result<OrbitFunctionalReport> {
    let d: Vec<f64> = orbit.displacements.iter().map(|v| v.to_f64()).collect();
    let n = d.len() - 1;
    if orbit.n0 > n / 4 {
        return Err(Error::NotMonotone { index: orbit.n0 });
    }
    let tau_bound = (1..=n)
        .map(|k| d[k] / k as f64)
        .fold(f64::INFINITY, f64::min);
    if n > 0 && tau_bound >= config.delta {
        return Err(Error::Precondition(format!(
            "translation bound {tau_bound} is not below {}",
            config.delta
        )));
    }
    let m = config.m.max(1);
    let span = config.k + m;
    let lo = (n / 2).max(span + orbit.n0);
    if lo > n {
        return Err(Error::Precondition(format!(
            "orbit of length {n} too short for k + m = {span}"
        )));
    }
    let exact = T::KIND == crate::ScalarKind::Exact;
    let subsequence: Vec<usize> = (lo..=n)
        .filter(|&i| !exact || i == n || d[i + 1] > d[i])
        .collect();
    let trace: Vec<Vec<f64>> = subsequence
        .iter()
        .map(|&i| (0..=span).map(|j| d[i - j] - d[i]).collect())
        .collect();
    let values = trace.last().expect("nonempty subsequence").clone();
    let slack = if exact { 0.0 } else { config.tol };
    let monotone = values.windows(2).all(|w| w[1] <= w[0] + slack);
    let averaged: Vec<f64> = (0..=config.k)
        .map(|j| (0..m).map(|s| values[j + s] - values[s]).sum::<f64>() / m as f64)
        .collect();
    let max_average = averaged.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    Ok(OrbitFunctionalReport {
        n0: orbit.n0,
        divergent: d[n] > d[orbit.n0],
        tau_bound,
        subsequence,
        trace,
        monotone,
        pass: monotone && max_average <= config.tol,
        values,
        averaged,
        max_average,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitAudit {
    /// `(n, h(f^n x0))`.
    pub values: Vec<(i64, f64)>,
    pub max_abs: f64,
    pub pass: bool,
}

/// `|h(f^n x0)| <= tol` for `|n| <= n_max`, with orbit points taken from
/// renormalized matrix powers.
pub fn moebius_orbit_audit(
    space: &HyperbolicModel,
    f: &MoebiusMap,
    h: &ModelFunctional,
    x0: Complex64,
    n_max: i64,
    tol: f64,
) -> Result<OrbitAudit> {
    if space.variant != f.model {
        return Err(Error::FamilyMismatch(
            "map and space use different models".into(),
        ));
    }
    let values = (-n_max..=n_max)
        .map(|n| Ok((n, h.eval_hyperbolic(space, f.orbit_point(x0, n))?)))
        .collect::<Result<Vec<_>>>()?;
    let max_abs = values.iter().fold(0.0f64, |a, v| a.max(v.1.abs()));
    Ok(OrbitAudit {
        values,
        max_abs,
        pass: max_abs <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::GroupTranslation;
    use crate::groups::{CayleyGraph, Group, GroupElement};
    use crate::rat;

    #[test]
    fn disk_parabolic_orbit_is_on_a_horocycle() {
        let disk = HyperbolicModel::disk();
        let f = MoebiusMap::disk([1.0, 1.0, 0.0, 1.0]).unwrap();
        let h = ModelFunctional::disk_busemann(Complex64::new(1.0, 0.0));
        let audit =
            moebius_orbit_audit(&disk, &f, &h, Complex64::new(0.0, 0.0), 100, 1e-9).unwrap();
        assert!(audit.pass, "{}", audit.max_abs);
        assert_eq!(audit.values.len(), 201);
    }

    #[test]
    fn heisenberg_center() {
        let h = CayleyGraph::standard(Group::Heisenberg, 64);
        let z = GroupTranslation {
            g: GroupElement::Heisenberg([0, 0, 1]),
        };
        let orbit =
            OrbitSpace::from_map(&h, &z, &GroupElement::Heisenberg([0, 0, 0]), 64, rat(0)).unwrap();
        assert_eq!(orbit.n0, 0);
        let rep = parabolic_orbit_functional(
            &orbit,
            OrbitFunctionalConfig {
                k: 16,
                m: 1,
                delta: 1.5,
                tol: 0.0,
            },
        )
        .unwrap();
        assert!(rep.monotone);
        assert!(rep.divergent);
        assert_eq!(*rep.subsequence.last().unwrap(), 64);
        // D(64 - j) - D(64) for j <= 7 stays on the last plateau
        assert!(rep.values[..8].iter().all(|&v| v == 0.0));
        assert_eq!(rep.values[16], -4.0);
    }

    #[test]
    fn identity_orbit() {
        let orbit = OrbitSpace::new(vec![rat(0); 40], rat(0)).unwrap();
        let rep = parabolic_orbit_functional(
            &orbit,
            OrbitFunctionalConfig {
                k: 4,
                m: 4,
                delta: 0.5,
                tol: 0.0,
            },
        )
        .unwrap();
        assert!(rep.pass && !rep.divergent);
        assert!(rep.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rejects_bad_orbits() {
        let bad = vec![rat(0), rat(1), rat(5)];
        assert!(OrbitSpace::new(bad, rat(0)).is_err());
        // rotation of a 12-cycle: D is nondecreasing only from index 12
        let cycle: Vec<_> = (0..=18i64)
            .map(|k| rat((k % 12).min(12 - k % 12)))
            .collect();
        let orbit = OrbitSpace::new(cycle, rat(0)).unwrap();
        assert_eq!(orbit.n0, 12);
        let r = parabolic_orbit_functional(
            &orbit,
            OrbitFunctionalConfig {
                k: 2,
                m: 1,
                delta: 1.0,
                tol: 0.0,
            },
        );
        assert!(matches!(r, Err(Error::NotMonotone { .. })), "{r:?}");
    }
}
