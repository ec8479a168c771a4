use num_complex::Complex64;
use serde::Serialize;

use super::maps::{Composition, SelfMap};
use super::moebius::MoebiusMap;
use crate::error::{Error, Result};
use crate::metric::{Functional, MetricSpace};
use crate::scalar::Scalar;
use crate::spaces::HyperbolicModel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauReport {
    pub n: usize,
    /// `a_k = d(x0, f^k x0)`.
    pub displacements: Vec<f64>,
    /// `a_n / n`.
    pub estimate: f64,
    /// `min_{1 <= k <= n} a_k / k`, an upper bound for the translation number.
    pub bound: f64,
    /// Running minimum of `a_k / k`, nonincreasing in `k`.
    pub running_bound: Vec<f64>,
    /// Exact running bound for exact metrics, as `p/q`.
    pub exact_bound: Option<String>,
    pub closed_form: Option<f64>,
}

pub fn translation_number<S, F>(space: &S, f: &F, x0: &S::Point, n: usize) -> Result<TauReport>
where
    S: MetricSpace + ?Sized,
    F: SelfMap<S> + ?Sized,
{
    if n == 0 {
        return Err(Error::Precondition("need n >= 1".into()));
    }
    let a = f.displacements(space, x0, n)?;
    let mut running_bound = Vec::with_capacity(n);
    let mut best = f64::INFINITY;
    let mut exact_best: Option<crate::Rat> = None;
    for (k, ak) in a.iter().enumerate().skip(1) {
        best = best.min(ak.to_f64() / k as f64);
        running_bound.push(best);
        if let Some(q) = ak.to_rat() {
            let q = q / crate::rat(k as i64);
            exact_best = Some(exact_best.map_or(q, |b| b.min(q)));
        }
    }
    let displacements: Vec<f64> = a.iter().map(|v| v.to_f64()).collect();
    Ok(TauReport {
        n,
        estimate: displacements[n] / n as f64,
        bound: best,
        running_bound,
        exact_bound: exact_best.map(|b| crate::scalar::rat_to_string(&b)),
        displacements,
        closed_form: f.translation_length(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisplacementReport {
    /// Running minimum of `d(x, f x)` over the visited points.
    pub trace: Vec<f64>,
    pub bound: f64,
    pub best_index: usize,
}

/// Upper bound for `inf_x d(x, f x)` over at most `budget` points.
pub fn minimal_displacement<S, F>(
    space: &S,
    f: &F,
    points: impl IntoIterator<Item = S::Point>,
    budget: usize,
) -> Result<DisplacementReport>
where
    S: MetricSpace + ?Sized,
    F: SelfMap<S> + ?Sized,
{
    let mut trace = Vec::new();
    let mut best = f64::INFINITY;
    let mut best_index = 0;
    for (i, x) in points.into_iter().take(budget).enumerate() {
        let d = space.distance(&x, &f.apply(space, &x)?)?.to_f64();
        if d < best {
            best = d;
            best_index = i;
        }
        trace.push(best);
    }
    if trace.is_empty() {
        return Err(Error::Precondition("no points to search".into()));
    }
    Ok(DisplacementReport {
        trace,
        bound: best,
        best_index,
    })
}

/// The points of a search with `d(x, f x) <= eps`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisplacementSublevel<P> {
    pub eps: f64,
    pub witnesses: Vec<P>,
}

impl<P: Clone> DisplacementSublevel<P> {
    pub fn collect<S, F>(space: &S, f: &F, points: &[P], eps: f64) -> Result<Self>
    where
        S: MetricSpace<Point = P> + ?Sized,
        F: SelfMap<S> + ?Sized,
    {
        let mut witnesses = Vec::new();
        for x in points {
            if space.distance(x, &f.apply(space, x)?)?.to_f64() <= eps {
                witnesses.push(x.clone());
            }
        }
        Ok(DisplacementSublevel { eps, witnesses })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracialReport {
    pub estimate_fg: f64,
    pub estimate_gf: f64,
    pub bound_fg: f64,
    pub bound_gf: f64,
    pub estimate_difference: f64,
    /// `2 (d(x0, f x0) + d(x0, g x0)) / n`.
    pub gap_bound: f64,
    pub closed_form_fg: Option<f64>,
    pub closed_form_gf: Option<f64>,
    pub closed_form_difference: Option<f64>,
    pub pass: bool,
}

fn tracial_report<S: MetricSpace + ?Sized>(
    space: &S,
    f: &dyn SelfMap<S>,
    g: &dyn SelfMap<S>,
    fg: &dyn SelfMap<S>,
    gf: &dyn SelfMap<S>,
    x0: &S::Point,
    n: usize,
    tol: f64,
) -> Result<TracialReport> {
    let t_fg = translation_number(space, fg, x0, n)?;
    let t_gf = translation_number(space, gf, x0, n)?;
    let d_f = space.distance(x0, &f.apply(space, x0)?)?.to_f64();
    let d_g = space.distance(x0, &g.apply(space, x0)?)?.to_f64();
    let gap_bound = 2.0 * (d_f + d_g) / n as f64;
    let estimate_difference = (t_fg.estimate - t_gf.estimate).abs();
    let closed_form_difference = match (t_fg.closed_form, t_gf.closed_form) {
        (Some(a), Some(b)) => Some((a - b).abs()),
        _ => None,
    };
    let pass =
        estimate_difference <= gap_bound + tol && closed_form_difference.map_or(true, |d| d == 0.0);
    Ok(TracialReport {
        estimate_fg: t_fg.estimate,
        estimate_gf: t_gf.estimate,
        bound_fg: t_fg.bound,
        bound_gf: t_gf.bound,
        estimate_difference,
        gap_bound,
        closed_form_fg: t_fg.closed_form,
        closed_form_gf: t_gf.closed_form,
        closed_form_difference,
        pass,
    })
}

/// Compares the translation-number estimates of `f . g` and `g . f`.
pub fn tracial_check<S, F, G>(
    space: &S,
    f: &F,
    g: &G,
    x0: &S::Point,
    n: usize,
    tol: f64,
) -> Result<TracialReport>
where
    S: MetricSpace + ?Sized,
    F: SelfMap<S>,
    G: SelfMap<S>,
{
    let fg = Composition { outer: f, inner: g };
    let gf = Composition { outer: g, inner: f };
    tracial_report(space, f, g, &fg, &gf, x0, n, tol)
}

/// The tracial check for Möbius maps, with products formed as matrices and
/// closed forms from `tr(AB) = tr(BA)`.
pub fn moebius_tracial_check(
    space: &HyperbolicModel,
    f: &MoebiusMap,
    g: &MoebiusMap,
    x0: Complex64,
    n: usize,
    tol: f64,
) -> Result<TracialReport> {
    let fg = f.compose(g)?;
    let gf = g.compose(f)?;
    tracial_report(space, f, g, &fg, &gf, &x0, n, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub tau: f64,
    /// `closed_form` or `fekete_bound`.
    pub tau_source: String,
    /// Per candidate, `max_{1 <= k <= n} h(f^k x0) + tau k`; infinite when the
    /// candidate cannot be evaluated along the orbit.
    pub violations: Vec<f64>,
    pub best: usize,
    pub best_candidate: String,
    pub pass: bool,
}

/// Picks the candidate functional that best satisfies `h(f^k x0) <= -tau k`.
pub fn spectral_principle_witness<S, F, H>(
    space: &S,
    f: &F,
    candidates: &[H],
    x0: &S::Point,
    n: usize,
    tol: f64,
) -> Result<SpectralReport>
where
    S: MetricSpace + ?Sized,
    F: SelfMap<S> + ?Sized,
    H: Functional<S> + std::fmt::Debug,
{
    if candidates.is_empty() {
        return Err(Error::InvalidParameter("empty candidate list".into()));
    }
    let tau_report = translation_number(space, f, x0, n)?;
    let (tau, tau_source) = match tau_report.closed_form {
        Some(t) => (t, "closed_form"),
        None => (tau_report.bound, "fekete_bound"),
    };
    let mut orbit = Vec::with_capacity(n);
    let mut x = x0.clone();
    for _ in 0..n {
        x = f.apply(space, &x)?;
        orbit.push(x.clone());
    }
    let mut violations = Vec::with_capacity(candidates.len());
    for h in candidates {
        let mut worst = f64::NEG_INFINITY;
        for (k, y) in orbit.iter().enumerate() {
            let v = match h.eval(space, y) {
                Ok(v) => v.to_f64() + tau * (k + 1) as f64,
                Err(Error::Domain(_)) => f64::INFINITY,
                Err(e) => return Err(e),
            };
            worst = if v.is_nan() {
                f64::INFINITY
            } else {
                worst.max(v)
            };
        }
        violations.push(worst);
    }
    let best = (0..candidates.len())
        .min_by(|&i, &j| violations[i].total_cmp(&violations[j]))
        .expect("nonempty");
    Ok(SpectralReport {
        tau,
        tau_source: tau_source.into(),
        best,
        best_candidate: format!("{:?}", candidates[best]),
        pass: violations[best] <= tol,
        violations,
    })
}
