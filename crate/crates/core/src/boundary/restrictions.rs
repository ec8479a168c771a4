use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::BallFunctional;
use crate::groups::{cayley_ball, CayleyBall, GeneratingSet, Group, GroupElement};
use crate::scalar::{rat, rat_to_string};

/// Restrictions `h_g|B(r)` for all `g` of word length `R`, deduplicated and
/// sorted by their value vectors.
pub fn sphere_restrictions(
    group: &Group,
    ball: &CayleyBall,
    r: usize,
    big_r: usize,
) -> Result<Vec<BallFunctional<GroupElement>>> {
    let values = sphere_value_vectors(group, ball, r, big_r)?;
    let order = ball.ball(r).to_vec();
    values
        .into_iter()
        .map(|v| {
            BallFunctional::new_unchecked(
                rat(r as i64),
                order.clone(),
                v.into_iter().map(rat).collect(),
            )
        })
        .collect()
}

fn sphere_value_vectors(
    group: &Group,
    ball: &CayleyBall,
    r: usize,
    big_r: usize,
) -> Result<BTreeSet<Vec<i64>>> {
    if big_r < r {
        return Err(Error::Precondition(format!(
            "sphere radius {big_r} is below ball radius {r}"
        )));
    }
    if ball.radius < big_r + r {
        return Err(Error::Precondition(format!(
            "ball of radius {} cannot resolve distances from B({r}) to S({big_r})",
            ball.radius
        )));
    }
    let inner: Vec<GroupElement> = ball
        .ball(r)
        .iter()
        .map(|x| group.inverse_unchecked(x))
        .collect();
    let rows: Vec<Vec<i64>> = ball
        .sphere(big_r)
        .par_iter()
        .map(|g| {
            inner
                .iter()
                .map(|x_inv| {
                    let len = ball
                        .length_of(&group.multiply_unchecked(x_inv, g))
                        .expect("x^-1 g lies in the ball");
                    len as i64 - big_r as i64
                })
                .collect()
        })
        .collect();
    Ok(rows.into_iter().collect())
}

/// Restrictions to `B(r)` of `h_g` for every sphere radius `R` in `r..=r_max`.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictionTable {
    pub r: usize,
    pub order: Vec<GroupElement>,
    /// `(R, value vectors)` with values listed in `order`.
    pub spheres: Vec<(usize, Vec<Vec<i64>>)>,
}

pub fn restriction_table(
    group: &Group,
    gens: &GeneratingSet,
    r: usize,
    r_max: usize,
    limit: usize,
) -> Result<RestrictionTable> {
    let ball = cayley_ball(group, gens, r_max + r, limit)?;
    let spheres = (r..=r_max)
        .map(|big_r| {
            Ok((
                big_r,
                sphere_value_vectors(group, &ball, r, big_r)?
                    .into_iter()
                    .collect(),
            ))
        })
        .collect::<Result<_>>()?;
    Ok(RestrictionTable {
        r,
        order: ball.ball(r).to_vec(),
        spheres,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "certificate", rename_all = "snake_case")]
pub enum Certificate {
    /// The accepted set is the same for every trailing window ending in
    /// `[start, start + len]`.
    Stabilized {
        start: usize,
        len: usize,
    },
    Heuristic {
        r_max: usize,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct LimitRestrictionSet {
    pub r: usize,
    pub order: Vec<GroupElement>,
    /// Word lengths of `order`.
    pub lengths: Vec<u32>,
    pub accepted: Vec<BallFunctional<GroupElement>>,
    #[serde(flatten)]
    pub certificate: Certificate,
}

/// Accepts the restrictions occurring on some sphere `S(R)` with
/// `R_max - window <= R <= R_max`.
pub fn limit_restrictions(
    group: &Group,
    gens: &GeneratingSet,
    r: usize,
    r_max: usize,
    window: usize,
    limit: usize,
) -> Result<LimitRestrictionSet> {
    if r_max <= r + window {
        return Err(Error::Precondition(format!(
            "need R_max > r + window, got {r_max} <= {r} + {window}"
        )));
    }
    let ball = cayley_ball(group, gens, r_max + r, limit)?;
    let lo = r_max.saturating_sub(2 * window).max(r);
    let per_sphere: Vec<BTreeSet<Vec<i64>>> = (lo..=r_max)
        .map(|big_r| sphere_value_vectors(group, &ball, r, big_r))
        .collect::<Result<_>>()?;
    let union_ending = |end: usize| -> BTreeSet<Vec<i64>> {
        let start = end.saturating_sub(window).max(lo);
        (start..=end)
            .flat_map(|big_r| per_sphere[big_r - lo].iter().cloned())
            .collect()
    };
    let accepted_values = union_ending(r_max);
    let window_start = r_max - window;
    let stable = (window_start..r_max).all(|end| union_ending(end) == accepted_values);
    let certificate = if stable {
        Certificate::Stabilized {
            start: window_start,
            len: window,
        }
    } else {
        Certificate::Heuristic { r_max }
    };
    let order = ball.ball(r).to_vec();
    let lengths = ball.lengths[..order.len()].to_vec();
    let accepted = accepted_values
        .into_iter()
        .map(|v| {
            BallFunctional::new_unchecked(
                rat(r as i64),
                order.clone(),
                v.into_iter().map(rat).collect(),
            )
        })
        .collect::<Result<_>>()?;
    Ok(LimitRestrictionSet {
        r,
        order,
        lengths,
        accepted,
        certificate,
    })
}

/// Checks that every accepted restriction attains `-r` on `S(r)`; the failing
/// functional is returned otherwise.
pub fn unboundedness_check(
    set: &LimitRestrictionSet,
) -> Result<crate::metric::Verdict<BallFunctional<GroupElement>>> {
    if set.accepted.is_empty() {
        return Err(Error::Precondition("empty restriction set".into()));
    }
    let target = -rat(set.r as i64);
    for f in &set.accepted {
        let min = f
            .values
            .iter()
            .zip(&set.lengths)
            .filter(|(_, &l)| l as usize == set.r)
            .map(|(v, _)| *v)
            .min();
        if min != Some(target) {
            return Ok(crate::metric::Verdict::Fail(f.clone()));
        }
    }
    Ok(crate::metric::Verdict::Pass)
}

/// `(g.h)(x) = h(g^-1 x) - h(g^-1)` on `B(r)`. `h` must be known on a ball of
/// radius at least `r + |g|`.
pub fn translate_restriction(
    group: &Group,
    ball: &CayleyBall,
    h: &BallFunctional<GroupElement>,
    g: &GroupElement,
    r: usize,
) -> Result<BallFunctional<GroupElement>> {
    let g_len = ball.length_of(g).ok_or_else(|| {
        Error::Precondition(format!(
            "{g} lies outside the ball of radius {}",
            ball.radius
        ))
    })?;
    if h.radius < rat(r as i64 + g_len as i64) {
        return Err(Error::Precondition(format!(
            "translating by {g} needs the functional on B({}), have radius {}",
            r + g_len as usize,
            rat_to_string(&h.radius)
        )));
    }
    let g_inv = group.inverse(g)?;
    let offset = h.value_at(&g_inv)?;
    let order = ball.ball(r).to_vec();
    let values = order
        .iter()
        .map(|x| Ok(h.value_at(&group.multiply_unchecked(&g_inv, x))? - offset))
        .collect::<Result<Vec<_>>>()?;
    BallFunctional::new_unchecked(rat(r as i64), order, values)
}

/// One CSV row per accepted restriction; columns are the ball points.
pub fn restrictions_csv(set: &LimitRestrictionSet) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(set.order.iter().map(|g| g.to_string()))
        .map_err(csv_err)?;
    for f in &set.accepted {
        w.write_record(f.values.iter().map(rat_to_string))
            .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}
