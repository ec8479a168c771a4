use num_traits::Signed;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functionals::BallFunctional;
use crate::groups::GroupElement;
use crate::metric::Verdict;
use crate::scalar::{rat, rat_to_string, Rat};

/// Behaviour of a functional on `Z^d` (word metric `l1`) in one coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "c", rename_all = "snake_case")]
pub enum CoordBehavior {
    /// Limit along `x_i -> +inf`: contributes `-x_i`.
    ToPlus,
    /// Limit along `x_i -> -inf`: contributes `x_i`.
    ToMinus,
    /// Anchored at `c`: contributes `|x_i - c| - |c|`.
    Finite(i64),
}

impl CoordBehavior {
    fn eval(self, x: i64) -> i64 {
        match self {
            CoordBehavior::ToPlus => -x,
            CoordBehavior::ToMinus => x,
            CoordBehavior::Finite(c) => (x - c).abs() - c.abs(),
        }
    }

    fn shift(self, g: i64) -> Self {
        match self {
            CoordBehavior::Finite(c) => CoordBehavior::Finite(c + g),
            other => other,
        }
    }
}

/// A metric functional of `Z^d` with the standard generators, given as a sum
/// of one-coordinate functionals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticeFunctional(pub Vec<CoordBehavior>);

impl LatticeFunctional {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, x: &[i64]) -> Result<i64> {
        if x.len() != self.dim() {
            return Err(Error::FamilyMismatch(format!(
                "point of Z^{} for a functional on Z^{}",
                x.len(),
                self.dim()
            )));
        }
        Ok(self.0.iter().zip(x).map(|(b, &xi)| b.eval(xi)).sum())
    }

    /// `(g.h)(x) = h(x - g) - h(-g)`.
    pub fn act(&self, g: &[i64]) -> Result<Self> {
        if g.len() != self.dim() {
            return Err(Error::FamilyMismatch(
                "translation of the wrong dimension".into(),
            ));
        }
        Ok(LatticeFunctional(
            self.0.iter().zip(g).map(|(b, &gi)| b.shift(gi)).collect(),
        ))
    }

    pub fn restrict(
        &self,
        radius: usize,
        order: &[GroupElement],
    ) -> Result<BallFunctional<GroupElement>> {
        let values = order
            .iter()
            .map(|p| match p {
                GroupElement::Zd(x) => self.eval(x).map(rat),
                other => Err(Error::FamilyMismatch(format!(
                    "{other} is not a lattice point"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        BallFunctional::new_unchecked(rat(radius as i64), order.to_vec(), values)
    }
}

/// A finitely supported probability measure on functionals of `Z^d`,
/// invariant under the translation action.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftMeasure {
    pub dim: usize,
    #[serde(serialize_with = "serialize_support")]
    pub support: Vec<(LatticeFunctional, Rat)>,
}

fn serialize_support<S: serde::Serializer>(
    support: &[(LatticeFunctional, Rat)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(support.len()))?;
    for (f, w) in support {
        seq.serialize_element(&(f, rat_to_string(w)))?;
    }
    seq.end()
}

impl DriftMeasure {
    /// Normalization and invariance under every standard generator are
    /// checked exactly.
    pub fn new(dim: usize, support: Vec<(LatticeFunctional, Rat)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidParameter("empty support".into()));
        }
        if support.iter().any(|(f, _)| f.dim() != dim) {
            return Err(Error::FamilyMismatch(format!(
                "support functional not on Z^{dim}"
            )));
        }
        if support.iter().any(|(_, w)| *w < rat(0)) {
            return Err(Error::InvalidParameter("negative weight".into()));
        }
        let total: Rat = support.iter().map(|(_, w)| *w).sum();
        if total != rat(1) {
            return Err(Error::InvalidParameter(format!(
                "weights sum to {}",
                rat_to_string(&total)
            )));
        }
        let masses = aggregate(support.iter().cloned());
        for i in 0..dim {
            for sign in [1, -1] {
                let mut g = vec![0; dim];
                g[i] = sign;
                let moved = aggregate(
                    support
                        .iter()
                        .map(|(f, w)| Ok::<_, Error>((f.act(&g)?, *w)))
                        .collect::<Result<Vec<_>>>()?,
                );
                if moved != masses {
                    return Err(Error::NonInvariant(format!(
                        "measure moves under generator {g:?}"
                    )));
                }
            }
        }
        Ok(DriftMeasure { dim, support })
    }

    pub fn point_mass(f: LatticeFunctional) -> Result<Self> {
        Self::new(f.dim(), vec![(f, rat(1))])
    }
}

fn aggregate(
    items: impl IntoIterator<Item = (LatticeFunctional, Rat)>,
) -> BTreeMap<LatticeFunctional, Rat> {
    let mut m = BTreeMap::new();
    for (f, w) in items {
        *m.entry(f).or_insert(rat(0)) += w;
    }
    m.retain(|_, w| *w != rat(0));
    m
}

/// `T(g) = sum of weight * h(g)` over the support.
pub fn drift_homomorphism(measure: &DriftMeasure, g: &GroupElement) -> Result<Rat> {
    let GroupElement::Zd(x) = g else {
        return Err(Error::FamilyMismatch(format!("{g} is not a lattice point")));
    };
    measure
        .support
        .iter()
        .try_fold(rat(0), |acc, (f, w)| Ok(acc + *w * rat(f.eval(x)?)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DriftViolation {
    Additivity { g: Vec<i64>, h: Vec<i64> },
    Lipschitz { g: Vec<i64>, value: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DriftAudit {
    pub elements: usize,
    pub pairs: usize,
    pub verdict: Verdict<DriftViolation>,
}

/// Checks `|T(g)| <= |g|_1` and `T(g + h) = T(g) + T(h)` over all elements and
/// pairs of `tests`, exactly.
pub fn drift_audit(measure: &DriftMeasure, tests: &[Vec<i64>]) -> Result<DriftAudit> {
    let eval = |x: &[i64]| drift_homomorphism(measure, &GroupElement::Zd(x.to_vec()));
    let values = tests.iter().map(|g| eval(g)).collect::<Result<Vec<_>>>()?;
    let done = |verdict| DriftAudit {
        elements: tests.len(),
        pairs: tests.len() * tests.len(),
        verdict,
    };
    for (g, t) in tests.iter().zip(&values) {
        let len: i64 = g.iter().map(|c| c.abs()).sum();
        if t.abs() > rat(len) {
            return Ok(done(Verdict::Fail(DriftViolation::Lipschitz {
                g: g.clone(),
                value: rat_to_string(t),
            })));
        }
    }
    for (g, tg) in tests.iter().zip(&values) {
        for (h, th) in tests.iter().zip(&values) {
            let sum: Vec<i64> = g.iter().zip(h).map(|(a, b)| a + b).collect();
            if eval(&sum)? != tg + th {
                return Ok(done(Verdict::Fail(DriftViolation::Additivity {
                    g: g.clone(),
                    h: h.clone(),
                })));
            }
        }
    }
    Ok(done(Verdict::Pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoordBehavior::*;

    fn ball_points(dim: usize, r: i64) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|p| (-r..=r).map(move |c| [p.clone(), vec![c]].concat()))
                .collect();
        }
        out.retain(|p| p.iter().map(|c| c.abs()).sum::<i64>() <= r);
        out
    }

    #[test]
    fn integer_fixtures() {
        let plus = LatticeFunctional(vec![ToPlus]);
        let minus = LatticeFunctional(vec![ToMinus]);
        let uniform = DriftMeasure::new(
            1,
            vec![
                (plus.clone(), crate::frac(1, 2)),
                (minus, crate::frac(1, 2)),
            ],
        )
        .unwrap();
        for n in -10..=10 {
            assert_eq!(
                drift_homomorphism(&uniform, &GroupElement::Zd(vec![n])).unwrap(),
                rat(0)
            );
        }
        let mass = DriftMeasure::point_mass(plus).unwrap();
        assert_eq!(
            drift_homomorphism(&mass, &GroupElement::Zd(vec![7])).unwrap(),
            rat(-7)
        );
        assert!(drift_audit(&mass, &ball_points(1, 10))
            .unwrap()
            .verdict
            .is_pass());
    }

    #[test]
    fn planar_fixture() {
        let m = DriftMeasure::point_mass(LatticeFunctional(vec![ToPlus, ToMinus])).unwrap();
        let audit = drift_audit(&m, &ball_points(2, 4)).unwrap();
        assert!(audit.verdict.is_pass());
        assert_eq!(audit.elements, 41);
    }

    #[test]
    fn invariance_is_enforced() {
        let r = DriftMeasure::point_mass(LatticeFunctional(vec![ToPlus, Finite(0)]));
        assert!(matches!(r, Err(Error::NonInvariant(_))));
        assert!(DriftMeasure::new(
            1,
            vec![(LatticeFunctional(vec![ToPlus]), crate::frac(1, 3))]
        )
        .is_err());
    }

    #[test]
    fn action_moves_anchors() {
        let h = LatticeFunctional(vec![Finite(2), ToMinus]);
        let g = [3, -5];
        let moved = h.act(&g).unwrap();
        assert_eq!(moved, LatticeFunctional(vec![Finite(5), ToMinus]));
        for x in ball_points(2, 6) {
            let shifted: Vec<i64> = x.iter().zip(&g).map(|(a, b)| a - b).collect();
            let neg: Vec<i64> = g.iter().map(|c| -c).collect();
            assert_eq!(
                moved.eval(&x).unwrap(),
                h.eval(&shifted).unwrap() - h.eval(&neg).unwrap()
            );
        }
    }
}
