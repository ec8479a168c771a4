use clap::{Args, Subcommand, ValueEnum};
use horokit::boundary::{reduced_classify_z, reduced_fixed_point_audit, ZFunctional};
use horokit::groups::{CayleyGraph, Group, GroupElement};
use horokit::{rat, Error, Rat};
use serde_json::json;

use crate::common::{selftest_outcome, Check, CliResult, Common, Outcome};

#[derive(Debug, Subcommand)]
pub enum ReducedCmd {
    /// Classes of `{h_n : |n| <= N} + {id, -id}` in the reduced boundary of Z.
    ClassifyZ(ClassifyArgs),
    /// `g.h - h` bounded by `d(g^-1 x0, x0)` for a translation of Z.
    FixedPoint(FixedPointArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, default_value_t = 10)]
    pub n: i64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZKind {
    Identity,
    NegIdentity,
    Point,
}

#[derive(Debug, Args)]
pub struct FixedPointArgs {
    #[arg(long, value_enum, default_value_t = ZKind::NegIdentity)]
    pub h: ZKind,
    /// Anchor for `--h point`.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub anchor: i64,
    /// Translation `x -> x + shift`.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub shift: i64,
    /// Samples `-range..=range`.
    #[arg(long, default_value_t = 20)]
    pub range: i64,
    #[command(flatten)]
    pub common: Common,
}

pub fn common(cmd: &ReducedCmd) -> &Common {
    match cmd {
        ReducedCmd::ClassifyZ(a) => &a.common,
        ReducedCmd::FixedPoint(a) => &a.common,
    }
}

pub fn run(cmd: &ReducedCmd) -> CliResult<Outcome> {
    if common(cmd).selftest {
        return selftest();
    }
    match cmd {
        ReducedCmd::ClassifyZ(a) => classify(a.n),
        ReducedCmd::FixedPoint(a) => fixed_point(a),
    }
}

fn label(f: &ZFunctional) -> String {
    match f {
        ZFunctional::Point(n) => format!("h_{n}"),
        ZFunctional::Identity => "id".into(),
        ZFunctional::NegIdentity => "-id".into(),
    }
}

fn family(n: i64) -> Vec<ZFunctional> {
    let mut fs: Vec<ZFunctional> = (-n..=n).map(ZFunctional::Point).collect();
    fs.push(ZFunctional::Identity);
    fs.push(ZFunctional::NegIdentity);
    fs
}

fn classify(n: i64) -> CliResult<Outcome> {
    if n < 0 {
        return Err(Error::InvalidParameter("--n must be nonnegative".into()).into());
    }
    let fs = family(n);
    let classes = reduced_classify_z(&fs);
    let named: Vec<Vec<String>> = classes
        .iter()
        .map(|c| c.iter().map(|&i| label(&fs[i])).collect())
        .collect();
    let mut csv = String::from("class,functional\n");
    for (i, c) in named.iter().enumerate() {
        for f in c {
            csv.push_str(&format!("{i},{f}\n"));
        }
    }
    Ok(Outcome::new(
        json!({ "n": n, "class_count": classes.len(), "classes": named }),
        true,
    )?
    .with_csv(csv))
}

fn z_eval(f: ZFunctional, p: &GroupElement) -> horokit::Result<Rat> {
    let GroupElement::Zd(v) = p else {
        return Err(Error::FamilyMismatch(format!("{p:?} is not in Z")));
    };
    Ok(rat(match f {
        ZFunctional::Point(a) => (v[0] - a).abs() - a.abs(),
        ZFunctional::Identity => v[0],
        ZFunctional::NegIdentity => -v[0],
    }))
}

fn audit(
    f: ZFunctional,
    shift: i64,
    range: i64,
) -> CliResult<horokit::Verdict<horokit::boundary::FixedPointViolation>> {
    let z = CayleyGraph::standard(Group::Zd { dim: 1 }, u32::MAX);
    let g_inv = move |p: &GroupElement| match p {
        GroupElement::Zd(v) => Ok(GroupElement::Zd(vec![v[0] - shift])),
        other => Err(Error::FamilyMismatch(format!("{other:?} is not in Z"))),
    };
    let h = move |p: &GroupElement| z_eval(f, p);
    let samples: Vec<GroupElement> = (-range..=range)
        .map(|n| GroupElement::Zd(vec![n]))
        .collect();
    Ok(reduced_fixed_point_audit(&z, g_inv, &h, &samples, rat(0))?)
}

fn fixed_point(a: &FixedPointArgs) -> CliResult<Outcome> {
    let f = match a.h {
        ZKind::Identity => ZFunctional::Identity,
        ZKind::NegIdentity => ZFunctional::NegIdentity,
        ZKind::Point => ZFunctional::Point(a.anchor),
    };
    let verdict = audit(f, a.shift, a.range)?;
    let pass = verdict.is_pass();
    Outcome::new(
        json!({ "h": label(&f), "shift": a.shift, "range": a.range, "audit": verdict }),
        pass,
    )
}

fn selftest() -> CliResult<Outcome> {
    let classes = reduced_classify_z(&family(10)).len() == 3;
    let pass_id = [
        ZFunctional::Identity,
        ZFunctional::NegIdentity,
        ZFunctional::Point(3),
    ]
    .iter()
    .all(|&f| audit(f, 1, 20).map(|v| v.is_pass()).unwrap_or(false));
    selftest_outcome(vec![
        Check {
            name: "z_three_classes",
            pass: classes,
        },
        Check {
            name: "translation_bounded_difference",
            pass: pass_id,
        },
    ])
}
