use clap::{Args, Subcommand, ValueEnum};
use horokit::descriptor::{BuiltSpace, SpaceDescriptor};
use horokit::extension::{
    hahn_banach_extend, mcshane_extend, HahnBanachConfig, McShaneMode, PartialFunctional,
};
use horokit::functionals::{lipschitz_check, ModelFunctional, RealizedConfig};
use horokit::scalar::rat_to_string;
use horokit::spaces::{LpSpace, SpokePoint, SpokeRaySpace};
use horokit::{frac, rat, Error, FiniteMetricSpace, Functional, Rat};
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::common::{
    parse_rat_list, read_json, selftest_outcome, usage, Check, CliResult, Common, Outcome,
};

#[derive(Debug, Subcommand)]
pub enum ExtendCmd {
    /// Sup and inf McShane extensions of a partial functional on a finite space.
    Mcshane(McShaneArgs),
    /// Metric Hahn-Banach extension along a witness sequence.
    HahnBanach(HahnBanachArgs),
}

#[derive(Debug, Args)]
pub struct McShaneArgs {
    /// Finite space descriptor (inline JSON or file).
    #[arg(long)]
    pub space: Option<String>,
    /// Domain point indices, comma separated.
    #[arg(long)]
    pub domain: Option<String>,
    /// Values on the domain as `p/q`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HbFixture {
    /// `h = -t` on the ray of the spoke space.
    SpokeRay,
    /// `h = -x` on the x-axis of the Euclidean plane.
    EuclideanAxis,
}

#[derive(Debug, Args)]
pub struct HahnBanachArgs {
    #[arg(long, value_enum, default_value_t = HbFixture::SpokeRay)]
    pub fixture: HbFixture,
    /// Number of spoke heads to report.
    #[arg(long, default_value_t = 50)]
    pub heads: u64,
    #[arg(long, default_value_t = 400)]
    pub witnesses: usize,
    #[command(flatten)]
    pub common: Common,
}

pub fn common(cmd: &ExtendCmd) -> &Common {
    match cmd {
        ExtendCmd::Mcshane(a) => &a.common,
        ExtendCmd::HahnBanach(a) => &a.common,
    }
}

pub fn run(cmd: &ExtendCmd) -> CliResult<Outcome> {
    if common(cmd).selftest {
        return selftest(common(cmd).seed);
    }
    match cmd {
        ExtendCmd::Mcshane(a) => mcshane(a),
        ExtendCmd::HahnBanach(a) => hahn_banach(a),
    }
}

struct McShaneRun {
    sup: Vec<Rat>,
    inf: Vec<Rat>,
    lipschitz: bool,
    agree: bool,
    ordered: bool,
}

fn run_mcshane(
    space: &FiniteMetricSpace,
    f: &PartialFunctional<usize, Rat>,
) -> CliResult<McShaneRun> {
    let pts = space.points();
    let (hi, lo) = (
        mcshane_extend(f, McShaneMode::Sup),
        mcshane_extend(f, McShaneMode::Inf),
    );
    let sup = pts
        .iter()
        .map(|p| hi.eval(space, p))
        .collect::<horokit::Result<Vec<_>>>()?;
    let inf = pts
        .iter()
        .map(|p| lo.eval(space, p))
        .collect::<horokit::Result<Vec<_>>>()?;
    let lipschitz = lipschitz_check(&hi, space, &pts, rat(0))?.is_pass()
        && lipschitz_check(&lo, space, &pts, rat(0))?.is_pass();
    let agree = f
        .domain
        .iter()
        .zip(&f.values)
        .all(|(a, v)| sup[*a] == *v && inf[*a] == *v);
    let ordered = sup.iter().zip(&inf).all(|(s, i)| s <= i);
    Ok(McShaneRun {
        sup,
        inf,
        lipschitz,
        agree,
        ordered,
    })
}

fn mcshane(a: &McShaneArgs) -> CliResult<Outcome> {
    let (Some(space), Some(domain), Some(values)) = (&a.space, &a.domain, &a.values) else {
        return usage("mcshane needs --space, --domain and --values");
    };
    let desc: SpaceDescriptor = serde_json::from_value(read_json(space)?)
        .map_err(|e| Error::Parse(format!("space descriptor: {e}")))?;
    let BuiltSpace::Finite(space) = desc.build()? else {
        return Err(Error::Unsupported("mcshane takes a finite space".into()).into());
    };
    let domain = domain
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .or_else(|_| usage(format!("not an index: {t:?}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let values = parse_rat_list(values)?;
    let f = PartialFunctional::new(&space, domain, values)?;
    let run = run_mcshane(&space, &f)?;
    let mut csv = String::from("point,sup,inf\n");
    for (i, (s, l)) in run.sup.iter().zip(&run.inf).enumerate() {
        csv.push_str(&format!("{i},{},{}\n", rat_to_string(s), rat_to_string(l)));
    }
    let report = json!({
        "partial": f,
        "sup": run.sup.iter().map(rat_to_string).collect::<Vec<_>>(),
        "inf": run.inf.iter().map(rat_to_string).collect::<Vec<_>>(),
        "lipschitz": run.lipschitz,
        "agree_on_domain": run.agree,
        "sup_le_inf": run.ordered,
    });
    Ok(Outcome::new(report, run.lipschitz && run.agree && run.ordered)?.with_csv(csv))
}

fn ray_value(y: &SpokePoint) -> horokit::Result<Rat> {
    match y {
        SpokePoint::Hub => Ok(rat(0)),
        SpokePoint::Ray { t } => Ok(-*t),
        other => Err(Error::Domain(format!("{other:?} is not on the ray"))),
    }
}

fn spoke_fixture(
    witnesses: usize,
    heads: u64,
) -> CliResult<(Vec<(u64, Rat)>, Vec<usize>, usize, bool)> {
    let space = SpokeRaySpace;
    let ws = (0..witnesses as i64)
        .map(|t| space.gamma(rat(t)))
        .collect::<horokit::Result<Vec<_>>>()?;
    let probes = (1..=6)
        .flat_map(|n| [SpokePoint::head(n), space.gamma(rat(n as i64))])
        .collect::<horokit::Result<Vec<_>>>()?;
    let ys = (0..30)
        .map(|k| space.gamma(frac(k, 3)))
        .collect::<horokit::Result<Vec<_>>>()?;
    let ext = hahn_banach_extend(
        &space,
        ws,
        &ray_value,
        &probes,
        &ys,
        HahnBanachConfig::default(),
    )?;
    let values = (1..=heads)
        .map(|n| Ok((n, ext.functional.eval(&space, &SpokePoint::head(n)?)?)))
        .collect::<horokit::Result<Vec<_>>>()?;
    Ok((values, ext.selected, ext.levels, ext.audit.is_pass()))
}

fn hahn_banach(a: &HahnBanachArgs) -> CliResult<Outcome> {
    match a.fixture {
        HbFixture::SpokeRay => {
            let (values, selected, levels, audit) = spoke_fixture(a.witnesses, a.heads)?;
            let mut csv = String::from("head,value\n");
            for (n, v) in &values {
                csv.push_str(&format!("{n},{}\n", rat_to_string(v)));
            }
            let report = json!({
                "fixture": "spoke_ray",
                "levels": levels,
                "selected": selected,
                "head_values": values.iter().map(|(n, v)| json!({ "n": n, "value": rat_to_string(v) })).collect::<Vec<_>>(),
                "restriction_audit": audit,
            });
            Ok(Outcome::new(report, audit)?.with_csv(csv))
        }
        HbFixture::EuclideanAxis => {
            let space = LpSpace::new(2.0, 2)?;
            let ws: Vec<Vec<f64>> = (0..a.witnesses.min(100) as i32)
                .map(|k| vec![2f64.powi(k), 0.0])
                .collect();
            let h = |y: &Vec<f64>| Ok(-y[0]);
            let probes = vec![vec![1.0, 1.0], vec![-2.0, 1.0], vec![0.0, 3.0]];
            let ys: Vec<Vec<f64>> = (-10..=10).map(|t| vec![t as f64 * 0.5, 0.0]).collect();
            let config = HahnBanachConfig {
                tol: 1e-9,
                min_len: 8,
                realized: RealizedConfig::default(),
            };
            let ext = hahn_banach_extend(&space, ws, &h, &probes, &ys, config)?;
            let closed = ModelFunctional::Linear { v: vec![1.0, 0.0] };
            let grid: Vec<Vec<f64>> = (0..25)
                .map(|k| vec![(k % 5) as f64 - 2.0, (k / 5) as f64 - 2.0])
                .collect();
            let mut rows = Vec::new();
            let mut max_dev = 0f64;
            for x in &grid {
                let v = ext.functional.eval(&space, x)?;
                let c = closed.eval_lp(2.0, x)?;
                max_dev = max_dev.max((v - c).abs());
                rows.push(json!({ "x": x, "extension": v, "closed_form": c }));
            }
            let pass = ext.audit.is_pass() && max_dev <= 1e-9;
            let report = json!({
                "fixture": "euclidean_axis",
                "levels": ext.levels,
                "restriction_audit": ext.audit.is_pass(),
                "values": rows,
                "max_deviation": max_dev,
            });
            Outcome::new(report, pass)
        }
    }
}

/// All 1-Lipschitz extensions lie between sup and inf; brute force over a
/// grid of candidate values on one extra point.
fn sandwich(
    space: &FiniteMetricSpace,
    f: &PartialFunctional<usize, Rat>,
    run: &McShaneRun,
) -> bool {
    let m = space.matrix();
    (0..space.len()).filter(|p| !f.domain.contains(p)).all(|p| {
        let feasible = |v: Rat| {
            f.domain
                .iter()
                .zip(&f.values)
                .all(|(a, fa)| (v - fa).abs() <= m[p][*a])
        };
        let lo = f
            .domain
            .iter()
            .zip(&f.values)
            .map(|(a, fa)| *fa - m[p][*a])
            .max()
            .unwrap_or(rat(0));
        let hi = f
            .domain
            .iter()
            .zip(&f.values)
            .map(|(a, fa)| *fa + m[p][*a])
            .min()
            .unwrap_or(rat(0));
        feasible(run.sup[p]) && feasible(run.inf[p]) && lo == run.sup[p] && hi == run.inf[p]
    })
}

fn selftest(seed: u64) -> CliResult<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lipschitz = true;
    let mut agree = true;
    let mut ordered = true;
    let mut sandwiched = true;
    for n in 2..=6 {
        let space = FiniteMetricSpace::random(n, 10, 4, &mut rng);
        let domain: Vec<usize> = (0..n).step_by(2).collect();
        let values: Vec<Rat> = domain
            .iter()
            .map(|&a| space.matrix()[a][space.base_index()] - space.matrix()[0][space.base_index()])
            .collect();
        let f = PartialFunctional::new(&space, domain, values)?;
        let run = run_mcshane(&space, &f)?;
        lipschitz &= run.lipschitz;
        agree &= run.agree;
        ordered &= run.ordered;
        sandwiched &= sandwich(&space, &f, &run);
    }
    let spoke = spoke_fixture(400, 10)
        .map(|(v, _, _, audit)| audit && v.iter().all(|(_, x)| *x == frac(-1, 2)));
    selftest_outcome(vec![
        Check {
            name: "mcshane_lipschitz",
            pass: lipschitz,
        },
        Check {
            name: "mcshane_agrees_on_domain",
            pass: agree,
        },
        Check {
            name: "mcshane_sup_le_inf",
            pass: ordered,
        },
        Check {
            name: "mcshane_brute_force_sandwich",
            pass: sandwiched,
        },
        Check {
            name: "spoke_heads_minus_half",
            pass: spoke.unwrap_or(false),
        },
    ])
}
