use clap::{Args, ValueEnum};
use horokit::boundary::{limit_restrictions, restrictions_csv, unboundedness_check, Certificate};
use horokit::descriptor::{generators_from_params, group_from_params, SpaceDescriptor, SpaceType};
use horokit::groups::{GeneratingSet, Group};
use serde_json::json;

use crate::common::{
    ball_limit, read_json, selftest_outcome, usage, Check, CliResult, Common, Outcome,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupKind {
    Zd,
    Free,
    Heisenberg,
    FiniteGroup,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[arg(long, value_enum)]
    pub group: Option<GroupKind>,
    /// Rank of Z^d.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Rank of the free group.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Order of a cyclic group.
    #[arg(long)]
    pub order: Option<usize>,
    /// Space descriptor (inline JSON or file), in place of `--group`.
    #[arg(long, conflicts_with = "group")]
    pub space: Option<String>,
    /// Radius of the restriction ball.
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, default_value_t = 12)]
    pub rmax: usize,
    #[arg(long, default_value_t = 4)]
    pub window: usize,
    #[command(flatten)]
    pub common: Common,
}

fn resolve(args: &BoundaryArgs) -> CliResult<(Group, GeneratingSet)> {
    if let Some(s) = &args.space {
        let desc: SpaceDescriptor = serde_json::from_value(read_json(s)?)
            .map_err(|e| horokit::Error::Parse(format!("space descriptor: {e}")))?;
        let group = group_from_params(desc.kind, &desc.params)?;
        let gens = generators_from_params(&group, &desc.params)?;
        return Ok((group, gens));
    }
    let (kind, params) = match args.group {
        Some(GroupKind::Zd) => (SpaceType::Zd, json!({ "dim": args.dim.unwrap_or(1) })),
        Some(GroupKind::Free) => (SpaceType::Free, json!({ "rank": args.rank.unwrap_or(2) })),
        Some(GroupKind::Heisenberg) => (SpaceType::Heisenberg, json!({})),
        Some(GroupKind::FiniteGroup) => match args.order {
            Some(n) => (SpaceType::FiniteGroup, json!({ "order": n })),
            None => return usage("--group finite-group needs --order"),
        },
        None => return usage("give --group or --space"),
    };
    let group = group_from_params(kind, &params)?;
    let gens = group.standard_generators();
    Ok((group, gens))
}

pub fn run(args: &BoundaryArgs) -> CliResult<Outcome> {
    if args.common.selftest {
        return selftest();
    }
    let (group, gens) = resolve(args)?;
    let set = limit_restrictions(&group, &gens, args.r, args.rmax, args.window, ball_limit()?)?;
    let audit = unboundedness_check(&set)?;
    let csv = restrictions_csv(&set)?;
    let report = json!({
        "group": group.name(),
        "generators": gens.elements(),
        "restrictions": set,
        "unboundedness": audit,
    });
    Ok(Outcome::new(report, audit.is_pass())?.with_csv(csv))
}

fn count(group: Group, r: usize, r_max: usize, window: usize, expect: usize) -> bool {
    let gens = group.standard_generators();
    match limit_restrictions(
        &group,
        &gens,
        r,
        r_max,
        window,
        horokit::metric::DEFAULT_BALL_LIMIT,
    ) {
        Ok(set) => {
            set.accepted.len() == expect
                && matches!(set.certificate, Certificate::Stabilized { .. })
                && unboundedness_check(&set)
                    .map(|v| v.is_pass())
                    .unwrap_or(false)
        }
        Err(_) => false,
    }
}

fn selftest() -> CliResult<Outcome> {
    selftest_outcome(vec![
        Check {
            name: "z_two_restrictions",
            pass: count(Group::Zd { dim: 1 }, 3, 20, 5, 2),
        },
        Check {
            name: "z2_eight_restrictions",
            pass: count(Group::Zd { dim: 2 }, 1, 12, 4, 8),
        },
        Check {
            name: "f2_twelve_restrictions",
            pass: count(Group::Free { rank: 2 }, 2, 9, 3, 12),
        },
        Check {
            name: "window_precondition",
            pass: limit_restrictions(
                &Group::Zd { dim: 1 },
                &Group::Zd { dim: 1 }.standard_generators(),
                3,
                5,
                5,
                1000,
            )
            .is_err(),
        },
    ])
}
