use clap::{Args, Subcommand, ValueEnum};
use horokit::descriptor::{
    distortion_from_value, generators_from_params, group_from_params, SpaceDescriptor,
};
use horokit::dynamics::{
    almost_fixed_invariant_functional, distorted_compactification_check, moebius_orbit_audit,
    parabolic_orbit_functional, MoebiusMap, OrbitFunctionalConfig, OrbitSpace,
};
use horokit::functionals::{ModelFunctional, RealizedConfig};
use horokit::groups::{cayley_ball, GeneratingSet, Group, GroupElement};
use horokit::spaces::{Distortion, HyperbolicModel};
use horokit::{rat, Error, Functional, Rat};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::common::{
    ball_limit, parse_f64_list, parse_matrix, read_json, selftest_outcome, usage, Check, CliResult,
    Common, Outcome,
};

#[derive(Debug, Subcommand)]
pub enum DynamicsCmd {
    /// Invariant functional of a half-plane map from almost-fixed points `i 2^k`.
    AlmostFixed(AlmostFixedArgs),
    /// Orbit functional of a parabolic isometry.
    Parabolic(ParabolicArgs),
    /// Compactification check for a distorted line.
    DistortedLine(DistortedArgs),
}

#[derive(Debug, Args)]
pub struct AlmostFixedArgs {
    /// Half-plane matrix `a,b,c,d`.
    #[arg(long, allow_hyphen_values = true, default_value = "1,1,0,1")]
    pub matrix: String,
    #[arg(long, default_value_t = 80)]
    pub witnesses: i32,
    /// Number of audit grid points.
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParabolicFixture {
    /// Disk parabolic `z -> z + 1` (half-plane coordinates) fixing 1.
    Mobius,
    /// Translation of a Cayley graph, central element of Heisenberg by default.
    Group,
}

#[derive(Debug, Args)]
pub struct ParabolicArgs {
    #[arg(long, value_enum, default_value_t = ParabolicFixture::Mobius)]
    pub fixture: ParabolicFixture,
    #[arg(long, allow_hyphen_values = true, default_value = "1,1,0,1")]
    pub matrix: String,
    /// Cayley graph descriptor; Heisenberg by default.
    #[arg(long)]
    pub space: Option<String>,
    /// Group element (JSON); `[0, 0, 1]` by default.
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
    /// Orbit length (group) or `|n|` bound (Mobius).
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 16)]
    pub k: usize,
    #[arg(long, default_value_t = 16)]
    pub m: usize,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DistortedArgs {
    /// `sqrt`, `log1p`, `square`, or a JSON table.
    #[arg(long, default_value = "log1p")]
    pub distortion: String,
    #[arg(long, default_value_t = 10.0)]
    pub r: f64,
    /// Anchor schedule; `10^1..10^6` by default.
    #[arg(long)]
    pub anchors: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

pub fn common(cmd: &DynamicsCmd) -> &Common {
    match cmd {
        DynamicsCmd::AlmostFixed(a) => &a.common,
        DynamicsCmd::Parabolic(a) => &a.common,
        DynamicsCmd::DistortedLine(a) => &a.common,
    }
}

pub fn run(cmd: &DynamicsCmd) -> CliResult<Outcome> {
    if common(cmd).selftest {
        return selftest();
    }
    match cmd {
        DynamicsCmd::AlmostFixed(a) => almost_fixed(a),
        DynamicsCmd::Parabolic(a) => parabolic(a),
        DynamicsCmd::DistortedLine(a) => distorted(a),
    }
}

fn almost_fixed_grid(count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::new((k % 10) as f64 - 4.5, 0.2 + (k / 10) as f64 * 0.6))
        .collect()
}

fn almost_fixed(a: &AlmostFixedArgs) -> CliResult<Outcome> {
    let hp = HyperbolicModel::half_plane();
    let f = MoebiusMap::half_plane(parse_matrix(&a.matrix)?)?;
    let witnesses: Vec<Complex64> = (0..a.witnesses)
        .map(|k| Complex64::new(0.0, 2f64.powi(k)))
        .collect();
    let eps: Vec<f64> = (0..a.witnesses).map(|k| 2f64.powi(1 - k)).collect();
    let grid = almost_fixed_grid(a.grid);
    let rep = almost_fixed_invariant_functional(
        &hp,
        &f,
        witnesses,
        &eps,
        &grid,
        RealizedConfig::default(),
        a.tol,
    )?;
    let mut csv = String::from("re,im,h,h_image\n");
    let mut rows = Vec::new();
    for z in &grid {
        let (v, w) = (
            rep.functional.eval(&hp, z)?,
            rep.functional.eval(&hp, &f.orbit_point(*z, 1))?,
        );
        csv.push_str(&format!("{},{},{v},{w}\n", z.re, z.im));
        rows.push(json!({ "point": [z.re, z.im], "h": v, "h_image": w }));
    }
    let report = json!({
        "map": f,
        "displacement_bound": rep.displacement_bound,
        "max_defect": rep.max_defect,
        "audit": rep.audit,
        "values": rows,
    });
    Ok(Outcome::new(report, rep.audit.is_pass())?.with_csv(csv))
}

/// `|g^k|` for `k = 0..=n`, from one ball large enough to contain `g^n`.
fn power_lengths(
    group: &Group,
    gens: &GeneratingSet,
    g: &GroupElement,
    n: usize,
    limit: usize,
) -> CliResult<Vec<Rat>> {
    let powers = (0..=n as i64)
        .map(|k| group.power(g, k))
        .collect::<horokit::Result<Vec<_>>>()?;
    let mut radius = 4;
    loop {
        let ball = cayley_ball(group, gens, radius, limit)?;
        if let Some(lengths) = powers
            .iter()
            .map(|p| ball.length_of(p))
            .collect::<Option<Vec<u32>>>()
        {
            return Ok(lengths.into_iter().map(|l| rat(l as i64)).collect());
        }
        radius *= 2;
    }
}

fn parabolic(a: &ParabolicArgs) -> CliResult<Outcome> {
    match a.fixture {
        ParabolicFixture::Mobius => {
            let disk = HyperbolicModel::disk();
            let f = MoebiusMap::disk(parse_matrix(&a.matrix)?)?;
            let h = ModelFunctional::disk_busemann(Complex64::new(1.0, 0.0));
            let audit =
                moebius_orbit_audit(&disk, &f, &h, Complex64::new(0.0, 0.0), a.n as i64, a.tol)?;
            let mut csv = String::from("n,h\n");
            for (n, v) in &audit.values {
                csv.push_str(&format!("{n},{v}\n"));
            }
            let pass = audit.pass;
            let report = json!({ "fixture": "mobius", "map": f, "class": f.classify(), "functional": h, "audit": audit });
            Ok(Outcome::new(report, pass)?.with_csv(csv))
        }
        ParabolicFixture::Group => {
            let (group, gens) = match &a.space {
                Some(s) => {
                    let desc: SpaceDescriptor = serde_json::from_value(read_json(s)?)
                        .map_err(|e| Error::Parse(format!("space descriptor: {e}")))?;
                    let group = group_from_params(desc.kind, &desc.params)?;
                    let gens = generators_from_params(&group, &desc.params)?;
                    (group, gens)
                }
                None => (Group::Heisenberg, Group::Heisenberg.standard_generators()),
            };
            let element = match &a.element {
                Some(e) => read_json(e)?,
                None if a.space.is_none() => json!([0, 0, 1]),
                None => return usage("--space needs --element"),
            };
            let g = group.parse_element(&element)?;
            let d = power_lengths(&group, &gens, &g, a.n, ball_limit()?)?;
            let orbit = OrbitSpace::new(d.clone(), rat(0))?;
            let config = OrbitFunctionalConfig {
                k: a.k,
                m: a.m,
                delta: a.delta,
                tol: a.tol,
            };
            let rep = parabolic_orbit_functional(&orbit, config)?;
            let mut csv = String::from("j,h,averaged\n");
            for (j, v) in rep.values.iter().enumerate() {
                let avg = rep.averaged.get(j).map_or(String::new(), |x| x.to_string());
                csv.push_str(&format!("{j},{v},{avg}\n"));
            }
            let pass = rep.pass;
            let report = json!({
                "fixture": "group",
                "group": group.name(),
                "element": g,
                "displacements": d.iter().map(|v| v.to_integer()).collect::<Vec<_>>(),
                "config": config,
                "orbit_functional": rep,
            });
            Ok(Outcome::new(report, pass)?.with_csv(csv))
        }
    }
}

fn parse_distortion(s: &str) -> CliResult<Distortion> {
    let v = if s.trim_start().starts_with('{') {
        read_json(s)?
    } else {
        Value::String(s.to_string())
    };
    Ok(distortion_from_value(&v)?)
}

fn distorted(a: &DistortedArgs) -> CliResult<Outcome> {
    let d = parse_distortion(&a.distortion)?;
    let anchors = match &a.anchors {
        Some(s) => parse_f64_list(s)?,
        None => (1..=6).map(|k| 10f64.powi(k)).collect(),
    };
    let rep = distorted_compactification_check(&d, a.r, &anchors)?;
    let mut csv = String::from("anchor,sup\n");
    for (x, s) in &rep.per_anchor {
        csv.push_str(&format!("{x},{s}\n"));
    }
    let pass = rep.strictly_decreasing;
    Ok(Outcome::new(json!({ "distortion": d, "check": rep }), pass)?.with_csv(csv))
}

fn selftest() -> CliResult<Outcome> {
    let hp = HyperbolicModel::half_plane();
    let f = MoebiusMap::half_plane([1.0, 1.0, 0.0, 1.0])?;
    let ws: Vec<Complex64> = (0..80).map(|k| Complex64::new(0.0, 2f64.powi(k))).collect();
    let eps: Vec<f64> = (0..80).map(|k| 2f64.powi(1 - k)).collect();
    let almost = almost_fixed_invariant_functional(
        &hp,
        &f,
        ws,
        &eps,
        &almost_fixed_grid(100),
        RealizedConfig::default(),
        1e-9,
    )
    .map(|r| r.audit.is_pass())
    .unwrap_or(false);
    let disk = HyperbolicModel::disk();
    let horocycle = MoebiusMap::disk([1.0, 1.0, 0.0, 1.0]).and_then(|g| {
        moebius_orbit_audit(
            &disk,
            &g,
            &ModelFunctional::disk_busemann(Complex64::new(1.0, 0.0)),
            Complex64::new(0.0, 0.0),
            100,
            1e-9,
        )
    });
    let anchors: Vec<f64> = (1..=6).map(|k| 10f64.powi(k)).collect();
    let log_line = distorted_compactification_check(&Distortion::Log1p, 10.0, &anchors)
        .map(|r| r.strictly_decreasing && r.per_anchor.last().is_some_and(|p| p.1 <= 1e-4))
        .unwrap_or(false);
    let z = Group::Zd { dim: 1 };
    let z_orbit = power_lengths(
        &z,
        &z.standard_generators(),
        &GroupElement::Zd(vec![1]),
        40,
        10_000,
    )
    .ok()
    .and_then(|d| OrbitSpace::new(d, rat(0)).ok())
    .is_some_and(|o| o.n0 == 0 && o.displacements[40] == rat(40));
    selftest_outcome(vec![
        Check {
            name: "almost_fixed_parabolic",
            pass: almost,
        },
        Check {
            name: "disk_parabolic_horocycle",
            pass: horocycle.map(|a| a.pass).unwrap_or(false),
        },
        Check {
            name: "distorted_log1p",
            pass: log_line,
        },
        Check {
            name: "z_orbit_lengths",
            pass: z_orbit,
        },
    ])
}
