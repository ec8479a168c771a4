use clap::{Args, Subcommand, ValueEnum};
use horokit::descriptor::{BuiltSpace, SpaceDescriptor};
use horokit::dynamics::{
    minimal_displacement, moebius_tracial_check, spectral_principle_witness, translation_number,
    GroupTranslation, MoebiusClass, MoebiusMap, SelfMap, TauReport,
};
use horokit::functionals::ModelFunctional;
use horokit::spaces::{cayley_to_disk, cayley_to_half_plane, HyperbolicModel, HyperbolicVariant};
use horokit::Error;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::common::{
    parse_matrix, parse_point, read_json, selftest_outcome, usage, Check, CliResult, Common,
    Outcome,
};

#[derive(Debug, Subcommand)]
pub enum SpectralCmd {
    /// Translation number by subadditivity.
    Tau(TauArgs),
    /// Minimal displacement over a seeded sample.
    Displacement(DisplacementArgs),
    /// tau(fg) against tau(gf).
    Tracial(TracialArgs),
    /// Search Busemann candidates for h(f^n x0) <= -n tau.
    Principle(PrincipleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapType {
    Mobius,
    Translation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    HalfPlane,
    Disk,
}

#[derive(Debug, Args)]
pub struct MobiusArgs {
    /// Real SL2 matrix `a,b,c,d`.
    #[arg(long, allow_hyphen_values = true, default_value = "2,0,0,0.5")]
    pub matrix: String,
    #[arg(long, value_enum, default_value_t = Model::HalfPlane)]
    pub model: Model,
    /// Base point `re,im`; defaults to `i` (half-plane) or `0` (disk).
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    #[arg(long, value_enum, default_value_t = MapType::Mobius)]
    pub map: MapType,
    #[command(flatten)]
    pub mobius: MobiusArgs,
    /// Cayley graph descriptor for `--map translation`.
    #[arg(long)]
    pub space: Option<String>,
    /// Group element (JSON) for `--map translation`.
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DisplacementArgs {
    #[command(flatten)]
    pub mobius: MobiusArgs,
    #[arg(long, default_value_t = 2000)]
    pub budget: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TracialArgs {
    /// First map; random pairs when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PrincipleArgs {
    #[command(flatten)]
    pub mobius: MobiusArgs,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

pub fn common(cmd: &SpectralCmd) -> &Common {
    match cmd {
        SpectralCmd::Tau(a) => &a.common,
        SpectralCmd::Displacement(a) => &a.common,
        SpectralCmd::Tracial(a) => &a.common,
        SpectralCmd::Principle(a) => &a.common,
    }
}

pub fn run(cmd: &SpectralCmd) -> CliResult<Outcome> {
    if common(cmd).selftest {
        return selftest();
    }
    match cmd {
        SpectralCmd::Tau(a) => tau(a),
        SpectralCmd::Displacement(a) => displacement(a),
        SpectralCmd::Tracial(a) => tracial(a),
        SpectralCmd::Principle(a) => principle(a),
    }
}

fn variant(m: Model) -> HyperbolicVariant {
    match m {
        Model::HalfPlane => HyperbolicVariant::HalfPlane,
        Model::Disk => HyperbolicVariant::Disk,
    }
}

pub fn model_space(m: Model) -> HyperbolicModel {
    match m {
        Model::HalfPlane => HyperbolicModel::half_plane(),
        Model::Disk => HyperbolicModel::disk(),
    }
}

pub fn build_mobius(a: &MobiusArgs) -> CliResult<(HyperbolicModel, MoebiusMap, Complex64)> {
    let space = model_space(a.model);
    let f = MoebiusMap::new(parse_matrix(&a.matrix)?, variant(a.model))?;
    let x0 = match &a.x0 {
        Some(s) => parse_point(s)?,
        None => match a.model {
            Model::HalfPlane => Complex64::i(),
            Model::Disk => Complex64::new(0.0, 0.0),
        },
    };
    space.check_point(x0)?;
    Ok((space, f, x0))
}

fn tau_csv(r: &TauReport) -> String {
    let mut csv = String::from("k,displacement,running_bound\n");
    for (k, d) in r.displacements.iter().enumerate() {
        let b = if k == 0 {
            String::new()
        } else {
            r.running_bound[k - 1].to_string()
        };
        csv.push_str(&format!("{k},{d},{b}\n"));
    }
    csv
}

fn tau(a: &TauArgs) -> CliResult<Outcome> {
    if a.n == 0 {
        return usage("--n must be positive");
    }
    match a.map {
        MapType::Mobius => {
            let (space, f, x0) = build_mobius(&a.mobius)?;
            let r = translation_number(&space, &f, &x0, a.n)?;
            let pass = r.closed_form.map_or(true, |c| c <= r.bound + 1e-9);
            let csv = tau_csv(&r);
            let report = json!({ "map": f, "class": f.classify(), "tau": r });
            Ok(Outcome::new(report, pass)?.with_csv(csv))
        }
        MapType::Translation => {
            let (Some(space), Some(element)) = (&a.space, &a.element) else {
                return usage("--map translation needs --space and --element");
            };
            let desc: SpaceDescriptor = serde_json::from_value(read_json(space)?)
                .map_err(|e| Error::Parse(format!("space descriptor: {e}")))?;
            let BuiltSpace::Cayley(mut graph) = desc.build()? else {
                return Err(
                    Error::FamilyMismatch("--map translation needs a Cayley graph".into()).into(),
                );
            };
            let g = graph.group.parse_element(&read_json(element)?)?;
            // |g^k| <= k |g|
            let len = graph.word_length(&g)?;
            graph.bound = graph.bound.max(len.saturating_mul(a.n as u32));
            let x0 = graph.group.identity();
            let r = translation_number(&graph, &GroupTranslation { g: g.clone() }, &x0, a.n)?;
            let csv = tau_csv(&r);
            let report = json!({ "group": graph.group.name(), "element": g, "tau": r });
            Ok(Outcome::new(report, true)?.with_csv(csv))
        }
    }
}

/// Seeded points of the disk, in the coordinates of `space`.
fn sample_points(space: &HyperbolicModel, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let w = Complex64::from_polar(
                0.999 * rng.gen::<f64>().sqrt(),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            match space.variant {
                HyperbolicVariant::Disk => w,
                HyperbolicVariant::HalfPlane => cayley_to_half_plane(w),
            }
        })
        .collect()
}

fn displacement(a: &DisplacementArgs) -> CliResult<Outcome> {
    let (space, f, x0) = build_mobius(&a.mobius)?;
    let mut pts = vec![x0];
    pts.extend(sample_points(
        &space,
        a.budget.saturating_sub(1),
        a.common.seed,
    ));
    let r = minimal_displacement(&space, &f, pts, a.budget)?;
    let tl = f.translation_length().unwrap_or(0.0);
    let pass = r.bound >= tl - 1e-9;
    let mut csv = String::from("index,running_min\n");
    for (i, v) in r.trace.iter().enumerate() {
        csv.push_str(&format!("{i},{v}\n"));
    }
    let report =
        json!({ "map": f, "class": f.classify(), "translation_length": tl, "displacement": r });
    Ok(Outcome::new(report, pass)?.with_csv(csv))
}

/// A seeded hyperbolic element of SL2(R) acting on the half-plane.
pub fn random_hyperbolic(rng: &mut impl Rng) -> MoebiusMap {
    loop {
        let a: f64 = rng.gen_range(0.2..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let b: f64 = rng.gen_range(-3.0..3.0);
        let c: f64 = rng.gen_range(-3.0..3.0);
        let d = (1.0 + b * c) / a;
        if (a + d).abs() > 2.05 {
            if let Ok(m) = MoebiusMap::half_plane([a, b, c, d]) {
                return m;
            }
        }
    }
}

fn tracial(a: &TracialArgs) -> CliResult<Outcome> {
    let space = HyperbolicModel::half_plane();
    let pairs = match (&a.f, &a.g) {
        (Some(f), Some(g)) => vec![(
            MoebiusMap::half_plane(parse_matrix(f)?)?,
            MoebiusMap::half_plane(parse_matrix(g)?)?,
        )],
        (None, None) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
            (0..a.pairs)
                .map(|_| (random_hyperbolic(&mut rng), random_hyperbolic(&mut rng)))
                .collect()
        }
        _ => return usage("give both --f and --g, or neither"),
    };
    let mut rows = Vec::new();
    let mut pass = true;
    for (f, g) in &pairs {
        let r = moebius_tracial_check(&space, f, g, Complex64::i(), a.n, 1e-12)?;
        pass &= r.pass;
        rows.push(json!({ "f": f.matrix, "g": g.matrix, "report": r }));
    }
    let mut csv = String::from(
        "pair,estimate_fg,estimate_gf,estimate_difference,gap_bound,closed_form_difference\n",
    );
    for (i, row) in rows.iter().enumerate() {
        let r = &row["report"];
        csv.push_str(&format!(
            "{i},{},{},{},{},{}\n",
            r["estimate_fg"],
            r["estimate_gf"],
            r["estimate_difference"],
            r["gap_bound"],
            r["closed_form_difference"]
        ));
    }
    Ok(Outcome::new(json!({ "n": a.n, "pairs": rows }), pass)?.with_csv(csv))
}

/// Boundary fixed points in half-plane coordinates; `None` is infinity.
fn fixed_points(m: &[f64; 4]) -> Vec<Option<f64>> {
    let [a, b, c, d] = *m;
    if c == 0.0 {
        let mut v = vec![None];
        if a != d {
            v.push(Some(b / (d - a)));
        }
        v
    } else {
        let disc = (a + d) * (a + d) - 4.0;
        if disc < 0.0 {
            return vec![];
        }
        let s = disc.sqrt();
        let mut v = vec![Some((a - d - s) / (2.0 * c))];
        if s > 0.0 {
            v.push(Some((a - d + s) / (2.0 * c)));
        }
        v
    }
}

pub fn busemann_candidates(f: &MoebiusMap) -> Vec<ModelFunctional> {
    let mut out = Vec::new();
    for p in fixed_points(&f.matrix) {
        match p {
            None => {
                out.push(ModelFunctional::disk_busemann(Complex64::new(1.0, 0.0)));
                out.push(ModelFunctional::HalfPlaneBusemannAtInfinity);
            }
            Some(x) => {
                let z = cayley_to_disk(Complex64::new(x, 0.0));
                out.push(ModelFunctional::disk_busemann(z / z.norm()));
            }
        }
    }
    out.push(ModelFunctional::Zero);
    out
}

fn principle(a: &PrincipleArgs) -> CliResult<Outcome> {
    let (space, f, x0) = build_mobius(&a.mobius)?;
    let cands = busemann_candidates(&f);
    let r = spectral_principle_witness(&space, &f, &cands, &x0, a.n, a.tol)?;
    let pass = r.pass;
    let report = json!({ "map": f, "class": f.classify(), "candidates": cands, "principle": r });
    Outcome::new(report, pass)
}

fn selftest() -> CliResult<Outcome> {
    let hp = HyperbolicModel::half_plane();
    let dilation = MoebiusMap::half_plane([2.0, 0.0, 0.0, 0.5])?;
    let tau_ok = translation_number(&hp, &dilation, &Complex64::i(), 200)
        .map(|r| {
            r.closed_form
                .is_some_and(|c| (c - 2.0 * 1.25f64.acosh()).abs() < 1e-12 && c <= r.bound + 1e-12)
        })
        .unwrap_or(false);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let tracial_ok = (0..5).all(|_| {
        let (f, g) = (random_hyperbolic(&mut rng), random_hyperbolic(&mut rng));
        moebius_tracial_check(&hp, &f, &g, Complex64::i(), 200, 1e-12)
            .map(|r| r.pass)
            .unwrap_or(false)
    });
    let principle_ok = spectral_principle_witness(
        &hp,
        &dilation,
        &busemann_candidates(&dilation),
        &Complex64::i(),
        100,
        1e-9,
    )
    .map(|r| r.pass)
    .unwrap_or(false);
    let classes = [
        MoebiusMap::half_plane([1.0, 1.0, 0.0, 1.0])
            .map(|m| m.classify() == MoebiusClass::Parabolic),
        MoebiusMap::half_plane([0.0, -1.0, 1.0, 0.0])
            .map(|m| m.classify() == MoebiusClass::Elliptic),
    ];
    selftest_outcome(vec![
        Check {
            name: "tau_closed_form",
            pass: tau_ok,
        },
        Check {
            name: "tracial_random_pairs",
            pass: tracial_ok,
        },
        Check {
            name: "principle_dilation",
            pass: principle_ok,
        },
        Check {
            name: "classification",
            pass: classes.iter().all(|c| matches!(c, Ok(true))),
        },
    ])
}
