//! File-based front end: every command reads JSON, writes one JSON report and
//! maps the outcome to an exit code.

use std::path::{Path, PathBuf};

use ainfinity::{check_stasheff, pillowcase_cohomology, pillowcase_family, AInfError, AInfinityPresentation};
use clap::{Args, Parser, Subcommand};
use deformation::{
    build_family, check_family_identities, evaluate_fiber, identify_deformed_surface, kodaira_spencer, DeformError,
};
use hochschild::{hh_dimension, BarTruncation, StandardLayout, Truncation, UnitKind};
use quiver_core::io::{from_json, to_json, PresentationJson};
use quiver_core::{fixtures, AlgebraError, Field, Presentation, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use surface_dict::{predicted_hh2, standard_algebra, Boundary, StopConfig, SurfaceData};
use weak_dual::{classify_vertices, find_isomorphism, is_proper, weak_dual, DualError};

pub const BOUNDS_ENV: &str = "SURFALG_BOUNDS";
const DEFAULT_BOUNDS: &str = "6,8";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitStatus {
    Ok = 0,
    Input = 1,
    Unstable = 2,
    Internal = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Unstable(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn status(&self) -> ExitStatus {
        match self {
            CliError::Input(_) => ExitStatus::Input,
            CliError::Unstable(_) => ExitStatus::Unstable,
            CliError::Internal(_) => ExitStatus::Internal,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Resource(_) => CliError::Unstable(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<DeformError> for CliError {
    fn from(e: DeformError) -> Self {
        match e {
            DeformError::Algebra(a) => a.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<DualError> for CliError {
    fn from(e: DualError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AInfError> for CliError {
    fn from(e: AInfError) -> Self {
        match e {
            AInfError::Algebra(a) => a.into(),
            AInfError::Invalid(s) => CliError::Input(s),
            AInfError::Cohomology(s) => CliError::Internal(s),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "surfalg", version, about = "Hochschild cohomology, weak duals and deformations of surface algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of HH^n of an algebra or of the standard algebra of a surface.
    Hh {
        input: PathBuf,
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Weak dual of the standard algebra of a surface.
    Dual {
        input: PathBuf,
        /// Vertex names to dualize at; defaults to the vertices with a relation-free loop.
        #[arg(long, value_delimiter = ',')]
        at: Option<Vec<String>>,
        /// Dualize again and require an isomorphism with the input algebra.
        #[arg(long)]
        check_double: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Deformation family of a surface algebra, one fiber and Kodaira–Spencer ranks.
    Deform {
        input: PathBuf,
        /// Sampled parameter points for the Kodaira–Spencer table besides 0 and λ.
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Stasheff identities of an A∞ file, or of the four-parameter pillowcase family.
    Ainf {
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Prints a built-in presentation or surface as JSON.
    Fixture { name: String },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Overlap length and value length; the check reruns at both plus two.
    #[arg(long, env = BOUNDS_ENV, default_value = DEFAULT_BOUNDS)]
    pub bounds: String,
    #[arg(long, default_value = "-4,4", allow_hyphen_values = true)]
    pub degree_window: String,
    #[arg(long)]
    pub arity: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma separated rationals such as `1,-2/3`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    pub bounds: [usize; 2],
    pub degree_window: [i64; 2],
    pub arity: usize,
    pub seed: u64,
    pub lambda: Option<Vec<String>>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn pair<T: std::str::FromStr>(s: &str, what: &str) -> Result<[T; 2], CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => match (a.parse(), b.parse()) {
            (Ok(a), Ok(b)) => Ok([a, b]),
            _ => Err(CliError::Input(format!("{what}: cannot parse {s:?}"))),
        },
        _ => Err(CliError::Input(format!("{what}: expected two comma separated values, got {s:?}"))),
    }
}

pub fn parse_lambda(s: &str) -> Result<Vec<Q>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<Q>().map_err(|_| CliError::Input(format!("not a rational: {x:?}"))))
        .collect()
}

impl RunConfig {
    fn new(command: &str, inputs: Vec<&Path>, c: &Common, default_arity: usize) -> Result<Self, CliError> {
        let bounds: [usize; 2] = pair(&c.bounds, "--bounds")?;
        if bounds.iter().any(|&b| b == 0) {
            return Err(CliError::Input("--bounds must be positive".into()));
        }
        let degree_window: [i64; 2] = pair(&c.degree_window, "--degree-window")?;
        if degree_window[0] > degree_window[1] {
            return Err(CliError::Input("--degree-window is empty".into()));
        }
        let arity = c.arity.unwrap_or(default_arity);
        if arity == 0 {
            return Err(CliError::Input("--arity must be positive".into()));
        }
        let lambda = c.lambda.as_deref().map(parse_lambda).transpose()?;
        Ok(RunConfig {
            command: command.into(),
            inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
            bounds,
            degree_window,
            arity,
            seed: c.seed,
            lambda: lambda.map(|l| l.iter().map(Field::to_exact_string).collect()),
            out: c.out.clone(),
        })
    }

    fn lambda(&self) -> Option<Vec<Q>> {
        self.lambda.as_ref().map(|l| l.iter().map(|x| x.parse().unwrap()).collect())
    }

    fn window(&self) -> (i64, i64) {
        (self.degree_window[0], self.degree_window[1])
    }
}

/// A report and the exit status it carries.
pub struct Outcome {
    pub status: ExitStatus,
    pub report: Value,
    pub out: Option<PathBuf>,
}

impl Outcome {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        s.push('\n');
        s
    }
}

enum Input {
    Surface(SurfaceData, Presentation<Q>),
    Algebra(Presentation<Q>),
}

impl Input {
    fn algebra(&self) -> &Presentation<Q> {
        match self {
            Input::Surface(_, p) | Input::Algebra(p) => p,
        }
    }

    fn surface(self) -> Result<(SurfaceData, Presentation<Q>), CliError> {
        match self {
            Input::Surface(s, p) => Ok((s, p)),
            Input::Algebra(_) => Err(CliError::Input("this command needs a surface file".into())),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Input, CliError> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if v.get("boundary").is_some() {
        let s = SurfaceData::from_json(&text).map_err(CliError::Input)?;
        let report = surface_dict::validate_surface(&s);
        if !report.ok() {
            return Err(CliError::Input(report.errors.join("; ")));
        }
        let p = standard_algebra(&s).map_err(CliError::Input)?;
        return Ok(Input::Surface(s, p));
    }
    let j: PresentationJson = serde_json::from_value(v).map_err(|e| CliError::Input(e.to_string()))?;
    let mut p: Presentation<Q> = from_json(&j)?;
    let report = p.validate();
    if !report.ok() {
        return Err(CliError::Input(report.errors.join("; ")));
    }
    Ok(Input::Algebra(p))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cmd_hh(cfg: &RunConfig, input: &Path, n: i64) -> Result<(ExitStatus, Value), CliError> {
    let input = load(input)?;
    let r = hh_dimension(input.algebra(), n, Truncation::new(cfg.bounds[0], cfg.bounds[1]))?;
    let predicted = match (&input, n) {
        (Input::Surface(s, _), 2) => Some(predicted_hh2(s).0),
        _ => None,
    };
    let status = if r.stable { ExitStatus::Ok } else { ExitStatus::Unstable };
    Ok((
        status,
        json!({
            "n": n,
            "dimension": r.dimension,
            "stable": r.stable,
            "levels": to_value(&r.levels),
            "predicted_from_surface": predicted,
            "representatives": to_value(&r.representatives),
        }),
    ))
}

fn vertex_ids(p: &Presentation<Q>, names: &[String]) -> Result<Vec<usize>, CliError> {
    names.iter().map(|n| p.quiver().vertex(n).map_err(CliError::from)).collect()
}

fn vertex_names(p: &Presentation<Q>, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&v| p.quiver().vertex_name(v).to_string()).collect()
}

/// Loop vertices of `p` belonging to the given boundary components.
fn loop_vertices_of(p: &Presentation<Q>, components: &[usize]) -> Result<Vec<usize>, CliError> {
    let layout = StandardLayout::read(p)?;
    let classes = classify_vertices(p);
    let mut out: Vec<usize> = layout
        .units
        .iter()
        .filter(|u| matches!(u.kind, UnitKind::Stopless | UnitKind::FullStop))
        .filter(|u| u.component.is_some_and(|c| components.contains(&c)))
        .flat_map(|u| u.vertices.iter().filter_map(|n| p.quiver().vertex(n).ok()))
        .filter(|v| classes.j.contains(v) || classes.k.contains(v))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cmd_dual(input: &Path, at: Option<&[String]>, check_double: bool) -> Result<(ExitStatus, Value), CliError> {
    let (s, a) = load(input)?.surface()?;
    let l = match at {
        Some(names) => vertex_ids(&a, names)?,
        None => classify_vertices(&a).j.into_iter().collect(),
    };
    let names = vertex_names(&a, &l);
    let d = weak_dual(&a, &s, &l)?;
    let mut result = json!({
        "at": names,
        "toggled": to_value(&d.toggled),
        "surface": to_value(&d.surface),
        "proper": is_proper(&d.presentation),
        "presentation": to_value(&to_json(&d.presentation)),
    });
    if check_double {
        let back = loop_vertices_of(&d.presentation, &d.toggled.iter().map(|t| t.component).collect::<Vec<_>>())?;
        let dd = weak_dual(&d.presentation, &d.surface, &back)?;
        let iso = find_isomorphism(&a, &dd.presentation).is_some();
        result["double_dual"] = json!({ "surface_restored": dd.surface == s, "isomorphic": iso });
        if !iso || dd.surface != s {
            return Err(CliError::Internal(format!("double dual of {} is not isomorphic to it", input.display())));
        }
    }
    Ok((ExitStatus::Ok, result))
}

fn sample(rng: &mut ChaCha8Rng, d: usize) -> Vec<Q> {
    (0..d)
        .map(|_| {
            let n: i64 = rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 };
            Q::from_ratio(n, rng.gen_range(1..=4))
        })
        .collect()
}

fn exact(l: &[Q]) -> Vec<String> {
    l.iter().map(Field::to_exact_string).collect()
}

fn cmd_deform(cfg: &RunConfig, input: &Path, samples: usize) -> Result<(ExitStatus, Value), CliError> {
    let (s, b) = load(input)?.surface()?;
    let f = build_family(&b, &s)?;
    let d = f.dim();
    let check = check_family_identities(&f)?;
    if !check.ok() {
        return Err(CliError::Internal(format!("family identities fail: {}", check.violations.join("; "))));
    }
    let lambda = cfg.lambda().unwrap_or_else(|| vec![Q::from_i64(1); d]);
    if lambda.len() != d {
        return Err(CliError::Input(format!("--lambda has {} entries, the family has {d} parameters", lambda.len())));
    }
    let fiber = evaluate_fiber(&f, &lambda)?;
    let identified = identify_deformed_surface(&f, &s, &lambda, cfg.window(), cfg.bounds[1])?;
    let mut points = vec![vec![Q::from_i64(0); d], lambda.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    points.extend((0..samples).map(|_| sample(&mut rng, d)));
    let tr = BarTruncation::new(cfg.arity, cfg.bounds[1]);
    let mut table = Vec::new();
    let mut stable = true;
    for l in &points {
        let k = kodaira_spencer(&f, l, tr)?;
        stable &= k.stable;
        table.push(to_value(&k));
    }
    let status = if stable { ExitStatus::Ok } else { ExitStatus::Unstable };
    Ok((
        status,
        json!({
            "parameters": d,
            "family": f.describe(),
            "base": to_value(&to_json(&f.base)),
            "identities": to_value(&check),
            "lambda": exact(&lambda),
            "fiber": to_value(&to_json(&fiber)),
            "identified": to_value(&identified),
            "kodaira_spencer": table,
        }),
    ))
}

fn cmd_ainf(cfg: &RunConfig, input: Option<&Path>) -> Result<(ExitStatus, Value), CliError> {
    let (m, lambda) = match input {
        Some(path) => (AInfinityPresentation::parse(&read(path)?, cfg.bounds[1])?, None),
        None => {
            let l = match cfg.lambda() {
                Some(l) => l,
                None => sample(&mut ChaCha8Rng::seed_from_u64(cfg.seed), 4),
            };
            let l: [Q; 4] = l.try_into().map_err(|_| CliError::Input("the pillowcase family takes four parameters".into()))?;
            (pillowcase_family(&l)?, Some(l))
        }
    };
    let report = check_stasheff(&m, cfg.arity);
    let mut result = json!({ "stasheff": to_value(&report) });
    if let Some(l) = &lambda {
        let c = pillowcase_cohomology(l)?;
        result["lambda"] = json!(exact(l));
        result["cohomology"] = to_value(&c);
        result["cohomology_algebra"] = to_value(&c.algebra_json());
    }
    let status = match (report.passed, lambda.is_some()) {
        (false, true) => return Err(CliError::Internal(format!("pillowcase family fails: {}", to_value(&report.violation)))),
        (false, false) => ExitStatus::Input,
        (true, _) if report.skipped.values().any(|&n| n > 0) => ExitStatus::Unstable,
        (true, _) => ExitStatus::Ok,
    };
    Ok((status, result))
}

fn cylinder(stops: StopConfig, w: i64) -> SurfaceData {
    SurfaceData::new(0, 0, vec![Boundary::new(StopConfig::Stops(1), -w), Boundary::new(stops, w)])
}

pub const FIXTURES: [&str; 13] = [
    "point",
    "polynomial_1",
    "polynomial_2",
    "dual_numbers_0",
    "dual_numbers_-1",
    "local_model",
    "pillowcase_precursor",
    "skew_gentle",
    "cylinder_w1",
    "cylinder_w2",
    "cylinder_full_w1",
    "cylinder_full_w2",
    "four_full_components",
];

/// Presentation or surface JSON of a named fixture.
pub fn fixture(name: &str) -> Result<Value, CliError> {
    let p: Presentation<Q> = match name {
        "point" => fixtures::point(),
        "polynomial_1" => fixtures::polynomial(1),
        "polynomial_2" => fixtures::polynomial(2),
        "dual_numbers_0" => fixtures::dual_numbers(0),
        "dual_numbers_-1" => fixtures::dual_numbers(-1),
        "local_model" => fixtures::local_model(),
        "pillowcase_precursor" => fixtures::pillowcase_precursor(),
        "skew_gentle" => fixtures::skew_gentle(),
        "cylinder_w1" => return Ok(to_value(&cylinder(StopConfig::None, 1))),
        "cylinder_w2" => return Ok(to_value(&cylinder(StopConfig::None, 2))),
        "cylinder_full_w1" => return Ok(to_value(&cylinder(StopConfig::Full, 1))),
        "cylinder_full_w2" => return Ok(to_value(&cylinder(StopConfig::Full, 2))),
        "four_full_components" => {
            let b = Boundary::new;
            let s = SurfaceData::new(
                0,
                0,
                vec![b(StopConfig::Stops(2), 0), b(StopConfig::Full, 1), b(StopConfig::Full, 2), b(StopConfig::Stops(1), 1)],
            );
            return Ok(to_value(&s));
        }
        _ => return Err(CliError::Input(format!("unknown fixture {name:?}; known: {}", FIXTURES.join(", ")))),
    };
    Ok(to_value(&to_json(&p)))
}

fn envelope(cfg: Option<&RunConfig>, result: Result<(ExitStatus, Value), CliError>) -> (ExitStatus, Value) {
    let mut report = json!({ "config": to_value(&cfg) });
    let status = match result {
        Ok((status, value)) => {
            report["result"] = value;
            status
        }
        Err(e) => {
            report["error"] = json!(e.to_string());
            e.status()
        }
    };
    report["status"] = to_value(&status);
    report["exit_code"] = json!(status.code());
    (status, report)
}

pub fn run(cli: Cli) -> Outcome {
    let (cfg, result) = match &cli.command {
        Command::Fixture { name } => {
            return match fixture(name) {
                Ok(v) => Outcome { status: ExitStatus::Ok, report: v, out: None },
                Err(e) => {
                    let (status, report) = envelope(None, Err(e));
                    Outcome { status, report, out: None }
                }
            };
        }
        Command::Hh { input, n, common } => match RunConfig::new("hh", vec![input], common, 3) {
            Ok(cfg) => {
                let r = cmd_hh(&cfg, input, *n);
                (Some(cfg), r)
            }
            Err(e) => (None, Err(e)),
        },
        Command::Dual { input, at, check_double, common } => match RunConfig::new("dual", vec![input], common, 3) {
            Ok(cfg) => (Some(cfg), cmd_dual(input, at.as_deref(), *check_double)),
            Err(e) => (None, Err(e)),
        },
        Command::Deform { input, samples, common } => match RunConfig::new("deform", vec![input], common, 3) {
            Ok(cfg) => {
                let r = cmd_deform(&cfg, input, *samples);
                (Some(cfg), r)
            }
            Err(e) => (None, Err(e)),
        },
        Command::Ainf { input, common } => {
            match RunConfig::new("ainf", input.iter().map(PathBuf::as_path).collect(), common, 7) {
                Ok(cfg) => {
                    let r = cmd_ainf(&cfg, input.as_deref());
                    (Some(cfg), r)
                }
                Err(e) => (None, Err(e)),
            }
        }
    };
    let out = cfg.as_ref().and_then(|c| c.out.clone());
    let (status, report) = envelope(cfg.as_ref(), result);
    Outcome { status, report, out }
}

/// Parses `args` (without the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Result<Outcome, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(std::iter::once("surfalg".into()).chain(args.into_iter().map(Into::into)))?;
    Ok(run(cli))
}
