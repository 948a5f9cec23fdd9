use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{MonomialOrder, OrderKind, Polynomial, Var};
use crate::constructions::{
    cartesian_saturation, elekes_degree_d, elekes_grid, generic_diagonal, random_graph_curve, valtr_grid,
    ConstructionInstance, SaturationSpec,
};
use crate::geometry::{
    count_intersections, distinct_values, fiber_probe, incidence_graph, kst_free_check, map_values, partition_rich,
    repeated_values, CountOptions, FiberOutcome, GeometryError, IncidenceReport, MapMode, MapValues, Point, PointSet,
    DEFAULT_BUDGET,
};
use crate::nullstellensatz::{
    alon_1d_test, cartesian_test_with_order, degenerate_points, grid_witness_to_cartesian, trivial_cartesian_probe,
    Decomposition, GridOutcome, NullstellensatzError, TestOutcome,
};

use super::explain;
use super::parser::{parse_constant, parse_polynomial};
use super::points::{load_points, points_to_csv};
use super::report::{self, count, poly};
use super::{EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "cartesian", version, about = "Cartesian polynomials and exact incidence counts over Q(i)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct Common {
    /// Print what the command computes and exit.
    #[arg(long)]
    #[serde(skip)]
    pub explain: bool,
    /// Add wall-clock time to the report (which is then no longer reproducible byte for byte).
    #[arg(long)]
    pub timing: bool,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Store this invocation as an experiment config before running it.
    #[arg(long, value_name = "FILE")]
    #[serde(skip)]
    pub save_config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct Sources {
    /// CSV file used for both P and Q.
    #[arg(long, value_name = "FILE")]
    pub points: Option<PathBuf>,
    #[arg(long = "p", value_name = "FILE")]
    pub p: Option<PathBuf>,
    #[arg(long = "q", value_name = "FILE")]
    pub q: Option<PathBuf>,
    /// A generated instance, e.g. `elekes:3,3` (see `construct --explain`).
    #[arg(long, value_name = "SPEC")]
    pub construct: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct CartesianTestArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// grevlex (default), grlex or lex, all with x > y > s > t.
    #[arg(long)]
    pub order: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct AlonTestArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Replace non-squarefree g, k by their squarefree parts instead of rejecting them.
    #[arg(long)]
    pub reduce: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct GridWitnessArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[arg(long, value_name = "FILE")]
    pub i: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub j: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct CountArgs {
    /// One polynomial, or two for a system. Defaults to the construction's.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Vec<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sources: Sources,
    /// Write incident pairs to this CSV file.
    #[arg(long, value_name = "FILE")]
    pub emit_pairs: Option<PathBuf>,
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct IncidenceArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sources: Sources,
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct PartitionArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sources: Sources,
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct ValuesArgs {
    /// repeated, distinct, map-fiber or map-distinct.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Second coordinate of the map for the map modes.
    #[arg(long, allow_hyphen_values = true)]
    pub poly2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub sources: Sources,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct ConstructArgs {
    #[arg(long, value_name = "SPEC")]
    pub spec: Option<String>,
    /// Also write P.csv and Q.csv here.
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct ProbeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub poly2: Option<String>,
    /// Candidate points q for the degenerate-point scan.
    #[arg(long, value_name = "FILE")]
    pub points: Option<PathBuf>,
    /// The point q = (a, b) for the fibre probe, written `a,b`.
    #[arg(long, value_name = "A,B", allow_hyphen_values = true)]
    pub at: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize, PartialEq)]
pub struct RunArgs {
    #[arg(long, value_name = "FILE")]
    pub config: PathBuf,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize, PartialEq)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    CartesianTest(CartesianTestArgs),
    AlonTest(AlonTestArgs),
    GridWitness(GridWitnessArgs),
    Count(CountArgs),
    Incidence(IncidenceArgs),
    Partition(PartitionArgs),
    Values(ValuesArgs),
    Construct(ConstructArgs),
    Probe(ProbeArgs),
    /// Run a stored experiment config.
    Run(RunArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CartesianTest(_) => "cartesian-test",
            Command::AlonTest(_) => "alon-test",
            Command::GridWitness(_) => "grid-witness",
            Command::Count(_) => "count",
            Command::Incidence(_) => "incidence",
            Command::Partition(_) => "partition",
            Command::Values(_) => "values",
            Command::Construct(_) => "construct",
            Command::Probe(_) => "probe",
            Command::Run(_) => "run",
        }
    }

    fn common_mut(&mut self) -> Option<&mut Common> {
        match self {
            Command::CartesianTest(a) => Some(&mut a.common),
            Command::AlonTest(a) => Some(&mut a.common),
            Command::GridWitness(a) => Some(&mut a.common),
            Command::Count(a) => Some(&mut a.common),
            Command::Incidence(a) => Some(&mut a.common),
            Command::Partition(a) => Some(&mut a.common),
            Command::Values(a) => Some(&mut a.common),
            Command::Construct(a) => Some(&mut a.common),
            Command::Probe(a) => Some(&mut a.common),
            Command::Run(_) => None,
        }
    }
}

/// A stored invocation: one command with all of its arguments.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExperimentConfig {
    pub schema: u32,
    #[serde(flatten)]
    pub command: Command,
}

impl ExperimentConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<ExperimentConfig, String> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| format!("invalid config: {e}"))?;
        if cfg.schema != report::SCHEMA {
            return Err(format!("unsupported config schema {}", cfg.schema));
        }
        if matches!(cfg.command, Command::Run(_)) {
            return Err("a config cannot itself run a config".into());
        }
        Ok(cfg)
    }
}

/// Why a command stopped without a report.
enum CliError {
    Usage(String),
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

/// A finished report and whether it records a mathematical failure.
struct Outcome {
    status_ok: bool,
    inputs: Value,
    result: Value,
}

impl Outcome {
    fn ok(inputs: Value, result: Value) -> Outcome {
        Outcome { status_ok: true, inputs, result }
    }

    fn failure(inputs: Value, result: Value) -> Outcome {
        Outcome { status_ok: false, inputs, result }
    }
}

type CmdResult = Result<Outcome, CliError>;

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Usage(format!("missing required --{flag}")))
}

fn read_poly(text: &str, flag: &str) -> Result<Polynomial, CliError> {
    parse_polynomial(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn read_points(label: &str, path: &Path) -> Result<PointSet, CliError> {
    load_points(label, path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_numbers(body: &str, expect: usize, spec: &str) -> Result<Vec<u64>, CliError> {
    let nums: Result<Vec<u64>, _> = body.split(',').map(|p| p.trim().parse::<u64>()).collect();
    match nums {
        Ok(v) if v.len() == expect && v.iter().all(|&n| n >= 1 || expect == 2 && spec.starts_with("saturation")) => Ok(v),
        _ => Err(CliError::Usage(format!(
            "construction `{spec}` needs {expect} comma-separated positive integers (see `construct --explain`)"
        ))),
    }
}

fn build_construction(spec: &str) -> Result<ConstructionInstance, CliError> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("construction `{spec}` must look like NAME:ARGS")))?;
    let small = |n: u64| -> Result<u32, CliError> {
        u32::try_from(n).map_err(|_| CliError::Usage(format!("construction parameter {n} is too large")))
    };
    match kind {
        "elekes" => {
            let v = parse_numbers(body, 2, spec)?;
            Ok(elekes_grid(small(v[0])?, small(v[1])?))
        }
        "elekes-d" => {
            let v = parse_numbers(body, 3, spec)?;
            Ok(elekes_degree_d(small(v[0])?, small(v[1])?, small(v[2])?))
        }
        "valtr" => {
            let v = parse_numbers(body, 1, spec)?;
            Ok(valtr_grid(small(v[0])?))
        }
        "saturation" => {
            let v = parse_numbers(body, 2, spec)?;
            if v[0] == 0 {
                return Err(CliError::Usage("saturation needs N >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(v[1]);
            let gamma = random_graph_curve(&mut rng, Var::X, 2);
            let kappa = random_graph_curve(&mut rng, Var::S, 2);
            Ok(cartesian_saturation(&SaturationSpec::new(gamma, kappa), v[0] as usize, v[1]))
        }
        "diagonal" => {
            let v = parse_numbers(body, 2, spec)?;
            Ok(generic_diagonal(v[0] as usize, v[1]))
        }
        other => Err(CliError::Usage(format!(
            "unknown construction `{other}`; expected elekes, elekes-d, valtr, saturation or diagonal"
        ))),
    }
}

struct Resolved {
    p: PointSet,
    q: PointSet,
    instance: Option<ConstructionInstance>,
    echo: Value,
}

fn resolve(sources: &Sources, need_q: bool) -> Result<Resolved, CliError> {
    let given = [sources.points.is_some(), sources.p.is_some() || sources.q.is_some(), sources.construct.is_some()];
    if given.iter().filter(|&&b| b).count() != 1 {
        return Err(CliError::Usage("give exactly one of --points, --p/--q or --construct".into()));
    }
    if let Some(spec) = &sources.construct {
        let inst = build_construction(spec)?;
        return Ok(Resolved {
            p: inst.p.clone(),
            q: inst.q.clone(),
            echo: json!({ "construct": spec }),
            instance: Some(inst),
        });
    }
    if let Some(path) = &sources.points {
        let p = read_points("P", path)?;
        let mut q = p.clone();
        if need_q {
            q = PointSet::new("Q", p.points().to_vec()).expect("same points");
        }
        return Ok(Resolved { p, q, instance: None, echo: json!({ "points": path.display().to_string() }) });
    }
    let (Some(pp), Some(qp)) = (&sources.p, &sources.q) else {
        return Err(CliError::Usage("--p and --q must be given together".into()));
    };
    Ok(Resolved {
        p: read_points("P", pp)?,
        q: read_points("Q", qp)?,
        instance: None,
        echo: json!({ "p": pp.display().to_string(), "q": qp.display().to_string() }),
    })
}

fn geometry_error(e: GeometryError) -> CliError {
    match e {
        GeometryError::ComplexityGuard { estimate, budget } => CliError::Usage(format!(
            "search needs about {estimate} subset steps, above --budget {budget}; raise --budget or shrink the input"
        )),
        other => CliError::Usage(other.to_string()),
    }
}

fn order_from(name: Option<&str>) -> Result<MonomialOrder, CliError> {
    match name.unwrap_or("grevlex") {
        "grevlex" => Ok(MonomialOrder::new(OrderKind::Grevlex)),
        "grlex" => Ok(MonomialOrder::new(OrderKind::Grlex)),
        "lex" => Ok(MonomialOrder::new(OrderKind::Lex)),
        other => Err(CliError::Usage(format!("unknown --order `{other}`; expected grevlex, grlex or lex"))),
    }
}

fn test_outcome(inputs: Value, out: &TestOutcome) -> Outcome {
    let flags = json!({ "G": out.reduced_g, "K": out.reduced_k });
    match &out.decomposition {
        Decomposition::Witness(w) => Outcome::ok(
            inputs,
            json!({ "outcome": "witness", "witness": report::witness(w), "squarefree_substituted": flags }),
        ),
        Decomposition::Failure(c) => Outcome::failure(
            inputs,
            json!({ "outcome": "failure", "certificate": report::certificate(c), "squarefree_substituted": flags }),
        ),
    }
}

fn nullstellensatz_error(e: NullstellensatzError, inputs: Value) -> CmdResult {
    match e {
        NullstellensatzError::GridNotContained { .. }
        | NullstellensatzError::GridTooSmall { .. }
        | NullstellensatzError::DegenerateBoundViolated { .. } => {
            let kind = match e {
                NullstellensatzError::GridNotContained { .. } => "grid-not-contained",
                NullstellensatzError::GridTooSmall { .. } => "grid-too-small",
                _ => "degenerate-bound-violated",
            };
            Ok(Outcome::failure(inputs, json!({ "outcome": "error", "error": kind, "message": e.to_string() })))
        }
        other => Err(CliError::Usage(other.to_string())),
    }
}

fn cartesian_test_cmd(a: &CartesianTestArgs) -> CmdResult {
    let f = read_poly(required(&a.poly, "poly")?, "poly")?;
    let g = read_poly(required(&a.g, "g")?, "g")?;
    let k = read_poly(required(&a.k, "k")?, "k")?;
    let order = order_from(a.order.as_deref())?;
    let inputs = json!({ "poly": poly(&f), "g": poly(&g), "k": poly(&k), "order": a.order.as_deref().unwrap_or("grevlex") });
    match cartesian_test_with_order(&f, &g, &k, &order) {
        Ok(out) => Ok(test_outcome(inputs, &out)),
        Err(e) => nullstellensatz_error(e, inputs),
    }
}

fn alon_cmd(a: &AlonTestArgs) -> CmdResult {
    let f = read_poly(required(&a.poly, "poly")?, "poly")?;
    let g = read_poly(required(&a.g, "g")?, "g")?;
    let k = read_poly(required(&a.k, "k")?, "k")?;
    let inputs = json!({ "poly": poly(&f), "g": poly(&g), "k": poly(&k), "reduce": a.reduce });
    match alon_1d_test(&f, &g, &k, a.reduce) {
        Ok(out) => Ok(test_outcome(inputs, &out)),
        Err(e) => nullstellensatz_error(e, inputs),
    }
}

fn grid_cmd(a: &GridWitnessArgs) -> CmdResult {
    let f = read_poly(required(&a.poly, "poly")?, "poly")?;
    let ip = a.i.as_ref().ok_or_else(|| CliError::Usage("missing required --i".into()))?;
    let jp = a.j.as_ref().ok_or_else(|| CliError::Usage("missing required --j".into()))?;
    let i_set = read_points("I", ip)?;
    let j_set = read_points("J", jp)?;
    let inputs = json!({
        "poly": poly(&f),
        "i": ip.display().to_string(),
        "j": jp.display().to_string(),
        "i_size": count(i_set.len()),
        "j_size": count(j_set.len()),
    });
    match grid_witness_to_cartesian(&f, &i_set, &j_set) {
        Ok(GridOutcome::Recovered { witness, coverage, via_subset }) => Ok(Outcome::ok(
            inputs,
            json!({
                "outcome": "witness",
                "witness": report::witness(&witness),
                "coverage": [count(coverage.0), count(coverage.1)],
                "via_subset": via_subset,
            }),
        )),
        Ok(GridOutcome::Inconclusive { pairs_tried, note }) => Ok(Outcome::failure(
            inputs,
            json!({ "outcome": "inconclusive", "pairs_tried": count(pairs_tried), "note": note }),
        )),
        Err(e) => nullstellensatz_error(e, inputs),
    }
}

fn system_for(polys: &[String], instance: Option<&ConstructionInstance>) -> Result<Vec<Polynomial>, CliError> {
    if polys.is_empty() {
        return instance
            .map(|i| i.system.clone())
            .ok_or_else(|| CliError::Usage("missing required --poly".into()));
    }
    if polys.len() > 2 {
        return Err(CliError::Usage("--poly may be given at most twice".into()));
    }
    polys.iter().map(|t| read_poly(t, "poly")).collect()
}

fn write_pairs(path: &Path, r: &IncidenceReport, p: &PointSet, q: &PointSet) -> Result<(), CliError> {
    let mut out = String::from("p,q,pu,pv,qu,qv\n");
    for &(pi, qi) in r.pairs.as_deref().unwrap_or(&[]) {
        let (a, b) = (p.get(pi), q.get(qi));
        out.push_str(&format!("{pi},{qi},{},{},{},{}\n", a.u, a.v, b.u, b.v));
    }
    std::fs::write(path, out).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn count_cmd(a: &CountArgs) -> CmdResult {
    let src = resolve(&a.sources, true)?;
    let system = system_for(&a.poly, src.instance.as_ref())?;
    let options = CountOptions { parallel: !a.sequential, emit_pairs: a.emit_pairs.is_some() };
    let r = count_intersections(&system, &src.p, &src.q, &options).map_err(geometry_error)?;
    if let Some(path) = &a.emit_pairs {
        write_pairs(path, &r, &src.p, &src.q)?;
    }
    let mut result = report::incidence(&r);
    if let Some(inst) = &src.instance {
        if a.poly.is_empty() {
            result["predicted_count"] = count(inst.predicted_count);
        }
    }
    let inputs = json!({ "system": system.iter().map(poly).collect::<Vec<_>>(), "sources": src.echo });
    Ok(Outcome::ok(inputs, result))
}

fn single_poly(text: &Option<String>, instance: Option<&ConstructionInstance>) -> Result<Polynomial, CliError> {
    match text {
        Some(t) => read_poly(t, "poly"),
        None => match instance.map(|i| i.system.as_slice()) {
            Some([f]) => Ok(f.clone()),
            Some(_) => Err(CliError::Usage("this construction has two polynomials; pass --poly".into())),
            None => Err(CliError::Usage("missing required --poly".into())),
        },
    }
}

fn incidence_cmd(a: &IncidenceArgs) -> CmdResult {
    let src = resolve(&a.sources, true)?;
    let f = single_poly(&a.poly, src.instance.as_ref())?;
    let g = incidence_graph(&f, &src.p, &src.q, true).map_err(geometry_error)?;
    let kst = kst_free_check(&g, a.s, a.t, a.budget).map_err(geometry_error)?;
    let classes: Vec<Value> = g.duplicate_classes.iter().map(|c| report::indices(c)).collect();
    let result = json!({
        "edges": count(g.edge_count()),
        "p_size": count(g.p_len()),
        "q_size": count(g.q_len()),
        "duplicate_classes": classes,
        "degenerate_q": report::indices(&g.degenerate),
        "empty_curves_q": report::indices(&g.empty_curves),
        "kst": {
            "s": a.s,
            "t": a.t,
            "budget": count(a.budget),
            "free": kst.is_none(),
            "witness": kst.map(|w| json!({ "p": report::indices(&w.left), "q": report::indices(&w.right) })),
        },
    });
    let inputs = json!({ "poly": poly(&f), "sources": src.echo });
    Ok(Outcome::ok(inputs, result))
}

fn partition_cmd(a: &PartitionArgs) -> CmdResult {
    let src = resolve(&a.sources, true)?;
    let f = single_poly(&a.poly, src.instance.as_ref())?;
    let m = a.m.ok_or_else(|| CliError::Usage("missing required --m".into()))?;
    let r = partition_rich(&f, &src.p, &src.q, m).map_err(geometry_error)?;
    let parts = |ps: &[Vec<usize>]| Value::Array(ps.iter().map(|p| report::indices(p)).collect());
    let result = json!({
        "tau": count(r.tau),
        "p_parts": parts(&r.p_parts),
        "q_parts": parts(&r.q_parts),
        "poor_q": report::indices(&r.poor),
        "m_above_d_squared": r.m_above_d_squared,
        "within_colour_bound": r.within_colour_bound,
        "verified": r.verified,
    });
    let inputs = json!({ "poly": poly(&f), "m": count(m), "sources": src.echo });
    Ok(if r.verified { Outcome::ok(inputs, result) } else { Outcome::failure(inputs, result) })
}

fn constant_arg(v: &Option<String>, flag: &str) -> Result<crate::algebra::GaussRational, CliError> {
    let text = required(v, flag)?;
    parse_constant(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

fn values_cmd(a: &ValuesArgs) -> CmdResult {
    let mode = required(&a.mode, "mode")?;
    let src = resolve(&a.sources, false)?;
    let p = &src.p;
    let options = CountOptions::default();
    let f = single_poly(&a.poly, src.instance.as_ref())?;
    let mut inputs = json!({ "mode": mode, "poly": poly(&f), "sources": src.echo, "p_size": count(p.len()) });
    let result = match mode {
        "repeated" => {
            let av = constant_arg(&a.a, "a")?;
            inputs["a"] = json!(av.to_string());
            let r = repeated_values(&f, p, &av, &options).map_err(geometry_error)?;
            report::incidence(&r)
        }
        "distinct" => {
            let dv = distinct_values(&f, p);
            json!({
                "count": count(dv.count),
                "values": dv.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "best_row": dv.best_row.map(|(i, n)| json!({ "p": i, "count": count(n) })),
                "envelope": report::envelope(&dv.envelope),
            })
        }
        "map-fiber" | "map-distinct" => {
            let f2 = read_poly(required(&a.poly2, "poly2")?, "poly2")?;
            inputs["poly2"] = poly(&f2);
            let mm = if mode == "map-fiber" {
                let (av, bv) = (constant_arg(&a.a, "a")?, constant_arg(&a.b, "b")?);
                inputs["a"] = json!(av.to_string());
                inputs["b"] = json!(bv.to_string());
                MapMode::Fiber(av, bv)
            } else {
                MapMode::Distinct
            };
            match map_values(&f, &f2, p, &mm, &options).map_err(geometry_error)? {
                MapValues::Fiber(r) => report::incidence(&r),
                MapValues::Distinct { count: n, values, envelope } => json!({
                    "count": count(n),
                    "values": values.iter().map(|(u, v)| json!([u.to_string(), v.to_string()])).collect::<Vec<_>>(),
                    "envelope": report::envelope(&envelope),
                }),
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown --mode `{other}`; expected repeated, distinct, map-fiber or map-distinct"
            )))
        }
    };
    Ok(Outcome::ok(inputs, result))
}

fn construct_cmd(a: &ConstructArgs) -> CmdResult {
    let spec = required(&a.spec, "spec")?;
    let inst = build_construction(spec)?;
    if let Some(dir) = &a.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
        for (name, ps) in [("P.csv", &inst.p), ("Q.csv", &inst.q)] {
            let path = dir.join(name);
            std::fs::write(&path, points_to_csv(ps)).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        }
    }
    let result = json!({
        "name": inst.name,
        "system": inst.system.iter().map(poly).collect::<Vec<_>>(),
        "original": inst.original.as_ref().map(poly),
        "p_size": count(inst.p.len()),
        "q_size": count(inst.q.len()),
        "predicted_count": count(inst.predicted_count),
        "note": inst.note,
        "witness": inst.witness.as_ref().map(report::witness),
        "p": report::point_list(&inst.p),
        "q": report::point_list(&inst.q),
    });
    Ok(Outcome::ok(json!({ "spec": spec }), result))
}

fn parse_at(text: &str) -> Result<Point, CliError> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = trimmed
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("--at `{text}` must look like A,B")))?;
    let a = parse_constant(a).map_err(|e| CliError::Usage(format!("--at: {e}")))?;
    let b = parse_constant(b).map_err(|e| CliError::Usage(format!("--at: {e}")))?;
    Ok(Point::new(a, b))
}

fn probe_cmd(a: &ProbeArgs) -> CmdResult {
    let f = read_poly(required(&a.poly, "poly")?, "poly")?;
    if f.is_zero() {
        return Err(CliError::Usage("--poly: the zero polynomial has no structure to probe".into()));
    }
    let mut inputs = json!({ "poly": poly(&f) });
    let trivial = trivial_cartesian_probe(&f).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut result = json!({ "trivial_witness": trivial.as_ref().map(report::witness) });
    if let Some(path) = &a.points {
        inputs["points"] = json!(path.display().to_string());
        let cands = read_points("Q", path)?;
        match degenerate_points(&f, &cands) {
            Ok(deg) => result["degenerate"] = report::point_list(&deg),
            Err(e) => return nullstellensatz_error(e, inputs),
        }
    }
    match (&a.poly2, &a.at) {
        (Some(t2), Some(at)) => {
            let f2 = read_poly(t2, "poly2")?;
            let q = parse_at(at)?;
            inputs["poly2"] = poly(&f2);
            inputs["at"] = report::point(&q);
            let fiber = match fiber_probe(&f, &f2, &q).map_err(geometry_error)? {
                FiberOutcome::Empty => json!({ "kind": "empty" }),
                FiberOutcome::FiniteWithBound(b) => json!({ "kind": "finite", "bound": count(b) }),
                FiberOutcome::ContainsCurve(g) => json!({ "kind": "contains-curve", "curve": poly(&g) }),
            };
            result["fiber"] = fiber;
        }
        (None, None) => {}
        _ => return Err(CliError::Usage("--poly2 and --at go together".into())),
    }
    Ok(Outcome::ok(inputs, result))
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::CartesianTest(a) => cartesian_test_cmd(a),
        Command::AlonTest(a) => alon_cmd(a),
        Command::GridWitness(a) => grid_cmd(a),
        Command::Count(a) => count_cmd(a),
        Command::Incidence(a) => incidence_cmd(a),
        Command::Partition(a) => partition_cmd(a),
        Command::Values(a) => values_cmd(a),
        Command::Construct(a) => construct_cmd(a),
        Command::Probe(a) => probe_cmd(a),
        Command::Run(_) => unreachable!("run is resolved before dispatch"),
    }
}

pub(crate) fn execute(mut cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Command::Run(r) = &cmd {
        let text = match std::fs::read_to_string(&r.config) {
            Ok(t) => t,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", r.config.display());
                return EXIT_USAGE;
            }
        };
        match ExperimentConfig::from_json(&text) {
            Ok(cfg) => cmd = cfg.command,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", r.config.display());
                return EXIT_USAGE;
            }
        }
    }
    let name = cmd.name();
    let common = cmd.common_mut().map(|c| c.clone()).unwrap_or_default();
    if common.explain {
        let _ = write!(out, "{}", explain::text(name));
        return EXIT_OK;
    }
    if let Some(path) = &common.save_config {
        let mut stored = cmd.clone();
        if let Some(c) = stored.common_mut() {
            c.save_config = None;
        }
        let cfg = ExperimentConfig { schema: report::SCHEMA, command: stored };
        if let Err(e) = std::fs::write(path, cfg.to_json()) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    let started = Instant::now();
    let outcome = match dispatch(&cmd) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let status = if outcome.status_ok { "success" } else { "failure" };
    let mut doc = report::document(name, status, outcome.inputs, outcome.result);
    if common.timing {
        doc["timing_ms"] = json!(started.elapsed().as_secs_f64() * 1000.0);
    }
    let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    if outcome.status_ok {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("cartesian").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = execute(cli.command, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn config_round_trip() {
        let cli = Cli::try_parse_from(["cartesian", "count", "--poly", "x*s-y+t", "--construct", "elekes:2,2"]).unwrap();
        let cfg = ExperimentConfig { schema: report::SCHEMA, command: cli.command };
        assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg);
        let nested = r#"{"schema":1,"command":"run","config":"x.json"}"#;
        assert!(ExperimentConfig::from_json(nested).is_err());
        assert!(ExperimentConfig::from_json(r#"{"schema":9,"command":"count"}"#).is_err());
    }

    #[test]
    fn constructions_parse() {
        assert_eq!(build_construction("elekes:3,3").ok().unwrap().predicted_count, 45);
        assert_eq!(build_construction("valtr:2").ok().unwrap().predicted_count, 30);
        for bad in ["elekes", "elekes:3", "elekes:0,2", "valtr:x", "nope:1", "diagonal:1"] {
            assert!(build_construction(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exit_codes() {
        let (code, out, _) = run_args(&["count", "--poly", "x*s-y+t", "--construct", "elekes:3,3"]);
        assert_eq!(code, EXIT_OK);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["count"], "45");
        assert_eq!(run_args(&["cartesian-test", "--poly", "x*s+y", "--g", "x", "--k", "t"]).0, EXIT_FAILURE);
        let (code, _, err) = run_args(&["cartesian-test", "--poly", "x*s+y", "--g", "x"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--k"));
        assert_eq!(run_args(&["cartesian-test", "--poly", "x s", "--g", "x", "--k", "t"]).0, EXIT_USAGE);
        let (code, out, _) = run_args(&["partition", "--explain"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("partition:"));
    }

    #[test]
    fn budget_guard_is_usage_error() {
        let (code, _, err) = run_args(&["incidence", "--construct", "elekes:4,4", "--s", "3", "--t", "3", "--budget", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--budget"), "{err}");
    }
}
