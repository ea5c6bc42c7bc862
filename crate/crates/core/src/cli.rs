//! Orchestration behind the `caustic` binary: configuration, the full
//! pipeline, and the JSON / CSV / SVG artifacts it writes.
//!
//! Exit codes: 0 success, 1 other failure, 2 bad arguments, 3 genericity,
//! 4 elimination, 5 count mismatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::eliminate::{implicitize, infinity_profile, ElimConfig, ElimError, ImplicitCurve, InfinityPoint, Order};
use crate::invariants::{assemble_report, expected_invariants, InvariantReport};
use crate::numeric::C64;
use crate::poly::{parse_rational, PolyError, Rational};
use crate::scene::{figure1_pair, pair_to_quadruple, AffineMap, AffinePair, GsdsProblem, PlaneCurve, QuadSampler, SampleConfig, SceneError, XY};
use crate::singular::{count_cusps_direct, cusp_preimages, solve_unchecked, CuspConfig, SolveConfig, SolveReport};
use crate::trace::{count_real_cusps, real_trace, RealTrace, TraceConfig, TraceError, Window};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Args(String),
    #[error("genericity: {0}")]
    Genericity(SceneError),
    #[error("elimination: {0}")]
    Elimination(ElimError),
    #[error("count mismatch: failed checks {0:?}")]
    CountMismatch(Vec<String>),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Args(_) => 2,
            CliError::Genericity(_) => 3,
            CliError::Elimination(_) => 4,
            CliError::CountMismatch(_) => 5,
            CliError::Trace(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<SceneError> for CliError {
    fn from(e: SceneError) -> Self {
        match e {
            SceneError::CurveChecks(_) | SceneError::RetryLimit { .. } | SceneError::NotGeneric(_) => CliError::Genericity(e),
            other => CliError::Args(other.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Args(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    /// Generic quadruple drawn from the seed.
    QuadrupleSeed,
    /// `(G(X), H(Y))` projected by the plain sum.
    AffinePair { pair: AffinePair },
}

/// Everything a run depends on; embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub x: String,
    pub y: String,
    pub mode: Mode,
    pub seed: u64,
    #[serde(serialize_with = "crate::json::ser_f64")]
    pub tol_dedup: f64,
    #[serde(serialize_with = "crate::json::ser_f64")]
    pub tol_residual: f64,
    pub starts_factor: usize,
    /// Fresh quadruples tried after an elimination failure.
    pub elim_retries: u32,
    pub max_terms: usize,
    pub max_bits: u64,
    pub resolution: usize,
    pub window: Option<Window>,
}

impl RunConfig {
    pub fn new(x: &str, y: &str) -> RunConfig {
        RunConfig {
            x: x.trim().to_string(),
            y: y.trim().to_string(),
            mode: Mode::QuadrupleSeed,
            seed: 7,
            tol_dedup: 1e-8,
            tol_residual: 1e-8,
            starts_factor: 50,
            elim_retries: 3,
            max_terms: ElimConfig::default().max_terms,
            max_bits: ElimConfig::default().max_bits,
            resolution: 512,
            window: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [self.tol_dedup, self.tol_residual].iter().all(|t| *t > 0.0 && t.is_finite());
        if !positive || self.starts_factor == 0 || self.resolution < 2 || self.max_terms == 0 || self.max_bits == 0 {
            return Err(CliError::Args("tolerances, budgets and resolution must be positive".into()));
        }
        Ok(())
    }

    pub fn solve_config(&self) -> SolveConfig {
        SolveConfig { tol_dedup: self.tol_dedup, tol_residual: self.tol_residual, starts_factor: self.starts_factor, seed: self.seed, ..SolveConfig::default() }
    }

    pub fn cusp_config(&self) -> CuspConfig {
        CuspConfig { tol_dedup: self.tol_dedup, starts_factor: self.starts_factor, seed: self.seed, ..CuspConfig::default() }
    }

    pub fn elim_config(&self) -> ElimConfig {
        ElimConfig { order: Order::Both, max_terms: self.max_terms, max_bits: self.max_bits, seed: self.seed, ..ElimConfig::default() }
    }

    fn curves(&self) -> Result<(PlaneCurve, PlaneCurve), CliError> {
        Ok((PlaneCurve::parse(&self.x, XY)?, PlaneCurve::parse(&self.y, XY)?))
    }
}

/// A validated instance together with its eliminated curve.
pub struct Prepared {
    pub problem: GsdsProblem,
    pub curve: ImplicitCurve,
    /// Elimination failures that forced a resample.
    pub elim_failures: Vec<String>,
}

/// Builds the instance and eliminates. In seeded mode an elimination failure
/// other than the coefficient budget draws the next quadruple of the stream.
pub fn prepare(config: &RunConfig) -> Result<Prepared, CliError> {
    config.validate()?;
    let (x, y) = config.curves()?;
    let elim = config.elim_config();
    match &config.mode {
        Mode::AffinePair { pair } => {
            let problem = pair_to_quadruple(&x, &y, pair)?;
            let curve = implicitize(&problem, &elim).map_err(CliError::Elimination)?;
            Ok(Prepared { problem, curve, elim_failures: vec![] })
        }
        Mode::QuadrupleSeed => {
            let mut sampler = QuadSampler::new(&x, &y, config.seed, SampleConfig::default())?;
            let mut failures = Vec::new();
            loop {
                let problem = sampler.next_problem()?;
                match implicitize(&problem, &elim) {
                    Ok(curve) => return Ok(Prepared { problem, curve, elim_failures: failures }),
                    Err(e @ ElimError::Budget { .. }) => return Err(CliError::Elimination(e)),
                    Err(e) if failures.len() as u32 >= config.elim_retries => return Err(CliError::Elimination(e)),
                    Err(e) => failures.push(e.to_string()),
                }
            }
        }
    }
}

pub struct RunOutcome {
    pub prepared: Prepared,
    pub profile: Vec<InfinityPoint>,
    pub solve: SolveReport,
    pub cusps_direct: usize,
    pub report: InvariantReport,
}

/// Start points for the singular-point search: images of the cusp
/// preimages on the critical curve.
pub fn cusp_seeds(problem: &GsdsProblem, config: &CuspConfig) -> (usize, Vec<[C64; 2]>) {
    let pre = cusp_preimages(problem, config);
    (pre.len(), pre.iter().map(|c| problem.project(c)).collect())
}

/// Scene, elimination, singular points and invariants. Count failures are
/// recorded in the report rather than raised.
pub fn run_pipeline(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let prepared = prepare(config)?;
    let problem = &prepared.problem;
    let profile = infinity_profile(&prepared.curve, problem).map_err(CliError::Elimination)?;
    let (cusps_direct, seeds) = cusp_seeds(problem, &config.cusp_config());
    let solve = solve_unchecked(&prepared.curve.p, &config.solve_config(), Some(problem.degrees()), &seeds);
    let mut report = assemble_report(problem, Some(&prepared.curve), Some(&profile), Some(&solve), Some(cusps_direct as i64));
    for f in &prepared.elim_failures {
        report.notes.push(format!("resampled after elimination failure: {f}"));
    }
    Ok(RunOutcome { prepared, profile, solve, cusps_direct, report })
}

fn problem_json(problem: &GsdsProblem) -> Value {
    json!({
        "x": problem.x.poly().to_string(),
        "y": problem.y.poly().to_string(),
        "quadruple": problem.quad,
        "origin": problem.origin,
        "genericity": problem.genericity_log,
    })
}

impl RunOutcome {
    /// The top-level report: config, instance and invariant comparison.
    pub fn to_json(&self, config: &RunConfig) -> Value {
        json!({
            "schema": crate::json::SCHEMA,
            "config": config,
            "problem": problem_json(&self.prepared.problem),
            "infinity_profile": self.profile,
            "report": self.report.to_json(),
        })
    }

    fn write(&self, config: &RunConfig, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("curve.json"), crate::json::to_string(&self.prepared.curve.to_json()))?;
        std::fs::write(dir.join("solve.json"), crate::json::to_string(&self.solve.to_json()))?;
        std::fs::write(dir.join("report.json"), crate::json::to_string(&self.to_json(config)))?;
        Ok(())
    }
}

/// Report emitted when elimination exceeds the coefficient budget: the
/// closed forms and the cusp count on the critical curve, which needs no
/// elimination.
pub fn budget_fallback(config: &RunConfig, error: &ElimError) -> Result<Value, CliError> {
    let (x, y) = config.curves()?;
    let problem = match &config.mode {
        Mode::AffinePair { pair } => pair_to_quadruple(&x, &y, pair)?,
        Mode::QuadrupleSeed => QuadSampler::new(&x, &y, config.seed, SampleConfig::default())?.next_problem()?,
    };
    let (d1, d2) = problem.degrees();
    let expected = expected_invariants(d1, d2).map_err(|e| CliError::Args(e.to_string()))?;
    let direct = count_cusps_direct(&problem, &config.cusp_config());
    Ok(json!({
        "schema": crate::json::SCHEMA,
        "config": config,
        "status": "out of desk-scale reach",
        "reason": error.to_string(),
        "degrees": [d1, d2],
        "expected": expected,
        "computed": { "cusps_direct": direct },
        "cusps_direct_pass": direct as i64 == expected.cusps,
        "verified": "cusp count on the critical curve only; degree, nodes and the infinity profile need the eliminated curve",
    }))
}

/// Real-picture pipeline for one instance.
pub fn trace_instance(config: &RunConfig) -> Result<(RunOutcome, RealTrace), CliError> {
    let outcome = run_pipeline(config)?;
    let tc = TraceConfig { resolution: config.resolution, window: config.window, curve_box: None };
    let tr = real_trace(&outcome.prepared.problem, Some(&outcome.prepared.curve), Some(&outcome.solve), &tc)?;
    Ok((outcome, tr))
}

pub const FIGURE1_CURVES: [(&str, &str); 2] = [("circle", "x^2 + y^2 - 1"), ("hyperbola", "x*y - 1")];

/// Figure-1 configuration for one of [`FIGURE1_CURVES`]: the same curve for
/// both `X` and `Y`, separated by the printed affine pair.
pub fn figure1_config(curve: &str, resolution: usize) -> RunConfig {
    RunConfig { mode: Mode::AffinePair { pair: figure1_pair() }, resolution, ..RunConfig::new(curve, curve) }
}

#[derive(Debug, Clone, Serialize)]
pub struct Figure1Panel {
    pub name: String,
    pub file: Option<String>,
    pub degree: u32,
    pub cusps: usize,
    pub nodes: usize,
    pub real_cusps: usize,
    #[serde(serialize_with = "crate::json::ser_f64")]
    pub agreement: f64,
    #[serde(skip)]
    pub svg: String,
}

/// Both panels of the figure.
pub fn figure1(resolution: usize) -> Result<Vec<Figure1Panel>, CliError> {
    FIGURE1_CURVES
        .iter()
        .map(|(name, text)| {
            let (outcome, tr) = trace_instance(&figure1_config(text, resolution))?;
            Ok(Figure1Panel {
                name: name.to_string(),
                file: None,
                degree: outcome.prepared.curve.degree,
                cusps: outcome.solve.n_cusps,
                nodes: outcome.solve.n_nodes,
                real_cusps: count_real_cusps(&outcome.solve),
                agreement: tr.agreement(3.0 * tr.cell(resolution)),
                svg: tr.to_svg(),
            })
        })
        .collect()
}

// ---- argument parsing ------------------------------------------------------

#[derive(Debug, Parser)]
#[command(name = "caustic", version, about = "Symmetry defect sets (Wigner caustics) of pairs of plane curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-8, allow_negative_numbers = true)]
    pub tol_dedup: f64,
    #[arg(long, global = true, default_value_t = 1e-8, allow_negative_numbers = true)]
    pub tol_residual: f64,
    #[arg(long, global = true, default_value_t = 50)]
    pub starts_factor: usize,
    /// Display window `u0,u1,v0,v1`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, global = true, default_value_t = 512)]
    pub resolution: usize,
    /// Output directory; reports go to stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Curve `X`, as text or a file path. A file with two lines gives both curves.
    pub x: String,
    /// Curve `Y`; defaults to `X`.
    pub y: Option<String>,
    /// Explicit affine pair `G;H`, each six numbers `m11,m12,t1,m21,m22,t2`,
    /// instead of a seeded quadruple.
    #[arg(long)]
    pub pair: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form invariants for degrees (d1, d2).
    Invariants { d1: u32, d2: u32 },
    /// Full pipeline with the invariant report.
    Run(CurveArgs),
    /// Circle and hyperbola panels under the fixed affine pair, as SVG.
    Figure1,
    /// Real caustic: chord midpoints, contour and real cusps.
    Trace(CurveArgs),
    /// The implicit equation of the caustic.
    Eliminate(CurveArgs),
}

fn parse_pair(s: &str) -> Result<AffinePair, CliError> {
    let maps: Vec<AffineMap> = s
        .split(';')
        .map(|m| {
            let v: Vec<Rational> = m.split(',').map(parse_rational).collect::<Result<_, _>>()?;
            let v: [Rational; 6] = v.try_into().map_err(|_| CliError::Args(format!("affine map needs six numbers: `{m}`")))?;
            Ok(AffineMap::from_row_major(&v))
        })
        .collect::<Result<_, CliError>>()?;
    match <[AffineMap; 2]>::try_from(maps) {
        Ok([g, h]) => Ok(AffinePair { g, h }),
        Err(_) => Err(CliError::Args("--pair needs two maps separated by `;`".into())),
    }
}

/// A curve argument is read as a file when such a file exists.
fn curve_texts(args: &CurveArgs) -> Result<(String, String), CliError> {
    let read = |s: &str| -> Result<Vec<String>, CliError> {
        if Path::new(s).is_file() {
            let text = std::fs::read_to_string(s)?;
            Ok(text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(String::from).collect())
        } else {
            Ok(vec![s.to_string()])
        }
    };
    let xs = read(&args.x)?;
    let ys = match &args.y {
        Some(y) => read(y)?,
        None => vec![],
    };
    match (&xs[..], &ys[..]) {
        ([x], [y]) | ([x, y], []) => Ok((x.clone(), y.clone())),
        ([x], []) => Ok((x.clone(), x.clone())),
        _ => Err(CliError::Args("expected two curves: X and Y, or one file with two lines".into())),
    }
}

impl Options {
    fn config(&self, curves: &CurveArgs) -> Result<RunConfig, CliError> {
        let (x, y) = curve_texts(curves)?;
        let window = match &self.window {
            Some(w) => Some(Window::parse(w).ok_or_else(|| CliError::Args(format!("bad window `{w}`")))?),
            None => None,
        };
        let mode = match &curves.pair {
            Some(p) => Mode::AffinePair { pair: parse_pair(p)? },
            None => Mode::QuadrupleSeed,
        };
        let config = RunConfig {
            mode,
            seed: self.seed,
            tol_dedup: self.tol_dedup,
            tol_residual: self.tol_residual,
            starts_factor: self.starts_factor,
            resolution: self.resolution,
            window,
            ..RunConfig::new(&x, &y)
        };
        config.validate()?;
        Ok(config)
    }
}

fn emit(out: &mut dyn Write, dir: Option<&Path>, file: &str, body: &str) -> Result<(), CliError> {
    match dir {
        Some(d) => {
            std::fs::create_dir_all(d)?;
            std::fs::write(d.join(file), body)?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

/// Runs one parsed command, writing reports to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let o = &cli.options;
    match &cli.command {
        Command::Invariants { d1, d2 } => {
            let e = expected_invariants(*d1, *d2).map_err(|e| CliError::Args(e.to_string()))?;
            out.write_all(crate::json::to_string(&e).as_bytes())?;
        }
        Command::Run(args) => {
            let config = o.config(args)?;
            let outcome = match run_pipeline(&config) {
                Err(CliError::Elimination(e @ ElimError::Budget { .. })) => {
                    let fallback = budget_fallback(&config, &e)?;
                    emit(out, o.out.as_deref(), "report.json", &crate::json::to_string(&fallback))?;
                    return Err(CliError::Elimination(e));
                }
                r => r?,
            };
            if let Some(dir) = &o.out {
                outcome.write(&config, dir)?;
            }
            out.write_all(crate::json::to_string(&outcome.to_json(&config)).as_bytes())?;
            if !outcome.report.pass {
                return Err(CliError::CountMismatch(outcome.report.failed().into_iter().map(String::from).collect()));
            }
        }
        Command::Eliminate(args) => {
            let config = o.config(args)?;
            let prepared = prepare(&config)?;
            let v = json!({ "config": config, "problem": problem_json(&prepared.problem), "curve": prepared.curve.to_json() });
            emit(out, o.out.as_deref(), "curve.json", &crate::json::to_string(&v))?;
        }
        Command::Trace(args) => {
            let config = o.config(args)?;
            let (_, tr) = trace_instance(&config)?;
            match o.format.unwrap_or(Format::Svg) {
                Format::Svg => emit(out, o.out.as_deref(), "trace.svg", &tr.to_svg())?,
                Format::Csv => {
                    emit(out, o.out.as_deref(), "midpoints.csv", &tr.midpoints_csv())?;
                    if let Some(dir) = &o.out {
                        std::fs::write(dir.join("contour.csv"), tr.contour_csv())?;
                        std::fs::write(dir.join("cusps.csv"), crate::trace::points_csv(&tr.real_cusps))?;
                    }
                }
                Format::Json => {
                    let v = json!({
                        "schema": crate::json::SCHEMA,
                        "config": config,
                        "window": tr.window,
                        "real_cusps": tr.real_cusps.iter().map(|p| p.map(crate::json::float)).collect::<Vec<_>>(),
                        "midpoints": tr.midpoint_samples.len(),
                        "polylines": tr.contour_polylines.len(),
                        "agreement": crate::json::float(tr.agreement(3.0 * tr.cell(config.resolution))),
                    });
                    emit(out, o.out.as_deref(), "trace.json", &crate::json::to_string(&v))?;
                }
            }
        }
        Command::Figure1 => {
            if o.resolution < 2 {
                return Err(CliError::Args("resolution must be at least 2".into()));
            }
            let dir = o.out.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir)?;
            let mut panels = figure1(o.resolution)?;
            for p in &mut panels {
                let file = format!("gsds_{}.svg", p.name);
                std::fs::write(dir.join(&file), &p.svg)?;
                p.file = Some(dir.join(file).display().to_string());
            }
            let v = json!({ "schema": crate::json::SCHEMA, "resolution": o.resolution, "panels": panels });
            out.write_all(crate::json::to_string(&v).as_bytes())?;
        }
    }
    Ok(())
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("caustic").chain(args.iter().copied())).unwrap()
    }

    fn exec(args: &[&str]) -> (Result<(), CliError>, String) {
        let mut buf = Vec::new();
        let r = execute(&parse(args), &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn invariants_command() {
        let (r, s) = exec(&["invariants", "2", "3"]);
        r.unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v, json!({"degree": 18, "cusps": 36, "nodes": 60, "genus": 7, "chi_C": -30, "chi_Cprime": -90}));
        let (r, _) = exec(&["invariants", "1", "2"]);
        assert_eq!(r.unwrap_err().code(), 2);
    }

    #[test]
    fn argument_errors() {
        assert_eq!(main_with_args(["caustic", "bogus"]), 2);
        let (r, _) = exec(&["run", "x^2 + y^2 - 1", "--tol-dedup", "-1"]);
        assert_eq!(r.unwrap_err().code(), 2);
        let (r, _) = exec(&["run", "x + y", "x^2 + y^2 - 1"]);
        assert_eq!(r.unwrap_err().code(), 2);
        let (r, _) = exec(&["trace", "x^2 + y^2 - 1", "--window", "0,0,1,2"]);
        assert_eq!(r.unwrap_err().code(), 2);
        assert!(parse_pair("1,0,0,0,1,0;1,0,0,0,1").is_err());
        let p = parse_pair("1,0,0,0,1,0;1.1,0.1,0,-0.2,0.9,0").unwrap();
        assert_eq!(p, figure1_pair());
    }

    #[test]
    fn cuspidal_cubic_names_g1() {
        let (r, _) = exec(&["run", "y^2 - x^3", "x^2 + y^2 - 1"]);
        let e = r.unwrap_err();
        assert_eq!(e.code(), 3);
        assert!(e.to_string().contains("G1"), "{e}");
    }

    #[test]
    fn curve_files() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("pair.txt");
        std::fs::write(&f, "# X then Y\nx^2 + y^2 - 1\n\nx*y - 1\n").unwrap();
        let args = CurveArgs { x: f.display().to_string(), y: None, pair: None };
        assert_eq!(curve_texts(&args).unwrap(), ("x^2 + y^2 - 1".into(), "x*y - 1".into()));
    }
}
