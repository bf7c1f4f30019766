//! Command-line front end: JSON fixtures in, JSON or CSV reports out.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a verdict that failed its
//! expectation. Output is byte-identical for equal arguments and seed,
//! independent of `--threads`.

mod io;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Error;
use crate::fourier::{Decomposition, QuadratureSpec};
use crate::polytope::{GeneralizedPolytope, Hyperplane};
use crate::quadric::{
    check_hyperplane_condition, check_inner_point_condition, classify, line_free, parameterize, Quadric,
    QuadricClassification, RationalParameterization, SampleMode, SamplePlan, DEFAULT_SIGMA1_TOL,
};
use crate::verify::{
    compare_on_surface, generate_pairs, identity_experiment, mirror_counterexample, modulus_invariance,
    CompareOptions, ComparisonReport, IdentityCase, Verdict, DEFAULT_MAX_FREQUENCY, DEFAULT_THRESHOLD, EVIDENCE_NOTE,
};

pub use io::{float, load_polytope, load_quadric, parse_vec, to_json, POLYTOPE_SCHEMA, QUADRIC_SCHEMA};
use io::{columns, Table};

/// Radius of the default evaluation sphere.
const DEFAULT_RADIUS: f64 = 5.0;
const DEFAULT_BOX: (f64, f64) = (0.2, 0.8);
const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Schema(String, &'static str),
    #[error(transparent)]
    Library(#[from] Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "polyfourier",
    version,
    about = "Exact Fourier transforms of polytopes and uniqueness experiments on quadric surfaces",
    after_help = concat!(
        "Input schemas:\n  polytope JSON: {\"pieces\": [{\"vertices\": [[x1, ..., xn], ...]}, ...]}\n",
        "  quadric JSON:  {\"A\": [[...], ...], \"b\": [...], \"c\": c}\n\n",
        "Exit codes: 0 success, 1 usage/input error, 2 verdict failure."
    )
)]
pub struct Cli {
    /// Worker threads for batch evaluation (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate or compare Fourier transforms.
    #[command(subcommand)]
    Ft(FtCommand),
    /// Classify, parameterize and check quadric surfaces.
    #[command(subcommand)]
    Quadric(QuadricCommand),
    /// Uniqueness experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Subcommand, Debug)]
enum FtCommand {
    /// Transform at explicit frequencies or along a quadric surface.
    Eval(FtEval),
    /// Compare two transforms along a quadric surface.
    Compare(FtCompare),
}

#[derive(Subcommand, Debug)]
enum QuadricCommand {
    /// Normal-form case, affine reduction and line-freeness.
    Classify(QuadricIo),
    /// Sample the rational parameterization.
    Param(QuadricSampled),
    /// Check the hyperplane and inner-point conditions.
    Check(QuadricSampled),
}

#[derive(Subcommand, Debug)]
enum ExperimentCommand {
    /// Verdicts for equal and perturbed polytope pairs against expectations.
    Identity(Identity),
    /// Mirror counterexample: equal transforms on a hyperplane, different sets.
    Mirror(Mirror),
    /// |F| under translation and point reflection.
    Modulus(Modulus),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuadratureKind {
    Mc,
    Duffy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Equal,
    Different,
}

fn positive(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug)]
struct OutArg {
    /// Output file; `.csv` selects CSV where a sample table exists, anything else JSON. Default: JSON on stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SeedArg {
    /// Seed for every random choice.
    #[arg(long, env = "POLYFOURIER_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct PlanArgs {
    /// Parameter interval "LO,HI"; give once for all axes or once per axis. Default 0.2,0.8.
    #[arg(long = "box", value_name = "LO,HI")]
    bounds: Vec<String>,
    /// Grid points per axis, endpoints included.
    #[arg(long, conflicts_with = "random")]
    grid: Option<usize>,
    /// Uniform random parameter samples (default 100).
    #[arg(long)]
    random: Option<usize>,
    /// Samples with |σ₁| at or below this are skipped.
    #[arg(long, default_value_t = DEFAULT_SIGMA1_TOL, value_parser = positive)]
    sigma1_tol: f64,
}

#[derive(Args, Debug)]
struct FtEval {
    #[arg(long)]
    polytope: PathBuf,
    /// Frequency "s1,...,sn"; repeatable.
    #[arg(long = "s", value_name = "S1,..,SN")]
    s: Vec<String>,
    /// Evaluate along this quadric instead of at explicit frequencies.
    #[arg(long, conflicts_with = "s")]
    quadric: Option<PathBuf>,
    #[command(flatten)]
    plan: PlanArgs,
    #[command(flatten)]
    seed: SeedArg,
    /// Also report a quadrature estimate.
    #[arg(long, value_enum)]
    quadrature: Option<QuadratureKind>,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Duffy-Gauss order per axis.
    #[arg(long, default_value_t = 20)]
    order: usize,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct FtCompare {
    #[arg(long)]
    polytope: PathBuf,
    #[arg(long)]
    polytope2: PathBuf,
    /// Surface; default the radius-5 sphere about the origin.
    #[arg(long)]
    quadric: Option<PathBuf>,
    #[command(flatten)]
    plan: PlanArgs,
    #[command(flatten)]
    seed: SeedArg,
    /// Relative threshold for "indistinguishable".
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = positive)]
    threshold: f64,
    /// Samples with |s| above this are dropped.
    #[arg(long, default_value_t = DEFAULT_MAX_FREQUENCY, value_parser = positive)]
    max_frequency: f64,
    /// Exit 2 unless the verdict matches.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct QuadricIo {
    #[arg(long)]
    quadric: PathBuf,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct QuadricSampled {
    #[arg(long)]
    quadric: PathBuf,
    #[command(flatten)]
    plan: PlanArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct Identity {
    /// Ambient dimension of generated pairs.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=4))]
    dim: u8,
    /// Generated pairs per kind (equal and perturbed).
    #[arg(long, default_value_t = 20)]
    pairs: usize,
    /// Run a single given pair instead of generated ones.
    #[arg(long, requires = "polytope2")]
    polytope: Option<PathBuf>,
    #[arg(long, requires = "polytope")]
    polytope2: Option<PathBuf>,
    /// Expectation for the given pair.
    #[arg(long, value_enum, default_value = "equal", requires = "polytope")]
    expect: Expect,
    /// Surface; default the radius-5 sphere about the origin.
    #[arg(long)]
    quadric: Option<PathBuf>,
    #[command(flatten)]
    plan: PlanArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = DEFAULT_THRESHOLD, value_parser = positive)]
    threshold: f64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct Mirror {
    #[arg(long)]
    polytope: PathBuf,
    /// Hyperplane normal "a1,...,an".
    #[arg(long)]
    normal: String,
    /// Hyperplane offset: a·x = offset.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    offset: f64,
    /// Samples on and off the hyperplane, each.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct Modulus {
    #[arg(long)]
    polytope: PathBuf,
    /// Translation "w1,...,wn".
    #[arg(long, allow_hyphen_values = true)]
    shift: String,
    /// Surface; default the radius-5 sphere about the origin.
    #[arg(long)]
    quadric: Option<PathBuf>,
    #[command(flatten)]
    plan: PlanArgs,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    out: OutArg,
}

/// A finished command: JSON always, CSV when the report is a sample table.
struct Report {
    json: Value,
    table: Option<Table>,
    pass: bool,
}

impl Report {
    fn ok(json: Value) -> Self {
        Self { json, table: None, pass: true }
    }
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            eprintln!("\n{POLYTOPE_SCHEMA}\n{QUADRIC_SCHEMA}");
            return 1;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.map_or(0, usize::from)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return 1;
        }
    };
    let out = output_path(&cli.command).map(Path::to_path_buf);
    match pool.install(|| dispatch(&cli.command)).and_then(|r| emit(&r, out.as_deref()).map(|_| r.pass)) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            match &e {
                CliError::Schema(_, schema) => eprintln!("{schema}"),
                CliError::Usage(_) => eprintln!("{POLYTOPE_SCHEMA}\n{QUADRIC_SCHEMA}"),
                _ => {}
            }
            1
        }
    }
}

fn output_path(cmd: &Command) -> Option<&Path> {
    let out = match cmd {
        Command::Ft(FtCommand::Eval(a)) => &a.out,
        Command::Ft(FtCommand::Compare(a)) => &a.out,
        Command::Quadric(QuadricCommand::Classify(a)) => &a.out,
        Command::Quadric(QuadricCommand::Param(a) | QuadricCommand::Check(a)) => &a.out,
        Command::Experiment(ExperimentCommand::Identity(a)) => &a.out,
        Command::Experiment(ExperimentCommand::Mirror(a)) => &a.out,
        Command::Experiment(ExperimentCommand::Modulus(a)) => &a.out,
    };
    out.out.as_deref()
}

fn emit(report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    let Some(path) = out else {
        print!("{}", to_json(&report.json));
        return Ok(());
    };
    let text = if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        match &report.table {
            Some(t) => t.to_csv(),
            None => return Err(CliError::Usage("this command has no CSV form; use a .json output".into())),
        }
    } else {
        to_json(&report.json)
    };
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Ft(FtCommand::Eval(a)) => ft_eval(a),
        Command::Ft(FtCommand::Compare(a)) => ft_compare(a),
        Command::Quadric(QuadricCommand::Classify(a)) => quadric_classify(a),
        Command::Quadric(QuadricCommand::Param(a)) => quadric_param(a),
        Command::Quadric(QuadricCommand::Check(a)) => quadric_check(a),
        Command::Experiment(ExperimentCommand::Identity(a)) => experiment_identity(a),
        Command::Experiment(ExperimentCommand::Mirror(a)) => experiment_mirror(a),
        Command::Experiment(ExperimentCommand::Modulus(a)) => experiment_modulus(a),
    }
}

fn vec_arg(name: &str, text: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let v = parse_vec(text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))?;
    if v.len() != n {
        return Err(CliError::Usage(format!("--{name}: expected {n} components, got {}", v.len())));
    }
    Ok(v)
}

fn build_plan(args: &PlanArgs, seed: u64, param_dim: usize) -> Result<SamplePlan<f64>, CliError> {
    let parsed: Vec<(f64, f64)> = args
        .bounds
        .iter()
        .map(|b| vec_arg("box", b, 2).map(|v| (v[0], v[1])))
        .collect::<Result<_, _>>()?;
    let bounds = match parsed.len() {
        0 => vec![DEFAULT_BOX; param_dim],
        1 => vec![parsed[0]; param_dim],
        k if k == param_dim => parsed,
        k => return Err(CliError::Usage(format!("--box given {k} times for {param_dim} parameter axes"))),
    };
    let mode = match (args.grid, args.random) {
        (Some(k), _) => SampleMode::Grid(k),
        (None, Some(k)) => SampleMode::Random(k),
        (None, None) => SampleMode::Random(DEFAULT_SAMPLES),
    };
    Ok(SamplePlan::new(bounds, mode, seed)?.with_sigma1_tol(args.sigma1_tol))
}

fn surface(path: Option<&Path>, dim: usize) -> Result<QuadricClassification<f64>, CliError> {
    let q = match path {
        Some(p) => load_quadric(p)?,
        None => Quadric::sphere(&vec![0.0; dim], DEFAULT_RADIUS)?,
    };
    if q.dim() != dim {
        return Err(CliError::Input(format!("quadric lives in R^{}, polytope in R^{dim}", q.dim())));
    }
    Ok(classify(&q)?)
}

fn surface_param(cl: &QuadricClassification<f64>, tol: f64) -> Result<RationalParameterization<f64>, CliError> {
    Ok(parameterize(cl)?.with_sigma1_tol(tol))
}

fn complex_json(z: num_complex::Complex<f64>) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn ft_eval(a: &FtEval) -> Result<Report, CliError> {
    let p = load_polytope(&a.polytope)?;
    let n = p.dim();
    let spec = match a.quadrature {
        Some(QuadratureKind::Mc) => Some(QuadratureSpec::monte_carlo(a.samples, a.seed.seed)),
        Some(QuadratureKind::Duffy) => Some(QuadratureSpec::duffy_gauss(a.order)),
        None => None,
    };
    if let Some(spec) = &spec {
        spec.validate()?;
    }
    let points: Vec<(Option<Vec<f64>>, Vec<f64>)> = match &a.quadric {
        Some(path) => {
            let cl = surface(Some(path), n)?;
            let rp = surface_param(&cl, a.plan.sigma1_tol)?;
            build_plan(&a.plan, a.seed.seed, n - 1)?.admissible(&rp)?.into_iter().map(|(t, s)| (Some(t), s)).collect()
        }
        None if a.s.is_empty() => return Err(CliError::Usage("give --s or --quadric".into())),
        None => a.s.iter().map(|s| vec_arg("s", s, n).map(|v| (None, v))).collect::<Result<_, _>>()?,
    };
    let freqs: Vec<Vec<f64>> = points.iter().map(|(_, s)| s.clone()).collect();
    let d = Decomposition::generalized(&p)?;
    let exact = d.eval_many(&freqs)?;
    let approx: Option<Vec<(num_complex::Complex<f64>, f64)>> = match &spec {
        None => None,
        Some(spec) => Some(
            freqs
                .par_iter()
                .enumerate()
                .map(|(i, s)| match spec.method {
                    crate::fourier::QuadratureMethod::DuffyGauss => Ok((d.quadrature(s, spec.count), 0.0)),
                    crate::fourier::QuadratureMethod::MonteCarlo => {
                        crate::fourier::quadrature_ft_indexed(&p, s, spec, i as u64)
                    }
                })
                .collect::<Result<_, Error>>()?,
        ),
    };
    let method = match a.quadrature {
        Some(QuadratureKind::Mc) => "mc",
        Some(QuadratureKind::Duffy) => "duffy",
        None => "",
    };
    let entry = |i: usize| {
        let mut v = complex_json(exact[i]);
        if let Some(q) = &approx {
            v["quadrature"] = json!({"method": method, "re": q[i].0.re, "im": q[i].0.im, "stderr": q[i].1});
        }
        v
    };
    if a.quadric.is_none() && points.len() == 1 {
        return Ok(Report::ok(entry(0)));
    }
    let pdim = points.first().and_then(|(t, _)| t.as_ref()).map_or(0, Vec::len);
    let mut header: Vec<String> = columns("t", pdim).chain(columns("s", n)).collect();
    header.extend(["re", "im"].map(String::from));
    if approx.is_some() {
        header.extend(["qre", "qim", "stderr"].map(String::from));
    }
    let mut rows = Vec::with_capacity(points.len());
    let mut samples = Vec::with_capacity(points.len());
    for (i, (t, s)) in points.iter().enumerate() {
        let mut row: Vec<f64> = t.iter().flatten().chain(s).copied().collect();
        row.extend([exact[i].re, exact[i].im]);
        if let Some(q) = &approx {
            row.extend([q[i].0.re, q[i].0.im, q[i].1]);
        }
        rows.push(row);
        let mut e = entry(i);
        e["s"] = json!(s);
        if let Some(t) = t {
            e["t"] = json!(t);
        }
        samples.push(e);
    }
    Ok(Report { json: json!({ "samples": samples }), table: Some(Table { header, rows }), pass: true })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Indistinguishable => "indistinguishable",
        Verdict::Distinguishable => "distinguishable",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn comparison_report(r: &ComparisonReport<f64>, n: usize) -> (Value, Table) {
    let pdim = r.samples.first().and_then(|(x, _)| x.t.as_ref()).map_or(0, Vec::len);
    let mut header: Vec<String> = columns("t", pdim).chain(columns("s", n)).collect();
    header.extend(["re1", "im1", "re2", "im2", "absdiff"].map(String::from));
    let mut rows = Vec::with_capacity(r.samples.len());
    let mut samples = Vec::with_capacity(r.samples.len());
    for (x, y) in &r.samples {
        let diff = (x.value - y.value).norm();
        let mut row: Vec<f64> = x.t.iter().flatten().chain(&x.s).copied().collect();
        row.extend([x.value.re, x.value.im, y.value.re, y.value.im, diff]);
        rows.push(row);
        samples.push(json!({
            "t": x.t, "s": x.s,
            "re1": x.value.re, "im1": x.value.im, "re2": y.value.re, "im2": y.value.im, "absdiff": diff,
        }));
    }
    let mut json = json!({
        "verdict": verdict_name(r.verdict),
        "maxAbsDiff": r.max_abs_diff,
        "maxAbsValue": r.max_abs_value,
        "threshold": r.threshold,
        "floor": r.floor,
        "dropped": r.dropped,
        "conditionsCertified": r.conditions_certified,
        "conditions": {"hyperplane": r.hyperplane, "innerPoint": r.inner_point},
        "note": EVIDENCE_NOTE,
        "samples": samples,
    });
    if !r.conditions_certified {
        json["stamp"] = json!("conditions not certified");
    }
    (json, Table { header, rows })
}

fn ft_compare(a: &FtCompare) -> Result<Report, CliError> {
    let p1 = load_polytope(&a.polytope)?;
    let p2 = load_polytope(&a.polytope2)?;
    let n = p1.dim();
    let cl = surface(a.quadric.as_deref(), n)?;
    let rp = surface_param(&cl, a.plan.sigma1_tol)?;
    let plan = build_plan(&a.plan, a.seed.seed, n - 1)?;
    let opts = CompareOptions { max_frequency: a.max_frequency, ..CompareOptions::default().with_threshold(a.threshold) };
    let r = compare_on_surface(&p1, &p2, &rp, &plan, &opts)?;
    let pass = match a.expect {
        None => true,
        Some(Expect::Equal) => r.verdict == Verdict::Indistinguishable,
        Some(Expect::Different) => r.verdict == Verdict::Distinguishable,
    };
    let (json, table) = comparison_report(&r, n);
    Ok(Report { json, table: Some(table), pass })
}

fn classification_json(cl: &QuadricClassification<f64>, line_free: bool) -> Value {
    json!({
        "case": cl.case.number(),
        "epsilons": cl.epsilons,
        "cPrime": cl.c_prime,
        "T": cl.t.to_rows(),
        "v": cl.v,
        "lineFree": line_free,
        "pointCount": cl.point_count,
    })
}

fn quadric_classify(a: &QuadricIo) -> Result<Report, CliError> {
    let cl = classify(&load_quadric(&a.quadric)?)?;
    let lf = line_free(&cl)?;
    Ok(Report::ok(classification_json(&cl, lf)))
}

fn quadric_param(a: &QuadricSampled) -> Result<Report, CliError> {
    let q = load_quadric(&a.quadric)?;
    let n = q.dim();
    let cl = classify(&q)?;
    let rp = surface_param(&cl, a.plan.sigma1_tol)?;
    let pts = build_plan(&a.plan, a.seed.seed, n - 1)?.admissible(&rp)?;
    let mut header: Vec<String> = columns("t", n - 1).chain(columns("s", n)).collect();
    header.push("residual".into());
    let mut rows = Vec::with_capacity(pts.len());
    let mut samples = Vec::with_capacity(pts.len());
    let mut max_res = 0.0f64;
    for (t, s) in &pts {
        let r = q.residual(s);
        max_res = max_res.max(r.abs());
        rows.push(t.iter().chain(s).copied().chain([r]).collect());
        samples.push(json!({"t": t, "s": s, "residual": r}));
    }
    let json = json!({"case": cl.case.number(), "maxAbsResidual": max_res, "samples": samples});
    Ok(Report { json, table: Some(Table { header, rows }), pass: true })
}

fn quadric_check(a: &QuadricSampled) -> Result<Report, CliError> {
    let q = load_quadric(&a.quadric)?;
    let n = q.dim();
    let cl = classify(&q)?;
    let lf = line_free(&cl)?;
    let rp = surface_param(&cl, a.plan.sigma1_tol)?;
    let plan = build_plan(&a.plan, a.seed.seed, n - 1)?;
    let hc = check_hyperplane_condition(&rp, &plan)?;
    let ic = check_inner_point_condition(&rp, &plan)?;
    let certified = hc.holds && ic.holds;
    let json = json!({
        "case": cl.case.number(),
        "lineFree": lf,
        "hyperplane": hc,
        "innerPoint": ic,
        "certified": certified,
    });
    Ok(Report { json, table: None, pass: certified })
}

fn experiment_identity(a: &Identity) -> Result<Report, CliError> {
    let suite: Vec<IdentityCase<f64>> = match (&a.polytope, &a.polytope2) {
        (Some(p1), Some(p2)) => vec![IdentityCase {
            label: format!("{} vs {}", p1.display(), p2.display()),
            p1: load_polytope(p1)?,
            p2: load_polytope(p2)?,
            expect_equal: a.expect == Expect::Equal,
        }],
        _ => {
            let n = usize::from(a.dim);
            let mut suite = Vec::with_capacity(2 * a.pairs);
            for (kind, equal) in [("equal", true), ("perturbed", false)] {
                for (i, g) in generate_pairs(n, a.pairs, equal, a.seed.seed)?.into_iter().enumerate() {
                    suite.push(IdentityCase { label: format!("{kind}-{i}"), p1: g.p1, p2: g.p2, expect_equal: equal });
                }
            }
            suite
        }
    };
    let Some(first) = suite.first() else {
        return Err(CliError::Usage("--pairs must be positive".into()));
    };
    let n = first.p1.dim();
    let cl = surface(a.quadric.as_deref(), n)?;
    let rp = surface_param(&cl, a.plan.sigma1_tol)?;
    let plan = build_plan(&a.plan, a.seed.seed, n - 1)?;
    let summary = identity_experiment(&suite, &rp, &plan, &CompareOptions::default().with_threshold(a.threshold))?;
    let pass = summary.pass();
    let mut json = serde_json::to_value(&summary).expect("summary serializes");
    json["pass"] = json!(pass);
    Ok(Report { json, table: None, pass })
}

fn experiment_mirror(a: &Mirror) -> Result<Report, CliError> {
    let p: GeneralizedPolytope<f64> = load_polytope(&a.polytope)?;
    let h = Hyperplane::new(vec_arg("normal", &a.normal, p.dim())?, a.offset)?;
    let r = mirror_counterexample(&p, &h, a.samples, a.samples, a.seed.seed)?;
    let pass = r.pass;
    Ok(Report { json: serde_json::to_value(&r).expect("report serializes"), table: None, pass })
}

fn experiment_modulus(a: &Modulus) -> Result<Report, CliError> {
    let p = load_polytope(&a.polytope)?;
    let n = p.dim();
    let w = vec_arg("shift", &a.shift, n)?;
    let cl = surface(a.quadric.as_deref(), n)?;
    let rp = surface_param(&cl, a.plan.sigma1_tol)?;
    let plan = build_plan(&a.plan, a.seed.seed, n - 1)?;
    let r = modulus_invariance(&p, &w, &rp, &plan)?;
    let pass = r.pass;
    Ok(Report { json: serde_json::to_value(&r).expect("report serializes"), table: None, pass })
}
