//! Command-line front end. Every subcommand produces a single report (JSON
//! by default, CSV where a table makes sense) that embeds the resolved
//! configuration. Exit codes: 0 all asserted checks passed, 2 something was
//! inconclusive, 1 a check failed or the input was rejected.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::angular::{self, DerivativeReport, RefinementControl};
use crate::circle::{format_turn, parse_turn, ArcInterval, CirclePoint, Turn};
use crate::clark::{self, ArcMass, DisintegrationReport, DisintegrationRoute, LogIntegral};
use crate::error::{Error, Result};
use crate::harmonic::{self, RealGrid};
use crate::io::{self, MapDoc};
use crate::profile::ProfileMode;
use crate::theorem::{self, LevelSetReport, VerificationReport, VerifyOptions};
use crate::verdict::{Status, Verdict};

/// Environment variable capping the worker threads (0 = one per core).
pub const THREADS_ENV: &str = "CLARKKIT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "clarkkit",
    version,
    about = "Angular derivatives of holomorphic self-maps of the disc via Clark measures",
    after_help = "Exit status: 0 all checks passed, 2 inconclusive, 1 failure or error.\n\
                  CLARKKIT_THREADS caps parallelism (0 = auto)."
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// log2 of the boundary grid size
    #[arg(long, global = true, default_value_t = harmonic::DEFAULT_LOG2,
          value_parser = clap::value_parser!(u32).range(harmonic::MIN_LOG2 as i64..=harmonic::MAX_LOG2 as i64))]
    pub grid_log2: u32,
    /// Number of dyadic annuli around each probed point
    #[arg(long, global = true, default_value_t = 14, value_parser = clap::value_parser!(u32).range(4..=40))]
    pub depth: u32,
    /// Tolerance on the disintegration gap
    #[arg(long, global = true, default_value_t = 1e-6, value_parser = positive_real)]
    pub tol: f64,
    /// Radius ladder: `J0..J1` for r = 1 - 2^-j, or a comma list of radii
    #[arg(long, global = true, default_value = "4..12")]
    pub radii: String,
    /// Clark parameter alpha as a turn p/q
    #[arg(long, global = true, default_value = "0/1", value_parser = circle_point)]
    pub alpha: CirclePoint,
    /// Weight used to build maps from sets
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Distance)]
    pub mode: ModeArg,
    /// Output file (a directory for `construct`); stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock time to the report
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Polynomial,
    Distance,
}

impl From<ModeArg> for ProfileMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Polynomial => ProfileMode::Polynomial,
            ModeArg::Distance => ProfileMode::Distance,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteArg {
    Ladder,
    Atoms,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Beurling-Carleson entropy of a boundary set and its complementary arcs
    Entropy { set: PathBuf },
    /// Build phi and the self-map for a set; writes phi.csv, weight.csv and map.json into --out
    Construct { set: PathBuf },
    /// Angular-derivative verdicts at the given points
    Detect {
        map: PathBuf,
        /// Comma-separated turns
        #[arg(long, default_value = "0/1", conflicts_with = "samples")]
        lambda: String,
        /// Probe N equispaced turns k/N instead of --lambda
        #[arg(long)]
        samples: Option<u32>,
    },
    /// Clark density on the grid and the mass of an arc
    Clark {
        map: PathBuf,
        /// Arc as START:LENGTH in turns
        #[arg(long, default_value = "0/1:1/1")]
        arc: String,
    },
    /// Checks int h dm = int mu_alpha(h) dm(alpha)
    Disintegrate {
        map: PathBuf,
        /// Test function: one, cos, sin2, or a grid CSV
        #[arg(long, default_value = "cos")]
        h: String,
        /// log2 of the number of alphas
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=20))]
        alpha_log2: u32,
        #[arg(long, value_enum, default_value_t = RouteArg::Ladder)]
        route: RouteArg,
        /// With the atoms route, drop singular parts instead of refusing
        #[arg(long)]
        allow_ac_only: bool,
    },
    /// Outer function with modulus sqrt of the Clark density on an arc
    Forward {
        map: PathBuf,
        /// Arc as START:LENGTH in turns
        #[arg(long, default_value = "0/1:1/1")]
        arc: String,
    },
    /// Level sets E_n = {||phi / (z - lambda)|| <= n} from a grid of |phi|
    Levelsets {
        phi: PathBuf,
        /// Strictly increasing thresholds
        #[arg(long, default_value = "1,2,4,8")]
        thresholds: String,
        #[arg(long, default_value = "0/1", conflicts_with = "samples")]
        lambda: String,
        #[arg(long)]
        samples: Option<u32>,
    },
    /// Construct the map for a set and check both directions of the characterization
    Verify {
        set: PathBuf,
        /// Offsets (turns) of the extra non-member probes around each point
        #[arg(long, default_value = "1/1024")]
        offsets: String,
    },
}

fn positive_real(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a positive real, got {s:?}")),
    }
}

fn circle_point(s: &str) -> std::result::Result<CirclePoint, String> {
    CirclePoint::parse(s).map_err(|e| e.to_string())
}

pub fn parse_points(list: &str) -> Result<Vec<CirclePoint>> {
    list.split(',').map(|s| CirclePoint::parse(s.trim())).collect()
}

fn equispaced(n: u32) -> Result<Vec<CirclePoint>> {
    if n == 0 {
        return Err(Error::validation("--samples must be positive"));
    }
    (0..n as i64).map(|k| CirclePoint::from_fraction(k, n as i64)).collect()
}

fn candidates(lambda: &str, samples: Option<u32>) -> Result<Vec<CirclePoint>> {
    match samples {
        Some(n) => equispaced(n),
        None => parse_points(lambda),
    }
}

/// `J0..J1` gives `1 - 2^-j` for `j` in `J0..=J1`; otherwise a comma list.
pub fn parse_radii(spec: &str) -> Result<Vec<f64>> {
    let radii: Vec<f64> = if let Some((a, b)) = spec.split_once("..") {
        let a: i32 = a.trim().parse().map_err(|_| Error::validation(format!("bad radius ladder {spec:?}")))?;
        let b: i32 = b.trim().parse().map_err(|_| Error::validation(format!("bad radius ladder {spec:?}")))?;
        if !(1..=50).contains(&a) || !(1..=50).contains(&b) || b <= a {
            return Err(Error::validation(format!("radius ladder {spec:?} needs 1 <= J0 < J1 <= 50")));
        }
        (a..=b).map(|j| 1.0 - 2f64.powi(-j)).collect()
    } else {
        spec.split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| Error::validation(format!("bad radius {s:?}"))))
            .collect::<Result<_>>()?
    };
    if radii.len() < 2 || radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::validation("radii must increase strictly inside (0, 1), at least two of them"));
    }
    Ok(radii)
}

pub fn parse_arc(spec: &str) -> Result<ArcInterval> {
    let (s, l) = spec
        .split_once(':')
        .ok_or_else(|| Error::validation(format!("arc {spec:?} must be START:LENGTH")))?;
    ArcInterval::new(CirclePoint::parse(s.trim())?, parse_turn(l.trim())?)
}

fn parse_reals(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::validation(format!("bad number {s:?}"))))
        .collect()
}

fn parse_offsets(list: &str) -> Result<Vec<Turn>> {
    list.split(',').map(|s| parse_turn(s.trim())).collect()
}

/// Configuration echoed in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub grid_log2: u32,
    pub depth: u32,
    pub tol: f64,
    pub radii_spec: String,
    pub radii: Vec<f64>,
    pub alpha: CirclePoint,
    pub mode: ModeArg,
    pub format: Format,
    pub out: Option<String>,
    pub control: RefinementControl,
}

impl RunConfig {
    fn resolve(a: &ConfigArgs) -> Result<Self> {
        let control = RefinementControl { max_depth: a.depth, base_grid_log2: a.grid_log2, ..Default::default() };
        control.validate()?;
        Ok(RunConfig {
            grid_log2: a.grid_log2,
            depth: a.depth,
            tol: a.tol,
            radii_spec: a.radii.clone(),
            radii: parse_radii(&a.radii)?,
            alpha: a.alpha,
            mode: a.mode,
            format: a.format,
            out: a.out.as_ref().map(|p| p.display().to_string()),
            control,
        })
    }
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    input: String,
    config: &'a RunConfig,
    status: Status,
    result: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

/// Text of a finished report and its status.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub status: Status,
    /// File the report went to; `None` means stdout.
    pub written_to: Option<PathBuf>,
}

struct Ctx<'a> {
    name: &'a str,
    input: &'a Path,
    cfg: &'a RunConfig,
    started: Option<Instant>,
}

impl Ctx<'_> {
    fn json<T: Serialize>(&self, status: Status, result: T) -> Result<Outcome> {
        let report = Report {
            command: self.name,
            input: self.input.display().to_string(),
            config: self.cfg,
            status,
            result,
            elapsed_ms: self.started.map(|t| t.elapsed().as_secs_f64() * 1e3),
        };
        let mut body = serde_json::to_string_pretty(&report)?;
        body.push('\n');
        Ok(Outcome { body, status, written_to: None })
    }

    fn emit<T: Serialize>(&self, status: Status, result: T, csv: impl FnOnce() -> Result<String>) -> Result<Outcome> {
        match self.cfg.format {
            Format::Json => self.json(status, result),
            Format::Csv => Ok(Outcome { body: csv()?, status, written_to: None }),
        }
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

fn worst(it: impl IntoIterator<Item = Verdict>) -> Status {
    it.into_iter().fold(Status::Pass, |s, v| {
        s.and(if v == Verdict::Undetermined { Status::Inconclusive } else { Status::Pass })
    })
}

// ---- subcommands -------------------------------------------------------

#[derive(Serialize)]
struct ArcRow {
    start: CirclePoint,
    length: String,
    term: f64,
}

#[derive(Serialize)]
struct EntropyResult {
    entropy: f64,
    point_count: usize,
    arcs: Vec<ArcRow>,
}

fn entropy_cmd(ctx: &Ctx, set: &Path) -> Result<Outcome> {
    let resolved = io::read_set(set)?.resolve()?;
    let arcs: Vec<ArcRow> = resolved
        .complementary_arcs()
        .iter()
        .map(|a| {
            let x = a.length_f64();
            ArcRow { start: a.start(), length: format_turn(&a.length()), term: if x >= 1.0 { 0.0 } else { -x * x.ln() } }
        })
        .collect();
    let result = EntropyResult { entropy: resolved.entropy(), point_count: resolved.points().len(), arcs };
    let csv = || {
        csv_table(
            &["arc_start", "arc_length", "term"],
            result.arcs.iter().map(|r| vec![format_turn(&r.start.turn()), r.length.clone(), format!("{:e}", r.term)]),
        )
    };
    let csv = csv()?;
    ctx.emit(Status::Pass, &result, || Ok(csv))
}

#[derive(Serialize)]
struct ConstructResult {
    point_count: usize,
    phi_norm: f64,
    grid_mean_sq: f64,
    f_at_origin: [f64; 2],
    files: Vec<String>,
}

fn construct_cmd(ctx: &Ctx, set: &Path, out: Option<&Path>) -> Result<Outcome> {
    let dir = out.ok_or_else(|| Error::validation("construct needs --out DIR for phi.csv, weight.csv and map.json"))?;
    let set = io::read_set(set)?;
    let cr = theorem::construct_from_set(&set, ctx.cfg.mode.into(), ctx.cfg.grid_log2)?;
    std::fs::create_dir_all(dir)?;
    let weight = cr.phi_boundary.map(|v| v * v);
    io::write_atomic(&dir.join("phi.csv"), cr.phi_boundary.to_csv_string()?.as_bytes())?;
    io::write_atomic(&dir.join("weight.csv"), weight.to_csv_string()?.as_bytes())?;
    let doc = MapDoc::from_map(&cr.map, Some("weight.csv"))?;
    let mut map_json = serde_json::to_string_pretty(&doc)?;
    map_json.push('\n');
    io::write_atomic(&dir.join("map.json"), map_json.as_bytes())?;
    let f0 = cr.map.eval(Complex64::new(0.0, 0.0));
    let result = ConstructResult {
        point_count: set.points()?.len(),
        phi_norm: cr.phi_norm,
        grid_mean_sq: cr.grid_mean_sq,
        f_at_origin: [f0.re, f0.im],
        files: ["phi.csv", "weight.csv", "map.json"].iter().map(|f| dir.join(f).display().to_string()).collect(),
    };
    // The directory holds the artifacts; the report goes to stdout.
    ctx.json(Status::Pass, result)
}

fn detect_cmd(ctx: &Ctx, map: &Path, lambdas: &[CirclePoint]) -> Result<Outcome> {
    use rayon::prelude::*;
    let f = io::read_map(map)?;
    let reports: Vec<DerivativeReport> = lambdas
        .par_iter()
        .map(|&l| angular::detect_with_radii(&f, l, ctx.cfg.alpha, &ctx.cfg.control, &ctx.cfg.radii))
        .collect::<Result<_>>()?;
    let status = worst(reports.iter().map(|r| r.verdict));
    ctx.emit(status, &reports, || {
        csv_table(
            &["lambda_turn", "verdict", "value", "julia_limit"],
            reports.iter().map(|r| {
                vec![format_turn(&r.lambda.turn()), r.verdict.label().to_string(), opt(r.verdict.value()), opt(r.julia_limit())]
            }),
        )
    })
}

#[derive(Serialize)]
struct ClarkResult {
    alpha: CirclePoint,
    r: f64,
    total_mass: f64,
    density_mean: f64,
    flagged_nodes: usize,
    max_radial_gap: f64,
    resolution_warning: bool,
    arc: ArcMass,
}

fn clark_cmd(ctx: &Ctx, map: &Path, arc: &ArcInterval) -> Result<Outcome> {
    let f = io::read_map(map)?;
    let alpha = ctx.cfg.alpha;
    let r = *ctx.cfg.radii.last().expect("validated ladder");
    let d = clark::clark_density(&f, alpha, r, ctx.cfg.grid_log2)?;
    let arc_mass = clark::measure_of_arc(&f, alpha, arc, &ctx.cfg.radii)?;
    let status = worst([arc_mass.verdict]);
    let csv = || {
        csv_table(
            &["node_index", "turn", "density", "radial"],
            (0..d.density.len()).map(|j| {
                vec![
                    j.to_string(),
                    format!("{:e}", d.density.turn(j)),
                    format!("{:e}", d.density.values()[j]),
                    format!("{:e}", d.radial.values()[j]),
                ]
            }),
        )
    };
    let result = ClarkResult {
        alpha,
        r,
        total_mass: clark::total_mass(&f, alpha),
        density_mean: harmonic::mean(&d.density),
        flagged_nodes: d.flagged.len(),
        max_radial_gap: d.max_radial_gap(),
        resolution_warning: d.resolution_warning,
        arc: arc_mass,
    };
    ctx.emit(status, &result, csv)
}

fn test_function(spec: &str, k: u32) -> Result<RealGrid> {
    use std::f64::consts::TAU;
    match spec {
        "one" => RealGrid::from_fn(k, |_| 1.0),
        "cos" => RealGrid::from_fn(k, |t| (TAU * t).cos()),
        "sin2" => RealGrid::from_fn(k, |t| (2.0 * TAU * t).sin()),
        path => RealGrid::read_csv(Path::new(path)),
    }
}

#[derive(Serialize)]
struct DisintegrateResult {
    h: String,
    report: DisintegrationReport,
    within_tol: bool,
}

fn disintegrate_cmd(
    ctx: &Ctx,
    map: &Path,
    h: &str,
    alpha_log2: u32,
    route: RouteArg,
    allow_ac_only: bool,
) -> Result<Outcome> {
    let f = io::read_map(map)?;
    let grid = test_function(h, ctx.cfg.grid_log2)?;
    let route = match route {
        RouteArg::Ladder => DisintegrationRoute::RadialLadder,
        RouteArg::Atoms => DisintegrationRoute::DensityAtoms { allow_ac_only },
    };
    let report = clark::disintegration_check(&f, &grid, alpha_log2, route)?;
    let within_tol = report.gap <= ctx.cfg.tol;
    let status = if within_tol { Status::Pass } else { Status::Fail };
    ctx.json(status, DisintegrateResult { h: h.to_string(), report, within_tol })
}

#[derive(Serialize)]
struct ForwardResult {
    alpha: CirclePoint,
    alpha_trials: Vec<(CirclePoint, f64)>,
    log_integral: LogIntegral,
    outer_at_origin: f64,
    clamped_nodes: usize,
    winding_number: i64,
}

fn forward_cmd(ctx: &Ctx, map: &Path, arc: &ArcInterval) -> Result<Outcome> {
    let f = io::read_map(map)?;
    let fo = theorem::forward_outer(&f, arc, ctx.cfg.grid_log2)?;
    let result = ForwardResult {
        alpha: fo.alpha,
        alpha_trials: fo.alpha_trials.clone(),
        log_integral: fo.log_integral.clone(),
        outer_at_origin: fo.outer.value_at_origin(),
        clamped_nodes: fo.outer.clamped_nodes(),
        winding_number: fo.outer.winding_number(harmonic::resolution_radius(ctx.cfg.grid_log2)),
    };
    ctx.emit(Status::Pass, &result, || fo.outer.boundary().to_csv_string())
}

fn levelsets_cmd(ctx: &Ctx, phi: &Path, thresholds: &[f64], lambdas: &[CirclePoint]) -> Result<Outcome> {
    let phi = RealGrid::read_csv(phi)?;
    let reports: Vec<LevelSetReport> = theorem::level_sets_grid(&phi, thresholds, lambdas, &ctx.cfg.control)?;
    let status = if reports.iter().any(|r| !r.undetermined.is_empty()) { Status::Inconclusive } else { Status::Pass };
    ctx.emit(status, &reports, || {
        csv_table(
            &["lambda_turn", "least_level"],
            lambdas.iter().map(|&l| vec![format_turn(&l.turn()), opt(theorem::least_level(&reports, l))]),
        )
    })
}

fn verify_cmd(ctx: &Ctx, set: &Path, offsets: &[Turn]) -> Result<Outcome> {
    let set = io::read_set(set)?;
    let opts = VerifyOptions { mode: ctx.cfg.mode.into(), grid_log2: ctx.cfg.grid_log2 };
    let report: VerificationReport = theorem::verify_theorem(&set, offsets, &ctx.cfg.control, &opts)?;
    let status = report.status;
    ctx.emit(status, &report, || {
        csv_table(
            &["lambda_turn", "role", "expected", "verdict", "value", "julia_limit", "status"],
            report.checks.iter().map(|c| {
                vec![
                    format_turn(&c.lambda.turn()),
                    serde_json::to_value(c.role).map(|v| v.as_str().unwrap_or("").to_string()).unwrap_or_default(),
                    c.expected.to_string(),
                    c.verdict.label().to_string(),
                    opt(c.verdict.value()),
                    opt(c.julia_limit),
                    serde_json::to_value(c.status).map(|v| v.as_str().unwrap_or("").to_string()).unwrap_or_default(),
                ]
            }),
        )
    })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let cfg = RunConfig::resolve(&cli.config)?;
    let started = cli.config.timing.then(Instant::now);
    let ctx = |name, input| Ctx { name, input, cfg: &cfg, started };
    let outcome = match &cli.command {
        Command::Entropy { set } => entropy_cmd(&ctx("entropy", set), set)?,
        Command::Construct { set } => {
            return construct_cmd(&ctx("construct", set), set, cli.config.out.as_deref());
        }
        Command::Detect { map, lambda, samples } => detect_cmd(&ctx("detect", map), map, &candidates(lambda, *samples)?)?,
        Command::Clark { map, arc } => clark_cmd(&ctx("clark", map), map, &parse_arc(arc)?)?,
        Command::Disintegrate { map, h, alpha_log2, route, allow_ac_only } => {
            disintegrate_cmd(&ctx("disintegrate", map), map, h, *alpha_log2, *route, *allow_ac_only)?
        }
        Command::Forward { map, arc } => forward_cmd(&ctx("forward", map), map, &parse_arc(arc)?)?,
        Command::Levelsets { phi, thresholds, lambda, samples } => {
            levelsets_cmd(&ctx("levelsets", phi), phi, &parse_reals(thresholds)?, &candidates(lambda, *samples)?)?
        }
        Command::Verify { set, offsets } => verify_cmd(&ctx("verify", set), set, &parse_offsets(offsets)?)?,
    };
    let mut outcome = outcome;
    if let Some(out) = &cli.config.out {
        io::write_atomic(out, outcome.body.as_bytes())?;
        outcome.written_to = Some(out.clone());
    }
    Ok(outcome)
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: ErrorBody<'a>,
}

/// Machine-readable error object.
pub fn error_json(kind: &str, message: impl Into<String>) -> String {
    let doc = ErrorDoc { error: ErrorBody { kind, message: message.into() } };
    serde_json::to_string(&doc).expect("plain strings serialize")
}

fn configure_threads() -> std::result::Result<(), String> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV} must be a non-negative integer"))?,
        Err(_) => return Ok(()),
    };
    // A second call in the same process keeps the first pool.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `argv`, runs the command and prints the report (unless `--out`
/// was given) or an error object. Returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            println!("{}", error_json("usage", e.to_string().trim_end()));
            return 1;
        }
    };
    if let Err(msg) = configure_threads() {
        println!("{}", error_json("usage", msg));
        return 1;
    }
    match run(&cli) {
        Ok(outcome) => {
            if outcome.written_to.is_none() {
                print!("{}", outcome.body);
            }
            outcome.status.exit_code()
        }
        Err(e) => {
            println!("{}", error_json(e.code(), e.to_string()));
            1
        }
    }
}
