//! End-to-end pipelines linking boundary sets and angular derivatives:
//! building a self-map whose angular-derivative set is a given set, the
//! outer function of the forward direction, level sets of the strong
//! boundary zero set, and a verifier for both directions.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::angular::{self, BoundaryWeight, DerivativeReport, GridWeight, RefinementControl};
use crate::circle::{ArcInterval, BoundarySet, CirclePoint, Turn};
use crate::clark::{self, log_integrability, LogIntegral};
use crate::discmap::{DiscMap, HerglotzMap};
use crate::error::{Error, Result};
use crate::harmonic::{self, GridFunction, OuterFunction, RealGrid, DEFAULT_LOG_FLOOR};
use crate::profile::{ProfileMode, WeightProfile};
use crate::verdict::{Status, Verdict};

/// Expanding `prod (z - lambda)` in floating point loses accuracy quickly;
/// larger sets should use the distance weight.
pub const MAX_POLYNOMIAL_POINTS: usize = 64;

/// The outer function `phi` and the map `f` with `(1 + f)/(1 - f)` the
/// Herglotz integral of `|phi|^2`.
#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub target_set: BoundarySet,
    pub mode: ProfileMode,
    /// `|phi|` at the grid nodes.
    pub phi_boundary: RealGrid,
    /// H^2 norm of `phi`, from the exact weight.
    pub phi_norm: f64,
    /// Trapezoid mean of `|phi|^2` on the grid.
    pub grid_mean_sq: f64,
    pub map: DiscMap,
}

impl ConstructionResult {
    /// Exact `|phi|^2`.
    pub fn weight(&self) -> &WeightProfile {
        match &self.map {
            DiscMap::Herglotz(h) => h.profile().expect("constructed maps carry their weight"),
            _ => unreachable!("constructed maps are Herglotz maps"),
        }
    }
}

pub fn construct_from_set(set: &BoundarySet, mode: ProfileMode, k: u32) -> Result<ConstructionResult> {
    let points = set.points()?;
    let profile = if points.is_empty() {
        WeightProfile::polynomial(&[])
    } else {
        if mode == ProfileMode::Polynomial && points.len() > MAX_POLYNOMIAL_POINTS {
            return Err(Error::validation(format!(
                "polynomial mode supports at most {MAX_POLYNOMIAL_POINTS} points ({} given); use distance mode",
                points.len()
            )));
        }
        WeightProfile::build(mode, &points)?
    };
    let phi_norm = profile.herglotz(Complex64::new(0.0, 0.0)).re.sqrt();
    let map = HerglotzMap::from_profile(profile, k)?;
    let phi_boundary = map.weight().map(f64::sqrt);
    let grid_mean_sq = harmonic::mean(map.weight());
    Ok(ConstructionResult {
        target_set: set.clone(),
        mode,
        phi_boundary,
        phi_norm,
        grid_mean_sq,
        map: DiscMap::Herglotz(map),
    })
}

/// Outer function `F` with `|F|^2` the Clark density on the arc and 1 off it.
#[derive(Clone, Debug)]
pub struct ForwardOuter {
    pub alpha: CirclePoint,
    /// `(alpha, singular mass on the arc)` for every alpha tried, in order.
    pub alpha_trials: Vec<(CirclePoint, f64)>,
    pub log_integral: LogIntegral,
    pub modulus: RealGrid,
    pub outer: OuterFunction,
}

/// Singular mass above which `mu_alpha` is not treated as absolutely
/// continuous on the arc.
pub const SINGULAR_MASS_TOL: f64 = 1e-6;
const ALPHA_RETRIES: usize = 8;
const ALPHA_SEED: u64 = 0;

/// Alphas tried by [`forward_outer`]: 1, then reproducible pseudo-random turns `k / 2^20`.
pub fn alpha_candidates() -> Vec<CirclePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(ALPHA_SEED);
    let mut out = vec![CirclePoint::ONE];
    for _ in 0..ALPHA_RETRIES {
        let k: i64 = rng.random_range(1..(1 << 20));
        out.push(CirclePoint::new(Turn::new(k, 1 << 20)));
    }
    out
}

pub fn forward_outer(f: &DiscMap, arc: &ArcInterval, k: u32) -> Result<ForwardOuter> {
    let log_integral = log_integrability(f, arc);
    if !log_integral.verdict.is_finite() {
        return Err(Error::LocallyExtreme(format!(
            "integral of ln(1 - |f|) is {} ({})",
            log_integral.verdict.label(),
            log_integral.note
        )));
    }
    let mut trials = Vec::new();
    let mut chosen = None;
    for alpha in alpha_candidates() {
        let m = clark::measure_of_arc(f, alpha, arc, &clark::default_ladder())?;
        let singular = if m.verdict.is_finite() { m.singular_mass } else { f64::INFINITY };
        trials.push((alpha, singular));
        if singular <= SINGULAR_MASS_TOL {
            chosen = Some(alpha);
            break;
        }
    }
    let alpha = chosen.ok_or_else(|| {
        Error::validation("no alpha among the retries gives an absolutely continuous Clark measure on the arc")
    })?;
    let a = alpha.to_complex();
    let modulus = GridFunction::from_fn(k, |t| {
        if arc.contains_turn(t) {
            f.clark_density_at(a, crate::numeric::unit(t)).value.sqrt()
        } else {
            1.0
        }
    })?;
    let outer = harmonic::outer_function(&modulus, DEFAULT_LOG_FLOOR)?;
    Ok(ForwardOuter { alpha, alpha_trials: trials, log_integral, modulus, outer })
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelSetReport {
    pub n: f64,
    /// `(lambda, estimate of ||phi / (z - lambda)||)` with estimate `<= n`.
    pub members: Vec<(CirclePoint, f64)>,
    /// Candidates with a divergent criterion: outside every level set.
    pub non_members_sampled: Vec<CirclePoint>,
    /// Candidates whose criterion stayed undetermined.
    pub undetermined: Vec<CirclePoint>,
}

/// Level sets `E_n = {lambda : ||phi / (z - lambda)||_2 <= n}` over the
/// candidates, with `w = |phi|^2`.
pub fn level_sets(
    w: &dyn BoundaryWeight,
    thresholds: &[f64],
    candidates: &[CirclePoint],
    ctrl: &RefinementControl,
) -> Result<Vec<LevelSetReport>> {
    if thresholds.is_empty() || thresholds.iter().any(|&n| !(n > 0.0)) || thresholds.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::validation("thresholds must be positive and strictly increasing"));
    }
    let verdicts: Vec<Verdict> = candidates
        .par_iter()
        .map(|&l| angular::singular_integral(w, l, ctrl).map(|s| s.verdict))
        .collect::<Result<_>>()?;
    let norms: Vec<Option<f64>> = verdicts.iter().map(|v| v.value().map(f64::sqrt)).collect();
    let non_members: Vec<CirclePoint> =
        candidates.iter().zip(&verdicts).filter(|(_, v)| v.is_divergent()).map(|(c, _)| *c).collect();
    let undetermined: Vec<CirclePoint> =
        candidates.iter().zip(&verdicts).filter(|(_, v)| **v == Verdict::Undetermined).map(|(c, _)| *c).collect();
    Ok(thresholds
        .iter()
        .map(|&n| LevelSetReport {
            n,
            members: candidates
                .iter()
                .zip(&norms)
                .filter_map(|(c, e)| e.filter(|&e| e <= n).map(|e| (*c, e)))
                .collect(),
            non_members_sampled: non_members.clone(),
            undetermined: undetermined.clone(),
        })
        .collect())
}

/// Level sets from sampled `|phi|`, read through the band-limited interpolant of `|phi|^2`.
pub fn level_sets_grid(
    phi_boundary: &RealGrid,
    thresholds: &[f64],
    candidates: &[CirclePoint],
    ctrl: &RefinementControl,
) -> Result<Vec<LevelSetReport>> {
    let w = GridWeight::new(&phi_boundary.map(|v| v * v))?;
    level_sets(&w, thresholds, candidates, ctrl)
}

/// Least threshold whose level set contains `lambda`.
pub fn least_level(reports: &[LevelSetReport], lambda: CirclePoint) -> Option<f64> {
    reports.iter().find(|r| r.members.iter().any(|(c, _)| *c == lambda)).map(|r| r.n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeRole {
    Member,
    ComplementaryMidpoint,
    OffsetProbe,
    Sample,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub lambda: CirclePoint,
    pub role: ProbeRole,
    pub expected: &'static str,
    pub verdict: Verdict,
    pub julia_limit: Option<f64>,
    pub status: Status,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub set: serde_json::Value,
    pub mode: ProfileMode,
    pub grid_log2: u32,
    pub control: RefinementControl,
    pub point_count: usize,
    pub checks: Vec<PointCheck>,
    pub members_status: Status,
    pub non_members_status: Status,
    pub log_integral: LogIntegral,
    pub log_integral_status: Status,
    pub entropy: f64,
    pub entropy_status: Status,
    pub phi_norm: f64,
    pub status: Status,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &PointCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub mode: ProfileMode,
    pub grid_log2: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: ProfileMode::Distance, grid_log2: harmonic::DEFAULT_LOG2 }
    }
}

/// Non-member probes: complementary-arc midpoints and `lambda +- offset`
/// (when those fall outside the set). An empty set is sampled at 16 points.
pub fn non_member_probes(set: &BoundarySet, offsets: &[Turn]) -> Result<Vec<(CirclePoint, ProbeRole)>> {
    let resolved = set.resolve()?;
    let mut out: Vec<(CirclePoint, ProbeRole)> = Vec::new();
    if resolved.is_empty() {
        for k in 0..16 {
            out.push((CirclePoint::from_fraction(k, 16)?, ProbeRole::Sample));
        }
        return Ok(out);
    }
    if resolved.points().len() > 1 {
        for a in resolved.complementary_arcs() {
            out.push((a.midpoint(), ProbeRole::ComplementaryMidpoint));
        }
    } else {
        out.push((resolved.points()[0].rotate(Turn::new(1, 2)), ProbeRole::ComplementaryMidpoint));
    }
    for p in resolved.points() {
        for &o in offsets {
            for q in [p.rotate(o), p.rotate(-o)] {
                if !resolved.contains(q, 0.0) {
                    out.push((q, ProbeRole::OffsetProbe));
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|(p, _)| seen.insert(*p));
    Ok(out)
}

fn check_point(
    map: &DiscMap,
    lambda: CirclePoint,
    role: ProbeRole,
    ctrl: &RefinementControl,
) -> Result<PointCheck> {
    let r: DerivativeReport = angular::detect(map, lambda, CirclePoint::ONE, ctrl)?;
    let want_finite = role == ProbeRole::Member;
    let status = match r.verdict {
        Verdict::Undetermined => Status::Inconclusive,
        Verdict::Finite(_) if want_finite => Status::Pass,
        Verdict::Divergent if !want_finite => Status::Pass,
        _ => Status::Fail,
    };
    Ok(PointCheck {
        lambda,
        role,
        expected: if want_finite { "finite" } else { "divergent" },
        verdict: r.verdict,
        julia_limit: r.julia_limit(),
        status,
        notes: r.notes,
    })
}

fn worst(statuses: impl Iterator<Item = Status>) -> Status {
    statuses.fold(Status::Pass, Status::and)
}

/// Builds the map for `set` and checks both directions: finite criterion on
/// the set, divergence off it, log-integrability on the circle, and finite
/// entropy. Undetermined verdicts make the report inconclusive, not failed.
pub fn verify_theorem(
    set: &BoundarySet,
    offsets: &[Turn],
    ctrl: &RefinementControl,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    ctrl.validate()?;
    let cr = construct_from_set(set, opts.mode, opts.grid_log2)?;
    let members = set.points()?;
    let mut jobs: Vec<(CirclePoint, ProbeRole)> = members.iter().map(|&p| (p, ProbeRole::Member)).collect();
    jobs.extend(non_member_probes(set, offsets)?);
    let checks: Vec<PointCheck> =
        jobs.par_iter().map(|&(l, role)| check_point(&cr.map, l, role, ctrl)).collect::<Result<_>>()?;
    let members_status = worst(checks.iter().filter(|c| c.role == ProbeRole::Member).map(|c| c.status));
    let non_members_status = worst(checks.iter().filter(|c| c.role != ProbeRole::Member).map(|c| c.status));
    let log_integral = log_integrability(&cr.map, &ArcInterval::full());
    let log_integral_status = match log_integral.verdict {
        Verdict::Finite(_) => Status::Pass,
        Verdict::Divergent => Status::Fail,
        Verdict::Undetermined => Status::Inconclusive,
    };
    let entropy = set.entropy()?;
    let entropy_status = if entropy.is_finite() && entropy >= 0.0 { Status::Pass } else { Status::Fail };
    let status = members_status.and(non_members_status).and(log_integral_status).and(entropy_status);
    Ok(VerificationReport {
        set: set.to_json_value(),
        mode: opts.mode,
        grid_log2: opts.grid_log2,
        control: *ctrl,
        point_count: members.len(),
        checks,
        members_status,
        non_members_status,
        log_integral,
        log_integral_status,
        entropy,
        entropy_status,
        phi_norm: cr.phi_norm,
        status,
    })
}
