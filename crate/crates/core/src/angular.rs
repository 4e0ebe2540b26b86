//! Angular-derivative detection.
//!
//! The primary test is summability of `w(zeta) / |zeta - lambda|^2` for the
//! Clark density `w`, decided from dyadic annuli around `lambda`. A radial
//! Julia-quotient probe runs alongside as an independent cross-check.

use num_complex::Complex64;
use serde::Serialize;

use crate::circle::CirclePoint;
use crate::discmap::DiscMap;
use crate::error::{Error, Result};
use crate::harmonic::{BandLimited, RealGrid, NEGATIVE_TOLERANCE};
use crate::numeric::{extrapolate_to_zero, pairwise_sum, unit};
use crate::profile::WeightProfile;
use crate::quad::GaussRule;
use crate::verdict::Verdict;

/// Classification policy for the dyadic and radial probes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct RefinementControl {
    /// Number of dyadic annuli.
    pub max_depth: u32,
    /// Grid resolution assumed for weights that carry none of their own.
    pub base_grid_log2: u32,
    pub ratio_threshold: f64,
    pub abs_cap: f64,
}

impl Default for RefinementControl {
    fn default() -> Self {
        RefinementControl { max_depth: 14, base_grid_log2: 12, ratio_threshold: 0.75, abs_cap: 1e8 }
    }
}

/// How many consecutive tail ratios the classification looks at.
pub const TAIL: usize = 4;
const DIVERGENT_RATIO: f64 = 1.0 - 1e-3;

impl RefinementControl {
    pub fn validate(&self) -> Result<()> {
        if !(4..=40).contains(&self.max_depth) {
            return Err(Error::validation(format!("max_depth {} outside [4, 40]", self.max_depth)));
        }
        if !(3..=24).contains(&self.base_grid_log2) {
            return Err(Error::validation(format!("base_grid_log2 {} outside [3, 24]", self.base_grid_log2)));
        }
        if !(self.ratio_threshold > 0.0 && self.ratio_threshold < DIVERGENT_RATIO) {
            return Err(Error::validation(format!("ratio_threshold {} outside (0, 0.999)", self.ratio_threshold)));
        }
        if !(self.abs_cap > 0.0 && self.abs_cap.is_finite()) {
            return Err(Error::validation("abs_cap must be positive and finite"));
        }
        Ok(())
    }
}

/// A nonnegative function on the circle, indexed by turn.
pub trait BoundaryWeight: Sync {
    fn value(&self, turn: f64) -> f64;

    /// Grid spacing (in turns) below which the weight carries no detail.
    fn resolution(&self) -> Option<f64> {
        None
    }

    /// Bound on the error of off-grid values, when interpolated.
    fn interpolation_error(&self) -> Option<f64> {
        None
    }
}

impl BoundaryWeight for WeightProfile {
    fn value(&self, turn: f64) -> f64 {
        WeightProfile::value(self, turn)
    }
}

/// A sampled weight read through its band-limited interpolant.
pub struct GridWeight {
    interp: BandLimited,
}

impl GridWeight {
    pub fn new(w: &RealGrid) -> Result<Self> {
        for (j, &v) in w.values().iter().enumerate() {
            if !v.is_finite() || v < -NEGATIVE_TOLERANCE {
                return Err(Error::NegativeWeight { node: j, value: v });
            }
        }
        Ok(GridWeight { interp: BandLimited::new(w) })
    }
}

impl BoundaryWeight for GridWeight {
    fn value(&self, turn: f64) -> f64 {
        self.interp.value(turn).max(0.0)
    }

    fn resolution(&self) -> Option<f64> {
        Some(2f64.powi(-(self.interp.log2_size() as i32)))
    }

    fn interpolation_error(&self) -> Option<f64> {
        Some(self.interp.error_estimate())
    }
}

/// Boundary density of `mu_alpha` for a map.
pub struct ClarkWeight<'a> {
    map: &'a DiscMap,
    alpha: Complex64,
}

impl<'a> ClarkWeight<'a> {
    pub fn new(map: &'a DiscMap, alpha: CirclePoint) -> Self {
        ClarkWeight { map, alpha: alpha.to_complex() }
    }
}

impl BoundaryWeight for ClarkWeight<'_> {
    fn value(&self, turn: f64) -> f64 {
        self.map.clark_density_at(self.alpha, unit(turn)).value
    }

    fn resolution(&self) -> Option<f64> {
        match self.map {
            DiscMap::Herglotz(h) if h.profile().is_none() => Some(2f64.powi(-(h.weight().log2_size() as i32))),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularIntegral {
    pub verdict: Verdict,
    /// Contribution of `|zeta - lambda| >= 1/2`.
    pub far: f64,
    /// Contribution of each annulus `2^-(j+1) <= |zeta - lambda| < 2^-j`.
    pub annuli: Vec<f64>,
    /// Partial sums, starting with the far region; nondecreasing.
    pub partials: Vec<f64>,
    /// `annuli[j] / annuli[j - 1]`.
    pub ratios: Vec<f64>,
    pub interpolation_error: Option<f64>,
}

/// Angle in radians at which the chord from `lambda` has length `c`.
fn chord_angle(c: f64) -> f64 {
    2.0 * (0.5 * c).asin()
}

/// Decides whether `int w(zeta) / |zeta - lambda|^2 dm(zeta)` is finite.
pub fn singular_integral(
    w: &dyn BoundaryWeight,
    lambda: CirclePoint,
    ctrl: &RefinementControl,
) -> Result<SingularIntegral> {
    ctrl.validate()?;
    let tl = lambda.turn_f64();
    let res = w.resolution().unwrap_or(2f64.powi(-(ctrl.base_grid_log2 as i32)));
    let max_panel = 2.0 * std::f64::consts::TAU * res;
    // Integrand in the offset angle phi, with dm = dphi / 2 pi, both sides.
    let g = |phi: f64| {
        let s = (0.5 * phi).sin();
        let k = 1.0 / (4.0 * s * s * std::f64::consts::TAU);
        k * (w.value(tl + phi / std::f64::consts::TAU) + w.value(tl - phi / std::f64::consts::TAU))
    };
    let far = GaussRule::order8().integrate_panels(chord_angle(0.5), std::f64::consts::PI, max_panel, &g);
    let rule = GaussRule::order16();
    let annuli: Vec<f64> = (1..=ctrl.max_depth)
        .map(|j| {
            let lo = chord_angle(2f64.powi(-(j as i32) - 1));
            let hi = chord_angle(2f64.powi(-(j as i32)));
            rule.integrate_panels(lo, hi, max_panel, &g).max(0.0)
        })
        .collect();
    let mut partials = Vec::with_capacity(annuli.len() + 1);
    partials.push(far);
    for a in &annuli {
        let last = *partials.last().expect("nonempty");
        partials.push(last + a);
    }
    let ratios: Vec<f64> = annuli
        .windows(2)
        .map(|p| if p[0] > 0.0 { p[1] / p[0] } else if p[1] > 0.0 { f64::INFINITY } else { 0.0 })
        .collect();
    let verdict = classify(&partials, &annuli, &ratios, ctrl);
    Ok(SingularIntegral { verdict, far, annuli, partials, ratios, interpolation_error: w.interpolation_error() })
}

fn classify(partials: &[f64], annuli: &[f64], ratios: &[f64], ctrl: &RefinementControl) -> Verdict {
    let total = *partials.last().expect("nonempty");
    if partials.iter().any(|&s| s > ctrl.abs_cap) || !total.is_finite() {
        return Verdict::Divergent;
    }
    let tail = &ratios[ratios.len().saturating_sub(TAIL)..];
    if tail.len() < TAIL {
        return Verdict::Undetermined;
    }
    if tail.iter().all(|&r| r >= DIVERGENT_RATIO) {
        return Verdict::Divergent;
    }
    if tail.iter().all(|&r| r <= ctrl.ratio_threshold) {
        let last = *annuli.last().expect("nonempty");
        let rho = *tail.last().expect("nonempty");
        return Verdict::Finite(total + last * rho / (1.0 - rho));
    }
    Verdict::Undetermined
}

/// The singular integral of a sampled weight.
pub fn singular_integral_grid(w: &RealGrid, lambda: CirclePoint, ctrl: &RefinementControl) -> Result<SingularIntegral> {
    singular_integral(&GridWeight::new(w)?, lambda, ctrl)
}

/// `r_j = 1 - 2^-j`, `j = 4..=12`.
pub fn default_radii() -> Vec<f64> {
    (4..=12).map(|j| 1.0 - 2f64.powi(-j)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct JuliaProbe {
    /// `(r, (1 - |f(r lambda)|) / (1 - r))`.
    pub sequence: Vec<(f64, f64)>,
    pub increment_ratios: Vec<f64>,
    pub verdict: Verdict,
}

const JULIA_TAIL: usize = 3;

/// Radial Julia quotients at `lambda`, classified by the decay of their
/// increments.
pub fn julia_quotient(f: &DiscMap, lambda: CirclePoint, radii: &[f64], ctrl: &RefinementControl) -> Result<JuliaProbe> {
    if radii.len() < JULIA_TAIL + 2 {
        return Err(Error::validation(format!("the Julia probe needs at least {} radii", JULIA_TAIL + 2)));
    }
    if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) || radii.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::validation("Julia radii must increase strictly inside (0, 1)"));
    }
    let t = lambda.turn_f64();
    let sequence: Vec<(f64, f64)> = radii.iter().map(|&r| (r, f.radial_defect(r, t) / (1.0 - r))).collect();
    let q: Vec<f64> = sequence.iter().map(|p| p.1).collect();
    let scale = q.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    let inc: Vec<f64> = q.windows(2).map(|p| p[1] - p[0]).collect();
    let negligible = |d: f64| d.abs() <= 1e-14 * scale;
    let increment_ratios: Vec<f64> = inc
        .windows(2)
        .map(|p| {
            if negligible(p[1]) {
                0.0
            } else if negligible(p[0]) {
                f64::INFINITY
            } else {
                (p[1] / p[0]).abs()
            }
        })
        .collect();
    let tail = &increment_ratios[increment_ratios.len() - JULIA_TAIL..];
    let last_inc = &inc[inc.len() - JULIA_TAIL..];
    let verdict = if q.iter().any(|&v| v > ctrl.abs_cap || !v.is_finite()) {
        Verdict::Divergent
    } else if last_inc.iter().all(|&d| negligible(d)) {
        Verdict::Finite(*q.last().expect("nonempty"))
    } else if tail.iter().all(|&r| r <= ctrl.ratio_threshold) {
        let h: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
        Verdict::Finite(extrapolate_to_zero(&h, &q).value)
    } else if tail.iter().all(|&r| r >= DIVERGENT_RATIO) && last_inc.iter().all(|&d| d > 0.0) {
        Verdict::Divergent
    } else {
        Verdict::Undetermined
    };
    Ok(JuliaProbe { sequence, increment_ratios, verdict })
}

/// Per-point evidence for the existence of an angular derivative.
#[derive(Clone, Debug, Serialize)]
pub struct DerivativeReport {
    pub lambda: CirclePoint,
    pub alpha: CirclePoint,
    pub verdict: Verdict,
    pub criterion: SingularIntegral,
    pub julia: JuliaProbe,
    pub notes: Vec<String>,
}

impl DerivativeReport {
    pub fn criterion_partials(&self) -> &[f64] {
        &self.criterion.partials
    }

    pub fn julia_sequence(&self) -> &[(f64, f64)] {
        &self.julia.sequence
    }

    pub fn julia_limit(&self) -> Option<f64> {
        self.julia.verdict.value()
    }
}

/// Combines the Clark-measure criterion at `alpha` with the Julia probe.
/// Assumes `mu_alpha` is absolutely continuous on an arc around `lambda`.
pub fn detect(f: &DiscMap, lambda: CirclePoint, alpha: CirclePoint, ctrl: &RefinementControl) -> Result<DerivativeReport> {
    detect_with_radii(f, lambda, alpha, ctrl, &default_radii())
}

pub fn detect_with_radii(
    f: &DiscMap,
    lambda: CirclePoint,
    alpha: CirclePoint,
    ctrl: &RefinementControl,
    radii: &[f64],
) -> Result<DerivativeReport> {
    let criterion = singular_integral(&ClarkWeight::new(f, alpha), lambda, ctrl)?;
    let julia = julia_quotient(f, lambda, radii, ctrl)?;
    let mut notes = Vec::new();
    let verdict = match (criterion.verdict, julia.verdict) {
        (Verdict::Finite(v), Verdict::Finite(_)) => Verdict::Finite(v),
        (Verdict::Finite(_), Verdict::Divergent) | (Verdict::Divergent, Verdict::Finite(_)) => {
            notes.push(format!(
                "criteria conflict: clark criterion {} but julia probe {}",
                criterion.verdict.label(),
                julia.verdict.label()
            ));
            Verdict::Undetermined
        }
        (Verdict::Divergent, _) | (_, Verdict::Divergent) => Verdict::Divergent,
        _ => Verdict::Undetermined,
    };
    if let Some(e) = criterion.interpolation_error {
        notes.push(format!("band-limited interpolation error estimate {e:e}"));
    }
    Ok(DerivativeReport { lambda, alpha, verdict, criterion, julia, notes })
}

/// Sum of the finite criterion values.
pub fn total_finite(reports: &[DerivativeReport]) -> f64 {
    pairwise_sum(&reports.iter().filter_map(|r| r.verdict.value()).collect::<Vec<_>>())
}
