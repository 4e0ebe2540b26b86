//! Aleksandrov-Clark measures of a self-map: densities, arc masses, the
//! disintegration identity, local absolute continuity, and the
//! log-integrability test for `1 - |f|`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{ArcInterval, CirclePoint};
use crate::discmap::{Atom, DiscMap};
use crate::error::{Error, Result};
use crate::harmonic::{self, BandLimited, GridFunction, RealGrid};
use crate::numeric::{extrapolate_to_zero, pairwise_mean, pairwise_sum, unit};
use crate::quad::{self, gk15};
use crate::verdict::Verdict;

/// Relative tolerance under which a radial ladder counts as converged.
pub const LADDER_TOL: f64 = 1e-6;

/// `r_j = 1 - 2^-j` for `j = 4..=12`.
pub fn default_ladder() -> Vec<f64> {
    (4..=12).map(|j| 1.0 - 2f64.powi(-j)).collect()
}

fn check_ladder(radii: &[f64]) -> Result<()> {
    if radii.len() < 2 {
        return Err(Error::validation("radius ladder needs at least two radii"));
    }
    if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
        return Err(Error::validation("ladder radii must lie in (0, 1)"));
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::validation("radius ladder must be strictly increasing"));
    }
    Ok(())
}

/// Absolutely continuous density of `mu_alpha` on the grid, with the radial
/// proxy at `r` kept for auditing.
#[derive(Clone, Debug)]
pub struct ClarkDensity {
    pub alpha: CirclePoint,
    pub r: f64,
    /// Boundary density from the continuous extension of `f`.
    pub density: RealGrid,
    /// Poisson integral of `mu_alpha` sampled at `r zeta_j`.
    pub radial: RealGrid,
    /// Nodes where `|alpha - f| < 1e-14`; their values are capped.
    pub flagged: Vec<usize>,
    pub resolution_warning: bool,
}

impl ClarkDensity {
    pub fn max_radial_gap(&self) -> f64 {
        self.density
            .values()
            .iter()
            .zip(self.radial.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn clark_density(f: &DiscMap, alpha: CirclePoint, r: f64, k: u32) -> Result<ClarkDensity> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::validation(format!("radius {r} outside (0, 1)")));
    }
    let a = alpha.to_complex();
    let n = 1usize << k;
    if !(harmonic::MIN_LOG2..=harmonic::MAX_LOG2).contains(&k) {
        return Err(Error::validation(format!("grid log2 size {k} out of range")));
    }
    let boundary: Vec<_> = (0..n).into_par_iter().map(|j| f.clark_density_at(a, unit(j as f64 / n as f64))).collect();
    let radial: Vec<f64> =
        (0..n).into_par_iter().map(|j| f.clark_density_at(a, unit(j as f64 / n as f64) * r).value).collect();
    let flagged = boundary.iter().enumerate().filter(|(_, d)| d.flagged).map(|(j, _)| j).collect();
    Ok(ClarkDensity {
        alpha,
        r,
        density: GridFunction::new(k, boundary.iter().map(|d| d.value).collect())?,
        radial: GridFunction::new(k, radial)?,
        flagged,
        resolution_warning: !f.resolves(Complex64::new(r, 0.0)),
    })
}

/// `mu_alpha(T) = (1 - |f(0)|^2) / |alpha - f(0)|^2`.
pub fn total_mass(f: &DiscMap, alpha: CirclePoint) -> f64 {
    let f0 = f.eval(Complex64::new(0.0, 0.0));
    (1.0 - f0.norm_sqr()) / (alpha.to_complex() - f0).norm_sqr()
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcMass {
    pub alpha: CirclePoint,
    pub arc_start: CirclePoint,
    pub arc_length: f64,
    /// `(r, integral over I of the Poisson integral of mu_alpha at r)`.
    pub ladder: Vec<(f64, f64)>,
    pub extrapolated: f64,
    pub error_estimate: f64,
    /// `Finite(mass)` when the ladder converged, otherwise `Undetermined`.
    pub verdict: Verdict,
    pub ac_mass: f64,
    pub singular_mass: f64,
    pub total_mass: f64,
    pub atoms: Option<Vec<Atom>>,
}

fn integrate_arc(g: &(impl Fn(f64) -> f64 + Sync), a: f64, b: f64, initial: usize) -> quad::Adaptive {
    quad::adaptive(g, a, b, initial, 1e-14, 1e-12, 200_000)
}

/// Mass of an arc under `mu_alpha`, as the limit over the radius ladder of
/// `int_I P[mu_alpha](r zeta) dm(zeta)`.
///
/// Arcs with an endpoint on a known atom are reported as undetermined, since
/// the radial limit assigns such an atom half its mass.
pub fn measure_of_arc(f: &DiscMap, alpha: CirclePoint, arc: &ArcInterval, radii: &[f64]) -> Result<ArcMass> {
    check_ladder(radii)?;
    let a = alpha.to_complex();
    let (t0, t1) = arc.turn_range();
    let ladder: Vec<(f64, f64)> = radii
        .par_iter()
        .map(|&r| {
            let width = (1.0 - r) / std::f64::consts::TAU;
            let initial = (((t1 - t0) / (4.0 * width)).ceil() as usize).clamp(8, 1 << 14);
            let g = |t: f64| f.clark_density_at(a, unit(t) * r).value;
            (r, integrate_arc(&g, t0, t1, initial).value)
        })
        .collect();
    let h: Vec<f64> = ladder.iter().map(|(r, _)| 1.0 - r).collect();
    let v: Vec<f64> = ladder.iter().map(|(_, m)| *m).collect();
    let ex = extrapolate_to_zero(&h, &v);
    let g = |t: f64| f.clark_density_at(a, unit(t)).value;
    let ac_mass = integrate_arc(&g, t0, t1, 64).value;
    let atoms = f.closed_form_atoms(alpha);
    let on_endpoint = atoms.as_ref().is_some_and(|at| {
        at.iter().any(|x| {
            let d = |p: CirclePoint| {
                let e = (x.turn - p.turn_f64()).abs();
                e.min(1.0 - e)
            };
            d(arc.start()) < 1e-12 || d(arc.end()) < 1e-12
        })
    });
    let converged = ex.error <= LADDER_TOL * ex.value.abs().max(1.0) && !on_endpoint;
    let value = ex.value.max(0.0);
    Ok(ArcMass {
        alpha,
        arc_start: arc.start(),
        arc_length: arc.length_f64(),
        ladder,
        extrapolated: value,
        error_estimate: ex.error,
        verdict: if converged { Verdict::Finite(value) } else { Verdict::Undetermined },
        ac_mass,
        singular_mass: (value - ac_mass).max(0.0),
        total_mass: total_mass(f, alpha),
        atoms,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DisintegrationRoute {
    /// Radial Poisson integrals of `mu_alpha` extrapolated to the circle;
    /// captures singular parts without knowing them.
    RadialLadder,
    /// Boundary density plus closed-form atoms.
    DensityAtoms { allow_ac_only: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fidelity {
    Full,
    /// Singular parts were dropped at the caller's request.
    AcOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct DisintegrationReport {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub grid_log2: u32,
    pub alpha_log2: u32,
    pub route: DisintegrationRoute,
    pub fidelity: Fidelity,
    /// `(r, alpha-average of int h P_r[mu_alpha] dm)` for the ladder route.
    pub ladder: Vec<(f64, f64)>,
}

/// Radii used by the ladder route for a grid of `n` nodes: the Poisson kernel
/// at `r` needs roughly `60 / (1 - r)` nodes to be integrated to roundoff.
pub fn disintegration_radii(n: usize) -> Vec<f64> {
    let jmax = ((n as f64 / 60.0).log2().floor() as i32).max(1);
    let jmin = (jmax - 3).max(1);
    (jmin..=jmax).map(|j| 1.0 - 2f64.powi(-j)).collect()
}

/// Checks `int h dm = int int h dmu_alpha dm(alpha)` with `2^k_alpha`
/// equispaced `alpha`.
pub fn disintegration_check(
    f: &DiscMap,
    h: &RealGrid,
    k_alpha: u32,
    route: DisintegrationRoute,
) -> Result<DisintegrationReport> {
    if !(1..=20).contains(&k_alpha) {
        return Err(Error::validation(format!("alpha grid log2 {k_alpha} outside [1, 20]")));
    }
    let n = h.len();
    let k = 1usize << k_alpha;
    let alphas: Vec<CirclePoint> =
        (0..k).map(|m| CirclePoint::from_fraction(m as i64, k as i64).expect("nonzero denominator")).collect();
    let lhs = harmonic::mean(h);
    let hv = h.values();
    let (rhs, ladder, fidelity) = match route {
        DisintegrationRoute::RadialLadder => {
            let radii = disintegration_radii(n);
            let samples: Vec<Vec<(Complex64, f64)>> = radii.iter().map(|&r| f.circle_samples(r, n)).collect();
            let steps: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
            // The alpha-average commutes with the radial limit, so average the
            // ladders first and extrapolate once: the extrapolation picks its
            // tableau entry from the data and is not linear.
            let per: Vec<Vec<f64>> = alphas
                .par_iter()
                .map(|al| {
                    let a = al.to_complex();
                    samples
                        .iter()
                        .map(|s| {
                            let terms: Vec<f64> =
                                s.iter().zip(hv).map(|((fz, d), hn)| hn * d / (a - fz).norm_sqr()).collect();
                            pairwise_sum(&terms) / n as f64
                        })
                        .collect()
                })
                .collect();
            let ladder: Vec<(f64, f64)> = radii
                .iter()
                .enumerate()
                .map(|(i, &r)| (r, pairwise_mean(&per.iter().map(|v| v[i]).collect::<Vec<_>>())))
                .collect();
            let vals: Vec<f64> = ladder.iter().map(|p| p.1).collect();
            let rhs = extrapolate_to_zero(&steps, &vals).value;
            (rhs, ladder, Fidelity::Full)
        }
        DisintegrationRoute::DensityAtoms { allow_ac_only } => {
            let interp = BandLimited::new(h);
            let mut fidelity = Fidelity::Full;
            let mut atoms = Vec::with_capacity(k);
            for al in &alphas {
                match f.closed_form_atoms(*al) {
                    Some(a) => atoms.push(a),
                    None if allow_ac_only => {
                        fidelity = Fidelity::AcOnly;
                        atoms.push(Vec::new());
                    }
                    None => return Err(Error::SingularPartUnknown(f.kind_name())),
                }
            }
            let per: Vec<f64> = alphas
                .par_iter()
                .zip(atoms.par_iter())
                .map(|(al, at)| {
                    let a = al.to_complex();
                    let terms: Vec<f64> = (0..n)
                        .map(|j| hv[j] * f.clark_density_at(a, unit(j as f64 / n as f64)).value)
                        .collect();
                    let ac = pairwise_sum(&terms) / n as f64;
                    ac + at.iter().map(|x| x.mass * interp.value(x.turn)).sum::<f64>()
                })
                .collect();
            (pairwise_mean(&per), Vec::new(), fidelity)
        }
    };
    Ok(DisintegrationReport {
        lhs,
        rhs,
        gap: (lhs - rhs).abs(),
        grid_log2: h.log2_size(),
        alpha_log2: k_alpha,
        route,
        fidelity,
        ladder,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalAcReport {
    pub arc_start: CirclePoint,
    pub arc_length: f64,
    pub alpha_log2: u32,
    /// Average over alpha of `mu_alpha(I)`.
    pub mean_arc_mass: f64,
    /// Average over alpha of the absolutely continuous mass of `I`.
    pub mean_ac_mass: f64,
    /// `int_I (average over alpha of the density) dm`, i.e. the Fubini swap.
    pub fubini: f64,
    pub max_singular_mass: f64,
    pub unconverged: usize,
}

/// The alpha-average of `mu_alpha(I)` together with the intermediate
/// quantities of the Fubini argument; all of them should equal `|I|`.
pub fn local_ac_check(f: &DiscMap, arc: &ArcInterval, k_alpha: u32, radii: &[f64]) -> Result<LocalAcReport> {
    check_ladder(radii)?;
    if !(1..=16).contains(&k_alpha) {
        return Err(Error::validation(format!("alpha grid log2 {k_alpha} outside [1, 16]")));
    }
    let k = 1usize << k_alpha;
    let alphas: Vec<CirclePoint> =
        (0..k).map(|m| CirclePoint::from_fraction(m as i64, k as i64).expect("nonzero denominator")).collect();
    let masses: Vec<ArcMass> =
        alphas.par_iter().map(|&a| measure_of_arc(f, a, arc, radii)).collect::<Result<_>>()?;
    let (t0, t1) = arc.turn_range();
    let avg_density = |t: f64| {
        let z = unit(t);
        let v: Vec<f64> = alphas.iter().map(|a| f.clark_density_at(a.to_complex(), z).value).collect();
        pairwise_mean(&v)
    };
    let fubini = integrate_arc(&avg_density, t0, t1, 64).value;
    Ok(LocalAcReport {
        arc_start: arc.start(),
        arc_length: arc.length_f64(),
        alpha_log2: k_alpha,
        mean_arc_mass: pairwise_mean(&masses.iter().map(|m| m.extrapolated).collect::<Vec<_>>()),
        mean_ac_mass: pairwise_mean(&masses.iter().map(|m| m.ac_mass).collect::<Vec<_>>()),
        fubini,
        max_singular_mass: masses.iter().map(|m| m.singular_mass).fold(0.0, f64::max),
        unconverged: masses.iter().filter(|m| !m.verdict.is_finite()).count(),
    })
}

/// Evidence for the test `int_I ln(1 - |f|) dm > -infinity`.
#[derive(Clone, Debug, Serialize)]
pub struct LogIntegral {
    pub verdict: Verdict,
    /// Running estimate after each refinement sweep.
    pub sweeps: Vec<f64>,
    pub error_estimate: f64,
    pub intervals: usize,
    pub note: String,
}

const LOG_TOL: f64 = 1e-9;
const LOG_MAX_INTERVALS: usize = 1 << 16;
const LOG_MAX_SWEEPS: usize = 48;

/// Adaptive dyadic refinement of `int_I ln(1 - |f|) dm`.
///
/// A panel on which most Kronrod nodes see `|f| = 1` is the signature of an
/// extreme map (a set of positive measure where `|f| = 1`), reported as
/// divergent. An isolated node with `|f| = 1` is an integrable singularity of
/// the logarithm and is nudged off.
pub fn log_integrability(f: &DiscMap, arc: &ArcInterval) -> LogIntegral {
    let defect = |t: f64| {
        let z = unit(t);
        f.one_minus_abs_sq(z) / (1.0 + f.eval(z).norm())
    };
    let (a, b) = arc.turn_range();
    let span = b - a;
    // Probe: count nodes with a vanishing defect on a coarse net.
    let probe = 512usize;
    let dead = (0..probe).filter(|&j| defect(a + span * (j as f64 + 0.5) / probe as f64) <= 0.0).count();
    if dead * 2 > probe {
        return LogIntegral {
            verdict: Verdict::Divergent,
            sweeps: Vec::new(),
            error_estimate: f64::INFINITY,
            intervals: 0,
            note: format!("|f| = 1 at {dead} of {probe} probe points: extreme on the arc"),
        };
    }
    let g = |t: f64| {
        let mut d = defect(t);
        let mut step = 1e-12;
        while d <= 0.0 && step < 1e-6 {
            d = defect(t + step * span).max(defect(t - step * span));
            step *= 10.0;
        }
        if d <= 0.0 {
            f64::NEG_INFINITY
        } else {
            d.ln()
        }
    };
    let mut panels: Vec<(f64, f64, f64, f64)> = (0..64)
        .map(|i| {
            let lo = a + span * i as f64 / 64.0;
            let hi = a + span * (i + 1) as f64 / 64.0;
            let (v, e) = gk15(lo, hi, &g);
            (lo, hi, v, e)
        })
        .collect();
    let mut sweeps = Vec::new();
    let mut note = String::new();
    loop {
        let total = pairwise_sum(&panels.iter().map(|p| p.2).collect::<Vec<_>>());
        let err = pairwise_sum(&panels.iter().map(|p| p.3).collect::<Vec<_>>());
        sweeps.push(total);
        if !total.is_finite() {
            note = "integrand unbounded below on a whole panel".into();
            return LogIntegral { verdict: Verdict::Divergent, sweeps, error_estimate: err, intervals: panels.len(), note };
        }
        if err <= LOG_TOL * total.abs().max(1.0) {
            return LogIntegral {
                verdict: Verdict::Finite(total),
                sweeps,
                error_estimate: err,
                intervals: panels.len(),
                note,
            };
        }
        if sweeps.len() >= LOG_MAX_SWEEPS || panels.len() >= LOG_MAX_INTERVALS {
            break;
        }
        // Bisect every panel whose error exceeds its share of the budget.
        let budget = LOG_TOL * total.abs().max(1.0);
        let mut next = Vec::with_capacity(panels.len() * 2);
        for &(lo, hi, v, e) in &panels {
            if e > budget * (hi - lo) / span {
                let mid = 0.5 * (lo + hi);
                let (v1, e1) = gk15(lo, mid, &g);
                let (v2, e2) = gk15(mid, hi, &g);
                next.push((lo, mid, v1, e1));
                next.push((mid, hi, v2, e2));
            } else {
                next.push((lo, hi, v, e));
            }
        }
        panels = next;
    }
    let err = pairwise_sum(&panels.iter().map(|p| p.3).collect::<Vec<_>>());
    // A divergent integral keeps drifting downward by non-shrinking amounts.
    let n = sweeps.len();
    let drifting = n >= 6 && {
        let d: Vec<f64> = sweeps.windows(2).map(|w| w[0] - w[1]).collect();
        d[d.len() - 4..].iter().all(|&x| x > 0.0)
            && d[d.len() - 4..].windows(2).all(|w| w[1] >= (1.0 - 1e-3) * w[0])
    };
    if drifting {
        note = "refinement keeps lowering the estimate without contracting".into();
        return LogIntegral { verdict: Verdict::Divergent, sweeps, error_estimate: err, intervals: panels.len(), note };
    }
    note.push_str("refinement budget exhausted before the error target");
    LogIntegral { verdict: Verdict::Undetermined, sweeps, error_estimate: err, intervals: panels.len(), note }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::Turn;
    use std::f64::consts::{PI, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn g() -> DiscMap {
        DiscMap::rational(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-2.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    fn arc(p: i64, q: i64, lp: i64, lq: i64) -> ArcInterval {
        ArcInterval::new(CirclePoint::from_fraction(p, q).unwrap(), Turn::new(lp, lq)).unwrap()
    }

    fn pt(p: i64, q: i64) -> CirclePoint {
        CirclePoint::from_fraction(p, q).unwrap()
    }

    #[test]
    fn density_examples() {
        let zero = DiscMap::Constant(c(0.0, 0.0));
        let d = clark_density(&zero, pt(1, 3), 0.9, 6).unwrap();
        assert!(d.density.values().iter().all(|v| (v - 1.0).abs() < 1e-15));
        let d = clark_density(&g(), CirclePoint::ONE, 1.0 - 2f64.powi(-10), 8).unwrap();
        for (j, v) in d.density.values().iter().enumerate() {
            assert!((v - (1.0 - (TAU * j as f64 / 256.0).cos())).abs() < 1e-14);
        }
        assert!(d.max_radial_gap() < 1e-2);
        let d = clark_density(&DiscMap::Identity, CirclePoint::ONE, 0.99, 6).unwrap();
        assert_eq!(d.flagged, vec![0]);
        assert!(d.density.values().iter().skip(1).all(|&v| v == 0.0));
    }

    #[test]
    fn total_masses() {
        assert_eq!(total_mass(&DiscMap::Constant(c(0.0, 0.0)), pt(2, 7)), 1.0);
        assert!((total_mass(&g(), CirclePoint::ONE) - 1.0).abs() < 1e-15);
        assert!((total_mass(&DiscMap::Constant(c(0.5, 0.0)), CirclePoint::ONE) - 3.0).abs() < 1e-15);
    }

    #[test]
    fn arc_masses() {
        let ladder = default_ladder();
        let zero = DiscMap::Constant(c(0.0, 0.0));
        let m = measure_of_arc(&zero, pt(1, 5), &arc(1, 3, 1, 4), &ladder).unwrap();
        assert!((m.verdict.value().unwrap() - 0.25).abs() < 1e-12);

        let inside = measure_of_arc(&DiscMap::Identity, CirclePoint::ONE, &arc(7, 8, 1, 4), &ladder).unwrap();
        assert!((inside.extrapolated - 1.0).abs() < 1e-6, "{inside:?}");
        assert!((inside.singular_mass - 1.0).abs() < 1e-6);
        let outside = measure_of_arc(&DiscMap::Identity, CirclePoint::ONE, &arc(1, 8, 1, 4), &ladder).unwrap();
        assert!(outside.extrapolated.abs() < 1e-6);
        let touching = measure_of_arc(&DiscMap::Identity, CirclePoint::ONE, &arc(0, 1, 1, 4), &ladder).unwrap();
        assert_eq!(touching.verdict, Verdict::Undetermined);

        // Density 1 - cos(2 pi t) integrates to 1/2 over the upper half.
        let half = measure_of_arc(&g(), CirclePoint::ONE, &arc(0, 1, 1, 2), &ladder).unwrap();
        assert!((half.extrapolated - 0.5).abs() < 1e-8, "{half:?}");
        assert!((half.ac_mass - 0.5).abs() < 1e-10);
        // Over [0, 1/4]: 1/4 - 1/(2 pi).
        let q = measure_of_arc(&g(), CirclePoint::ONE, &arc(0, 1, 1, 4), &ladder).unwrap();
        assert!((q.extrapolated - (0.25 - 0.5 / PI)).abs() < 1e-8);
        assert!(measure_of_arc(&g(), CirclePoint::ONE, &arc(0, 1, 1, 4), &[0.9, 0.8]).is_err());
    }

    #[test]
    fn alpha_minus_one_has_half_atom() {
        // For z/(z-2) and alpha = -1 the density is 1/2 and the atom at 1 has mass 1/2.
        let m = measure_of_arc(&g(), pt(1, 2), &arc(7, 8, 1, 4), &default_ladder()).unwrap();
        assert!((m.ac_mass - 0.125).abs() < 1e-10);
        assert!((m.extrapolated - 0.625).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn disintegration_examples() {
        let h = GridFunction::from_fn(10, |t| (TAU * t).cos()).unwrap();
        let zero = DiscMap::Constant(c(0.0, 0.0));
        let r = disintegration_check(&zero, &h, 6, DisintegrationRoute::RadialLadder).unwrap();
        assert!(r.lhs.abs() < 1e-15 && r.rhs.abs() < 1e-12);
        let r = disintegration_check(&g(), &h, 10, DisintegrationRoute::RadialLadder).unwrap();
        assert!(r.gap <= 1e-6, "{r:?}");
        let smooth = GridFunction::from_fn(8, |t| (0.7 * (TAU * t).sin()).exp()).unwrap();
        let r = disintegration_check(&DiscMap::Identity, &smooth, 8, DisintegrationRoute::DensityAtoms { allow_ac_only: false })
            .unwrap();
        assert!(r.gap < 1e-10, "{r:?}");
        assert!(matches!(
            disintegration_check(&g(), &h, 4, DisintegrationRoute::DensityAtoms { allow_ac_only: false }),
            Err(Error::SingularPartUnknown(_))
        ));
        let r = disintegration_check(&g(), &h, 4, DisintegrationRoute::DensityAtoms { allow_ac_only: true }).unwrap();
        assert_eq!(r.fidelity, Fidelity::AcOnly);
    }

    #[test]
    fn local_ac_quarter_arc() {
        let r = local_ac_check(&g(), &arc(1, 8, 1, 4), 6, &default_ladder()).unwrap();
        assert!((r.mean_arc_mass - 0.25).abs() < 1e-4, "{r:?}");
        assert!((r.fubini - 0.25).abs() < 1e-8);
    }

    #[test]
    fn log_integrability_examples() {
        let fin = log_integrability(&g(), &ArcInterval::full());
        assert!(fin.verdict.is_finite(), "{fin:?}");
        // On the circle |f| = 1/|zeta - 2| = 1/s with s = sqrt(1 + 8 sin^2(theta/2)),
        // so ln(1 - |f|) = ln(8 sin^2(theta/2)) - ln(s + 1) - ln(s).
        let exact = quad::adaptive(
            &|t: f64| {
                let sn = (PI * t).sin();
                let s = (1.0 + 8.0 * sn * sn).sqrt();
                (8.0 * sn * sn).ln() - (s + 1.0).ln() - s.ln()
            },
            0.0,
            1.0,
            64,
            1e-13,
            1e-13,
            100_000,
        );
        let got = fin.verdict.value().unwrap();
        assert!((got - exact.value).abs() < 1e-7, "{got} vs {}", exact.value);
        let div = log_integrability(&DiscMap::Identity, &ArcInterval::full());
        assert_eq!(div.verdict, Verdict::Divergent);
        let zero = log_integrability(&DiscMap::Constant(c(0.0, 0.0)), &ArcInterval::full());
        assert_eq!(zero.verdict, Verdict::Finite(0.0));
    }
}
