//! Holomorphic self-maps of the disc and their continuous extensions to the
//! closed disc.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::circle::{CirclePoint, Turn};
use crate::error::{Error, Result};
use crate::harmonic::{self, ComplexGrid, GridFunction, HerglotzTransform, RealGrid};
use crate::numeric::{turn_of, unit, winding_number};
use crate::profile::WeightProfile;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Below this distance `|alpha - f|` a Clark density node counts as sitting
/// on an atom.
pub const ATOM_FLAG: f64 = 1e-14;
/// Points with `|z|` at least this close to 1 are treated as boundary points.
const BOUNDARY_SLACK: f64 = 1e-14;

/// Point mass of a Clark measure.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Atom {
    pub turn: f64,
    pub mass: f64,
}

/// A Clark density value, with a flag when the node lies on an atom.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityValue {
    pub value: f64,
    pub flagged: bool,
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
}

fn horner_deriv(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = ZERO;
    for (k, &a) in c.iter().enumerate().skip(1).rev() {
        acc = acc * z + a * k as f64;
    }
    acc
}

/// `p / q` with coefficients in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
    /// Coefficients `d_m`, `m >= 0`, of `|q|^2 - |p|^2 = d_0 + 2 Re sum d_m zeta^m`
    /// on the circle.
    defect: Vec<Complex64>,
}

fn trim(mut c: Vec<Complex64>) -> Vec<Complex64> {
    while c.len() > 1 && c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    c
}

fn autocorrelation(c: &[Complex64], len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|m| {
            let mut acc = ZERO;
            for j in 0..c.len().saturating_sub(m) {
                acc += c[j + m] * c[j].conj();
            }
            acc
        })
        .collect()
}

const VALIDATION_SAMPLES: usize = 8192;

impl RationalMap {
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        if num.is_empty() || den.is_empty() {
            return Err(Error::NotSelfMap("empty coefficient list".into()));
        }
        if num.iter().chain(&den).any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NotSelfMap("non-finite coefficient".into()));
        }
        let num = trim(num);
        let den = trim(den);
        if den.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::NotSelfMap("zero denominator".into()));
        }
        let len = num.len().max(den.len());
        let qq = autocorrelation(&den, len);
        let pp = autocorrelation(&num, len);
        let defect = qq.iter().zip(&pp).map(|(a, b)| a - b).collect();
        let map = RationalMap { num, den, defect };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        let qmin = (0..VALIDATION_SAMPLES)
            .map(|j| horner(&self.den, unit(j as f64 / VALIDATION_SAMPLES as f64)).norm())
            .fold(f64::INFINITY, f64::min);
        if qmin <= 1e-12 {
            return Err(Error::NotSelfMap(format!("denominator nearly vanishes on the circle (min {qmin:e})")));
        }
        let wind = winding_number(|z| horner(&self.den, z), 1.0, VALIDATION_SAMPLES);
        if wind != 0 {
            return Err(Error::NotSelfMap(format!("{wind} pole(s) inside the disc")));
        }
        let r = 1.0 - 2f64.powi(-12);
        let fmax = (0..VALIDATION_SAMPLES)
            .map(|j| self.eval(unit(j as f64 / VALIDATION_SAMPLES as f64) * r).norm())
            .fold(0.0, f64::max);
        if fmax > 1.0 - 1e-12 {
            return Err(Error::NotSelfMap(format!("max |f| = {fmax} on |z| = 1 - 2^-12")));
        }
        Ok(())
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.num
    }

    pub fn denominator(&self) -> &[Complex64] {
        &self.den
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.num, z) / horner(&self.den, z)
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        let (p, q) = (horner(&self.num, z), horner(&self.den, z));
        (horner_deriv(&self.num, z) * q - p * horner_deriv(&self.den, z)) / (q * q)
    }

    fn boundary_defect(&self, zeta: Complex64) -> f64 {
        let tail = horner(&self.defect[1..], zeta) * zeta;
        let d = self.defect[0].re + 2.0 * tail.re;
        d / horner(&self.den, zeta).norm_sqr()
    }

    fn interior_defect(&self, z: Complex64) -> f64 {
        let (p, q) = (horner(&self.num, z), horner(&self.den, z));
        (q.norm_sqr() - p.norm_sqr()) / q.norm_sqr()
    }
}

/// `f = (H - 1) / (H + 1)` with `H` the Herglotz integral of a nonnegative
/// density `w`.
#[derive(Clone, Debug)]
pub struct HerglotzMap {
    weight: RealGrid,
    transform: HerglotzTransform,
    profile: Option<WeightProfile>,
}

impl HerglotzMap {
    /// Map defined by a sampled density, read as its band-limited interpolant.
    pub fn from_grid(w: &RealGrid) -> Result<Self> {
        let (weight, transform) = harmonic::herglotz_transform(w)?;
        if transform.coefficients()[0].re <= 0.0 {
            return Err(Error::validation("Herglotz density has zero mass"));
        }
        Ok(HerglotzMap { weight, transform, profile: None })
    }

    /// Map defined by an exact weight; the grid holds its samples.
    pub fn from_profile(profile: WeightProfile, log2_size: u32) -> Result<Self> {
        let w = GridFunction::from_fn(log2_size, |t| profile.value(t))?;
        let (weight, transform) = harmonic::herglotz_transform(&w)?;
        Ok(HerglotzMap { weight, transform, profile: Some(profile) })
    }

    pub fn weight(&self) -> &RealGrid {
        &self.weight
    }

    pub fn profile(&self) -> Option<&WeightProfile> {
        self.profile.as_ref()
    }

    pub fn transform(&self) -> &HerglotzTransform {
        &self.transform
    }

    /// Herglotz integral on the closed disc.
    pub fn h(&self, z: Complex64) -> Complex64 {
        let on_circle = z.norm() >= 1.0 - BOUNDARY_SLACK;
        match (&self.profile, on_circle) {
            (Some(p), true) => p.herglotz_boundary(turn_of(z)),
            (Some(p), false) => p.herglotz(z),
            (None, _) => self.transform.eval(z),
        }
    }

    pub fn h_deriv(&self, z: Complex64) -> Complex64 {
        match &self.profile {
            Some(p) => p.herglotz_deriv(z),
            None => self.transform.eval_deriv(z),
        }
    }

    /// Boundary weight at a turn: exact for profiles, interpolated otherwise.
    pub fn weight_at(&self, turn: f64) -> f64 {
        match &self.profile {
            Some(p) => p.value(turn),
            None => self.transform.eval(unit(turn)).re.max(0.0),
        }
    }
}

impl PartialEq for HerglotzMap {
    fn eq(&self, o: &Self) -> bool {
        self.weight == o.weight && self.profile == o.profile
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DiscMap {
    Identity,
    Constant(Complex64),
    /// `z -> (a - z) / (1 - conj(a) z)`.
    Moebius(Complex64),
    Rational(RationalMap),
    Herglotz(HerglotzMap),
}

impl DiscMap {
    pub fn constant(c: Complex64) -> Result<Self> {
        if !(c.norm() < 1.0) {
            return Err(Error::NotSelfMap(format!("constant {c} is not inside the disc")));
        }
        Ok(DiscMap::Constant(c))
    }

    pub fn moebius(a: Complex64) -> Result<Self> {
        if !(a.norm() < 1.0) {
            return Err(Error::NotSelfMap(format!("Moebius parameter {a} is not inside the disc")));
        }
        Ok(DiscMap::Moebius(a))
    }

    pub fn rational(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        RationalMap::new(num, den).map(DiscMap::Rational)
    }

    pub fn herglotz(w: &RealGrid) -> Result<Self> {
        HerglotzMap::from_grid(w).map(DiscMap::Herglotz)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            DiscMap::Identity => "identity",
            DiscMap::Constant(_) => "constant",
            DiscMap::Moebius(_) => "moebius",
            DiscMap::Rational(_) => "rational",
            DiscMap::Herglotz(_) => "herglotz",
        }
    }

    /// Value on the closed disc (boundary values are the continuous extension).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            DiscMap::Identity => z,
            DiscMap::Constant(c) => *c,
            DiscMap::Moebius(a) => (a - z) / (ONE - a.conj() * z),
            DiscMap::Rational(r) => r.eval(z),
            DiscMap::Herglotz(h) => {
                let hz = h.h(z);
                (hz - 1.0) / (hz + 1.0)
            }
        }
    }

    pub fn eval_interior(&self, z: harmonic::InteriorPoint) -> Complex64 {
        self.eval(z.value())
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        match self {
            DiscMap::Identity => ONE,
            DiscMap::Constant(_) => ZERO,
            DiscMap::Moebius(a) => {
                let d = ONE - a.conj() * z;
                -(1.0 - a.norm_sqr()) / (d * d)
            }
            DiscMap::Rational(r) => r.deriv(z),
            DiscMap::Herglotz(h) => {
                let hz = h.h(z) + 1.0;
                2.0 * h.h_deriv(z) / (hz * hz)
            }
        }
    }

    pub fn boundary_value(&self, turn: f64) -> Complex64 {
        self.eval(unit(turn))
    }

    /// `1 - |f(z)|^2` on the closed disc in a cancellation-free form; exactly
    /// zero on the circle for inner closed forms.
    pub fn one_minus_abs_sq(&self, z: Complex64) -> f64 {
        let on_circle = z.norm() >= 1.0 - BOUNDARY_SLACK;
        match self {
            DiscMap::Identity => {
                if on_circle {
                    0.0
                } else {
                    1.0 - z.norm_sqr()
                }
            }
            DiscMap::Constant(c) => 1.0 - c.norm_sqr(),
            DiscMap::Moebius(a) => {
                if on_circle {
                    0.0
                } else {
                    (1.0 - a.norm_sqr()) * (1.0 - z.norm_sqr()) / (ONE - a.conj() * z).norm_sqr()
                }
            }
            DiscMap::Rational(r) => {
                if on_circle {
                    r.boundary_defect(z / z.norm())
                } else {
                    r.interior_defect(z)
                }
            }
            DiscMap::Herglotz(h) => {
                let hz = h.h(z);
                4.0 * hz.re.max(0.0) / (hz + 1.0).norm_sqr()
            }
        }
        .max(0.0)
    }

    /// `1 - |f(r e^{2 pi i t})|`, used by radial probes.
    pub fn radial_defect(&self, r: f64, turn: f64) -> f64 {
        if let DiscMap::Identity = self {
            return 1.0 - r;
        }
        let z = unit(turn) * r;
        self.one_minus_abs_sq(z) / (1.0 + self.eval(z).norm())
    }

    /// Poisson integral of the Clark measure `mu_alpha` at `z`; on the circle
    /// this is the density of its absolutely continuous part.
    pub fn clark_density_at(&self, alpha: Complex64, z: Complex64) -> DensityValue {
        if let DiscMap::Herglotz(h) = self {
            if alpha == ONE && z.norm() >= 1.0 - BOUNDARY_SLACK {
                // 4 Re H / |2|^2: the density of mu_1 is the weight itself.
                return DensityValue { value: h.weight_at(turn_of(z)), flagged: false };
            }
            let hz = h.h(z);
            let num = 4.0 * hz.re.max(0.0);
            let den = alpha * (hz + 1.0) - hz + 1.0;
            let flagged = den.norm() < ATOM_FLAG * (hz + 1.0).norm();
            let d = den.norm_sqr().max((ATOM_FLAG * (hz + 1.0).norm()).powi(2));
            return DensityValue { value: num / d, flagged };
        }
        let num = self.one_minus_abs_sq(z);
        let gap = (alpha - self.eval(z)).norm();
        let flagged = gap < ATOM_FLAG;
        DensityValue { value: num / gap.max(ATOM_FLAG).powi(2), flagged }
    }

    /// Whether `z` is within the resolution bound of the representation.
    pub fn resolves(&self, z: Complex64) -> bool {
        match self {
            DiscMap::Herglotz(h) if h.profile.is_none() => {
                z.norm() <= harmonic::resolution_radius(h.weight.log2_size())
            }
            _ => true,
        }
    }

    /// Samples `f(r e^{2 pi i j / N})`.
    pub fn boundary_trace(&self, r: f64, k: u32) -> Result<ComplexGrid> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::NotInterior(Complex64::new(r, 0.0)));
        }
        match self {
            DiscMap::Herglotz(h) if h.profile.is_none() && h.weight.log2_size() == k => {
                Ok(h.transform.on_circle(r).map(|hz| (hz - 1.0) / (hz + 1.0)))
            }
            _ => {
                let n = 1usize << k;
                let vals: Vec<Complex64> =
                    (0..n).into_par_iter().map(|j| self.eval(unit(j as f64 / n as f64) * r)).collect();
                GridFunction::new(k, vals)
            }
        }
    }

    /// `(f(z), 1 - |f(z)|^2)` at `r exp(2 pi i j / n)` for all `j`.
    pub fn circle_samples(&self, r: f64, n: usize) -> Vec<(Complex64, f64)> {
        if let DiscMap::Herglotz(h) = self {
            if h.profile.is_none() && n == h.weight.len() && r < 1.0 {
                return h
                    .transform
                    .on_circle(r)
                    .values()
                    .iter()
                    .map(|&hz| ((hz - 1.0) / (hz + 1.0), 4.0 * hz.re.max(0.0) / (hz + 1.0).norm_sqr()))
                    .collect();
            }
        }
        (0..n)
            .into_par_iter()
            .map(|j| {
                let z = unit(j as f64 / n as f64) * r;
                (self.eval(z), self.one_minus_abs_sq(z))
            })
            .collect()
    }

    /// `rho f(conj(rho) z)` with `rho = exp(2 pi i beta)`.
    pub fn rotated(&self, beta: Turn) -> Result<DiscMap> {
        let rho = CirclePoint::new(beta).to_complex();
        Ok(match self {
            DiscMap::Identity => DiscMap::Identity,
            DiscMap::Constant(c) => DiscMap::Constant(rho * c),
            DiscMap::Moebius(a) => DiscMap::Moebius(rho * a),
            DiscMap::Rational(r) => {
                let mut pk = ONE;
                let mut num = Vec::with_capacity(r.num.len());
                let mut den = Vec::with_capacity(r.den.len());
                for k in 0..r.num.len().max(r.den.len()) {
                    if let Some(&c) = r.num.get(k) {
                        num.push(rho * c * pk);
                    }
                    if let Some(&c) = r.den.get(k) {
                        den.push(c * pk);
                    }
                    pk *= rho.conj();
                }
                DiscMap::Rational(RationalMap::new(num, den)?)
            }
            DiscMap::Herglotz(_) => {
                return Err(Error::validation("rotation of Herglotz-data maps is not representable"));
            }
        })
    }

    /// Point masses of `mu_alpha` when they are known in closed form:
    /// `Some(vec![])` means the measure is known to have no atoms.
    pub fn closed_form_atoms(&self, alpha: CirclePoint) -> Option<Vec<Atom>> {
        let a_c = alpha.to_complex();
        match self {
            DiscMap::Identity => Some(vec![Atom { turn: alpha.turn_f64(), mass: 1.0 }]),
            DiscMap::Moebius(a) => {
                let zeta = (a - a_c) / (ONE - a.conj() * a_c);
                let mass = (ONE - a.conj() * zeta).norm_sqr() / (1.0 - a.norm_sqr());
                Some(vec![Atom { turn: turn_of(zeta), mass }])
            }
            DiscMap::Constant(_) => Some(vec![]),
            DiscMap::Herglotz(_) if alpha == CirclePoint::ONE => Some(vec![]),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::CirclePoint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_over_z_minus_2() -> DiscMap {
        DiscMap::rational(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(-2.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    fn one_minus_cos(k: u32) -> DiscMap {
        DiscMap::herglotz(&GridFunction::from_fn(k, |t| 1.0 - (TAU * t).cos()).unwrap()).unwrap()
    }

    fn random_disc(rng: &mut ChaCha8Rng, rmax: f64) -> Complex64 {
        let r = rmax * rng.random::<f64>().sqrt();
        unit(rng.random::<f64>()) * r
    }

    #[test]
    fn herglotz_examples() {
        let zero = DiscMap::herglotz(&GridFunction::from_fn(5, |_| 1.0).unwrap()).unwrap();
        assert!(zero.eval(c(0.4, 0.3)).norm() < 1e-15);
        assert_eq!(zero.eval(ZERO), ZERO);
        let f = one_minus_cos(8);
        assert!((f.eval(c(0.5, 0.0)) + 1.0 / 3.0).norm() < 1e-15);
        assert!((f.deriv(ZERO) + 0.5).norm() < 1e-15);
        assert_eq!(DiscMap::Identity.eval(c(0.3, 0.4)), c(0.3, 0.4));
        assert_eq!(DiscMap::Constant(c(0.2, 0.1)).deriv(c(0.5, 0.0)), ZERO);
    }

    #[test]
    fn herglotz_matches_rational_closed_form() {
        let f = one_minus_cos(12);
        let g = z_over_z_minus_2();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let z = random_disc(&mut rng, 0.9);
            assert!((f.eval(z) - g.eval(z)).norm() < 1e-8);
            // Closed form f = z / (z - 2).
            assert!((g.eval(z) - z / (z - 2.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let maps = [
            one_minus_cos(10),
            z_over_z_minus_2(),
            DiscMap::Moebius(c(0.3, -0.2)),
            DiscMap::Identity,
        ];
        for f in &maps {
            for _ in 0..20 {
                let z = random_disc(&mut rng, 0.8);
                let h = 1e-5;
                let fd = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
                let d = f.deriv(z);
                assert!((d - fd).norm() <= 1e-6 * d.norm().max(1e-3), "{} at {z}", f.kind_name());
            }
        }
    }

    #[test]
    fn schwarz_pick() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let maps = [one_minus_cos(10), z_over_z_minus_2(), DiscMap::Moebius(c(-0.5, 0.4))];
        for f in &maps {
            for _ in 0..200 {
                let (z1, z2) = (random_disc(&mut rng, 0.99), random_disc(&mut rng, 0.99));
                let (w1, w2) = (f.eval(z1), f.eval(z2));
                let lhs = (w1 - w2).norm() / (ONE - w2.conj() * w1).norm();
                let rhs = (z1 - z2).norm() / (ONE - z2.conj() * z1).norm();
                assert!(lhs <= rhs + 1e-9);
            }
        }
    }

    #[test]
    fn boundary_traces() {
        let zero = DiscMap::Constant(ZERO);
        assert!(zero.boundary_trace(0.7, 4).unwrap().values().iter().all(|v| *v == ZERO));
        let id = DiscMap::Identity.boundary_trace(0.9, 5).unwrap();
        assert!(id.values().iter().all(|v| (v.norm() - 0.9).abs() < 1e-15));
        let g = z_over_z_minus_2();
        let near = g.boundary_trace(1.0 - 1e-9, 4).unwrap();
        assert!((near.values()[0] + 1.0).norm() < 1e-8);
        assert!(g.boundary_trace(1.0, 4).is_err());
        // FFT path agrees with pointwise evaluation.
        let f = one_minus_cos(6);
        let tr = f.boundary_trace(0.8, 6).unwrap();
        for (j, v) in tr.values().iter().enumerate() {
            assert!((v - f.eval(unit(j as f64 / 64.0) * 0.8)).norm() < 1e-14);
        }
    }

    #[test]
    fn rational_validation() {
        // z / (z - 1/2) has a pole in the disc.
        assert!(DiscMap::rational(vec![ZERO, ONE], vec![c(-0.5, 0.0), ONE]).is_err());
        // 2z is not a self-map.
        assert!(DiscMap::rational(vec![ZERO, c(2.0, 0.0)], vec![ONE]).is_err());
        // Unimodular constant.
        assert!(DiscMap::rational(vec![c(0.0, 1.0)], vec![ONE]).is_err());
        assert!(DiscMap::constant(c(1.0, 0.0)).is_err());
        // Pole on the circle.
        assert!(DiscMap::rational(vec![c(0.5, 0.0)], vec![c(-1.0, 0.0), ONE]).is_err());
    }

    #[test]
    fn boundary_defect_is_exact_for_rational() {
        let g = z_over_z_minus_2();
        assert_eq!(g.one_minus_abs_sq(ONE), 0.0);
        for t in [0.1, 0.25, 0.6] {
            let th = TAU * t;
            let want = 4.0 * (1.0 - th.cos()) / (5.0 - 4.0 * th.cos());
            assert!((g.one_minus_abs_sq(unit(t)) - want).abs() < 1e-15);
        }
        assert_eq!(DiscMap::Moebius(c(0.3, 0.1)).one_minus_abs_sq(unit(0.3)), 0.0);
    }

    #[test]
    fn clark_density_of_z_over_z_minus_2() {
        let g = z_over_z_minus_2();
        for t in [0.05, 0.3, 0.77] {
            let d = g.clark_density_at(ONE, unit(t)).value;
            assert!((d - (1.0 - (TAU * t).cos())).abs() < 1e-14);
        }
        let f = one_minus_cos(8);
        let d = f.clark_density_at(ONE, unit(0.3)).value;
        assert!((d - (1.0 - (TAU * 0.3).cos())).abs() < 1e-13);
        let flagged = DiscMap::Identity.clark_density_at(ONE, ONE);
        assert!(flagged.flagged && flagged.value.is_finite());
    }

    #[test]
    fn rotation_of_closed_forms() {
        let beta = Turn::new(1, 5);
        let rho = CirclePoint::new(beta).to_complex();
        let g = z_over_z_minus_2();
        let rg = g.rotated(beta).unwrap();
        for z in [c(0.2, 0.3), c(-0.6, 0.1)] {
            assert!((rg.eval(z) - rho * g.eval(rho.conj() * z)).norm() < 1e-14);
        }
        let m = DiscMap::Moebius(c(0.4, 0.0));
        let rm = m.rotated(beta).unwrap();
        let z = c(0.1, -0.5);
        assert!((rm.eval(z) - rho * m.eval(rho.conj() * z)).norm() < 1e-14);
    }

    #[test]
    fn moebius_atoms() {
        let a = c(0.3, 0.4);
        let m = DiscMap::Moebius(a);
        let alpha = CirclePoint::from_fraction(1, 3).unwrap();
        let atoms = m.closed_form_atoms(alpha).unwrap();
        assert_eq!(atoms.len(), 1);
        let zeta = unit(atoms[0].turn);
        assert!((m.eval(zeta) - alpha.to_complex()).norm() < 1e-14);
        assert!((atoms[0].mass - 1.0 / m.deriv(zeta).norm()).abs() < 1e-13);
        // Total mass agrees with the Herglotz formula at z = 0.
        let f0 = m.eval(ZERO);
        let total = (1.0 - f0.norm_sqr()) / (alpha.to_complex() - f0).norm_sqr();
        assert!((atoms[0].mass - total).abs() < 1e-13);
    }
}
