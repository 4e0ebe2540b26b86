//! Exact boundary weights with closed-form Herglotz integrals.
//!
//! Two families back the maps produced by the set construction:
//!
//! * `Polynomial`: `w = |p|^2 / ||p||^2` for `p(z) = prod (z - lambda_j)`. The
//!   Herglotz integral is the polynomial `w_0 + 2 sum_{m>=1} w_m z^m`.
//! * `Distance`: `w = dist(zeta, E)^2 / c`. On the Voronoi cell of a point
//!   `lambda` the weight is the trigonometric polynomial
//!   `2 - conj(lambda) zeta - lambda conj(zeta)`, so each cell contributes a
//!   sum of three elementary integrals with logarithmic antiderivatives.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::circle::{CirclePoint, ResolvedSet};
use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, turn_of, unit};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileMode {
    Polynomial,
    Distance,
}

impl std::str::FromStr for ProfileMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polynomial" => Ok(ProfileMode::Polynomial),
            "distance" => Ok(ProfileMode::Distance),
            other => Err(Error::validation(format!("unknown mode `{other}` (expected polynomial or distance)"))),
        }
    }
}

impl std::fmt::Display for ProfileMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProfileMode::Polynomial => "polynomial",
            ProfileMode::Distance => "distance",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WeightProfile {
    Polynomial(PolynomialWeight),
    Distance(DistanceWeight),
}

impl WeightProfile {
    pub fn polynomial(roots: &[CirclePoint]) -> Self {
        WeightProfile::Polynomial(PolynomialWeight::new(roots))
    }

    pub fn distance(points: &[CirclePoint]) -> Result<Self> {
        DistanceWeight::new(points).map(WeightProfile::Distance)
    }

    pub fn build(mode: ProfileMode, points: &[CirclePoint]) -> Result<Self> {
        match mode {
            ProfileMode::Polynomial => Ok(Self::polynomial(points)),
            ProfileMode::Distance => Self::distance(points),
        }
    }

    pub fn mode(&self) -> ProfileMode {
        match self {
            WeightProfile::Polynomial(_) => ProfileMode::Polynomial,
            WeightProfile::Distance(_) => ProfileMode::Distance,
        }
    }

    pub fn points(&self) -> &[CirclePoint] {
        match self {
            WeightProfile::Polynomial(p) => &p.roots,
            WeightProfile::Distance(d) => d.set.points(),
        }
    }

    /// Normalized weight at `exp(2 pi i turn)`; its mean over the circle is 1.
    pub fn value(&self, turn: f64) -> f64 {
        match self {
            WeightProfile::Polynomial(p) => p.value(turn),
            WeightProfile::Distance(d) => d.value(turn),
        }
    }

    /// Squared H^2 norm of the unnormalized `|phi|`, i.e. the normalizer.
    pub fn norm_sq(&self) -> f64 {
        match self {
            WeightProfile::Polynomial(p) => p.norm_sq,
            WeightProfile::Distance(d) => d.norm_sq,
        }
    }

    /// Herglotz integral on the closed disc. On the circle the real part is
    /// replaced by the exact weight value.
    pub fn herglotz(&self, z: Complex64) -> Complex64 {
        match self {
            WeightProfile::Polynomial(p) => p.herglotz(z),
            WeightProfile::Distance(d) => d.herglotz(z),
        }
    }

    pub fn herglotz_deriv(&self, z: Complex64) -> Complex64 {
        match self {
            WeightProfile::Polynomial(p) => p.herglotz_deriv(z),
            WeightProfile::Distance(d) => d.herglotz_deriv(z),
        }
    }

    /// Herglotz integral at the boundary point `exp(2 pi i turn)`.
    pub fn herglotz_boundary(&self, turn: f64) -> Complex64 {
        match self {
            WeightProfile::Polynomial(p) => Complex64::new(p.value(turn), p.herglotz(unit(turn)).im),
            WeightProfile::Distance(d) => d.herglotz_boundary(turn),
        }
    }
}

/// `|p|^2 / ||p||^2` for a monic polynomial with roots on the circle.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialWeight {
    roots: Vec<CirclePoint>,
    root_values: Vec<Complex64>,
    coeffs: Vec<Complex64>,
    norm_sq: f64,
    herglotz: Vec<Complex64>,
}

impl PolynomialWeight {
    pub fn new(roots: &[CirclePoint]) -> Self {
        let root_values: Vec<Complex64> = roots.iter().map(CirclePoint::to_complex).collect();
        let mut coeffs = vec![ONE];
        for &l in &root_values {
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * l;
            }
            coeffs = next;
        }
        let norm_sq = pairwise_sum(&coeffs.iter().map(|c| c.norm_sqr()).collect::<Vec<_>>());
        let n = coeffs.len();
        let mut herglotz = Vec::with_capacity(n);
        for m in 0..n {
            let terms: Vec<Complex64> = (0..n - m).map(|j| coeffs[j + m] * coeffs[j].conj()).collect();
            let wm = pairwise_sum(&terms) / norm_sq;
            herglotz.push(if m == 0 { Complex64::new(wm.re, 0.0) } else { 2.0 * wm });
        }
        PolynomialWeight { roots: roots.to_vec(), root_values, coeffs, norm_sq, herglotz }
    }

    /// Ascending coefficients of the monic `p`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// The weight is evaluated in product form so it vanishes exactly at roots.
    pub fn value(&self, turn: f64) -> f64 {
        let z = unit(turn);
        self.root_values.iter().map(|&l| (z - l).norm_sqr()).product::<f64>() / self.norm_sq
    }

    pub fn phi(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c) / self.norm_sq.sqrt()
    }

    pub fn herglotz(&self, z: Complex64) -> Complex64 {
        self.herglotz.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn herglotz_deriv(&self, z: Complex64) -> Complex64 {
        let mut acc = ZERO;
        for (k, &c) in self.herglotz.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * k as f64;
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Cell {
    lambda: Complex64,
    theta_a: f64,
    theta_b: f64,
    zeta_a: Complex64,
    zeta_b: Complex64,
}

/// `dist(zeta, E)^2 / c` with `c` the exact mean of `dist^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceWeight {
    set: ResolvedSet,
    cells: Vec<Cell>,
    norm_sq: f64,
}

fn log1m(z: Complex64, zeta: Complex64) -> Complex64 {
    (ONE - z * zeta.conj()).ln()
}

/// `Log(1 - z conj(zeta)) / z`, with its power series near the origin.
fn log_over_z(z: Complex64, zeta: Complex64) -> Complex64 {
    if z.norm() < 0.25 {
        let u = zeta.conj();
        let mut acc = ZERO;
        let mut zp = ONE;
        let mut up = u;
        for n in 1..=40 {
            acc -= zp * up / n as f64;
            zp *= z;
            up *= u;
        }
        acc
    } else {
        log1m(z, zeta) / z
    }
}

fn log_over_z_deriv(z: Complex64, zeta: Complex64) -> Complex64 {
    if z.norm() < 0.25 {
        let u = zeta.conj();
        let mut acc = ZERO;
        let mut zp = ONE;
        let mut up = u * u;
        for n in 2..=41 {
            acc -= zp * up * ((n - 1) as f64 / n as f64);
            zp *= z;
            up *= u;
        }
        acc
    } else {
        let dl = -ONE / (zeta - z);
        (z * dl - log1m(z, zeta)) / (z * z)
    }
}

impl DistanceWeight {
    pub fn new(points: &[CirclePoint]) -> Result<Self> {
        let set = ResolvedSet::new(points.to_vec())?;
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let t = set.turns();
        let n = t.len();
        let mut cells = Vec::with_capacity(n);
        for i in 0..n {
            let (prev, next) = if n == 1 {
                (t[0] - 1.0, t[0] + 1.0)
            } else {
                let prev = if i == 0 { t[n - 1] - 1.0 } else { t[i - 1] };
                let next = if i + 1 == n { t[0] + 1.0 } else { t[i + 1] };
                (prev, next)
            };
            let a = 0.5 * (prev + t[i]);
            let b = 0.5 * (t[i] + next);
            cells.push(Cell {
                lambda: unit(t[i]),
                theta_a: TAU * a,
                theta_b: TAU * b,
                zeta_a: unit(a),
                zeta_b: unit(b),
            });
        }
        let parts: Vec<f64> = cells
            .iter()
            .map(|c| {
                let dtheta = c.theta_b - c.theta_a;
                let dz = c.zeta_b - c.zeta_a;
                let a0 = dtheta / TAU;
                let a1 = -I * dz / TAU;
                let am1 = I * dz.conj() / TAU;
                (2.0 * a0 - c.lambda.conj() * a1 - c.lambda * am1).re
            })
            .collect();
        let norm_sq = pairwise_sum(&parts);
        Ok(DistanceWeight { set, cells, norm_sq })
    }

    pub fn value(&self, turn: f64) -> f64 {
        let (_, d) = self.set.nearest_turn(turn).expect("nonempty set");
        let c = 2.0 * (PI * d).sin();
        c * c / self.norm_sq
    }

    fn cell_terms(&self, z: Complex64, c: &Cell) -> Complex64 {
        let dtheta = c.theta_b - c.theta_a;
        let dz = c.zeta_b - c.zeta_a;
        let dl = log1m(z, c.zeta_b) - log1m(z, c.zeta_a);
        let dm = log_over_z(z, c.zeta_b) - log_over_z(z, c.zeta_a);
        let i0 = dtheta - 2.0 * I * dl;
        let i1 = -I * dz + 2.0 * z * dtheta - 2.0 * I * z * dl;
        let im1 = -I * dz.conj() - 2.0 * I * dm;
        (2.0 * i0 - c.lambda.conj() * i1 - c.lambda * im1) / TAU
    }

    fn cell_terms_deriv(&self, z: Complex64, c: &Cell) -> Complex64 {
        let dtheta = c.theta_b - c.theta_a;
        let l = |zeta: Complex64| log1m(z, zeta);
        let lp = |zeta: Complex64| -ONE / (zeta - z);
        let dl = l(c.zeta_b) - l(c.zeta_a);
        let dlp = lp(c.zeta_b) - lp(c.zeta_a);
        let dmp = log_over_z_deriv(z, c.zeta_b) - log_over_z_deriv(z, c.zeta_a);
        let i0 = -2.0 * I * dlp;
        let i1 = 2.0 * dtheta - 2.0 * I * dl - 2.0 * I * z * dlp;
        let im1 = -2.0 * I * dmp;
        (2.0 * i0 - c.lambda.conj() * i1 - c.lambda * im1) / TAU
    }

    fn sum_cells(&self, f: impl Fn(&Cell) -> Complex64) -> Complex64 {
        let v: Vec<Complex64> = self.cells.iter().map(f).collect();
        pairwise_sum(&v) / self.norm_sq
    }

    /// Keeps a boundary point off the cell endpoints, where the logarithms
    /// of the antiderivative are singular.
    fn nudge(&self, z: Complex64) -> Complex64 {
        if z.norm() < 1.0 - 1e-9 {
            return z;
        }
        let close = self.cells.iter().any(|c| (ONE - z * c.zeta_a.conj()).norm() < 1e-13);
        if close {
            z * unit(1e-12)
        } else {
            z
        }
    }

    pub fn herglotz(&self, z: Complex64) -> Complex64 {
        let z = self.nudge(z);
        let h = self.sum_cells(|c| self.cell_terms(z, c));
        if z.norm() >= 1.0 - 1e-15 {
            return Complex64::new(self.value(turn_of(z)), h.im);
        }
        h
    }

    pub fn herglotz_boundary(&self, turn: f64) -> Complex64 {
        let z = self.nudge(unit(turn));
        let h = self.sum_cells(|c| self.cell_terms(z, c));
        Complex64::new(self.value(turn), h.im)
    }

    pub fn herglotz_deriv(&self, z: Complex64) -> Complex64 {
        let z = self.nudge(z);
        self.sum_cells(|c| self.cell_terms_deriv(z, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive;

    fn pts(t: &[(i64, i64)]) -> Vec<CirclePoint> {
        t.iter().map(|&(p, q)| CirclePoint::from_fraction(p, q).unwrap()).collect()
    }

    /// Independent oracle: adaptive quadrature of the Herglotz kernel against
    /// the weight, split at the Voronoi boundaries.
    fn herglotz_oracle(w: &WeightProfile, z: Complex64, breaks: &[f64]) -> Complex64 {
        let mut cuts: Vec<f64> = breaks.iter().map(|b| b - b.floor()).collect();
        cuts.push(0.0);
        cuts.push(1.0);
        cuts.sort_by(f64::total_cmp);
        let mut re = 0.0;
        let mut im = 0.0;
        for pair in cuts.windows(2) {
            let k = |t: f64| {
                let zeta = unit(t);
                (zeta + z) / (zeta - z) * w.value(t)
            };
            re += adaptive(&|t| k(t).re, pair[0], pair[1], 4, 1e-14, 1e-13, 4000).value;
            im += adaptive(&|t| k(t).im, pair[0], pair[1], 4, 1e-14, 1e-13, 4000).value;
        }
        Complex64::new(re, im)
    }

    #[test]
    fn single_root_gives_one_minus_z() {
        let w = WeightProfile::polynomial(&pts(&[(0, 1)]));
        assert!((w.norm_sq() - 2.0).abs() < 1e-15);
        let z = Complex64::new(0.3, -0.45);
        assert!((w.herglotz(z) - (1.0 - z)).norm() < 1e-15);
        assert!((w.herglotz_deriv(z) + 1.0).norm() < 1e-15);
        assert!((w.value(0.25) - 1.0).abs() < 1e-15);
        assert_eq!(w.value(0.0), 0.0);
    }

    #[test]
    fn antipodal_roots_give_one_minus_z_squared() {
        let w = WeightProfile::polynomial(&pts(&[(0, 1), (1, 2)]));
        let z = Complex64::new(-0.2, 0.6);
        assert!((w.herglotz(z) - (1.0 - z * z)).norm() < 1e-15);
    }

    #[test]
    fn distance_weight_has_unit_mean() {
        let w = WeightProfile::distance(&pts(&[(0, 1), (1, 3), (3, 7)])).unwrap();
        let m = adaptive(&|t| w.value(t), 0.0, 1.0, 64, 1e-15, 1e-14, 10000).value;
        assert!((m - 1.0).abs() < 1e-12, "{m}");
    }

    #[test]
    fn distance_single_point_equals_polynomial() {
        // dist(zeta, {1})^2 = |zeta - 1|^2 everywhere.
        let d = WeightProfile::distance(&pts(&[(0, 1)])).unwrap();
        let p = WeightProfile::polynomial(&pts(&[(0, 1)]));
        for z in [Complex64::new(0.1, 0.2), Complex64::new(-0.7, 0.5), Complex64::new(0.0, 0.0)] {
            assert!((d.herglotz(z) - p.herglotz(z)).norm() < 1e-13);
            assert!((d.herglotz_deriv(z) - p.herglotz_deriv(z)).norm() < 1e-12);
        }
    }

    #[test]
    fn distance_herglotz_matches_quadrature() {
        let p = pts(&[(0, 1), (1, 9), (2, 9), (1, 3), (2, 3)]);
        let w = WeightProfile::distance(&p).unwrap();
        let t: Vec<f64> = p.iter().map(|x| x.turn_f64()).collect();
        let mut breaks = Vec::new();
        for i in 0..t.len() {
            let next = if i + 1 == t.len() { t[0] + 1.0 } else { t[i + 1] };
            breaks.push(0.5 * (t[i] + next));
        }
        for z in [Complex64::new(0.1, 0.05), Complex64::new(-0.5, 0.5), Complex64::new(0.8, -0.3)] {
            let got = w.herglotz(z);
            let want = herglotz_oracle(&w, z, &breaks);
            assert!((got - want).norm() < 1e-11, "{z}: {got} vs {want}");
            let h = 1e-5;
            let fd = (w.herglotz(z + h) - w.herglotz(z - h)) / (2.0 * h);
            assert!((w.herglotz_deriv(z) - fd).norm() < 1e-6 * fd.norm().max(1.0));
        }
        assert!((w.herglotz(Complex64::new(0.0, 0.0)).re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn boundary_value_is_radial_limit() {
        let w = WeightProfile::distance(&pts(&[(0, 1), (1, 4), (5, 8)])).unwrap();
        for t in [0.1, 0.37, 0.9] {
            let b = w.herglotz_boundary(t);
            let r = 1.0 - 1e-9;
            let inner = w.herglotz(unit(t) * r);
            assert!((b - inner).norm() < 1e-6, "{t}: {b} vs {inner}");
        }
    }
}
