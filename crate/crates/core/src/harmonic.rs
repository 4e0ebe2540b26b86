//! Uniform-grid harmonic analysis on the circle.
//!
//! A grid of `N = 2^k` samples is read as the trigonometric interpolant of
//! degree `N/2` (Nyquist term split evenly between `±N/2`). Poisson and
//! Herglotz integrals are evaluated as exact integrals of that interpolant,
//! which for |z| < 1 coincides with the trapezoid rule up to the aliasing
//! term `O(|z|^N)` and stays accurate close to the circle.

use std::f64::consts::TAU;
use std::path::Path;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::numeric::{pairwise_sum, unit, winding_number};

pub const MIN_LOG2: u32 = 3;
pub const MAX_LOG2: u32 = 24;
pub const DEFAULT_LOG2: u32 = 12;
/// Entries of a density may dip this far below zero before being rejected.
pub const NEGATIVE_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_LOG_FLOOR: f64 = 1e-14;

/// Scalar types a grid can hold.
pub trait GridValue: Copy + Send + Sync + std::fmt::Debug + 'static {
    fn to_parts(self) -> (f64, f64);
    fn from_parts(re: f64, im: f64) -> Result<Self>;
}

impl GridValue for f64 {
    fn to_parts(self) -> (f64, f64) {
        (self, 0.0)
    }
    fn from_parts(re: f64, im: f64) -> Result<Self> {
        if im != 0.0 {
            return Err(Error::Format(format!("expected a real grid, found imaginary part {im}")));
        }
        Ok(re)
    }
}

impl GridValue for Complex64 {
    fn to_parts(self) -> (f64, f64) {
        (self.re, self.im)
    }
    fn from_parts(re: f64, im: f64) -> Result<Self> {
        Ok(Complex64::new(re, im))
    }
}

/// Samples at the nodes `exp(2 pi i j / N)`, `j = 0..N`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<T = f64> {
    log2_size: u32,
    values: Vec<T>,
}

pub type RealGrid = GridFunction<f64>;
pub type ComplexGrid = GridFunction<Complex64>;

fn check_log2(k: u32) -> Result<()> {
    if !(MIN_LOG2..=MAX_LOG2).contains(&k) {
        return Err(Error::validation(format!("grid log2 size {k} outside [{MIN_LOG2}, {MAX_LOG2}]")));
    }
    Ok(())
}

impl<T: GridValue> GridFunction<T> {
    pub fn new(log2_size: u32, values: Vec<T>) -> Result<Self> {
        check_log2(log2_size)?;
        if values.len() != 1usize << log2_size {
            return Err(Error::validation(format!(
                "grid of log2 size {log2_size} needs {} values, got {}",
                1usize << log2_size,
                values.len()
            )));
        }
        Ok(GridFunction { log2_size, values })
    }

    pub fn from_values(values: Vec<T>) -> Result<Self> {
        let n = values.len();
        if !n.is_power_of_two() {
            return Err(Error::validation(format!("grid length {n} is not a power of two")));
        }
        Self::new(n.trailing_zeros(), values)
    }

    /// Samples `f(turn)` at `turn = j / N`.
    pub fn from_fn(log2_size: u32, f: impl Fn(f64) -> T) -> Result<Self> {
        check_log2(log2_size)?;
        let n = 1usize << log2_size;
        Ok(GridFunction { log2_size, values: (0..n).map(|j| f(j as f64 / n as f64)).collect() })
    }

    pub fn log2_size(&self) -> u32 {
        self.log2_size
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn turn(&self, j: usize) -> f64 {
        j as f64 / self.len() as f64
    }

    pub fn node(&self, j: usize) -> Complex64 {
        unit(self.turn(j))
    }

    pub fn map<U: GridValue>(&self, f: impl Fn(T) -> U) -> GridFunction<U> {
        GridFunction { log2_size: self.log2_size, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// Largest radius at which the grid still resolves the Poisson kernel.
    pub fn resolution_radius(&self) -> f64 {
        resolution_radius(self.log2_size)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        crate::io::write_atomic(path, self.to_csv_string()?.as_bytes())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["node_index", "value_real", "value_imag"])?;
        for (j, v) in self.values.iter().enumerate() {
            let (re, im) = v.to_parts();
            w.write_record([j.to_string(), format!("{re:e}"), format!("{im:e}")])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path).map_err(|e| Error::io_at(path, e))?)
    }

    pub fn from_csv_reader(reader: impl std::io::Read) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let header = r.headers()?.clone();
        if header.iter().map(str::trim).collect::<Vec<_>>() != ["node_index", "value_real", "value_imag"] {
            return Err(Error::Format("grid csv needs header node_index,value_real,value_imag".into()));
        }
        let mut values = Vec::new();
        for (row, rec) in r.records().enumerate() {
            let rec = rec?;
            let field = |i: usize| -> Result<&str> {
                rec.get(i).map(str::trim).ok_or_else(|| Error::Format(format!("row {row}: missing column {i}")))
            };
            let idx: usize = field(0)?.parse().map_err(|_| Error::Format(format!("row {row}: bad node index")))?;
            if idx != row {
                return Err(Error::Format(format!("row {row}: node index {idx} out of order")));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Format(format!("row {row}: bad number `{s}`")));
            values.push(T::from_parts(num(field(1)?)?, num(field(2)?)?)?);
        }
        Self::from_values(values)
    }
}

pub fn resolution_radius(log2_size: u32) -> f64 {
    1.0 - 2f64.powi(-(log2_size as i32 - 2))
}

/// A point strictly inside the unit disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InteriorPoint(Complex64);

impl InteriorPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.norm() < 1.0) {
            return Err(Error::NotInterior(z));
        }
        Ok(InteriorPoint(z))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// Trapezoid average over the grid.
pub fn mean(w: &RealGrid) -> f64 {
    pairwise_sum(w.values()) / w.len() as f64
}

pub fn mean_complex(w: &ComplexGrid) -> Complex64 {
    pairwise_sum(w.values()) / w.len() as f64
}

fn forward_dft(values: &[f64]) -> Vec<Complex64> {
    let n = values.len();
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

fn inverse_dft(mut spectrum: Vec<Complex64>) -> Vec<Complex64> {
    let n = spectrum.len();
    FftPlanner::new().plan_fft_inverse(n).process(&mut spectrum);
    spectrum
}

/// Power series `H(z) = sum_k c_k z^k` of the Herglotz integral of the
/// interpolant of a real grid.
#[derive(Clone, Debug, PartialEq)]
pub struct HerglotzTransform {
    log2_size: u32,
    coeffs: Vec<Complex64>,
}

impl HerglotzTransform {
    /// No sign restriction: this is also used on logarithms.
    pub fn new(u: &RealGrid) -> Self {
        let n = u.len();
        let hat = forward_dft(u.values());
        let mut coeffs = Vec::with_capacity(n / 2 + 1);
        coeffs.push(Complex64::new(mean(u), 0.0));
        for c in hat.iter().take(n / 2).skip(1) {
            coeffs.push(2.0 * c);
        }
        coeffs.push(Complex64::new(hat[n / 2].re, 0.0));
        HerglotzTransform { log2_size: u.log2_size(), coeffs }
    }

    pub fn log2_size(&self) -> u32 {
        self.log2_size
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Valid on the closed disc; on the circle the real part is the
    /// band-limited interpolant of the grid.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_deriv(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * k as f64;
        }
        acc
    }

    /// Values `H(e^{2 pi i j/N})` at the grid nodes.
    pub fn boundary(&self) -> ComplexGrid {
        let n = 1usize << self.log2_size;
        let mut spec = vec![Complex64::new(0.0, 0.0); n];
        spec[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        GridFunction { log2_size: self.log2_size, values: inverse_dft(spec) }
    }

    /// Values `H(r e^{2 pi i j/N})` on a concentric circle.
    pub fn on_circle(&self, r: f64) -> ComplexGrid {
        let n = 1usize << self.log2_size;
        let mut spec = vec![Complex64::new(0.0, 0.0); n];
        let mut rk = 1.0;
        for (k, &c) in self.coeffs.iter().enumerate() {
            spec[k] = c * rk;
            rk *= r;
        }
        GridFunction { log2_size: self.log2_size, values: inverse_dft(spec) }
    }
}

fn validate_density(w: &RealGrid) -> Result<RealGrid> {
    for (j, &v) in w.values().iter().enumerate() {
        if !v.is_finite() || v < -NEGATIVE_TOLERANCE {
            return Err(Error::NegativeWeight { node: j, value: v });
        }
    }
    Ok(w.map(|v| v.max(0.0)))
}

pub fn poisson(w: &RealGrid, z: InteriorPoint) -> f64 {
    HerglotzTransform::new(w).eval(z.value()).re
}

pub fn herglotz(w: &RealGrid, z: InteriorPoint) -> Result<Complex64> {
    let w = validate_density(w)?;
    Ok(HerglotzTransform::new(&w).eval(z.value()))
}

/// Herglotz transform of a nonnegative density, with the sign check applied.
pub fn herglotz_transform(w: &RealGrid) -> Result<(RealGrid, HerglotzTransform)> {
    let w = validate_density(w)?;
    let t = HerglotzTransform::new(&w);
    Ok((w, t))
}

/// Harmonic conjugate trace, normalized to vanish at the origin. The
/// Nyquist mode has no conjugate on the grid and is dropped.
pub fn conjugate(u: &RealGrid) -> RealGrid {
    let n = u.len();
    let mut hat = forward_dft(u.values());
    hat[0] = Complex64::new(0.0, 0.0);
    hat[n / 2] = Complex64::new(0.0, 0.0);
    let mi = Complex64::new(0.0, -1.0);
    for (k, c) in hat.iter_mut().enumerate().skip(1) {
        if k < n / 2 {
            *c *= mi;
        } else if k > n / 2 {
            *c *= -mi;
        }
    }
    let vals = inverse_dft(hat);
    GridFunction { log2_size: u.log2_size(), values: vals.iter().map(|c| c.re).collect() }
}

/// Outer function with prescribed boundary modulus: `F = exp(H[ln m])`.
#[derive(Clone, Debug)]
pub struct OuterFunction {
    log_modulus: RealGrid,
    transform: HerglotzTransform,
    boundary: ComplexGrid,
    clamped_nodes: usize,
}

impl OuterFunction {
    pub fn boundary(&self) -> &ComplexGrid {
        &self.boundary
    }

    pub fn log_modulus(&self) -> &RealGrid {
        &self.log_modulus
    }

    pub fn clamped_nodes(&self) -> usize {
        self.clamped_nodes
    }

    pub fn eval(&self, z: InteriorPoint) -> Complex64 {
        self.transform.eval(z.value()).exp()
    }

    /// Evaluation on the closed disc using the interpolated log-modulus.
    pub fn eval_closed(&self, z: Complex64) -> Complex64 {
        self.transform.eval(z).exp()
    }

    pub fn value_at_origin(&self) -> f64 {
        self.transform.coefficients()[0].re.exp()
    }

    pub fn resolves(&self, z: Complex64) -> bool {
        z.norm() <= resolution_radius(self.log_modulus.log2_size())
    }

    /// Winding number of `F` along `|z| = radius`; zero for an outer function.
    pub fn winding_number(&self, radius: f64) -> i64 {
        winding_number(|z| self.eval_closed(z), radius, 4 * self.log_modulus.len().max(256))
    }
}

pub fn outer_function(modulus: &RealGrid, floor: f64) -> Result<OuterFunction> {
    if !(floor >= 0.0) || !floor.is_finite() {
        return Err(Error::validation(format!("log floor must be a finite non-negative number, got {floor}")));
    }
    let mut clamped = 0usize;
    let mut logs = Vec::with_capacity(modulus.len());
    for (j, &m) in modulus.values().iter().enumerate() {
        if !m.is_finite() || m < 0.0 {
            return Err(Error::validation(format!("modulus at node {j} is {m}")));
        }
        if m < floor || m == 0.0 {
            if floor == 0.0 {
                return Err(Error::NotLogIntegrable(format!("modulus vanishes at node {j} and no floor is set")));
            }
            clamped += 1;
            logs.push(floor.ln());
        } else {
            logs.push(m.ln());
        }
    }
    let log_modulus = GridFunction::new(modulus.log2_size(), logs)?;
    let conj = conjugate(&log_modulus);
    let boundary = GridFunction {
        log2_size: modulus.log2_size(),
        values: log_modulus.values().iter().zip(conj.values()).map(|(&u, &v)| Complex64::new(u, v).exp()).collect(),
    };
    let transform = HerglotzTransform::new(&log_modulus);
    Ok(OuterFunction { log_modulus, transform, boundary, clamped_nodes: clamped })
}

const UPSAMPLE: usize = 16;
const STENCIL: usize = 10;

/// Fast off-grid evaluation of the trigonometric interpolant of a real grid:
/// spectral upsampling followed by local Lagrange interpolation.
#[derive(Clone, Debug)]
pub struct BandLimited {
    log2_size: u32,
    fine: Vec<f64>,
    error_estimate: f64,
}

impl BandLimited {
    pub fn new(w: &RealGrid) -> Self {
        let n = w.len();
        let m = n * UPSAMPLE;
        let hat = forward_dft(w.values());
        let mut spec = vec![Complex64::new(0.0, 0.0); m];
        for k in 0..n / 2 {
            spec[k] = hat[k];
            if k > 0 {
                spec[m - k] = hat[n - k];
            }
        }
        spec[n / 2] = hat[n / 2] * 0.5;
        spec[m - n / 2] = hat[n / 2] * 0.5;
        let fine: Vec<f64> = inverse_dft(spec).iter().map(|c| c.re).collect();
        let mut bl = BandLimited { log2_size: w.log2_size(), fine, error_estimate: 0.0 };
        let exact = HerglotzTransform::new(w);
        let mut err: f64 = 0.0;
        for s in 0..64 {
            let t = (s as f64 + 0.37) / 64.0 + 0.5 / (n * UPSAMPLE) as f64 * 0.61;
            err = err.max((bl.value(t) - exact.eval(unit(t)).re).abs());
        }
        bl.error_estimate = err;
        bl
    }

    pub fn log2_size(&self) -> u32 {
        self.log2_size
    }

    /// Largest deviation from the exact interpolant seen on a probe set.
    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }

    pub fn value(&self, turn: f64) -> f64 {
        let m = self.fine.len();
        let x = (turn - turn.floor()) * m as f64;
        let base = x.floor();
        let frac = x - base;
        let i = base as isize;
        if frac == 0.0 {
            return self.fine[(i as usize) % m];
        }
        let lo = i - (STENCIL as isize / 2 - 1);
        let mut acc = 0.0;
        for a in 0..STENCIL {
            let xa = (lo + a as isize) as f64 - base;
            let mut wgt = 1.0;
            for b in 0..STENCIL {
                if a != b {
                    let xb = (lo + b as isize) as f64 - base;
                    wgt *= (frac - xb) / (xa - xb);
                }
            }
            let idx = (lo + a as isize).rem_euclid(m as isize) as usize;
            acc += wgt * self.fine[idx];
        }
        acc
    }
}

/// Spacing of the grid in radians.
pub fn grid_spacing(log2_size: u32) -> f64 {
    TAU / (1u64 << log2_size) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn cos_grid(k: u32, f: impl Fn(f64) -> f64) -> RealGrid {
        GridFunction::from_fn(k, |t| f(TAU * t)).unwrap()
    }

    fn ip(re: f64, im: f64) -> InteriorPoint {
        InteriorPoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn means() {
        assert_eq!(mean(&cos_grid(4, |_| 2.5)), 2.5);
        assert!(mean(&cos_grid(3, f64::cos)).abs() < 1e-16);
        assert!((mean(&cos_grid(5, |t| 1.0 - t.cos())) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn poisson_examples() {
        let one = cos_grid(10, |_| 1.0);
        for z in [ip(0.3, -0.4), ip(0.0, 0.95), ip(-0.99, 0.0)] {
            assert!((poisson(&one, z) - 1.0).abs() < 1e-12);
        }
        let re = cos_grid(10, f64::cos);
        assert!((poisson(&re, ip(0.5, 0.0)) - 0.5).abs() < 1e-14);
        assert!((poisson(&cos_grid(10, |t| 1.0 - t.cos()), ip(0.0, 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn herglotz_examples() {
        // Oracle: H(z) = c0 + 2 sum_k c_k z^k with c_k the Fourier coefficients.
        let z = ip(0.5, 0.0);
        let h1 = herglotz(&cos_grid(8, |t| 1.0 - t.cos()), z).unwrap();
        assert!((h1 - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        let h2 = herglotz(&cos_grid(8, |t| 1.0 - (2.0 * t).cos()), z).unwrap();
        assert!((h2 - Complex64::new(0.75, 0.0)).norm() < 1e-14);
        let zc = ip(0.2, 0.7);
        let h3 = herglotz(&cos_grid(8, |_| 1.0), zc).unwrap();
        assert!((h3 - 1.0).norm() < 1e-14);
        let neg = cos_grid(3, |t| t.cos());
        assert!(matches!(herglotz(&neg, z), Err(Error::NegativeWeight { .. })));
    }

    #[test]
    fn herglotz_at_origin_is_grid_mean() {
        let w = cos_grid(9, |t| (t.sin() + 1.3).exp());
        let h = herglotz(&w, ip(0.0, 0.0)).unwrap();
        assert_eq!(h.re, mean(&w));
        assert_eq!(h.im, 0.0);
    }

    #[test]
    fn conjugate_examples() {
        let c = conjugate(&cos_grid(6, |_| 5.0));
        assert!(c.values().iter().all(|v| v.abs() < 1e-14));
        let c = conjugate(&cos_grid(6, |t| (3.0 * t).cos() + 2.0 * t.cos()));
        let expect = cos_grid(6, |t| (3.0 * t).sin() + 2.0 * t.sin());
        for (a, b) in c.values().iter().zip(expect.values()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn outer_constant() {
        let f = outer_function(&cos_grid(8, |_| 2.0), DEFAULT_LOG_FLOOR).unwrap();
        assert!((f.eval(ip(0.3, 0.3)) - 2.0).norm() < 1e-14);
        assert_eq!(f.clamped_nodes(), 0);
    }

    #[test]
    fn outer_of_chord_modulus() {
        // |1 - e^{it}| vanishes at node 0 only; sum_{j>0} ln|1 - w^j| = ln N,
        // so the clamped grid mean of the log is (ln N + ln floor) / N.
        let k = 12;
        let n = (1u32 << k) as f64;
        let m = cos_grid(k, |t| (Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, t)).norm());
        let f = outer_function(&m, DEFAULT_LOG_FLOOR).unwrap();
        let predicted = ((n.ln() + DEFAULT_LOG_FLOOR.ln()) / n).exp();
        assert!((f.value_at_origin() - predicted).abs() < 1e-12);
        assert!((f.eval(ip(0.0, 0.0)).re - predicted).abs() < 1e-12);
        // Away from the clamped node the interior values track 1 - z.
        for z in [ip(-0.5, 0.0), ip(0.0, -0.6), ip(-0.3, 0.4)] {
            let rel = ((f.eval(z) - (1.0 - z.value())) / (1.0 - z.value())).norm();
            assert!(rel < 1e-2, "{rel}");
        }
        assert_eq!(f.winding_number(0.5), 0);
        // Boundary modulus is reproduced node by node.
        for (b, &mv) in f.boundary().values().iter().zip(m.values()).skip(1) {
            assert!((b.norm() - mv).abs() <= 1e-12 * mv.max(1.0));
        }
        let scaled = outer_function(&m.map(|v| v / 2f64.sqrt()), DEFAULT_LOG_FLOOR).unwrap();
        let z = ip(-0.5, 0.1);
        assert!((scaled.eval(z) * 2f64.sqrt() - f.eval(z)).norm() < 2e-3);
    }

    #[test]
    fn outer_rejects_zero_without_floor() {
        let m = cos_grid(4, |t| (1.0 - t.cos()).max(0.0));
        assert!(matches!(outer_function(&m, 0.0), Err(Error::NotLogIntegrable(_))));
        assert!(outer_function(&m, -1.0).is_err());
    }

    #[test]
    fn interior_point_validation() {
        assert!(InteriorPoint::new(Complex64::new(1.0, 0.0)).is_err());
        assert!(InteriorPoint::new(Complex64::new(0.6, 0.8)).is_err());
        assert!(InteriorPoint::new(Complex64::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn band_limited_matches_exact_interpolant() {
        let w = cos_grid(8, |t| (1.0 + 0.5 * t.cos()).ln() + (7.0 * t).sin());
        let bl = BandLimited::new(&w);
        let exact = HerglotzTransform::new(&w);
        for s in 0..200 {
            let t = s as f64 * 0.004_987;
            assert!((bl.value(t) - exact.eval(unit(t)).re).abs() < 1e-11);
        }
        assert!((bl.value(3.0 / 256.0) - w.values()[3]).abs() < 1e-13);
        assert!(bl.error_estimate() < 1e-11);
    }

    #[test]
    fn csv_round_trip() {
        let w = cos_grid(3, |t| t.sin() / 3.0);
        let text = w.to_csv_string().unwrap();
        assert!(text.starts_with("node_index,value_real,value_imag"));
        let back = RealGrid::from_csv_reader(text.as_bytes()).unwrap();
        assert_eq!(back, w);
        assert!(RealGrid::from_csv_reader("a,b,c\n0,1,0\n".as_bytes()).is_err());
    }
}
