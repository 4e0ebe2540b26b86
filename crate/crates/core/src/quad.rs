//! Gauss-Legendre panels and adaptive Gauss-Kronrod (7/15) integration.

use std::collections::BinaryHeap;
use std::cmp::Ordering;
use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::numeric::pairwise_sum;

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Cached rule of a fixed order.
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        GaussRule { nodes, weights }
    }

    pub fn order8() -> &'static GaussRule {
        static R: OnceLock<GaussRule> = OnceLock::new();
        R.get_or_init(|| GaussRule::new(8))
    }

    pub fn order16() -> &'static GaussRule {
        static R: OnceLock<GaussRule> = OnceLock::new();
        R.get_or_init(|| GaussRule::new(16))
    }

    pub fn integrate(&self, a: f64, b: f64, f: &impl Fn(f64) -> f64) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + h * x);
        }
        acc * h
    }

    /// Integral over `[a, b]` split into equal panels no wider than `max_width`.
    pub fn integrate_panels(&self, a: f64, b: f64, max_width: f64, f: &impl Fn(f64) -> f64) -> f64 {
        let panels = (((b - a) / max_width).ceil() as usize).max(1);
        let h = (b - a) / panels as f64;
        let parts: Vec<f64> = (0..panels)
            .map(|i| {
                let lo = a + h * i as f64;
                let hi = if i + 1 == panels { b } else { lo + h };
                self.integrate(lo, hi, f)
            })
            .collect();
        pairwise_sum(&parts)
    }
}

// Published Kronrod digits, kept in full.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
// Published Kronrod digits, kept in full.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Published Kronrod digits, kept in full.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss-Kronrod panel: `(kronrod estimate, |kronrod - gauss|)`.
pub fn gk15(a: f64, b: f64, f: &impl Fn(f64) -> f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        resk += WGK[j] * s;
        if j % 2 == 1 {
            resg += WG[j / 2] * s;
        }
    }
    (resk * h, ((resk - resg) * h).abs())
}

/// Outcome of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Adaptive {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.partial_cmp(&o.error).unwrap_or(Ordering::Equal)
    }
}

/// Adaptive GK15 over `[a, b]`, starting from `initial` equal panels and
/// bisecting the worst panel until `error <= max(abs_tol, rel_tol * |value|)`
/// or `max_intervals` is reached.
pub fn adaptive(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    initial: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Adaptive {
    let initial = initial.max(1);
    let h = (b - a) / initial as f64;
    let mut heap = BinaryHeap::with_capacity(2 * max_intervals);
    for i in 0..initial {
        let lo = a + h * i as f64;
        let hi = if i + 1 == initial { b } else { lo + h };
        let (value, error) = gk15(lo, hi, f);
        heap.push(Panel { a: lo, b: hi, value, error });
    }
    let totals = |heap: &BinaryHeap<Panel>| {
        let mut panels: Vec<&Panel> = heap.iter().collect();
        panels.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
        let v: Vec<f64> = panels.iter().map(|p| p.value).collect();
        let e: Vec<f64> = panels.iter().map(|p| p.error).collect();
        (pairwise_sum(&v), pairwise_sum(&e))
    };
    let mut value_sum: f64 = heap.iter().map(|p| p.value).sum();
    let mut error_sum: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        let tol = abs_tol.max(rel_tol * value_sum.abs());
        if error_sum <= tol || heap.len() >= max_intervals {
            break;
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(worst.a, mid, f);
        let (v2, e2) = gk15(mid, worst.b, f);
        value_sum += v1 + v2 - worst.value;
        error_sum += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    let (value, error) = totals(&heap);
    let tol = abs_tol.max(rel_tol * value.abs());
    Adaptive { value, error, intervals: heap.len(), converged: error <= tol }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact_for_high_degree() {
        for n in [1usize, 2, 5, 8, 16] {
            let r = GaussRule::new(n);
            for deg in 0..(2 * n) {
                let got = r.integrate(-1.0, 1.0, &|x: f64| x.powi(deg as i32));
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - exact).abs() < 1e-14, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn kronrod_weights_integrate_constants() {
        let (v, _) = gk15(0.0, 1.0, &|_| 1.0);
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let r = adaptive(&|x: f64| x.sqrt().recip(), 0.0, 1.0, 4, 1e-10, 1e-12, 2000);
        assert!(r.converged);
        assert!((r.value - 2.0).abs() < 1e-9);
        let r = adaptive(&|x: f64| x.ln(), 0.0, 1.0, 1, 1e-12, 1e-13, 2000);
        assert!((r.value + 1.0).abs() < 1e-11);
    }
}
