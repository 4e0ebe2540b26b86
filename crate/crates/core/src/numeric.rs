//! Small numerical kernels shared by the analytic modules: deterministic
//! summation, polynomial extrapolation to zero step, and unit-circle helpers.

use std::f64::consts::TAU;
use std::ops::Add;

use num_complex::Complex64;
use num_traits::Zero;

const PAIRWISE_BLOCK: usize = 16;

/// Fixed-order pairwise (tree) summation. The association order depends only
/// on the slice length, so results are bit-identical across runs and thread
/// counts.
pub fn pairwise_sum<T>(xs: &[T]) -> T
where
    T: Copy + Zero + Add<Output = T>,
{
    if xs.len() <= PAIRWISE_BLOCK {
        return xs.iter().fold(T::zero(), |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

pub fn pairwise_mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    pairwise_sum(xs) / xs.len() as f64
}

/// Point on the unit circle at the given fraction of a full turn. Quarter
/// turns are returned exactly.
pub fn unit(turn: f64) -> Complex64 {
    let t = turn - turn.floor();
    if t == 0.0 {
        return Complex64::new(1.0, 0.0);
    } else if t == 0.25 {
        return Complex64::new(0.0, 1.0);
    } else if t == 0.5 {
        return Complex64::new(-1.0, 0.0);
    } else if t == 0.75 {
        return Complex64::new(0.0, -1.0);
    }
    let (s, c) = (TAU * t).sin_cos();
    Complex64::new(c, s)
}

/// Fraction of a turn in `[0, 1)` for a nonzero complex number.
pub fn turn_of(z: Complex64) -> f64 {
    let t = z.im.atan2(z.re) / TAU;
    if t < 0.0 {
        t + 1.0
    } else {
        t
    }
}

/// Result of extrapolating a sequence `v(h_i)` to `h = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrapolation {
    pub value: f64,
    pub error: f64,
    pub order: usize,
}

/// Richardson/Neville extrapolation of samples `(h_i, v_i)` to `h = 0`.
///
/// Builds the full Neville tableau and returns the diagonal entry whose
/// difference to its predecessor is smallest, together with that difference
/// as the error estimate. This picks a lower order automatically when the
/// data stop behaving like a polynomial in `h`.
pub fn extrapolate_to_zero(h: &[f64], v: &[f64]) -> Extrapolation {
    assert_eq!(h.len(), v.len());
    let n = h.len();
    if n == 0 {
        return Extrapolation { value: f64::NAN, error: f64::INFINITY, order: 0 };
    }
    if n == 1 {
        return Extrapolation { value: v[0], error: f64::INFINITY, order: 0 };
    }
    // table[m][i] extrapolates using samples i..=i+m.
    let mut prev: Vec<f64> = v.to_vec();
    let mut best = Extrapolation { value: v[n - 1], error: (v[n - 1] - v[n - 2]).abs(), order: 0 };
    for m in 1..n {
        let mut next = Vec::with_capacity(n - m);
        for i in 0..n - m {
            let (h0, h1) = (h[i], h[i + m]);
            next.push((h0 * prev[i + 1] - h1 * prev[i]) / (h0 - h1));
        }
        let last = next[next.len() - 1];
        let err = (last - prev[prev.len() - 1]).abs();
        if err <= best.error {
            best = Extrapolation { value: last, error: err, order: m };
        }
        prev = next;
    }
    best
}

/// Winding number of the closed curve `theta -> g(radius * e^{i theta})`
/// around the origin, estimated from `samples` phase increments.
pub fn winding_number(g: impl Fn(Complex64) -> Complex64, radius: f64, samples: usize) -> i64 {
    let mut total = 0.0;
    let mut prev = g(Complex64::new(radius, 0.0));
    for j in 1..=samples {
        let z = unit(j as f64 / samples as f64) * radius;
        let cur = g(z);
        total += (cur / prev).arg();
        prev = cur;
    }
    (total / TAU).round() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_naive_on_small_integers() {
        let xs: Vec<f64> = (1..=1000).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&xs), 500500.0);
    }

    #[test]
    fn extrapolation_is_exact_for_polynomials() {
        let h: Vec<f64> = (2..8).map(|j| 2f64.powi(-j)).collect();
        let v: Vec<f64> = h.iter().map(|&x| 3.0 - 2.0 * x + 5.0 * x * x).collect();
        let e = extrapolate_to_zero(&h, &v);
        assert!((e.value - 3.0).abs() < 1e-13, "{e:?}");
    }

    #[test]
    fn winding_of_identity_and_shifted_disc() {
        assert_eq!(winding_number(|z| z, 0.5, 256), 1);
        assert_eq!(winding_number(|z| Complex64::new(1.0, 0.0) - z, 0.5, 256), 0);
        assert_eq!(winding_number(|z| z * z * z, 0.9, 512), 3);
    }

    #[test]
    fn unit_exact_quarters() {
        assert_eq!(unit(0.25), Complex64::new(0.0, 1.0));
        assert_eq!(unit(1.5), Complex64::new(-1.0, 0.0));
        assert!((turn_of(unit(0.3)) - 0.3).abs() < 1e-15);
    }
}
