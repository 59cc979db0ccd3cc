//! Modified Bessel function of order zero and the first-order Marcum Q-function.

use std::f64::consts::PI;

/// Below this argument `I_0` is summed from its power series; above it the
/// asymptotic expansion is accurate to double precision.
const I0_SERIES_LIMIT: f64 = 20.0;

/// Rescale threshold for the backward Bessel recurrence.
const RESCALE: f64 = 1e250;

fn i0_series(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > 1e-17 * sum {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

/// `sqrt(2 pi x) e^{-x} I_0(x)` from the large-argument expansion.
fn i0_asymptotic_kernel(x: f64) -> f64 {
    let mut term = 1.0f64;
    let mut sum = 1.0;
    for k in 1..200 {
        let kf = k as f64;
        let next = term * (2.0 * kf - 1.0).powi(2) / (8.0 * kf * x);
        if next > term || next < 1e-17 * sum {
            break;
        }
        term = next;
        sum += term;
    }
    sum
}

/// Modified Bessel function of the first kind, order zero.
pub fn bessel_i0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= I0_SERIES_LIMIT {
        i0_series(ax)
    } else {
        ax.exp() / (2.0 * PI * ax).sqrt() * i0_asymptotic_kernel(ax)
    }
}

/// `e^{-|x|} I_0(x)`, finite for every argument.
pub fn bessel_i0_scaled(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= I0_SERIES_LIMIT {
        (-ax).exp() * i0_series(ax)
    } else {
        i0_asymptotic_kernel(ax) / (2.0 * PI * ax).sqrt()
    }
}

/// First-order Marcum Q-function
/// `Q_1(a, b) = integral_b^inf x exp(-(x^2 + a^2)/2) I_0(a x) dx`.
///
/// Uses the Neumann series in `I_k(ab)`:
///
/// * `b >= a`: `Q_1 = e^{-(a-b)^2/2} sum_{k>=0} (a/b)^k e^{-ab} I_k(ab)`
/// * `b <  a`: `Q_1 = 1 - e^{-(a-b)^2/2} sum_{k>=1} (b/a)^k e^{-ab} I_k(ab)`
///
/// The scaled Bessel values come from Miller's backward recurrence,
/// normalized by `e^{-x} (I_0 + 2 sum_k I_k) = 1`. Work grows like `sqrt(ab)`.
pub fn marcum_q1(a: f64, b: f64) -> f64 {
    assert!(a >= 0.0 && b >= 0.0, "marcum_q1 needs non-negative arguments, got ({a}, {b})");
    if b == 0.0 {
        return 1.0;
    }
    if a == 0.0 {
        return (-b * b / 2.0).exp();
    }
    let gauss = (-(a - b) * (a - b) / 2.0).exp();
    if gauss == 0.0 {
        return if b > a { 0.0 } else { 1.0 };
    }
    let x = a * b;
    let (ratio, first) = if b >= a { (a / b, 0) } else { (b / a, 1) };
    let series = gauss * scaled_bessel_weighted_sum(x, ratio, first);
    let q = if b >= a { series } else { 1.0 - series };
    q.clamp(0.0, 1.0)
}

/// `sum_{k >= first} r^k e^{-x} I_k(x)` with `0 < r <= 1`.
fn scaled_bessel_weighted_sum(x: f64, r: f64, first: usize) -> f64 {
    if x < 1e-12 {
        // e^{-x} I_0 ~ 1 - x, e^{-x} I_1 ~ x / 2, the rest is O(x^2)
        let tail = r * x / 2.0;
        return if first == 0 { 1.0 - x + tail } else { tail };
    }
    let start = (12.0 * x.sqrt() + 50.0).ceil() as usize;
    let ln_r = r.ln();
    // v_{k-1} = (2k / x) v_k + v_{k+1}, seeded with v_{start+1} = 0, v_start = tiny.
    let mut above = 0.0f64;
    let mut current = 1e-300f64;
    let mut norm = 0.0f64;
    let mut weighted = 0.0f64;
    for k in (0..=start).rev() {
        norm += if k == 0 { current } else { 2.0 * current };
        if k >= first {
            weighted += current * (k as f64 * ln_r).exp();
        }
        if k == 0 {
            break;
        }
        let below = (2.0 * k as f64 / x) * current + above;
        above = current;
        current = below;
        if current > RESCALE {
            above /= RESCALE;
            current /= RESCALE;
            norm /= RESCALE;
            weighted /= RESCALE;
        }
    }
    weighted / norm
}
