//! Preamble PAPR over the observation window, the Rician point model of the
//! instantaneous envelope, and Monte Carlo CCDF estimation.

use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::db;
use crate::error::{Error, Result};
use crate::prototype::PrototypeFilter;
use crate::sequences::ComplexSequence;
use crate::waveform::SampledSignal;

mod ccdf;
pub mod special;

pub use ccdf::{default_thresholds, monte_carlo_ccdf, monte_carlo_ccdf_with_progress, CcdfResult, TrialWorkspace, WindowedSynthesis};
pub use special::{bessel_i0, bessel_i0_scaled, marcum_q1};

/// The observation window `[(n+2)/2, (n+6)/2)` around slot `n`'s pulse peak,
/// as absolute sample indices on a grid of `samples_per_t` samples per `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisWindow {
    pub preamble_slot: i64,
    pub samples_per_t: usize,
    pub start: i64,
    pub end: i64,
}

impl AnalysisWindow {
    pub fn new(preamble_slot: i64, samples_per_t: usize) -> Result<Self> {
        if samples_per_t == 0 || samples_per_t % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "window needs an even, non-zero sample rate, got {samples_per_t}"
            )));
        }
        let half = (samples_per_t / 2) as i64;
        Ok(Self { preamble_slot, samples_per_t, start: (preamble_slot + 2) * half, end: (preamble_slot + 6) * half })
    }

    pub fn len(&self) -> usize {
        (self.end - self.start) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn start_time(&self) -> f64 {
        self.start as f64 / self.samples_per_t as f64
    }

    pub fn center_time(&self) -> f64 {
        (self.preamble_slot + 4) as f64 / 2.0
    }

    pub fn time(&self, k: usize) -> f64 {
        (self.start + k as i64) as f64 / self.samples_per_t as f64
    }

    /// Positions of the window inside `signal.samples`.
    pub fn range_in(&self, signal: &SampledSignal) -> Result<Range<usize>> {
        let first = signal.start_index;
        let last = first + signal.len() as i64;
        if signal.samples_per_t != self.samples_per_t || self.start < first || self.end > last {
            return Err(Error::WindowOutOfRange { start: self.start, end: self.end, first, last });
        }
        Ok((self.start - first) as usize..(self.end - first) as usize)
    }
}

/// Long-run mean power `2M/T` of a frame whose symbols all carry energy `M`.
pub fn average_power(subcarriers: usize) -> f64 {
    2.0 * subcarriers as f64
}

/// Largest instantaneous-to-average power ratio over the window, in dB.
pub fn papr(signal: &SampledSignal, window: &AnalysisWindow, p_avg: f64) -> Result<f64> {
    let range = window.range_in(signal)?;
    Ok(db(peak_power(&signal.samples[range]) / p_avg))
}

pub(crate) fn peak_power(samples: &[Complex64]) -> f64 {
    samples.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max)
}

/// Preamble-only envelope `g(t - n/2) |sum_m c_m j^m exp(j 2 pi m t)|`.
pub fn nu_of_t(preamble: &ComplexSequence, filter: &PrototypeFilter, preamble_slot: i64, t: f64) -> f64 {
    let g = filter.eval(t - preamble_slot as f64 / 2.0);
    if g == 0.0 {
        return 0.0;
    }
    // j^m exp(j 2 pi m t) = exp(j 2 pi m (t + 1/4))
    let sum: Complex64 = preamble
        .as_slice()
        .iter()
        .enumerate()
        .map(|(m, c)| c * Complex64::from_polar(1.0, 2.0 * PI * (m as f64 * (t + 0.25)).fract()))
        .sum();
    g.abs() * sum.norm()
}

/// Per-component variance `(M/2) sum_{n'} g^2(t - n'/2)` of the data
/// interference, summed over every slot outside the `guards` zero slots on
/// either side of the preamble (data assumed present everywhere else).
pub fn sigma2_of_t(guards: usize, filter: &PrototypeFilter, subcarriers: usize, preamble_slot: i64, t: f64) -> f64 {
    let k = filter.overlap() as f64;
    let lo = (2.0 * (t - k)).floor() as i64;
    let hi = (2.0 * t).ceil() as i64;
    let sum: f64 = (lo..=hi)
        .filter(|n| (n - preamble_slot).unsigned_abs() as usize > guards)
        .map(|n| filter.eval(t - n as f64 / 2.0).powi(2))
        .sum();
    subcarriers as f64 / 2.0 * sum
}

/// Fraction of the unit-energy pulse that falls inside the observation window.
pub fn window_energy_fraction(filter: &PrototypeFilter) -> f64 {
    let l = filter.samples_per_t();
    let hi = (3 * l).min(filter.len());
    filter.taps()[l.min(hi)..hi].iter().map(|g| g * g).sum::<f64>() * filter.dt()
}

/// Rician description of `|s(t)|` at a fixed time: deterministic preamble
/// envelope `nu` plus circular Gaussian data interference of per-component
/// standard deviation `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RicianPointModel {
    pub t: f64,
    pub nu: f64,
    pub sigma: f64,
    pub p_avg: f64,
}

impl RicianPointModel {
    pub fn new(preamble: &ComplexSequence, filter: &PrototypeFilter, guards: usize, preamble_slot: i64, t: f64) -> Self {
        let m = preamble.len();
        Self {
            t,
            nu: nu_of_t(preamble, filter, preamble_slot, t),
            sigma: sigma2_of_t(guards, filter, m, preamble_slot, t).sqrt(),
            p_avg: average_power(m),
        }
    }
}

/// `Pr{|s(t)|^2 / P_avg >= alpha}` under the Rician model; with `sigma = 0`
/// the envelope is deterministic and the answer is an indicator.
pub fn iapr_exceedance(alpha: f64, model: &RicianPointModel) -> f64 {
    let level = (alpha * model.p_avg).sqrt();
    if model.sigma == 0.0 {
        return if model.nu >= level { 1.0 } else { 0.0 };
    }
    marcum_q1(model.nu / model.sigma, level / model.sigma)
}

fn check_rician(x: f64, nu: f64, sigma: f64) -> Result<()> {
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::InvalidParameter(format!("Rician sigma must be positive, got {sigma}")));
    }
    if x.is_nan() || x < 0.0 || nu.is_nan() || nu < 0.0 {
        return Err(Error::InvalidParameter(format!("Rician needs x >= 0 and nu >= 0, got x={x}, nu={nu}")));
    }
    Ok(())
}

/// Rician density `(x/s^2) exp(-(x^2 + nu^2)/(2 s^2)) I_0(x nu / s^2)`.
pub fn rician_pdf(x: f64, nu: f64, sigma: f64) -> Result<f64> {
    check_rician(x, nu, sigma)?;
    let s2 = sigma * sigma;
    if x.is_infinite() {
        return Ok(0.0);
    }
    Ok(x / s2 * (-(x - nu) * (x - nu) / (2.0 * s2)).exp() * bessel_i0_scaled(x * nu / s2))
}

/// Rician distribution function `1 - Q_1(nu/s, x/s)`.
pub fn rician_cdf(x: f64, nu: f64, sigma: f64) -> Result<f64> {
    check_rician(x, nu, sigma)?;
    if x.is_infinite() {
        return Ok(1.0);
    }
    Ok(1.0 - marcum_q1(nu / sigma, x / sigma))
}
