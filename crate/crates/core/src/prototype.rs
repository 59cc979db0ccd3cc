//! PHYDYAS and Hermite prototype filters sampled on a uniform grid of
//! `L` samples per symbol interval, plus their sigma = 0 PAPR bound.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::db;
use crate::error::{Error, Result};

/// Frequency-sampling coefficients `F_1..F_{K-1}` of the PHYDYAS filter.
fn phydyas_coeffs(overlap: usize) -> Result<Vec<f64>> {
    match overlap {
        3 => Ok(vec![0.911438, 0.411438]),
        4 => {
            let f1: f64 = 0.97196;
            Ok(vec![f1, std::f64::consts::FRAC_1_SQRT_2, (1.0 - f1 * f1).sqrt()])
        }
        k => Err(Error::UnsupportedOverlap(k)),
    }
}

/// Hermite expansion orders and weights.
const HERMITE_TERMS: [(u32, f64); 6] = [
    (0, 1.412682577),
    (4, -3.0145e-3),
    (8, -8.8041e-6),
    (12, -2.2611e-9),
    (16, -4.4570e-15),
    (20, 1.8633e-16),
];

const HERMITE_MAX_ORDER: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Phydyas,
    Hermite,
}

/// A named filter configuration, as selected by `--filter` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FilterDesign {
    #[serde(rename = "phydyas3")]
    Phydyas3,
    #[serde(rename = "phydyas4")]
    Phydyas4,
    #[serde(rename = "hermite")]
    Hermite,
}

impl FilterDesign {
    pub fn build(self, samples_per_t: usize) -> Result<PrototypeFilter> {
        match self {
            Self::Phydyas3 => phydyas_taps(3, samples_per_t),
            Self::Phydyas4 => phydyas_taps(4, samples_per_t),
            Self::Hermite => hermite_taps(samples_per_t),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Phydyas3 => "phydyas3",
            Self::Phydyas4 => "phydyas4",
            Self::Hermite => "hermite",
        }
    }

    pub fn overlap(self) -> usize {
        match self {
            Self::Phydyas3 => 3,
            Self::Phydyas4 | Self::Hermite => 4,
        }
    }
}

impl fmt::Display for FilterDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FilterDesign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phydyas3" => Ok(Self::Phydyas3),
            "phydyas4" | "phydyas" => Ok(Self::Phydyas4),
            "hermite" => Ok(Self::Hermite),
            other => Err(Error::InvalidParameter(format!(
                "unknown filter {other:?} (expected phydyas3, phydyas4 or hermite)"
            ))),
        }
    }
}

/// A real, symmetric prototype pulse supported on `[0, K T)`, sampled at
/// `t = k / L` for `k = 0..K L` and scaled so that `sum(taps^2) / L = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrototypeFilter {
    kind: FilterKind,
    overlap: usize,
    samples_per_t: usize,
    taps: Vec<f64>,
    /// Applied to the closed form so the sampled energy is exactly one.
    scale: f64,
}

impl PrototypeFilter {
    fn from_closed_form(kind: FilterKind, overlap: usize, samples_per_t: usize) -> Result<Self> {
        if samples_per_t < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 samples per T, got {samples_per_t}"
            )));
        }
        if kind == FilterKind::Phydyas {
            phydyas_coeffs(overlap)?;
        }
        let mut filter = Self { kind, overlap, samples_per_t, taps: Vec::new(), scale: 1.0 };
        let raw: Vec<f64> = (0..overlap * samples_per_t).map(|k| filter.eval(k as f64 / samples_per_t as f64)).collect();
        let energy: f64 = raw.iter().map(|g| g * g).sum::<f64>() / samples_per_t as f64;
        let scale = energy.sqrt().recip();
        filter.taps = raw.into_iter().map(|g| g * scale).collect();
        filter.scale = scale;
        Ok(filter)
    }

    pub fn kind(&self) -> FilterKind {
        self.kind
    }

    pub fn overlap(&self) -> usize {
        self.overlap
    }

    pub fn samples_per_t(&self) -> usize {
        self.samples_per_t
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    /// Sample spacing `T / L`.
    pub fn dt(&self) -> f64 {
        1.0 / self.samples_per_t as f64
    }

    /// Discrete energy `sum(taps^2) * dt`.
    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|g| g * g).sum::<f64>() * self.dt()
    }

    /// Peak tap value.
    pub fn peak(&self) -> f64 {
        self.taps.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Continuous-time pulse `g(t)`, with the same normalization as the taps.
    /// Zero outside `[0, K)`.
    pub fn eval(&self, t: f64) -> f64 {
        let k = self.overlap as f64;
        if !(0.0..k).contains(&t) {
            return 0.0;
        }
        let u = t - k / 2.0;
        let g = match self.kind {
            FilterKind::Phydyas => phydyas_centered(self.overlap, u),
            FilterKind::Hermite => hermite_centered(u),
        };
        self.scale * g
    }

    /// The same design sampled at a different rate.
    pub fn resampled(&self, samples_per_t: usize) -> Result<Self> {
        if samples_per_t == self.samples_per_t {
            return Ok(self.clone());
        }
        Self::from_closed_form(self.kind, self.overlap, samples_per_t)
    }

    /// Writes `index,t,tap` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "index,t,tap")?;
        for (k, g) in self.taps.iter().enumerate() {
            writeln!(w, "{},{:.9},{:.12e}", k, k as f64 * self.dt(), g)?;
        }
        Ok(())
    }
}

// The cosine sum written around the pulse centre: cos(2 pi k t / K) with
// t = u + K/2 equals (-1)^k cos(2 pi k u / K), which cancels the (-1)^k.
fn phydyas_centered(overlap: usize, u: f64) -> f64 {
    let coeffs = phydyas_coeffs(overlap).expect("overlap validated at construction");
    let k = overlap as f64;
    let sum_sq: f64 = coeffs.iter().map(|f| f * f).sum();
    let a = k * (1.0 + 2.0 * sum_sq);
    let series: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(i, f)| f * (2.0 * PI * (i + 1) as f64 * u / k).cos())
        .sum();
    (1.0 + 2.0 * series) / a.sqrt()
}

fn hermite_centered(u: f64) -> f64 {
    let y = 2.0 * PI.sqrt() * u;
    let h = hermite_table(20, y);
    let mut terms: Vec<f64> = HERMITE_TERMS.iter().map(|&(k, beta)| beta * h[k as usize]).collect();
    terms.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    (-2.0 * PI * u * u).exp() * pairwise_sum(&terms)
}

fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// `H_0(x)..=H_order(x)` by the physicists' recurrence.
fn hermite_table(order: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(order + 1);
    h.push(1.0);
    if order >= 1 {
        h.push(2.0 * x);
    }
    for k in 1..order {
        let next = 2.0 * x * h[k] - 2.0 * k as f64 * h[k - 1];
        h.push(next);
    }
    h
}

/// Physicists' Hermite polynomial `H_k(x)`, `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite_poly(k: u32, x: f64) -> Result<f64> {
    if k > HERMITE_MAX_ORDER {
        return Err(Error::HermiteOrderTooLarge(k));
    }
    Ok(hermite_table(k as usize, x)[k as usize])
}

/// PHYDYAS filter with overlap `K` in {3, 4}.
pub fn phydyas_taps(overlap: usize, samples_per_t: usize) -> Result<PrototypeFilter> {
    PrototypeFilter::from_closed_form(FilterKind::Phydyas, overlap, samples_per_t)
}

/// Hermite filter (K = 4).
pub fn hermite_taps(samples_per_t: usize) -> Result<PrototypeFilter> {
    PrototypeFilter::from_closed_form(FilterKind::Hermite, 4, samples_per_t)
}

/// `10 log10(T max g^2)`: the preamble PAPR bound for a Golay preamble
/// when no data interference reaches the observation window.
pub fn papr_bound_sigma0(filter: &PrototypeFilter) -> f64 {
    let peak = filter.peak();
    db(peak * peak)
}
