//! FBMC/OQAM frames and discrete-time synthesis of
//! `s(t) = sum_m sum_n a_{m,n} j^{m+n} exp(j 2 pi m t) g(t - n/2)`.
//!
//! Slot `n` starts at `t = n/2`. Signals are sampled on the absolute grid
//! `t = i / (O M)`, so sample indices are integers shared by every slot.

use std::io::{self, Write};
use std::sync::Arc;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::j_pow;
use crate::prototype::PrototypeFilter;
use crate::sequences::ComplexSequence;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Frame layout and sampling parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FrameConfig {
    /// Number of subcarriers `M`.
    pub subcarriers: usize,
    /// Zero guard slots on each side of the preamble.
    pub guards: usize,
    /// Half-symbol slot index `n` carrying the preamble.
    pub preamble_slot: i64,
    /// Data slots on each side beyond the guards.
    pub data_span: usize,
    /// Samples per `T` divided by `M`.
    pub oversample: usize,
    pub rng_seed: u64,
}

impl Default for FrameConfig {
    fn default() -> Self {
        Self { subcarriers: 512, guards: 3, preamble_slot: 0, data_span: 12, oversample: 4, rng_seed: 1 }
    }
}

impl FrameConfig {
    pub fn samples_per_t(&self) -> usize {
        self.oversample * self.subcarriers
    }

    pub fn total_slots(&self) -> usize {
        2 * (self.data_span + self.guards) + 1
    }

    pub fn first_slot(&self) -> i64 {
        self.preamble_slot - (self.guards + self.data_span) as i64
    }

    /// Checks everything that does not depend on the filter.
    pub fn validate(&self) -> Result<()> {
        if self.subcarriers < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 subcarriers, got {}", self.subcarriers)));
        }
        if self.oversample < 2 {
            return Err(Error::InvalidParameter(format!("oversample must be >= 2, got {}", self.oversample)));
        }
        Ok(())
    }

    /// Additionally requires `data_span >= 2K + 4` so every data slot that can
    /// reach the observation window is modeled.
    pub fn validate_for(&self, overlap: usize) -> Result<()> {
        self.validate()?;
        if self.data_span < 2 * overlap + 4 {
            return Err(Error::InvalidParameter(format!(
                "data_span {} too short for overlap {overlap} (need >= {})",
                self.data_span,
                2 * overlap + 4
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    Data,
    Guard,
    Preamble,
}

/// Subcarrier-by-slot symbol matrix. Data and guard entries are real; the
/// preamble column may be complex (needed for the IAM-C baseline).
#[derive(Debug, Clone, PartialEq)]
pub struct FbmcGrid {
    subcarriers: usize,
    first_slot: i64,
    columns: Vec<Vec<Complex64>>,
    kinds: Vec<ColumnKind>,
}

impl FbmcGrid {
    /// All-zero grid of `num_slots` columns starting at `first_slot`.
    pub fn zeros(subcarriers: usize, first_slot: i64, num_slots: usize) -> Self {
        Self {
            subcarriers,
            first_slot,
            columns: vec![vec![ZERO; subcarriers]; num_slots],
            kinds: vec![ColumnKind::Data; num_slots],
        }
    }

    /// `num_slots` columns of seeded +-1 data.
    pub fn random_data(subcarriers: usize, first_slot: i64, num_slots: usize, seed: u64, trial: u64) -> Self {
        let source = DataSource::new(seed, subcarriers);
        let mut rng = source.trial_rng(trial);
        let mut grid = Self::zeros(subcarriers, first_slot, num_slots);
        let mut symbols = vec![0.0; subcarriers];
        for (i, col) in grid.columns.iter_mut().enumerate() {
            source.fill(&mut rng, first_slot + i as i64, &mut symbols);
            for (z, &a) in col.iter_mut().zip(&symbols) {
                *z = Complex64::new(a, 0.0);
            }
        }
        grid
    }

    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    pub fn first_slot(&self) -> i64 {
        self.first_slot
    }

    pub fn num_slots(&self) -> usize {
        self.columns.len()
    }

    pub fn slot(&self, column: usize) -> i64 {
        self.first_slot + column as i64
    }

    pub fn column(&self, index: usize) -> &[Complex64] {
        &self.columns[index]
    }

    pub fn kind(&self, index: usize) -> ColumnKind {
        self.kinds[index]
    }

    pub fn column_energy(&self, index: usize) -> f64 {
        self.columns[index].iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn get(&self, subcarrier: usize, column: usize) -> Complex64 {
        self.columns[column][subcarrier]
    }

    pub fn set(&mut self, subcarrier: usize, column: usize, value: Complex64) {
        self.columns[column][subcarrier] = value;
    }

    /// Sets every entry outside the preamble column to zero.
    pub fn without_data(&self) -> Self {
        let mut out = self.clone();
        for (col, kind) in out.columns.iter_mut().zip(&out.kinds) {
            if *kind != ColumnKind::Preamble {
                col.fill(ZERO);
            }
        }
        out
    }

    /// Entry-wise sum of two grids with identical layout.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.subcarriers != other.subcarriers || self.first_slot != other.first_slot || self.num_slots() != other.num_slots() {
            return Err(Error::InvalidParameter("grids with different layouts cannot be added".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.columns.iter_mut().zip(&other.columns) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        Ok(out)
    }

    /// The same symbols moved `by` slots later.
    pub fn shifted(&self, by: i64) -> Self {
        Self { first_slot: self.first_slot + by, ..self.clone() }
    }
}

/// Counter-based +-1 data: the symbol on subcarrier `m` of slot `n` in trial
/// `t` depends only on `(seed, t, n, m)`.
#[derive(Debug, Clone)]
pub(crate) struct DataSource {
    seed: u64,
    words_per_slot: u128,
}

impl DataSource {
    pub(crate) fn new(seed: u64, subcarriers: usize) -> Self {
        Self { seed, words_per_slot: subcarriers.div_ceil(32) as u128 }
    }

    pub(crate) fn trial_rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }

    pub(crate) fn fill(&self, rng: &mut ChaCha8Rng, slot: i64, out: &mut [f64]) {
        let zigzag = ((slot << 1) ^ (slot >> 63)) as u64;
        rng.set_word_pos(u128::from(zigzag) * self.words_per_slot);
        for chunk in out.chunks_mut(32) {
            let bits = rng.next_u32();
            for (i, a) in chunk.iter_mut().enumerate() {
                *a = if bits >> i & 1 == 1 { 1.0 } else { -1.0 };
            }
        }
    }
}

/// Lays out `[data x N_d | 0 x G | preamble | 0 x G | data x N_d]` with the
/// preamble at `cfg.preamble_slot`, using the data realization of trial 0.
pub fn build_frame(cfg: &FrameConfig, preamble: &ComplexSequence) -> Result<FbmcGrid> {
    build_frame_trial(cfg, preamble, 0)
}

/// [`build_frame`] for an arbitrary Monte Carlo trial index.
pub fn build_frame_trial(cfg: &FrameConfig, preamble: &ComplexSequence, trial: u64) -> Result<FbmcGrid> {
    cfg.validate()?;
    check_preamble(cfg, preamble)?;
    let m = cfg.subcarriers;
    let mut grid = FbmcGrid::random_data(m, cfg.first_slot(), cfg.total_slots(), cfg.rng_seed, trial);
    let center = cfg.data_span + cfg.guards;
    for g in 1..=cfg.guards {
        for col in [center - g, center + g] {
            grid.columns[col].fill(ZERO);
            grid.kinds[col] = ColumnKind::Guard;
        }
    }
    grid.columns[center].copy_from_slice(preamble.as_slice());
    grid.kinds[center] = ColumnKind::Preamble;
    Ok(grid)
}

pub(crate) fn check_preamble(cfg: &FrameConfig, preamble: &ComplexSequence) -> Result<()> {
    let m = cfg.subcarriers;
    if preamble.len() != m {
        return Err(Error::LengthMismatch { expected: m, found: preamble.len() });
    }
    let energy = preamble.energy();
    if (energy - m as f64).abs() > 1e-9 * m as f64 {
        return Err(Error::EnergyMismatch { expected: m as f64, found: energy });
    }
    Ok(())
}

/// Complex baseband samples on the absolute grid `t = (start_index + k) / samples_per_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub samples: Vec<Complex64>,
    pub samples_per_t: usize,
    /// Absolute grid index of `samples[0]`.
    pub start_index: i64,
}

impl SampledSignal {
    /// Time of sample 0, in units of `T`.
    pub fn t0(&self) -> f64 {
        self.start_index as f64 / self.samples_per_t as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        (self.start_index + k as i64) as f64 / self.samples_per_t as f64
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Writes `k,t,re,im,power` rows.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "k,t,re,im,power")?;
        for (k, z) in self.samples.iter().enumerate() {
            writeln!(w, "{},{:.9},{:.12e},{:.12e},{:.12e}", k, self.time(k), z.re, z.im, z.norm_sqr())?;
        }
        Ok(())
    }
}

/// Per-slot modulator: `B(i) = sum_m a_m j^m exp(j 2 pi m i / (O M))`, which
/// is periodic in the sample index with period `O M`.
pub(crate) struct SlotModulator {
    fft: Arc<dyn Fft<f64>>,
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl SlotModulator {
    pub(crate) fn new(samples_per_t: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_inverse(samples_per_t);
        let scratch = vec![ZERO; fft.get_inplace_scratch_len()];
        Self { fft, buf: vec![ZERO; samples_per_t], scratch }
    }

    pub(crate) fn modulate<I>(&mut self, symbols: I) -> &[Complex64]
    where
        I: IntoIterator<Item = Complex64>,
    {
        self.buf.fill(ZERO);
        for (m, (slot, a)) in self.buf.iter_mut().zip(symbols).enumerate() {
            *slot = a * j_pow(m as i64);
        }
        self.fft.process_with_scratch(&mut self.buf, &mut self.scratch);
        &self.buf
    }
}

/// Adds slot `slot`'s contribution `j^slot g(t - slot/2) B(t)` to `out`,
/// whose first entry sits at absolute index `out_start`.
pub(crate) fn accumulate_slot(
    out: &mut [Complex64],
    out_start: i64,
    slot: i64,
    taps: &[f64],
    modulated: &[Complex64],
) {
    let period = modulated.len() as i64;
    let slot_start = slot * period / 2;
    let lo = slot_start.max(out_start);
    let hi = (slot_start + taps.len() as i64).min(out_start + out.len() as i64);
    if lo >= hi {
        return;
    }
    let phase = j_pow(slot);
    let mut b_idx = lo.rem_euclid(period) as usize;
    for abs in lo..hi {
        let g = taps[(abs - slot_start) as usize];
        out[(abs - out_start) as usize] += phase * modulated[b_idx] * g;
        b_idx += 1;
        if b_idx == modulated.len() {
            b_idx = 0;
        }
    }
}

pub(crate) fn matched_filter(filter: &PrototypeFilter, samples_per_t: usize) -> Result<PrototypeFilter> {
    let f = filter.resampled(samples_per_t)?;
    if f.samples_per_t() != samples_per_t {
        return Err(Error::SampleRateMismatch { expected: samples_per_t, found: f.samples_per_t() });
    }
    Ok(f)
}

/// Synthesizes every slot of `grid` at `cfg.oversample * M` samples per `T`.
/// The output spans from the first slot's start to the end of the last
/// slot's pulse, so every contribution is fully accumulated.
pub fn synthesize(grid: &FbmcGrid, filter: &PrototypeFilter, cfg: &FrameConfig) -> Result<SampledSignal> {
    cfg.validate()?;
    if grid.subcarriers() != cfg.subcarriers {
        return Err(Error::LengthMismatch { expected: cfg.subcarriers, found: grid.subcarriers() });
    }
    let spt = cfg.samples_per_t();
    let filter = matched_filter(filter, spt)?;
    let half = (spt / 2) as i64;
    let start = grid.first_slot() * half;
    let end = if grid.num_slots() == 0 { start } else { grid.slot(grid.num_slots() - 1) * half + filter.len() as i64 };
    let mut samples = vec![ZERO; (end - start) as usize];
    let mut modulator = SlotModulator::new(spt);
    for col in 0..grid.num_slots() {
        let symbols = grid.column(col);
        if symbols.iter().all(|z| *z == ZERO) {
            continue;
        }
        let b = modulator.modulate(symbols.iter().copied());
        accumulate_slot(&mut samples, start, grid.slot(col), filter.taps(), b);
    }
    Ok(SampledSignal { samples, samples_per_t: spt, start_index: start })
}

/// `zeta = integral g_{m,n}(t) conj(g_{p,q}(t)) dt` by a Riemann sum on the
/// filter's sample grid. Exactly zero once the pulses no longer overlap.
pub fn transmultiplexer_response(filter: &PrototypeFilter, m: i64, n: i64, p: i64, q: i64) -> Complex64 {
    let k = filter.overlap() as i64;
    if (n - q).abs() >= 2 * k {
        return ZERO;
    }
    let owned;
    let filter = if filter.samples_per_t() % 2 == 0 {
        filter
    } else {
        owned = filter.resampled(2 * filter.samples_per_t()).expect("doubling a valid rate");
        &owned
    };
    let l = filter.samples_per_t() as i64;
    let taps = filter.taps();
    let (start_n, start_q) = (n * l / 2, q * l / 2);
    let lo = start_n.max(start_q);
    let hi = (start_n.min(start_q)) + taps.len() as i64;
    let w = 2.0 * std::f64::consts::PI * (m - p) as f64 / l as f64;
    let sum: Complex64 = (lo..hi)
        .map(|i| {
            let g = taps[(i - start_n) as usize] * taps[(i - start_q) as usize];
            Complex64::from_polar(g, w * i as f64)
        })
        .sum();
    j_pow(m + n - p - q) * sum * filter.dt()
}
