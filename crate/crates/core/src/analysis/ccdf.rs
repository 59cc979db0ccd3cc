use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{average_power, peak_power, AnalysisWindow};
use crate::db;
use crate::error::{Error, Result};
use crate::prototype::{FilterKind, PrototypeFilter};
use crate::sequences::ComplexSequence;
use crate::waveform::{accumulate_slot, check_preamble, matched_filter, DataSource, FrameConfig, SlotModulator};

/// Trials per progress report.
const CHUNK: u64 = 1 << 14;

/// Synthesizes only the observation window of a frame. The preamble part is
/// computed once; each trial adds the data slots whose pulses reach the
/// window. Equivalent to windowing the full [`crate::waveform::synthesize`]
/// output of [`crate::waveform::build_frame_trial`].
#[derive(Debug, Clone)]
pub struct WindowedSynthesis {
    cfg: FrameConfig,
    filter: PrototypeFilter,
    window: AnalysisWindow,
    preamble_part: Vec<Complex64>,
    data_slots: Vec<i64>,
    source: DataSource,
}

/// Per-thread scratch space for [`WindowedSynthesis`].
pub struct TrialWorkspace {
    modulator: SlotModulator,
    symbols: Vec<f64>,
    acc: Vec<Complex64>,
}

impl WindowedSynthesis {
    pub fn new(preamble: &ComplexSequence, filter: &PrototypeFilter, cfg: &FrameConfig) -> Result<Self> {
        cfg.validate_for(filter.overlap())?;
        check_preamble(cfg, preamble)?;
        let spt = cfg.samples_per_t();
        let filter = matched_filter(filter, spt)?;
        let n = cfg.preamble_slot;
        let window = AnalysisWindow::new(n, spt)?;

        let mut preamble_part = vec![Complex64::new(0.0, 0.0); window.len()];
        let mut modulator = SlotModulator::new(spt);
        let b = modulator.modulate(preamble.as_slice().iter().copied());
        accumulate_slot(&mut preamble_part, window.start, n, filter.taps(), b);

        let half = (spt / 2) as i64;
        let reach = (cfg.guards + cfg.data_span) as i64;
        let data_slots = (n - reach..=n + reach)
            .filter(|s| (s - n).unsigned_abs() as usize > cfg.guards)
            .filter(|s| s * half < window.end && s * half + filter.len() as i64 > window.start)
            .collect();
        let source = DataSource::new(cfg.rng_seed, cfg.subcarriers);
        Ok(Self { cfg: cfg.clone(), filter, window, preamble_part, data_slots, source })
    }

    pub fn window(&self) -> &AnalysisWindow {
        &self.window
    }

    pub fn config(&self) -> &FrameConfig {
        &self.cfg
    }

    /// Data slots that contribute inside the window.
    pub fn data_slots(&self) -> &[i64] {
        &self.data_slots
    }

    /// Window samples of the preamble alone (no data interference).
    pub fn preamble_samples(&self) -> &[Complex64] {
        &self.preamble_part
    }

    pub fn p_avg(&self) -> f64 {
        average_power(self.cfg.subcarriers)
    }

    /// PAPR with every data slot silent.
    pub fn sigma0_papr_db(&self) -> f64 {
        db(peak_power(&self.preamble_part) / self.p_avg())
    }

    pub fn workspace(&self) -> TrialWorkspace {
        TrialWorkspace {
            modulator: SlotModulator::new(self.cfg.samples_per_t()),
            symbols: vec![0.0; self.cfg.subcarriers],
            acc: vec![Complex64::new(0.0, 0.0); self.window.len()],
        }
    }

    /// Window samples for Monte Carlo trial `trial`.
    pub fn trial_samples<'w>(&self, trial: u64, ws: &'w mut TrialWorkspace) -> &'w [Complex64] {
        ws.acc.copy_from_slice(&self.preamble_part);
        let mut rng = self.source.trial_rng(trial);
        for &slot in &self.data_slots {
            self.source.fill(&mut rng, slot, &mut ws.symbols);
            let b = ws.modulator.modulate(ws.symbols.iter().map(|&a| Complex64::new(a, 0.0)));
            accumulate_slot(&mut ws.acc, self.window.start, slot, self.filter.taps(), b);
        }
        &ws.acc
    }

    pub fn trial_papr_db(&self, trial: u64, ws: &mut TrialWorkspace) -> f64 {
        let p_avg = self.p_avg();
        db(peak_power(self.trial_samples(trial, ws)) / p_avg)
    }
}

/// Thresholds from 0 to 9 dB in 0.05 dB steps.
pub fn default_thresholds() -> Vec<f64> {
    (0..=180).map(|i| i as f64 * 0.05).collect()
}

/// Empirical `Pr{PAPR > x}` over a set of thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CcdfResult {
    pub thresholds_db: Vec<f64>,
    pub exceed_prob: Vec<f64>,
    pub exceed_counts: Vec<u64>,
    pub trials: u64,
    pub max_papr_db: f64,
    pub min_papr_db: f64,
    /// PAPR of the preamble with the data silenced.
    pub sigma0_papr_db: f64,
    pub frame: FrameConfig,
    pub filter: FilterKind,
    pub overlap: usize,
}

impl CcdfResult {
    /// Writes `threshold_db,exceed_prob` rows with fixed formatting.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "threshold_db,exceed_prob")?;
        for (x, p) in self.thresholds_db.iter().zip(&self.exceed_prob) {
            writeln!(w, "{x:.4},{p:.10}")?;
        }
        Ok(())
    }
}

#[derive(Clone)]
struct Tally {
    /// `hist[i]` counts trials whose PAPR exceeds exactly `i` thresholds.
    hist: Vec<u64>,
    max: f64,
    min: f64,
}

impl Tally {
    fn new(n: usize) -> Self {
        Self { hist: vec![0; n + 1], max: f64::NEG_INFINITY, min: f64::INFINITY }
    }

    fn add(mut self, thresholds: &[f64], papr: f64) -> Self {
        self.hist[thresholds.partition_point(|&x| x < papr)] += 1;
        self.max = self.max.max(papr);
        self.min = self.min.min(papr);
        self
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.hist.iter_mut().zip(&other.hist) {
            *a += b;
        }
        self.max = self.max.max(other.max);
        self.min = self.min.min(other.min);
        self
    }
}

/// Estimates the preamble PAPR CCDF from `trials` independent data
/// realizations. Trial `i` draws its data from stream `i` of the configured
/// seed, so the result does not depend on scheduling.
pub fn monte_carlo_ccdf(
    preamble: &ComplexSequence,
    filter: &PrototypeFilter,
    cfg: &FrameConfig,
    trials: u64,
    thresholds_db: &[f64],
) -> Result<CcdfResult> {
    monte_carlo_ccdf_with_progress(preamble, filter, cfg, trials, thresholds_db, |_, _| {})
}

/// [`monte_carlo_ccdf`] reporting `(done, total)` after each block of trials.
pub fn monte_carlo_ccdf_with_progress<F>(
    preamble: &ComplexSequence,
    filter: &PrototypeFilter,
    cfg: &FrameConfig,
    trials: u64,
    thresholds_db: &[f64],
    progress: F,
) -> Result<CcdfResult>
where
    F: Fn(u64, u64),
{
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    if thresholds_db.iter().any(|x| !x.is_finite()) || thresholds_db.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("thresholds must be finite and strictly increasing".into()));
    }
    let synth = WindowedSynthesis::new(preamble, filter, cfg)?;
    let n = thresholds_db.len();
    let mut tally = Tally::new(n);
    let mut done = 0;
    while done < trials {
        let end = (done + CHUNK).min(trials);
        let chunk = (done..end)
            .into_par_iter()
            .map_init(|| synth.workspace(), |ws, t| synth.trial_papr_db(t, ws))
            .fold(|| Tally::new(n), |acc, p| acc.add(thresholds_db, p))
            .reduce(|| Tally::new(n), Tally::merge);
        tally = tally.merge(chunk);
        done = end;
        progress(done, trials);
    }

    let mut exceed_counts = vec![0u64; n];
    let mut above = 0u64;
    for i in (0..n).rev() {
        above += tally.hist[i + 1];
        exceed_counts[i] = above;
    }
    let exceed_prob = exceed_counts.iter().map(|&c| c as f64 / trials as f64).collect();
    Ok(CcdfResult {
        thresholds_db: thresholds_db.to_vec(),
        exceed_prob,
        exceed_counts,
        trials,
        max_papr_db: tally.max,
        min_papr_db: tally.min,
        sigma0_papr_db: synth.sigma0_papr_db(),
        frame: cfg.clone(),
        filter: filter.kind(),
        overlap: filter.overlap(),
    })
}
