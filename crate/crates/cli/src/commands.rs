use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use fbmc_golay::analysis::{monte_carlo_ccdf_with_progress, CcdfResult, WindowedSynthesis};
use fbmc_golay::prototype::{papr_bound_sigma0, phydyas_taps, FilterDesign, PrototypeFilter};
use fbmc_golay::sequences::{
    complementarity_error, dense_golay, dj_pair, golay_seed, iamc_preamble, mseq_preamble, sparse_preamble,
    ComplexSequence, GbfSpec, PhaseSequence,
};
use fbmc_golay::waveform::{FrameConfig, SampledSignal};

use crate::config::Globals;
use crate::error::{CliError, CliResult};
use crate::manifest::{self, RunManifest};
use crate::Outcome;

/// Resolution used for the closed-form bounds; the peak sits on the grid.
const BOUND_SAMPLES_PER_T: usize = 1024;

fn create_parent(path: &Path) -> CliResult<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e)),
        _ => Ok(()),
    }
}

fn write_file<F>(path: &Path, body: F) -> CliResult<()>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    create_parent(path)?;
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w).and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}

fn write_json<S: Serialize>(path: &Path, value: &S) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
    write_file(path, |w| writeln!(w, "{text}"))
}

fn output_path(g: &Globals, explicit: &Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit.clone().unwrap_or_else(|| g.out_dir.join(default_name))
}

/// A sequence in any of the accepted file forms.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SequenceInput {
    Signs(String),
    Phases(PhaseSequence),
    Complex(ComplexSequence),
}

impl SequenceInput {
    pub fn into_complex(self) -> CliResult<ComplexSequence> {
        match self {
            Self::Signs(s) => Ok(ComplexSequence::from_signs(&s)?),
            Self::Phases(p) => Ok(p.to_complex()),
            Self::Complex(c) => Ok(c),
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn fmt_seq(p: &PhaseSequence) -> String {
    p.to_signs().unwrap_or_else(|| format!("{:?}", p.phases()))
}

// ---------------------------------------------------------------- gen-golay

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// The length-16 pair +--+-+-+++--++++ / -+-++--+------++
    Example16,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct GenGolayArgs {
    /// Start from a named parameter set; other flags override it
    #[arg(long, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    /// Number of Boolean variables (sequence length 2^mu)
    #[arg(long)]
    pub mu: Option<usize>,
    /// Even phase modulus Q
    #[arg(long)]
    pub q: Option<u32>,
    /// Permutation of 1..mu, comma separated
    #[arg(long, value_delimiter = ',')]
    pub pi: Option<Vec<usize>>,
    /// Linear coefficients b_1..b_mu, comma separated
    #[arg(long, value_delimiter = ',')]
    pub b: Option<Vec<u32>>,
    /// Constant term b
    #[arg(long = "const")]
    #[serde(rename = "const")]
    pub constant: Option<u32>,
    /// Partner offset b'
    #[arg(long)]
    pub offset: Option<u32>,
    /// Output JSON file (default: <out-dir>/golay_pair.json)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl GenGolayArgs {
    pub fn spec(&self) -> CliResult<GbfSpec> {
        let mut spec = match (self.preset, self.mu) {
            (Some(Preset::Example16), None) => GbfSpec::example_16(),
            (Some(Preset::Example16), Some(mu)) if mu == 4 => GbfSpec::example_16(),
            (Some(Preset::Example16), Some(mu)) => {
                return Err(CliError::Validation(format!("preset example16 has mu = 4, not {mu}")))
            }
            (None, Some(mu)) => GbfSpec::standard(mu),
            (None, None) => return Err(CliError::Validation("--mu is required unless --preset is given".into())),
        };
        if let Some(q) = self.q {
            spec.modulus = q;
        }
        if let Some(pi) = &self.pi {
            spec.permutation = pi.clone();
        }
        if let Some(b) = &self.b {
            spec.linear = b.clone();
        }
        if let Some(c) = self.constant {
            spec.constant = c;
        }
        if let Some(o) = self.offset {
            spec.pair_offset = o;
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GolayReport {
    pub spec: GbfSpec,
    pub c: PhaseSequence,
    pub d: PhaseSequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_signs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_signs: Option<String>,
    /// `max |rho_c(tau) + rho_d(tau)|` over `tau != 0`.
    pub max_complementarity_error: f64,
    pub is_gcp: bool,
}

pub fn golay_report(spec: &GbfSpec) -> CliResult<GolayReport> {
    let (c, d) = dj_pair(spec)?;
    let err = complementarity_error(&c.to_complex(), &d.to_complex())?;
    Ok(GolayReport {
        spec: spec.clone(),
        c_signs: c.to_signs(),
        d_signs: d.to_signs(),
        c,
        d,
        max_complementarity_error: err,
        is_gcp: err <= 1e-9,
    })
}

pub fn gen_golay(g: &Globals, args: GenGolayArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let spec = args.spec()?;
    let report = golay_report(&spec)?;
    let out = output_path(g, &args.out, "golay_pair.json");
    write_json(&out, &report)?;
    let resolved = GenGolayArgs {
        preset: None,
        mu: Some(spec.num_vars),
        q: Some(spec.modulus),
        pi: Some(spec.permutation.clone()),
        b: Some(spec.linear.clone()),
        constant: Some(spec.constant),
        offset: Some(spec.pair_offset),
        out: Some(out.clone()),
    };
    let mpath = manifest::path_for(&out);
    RunManifest::new("gen-golay", g, &resolved, start.elapsed(), vec![out.clone()])?.write(&mpath)?;

    let mut text = String::new();
    let _ = writeln!(text, "c = {}", fmt_seq(&report.c));
    let _ = writeln!(text, "d = {}", fmt_seq(&report.d));
    let _ = writeln!(text, "max |rho_c + rho_d| over tau != 0: {:.3e}", report.max_complementarity_error);
    let _ = writeln!(text, "GCP: {}", if report.is_gcp { "yes" } else { "no" });
    let _ = writeln!(text, "wrote {}", out.display());
    let json = serde_json::json!({ "report": report, "output": out, "manifest": mpath });
    Outcome::new(g, text, &json)
}

// --------------------------------------------------------------- verify-gcp

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyGcpArgs {
    /// JSON file with fields "c" and "d" (sign strings, phase or complex sequences)
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// First sequence as a +/- string
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Second sequence as a +/- string
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Largest accepted |rho_c + rho_d|
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GcpReport {
    pub length: usize,
    pub max_complementarity_error: f64,
    pub tol: f64,
    pub is_gcp: bool,
}

#[derive(Deserialize)]
struct PairFile {
    c: SequenceInput,
    d: SequenceInput,
}

pub fn verify_gcp(g: &Globals, args: VerifyGcpArgs) -> CliResult<Outcome> {
    let (c, d) = match (&args.file, &args.c, &args.d) {
        (Some(path), None, None) => {
            let pair: PairFile = read_json(path)?;
            (pair.c.into_complex()?, pair.d.into_complex()?)
        }
        (None, Some(c), Some(d)) => (ComplexSequence::from_signs(c)?, ComplexSequence::from_signs(d)?),
        _ => return Err(CliError::Validation("give either --file or both --c and --d".into())),
    };
    let tol = args.tol.unwrap_or(1e-9);
    if !(tol >= 0.0) {
        return Err(CliError::Validation(format!("--tol must be non-negative, got {tol}")));
    }
    let err = complementarity_error(&c, &d)?;
    let report = GcpReport { length: c.len(), max_complementarity_error: err, tol, is_gcp: err <= tol };
    let text = format!(
        "length {}, max |rho_c + rho_d| over tau != 0: {:.3e} (tol {:.1e})\nGCP: {}\n",
        report.length,
        err,
        tol,
        if report.is_gcp { "yes" } else { "no" }
    );
    let mut outcome = Outcome::new(g, text, &report)?;
    if !report.is_gcp {
        outcome.failure = Some(CliError::Validation("the sequences are not a Golay complementary pair".into()));
    }
    Ok(outcome)
}

// ------------------------------------------------------------------- bounds

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundsArgs {
    /// phydyas, phydyas3, phydyas4, hermite or all
    #[arg(long)]
    pub filter: Option<String>,
    /// Overlapping factor for the PHYDYAS filter
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub filter: String,
    pub overlap: usize,
    pub bound_db: f64,
    pub bound_linear: f64,
}

fn bound_row(filter: &PrototypeFilter, name: String) -> BoundRow {
    let db = papr_bound_sigma0(filter);
    BoundRow { filter: name, overlap: filter.overlap(), bound_db: db, bound_linear: 10f64.powf(db / 10.0) }
}

/// The sigma = 0 PAPR bound for the selected filters.
pub fn bound_rows(filter: Option<&str>, k: Option<usize>) -> CliResult<Vec<BoundRow>> {
    let designs = match (filter, k) {
        (None | Some("all"), None) => vec![FilterDesign::Phydyas4, FilterDesign::Phydyas3, FilterDesign::Hermite],
        (None | Some("phydyas"), Some(k)) => {
            let f = phydyas_taps(k, BOUND_SAMPLES_PER_T)?;
            return Ok(vec![bound_row(&f, format!("phydyas{k}"))]);
        }
        (Some("all"), Some(_)) => return Err(CliError::Validation("--k needs a single --filter".into())),
        (Some(name), k) => {
            let design: FilterDesign = name.parse()?;
            if let Some(k) = k {
                if k != design.overlap() {
                    return Err(CliError::Validation(format!("{design} has overlap {}, not {k}", design.overlap())));
                }
            }
            vec![design]
        }
    };
    designs
        .into_iter()
        .map(|d| Ok(bound_row(&d.build(BOUND_SAMPLES_PER_T)?, d.name().to_string())))
        .collect()
}

pub fn bounds(g: &Globals, args: BoundsArgs) -> CliResult<Outcome> {
    let rows = bound_rows(args.filter.as_deref(), args.k)?;
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(text, "{:<9} K={}  {:.4} dB", r.filter, r.overlap, r.bound_db);
    }
    Outcome::new(g, text, &rows)
}

// ---------------------------------------------------------- shared framing

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreambleKind {
    /// Sparse preamble from a binary Golay seed of length --channel-len
    Golay,
    /// Sparse preamble from the length-31 m-sequence plus a trailing +
    Mseq,
    /// Dense IAM-C preamble
    Iamc,
    /// Dense binary Golay sequence of length M
    Dense,
}

impl PreambleKind {
    fn name(self) -> &'static str {
        match self {
            Self::Golay => "golay",
            Self::Mseq => "mseq",
            Self::Iamc => "iamc",
            Self::Dense => "dense",
        }
    }
}

pub fn build_preamble(kind: PreambleKind, subcarriers: usize, channel_len: usize) -> CliResult<ComplexSequence> {
    Ok(match kind {
        PreambleKind::Golay => sparse_preamble(&golay_seed(channel_len)?, subcarriers)?,
        PreambleKind::Mseq => mseq_preamble(subcarriers)?,
        PreambleKind::Iamc => iamc_preamble(subcarriers),
        PreambleKind::Dense => dense_golay(subcarriers)?,
    })
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct FrameArgs {
    /// Built-in preamble
    #[arg(long, value_enum)]
    pub preamble: Option<PreambleKind>,
    /// JSON preamble (sign string, phase or complex sequence) of length M and energy M
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preamble_file: Option<PathBuf>,
    /// Prototype filter: phydyas3, phydyas4 or hermite
    #[arg(long)]
    pub filter: Option<FilterDesign>,
    /// Zero guard symbols on each side of the preamble
    #[arg(long)]
    pub guards: Option<usize>,
    /// Number of subcarriers M
    #[arg(long)]
    pub subcarriers: Option<usize>,
    /// Channel memory, i.e. the Golay seed length of the sparse preamble
    #[arg(long)]
    pub channel_len: Option<usize>,
    /// Data symbols on each side beyond the guards
    #[arg(long)]
    pub data_span: Option<usize>,
}

struct Experiment {
    args: FrameArgs,
    label: String,
    design: FilterDesign,
    cfg: FrameConfig,
    filter: PrototypeFilter,
    preamble: ComplexSequence,
}

impl FrameArgs {
    fn experiment(&self, g: &Globals) -> CliResult<Experiment> {
        let design = self.filter.unwrap_or(FilterDesign::Phydyas4);
        let subcarriers = self.subcarriers.unwrap_or(512);
        let channel_len = self.channel_len.unwrap_or(32);
        let kind = self.preamble.unwrap_or(PreambleKind::Golay);
        let defaults = FrameConfig::default();
        let cfg = FrameConfig {
            subcarriers,
            guards: self.guards.unwrap_or(defaults.guards),
            preamble_slot: 0,
            data_span: self.data_span.unwrap_or(defaults.data_span),
            oversample: g.oversample,
            rng_seed: g.seed,
        };
        let (preamble, label) = match &self.preamble_file {
            Some(path) => {
                let seq: SequenceInput = read_json(path)?;
                (seq.into_complex()?, path.display().to_string())
            }
            None => (build_preamble(kind, subcarriers, channel_len)?, kind.name().to_string()),
        };
        let filter = design.build(cfg.samples_per_t())?;
        let args = FrameArgs {
            preamble: self.preamble_file.is_none().then_some(kind),
            preamble_file: self.preamble_file.clone(),
            filter: Some(design),
            guards: Some(cfg.guards),
            subcarriers: Some(subcarriers),
            channel_len: Some(channel_len),
            data_span: Some(cfg.data_span),
        };
        Ok(Experiment { args, label, design, cfg, filter, preamble })
    }
}

// --------------------------------------------------------------------- papr

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct PaprArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub frame: FrameArgs,
    /// Data realization to synthesize
    #[arg(long)]
    pub trial: Option<u64>,
    /// Also write the windowed signal as CSV
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PaprReport {
    pub preamble: String,
    pub filter: FilterDesign,
    pub frame: FrameConfig,
    pub trial: u64,
    pub papr_db: f64,
    pub papr_without_data_db: f64,
    pub bound_sigma0_db: f64,
}

pub fn papr(g: &Globals, args: PaprArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let ex = args.frame.experiment(g)?;
    let trial = args.trial.unwrap_or(0);
    let synth = WindowedSynthesis::new(&ex.preamble, &ex.filter, &ex.cfg)?;
    let mut ws = synth.workspace();
    let report = PaprReport {
        preamble: ex.label.clone(),
        filter: ex.design,
        frame: ex.cfg.clone(),
        trial,
        papr_db: synth.trial_papr_db(trial, &mut ws),
        papr_without_data_db: synth.sigma0_papr_db(),
        bound_sigma0_db: papr_bound_sigma0(&ex.filter),
    };
    if !report.papr_db.is_finite() {
        return Err(CliError::Runtime(format!("PAPR evaluated to {}", report.papr_db)));
    }
    let mut text = format!(
        "preamble {} (M={}), {}, G={}, O={}\nPAPR (trial {trial}): {:.4} dB\nPAPR without data: {:.4} dB\nsigma = 0 bound: {:.4} dB\n",
        ex.label, ex.cfg.subcarriers, ex.design, ex.cfg.guards, ex.cfg.oversample,
        report.papr_db, report.papr_without_data_db, report.bound_sigma0_db
    );
    if let Some(path) = &args.signal_csv {
        let signal = SampledSignal {
            samples: synth.trial_samples(trial, &mut ws).to_vec(),
            samples_per_t: ex.cfg.samples_per_t(),
            start_index: synth.window().start,
        };
        write_file(path, |w| signal.write_csv(w))?;
        let resolved = PaprArgs { frame: ex.args, trial: Some(trial), signal_csv: Some(path.clone()) };
        RunManifest::new("papr", g, &resolved, start.elapsed(), vec![path.clone()])?.write(&manifest::path_for(path))?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Outcome::new(g, text, &report)
}

// --------------------------------------------------------------------- ccdf

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct CcdfArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub frame: FrameArgs,
    /// Monte Carlo trials
    #[arg(long)]
    pub trials: Option<u64>,
    /// Largest threshold in dB
    #[arg(long)]
    pub max_db: Option<f64>,
    /// Threshold spacing in dB
    #[arg(long)]
    pub step_db: Option<f64>,
    /// Output CSV (default: <out-dir>/ccdf_<filter>_<preamble>_g<G>.csv)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report progress on stderr (default: on for 10^6 trials or more)
    #[arg(long)]
    pub progress: Option<bool>,
}

pub fn thresholds(max_db: f64, step_db: f64) -> CliResult<Vec<f64>> {
    if !(step_db > 0.0) || !(max_db >= 0.0) || !max_db.is_finite() {
        return Err(CliError::Validation(format!("bad threshold grid: max {max_db} dB, step {step_db} dB")));
    }
    let n = (max_db / step_db + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| i as f64 * step_db).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct CcdfReport {
    pub preamble: String,
    pub result: CcdfResult,
    pub csv: PathBuf,
    pub manifest: PathBuf,
}

pub fn ccdf(g: &Globals, args: CcdfArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let ex = args.frame.experiment(g)?;
    let trials = args.trials.unwrap_or(10_000);
    let max_db = args.max_db.unwrap_or(9.0);
    let step_db = args.step_db.unwrap_or(0.05);
    let grid = thresholds(max_db, step_db)?;
    let show = args.progress.unwrap_or(trials >= 1_000_000);
    let last_pct = std::sync::atomic::AtomicU64::new(0);
    let progress = |done: u64, total: u64| {
        let pct = done * 100 / total;
        if show && pct > last_pct.swap(pct, std::sync::atomic::Ordering::Relaxed) {
            eprintln!("ccdf: {done}/{total} trials ({pct}%)");
        }
    };
    let result = monte_carlo_ccdf_with_progress(&ex.preamble, &ex.filter, &ex.cfg, trials, &grid, progress)?;
    if !result.max_papr_db.is_finite() {
        return Err(CliError::Runtime(format!("PAPR evaluated to {}", result.max_papr_db)));
    }
    let default_name = format!("ccdf_{}_{}_g{}.csv", ex.design, ex.label, ex.cfg.guards);
    let csv = match (&args.out, &args.frame.preamble_file) {
        (None, Some(_)) => g.out_dir.join(format!("ccdf_{}_file_g{}.csv", ex.design, ex.cfg.guards)),
        _ => output_path(g, &args.out, &default_name),
    };
    write_file(&csv, |w| result.write_csv(w))?;
    let mpath = manifest::path_for(&csv);
    let resolved = CcdfArgs {
        frame: ex.args,
        trials: Some(trials),
        max_db: Some(max_db),
        step_db: Some(step_db),
        out: Some(csv.clone()),
        progress: Some(show),
    };
    RunManifest::new("ccdf", g, &resolved, start.elapsed(), vec![csv.clone()])?.write(&mpath)?;

    let mut text = format!(
        "ccdf: {trials} trials, {} preamble, {}, G={}, M={}, O={}\nmax PAPR {:.4} dB, min {:.4} dB, without data {:.4} dB\n",
        ex.label, ex.design, ex.cfg.guards, ex.cfg.subcarriers, ex.cfg.oversample,
        result.max_papr_db, result.min_papr_db, result.sigma0_papr_db
    );
    if let Some(i) = result.thresholds_db.iter().position(|x| (x - 3.0).abs() < 1e-9) {
        let _ = writeln!(text, "Pr{{PAPR > 3.0000 dB}} = {:.6}", result.exceed_prob[i]);
    }
    let _ = writeln!(text, "wrote {}\nwrote {}", csv.display(), mpath.display());
    let report = CcdfReport { preamble: ex.label, result, csv, manifest: mpath };
    Outcome::new(g, text, &report)
}

// ------------------------------------------------------------------ compare

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct CompareArgs {
    /// Number of subcarriers M
    #[arg(long)]
    pub subcarriers: Option<usize>,
    /// Channel memory L_h, the Golay seed length
    #[arg(long)]
    pub channel_len: Option<usize>,
    /// Prototype filter
    #[arg(long)]
    pub filter: Option<FilterDesign>,
    /// Output CSV (default: <out-dir>/compare.csv)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub preamble: String,
    pub papr_db: f64,
}

/// Preamble PAPRs with guards wide enough that no data reaches the window.
pub fn compare_rows(
    subcarriers: usize,
    channel_len: usize,
    design: FilterDesign,
    oversample: usize,
) -> CliResult<Vec<CompareRow>> {
    let k = design.overlap();
    let cfg = FrameConfig { subcarriers, guards: 2 * k, preamble_slot: 0, data_span: 2 * k + 4, oversample, rng_seed: 0 };
    let filter = design.build(cfg.samples_per_t())?;
    let mut rows = Vec::new();
    for kind in [PreambleKind::Golay, PreambleKind::Mseq, PreambleKind::Iamc] {
        let p = build_preamble(kind, subcarriers, channel_len)?;
        let synth = WindowedSynthesis::new(&p, &filter, &cfg)?;
        rows.push(CompareRow { preamble: kind.name().into(), papr_db: synth.sigma0_papr_db() });
    }
    rows.push(CompareRow { preamble: "bound".into(), papr_db: papr_bound_sigma0(&filter) });
    Ok(rows)
}

pub fn compare(g: &Globals, args: CompareArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let m = args.subcarriers.unwrap_or(512);
    let lh = args.channel_len.unwrap_or(32);
    let design = args.filter.unwrap_or(FilterDesign::Phydyas4);
    let rows = compare_rows(m, lh, design, g.oversample)?;
    let out = output_path(g, &args.out, "compare.csv");
    write_file(&out, |w| {
        writeln!(w, "preamble,papr_db")?;
        for r in &rows {
            writeln!(w, "{},{:.4}", r.preamble, r.papr_db)?;
        }
        Ok(())
    })?;
    let resolved = CompareArgs { subcarriers: Some(m), channel_len: Some(lh), filter: Some(design), out: Some(out.clone()) };
    let mpath = manifest::path_for(&out);
    RunManifest::new("compare", g, &resolved, start.elapsed(), vec![out.clone()])?.write(&mpath)?;

    let mut text = format!("M={m}, L_h={lh}, {design}, O={}\npreamble  PAPR (dB)\n", g.oversample);
    for r in &rows {
        let _ = writeln!(text, "{:<8} {:>10.4}", r.preamble, r.papr_db);
    }
    let _ = writeln!(text, "wrote {}", out.display());
    Outcome::new(g, text, &rows)
}

// -------------------------------------------------------------- filter-dump

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterDumpArgs {
    /// Prototype filter
    #[arg(long)]
    pub filter: Option<FilterDesign>,
    /// Samples per symbol interval
    #[arg(long)]
    pub samples_per_t: Option<usize>,
    /// Output CSV (default: <out-dir>/filter_<name>.csv)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FilterReport {
    pub filter: FilterDesign,
    pub overlap: usize,
    pub samples_per_t: usize,
    pub taps: usize,
    pub energy: f64,
    pub peak: f64,
    pub bound_sigma0_db: f64,
    pub output: PathBuf,
}

pub fn filter_dump(g: &Globals, args: FilterDumpArgs) -> CliResult<Outcome> {
    let start = Instant::now();
    let design = args.filter.unwrap_or(FilterDesign::Phydyas4);
    let l = args.samples_per_t.unwrap_or(64);
    let filter = design.build(l)?;
    let out = output_path(g, &args.out, &format!("filter_{design}.csv"));
    write_file(&out, |w| filter.write_csv(w))?;
    let resolved = FilterDumpArgs { filter: Some(design), samples_per_t: Some(l), out: Some(out.clone()) };
    RunManifest::new("filter-dump", g, &resolved, start.elapsed(), vec![out.clone()])?.write(&manifest::path_for(&out))?;
    let report = FilterReport {
        filter: design,
        overlap: filter.overlap(),
        samples_per_t: l,
        taps: filter.len(),
        energy: filter.energy(),
        peak: filter.peak(),
        bound_sigma0_db: papr_bound_sigma0(&filter),
        output: out,
    };
    let text = format!(
        "{design}: K={}, L={l}, {} taps, energy {:.6}, peak {:.6}, bound {:.4} dB\nwrote {}\n",
        report.overlap, report.taps, report.energy, report.peak, report.bound_sigma0_db, report.output.display()
    );
    Outcome::new(g, text, &report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_grid() {
        let t = thresholds(9.0, 0.05).unwrap();
        assert_eq!(t.len(), 181);
        assert_eq!(t, fbmc_golay::analysis::default_thresholds());
        assert!(thresholds(1.0, 0.0).is_err());
        assert!(thresholds(-1.0, 0.1).is_err());
    }

    #[test]
    fn bound_selection() {
        assert_eq!(bound_rows(None, None).unwrap().len(), 3);
        assert_eq!(bound_rows(Some("phydyas"), Some(3)).unwrap()[0].filter, "phydyas3");
        assert_eq!(bound_rows(None, Some(4)).unwrap()[0].filter, "phydyas4");
        assert!(bound_rows(Some("hermite"), Some(3)).is_err());
        assert!(bound_rows(Some("phydyas"), Some(5)).is_err());
        assert!(bound_rows(Some("gauss"), None).is_err());
    }

    #[test]
    fn gen_golay_spec_resolution() {
        let preset = GenGolayArgs { preset: Some(Preset::Example16), ..Default::default() };
        assert_eq!(preset.spec().unwrap(), GbfSpec::example_16());
        assert!(GenGolayArgs::default().spec().is_err());
        let q4 = GenGolayArgs { mu: Some(3), q: Some(4), b: Some(vec![1, 3, 0]), ..Default::default() };
        let spec = q4.spec().unwrap();
        assert_eq!((spec.modulus, spec.permutation.clone()), (4, vec![1, 2, 3]));
        let odd = GenGolayArgs { mu: Some(3), q: Some(3), ..Default::default() };
        assert!(odd.spec().is_err());
    }

    #[test]
    fn sequence_inputs() {
        let s: SequenceInput = serde_json::from_str(r#""+-""#).unwrap();
        assert_eq!(s.into_complex().unwrap().len(), 2);
        let p: SequenceInput = serde_json::from_str(r#"{"modulus":4,"phases":[0,1,2]}"#).unwrap();
        assert_eq!(p.into_complex().unwrap().len(), 3);
        let c: SequenceInput = serde_json::from_str(r#"{"re":[1,0],"im":[0,1]}"#).unwrap();
        assert!(!c.into_complex().unwrap().is_real());
    }
}
