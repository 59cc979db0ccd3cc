use fbmc_golay::analysis::{iapr_exceedance, sigma2_of_t, RicianPointModel, WindowedSynthesis};
use fbmc_golay::prototype::{hermite_taps, phydyas_taps};
use fbmc_golay::sequences::{golay_seed, sparse_preamble};
use fbmc_golay::waveform::FrameConfig;

fn cfg(guards: usize) -> FrameConfig {
    FrameConfig { subcarriers: 64, guards, preamble_slot: 0, data_span: 12, oversample: 4, rng_seed: 5 }
}

#[test]
fn interference_variance_matches_model() {
    let trials = 4000;
    for guards in [0, 1, 2] {
        let c = cfg(guards);
        let f = phydyas_taps(4, c.samples_per_t()).unwrap();
        let p = sparse_preamble(&golay_seed(16).unwrap(), 64).unwrap();
        let synth = WindowedSynthesis::new(&p, &f, &c).unwrap();
        let mut ws = synth.workspace();
        let w = *synth.window();
        let probes: Vec<usize> = (0..8).map(|i| w.len() / 16 + i * w.len() / 8).collect();
        let mut acc = vec![0.0; probes.len()];
        for t in 0..trials {
            let s = synth.trial_samples(t, &mut ws);
            for (a, &k) in acc.iter_mut().zip(&probes) {
                *a += (s[k] - synth.preamble_samples()[k]).norm_sqr();
            }
        }
        for (a, &k) in acc.iter().zip(&probes) {
            let empirical = a / trials as f64 / 2.0;
            let model = sigma2_of_t(guards, &f, 64, 0, w.time(k));
            let rel = empirical / model - 1.0;
            // four standard errors of a chi-square mean with 2 * trials dof
            assert!(rel.abs() < 4.0 * (1.0 / trials as f64).sqrt(), "G={guards} k={k}: {rel}");
        }
    }
}

#[test]
fn no_interference_beyond_overlap() {
    let f = hermite_taps(256).unwrap();
    for i in 0..50 {
        let t = 1.0 + i as f64 * 0.04;
        assert_eq!(sigma2_of_t(6, &f, 64, 0, t), 0.0);
        assert!(sigma2_of_t(1, &f, 64, 0, t) > 0.0);
    }
}

#[test]
fn exceedance_model_tracks_empirical() {
    let c = cfg(1);
    let f = hermite_taps(c.samples_per_t()).unwrap();
    let p = sparse_preamble(&golay_seed(16).unwrap(), 64).unwrap();
    let synth = WindowedSynthesis::new(&p, &f, &c).unwrap();
    let mut ws = synth.workspace();
    let w = *synth.window();
    let trials = 20_000u64;
    let k = w.len() / 2 + w.len() / 16;
    let model = RicianPointModel::new(&p, &f, 1, 0, w.time(k));
    let alphas = [0.5, 1.0, 1.5, 2.0];
    let mut hits = [0u64; 4];
    for t in 0..trials {
        let v = synth.trial_samples(t, &mut ws)[k].norm_sqr() / model.p_avg;
        for (h, &a) in hits.iter_mut().zip(&alphas) {
            *h += u64::from(v >= a);
        }
    }
    for (&h, &a) in hits.iter().zip(&alphas) {
        let q = iapr_exceedance(a, &model);
        let emp = h as f64 / trials as f64;
        let sd = (q * (1.0 - q) / trials as f64).sqrt();
        assert!((emp - q).abs() <= 4.0 * sd + 1e-12, "alpha={a}: {emp} vs {q}");
    }
}
