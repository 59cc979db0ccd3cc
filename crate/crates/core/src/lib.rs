//! Low-PAPR preamble design for FBMC/OQAM.
//!
//! The crate is organised bottom-up:
//!
//! * [`sequences`] builds Golay complementary pairs from generalized Boolean
//!   functions, plus the sparse, m-sequence and IAM-C preambles.
//! * [`prototype`] samples the PHYDYAS and Hermite prototype filters.
//! * [`waveform`] lays out preamble/guard/data frames and synthesizes the
//!   baseband FBMC signal.
//! * [`analysis`] measures preamble PAPR over the observation window, runs
//!   Monte Carlo CCDFs and evaluates the Rician/Marcum-Q exceedance model.
//!
//! Time is normalized to the complex symbol interval, `T = 1`.

pub mod analysis;
pub mod error;
pub mod prototype;
pub mod sequences;
pub mod waveform;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `j^k` for any integer `k`, computed exactly.
pub fn j_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Power ratio to decibels.
pub fn db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// Decibels to power ratio.
pub fn undb(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}
