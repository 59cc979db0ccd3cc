use thiserror::Error;

/// Errors raised by sequence construction, filter design, synthesis and analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus {0} is not even (Golay pair construction needs an even modulus)")]
    OddModulus(u32),
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("phase {phase} at index {index} is not below modulus {modulus}")]
    PhaseOutOfRange { index: usize, phase: u32, modulus: u32 },
    #[error("coefficient {value} of `{name}` is not below modulus {modulus}")]
    CoefficientOutOfRange { name: &'static str, value: u32, modulus: u32 },
    #[error("permutation {0:?} is not a bijection on 1..=mu")]
    InvalidPermutation(Vec<usize>),
    #[error("variable index {index} outside 1..={num_vars}")]
    VariableIndexOutOfRange { index: usize, num_vars: usize },
    #[error("number of variables must be at least 1")]
    NoVariables,
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("shift {tau} out of range for a length-{len} sequence")]
    ShiftOutOfRange { tau: usize, len: usize },
    #[error("target length {target} is not (gap + 1) * {seed_len} with gap {gap}")]
    InvalidSparsity { target: usize, gap: usize, seed_len: usize },
    #[error("unsupported overlap factor K = {0}")]
    UnsupportedOverlap(usize),
    #[error("Hermite order {0} exceeds the supported maximum of 30")]
    HermiteOrderTooLarge(u32),
    #[error("preamble energy {found} differs from the required {expected}")]
    EnergyMismatch { expected: f64, found: f64 },
    #[error("filter sampled at {found} samples per T, signal needs {expected}")]
    SampleRateMismatch { expected: usize, found: usize },
    #[error("analysis window [{start}, {end}) is outside the signal extent [{first}, {last})")]
    WindowOutOfRange { start: i64, end: i64, first: i64, last: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
