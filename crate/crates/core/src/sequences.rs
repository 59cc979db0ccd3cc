//! Sequence machinery: generalized Boolean functions, Davis-Jedwab Golay
//! pairs, aperiodic autocorrelation and the preamble families used for
//! comparison (sparse Golay, sparse m-sequence, IAM-C).

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::j_pow;

/// The length-31 m-sequence used as the pseudo-random sparse baseline.
pub const M_SEQUENCE_31: &str = "+----+--+-++--+++++---++-+++-+-";

/// One term `coeff * x_{i1} * x_{i2} * ...` of a generalized Boolean function.
/// Variable indices are 1-based; an empty `vars` list is a constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: u32,
    pub vars: Vec<usize>,
}

/// A generalized Boolean function `{0,1}^mu -> Z_Q` stored as a sum of monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gbf {
    modulus: u32,
    num_vars: usize,
    terms: Vec<Monomial>,
}

impl Gbf {
    pub fn new(modulus: u32, num_vars: usize) -> Self {
        Self { modulus, num_vars, terms: Vec::new() }
    }

    /// Adds `coeff * prod(x_v for v in vars)`.
    pub fn term(mut self, coeff: u32, vars: &[usize]) -> Self {
        self.terms.push(Monomial { coeff, vars: vars.to_vec() });
        self
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }
}

/// Evaluates `f` at every `kappa` in `0..2^mu`, reading the binary digits of
/// `kappa` as `[x_1, ..., x_mu]` with `x_mu` the most significant bit.
pub fn evaluate_gbf(f: &Gbf) -> Result<PhaseSequence> {
    if f.modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if f.num_vars == 0 {
        return Err(Error::NoVariables);
    }
    if f.num_vars >= usize::BITS as usize {
        return Err(Error::InvalidParameter(format!("{} variables is too many", f.num_vars)));
    }
    let mut masks = Vec::with_capacity(f.terms.len());
    for t in &f.terms {
        let mut mask = 0usize;
        for &v in &t.vars {
            if v == 0 || v > f.num_vars {
                return Err(Error::VariableIndexOutOfRange { index: v, num_vars: f.num_vars });
            }
            mask |= 1 << (v - 1);
        }
        masks.push((u64::from(t.coeff % f.modulus), mask));
    }
    let q = u64::from(f.modulus);
    let phases = (0..1usize << f.num_vars)
        .map(|kappa| {
            let sum = masks
                .iter()
                .filter(|(_, mask)| kappa & mask == *mask)
                .fold(0u64, |acc, (c, _)| (acc + c) % q);
            sum as u32
        })
        .collect();
    Ok(PhaseSequence { modulus: f.modulus, phases })
}

/// Parameters of a Davis-Jedwab Golay pair over `Z_Q`:
///
/// `f = (Q/2) sum_k x_pi(k) x_pi(k+1) + sum_k b_k x_k + b`, partnered with
/// `f + (Q/2) x_pi(1) + b'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbfSpec {
    #[serde(rename = "q")]
    pub modulus: u32,
    #[serde(rename = "mu")]
    pub num_vars: usize,
    /// 1-based permutation of `1..=mu`.
    #[serde(rename = "pi")]
    pub permutation: Vec<usize>,
    #[serde(rename = "b")]
    pub linear: Vec<u32>,
    #[serde(rename = "const")]
    pub constant: u32,
    #[serde(rename = "offset")]
    pub pair_offset: u32,
}

impl GbfSpec {
    /// Binary pair with identity permutation and all coefficients zero.
    pub fn standard(num_vars: usize) -> Self {
        Self {
            modulus: 2,
            num_vars,
            permutation: (1..=num_vars).collect(),
            linear: vec![0; num_vars],
            constant: 0,
            pair_offset: 0,
        }
    }

    /// The length-16 binary pair
    /// `c = +--+-+-+++--++++`, `d = -+-++--+------++`.
    ///
    /// Generated by `pi = [2,3,4,1]`, `b = [1,1,1,0]`, `b' = 1`. The
    /// often-quoted `b = [1,1,0,1]`, `b' = 0` gives a different pair.
    pub fn example_16() -> Self {
        Self {
            modulus: 2,
            num_vars: 4,
            permutation: vec![2, 3, 4, 1],
            linear: vec![1, 1, 1, 0],
            constant: 0,
            pair_offset: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        if self.modulus % 2 != 0 {
            return Err(Error::OddModulus(self.modulus));
        }
        if self.num_vars == 0 {
            return Err(Error::NoVariables);
        }
        if self.linear.len() != self.num_vars {
            return Err(Error::LengthMismatch { expected: self.num_vars, found: self.linear.len() });
        }
        let mut seen = vec![false; self.num_vars];
        if self.permutation.len() != self.num_vars {
            return Err(Error::InvalidPermutation(self.permutation.clone()));
        }
        for &p in &self.permutation {
            if p == 0 || p > self.num_vars || seen[p - 1] {
                return Err(Error::InvalidPermutation(self.permutation.clone()));
            }
            seen[p - 1] = true;
        }
        for &b in &self.linear {
            if b >= self.modulus {
                return Err(Error::CoefficientOutOfRange { name: "b", value: b, modulus: self.modulus });
            }
        }
        if self.constant >= self.modulus {
            return Err(Error::CoefficientOutOfRange {
                name: "const",
                value: self.constant,
                modulus: self.modulus,
            });
        }
        if self.pair_offset >= self.modulus {
            return Err(Error::CoefficientOutOfRange {
                name: "offset",
                value: self.pair_offset,
                modulus: self.modulus,
            });
        }
        Ok(())
    }

    /// The quadratic-plus-linear function generating the first sequence.
    pub fn gbf(&self) -> Gbf {
        let half = self.modulus / 2;
        let mut f = Gbf::new(self.modulus, self.num_vars);
        for w in self.permutation.windows(2) {
            f = f.term(half, &[w[0], w[1]]);
        }
        for (k, &b) in self.linear.iter().enumerate() {
            if b != 0 {
                f = f.term(b, &[k + 1]);
            }
        }
        if self.constant != 0 {
            f = f.term(self.constant, &[]);
        }
        f
    }

    /// The partner function `f + (Q/2) x_pi(1) + b'`.
    pub fn partner_gbf(&self) -> Gbf {
        let mut g = self.gbf().term(self.modulus / 2, &[self.permutation[0]]);
        if self.pair_offset != 0 {
            g = g.term(self.pair_offset, &[]);
        }
        g
    }
}

/// Builds the Davis-Jedwab pair described by `spec`.
pub fn dj_pair(spec: &GbfSpec) -> Result<(PhaseSequence, PhaseSequence)> {
    spec.validate()?;
    Ok((evaluate_gbf(&spec.gbf())?, evaluate_gbf(&spec.partner_gbf())?))
}

#[derive(Deserialize)]
struct RawPhaseSequence {
    modulus: u32,
    phases: Vec<u32>,
}

/// A sequence of phases over `Z_Q`; entry `p` stands for `exp(j 2 pi p / Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPhaseSequence")]
pub struct PhaseSequence {
    modulus: u32,
    phases: Vec<u32>,
}

impl TryFrom<RawPhaseSequence> for PhaseSequence {
    type Error = Error;

    fn try_from(raw: RawPhaseSequence) -> Result<Self> {
        PhaseSequence::new(raw.modulus, raw.phases)
    }
}

impl PhaseSequence {
    pub fn new(modulus: u32, phases: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        if let Some((index, &phase)) = phases.iter().enumerate().find(|(_, &p)| p >= modulus) {
            return Err(Error::PhaseOutOfRange { index, phase, modulus });
        }
        Ok(Self { modulus, phases })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn phases(&self) -> &[u32] {
        &self.phases
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    /// Unit-magnitude amplitudes `omega^phase`, exact on the quarter-turn points.
    pub fn to_complex(&self) -> ComplexSequence {
        ComplexSequence(self.phases.iter().map(|&p| unit_root(p, self.modulus)).collect())
    }

    /// `+`/`-` rendering of a binary sequence; `None` for other moduli.
    pub fn to_signs(&self) -> Option<String> {
        (self.modulus == 2).then(|| self.phases.iter().map(|&p| if p == 0 { '+' } else { '-' }).collect())
    }
}

fn unit_root(phase: u32, modulus: u32) -> Complex64 {
    let (p, q) = (u64::from(phase % modulus), u64::from(modulus));
    if (4 * p) % q == 0 {
        j_pow((4 * p / q) as i64)
    } else {
        Complex64::from_polar(1.0, 2.0 * PI * p as f64 / q as f64)
    }
}

#[derive(Serialize, Deserialize)]
struct RawComplexSequence {
    re: Vec<f64>,
    im: Vec<f64>,
}

/// A complex sequence, serialized as `{"re": [...], "im": [...]}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawComplexSequence", into = "RawComplexSequence")]
pub struct ComplexSequence(pub Vec<Complex64>);

impl TryFrom<RawComplexSequence> for ComplexSequence {
    type Error = Error;

    fn try_from(raw: RawComplexSequence) -> Result<Self> {
        if raw.re.len() != raw.im.len() {
            return Err(Error::LengthMismatch { expected: raw.re.len(), found: raw.im.len() });
        }
        Ok(Self(raw.re.into_iter().zip(raw.im).map(|(re, im)| Complex64::new(re, im)).collect()))
    }
}

impl From<ComplexSequence> for RawComplexSequence {
    fn from(c: ComplexSequence) -> Self {
        Self { re: c.0.iter().map(|z| z.re).collect(), im: c.0.iter().map(|z| z.im).collect() }
    }
}

impl ComplexSequence {
    pub fn from_real(values: &[f64]) -> Self {
        Self(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    /// Parses a `+`/`-` string into a bipolar sequence.
    pub fn from_signs(signs: &str) -> Result<Self> {
        signs
            .chars()
            .map(|ch| match ch {
                '+' => Ok(Complex64::new(1.0, 0.0)),
                '-' => Ok(Complex64::new(-1.0, 0.0)),
                other => Err(Error::InvalidParameter(format!("unexpected sign character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn energy(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self(self.0.iter().map(|z| z * factor).collect())
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }
}

/// Aperiodic autocorrelation `sum_{m=0}^{M-1-tau} c_m conj(c_{m+tau})`.
pub fn aacf(c: &ComplexSequence, tau: usize) -> Result<Complex64> {
    let len = c.len();
    if tau >= len {
        return Err(Error::ShiftOutOfRange { tau, len });
    }
    Ok(c.0.iter().zip(&c.0[tau..]).map(|(a, b)| a * b.conj()).sum())
}

/// Largest `|rho_c(tau) + rho_d(tau)|` over the nonzero shifts.
pub fn complementarity_error(c: &ComplexSequence, d: &ComplexSequence) -> Result<f64> {
    if c.len() != d.len() {
        return Err(Error::LengthMismatch { expected: c.len(), found: d.len() });
    }
    let mut worst = 0.0f64;
    for tau in 1..c.len() {
        worst = worst.max((aacf(c, tau)? + aacf(d, tau)?).norm());
    }
    Ok(worst)
}

/// Whether `(c, d)` is a Golay complementary pair to within `tol`.
pub fn is_gcp(c: &ComplexSequence, d: &ComplexSequence, tol: f64) -> Result<bool> {
    Ok(complementarity_error(c, d)? <= tol)
}

/// `c_m * j^m`, the rotation FBMC's `j^{m+n}` factor applies to a preamble.
pub fn phase_transform(c: &ComplexSequence) -> ComplexSequence {
    ComplexSequence(c.0.iter().enumerate().map(|(m, z)| z * j_pow(m as i64)).collect())
}

/// `sqrt(M / len(c)) * (c kron [1, 0 x gap])`: equi-spaced pilots with
/// `gap` zeros after each, energy normalized to `target_len`.
pub fn sparsify(c: &ComplexSequence, gap: usize, target_len: usize) -> Result<ComplexSequence> {
    let seed_len = c.len();
    if seed_len == 0 || target_len != (gap + 1) * seed_len {
        return Err(Error::InvalidSparsity { target: target_len, gap, seed_len });
    }
    let scale = (target_len as f64 / seed_len as f64).sqrt();
    let mut out = vec![Complex64::new(0.0, 0.0); target_len];
    for (k, z) in c.0.iter().enumerate() {
        out[k * (gap + 1)] = z * scale;
    }
    Ok(ComplexSequence(out))
}

/// Spreads `seed` as equi-spaced pilots over `subcarriers`; one pilot per
/// tap of a channel whose memory equals `seed.len()`.
pub fn sparse_preamble(seed: &ComplexSequence, subcarriers: usize) -> Result<ComplexSequence> {
    let seed_len = seed.len();
    if seed_len == 0 || subcarriers % seed_len != 0 {
        return Err(Error::InvalidSparsity { target: subcarriers, gap: 0, seed_len });
    }
    sparsify(seed, subcarriers / seed_len - 1, subcarriers)
}

/// The length-31 m-sequence with a trailing `+`, sparsified to `subcarriers`.
pub fn mseq_preamble(subcarriers: usize) -> Result<ComplexSequence> {
    if subcarriers == 0 || subcarriers % 32 != 0 {
        return Err(Error::InvalidParameter(format!(
            "m-sequence preamble needs a subcarrier count divisible by 32, got {subcarriers}"
        )));
    }
    let mut seed = ComplexSequence::from_signs(M_SEQUENCE_31)?;
    seed.0.push(Complex64::new(1.0, 0.0));
    sparse_preamble(&seed, subcarriers)
}

/// IAM-C style dense preamble `c_m = j^{-m}`, whose phase transform is all ones.
pub fn iamc_preamble(subcarriers: usize) -> ComplexSequence {
    ComplexSequence((0..subcarriers).map(|m| j_pow(-(m as i64))).collect())
}

/// A binary Golay sequence of length `len` (a power of two, at least 4),
/// formed as `c | -d` from the Davis-Jedwab pair of half length. Length 32
/// uses the pair from [`GbfSpec::example_16`].
pub fn golay_seed(len: usize) -> Result<ComplexSequence> {
    let mu = power_of_two_exponent(len)
        .filter(|&mu| mu >= 2)
        .ok_or_else(|| Error::InvalidParameter(format!("Golay seed length {len} must be a power of two >= 4")))?;
    let spec = if mu - 1 == 4 { GbfSpec::example_16() } else { GbfSpec::standard(mu - 1) };
    let (c, d) = dj_pair(&spec)?;
    Ok(c.to_complex().concat(&d.to_complex().negated()))
}

/// Dense binary Golay preamble of length `len` (identity permutation, zero coefficients).
pub fn dense_golay(len: usize) -> Result<ComplexSequence> {
    let mu = power_of_two_exponent(len)
        .filter(|&mu| mu >= 1)
        .ok_or_else(|| Error::InvalidParameter(format!("Golay length {len} must be a power of two >= 2")))?;
    Ok(dj_pair(&GbfSpec::standard(mu))?.0.to_complex())
}

pub(crate) fn power_of_two_exponent(n: usize) -> Option<usize> {
    (n.is_power_of_two()).then(|| n.trailing_zeros() as usize)
}

/// Peak of `|sum_m c_m exp(j 2 pi m t)|` over `t` sampled `oversample` times
/// per subcarrier spacing, i.e. the conventional OFDM envelope maximum.
pub fn ofdm_peak_magnitude(c: &ComplexSequence, oversample: usize) -> f64 {
    let n = c.len() * oversample.max(1);
    if n == 0 {
        return 0.0;
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    buf[..c.len()].copy_from_slice(&c.0);
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phases(f: &Gbf) -> Vec<u32> {
        evaluate_gbf(f).unwrap().phases().to_vec()
    }

    #[test]
    fn gbf_examples() {
        let f = Gbf::new(4, 3).term(2, &[1, 3]).term(1, &[]);
        assert_eq!(phases(&f), [1, 1, 1, 1, 1, 3, 1, 3]);
        assert_eq!(phases(&Gbf::new(4, 3).term(1, &[3])), [0, 0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(phases(&Gbf::new(4, 3).term(1, &[1])), [0, 1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(phases(&Gbf::new(2, 2)), [0, 0, 0, 0]);
    }

    #[test]
    fn gbf_rejects_bad_variable() {
        let err = evaluate_gbf(&Gbf::new(2, 3).term(1, &[4])).unwrap_err();
        assert_eq!(err, Error::VariableIndexOutOfRange { index: 4, num_vars: 3 });
        assert!(evaluate_gbf(&Gbf::new(2, 3).term(1, &[0])).is_err());
    }

    #[test]
    fn example_16_pair() {
        let (c, d) = dj_pair(&GbfSpec::example_16()).unwrap();
        assert_eq!(c.to_signs().unwrap(), "+--+-+-+++--++++");
        assert_eq!(d.to_signs().unwrap(), "-+-++--+------++");
        assert!(is_gcp(&c.to_complex(), &d.to_complex(), 1e-12).unwrap());
        let quoted = GbfSpec { linear: vec![1, 1, 0, 1], pair_offset: 0, ..GbfSpec::example_16() };
        let (c, d) = dj_pair(&quoted).unwrap();
        assert_eq!(c.to_signs().unwrap(), "+--++-+---++++++");
        assert!(is_gcp(&c.to_complex(), &d.to_complex(), 1e-12).unwrap());
    }

    #[test]
    fn length_two_pair() {
        let spec = GbfSpec { modulus: 2, num_vars: 1, permutation: vec![1], linear: vec![0], constant: 0, pair_offset: 0 };
        let (c, d) = dj_pair(&spec).unwrap();
        assert_eq!(c.to_signs().unwrap(), "++");
        assert_eq!(d.to_signs().unwrap(), "+-");
        // rho_c(1) = 1, rho_d(1) = -1
        assert_eq!(aacf(&c.to_complex(), 1).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(aacf(&d.to_complex(), 1).unwrap(), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn spec_validation() {
        let mut s = GbfSpec::example_16();
        s.modulus = 3;
        s.linear = vec![0; 4];
        assert_eq!(dj_pair(&s).unwrap_err(), Error::OddModulus(3));
        let mut s = GbfSpec::example_16();
        s.permutation = vec![1, 1, 2, 3];
        assert!(matches!(s.validate(), Err(Error::InvalidPermutation(_))));
        let mut s = GbfSpec::example_16();
        s.linear[2] = 2;
        assert!(matches!(s.validate(), Err(Error::CoefficientOutOfRange { name: "b", .. })));
        let mut s = GbfSpec::example_16();
        s.pair_offset = 5;
        assert!(s.validate().is_err());
    }

    #[test]
    fn aacf_basics() {
        let ones = ComplexSequence::from_signs("++++").unwrap();
        assert_eq!(aacf(&ones, 0).unwrap(), Complex64::new(4.0, 0.0));
        let pm = ComplexSequence::from_signs("+-").unwrap();
        assert_eq!(aacf(&pm, 1).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(aacf(&pm, 2).unwrap_err(), Error::ShiftOutOfRange { tau: 2, len: 2 });
    }

    #[test]
    fn gcp_rejections() {
        let pp = ComplexSequence::from_signs("++").unwrap();
        assert!(!is_gcp(&pp, &pp, 1e-12).unwrap());
        let long = ComplexSequence::from_signs("+++").unwrap();
        assert!(is_gcp(&pp, &long, 1e-12).is_err());
    }

    #[test]
    fn phase_transform_rotates() {
        let c = ComplexSequence::from_signs("++++").unwrap();
        let t = phase_transform(&c);
        let expect = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (z, (re, im)) in t.0.iter().zip(expect) {
            assert_eq!(*z, Complex64::new(re, im));
        }
        let back = (0..4).fold(c.clone(), |acc, _| phase_transform(&acc));
        assert_eq!(back, c);
    }

    #[test]
    fn sparsify_layout() {
        let seed = golay_seed(32).unwrap();
        let s = sparsify(&seed, 15, 512).unwrap();
        assert_eq!(s.len(), 512);
        assert!((s.energy() - 512.0).abs() < 1e-9);
        for (m, z) in s.0.iter().enumerate() {
            if m % 16 == 0 {
                assert!((z.norm() - 4.0).abs() < 1e-12);
            } else {
                assert_eq!(z.norm(), 0.0);
            }
        }
        assert_eq!(sparsify(&seed, 0, 32).unwrap(), seed);
        assert!(matches!(sparsify(&seed, 15, 500), Err(Error::InvalidSparsity { .. })));
    }

    #[test]
    fn mseq_layout() {
        let p = mseq_preamble(512).unwrap();
        assert!((p.energy() - 512.0).abs() < 1e-9);
        assert_eq!(p.0.iter().filter(|z| z.norm() > 0.0).count(), 32);
        let dense = mseq_preamble(32).unwrap();
        let mut expect = ComplexSequence::from_signs(M_SEQUENCE_31).unwrap();
        expect.0.push(Complex64::new(1.0, 0.0));
        assert_eq!(dense, expect);
        assert!(mseq_preamble(100).is_err());
    }

    #[test]
    fn mseq_core_periodic_autocorrelation() {
        let c = ComplexSequence::from_signs(M_SEQUENCE_31).unwrap();
        let n = c.len();
        for shift in 1..n {
            let r: f64 = (0..n).map(|m| c.0[m].re * c.0[(m + shift) % n].re).sum();
            assert_eq!(r, -1.0, "shift {shift}");
        }
    }

    #[test]
    fn iamc_layout() {
        let p = iamc_preamble(4);
        let expect = [(1.0, 0.0), (0.0, -1.0), (-1.0, 0.0), (0.0, 1.0)];
        for (z, (re, im)) in p.0.iter().zip(expect) {
            assert_eq!(*z, Complex64::new(re, im));
        }
        let t = phase_transform(&iamc_preamble(64));
        assert!(t.0.iter().all(|z| *z == Complex64::new(1.0, 0.0)));
        assert_eq!(iamc_preamble(512).energy(), 512.0);
    }

    #[test]
    fn golay_seed_is_golay() {
        for len in [4, 8, 16, 32, 64, 128] {
            let s = golay_seed(len).unwrap();
            assert_eq!(s.len(), len);
            assert!(ofdm_peak_magnitude(&s, 16) <= (2.0 * len as f64).sqrt() * (1.0 + 1e-9));
        }
        assert!(golay_seed(2).is_err());
        assert!(golay_seed(48).is_err());
    }

    #[test]
    fn quaternary_roots_are_exact() {
        let s = PhaseSequence::new(4, vec![0, 1, 2, 3]).unwrap().to_complex();
        assert_eq!(s, phase_transform(&ComplexSequence::from_signs("++++").unwrap()));
        assert!(PhaseSequence::new(4, vec![4]).is_err());
    }

    #[test]
    fn json_shapes() {
        let spec = GbfSpec::example_16();
        let v = serde_json::to_value(&spec).unwrap();
        assert_eq!(v["q"], 2);
        assert_eq!(v["pi"], serde_json::json!([2, 3, 4, 1]));
        assert_eq!(v["const"], 0);
        let p: PhaseSequence = serde_json::from_str(r#"{"modulus":4,"phases":[0,3]}"#).unwrap();
        assert_eq!(p.phases(), [0, 3]);
        assert!(serde_json::from_str::<PhaseSequence>(r#"{"modulus":4,"phases":[4]}"#).is_err());
        let c: ComplexSequence = serde_json::from_str(r#"{"re":[1,0],"im":[0,-1]}"#).unwrap();
        assert_eq!(c.0[1], Complex64::new(0.0, -1.0));
        assert!(serde_json::from_str::<ComplexSequence>(r#"{"re":[1],"im":[]}"#).is_err());
        let back: ComplexSequence = serde_json::from_value(serde_json::to_value(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
