//! Digit-law realizations of the Lebesgue and Gibbs measures.
//!
//! Both measures are i.i.d. product laws on the digit sequence. The
//! Lebesgue realization weights digit j by the first-level cylinder length
//! (α−1)/α^j; the Gibbs realization for admissible (t,q) weights it by
//! (α−1)^t α^{−tj} e^{qj − P(t,q)}, which is a geometric law with ratio
//! r = e^{q − t·ln α}. Because the pressure sum factorizes exactly over
//! digits, the product law satisfies the Gibbs property with constant 1.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expansion::{log_length_parts, AlphaParams, DigitPrefix};
use crate::spectra::{ensure_admissible, GibbsParams};

/// A probability mass function j ↦ p_j on the positive integers.
#[derive(Clone, Debug)]
pub enum DigitLaw {
    /// p_j = (α−1)/α^j: the first-digit law of Lebesgue measure.
    Lebesgue { alpha: f64 },
    /// p_j = (1−r)·r^{j−1} with r = e^{q − t·ln α}: the Gibbs digit law.
    Gibbs { t: f64, q: f64, ratio: f64, alpha: f64 },
    /// A finite table on {1, …, M}; weights sum to 1 within 1e−12.
    Finite { weights: Vec<f64> },
}

/// The Lebesgue digit law for base α.
pub fn lebesgue_law(params: &AlphaParams) -> DigitLaw {
    DigitLaw::Lebesgue {
        alpha: params.alpha(),
    }
}

/// The Gibbs digit law for admissible (t, q).
///
/// When (t,q) = solve_tq(β) the ratio is (β−1)/β and the mean is β; the
/// Lebesgue law is recovered at (t,q) = (1,0).
pub fn gibbs_law(gp: &GibbsParams, params: &AlphaParams) -> Result<DigitLaw> {
    ensure_admissible(gp, params)?;
    Ok(DigitLaw::Gibbs {
        t: gp.t,
        q: gp.q,
        ratio: gp.ratio(params),
        alpha: params.alpha(),
    })
}

impl DigitLaw {
    /// A finite table law; digit j carries `weights[j−1]`.
    pub fn finite(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("table law needs at least one digit".into()));
        }
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::Domain("table weights must be finite and ≥ 0".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "table weights must sum to 1 within 1e-12, got {total}"
            )));
        }
        Ok(DigitLaw::Finite { weights })
    }

    /// Mass of digit j ≥ 1.
    pub fn mass(&self, j: u64) -> f64 {
        if j == 0 {
            return 0.0;
        }
        match self {
            DigitLaw::Lebesgue { alpha } => (alpha - 1.0) * alpha.powi(-(j as i32)),
            DigitLaw::Gibbs { ratio, .. } => (1.0 - ratio) * ratio.powi(j as i32 - 1),
            DigitLaw::Finite { weights } => {
                weights.get(j as usize - 1).copied().unwrap_or(0.0)
            }
        }
    }

    /// ln p_j; errors on zero-mass digits.
    pub fn log_mass(&self, j: u64) -> Result<f64> {
        let p = self.mass(j);
        if p > 0.0 {
            Ok(p.ln())
        } else {
            Err(Error::ZeroMass(j))
        }
    }

    /// Analytic mean Σ j·p_j.
    pub fn mean(&self) -> f64 {
        match self {
            DigitLaw::Lebesgue { alpha } => alpha / (alpha - 1.0),
            DigitLaw::Gibbs { ratio, .. } => 1.0 / (1.0 - ratio),
            DigitLaw::Finite { weights } => weights
                .iter()
                .enumerate()
                .map(|(i, w)| (i as f64 + 1.0) * w)
                .sum(),
        }
    }

    /// ln μ(I(d_1,…,d_n)) of the product measure.
    ///
    /// For the Lebesgue kind this is the cylinder log-length itself,
    /// computed through the same shared fold so the identity μ(I) = |I|
    /// holds bit-for-bit.
    pub fn log_mass_of_prefix(&self, prefix: &DigitPrefix) -> Result<f64> {
        let n = prefix.len();
        let sum = prefix.digit_sum();
        match self {
            DigitLaw::Lebesgue { alpha } => Ok(log_length_parts(n, sum, *alpha)),
            DigitLaw::Gibbs { ratio, .. } => {
                Ok(n as f64 * (1.0 - ratio).ln() + (sum - n as u128) as f64 * ratio.ln())
            }
            DigitLaw::Finite { .. } => {
                let mut acc = 0.0;
                for &d in prefix.digits() {
                    acc += self.log_mass(d)?;
                }
                Ok(acc)
            }
        }
    }

    /// Number of digits in the support, if finite.
    pub fn support_bound(&self) -> Option<u64> {
        match self {
            DigitLaw::Finite { weights } => Some(weights.len() as u64),
            _ => None,
        }
    }
}

/// Uniform draw from the open interval (0, 1).
fn unit_open01(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        if u > 0.0 {
            return u;
        }
    }
}

fn draw(law: &DigitLaw, cumulative: Option<&[f64]>, rng: &mut ChaCha8Rng) -> u64 {
    match law {
        DigitLaw::Lebesgue { alpha } => geometric_inverse(1.0 / alpha, rng),
        DigitLaw::Gibbs { ratio, .. } => geometric_inverse(*ratio, rng),
        DigitLaw::Finite { weights } => {
            let cum = cumulative.expect("table laws sample through their cumulative");
            let u = unit_open01(rng);
            let idx = cum.partition_point(|&c| c < u);
            (idx.min(weights.len() - 1) + 1) as u64
        }
    }
}

/// Quantile inversion for the geometric law p_j = (1−r)·r^{j−1} on {1, 2, …}.
fn geometric_inverse(ratio: f64, rng: &mut ChaCha8Rng) -> u64 {
    let u = unit_open01(rng);
    let j = (u.ln() / ratio.ln()).floor();
    1 + j as u64
}

/// n i.i.d. digits from `law`, deterministic in `seed` (stream 0).
pub fn sample_digits(law: &DigitLaw, n: usize, seed: u64) -> Result<DigitPrefix> {
    sample_digits_stream(law, n, seed, 0)
}

/// n i.i.d. digits on an explicit RNG stream.
///
/// (seed, stream) pairs index statistically independent deterministic
/// streams, so chunked parallel evaluation with exact re-merge just
/// assigns one stream per chunk.
pub fn sample_digits_stream(law: &DigitLaw, n: usize, seed: u64, stream: u64) -> Result<DigitPrefix> {
    if n < 1 {
        return Err(Error::Domain("sample size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let cumulative = match law {
        DigitLaw::Finite { weights } => {
            let mut acc = 0.0;
            Some(
                weights
                    .iter()
                    .map(|w| {
                        acc += w;
                        acc
                    })
                    .collect::<Vec<f64>>(),
            )
        }
        _ => None,
    };
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        digits.push(draw(law, cumulative.as_deref(), &mut rng));
    }
    DigitPrefix::new(digits)
}

/// The Birkhoff average (1/n)·Σ d_i of the digit prefix.
pub fn birkhoff_mean(prefix: &DigitPrefix) -> Result<f64> {
    if prefix.is_empty() {
        return Err(Error::Domain("Birkhoff mean of an empty prefix".into()));
    }
    Ok(prefix.digit_sum() as f64 / prefix.len() as f64)
}

/// The local dimension log μ(I_n) / log |I_n| along the prefix.
///
/// For Gibbs(solve_tq(β)) samples this converges to κ(β); for the
/// Lebesgue law it equals 1 exactly, since numerator and denominator are
/// the same computation.
pub fn local_dimension(
    prefix: &DigitPrefix,
    law: &DigitLaw,
    params: &AlphaParams,
) -> Result<f64> {
    if prefix.is_empty() {
        return Err(Error::Domain("local dimension of an empty prefix".into()));
    }
    let numer = law.log_mass_of_prefix(prefix)?;
    let denom = log_length_parts(prefix.len(), prefix.digit_sum(), params.alpha());
    Ok(numer / denom)
}
