//! Subsequence-constrained digit sets B_M(I, f).
//!
//! A pattern prescribes digits d_{m_i} = f(i) on an index set I with
//! infinite complement Î and leaves the remaining "free" positions bounded
//! by M. The statistics k_n (extent of the first n free positions) and
//! μ = lim (1/n)·Σ f over covered constrained indices drive the dimension
//! d_M, the root of Σ_{i=1}^M ((α−1)/α^{i+μ})^d = 1.
//!
//! Patterns must pass the hypothesis gate (k_n/n → 1, Σf/n settling)
//! before any dimension claim; inadmissible patterns are flagged, never
//! silently evaluated.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expansion::{log_length_parts, AlphaParams, DigitPrefix};
use crate::measures::DigitLaw;
use crate::spectra::subseq_dimension_finite;

/// Default prefix depth used when validating pattern hypotheses.
pub const DEFAULT_VALIDATION_DEPTH: u64 = 10_000_000;

/// Convergence statistics of a pattern at depth n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MuEstimate {
    /// k_n / n; must tend to 1 for admissible patterns.
    pub kn_ratio: f64,
    /// (1/n)·Σ_{i=1}^{k_n−n} f(m_i); must tend to the pattern's μ.
    pub mu_n: f64,
}

#[derive(Clone, Debug)]
enum PatternKind {
    /// k_n = n + ⌈√(2μn)⌉ with f(m_i) = i. Within each block
    /// (k_{n−1}, k_n] the constrained indices come first and the free
    /// position sits at k_n, which makes k_n the smallest k carrying n
    /// free positions.
    BuiltinExample { mu: f64 },
    /// Finitely many constrained (index, digit) pairs; every other
    /// position is free, so the complement is automatically infinite.
    Explicit { pairs: Vec<(u64, u64)> },
}

/// A digit-subsequence pattern: the membership rule for I together with f.
#[derive(Clone, Debug)]
pub struct SubsequencePattern {
    kind: PatternKind,
}

impl SubsequencePattern {
    /// The worked example family: k_n = n + ⌈√(2μn)⌉, f(m_i) = i.
    pub fn builtin_example(mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(Error::Domain(format!(
                "builtin example needs mu > 0, got {mu}"
            )));
        }
        Ok(SubsequencePattern {
            kind: PatternKind::BuiltinExample { mu },
        })
    }

    /// An explicit list of constrained positions and their digits.
    ///
    /// Indices must be ≥ 1 and strictly increasing, digits ≥ 1. Hypothesis
    /// violations (a non-increasing f, k_n/n drifting away from 1) are not
    /// rejected here; they are what `check_admissible` flags.
    pub fn explicit(pairs: Vec<(u64, u64)>) -> Result<Self> {
        let mut prev = 0u64;
        for &(idx, digit) in &pairs {
            if idx == 0 || digit == 0 {
                return Err(Error::Domain(
                    "pattern indices and digits must be ≥ 1".into(),
                ));
            }
            if idx <= prev {
                return Err(Error::Domain(
                    "pattern indices must be strictly increasing".into(),
                ));
            }
            prev = idx;
        }
        Ok(SubsequencePattern {
            kind: PatternKind::Explicit { pairs },
        })
    }

    /// The unconstrained pattern I = ∅ (every position free, μ = 0).
    pub fn empty() -> Self {
        SubsequencePattern {
            kind: PatternKind::Explicit { pairs: Vec::new() },
        }
    }

    /// The μ the pattern was built for, when it carries one.
    pub fn nominal_mu(&self) -> Option<f64> {
        match &self.kind {
            PatternKind::BuiltinExample { mu } => Some(*mu),
            PatternKind::Explicit { pairs } if pairs.is_empty() => Some(0.0),
            PatternKind::Explicit { .. } => None,
        }
    }

    fn builtin_c(mu: f64, n: u64) -> u64 {
        (2.0 * mu * n as f64).sqrt().ceil() as u64
    }

    fn builtin_k(mu: f64, n: u64) -> u64 {
        if n == 0 {
            0
        } else {
            n + Self::builtin_c(mu, n)
        }
    }

    /// The forced digit at position i (1-based), or None when i is free.
    pub fn constrained_digit(&self, i: u64) -> Result<Option<u64>> {
        if i == 0 {
            return Err(Error::Domain("positions are 1-based".into()));
        }
        match &self.kind {
            PatternKind::BuiltinExample { mu } => {
                // smallest block index n with k_n ≥ i
                let (mut lo, mut hi) = (1u64, i);
                while lo < hi {
                    let mid = lo + (hi - lo) / 2;
                    if Self::builtin_k(*mu, mid) >= i {
                        hi = mid;
                    } else {
                        lo = mid + 1;
                    }
                }
                let n = lo;
                if i == Self::builtin_k(*mu, n) {
                    Ok(None)
                } else {
                    Ok(Some(i - (n - 1)))
                }
            }
            PatternKind::Explicit { pairs } => {
                match pairs.binary_search_by_key(&i, |&(idx, _)| idx) {
                    Ok(pos) => Ok(Some(pairs[pos].1)),
                    Err(_) => Ok(None),
                }
            }
        }
    }

    /// Smallest k with exactly n free positions among {1, …, k}; k_n ≥ n.
    pub fn k_of_n(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Domain("k_n is defined for n ≥ 1".into()));
        }
        match &self.kind {
            PatternKind::BuiltinExample { mu } => Ok(Self::builtin_k(*mu, n)),
            PatternKind::Explicit { pairs } => {
                // least fixed point of t ↦ #{constrained ≤ n + t}
                let mut t = 0u64;
                loop {
                    let k = n + t;
                    let count = pairs.partition_point(|&(idx, _)| idx <= k) as u64;
                    if count == t {
                        return Ok(k);
                    }
                    t = count;
                }
            }
        }
    }

    /// (k_n/n, (1/n)·Σ_{i=1}^{k_n−n} f(m_i)) at depth n.
    pub fn mu_estimate(&self, n: u64) -> Result<MuEstimate> {
        let k = self.k_of_n(n)?;
        let covered = k - n;
        let sum: u128 = match &self.kind {
            PatternKind::BuiltinExample { .. } => {
                // f(m_i) = i, so the covered digits sum to c(c+1)/2
                let c = covered as u128;
                c * (c + 1) / 2
            }
            PatternKind::Explicit { pairs } => pairs
                .iter()
                .take(covered as usize)
                .map(|&(_, digit)| digit as u128)
                .sum(),
        };
        Ok(MuEstimate {
            kn_ratio: k as f64 / n as f64,
            mu_n: sum as f64 / n as f64,
        })
    }

    /// The hypothesis gate: k_n/n must sit near 1 and keep approaching it,
    /// Σf/n must have settled, and f must be increasing on the constrained
    /// set. Violations come back as a single flagged error.
    pub fn check_admissible(&self, depth: u64) -> Result<()> {
        if depth < 4 {
            return Err(Error::Domain("validation depth must be at least 4".into()));
        }
        const RATIO_TOL: f64 = 0.02;
        const MU_TOL: f64 = 0.02;
        const TREND_SLACK: f64 = 1.05;

        let mut violations: Vec<String> = Vec::new();

        if let PatternKind::Explicit { pairs } = &self.kind {
            if pairs.windows(2).any(|w| w[1].1 <= w[0].1) {
                violations.push("f is not increasing on I".into());
            }
        }

        let depths = [depth / 4, depth / 2, depth];
        let est: Vec<MuEstimate> = depths
            .iter()
            .map(|&d| self.mu_estimate(d))
            .collect::<Result<_>>()?;
        let dev: Vec<f64> = est.iter().map(|e| (e.kn_ratio - 1.0).abs()).collect();
        if dev[2] > RATIO_TOL {
            violations.push(format!(
                "k_n/n stays away from 1 (deviation {:.4} at n = {})",
                dev[2], depth
            ));
        }
        if dev[2] > dev[1] * TREND_SLACK + 1e-9 || dev[1] > dev[0] * TREND_SLACK + 1e-9 {
            violations.push(format!(
                "k_n/n deviation not shrinking ({:.4e}, {:.4e}, {:.4e})",
                dev[0], dev[1], dev[2]
            ));
        }
        let mu_jump = (est[2].mu_n - est[1].mu_n).abs();
        if mu_jump > MU_TOL * est[2].mu_n.abs().max(1.0) {
            violations.push(format!(
                "Σf/n has not settled (jump {:.4} between n = {} and n = {})",
                mu_jump, depths[1], depths[2]
            ));
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InadmissiblePattern(violations.join("; ")))
        }
    }

    /// Per-position constraints for positions 1, 2, 3, …
    pub fn positions(&self) -> PatternCursor<'_> {
        PatternCursor {
            pattern: self,
            next_pos: 1,
            block: 1,
            block_end: match &self.kind {
                PatternKind::BuiltinExample { mu } => Self::builtin_k(*mu, 1),
                PatternKind::Explicit { .. } => 0,
            },
            pair_idx: 0,
        }
    }
}

/// Walks positions 1, 2, 3, … yielding `Some(forced digit)` on constrained
/// positions and `None` on free ones, in O(1) amortized per position.
pub struct PatternCursor<'a> {
    pattern: &'a SubsequencePattern,
    next_pos: u64,
    block: u64,
    block_end: u64,
    pair_idx: usize,
}

impl Iterator for PatternCursor<'_> {
    type Item = Option<u64>;

    fn next(&mut self) -> Option<Self::Item> {
        let i = self.next_pos;
        self.next_pos += 1;
        match &self.pattern.kind {
            PatternKind::BuiltinExample { mu } => {
                while i > self.block_end {
                    self.block += 1;
                    self.block_end = SubsequencePattern::builtin_k(*mu, self.block);
                }
                if i == self.block_end {
                    Some(None)
                } else {
                    Some(Some(i - (self.block - 1)))
                }
            }
            PatternKind::Explicit { pairs } => {
                if let Some(&(idx, digit)) = pairs.get(self.pair_idx) {
                    if idx == i {
                        self.pair_idx += 1;
                        return Some(Some(digit));
                    }
                }
                Some(None)
            }
        }
    }
}

/// The digit law of free positions in B_M: p_j = ((α−1)/α^{j+μ})^{d_M} for
/// j = 1..M, which sums to 1 by the defining equation of d_M.
pub fn bm_free_law(mu: f64, m: u64, params: &AlphaParams) -> Result<DigitLaw> {
    let d = subseq_dimension_finite(mu, m, params)?;
    let a = params.alpha();
    let log_am1 = (a - 1.0).ln();
    let log_a = a.ln();
    let weights: Vec<f64> = (1..=m)
        .map(|j| (d * (log_am1 - (j as f64 + mu) * log_a)).exp())
        .collect();
    DigitLaw::finite(weights)
}

/// A length-`n_total` digit sequence consistent with the pattern:
/// constrained positions carry their forced digits, free positions are
/// i.i.d. draws from `bm_free_law`. Deterministic per seed.
pub fn sample_bm(
    pattern: &SubsequencePattern,
    m: u64,
    params: &AlphaParams,
    n_total: usize,
    seed: u64,
) -> Result<DigitPrefix> {
    if n_total == 0 {
        return Err(Error::Domain("sample length must be at least 1".into()));
    }
    let mu = match pattern.nominal_mu() {
        Some(mu) => mu,
        None => pattern.mu_estimate(n_total as u64)?.mu_n,
    };
    let law = bm_free_law(mu, m, params)?;
    let weights = match &law {
        DigitLaw::Finite { weights } => weights.clone(),
        _ => unreachable!("bm_free_law builds a table"),
    };
    let mut cumulative = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in &weights {
        acc += w;
        cumulative.push(acc);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut digits = Vec::with_capacity(n_total);
    for constraint in pattern.positions().take(n_total) {
        match constraint {
            Some(forced) => digits.push(forced),
            None => {
                let u = loop {
                    use rand_chacha::rand_core::RngCore;
                    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                    if u > 0.0 {
                        break u;
                    }
                };
                let idx = cumulative.partition_point(|&c| c < u);
                digits.push((idx.min(weights.len() - 1) + 1) as u64);
            }
        }
    }
    DigitPrefix::new(digits)
}

/// Billingsley ratio log μ(Î_n) / log |Î_n| for a pattern-consistent prefix:
/// the measure weighs only free digits by ((α−1)/α^{d+μ})^{d_M}, while the
/// length is the full cylinder length over all positions. Converges to d_M
/// for admissible patterns.
pub fn bm_local_dimension(
    prefix: &DigitPrefix,
    pattern: &SubsequencePattern,
    mu: f64,
    m: u64,
    params: &AlphaParams,
) -> Result<f64> {
    if prefix.is_empty() {
        return Err(Error::Domain("local dimension of an empty prefix".into()));
    }
    let d_m = subseq_dimension_finite(mu, m, params)?;
    let mut free_count = 0u64;
    let mut free_sum = 0u128;
    for (pos, (&digit, constraint)) in prefix
        .digits()
        .iter()
        .zip(pattern.positions())
        .enumerate()
    {
        match constraint {
            Some(forced) => {
                if digit != forced {
                    return Err(Error::PatternMismatch {
                        position: pos as u64 + 1,
                        expected: forced,
                        found: digit,
                    });
                }
            }
            None => {
                if digit > m {
                    return Err(Error::ZeroMass(digit));
                }
                free_count += 1;
                free_sum += digit as u128;
            }
        }
    }
    let alpha = params.alpha();
    // log μ = d_M · (F·ln(α−1) − (Σ_free d + F·μ)·ln α); the denominator is
    // the full-prefix cylinder log-length. The core factor is divided first
    // so the μ = 0, all-free case returns d_M exactly.
    let num_core = free_count as f64 * (alpha - 1.0).ln()
        - (free_sum as f64 + free_count as f64 * mu) * alpha.ln();
    let den = log_length_parts(prefix.len(), prefix.digit_sum(), alpha);
    Ok(d_m * (num_core / den))
}
