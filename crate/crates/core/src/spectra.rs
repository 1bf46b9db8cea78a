//! Closed-form dimension spectra and the bracketed root solvers behind them.
//!
//! Three families of values live here: the Khintchine spectrum κ(β) of the
//! digit-average level sets, the topological pressure P(t,q) for the
//! potential φ = d_1 with its derivatives and the (t(β), q(β)) system, and
//! the Moran-type dimensions of the digit-constrained sets (large-digit
//! sets A_M and the subsequence sets B_M with their M → ∞ limit).

use crate::error::{Error, Result};
use crate::expansion::AlphaParams;

/// Parameters (t, q) of the pressure/Gibbs machinery.
///
/// Admissible iff q < t·ln α, which makes the underlying geometric series
/// converge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GibbsParams {
    pub t: f64,
    pub q: f64,
}

impl GibbsParams {
    pub fn new(t: f64, q: f64) -> Self {
        GibbsParams { t, q }
    }

    pub fn is_admissible(&self, params: &AlphaParams) -> bool {
        self.q < self.t * params.alpha().ln()
    }

    /// r = e^{q − t·ln α}, the ratio of the single-digit geometric weights;
    /// in (0,1) exactly when the parameters are admissible.
    pub fn ratio(&self, params: &AlphaParams) -> f64 {
        (self.q - self.t * params.alpha().ln()).exp()
    }
}

pub(crate) fn ensure_admissible(gp: &GibbsParams, params: &AlphaParams) -> Result<()> {
    if gp.is_admissible(params) {
        Ok(())
    } else {
        Err(Error::InadmissibleGibbs {
            q: gp.q,
            bound: gp.t * params.alpha().ln(),
        })
    }
}

/// One point of a dimension spectrum; the dimension always lies in [0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumPoint {
    pub parameter: f64,
    pub dimension: f64,
}

impl SpectrumPoint {
    pub fn new(parameter: f64, dimension: f64) -> Result<Self> {
        // Tolerate solver-scale excursions, then pin to the invariant range.
        if !(-1e-9..=1.0 + 1e-9).contains(&dimension) {
            return Err(Error::Domain(format!(
                "dimension must lie in [0, 1], got {dimension}"
            )));
        }
        Ok(SpectrumPoint {
            parameter,
            dimension: dimension.clamp(0.0, 1.0),
        })
    }
}

/// The Khintchine spectrum κ(β) = dim_H {x : (1/k)Σd_i(x) → β} for β > 1:
///
///   κ(β) = ((1−β)·ln(β−1) + β·ln β) / (−ln(α−1) + β·ln α).
///
/// β = 1 is only reached as a limit (κ → 0) and is rejected rather than
/// silently evaluated.
pub fn kappa(beta: f64, params: &AlphaParams) -> Result<f64> {
    if !(beta > 1.0) {
        return Err(Error::Domain(format!(
            "kappa is defined on (1, ∞); got beta = {beta} (the limit at 1+ is 0)"
        )));
    }
    let a = params.alpha();
    let numer = (1.0 - beta) * (beta - 1.0).ln() + beta * beta.ln();
    let denom = -(a - 1.0).ln() + beta * a.ln();
    Ok(numer / denom)
}

/// The peak of the Khintchine spectrum: (α/(α−1), 1).
///
/// α/(α−1) is the Lebesgue-a.e. digit average (the mean of the geometric
/// digit law with ratio 1/α), and κ equals 1 there.
pub fn kappa_max(params: &AlphaParams) -> (f64, f64) {
    let a = params.alpha();
    (a / (a - 1.0), 1.0)
}

/// Topological pressure for the potential φ = d_1:
///
///   P(t,q) = log( e^{−t·ln(α/(α−1)) + q} / (1 − e^{−t·ln α + q}) ).
pub fn pressure(gp: &GibbsParams, params: &AlphaParams) -> Result<f64> {
    ensure_admissible(gp, params)?;
    let a = params.alpha();
    let x = gp.q - gp.t * a.ln();
    // 1 − e^x via exp_m1 keeps precision when x is close to 0.
    let one_minus_r = -x.exp_m1();
    Ok(-gp.t * (a / (a - 1.0)).ln() + gp.q - one_minus_r.ln())
}

/// ∂P/∂q = 1/(1 − e^{q − t·ln α}); equals ∫ d_1 dμ_{t,q} and exceeds 1 for
/// every admissible (t, q).
pub fn pressure_dq(gp: &GibbsParams, params: &AlphaParams) -> Result<f64> {
    ensure_admissible(gp, params)?;
    let x = gp.q - gp.t * params.alpha().ln();
    Ok((-x.exp_m1()).recip())
}

/// ∂P/∂t = −ln(α/(α−1)) − ln α · r/(1−r); equals −∫ ln|T′| dμ_{t,q}.
pub fn pressure_dt(gp: &GibbsParams, params: &AlphaParams) -> Result<f64> {
    ensure_admissible(gp, params)?;
    let a = params.alpha();
    let x = gp.q - gp.t * a.ln();
    let r = x.exp();
    Ok(-(a / (a - 1.0)).ln() - a.ln() * r / (-x.exp_m1()))
}

/// The solution of P(t,q) = qβ, ∂P/∂q = β:
///
///   t(β) = κ(β),   q(β) = t(β)·ln α + ln((β−1)/β).
pub fn solve_tq(beta: f64, params: &AlphaParams) -> Result<GibbsParams> {
    let t = kappa(beta, params)?;
    let q = t * params.alpha().ln() + ((beta - 1.0) / beta).ln();
    Ok(GibbsParams { t, q })
}

/// Bisection on [lo, hi] for a monotone increasing f with f(lo) < 0 < f(hi).
/// The bracket shrinks to ~1e−15, far inside every residual target here.
fn bisect_increasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= 1e-15 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// dim_H A_M for A_M = {x : d_i(x) ≥ M ∀i}: the unique D ∈ (0,1] with
///
///   Σ_{i=M}^∞ ((α−1)/α^i)^D = (α−1)^D α^{−MD} / (1 − α^{−D}) = 1.
///
/// D(1) = 1 exactly, D is strictly decreasing in M and tends to 0.
pub fn moran_dimension(m: u64, params: &AlphaParams) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain("M must be at least 1".into()));
    }
    let a = params.alpha();
    // ln of the geometric sum; strictly decreasing in D.
    let g = |d: f64| {
        d * (a - 1.0).ln() - (m as f64) * d * a.ln() - (-(-d * a.ln()).exp_m1()).ln()
    };
    if g(1.0) >= 0.0 {
        // The sum at D = 1 is α^{1−M} ≤ 1 with equality iff M = 1.
        return Ok(1.0);
    }
    Ok(bisect_increasing(|d| -g(d), 1e-12, 1.0))
}

/// dim_H of the subsequence set in the M → ∞ limit: the unique d ∈ (0,1)
/// with α^d − c^d = 1 where c = (α−1)/α^μ.
///
/// For μ > 0 we have c < α−1, so the left side is strictly increasing in d,
/// vanishes at d = 0 and exceeds 1 at d = 1.
pub fn subseq_dimension_limit(mu: f64, params: &AlphaParams) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("mu must be positive, got {mu}")));
    }
    let a = params.alpha();
    let c = (a - 1.0) / a.powf(mu);
    let h = |d: f64| a.powf(d) - c.powf(d) - 1.0;
    Ok(bisect_increasing(h, 0.0, 1.0))
}

/// dim_H B_M for finite M: the root d_M ∈ (0, 1] of
///
///   Σ_{i=1}^M ((α−1)/α^{i+μ})^d = 1.
///
/// Strictly increasing in M with limit `subseq_dimension_limit(mu)`.
/// μ = 0 is accepted (every base (α−1)/α^i is below 1), which covers the
/// plain bounded-digit Moran case; for M = 1 the sum stays below 1 on all
/// of (0, 1] and the root is reported as out of range.
pub fn subseq_dimension_finite(mu: f64, m: u64, params: &AlphaParams) -> Result<f64> {
    if m < 1 {
        return Err(Error::Domain("M must be at least 1".into()));
    }
    if !(mu >= 0.0) {
        return Err(Error::Domain(format!("mu must be nonnegative, got {mu}")));
    }
    let a = params.alpha();
    let log_am1 = (a - 1.0).ln();
    let log_a = a.ln();
    let s = |d: f64| -> f64 {
        (1..=m)
            .map(|i| (d * (log_am1 - (i as f64 + mu) * log_a)).exp())
            .sum()
    };
    let d_max = 1.0;
    let lo = 1e-12;
    if s(lo) <= 1.0 {
        return Err(Error::RootOutOfRange {
            d_max,
            reason: format!("Σ_i ((α−1)/α^(i+μ))^d stays below 1 on (0, {d_max}] for M = {m}"),
        });
    }
    // S is strictly decreasing with S(1) = α^{−μ}(1 − α^{−M}) < 1.
    Ok(bisect_increasing(|d| 1.0 - s(d), lo, d_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    fn params(alpha: f64) -> AlphaParams {
        AlphaParams::new(alpha).unwrap()
    }

    fn golden_dimension() -> f64 {
        ((1.0 + 5f64.sqrt()) / 2.0).log2()
    }

    #[test]
    fn kappa_is_one_at_the_lebesgue_mean() {
        for &alpha in &[1.5, 2.0, 3.0] {
            let p = params(alpha);
            let beta = alpha / (alpha - 1.0);
            assert!((kappa(beta, &p).unwrap() - 1.0).abs() < 1e-14, "alpha={alpha}");
        }
        // α = 2 makes the mean exactly 2.
        assert!((kappa(2.0, &params(2.0)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kappa_at_ten_matches_a_high_precision_evaluation() {
        // Independent 256-bit evaluation of (10·ln10 − 9·ln9)/(10·ln2).
        let ten = Float::with_val(256, 10);
        let nine = Float::with_val(256, 9);
        let two = Float::with_val(256, 2);
        let numer = Float::with_val(256, &ten * &ten.clone().ln())
            - Float::with_val(256, &nine * &nine.clone().ln());
        let denom = Float::with_val(256, &ten * &two.clone().ln());
        let oracle = (numer / denom).to_f64();
        let got = kappa(10.0, &params(2.0)).unwrap();
        assert!((got - oracle).abs() < 1e-14);
        assert!((got - 0.4690).abs() < 1e-4);
    }

    #[test]
    fn kappa_rejects_the_boundary() {
        assert!(kappa(1.0, &params(2.0)).is_err());
        assert!(kappa(0.5, &params(2.0)).is_err());
    }

    #[test]
    fn kappa_is_positive_unimodal_and_vanishes_at_the_ends() {
        for &alpha in &[1.5, 2.0, 3.0] {
            let p = params(alpha);
            let peak = alpha / (alpha - 1.0);
            // log-spaced grid on (1, 1e6]
            let grid: Vec<f64> = (0..200)
                .map(|i| 1.0 + 1e-6 * (1e12f64).powf(i as f64 / 199.0))
                .collect();
            let mut prev = 0.0;
            let mut rising = true;
            for &b in &grid {
                let k = kappa(b, &p).unwrap();
                assert!(k > 0.0, "kappa({b}) = {k} not positive for alpha={alpha}");
                assert!(k <= 1.0 + 1e-12);
                if rising && k < prev {
                    rising = false;
                    assert!(prev <= 1.0 + 1e-12);
                } else if !rising {
                    assert!(k <= prev + 1e-12, "second rise at beta={b}, alpha={alpha}");
                }
                prev = k;
            }
            assert!(kappa(1.0 + 1e-9, &p).unwrap() < 1e-6);
            assert!(kappa(1e9, &p).unwrap() < 1e-6);
            assert!((kappa(peak, &p).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn pressure_closed_form_special_cases() {
        // Lebesgue case: P(1, 0) = 0 for every α.
        for &alpha in &[1.5, 2.0, 3.0] {
            let p = params(alpha);
            assert!(pressure(&GibbsParams::new(1.0, 0.0), &p).unwrap().abs() < 1e-14);
        }
        // t = 0 collapses the t-dependence.
        let p = params(2.0);
        let q0 = -0.7f64;
        let expected = (q0.exp() / (1.0 - q0.exp())).ln();
        assert!((pressure(&GibbsParams::new(0.0, q0), &p).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn pressure_matches_the_truncated_sum_oracle() {
        // Brute-force single-letter sum Σ_d (α−1)^t α^{−td} e^{qd}; the
        // n-tuple sum factorizes so P = ln of this sum.
        for &alpha in &[1.5, 2.0, 3.0] {
            let p = params(alpha);
            for it in 0..10 {
                let t = 0.1 + 0.2 * it as f64;
                for iq in 0..10 {
                    let q = t * alpha.ln() - 0.3 - 0.3 * iq as f64;
                    let gp = GibbsParams::new(t, q);
                    assert!(gp.is_admissible(&p));
                    let mut sum = 0.0f64;
                    let mut d = 1u32;
                    loop {
                        let term = (alpha - 1.0).powf(t) * alpha.powf(-t * d as f64)
                            * (q * d as f64).exp();
                        sum += term;
                        let ratio = (q - t * alpha.ln()).exp();
                        if term * ratio / (1.0 - ratio) < 1e-13 {
                            break;
                        }
                        d += 1;
                        assert!(d < 100_000);
                    }
                    let oracle = sum.ln();
                    let got = pressure(&gp, &p).unwrap();
                    assert!(
                        (got - oracle).abs() < 1e-9,
                        "alpha={alpha} t={t} q={q}: {got} vs {oracle}"
                    );
                }
            }
        }
    }

    #[test]
    fn pressure_derivatives_match_finite_differences() {
        let h = 1e-5;
        for &alpha in &[1.5, 2.0, 3.0] {
            let p = params(alpha);
            for &(t, q) in &[(1.0, 0.0), (0.7, -0.5), (1.4, 0.3), (0.3, -2.0)] {
                let gp = GibbsParams::new(t, q);
                if !gp.is_admissible(&p) {
                    continue;
                }
                let dq_fd = (pressure(&GibbsParams::new(t, q + h), &p).unwrap()
                    - pressure(&GibbsParams::new(t, q - h), &p).unwrap())
                    / (2.0 * h);
                assert!((pressure_dq(&gp, &p).unwrap() - dq_fd).abs() < 1e-6);
                let dt_fd = (pressure(&GibbsParams::new(t + h, q), &p).unwrap()
                    - pressure(&GibbsParams::new(t - h, q), &p).unwrap())
                    / (2.0 * h);
                assert!((pressure_dt(&gp, &p).unwrap() - dt_fd).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn pressure_dq_exceeds_one_and_hits_beta_on_the_solved_system() {
        let p = params(2.0);
        for &beta in &[1.5, 2.0, 5.0] {
            let gp = solve_tq(beta, &p).unwrap();
            assert!((pressure_dq(&gp, &p).unwrap() - beta).abs() < 1e-10);
        }
        for &(t, q) in &[(1.0, 0.0), (0.5, -1.0), (2.0, 1.0)] {
            let gp = GibbsParams::new(t, q);
            if gp.is_admissible(&p) {
                assert!(pressure_dq(&gp, &p).unwrap() > 1.0);
            }
        }
        // Lebesgue case: mean digit α/(α−1) = 2 at α = 2.
        assert!((pressure_dq(&GibbsParams::new(1.0, 0.0), &p).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn pressure_rejects_inadmissible_parameters() {
        let p = params(2.0);
        let gp = GibbsParams::new(1.0, 2.0); // q = 2 > ln 2
        assert!(matches!(
            pressure(&gp, &p),
            Err(Error::InadmissibleGibbs { .. })
        ));
    }

    #[test]
    fn pressure_is_convex_in_q() {
        let p = params(2.0);
        let t = 0.9;
        let h = 1e-4;
        for i in 0..40 {
            let q = t * 2f64.ln() - 3.0 + i as f64 * 0.07;
            let gp = GibbsParams::new(t, q + h);
            if !GibbsParams::new(t, q + 2.0 * h).is_admissible(&p) {
                break;
            }
            let second = (pressure(&GibbsParams::new(t, q + 2.0 * h), &p).unwrap()
                - 2.0 * pressure(&gp, &p).unwrap()
                + pressure(&GibbsParams::new(t, q), &p).unwrap())
                / (h * h);
            assert!(second >= -1e-6, "non-convex at q={q}: {second}");
        }
    }

    #[test]
    fn solve_tq_satisfies_both_equations() {
        for &alpha in &[1.5, 2.0, 3.0] {
            let p = params(alpha);
            // β = α/(α−1) gives the Lebesgue parameters (1, 0).
            let beta_star = alpha / (alpha - 1.0);
            let gp = solve_tq(beta_star, &p).unwrap();
            assert!((gp.t - 1.0).abs() < 1e-13);
            assert!(gp.q.abs() < 1e-13);
            for &beta in &[1.2, 1.5, 2.0, 3.0, 5.0, 10.0] {
                let gp = solve_tq(beta, &p).unwrap();
                assert!(gp.is_admissible(&p));
                assert!((pressure(&gp, &p).unwrap() - gp.q * beta).abs() < 1e-10);
                assert!((pressure_dq(&gp, &p).unwrap() - beta).abs() < 1e-10);
                // shared closed form with κ
                assert!((gp.t - kappa(beta, &p).unwrap()).abs() < 1e-14);
            }
        }
        // q(β) → −∞ as β → 1+.
        let p = params(2.0);
        assert!(solve_tq(1.0 + 1e-12, &p).unwrap().q < -20.0);
    }

    #[test]
    fn moran_dimension_known_values() {
        // M = 1 covers all of (0,1]: dimension exactly 1.
        for &alpha in &[1.5, 2.0, 3.0] {
            assert_eq!(moran_dimension(1, &params(alpha)).unwrap(), 1.0);
        }
        // M = 2, α = 2: substitution y = 2^{−D} gives y² = 1 − y, the
        // golden-ratio root, so D = log₂((1+√5)/2).
        let d = moran_dimension(2, &params(2.0)).unwrap();
        assert!((d - golden_dimension()).abs() < 1e-10);
    }

    #[test]
    fn moran_dimension_decreases_to_zero() {
        let p = params(2.0);
        let mut prev = f64::INFINITY;
        for m in 1..=100 {
            let d = moran_dimension(m, &p).unwrap();
            assert!(d < prev, "not strictly decreasing at M={m}");
            assert!(d > 0.0);
            // residual of the defining equation
            let a = 2.0f64;
            let lhs = (a - 1.0).powf(d) * a.powf(-(m as f64) * d) / (1.0 - a.powf(-d));
            assert!((lhs - 1.0).abs() < 1e-12, "residual at M={m}: {lhs}");
            prev = d;
        }
        assert!(prev < 0.05);
    }

    #[test]
    fn moran_bracket_endpoints_have_opposite_signs() {
        let a = 2.0f64;
        for m in 2..=50u64 {
            let g = |d: f64| {
                (a - 1.0).powf(d) * a.powf(-(m as f64) * d) / (1.0 - a.powf(-d)) - 1.0
            };
            assert!(g(1e-12) > 0.0);
            assert!(g(1.0) < 0.0, "M={m}");
        }
    }

    #[test]
    fn subseq_limit_known_values() {
        // μ = 1, α = 2: y = 2^d solves y² − y − 1 = 0.
        let d = subseq_dimension_limit(1.0, &params(2.0)).unwrap();
        assert!((d - golden_dimension()).abs() < 1e-10);
        // μ → ∞ forces d → 0; μ → 0+ forces d → 1.
        assert!(subseq_dimension_limit(40.0, &params(2.0)).unwrap() < 0.02);
        assert!(subseq_dimension_limit(1e-9, &params(2.0)).unwrap() > 1.0 - 1e-6);
        assert!(subseq_dimension_limit(0.0, &params(2.0)).is_err());
    }

    #[test]
    fn subseq_limit_residuals_on_the_figure_grid() {
        for &alpha in &[1.5, 2.0, 3.0] {
            let p = params(alpha);
            for i in 0..100 {
                let mu = 0.1 + 9.9 * i as f64 / 99.0;
                let d = subseq_dimension_limit(mu, &p).unwrap();
                let c = (alpha - 1.0) / alpha.powf(mu);
                let residual = (c.powf(d) - alpha.powf(d) + 1.0).abs();
                assert!(residual < 1e-12, "alpha={alpha} mu={mu}: {residual}");
                assert!(d > 0.0 && d < 1.0);
            }
        }
    }

    #[test]
    fn subseq_finite_is_monotone_and_converges() {
        let p = params(2.0);
        // single term below 1 for all d > 0: no root
        assert!(matches!(
            subseq_dimension_finite(1.0, 1, &p),
            Err(Error::RootOutOfRange { .. })
        ));
        let d10 = subseq_dimension_finite(2.0, 10, &p).unwrap();
        let d20 = subseq_dimension_finite(2.0, 20, &p).unwrap();
        let d40 = subseq_dimension_finite(2.0, 40, &p).unwrap();
        assert!(d10 < d20 && d20 < d40);
        let d50 = subseq_dimension_finite(1.0, 50, &p).unwrap();
        let d = subseq_dimension_limit(1.0, &p).unwrap();
        assert!((d50 - d).abs() < 1e-6);
        // geometric convergence in M: gaps shrink by a stable factor
        let gaps: Vec<f64> = [10u64, 20, 30, 40]
            .iter()
            .map(|&m| d - subseq_dimension_finite(1.0, m, &p).unwrap())
            .collect();
        for w in gaps.windows(2) {
            assert!(w[1] < w[0] * 0.2, "gaps {gaps:?} not geometric");
        }
    }

    #[test]
    fn subseq_finite_accepts_mu_zero() {
        // μ = 0 degenerates to the bounded-digit Moran equation.
        let p = params(2.0);
        let d = subseq_dimension_finite(0.0, 30, &p).unwrap();
        assert!(d > 0.9 && d <= 1.0);
        assert!(subseq_dimension_finite(-0.5, 30, &p).is_err());
    }

    #[test]
    fn spectrum_point_enforces_the_unit_interval() {
        assert!(SpectrumPoint::new(2.0, 0.5).is_ok());
        assert!(SpectrumPoint::new(2.0, 1.0 + 1e-12).is_ok());
        assert!(SpectrumPoint::new(2.0, 1.5).is_err());
        assert!(SpectrumPoint::new(2.0, -0.5).is_err());
    }
}
