//! The α-expansion codec.
//!
//! Every x ∈ (0,1] has a unique expansion x = Σ_{i≥1} (α−1)^{i−1} α^{−(d_1+…+d_i)}
//! with digits d_i ≥ 1. Digits are produced by iterating the expanding map
//! T(x) = (α^i x − 1)/(α − 1) on the branch x ∈ (α^{−i}, α^{−i+1}], and the
//! inverse branches T_i(x) = ((α−1)x + 1)/α^i carve (0,1] into cylinder
//! intervals of length (α−1)^n α^{−(d_1+…+d_n)}.
//!
//! All interval-valued operations round outward, so a returned [`Enclosure`]
//! always contains the exact set it describes.

use std::fmt;
use std::str::FromStr;

use rug::{float::Round, ops::Pow, Float, Rational};

use crate::arith::{self, ArithmeticMode, Ctx, Dir, Real, Scalar};
use crate::error::{Error, Result};

/// Positions searched for a digit before giving up; a point below
/// α^{-CAP} is far outside desk scale.
const DIGIT_SEARCH_CAP: u64 = 1_000_000;

/// The expansion base α > 1 together with the arithmetic policy.
///
/// α is stored exactly: a base given as `f64` is a dyadic rational and is
/// treated as that exact number in every backend.
#[derive(Clone, Debug)]
pub struct AlphaParams {
    alpha_f64: f64,
    alpha_rat: Rational,
    precision_bits: u32,
    mode: ArithmeticMode,
}

impl AlphaParams {
    pub const DEFAULT_PRECISION_BITS: u32 = 256;
    const MAX_PRECISION_BITS: u32 = 1 << 24;

    /// Extended-precision params with the default 256 bits.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 1.0 {
            return Err(Error::Domain(format!(
                "alpha must be a finite real > 1, got {alpha}"
            )));
        }
        let alpha_rat = Rational::from_f64(alpha)
            .ok_or_else(|| Error::Domain(format!("alpha {alpha} is not finite")))?;
        Ok(AlphaParams {
            alpha_f64: alpha,
            alpha_rat,
            precision_bits: Self::DEFAULT_PRECISION_BITS,
            mode: ArithmeticMode::Extended,
        })
    }

    /// Exact rational base num/den > 1 in rational (oracle) mode.
    pub fn from_rational(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("denominator must be positive".into()));
        }
        if num <= den {
            return Err(Error::Domain(format!(
                "alpha must exceed 1, got {num}/{den}"
            )));
        }
        let alpha_rat = Rational::from((num, den));
        Ok(AlphaParams {
            alpha_f64: alpha_rat.to_f64(),
            alpha_rat,
            precision_bits: Self::DEFAULT_PRECISION_BITS,
            mode: ArithmeticMode::Rational,
        })
    }

    pub fn with_mode(mut self, mode: ArithmeticMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_precision_bits(mut self, bits: u32) -> Result<Self> {
        if !(2..=Self::MAX_PRECISION_BITS).contains(&bits) {
            return Err(Error::Domain(format!(
                "precision_bits must lie in [2, {}], got {bits}",
                Self::MAX_PRECISION_BITS
            )));
        }
        self.precision_bits = bits;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_f64
    }

    pub fn alpha_rational(&self) -> &Rational {
        &self.alpha_rat
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }

    /// Length (α−1)/α^i of the i-th first-level cylinder; in (0,1) for i ≥ 1.
    pub fn contraction_ratio(&self, i: u64) -> f64 {
        (self.alpha_f64 - 1.0) * self.alpha_f64.powi(-(i as i32))
    }

    /// Inject a point into this params' backend. Exact for the rational and
    /// (at ≥ 53 bits) extended backends.
    pub fn real_from_f64(&self, x: f64) -> Result<Real> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("expected a finite real, got {x}")));
        }
        Ok(match self.mode {
            ArithmeticMode::Float => Real::Float(x),
            ArithmeticMode::Extended => {
                Real::Extended(Float::with_val(self.precision_bits, x))
            }
            ArithmeticMode::Rational => Real::Rational(
                Rational::from_f64(x).expect("finite f64 is rational"),
            ),
        })
    }
}

/// A finite digit prefix (d_1, …, d_n), all digits ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DigitPrefix {
    digits: Vec<u64>,
}

impl DigitPrefix {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d == 0) {
            return Err(Error::Domain(format!("digits must be ≥ 1, found {bad}")));
        }
        Ok(DigitPrefix { digits })
    }

    pub fn empty() -> Self {
        DigitPrefix::default()
    }

    pub fn push(&mut self, digit: u64) -> Result<()> {
        if digit == 0 {
            return Err(Error::Domain("digits must be ≥ 1".into()));
        }
        self.digits.push(digit);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Exact digit sum; wide so that 10^7 digits of size ~10^7 cannot wrap.
    pub fn digit_sum(&self) -> u128 {
        self.digits.iter().map(|&d| d as u128).sum()
    }
}

impl fmt::Display for DigitPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.digits {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for DigitPrefix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(DigitPrefix::empty());
        }
        let digits = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad digit {part:?}: {e}")))
            })
            .collect::<Result<Vec<u64>>>()?;
        DigitPrefix::new(digits)
    }
}

/// A closed interval [lo, hi] ⊆ [0, 1] certifying a real value, with both
/// endpoints in the same backend.
#[derive(Clone, Debug)]
pub struct Enclosure {
    lo: Real,
    hi: Real,
}

impl Enclosure {
    pub fn new(lo: Real, hi: Real) -> Result<Self> {
        if lo.mode() != hi.mode() {
            return Err(Error::Domain(format!(
                "enclosure endpoints use different backends ({} vs {})",
                lo.mode().name(),
                hi.mode().name()
            )));
        }
        let ord = lo
            .partial_cmp_same(&hi)
            .ok_or_else(|| Error::Domain("enclosure endpoints are unordered".into()))?;
        if ord == std::cmp::Ordering::Greater {
            return Err(Error::Domain(format!(
                "enclosure is empty: lo {} > hi {}",
                lo.to_f64(),
                hi.to_f64()
            )));
        }
        let lo_rat = lo.to_rational()?;
        let hi_rat = hi.to_rational()?;
        if lo_rat < 0u32 || hi_rat > 1u32 {
            return Err(Error::Domain(format!(
                "enclosure [{}, {}] must lie within [0, 1]",
                lo.to_f64(),
                hi.to_f64()
            )));
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn point(x: Real) -> Result<Self> {
        Enclosure::new(x.clone(), x)
    }

    pub fn from_f64(lo: f64, hi: f64) -> Result<Self> {
        Enclosure::new(Real::Float(lo), Real::Float(hi))
    }

    pub fn point_f64(x: f64) -> Result<Self> {
        Enclosure::from_f64(x, x)
    }

    pub fn from_rationals(lo: Rational, hi: Rational) -> Result<Self> {
        Enclosure::new(Real::Rational(lo), Real::Rational(hi))
    }

    pub fn point_rational(x: Rational) -> Result<Self> {
        Enclosure::new(Real::Rational(x.clone()), Real::Rational(x))
    }

    pub fn lo(&self) -> &Real {
        &self.lo
    }

    pub fn hi(&self) -> &Real {
        &self.hi
    }

    /// hi − lo; exact in rational mode, rounded up (outward) otherwise.
    pub fn width(&self) -> Real {
        match (&self.lo, &self.hi) {
            (Real::Float(a), Real::Float(b)) => Real::Float(Scalar::sub(b, a, Dir::Up)),
            (Real::Extended(a), Real::Extended(b)) => Real::Extended(Scalar::sub(b, a, Dir::Up)),
            (Real::Rational(a), Real::Rational(b)) => Real::Rational(Rational::from(b - a)),
            _ => unreachable!("constructor enforces matching backends"),
        }
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        match (self.lo.to_rational(), self.hi.to_rational()) {
            (Ok(lo), Ok(hi)) => lo <= *x && *x <= hi,
            _ => false,
        }
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        match Rational::from_f64(x) {
            Some(r) => self.contains_rational(&r),
            None => false,
        }
    }

    /// Outward decimal bounds: lo rounded down, hi rounded up, with
    /// `digits` places each.
    pub fn decimal_bounds(&self, digits: usize) -> (String, String) {
        let lo = self
            .lo
            .decimal_dir(digits, Dir::Down)
            .unwrap_or_else(|_| format!("{:.*}", digits, self.lo.to_f64()));
        let hi = self
            .hi
            .decimal_dir(digits, Dir::Up)
            .unwrap_or_else(|_| format!("{:.*}", digits, self.hi.to_f64()));
        (lo, hi)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.decimal_bounds(17);
        write!(f, "[{lo}, {hi}]")
    }
}

/// Smallest i ≥ 1 with x·α^i > 1, i.e. the branch index of x under the
/// left-open intervals (α^{−i}, α^{−i+1}]. Products are rounded toward
/// `dir`, so `Down` yields an upper bound for the digit and `Up` a lower
/// bound; both are exact in the rational backend.
fn digit_search<T: Scalar>(x: &T, ctx: &Ctx<T>, dir: Dir) -> Result<u64> {
    if !(*x > ctx.zero) {
        return Err(Error::Domain(format!(
            "x must lie in (0, 1], got {}",
            x.to_f64()
        )));
    }
    if *x > ctx.one {
        return Err(Error::Domain(format!(
            "x must lie in (0, 1], got {}",
            x.to_f64()
        )));
    }
    let mut y = x.clone();
    for i in 1..=DIGIT_SEARCH_CAP {
        y = y.mul(ctx.alpha(dir), dir);
        if y > ctx.one {
            return Ok(i);
        }
    }
    Err(Error::DigitOverflow(DIGIT_SEARCH_CAP))
}

/// One application of T on branch `digit`: (α^d·x − 1)/(α − 1), rounded
/// toward `dir`.
fn apply_map<T: Scalar>(x: &T, digit: u64, ctx: &Ctx<T>, dir: Dir) -> T {
    let mut y = x.clone();
    for _ in 0..digit {
        y = y.mul(ctx.alpha(dir), dir);
    }
    let num = y.sub(&ctx.one, dir);
    // A positive numerator shrinks under a larger denominator, so the
    // denominator rounds the opposite way; flipped for the (rounding-only)
    // negative case.
    let den = if num >= ctx.zero {
        ctx.am1(dir.flip())
    } else {
        ctx.am1(dir)
    };
    num.div(den, dir)
}

/// The contraction T_d(x) = ((α−1)·x + 1)/α^d for x ≥ 0, rounded toward `dir`.
fn apply_contraction<T: Scalar>(x: &T, digit: u64, ctx: &Ctx<T>, dir: Dir) -> T {
    let num = x.mul(ctx.am1(dir), dir).add(&ctx.one, dir);
    let den = ctx.alpha_pow(digit, dir.flip());
    num.div(&den, dir)
}

/// The digit of a point x ∈ (0,1].
///
/// Branch membership is decided by the strict comparison x·α^i > 1, which
/// realizes the left-open interval rule; in particular x = α^{−k} gets
/// digit k+1, not the raw ceiling value k.
pub fn digit_of(x: &Real, params: &AlphaParams) -> Result<u64> {
    match params.mode() {
        ArithmeticMode::Float => {
            let v = x.to_rational()?.to_f64();
            digit_search(&v, &arith::ctx_f64(params.alpha()), Dir::Down)
        }
        ArithmeticMode::Extended => {
            let v = Float::with_val(params.precision_bits(), &x.to_rational()?);
            digit_search(
                &v,
                &arith::ctx_extended(params.alpha_rational(), params.precision_bits()),
                Dir::Down,
            )
        }
        ArithmeticMode::Rational => {
            let v = x.to_rational()?;
            digit_search(&v, &arith::ctx_rational(params.alpha_rational()), Dir::Down)
        }
    }
}

/// One step of the codec: the digit of x and T(x).
///
/// In inexact backends the image is computed with downward rounding and
/// clamped into [0, 1]; a clamp to 0 signals lost certification and will
/// surface as a domain error on the next step.
pub fn step(x: &Real, params: &AlphaParams) -> Result<(u64, Real)> {
    fn run<T: Scalar>(v: T, ctx: &Ctx<T>) -> Result<(u64, T)> {
        let d = digit_search(&v, ctx, Dir::Down)?;
        let mut tx = apply_map(&v, d, ctx, Dir::Down);
        if tx > ctx.one {
            tx = ctx.one.clone();
        }
        if tx < ctx.zero {
            tx = ctx.zero.clone();
        }
        Ok((d, tx))
    }

    match params.mode() {
        ArithmeticMode::Float => {
            let (d, tx) = run(
                x.to_rational()?.to_f64(),
                &arith::ctx_f64(params.alpha()),
            )?;
            Ok((d, Real::Float(tx)))
        }
        ArithmeticMode::Extended => {
            let prec = params.precision_bits();
            let (d, tx) = run(
                Float::with_val(prec, &x.to_rational()?),
                &arith::ctx_extended(params.alpha_rational(), prec),
            )?;
            Ok((d, Real::Extended(tx)))
        }
        ArithmeticMode::Rational => {
            let (d, tx) = run(
                x.to_rational()?,
                &arith::ctx_rational(params.alpha_rational()),
            )?;
            Ok((d, Real::Rational(tx)))
        }
    }
}

fn encode_impl<T: Scalar>(
    mut lo: T,
    mut hi: T,
    ctx: &Ctx<T>,
    max_digits: usize,
) -> Result<(DigitPrefix, usize)> {
    if !(lo > ctx.zero) {
        return Err(Error::Domain(
            "enclosure must lie within (0, 1]; its lower endpoint is not positive".into(),
        ));
    }
    let mut digits = Vec::new();
    while digits.len() < max_digits {
        // digit upper bound from the lower endpoint, lower bound from the
        // upper endpoint; equality certifies the digit for every point.
        let upper = match digit_search(&lo, ctx, Dir::Down) {
            Ok(d) => d,
            Err(Error::DigitOverflow(_)) => break,
            Err(e) => return Err(e),
        };
        let lower = digit_search(&hi, ctx, Dir::Up)?;
        if upper != lower {
            break;
        }
        lo = apply_map(&lo, upper, ctx, Dir::Down);
        hi = apply_map(&hi, upper, ctx, Dir::Up);
        if lo < ctx.zero {
            lo = ctx.zero.clone();
        }
        if hi > ctx.one {
            hi = ctx.one.clone();
        }
        digits.push(upper);
        if !(lo > ctx.zero) {
            // Rounding pushed the endpoint onto a cylinder boundary;
            // further digits cannot be certified.
            break;
        }
    }
    let certified = digits.len();
    Ok((DigitPrefix::new(digits)?, certified))
}

/// Certified digit extraction from an enclosure.
///
/// Digits are emitted while both endpoints provably share a branch, so
/// every returned digit is correct for every point of the input; the
/// returned count equals the prefix length. In rational mode with a point
/// input nothing ever stops certification short of `max_digits`.
pub fn encode(x: &Enclosure, params: &AlphaParams, max_digits: usize) -> Result<(DigitPrefix, usize)> {
    let lo = x.lo().to_rational()?;
    let hi = x.hi().to_rational()?;
    match params.mode() {
        ArithmeticMode::Float => encode_impl(
            rational_to_f64_dir(&lo, Dir::Down),
            rational_to_f64_dir(&hi, Dir::Up),
            &arith::ctx_f64(params.alpha()),
            max_digits,
        ),
        ArithmeticMode::Extended => {
            let prec = params.precision_bits();
            encode_impl(
                Float::with_val_round(prec, &lo, Round::Down).0,
                Float::with_val_round(prec, &hi, Round::Up).0,
                &arith::ctx_extended(params.alpha_rational(), prec),
                max_digits,
            )
        }
        ArithmeticMode::Rational => encode_impl(
            lo,
            hi,
            &arith::ctx_rational(params.alpha_rational()),
            max_digits,
        ),
    }
}

fn rational_to_f64_dir(r: &Rational, dir: Dir) -> f64 {
    let f = r.to_f64();
    match Rational::from_f64(f) {
        Some(back) => match dir {
            Dir::Down if back > *r => f.next_down(),
            Dir::Up if back < *r => f.next_up(),
            _ => f,
        },
        None => f,
    }
}

fn decode_impl<T: Scalar>(prefix: &DigitPrefix, ctx: &Ctx<T>) -> (T, T) {
    let mut lo = ctx.zero.clone();
    let mut hi = ctx.one.clone();
    // ⟨d_i⟩ composes T_{d_1} ∘ … ∘ T_{d_n}, so the innermost map T_{d_n}
    // applies first. (The reversed order does not reproduce the series:
    // with α = 2 it sends the prefix (2,1) to 3/4 instead of into
    // (3/8, 1/2].)
    for &d in prefix.digits().iter().rev() {
        lo = apply_contraction(&lo, d, ctx, Dir::Down);
        hi = apply_contraction(&hi, d, ctx, Dir::Up);
    }
    (lo, hi)
}

/// The cylinder interval I(d_1,…,d_n) as an enclosure.
///
/// Exact in rational mode (the closure of the left-open cylinder),
/// outward-rounded otherwise.
pub fn decode(prefix: &DigitPrefix, params: &AlphaParams) -> Result<Enclosure> {
    if prefix.is_empty() {
        return Err(Error::Domain("decode requires a nonempty prefix".into()));
    }
    match params.mode() {
        ArithmeticMode::Float => {
            let (lo, hi) = decode_impl(prefix, &arith::ctx_f64(params.alpha()));
            Enclosure::new(Real::Float(lo.max(0.0)), Real::Float(hi.min(1.0)))
        }
        ArithmeticMode::Extended => {
            let prec = params.precision_bits();
            let (lo, hi) = decode_impl(
                prefix,
                &arith::ctx_extended(params.alpha_rational(), prec),
            );
            Enclosure::new(Real::Extended(lo), Real::Extended(hi))
        }
        ArithmeticMode::Rational => {
            let (lo, hi) = decode_impl(prefix, &arith::ctx_rational(params.alpha_rational()));
            Enclosure::new(Real::Rational(lo), Real::Rational(hi))
        }
    }
}

/// n·ln(α−1) − (Σd)·ln α for a prefix of length n with digit sum Σd.
///
/// Shared by the cylinder length, the Lebesgue digit law and the level-set
/// estimators so that "numerator equals denominator" identities hold
/// bit-for-bit.
pub(crate) fn log_length_parts(n: usize, digit_sum: u128, alpha: f64) -> f64 {
    n as f64 * (alpha - 1.0).ln() - digit_sum as f64 * alpha.ln()
}

/// Natural log of the cylinder length; safe at any depth.
pub fn cylinder_log_length(prefix: &DigitPrefix, params: &AlphaParams) -> Result<f64> {
    if prefix.is_empty() {
        return Err(Error::Domain(
            "cylinder length requires a nonempty prefix".into(),
        ));
    }
    Ok(log_length_parts(
        prefix.len(),
        prefix.digit_sum(),
        params.alpha(),
    ))
}

/// The cylinder length (α−1)^n α^{−Σd} itself.
///
/// Exact in rational mode; in float mode deep prefixes underflow and the
/// log-scale form is mandatory instead.
pub fn cylinder_length(prefix: &DigitPrefix, params: &AlphaParams) -> Result<Real> {
    if prefix.is_empty() {
        return Err(Error::Domain(
            "cylinder length requires a nonempty prefix".into(),
        ));
    }
    match params.mode() {
        ArithmeticMode::Float => {
            let ll = log_length_parts(prefix.len(), prefix.digit_sum(), params.alpha());
            if ll < f64::MIN_POSITIVE.ln() {
                return Err(Error::Underflow { log_length: ll });
            }
            Ok(Real::Float(ll.exp()))
        }
        ArithmeticMode::Extended => {
            let exact = exact_length(prefix, params)?;
            Ok(Real::Extended(Float::with_val(
                params.precision_bits(),
                &exact,
            )))
        }
        ArithmeticMode::Rational => Ok(Real::Rational(exact_length(prefix, params)?)),
    }
}

fn exact_length(prefix: &DigitPrefix, params: &AlphaParams) -> Result<Rational> {
    let n = u32::try_from(prefix.len())
        .map_err(|_| Error::Domain("prefix too long for exact length".into()))?;
    let sum = u32::try_from(prefix.digit_sum())
        .map_err(|_| Error::Domain("digit sum too large for exact length; use the log form".into()))?;
    let am1 = Rational::from(params.alpha_rational() - &Rational::from(1u32));
    let num = am1.pow(n);
    let den = params.alpha_rational().clone().pow(sum);
    Ok(Rational::from(num / den))
}

fn reconstruct_impl<T: Scalar>(prefix: &DigitPrefix, ctx: &Ctx<T>) -> (T, T) {
    // value = Σ_{i≤n} (α−1)^{i−1} α^{−(d_1+…+d_i)}, rounded down;
    // tail = Π_{i≤n} (α−1)/α^{d_i}, rounded up.
    let mut value = ctx.zero.clone();
    let mut term: Option<T> = None;
    for &d in prefix.digits() {
        let next = match term {
            None => ctx.one.div(&ctx.alpha_pow(d, Dir::Up), Dir::Down),
            Some(prev) => prev
                .mul(ctx.am1(Dir::Down), Dir::Down)
                .div(&ctx.alpha_pow(d, Dir::Up), Dir::Down),
        };
        value = value.add(&next, Dir::Down);
        term = Some(next);
    }
    let mut tail = ctx.one.clone();
    for &d in prefix.digits() {
        tail = tail
            .mul(ctx.am1(Dir::Up), Dir::Up)
            .div(&ctx.alpha_pow(d, Dir::Down), Dir::Up);
    }
    (value, tail)
}

/// Partial sum of the expansion series plus a tail bound.
///
/// The true point with the given prefix lies in [value, value + tail]:
/// the value is the left endpoint of the cylinder and the tail is its
/// width. Rounding is downward for the value and upward for the tail.
pub fn reconstruct_partial(prefix: &DigitPrefix, params: &AlphaParams) -> Result<(Real, Real)> {
    if prefix.is_empty() {
        return Err(Error::Domain(
            "reconstruction requires a nonempty prefix".into(),
        ));
    }
    match params.mode() {
        ArithmeticMode::Float => {
            let (v, t) = reconstruct_impl(prefix, &arith::ctx_f64(params.alpha()));
            Ok((Real::Float(v), Real::Float(t)))
        }
        ArithmeticMode::Extended => {
            let (v, t) = reconstruct_impl(
                prefix,
                &arith::ctx_extended(params.alpha_rational(), params.precision_bits()),
            );
            Ok((Real::Extended(v), Real::Extended(t)))
        }
        ArithmeticMode::Rational => {
            let (v, t) = reconstruct_impl(prefix, &arith::ctx_rational(params.alpha_rational()));
            Ok((Real::Rational(v), Real::Rational(t)))
        }
    }
}

/// Parse a plain decimal string into its exact rational value plus one
/// unit in the last place.
pub fn parse_decimal(s: &str) -> Result<(Rational, Rational)> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i32, rest),
        None => (1i32, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() {
        return Err(Error::Parse("empty decimal string".into()));
    }
    let (whole, frac) = match body.split_once('.') {
        Some((w, f)) => (w, f),
        None => (body, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return Err(Error::Parse(format!("bad decimal {s:?}")));
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad decimal {s:?}")));
    }
    let digits = format!("{whole}{frac}");
    let digits = if digits.is_empty() { "0".to_string() } else { digits };
    let numer = rug::Integer::from_str_radix(&digits, 10)
        .map_err(|e| Error::Parse(format!("bad decimal {s:?}: {e}")))?;
    let denom = rug::Integer::from(10u32).pow(frac.len() as u32);
    let mut value = Rational::from((numer, denom.clone()));
    if sign < 0 {
        value = -value;
    }
    let ulp = Rational::from((rug::Integer::from(1u32), denom));
    Ok((value, ulp))
}
