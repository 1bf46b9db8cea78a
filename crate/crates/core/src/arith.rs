//! Arithmetic backends for the codec.
//!
//! Three backends share one interface: machine floats (fast, shallow
//! certification), MPFR floats with directed rounding (the default), and
//! exact rationals (oracle mode). Directed rounding keeps every computed
//! interval endpoint on the safe side: `Down` results never exceed the
//! exact value, `Up` results never fall below it.

use rug::{float::Round, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Arithmetic backend selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithmeticMode {
    /// Machine `f64` with one-ulp outward nudges.
    Float,
    /// MPFR floats at a configurable precision with outward rounding.
    Extended,
    /// Exact rational arithmetic; valid whenever α is rational.
    Rational,
}

impl ArithmeticMode {
    pub fn name(self) -> &'static str {
        match self {
            ArithmeticMode::Float => "float",
            ArithmeticMode::Extended => "extended",
            ArithmeticMode::Rational => "rational",
        }
    }
}

impl std::str::FromStr for ArithmeticMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "float" => Ok(ArithmeticMode::Float),
            "extended" => Ok(ArithmeticMode::Extended),
            "rational" => Ok(ArithmeticMode::Rational),
            other => Err(Error::Parse(format!(
                "unknown arithmetic mode {other:?} (expected float, extended or rational)"
            ))),
        }
    }
}

/// Rounding direction for interval endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Dir {
    Down = 0,
    Up = 1,
}

impl Dir {
    pub(crate) fn flip(self) -> Dir {
        match self {
            Dir::Down => Dir::Up,
            Dir::Up => Dir::Down,
        }
    }

    fn round(self) -> Round {
        match self {
            Dir::Down => Round::Down,
            Dir::Up => Round::Up,
        }
    }
}

/// Scalar arithmetic with directed rounding.
pub(crate) trait Scalar: Clone + PartialOrd {
    fn add(&self, rhs: &Self, dir: Dir) -> Self;
    fn sub(&self, rhs: &Self, dir: Dir) -> Self;
    fn mul(&self, rhs: &Self, dir: Dir) -> Self;
    fn div(&self, rhs: &Self, dir: Dir) -> Self;
    fn to_f64(&self) -> f64;
}

fn nudge(v: f64, dir: Dir) -> f64 {
    // Conservative: every op is treated as inexact and pushed one ulp outward.
    match dir {
        Dir::Down => v.next_down(),
        Dir::Up => v.next_up(),
    }
}

impl Scalar for f64 {
    fn add(&self, rhs: &Self, dir: Dir) -> Self {
        nudge(self + rhs, dir)
    }
    fn sub(&self, rhs: &Self, dir: Dir) -> Self {
        nudge(self - rhs, dir)
    }
    fn mul(&self, rhs: &Self, dir: Dir) -> Self {
        nudge(self * rhs, dir)
    }
    fn div(&self, rhs: &Self, dir: Dir) -> Self {
        nudge(self / rhs, dir)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Float {
    fn add(&self, rhs: &Self, dir: Dir) -> Self {
        Float::with_val_round(self.prec(), self + rhs, dir.round()).0
    }
    fn sub(&self, rhs: &Self, dir: Dir) -> Self {
        Float::with_val_round(self.prec(), self - rhs, dir.round()).0
    }
    fn mul(&self, rhs: &Self, dir: Dir) -> Self {
        Float::with_val_round(self.prec(), self * rhs, dir.round()).0
    }
    fn div(&self, rhs: &Self, dir: Dir) -> Self {
        Float::with_val_round(self.prec(), self / rhs, dir.round()).0
    }
    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }
}

impl Scalar for Rational {
    fn add(&self, rhs: &Self, _dir: Dir) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self, _dir: Dir) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self, _dir: Dir) -> Self {
        Rational::from(self * rhs)
    }
    fn div(&self, rhs: &Self, _dir: Dir) -> Self {
        Rational::from(self / rhs)
    }
    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }
}

/// Backend constants derived from α, with both rounding directions where
/// the backend rounds at all.
pub(crate) struct Ctx<T> {
    alpha: [T; 2],
    am1: [T; 2],
    pub(crate) one: T,
    pub(crate) zero: T,
}

impl<T: Scalar> Ctx<T> {
    pub(crate) fn alpha(&self, dir: Dir) -> &T {
        &self.alpha[dir as usize]
    }

    /// α − 1, rounded toward `dir`.
    pub(crate) fn am1(&self, dir: Dir) -> &T {
        &self.am1[dir as usize]
    }

    /// α^n rounded toward `dir`.
    pub(crate) fn alpha_pow(&self, n: u64, dir: Dir) -> T {
        let mut acc = self.one.clone();
        for _ in 0..n {
            acc = acc.mul(self.alpha(dir), dir);
        }
        acc
    }
}

pub(crate) fn ctx_f64(alpha: f64) -> Ctx<f64> {
    let am1 = alpha - 1.0;
    // Sterbenz: the subtraction is exact iff adding 1 back restores alpha.
    let am1_pair = if am1 + 1.0 == alpha {
        [am1, am1]
    } else {
        [am1.next_down(), am1.next_up()]
    };
    Ctx {
        alpha: [alpha, alpha],
        am1: am1_pair,
        one: 1.0,
        zero: 0.0,
    }
}

pub(crate) fn ctx_extended(alpha: &Rational, prec: u32) -> Ctx<Float> {
    let down = Float::with_val_round(prec, alpha, Round::Down).0;
    let up = Float::with_val_round(prec, alpha, Round::Up).0;
    let am1_exact = Rational::from(alpha - &Rational::from(1u32));
    let am1_down = Float::with_val_round(prec, &am1_exact, Round::Down).0;
    let am1_up = Float::with_val_round(prec, &am1_exact, Round::Up).0;
    Ctx {
        alpha: [down, up],
        am1: [am1_down, am1_up],
        one: Float::with_val(prec, 1u32),
        zero: Float::with_val(prec, 0u32),
    }
}

pub(crate) fn ctx_rational(alpha: &Rational) -> Ctx<Rational> {
    let am1 = Rational::from(alpha - &Rational::from(1u32));
    Ctx {
        alpha: [alpha.clone(), alpha.clone()],
        am1: [am1.clone(), am1],
        one: Rational::from(1u32),
        zero: Rational::new(),
    }
}

/// A real value carried in whichever backend produced it.
#[derive(Clone, Debug)]
pub enum Real {
    Float(f64),
    Extended(Float),
    Rational(Rational),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Float(v) => *v,
            Real::Extended(v) => v.to_f64(),
            Real::Rational(v) => v.to_f64(),
        }
    }

    pub fn mode(&self) -> ArithmeticMode {
        match self {
            Real::Float(_) => ArithmeticMode::Float,
            Real::Extended(_) => ArithmeticMode::Extended,
            Real::Rational(_) => ArithmeticMode::Rational,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Real::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Exact rational value of this real. Floats of either width are dyadic
    /// rationals, so this never loses information.
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Real::Float(v) => Rational::from_f64(*v)
                .ok_or_else(|| Error::Domain(format!("{v} has no rational value"))),
            Real::Extended(v) => v
                .to_rational()
                .ok_or_else(|| Error::Domain("non-finite extended float".into())),
            Real::Rational(r) => Ok(r.clone()),
        }
    }

    /// Decimal string with `digits` places after the point, rounded toward
    /// `dir` so that printed enclosure endpoints stay outward.
    pub(crate) fn decimal_dir(&self, digits: usize, dir: Dir) -> Result<String> {
        Ok(rational_decimal(&self.to_rational()?, digits, dir))
    }

    /// Decimal string with `digits` places, rounded to nearest.
    pub fn decimal(&self, digits: usize) -> String {
        match self.to_rational() {
            Ok(r) => rational_decimal_nearest(&r, digits),
            Err(_) => format!("{:.*}", digits, self.to_f64()),
        }
    }

    pub(crate) fn partial_cmp_same(&self, other: &Real) -> Option<std::cmp::Ordering> {
        match (self, other) {
            (Real::Float(a), Real::Float(b)) => a.partial_cmp(b),
            (Real::Extended(a), Real::Extended(b)) => a.partial_cmp(b),
            (Real::Rational(a), Real::Rational(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

/// Scale-and-floor decimal emission: `dir` controls whether the last place
/// truncates toward −∞ or rounds away toward +∞.
fn rational_decimal(r: &Rational, digits: usize, dir: Dir) -> String {
    let scale = Integer::from(10u32).pow_u(digits as u32);
    let scaled = Rational::from(r * &Rational::from(scale));
    let floor = scaled.clone().floor();
    let int = match dir {
        Dir::Down => floor.into_numer_denom().0,
        Dir::Up => {
            let f = floor.clone();
            if scaled == f {
                f.into_numer_denom().0
            } else {
                f.into_numer_denom().0 + Integer::from(1u32)
            }
        }
    };
    format_scaled(int, digits)
}

fn rational_decimal_nearest(r: &Rational, digits: usize) -> String {
    let scale = Integer::from(10u32).pow_u(digits as u32);
    let scaled = Rational::from(r * &Rational::from(scale));
    // round half away from zero
    let half = Rational::from((1u32, 2u32));
    let shifted = if scaled >= 0 {
        Rational::from(&scaled + &half)
    } else {
        Rational::from(&scaled - &half)
    };
    let int = shifted.floor().into_numer_denom().0;
    format_scaled(int, digits)
}

fn format_scaled(int: Integer, digits: usize) -> String {
    let neg = int < 0;
    let s = int.abs().to_string();
    let (whole, frac) = if s.len() > digits {
        let (w, f) = s.split_at(s.len() - digits);
        (w.to_string(), f.to_string())
    } else {
        ("0".to_string(), format!("{s:0>digits$}"))
    };
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}

trait PowU {
    fn pow_u(self, e: u32) -> Integer;
}

impl PowU for Integer {
    fn pow_u(self, e: u32) -> Integer {
        use rug::ops::Pow;
        self.pow(e)
    }
}
