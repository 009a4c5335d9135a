//! Scalar types carried by the numeric models.
//!
//! The interval and function models are generic over [`Scalar`], which is
//! implemented for `f64`, `f32` and exact big rationals. Exact scalars have a
//! zero default tolerance, so comparisons on them are strict.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};
use rand::Rng;

pub trait Scalar:
    Num + Clone + PartialOrd + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Equality tolerance used when a model is built without an explicit one.
    fn default_tolerance() -> Self;

    /// Uniform-ish draw from `[0, 1]`.
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Parses a decimal (or, for rationals, `p/q`) literal.
    fn parse_literal(text: &str) -> Option<Self>;

    fn abs_diff(&self, other: &Self) -> Self {
        if self > other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl Scalar for f64 {
    fn default_tolerance() -> Self {
        1e-9
    }

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen::<f64>()
    }

    fn parse_literal(text: &str) -> Option<Self> {
        text.trim().parse().ok().filter(|v: &f64| v.is_finite())
    }
}

impl Scalar for f32 {
    fn default_tolerance() -> Self {
        1e-5
    }

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen::<f32>()
    }

    fn parse_literal(text: &str) -> Option<Self> {
        text.trim().parse().ok().filter(|v: &f32| v.is_finite())
    }
}

impl Scalar for BigRational {
    fn default_tolerance() -> Self {
        BigRational::zero()
    }

    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let denom: i64 = rng.gen_range(1..=1024);
        let numer: i64 = rng.gen_range(0..=denom);
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn parse_literal(text: &str) -> Option<Self> {
        let text = text.trim();
        if text.contains('/') {
            return BigRational::from_str(text).ok();
        }
        // Decimal literal, converted exactly.
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        Some(BigRational::new(numer, denom))
    }
}

/// `1 - a` for scalars.
pub(crate) fn one_minus<S: Scalar>(a: &S) -> S {
    S::one() - a.clone()
}

/// Clamps into `[0, 1]`.
pub(crate) fn clamp_unit<S: Scalar>(a: S) -> S {
    a.max_of(S::zero()).min_of(S::one())
}

/// Support indicator: strictly above the tolerance.
pub(crate) fn above_zero<S: Scalar>(a: &S, tol: &S) -> bool {
    a > tol
}

/// One-level indicator: strictly within the tolerance of one (exactly one for
/// exact scalars).
pub(crate) fn at_one<S: Scalar>(a: &S, tol: &S) -> bool {
    if tol.is_zero() {
        a.is_one()
    } else {
        one_minus(a) < *tol
    }
}
