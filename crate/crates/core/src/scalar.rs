//! Numeric types used for probability masses and distances.
//!
//! Every measure-valued operation is generic over [`Scalar`]. The exact
//! instantiation ([`crate::Rational`]) is what the library is built around;
//! the floating-point instantiations exist for quick exploratory numerics and
//! for the decimal columns of the CLI tables.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync
{
    /// `true` when arithmetic is exact, so that identities may be checked with `==`.
    const EXACT: bool;

    /// `numer / denom` as a scalar.
    fn ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_u64(numer).expect("numerator representable")
            / Self::from_u64(denom).expect("denominator representable")
    }

    fn from_usize_lossless(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable")
    }

    /// Equality for exact types; a relative tolerance for floats.
    fn approx_eq(&self, other: &Self) -> bool {
        if Self::EXACT {
            self == other
        } else {
            let scale = self.abs().max_ref(&other.abs()).max_ref(&Self::one());
            (self.clone() - other.clone()).abs() <= scale * Self::tolerance()
        }
    }

    fn tolerance() -> Self;

    fn max_ref(self, other: &Self) -> Self {
        if *other > self {
            other.clone()
        } else {
            self
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn ratio(numer: u64, denom: u64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn tolerance() -> Self {
        num_traits::Zero::zero()
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn ratio(numer: u64, denom: u64) -> Self {
        Ratio::new(numer as i64, denom as i64)
    }

    fn tolerance() -> Self {
        num_traits::Zero::zero()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }
}

/// Renders an exact rational as `P/Q`, including integers (`1/1`).
pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Decimal expansion of `q` rounded half away from zero to `places` digits.
pub fn decimal_string(q: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = (q * BigRational::from_integer(scale)).round().to_integer();
    let negative = scaled < BigInt::from(0);
    let digits = if negative { -scaled } else { scaled }.to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Parses `P/Q` or a bare integer `P`.
pub fn parse_fraction(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}
