//! Exact scalars.
//!
//! Everything in the crate is generic over [`Field`]. Two implementations are
//! provided: [`Rational`] (arbitrary precision, the default ground field) and
//! [`Zp`], a prime field with a compile-time modulus used for fuzzing.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// Image of the fraction `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;
    /// 0 for the rationals, `p` for a prime field.
    fn characteristic() -> u64;

    /// Parses `"p/q"` or `"p"`.
    fn parse_literal(s: &str) -> Result<Self> {
        let (num, den) = parse_fraction(s)?;
        Self::from_ratio(&num, &den).ok_or_else(|| Error::Scalar {
            literal: s.to_string(),
            reason: "denominator is zero in this field".into(),
        })
    }
}

fn parse_fraction(s: &str) -> Result<(BigInt, BigInt)> {
    let bad = |reason: &str| Error::Scalar {
        literal: s.to_string(),
        reason: reason.to_string(),
    };
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid = |x: &str, signed: bool| {
        let digits = if signed {
            x.strip_prefix('-').or_else(|| x.strip_prefix('+')).unwrap_or(x)
        } else {
            x
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(n, true) || !valid(d, false) {
        return Err(bad("expected an integer or a fraction p/q"));
    }
    let num = BigInt::from_str(n).map_err(|_| bad("bad numerator"))?;
    let den = BigInt::from_str(d).map_err(|_| bad("bad denominator"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok((num, den))
}

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn from_i64(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(num.clone(), den.clone())))
        }
    }
    fn characteristic() -> u64 {
        0
    }
}

/// Element of the prime field `Z/P`. `P` must be prime and below 2^31.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zp<const P: u32>(u32);

impl<const P: u32> Zp<P> {
    pub fn new(v: u64) -> Self {
        Zp((v % P as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Zp(acc as u32)
    }
}

impl<const P: u32> fmt::Debug for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Zp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Zp(((self.0 as u64 + rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Zp(((self.0 as u64 + P as u64 - rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Zp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp(((P as u64 - self.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Field for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn one() -> Self {
        Zp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }
    fn from_i64(n: i64) -> Self {
        Zp(n.rem_euclid(P as i64) as u32)
    }
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| x.mod_floor(&p).to_u64().map(Zp::<P>::new);
        let n = reduce(num)?;
        let d = reduce(den)?;
        d.inv().map(|d| n * d)
    }
    fn characteristic() -> u64 {
        P as u64
    }
}

/// Convenience for tests and fixtures: parse or panic.
pub fn q(s: &str) -> Rational {
    Rational::parse_literal(s).expect("valid rational literal")
}
