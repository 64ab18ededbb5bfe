//! Exact coefficient arithmetic.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms.
//! [`ExtScalar`] is an element `p + q·α` of the extension `ℚ + ℚα`, where `α`
//! is a designated symbolic irrational. Only the operations that the
//! pipelines need are provided: addition, negation, rational scaling, the
//! zero test and evaluation at a rational stand-in for `α`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use regex::Regex;

use crate::error::ScalarParseError;

/// Arbitrary-precision rational, always normalized (`gcd = 1`, denominator > 0).
pub type Rational = num_rational::BigRational;

/// Builds an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `num/den` as a [`Rational`]. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn fraction_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^-?\d+(/\d+)?$").unwrap())
}

fn ext_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"^(-?\d+(?:/\d+)?)(?:([+-])(\d+(?:/\d+)?)\*alpha)?$").unwrap()
    })
}

/// Parses an exact fraction literal `p` or `p/q`.
///
/// Decimal literals are rejected so that no value is silently rounded.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarParseError> {
    let text = text.trim();
    if text.contains('.') || text.contains(['e', 'E']) {
        return Err(ScalarParseError::Decimal(text.to_string()));
    }
    if !fraction_regex().is_match(text) {
        return Err(ScalarParseError::Malformed(text.to_string()));
    }
    parse_checked_fraction(text)
}

fn parse_checked_fraction(text: &str) -> Result<Rational, ScalarParseError> {
    if let Some((_, den)) = text.split_once('/') {
        if den.bytes().all(|b| b == b'0') {
            return Err(ScalarParseError::ZeroDenominator(text.to_string()));
        }
    }
    Rational::from_str(text).map_err(|_| ScalarParseError::Malformed(text.to_string()))
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An element `rat + irr·α` of `ℚ + ℚα`.
///
/// `α` is irrational by declaration, so the value is zero exactly when both
/// components are zero. Products of two `ExtScalar`s are deliberately absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExtScalar {
    pub rat: Rational,
    pub irr: Rational,
}

impl ExtScalar {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        ExtScalar { rat, irr }
    }

    pub fn rational(rat: Rational) -> Self {
        ExtScalar { rat, irr: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Zero test; sound because `α` is irrational.
    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExtScalar { rat: &self.rat * c, irr: &self.irr * c }
    }

    /// Substitutes the rational `t` for `α`.
    pub fn eval_at(&self, t: &Rational) -> Rational {
        &self.rat + &self.irr * t
    }
}

/// `true` iff `s = 0` in `ℚ + ℚα`.
pub fn ext_is_zero(s: &ExtScalar) -> bool {
    s.is_zero()
}

impl Add for &ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: &ExtScalar) -> ExtScalar {
        ExtScalar { rat: &self.rat + &rhs.rat, irr: &self.irr + &rhs.irr }
    }
}

impl Add for ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: ExtScalar) -> ExtScalar {
        &self + &rhs
    }
}

impl Sub for &ExtScalar {
    type Output = ExtScalar;
    fn sub(self, rhs: &ExtScalar) -> ExtScalar {
        ExtScalar { rat: &self.rat - &rhs.rat, irr: &self.irr - &rhs.irr }
    }
}

impl Neg for ExtScalar {
    type Output = ExtScalar;
    fn neg(self) -> ExtScalar {
        ExtScalar { rat: -self.rat, irr: -self.irr }
    }
}

impl From<Rational> for ExtScalar {
    fn from(r: Rational) -> Self {
        ExtScalar::rational(r)
    }
}

impl FromStr for ExtScalar {
    type Err = ScalarParseError;

    /// Accepts `p`, `p/q`, `p+q*alpha`, `p-q*alpha` (with `p`, `q` fractions).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains('.') {
            return Err(ScalarParseError::Decimal(s.to_string()));
        }
        let caps = ext_regex()
            .captures(s)
            .ok_or_else(|| ScalarParseError::Malformed(s.to_string()))?;
        let rat = parse_checked_fraction(&caps[1])?;
        let irr = match (caps.get(2), caps.get(3)) {
            (Some(sign), Some(q)) => {
                let q = parse_checked_fraction(q.as_str())?;
                if sign.as_str() == "-" {
                    -q
                } else {
                    q
                }
            }
            _ => Rational::zero(),
        };
        Ok(ExtScalar { rat, irr })
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return f.write_str(&format_rational(&self.rat));
        }
        let sign = if self.irr.is_negative() { '-' } else { '+' };
        write!(
            f,
            "{}{}{}*alpha",
            format_rational(&self.rat),
            sign,
            format_rational(&self.irr.abs())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn zero_test_examples() {
        assert!(ext_is_zero(&ExtScalar::new(rat(0), rat(0))));
        assert!(!ext_is_zero(&ExtScalar::new(rat(2), rat(-1))));
        assert!(!ext_is_zero(&ExtScalar::new(rat(0), rat(3))));
    }

    #[test]
    fn rational_normalization() {
        let r = frac(6, -4) + frac(1, 6);
        assert_eq!(r, frac(-4, 3));
        assert!(r.denom().is_positive());
        assert!(r.numer().gcd(r.denom()).is_one());
    }

    #[test]
    fn parses_exact_literals() {
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(matches!(parse_rational("0.5"), Err(ScalarParseError::Decimal(_))));
        assert!(matches!(parse_rational("1/0"), Err(ScalarParseError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("1/-2"), Err(ScalarParseError::Malformed(_))));
    }

    #[test]
    fn parses_extension_literals() {
        let s: ExtScalar = "1/2-3*alpha".parse().unwrap();
        assert_eq!(s, ExtScalar::new(frac(1, 2), rat(-3)));
        assert_eq!(s.to_string(), "1/2-3*alpha");
        let t: ExtScalar = "0+1*alpha".parse().unwrap();
        assert_eq!(t.eval_at(&rat(5)), rat(5));
        assert!("alpha".parse::<ExtScalar>().is_err());
        assert!("0.5".parse::<ExtScalar>().is_err());
        assert!("1+2*beta".parse::<ExtScalar>().is_err());
    }

    #[test]
    fn componentwise_arithmetic() {
        let a = ExtScalar::new(rat(2), rat(-1));
        let b = ExtScalar::new(rat(-2), rat(1));
        assert!((&a + &b).is_zero());
        assert_eq!(a.scale(&frac(1, 2)), ExtScalar::new(rat(1), frac(-1, 2)));
        assert_eq!(&a - &b, ExtScalar::new(rat(4), rat(-2)));
    }
}
