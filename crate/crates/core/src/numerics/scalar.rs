use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which arithmetic an orbit is computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

/// A number in one of the two backends.
///
/// `BigRational` keeps itself in lowest terms with a positive denominator, so
/// the exact variant is always canonical. Binary operations between two exact
/// values stay exact; mixing backends promotes to `f64`.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
        }
    }

    /// Converts a rational into the requested backend.
    pub fn from_rational(r: &BigRational, backend: Backend) -> Scalar {
        match backend {
            Backend::Exact => Scalar::Exact(r.clone()),
            Backend::Float => Scalar::Float(rational_to_f64(r)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Exact(_) => true,
            Scalar::Float(x) => x.is_finite(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_positive(),
            Scalar::Float(x) => *x > 0.0,
        }
    }

    /// Division; an exact zero divisor is an error. Float division follows IEEE 754.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                if b.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Exact(a / b))
                }
            }
            (a, b) => Ok(Scalar::Float(a.to_f64() / b.to_f64())),
        }
    }

    /// Exact values as `num/den` (integers without the `/1`), floats via `{}`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

/// Nearest `f64` to a rational. Values beyond the `f64` range become ±inf.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// The exact rational value of a finite `f64`.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Parses `a/b`, plain integers, and decimals with an optional exponent
/// (`0.2`, `-1.25e-3`) into an exact rational. `0.2` becomes `1/5`.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err("empty"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let exp: i32 = s[i + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..i], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(err("unexpected character"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = all_digits.parse().map_err(|_| err("bad digits"))?;
    if negative {
        num = -num;
    }
    let scale = exponent as i64 - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Renders a rational as a decimal string with `precision` fractional digits,
/// rounding half away from zero.
pub fn render_decimal(r: &BigRational, precision: usize) -> String {
    let ten = BigInt::from(10u32);
    let scale = num_traits::pow(ten, precision);
    let num = r.numer().abs() * &scale;
    let den = r.denom();
    let (quot, rem) = num.div_rem(den);
    let scaled = if rem * 2u32 >= *den {
        quot + BigInt::one()
    } else {
        quot
    };
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let sign = if r.numer().sign() == Sign::Minus && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    if precision == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = frac_part.to_string();
        format!(
            "{sign}{int_part}.{}{frac}",
            "0".repeat(precision - frac.len())
        )
    }
}
