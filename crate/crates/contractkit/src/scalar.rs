//! Exact rational scalars and their textual forms.
//!
//! Every verdict in this crate rests on exact rank and inclusion decisions,
//! so all linear algebra runs over arbitrary-precision rationals. Floating
//! point appears only in the trajectory module, where it is evidence rather
//! than proof.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. Always stored in reduced form with a positive
/// denominator, which `num_rational` maintains on every operation.
pub type Scalar = num_rational::BigRational;

/// Error produced when a string cannot be read as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational number")]
pub struct ScalarParseError {
    pub input: String,
}

/// Shorthand for an integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n / d`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-1/2"`, or a plain decimal such as `"0.8"` (read exactly,
/// so `0.8` becomes `4/5`). No exponents, no whitespace.
pub fn parse_scalar(input: &str) -> Result<Scalar, ScalarParseError> {
    let err = || ScalarParseError {
        input: input.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some(dot) = s.find('.') {
        if s.contains('/') {
            return Err(err());
        }
        let (int_part, frac_part) = (&s[..dot], &s[dot + 1..]);
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if frac_part.is_empty() && int_digits.is_empty() {
            return Err(err());
        }
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(err());
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| err())?
        };
        let frac: BigInt = if frac_part.is_empty() {
            BigInt::zero()
        } else {
            frac_part.parse().map_err(|_| err())?
        };
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        let numer = whole * &denom + frac;
        let signed = if negative { -numer } else { numer };
        return Ok(Scalar::new(signed, denom));
    }
    if let Some(slash) = s.find('/') {
        let numer: BigInt = s[..slash].parse().map_err(|_| err())?;
        let denom: BigInt = s[slash + 1..].parse().map_err(|_| err())?;
        if denom.is_zero() {
            return Err(err());
        }
        return Ok(Scalar::new(numer, denom));
    }
    let numer: BigInt = s.parse().map_err(|_| err())?;
    Ok(Scalar::from_integer(numer))
}

/// Renders a scalar as `"3"` or `"-1/2"`; inverse of [`parse_scalar`] on
/// reduced forms.
pub fn scalar_to_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Nearest `f64` to the exact value. Good enough for trajectory seeding; the
/// exact modules never round-trip through this.
pub fn scalar_to_f64(s: &Scalar) -> f64 {
    let numer = s.numer();
    let denom = s.denom();
    // Exact for desk-scale fixtures; falls back to a quotient of
    // approximations when the parts exceed f64 range.
    let n = bigint_to_f64(numer);
    let d = bigint_to_f64(denom);
    n / d
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}
