//! Exact rational scalars: parsing and text forms.
//!
//! Rationals serialize as `p/q` (or a plain integer); decimal literals are
//! accepted on input and converted exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::NumericsError;

/// Arbitrary-precision exact fraction, canonical form maintained by
/// `num_rational` (denominator positive, gcd 1).
pub type Rational = num_rational::BigRational;

/// Parse `p/q` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational, NumericsError> {
    let s = s.trim();
    let err = || NumericsError::Parse(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().map_err(|_| err())?;
        let den: BigInt = q.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        Ok(Rational::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| err())?;
        Ok(Rational::from(num))
    }
}

/// Parse `p/q`, an integer, or a decimal literal like `-0.617533`, exactly.
pub fn parse_decimal_or_rational(s: &str) -> Result<Rational, NumericsError> {
    let s = s.trim();
    if !s.contains('.') {
        return parse_rational(s);
    }
    let err = || NumericsError::Parse(s.to_string());
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').ok_or_else(err)?;
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let num: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| err())? };
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// `p/q` text, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::new(3.into(), 4.into()));
        assert_eq!(parse_rational("-7").unwrap(), Rational::from(BigInt::from(-7)));
        assert_eq!(
            parse_decimal_or_rational("-0.617533").unwrap(),
            Rational::new((-617533).into(), 1000000.into())
        );
        assert_eq!(parse_decimal_or_rational("1.0").unwrap(), Rational::one());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_decimal_or_rational("abc").is_err());
    }

    #[test]
    fn format_round_trip() {
        let r = Rational::new(22.into(), 7.into());
        assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        assert_eq!(format_rational(&Rational::from(BigInt::from(5))), "5");
    }
}
