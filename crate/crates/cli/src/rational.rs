//! Exact parsing of coupling values such as `0.03125`, `1/32` or `-2.5e-3`.
//!
//! The string is read as an exact rational and rounded once to the nearest
//! double.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub fn parse_real(s: &str) -> Result<f64, String> {
    let value = parse_rational(s)?;
    value
        .to_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| format!("`{s}` is out of range for a double"))
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let num = parse_decimal(num)?;
            let den = parse_decimal(den)?;
            if den.is_zero() {
                return Err(format!("`{s}` has a zero denominator"));
            }
            Ok(num / den)
        }
        None => parse_decimal(s),
    }
}

fn parse_decimal(s: &str) -> Result<BigRational, String> {
    let bad = || format!("`{s}` is not a decimal number or a ratio like 1/32");
    let s = s.trim();
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exponent - i32::try_from(frac_part.len()).map_err(|_| bad())?;
    // far outside the double range either way
    if shift.abs() > 5000 {
        return Err(format!("`{s}` is out of range for a double"));
    }
    let ten = BigRational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, shift.unsigned_abs() as usize);
    }
    Ok(if negative { -value } else { value })
}
