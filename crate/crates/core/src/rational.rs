//! Small helpers around `BigInt` / `BigRational`: parsing, decimal output,
//! dyadic rounding.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// Parses `"3"`, `"-7/12"` or a plain decimal such as `"0.125"` / `"1e-12"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = Q::from_integer(digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    if shift >= 0 {
        value *= Q::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        value /= Q::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -value } else { value })
}

pub fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}")))
}

/// `n/d` or `n` when the denominator is one.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serde helper writing a rational as its [`fmt_q`] string.
pub fn serialize_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

/// Serde helper accepting `"n/d"`, decimal strings or JSON integers.
pub fn deserialize_q<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
    use serde::Deserialize;
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Str(String),
        Int(i64),
    }
    match Raw::deserialize(d)? {
        Raw::Str(s) => parse_q(&s).map_err(serde::de::Error::custom),
        Raw::Int(n) => Ok(q(n)),
    }
}

/// Decimal rendering with `digits` fractional digits, rounded toward
/// negative infinity (`up == false`) or positive infinity (`up == true`).
/// Serde adapter writing integer pairs as decimal strings.
pub mod int_pairs {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[[BigInt; 2]], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|[a, b]| [a.to_string(), b.to_string()]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<[BigInt; 2]>, D::Error> {
        let raw = Vec::<[crate::poly::IntLike; 2]>::deserialize(d)?;
        raw.iter()
            .map(|[a, b]| Ok([a.to_bigint()?, b.to_bigint()?]))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

pub fn fmt_decimal(x: &Q, digits: usize, up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x * Q::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = n.is_negative();
    let (int, frac) = n.abs().div_rem(&scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if digits > 0 {
        let f = frac.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - f.len()));
        out.push_str(&f);
    }
    out
}

pub fn floor_dyadic(x: &Q, bits: u32) -> Q {
    let scale = BigInt::one() << bits;
    Q::new((x * Q::from_integer(scale.clone())).floor().to_integer(), scale)
}

pub fn ceil_dyadic(x: &Q, bits: u32) -> Q {
    let scale = BigInt::one() << bits;
    Q::new((x * Q::from_integer(scale.clone())).ceil().to_integer(), scale)
}

pub fn pow2(e: i64) -> Q {
    if e >= 0 {
        Q::from_integer(BigInt::one() << (e as u64))
    } else {
        Q::new(BigInt::one(), BigInt::one() << ((-e) as u64))
    }
}

pub fn to_f64(x: &Q) -> f64 {
    // Scale to keep precision for huge numerators/denominators.
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            let bits = x.numer().bits() as i64 - x.denom().bits() as i64;
            let shifted = x / pow2(bits);
            let n = shifted.numer().to_f64().unwrap_or(0.0);
            let d = shifted.denom().to_f64().unwrap_or(1.0);
            (n / d) * 2f64.powi(bits as i32)
        }
    }
}

/// Exact conversion of a finite double.
pub fn from_f64(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(Q::zero)
}

pub fn sign(x: &Q) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    n.sqrt()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Square-free part, e.g. 12 -> 3, -8 -> -2. Trial division; fine for the
/// discriminant sizes that show up here.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let mut rest = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
        if p.bits() > 40 {
            // Beyond trial-division range; keep the remaining cofactor whole.
            break;
        }
    }
    out *= rest;
    if n.is_negative() {
        -out
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("-7/12").unwrap(), qr(-7, 12));
        assert_eq!(parse_q("0.125").unwrap(), qr(1, 8));
        assert_eq!(parse_q("1e-3").unwrap(), qr(1, 1000));
        assert_eq!(parse_q("42").unwrap(), q(42));
        assert!(parse_q("x").is_err());
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn decimal_rounding_is_directed() {
        let third = qr(1, 3);
        assert_eq!(fmt_decimal(&third, 3, false), "0.333");
        assert_eq!(fmt_decimal(&third, 3, true), "0.334");
        assert_eq!(fmt_decimal(&-third, 3, false), "-0.334");
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(12)), BigInt::from(3));
        assert_eq!(squarefree_part(&BigInt::from(45)), BigInt::from(5));
        assert_eq!(squarefree_part(&BigInt::from(-8)), BigInt::from(-2));
    }
}
