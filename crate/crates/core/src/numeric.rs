//! Exact integer and rational helpers shared by every module.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used for every ε parameter and every exact ratio.
pub type Q = BigRational;

/// Builds the rational `num/den`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer rational `v`.
pub fn qi(v: usize) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Builds the rational `num/den` from unsigned counts.
pub fn qu(num: usize, den: usize) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from two big unsigned integers.
pub fn qb(num: &BigUint, den: &BigUint) -> Q {
    Q::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.125"` into an
/// exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse {s:?} as a rational"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((a, b)) = t.split_once('/') {
        let num: BigInt = a.trim().parse().map_err(|_| bad())?;
        let den: BigInt = b.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(num, den));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all_digits = |x: &str| x.chars().all(|c| c.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let v = Q::new(num, den);
    Ok(if neg { -v } else { v })
}

/// Renders a rational as `"p/q"` (always with a denominator).
pub fn fmt_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Serializes a rational as the string `"p/q"`.
pub fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(v))
}

/// Serializes an optional rational as `"p/q"` or `null`.
pub fn ser_opt_q<S: serde::Serializer>(
    v: &Option<Q>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&fmt_q(v)),
        None => s.serialize_none(),
    }
}

/// Serializes a big integer as a decimal string.
pub fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Lossy conversion of a rational to binary64.
pub fn q_to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `total! / prod(parts!)`; zero when the parts do not
/// sum to `total`.
pub fn multinomial(total: usize, parts: &[usize]) -> BigUint {
    let mut rest = total;
    let mut acc = BigUint::one();
    for &p in parts {
        if p > rest {
            return BigUint::zero();
        }
        acc *= binomial(rest, p);
        rest -= p;
    }
    if rest == 0 {
        acc
    } else {
        BigUint::zero()
    }
}

/// Shannon entropy `-Σ x ln x` of nonnegative weights (zero entries skipped).
pub fn shannon(weights: impl IntoIterator<Item = f64>) -> f64 {
    weights
        .into_iter()
        .filter(|&w| w > 0.0)
        .map(|w| -w * w.ln())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/10").unwrap(), q(1, 10));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn binomials_and_multinomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 5), BigUint::zero());
        assert_eq!(multinomial(4, &[2, 1, 1]), BigUint::from(12u32));
        assert_eq!(multinomial(4, &[2, 1]), BigUint::zero());
        assert_eq!(factorial(6), BigUint::from(720u32));
    }
}
