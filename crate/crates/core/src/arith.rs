//! Small number-theoretic helpers and rational parsing.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
  if n < 2 {
    return false;
  }
  let mut d = 2;
  while d * d <= n {
    if n.is_multiple_of(d) {
      return false;
    }
    d += 1;
  }
  true
}

pub fn require_prime(p: u64) -> Result<u64> {
  if is_prime(p) {
    Ok(p)
  } else {
    Err(Error::NotPrime(p))
  }
}

/// Multiplicative inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
  let a = a % p;
  if a == 0 {
    return None;
  }
  // Fermat: a^(p-2)
  Some(pow_mod(a, p - 2, p))
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
  let mut acc = 1 % m;
  base %= m;
  while exp > 0 {
    if exp & 1 == 1 {
      acc = acc * base % m;
    }
    base = base * base % m;
    exp >>= 1;
  }
  acc
}

/// Parses `"a/b"`, `"a"` or a finite decimal like `"0.6"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
  let s = s.trim();
  let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
  if let Some((num, den)) = s.split_once('/') {
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
      return Err(bad());
    }
    return Ok(BigRational::new(num, den));
  }
  if let Some((int, frac)) = s.split_once('.') {
    if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
      return Err(bad());
    }
    let neg = int.trim_start().starts_with('-');
    let int: BigInt =
      if int.is_empty() || int == "-" { BigInt::zero() } else { int.parse().map_err(|_| bad())? };
    let frac_num: BigInt = frac.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let frac = BigRational::new(frac_num, den);
    let whole = BigRational::from_integer(int.abs());
    let v = whole + frac;
    return Ok(if neg { -v } else { v });
  }
  let n: BigInt = s.parse().map_err(|_| bad())?;
  Ok(BigRational::from_integer(n))
}

/// Canonical `"a/b"` rendering (denominator omitted when 1).
pub fn format_rational(r: &BigRational) -> String {
  if r.denom().is_one() {
    r.numer().to_string()
  } else {
    format!("{}/{}", r.numer(), r.denom())
  }
}

pub(crate) mod rational_string {
  use num_rational::BigRational;
  use serde::{Deserialize, Deserializer, Serializer};

  pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&super::format_rational(r))
  }

  pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    super::parse_rational(&s).map_err(serde::de::Error::custom)
  }
}

pub(crate) mod rational_vec {
  use num_rational::BigRational;
  use serde::ser::SerializeSeq;
  use serde::{Deserialize, Deserializer, Serializer};

  pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
      seq.serialize_element(&super::format_rational(r))?;
    }
    seq.end()
  }

  pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
    let v = Vec::<String>::deserialize(d)?;
    v.iter().map(|s| super::parse_rational(s).map_err(serde::de::Error::custom)).collect()
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn primes() {
    let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
    assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    assert!(require_prime(4).is_err());
  }

  #[test]
  fn inverses() {
    assert_eq!(inv_mod(3, 5), Some(2));
    assert_eq!(inv_mod(2, 3), Some(2));
    assert_eq!(inv_mod(0, 7), None);
    for p in [2u64, 3, 5, 7, 11] {
      for a in 1..p {
        assert_eq!(a * inv_mod(a, p).unwrap() % p, 1);
      }
    }
  }

  #[test]
  fn rationals() {
    let r = parse_rational("3/10").unwrap();
    assert_eq!(r, BigRational::new(3.into(), 10.into()));
    assert_eq!(parse_rational("0.3").unwrap(), r);
    assert_eq!(parse_rational("2").unwrap(), BigRational::from_integer(2.into()));
    assert_eq!(parse_rational("-1.5").unwrap(), BigRational::new((-3).into(), 2.into()));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
    assert_eq!(format_rational(&r), "3/10");
    assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
  }
}
