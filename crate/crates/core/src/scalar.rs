//! Exact coefficient arithmetic over the supported ground fields.
//!
//! A [`FieldTag`] names either a prime field `F_p` or the rationals `Q`, and
//! owns all scalar arithmetic. `F_p` values are canonical representatives in
//! `0..p` stored in a `u64`; rationals are arbitrary-precision fractions.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Euclid;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{AlgError, Result};

/// Ground field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    /// Prime field `F_p`.
    Prime(u32),
    /// The rational numbers.
    Rationals,
}

/// A field element. Values are only meaningful together with the
/// [`FieldTag`] that produced them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTag {
    /// `F_p` for a prime `p`.
    pub fn prime(p: u32) -> Result<FieldTag> {
        if is_prime(p as u64) {
            Ok(FieldTag::Prime(p))
        } else {
            Err(AlgError::NotPrime(p as u64))
        }
    }

    /// Characteristic of the field; 0 for `Q`.
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldTag::Prime(p) => *p,
            FieldTag::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldTag::Prime(_) => Scalar::Mod(0),
            FieldTag::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldTag::Prime(_) => Scalar::Mod(1),
            FieldTag::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_integer(&self, n: i64) -> Scalar {
        match self {
            FieldTag::Prime(p) => {
                let p = *p as i128;
                Scalar::Mod(((n as i128).rem_euclid(p)) as u64)
            }
            FieldTag::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
        }
    }

    fn from_bigints(&self, num: BigInt, den: BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        match self {
            FieldTag::Prime(p) => {
                let p = BigInt::from(*p);
                let n = num.rem_euclid(&p);
                let d = den.rem_euclid(&p);
                let n: u64 = n.try_into().expect("reduced representative fits u64");
                let d: u64 = d.try_into().expect("reduced representative fits u64");
                let inv = self.inv(&Scalar::Mod(d))?;
                Ok(self.mul(&Scalar::Mod(n), &inv))
            }
            FieldTag::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(x) => *x == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldTag::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod((x + y) % (*p as u64))
            }
            (FieldTag::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldTag::Prime(p), Scalar::Mod(x)) => {
                let p = *p as u64;
                Scalar::Mod((p - x % p) % p)
            }
            (FieldTag::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldTag::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % (*p as u128)) as u64)
            }
            (FieldTag::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(AlgError::DivisionByZero);
        }
        match (self, a) {
            (FieldTag::Prime(p), Scalar::Mod(x)) => {
                // Fermat: x^(p-2) mod p.
                let p = *p as u64;
                let mut base = *x % p;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = ((acc as u128 * base as u128) % p as u128) as u64;
                    }
                    base = ((base as u128 * base as u128) % p as u128) as u64;
                    exp >>= 1;
                }
                Ok(Scalar::Mod(acc))
            }
            (FieldTag::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    /// True for rationals strictly below zero; `F_p` representatives are
    /// never negative.
    pub fn is_negative(&self, a: &Scalar) -> bool {
        matches!(a, Scalar::Rat(r) if r.is_negative())
    }

    /// Parse `n` or `n/d` (signs allowed on the numerator).
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = |msg: &str| AlgError::Parse { pos: 0, msg: msg.to_string() };
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text.trim(), "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad("expected an integer"))?;
        let den = BigInt::from_str(den).map_err(|_| bad("expected an integer denominator"))?;
        self.from_bigints(num, den)
    }

    /// Canonical text form: the representative for `F_p`, `n` or `n/d` for `Q`.
    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(x) => x.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Like [`FieldTag::format_scalar`] but on the absolute value.
    pub fn format_abs(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) if r.is_negative() => self.format_scalar(&Scalar::Rat(-r)),
            _ => self.format_scalar(a),
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Prime(p) => write!(f, "F{p}"),
            FieldTag::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = AlgError;

    fn from_str(s: &str) -> Result<FieldTag> {
        if s == "Q" {
            return Ok(FieldTag::Rationals);
        }
        if let Some(rest) = s.strip_prefix('F') {
            if let Ok(p) = rest.parse::<u32>() {
                return FieldTag::prime(p);
            }
        }
        Err(AlgError::UnknownField(s.to_string()))
    }
}

impl Serialize for FieldTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_parsing_accepts_primes_and_q() {
        assert_eq!("F2".parse::<FieldTag>().unwrap(), FieldTag::Prime(2));
        assert_eq!("F17".parse::<FieldTag>().unwrap(), FieldTag::Prime(17));
        assert_eq!("Q".parse::<FieldTag>().unwrap(), FieldTag::Rationals);
        assert!(matches!("F4".parse::<FieldTag>(), Err(AlgError::NotPrime(4))));
        assert!(matches!("R".parse::<FieldTag>(), Err(AlgError::UnknownField(_))));
    }

    #[test]
    fn mod_p_arithmetic_is_canonical() {
        let f3 = FieldTag::Prime(3);
        let two = f3.from_integer(-1);
        assert_eq!(two, Scalar::Mod(2));
        assert_eq!(f3.add(&two, &two), Scalar::Mod(1));
        assert_eq!(f3.mul(&two, &two), Scalar::Mod(1));
        assert_eq!(f3.inv(&two).unwrap(), Scalar::Mod(2));
        assert!(f3.is_zero(&f3.add(&f3.one(), &two)));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let q = FieldTag::Rationals;
        let half = q.parse_scalar("1/2").unwrap();
        let third = q.parse_scalar("1/3").unwrap();
        let sum = q.add(&half, &third);
        assert_eq!(q.format_scalar(&sum), "5/6");
        assert_eq!(q.format_scalar(&q.inv(&sum).unwrap()), "6/5");
        assert!(q.inv(&q.zero()).is_err());
    }

    #[test]
    fn scalars_parse_in_every_field() {
        let f5 = FieldTag::Prime(5);
        // 1/2 = 3 mod 5.
        assert_eq!(f5.parse_scalar("1/2").unwrap(), Scalar::Mod(3));
        assert_eq!(f5.parse_scalar("-1").unwrap(), Scalar::Mod(4));
        assert!(f5.parse_scalar("1/0").is_err());
        assert!(f5.parse_scalar("x").is_err());
    }
}
