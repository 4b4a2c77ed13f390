//! Exact scalar fields: the rationals and prime fields `F_p`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field every computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// `F_p` for a prime `1 < p < 2^31`.
    Prime(u32),
}

/// An element of a [`Field`].
///
/// Scalars do not carry their field; all arithmetic goes through the
/// [`Field`] methods, which panic when handed a scalar of the wrong kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u32),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "{p} is not a prime below 2^31"
            )));
        }
        Ok(Field::Prime(p))
    }

    /// Zero for the rationals.
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(_) => Scalar::Mod(0),
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod(n.rem_euclid(p as i64) as u32),
        }
    }

    /// `num / den` with `den != 0`.
    pub fn fraction(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    pub fn is_zero(self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v) => *v == 1,
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 + *y as u64) % p as u64) as u32)
            }
            _ => panic!("scalar kind does not match field {self}"),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar kind does not match field {self}"),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % p as u64) as u32)
            }
            _ => panic!("scalar kind does not match field {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(x.recip()),
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod(pow_mod(*x, p - 2, p)),
            _ => panic!("scalar kind does not match field {self}"),
        })
    }

    pub fn div(self, a: &Scalar, b: &Scalar) -> Scalar {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    /// `(-1)^k` as a scalar.
    pub fn sign(self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    /// Parses the text form: `"p/q"` or `"n"` over the rationals, an
    /// integer residue over `F_p`.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let bad = || Error::Scalar(s.to_string());
        let t = s.trim();
        match self {
            Field::Rationals => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (t, "1"),
                };
                let num = BigInt::from_str(num).map_err(|_| bad())?;
                let den = BigInt::from_str(den).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rat(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let n = BigInt::from_str(t).map_err(|_| bad())?;
                let r = ((n % p) + p) % p;
                let r: u32 = r.try_into().map_err(|_| bad())?;
                Ok(Scalar::Mod(r))
            }
        }
    }

    /// Canonical text form, inverse to [`Field::parse`].
    pub fn format(self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v) => v.to_string(),
        }
    }

    /// All elements of a prime field in increasing order; `None` over the
    /// rationals.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(Scalar::Mod).collect()),
        }
    }

    pub fn is_negative(self, a: &Scalar) -> bool {
        matches!(a, Scalar::Rat(r) if r.is_negative())
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl serde::Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q` for the rationals and `fp:<p>` for a prime field.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let p = s
            .strip_prefix("fp:")
            .and_then(|p| p.parse::<u32>().ok())
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        Field::prime(p)
    }
}
