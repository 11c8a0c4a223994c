use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact field arithmetic. Elements are plain values; the field object
/// carries whatever context (the modulus) the operations need.
pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    fn spec(&self) -> FieldSpec;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;
    fn elem_json(&self, a: &Self::Elem) -> serde_json::Value;
}

/// The prime field GF(p) for a prime `p <= 251`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

pub const MAX_PRIME: u32 = 251;

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::UnsupportedField(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        a * b % self.p
    }

    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // a^(p-2)
        let mut base = *a as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(acc as u32)
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.p as u64)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn format_elem(&self, a: &u32) -> String {
        a.to_string()
    }

    /// Accepts any integer and reduces it mod p.
    fn parse_elem(&self, s: &str) -> Option<u32> {
        s.trim().parse::<i64>().ok().map(|v| self.from_i64(v))
    }

    fn elem_json(&self, a: &u32) -> serde_json::Value {
        serde_json::Value::from(*a)
    }
}

/// The rationals with arbitrary-precision exact arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }

    fn format_elem(&self, a: &BigRational) -> String {
        format_rational(a)
    }

    fn parse_elem(&self, s: &str) -> Option<BigRational> {
        parse_rational(s.trim())
    }

    fn elem_json(&self, a: &BigRational) -> serde_json::Value {
        serde_json::Value::from(format_rational(a))
    }
}

/// Runtime field selector, as written on the command line and in instance
/// files (`gf<p>` or `rational`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

impl FieldSpec {
    pub fn prime_field(&self) -> Result<PrimeField> {
        match *self {
            FieldSpec::Prime(p) => PrimeField::new(p),
            FieldSpec::Rational => Err(Error::InfiniteField),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "gf{p}"),
            FieldSpec::Rational => f.write_str("rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if s == "rational" || s == "q" || s == "r" {
            return Ok(FieldSpec::Rational);
        }
        let digits = s
            .strip_prefix("gf")
            .ok_or_else(|| Error::InvalidParameter(format!("unknown field `{s}`")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("unknown field `{s}`")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

/// `<x, y> = sum_i x_i y_i`.
pub fn inner_product<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem]) -> Result<F::Elem> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    Ok(dot(field, x, y))
}

pub(crate) fn dot<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    x.iter()
        .zip(y)
        .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
}

pub fn is_self_orthogonal<F: Field>(field: &F, x: &[F::Elem]) -> bool {
    field.is_zero(&dot(field, x, x))
}

/// Whether two vectors are scalar multiples of one another (every 2x2
/// minor vanishes). The zero vector is proportional to everything.
pub fn proportional<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem]) -> bool {
    x.len() == y.len()
        && (0..x.len()).all(|i| {
            (i + 1..x.len()).all(|j| field.is_zero(&field.sub(&field.mul(&x[i], &y[j]), &field.mul(&x[j], &y[i]))))
        })
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.parse().ok()?;
            let den: BigInt = b.parse().ok()?;
            (!den.is_zero()).then(|| BigRational::new(num, den))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-{}/{}", r.numer().abs(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
