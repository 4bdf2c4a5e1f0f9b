//! Exact coefficient fields: the rationals and prime fields.
//!
//! Every coefficient is stored as a `BigRational`. Over `F_p` the value is
//! kept as an integer representative in `[0, p)` with denominator 1, so the
//! same storage type serves both fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q`, `Q`, `fp:<p>` or `F<p>`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("fp:")
            .or_else(|| t.strip_prefix("F"))
            .or_else(|| t.strip_prefix("f"))
            .ok_or_else(|| Error::domain(format!("unknown field `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::domain(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        self.normalize(Coeff::from_integer(BigInt::from(v)))
    }

    pub fn from_bigint(&self, v: BigInt) -> Coeff {
        self.normalize(Coeff::from_integer(v))
    }

    /// Brings an arbitrary rational into the field's canonical representative.
    /// Over `F_p` a denominator divisible by `p` is a caller bug and panics.
    pub fn normalize(&self, c: Coeff) -> Coeff {
        match self {
            Field::Rationals => c,
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator vanishes modulo {p}");
                let inv = mod_inverse(&den, &p);
                Coeff::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_int(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_int(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_int(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce_int(-a)
    }

    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            Field::Rationals => a.recip(),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                Coeff::from_integer(mod_inverse(a.numer(), &p))
            }
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    // Integer-valued results of ring operations on canonical representatives.
    fn reduce_int(&self, c: Coeff) -> Coeff {
        match self {
            Field::Rationals => c,
            Field::Prime(p) => {
                debug_assert!(c.is_integer());
                Coeff::from_integer(c.numer().mod_floor(&BigInt::from(*p)))
            }
        }
    }

    /// Signed small-integer rendering used by the printer: over `F_p`,
    /// representatives above `p/2` are shown as negatives.
    pub fn display_value(&self, c: &Coeff) -> Coeff {
        match self {
            Field::Rationals => c.clone(),
            Field::Prime(p) => {
                let v = c.numer().to_u64().unwrap_or(0);
                if v > p / 2 {
                    Coeff::from_integer(BigInt::from(v) - BigInt::from(*p))
                } else {
                    c.clone()
                }
            }
        }
    }

    pub fn is_negative_display(&self, c: &Coeff) -> bool {
        self.display_value(c).is_negative()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.mod_floor(p).extended_gcd(p);
    assert!(e.gcd.is_one(), "{a} is not invertible modulo {p}");
    e.x.mod_floor(p)
}

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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(5);
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!(f.add(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &b), f.from_i64(2));
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.normalize(Coeff::new(1.into(), 2.into())), f.from_i64(3));
    }

    #[test]
    fn parses_field_names() {
        assert_eq!(Field::parse("q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("fp:5").unwrap(), Field::Prime(5));
        assert_eq!(Field::parse("F7").unwrap(), Field::Prime(7));
        assert!(Field::parse("fp:6").is_err());
        assert!(Field::parse("r").is_err());
    }

    #[test]
    fn display_uses_symmetric_residues() {
        let f = Field::Prime(5);
        assert_eq!(
            f.display_value(&f.from_i64(4)),
            Coeff::from_integer((-1).into())
        );
    }
}
