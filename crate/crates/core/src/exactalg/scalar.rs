//! Exact scalars: arbitrary-precision rationals and prime-field residues.
//!
//! A [`Scalar`] always knows its [`Field`]. Arithmetic between scalars of
//! different fields is a programming error and panics; the public matrix and
//! polynomial constructors validate contexts up front and report
//! [`Error::Context`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The scalar context of a computation: ℚ or 𝔽_p with p an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Checked constructor for 𝔽_p.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp {
                value: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Fp {
                    value: r.to_u32().expect("residue fits in u32"),
                    p,
                }
            }
        }
    }

    /// `num/den` in this field; `None` when the denominator vanishes.
    pub fn ratio(self, num: i64, den: i64) -> Option<Scalar> {
        if den == 0 {
            return None;
        }
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Field::Rational)
    }

    /// Parses a coefficient string in this field: `"-3/5"` over ℚ, a residue over 𝔽_p.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            Field::Rational => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n = BigInt::from_str(n).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
                let d = BigInt::from_str(d).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("{s:?}: zero denominator")));
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            Field::Prime(_) => {
                if s.contains('/') {
                    return Err(Error::Parse(format!(
                        "{s:?}: prime-field coefficients are plain residues"
                    )));
                }
                let v = BigInt::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
                Ok(self.from_bigint(&v))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("field must be Q or a prime, got {s:?}")))?;
        Field::prime(p)
    }
}

// JSON: "Q" for the rationals, a bare number for a prime.
impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Field::Rational => s.serialize_str("Q"),
            Field::Prime(p) => s.serialize_u32(*p),
        }
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Field, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        let field = match Raw::deserialize(d)? {
            Raw::Num(p) => Field::prime(p),
            Raw::Str(s) => s.parse(),
        };
        field.map_err(serde::de::Error::custom)
    }
}

/// Trial division; the primes used here are tiny.
pub fn is_prime(n: u64) -> bool {
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

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always reduced with a positive denominator (maintained by `BigRational`).
    Rat(BigRational),
    Fp { value: u32, p: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => (!r.is_zero()).then(|| Scalar::Rat(r.recip())),
            Scalar::Fp { value, p } => {
                if *value == 0 {
                    return None;
                }
                // Fermat: a^(p-2)
                Some(Scalar::Fp {
                    value: pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32,
                    p: *p,
                })
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|inv| self * &inv)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The rational value, if this is a ℚ scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    /// The integer value of a ℚ scalar with denominator 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// The residue of an 𝔽_p scalar.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Fp { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    /// Image of a rational under ℤ_(p) → 𝔽_p. `None` if p divides the denominator.
    pub fn reduce_mod(&self, p: u32) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                let f = Field::Prime(p);
                f.from_bigint(r.numer()).checked_div(&f.from_bigint(r.denom()))
            }
            Scalar::Fp { p: q, .. } if *q == p => Some(self.clone()),
            Scalar::Fp { .. } => None,
        }
    }

    /// Sign of a rational (−1, 0, 1); residues report 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Fp { value, .. } => (*value != 0) as i32,
        }
    }

    fn check_same(&self, rhs: &Scalar) {
        if let (Scalar::Fp { p, .. }, Scalar::Fp { p: q, .. }) = (self, rhs) {
            assert_eq!(p, q, "mixed prime fields F_{p} and F_{q}");
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $fp:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat($rat(a, b)),
                    (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => {
                        self.check_same(rhs);
                        Scalar::Fp {
                            value: $fp(*a as u64, *b as u64, *p as u64) as u32,
                            p: *p,
                        }
                    }
                    _ => panic!("mixed rational and prime-field scalars"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(
    Add,
    add,
    |a: &BigRational, b: &BigRational| a + b,
    |a: u64, b: u64, p: u64| (a + b) % p
);
binop!(
    Sub,
    sub,
    |a: &BigRational, b: &BigRational| a - b,
    |a: u64, b: u64, p: u64| (a + p - b) % p
);
binop!(
    Mul,
    mul,
    |a: &BigRational, b: &BigRational| a * b,
    |a: u64, b: u64, p: u64| a * b % p
);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (*p - *value) % *p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse_scalar("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = &a + &q.ratio(3, 2).unwrap();
        assert!(b.is_zero());
        assert_eq!(q.parse_scalar("10/5").unwrap().to_string(), "2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a.residue(), Some(6));
        assert_eq!((&a * &a).residue(), Some(1));
        let inv3 = f.from_i64(3).inv().unwrap();
        assert_eq!(inv3.residue(), Some(5));
        assert!(f.zero().inv().is_none());
        assert_eq!(f.from_i64(3).pow(6).residue(), Some(1));
    }

    #[test]
    fn invalid_primes_rejected() {
        assert!(matches!(Field::prime(2), Err(Error::InvalidPrime(2))));
        assert!(matches!(Field::prime(9), Err(Error::InvalidPrime(9))));
        assert!(Field::prime(5).is_ok());
        assert!("Q".parse::<Field>().unwrap().is_rational());
        assert_eq!("11".parse::<Field>().unwrap(), Field::Prime(11));
    }

    #[test]
    fn reduction_of_rationals() {
        let q = Field::Rational;
        let a = q.ratio(1, 3).unwrap();
        assert_eq!(a.reduce_mod(5).unwrap().residue(), Some(2));
        assert!(a.reduce_mod(3).is_none());
    }

    #[test]
    #[should_panic(expected = "mixed")]
    fn mixing_fields_panics() {
        let _ = Field::Rational.one() + Field::Prime(5).one();
    }
}
