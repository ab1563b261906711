//! Gaussian rationals `a + b·i` with `a, b ∈ Q`.
//!
//! Every value is kept in canonical form (the underlying [`BigRational`]s are
//! always reduced with positive denominators), so `==` is structural equality.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseScalarError;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit `√−1`.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `a² + b²`, the field norm down to `Q`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::from_rational(self.re.recip()));
        }
        let n = self.norm();
        Some(Scalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    /// Size of the largest numerator or denominator, in bits. Used to pick
    /// pivots that keep coefficient growth down.
    pub fn height(&self) -> u64 {
        let h = |q: &BigRational| q.numer().bits().max(q.denom().bits());
        h(&self.re).max(h(&self.im))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
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
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Scalar {
    re: &a.re + &b.re,
    im: &a.im + &b.im,
});
forward_binop!(Sub, sub, |a, b| Scalar {
    re: &a.re - &b.re,
    im: &a.im - &b.im,
});
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return Scalar::from_rational(&a.re * &b.re);
    }
    Scalar {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
});
forward_binop!(Div, div, |a, b| {
    let inv = b.inv().expect("division by zero scalar");
    a * &inv
});

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_rat(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rat(&self.re, f);
        }
        if self.re.is_zero() {
            fmt_rat(&self.im, f)?;
            return write!(f, "i");
        }
        fmt_rat(&self.re, f)?;
        if self.im.is_negative() {
            write!(f, "-")?;
            fmt_rat(&-&self.im, f)?;
        } else {
            write!(f, "+")?;
            fmt_rat(&self.im, f)?;
        }
        write!(f, "i")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `[+-]digits[/digits]`. The denominator must be positive.
fn parse_rat(s: &str, whole: &str) -> Result<BigRational, ParseScalarError> {
    let err = || ParseScalarError(whole.to_string());
    let (sign, body) = match s.as_bytes().first() {
        Some(b'-') => (-1, &s[1..]),
        Some(b'+') => (1, &s[1..]),
        _ => (1, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(err());
    }
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| err())?,
        Some(_) => return Err(err()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num * sign, den))
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s = raw.trim();
        let err = || ParseScalarError(raw.to_string());
        if s.is_empty() {
            return Err(err());
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::from_rational(parse_rat(s, raw)?));
        };
        // Split `re(+|-)im` at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(k, _)| k)
            .last();
        match split {
            None => Ok(Scalar {
                re: BigRational::zero(),
                im: parse_rat(body, raw)?,
            }),
            Some(k) => {
                let re = parse_rat(&body[..k], raw)?;
                let im_part = &body[k + 1..];
                if im_part.starts_with(['+', '-']) {
                    return Err(err());
                }
                let mut im = parse_rat(im_part, raw)?;
                if body.as_bytes()[k] == b'-' {
                    im = -im;
                }
                Ok(Scalar { re, im })
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_grammar() {
        assert_eq!("3".parse::<Scalar>().unwrap(), Scalar::from_int(3));
        assert_eq!("-1/2".parse::<Scalar>().unwrap(), Scalar::ratio(-1, 2));
        assert_eq!("2/4".parse::<Scalar>().unwrap(), Scalar::ratio(1, 2));
        let z: Scalar = "2+1/3i".parse().unwrap();
        assert_eq!(z, Scalar::from_int(2) + Scalar::ratio(1, 3) * Scalar::i());
        let w: Scalar = "-1/2-3i".parse().unwrap();
        assert_eq!(w, Scalar::ratio(-1, 2) - Scalar::from_int(3) * Scalar::i());
        assert_eq!("-5i".parse::<Scalar>().unwrap(), Scalar::from_int(-5) * Scalar::i());
        for bad in ["", "i", "1/0", "1/-2", "x", "1+-2i", "1.5", "1//2", "2+i"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "3", "-1/2", "2+1/3i", "-7/3-2i", "5i", "-1/9i"] {
            let z: Scalar = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
    }

    #[test]
    fn field_ops() {
        let a: Scalar = "1+2i".parse().unwrap();
        let b: Scalar = "3-1/2i".parse().unwrap();
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        assert_eq!(a.inv().unwrap() * &a, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }
}
