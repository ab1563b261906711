//! Sparse multivariate polynomials over [`Scalar`] in the variables
//! `x0, x1, x2, x3, t`.
//!
//! Terms are stored in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded lexicographic order with `x0 > x1 > x2 > x3 > t`. Zero coefficients
//! are never stored, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;

pub const NVARS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X0 = 0,
    X1 = 1,
    X2 = 2,
    X3 = 3,
    T = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X0, Var::X1, Var::X2, Var::X3, Var::T];
    pub const PROJECTIVE: [Var; 4] = [Var::X0, Var::X1, Var::X2, Var::X3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x0", "x1", "x2", "x3", "t"][self as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // grlex: larger total degree is larger, ties broken by x0 first
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `Σ coeffs[k]·vars[k]`.
    pub fn linear(coeffs: &[(Var, Scalar)]) -> Self {
        let mut p = Poly::zero();
        for (v, c) in coeffs {
            p.add_term(Monomial::var(*v), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Substitutes `values[v]` for every variable `v` that has `Some` value.
    pub fn eval_partial(&self, values: &[Option<Scalar>; NVARS]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            for v in Var::ALL {
                if let Some(val) = &values[v.index()] {
                    for _ in 0..m.exp(v) {
                        coeff *= val;
                    }
                    rest.0[v.index()] = 0;
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Full evaluation; variables not listed evaluate to zero.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        let mut full: [Option<Scalar>; NVARS] = Default::default();
        for v in Var::ALL {
            full[v.index()] = Some(values.get(v.index()).cloned().unwrap_or_default());
        }
        self.eval_partial(&full).coeff(&Monomial::one())
    }

    /// Substitutes a polynomial for each variable that has `Some` image.
    pub fn substitute(&self, images: &[Option<Poly>; NVARS]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut term = Poly::constant(c.clone());
            for v in Var::ALL {
                if let Some(img) = &images[v.index()] {
                    term = &term * &img.pow(m.exp(v));
                    rest.0[v.index()] = 0;
                }
            }
            out = &out + &(&term * &Poly::monomial(rest, Scalar::one()));
        }
        out
    }

    /// Converts to a dense polynomial in `v`; fails if another variable occurs.
    pub fn to_univariate(&self, v: Var) -> Result<UniPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in &self.terms {
            if m.degree() != m.exp(v) {
                return Err(Error::NotUnivariate(self.to_string()));
            }
            let k = m.exp(v) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Scalar::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn from_univariate(p: &UniPoly, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = Monomial::one();
            m.0[v.index()] = k as u32;
            out.add_term(m, c.clone());
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", v.name())?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Terms in descending monomial order, e.g. `x0^2 - x1^2` or `(1+2i)*x0*t`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative_real = c.is_real() && c.re().is_negative();
            let (sign, mag) = if negative_real { ("-", -c) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.degree() == 0 {
                if mag.is_real() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
                continue;
            }
            if !mag.is_one() {
                if mag.is_real() {
                    write!(f, "{mag}*")?;
                } else {
                    write!(f, "({mag})*")?;
                }
            }
            fmt_monomial(m, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Greatest common divisor of polynomials in `t`, normalized monic.
/// The gcd of an empty or all-zero list is `0`.
pub fn gcd_univariate(ps: &[Poly]) -> Result<Poly> {
    let mut g = UniPoly::zero();
    for p in ps {
        let u = p.to_univariate(Var::T)?;
        g = g.gcd(&u);
    }
    Ok(Poly::from_univariate(&g, Var::T))
}
