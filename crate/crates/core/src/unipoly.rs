//! Dense univariate polynomials over [`Scalar`], coefficients stored from the
//! constant term upward with no trailing zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// `t - a`
    pub fn linear_root(a: &Scalar) -> Self {
        UniPoly::new(vec![-a, Scalar::one()])
    }

    /// `a + b·t`
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        UniPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = d.lead().inv().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        let Some(n) = self.degree() else {
            return (UniPoly::zero(), UniPoly::zero());
        };
        if n < dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let q = &rem[k + dd] * &inv_lead;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &(&q * dc);
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            // keep sizes in check
            a = b.monic();
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, p: &UniPoly) -> bool {
        if self.is_zero() {
            return p.is_zero();
        }
        p.div_rem(self).1.is_zero()
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_real)
    }

    /// Splits off all rational roots of a polynomial with rational
    /// coefficients. Returns the roots (sorted, without multiplicity) and the
    /// monic cofactor with the corresponding linear factors removed once.
    /// Candidate enumeration is skipped when the coefficients are too large
    /// to factor by trial division; those roots then stay in the cofactor.
    pub fn split_rational_roots(&self) -> (Vec<BigRational>, UniPoly) {
        let mut rest = self.squarefree();
        let mut roots = Vec::new();
        if !rest.is_rational() || rest.is_constant() {
            return (roots, rest);
        }
        if rest.coeffs[0].is_zero() {
            roots.push(BigRational::zero());
            rest = rest.div_rem(&UniPoly::linear_root(&Scalar::zero())).0;
        }
        let ints = integer_coeffs(&rest);
        let (Some(lead), Some(cst)) = (ints.last(), ints.first()) else {
            return (roots, rest);
        };
        let (Some(ps), Some(qs)) = (small_divisors(cst), small_divisors(lead)) else {
            return (roots, rest.monic());
        };
        let mut candidates = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = BigRational::new(p.clone(), q.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            if rest.is_constant() {
                break;
            }
            let s = Scalar::from_rational(r.clone());
            if rest.eval(&s).is_zero() {
                rest = rest.div_rem(&UniPoly::linear_root(&s)).0;
                roots.push(r);
            }
        }
        roots.sort();
        (roots, rest.monic())
    }
}

fn integer_coeffs(p: &UniPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.re().denom()));
    p.coeffs
        .iter()
        .map(|c| (c.re() * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Scalar::zero();
        UniPoly::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::poly::Poly::from_univariate(self, crate::poly::Var::T))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
