//! Exact scalars: rationals and polynomials over the rationals in named
//! parameters.

mod parse;
mod poly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use parse::parse_expr;
pub use poly::{Monomial, Poly};

pub type Rational = num_rational::BigRational;
pub type Var = Arc<str>;
pub type Assignment = BTreeMap<String, Rational>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` or `p`, in lowest terms.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational number or a polynomial in parameters. A polynomial without
/// parameter-dependent terms is always stored as a rational.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(Rational),
    Poly(Poly),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(int(n))
    }

    pub fn var(name: &str) -> Self {
        Scalar::Poly(Poly::var(name))
    }

    pub fn from_poly(p: Poly) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Rational(c),
            None => Scalar::Poly(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Poly(_) => None,
        }
    }

    pub fn to_poly(&self) -> Poly {
        match self {
            Scalar::Rational(r) => Poly::constant(r.clone()),
            Scalar::Poly(p) => p.clone(),
        }
    }

    pub fn into_poly(self) -> Poly {
        match self {
            Scalar::Rational(r) => Poly::constant(r),
            Scalar::Poly(p) => p,
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        match self {
            Scalar::Rational(_) => BTreeSet::new(),
            Scalar::Poly(p) => p.vars(),
        }
    }

    pub fn substitute(&self, assignment: &Assignment) -> Result<Rational> {
        match self {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Poly(p) => p.substitute(assignment),
        }
    }

    /// Substitutes the assigned parameters and keeps the rest formal.
    pub fn substitute_partial(&self, assignment: &Assignment) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Poly(p) => Scalar::from_poly(p.substitute_partial(assignment)),
        }
    }

    pub fn substitute_polys(&self, map: &BTreeMap<String, Poly>) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Poly(p) => Scalar::from_poly(p.substitute_polys(map)),
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r * c),
            Scalar::Poly(p) => Scalar::from_poly(p.scale(c)),
        }
    }

    pub fn div_rational(&self, c: &Rational) -> Result<Scalar> {
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.scale(&c.recip()))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Poly> for Scalar {
    fn from(p: Poly) -> Self {
        Scalar::from_poly(p)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Rational(a), Scalar::Poly(p)) | (Scalar::Poly(p), Scalar::Rational(a)) => {
                let mut q = p.clone();
                q.add_term(Monomial::one(), a.clone());
                Scalar::from_poly(q)
            }
            (Scalar::Poly(p), Scalar::Poly(q)) => Scalar::from_poly(p + q),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => Scalar::from_poly(&self.to_poly() - &rhs.to_poly()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Poly(p)) | (Scalar::Poly(p), Scalar::Rational(a)) => {
                Scalar::from_poly(p.scale(a))
            }
            (Scalar::Poly(p), Scalar::Poly(q)) => Scalar::from_poly(p * q),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Poly(p) => Scalar::Poly(-p),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&s("1/2") + &s("1/3"), s("5/6"));
        assert_eq!(&s("2/3") * &s("9/4"), s("3/2"));
    }

    #[test]
    fn additive_inverse_collapses() {
        let p = s("3*a1*a2 - 1/2");
        assert!((&p + &-&p).is_zero());
        assert_eq!(&p + &-&p, Scalar::zero());
    }

    #[test]
    fn like_terms_merge() {
        assert_eq!(&s("2*a1") + &s("a1 + 1"), s("3*a1 + 1"));
        assert_eq!(&s("a1 + 1") * &s("a1 - 1"), s("a1^2 - 1"));
        assert!((&Scalar::zero() * &s("a1^3 + b")).is_zero());
    }

    #[test]
    fn zero_tests() {
        assert!(s("0/1").is_zero());
        assert!(s("a1 - a1").is_zero());
        assert!(!s("a1 - 1").is_zero());
    }

    #[test]
    fn substitution() {
        let mut asg = Assignment::new();
        asg.insert("a1".into(), rat(1, 2));
        assert_eq!(s("2*a1 + 3").substitute(&asg).unwrap(), int(4));
        assert_eq!(s("7/3").substitute(&asg).unwrap(), rat(7, 3));
        asg.insert("a1".into(), int(2));
        asg.insert("a2".into(), int(0));
        assert_eq!(s("a1*a2").substitute(&asg).unwrap(), int(0));
        let err = s("a1*a3").substitute(&asg).unwrap_err();
        assert!(matches!(err, Error::MissingParameter(ref v) if v == "a3"));
    }

    #[test]
    fn constant_poly_normalizes() {
        let p = &s("a + 2") - &s("a");
        assert!(matches!(p, Scalar::Rational(_)));
    }

    #[test]
    fn display_round_trips() {
        for text in ["3*a1^2*b - 1/2*c + 7/3", "-x", "0", "-5/7", "a*b*c - a^3"] {
            let v = s(text);
            assert_eq!(s(&v.to_string()), v);
        }
        assert_eq!(
            s("7/3 + 3*b*a1^2 - c/2").to_string(),
            "3*a1^2*b - 1/2*c + 7/3"
        );
    }
}
