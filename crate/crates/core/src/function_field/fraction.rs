//! Homogeneous rational functions `num / den` of a fixed degree.
//!
//! Stored dehomogenized as `scalar · N(T) / D(T)` with `N`, `D` coprime,
//! primitive, positive leading coefficients. The grading is kept alongside,
//! so the homogeneous numerator and denominator (and with them the power of
//! `s'`) can always be recovered.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::HomogeneousPoly;
use super::zpoly::ZPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFraction {
    scalar: Rational,
    num: ZPoly,
    den: ZPoly,
    degree: i64,
}

impl GradedFraction {
    pub fn zero(degree: i64) -> GradedFraction {
        GradedFraction { scalar: Rational::zero(), num: ZPoly::zero(), den: ZPoly::one(), degree }
    }

    pub fn constant(c: Rational) -> GradedFraction {
        GradedFraction::from_poly(&HomogeneousPoly::constant(c))
    }

    pub fn from_poly(p: &HomogeneousPoly) -> GradedFraction {
        let (scalar, num) = p.to_zpoly();
        if num.is_zero() {
            return GradedFraction::zero(p.degree() as i64);
        }
        GradedFraction { scalar, num, den: ZPoly::one(), degree: p.degree() as i64 }
    }

    /// `num / den`, reduced. `None` when `den` is zero.
    pub fn new(num: &HomogeneousPoly, den: &HomogeneousPoly) -> Option<GradedFraction> {
        GradedFraction::from_poly(num).checked_div(&GradedFraction::from_poly(den))
    }

    fn make(scalar: Rational, num: ZPoly, den: ZPoly, degree: i64) -> GradedFraction {
        if num.is_zero() || scalar.is_zero() {
            return GradedFraction::zero(degree);
        }
        let (cn, num) = split_content(&num);
        let (cd, den) = split_content(&den);
        GradedFraction {
            scalar: scalar * Rational::new(cn, cd),
            num,
            den,
            degree,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Homogeneous degree of the reduced numerator.
    fn num_degree(&self) -> u32 {
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        dn.max(dd + self.degree).max(self.degree).max(0) as u32
    }

    /// Reduced homogeneous numerator, carrying the scalar.
    pub fn num(&self) -> HomogeneousPoly {
        if self.is_zero() {
            return HomogeneousPoly::zero(self.degree.max(0) as u32);
        }
        HomogeneousPoly::from_zpoly(&self.scalar, &self.num, self.num_degree())
    }

    /// Reduced homogeneous denominator, normalized.
    pub fn den(&self) -> HomogeneousPoly {
        if self.is_zero() {
            return HomogeneousPoly::from_zpoly(&Rational::one(), &ZPoly::one(), (-self.degree).max(0) as u32);
        }
        let deg = self.num_degree() as i64 - self.degree;
        HomogeneousPoly::from_zpoly(&Rational::one(), &self.den, deg as u32)
    }

    /// True when the reduced denominator is a constant (the function is a form).
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || (self.den.is_constant() && self.num.degree().unwrap_or(0) as i64 <= self.degree)
    }

    pub fn neg(&self) -> GradedFraction {
        GradedFraction { scalar: -&self.scalar, ..self.clone() }
    }

    pub fn scale(&self, k: &Rational) -> GradedFraction {
        GradedFraction::make(&self.scalar * k, self.num.clone(), self.den.clone(), self.degree)
    }

    pub fn add(&self, other: &GradedFraction) -> GradedFraction {
        assert_eq!(self.degree, other.degree, "graded addition needs equal degrees");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&other.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = other.den.div_exact(&g).expect("gcd divides");
        let (p1, q1) = (self.scalar.numer(), self.scalar.denom());
        let (p2, q2) = (other.scalar.numer(), other.scalar.denom());
        let left = (&self.num * &d2).scale(&(p1 * q2));
        let right = (&other.num * &d1).scale(&(p2 * q1));
        let mut num = &left + &right;
        if num.is_zero() {
            return GradedFraction::zero(self.degree);
        }
        let mut den = &self.den * &d2;
        if !g.is_constant() {
            let h = num.gcd(&g);
            if !h.is_constant() {
                num = num.div_exact(&h).expect("gcd divides");
                den = den.div_exact(&h).expect("gcd divides");
            }
        }
        let scalar = Rational::new(BigInt::one(), q1 * q2);
        GradedFraction::make(scalar, num, den, self.degree)
    }

    pub fn sub(&self, other: &GradedFraction) -> GradedFraction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GradedFraction) -> GradedFraction {
        let degree = self.degree + other.degree;
        if self.is_zero() || other.is_zero() {
            return GradedFraction::zero(degree);
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        GradedFraction::make(&self.scalar * &other.scalar, &n1 * &n2, &d1 * &d2, degree)
    }

    pub fn square(&self) -> GradedFraction {
        self.mul(self)
    }

    pub fn inverse(&self) -> Option<GradedFraction> {
        if self.is_zero() {
            return None;
        }
        Some(GradedFraction::make(
            self.scalar.recip(),
            self.den.clone(),
            self.num.clone(),
            -self.degree,
        ))
    }

    pub fn checked_div(&self, other: &GradedFraction) -> Option<GradedFraction> {
        other.inverse().map(|inv| self.mul(&inv))
    }
}

/// Signed content `c` and primitive part `p` (positive leading coefficient) with `z = c·p`.
fn split_content(z: &ZPoly) -> (BigInt, ZPoly) {
    let mut c = z.content();
    if z.lead().is_some_and(|l| l.is_negative()) {
        c = -c;
    }
    (c.clone(), z.div_scalar(&c))
}

impl fmt::Display for GradedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.den();
        if den.degree() == 0 {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({})/({})", self.num(), den)
        }
    }
}
