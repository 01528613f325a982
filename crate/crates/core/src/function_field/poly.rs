//! Homogeneous polynomials in two variables `(s, s')` over `Q`.
//!
//! A form of degree `D` is stored as `D + 1` coefficients, index `i` holding
//! the coefficient of `s^i s'^(D-i)`. Setting `T = s/s'` turns it into the
//! univariate `Σ c_i T^i`; the place at infinity `s' = 0` shows up as the gap
//! between `D` and the degree in `T`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::zpoly::ZPoly;
use crate::rational::{format_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("expected {expected} coefficients for degree {degree}, got {got}")]
    CoefficientCount { degree: u32, expected: usize, got: usize },
    #[error("not divisible; remainder {0}")]
    NotDivisible(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousPoly {
    degree: u32,
    coeffs: Vec<Rational>,
}

impl HomogeneousPoly {
    pub fn new(degree: u32, coeffs: Vec<Rational>) -> Result<HomogeneousPoly, PolyError> {
        if coeffs.len() != degree as usize + 1 {
            return Err(PolyError::CoefficientCount {
                degree,
                expected: degree as usize + 1,
                got: coeffs.len(),
            });
        }
        Ok(HomogeneousPoly { degree, coeffs })
    }

    /// Coefficients given in ascending powers of `s`; the degree is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> HomogeneousPoly {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        HomogeneousPoly { degree: coeffs.len() as u32 - 1, coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> HomogeneousPoly {
        HomogeneousPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(degree: u32) -> HomogeneousPoly {
        HomogeneousPoly { degree, coeffs: vec![Rational::zero(); degree as usize + 1] }
    }

    pub fn constant(c: Rational) -> HomogeneousPoly {
        HomogeneousPoly { degree: 0, coeffs: vec![c] }
    }

    pub fn one() -> HomogeneousPoly {
        HomogeneousPoly::constant(Rational::one())
    }

    /// The variable `s`.
    pub fn s() -> HomogeneousPoly {
        HomogeneousPoly::from_i64(&[0, 1])
    }

    /// The variable `s'`.
    pub fn s_prime() -> HomogeneousPoly {
        HomogeneousPoly::from_i64(&[1, 0])
    }

    /// `p s + q s'`.
    pub fn linear(p: Rational, q: Rational) -> HomogeneousPoly {
        HomogeneousPoly::from_coeffs(vec![q, p])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degree after setting `s' = 1` (`None` for zero).
    pub fn affine_degree(&self) -> Option<u32> {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map(|i| i as u32)
    }

    /// Multiplicity of the factor `s'` (the place at infinity). Zero for the zero form.
    pub fn infinity_order(&self) -> u32 {
        self.affine_degree().map(|d| self.degree - d).unwrap_or(0)
    }

    /// Splits as `scalar · Z(T)` with `Z` primitive with positive leading coefficient.
    pub fn to_zpoly(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::zero(), ZPoly::zero());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let z = ZPoly::from_coeffs(ints);
        let prim = z.primitive();
        let factor = Rational::new(z.lead().unwrap().clone(), den_lcm) / Rational::from_integer(prim.lead().unwrap().clone());
        (factor, prim)
    }

    /// Homogenizes `scalar · z(T)` to degree `degree` (which must be at least `deg z`).
    pub fn from_zpoly(scalar: &Rational, z: &ZPoly, degree: u32) -> HomogeneousPoly {
        let mut coeffs = vec![Rational::zero(); degree as usize + 1];
        for (i, c) in z.coeffs().iter().enumerate() {
            assert!(i <= degree as usize, "form degree too small for its affine part");
            coeffs[i] = scalar * Rational::from_integer(c.clone());
        }
        HomogeneousPoly { degree, coeffs }
    }

    /// Primitive integer coefficients with positive leading (highest `s`-power) coefficient.
    pub fn normalized(&self) -> HomogeneousPoly {
        if self.is_zero() {
            return self.clone();
        }
        let (_, z) = self.to_zpoly();
        HomogeneousPoly::from_zpoly(&Rational::one(), &z, self.degree)
    }

    pub fn scale(&self, k: &Rational) -> HomogeneousPoly {
        HomogeneousPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn checked_add(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(HomogeneousPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, PolyError> {
        self.checked_add(&other.neg())
    }

    /// Panicking addition for internal formulas whose degrees are fixed by construction.
    pub fn add(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        self.checked_add(other).expect("graded addition")
    }

    pub fn sub(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        self.checked_sub(other).expect("graded subtraction")
    }

    pub fn neg(&self) -> HomogeneousPoly {
        self.scale(&-Rational::one())
    }

    pub fn mul(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        let mut coeffs = vec![Rational::zero(); (self.degree + other.degree) as usize + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        HomogeneousPoly { degree: self.degree + other.degree, coeffs }
    }

    pub fn pow(&self, e: u32) -> HomogeneousPoly {
        (0..e).fold(HomogeneousPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn product<'a, I: IntoIterator<Item = &'a HomogeneousPoly>>(items: I) -> HomogeneousPoly {
        items.into_iter().fold(HomogeneousPoly::one(), |acc, p| acc.mul(p))
    }

    /// Normalized gcd; the gcd of two zero forms is zero of degree 0.
    pub fn gcd(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return HomogeneousPoly::zero(0),
            (true, false) => return other.normalized(),
            (false, true) => return self.normalized(),
            _ => {}
        }
        let g = self.to_zpoly().1.gcd(&other.to_zpoly().1);
        let inf = self.infinity_order().min(other.infinity_order());
        let deg = g.degree().unwrap() as u32 + inf;
        HomogeneousPoly::from_zpoly(&Rational::one(), &g, deg)
    }

    /// Exact quotient, or the remainder of the affine division when `d` does not divide.
    pub fn div_exact(&self, d: &HomogeneousPoly) -> Result<HomogeneousPoly, PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if d.degree > self.degree {
            return Err(PolyError::NotDivisible(self.to_string()));
        }
        let deg = self.degree - d.degree;
        if self.is_zero() {
            return Ok(HomogeneousPoly::zero(deg));
        }
        if d.infinity_order() > self.infinity_order() {
            return Err(PolyError::NotDivisible(format!("{self} (factor s' missing)")));
        }
        let (cs, zs) = self.to_zpoly();
        let (cd, zd) = d.to_zpoly();
        match zs.div_exact(&zd) {
            Some(q) => Ok(HomogeneousPoly::from_zpoly(&(cs / cd), &q, deg)),
            None => {
                let r = zs.pseudo_rem(&zd);
                let r = HomogeneousPoly::from_zpoly(&Rational::one(), &r.primitive(), self.degree);
                Err(PolyError::NotDivisible(r.to_string()))
            }
        }
    }

    /// Normalized, squarefree, pairwise coprime `f_e` with `self = c · Π f_e^e`,
    /// including the factor `s'`. Sorted by `e`.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, HomogeneousPoly)> {
        if self.is_zero() {
            return Vec::new();
        }
        let (_, z) = self.to_zpoly();
        let mut out: Vec<(u32, HomogeneousPoly)> = z
            .squarefree_decomposition()
            .into_iter()
            .map(|(e, f)| {
                let deg = f.degree().unwrap() as u32;
                (e, HomogeneousPoly::from_zpoly(&Rational::one(), &f, deg))
            })
            .collect();
        let inf = self.infinity_order();
        if inf > 0 {
            match out.iter_mut().find(|(e, _)| *e == inf) {
                Some((_, f)) => *f = f.mul(&HomogeneousPoly::s_prime()).normalized(),
                None => {
                    out.push((inf, HomogeneousPoly::s_prime()));
                    out.sort_by_key(|(e, _)| *e);
                }
            }
        }
        out
    }

    /// Splits the squarefree form `self` by the multiplicity of its factors in `c`.
    /// Returns `(v, part)` with `part` the product of the factors of valuation `v`;
    /// `v = None` means `c` is identically zero.
    pub fn split_by_valuation(&self, c: &HomogeneousPoly) -> Vec<(Option<u32>, HomogeneousPoly)> {
        if c.is_zero() {
            return vec![(None, self.normalized())];
        }
        let mut out = Vec::new();
        let mut cur = self.normalized();
        let mut rem = c.clone();
        let mut v = 0;
        loop {
            let g = cur.gcd(&rem);
            let part = cur.div_exact(&g).expect("gcd divides");
            if part.degree() > 0 {
                out.push((Some(v), part.normalized()));
            }
            if g.degree() == 0 {
                break;
            }
            rem = rem.div_exact(&g).expect("gcd divides");
            cur = g;
            v += 1;
        }
        out
    }

    /// Evaluates at `(s, s')`.
    pub fn eval(&self, s: &Rational, s_prime: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = c * pow_rat(s, i as u32) * pow_rat(s_prime, self.degree - i as u32);
            acc += term;
        }
        acc
    }

    /// Text form with custom variable names, highest power of the first variable first.
    pub fn display_with(&self, var: &str, var_prime: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for i in (0..=self.degree as usize).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let j = self.degree as usize - i;
            let mut mono = Vec::new();
            if i > 0 {
                mono.push(if i == 1 { var.to_string() } else { format!("{var}^{i}") });
            }
            if j > 0 {
                mono.push(if j == 1 { var_prime.to_string() } else { format!("{var_prime}^{j}") });
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            out.push_str(sign);
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

fn pow_rat(q: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * q)
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("s", "s'"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn h(c: &[i64]) -> HomogeneousPoly {
        HomogeneousPoly::from_i64(c)
    }

    #[test]
    fn gcd_example() {
        // s^2 - s'^2 and s - s'
        let a = h(&[-1, 0, 1]);
        let b = h(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.gcd(&b).to_string(), "s-s'");
        // common s' factor
        let c = h(&[0, 1, 0]); // s s'
        let d = h(&[3, 0]); // 3 s'
        assert_eq!(c.gcd(&d), HomogeneousPoly::s_prime());
    }

    #[test]
    fn squarefree_example() {
        // s^3 s'^2 (s - s')
        let p = HomogeneousPoly::s()
            .pow(3)
            .mul(&HomogeneousPoly::s_prime().pow(2))
            .mul(&h(&[-1, 1]));
        let got = p.scale(&ratio(-7, 3)).squarefree_decomposition();
        assert_eq!(
            got,
            vec![(1, h(&[-1, 1])), (2, HomogeneousPoly::s_prime()), (3, HomogeneousPoly::s())]
        );
    }

    #[test]
    fn unequal_degree_addition_fails() {
        assert_eq!(h(&[1, 1]).checked_add(&h(&[1])), Err(PolyError::DegreeMismatch(1, 0)));
    }

    #[test]
    fn division() {
        let a = h(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&h(&[-1, 1])).unwrap(), h(&[1, 1]));
        assert!(matches!(a.div_exact(&h(&[1, 0])), Err(PolyError::NotDivisible(_))));
        assert!(matches!(a.div_exact(&h(&[0, 1])), Err(PolyError::NotDivisible(_))));
        let b = h(&[0, 2, 0]); // 2 s s'
        assert_eq!(b.div_exact(&HomogeneousPoly::s_prime()).unwrap(), h(&[0, 2]));
        assert_eq!(a.div_exact(&HomogeneousPoly::zero(1)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn display_and_normalize() {
        let q = h(&[-1, -18, 27]);
        assert_eq!(q.to_string(), "27*s^2-18*s*s'-s'^2");
        assert_eq!(q.scale(&ratio(-1, 9)).normalized(), q);
        assert_eq!(HomogeneousPoly::s_prime().to_string(), "s'");
        assert_eq!(h(&[5]).to_string(), "5");
        assert_eq!(HomogeneousPoly::from_coeffs(vec![ratio(1, 2), ratio(-3, 4)]).to_string(), "-3/4*s+1/2*s'");
        assert_eq!(HomogeneousPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn valuation_split() {
        // f = s (s - s') s', c = s^2 (s - s')
        let f = h(&[0, 1, 0]).mul(&h(&[-1, 1]));
        let c = HomogeneousPoly::s().pow(2).mul(&h(&[-1, 1])).mul(&h(&[1, 1]));
        let got = f.split_by_valuation(&c);
        assert_eq!(
            got,
            vec![
                (Some(0), HomogeneousPoly::s_prime()),
                (Some(1), h(&[-1, 1])),
                (Some(2), HomogeneousPoly::s()),
            ]
        );
        assert_eq!(f.split_by_valuation(&HomogeneousPoly::zero(4)), vec![(None, f.normalized())]);
    }

    #[test]
    fn to_zpoly_round_trip() {
        let p = HomogeneousPoly::from_coeffs(vec![ratio(1, 2), ratio(-3, 4), Rational::zero()]);
        let (c, z) = p.to_zpoly();
        assert_eq!(HomogeneousPoly::from_zpoly(&c, &z, 2), p);
        assert_eq!(p.infinity_order(), 1);
    }
}
