//! Dense univariate polynomials over `Z`, the workhorse behind the
//! homogeneous polynomials and graded fractions.
//!
//! Coefficient `i` multiplies `T^i`. The zero polynomial is the empty vector.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> ZPoly {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> ZPoly {
        ZPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> ZPoly {
        ZPoly::from_coeffs(vec![c])
    }

    /// `T`.
    pub fn x() -> ZPoly {
        ZPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> ZPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `T = 0`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_scalar(&self, k: &BigInt) -> ZPoly {
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        }
    }

    pub fn shift(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> ZPoly {
        let mut out = ZPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) a mod d`.
    pub fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        assert!(!d.is_zero(), "pseudo-remainder by zero");
        let dd = d.degree().unwrap();
        let lc = d.lead().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let coef = r[top].clone();
            let shift = top - dd;
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &coef * dc;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        ZPoly::from_coeffs(r)
    }

    /// Quotient when `d` divides `self` exactly in `Q[T]` and the quotient is integral.
    /// Returns `None` otherwise.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let dd = d.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        let lc = d.lead().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let top = &r[shift + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &qc * dc;
            }
            q[shift] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::from_coeffs(q))
    }

    /// Primitive gcd with positive leading coefficient (1 when coprime, 0 when both are 0).
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return ZPoly::one();
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Squarefree decomposition: primitive squarefree, pairwise coprime `f_e`
    /// with `self = c · Π f_e^e`. Only nonconstant factors are returned, in
    /// increasing `e`. Every step is a gcd or an exact quotient, so scalars
    /// never need tracking.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, ZPoly)> {
        let f = self.primitive();
        let mut out = Vec::new();
        if f.is_constant() {
            return out;
        }
        let mut g = f.gcd(&f.derivative());
        let mut w = f.div_exact(&g).expect("gcd divides").primitive();
        let mut e = 1;
        while !w.is_constant() {
            let y = w.gcd(&g);
            let fe = w.div_exact(&y).expect("gcd divides").primitive();
            if !fe.is_constant() {
                out.push((e, fe));
            }
            g = g.div_exact(&y).expect("gcd divides").primitive();
            w = y;
            e += 1;
        }
        out
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;

    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        ZPoly::from_coeffs(out)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;

    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;

    fn neg(self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;

    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, ZPoly::zero());
        assert_eq!(p(&[0, 0, 3]).low_order(), 2);
        assert_eq!(p(&[6, -4, 2]).primitive(), p(&[3, -2, 1]));
        assert_eq!(p(&[-6, 4, -2]).primitive(), p(&[3, -2, 1]));
    }

    #[test]
    fn gcd_and_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        assert_eq!(a.div_exact(&b), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&b), None);
        assert_eq!(p(&[1, 0, 1]).gcd(&b), ZPoly::one());
        let f = &(&p(&[2, 3]) * &p(&[5, 0, 7])) * &p(&[1, 1]);
        let g = &(&p(&[2, 3]) * &p(&[1, -1])) * &p(&[5, 0, 7]);
        assert_eq!(f.gcd(&g), (&p(&[2, 3]) * &p(&[5, 0, 7])).primitive());
    }

    #[test]
    fn squarefree() {
        // T^3 (T - 1)^2 (T + 2)
        let f = &(&p(&[0, 1]).pow(3) * &p(&[-1, 1]).pow(2)) * &p(&[2, 1]);
        let sq = f.scale(&BigInt::from(-6)).squarefree_decomposition();
        assert_eq!(sq, vec![(1, p(&[2, 1])), (2, p(&[-1, 1])), (3, p(&[0, 1]))]);
        let g = &p(&[3, 0, 2]).pow(2) * &p(&[1, 5]);
        assert_eq!(g.squarefree_decomposition(), vec![(1, p(&[1, 5])), (2, p(&[3, 0, 2]))]);
        assert!(p(&[4]).squarefree_decomposition().is_empty());
    }
}
