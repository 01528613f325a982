//! Points on an [`FFCurve`]: chord-tangent group law and naive heights.

use std::fmt;

use super::curve::FFCurve;
use super::fraction::GradedFraction;
use super::poly::HomogeneousPoly;
use super::FFError;
use crate::rational::int;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FFPoint {
    Zero,
    Affine { x: GradedFraction, y: GradedFraction },
}

impl fmt::Display for FFPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FFPoint::Zero => f.write_str("O"),
            FFPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

impl FFPoint {
    /// The point `(x, y)` with polynomial coordinates.
    pub fn from_polys(x: &HomogeneousPoly, y: &HomogeneousPoly) -> FFPoint {
        FFPoint::Affine { x: GradedFraction::from_poly(x), y: GradedFraction::from_poly(y) }
    }

    /// `(0, 0)` on a curve of bundle degree `n`.
    pub fn origin(n: u32) -> FFPoint {
        FFPoint::Affine {
            x: GradedFraction::zero(2 * n as i64),
            y: GradedFraction::zero(3 * n as i64),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FFPoint::Zero)
    }

    pub fn x(&self) -> Option<&GradedFraction> {
        match self {
            FFPoint::Zero => None,
            FFPoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&GradedFraction> {
        match self {
            FFPoint::Zero => None,
            FFPoint::Affine { y, .. } => Some(y),
        }
    }
}

impl FFCurve {
    pub fn is_on_curve(&self, p: &FFPoint) -> bool {
        match p {
            FFPoint::Zero => true,
            FFPoint::Affine { x, y } => {
                let n = self.n() as i64;
                if x.degree() != 2 * n || y.degree() != 3 * n {
                    return false;
                }
                let [a1, a2, a3, a4, a6] = self.graded();
                let lhs = y.square().add(&a1.mul(x).mul(y)).add(&a3.mul(y));
                let x2 = x.square();
                let rhs = x2.mul(x).add(&a2.mul(&x2)).add(&a4.mul(x)).add(a6);
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &FFPoint) -> FFPoint {
        match p {
            FFPoint::Zero => FFPoint::Zero,
            FFPoint::Affine { x, y } => {
                let [a1, _, a3, _, _] = self.graded();
                FFPoint::Affine { x: x.clone(), y: y.neg().sub(&a1.mul(x)).sub(a3) }
            }
        }
    }

    pub fn add(&self, p: &FFPoint, q: &FFPoint) -> FFPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (FFPoint::Zero, _) => return q.clone(),
            (_, FFPoint::Zero) => return p.clone(),
            (FFPoint::Affine { x: x1, y: y1 }, FFPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = self.graded();
        let (lambda, nu) = if x1 == x2 {
            let denom = y1.scale(&int(2)).add(&a1.mul(x1)).add(a3);
            if y1 != y2 || denom.is_zero() {
                return FFPoint::Zero;
            }
            let x1sq = x1.square();
            let top = x1sq
                .scale(&int(3))
                .add(&a2.mul(x1).scale(&int(2)))
                .add(a4)
                .sub(&a1.mul(y1));
            let top_nu = x1sq
                .mul(x1)
                .neg()
                .add(&a4.mul(x1))
                .add(&a6.scale(&int(2)))
                .sub(&a3.mul(y1));
            (
                top.checked_div(&denom).expect("nonzero"),
                top_nu.checked_div(&denom).expect("nonzero"),
            )
        } else {
            let dx = x2.sub(x1);
            let lambda = y2.sub(y1).checked_div(&dx).expect("nonzero");
            let nu = y1.mul(x2).sub(&y2.mul(x1)).checked_div(&dx).expect("nonzero");
            (lambda, nu)
        };
        let x3 = lambda.square().add(&a1.mul(&lambda)).sub(a2).sub(x1).sub(x2);
        let y3 = lambda.add(a1).mul(&x3).neg().sub(&nu).sub(a3);
        FFPoint::Affine { x: x3, y: y3 }
    }

    /// `mP` by double-and-add; negative `m` negates.
    pub fn scalar_mul(&self, p: &FFPoint, m: i64) -> FFPoint {
        let mut base = if m < 0 { self.neg(p) } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = FFPoint::Zero;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// `[P, 2P, ..., count·P]` by repeated addition.
    pub fn multiples(&self, p: &FFPoint, count: u64) -> Vec<FFPoint> {
        let mut out: Vec<FFPoint> = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let next = match out.last() {
                None => p.clone(),
                Some(prev) => self.add(prev, p),
            };
            out.push(next);
        }
        out
    }

    /// Degree of the reduced denominator of `x`, after checking that the
    /// denominators of `x` and `y` are `ζ²` and `ζ³` up to scalars.
    pub fn naive_height(&self, p: &FFPoint) -> Result<u32, FFError> {
        let (x, y) = match p {
            FFPoint::Zero => return Err(FFError::ZeroPoint),
            FFPoint::Affine { x, y } => (x, y),
        };
        let dx = x.den();
        if dx.degree() == 0 {
            return if y.den().degree() == 0 {
                Ok(0)
            } else {
                Err(FFError::BadDenominator(format!("x is integral but y has denominator {}", y.den())))
            };
        }
        let mut zeta = HomogeneousPoly::one();
        for (e, f) in dx.squarefree_decomposition() {
            if e % 2 != 0 {
                return Err(FFError::BadDenominator(format!("{dx} is not a square")));
            }
            zeta = zeta.mul(&f.pow(e / 2));
        }
        let dy = y.den();
        if dy.normalized() != zeta.pow(3).normalized() {
            return Err(FFError::BadDenominator(format!("{dy} is not the cube of {zeta}")));
        }
        Ok(dx.degree())
    }

    pub fn is_integral(&self, p: &FFPoint) -> Result<bool, FFError> {
        self.naive_height(p).map(|h| h == 0)
    }

    /// Naive heights of `P, 2P, ..., count·P`; fails with `Torsion` if some multiple vanishes.
    pub fn naive_heights(&self, p: &FFPoint, count: u64) -> Result<Vec<u32>, FFError> {
        self.multiples(p, count)
            .iter()
            .enumerate()
            .map(|(i, q)| match q {
                FFPoint::Zero => Err(FFError::Torsion { m: i as u64 + 1 }),
                _ => self.naive_height(q),
            })
            .collect()
    }
}
