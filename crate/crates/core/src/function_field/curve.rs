//! Weierstrass models `Y² + a1 XY + a3 Y = X³ + a2 X² + a4 X + a6` with
//! `a_i` forms of degree `i·n`, and changes of coordinates between them.

use num_traits::{One, Zero};

use super::fraction::GradedFraction;
use super::point::FFPoint;
use super::poly::HomogeneousPoly;
use super::FFError;
use crate::rational::{int, Rational};

const NAMES: [&str; 5] = ["a1", "a2", "a3", "a4", "a6"];
const WEIGHTS: [u32; 5] = [1, 2, 3, 4, 6];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FFCurve {
    n: u32,
    a: [HomogeneousPoly; 5],
    b2: HomogeneousPoly,
    b4: HomogeneousPoly,
    b6: HomogeneousPoly,
    b8: HomogeneousPoly,
    c4: HomogeneousPoly,
    c6: HomogeneousPoly,
    delta: HomogeneousPoly,
    af: [GradedFraction; 5],
}

impl FFCurve {
    /// Builds and validates the model. Zero coefficients may be passed with any degree.
    pub fn new(
        n: u32,
        a1: HomogeneousPoly,
        a2: HomogeneousPoly,
        a3: HomogeneousPoly,
        a4: HomogeneousPoly,
        a6: HomogeneousPoly,
    ) -> Result<FFCurve, FFError> {
        let curve = FFCurve::unchecked(n, [a1, a2, a3, a4, a6])?;
        if curve.delta.is_zero() {
            return Err(FFError::Degenerate);
        }
        if curve.delta.degree() != 12 * n {
            return Err(FFError::DiscriminantDegree { expected: 12 * n, got: curve.delta.degree() });
        }
        if let Some(place) = curve.non_minimal_place() {
            return Err(FFError::NonMinimal(place.to_string()));
        }
        Ok(curve)
    }

    /// Computes the invariants after checking degrees only.
    fn unchecked(n: u32, coeffs: [HomogeneousPoly; 5]) -> Result<FFCurve, FFError> {
        let mut a = coeffs;
        for (i, p) in a.iter_mut().enumerate() {
            let expected = WEIGHTS[i] * n;
            if p.is_zero() {
                *p = HomogeneousPoly::zero(expected);
            } else if p.degree() != expected {
                return Err(FFError::DegreeMismatch { name: NAMES[i], expected, got: p.degree() });
            }
        }
        let [a1, a2, a3, a4, a6] = &a;
        let k = |c: i64| int(c);
        let b2 = a1.mul(a1).add(&a2.scale(&k(4)));
        let b4 = a4.scale(&k(2)).add(&a1.mul(a3));
        let b6 = a3.mul(a3).add(&a6.scale(&k(4)));
        let b8 = b2.mul(&b6).sub(&b4.mul(&b4)).scale(&Rational::new(1.into(), 4.into()));
        let c4 = b2.mul(&b2).sub(&b4.scale(&k(24)));
        let c6 = b2
            .pow(3)
            .neg()
            .add(&b2.mul(&b4).scale(&k(36)))
            .sub(&b6.scale(&k(216)));
        let delta = b2
            .mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&b4.pow(3).scale(&k(8)))
            .sub(&b6.mul(&b6).scale(&k(27)))
            .add(&b2.mul(&b4).mul(&b6).scale(&k(9)));
        let af = [
            GradedFraction::from_poly(a1),
            GradedFraction::from_poly(a2),
            GradedFraction::from_poly(a3),
            GradedFraction::from_poly(a4),
            GradedFraction::from_poly(a6),
        ];
        Ok(FFCurve { n, a, b2, b4, b6, b8, c4, c6, delta, af })
    }

    /// A place where `v(c4) >= 4` and `v(c6) >= 6`, if any.
    fn non_minimal_place(&self) -> Option<HomogeneousPoly> {
        let deep = |c: &HomogeneousPoly, e: u32| -> Option<HomogeneousPoly> {
            if c.is_zero() {
                return None;
            }
            let parts: Vec<HomogeneousPoly> = c
                .squarefree_decomposition()
                .into_iter()
                .filter(|(k, _)| *k >= e)
                .map(|(_, f)| f)
                .collect();
            Some(HomogeneousPoly::product(&parts))
        };
        let place = match (deep(&self.c4, 4), deep(&self.c6, 6)) {
            (Some(p), Some(q)) => p.gcd(&q),
            (None, Some(q)) => q,
            (Some(p), None) => p,
            (None, None) => return None,
        };
        (place.degree() > 0).then(|| place.normalized())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a1(&self) -> &HomogeneousPoly {
        &self.a[0]
    }
    pub fn a2(&self) -> &HomogeneousPoly {
        &self.a[1]
    }
    pub fn a3(&self) -> &HomogeneousPoly {
        &self.a[2]
    }
    pub fn a4(&self) -> &HomogeneousPoly {
        &self.a[3]
    }
    pub fn a6(&self) -> &HomogeneousPoly {
        &self.a[4]
    }

    /// `(a1, a2, a3, a4, a6)`.
    pub fn coefficients(&self) -> &[HomogeneousPoly; 5] {
        &self.a
    }

    pub fn b2(&self) -> &HomogeneousPoly {
        &self.b2
    }
    pub fn b4(&self) -> &HomogeneousPoly {
        &self.b4
    }
    pub fn b6(&self) -> &HomogeneousPoly {
        &self.b6
    }
    pub fn b8(&self) -> &HomogeneousPoly {
        &self.b8
    }
    pub fn c4(&self) -> &HomogeneousPoly {
        &self.c4
    }
    pub fn c6(&self) -> &HomogeneousPoly {
        &self.c6
    }
    pub fn discriminant(&self) -> &HomogeneousPoly {
        &self.delta
    }

    /// Coefficients as graded fractions, for the group law.
    pub(crate) fn graded(&self) -> &[GradedFraction; 5] {
        &self.af
    }
}

/// The coordinate change `X' = δ²(X + α2)`, `Y' = δ³(Y + α1 X + α3)` acting on points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    delta: Rational,
    alpha1: GradedFraction,
    alpha2: GradedFraction,
    alpha3: GradedFraction,
}

impl PointMap {
    pub fn apply(&self, p: &FFPoint) -> FFPoint {
        match p {
            FFPoint::Zero => FFPoint::Zero,
            FFPoint::Affine { x, y } => {
                let d2 = &self.delta * &self.delta;
                let d3 = &d2 * &self.delta;
                let x2 = x.add(&self.alpha2).scale(&d2);
                let y2 = y.add(&self.alpha1.mul(x)).add(&self.alpha3).scale(&d3);
                FFPoint::Affine { x: x2, y: y2 }
            }
        }
    }
}

/// The model obtained by `X' = δ²(X + α2)`, `Y' = δ³(Y + α1 X + α3)`, and the
/// matching map on points.
pub fn transform_curve(
    e: &FFCurve,
    delta: &Rational,
    alpha1: &HomogeneousPoly,
    alpha2: &HomogeneousPoly,
    alpha3: &HomogeneousPoly,
) -> Result<(FFCurve, PointMap), FFError> {
    if delta.is_zero() {
        return Err(FFError::ZeroScale);
    }
    let n = e.n;
    let fix = |p: &HomogeneousPoly, w: u32, name: &'static str| -> Result<HomogeneousPoly, FFError> {
        if p.is_zero() {
            Ok(HomogeneousPoly::zero(w * n))
        } else if p.degree() != w * n {
            Err(FFError::DegreeMismatch { name, expected: w * n, got: p.degree() })
        } else {
            Ok(p.clone())
        }
    };
    // X = u² X' + r, Y = u³ Y' + s u² X' + t with u = 1/δ.
    let s = fix(alpha1, 1, "alpha1")?.neg();
    let r = fix(alpha2, 2, "alpha2")?.neg();
    let t = fix(alpha1, 1, "alpha1")?.mul(&fix(alpha2, 2, "alpha2")?).sub(&fix(alpha3, 3, "alpha3")?);
    let [a1, a2, a3, a4, a6] = &e.a;
    let k = |c: i64| int(c);
    let n1 = a1.add(&s.scale(&k(2)));
    let n2 = a2.sub(&s.mul(a1)).add(&r.scale(&k(3))).sub(&s.mul(&s));
    let n3 = a3.add(&r.mul(a1)).add(&t.scale(&k(2)));
    let n4 = a4
        .sub(&s.mul(a3))
        .add(&r.mul(a2).scale(&k(2)))
        .sub(&t.add(&r.mul(&s)).mul(a1))
        .add(&r.mul(&r).scale(&k(3)))
        .sub(&s.mul(&t).scale(&k(2)));
    let n6 = a6
        .add(&r.mul(a4))
        .add(&r.mul(&r).mul(a2))
        .add(&r.pow(3))
        .sub(&t.mul(a3))
        .sub(&t.mul(&t))
        .sub(&r.mul(&t).mul(a1));
    let pow = |e: u32| (0..e).fold(Rational::one(), |acc, _| acc * delta);
    let curve = FFCurve::new(
        n,
        n1.scale(&pow(1)),
        n2.scale(&pow(2)),
        n3.scale(&pow(3)),
        n4.scale(&pow(4)),
        n6.scale(&pow(6)),
    )?;
    let map = PointMap {
        delta: delta.clone(),
        alpha1: GradedFraction::from_poly(&fix(alpha1, 1, "alpha1")?),
        alpha2: GradedFraction::from_poly(&fix(alpha2, 2, "alpha2")?),
        alpha3: GradedFraction::from_poly(&fix(alpha3, 3, "alpha3")?),
    };
    Ok((curve, map))
}
