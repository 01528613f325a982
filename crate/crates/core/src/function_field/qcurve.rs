//! Constant curves over `Q` and runs of integral multiples.

use num_traits::{One, Zero};
use serde::Serialize;

use super::FFError;
use crate::rational::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCurve {
    /// `(a1, a2, a3, a4, a6)`.
    pub a: [Rational; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QPoint {
    Zero,
    Affine(Rational, Rational),
}

impl QCurve {
    pub fn new(a: [Rational; 5]) -> QCurve {
        QCurve { a }
    }

    /// `Y² + XY = X³ − 139761580 X + 1587303040400` with the point `(11480, 1217300)`.
    pub fn builtin_e14() -> (QCurve, QPoint) {
        let curve = QCurve::new([int(1), int(0), int(0), int(-139_761_580), int(1_587_303_040_400)]);
        (curve, QPoint::Affine(int(11_480), int(1_217_300)))
    }

    pub fn is_on_curve(&self, p: &QPoint) -> bool {
        match p {
            QPoint::Zero => true,
            QPoint::Affine(x, y) => {
                let [a1, a2, a3, a4, a6] = &self.a;
                y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6
            }
        }
    }

    pub fn add(&self, p: &QPoint, q: &QPoint) -> QPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (QPoint::Zero, _) => return q.clone(),
            (_, QPoint::Zero) => return p.clone(),
            (QPoint::Affine(x1, y1), QPoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let [a1, a2, a3, a4, a6] = &self.a;
        let (lambda, nu) = if x1 == x2 {
            let denom = int(2) * y1 + a1 * x1 + a3;
            if y1 != y2 || denom.is_zero() {
                return QPoint::Zero;
            }
            let lambda = (int(3) * x1 * x1 + int(2) * a2 * x1 + a4 - a1 * y1) / &denom;
            let nu = (-(x1 * x1 * x1) + a4 * x1 + int(2) * a6 - a3 * y1) / &denom;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            ((y2 - y1) / &dx, (y1 * x2 - y2 * x1) / &dx)
        };
        let x3 = &lambda * &lambda + a1 * &lambda - a2 - x1 - x2;
        let y3 = -(&lambda + a1) * &x3 - nu - a3;
        QPoint::Affine(x3, y3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QIntegralRun {
    /// Largest `M' ≤ M` with `P, ..., M'P` integral.
    pub run: u64,
    pub max_m: u64,
    /// First multiple with a non-integral coordinate, when it is at most `M`.
    pub first_non_integral: Option<u64>,
    /// Its coordinates as `p/q` strings.
    pub witness: Option<(String, String)>,
}

/// Checks `mP` for `m = 1..=max_m` in the given model.
pub fn q_integral_run(curve: &QCurve, p: &QPoint, max_m: u64) -> Result<QIntegralRun, FFError> {
    if !curve.is_on_curve(p) {
        return Err(FFError::NotOnCurve);
    }
    let mut acc = QPoint::Zero;
    let mut run = None;
    let mut witness = None;
    for m in 1..=max_m {
        acc = curve.add(&acc, p);
        match &acc {
            QPoint::Zero => return Err(FFError::Torsion { m }),
            QPoint::Affine(x, y) => {
                if run.is_none() && !(x.denom().is_one() && y.denom().is_one()) {
                    run = Some(m - 1);
                    witness = Some((format_rational(x), format_rational(y)));
                }
            }
        }
    }
    Ok(QIntegralRun {
        run: run.unwrap_or(max_m),
        max_m,
        first_non_integral: run.map(|r| r + 1),
        witness,
    })
}
