//! The three one-parameter families with long runs of integral multiples.
//! Each carries the point `P = (0, 0)` and has `a4 = a6 = 0`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::curve::FFCurve;
use super::point::FFPoint;
use super::poly::HomogeneousPoly;
use super::FFError;
use crate::orbit_group::Gamma;
use crate::rational::{format_rational, int, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    E1,
    E2,
    E3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::E1, Family::E2, Family::E3];

    /// Bundle degree `n` of the family.
    pub fn n(self) -> u32 {
        match self {
            Family::E1 => 1,
            Family::E2 => 2,
            Family::E3 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::E1 => "e1",
            Family::E2 => "e2",
            Family::E3 => "e3",
        }
    }

    /// Reference `(ĥ, γ)` of `P` and its integral run, valid for every allowed parameter.
    pub fn golden(self) -> (Rational, Gamma, u64) {
        let (h, g, run) = match self {
            Family::E1 => ((1, 30), "[1/5]+[1/3]+[1/2]+2[0]", 6),
            Family::E2 => ((11, 420), "[1/7]+[2/5]+[1/4]+[1/3]+[1/2]+3[0]", 8),
            Family::E3 => ((23, 840), "[1/8]+[3/7]+[1/5]+[1/4]+2[1/3]+[1/2]+4[0]", 9),
        };
        (ratio(h.0, h.1), g.parse().expect("valid fixture"), run)
    }

    /// The parameter used when none is given.
    pub fn default_param(self) -> Rational {
        match self {
            Family::E2 => int(3),
            _ => int(2),
        }
    }

    /// Names of the base coordinates, for printing places.
    pub fn variables(self) -> (&'static str, &'static str) {
        match self {
            Family::E1 => ("s", "s'"),
            Family::E2 => ("r", "r'"),
            Family::E3 => ("t", "t'"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FFError;

    fn from_str(s: &str) -> Result<Family, FFError> {
        match s.to_ascii_lowercase().as_str() {
            "e1" => Ok(Family::E1),
            "e2" => Ok(Family::E2),
            "e3" => Ok(Family::E3),
            _ => Err(FFError::Input(format!("unknown family `{s}` (expected e1, e2 or e3)"))),
        }
    }
}

/// `p·v + q·v'`.
fn lin(p: &Rational, q: &Rational) -> HomogeneousPoly {
    HomogeneousPoly::linear(p.clone(), q.clone())
}

fn one() -> Rational {
    Rational::one()
}

/// Builds the family member at `param` with its point `(0, 0)`.
pub fn family(which: Family, param: &Rational) -> Result<(FFCurve, FFPoint), FFError> {
    if param.is_zero() || param.is_one() {
        return Err(FFError::ExcludedParameter(format_rational(param)));
    }
    let p = param;
    let v = HomogeneousPoly::s();
    let vp = HomogeneousPoly::s_prime();
    let (a1, a2, a3) = match which {
        Family::E1 => {
            // a1 = s' - (q+1) s, a2 = -q s s', a3 = q s s' (s - s')
            let a1 = lin(&-(p + one()), &one());
            let ss = v.mul(&vp);
            let a2 = ss.scale(&-p);
            let a3 = ss.mul(&lin(&one(), &-one())).scale(p);
            (a1, a2, a3)
        }
        Family::E2 => {
            let a1 = HomogeneousPoly::from_coeffs(vec![-one(), p - int(2), one()]);
            let common = v.mul(&vp).mul(&lin(&one(), &one())).mul(&lin(&one(), p));
            let a2 = common.neg();
            let a3 = common.mul(&v).mul(&lin(&one(), &(p - one()))).neg();
            (a1, a2, a3)
        }
        Family::E3 => {
            let a1 = HomogeneousPoly::from_coeffs(vec![-one(), -(p + one()), one() - p * int(2), p.clone()]);
            let quad = HomogeneousPoly::from_coeffs(vec![one(), one(), p.clone()]);
            let common = v.mul(&vp).mul(&lin(&one(), &one())).mul(&lin(p, &one())).mul(&quad);
            let a2 = common.neg();
            let a3 = common.mul(&v.pow(2)).mul(&lin(p, &(one() - p))).neg();
            (a1, a2, a3)
        }
    };
    let n = which.n();
    let zero = HomogeneousPoly::zero(0);
    let curve = FFCurve::new(n, a1, a2, a3, zero.clone(), zero).map_err(|e| match (which, e) {
        (Family::E3, FFError::Degenerate | FFError::NonMinimal(_) | FFError::DiscriminantDegree { .. }) => {
            FFError::FamilyCheck(format!(
                "e3 at A = {}: reading the last coefficient as an X^2 term does not give a valid minimal model",
                format_rational(p)
            ))
        }
        (_, e) => e,
    })?;
    let point = FFPoint::origin(n);
    if !curve.is_on_curve(&point) {
        return Err(FFError::NotOnCurve);
    }
    Ok((curve, point))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_coefficients() {
        let (e, p) = family(Family::E1, &int(2)).unwrap();
        assert_eq!(e.a1().to_string(), "-3*s+s'");
        assert_eq!(e.a2().to_string(), "-2*s*s'");
        assert_eq!(e.a3().to_string(), "2*s^2*s'-2*s*s'^2");
        assert_eq!(e.discriminant().degree(), 12);
        assert!(e.is_on_curve(&p));
    }

    #[test]
    fn excluded_parameters() {
        for f in Family::ALL {
            assert_eq!(family(f, &int(1)).unwrap_err(), FFError::ExcludedParameter("1".into()));
            assert_eq!(family(f, &int(0)).unwrap_err(), FFError::ExcludedParameter("0".into()));
        }
    }

    #[test]
    fn degrees() {
        let (e2, _) = family(Family::E2, &int(3)).unwrap();
        assert_eq!(e2.discriminant().degree(), 24);
        let (e3, _) = family(Family::E3, &int(2)).unwrap();
        assert_eq!(e3.discriminant().degree(), 36);
        assert!(family(Family::E1, &ratio(4, 5)).is_ok());
    }
}
