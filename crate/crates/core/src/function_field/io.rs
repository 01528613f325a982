//! JSON files for curves and points.
//!
//! Curve: `{"n": 1, "a1": ["1", "-3"], ...}` with coefficients in ascending
//! powers of the first variable; a missing key is the zero form.
//! Point: `{"x": {"num": [...], "den": [...]}, "y": {...}}`; a missing `den`
//! means `1`.

use serde::{Deserialize, Serialize};

use super::curve::FFCurve;
use super::fraction::GradedFraction;
use super::point::FFPoint;
use super::poly::HomogeneousPoly;
use super::FFError;
use crate::rational::{format_rational_pq, parse_rational, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a2: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a3: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a4: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a6: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FractionFile {
    pub num: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointFile {
    pub x: FractionFile,
    pub y: FractionFile,
}

fn parse_poly(coeffs: &[String]) -> Result<HomogeneousPoly, FFError> {
    if coeffs.is_empty() {
        return Err(FFError::Input("empty coefficient list".into()));
    }
    let parsed: Result<Vec<Rational>, _> = coeffs.iter().map(|c| parse_rational(c)).collect();
    parsed
        .map(HomogeneousPoly::from_coeffs)
        .map_err(|e| FFError::Input(e.to_string()))
}

fn poly_strings(p: &HomogeneousPoly) -> Option<Vec<String>> {
    (!p.is_zero()).then(|| p.coeffs().iter().map(format_rational_pq).collect())
}

fn parse_fraction(f: &FractionFile) -> Result<GradedFraction, FFError> {
    let num = parse_poly(&f.num)?;
    let den = match &f.den {
        Some(d) => parse_poly(d)?,
        None => HomogeneousPoly::one(),
    };
    GradedFraction::new(&num, &den).ok_or_else(|| FFError::Input("zero denominator".into()))
}

fn fraction_file(f: &GradedFraction) -> FractionFile {
    let den = f.den();
    FractionFile {
        num: f.num().coeffs().iter().map(format_rational_pq).collect(),
        den: (den.degree() > 0).then(|| den.coeffs().iter().map(format_rational_pq).collect()),
    }
}

impl CurveFile {
    pub fn to_curve(&self) -> Result<FFCurve, FFError> {
        let get = |c: &Option<Vec<String>>| match c {
            Some(v) => parse_poly(v),
            None => Ok(HomogeneousPoly::zero(0)),
        };
        FFCurve::new(self.n, get(&self.a1)?, get(&self.a2)?, get(&self.a3)?, get(&self.a4)?, get(&self.a6)?)
    }

    pub fn from_curve(e: &FFCurve) -> CurveFile {
        let [a1, a2, a3, a4, a6] = e.coefficients();
        CurveFile {
            n: e.n(),
            a1: poly_strings(a1),
            a2: poly_strings(a2),
            a3: poly_strings(a3),
            a4: poly_strings(a4),
            a6: poly_strings(a6),
        }
    }
}

impl PointFile {
    pub fn to_point(&self) -> Result<FFPoint, FFError> {
        Ok(FFPoint::Affine { x: parse_fraction(&self.x)?, y: parse_fraction(&self.y)? })
    }

    /// `None` for the point at infinity.
    pub fn from_point(p: &FFPoint) -> Option<PointFile> {
        match p {
            FFPoint::Zero => None,
            FFPoint::Affine { x, y } => Some(PointFile { x: fraction_file(x), y: fraction_file(y) }),
        }
    }
}

pub fn read_curve(text: &str) -> Result<FFCurve, FFError> {
    let file: CurveFile = serde_json::from_str(text).map_err(|e| FFError::Input(e.to_string()))?;
    file.to_curve()
}

/// Reads a point and checks it lies on `curve`.
pub fn read_point(text: &str, curve: &FFCurve) -> Result<FFPoint, FFError> {
    let file: PointFile = serde_json::from_str(text).map_err(|e| FFError::Input(e.to_string()))?;
    let p = file.to_point()?;
    if !curve.is_on_curve(&p) {
        return Err(FFError::NotOnCurve);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_field::families::{family, Family};
    use crate::rational::int;

    #[test]
    fn curve_round_trip() {
        let (e, p) = family(Family::E1, &int(2)).unwrap();
        let text = serde_json::to_string(&CurveFile::from_curve(&e)).unwrap();
        assert_eq!(read_curve(&text).unwrap(), e);
        let q = e.scalar_mul(&p, 7);
        let ptext = serde_json::to_string(&PointFile::from_point(&q).unwrap()).unwrap();
        assert_eq!(read_point(&ptext, &e).unwrap(), q);
    }

    #[test]
    fn missing_keys_are_zero() {
        let text = r#"{"n": 1, "a1": ["1", "-3"], "a2": ["0", "-2", "0"], "a3": ["0", "-2", "2", "0"]}"#;
        let e = read_curve(text).unwrap();
        assert!(e.a4().is_zero() && e.a6().is_zero());
        assert!(read_curve(r#"{"n": 1, "a5": ["1"]}"#).is_err());
    }
}
