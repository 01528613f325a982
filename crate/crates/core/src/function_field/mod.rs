//! Elliptic curves over the rational function field `Q(T)`, written
//! homogeneously in `(s, s')` with `T = s/s'`.

pub mod curve;
pub mod families;
pub mod fibers;
pub mod fraction;
pub mod infer;
pub mod io;
pub mod point;
pub mod poly;
pub mod qcurve;
pub mod verify;
pub mod zpoly;

use thiserror::Error;

pub use curve::{transform_curve, FFCurve, PointMap};
pub use families::{family, Family};
pub use fibers::{classify_fibers, FiberEntry, FiberReport};
pub use fraction::GradedFraction;
pub use infer::{infer_height_data, HeightData};
pub use point::FFPoint;
pub use poly::{HomogeneousPoly, PolyError};
pub use qcurve::{q_integral_run, QCurve, QIntegralRun, QPoint};
pub use verify::{verify_family, VerifyReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FFError {
    #[error("degenerate curve: the discriminant vanishes identically")]
    Degenerate,
    #[error("non-minimal model at the place {0}")]
    NonMinimal(String),
    #[error("coefficient {name} has degree {got}, expected {expected}")]
    DegreeMismatch { name: &'static str, expected: u32, got: u32 },
    #[error("discriminant degree {got}, expected {expected}")]
    DiscriminantDegree { expected: u32, got: u32 },
    #[error("transform scale must be nonzero")]
    ZeroScale,
    #[error("parameter {0} is excluded for this family")]
    ExcludedParameter(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("the point at infinity has no naive height")]
    ZeroPoint,
    #[error("denominators of x and y are not a square and a cube of one form: {0}")]
    BadDenominator(String),
    #[error("the point is torsion: {m}P is zero")]
    Torsion { m: u64 },
    #[error("no Kodaira type for vDelta={v_delta}, vC4={v_c4:?}, vC6={v_c6:?}")]
    ClassificationMiss { v_delta: u32, v_c4: Option<u32>, v_c6: Option<u32> },
    #[error("no component assignment reproduces the naive heights")]
    NoSurvivors,
    #[error("family check failed: {0}")]
    FamilyCheck(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
