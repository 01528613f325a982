//! The group **G** of formal combinations of dihedral orbits of rationals.
//!
//! A generator `[a/b]` stands for the orbit of `a/b` under `z -> z + 1` and
//! `z -> 1 - z`. Singular fibers of an elliptic surface, together with the
//! component a section meets, map to positive elements of **G**; the
//! homomorphisms [`lambda_m`] and [`degree_and_conductor`] then recover the
//! local height corrections, the discriminant degree and a conductor bound.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{frac, ratio, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("bernoulli2 expects an argument in [0, 1], got {0}")]
    OutOfUnitInterval(String),
    #[error("illegal fiber class: {0}")]
    IllegalFiber(String),
    #[error("cannot parse gamma `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// Canonical representative `a/b` of a dihedral orbit, with `0 <= a/b <= 1/2`,
/// `gcd(a, b) = 1` and `b = 1` when `a = 0`.
///
/// The ordering is the display order of [`Gamma`]: larger denominators first,
/// then larger `a/b`, so `[0]` sorts last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrbitGenerator {
    a: u32,
    b: u32,
}

impl OrbitGenerator {
    /// The trivial orbit `[0]`.
    pub const ZERO: OrbitGenerator = OrbitGenerator { a: 0, b: 1 };

    /// Canonical generator of the orbit of `a/b` for any integers with `b != 0`.
    pub fn from_fraction(a: i64, b: i64) -> OrbitGenerator {
        assert!(b != 0, "zero denominator");
        canonicalize(&ratio(a, b))
    }

    pub fn numerator(&self) -> u32 {
        self.a
    }

    pub fn denominator(&self) -> u32 {
        self.b
    }

    pub fn value(&self) -> Rational {
        ratio(self.a as i64, self.b as i64)
    }
}

impl Ord for OrbitGenerator {
    fn cmp(&self, other: &Self) -> Ordering {
        // Same denominator means a/b ordering is the ordering of a.
        other.b.cmp(&self.b).then(other.a.cmp(&self.a))
    }
}

impl PartialOrd for OrbitGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbitGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0 {
            write!(f, "[0]")
        } else {
            write!(f, "[{}/{}]", self.a, self.b)
        }
    }
}

/// Folds `q` into the fundamental domain `[0, 1/2]` of the infinite dihedral group.
pub fn canonicalize(q: &Rational) -> OrbitGenerator {
    let mut z = frac(q);
    if z > ratio(1, 2) {
        z = Rational::one() - z;
    }
    let a = u32::try_from(z.numer()).expect("orbit numerator exceeds u32");
    let b = u32::try_from(z.denom()).expect("orbit denominator exceeds u32");
    OrbitGenerator { a, b }
}

/// The second Bernoulli polynomial `z^2 - z + 1/6` on `[0, 1]`.
pub fn bernoulli2(z: &Rational) -> Result<Rational, OrbitError> {
    if z.is_negative() || *z > Rational::one() {
        return Err(OrbitError::OutOfUnitInterval(z.to_string()));
    }
    Ok(z * z - z + ratio(1, 6))
}

/// `b * B(m a / b)` with `B` extended periodically, for a single generator.
pub fn generator_lambda(g: OrbitGenerator, m: u64) -> Rational {
    let b = g.b as u64;
    let r = (m % b) * g.a as u64 % b;
    let z = ratio(r as i64, b as i64);
    let bz = bernoulli2(&z).expect("folded argument lies in [0, 1)");
    bz * Rational::from_integer(BigInt::from(b))
}

/// A positive element of **G**: generators with multiplicities `>= 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gamma {
    terms: BTreeMap<OrbitGenerator, u32>,
}

impl Gamma {
    pub fn new() -> Gamma {
        Gamma::default()
    }

    /// `k` copies of a single generator.
    pub fn single(g: OrbitGenerator, k: u32) -> Gamma {
        let mut out = Gamma::new();
        out.add_term(g, k);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (OrbitGenerator, u32)>>(terms: I) -> Gamma {
        let mut out = Gamma::new();
        for (g, k) in terms {
            out.add_term(g, k);
        }
        out
    }

    pub fn add_term(&mut self, g: OrbitGenerator, k: u32) {
        if k > 0 {
            *self.terms.entry(g).or_insert(0) += k;
        }
    }

    pub fn merge(&mut self, other: &Gamma) {
        for (&g, &k) in &other.terms {
            self.add_term(g, k);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, g: OrbitGenerator) -> u32 {
        self.terms.get(&g).copied().unwrap_or(0)
    }

    /// Terms in canonical display order.
    pub fn terms(&self) -> impl Iterator<Item = (OrbitGenerator, u32)> + '_ {
        self.terms.iter().map(|(&g, &k)| (g, k))
    }

    /// Least common multiple of all generator denominators (1 when empty).
    pub fn denominator_lcm(&self) -> u64 {
        self.terms.keys().fold(1u64, |acc, g| acc.lcm(&(g.b as u64)))
    }
}

impl std::ops::Add for &Gamma {
    type Output = Gamma;

    fn add(self, rhs: &Gamma) -> Gamma {
        let mut out = self.clone();
        out.merge(rhs);
        out
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, k) in self.terms() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if k != 1 {
                write!(f, "{k}")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Gamma {
    type Err = OrbitError;

    /// Accepts `k[a/b]` terms joined by `+`, with `[0]` for the trivial orbit.
    /// Whitespace is ignored and non-canonical fractions are folded.
    fn from_str(input: &str) -> Result<Gamma, OrbitError> {
        let fail = |reason: &str| OrbitError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Gamma::new();
        if compact.is_empty() {
            return Ok(out);
        }
        for term in compact.split('+') {
            let open = term.find('[').ok_or_else(|| fail("missing `[`"))?;
            if !term.ends_with(']') {
                return Err(fail("missing `]`"));
            }
            let k: u32 = if open == 0 {
                1
            } else {
                term[..open].parse().map_err(|_| fail("bad multiplicity"))?
            };
            if k == 0 {
                return Err(fail("zero multiplicity"));
            }
            let inner = &term[open + 1..term.len() - 1];
            let q = crate::rational::parse_rational(inner).map_err(|_| fail("bad fraction"))?;
            out.add_term(canonicalize(&q), k);
        }
        Ok(out)
    }
}

impl Serialize for Gamma {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gamma {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Gamma, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `λ_m(γ) = Σ k · b · B(m a / b)`.
pub fn lambda_m(g: &Gamma, m: u64) -> Rational {
    assert!(m >= 1, "lambda_m needs m >= 1");
    g.terms().fold(Rational::zero(), |acc, (gen, k)| {
        acc + generator_lambda(gen, m) * Rational::from_integer(BigInt::from(k))
    })
}

/// `(d(γ), N(γ))`: total weighted denominator and total multiplicity.
pub fn degree_and_conductor(g: &Gamma) -> (u64, u64) {
    g.terms().fold((0, 0), |(d, n), (gen, k)| {
        (d + k as u64 * gen.b as u64, n + k as u64)
    })
}

/// Kodaira symbol of a singular fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    /// Local discriminant degree `d_v`.
    pub fn discriminant_degree(self) -> u32 {
        match self {
            Kodaira::I(nu) => nu,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IStar(nu) => 6 + nu,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }

    /// Local conductor degree `N_v`.
    pub fn conductor_degree(self) -> u32 {
        match self {
            Kodaira::I(_) => 1,
            _ => 2,
        }
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, Kodaira::I(_))
    }

    fn is_valid(self) -> bool {
        !matches!(self, Kodaira::I(0))
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(nu) => write!(f, "I{nu}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(nu) => write!(f, "I{nu}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for Kodaira {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Kodaira, OrbitError> {
        let bad = || OrbitError::IllegalFiber(format!("unknown Kodaira symbol `{s}`"));
        let k = match s {
            "II" => Kodaira::II,
            "III" => Kodaira::III,
            "IV" => Kodaira::IV,
            "IV*" => Kodaira::IVStar,
            "III*" => Kodaira::IIIStar,
            "II*" => Kodaira::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(bad)?;
                if let Some(nu) = rest.strip_suffix('*') {
                    Kodaira::IStar(nu.parse().map_err(|_| bad())?)
                } else {
                    Kodaira::I(rest.parse().map_err(|_| bad())?)
                }
            }
        };
        if k.is_valid() {
            Ok(k)
        } else {
            Err(bad())
        }
    }
}

/// Which multiplicity-one component of a singular fiber a section meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    Identity,
    /// Component `a` of `I_ν`, with `0 <= a <= ν/2`.
    Index(u32),
    /// The non-identity component(s) of III, IV, IV*, III*.
    NonIdentity,
    /// The order-2 component of `I*_ν` nearest the identity, `ν > 0`.
    Distinguished,
    /// A non-identity, non-distinguished component of `I*_ν`.
    Far,
}

/// A Kodaira type together with the component met by the section.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiberClass {
    kodaira: Kodaira,
    component: Component,
}

impl FiberClass {
    /// Validates the combination. For `I_ν`, `Identity` is stored as `Index(0)`.
    pub fn new(kodaira: Kodaira, component: Component) -> Result<FiberClass, OrbitError> {
        let illegal = || OrbitError::IllegalFiber(format!("{kodaira} with {component:?}"));
        if !kodaira.is_valid() {
            return Err(illegal());
        }
        let component = match (kodaira, component) {
            (Kodaira::I(_), Component::Identity) => Component::Index(0),
            (Kodaira::I(nu), Component::Index(a)) if 2 * a <= nu => component,
            (Kodaira::I(_), _) => return Err(illegal()),
            (_, Component::Identity) => Component::Identity,
            (
                Kodaira::III | Kodaira::IV | Kodaira::IVStar | Kodaira::IIIStar,
                Component::NonIdentity,
            ) => component,
            (Kodaira::IStar(nu), Component::Distinguished) if nu > 0 => component,
            (Kodaira::IStar(_), Component::Far) => component,
            _ => return Err(illegal()),
        };
        Ok(FiberClass { kodaira, component })
    }

    pub fn kodaira(&self) -> Kodaira {
        self.kodaira
    }

    pub fn component(&self) -> Component {
        self.component
    }

    /// Every legal component choice for a Kodaira type.
    pub fn all_for(kodaira: Kodaira) -> Vec<FiberClass> {
        let comps: Vec<Component> = match kodaira {
            Kodaira::I(nu) => (0..=nu / 2).map(Component::Index).collect(),
            Kodaira::II | Kodaira::IIStar => vec![Component::Identity],
            Kodaira::III | Kodaira::IV | Kodaira::IVStar | Kodaira::IIIStar => {
                vec![Component::Identity, Component::NonIdentity]
            }
            Kodaira::IStar(0) => vec![Component::Identity, Component::Far],
            Kodaira::IStar(_) => vec![
                Component::Identity,
                Component::Distinguished,
                Component::Far,
            ],
        };
        comps
            .into_iter()
            .filter_map(|c| FiberClass::new(kodaira, c).ok())
            .collect()
    }
}

/// The element `γ_v` of **G** attached to a fiber and the component the section meets.
pub fn fiber_to_gamma(f: FiberClass) -> Gamma {
    let half = OrbitGenerator::from_fraction(1, 2);
    let third = OrbitGenerator::from_fraction(1, 3);
    let zero = OrbitGenerator::ZERO;
    let dv = f.kodaira.discriminant_degree();
    match (f.kodaira, f.component) {
        (Kodaira::I(nu), Component::Index(a)) => {
            let g = a.gcd(&nu);
            Gamma::single(OrbitGenerator::from_fraction(a as i64, nu as i64), g)
        }
        (_, Component::Identity) => Gamma::single(zero, dv),
        (Kodaira::III, Component::NonIdentity) => Gamma::from_terms([(half, 1), (zero, 1)]),
        (Kodaira::IV, Component::NonIdentity) => Gamma::from_terms([(third, 1), (zero, 1)]),
        (Kodaira::IVStar, Component::NonIdentity) => Gamma::from_terms([(third, 2), (zero, 2)]),
        (Kodaira::IIIStar, Component::NonIdentity) => Gamma::from_terms([(half, 3), (zero, 3)]),
        (Kodaira::IStar(nu), Component::Distinguished) => {
            Gamma::from_terms([(half, 2), (zero, nu + 2)])
        }
        (Kodaira::IStar(nu), Component::Far) => {
            let mu = nu / 2;
            if nu % 2 == 0 {
                Gamma::from_terms([(half, mu + 2), (zero, 2)])
            } else {
                let quarter = OrbitGenerator::from_fraction(1, 4);
                Gamma::from_terms([(quarter, 1), (half, mu + 1), (zero, 1)])
            }
        }
        _ => unreachable!("FiberClass::new rejects {:?}", f),
    }
}

/// Local height correction `λ_v(mP)` when `P` meets the component recorded in `f`.
pub fn local_lambda(f: FiberClass, m: u64) -> Rational {
    assert!(m >= 1, "local_lambda needs m >= 1");
    let dv = f.kodaira.discriminant_degree() as i64;
    let identity = ratio(dv, 6);
    match (f.kodaira, f.component) {
        (Kodaira::I(nu), Component::Index(a)) => {
            let x = frac(&ratio(a as i64 * (m % nu as u64) as i64, nu as i64));
            bernoulli2(&x).expect("folded") * Rational::from_integer(BigInt::from(nu))
        }
        (_, Component::Identity) => identity,
        (Kodaira::III | Kodaira::IIIStar, Component::NonIdentity) => {
            if m % 2 == 0 {
                identity
            } else {
                Rational::zero()
            }
        }
        (Kodaira::IV | Kodaira::IVStar, Component::NonIdentity) => {
            if m % 3 == 0 {
                identity
            } else {
                Rational::zero()
            }
        }
        (Kodaira::IStar(nu), Component::Distinguished) => {
            if m % 2 == 0 {
                identity
            } else {
                ratio(nu as i64, 6)
            }
        }
        (Kodaira::IStar(nu), Component::Far) => {
            // Z/2 x Z/2 for even ν; Z/4 for odd ν, where twice a far
            // component is the distinguished one.
            if nu % 2 == 0 {
                if m % 2 == 0 {
                    identity
                } else {
                    ratio(-(nu as i64), 12)
                }
            } else {
                match m % 4 {
                    0 => identity,
                    2 => ratio(nu as i64, 6),
                    _ => ratio(-(nu as i64), 12),
                }
            }
        }
        _ => unreachable!("FiberClass::new rejects {:?}", f),
    }
}

/// Möbius function on positive integers.
pub fn moebius(mut n: u64) -> i32 {
    assert!(n >= 1);
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Helper for tests and fixtures: `true` when `q` is a nonnegative even integer.
pub fn is_naive_height(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative() && q.numer().is_even()
}
