//! Naive-height sequences and the feasibility filters.
//!
//! Two routes compute the same quantities. The public functions
//! [`naive_height_seq`], [`moebius_defect`] and [`feasibility_check`] work on
//! [`Gamma`] with arbitrary-precision rationals. [`ScaledGamma`] is the
//! search loop's fixed-point version: every height is kept as an integer
//! multiple of `1 / (6L)`, `L` the lcm of the generator denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::enumerate::Term;
use super::{Rejection, SearchMode, Verdict};
use crate::orbit_group::{degree_and_conductor, lambda_m, moebius, Gamma};
use crate::rational::{int, Rational};

/// `h(mP) = m^2 ĥ - λ_m(γ)` for each `m` in `ms`.
pub fn naive_height_seq(g: &Gamma, hhat: &Rational, ms: &[u64]) -> Vec<Rational> {
    ms.iter()
        .map(|&m| int(m as i64 * m as i64) * hhat - lambda_m(g, m))
        .collect()
}

/// `Σ_{m' | m} μ(m/m') h(m'P)`.
pub fn moebius_defect(g: &Gamma, hhat: &Rational, m: u64) -> Rational {
    assert!(m >= 1);
    divisors(m)
        .into_iter()
        .filter_map(|d| {
            let mu = moebius(m / d);
            (mu != 0).then(|| int(mu as i64) * &naive_height_seq(g, hhat, &[d])[0])
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Largest `M` with `h(mP) = 0` for every `m <= M`.
pub fn integral_run(g: &Gamma, hhat: &Rational) -> u64 {
    let mut m = 0;
    while naive_height_seq(g, hhat, &[m + 1])[0].is_zero() {
        m += 1;
    }
    m
}

/// The candidate values `ĥ = h + λ_1(γ)` with `h` even, `h >= 0` and `0 < ĥ <= bound`.
pub fn candidate_heights(g: &Gamma, bound: &Rational) -> Vec<Rational> {
    assert!(bound.is_positive(), "height bound must be positive");
    let l1 = lambda_m(g, 1);
    let mut out = Vec::new();
    let mut h = Rational::zero();
    // Smallest even h >= 0 with h + λ_1 > 0.
    if !l1.is_positive() {
        let need = (-&l1).floor().to_integer() + BigInt::one();
        let need = if need.is_odd() { need + 1 } else { need };
        h = Rational::from_integer(need);
    }
    loop {
        let hhat = &h + &l1;
        if hhat > *bound {
            break;
        }
        out.push(hhat);
        h += int(2);
    }
    out
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Smallest `k >= 1` with `k^2 ĥ >= bound`.
fn ceil_sqrt_ratio(bound: &Rational, hhat: &Rational) -> u64 {
    let mut k = 1u64;
    while int((k * k) as i64) * hhat < *bound {
        k += 1;
    }
    k
}

/// The `m` values probed by the Möbius filter, ascending.
pub fn moebius_range(n: u32, hhat: &Rational) -> Vec<u64> {
    let m_max = ceil_sqrt_ratio(&int(4 * n as i64), hhat);
    let mut ms: Vec<u64> = (1..=4 * m_max).collect();
    ms.extend((1..=m_max).map(|m0| 6 * m0).filter(|&m| m > 4 * m_max));
    ms
}

/// Filter settings shared by both evaluation routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterSettings {
    pub n: u32,
    pub mode: SearchMode,
    pub moebius: bool,
}

impl FilterSettings {
    pub fn conductor_threshold(&self) -> Option<u64> {
        match self.mode {
            SearchMode::GenusZero => Some(2 * self.n as u64 + 3),
            SearchMode::AnyGenus => None,
        }
    }
}

/// Reference feasibility test on exact rationals.
///
/// Order of checks: conductor, parity over the exactness period,
/// nonnegativity and divisor-monotonicity, then the Möbius inequalities.
pub fn feasibility_check(g: &Gamma, hhat: &Rational, cfg: &FilterSettings) -> Verdict {
    assert!(hhat.is_positive());
    let n = cfg.n as i64;
    let (_, conductor) = degree_and_conductor(g);
    if let Some(threshold) = cfg.conductor_threshold() {
        if conductor < threshold {
            return Verdict::Rejected(Rejection::Conductor { conductor, threshold });
        }
    }
    let h = |m: u64| naive_height_seq(g, hhat, &[m]).pop().unwrap();

    let period = (2 * hhat.denom().to_u64().expect("height denominator fits u64"))
        .lcm(&g.denominator_lcm());
    for m in 1..=period {
        if !crate::rational::is_even_integer(&h(m)) {
            return Verdict::Rejected(Rejection::Parity { m });
        }
    }

    let two_n = int(2 * n);
    let four_n = int(4 * n);
    let mut m = 1u64;
    while int((m * m) as i64) * hhat < four_n {
        let hm = h(m);
        if int((m * m) as i64) * hhat < two_n && hm.is_negative() {
            return Verdict::Rejected(Rejection::Negative { m });
        }
        for d in divisors(m) {
            if d < m && h(d) > hm {
                return Verdict::Rejected(Rejection::Monotone { m, divisor: d });
            }
        }
        m += 1;
    }

    if cfg.moebius {
        for m in moebius_range(cfg.n, hhat) {
            let defect = moebius_defect(g, hhat, m);
            if defect.is_negative() {
                return Verdict::Rejected(Rejection::Moebius {
                    m,
                    defect: defect.to_integer().to_i64().unwrap_or(i64::MIN),
                });
            }
        }
    }
    Verdict::Feasible
}

/// Fixed-point view of a γ: heights times `6L` are exact integers.
#[derive(Clone, Debug)]
pub struct ScaledGamma<'a> {
    terms: &'a [Term],
    /// lcm of the generator denominators.
    pub lcm: i64,
    /// `6 * lcm`.
    pub scale: i64,
    /// `Σ k`.
    pub conductor: u64,
}

impl<'a> ScaledGamma<'a> {
    pub fn new(terms: &'a [Term]) -> ScaledGamma<'a> {
        let lcm = terms.iter().fold(1i64, |acc, t| acc.lcm(&(t.b as i64)));
        ScaledGamma {
            terms,
            lcm,
            scale: 6 * lcm,
            conductor: terms.iter().map(|t| t.k as u64).sum(),
        }
    }

    /// `6L · λ_m(γ)`, using `6 b^2 B(r/b) = 6r^2 - 6rb + b^2` with `r = ma mod b`.
    pub fn lambda_scaled(&self, m: u64) -> i128 {
        self.terms
            .iter()
            .map(|t| {
                let b = t.b as i128;
                let r = ((m % t.b as u64) * t.a as u64 % t.b as u64) as i128;
                let per = (6 * r * r - 6 * r * b + b * b) * (self.lcm as i128 / b);
                per * t.k as i128
            })
            .sum()
    }
}

/// A candidate `ĥ = hhat_scaled / scale` for one γ, evaluated in fixed point.
pub struct ScaledCandidate<'a> {
    pub gamma: &'a ScaledGamma<'a>,
    pub hhat_scaled: i128,
}

impl<'a> ScaledCandidate<'a> {
    /// `6L · h(mP)`.
    pub fn naive_scaled(&self, m: u64) -> i128 {
        let m = m as i128;
        m * m * self.hhat_scaled - self.gamma.lambda_scaled(m as u64)
    }

    pub fn hhat(&self) -> Rational {
        Rational::new(BigInt::from(self.hhat_scaled), BigInt::from(self.gamma.scale))
    }

    fn is_even_height(&self, m: u64) -> bool {
        let v = self.naive_scaled(m);
        let scale = self.gamma.scale as i128;
        v % scale == 0 && (v / scale) % 2 == 0
    }

    /// `m^2 ĥ < c` for integer `c`.
    fn m2_hhat_below(&self, m: u64, c: i64) -> bool {
        let m = m as i128;
        m * m * self.hhat_scaled < c as i128 * self.gamma.scale as i128
    }

    fn moebius_defect_scaled(&self, m: u64) -> i128 {
        divisors(m)
            .into_iter()
            .map(|d| moebius(m / d) as i128 * self.naive_scaled(d))
            .sum()
    }

    pub fn integral_run(&self) -> u64 {
        let mut m = 0;
        while self.naive_scaled(m + 1) == 0 {
            m += 1;
        }
        m
    }

    /// Same checks, same order and same witnesses as [`feasibility_check`].
    pub fn verdict(&self, cfg: &FilterSettings) -> Verdict {
        let n = cfg.n as i64;
        if let Some(threshold) = cfg.conductor_threshold() {
            if self.gamma.conductor < threshold {
                return Verdict::Rejected(Rejection::Conductor {
                    conductor: self.gamma.conductor,
                    threshold,
                });
            }
        }
        let hhat_den = {
            let g = self.hhat_scaled.gcd(&(self.gamma.scale as i128));
            (self.gamma.scale as i128 / g) as u64
        };
        let period = (2 * hhat_den).lcm(&(self.gamma.lcm as u64));
        for m in 1..=period {
            if !self.is_even_height(m) {
                return Verdict::Rejected(Rejection::Parity { m });
            }
        }
        let mut m = 1u64;
        while self.m2_hhat_below(m, 4 * n) {
            let hm = self.naive_scaled(m);
            if self.m2_hhat_below(m, 2 * n) && hm < 0 {
                return Verdict::Rejected(Rejection::Negative { m });
            }
            for d in divisors(m) {
                if d < m && self.naive_scaled(d) > hm {
                    return Verdict::Rejected(Rejection::Monotone { m, divisor: d });
                }
            }
            m += 1;
        }
        if cfg.moebius {
            for m in moebius_range(cfg.n, &self.hhat()) {
                let defect = self.moebius_defect_scaled(m);
                if defect < 0 {
                    let defect = defect / self.gamma.scale as i128;
                    return Verdict::Rejected(Rejection::Moebius { m, defect: defect as i64 });
                }
            }
        }
        Verdict::Feasible
    }
}

/// Candidate `6L · ĥ` values in `(0, bound]` for a scaled γ.
pub fn scaled_candidates(g: &ScaledGamma<'_>, bound: &Rational) -> Vec<i128> {
    let l1 = g.lambda_scaled(1);
    let scale = g.scale as i128;
    // bound * scale, floored: ĥ_scaled <= floor(bound * 6L).
    let limit = (bound * Rational::from_integer(BigInt::from(scale)))
        .floor()
        .to_integer()
        .to_i128()
        .expect("bound fits i128");
    let step = 2 * scale;
    // Smallest even h >= 0 with h*scale + l1 > 0.
    let mut h: i128 = 0;
    if l1 <= 0 {
        h = (-l1).div_euclid(scale) + 1;
        if h % 2 == 1 {
            h += 1;
        }
    }
    let mut out = Vec::new();
    let mut v = h * scale + l1;
    while v <= limit {
        out.push(v);
        v += step;
    }
    out
}
