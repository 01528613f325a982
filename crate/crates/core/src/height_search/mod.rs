//! Exhaustive search for small canonical heights over configurations γ.
//!
//! For every positive γ with `d(γ) = 12n` the search lists the heights
//! `ĥ = h(P) + λ_1(γ)` in `(0, H]`, derives `h(mP) = m^2 ĥ - λ_m(γ)` and keeps
//! the pairs that survive the parity, positivity, divisibility, conductor and
//! (optionally) Möbius constraints.

mod enumerate;
mod evaluate;
pub mod report;

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{decorate, decorations_for, enumerate_gammas, partitions, terms_to_gamma, Term};
pub use evaluate::{
    candidate_heights, divisors, feasibility_check, integral_run, moebius_defect, moebius_range,
    naive_height_seq, scaled_candidates, FilterSettings, ScaledCandidate, ScaledGamma,
};

use crate::orbit_group::{degree_and_conductor, Gamma};
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("n must be positive")]
    ZeroGenus,
    #[error("no height bound: pass a maximal multiple M or an explicit bound (defaults exist only for n <= 3)")]
    NoHeightBound,
    #[error("height bound must be positive, got {0}")]
    NonPositiveBound(String),
    #[error("jobs must be positive")]
    ZeroJobs,
    #[error("failed to start worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Base curve of genus 0 with a nontorsion point: conductor at least `2n + 3`.
    GenusZero,
    AnyGenus,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::GenusZero => "genus-zero",
            SearchMode::AnyGenus => "any-genus",
        })
    }
}

/// Why a candidate was rejected, with the witness that re-verifies it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "filter", rename_all = "kebab-case")]
pub enum Rejection {
    /// `N(γ)` below `2n + 3`.
    Conductor { conductor: u64, threshold: u64 },
    /// `h(mP)` is not an even integer.
    Parity { m: u64 },
    /// `h(mP) < 0`.
    Negative { m: u64 },
    /// `h(divisor · P) > h(mP)`.
    Monotone { m: u64, divisor: u64 },
    /// `Σ_{m'|m} μ(m/m') h(m'P) = defect < 0`.
    Moebius { m: u64, defect: i64 },
}

impl Rejection {
    pub fn filter_name(&self) -> &'static str {
        match self {
            Rejection::Conductor { .. } => "conductor",
            Rejection::Parity { .. } => "parity",
            Rejection::Negative { .. } => "negative",
            Rejection::Monotone { .. } => "monotone",
            Rejection::Moebius { .. } => "moebius",
        }
    }

    /// Re-evaluates the violated inequality from exact naive heights.
    pub fn reverify(&self, g: &Gamma, hhat: &Rational) -> bool {
        let h = |m: u64| naive_height_seq(g, hhat, &[m]).pop().unwrap();
        match *self {
            Rejection::Conductor { conductor, threshold } => {
                degree_and_conductor(g).1 == conductor && conductor < threshold
            }
            Rejection::Parity { m } => !crate::rational::is_even_integer(&h(m)),
            Rejection::Negative { m } => h(m) < Rational::zero(),
            Rejection::Monotone { m, divisor } => m % divisor == 0 && h(divisor) > h(m),
            Rejection::Moebius { m, defect } => {
                let d = moebius_defect(g, hhat, m);
                d < Rational::zero() && d == int(defect)
            }
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Conductor { conductor, threshold } => {
                write!(f, "conductor(N={conductor}<{threshold})")
            }
            Rejection::Parity { m } => write!(f, "parity(m={m})"),
            Rejection::Negative { m } => write!(f, "negative(m={m})"),
            Rejection::Monotone { m, divisor } => write!(f, "monotone(m={m},divisor={divisor})"),
            Rejection::Moebius { m, defect } => write!(f, "moebius(m={m},defect={defect})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    Feasible,
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Feasible => f.write_str("feasible"),
            Verdict::Rejected(r) => write!(f, "rejected:{r}"),
        }
    }
}

/// The maximal multiple used for the default bound when none is given.
pub fn default_max_multiple(n: u32) -> Option<u32> {
    match n {
        1 => Some(6),
        2 => Some(8),
        3 => Some(9),
        _ => None,
    }
}

/// `2n / M^2`: by the integral-multiple bound, any `P` with `MP` integral has `ĥ(P)` at most this.
pub fn default_height_bound(n: u32, max_multiple: u32) -> Rational {
    assert!(n >= 1 && max_multiple >= 1);
    ratio(2 * n as i64, (max_multiple as i64).pow(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: u32,
    pub mode: SearchMode,
    pub height_bound: Option<Rational>,
    pub max_multiple: Option<u32>,
    /// `None` picks the mode default: off for genus zero, on otherwise.
    pub moebius: Option<bool>,
    pub jobs: usize,
    /// Also report rejected candidates with their witnesses.
    pub keep_rejected: bool,
    /// Number of naive heights recorded per candidate; `None` means `2M` (or 12).
    pub naive_terms: Option<u64>,
}

impl SearchConfig {
    pub fn new(n: u32, mode: SearchMode) -> SearchConfig {
        SearchConfig {
            n,
            mode,
            height_bound: None,
            max_multiple: None,
            moebius: None,
            jobs: 1,
            keep_rejected: false,
            naive_terms: None,
        }
    }

    pub fn moebius_enabled(&self) -> bool {
        self.moebius.unwrap_or(self.mode == SearchMode::AnyGenus)
    }

    pub fn effective_max_multiple(&self) -> Option<u32> {
        self.max_multiple.or_else(|| {
            if self.height_bound.is_none() {
                default_max_multiple(self.n)
            } else {
                None
            }
        })
    }

    /// The bound `H` actually used.
    pub fn effective_bound(&self) -> Result<Rational, SearchError> {
        if self.n == 0 {
            return Err(SearchError::ZeroGenus);
        }
        let bound = match (&self.height_bound, self.effective_max_multiple()) {
            (Some(h), _) => h.clone(),
            (None, Some(m)) => default_height_bound(self.n, m),
            (None, None) => return Err(SearchError::NoHeightBound),
        };
        if bound <= Rational::zero() {
            return Err(SearchError::NonPositiveBound(bound.to_string()));
        }
        Ok(bound)
    }

    pub fn effective_naive_terms(&self) -> u64 {
        self.naive_terms
            .unwrap_or_else(|| self.effective_max_multiple().map(|m| 2 * m as u64).unwrap_or(12))
    }

    pub fn min_parts(&self) -> u32 {
        match self.mode {
            SearchMode::GenusZero => 2 * self.n + 3,
            SearchMode::AnyGenus => 0,
        }
    }

    pub fn filter_settings(&self) -> FilterSettings {
        FilterSettings {
            n: self.n,
            mode: self.mode,
            moebius: self.moebius_enabled(),
        }
    }
}

/// A `(γ, ĥ)` pair with its derived data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub gamma: Gamma,
    #[serde(with = "report::rational_str")]
    pub hhat: Rational,
    pub conductor: u64,
    pub degree: u64,
    pub integral_run: u64,
    /// `h(mP)` for `m = 1..=naive_terms`, as exact rationals (even integers when feasible).
    #[serde(with = "report::rational_vec")]
    pub naive_heights: Vec<Rational>,
    pub verdict: Verdict,
}

impl Candidate {
    fn build(gamma: Gamma, hhat: Rational, verdict: Verdict, integral_run: u64, terms: u64) -> Candidate {
        let ms: Vec<u64> = (1..=terms).collect();
        let naive_heights = naive_height_seq(&gamma, &hhat, &ms);
        let (degree, conductor) = degree_and_conductor(&gamma);
        Candidate {
            gamma,
            hhat,
            conductor,
            degree,
            integral_run,
            naive_heights,
            verdict,
        }
    }

    fn sort_key(&self) -> (Rational, String) {
        (self.hhat.clone(), self.gamma.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCounts {
    pub gammas: u64,
    pub candidates: u64,
    pub feasible: u64,
    pub rejected_conductor: u64,
    pub rejected_parity: u64,
    pub rejected_negative: u64,
    pub rejected_monotone: u64,
    pub rejected_moebius: u64,
}

impl SearchCounts {
    fn record(&mut self, v: &Verdict) {
        self.candidates += 1;
        match v {
            Verdict::Feasible => self.feasible += 1,
            Verdict::Rejected(r) => match r {
                Rejection::Conductor { .. } => self.rejected_conductor += 1,
                Rejection::Parity { .. } => self.rejected_parity += 1,
                Rejection::Negative { .. } => self.rejected_negative += 1,
                Rejection::Monotone { .. } => self.rejected_monotone += 1,
                Rejection::Moebius { .. } => self.rejected_moebius += 1,
            },
        }
    }

    fn merge(&mut self, o: &SearchCounts) {
        self.gammas += o.gammas;
        self.candidates += o.candidates;
        self.feasible += o.feasible;
        self.rejected_conductor += o.rejected_conductor;
        self.rejected_parity += o.rejected_parity;
        self.rejected_negative += o.rejected_negative;
        self.rejected_monotone += o.rejected_monotone;
        self.rejected_moebius += o.rejected_moebius;
    }
}

/// Echo of the configuration as actually run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: u32,
    pub mode: SearchMode,
    #[serde(with = "report::rational_str")]
    pub height_bound: Rational,
    pub max_multiple: Option<u32>,
    pub moebius: bool,
    pub naive_terms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: ConfigEcho,
    pub minimal_feasible: Option<Candidate>,
    /// Feasible candidates sorted by `(ĥ, γ string)`.
    pub ranked_candidates: Vec<Candidate>,
    /// Feasible candidates of maximal integral run.
    pub integral_run_champions: Vec<Candidate>,
    /// Only filled when `keep_rejected` is set; same ordering.
    pub rejected_candidates: Vec<Candidate>,
    pub counts: SearchCounts,
}

#[derive(Default)]
struct ShardResult {
    feasible: Vec<Candidate>,
    rejected: Vec<Candidate>,
    counts: SearchCounts,
}

fn search_partition(partition: &[u32], bound: &Rational, cfg: &SearchConfig, filters: &FilterSettings) -> ShardResult {
    let mut out = ShardResult::default();
    let terms_count = cfg.effective_naive_terms();
    for terms in decorate(partition) {
        out.counts.gammas += 1;
        let scaled = ScaledGamma::new(&terms);
        for hhat_scaled in scaled_candidates(&scaled, bound) {
            let cand = ScaledCandidate { gamma: &scaled, hhat_scaled };
            let verdict = cand.verdict(filters);
            out.counts.record(&verdict);
            if verdict.is_feasible() {
                let run = cand.integral_run();
                out.feasible.push(Candidate::build(terms_to_gamma(&terms), cand.hhat(), verdict, run, terms_count));
            } else if cfg.keep_rejected {
                out.rejected.push(Candidate::build(terms_to_gamma(&terms), cand.hhat(), verdict, 0, terms_count));
            }
        }
    }
    out
}

/// Runs the exhaustive search. The report does not depend on `cfg.jobs`.
pub fn run_search(cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let bound = cfg.effective_bound()?;
    if cfg.jobs == 0 {
        return Err(SearchError::ZeroJobs);
    }
    let filters = cfg.filter_settings();
    let parts = partitions(12 * cfg.n, cfg.min_parts());

    let shards: Vec<ShardResult> = if cfg.jobs == 1 {
        parts.iter().map(|p| search_partition(p, &bound, cfg, &filters)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))?;
        // Indexed collect keeps partition order.
        pool.install(|| {
            parts
                .par_iter()
                .map(|p| search_partition(p, &bound, cfg, &filters))
                .collect()
        })
    };

    let mut counts = SearchCounts::default();
    let mut feasible = Vec::new();
    let mut rejected = Vec::new();
    for shard in shards {
        counts.merge(&shard.counts);
        feasible.extend(shard.feasible);
        rejected.extend(shard.rejected);
    }
    feasible.sort_by_cached_key(Candidate::sort_key);
    rejected.sort_by_cached_key(Candidate::sort_key);

    let best_run = feasible.iter().map(|c| c.integral_run).max();
    let integral_run_champions = match best_run {
        Some(r) => feasible.iter().filter(|c| c.integral_run == r).cloned().collect(),
        None => Vec::new(),
    };

    Ok(SearchReport {
        config: ConfigEcho {
            n: cfg.n,
            mode: cfg.mode,
            height_bound: bound,
            max_multiple: cfg.effective_max_multiple(),
            moebius: filters.moebius,
            naive_terms: cfg.effective_naive_terms(),
        },
        minimal_feasible: feasible.first().cloned(),
        ranked_candidates: feasible,
        integral_run_champions,
        rejected_candidates: rejected,
        counts,
    })
}
