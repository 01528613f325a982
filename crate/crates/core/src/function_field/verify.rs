//! End-to-end check of a family member against its reference `(ĥ, γ)`.

use serde::Serialize;

use super::families::{family, Family};
use super::fibers::{classify_fibers, FiberReport};
use super::infer::infer_from_heights;
use super::FFError;
use crate::orbit_group::lambda_m;
use crate::rational::{format_rational, format_rational_pq, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InferredRow {
    pub hhat: String,
    pub gamma: String,
    pub assignments: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub family: String,
    pub param: String,
    pub n: u32,
    pub fibers: FiberReport,
    /// `h(mP)` for `m = 1..=m_check` from the group law.
    pub naive_heights: Vec<u32>,
    pub integral_run: u64,
    pub expected_run: u64,
    pub golden_hhat: String,
    pub golden_gamma: String,
    pub inferred: Vec<InferredRow>,
    pub checks: Vec<Check>,
    pub verified: bool,
}

/// Builds the family member, computes `P, ..., KP`, classifies fibers and
/// compares everything with the reference data. `multiples` defaults to the
/// reference integral run and `m_check` to twice that.
pub fn verify_family(
    which: Family,
    param: &Rational,
    multiples: Option<u64>,
    m_check: Option<u64>,
) -> Result<VerifyReport, FFError> {
    let (hhat, gamma, run) = which.golden();
    let multiples = multiples.unwrap_or(run);
    let m_check = m_check.unwrap_or(2 * run).max(multiples).max(1);
    let (curve, point) = family(which, param)?;
    let fibers = classify_fibers(&curve)?;
    let heights = curve.naive_heights(&point, m_check)?;
    let integral_run = heights.iter().take_while(|&&h| h == 0).count() as u64;

    let mut checks = Vec::new();
    let twelve_n = 12 * which.n();
    checks.push(Check {
        name: "discriminant-degree",
        passed: fibers.discriminant_degree == twelve_n,
        detail: format!("sum of place degree times d_v = {}, expected {twelve_n}", fibers.discriminant_degree),
    });
    checks.push(Check {
        name: "integral-multiples",
        passed: integral_run >= multiples,
        detail: format!("mP integral for m <= {integral_run}, required {multiples}"),
    });
    let mismatch = heights.iter().enumerate().find_map(|(i, &h)| {
        let m = i as u64 + 1;
        let want = Rational::from_integer((m * m).into()) * &hhat - lambda_m(&gamma, m);
        (want != Rational::from_integer(h.into())).then_some((m, h, want))
    });
    checks.push(Check {
        name: "height-formula",
        passed: mismatch.is_none(),
        detail: match &mismatch {
            None => format!("h(mP) = m^2 hhat - lambda_m(gamma) for m <= {m_check}"),
            Some((m, h, want)) => format!("m = {m}: group law gives {h}, formula gives {}", format_rational(want)),
        },
    });
    let inferred = match infer_from_heights(&fibers, &heights) {
        Ok(v) => v,
        Err(FFError::NoSurvivors) => Vec::new(),
        Err(e) => return Err(e),
    };
    let found = inferred.iter().any(|d| d.hhat == hhat && d.gamma == gamma);
    checks.push(Check {
        name: "inferred-height-data",
        passed: found,
        detail: format!("{} surviving (hhat, gamma) pair(s)", inferred.len()),
    });
    let verified = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        family: which.name().to_string(),
        param: format_rational_pq(param),
        n: which.n(),
        fibers,
        naive_heights: heights,
        integral_run,
        expected_run: run,
        golden_hhat: format_rational_pq(&hhat),
        golden_gamma: gamma.to_string(),
        inferred: inferred
            .iter()
            .map(|d| InferredRow {
                hhat: format_rational_pq(&d.hhat),
                gamma: d.gamma.to_string(),
                assignments: d.assignments,
            })
            .collect(),
        checks,
        verified,
    })
}
