//! Recovers `(ĥ, γ)` from group-law naive heights by trying every choice of
//! components at the singular fibers.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::curve::FFCurve;
use super::fibers::{classify_fibers, FiberReport};
use super::point::FFPoint;
use super::FFError;
use crate::orbit_group::{fiber_to_gamma, lambda_m, FiberClass, Gamma};
use crate::rational::Rational;

/// A surviving `(ĥ, γ)` with one component assignment that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightData {
    pub hhat: Rational,
    pub gamma: Gamma,
    /// For each fiber entry, the components met at its geometric fibers.
    pub components: Vec<Vec<FiberClass>>,
    /// Number of distinct assignments giving this `(ĥ, γ)`.
    pub assignments: usize,
}

/// Multisets of size `k` drawn from `options`, as index lists in nondecreasing order.
fn multisets(options: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, options: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..options {
            cur.push(i);
            rec(i, options, k, cur, out);
            cur.pop();
        }
    }
    rec(0, options, k, &mut cur, &mut out);
    out
}

/// Per-entry choices: every multiset of legal components over the place's geometric fibers.
fn entry_choices(report: &FiberReport) -> Vec<Vec<(Vec<FiberClass>, Gamma)>> {
    report
        .entries
        .iter()
        .map(|e| {
            let opts = FiberClass::all_for(e.kodaira);
            multisets(opts.len(), e.place_degree as usize)
                .into_iter()
                .map(|idx| {
                    let classes: Vec<FiberClass> = idx.iter().map(|&i| opts[i]).collect();
                    let mut g = Gamma::new();
                    for c in &classes {
                        g.merge(&fiber_to_gamma(*c));
                    }
                    (classes, g)
                })
                .collect()
        })
        .collect()
}

/// Every `(ĥ, γ)` consistent with `h(mP) = m²ĥ − λ_m(γ)` for `m ≤ m_check`,
/// sorted by `ĥ` and then by the text of `γ`.
pub fn infer_height_data(e: &FFCurve, p: &FFPoint, m_check: u64) -> Result<Vec<HeightData>, FFError> {
    let heights = e.naive_heights(p, m_check.max(1))?;
    let report = classify_fibers(e)?;
    infer_from_heights(&report, &heights)
}

/// As [`infer_height_data`], from a fiber report and precomputed heights of `P, 2P, ...`.
pub fn infer_from_heights(report: &FiberReport, heights: &[u32]) -> Result<Vec<HeightData>, FFError> {
    let choices = entry_choices(report);
    let h1 = Rational::from_integer(heights[0].into());
    let mut found: BTreeMap<(Rational, String), HeightData> = BTreeMap::new();
    let mut pick = vec![0usize; choices.len()];
    loop {
        let mut gamma = Gamma::new();
        for (slot, &i) in choices.iter().zip(&pick) {
            gamma.merge(&slot[i].1);
        }
        let hhat = &h1 + lambda_m(&gamma, 1);
        let consistent = heights.iter().enumerate().all(|(i, &h)| {
            let m = i as u64 + 1;
            let m2 = Rational::from_integer((m * m).into());
            &m2 * &hhat - lambda_m(&gamma, m) == Rational::from_integer(h.into())
        });
        if consistent && !hhat.is_zero() {
            let key = (hhat.clone(), gamma.to_string());
            found
                .entry(key)
                .and_modify(|d| d.assignments += 1)
                .or_insert_with(|| HeightData {
                    hhat,
                    gamma,
                    components: choices.iter().zip(&pick).map(|(slot, &i)| slot[i].0.clone()).collect(),
                    assignments: 1,
                });
        }
        // odometer, last entry fastest
        let mut k = choices.len();
        loop {
            if k == 0 {
                let out: Vec<HeightData> = found.into_values().collect();
                return if out.is_empty() { Err(FFError::NoSurvivors) } else { Ok(out) };
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}
