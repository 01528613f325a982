//! Enumeration of positive γ with a fixed total degree.
//!
//! Partitions of `12n` are produced in descending lexicographic order. Each
//! partition is then decorated: every part `b` receives a numerator `a` with
//! `0 <= a <= b/2` and `gcd(a, b) = 1`. Repeated parts get multisets of
//! numerators, listed in lexicographic order of their ascending sequences.

use num_integer::Integer;

use crate::orbit_group::{Gamma, OrbitGenerator};

/// One generator with its multiplicity, in the flat form used by the search loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub a: u32,
    pub b: u32,
    pub k: u32,
}

/// All partitions of `total` into at least `min_parts` parts, largest parts first,
/// in descending lexicographic order.
pub fn partitions(total: u32, min_parts: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, min_parts: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            if cur.len() as u32 >= min_parts {
                out.push(cur.clone());
            }
            return;
        }
        // Even with all remaining parts equal to 1 we could not reach min_parts.
        if (cur.len() as u32 + rest) < min_parts {
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, min_parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, min_parts, &mut Vec::new(), &mut out);
    out
}

/// Numerators `a` with `0 <= a <= b/2` and `gcd(a, b) = 1`, ascending.
pub fn decorations_for(b: u32) -> Vec<u32> {
    (0..=b / 2).filter(|a| a.gcd(&b) == 1).collect()
}

/// Multisets of size `size` drawn from `0..choices`, as non-decreasing index
/// sequences in lexicographic order.
fn multisets(choices: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, choices: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..choices {
            cur.push(i);
            rec(i, choices, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, choices, size, &mut Vec::new(), &mut out);
    out
}

/// Every decoration of one partition, as flat term lists.
pub fn decorate(partition: &[u32]) -> Vec<Vec<Term>> {
    // Distinct parts, descending, with their repeat counts.
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in partition {
        match groups.last_mut() {
            Some((b, c)) if *b == p => *c += 1,
            _ => groups.push((p, 1)),
        }
    }
    let options: Vec<(u32, Vec<u32>, Vec<Vec<usize>>)> = groups
        .iter()
        .map(|&(b, count)| {
            let decs = decorations_for(b);
            let sets = multisets(decs.len(), count);
            (b, decs, sets)
        })
        .collect();

    let mut out = Vec::new();
    let mut odometer = vec![0usize; options.len()];
    loop {
        let mut terms: Vec<Term> = Vec::new();
        for (slot, (b, decs, sets)) in options.iter().enumerate() {
            for &idx in &sets[odometer[slot]] {
                let a = decs[idx];
                match terms.last_mut() {
                    Some(t) if t.b == *b && t.a == a => t.k += 1,
                    _ => terms.push(Term { a, b: *b, k: 1 }),
                }
            }
        }
        out.push(terms);
        // Advance, last slot fastest.
        let mut slot = options.len();
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            odometer[slot] += 1;
            if odometer[slot] < options[slot].2.len() {
                break;
            }
            odometer[slot] = 0;
        }
    }
}

pub fn terms_to_gamma(terms: &[Term]) -> Gamma {
    Gamma::from_terms(
        terms
            .iter()
            .map(|t| (OrbitGenerator::from_fraction(t.a as i64, t.b as i64), t.k)),
    )
}

/// Every positive γ with `d(γ) = 12n` and `N(γ) >= min_parts`, each exactly once,
/// in canonical enumeration order.
pub fn enumerate_gammas(n: u32, min_parts: u32) -> impl Iterator<Item = Gamma> {
    partitions(12 * n, min_parts)
        .into_iter()
        .flat_map(|p| decorate(&p).into_iter().map(|t| terms_to_gamma(&t)))
}
