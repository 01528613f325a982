//! Kodaira types of the singular fibers, found from valuations of `c4`,
//! `c6` and `Δ` along gcd-refined squarefree factors of `Δ`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::curve::FFCurve;
use super::poly::HomogeneousPoly;
use super::FFError;
use crate::orbit_group::Kodaira;

/// One refined place: a squarefree form along which the valuations are constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberEntry {
    pub place: HomogeneousPoly,
    pub place_degree: u32,
    pub kodaira: Kodaira,
    pub v_delta: u32,
    /// `None` when `c4` vanishes identically.
    pub v_c4: Option<u32>,
    pub v_c6: Option<u32>,
}

impl FiberEntry {
    /// Discriminant degree contributed, counting conjugate fibers.
    pub fn total_discriminant(&self) -> u32 {
        self.place_degree * self.kodaira.discriminant_degree()
    }

    pub fn total_conductor(&self) -> u32 {
        self.place_degree * self.kodaira.conductor_degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub entries: Vec<FiberEntry>,
    /// `Σ placeDegree · d_v`, always `12n` for a valid model.
    pub discriminant_degree: u32,
    /// Conductor degree `N = Σ placeDegree · N_v`.
    pub conductor: u32,
}

impl FiberReport {
    /// Kodaira types with each place counted once, sorted.
    pub fn kodaira_multiset(&self) -> Vec<Kodaira> {
        let mut v: Vec<Kodaira> = self.entries.iter().map(|e| e.kodaira).collect();
        v.sort();
        v
    }

    /// Kodaira types of the geometric fibers (places repeated by degree), sorted.
    pub fn geometric_multiset(&self) -> Vec<Kodaira> {
        let mut v: Vec<Kodaira> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.kodaira, e.place_degree as usize))
            .collect();
        v.sort();
        v
    }

    pub fn is_semistable(&self) -> bool {
        self.entries.iter().all(|e| e.kodaira.is_multiplicative())
    }

    /// Entry whose place equals `place` up to scalars.
    pub fn entry_at(&self, place: &HomogeneousPoly) -> Option<&FiberEntry> {
        let want = place.normalized();
        self.entries.iter().find(|e| e.place == want)
    }
}

fn classify(v_delta: u32, v4: Option<u32>, v6: Option<u32>) -> Option<Kodaira> {
    let big = u32::MAX;
    let (c4, c6) = (v4.unwrap_or(big), v6.unwrap_or(big));
    if c4 == 0 {
        return (v_delta > 0).then_some(Kodaira::I(v_delta));
    }
    if c6 == 0 {
        return None;
    }
    let k = match v_delta {
        2 => Kodaira::II,
        3 if c4 == 1 => Kodaira::III,
        4 if c6 == 2 => Kodaira::IV,
        6 if c4 >= 2 && c6 >= 3 => Kodaira::IStar(0),
        d if d > 6 && c4 == 2 && c6 == 3 => Kodaira::IStar(d - 6),
        8 if c6 == 4 => Kodaira::IVStar,
        9 if c4 == 3 => Kodaira::IIIStar,
        10 if c6 == 5 => Kodaira::IIStar,
        _ => return None,
    };
    Some(k)
}

/// Refines the squarefree factors of `Δ` against `c4` and `c6` and classifies each piece.
pub fn classify_fibers(e: &FFCurve) -> Result<FiberReport, FFError> {
    let mut entries = Vec::new();
    for (v_delta, factor) in e.discriminant().squarefree_decomposition() {
        for (v4, part) in factor.split_by_valuation(e.c4()) {
            for (v6, place) in part.split_by_valuation(e.c6()) {
                if v4.unwrap_or(u32::MAX) >= 4 && v6.unwrap_or(u32::MAX) >= 6 {
                    return Err(FFError::NonMinimal(place.to_string()));
                }
                let kodaira = classify(v_delta, v4, v6).ok_or(FFError::ClassificationMiss {
                    v_delta,
                    v_c4: v4,
                    v_c6: v6,
                })?;
                entries.push(FiberEntry {
                    place_degree: place.degree(),
                    place,
                    kodaira,
                    v_delta,
                    v_c4: v4,
                    v_c6: v6,
                });
            }
        }
    }
    entries.sort_by(|a, b| {
        (a.place_degree, a.place.coeffs()).cmp(&(b.place_degree, b.place.coeffs()))
    });
    let discriminant_degree = entries.iter().map(FiberEntry::total_discriminant).sum();
    let conductor = entries.iter().map(FiberEntry::total_conductor).sum();
    Ok(FiberReport { entries, discriminant_degree, conductor })
}

impl Serialize for FiberEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiberEntry", 6)?;
        st.serialize_field("place", &self.place.to_string())?;
        st.serialize_field("degree", &self.place_degree)?;
        st.serialize_field("kodaira", &self.kodaira.to_string())?;
        st.serialize_field("vC4", &self.v_c4)?;
        st.serialize_field("vC6", &self.v_c6)?;
        st.serialize_field("vDelta", &self.v_delta)?;
        st.end()
    }
}

impl Serialize for FiberReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FiberReport", 3)?;
        st.serialize_field("entries", &self.entries)?;
        st.serialize_field("discriminant_degree", &self.discriminant_degree)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.end()
    }
}
