//! TSV and JSON serialization of search reports.

use std::io::{self, Write};

use super::{Candidate, SearchReport};
use crate::rational::format_rational_pq;

pub const TSV_HEADER: &str = "hhat\tgamma\tN\td\tintegral_run\tnaive_heights\tverdict";

/// Serde adapter: a rational as a `"p/q"` string.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational_pq, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational_pq(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a list of rationals as `"p/q"` strings.
pub mod rational_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational_pq, parse_rational, Rational};

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&format_rational_pq(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// One TSV row. Naive heights are printed as integers when integral.
pub fn tsv_row(c: &Candidate) -> String {
    let heights: Vec<String> = c
        .naive_heights
        .iter()
        .map(crate::rational::format_rational)
        .collect();
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        format_rational_pq(&c.hhat),
        c.gamma,
        c.conductor,
        c.degree,
        c.integral_run,
        heights.join(" "),
        c.verdict
    )
}

/// Header, then ranked feasible candidates, then rejected ones when kept.
pub fn write_tsv<W: Write>(report: &SearchReport, mut sink: W) -> io::Result<()> {
    writeln!(sink, "{TSV_HEADER}")?;
    for c in report.ranked_candidates.iter().chain(&report.rejected_candidates) {
        writeln!(sink, "{}", tsv_row(c))?;
    }
    Ok(())
}

pub fn write_json<W: Write>(report: &SearchReport, mut sink: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut sink, report)?;
    writeln!(sink)
}

pub fn parse_json(text: &str) -> serde_json::Result<SearchReport> {
    serde_json::from_str(text)
}
