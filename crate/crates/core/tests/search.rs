use heightlab::height_search::report::{parse_json, tsv_row, write_json, write_tsv, TSV_HEADER};
use heightlab::height_search::{run_search, Rejection, SearchConfig, SearchMode, SearchReport, Verdict};
use heightlab::orbit_group::{degree_and_conductor, Gamma};
use heightlab::rational::{ratio, Rational};

fn g(s: &str) -> Gamma {
    s.parse().unwrap()
}

fn search(n: u32, mode: SearchMode, bound: Option<Rational>, moebius: Option<bool>) -> SearchReport {
    let mut cfg = SearchConfig::new(n, mode);
    cfg.height_bound = bound;
    cfg.moebius = moebius;
    run_search(&cfg).unwrap()
}

fn ranked(report: &SearchReport) -> Vec<(Rational, Gamma)> {
    report
        .ranked_candidates
        .iter()
        .map(|c| (c.hhat.clone(), c.gamma.clone()))
        .collect()
}

#[test]
fn n1_minimum_and_unique_run6() {
    let r = search(1, SearchMode::GenusZero, Some(ratio(1, 18)), None);
    let min = r.minimal_feasible.as_ref().unwrap();
    assert_eq!(min.hhat, ratio(1, 30));
    assert_eq!(min.gamma, g("[1/5]+[1/3]+[1/2]+2[0]"));
    let long: Vec<_> = r.ranked_candidates.iter().filter(|c| c.integral_run >= 6).collect();
    assert_eq!(long.len(), 1);
    assert_eq!(long[0].gamma, min.gamma);
}

#[test]
fn n2_any_genus_without_moebius() {
    let r = search(2, SearchMode::AnyGenus, None, Some(false));
    let min = r.minimal_feasible.as_ref().unwrap();
    assert_eq!(min.hhat, ratio(4, 165));
    assert_eq!(min.gamma, g("[1/11]+2[2/5]+[1/3]"));
    for (m, h) in [(2, 0), (4, 2), (6, 2), (12, 2)] {
        assert_eq!(min.naive_heights[m - 1], Rational::from_integer(h.into()), "m = {m}");
    }
}

#[test]
fn n2_any_genus_with_moebius() {
    let r = search(2, SearchMode::AnyGenus, None, None);
    let min = r.minimal_feasible.as_ref().unwrap();
    assert_eq!(min.hhat, ratio(11, 420));
    assert_eq!(min.gamma, g("[1/7]+[2/5]+[1/4]+[1/3]+[1/2]+3[0]"));
}

#[test]
fn n2_genus_zero() {
    let r = search(2, SearchMode::GenusZero, None, None);
    let min = r.minimal_feasible.as_ref().unwrap();
    assert_eq!(min.hhat, ratio(11, 420));
    let (_, conductor) = degree_and_conductor(&g("[1/11]+2[2/5]+[1/3]"));
    assert_eq!(conductor, 4);
    assert!(conductor < 7);
    assert!(r.ranked_candidates.iter().all(|c| c.hhat != ratio(4, 165)));
    let run8: Vec<_> = r.ranked_candidates.iter().filter(|c| c.integral_run >= 8).collect();
    assert_eq!(run8.len(), 1);
    assert_eq!(run8[0].hhat, ratio(11, 420));
    assert_eq!(r.integral_run_champions.len(), 1);
}

#[test]
fn n3_genus_zero() {
    let r = search(3, SearchMode::GenusZero, Some(ratio(2, 27)), None);
    let min = r.minimal_feasible.as_ref().unwrap();
    assert_eq!(min.hhat, ratio(23, 840));
    assert_eq!(min.gamma, g("[1/8]+[3/7]+[1/5]+[1/4]+2[1/3]+[1/2]+4[0]"));
    let run9: Vec<_> = r.ranked_candidates.iter().filter(|c| c.integral_run >= 9).collect();
    assert_eq!(run9.len(), 1);
    assert_eq!(run9[0].gamma, min.gamma);
    assert!(tsv_row(min).starts_with("23/840\t[1/8]+[3/7]+[1/5]+[1/4]+2[1/3]+[1/2]+4[0]\t11\t36\t9\t"));
}

#[test]
fn n3_any_genus_rows_below_23_840() {
    let mut cfg = SearchConfig::new(3, SearchMode::AnyGenus);
    cfg.height_bound = Some(ratio(23, 840));
    cfg.keep_rejected = true;
    let r = run_search(&cfg).unwrap();
    let below: Vec<(Rational, Gamma)> = ranked(&r).into_iter().filter(|(h, _)| *h < ratio(23, 840)).collect();
    let expected = vec![
        (ratio(23, 1144), g("[1/13]+[3/11]+[3/8]+2[1/2]")),
        (ratio(17, 728), g("[1/13]+[3/8]+[2/7]+[1/4]+2[1/2]")),
        (ratio(65, 2772), g("[1/11]+[4/9]+[2/7]+[1/4]+[1/3]+2[0]")),
        (ratio(7, 264), g("[1/12]+[3/11]+[3/8]+2[1/2]+[0]")),
        (ratio(41, 1540), g("[1/11]+[3/7]+2[1/5]+[1/4]+2[1/2]")),
    ];
    assert_eq!(below, expected);
    for (_, gamma) in &expected {
        assert!(degree_and_conductor(gamma).1 <= 7);
    }
    let target = g("[1/13]+[3/8]+[3/7]+[1/5]+[1/3]");
    let rej = r
        .rejected_candidates
        .iter()
        .find(|c| c.gamma == target && c.hhat == ratio(229, 10920))
        .expect("229/10920 is listed as rejected");
    match &rej.verdict {
        Verdict::Rejected(w @ Rejection::Moebius { .. }) => assert!(w.reverify(&target, &ratio(229, 10920))),
        other => panic!("unexpected verdict {other}"),
    }
}

#[test]
fn witnesses_reverify() {
    let mut cfg = SearchConfig::new(2, SearchMode::AnyGenus);
    cfg.keep_rejected = true;
    let r = run_search(&cfg).unwrap();
    assert!(!r.rejected_candidates.is_empty());
    for c in &r.rejected_candidates {
        match &c.verdict {
            Verdict::Rejected(w) => assert!(w.reverify(&c.gamma, &c.hhat), "{} {}", c.gamma, w),
            Verdict::Feasible => panic!("feasible row among rejected"),
        }
    }
}

#[test]
fn reports_are_independent_of_jobs() {
    for (n, mode) in [(2, SearchMode::AnyGenus), (3, SearchMode::GenusZero)] {
        let mut cfg = SearchConfig::new(n, mode);
        cfg.keep_rejected = true;
        let one = run_search(&cfg).unwrap();
        cfg.jobs = 4;
        let four = run_search(&cfg).unwrap();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        write_tsv(&one, &mut a).unwrap();
        write_tsv(&four, &mut b).unwrap();
        assert_eq!(a, b);
        let (mut a, mut b) = (Vec::new(), Vec::new());
        write_json(&one, &mut a).unwrap();
        write_json(&four, &mut b).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn json_round_trip() {
    let mut cfg = SearchConfig::new(1, SearchMode::GenusZero);
    cfg.keep_rejected = true;
    let r = run_search(&cfg).unwrap();
    let mut buf = Vec::new();
    write_json(&r, &mut buf).unwrap();
    assert_eq!(parse_json(std::str::from_utf8(&buf).unwrap()).unwrap(), r);
}

#[test]
fn empty_report_is_header_only() {
    let r = search(1, SearchMode::GenusZero, Some(ratio(1, 1000)), None);
    assert!(r.ranked_candidates.is_empty());
    assert!(r.minimal_feasible.is_none());
    let mut buf = Vec::new();
    write_tsv(&r, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), format!("{TSV_HEADER}\n"));
}
