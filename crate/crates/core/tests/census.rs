// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::io::BufReader;

use s4census_core::census::checks::{lemma1_range, parse_checks, verify_records, Check};
use s4census_core::census::io::{counts_csv, read_jsonl, write_jsonl, Header};
use s4census_core::census::{
    enumerate_cubic_fields, enumerate_quartic_fields, enumerate_quartic_fields_with, fiber_audit, lemma1_count_check,
    lemma2_count_check, scaling_profile, CensusOptions, ClassGroupCache, GroupFilter,
};
use s4census_core::poly::{GaloisLabel, IntPolynomial};
use s4census_core::s4param::Verdict;
use s4census_core::Error;

fn checks(s: &str) -> BTreeSet<Check> {
    parse_checks(s).unwrap()
}

#[test]
fn jsonl_round_trip() {
    let records = enumerate_quartic_fields(1200).unwrap();
    let header = Header::new(4, 1200, GroupFilter::All, records.len());
    let mut buf = Vec::new();
    write_jsonl(&mut buf, &header, &records).unwrap();
    let (h, back) = read_jsonl(BufReader::new(&buf[..])).unwrap();
    assert_eq!(h, header);
    assert_eq!(back, records);

    let text = String::from_utf8(buf.clone()).unwrap();
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["format"], "s4census-fields");
    assert_eq!(first["version"], 1);
    let rec: serde_json::Value = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
    let keys: BTreeSet<&str> = rec.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    let expected: BTreeSet<&str> =
        ["poly", "disc", "sig", "galois", "triple", "conductor_S", "shape", "tame", "clk", "clM", "verdicts"].into();
    assert_eq!(keys, expected);

    let truncated = text.lines().take(3).collect::<Vec<_>>().join("\n");
    assert!(matches!(read_jsonl(BufReader::new(truncated.as_bytes())), Err(Error::Parse(_))));
}

#[test]
fn anchor_record_fields() {
    let records = enumerate_quartic_fields(283).unwrap();
    let r = records.iter().find(|r| r.disc == -283).unwrap();
    let v = serde_json::to_value(r).unwrap();
    assert_eq!(v["poly"], serde_json::json!([-1, -1, 0, 0, 1]));
    assert_eq!(v["sig"], serde_json::json!([2, 1]));
    assert_eq!(v["galois"], "S4");
    assert_eq!(v["triple"], serde_json::json!({"a": 283, "b": 1, "cS": 1}));
    assert_eq!(v["conductor_S"], 283);
    assert_eq!(v["clk"]["h"], 3);
    assert_eq!(v["clM"]["h"], 2);
    assert!(r.all_pass());
}

#[test]
fn verify_passes_on_clean_census() {
    let x = 2500;
    let q = enumerate_quartic_fields(x).unwrap();
    let c = enumerate_cubic_fields(x).unwrap();
    let rep = verify_records(x, &checks("tables,shape,gerth,fibers,lemma1,lemma2,scaling"), &q, &c).unwrap();
    for (name, r) in &rep.checks {
        assert!(r.passed, "{name}: {:?}", r.failures);
    }
    assert!(rep.passed);
}

#[test]
fn tampered_records_are_caught() {
    let x = 1500;
    let q = enumerate_quartic_fields(x).unwrap();
    let c = enumerate_cubic_fields(x).unwrap();
    let s4_index = q.iter().position(|r| r.galois == GaloisLabel::S4).unwrap();

    let mut bad = q.clone();
    bad[s4_index].tame[0].v_d += 1;
    let rep = verify_records(x, &checks("tables"), &bad, &c).unwrap();
    assert!(!rep.passed);

    let mut bad = q.clone();
    let t = bad[s4_index].triple.as_mut().unwrap();
    t.c_s *= 5;
    let rep = verify_records(x, &checks("shape"), &bad, &c).unwrap();
    assert!(!rep.checks["shape"].passed);

    let mut bad_c = c.clone();
    let s3 = bad_c.iter_mut().find(|r| r.galois == GaloisLabel::S3 && r.cl_m.as_ref().unwrap().rk3 == 0).unwrap();
    s3.cl_m.as_mut().unwrap().rk3 = 2;
    let rep = verify_records(x, &checks("gerth"), &q, &bad_c).unwrap();
    assert!(!rep.checks["gerth"].passed);

    // one triple repeated one past its bound
    let mut bad = q.clone();
    let victim = bad[s4_index].clone();
    let bound = fiber_audit(&q).unwrap().into_iter().find(|r| Some(r.triple) == victim.triple).unwrap();
    let extra = bound.eq_number_value as usize + 1 - bound.observed_fiber;
    bad.extend(std::iter::repeat_n(victim, extra));
    let rep = verify_records(x, &checks("fibers"), &bad, &c).unwrap();
    assert!(!rep.checks["fibers"].passed);
}

#[test]
fn fiber_of_anchor_triple() {
    let records = enumerate_quartic_fields(283).unwrap();
    let audit = fiber_audit(&records).unwrap();
    let row = audit.iter().find(|r| (r.triple.a, r.triple.b, r.triple.c_s) == (283, 1, 1)).unwrap();
    assert_eq!(row.observed_fiber, 1);
    assert_eq!((row.rk3_k, row.rk2_m), (1, 1));
    assert_eq!(row.eq_number_plain, 4953);
    assert!(row.passed);
}

#[test]
fn lemma_checks_refuse_incomplete_ranges() {
    let cubics = enumerate_cubic_fields(3000).unwrap();
    assert_eq!(lemma1_range(-23, 1), 23);
    let rep = lemma1_count_check(-23, 1, &cubics, 3000).unwrap();
    // only x^3 - x - 1 has resolvent Q(sqrt(-23)) and conductor 1
    assert_eq!(rep.observed, 1);
    assert!(rep.passed && rep.complete);
    let rep = lemma1_count_check(-23, 5, &cubics, 3000).unwrap();
    assert!(rep.observed >= 1 && rep.passed);
    assert!(matches!(lemma1_count_check(-23, 13, &cubics, 3000), Err(Error::Range(_))));
    assert!(matches!(lemma1_count_check(-23, 4, &cubics, 3000), Err(Error::Domain(_))));

    let quartics = enumerate_quartic_fields(3000).unwrap();
    let m: IntPolynomial = "x^3 + 4*x - 1".parse().unwrap();
    assert!(matches!(lemma2_count_check(&m, 1, &quartics, 3000), Err(Error::Range(_))));
}

#[test]
fn scaling_profile_counts() {
    let records = enumerate_quartic_fields(300).unwrap();
    let p = scaling_profile(&records);
    assert_eq!(p.total, 3);
    assert_eq!(p.per_disc.keys().copied().collect::<Vec<_>>(), vec![229, 257, 283]);
    assert!(p.squarefree_max.as_ref().unwrap().ratio <= 1.0);
    let csv = counts_csv(&p);
    assert!(csv.starts_with("kind,value,count\n"));
    assert!(csv.contains("disc,283,1\n"));
}

#[test]
fn conductor_corollary_verdicts() {
    let records = enumerate_quartic_fields(2200).unwrap();
    let verdict = |disc: i128| records.iter().find(|r| r.disc == disc).unwrap().verdicts["conductor_corollary"];
    assert_eq!(verdict(-283), Verdict::Pass);
    // 23 has inertia (123), so conductor 23^2 with 23 prime to a
    assert_eq!(verdict(-2116), Verdict::Fail);
}

#[test]
fn disk_cache_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ClassGroupCache::with_dir(dir.path()).unwrap();
    let opts = CensusOptions { jobs: 2, cache: Some(&cache) };
    let first = enumerate_quartic_fields_with(800, &opts).unwrap();
    let stored = std::fs::read_dir(dir.path()).unwrap().count();
    assert!(stored > 0);
    let again = ClassGroupCache::with_dir(dir.path()).unwrap();
    let opts = CensusOptions { jobs: 1, cache: Some(&again) };
    assert_eq!(enumerate_quartic_fields_with(800, &opts).unwrap(), first);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), stored);
}
