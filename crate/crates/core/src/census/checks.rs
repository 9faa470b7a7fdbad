// SPDX-License-Identifier: Apache-2.0

//! Verification passes over a completed census.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{factorize_u, omega, prime_to_s_part, radical, valuation, DiscriminantShape};
use crate::classgrp::{cubic_class_group, quadratic_class_group};
use crate::error::{Error, Result};
use crate::orders::maximal_order;
use crate::poly::{GaloisLabel, IntPolynomial};
use crate::s4param::{corollary_fiber_bound, eq_number_bound, gerth_check, gerth_primes, FieldTriple, Verdict};

use super::{
    conductor_corollary, enumerate_cubic_fields_with, enumerate_quartic_fields_with, shape_matches, CensusOptions,
    CensusRecord,
};

/// Fiber of a triple against the bound with the ranks found in the fiber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub triple: FieldTriple,
    pub rk3_k: u32,
    pub rk2_m: u32,
    pub r1: u32,
    pub r2: u32,
    /// Bound for `c = cS`.
    pub eq_number_plain: u128,
    /// Sum of the bounds over the undetermined {2,3}-part of `c`.
    pub eq_number_value: u128,
    pub corollary_value: f64,
    pub observed_fiber: usize,
    pub passed: bool,
}

pub fn fiber_audit(census: &[CensusRecord]) -> Result<Vec<BoundReport>> {
    let mut fibers: BTreeMap<FieldTriple, Vec<&CensusRecord>> = BTreeMap::new();
    for r in census.iter().filter(|r| r.galois == GaloisLabel::S4) {
        if let Some(t) = r.triple {
            fibers.entry(t).or_default().push(r);
        }
    }
    let mut out = Vec::new();
    for (t, members) in fibers {
        let mut rk3_k = 0;
        let mut rk2_m = 0;
        for r in &members {
            let (Some(k), Some(m)) = (&r.clk, &r.cl_m) else {
                return Err(Error::Verification(format!("record {:?} lacks class group data", r.poly)));
            };
            rk3_k = rk3_k.max(k.rk3);
            rk2_m = rk2_m.max(m.rk2);
        }
        let wb = omega(t.b);
        let wc = omega(t.c_s);
        let plain = eq_number_bound(rk3_k, rk2_m, wb, wc);
        let value: u128 = [0, 1, 1, 2].iter().map(|extra| eq_number_bound(rk3_k, rk2_m, wb, wc + extra).value).sum();
        let observed = members.len();
        out.push(BoundReport {
            triple: t,
            rk3_k,
            rk2_m,
            r1: plain.r1,
            r2: plain.r2,
            eq_number_plain: plain.value,
            eq_number_value: value,
            corollary_value: corollary_fiber_bound(t.a, t.b, t.c_s, 1.0)?,
            observed_fiber: observed,
            passed: observed as u128 <= value,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    /// `d_k` for the cubic count, `d_M` for the quartic count.
    pub disc: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<i128>>,
    pub modulus: u128,
    pub rank: u32,
    pub r: u32,
    pub observed: usize,
    pub bound: u128,
    /// Census range covers every field the statement counts.
    pub complete: bool,
    pub passed: bool,
}

/// Largest `|d_M|` of a cubic with resolvent `k` and `Rad(d_M / d_k) | b`.
pub fn lemma1_range(k_disc: i128, b: u128) -> u128 {
    factorize_u(b).primes().fold(k_disc.unsigned_abs(), |acc, p| acc * if p == 3 { 81 } else { p * p })
}

/// Largest `|d_K|` of an S4 quartic with resolvent field `M` and `cS | c`:
/// `v_2(d_K) <= 11`, `v_3(d_K) <= 5`, and away from 6 `d_K = d_M c_S^2`.
pub fn lemma2_range(m_disc: i128, c: u128) -> u128 {
    (1u128 << 11) * 243 * prime_to_s_part(m_disc.unsigned_abs()) * c * c
}

fn lemma1_count(k_disc: i128, b: u128, cubics: &[CensusRecord]) -> Result<LemmaReport> {
    if b == 0 || radical(b) != b {
        return Err(Error::Domain(format!("{b} is not squarefree")));
    }
    let k_abs = k_disc.unsigned_abs();
    let mut observed = 0;
    let mut rank = None;
    for r in cubics.iter().filter(|r| r.galois == GaloisLabel::S3 && r.degree() == 3) {
        let Some(k) = &r.clk else { continue };
        if k.disc != k_disc {
            continue;
        }
        rank = Some(k.rk3);
        if b.is_multiple_of(radical(r.disc_abs() / k_abs)) {
            observed += 1;
        }
    }
    let rank = match rank {
        Some(v) => v,
        None => quadratic_class_group(k_disc)?.p_rank(3),
    };
    let r = rank + omega(b) + 2;
    let bound = (3u128.pow(r) - 1) / 2;
    Ok(LemmaReport {
        disc: k_disc,
        poly: None,
        modulus: b,
        rank,
        r,
        observed,
        bound,
        complete: false,
        passed: observed as u128 <= bound,
    })
}

/// Number of S3 cubics with quadratic resolvent `k` and `Rad(|d_M|/|d_k|) | b`
/// against `(3^r - 1) / 2`, `r = rk3(Cl_k) + w(b) + 2`.
pub fn lemma1_count_check(k_disc: i128, b: u128, cubics: &[CensusRecord], census_x: u128) -> Result<LemmaReport> {
    let range = lemma1_range(k_disc, b);
    if range > census_x {
        return Err(Error::Range(format!("k = {k_disc}, b = {b} needs cubic census to {range}")));
    }
    let mut rep = lemma1_count(k_disc, b, cubics)?;
    rep.complete = true;
    Ok(rep)
}

fn lemma2_count(m_poly: &IntPolynomial, c: u128, quartics: &[CensusRecord]) -> Result<LemmaReport> {
    if c == 0 || radical(c) != c || c.is_multiple_of(2) || c.is_multiple_of(3) {
        return Err(Error::Domain(format!("{c} is not squarefree and prime to 6")));
    }
    let key = m_poly.coeffs().to_vec();
    let mut observed = 0;
    let mut rank = None;
    let mut disc = None;
    for r in quartics.iter().filter(|r| r.galois == GaloisLabel::S4) {
        let (Some(m), Some(t)) = (&r.cl_m, &r.triple) else { continue };
        if m.poly.as_ref() != Some(&key) {
            continue;
        }
        rank = Some(m.rk2);
        disc = Some(m.disc);
        if c.is_multiple_of(t.c_s) {
            observed += 1;
        }
    }
    let (rank, disc) = match (rank, disc) {
        (Some(r), Some(d)) => (r, d),
        _ => {
            let ord = maximal_order(m_poly)?;
            (cubic_class_group(&ord)?.p_rank(2), ord.field_disc())
        }
    };
    let r = rank + 3 * omega(c) + 6;
    let bound = (1u128 << r) - 1;
    Ok(LemmaReport {
        disc,
        poly: Some(key),
        modulus: c,
        rank,
        r,
        observed,
        bound,
        complete: false,
        passed: observed as u128 <= bound,
    })
}

/// Number of S4 quartics with resolvent field `M` and `cS | c` against
/// `2^r - 1`, `r = rk2(Cl_M) + 3 w(c) + 6`.
pub fn lemma2_count_check(
    m_poly: &IntPolynomial,
    c: u128,
    quartics: &[CensusRecord],
    census_x: u128,
) -> Result<LemmaReport> {
    let m_disc = maximal_order(m_poly)?.field_disc();
    let range = lemma2_range(m_disc, c);
    if range > census_x {
        return Err(Error::Range(format!("M = {m_poly}, c = {c} needs quartic census to {range}")));
    }
    let mut rep = lemma2_count(m_poly, c, quartics)?;
    rep.complete = true;
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioMax {
    pub d: u128,
    pub count: u32,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountProfile {
    pub per_disc: BTreeMap<u128, u32>,
    #[serde(rename = "per_conductor_S")]
    pub per_conductor: BTreeMap<u128, u32>,
    pub total: usize,
    /// Max of `N(d) / (sqrt(d) log(d)^2)` over squarefree `d`.
    pub squarefree_max: Option<RatioMax>,
    /// Max of `N(d) / d^(1/2 + eps)` for `eps = 0.1` and `eps = 0.25`.
    pub eps_max: BTreeMap<String, RatioMax>,
}

fn update_max(slot: &mut Option<RatioMax>, d: u128, count: u32, ratio: f64) {
    if slot.as_ref().is_none_or(|m| ratio > m.ratio) {
        *slot = Some(RatioMax { d, count, ratio });
    }
}

/// Counts of S4 fields per `|d|` and per conductor, with the growth ratios.
pub fn scaling_profile(census: &[CensusRecord]) -> CountProfile {
    let mut per_disc = BTreeMap::new();
    let mut per_conductor = BTreeMap::new();
    let mut total = 0;
    for r in census.iter().filter(|r| r.galois == GaloisLabel::S4) {
        *per_disc.entry(r.disc_abs()).or_insert(0) += 1;
        if let Some(c) = r.conductor_s {
            *per_conductor.entry(c).or_insert(0) += 1;
        }
        total += 1;
    }
    let mut squarefree_max = None;
    let mut eps: [Option<RatioMax>; 2] = [None, None];
    for (&d, &n) in &per_disc {
        let df = d as f64;
        if radical(d) == d {
            update_max(&mut squarefree_max, d, n, n as f64 / (df.sqrt() * df.ln().powi(2)));
        }
        for (slot, e) in eps.iter_mut().zip([0.1, 0.25]) {
            update_max(slot, d, n, n as f64 / df.powf(0.5 + e));
        }
    }
    let eps_max = ["0.1", "0.25"].iter().zip(eps).filter_map(|(k, v)| v.map(|v| (k.to_string(), v))).collect();
    CountProfile { per_disc, per_conductor, total, squarefree_max, eps_max }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Tables,
    Shape,
    Gerth,
    Fibers,
    Lemma1,
    Lemma2,
    Scaling,
}

impl Check {
    pub const ALL: [Check; 7] =
        [Check::Tables, Check::Shape, Check::Gerth, Check::Fibers, Check::Lemma1, Check::Lemma2, Check::Scaling];

    pub fn name(self) -> &'static str {
        match self {
            Check::Tables => "tables",
            Check::Shape => "shape",
            Check::Gerth => "gerth",
            Check::Fibers => "fibers",
            Check::Lemma1 => "lemma1",
            Check::Lemma2 => "lemma2",
            Check::Scaling => "scaling",
        }
    }

    fn needs_quartics(self) -> bool {
        !matches!(self, Check::Gerth | Check::Lemma1)
    }

    fn needs_cubics(self) -> bool {
        matches!(self, Check::Gerth | Check::Lemma1)
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown check {s}")))
    }
}

pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(Check::from_str).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub examined: usize,
    pub failures: Vec<Value>,
    pub stats: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub max_disc: u128,
    pub quartic_fields: usize,
    pub cubic_fields: usize,
    pub passed: bool,
    pub checks: BTreeMap<String, CheckReport>,
}

fn report(examined: usize, failures: Vec<Value>, stats: Value) -> CheckReport {
    CheckReport { passed: failures.is_empty(), examined, failures, stats }
}

fn s4(recs: &[CensusRecord]) -> impl Iterator<Item = &CensusRecord> {
    recs.iter().filter(|r| r.galois == GaloisLabel::S4)
}

fn check_tables(quartics: &[CensusRecord]) -> CheckReport {
    let mut failures = Vec::new();
    let (mut fields, mut primes, mut matched) = (0, 0usize, 0usize);
    let mut rows: BTreeMap<String, usize> = BTreeMap::new();
    for r in s4(quartics) {
        fields += 1;
        let d = r.disc_abs();
        let ramified: Vec<u128> = factorize_u(d).primes().filter(|&p| p > 3).collect();
        let listed: Vec<u128> = r.tame.iter().map(|t| t.p as u128).collect();
        primes += ramified.len();
        if listed != ramified || r.verdicts.get("tables") != Some(&Verdict::Pass) {
            failures.push(json!({"poly": r.poly, "disc": r.disc, "ramified": ramified, "rows": r.tame}));
            continue;
        }
        for t in &r.tame {
            *rows.entry(format!("{:?}/{}", t.membership, t.decomposition)).or_default() += 1;
            if valuation(d, t.p as u128) == t.v_d {
                matched += 1;
            } else {
                failures.push(json!({"poly": r.poly, "disc": r.disc, "p": t.p, "v_d": t.v_d}));
            }
        }
    }
    report(fields, failures, json!({"tame_primes": primes, "v_d_matches": matched, "rows": rows}))
}

fn check_shape(quartics: &[CensusRecord]) -> CheckReport {
    let mut failures = Vec::new();
    let mut corollary = Vec::new();
    let mut fields = 0;
    for r in s4(quartics) {
        fields += 1;
        let d = r.disc_abs();
        let Some(t) = &r.triple else {
            failures.push(json!({"poly": r.poly, "disc": r.disc, "error": "no triple"}));
            continue;
        };
        let (a, b) = (prime_to_s_part(t.a), prime_to_s_part(t.b));
        let identity = prime_to_s_part(d) == a * b * b * t.c_s * t.c_s;
        let shape = DiscriminantShape::parse(d).ok();
        let shape_ok = shape.as_ref().is_some_and(|s| Some(*s) == r.shape && shape_matches(s, t));
        if !(identity && shape_ok) {
            failures.push(json!({
                "poly": r.poly, "disc": r.disc, "triple": t, "identity": identity, "shape": shape_ok,
            }));
        }
        if let Some(c) = r.conductor_s.filter(|&c| conductor_corollary(c, t) == Verdict::Fail) {
            corollary.push(json!({"poly": r.poly, "disc": r.disc, "triple": t, "conductor_S": c, "tame": r.tame}));
        }
    }
    report(fields, failures, json!({"conductor_corollary_failures": corollary}))
}

fn check_gerth(cubics: &[CensusRecord]) -> Result<CheckReport> {
    let mut failures = Vec::new();
    let (mut fields, mut unramified, mut literal_fail) = (0, 0, 0);
    for r in cubics.iter().filter(|r| r.galois == GaloisLabel::S3) {
        fields += 1;
        let (Some(k), Some(m)) = (&r.clk, &r.cl_m) else {
            failures.push(json!({"poly": r.poly, "error": "missing class groups"}));
            continue;
        };
        let (_, primes) = gerth_primes(&maximal_order(&r.polynomial())?)?;
        let g = gerth_check(k.rk3, m.rk3, &primes);
        if g.t == 0 {
            unramified += 1;
        }
        if g.lower_bound_literal.failed() {
            literal_fail += 1;
        }
        if !g.passed() {
            failures.push(json!({"poly": r.poly, "disc": r.disc, "report": g}));
        }
    }
    Ok(report(fields, failures, json!({"unramified": unramified, "literal_iii_failures": literal_fail})))
}

fn check_fibers(quartics: &[CensusRecord]) -> Result<CheckReport> {
    let reports = fiber_audit(quartics)?;
    let failures = reports.iter().filter(|r| !r.passed).map(|r| json!(r)).collect();
    let largest = reports.iter().max_by_key(|r| r.observed_fiber);
    let tight = reports.iter().filter(|r| r.observed_fiber as u128 > r.eq_number_plain).count();
    Ok(report(reports.len(), failures, json!({"largest": largest, "exceeding_plain_bound": tight})))
}

fn check_lemma1(cubics: &[CensusRecord], x: u128) -> Result<CheckReport> {
    let mut pairs: BTreeSet<(i128, u128)> = BTreeSet::new();
    for r in cubics.iter().filter(|r| r.galois == GaloisLabel::S3) {
        if let Some(k) = &r.clk {
            pairs.insert((k.disc, 1));
            pairs.insert((k.disc, radical(r.disc_abs() / k.disc.unsigned_abs())));
        }
    }
    let mut failures = Vec::new();
    let (mut complete, mut partial) = (0, 0);
    for (k, b) in pairs {
        let rep = match lemma1_count_check(k, b, cubics, x) {
            Ok(rep) => {
                complete += 1;
                rep
            }
            Err(Error::Range(_)) => {
                partial += 1;
                lemma1_count(k, b, cubics)?
            }
            Err(e) => return Err(e),
        };
        if !rep.passed {
            failures.push(json!(rep));
        }
    }
    Ok(report(complete + partial, failures, json!({"complete": complete, "partial": partial})))
}

fn check_lemma2(quartics: &[CensusRecord], x: u128) -> Result<CheckReport> {
    let mut pairs: BTreeSet<(Vec<i128>, u128)> = BTreeSet::new();
    for r in s4(quartics) {
        if let (Some(m), Some(t)) = (&r.cl_m, &r.triple) {
            if let Some(p) = &m.poly {
                pairs.insert((p.clone(), 1));
                pairs.insert((p.clone(), t.c_s));
            }
        }
    }
    let mut failures = Vec::new();
    let (mut complete, mut partial) = (0, 0);
    for (p, c) in pairs {
        let poly = IntPolynomial::new(p);
        let rep = match lemma2_count_check(&poly, c, quartics, x) {
            Ok(rep) => {
                complete += 1;
                rep
            }
            Err(Error::Range(_)) => {
                partial += 1;
                lemma2_count(&poly, c, quartics)?
            }
            Err(e) => return Err(e),
        };
        if !rep.passed {
            failures.push(json!(rep));
        }
    }
    Ok(report(complete + partial, failures, json!({"complete": complete, "partial": partial})))
}

fn check_scaling(quartics: &[CensusRecord]) -> CheckReport {
    let profile = scaling_profile(quartics);
    let mut failures = Vec::new();
    if let Some(m) = &profile.squarefree_max {
        if m.ratio > 1.0 {
            failures.push(json!(m));
        }
    }
    let stats = json!({
        "s4_fields": profile.total,
        "squarefree_max": profile.squarefree_max,
        "eps_max": profile.eps_max,
        "distinct_discriminants": profile.per_disc.len(),
    });
    report(profile.per_disc.len(), failures, stats)
}

/// Run the selected checks over given census lists.
pub fn verify_records(
    x: u128,
    checks: &BTreeSet<Check>,
    quartics: &[CensusRecord],
    cubics: &[CensusRecord],
) -> Result<VerifyReport> {
    let mut out = BTreeMap::new();
    for &c in checks {
        let rep = match c {
            Check::Tables => check_tables(quartics),
            Check::Shape => check_shape(quartics),
            Check::Gerth => check_gerth(cubics)?,
            Check::Fibers => check_fibers(quartics)?,
            Check::Lemma1 => check_lemma1(cubics, x)?,
            Check::Lemma2 => check_lemma2(quartics, x)?,
            Check::Scaling => check_scaling(quartics),
        };
        out.insert(c.name().to_string(), rep);
    }
    Ok(VerifyReport {
        max_disc: x,
        quartic_fields: quartics.len(),
        cubic_fields: cubics.len(),
        passed: out.values().all(|r| r.passed),
        checks: out,
    })
}

/// Enumerate what the selected checks need and verify it.
pub fn census_verify(x: u128, checks: &BTreeSet<Check>, opts: &CensusOptions<'_>) -> Result<VerifyReport> {
    let quartics =
        if checks.iter().any(|c| c.needs_quartics()) { enumerate_quartic_fields_with(x, opts)? } else { Vec::new() };
    let cubics =
        if checks.iter().any(|c| c.needs_cubics()) { enumerate_cubic_fields_with(x, opts)? } else { Vec::new() };
    verify_records(x, checks, &quartics, &cubics)
}
