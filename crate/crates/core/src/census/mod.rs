// SPDX-License-Identifier: Apache-2.0

//! Field census: enumeration, per-field invariants, persistence and checks.

pub mod cache;
pub mod checks;
pub mod enumerate;
pub mod io;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{fundamental_discriminant, prime_to_s_part, DiscriminantShape};
use crate::classgrp::{Certification, ClassGroupData};
use crate::error::{Error, Result};
use crate::orders::{canonical_polynomial_of, maximal_order};
use crate::par::{available_jobs, par_map};
use crate::poly::{galois_group, GaloisLabel, IntPolynomial};
use crate::s4param::{
    conductor_from_rows, gerth_check, gerth_primes, quadratic_resolvent_disc, tame_rows, triple_from_parts,
    valuation_matches, FieldTriple, QuarticField, TameClass, Verdict,
};

pub use cache::ClassGroupCache;
pub use checks::{census_verify, fiber_audit, lemma1_count_check, lemma2_count_check, scaling_profile};
pub use enumerate::{box_search, cubic_fields, quartic_fields, FieldEntry};

/// Class group of `k` or `M` as stored in a record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub disc: i128,
    /// Canonical polynomial, for cubic fields.
    pub poly: Option<Vec<i128>>,
    pub h: u128,
    pub elementary_divisors: Vec<u128>,
    pub rk2: u32,
    pub rk3: u32,
    pub certification: Certification,
    pub regulator: Option<f64>,
}

impl ClassSummary {
    pub fn new(disc: i128, poly: Option<&IntPolynomial>, cg: &ClassGroupData) -> Self {
        ClassSummary {
            disc,
            poly: poly.map(|p| p.coeffs().to_vec()),
            h: cg.order(),
            elementary_divisors: cg.elementary_divisors.clone(),
            rk2: cg.p_rank(2),
            rk3: cg.p_rank(3),
            certification: cg.certification,
            regulator: cg.regulator,
        }
    }
}

/// One field of the census. Keys are fixed; absent data serializes as null.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub poly: Vec<i128>,
    pub disc: i128,
    pub sig: (usize, usize),
    pub galois: GaloisLabel,
    pub triple: Option<FieldTriple>,
    #[serde(rename = "conductor_S")]
    pub conductor_s: Option<u128>,
    pub shape: Option<DiscriminantShape>,
    pub tame: Vec<TameClass>,
    pub clk: Option<ClassSummary>,
    #[serde(rename = "clM")]
    pub cl_m: Option<ClassSummary>,
    pub verdicts: BTreeMap<String, Verdict>,
}

impl CensusRecord {
    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.poly.clone())
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn disc_abs(&self) -> u128 {
        self.disc.unsigned_abs()
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.values().all(|v| !v.failed())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum GroupFilter {
    S4,
    S3,
    #[default]
    All,
}

impl GroupFilter {
    pub fn keeps(self, g: GaloisLabel) -> bool {
        match self {
            GroupFilter::All => true,
            GroupFilter::S4 => g == GaloisLabel::S4,
            GroupFilter::S3 => g == GaloisLabel::S3,
        }
    }
}

impl std::str::FromStr for GroupFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s4" => Ok(GroupFilter::S4),
            "s3" => Ok(GroupFilter::S3),
            "all" => Ok(GroupFilter::All),
            _ => Err(Error::Parse(format!("unknown group {s}"))),
        }
    }
}

#[derive(Debug)]
pub struct CensusOptions<'a> {
    pub jobs: usize,
    pub cache: Option<&'a ClassGroupCache>,
}

impl Default for CensusOptions<'_> {
    fn default() -> Self {
        CensusOptions { jobs: available_jobs(), cache: None }
    }
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn base_record(poly: &IntPolynomial, disc: i128, sig: (usize, usize), galois: GaloisLabel) -> CensusRecord {
    CensusRecord {
        poly: poly.coeffs().to_vec(),
        disc,
        sig,
        galois,
        triple: None,
        conductor_s: None,
        shape: DiscriminantShape::parse(disc.unsigned_abs()).ok(),
        tame: Vec::new(),
        clk: None,
        cl_m: None,
        verdicts: BTreeMap::new(),
    }
}

/// Consistency of the discriminant shape with the triple, away from 2 and 3.
pub fn shape_matches(shape: &DiscriminantShape, t: &FieldTriple) -> bool {
    let a = prime_to_s_part(t.a);
    let b = prime_to_s_part(t.b);
    let d3 = crate::arith::gcd(a, t.c_s);
    shape.d3 == d3 && shape.d1 * d3 == a && shape.d2 * d3 == b * t.c_s
}

/// Record of a quartic field given by its canonical polynomial.
pub fn quartic_record(poly: &IntPolynomial, cache: &ClassGroupCache) -> Result<CensusRecord> {
    let k = QuarticField::new(poly)?;
    let ord = k.order();
    let mut rec = base_record(poly, ord.field_disc(), ord.signature(), k.galois());
    if k.galois() != GaloisLabel::S4 {
        return Ok(rec);
    }
    let k_disc = quadratic_resolvent_disc(&k)?;
    let resolvent = k.resolvent_field()?;
    let m_poly = canonical_polynomial_of(&resolvent)?;
    let m = maximal_order(&m_poly)?;
    let rows = tame_rows(&k, &resolvent)?;
    let violation = rows.iter().any(|r| r.is_err());
    rec.tame = rows.into_iter().filter_map(|r| r.ok()).collect();
    let d_abs = ord.field_disc_abs();
    let tables_ok = !violation && rec.tame.iter().all(|r| valuation_matches(d_abs, r));
    rec.verdicts.insert("tables".into(), verdict(tables_ok));
    let triple = if violation { None } else { triple_from_parts(d_abs, k_disc, m.field_disc(), &rec.tame).ok() };
    rec.verdicts.insert("reconstruction".into(), verdict(triple.is_some()));
    let shape_ok = match (&rec.shape, &triple) {
        (Some(s), Some(t)) => shape_matches(s, t),
        _ => false,
    };
    rec.verdicts.insert("shape".into(), verdict(shape_ok));
    if let Some(t) = &triple {
        let cond = conductor_from_rows(&rec.tame);
        rec.conductor_s = Some(cond);
        rec.verdicts.insert("conductor_corollary".into(), conductor_corollary(cond, t));
    }
    rec.triple = triple;
    let clk = cache.quadratic(k_disc)?;
    let clm = cache.cubic(&m_poly)?;
    let (_, gp) = gerth_primes(&m)?;
    let g = gerth_check(clk.p_rank(3), clm.p_rank(3), &gp);
    rec.verdicts.insert("gerth".into(), verdict(g.passed()));
    rec.clk = Some(ClassSummary::new(k_disc, None, &clk));
    rec.cl_m = Some(ClassSummary::new(m.field_disc(), Some(&m_poly), &clm));
    Ok(rec)
}

/// Conductor `p` or `p^2` away from 2 and 3 forces `p | a`.
pub fn conductor_corollary(cond: u128, t: &FieldTriple) -> Verdict {
    let f = crate::arith::factorize_u(cond);
    match f.pairs() {
        [(p, e)] if *e <= 2 => verdict(t.a.is_multiple_of(*p)),
        _ => Verdict::Na,
    }
}

/// Record of a cubic field given by its canonical polynomial.
pub fn cubic_record(poly: &IntPolynomial, cache: &ClassGroupCache) -> Result<CensusRecord> {
    let m = maximal_order(poly)?;
    let galois = galois_group(poly)?;
    let mut rec = base_record(poly, m.field_disc(), m.signature(), galois);
    rec.shape = None;
    let clm = cache.cubic(poly)?;
    rec.cl_m = Some(ClassSummary::new(m.field_disc(), Some(poly), &clm));
    if galois == GaloisLabel::S3 {
        let dk = fundamental_discriminant(m.field_disc())?;
        let clk = cache.quadratic(dk)?;
        let (_, gp) = gerth_primes(&m)?;
        let g = gerth_check(clk.p_rank(3), clm.p_rank(3), &gp);
        rec.verdicts.insert("gerth".into(), verdict(g.passed()));
        rec.clk = Some(ClassSummary::new(dk, None, &clk));
    }
    Ok(rec)
}

fn build_records(
    entries: Vec<FieldEntry>,
    opts: &CensusOptions<'_>,
    build: fn(&IntPolynomial, &ClassGroupCache) -> Result<CensusRecord>,
) -> Result<Vec<CensusRecord>> {
    let local = ClassGroupCache::in_memory();
    let cache = opts.cache.unwrap_or(&local);
    par_map(entries, opts.jobs, |e| build(&e.poly, cache)).into_iter().collect()
}

pub fn enumerate_quartic_fields_with(x: u128, opts: &CensusOptions<'_>) -> Result<Vec<CensusRecord>> {
    let entries = quartic_fields(x, opts.jobs)?;
    let mut recs = build_records(entries, opts, quartic_record)?;
    let reports = fiber_audit(&recs)?;
    let ok: BTreeMap<_, _> = reports.iter().map(|r| (r.triple, r.passed)).collect();
    for r in recs.iter_mut() {
        if let Some(t) = &r.triple {
            r.verdicts.insert("fiber".into(), verdict(ok[t]));
        }
    }
    Ok(recs)
}

pub fn enumerate_quartic_fields(x: u128) -> Result<Vec<CensusRecord>> {
    enumerate_quartic_fields_with(x, &CensusOptions::default())
}

pub fn enumerate_cubic_fields_with(x: u128, opts: &CensusOptions<'_>) -> Result<Vec<CensusRecord>> {
    build_records(cubic_fields(x, opts.jobs)?, opts, cubic_record)
}

pub fn enumerate_cubic_fields(x: u128) -> Result<Vec<CensusRecord>> {
    enumerate_cubic_fields_with(x, &CensusOptions::default())
}
