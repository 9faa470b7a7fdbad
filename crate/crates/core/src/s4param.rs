// SPDX-License-Identifier: Apache-2.0

//! Invariants of quartic S4 fields: the triple `(a, b, c)`, the tame
//! ramification tables, the conductor away from 2 and 3, fiber bounds and
//! the 3-rank relations between a cubic field and its quadratic resolvent.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{
    factorize_u, fundamental_discriminant, is_square, omega, prime_to_s_part, radical, valuation, ConductorShape,
    DiscriminantShape,
};
use crate::classgrp::quadratic_polynomial;
use crate::error::{Error, Result};
use crate::orders::{maximal_order, MaximalOrder, SplittingType};
use crate::poly::{galois_group, resolvent_cubic, GaloisLabel, IntPolynomial};

/// A quartic field given by a monic defining polynomial and its maximal order.
#[derive(Debug, Clone)]
pub struct QuarticField {
    order: MaximalOrder,
    galois: GaloisLabel,
}

impl QuarticField {
    pub fn new(f: &IntPolynomial) -> Result<Self> {
        if f.degree() != 4 {
            return Err(Error::UnsupportedDegree(f.degree()));
        }
        let f = if f.is_monic() { f.clone() } else { f.monicize() };
        let order = maximal_order(&f)?;
        let galois = galois_group(&f)?;
        Ok(QuarticField { order, galois })
    }

    pub fn from_order(order: MaximalOrder) -> Result<Self> {
        let galois = galois_group(order.defining_poly())?;
        Ok(QuarticField { order, galois })
    }

    pub fn order(&self) -> &MaximalOrder {
        &self.order
    }

    pub fn poly(&self) -> &IntPolynomial {
        self.order.defining_poly()
    }

    pub fn galois(&self) -> GaloisLabel {
        self.galois
    }

    pub fn disc(&self) -> i128 {
        self.order.field_disc()
    }

    fn require_s4(&self) -> Result<()> {
        if self.galois != GaloisLabel::S4 {
            return Err(Error::Domain(format!("{} has Galois group {}, not S4", self.poly(), self.galois)));
        }
        Ok(())
    }

    /// Maximal order of the field cut out by the resolvent cubic.
    pub fn resolvent_field(&self) -> Result<MaximalOrder> {
        if !matches!(self.galois, GaloisLabel::S4 | GaloisLabel::A4) {
            return Err(Error::Domain(format!("resolvent cubic of {} is reducible", self.poly())));
        }
        maximal_order(&resolvent_cubic(self.poly())?)
    }
}

pub fn quadratic_resolvent_disc(k: &QuarticField) -> Result<i128> {
    k.require_s4()?;
    fundamental_discriminant(k.disc())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldTriple {
    pub a: u128,
    pub b: u128,
    #[serde(rename = "cS")]
    pub c_s: u128,
    /// The {2,3}-part of `c` is never determined.
    #[serde(skip, default)]
    pub c_23_known: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Member {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecompositionGroup {
    C2,
    #[serde(rename = "C2xC2")]
    C2xC2,
    C4,
    D4,
    C3,
    D3,
}

impl fmt::Display for DecompositionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DecompositionGroup::C2 => "C2",
            DecompositionGroup::C2xC2 => "C2xC2",
            DecompositionGroup::C4 => "C4",
            DecompositionGroup::D4 => "D4",
            DecompositionGroup::C3 => "C3",
            DecompositionGroup::D3 => "D3",
        };
        f.write_str(s)
    }
}

/// Cycle shape of a generator of inertia.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InertiaShape {
    #[serde(rename = "(12)")]
    Transposition,
    #[serde(rename = "(12)(34)")]
    DoubleTransposition,
    #[serde(rename = "(123)")]
    ThreeCycle,
    #[serde(rename = "(1234)")]
    FourCycle,
}

/// Table row of a tamely ramified prime `p > 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameClass {
    pub p: u64,
    pub membership: Vec<Member>,
    pub v_d: u32,
    #[serde(rename = "v_N")]
    pub v_n: u32,
    pub inertia: InertiaShape,
    pub decomposition: DecompositionGroup,
}

pub fn classify_tame_prime(split_k: &SplittingType, split_m: &SplittingType, p: u64) -> Result<TameClass> {
    use DecompositionGroup::*;
    use InertiaShape::*;
    if p <= 3 {
        return Err(Error::Domain(format!("{p} is not a tame prime above 3")));
    }
    if !split_k.is_ramified() {
        return Err(Error::Domain(format!("{p} is unramified")));
    }
    let mut pairs = split_k.pairs.clone();
    pairs.sort_unstable();
    let row = |membership: Vec<Member>, v_d, v_n, inertia, decomposition| TameClass {
        p,
        membership,
        v_d,
        v_n,
        inertia,
        decomposition,
    };
    let m_split = split_m.splits_completely();
    let class = match pairs.as_slice() {
        [(1, 1), (1, 1), (2, 1)] => row(vec![Member::A], 1, 1, Transposition, C2),
        [(1, 2), (2, 1)] => row(vec![Member::A], 1, 2, Transposition, C2xC2),
        [(2, 2)] => {
            if m_split {
                row(vec![Member::C], 2, 2, DoubleTransposition, C2xC2)
            } else {
                row(vec![Member::C], 2, 1, DoubleTransposition, C4)
            }
        }
        [(2, 1), (2, 1)] => {
            if m_split {
                row(vec![Member::C], 2, 1, DoubleTransposition, C2)
            } else {
                row(vec![Member::C], 2, 2, DoubleTransposition, C2xC2)
            }
        }
        [(4, 1)] => {
            if p % 4 == 1 {
                row(vec![Member::A, Member::C], 3, 1, FourCycle, C4)
            } else {
                row(vec![Member::A, Member::C], 3, 2, FourCycle, D4)
            }
        }
        [(1, 1), (3, 1)] => {
            if p % 3 == 1 {
                row(vec![Member::B], 2, 1, ThreeCycle, C3)
            } else {
                row(vec![Member::B], 2, 2, ThreeCycle, D3)
            }
        }
        other => {
            return Err(Error::TableViolation {
                prime: p as u128,
                detail: format!("splitting {other:?} has non-cyclic inertia"),
            })
        }
    };
    Ok(class)
}

/// Everything derived from an S4 field and its resolvent cubic field.
#[derive(Debug, Clone)]
pub struct S4Data {
    pub k_disc: i128,
    pub resolvent: MaximalOrder,
    pub rows: Vec<TameClass>,
    pub triple: FieldTriple,
    pub conductor_s: u128,
}

pub fn s4_data(k: &QuarticField) -> Result<S4Data> {
    let k_disc = quadratic_resolvent_disc(k)?;
    let resolvent = k.resolvent_field()?;
    let rows = tame_rows(k, &resolvent)?.into_iter().collect::<Result<Vec<_>>>()?;
    let triple = triple_from_parts(k.order().field_disc_abs(), k_disc, resolvent.field_disc(), &rows)?;
    let conductor_s = conductor_from_rows(&rows);
    Ok(S4Data { k_disc, resolvent, rows, triple, conductor_s })
}

/// Table row of every ramified prime `p > 3`, classified independently.
pub fn tame_rows(k: &QuarticField, resolvent: &MaximalOrder) -> Result<Vec<Result<TameClass>>> {
    let mut out = Vec::new();
    for &(p, _) in factorize_u(k.order().field_disc_abs()).pairs().iter().filter(|&&(p, _)| p > 3) {
        let p = p as u64;
        out.push(classify_tame_prime(&k.order().splitting_type(p)?, &resolvent.splitting_type(p)?, p));
    }
    Ok(out)
}

pub fn conductor_from_rows(rows: &[TameClass]) -> u128 {
    rows.iter().map(|r| (r.p as u128).pow(r.v_n)).product()
}

/// The triple from `|d_K|`, `d_k`, `d_M` and the tame rows, with the
/// reconstruction identity enforced.
pub fn triple_from_parts(dk_abs: u128, k_disc: i128, m_disc: i128, rows: &[TameClass]) -> Result<FieldTriple> {
    let a = radical(k_disc.unsigned_abs());
    let (m_abs, q_abs) = (m_disc.unsigned_abs(), k_disc.unsigned_abs());
    if m_abs % q_abs != 0 || !is_square((m_abs / q_abs) as i128) {
        return Err(Error::InconsistentTriple(format!("d_M = {m_disc} is not d_k = {k_disc} times a square")));
    }
    let b = radical(m_abs / q_abs);
    let c_s: u128 = rows.iter().filter(|r| r.membership.contains(&Member::C)).map(|r| r.p as u128).product();
    let triple = FieldTriple { a, b, c_s, c_23_known: false };
    let (a_s, b_s) = (prime_to_s_part(a), prime_to_s_part(b));
    if prime_to_s_part(dk_abs) != a_s * b_s * b_s * c_s * c_s {
        return Err(Error::InconsistentTriple(format!("|d_K| = {dk_abs} does not match a = {a}, b = {b}, cS = {c_s}")));
    }
    Ok(triple)
}

pub fn compute_triple(k: &QuarticField) -> Result<FieldTriple> {
    Ok(s4_data(k)?.triple)
}

/// Product of local conductor exponents over tame primes `p > 3`.
pub fn conductor_s_part(k: &QuarticField) -> Result<u128> {
    Ok(s4_data(k)?.conductor_s)
}

// ---------------------------------------------------------------------------
// Bounds

/// Inflate a positive float so a computed upper bound stays an upper bound.
pub fn round_up(x: f64) -> f64 {
    x * (1.0 + 64.0 * f64::EPSILON)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqNumber {
    pub r1: u32,
    pub r2: u32,
    pub value: u128,
}

pub fn eq_number_bound(rk3_k: u32, rk2_m: u32, omega_b: u32, omega_c: u32) -> EqNumber {
    let r1 = rk3_k + omega_b + 2;
    let r2 = rk2_m + 3 * omega_c + 6;
    let value = 3 * ((3u128.pow(r1) - 1) / 2) * ((1u128 << r2) - 1);
    EqNumber { r1, r2, value }
}

/// `864 C sqrt(a) b log(a b^2)^2 9^w(b) 8^w(c)`.
pub fn corollary_fiber_bound(a: u128, b: u128, c: u128, constant: f64) -> Result<f64> {
    let ab2 = a as f64 * (b as f64).powi(2);
    if ab2 < 3.0 {
        return Err(Error::Domain("a*b^2 must be at least 3".into()));
    }
    let v = 864.0
        * constant
        * (a as f64).sqrt()
        * b as f64
        * ab2.ln().powi(2)
        * 9f64.powi(omega(b) as i32)
        * 8f64.powi(omega(c) as i32);
    Ok(round_up(v))
}

/// `C sqrt(d1 d3) d2 log(d1 d3 d2^2)^2 18^w(d2) 8^w(d3)`.
pub fn discriminant_count_bound(shape: &DiscriminantShape, constant: f64) -> Result<f64> {
    let (d1, d2, d3) = (shape.d1 as f64, shape.d2 as f64, shape.d3 as f64);
    let arg = d1 * d3 * d2 * d2;
    if arg < 3.0 {
        return Err(Error::Domain("d1*d3*d2^2 must be at least 3".into()));
    }
    let v = constant
        * (d1 * d3).sqrt()
        * d2
        * arg.ln().powi(2)
        * 18f64.powi(omega(shape.d2) as i32)
        * 8f64.powi(omega(shape.d3) as i32);
    Ok(round_up(v))
}

/// `C 54^w(N) N11 N12^(1/2) N2 log(N)^2`.
pub fn conductor_count_bound(shape: &ConductorShape, constant: f64) -> Result<f64> {
    let n = shape.reconstruct();
    if n < 3 {
        return Err(Error::Domain("conductor must be at least 3".into()));
    }
    let v = constant
        * 54f64.powi(shape.omega() as i32)
        * shape.n11 as f64
        * (shape.n12 as f64).sqrt()
        * shape.n2_sq as f64
        * (n as f64).ln().powi(2);
    Ok(round_up(v))
}

// ---------------------------------------------------------------------------
// 3-ranks of a cubic field and its quadratic resolvent

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Hypothesis of the statement does not apply.
    Na,
}

impl Verdict {
    fn of(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn failed(self) -> bool {
        self == Verdict::Fail
    }
}

/// Splitting of a prime dividing `d_M` in the quadratic resolvent and in `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GerthPrime {
    pub p: u64,
    /// `p` ramifies in the cyclic cubic extension `L / k`.
    pub ramified_in_l: bool,
    pub split_k: SplittingType,
    pub split_m: SplittingType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GerthReport {
    pub rk3_k: u32,
    pub rk3_m: u32,
    pub t: u32,
    pub u: u32,
    pub slack: i64,
    pub unramified: Verdict,
    pub slack_window: Verdict,
    /// `rk3_M >= rk3_k - u`, checked where it follows from the slack window (`t >= 1`).
    pub lower_bound: Verdict,
    /// The same inequality without the `t >= 1` restriction.
    pub lower_bound_literal: Verdict,
}

impl GerthReport {
    pub fn passed(&self) -> bool {
        !(self.unramified.failed() || self.slack_window.failed() || self.lower_bound.failed())
    }
}

/// Local data for every prime dividing `d_M`, together with `d_k`.
pub fn gerth_primes(m: &MaximalOrder) -> Result<(i128, Vec<GerthPrime>)> {
    if m.degree() != 3 {
        return Err(Error::UnsupportedDegree(m.degree()));
    }
    let dm = m.field_disc();
    if is_square(dm) {
        return Err(Error::Domain(format!("{} defines a cyclic cubic field", m.defining_poly())));
    }
    let dk = fundamental_discriminant(dm)?;
    let f2 = dm.unsigned_abs() / dk.unsigned_abs();
    let k = maximal_order(&quadratic_polynomial(dk))?;
    let mut out = Vec::new();
    for &(p, _) in factorize_u(dm.unsigned_abs()).pairs() {
        let p = p as u64;
        out.push(GerthPrime {
            p,
            ramified_in_l: f2.is_multiple_of(p as u128),
            split_k: k.splitting_type(p)?,
            split_m: m.splitting_type(p)?,
        });
    }
    Ok((dk, out))
}

pub fn gerth_check(rk3_k: u32, rk3_m: u32, primes: &[GerthPrime]) -> GerthReport {
    let t: u32 = primes.iter().filter(|q| q.ramified_in_l).map(|q| q.split_k.prime_count() as u32).sum();
    let u = primes.iter().filter(|q| q.split_m.pairs == [(3, 1)] && q.split_k.pairs == [(1, 1), (1, 1)]).count() as u32;
    let slack = rk3_k as i64 + t as i64 - 1 - rk3_m as i64;
    let unramified = if t == 0 { Verdict::of(rk3_m as i64 == rk3_k as i64 - 1) } else { Verdict::Na };
    let slack_window = if t >= 1 { Verdict::of(0 <= slack && slack <= t as i64 - 1 + u as i64) } else { Verdict::Na };
    let literal = Verdict::of(rk3_m as i64 >= rk3_k as i64 - u as i64);
    let lower_bound = if t >= 1 { literal } else { Verdict::Na };
    GerthReport { rk3_k, rk3_m, t, u, slack, unramified, slack_window, lower_bound, lower_bound_literal: literal }
}

/// Exponent of `p` in `|d|` against the table's `v_d`.
pub fn valuation_matches(d_abs: u128, row: &TameClass) -> bool {
    valuation(d_abs, row.p as u128) == row.v_d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(p: u64, pairs: &[(u32, u32)]) -> SplittingType {
        SplittingType::new(p, pairs.to_vec())
    }

    #[test]
    fn anchor_field() {
        let k = QuarticField::new(&"x^4-x-1".parse().unwrap()).unwrap();
        assert_eq!(quadratic_resolvent_disc(&k).unwrap(), -283);
        let data = s4_data(&k).unwrap();
        assert_eq!((data.triple.a, data.triple.b, data.triple.c_s), (283, 1, 1));
        assert_eq!(data.rows.len(), 1);
        assert_eq!(data.rows[0].membership, vec![Member::A]);
        // x^4 - x - 1 mod 283 has a double root and the cofactor decides the row
        let st283 = k.order().splitting_type(283).unwrap();
        let expect = if st283.pairs.len() == 3 { 283 } else { 283 * 283 };
        assert_eq!(data.conductor_s, expect);
    }

    #[test]
    fn non_s4_rejected() {
        let d4 = QuarticField::new(&"x^4-2".parse().unwrap()).unwrap();
        assert_eq!(d4.galois(), GaloisLabel::D4);
        assert!(quadratic_resolvent_disc(&d4).is_err());
        let a4 = QuarticField::new(&"x^4+8x+12".parse().unwrap()).unwrap();
        assert_eq!(a4.galois(), GaloisLabel::A4);
        assert!(compute_triple(&a4).is_err());
    }

    #[test]
    fn table_rows() {
        let any = st(7, &[(1, 3)]);
        let r = classify_tame_prime(&st(7, &[(3, 1), (1, 1)]), &any, 7).unwrap();
        assert_eq!(
            (r.membership.clone(), r.v_d, r.v_n, r.decomposition),
            (vec![Member::B], 2, 1, DecompositionGroup::C3)
        );
        let r = classify_tame_prime(&st(11, &[(4, 1)]), &any, 11).unwrap();
        assert_eq!((r.v_d, r.v_n, r.decomposition), (3, 2, DecompositionGroup::D4));
        let r = classify_tame_prime(&st(283, &[(2, 1), (1, 1), (1, 1)]), &any, 283).unwrap();
        assert_eq!((r.membership.clone(), r.v_d, r.v_n), (vec![Member::A], 1, 1));
        let split = st(5, &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(classify_tame_prime(&st(5, &[(2, 2)]), &split, 5).unwrap().v_n, 2);
        assert_eq!(classify_tame_prime(&st(5, &[(2, 2)]), &st(5, &[(1, 1), (1, 2)]), 5).unwrap().v_n, 1);
        assert!(matches!(
            classify_tame_prime(&st(5, &[(2, 1), (1, 1), (1, 1), (1, 1)]), &split, 5),
            Err(Error::TableViolation { .. })
        ));
        assert!(classify_tame_prime(&st(3, &[(4, 1)]), &split, 3).is_err());
    }

    #[test]
    fn eq_number_examples() {
        assert_eq!(eq_number_bound(0, 0, 0, 0).value, 756);
        assert_eq!(eq_number_bound(1, 1, 1, 0), EqNumber { r1: 4, r2: 7, value: 15240 });
        assert_eq!(eq_number_bound(0, 0, 0, 1).value, 6132);
        assert_eq!(eq_number_bound(1, 0, 0, 0).value, 2457);
        assert_eq!(eq_number_bound(1, 1, 0, 0).value, 4953);
    }

    #[test]
    fn bound_examples() {
        let v = corollary_fiber_bound(283, 1, 1, 1.0).unwrap();
        assert!((v / 4.63e5 - 1.0).abs() < 2e-3, "{v}");
        assert!((corollary_fiber_bound(5, 7, 1, 1.0).unwrap() / 3.69e6 - 1.0).abs() < 3e-3);
        assert!((corollary_fiber_bound(283, 1, 1, 2.0).unwrap() / v - 2.0).abs() < 1e-12);
        assert!(corollary_fiber_bound(2, 1, 1, 1.0).is_err());
        let d = |n| DiscriminantShape::parse(n).unwrap();
        assert!((discriminant_count_bound(&d(283), 1.0).unwrap() / 536.0 - 1.0).abs() < 2e-3);
        assert!((discriminant_count_bound(&d(5 * 49), 1.0).unwrap() / 8.52e3 - 1.0).abs() < 2e-3);
        assert!((discriminant_count_bound(&d(125), 1.0).unwrap() / 46.3 - 1.0).abs() < 2e-3);
        let c = |n| ConductorShape::parse(n).unwrap();
        assert!((conductor_count_bound(&c(283), 1.0).unwrap() / 4.87e5 - 1.0).abs() < 2e-3);
        assert!((conductor_count_bound(&c(25), 1.0).unwrap() / 2.80e3 - 1.0).abs() < 2e-3);
        assert!((conductor_count_bound(&c(5), 1.0).unwrap() / 313.0 - 1.0).abs() < 2e-3);
    }

    #[test]
    fn gerth_examples() {
        let m = maximal_order(&"x^3+4x-1".parse().unwrap()).unwrap();
        let (dk, primes) = gerth_primes(&m).unwrap();
        assert_eq!(dk, -283);
        let r = gerth_check(1, 0, &primes);
        assert_eq!((r.t, r.u), (0, 0));
        assert!(r.passed());
        assert_eq!(r.lower_bound_literal, Verdict::Fail);
        assert!(!gerth_check(1, 1, &primes).passed());
        let m = maximal_order(&"x^3-7".parse().unwrap()).unwrap();
        let (dk, primes) = gerth_primes(&m).unwrap();
        assert_eq!(dk, -3);
        let r = gerth_check(0, 1, &primes);
        assert!(r.u >= 1);
        assert!(r.passed(), "{r:?}");
        assert!(gerth_primes(&maximal_order(&"x^3-3x-1".parse().unwrap()).unwrap()).is_err());
    }
}
