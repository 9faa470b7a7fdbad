// SPDX-License-Identifier: Apache-2.0

//! Complete lists of cubic and quartic fields up to a discriminant bound.
//!
//! Cubic fields and quartic fields without a quadratic subfield come from
//! Hunter's theorem: some `theta` in `O_K \ Z` has trace in `{0, .., n/2}` and
//! `T2(theta) <= Tr(theta)^2 / n + gamma_{n-1} (|d| / n)^(1/(n-1))`.
//!
//! Quartic fields `K` containing a quadratic field `F` come from the
//! relative version: project `O_K` orthogonally to `F (x) R` under `T2`.
//! The image has covolume `sqrt|d_K| / (2 sqrt|d_F|)`, so some
//! `theta in O_K \ O_F` has projection of squared length at most
//! `sqrt(|d_K| / (3 |d_F|))`. Its component in `F (x) R` is
//! `Tr_{K/F}(theta) / 2`, which can be moved into a fixed class
//! representative of `O_F / 2 O_F` by translating with `O_F`.

use std::collections::BTreeSet;

use crate::arith::{is_fundamental_discriminant, isqrt, squarefree_kernel};
use crate::error::Result;
use crate::orders::{canonical_polynomial_of, maximal_order};
use crate::par::par_map;
use crate::poly::{is_irreducible, poly_discriminant, IntPolynomial};

/// A field by its canonical polynomial and signed discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldEntry {
    pub disc: i128,
    pub poly: IntPolynomial,
}

impl FieldEntry {
    fn sort_key(&self) -> (u128, &IntPolynomial) {
        (self.disc.unsigned_abs(), &self.poly)
    }
}

pub fn sort_entries(v: &mut [FieldEntry]) {
    v.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

/// Field of a monic candidate if it is irreducible with `|d_K| <= x`.
pub fn field_of(f: &IntPolynomial, x: u128) -> Result<Option<FieldEntry>> {
    if f.coeff(0) == 0 {
        return Ok(None);
    }
    let disc = poly_discriminant(f)?;
    if disc == 0 || squarefree_kernel(disc).unsigned_abs() > x {
        return Ok(None);
    }
    if !is_irreducible(f)? {
        return Ok(None);
    }
    let ord = maximal_order(f)?;
    if ord.field_disc_abs() > x {
        return Ok(None);
    }
    Ok(Some(FieldEntry { disc: ord.field_disc(), poly: canonical_polynomial_of(&ord)? }))
}

fn collect(chunks: Vec<Result<Vec<FieldEntry>>>) -> Result<Vec<FieldEntry>> {
    let mut set = BTreeSet::new();
    for c in chunks {
        set.extend(c?);
    }
    let mut v: Vec<FieldEntry> = set.into_iter().collect();
    sort_entries(&mut v);
    Ok(v)
}

fn scan<I: IntoIterator<Item = IntPolynomial>>(polys: I, x: u128) -> Result<Vec<FieldEntry>> {
    let mut seen = BTreeSet::new();
    for f in polys {
        if let Some(e) = field_of(&f, x)? {
            seen.insert(e);
        }
    }
    Ok(seen.into_iter().collect())
}

/// `x^n - e1 x^(n-1) + e2 x^(n-2) - ...` from elementary symmetric functions.
fn from_elementary(e: &[i128]) -> IntPolynomial {
    let n = e.len();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    for (k, &ek) in e.iter().enumerate() {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        c[n - 1 - k] = sign * ek;
    }
    IntPolynomial::new(c)
}

const SLACK: f64 = 1e-9;

fn ceil_i(v: f64) -> i128 {
    (v - SLACK).ceil() as i128
}

fn floor_i(v: f64) -> i128 {
    (v + SLACK).floor() as i128
}

/// Cubic fields with `|d| <= x`.
pub fn cubic_fields(x: u128, jobs: usize) -> Result<Vec<FieldEntry>> {
    let mut work = Vec::new();
    for e1 in 0..=1i128 {
        let b = (e1 * e1) as f64 / 3.0 + (4.0f64 / 3.0).sqrt() * (x as f64 / 3.0).sqrt();
        let b = b * (1.0 + SLACK);
        // s2 = e1^2 - 2 e2 lies in [-T2, T2]
        for e2 in ceil_i((e1 * e1) as f64 / 2.0 - b / 2.0)..=floor_i((e1 * e1) as f64 / 2.0 + b / 2.0) {
            work.push((e1, e2, b));
        }
    }
    let chunks = par_map(work, jobs, |(e1, e2, b)| {
        // |e3| <= (T2/3)^(3/2) and |s3| <= T2^(3/2), s3 = e1^3 - 3 e1 e2 + 3 e3
        let amgm = floor_i((b / 3.0).powf(1.5));
        let s3 = b.powf(1.5);
        let base = (e1 * e1 * e1 - 3 * e1 * e2) as f64;
        let lo = ceil_i((-s3 - base) / 3.0).max(-amgm);
        let hi = floor_i((s3 - base) / 3.0).min(amgm);
        scan((lo..=hi).filter(|&e3| e3 != 0).map(|e3| from_elementary(&[e1, e2, e3])), x)
    });
    collect(chunks)
}

/// Quartic fields with `|d| <= x`.
pub fn quartic_fields(x: u128, jobs: usize) -> Result<Vec<FieldEntry>> {
    let mut chunks = primitive_quartic_chunks(x, jobs);
    chunks.extend(imprimitive_quartic_chunks(x, jobs));
    collect(chunks)
}

fn primitive_quartic_chunks(x: u128, jobs: usize) -> Vec<Result<Vec<FieldEntry>>> {
    let mut work = Vec::new();
    for e1 in 0..=2i128 {
        let b = (e1 * e1) as f64 / 4.0 + 2f64.powf(1.0 / 3.0) * (x as f64 / 4.0).powf(1.0 / 3.0);
        let b = b * (1.0 + SLACK);
        for e2 in ceil_i((e1 * e1) as f64 / 2.0 - b / 2.0)..=floor_i((e1 * e1) as f64 / 2.0 + b / 2.0) {
            work.push((e1, e2, b));
        }
    }
    par_map(work, jobs, |(e1, e2, b)| {
        let s3 = b.powf(1.5);
        let base = (e1 * e1 * e1 - 3 * e1 * e2) as f64;
        let e4max = floor_i((b / 4.0).powi(2));
        let polys = (ceil_i((-s3 - base) / 3.0)..=floor_i((s3 - base) / 3.0)).flat_map(move |e3| {
            (-e4max..=e4max).filter(|&e4| e4 != 0).map(move |e4| from_elementary(&[e1, e2, e3, e4]))
        });
        scan(polys, x)
    })
}

/// Arithmetic in `O_F = Z[w]` with `w^2 = tw * w - nw`.
#[derive(Debug, Clone, Copy)]
struct QuadRing {
    tw: i128,
    nw: i128,
    /// Embeddings of `w`; complex pair when `d < 0`.
    re: [f64; 2],
    im: f64,
    real: bool,
}

impl QuadRing {
    fn new(d: i128) -> Self {
        let (tw, nw) = if d.rem_euclid(4) == 1 { (1, (1 - d) / 4) } else { (0, -d / 4) };
        let disc = (tw * tw - 4 * nw) as f64;
        if d > 0 {
            let s = disc.sqrt();
            QuadRing { tw, nw, re: [(tw as f64 + s) / 2.0, (tw as f64 - s) / 2.0], im: 0.0, real: true }
        } else {
            let s = (-disc).sqrt();
            QuadRing { tw, nw, re: [tw as f64 / 2.0; 2], im: s / 2.0, real: false }
        }
    }

    fn mul(&self, (a, b): (i128, i128), (c, d): (i128, i128)) -> (i128, i128) {
        (a * c - b * d * self.nw, a * d + b * c + b * d * self.tw)
    }

    fn conj(&self, (a, b): (i128, i128)) -> (i128, i128) {
        (a + b * self.tw, -b)
    }

    fn trace(&self, (a, b): (i128, i128)) -> i128 {
        2 * a + b * self.tw
    }

    fn norm(&self, v: (i128, i128)) -> i128 {
        self.mul(v, self.conj(v)).0
    }

    /// `|sigma_1(v)|` and `|sigma_2(v)|`.
    fn abs_embeddings(&self, (a, b): (i128, i128)) -> [f64; 2] {
        if self.real {
            [(a as f64 + b as f64 * self.re[0]).abs(), (a as f64 + b as f64 * self.re[1]).abs()]
        } else {
            let r = a as f64 + b as f64 * self.re[0];
            let i = b as f64 * self.im;
            let m = (r * r + i * i).sqrt();
            [m, m]
        }
    }

    fn t2(&self, v: (i128, i128)) -> f64 {
        self.abs_embeddings(v).iter().map(|m| m * m).sum()
    }

    /// Smallest-T2 representative of each class of `O_F / 2 O_F`.
    fn half_reps(&self) -> Vec<(i128, i128)> {
        let mut out = Vec::new();
        for (ca, cb) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let mut best = (ca, cb);
            for i in -3..=3 {
                for j in -3..=3 {
                    let v = (ca + 2 * i, cb + 2 * j);
                    if self.t2(v) < self.t2(best) - 1e-12 {
                        best = v;
                    }
                }
            }
            out.push(best);
        }
        out
    }
}

fn imprimitive_quartic_chunks(x: u128, jobs: usize) -> Vec<Result<Vec<FieldEntry>>> {
    let r = isqrt(x) as i128;
    let mut work = Vec::new();
    for d in -r..=r {
        if !is_fundamental_discriminant(d) {
            continue;
        }
        let ring = QuadRing::new(d);
        for t in ring.half_reps() {
            work.push((d, ring, t));
        }
    }
    par_map(work, jobs, |(d, ring, t)| {
        let b = (ring.t2(t) / 2.0 + (x as f64 / (3.0 * d.unsigned_abs() as f64)).sqrt()) * (1.0 + SLACK) + SLACK;
        // each embedding pair contributes at least 2 |sigma(nu)|
        let half = b / 2.0;
        let mut polys = Vec::new();
        let ymax = if ring.real {
            (half / (ring.re[0] - ring.re[1]).abs()).floor() as i128 + 1
        } else {
            (half / 2.0 / ring.im).floor() as i128 + 1
        };
        let xmax = (half + ymax as f64 * (ring.re[0].abs() + ring.im)).ceil() as i128 + 1;
        for ny in -ymax..=ymax {
            for nx in -xmax..=xmax {
                let nu = (nx, ny);
                let [m1, m2] = ring.abs_embeddings(nu);
                if m1 + m2 > half {
                    continue;
                }
                // (X^2 - t X + nu)(X^2 - t' X + nu')
                let c3 = -ring.trace(t);
                let c2 = ring.norm(t) + ring.trace(nu);
                let c1 = -ring.trace(ring.mul(t, ring.conj(nu)));
                let c0 = ring.norm(nu);
                polys.push(IntPolynomial::new(vec![c0, c1, c2, c3, 1]));
            }
        }
        scan(polys, x)
    })
}

/// Fields of all monic polynomials of the given degree with coefficients
/// bounded by `bound`, up to `x -> -x`.
pub fn box_search(degree: usize, x: u128, bound: i128, jobs: usize) -> Result<Vec<FieldEntry>> {
    assert!(degree == 3 || degree == 4, "box search covers degrees 3 and 4");
    let work: Vec<(i128, i128)> = (0..=bound).flat_map(|a| (-bound..=bound).map(move |b| (a, b))).collect();
    let chunks = par_map(work, jobs, |(top, next)| {
        let polys: Box<dyn Iterator<Item = IntPolynomial>> = if degree == 3 {
            Box::new((-bound..=bound).map(move |c0| IntPolynomial::new(vec![c0, next, top, 1])))
        } else {
            Box::new(
                (-bound..=bound)
                    .flat_map(move |c1| (-bound..=bound).map(move |c0| IntPolynomial::new(vec![c0, c1, next, top, 1]))),
            )
        };
        scan(polys, x)
    });
    collect(chunks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_cubics() {
        assert!(cubic_fields(22, 1).unwrap().is_empty());
        let v = cubic_fields(23, 1).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].disc, -23);
        let v = cubic_fields(81, 1).unwrap();
        assert!(v.iter().any(|e| e.disc == 81));
    }

    #[test]
    fn smallest_quartics() {
        let v = quartic_fields(283, 1).unwrap();
        assert_eq!(v.first().map(|e| e.disc), Some(117));
        assert!(v.iter().any(|e| e.disc == -283));
        // Q(zeta_5), Q(zeta_8), Q(zeta_12), Q(sqrt-3, sqrt5)
        for d in [125, 256, 144, 225] {
            assert!(v.iter().any(|e| e.disc == d), "missing {d}");
        }
    }

    #[test]
    fn relative_ring() {
        let r = QuadRing::new(-3);
        assert_eq!(r.norm((0, 1)), 1);
        assert_eq!(r.trace((0, 1)), 1);
        let r = QuadRing::new(8);
        assert_eq!(r.norm((1, 1)), -1);
        assert_eq!(r.half_reps().len(), 4);
    }
}
