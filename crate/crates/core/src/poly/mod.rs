// SPDX-License-Identifier: Apache-2.0

//! Integer polynomials: discriminants, resolvent cubics, irreducibility and
//! Galois groups of cubics and quartics.
//!
//! Coefficients are `i128`. Every defining polynomial the census handles has
//! small coefficients; discriminant and resultant computations use checked
//! arithmetic and report [`Error::Overflow`] instead of wrapping.

pub mod modp;
pub mod sturm;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize_u, is_square};
use crate::error::{Error, Result};
use modp::FpPoly;

/// Polynomial with integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GaloisLabel {
    S4,
    A4,
    D4,
    C4,
    V4,
    S3,
    C3,
    /// Quadratic fields; used only for completeness of labels.
    C2,
}

impl fmt::Display for GaloisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for GaloisLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "S4" => GaloisLabel::S4,
            "A4" => GaloisLabel::A4,
            "D4" => GaloisLabel::D4,
            "C4" => GaloisLabel::C4,
            "V4" => GaloisLabel::V4,
            "S3" => GaloisLabel::S3,
            "C3" => GaloisLabel::C3,
            "C2" => GaloisLabel::C2,
            _ => return Err(Error::Parse(format!("unknown Galois label {s}"))),
        })
    }
}

fn ck_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("polynomial arithmetic"))
}

fn ck_sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("polynomial arithmetic"))
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| c as i128).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: i128) -> Self {
        IntPolynomial::new(vec![c])
    }

    pub fn x() -> Self {
        IntPolynomial::new(vec![0, 1])
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for constants including the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> i128 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn content(&self) -> i128 {
        self.coeffs.iter().fold(0, |g, &c| crate::arith::gcd_i128(g, c))
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c == 0 {
            return self.clone();
        }
        let s = if self.lc() < 0 { -c } else { c };
        IntPolynomial::new(self.coeffs.iter().map(|&x| x / s).collect())
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i128).collect())
    }

    pub fn scale(&self, k: i128) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// `f(x + c)`.
    pub fn shift(&self, c: i128) -> Self {
        // Horner with the linear polynomial x + c.
        let lin = IntPolynomial::new(vec![c, 1]);
        self.coeffs.iter().rev().fold(IntPolynomial::zero(), |acc, &k| &(&acc * &lin) + &IntPolynomial::constant(k))
    }

    /// `(-1)^n f(-x)`: monic when `f` is, defines the same field.
    pub fn negate_variable(&self) -> Self {
        let n = self.degree();
        IntPolynomial::new(
            self.coeffs.iter().enumerate().map(|(i, &c)| if (n - i) % 2 == 1 { -c } else { c }).collect(),
        )
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Result<Self> {
        assert!(!b.is_zero());
        let mut r = self.coeffs.clone();
        let db = b.degree();
        let lb = b.lc();
        if r.len() <= db {
            return Ok(self.clone());
        }
        let mut steps = r.len() - db;
        while r.len() > db && !r.is_empty() {
            let lr = *r.last().unwrap();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c = ck_mul(*c, lb)?;
            }
            for (j, &bc) in b.coeffs.iter().enumerate() {
                r[shift + j] = ck_sub(r[shift + j], ck_mul(lr, bc)?)?;
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
            steps -= 1;
        }
        let factor = lb.checked_pow(steps as u32).ok_or(Error::Overflow("pseudo remainder"))?;
        Ok(IntPolynomial::new(r.into_iter().map(|c| c * factor).collect()))
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }

    pub fn to_fp(&self, p: u64) -> FpPoly {
        FpPoly::from_int(self, p)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (i, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{a}*x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{a}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Accepts `x^4-x-1` style text in the variable `x`, or a
    /// comma-separated coefficient list with the constant term first.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let text = text.trim_start_matches('[').trim_end_matches(']');
        if !text.contains('x') {
            let coeffs = text
                .split(',')
                .map(|t| t.parse::<i128>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(IntPolynomial::new(coeffs));
        }
        let mut coeffs: Vec<i128> = Vec::new();
        let bytes: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i128;
            if bytes[i] == '+' || bytes[i] == '-' {
                if bytes[i] == '-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = bytes[start..i].iter().collect();
            let has_digits = !digits.is_empty();
            let mut coef =
                if has_digits { digits.parse::<i128>().map_err(|e| Error::Parse(e.to_string()))? } else { 1 };
            if i < bytes.len() && bytes[i] == '*' {
                i += 1;
            }
            let mut exp = 0usize;
            if i < bytes.len() && bytes[i] == 'x' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == '^' {
                    i += 1;
                    let st = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let e: String = bytes[st..i].iter().collect();
                    exp = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {s}")))?;
                }
            } else if !has_digits {
                return Err(Error::Parse(format!("unexpected character in {s}")));
            }
            if i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
                return Err(Error::Parse(format!("unexpected '{}' in {s}", bytes[i])));
            }
            coef *= sign;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] += coef;
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl std::ops::Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

fn exact_div_poly(a: &IntPolynomial, d: i128) -> Result<IntPolynomial> {
    a.coeffs
        .iter()
        .map(|&c| if c % d != 0 { Err(Error::Domain("inexact subresultant division".into())) } else { Ok(c / d) })
        .collect::<Result<Vec<_>>>()
        .map(IntPolynomial::new)
}

fn ck_pow(a: i128, e: usize) -> Result<i128> {
    a.checked_pow(e as u32).ok_or(Error::Overflow("power"))
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant(a: &IntPolynomial, b: &IntPolynomial) -> Result<i128> {
    if a.is_zero() || b.is_zero() {
        return Ok(0);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = 1i128;
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s = -1;
        }
    }
    let ca = a.content();
    let cb = b.content();
    let t = ck_mul(ck_pow(ca, b.degree())?, ck_pow(cb, a.degree())?)?;
    a = exact_div_poly(&a, ca)?;
    b = exact_div_poly(&b, cb)?;
    let (mut g, mut h) = (1i128, 1i128);
    loop {
        if b.degree() == 0 {
            // b is a nonzero constant
            let da = a.degree();
            let num = ck_pow(b.lc(), da)?;
            let hh = if da == 0 { num * h } else { num / ck_pow(h, da - 1)? };
            return ck_mul(ck_mul(s, t)?, hh);
        }
        let delta = a.degree() - b.degree();
        if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b)?;
        if r.is_zero() {
            return Ok(0);
        }
        a = b;
        b = exact_div_poly(&r, ck_mul(g, ck_pow(h, delta)?)?)?;
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            let num = ck_pow(g, delta)?;
            let den = ck_pow(h, delta - 1)?;
            num / den
        };
    }
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn poly_discriminant(f: &IntPolynomial) -> Result<i128> {
    let n = f.degree();
    if n == 0 {
        return Err(Error::Domain("discriminant of a constant".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    let r = resultant(f, &f.derivative())?;
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    if r % f.lc() != 0 {
        return Err(Error::Domain("resultant not divisible by leading coefficient".into()));
    }
    Ok(sign * r / f.lc())
}

/// Resolvent cubic with roots `x1x2 + x3x4`, `x1x3 + x2x4`, `x1x4 + x2x3`.
///
/// For the depressed quartic `x^4 + px^2 + qx + r` this is
/// `x^3 - p x^2 - 4r x + (4pr - q^2)`; for general monic input the roots are
/// the same symmetric expressions in the original roots, which differ from
/// those of the depressed quartic by a common rational shift.
pub fn resolvent_cubic(f: &IntPolynomial) -> Result<IntPolynomial> {
    if f.degree() != 4 || !f.is_monic() {
        return Err(Error::Domain(format!("resolvent cubic needs a monic quartic, got {f}")));
    }
    let (d, c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3));
    Ok(IntPolynomial::new(vec![-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1]))
}

fn divisors(n: u128) -> Vec<u128> {
    let mut divs = vec![1u128];
    for &(p, e) in factorize_u(n).pairs() {
        let cur = divs.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            divs.extend(cur.iter().map(|d| d * pk));
        }
    }
    divs.sort_unstable();
    divs
}

/// Distinct integer roots of a monic integer polynomial.
pub fn integer_roots(f: &IntPolynomial) -> Vec<i128> {
    assert!(f.is_monic());
    let mut roots = Vec::new();
    let mut g = f.clone();
    while g.coeff(0) == 0 && g.degree() > 0 {
        if !roots.contains(&0) {
            roots.push(0);
        }
        g = IntPolynomial::new(g.coeffs[1..].to_vec());
    }
    if g.degree() == 0 {
        return roots;
    }
    for d in divisors(g.coeff(0).unsigned_abs()) {
        for r in [d as i128, -(d as i128)] {
            if g.eval_checked(r) == Some(0) {
                roots.push(r);
            }
        }
    }
    roots.sort_unstable();
    roots
}

impl IntPolynomial {
    fn eval_checked(&self, x: i128) -> Option<i128> {
        self.coeffs.iter().rev().try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }

    /// `l^(n-1) f(x / l)` for leading coefficient `l`: monic with the same
    /// splitting behaviour over the rationals.
    pub fn monicize(&self) -> Self {
        let n = self.degree();
        let l = self.lc();
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i == n { 1 } else { c * l.pow((n - 1 - i) as u32) })
                .collect(),
        )
    }
}

const PREFILTER_PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Irreducibility over the rationals for degrees 2, 3 and 4.
pub fn is_irreducible(f: &IntPolynomial) -> Result<bool> {
    let n = f.degree();
    if !(2..=4).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    let g = f.primitive_part().monicize();
    if g.coeff(0) == 0 {
        return Ok(false);
    }
    for &p in &PREFILTER_PRIMES {
        let gp = g.to_fp(p);
        if gp.degree() == n && gp.is_irreducible() {
            return Ok(true);
        }
    }
    if !integer_roots(&g).is_empty() {
        return Ok(false);
    }
    if n < 4 {
        return Ok(true);
    }
    Ok(!has_quadratic_factor(&g))
}

// g monic quartic with no integer roots: search g = (x^2+a x+b)(x^2+c x+d).
fn has_quadratic_factor(g: &IntPolynomial) -> bool {
    let (g0, g1, g2, g3) = (g.coeff(0), g.coeff(1), g.coeff(2), g.coeff(3));
    for db in divisors(g0.unsigned_abs()) {
        for b in [db as i128, -(db as i128)] {
            let d = g0 / b;
            if b > d {
                continue;
            }
            if b != d {
                // a(d - b) = g1 - b*g3
                let num = g1 - b * g3;
                if num % (d - b) != 0 {
                    continue;
                }
                let a = num / (d - b);
                let c = g3 - a;
                if a * c + b + d == g2 {
                    return true;
                }
            } else {
                // a + c = g3, a*c = g2 - 2b, and g1 = b*g3
                if g1 != b * g3 {
                    continue;
                }
                let disc = g3 * g3 - 4 * (g2 - 2 * b);
                if is_square(disc) {
                    return true;
                }
            }
        }
    }
    false
}

/// Galois group of the splitting field of a monic irreducible quartic.
pub fn galois_group_quartic(f: &IntPolynomial) -> Result<GaloisLabel> {
    if f.degree() != 4 || !f.is_monic() {
        return Err(Error::Domain(format!("{f} is not a monic quartic")));
    }
    if !is_irreducible(f)? {
        return Err(Error::Reducible(f.to_string()));
    }
    let disc = poly_discriminant(f)?;
    let r = resolvent_cubic(f)?;
    let roots = integer_roots(&r);
    Ok(match roots.len() {
        0 => {
            if is_square(disc) {
                GaloisLabel::A4
            } else {
                GaloisLabel::S4
            }
        }
        1 => {
            // Kappe–Warren: C4 iff (r^2 - 4d)·disc and (a^2 - 4(b - r))·disc
            // are both squares.
            let root = roots[0];
            let (d, b, a) = (f.coeff(0), f.coeff(2), f.coeff(3));
            let t1 = root * root - 4 * d;
            let t2 = a * a - 4 * (b - root);
            if is_square(t1 * disc) && is_square(t2 * disc) {
                GaloisLabel::C4
            } else {
                GaloisLabel::D4
            }
        }
        _ => GaloisLabel::V4,
    })
}

/// Galois group of the splitting field of a monic irreducible cubic. The
/// square class of the polynomial discriminant equals that of the field
/// discriminant, so the test is on either.
pub fn galois_group_cubic(f: &IntPolynomial) -> Result<GaloisLabel> {
    if f.degree() != 3 || !f.is_monic() {
        return Err(Error::Domain(format!("{f} is not a monic cubic")));
    }
    if !is_irreducible(f)? {
        return Err(Error::Reducible(f.to_string()));
    }
    Ok(if is_square(poly_discriminant(f)?) { GaloisLabel::C3 } else { GaloisLabel::S3 })
}

/// Galois label for a monic irreducible polynomial of degree 2, 3 or 4.
pub fn galois_group(f: &IntPolynomial) -> Result<GaloisLabel> {
    match f.degree() {
        2 => {
            if !is_irreducible(f)? {
                return Err(Error::Reducible(f.to_string()));
            }
            Ok(GaloisLabel::C2)
        }
        3 => galois_group_cubic(f),
        4 => galois_group_quartic(f),
        n => Err(Error::UnsupportedDegree(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    // Sylvester determinant by fraction-free elimination: independent of
    // the subresultant route.
    fn sylvester_resultant(a: &IntPolynomial, b: &IntPolynomial) -> i128 {
        let (m, n) = (a.degree(), b.degree());
        let size = m + n;
        let mut mat = vec![vec![0i128; size]; size];
        for i in 0..n {
            for (j, &c) in a.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c;
            }
        }
        for i in 0..m {
            for (j, &c) in b.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c;
            }
        }
        bareiss_det(mat)
    }

    fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
        let n = m.len();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&i| m[i][k] != 0) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("x^4-x-1").coeffs(), &[-1, -1, 0, 0, 1]);
        assert_eq!(p("-1,-1,0,0,1"), p("x^4 - x - 1"));
        assert_eq!(p("3*x^2 + 2x - 7").coeffs(), &[-7, 2, 3]);
        assert_eq!(p("x^4-x-1").to_string(), "x^4 - x - 1");
        assert_eq!(p("-x^3+4").to_string(), "-x^3 + 4");
        assert!("x^4 - y".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(poly_discriminant(&p("x^2-5")).unwrap(), 20);
        assert_eq!(poly_discriminant(&p("x^4-x-1")).unwrap(), -283);
        assert_eq!(poly_discriminant(&p("x^3+4x-1")).unwrap(), -283);
        assert_eq!(poly_discriminant(&p("x^3-3x-1")).unwrap(), 81);
        assert_eq!(poly_discriminant(&p("x^3-2")).unwrap(), -108);
        assert_eq!(poly_discriminant(&p("x^4+1")).unwrap(), 256);
        assert_eq!(poly_discriminant(&p("2x^2+3x+1")).unwrap(), 1);
    }

    #[test]
    fn resolvent_examples() {
        assert_eq!(resolvent_cubic(&p("x^4-x-1")).unwrap(), p("x^3+4x-1"));
        assert_eq!(resolvent_cubic(&p("x^4+1")).unwrap(), p("x^3-4x"));
        assert_eq!(resolvent_cubic(&p("x^4+x^2+1")).unwrap(), p("x^3-x^2-4x+4"));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p("x^3+4x-1")).unwrap());
        assert!(is_irreducible(&p("x^4+1")).unwrap());
        assert!(!is_irreducible(&p("x^2-1")).unwrap());
        assert!(!is_irreducible(&p("x^4+4")).unwrap()); // Sophie Germain
        assert!(is_irreducible(&p("x^4-2x^2+9")).unwrap());
        assert!(!is_irreducible(&p("x^4+2x^2+1")).unwrap());
        assert!(is_irreducible(&p("x^4-10x^2+1")).unwrap());
        assert!(matches!(is_irreducible(&p("x^5-1")), Err(Error::UnsupportedDegree(5))));
        assert!(!is_irreducible(&p("4x^2-1")).unwrap());
        assert!(is_irreducible(&p("2x^2-1")).unwrap());
    }

    #[test]
    fn galois_examples() {
        assert_eq!(galois_group_quartic(&p("x^4-x-1")).unwrap(), GaloisLabel::S4);
        assert_eq!(galois_group_quartic(&p("x^4+x^3+x^2+x+1")).unwrap(), GaloisLabel::C4);
        assert_eq!(galois_group_quartic(&p("x^4+1")).unwrap(), GaloisLabel::V4);
        assert_eq!(galois_group_quartic(&p("x^4-2")).unwrap(), GaloisLabel::D4);
        assert_eq!(galois_group_quartic(&p("x^4+8x+12")).unwrap(), GaloisLabel::A4);
        assert_eq!(galois_group_cubic(&p("x^3+4x-1")).unwrap(), GaloisLabel::S3);
        assert_eq!(galois_group_cubic(&p("x^3-3x-1")).unwrap(), GaloisLabel::C3);
        assert_eq!(galois_group_cubic(&p("x^3-2")).unwrap(), GaloisLabel::S3);
        assert!(matches!(galois_group_quartic(&p("x^4-1")), Err(Error::Reducible(_))));
    }

    #[test]
    fn resolvent_discriminant_identity_exhaustive() {
        for a in -5..=5i128 {
            for b in -5..=5i128 {
                for c in -5..=5i128 {
                    for d in -5..=5i128 {
                        let f = IntPolynomial::new(vec![d, c, b, a, 1]);
                        let r = resolvent_cubic(&f).unwrap();
                        assert_eq!(poly_discriminant(&r).unwrap(), poly_discriminant(&f).unwrap());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn discriminant_matches_sylvester(c in proptest::collection::vec(-9i128..=9, 2..=5), lc in 1i128..4) {
            let mut coeffs = c.clone();
            coeffs.push(lc);
            let f = IntPolynomial::new(coeffs);
            let n = f.degree();
            let res = sylvester_resultant(&f, &f.derivative());
            let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
            prop_assert_eq!(poly_discriminant(&f).unwrap(), sign * res / f.lc());
            prop_assert_eq!(resultant(&f, &f.derivative()).unwrap(), res);
        }

        #[test]
        fn resultant_matches_sylvester(a in proptest::collection::vec(-6i128..=6, 1..=5), b in proptest::collection::vec(-6i128..=6, 1..=4)) {
            let fa = IntPolynomial::new(a);
            let fb = IntPolynomial::new(b);
            prop_assume!(fa.degree() >= 1 && fb.degree() >= 1);
            prop_assert_eq!(resultant(&fa, &fb).unwrap(), sylvester_resultant(&fa, &fb));
        }

        #[test]
        fn classification_is_translation_invariant(c in proptest::collection::vec(-6i128..=6, 4), shift in -4i128..=4) {
            let mut coeffs = c.clone();
            coeffs.push(1);
            let f = IntPolynomial::new(coeffs);
            let g = f.shift(shift);
            prop_assert_eq!(is_irreducible(&f).unwrap(), is_irreducible(&g).unwrap());
            if is_irreducible(&f).unwrap() {
                let gf = galois_group_quartic(&f).unwrap();
                prop_assert_eq!(gf, galois_group_quartic(&g).unwrap());
                if gf == GaloisLabel::S4 {
                    prop_assert_eq!(galois_group_cubic(&resolvent_cubic(&f).unwrap()).unwrap(), GaloisLabel::S3);
                }
            }
        }

        #[test]
        fn irreducibility_agrees_with_factor_search(c in proptest::collection::vec(-5i128..=5, 4)) {
            let mut coeffs = c.clone();
            coeffs.push(1);
            let f = IntPolynomial::new(coeffs);
            // brute-force oracle: products of monic factors with bounded coefficients
            let mut reducible = f.coeff(0) == 0 || (-30..=30).any(|r| f.eval(r) == 0);
            'outer: for a in -12..=12i128 {
                for b in -30..=30i128 {
                    let q = IntPolynomial::new(vec![b, a, 1]);
                    if b != 0 && f.coeff(0) % b != 0 { continue; }
                    let rem = f.pseudo_rem(&q).unwrap();
                    if rem.is_zero() { reducible = true; break 'outer; }
                }
            }
            prop_assert_eq!(is_irreducible(&f).unwrap(), !reducible);
        }
    }
}
