// SPDX-License-Identifier: Apache-2.0

//! Dense polynomials over a prime field `F_p`, for `p < 2^63`.

use super::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    /// Constant term first; no trailing zeros.
    pub coeffs: Vec<u64>,
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (g, x, _) = crate::arith::ext_gcd(a as i128, p as i128);
    debug_assert_eq!(g, 1, "{a} not invertible mod {p}");
    x.rem_euclid(p as i128) as u64
}

pub fn pow_mod_u64(a: u64, e: u128, p: u64) -> u64 {
    crate::arith::pow_mod(a as u128, e, p as u128) as u64
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_int(f: &IntPolynomial, p: u64) -> Self {
        let coeffs = f.coeffs().iter().map(|&c| c.rem_euclid(p as i128) as u64).collect();
        FpPoly::new(p, coeffs)
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `usize::MAX`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().wrapping_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lc(), self.p);
        FpPoly::new(self.p, self.coeffs.iter().map(|&c| mulm(c, inv, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mulm(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p);
        let dn = d.coeffs.len() - 1;
        let mut q = vec![0u64; r.len() - dn];
        for k in (0..q.len()).rev() {
            let c = mulm(r[k + dn], inv, p);
            q[k] = c;
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = (r[k + j] + p - mulm(c, dc, p)) % p;
                }
            }
        }
        r.truncate(dn);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, (i as u64) % self.p, self.p)).collect();
        FpPoly::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (mulm(acc, x, self.p) + c) % self.p)
    }

    /// Lift to integer coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|&c| c as i128).collect())
    }

    /// Products of the distinct irreducible factors of each degree:
    /// entry `(d, P_d)` holds every distinct monic irreducible factor of
    /// degree `d`, each once.
    fn distinct_degree_parts(&self) -> Vec<(usize, FpPoly)> {
        let p = self.p;
        let f = self.monic();
        let n = f.degree();
        let x = FpPoly::x(p);
        let mut out = Vec::new();
        let mut found = FpPoly::one(p);
        let mut xq = x.clone();
        let mut rest = squarefree_support(&f);
        for d in 1..=n {
            if rest.degree() == 0 || rest.is_zero() {
                break;
            }
            if 2 * d > rest.degree() {
                // what remains is a single irreducible factor
                let deg = rest.degree();
                out.push((deg, rest.clone()));
                found = found.mul(&rest);
                rest = FpPoly::one(p);
                break;
            }
            xq = xq.pow_mod(p as u128, &f);
            let g = xq.sub(&x).gcd(&rest);
            if g.degree() > 0 {
                out.push((d, g.clone()));
                rest = rest.div_rem(&g).0;
                found = found.mul(&g);
            }
        }
        debug_assert!(rest.degree() == 0);
        let _ = found;
        out
    }

    /// Multiset of `(degree, multiplicity)` of the monic irreducible
    /// factors, sorted.
    pub fn factor_degrees(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = self.factor().into_iter().map(|(g, e)| (g.degree(), e)).collect();
        out.sort_unstable();
        out
    }

    /// Complete factorization into monic irreducibles with multiplicity,
    /// sorted by (degree, coefficients).
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == 0 {
            return Vec::new();
        }
        let mut irreducibles = Vec::new();
        for (d, part) in f.distinct_degree_parts() {
            equal_degree_split(&part, d, &mut irreducibles);
        }
        let mut out: Vec<(FpPoly, u32)> = irreducibles
            .into_iter()
            .map(|g| {
                let mut e = 0;
                let mut h = f.clone();
                loop {
                    let (q, r) = h.div_rem(&g);
                    if !r.is_zero() {
                        break;
                    }
                    h = q;
                    e += 1;
                }
                (g, e)
            })
            .collect();
        out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let fs = self.factor();
        fs.len() == 1 && fs[0].1 == 1
    }
}

/// Product of the distinct monic irreducible factors of `f`.
fn squarefree_support(f: &FpPoly) -> FpPoly {
    let p = f.p;
    let f = f.monic();
    if f.degree() == 0 {
        return f;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p) = g1(x)^p with g1 obtained from coefficient p-th roots;
        // over F_p the Frobenius is the identity on coefficients.
        let g1 = FpPoly::new(p, f.coeffs.iter().step_by(p as usize).copied().collect());
        return squarefree_support(&g1);
    }
    let g = f.gcd(&df);
    let mut s = f.div_rem(&g).0;
    if g.degree() > 0 {
        let rest = squarefree_support(&g);
        let extra = rest.div_rem(&s.gcd(&rest)).0;
        s = s.mul(&extra);
    }
    s.monic()
}

// Cantor–Zassenhaus splitting of a product of distinct degree-d irreducibles.
// The trial polynomials run through a fixed sequence, so the output is
// deterministic.
fn equal_degree_split(f: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    let p = f.p;
    let n = f.degree();
    if n == d {
        out.push(f.monic());
        return;
    }
    if p == 2 || (p as u128).pow(d as u32) <= 64 {
        brute_force_split(f, d, out);
        return;
    }
    let exp = ((p as u128).pow(d as u32) - 1) / 2;
    for t in 0u64.. {
        let trial = if t < p { FpPoly::new(p, vec![t, 1]) } else { FpPoly::new(p, vec![t % p, (t / p) % p, 1]) };
        let u = trial.pow_mod(exp, f).sub(&FpPoly::one(p));
        let g = u.gcd(f);
        if g.degree() > 0 && g.degree() < n {
            let h = f.div_rem(&g).0;
            equal_degree_split(&g, d, out);
            equal_degree_split(&h, d, out);
            return;
        }
    }
}

fn brute_force_split(f: &FpPoly, d: usize, out: &mut Vec<FpPoly>) {
    let p = f.p;
    let mut rest = f.monic();
    let total = (p as u128).pow(d as u32);
    for k in 0..total {
        if rest.degree() == d {
            break;
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut m = k;
        for _ in 0..d {
            coeffs.push((m % p as u128) as u64);
            m /= p as u128;
        }
        coeffs.push(1);
        let g = FpPoly::new(p, coeffs);
        let (q, r) = rest.div_rem(&g);
        if r.is_zero() {
            out.push(g);
            rest = q;
        }
    }
    if rest.degree() > 0 {
        out.push(rest);
    }
}
