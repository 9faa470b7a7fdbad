// SPDX-License-Identifier: Apache-2.0

//! Exact integer arithmetic: factorization, radicals, prime-to-{2,3} parts
//! and the exponent-shape decompositions of discriminants and conductors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization of a nonzero integer's absolute value.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Factorization {
    pairs: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u128, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn valuation(&self, p: u128) -> u32 {
        self.pairs.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> u128 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i128
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n as u128);
        r * r == n as u128
    }
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b, mut r) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            r = add_mod(r, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    r
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            r = mul_mod(r, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    r
}

const SMALL_PRIMES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller–Rabin with the first twelve prime bases: deterministic for all
/// n < 3.3 * 10^24.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho; n must be composite and odd.
fn pollard_rho(n: u128) -> u128 {
    let mut c = 1u128;
    loop {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut g) = (2u128, 2u128, 1u128);
        let mut q = 1u128;
        let mut ys = y;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(64) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 64;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_into(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

const TRIAL_CUTOFF: u128 = 1000;

/// Factorization of `|n|`: trial division below 1000, then Pollard rho.
pub fn factorize(n: i128) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    Ok(factorize_u(n.unsigned_abs()))
}

pub fn factorize_u(mut n: u128) -> Factorization {
    assert!(n != 0, "factorize_u(0)");
    let mut primes = Vec::new();
    let mut p = 2u128;
    while p < TRIAL_CUTOFF && p * p <= n {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if n < p * p {
            primes.push(n);
        } else {
            factor_into(n, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut pairs: Vec<(u128, u32)> = Vec::new();
    for q in primes {
        match pairs.last_mut() {
            Some((r, e)) if *r == q => *e += 1,
            _ => pairs.push((q, 1)),
        }
    }
    Factorization { pairs }
}

pub fn radical(n: u128) -> u128 {
    assert!(n >= 1, "radical of 0");
    factorize_u(n).primes().product()
}

pub fn omega(n: u128) -> u32 {
    assert!(n >= 1, "omega of 0");
    factorize_u(n).pairs().len() as u32
}

pub fn prime_to_s_part(mut n: u128) -> u128 {
    assert!(n >= 1, "S-part of 0");
    while n.is_multiple_of(2) {
        n /= 2;
    }
    while n.is_multiple_of(3) {
        n /= 3;
    }
    n
}

pub fn valuation(mut n: u128, p: u128) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Primes `<= n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Squarefree kernel with sign: the unique squarefree `s` with `n = s * m^2`.
pub fn squarefree_kernel(n: i128) -> i128 {
    assert!(n != 0);
    let f = factorize_u(n.unsigned_abs());
    let s: u128 = f.pairs().iter().filter(|(_, e)| e % 2 == 1).map(|&(p, _)| p).product();
    if n < 0 {
        -(s as i128)
    } else {
        s as i128
    }
}

/// Fundamental discriminant of `Q(sqrt(n))` for a nonsquare `n`.
pub fn fundamental_discriminant(n: i128) -> Result<i128> {
    if n == 0 || is_square(n) {
        return Err(Error::Domain(format!("{n} is a square")));
    }
    let s = squarefree_kernel(n);
    Ok(if s.rem_euclid(4) == 1 { s } else { 4 * s })
}

pub fn is_fundamental_discriminant(d: i128) -> bool {
    d != 0 && d != 1 && !is_square(d) && fundamental_discriminant(d) == Ok(d)
}

/// `d = 2^e2 * 3^e3 * d1 * d2^2 * d3^3` with `6*d1*d2*d3` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantShape {
    pub e2: u32,
    pub e3: u32,
    pub d1: u128,
    pub d2: u128,
    pub d3: u128,
}

impl DiscriminantShape {
    pub fn parse(d: u128) -> Result<Self> {
        if d == 0 {
            return Err(Error::Domain("discriminant shape of 0".into()));
        }
        let f = factorize_u(d);
        let mut shape = DiscriminantShape { e2: f.valuation(2), e3: f.valuation(3), d1: 1, d2: 1, d3: 1 };
        for &(p, e) in f.pairs().iter().filter(|(p, _)| *p > 3) {
            match e {
                1 => shape.d1 *= p,
                2 => shape.d2 *= p,
                3 => shape.d3 *= p,
                _ => return Err(Error::NotAnS4Shape { value: d, prime: p, exponent: e }),
            }
        }
        Ok(shape)
    }

    pub fn reconstruct(&self) -> u128 {
        2u128.pow(self.e2) * 3u128.pow(self.e3) * self.d1 * self.d2 * self.d2 * self.d3.pow(3)
    }
}

pub fn parse_discriminant_shape(d: u128) -> Result<DiscriminantShape> {
    DiscriminantShape::parse(d)
}

/// `N = 2^n2 * 3^n3 * N11 * N12 * N2^2` with `6*N11*N12*N2` squarefree,
/// primes of `N11` congruent to 1 and primes of `N12` congruent to 2 mod 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConductorShape {
    pub n2: u32,
    pub n3: u32,
    #[serde(rename = "N11")]
    pub n11: u128,
    #[serde(rename = "N12")]
    pub n12: u128,
    #[serde(rename = "N2")]
    pub n2_sq: u128,
}

impl ConductorShape {
    pub fn parse(n: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("conductor shape of 0".into()));
        }
        let f = factorize_u(n);
        let mut shape = ConductorShape { n2: f.valuation(2), n3: f.valuation(3), n11: 1, n12: 1, n2_sq: 1 };
        for &(p, e) in f.pairs().iter().filter(|(p, _)| *p > 3) {
            match (e, p % 3) {
                (1, 1) => shape.n11 *= p,
                (1, _) => shape.n12 *= p,
                (2, _) => shape.n2_sq *= p,
                _ => return Err(Error::NotAConductorShape { value: n, prime: p, exponent: e }),
            }
        }
        Ok(shape)
    }

    pub fn reconstruct(&self) -> u128 {
        2u128.pow(self.n2) * 3u128.pow(self.n3) * self.n11 * self.n12 * self.n2_sq * self.n2_sq
    }

    /// Number of distinct primes of the conductor, including 2 and 3.
    pub fn omega(&self) -> u32 {
        omega(self.n11 * self.n12 * self.n2_sq) + u32::from(self.n2 > 0) + u32::from(self.n3 > 0)
    }
}

pub fn parse_conductor_shape(n: u128) -> Result<ConductorShape> {
    ConductorShape::parse(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_factor(mut n: u128) -> Vec<(u128, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(-283).unwrap().pairs(), &[(283, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_matches_trial_division_below_10k() {
        for n in 1..10_000u128 {
            assert_eq!(factorize_u(n).pairs(), naive_factor(n).as_slice(), "n = {n}");
        }
    }

    #[test]
    fn factorize_large_semiprimes() {
        let p = 1_000_000_007u128;
        let q = 998_244_353u128;
        assert_eq!(factorize_u(p * q).pairs(), &[(q, 1), (p, 1)]);
        assert_eq!(factorize_u(p * p * 6).pairs(), &[(2, 1), (3, 1), (p, 2)]);
        assert!(is_prime(p) && is_prime(q) && !is_prime(p * q));
        // strong pseudoprime to every prime base up to 23
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn radical_omega_s_part_examples() {
        assert_eq!(radical(12), 6);
        assert_eq!(radical(1), 1);
        assert_eq!(radical(283 * 283), 283);
        assert_eq!(omega(12), 2);
        assert_eq!(omega(1), 0);
        assert_eq!(omega(283), 1);
        assert_eq!(prime_to_s_part(72), 1);
        assert_eq!(prime_to_s_part(283), 283);
        assert_eq!(prime_to_s_part(6 * 283), 283);
    }

    #[test]
    fn discriminant_shape_examples() {
        let s = parse_discriminant_shape(5 * 49 * 1331).unwrap();
        assert_eq!((s.e2, s.e3, s.d1, s.d2, s.d3), (0, 0, 5, 7, 11));
        let s = parse_discriminant_shape(283).unwrap();
        assert_eq!((s.d1, s.d2, s.d3), (283, 1, 1));
        assert!(matches!(parse_discriminant_shape(625), Err(Error::NotAnS4Shape { prime: 5, exponent: 4, .. })));
    }

    #[test]
    fn conductor_shape_examples() {
        let s = parse_conductor_shape(7 * 25).unwrap();
        assert_eq!((s.n2, s.n3, s.n11, s.n12, s.n2_sq), (0, 0, 7, 1, 5));
        let s = parse_conductor_shape(283).unwrap();
        assert_eq!((s.n11, s.n12, s.n2_sq), (283, 1, 1));
        assert!(matches!(parse_conductor_shape(125), Err(Error::NotAConductorShape { .. })));
    }

    #[test]
    fn fundamental_discriminants() {
        assert_eq!(fundamental_discriminant(-283).unwrap(), -283);
        assert_eq!(fundamental_discriminant(5 * 9).unwrap(), 5);
        assert_eq!(fundamental_discriminant(-1).unwrap(), -4);
        assert_eq!(fundamental_discriminant(12).unwrap(), 12);
        assert_eq!(fundamental_discriminant(-108).unwrap(), -3);
        assert!(is_fundamental_discriminant(-4));
        assert!(!is_fundamental_discriminant(-16));
    }

    proptest! {
        #[test]
        fn radical_omega_laws(n in 1u128..1_000_000) {
            let r = radical(n);
            prop_assert_eq!(n % r, 0);
            prop_assert_eq!(radical(r), r);
            prop_assert_eq!(omega(n), omega(r));
        }

        #[test]
        fn coprime_multiplicativity(m in 1u128..100_000, n in 1u128..100_000) {
            prop_assume!(gcd(m, n) == 1);
            prop_assert_eq!(radical(m * n), radical(m) * radical(n));
            prop_assert_eq!(omega(m * n), omega(m) + omega(n));
            prop_assert_eq!(prime_to_s_part(m * n), prime_to_s_part(m) * prime_to_s_part(n));
        }

        #[test]
        fn factorize_agrees_with_trial_division(n in 1u128..1_000_000) {
            prop_assert_eq!(factorize_u(n).pairs().to_vec(), naive_factor(n));
        }

        #[test]
        fn shape_round_trips(n in 1u128..10_000_000) {
            if let Ok(s) = parse_discriminant_shape(n) {
                prop_assert_eq!(s.reconstruct(), n);
                prop_assert_eq!(gcd(s.d1 * s.d2 * s.d3, 6), 1);
                prop_assert_eq!(radical(s.d1 * s.d2 * s.d3), s.d1 * s.d2 * s.d3);
            }
            if let Ok(s) = parse_conductor_shape(n) {
                prop_assert_eq!(s.reconstruct(), n);
                prop_assert!(factorize_u(s.n11).primes().all(|p| p % 3 == 1));
                prop_assert!(factorize_u(s.n12).primes().all(|p| p % 3 == 2));
            }
        }
    }
}
