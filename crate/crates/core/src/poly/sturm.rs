// SPDX-License-Identifier: Apache-2.0

//! Real root counting by Sturm sequences in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};

type Q = BigRational;

fn to_q(f: &IntPolynomial) -> Vec<Q> {
    f.coeffs().iter().map(|&c| Q::from_integer(BigInt::from(c))).collect()
}

fn trim(v: &mut Vec<Q>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / &lb;
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &c * bc;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots of `f`.
pub fn count_real_roots(f: &IntPolynomial) -> Result<usize> {
    if f.degree() == 0 {
        return Err(Error::Domain("real roots of a constant".into()));
    }
    let mut chain = vec![to_q(f), to_q(&f.derivative())];
    loop {
        let n = chain.len();
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    let lead_sign = |p: &Vec<Q>| if p.last().unwrap().is_positive() { 1 } else { -1 };
    let at_pos = sign_changes(chain.iter().map(lead_sign));
    let at_neg = sign_changes(chain.iter().map(|p| {
        let deg = p.len() - 1;
        lead_sign(p) * if deg % 2 == 0 { 1 } else { -1 }
    }));
    Ok(at_neg - at_pos)
}

/// Signature `(r1, r2)` of a squarefree polynomial.
pub fn signature(f: &IntPolynomial) -> Result<(usize, usize)> {
    let r1 = count_real_roots(f)?;
    let n = f.degree();
    Ok((r1, (n - r1) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signatures() {
        let p = |s: &str| s.parse::<IntPolynomial>().unwrap();
        assert_eq!(signature(&p("x^4-x-1")).unwrap(), (2, 1));
        assert_eq!(signature(&p("x^4+1")).unwrap(), (0, 2));
        assert_eq!(signature(&p("x^4-10x^2+1")).unwrap(), (4, 0));
        assert_eq!(signature(&p("x^3+4x-1")).unwrap(), (1, 1));
        assert_eq!(signature(&p("x^3-3x-1")).unwrap(), (3, 0));
        assert_eq!(count_real_roots(&p("x^2-1")).unwrap(), 2);
        // repeated roots are counted once
        assert_eq!(count_real_roots(&p("x^3-x^2")).unwrap(), 2);
    }
}
