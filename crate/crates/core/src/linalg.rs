// SPDX-License-Identifier: Apache-2.0

//! Small dense linear algebra: integer Hermite and Smith forms, kernels over
//! prime fields, LLL on Gram matrices and Fincke–Pohst enumeration.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

fn ovf() -> Error {
    Error::Overflow("integer lattice reduction")
}

/// `a - q*b` for rows, checked.
fn row_sub(a: &mut [i128], b: &[i128], q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (x, &y) in a.iter_mut().zip(b) {
        *x = x.checked_sub(q.checked_mul(y).ok_or_else(ovf)?).ok_or_else(ovf)?;
    }
    Ok(())
}

/// Hermite normal form of the lattice spanned by `gens` in `Z^n`.
///
/// Returns the `n x n` lower-triangular basis `H` (row `i` supported on
/// columns `0..=i`) with positive diagonal and `0 <= H[i][j] < H[j][j]` for
/// `i > j`. Fails with a domain error when the lattice has rank below `n`.
pub fn hnf(gens: &[Vec<i128>], n: usize) -> Result<Vec<Vec<i128>>> {
    let mut rows: Vec<Vec<i128>> = gens.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut out = vec![vec![0i128; n]; n];
    for col in (0..n).rev() {
        // Euclid on the column among remaining rows
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].unsigned_abs());
            let piv = nz[0];
            let pivot_row = rows[piv].clone();
            for &i in &nz[1..] {
                let q = Integer::div_floor(&rows[i][col], &pivot_row[col]);
                row_sub(&mut rows[i], &pivot_row, q)?;
            }
        }
        let Some(pos) = rows.iter().position(|r| r[col] != 0) else {
            return Err(Error::Domain("lattice is not of full rank".into()));
        };
        let mut r = rows.swap_remove(pos);
        if r[col] < 0 {
            r.iter_mut().for_each(|x| *x = -*x);
        }
        out[col] = r;
        rows.retain(|r| r.iter().any(|&x| x != 0));
    }
    reduce_lower(&mut out)?;
    Ok(out)
}

fn reduce_lower(h: &mut [Vec<i128>]) -> Result<()> {
    let n = h.len();
    for i in 1..n {
        for j in (0..i).rev() {
            let q = Integer::div_floor(&h[i][j], &h[j][j]);
            if q != 0 {
                let hj = h[j].clone();
                row_sub(&mut h[i], &hj, q)?;
            }
        }
    }
    Ok(())
}

/// Integral solution `x` of `x * H = v` for lower-triangular `H`, if any.
pub fn solve_lower(h: &[Vec<i128>], v: &[i128]) -> Option<Vec<i128>> {
    let n = h.len();
    let mut x = vec![0i128; n];
    let mut w = v.to_vec();
    for i in (0..n).rev() {
        if w[i] % h[i][i] != 0 {
            return None;
        }
        x[i] = w[i] / h[i][i];
        for j in 0..i {
            w[j] = w[j].checked_sub(x[i].checked_mul(h[i][j])?)?;
        }
    }
    Some(x)
}

pub fn det_lower(h: &[Vec<i128>]) -> Result<i128> {
    h.iter().enumerate().try_fold(1i128, |acc, (i, r)| acc.checked_mul(r[i]).ok_or_else(ovf))
}

/// Left kernel over `F_p`: basis of `{x : sum x_i rows_i = 0}`.
pub fn left_kernel_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let k = rows[0].len();
    // augment [rows | I] and row reduce the left block
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: Vec<u64> = r.iter().map(|&x| x % p).collect();
            v.extend((0..m).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..k {
        let Some(piv) = (rank..m).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = crate::poly::modp::inv_mod(a[rank][col], p);
        for x in a[rank].iter_mut() {
            *x = mulm(*x, inv, p);
        }
        for i in 0..m {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                let pr = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x = (*x + p - mulm(f, *y, p)) % p;
                }
            }
        }
        rank += 1;
    }
    a[rank..].iter().map(|r| r[k..].to_vec()).collect()
}

pub fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    rows.len() - left_kernel_mod_p(rows, p).len()
}

/// Row-reduced basis of the `F_p` span of `rows`.
pub fn row_basis_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    if a.is_empty() {
        return a;
    }
    let k = a[0].len();
    let mut rank = 0;
    for col in 0..k {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = crate::poly::modp::inv_mod(a[rank][col], p);
        for x in a[rank].iter_mut() {
            *x = mulm(*x, inv, p);
        }
        for i in 0..a.len() {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                let pr = a[rank].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x = (*x + p - mulm(f, *y, p)) % p;
                }
            }
        }
        rank += 1;
    }
    a.truncate(rank);
    a
}

pub(crate) fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Diagonal of the Smith normal form of an integer matrix, nonzero entries
/// only, each dividing the next.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let mut clean = true;
            let piv = a[t][t].clone();
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&piv);
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&piv);
                    for r in a.iter_mut().skip(t) {
                        let v = &q * &r[t];
                        r[j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // divisibility: pivot must divide the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[i][j] % &piv).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for r in a.iter_mut() {
                r.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Elementary divisors `> 1` of `Z^k / L` for a full-rank relation lattice.
pub fn elementary_divisors(relations: &[Vec<i128>]) -> Vec<u128> {
    let mat: Vec<Vec<BigInt>> = relations.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut d: Vec<u128> = smith_diagonal(mat)
        .into_iter()
        .filter(|x| !x.is_one())
        .map(|x| u128::try_from(x).expect("elementary divisor fits u128"))
        .collect();
    d.sort_unstable();
    d
}

/// LLL reduction (delta = 0.99) of the lattice with Gram matrix `gram`.
/// Returns the unimodular transformation: row `i` holds the coordinates of
/// the `i`-th reduced vector in the original basis.
pub fn lll_gram(gram: &[Vec<f64>]) -> Vec<Vec<i128>> {
    let n = gram.len();
    let mut t: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    let g = |t: &Vec<Vec<i128>>, i: usize, j: usize| -> f64 {
        let mut s = 0.0;
        for a in 0..n {
            if t[i][a] == 0 {
                continue;
            }
            for b in 0..n {
                s += t[i][a] as f64 * t[j][b] as f64 * gram[a][b];
            }
        }
        s
    };
    let mut k = 1;
    let mut iterations = 0;
    while k < n && iterations < 10_000 {
        iterations += 1;
        // Gram–Schmidt from scratch: dimensions are tiny.
        for j in (0..k).rev() {
            let (mu, _) = gso(&t, &g, n);
            let q = mu[k][j].round();
            if q != 0.0 {
                let q = q as i128;
                let tj = t[j].clone();
                for (x, y) in t[k].iter_mut().zip(&tj) {
                    *x -= q * y;
                }
            }
        }
        let (mu, bstar) = gso(&t, &g, n);
        if bstar[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1] {
            k += 1;
        } else {
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    t
}

type GramFn<'a> = dyn Fn(&Vec<Vec<i128>>, usize, usize) -> f64 + 'a;

fn gso(t: &Vec<Vec<i128>>, g: &GramFn<'_>, n: usize) -> (Vec<Vec<f64>>, Vec<f64>) {
    let mut mu = vec![vec![0.0; n]; n];
    let mut bstar = vec![0.0; n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g(t, i, j);
            for k in 0..j {
                s -= mu[j][k] * mu[i][k] * bstar[k];
            }
            mu[i][j] = s / bstar[j];
        }
        let mut s = g(t, i, i);
        for k in 0..i {
            s -= mu[i][k] * mu[i][k] * bstar[k];
        }
        bstar[i] = s;
    }
    (mu, bstar)
}

/// Apply a transformation to a Gram matrix: `T G T^t`.
pub fn transform_gram(gram: &[Vec<f64>], t: &[Vec<i128>]) -> Vec<Vec<f64>> {
    let n = gram.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for a in 0..n {
                for b in 0..n {
                    s += t[i][a] as f64 * t[j][b] as f64 * gram[a][b];
                }
            }
            out[i][j] = s;
        }
    }
    out
}

/// Fincke–Pohst: calls `visit(x, q(x))` for every nonzero integer vector
/// with `x^t G x <= bound`, one of each pair `{x, -x}` (the last nonzero
/// coordinate is positive). Stops early when `visit` returns `false`.
pub fn short_vectors(gram: &[Vec<f64>], bound: f64, mut visit: impl FnMut(&[i64], f64) -> bool) {
    let n = gram.len();
    // q[i][i] = Cholesky-type diagonal, q[i][j] = mu coefficients (j > i)
    let mut q = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            q[i][j] = gram[i][j];
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let slack = bound * 1e-9 + 1e-9;
    let mut x = vec![0i64; n];
    let mut rem = vec![0.0; n + 1];
    rem[n] = bound + slack;
    fn rec(
        i: usize,
        n: usize,
        q: &[Vec<f64>],
        x: &mut Vec<i64>,
        rem: &mut Vec<f64>,
        visit: &mut dyn FnMut(&[i64], f64) -> bool,
        bound_total: f64,
    ) -> bool {
        let mut c = 0.0;
        for j in i + 1..n {
            c += q[i][j] * x[j] as f64;
        }
        let r = rem[i + 1];
        if r < 0.0 {
            return true;
        }
        let w = (r / q[i][i]).sqrt();
        let lo = (-c - w).ceil() as i64;
        let hi = (-c + w).floor() as i64;
        let all_zero_above = x[i + 1..].iter().all(|&v| v == 0);
        for v in lo..=hi {
            if all_zero_above && v < 0 {
                continue;
            }
            x[i] = v;
            let t = v as f64 + c;
            rem[i] = r - q[i][i] * t * t;
            if i == 0 {
                if all_zero_above && v == 0 {
                    continue;
                }
                let norm = bound_total - rem[0];
                if !visit(x, norm) {
                    return false;
                }
            } else if !rec(i - 1, n, q, x, rem, visit, bound_total) {
                return false;
            }
        }
        x[i] = 0;
        true
    }
    if n == 0 {
        return;
    }
    rec(n - 1, n, &q, &mut x, &mut rem, &mut visit, bound + slack);
}

/// Exact quadratic form value for reporting: `x^t G x`.
pub fn gram_norm(gram: &[Vec<f64>], x: &[i64]) -> f64 {
    let n = gram.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += x[i] as f64 * x[j] as f64 * gram[i][j];
        }
    }
    s
}

pub fn bigint_abs_u128(x: &BigInt) -> Option<u128> {
    u128::try_from(x.abs()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hnf_basic() {
        let h = hnf(&[vec![2, 0], vec![1, 3], vec![0, 6]], 2).unwrap();
        assert_eq!(h, vec![vec![2, 0], vec![1, 3]]);
        assert_eq!(det_lower(&h).unwrap(), 6);
        assert!(hnf(&[vec![1, 1], vec![2, 2]], 2).is_err());
    }

    #[test]
    fn smith_examples() {
        assert_eq!(elementary_divisors(&[vec![2, 0], vec![0, 3]]), vec![6]);
        assert_eq!(elementary_divisors(&[vec![2, 0], vec![0, 6]]), vec![2, 6]);
        assert_eq!(elementary_divisors(&[vec![3]]), vec![3]);
        assert_eq!(elementary_divisors(&[vec![1, 0], vec![0, 1]]), Vec::<u128>::new());
    }

    #[test]
    fn kernel_mod_p() {
        let rows = vec![vec![1, 2], vec![2, 4], vec![0, 1]];
        let k = left_kernel_mod_p(&rows, 7);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for c in 0..2 {
            let s: u64 = (0..3).map(|i| v[i] * rows[i][c]).sum::<u64>() % 7;
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn fincke_pohst_counts_z2() {
        let g = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let mut count = 0;
        short_vectors(&g, 2.0, |_, _| {
            count += 1;
            true
        });
        // (1,0),(0,1),(1,1),(-1,1) up to sign
        assert_eq!(count, 4);
    }

    fn det_i(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn hnf_preserves_lattice(m in proptest::collection::vec(proptest::collection::vec(-20i128..=20, 3), 3)) {
            let d = det_i(&m);
            prop_assume!(d != 0);
            let h = hnf(&m, 3).unwrap();
            prop_assert_eq!(det_lower(&h).unwrap(), d.abs());
            for r in &m {
                prop_assert!(solve_lower(&h, r).is_some());
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    prop_assert_eq!(h[i][j], 0);
                }
                for j in 0..i {
                    prop_assert!(h[i][j] >= 0 && h[i][j] < h[j][j]);
                }
            }
            let sd = elementary_divisors(&m);
            prop_assert_eq!(sd.iter().product::<u128>(), d.unsigned_abs());
            for w in sd.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }

        #[test]
        fn fincke_pohst_matches_box(a in 1i64..5, b in -2i64..=2, c in 1i64..5, bound in 1.0f64..30.0) {
            prop_assume!(a * c - b * b > 0);
            let g = vec![vec![a as f64, b as f64], vec![b as f64, c as f64]];
            let mut found = Vec::new();
            short_vectors(&g, bound, |x, _| { found.push((x[0], x[1])); true });
            let mut expect = Vec::new();
            for x in -40i64..=40 {
                for y in -40i64..=40 {
                    if (x, y) == (0, 0) || y < 0 || (y == 0 && x < 0) { continue; }
                    let q = a * x * x + 2 * b * x * y + c * y * y;
                    if (q as f64) <= bound { expect.push((x, y)); }
                }
            }
            found.sort();
            expect.sort();
            prop_assert_eq!(found, expect);
        }
    }
}
