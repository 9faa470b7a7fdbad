// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use s4census_core::arith::{factorize_u, is_fundamental_discriminant};
use s4census_core::classgrp::{
    quadratic_class_group, quadratic_polynomial, reduced_forms, relation_class_group, Certification,
};
use s4census_core::orders::maximal_order;

/// Kronecker symbol (d / n) for n >= 1.
fn kronecker(d: i128, n: u128) -> i32 {
    let mut r = 1;
    for &(p, e) in factorize_u(n).pairs() {
        let v = if p == 2 {
            match d.rem_euclid(8) {
                1 | 7 => 1,
                3 | 5 => -1,
                _ => 0,
            }
        } else {
            legendre(d, p)
        };
        if v == 0 {
            return 0;
        }
        if e % 2 == 1 {
            r *= v;
        }
    }
    r
}

fn legendre(a: i128, p: u128) -> i32 {
    let a = a.rem_euclid(p as i128) as u128;
    if a == 0 {
        return 0;
    }
    let mut r = 1u128;
    let (mut b, mut e) = (a, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Dirichlet: h(D) = -(w / 2|D|) * sum chi(a) a for D < 0.
fn dirichlet_h(d: i128) -> i128 {
    let n = d.unsigned_abs();
    let s: i128 = (1..n).map(|a| kronecker(d, a) as i128 * a as i128).sum();
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    -w * s / (2 * n as i128)
}

/// h * R = -(1/2) sum chi(a) log sin(pi a / D) for D > 0.
fn hr_finite(d: i128) -> f64 {
    let n = d as u128;
    -0.5 * (1..n).map(|a| kronecker(d, a) as f64 * (PI * a as f64 / n as f64).sin().ln()).sum::<f64>()
}

/// Regulator from the period of the continued fraction of the ring generator.
fn regulator_cf(d: i128) -> f64 {
    // x = (p + sqrt(m)) / q with q | m - p^2
    let (m, mut p, mut q) = if d % 4 == 1 { (d, 1i128, 2i128) } else { (d / 4, 0, 1) };
    let sq = (m as f64).sqrt();
    let mut states = Vec::new();
    let mut logs = Vec::new();
    for _ in 0..100_000 {
        let x = (p as f64 + sq) / q as f64;
        let a = x.floor() as i128;
        states.push((p, q));
        logs.push(x.ln());
        p = a * q - p;
        q = (m - p * p) / q;
        if let Some(i) = states.iter().position(|&st| st == (p, q)) {
            return logs[i..].iter().sum();
        }
    }
    panic!("no period for {d}");
}

#[test]
fn forms_match_dirichlet_formula() {
    let mut checked = 0;
    for d in (-4000i128..0).filter(|&d| is_fundamental_discriminant(d)) {
        let cg = quadratic_class_group(d).unwrap();
        assert_eq!(cg.order() as i128, dirichlet_h(d), "D = {d}");
        assert_eq!(cg.order() as usize, reduced_forms(d).len(), "D = {d}");
        assert_eq!(cg.certification, Certification::FormsExhaustive);
        checked += 1;
    }
    assert!(checked > 1000);
}

#[test]
fn relation_engine_matches_forms_for_imaginary_fields() {
    for d in (-1500i128..0).filter(|&d| is_fundamental_discriminant(d)).step_by(7) {
        let forms = quadratic_class_group(d).unwrap();
        let ord = maximal_order(&quadratic_polynomial(d)).unwrap();
        let rel = relation_class_group(&ord).unwrap();
        assert_eq!(rel.elementary_divisors, forms.elementary_divisors, "D = {d}");
    }
}

#[test]
fn real_quadratic_against_class_number_formula() {
    for d in (5i128..3000).filter(|&d| is_fundamental_discriminant(d)) {
        let cg = quadratic_class_group(d).unwrap();
        let reg = cg.regulator.expect("real field has a regulator");
        let cf = regulator_cf(d);
        assert!((reg - cf).abs() < 1e-6 * cf.max(1.0), "D = {d}: R = {reg}, expected {cf}");
        let h = (hr_finite(d) / cf).round() as u128;
        assert_eq!(cg.order(), h, "D = {d}");
    }
}

#[test]
fn large_regulator_field() {
    let cg = quadratic_class_group(7465).unwrap();
    assert_eq!(cg.elementary_divisors, vec![18]);
    let h = (hr_finite(7465) / regulator_cf(7465)).round();
    assert_eq!(h, 18.0);
}

#[test]
fn three_torsion_of_known_groups() {
    for (d, divisors) in [(-283, vec![3]), (-3299, vec![3, 9]), (-4027, vec![3, 3])] {
        let cg = quadratic_class_group(d).unwrap();
        assert_eq!(cg.elementary_divisors, divisors, "D = {d}");
    }
}
