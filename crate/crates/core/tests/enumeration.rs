// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;

use s4census_core::census::enumerate::field_of;
use s4census_core::census::{box_search, cubic_fields, quartic_fields, FieldEntry};
use s4census_core::orders::maximal_order;
use s4census_core::poly::{galois_group, GaloisLabel, IntPolynomial};

fn p(s: &str) -> IntPolynomial {
    s.parse().unwrap()
}

fn signature(e: &FieldEntry) -> (usize, usize) {
    maximal_order(&e.poly).unwrap().signature()
}

#[test]
fn hunter_cubics_equal_box_oracle() {
    let hunter = cubic_fields(2000, 1).unwrap();
    let oracle = box_search(3, 2000, 15, 1).unwrap();
    assert_eq!(hunter, oracle);
    assert_eq!(hunter.len(), 331);
}

#[test]
fn hunter_quartics_equal_box_oracle() {
    let hunter = quartic_fields(2000, 2).unwrap();
    let oracle = box_search(4, 2000, 15, 2).unwrap();
    assert_eq!(hunter, oracle);
    assert_eq!(hunter.len(), 145);
}

#[test]
fn smallest_discriminants_by_signature() {
    let cubics = cubic_fields(200, 1).unwrap();
    let first = |sig| cubics.iter().find(|e| signature(e) == sig).map(|e| e.disc);
    assert_eq!(first((3, 0)), Some(49));
    assert_eq!(first((1, 1)), Some(-23));

    let quartics = quartic_fields(1000, 1).unwrap();
    let first = |sig| quartics.iter().find(|e| signature(e) == sig).map(|e| e.disc);
    assert_eq!(first((4, 0)), Some(725));
    assert_eq!(first((2, 1)), Some(-275));
    assert_eq!(first((0, 2)), Some(117));
}

#[test]
fn smallest_s4_fields() {
    let quartics = quartic_fields(300, 1).unwrap();
    let s4: Vec<i128> =
        quartics.iter().filter(|e| galois_group(&e.poly).unwrap() == GaloisLabel::S4).map(|e| e.disc).collect();
    assert_eq!(s4, vec![229, 257, -283]);
}

#[test]
fn discriminants_are_sorted_and_unique() {
    let v = quartic_fields(3000, 2).unwrap();
    for w in v.windows(2) {
        assert!((w[0].disc.unsigned_abs(), &w[0].poly) < (w[1].disc.unsigned_abs(), &w[1].poly));
    }
    let cyclic_cubics: Vec<i128> = cubic_fields(3000, 2)
        .unwrap()
        .into_iter()
        .filter(|e| galois_group(&e.poly).unwrap() == GaloisLabel::C3)
        .map(|e| e.disc)
        .collect();
    // conductors 7, 9, 13, 19, 31, 37, 43
    assert_eq!(cyclic_cubics, vec![49, 81, 169, 361, 961, 1369, 1849]);
}

#[test]
fn job_count_does_not_change_output() {
    assert_eq!(quartic_fields(1500, 1).unwrap(), quartic_fields(1500, 3).unwrap());
    assert_eq!(cubic_fields(1500, 1).unwrap(), cubic_fields(1500, 4).unwrap());
}

#[test]
fn isomorphic_polynomials_share_canonical_form() {
    let base = field_of(&p("x^4 - x - 1"), 10_000).unwrap().unwrap();
    // x -> x + 2 and x -> -x, then a generator 1 + theta^2 of the same field
    for f in ["x^4 + 8*x^3 + 24*x^2 + 31*x + 13", "x^4 + x - 1", "x^4 - 4*x^3 + 4*x^2 - x + 1"] {
        let e = field_of(&p(f), 10_000).unwrap().unwrap();
        assert_eq!(e, base, "{f}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_translation_invariant(c in proptest::collection::vec(-4i128..=4, 4), shift in -3i128..=3) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = IntPolynomial::new(coeffs);
        let a = field_of(&f, 1_000_000);
        let b = field_of(&f.shift(shift), 1_000_000);
        prop_assert_eq!(a.ok(), b.ok());
    }

    #[test]
    fn canonical_form_is_reflection_invariant(c in proptest::collection::vec(-4i128..=4, 3)) {
        let mut coeffs = c.clone();
        coeffs.push(1);
        let f = IntPolynomial::new(coeffs);
        prop_assert_eq!(field_of(&f, 1_000_000).ok(), field_of(&f.negate_variable(), 1_000_000).ok());
    }
}
