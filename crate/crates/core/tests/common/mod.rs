#![allow(dead_code)]

use proptest::prelude::*;

use jlab::coeff::{ComplexF, GaussRat};
use jlab::BiPoly;

pub fn gauss() -> impl Strategy<Value = GaussRat> {
    (-12i64..=12, 1i64..=5, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| {
        &GaussRat::from_ratio(a, b) + &(&GaussRat::from_ratio(c, d) * &GaussRat::i())
    })
}

pub fn real_int() -> impl Strategy<Value = GaussRat> {
    (-9i64..=9).prop_map(GaussRat::from_int)
}

pub fn bipoly_with(max_terms: usize, max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, gauss()), 0..=max_terms)
        .prop_map(BiPoly::from_terms)
}

pub fn bipoly() -> impl Strategy<Value = BiPoly> {
    bipoly_with(6, 4)
}

pub fn complex() -> impl Strategy<Value = ComplexF> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| ComplexF::new(re, im))
}

pub fn close(a: ComplexF, b: ComplexF, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}
