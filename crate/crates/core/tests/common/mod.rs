#![allow(dead_code)]

use num_rational::BigRational;
use proptest::prelude::*;
use rigidity_core::exactalg::q;
use rigidity_core::RationalPoly;

/// Integer polynomial of exact degree `deg` with coefficients in `[-r, r]`.
pub fn int_poly(deg: usize, r: i64) -> impl Strategy<Value = RationalPoly> {
    (prop::collection::vec(-r..=r, deg), (1..=r).prop_flat_map(|a| prop_oneof![Just(a), Just(-a)]))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            RationalPoly::from_i64s(&c)
        })
}

pub fn int_poly_upto(max_deg: usize, r: i64) -> impl Strategy<Value = RationalPoly> {
    (1..=max_deg).prop_flat_map(move |d| int_poly(d, r))
}

pub fn rational(r: i64, den: i64) -> impl Strategy<Value = BigRational> {
    (-r..=r, 1..=den).prop_map(|(a, b)| q(a, b))
}
