mod common;

use common::{int_poly, rational};
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use rigidity_core::exactalg::q;
use rigidity_core::moduli::exceptional::root_preserving_maps;
use rigidity_core::moduli::float::{real_rational, real_to_f64, reconstruct_rational};
use rigidity_core::moduli::{
    chordal, cross_ratio, curves_isomorphic, exceptional_set, roots_numeric, Complex, MobiusMap, ProjPoint, J1,
};
use rigidity_core::parse::parse_poly;
use rigidity_core::RationalPoly;

const P: usize = 256;

fn c64() -> impl Strategy<Value = Complex64> {
    (-4.0f64..4.0, -4.0f64..4.0).prop_map(|(a, b)| Complex64::new(a, b))
}

fn point() -> impl Strategy<Value = ProjPoint> {
    prop_oneof![
        8 => c64().prop_map(|z| ProjPoint::Finite(Complex::from_c64(z, P))),
        1 => Just(ProjPoint::Infinity),
    ]
}

fn map() -> impl Strategy<Value = MobiusMap> {
    [c64(), c64(), c64(), c64()]
        .prop_filter_map("singular", |[a, b, c, d]| {
            let det = a * d - b * c;
            (det.norm() > 1e-3).then(|| {
                let e = |z: Complex64| Complex::from_c64(z, P);
                MobiusMap::new(e(a), e(b), e(c), e(d)).unwrap()
            })
        })
}

fn dist(a: &ProjPoint, b: &ProjPoint) -> f64 {
    real_to_f64(&chordal(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_laws(s in map(), t in map(), z in point()) {
        prop_assert!(dist(&s.compose(&t).apply(&z), &s.apply(&t.apply(&z))) < 1e-60);
        prop_assert!(dist(&t.inverse().apply(&t.apply(&z)), &z) < 1e-60);
        prop_assert!(t.compose(&t.inverse()).is_identity(1e-60));
    }

    #[test]
    fn cross_ratio_is_invariant(t in map(), z in [point(), point(), point(), point()]) {
        let separated = (0..4).all(|i| (i + 1..4).all(|j| dist(&z[i], &z[j]) > 1e-6));
        prop_assume!(separated);
        let tz: Vec<ProjPoint> = z.iter().map(|p| t.apply(p)).collect();
        let a = cross_ratio([&z[0], &z[1], &z[2], &z[3]]);
        let b = cross_ratio([&tz[0], &tz[1], &tz[2], &tz[3]]);
        prop_assert!(dist(&a, &b) < 1e-25);
    }

    #[test]
    fn triples_determine_maps(t in map(), z in [point(), point(), point()]) {
        let separated = (0..3).all(|i| (i + 1..3).all(|j| dist(&z[i], &z[j]) > 1e-6));
        prop_assume!(separated);
        let w: Vec<ProjPoint> = z.iter().map(|p| t.apply(p)).collect();
        let s = MobiusMap::from_triples([&z[0], &z[1], &z[2]], [&w[0], &w[1], &w[2]]).unwrap();
        prop_assert!(real_to_f64(&s.distance(&t)) < 1e-40);
        for p in s.fixed_points() {
            prop_assert!(dist(&s.apply(&p), &p) < 1e-40);
        }
    }

    #[test]
    fn rationals_are_reconstructed(r in rational(1_000_000, 1_000_000)) {
        let x = real_rational(&r, P);
        prop_assert_eq!(reconstruct_rational(&x, &BigInt::from(1_000_000), P / 4), Some(r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn affine_changes_are_isomorphisms(h in int_poly(5, 6), a in 1i64..5, b in -5i64..5) {
        let f = &h * &RationalPoly::linear_root(&q(7, 1));
        prop_assume!(f.is_squarefree());
        // f(a x + b)
        let g = f.shift(&q(b, 1));
        let scaled = RationalPoly::from_coeffs(
            g.coeffs().iter().enumerate().map(|(k, c)| c * num_traits::pow(q(a, 1), k)).collect(),
        );
        prop_assert!(curves_isomorphic(&f, &scaled, 1e-30).unwrap());
    }
}

#[test]
fn no_member_of_j1_preserves_the_roots() {
    let h = parse_poly("x^6 - x - 1").unwrap();
    let roots: Vec<Complex> = roots_numeric(&h, P).unwrap().into_iter().map(|c| c.z).collect();
    let j1 = J1::build(&roots).unwrap();
    assert!(root_preserving_maps(&j1, &roots, 1e-30).is_empty());
}

#[test]
fn generic_parameters_give_distinct_curves() {
    let h = parse_poly("x^6 - x - 1").unwrap();
    let set = exceptional_set(&h, P, &BigInt::from(1_000_000)).unwrap();
    assert!(set.superset_flag);
    let mut rng = 0x2545_f491_4f6c_dd1du64;
    let mut next = |m: i64| {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        (rng % (2 * m as u64 + 1)) as i64 - m
    };
    let mut trials = 0;
    while trials < 50 {
        let t1 = q(next(60), next(8).abs() + 1);
        let t2 = q(next(60), next(8).abs() + 1);
        if t1 == t2 || set.may_contain(&t1) || set.may_contain(&t2) {
            continue;
        }
        let f1 = &h * &RationalPoly::linear_root(&t1);
        let f2 = &h * &RationalPoly::linear_root(&t2);
        assert!(!curves_isomorphic(&f1, &f2, 1e-30).unwrap(), "{t1} {t2}");
        trials += 1;
    }
}
