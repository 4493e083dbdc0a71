mod common;

use common::int_poly;
use num_bigint::BigInt;
use proptest::prelude::*;
use rigidity_core::exactalg::q;
use rigidity_core::parse::parse_poly;
use rigidity_core::verdict::{
    classify, moduli_rigidity, non_isogenous, Conclusion, Corollary, Decided, HIGHER_COROLLARY_MIN_DEGREE,
};
use rigidity_core::RationalPoly;

use Conclusion::{EndQOrQuadratic as Q, EndZ as Z, Inconclusive as I};

/// Expected (conclusion, rule, higher corollaries) for n = 5..=14 in three shapes:
/// `x^n - x - 1`, `x (x^(n-1) - x - 1)`, `x (x - 1)(x^(n-2) - x - 1)`.
const TABLE: [[(Conclusion, &str, bool); 3]; 10] = [
    [(Z, "R0", false), (I, "", false), (I, "", false)],
    [(Z, "R0", false), (Z, "R1", false), (I, "", false)],
    [(Z, "R0", false), (I, "", false), (I, "", false)],
    [(Z, "R0", false), (Z, "R1", false), (I, "", false)],
    [(Z, "R0", false), (Q, "R3", false), (I, "", false)],
    [(Z, "R0", false), (Z, "R1", true), (Q, "R4", false)],
    [(Z, "R0", false), (Z, "R2", true), (I, "", false)],
    [(Z, "R0", false), (Z, "R1", true), (Z, "R4", true)],
    [(Z, "R0", false), (Z, "R2", true), (I, "", false)],
    [(Z, "R0", false), (Z, "R1", true), (Z, "R4", true)],
];

fn fixture(shape: usize, n: usize) -> RationalPoly {
    parse_poly(&match shape {
        0 => format!("x^{n} - x - 1"),
        1 => format!("x*(x^{} - x - 1)", n - 1),
        _ => format!("x*(x - 1)*(x^{} - x - 1)", n - 2),
    })
    .unwrap()
}

#[test]
fn rule_table() {
    for (row, n) in TABLE.iter().zip(5usize..) {
        for (shape, &(conclusion, rule, higher)) in row.iter().enumerate() {
            let v = classify(&fixture(shape, n), 200, 1).unwrap();
            assert_eq!(v.conclusion, conclusion, "n = {n}, shape {shape}");
            let ids = v.rule_ids();
            assert_eq!(ids.first().copied().unwrap_or(""), rule, "n = {n}, shape {shape}");
            let mut expected = Vec::new();
            if conclusion != I {
                expected.push(Corollary::AbsolutelySimple);
            }
            if higher {
                expected.extend([
                    Corollary::GspOpenImage,
                    Corollary::TateDivisorGenerated,
                    Corollary::HodgeDivisorGenerated,
                    Corollary::MumfordTate,
                ]);
            }
            assert_eq!(v.corollary_set(), expected, "n = {n}, shape {shape}");
        }
    }
}

#[test]
fn rigidity_for_an_octic() {
    let h = parse_poly("x^7 - x - 1").unwrap();
    let r = moduli_rigidity(&h, &q(3, 1), &q(5, 1), 200, 0, 256, &BigInt::from(1_000_000)).unwrap();
    assert_eq!(r.result, Decided::True);
    assert!(r.t1_outside && r.t2_outside);
    assert!(r.exceptional.unwrap().superset_flag);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn verdict_invariants(h in (4usize..=11).prop_flat_map(|d| int_poly(d, 7)), t in -3i64..=3, seed in 0u64..4) {
        for f in [h.clone(), &h * &RationalPoly::linear_root(&q(t, 1))] {
            if f.deg().unwrap() < 5 || !f.is_squarefree() {
                continue;
            }
            let v = classify(&f, 60, seed).unwrap();
            let n = v.evidence.shape.n;
            prop_assert_eq!(v.corollaries.is_empty(), v.conclusion == Conclusion::Inconclusive);
            prop_assert_eq!(&v.evidence.shape.expand(), &f);
            for c in &v.corollaries {
                prop_assert!(v.rule_ids().contains(&c.rule.as_str()));
                if c.corollary != Corollary::AbsolutelySimple {
                    // the model y^2 = (x - t) h carrying the certificate has degree n or n - 1
                    let model_degree = if v.evidence.model.is_some() { n - 1 } else { n };
                    prop_assert!(model_degree >= HIGHER_COROLLARY_MIN_DEGREE);
                    prop_assert!(v.evidence.shape.rational_roots.len() >= 1);
                }
            }
            if v.is_definitive() {
                prop_assert!(v.evidence.certificate.is_some());
                let more = classify(&f, 300, seed).unwrap();
                prop_assert_eq!(more.conclusion, v.conclusion);
                prop_assert_eq!(more.corollaries, v.corollaries.clone());
            }
            prop_assert_eq!(classify(&f, 60, seed).unwrap().to_json(), v.to_json());
        }
    }
}

#[test]
fn non_isogeny_examples() {
    let f = parse_poly("x*(x^10 - x - 1)").unwrap();
    let split = (0..=10).fold(RationalPoly::one(), |acc, k| &acc * &RationalPoly::linear_root(&q(k, 1)));
    let r = non_isogenous(&f, &split, 200, 0).unwrap();
    assert_eq!(r.result, Decided::True);
    assert_eq!(non_isogenous(&f, &f, 200, 0).unwrap().result, Decided::Inconclusive);
    assert!(non_isogenous(&f, &parse_poly("x^10 - x - 1").unwrap(), 200, 0).is_err());
}
