mod common;

use common::int_poly;
use proptest::prelude::*;
use rigidity_core::exactalg::{is_prime, primes_from};
use rigidity_core::galois::{certify_sym_or_alt, factor_cycle_type, power_extract, replay, GroupConclusion};
use rigidity_core::parse::parse_poly;
use rigidity_core::RationalPoly;

const IRREDUCIBLES: [&str; 8] = ["x - 3", "x^2 + 1", "x^2 - 2", "x^3 - 2", "x^4 - x - 1", "x^5 - x - 1", "x^3 + x + 1", "x^2 + x + 1"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_replay(p in int_poly(6, 5), seed in any::<u64>()) {
        prop_assume!(p.is_squarefree());
        if let Some(cert) = certify_sym_or_alt(&p, 200, seed).unwrap().certificate() {
            prop_assert!(replay(&p, cert).is_ok());
            prop_assert_eq!(cert.degree, 6);
        }
    }

    #[test]
    fn factor_degrees_are_refined(mask in 1u32..(1 << IRREDUCIBLES.len()), start in 2u64..2000) {
        let factors: Vec<RationalPoly> = IRREDUCIBLES
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| parse_poly(s).unwrap())
            .collect();
        let h = factors.iter().fold(RationalPoly::one(), |acc, g| &acc * g);
        prop_assume!(h.deg().unwrap() >= 2);
        for p in primes_from(start).take(5) {
            let Some(ct) = factor_cycle_type(&h, p).unwrap() else { continue };
            let mut union = Vec::new();
            for g in &factors {
                let part = factor_cycle_type(g, p).unwrap().expect("good for the product, good for a factor");
                prop_assert_eq!(part.degree(), g.deg().unwrap());
                union.extend(part.parts);
            }
            union.sort_unstable();
            prop_assert_eq!(&ct.parts, &union);
        }
    }

    #[test]
    fn power_extract_yields_single_cycles(parts in prop::collection::vec(1usize..12, 1..6)) {
        for d in power_extract(&parts) {
            prop_assert!(parts.contains(&d.length));
            prop_assert!(d.length > 1);
            // sigma^power kills every other cycle and keeps this one whole
            let power = d.power as usize;
            let alive: Vec<usize> = parts.iter().copied().filter(|&c| power % c != 0).collect();
            prop_assert_eq!(alive, vec![d.length]);
            prop_assert_eq!(num_integer::gcd(d.length, power), 1);
        }
    }
}

#[test]
fn budget_monotonicity() {
    for s in ["x^6 - x - 1", "x^7 - 3*x + 1", "x^8 + x^3 + 2", "x^5 - 5*x + 12", "x^6 + 24*x - 20"] {
        let h = parse_poly(s).unwrap();
        let mut seen: Option<GroupConclusion> = None;
        for budget in [2, 5, 20, 100, 400] {
            let out = certify_sym_or_alt(&h, budget, 7).unwrap();
            match (seen, out.certificate()) {
                (Some(c), Some(cert)) => assert_eq!(c, cert.conclusion, "{s} flipped at budget {budget}"),
                (Some(_), None) => panic!("{s}: certificate lost at budget {budget}"),
                (None, Some(cert)) => seen = Some(cert.conclusion),
                (None, None) => {}
            }
        }
    }
}

#[test]
fn trinomials_are_symmetric() {
    for m in [8, 10, 12] {
        let h = parse_poly(&format!("x^{m} - x - 1")).unwrap();
        let out = certify_sym_or_alt(&h, 200, 0).unwrap();
        assert_eq!(out.certificate().unwrap().conclusion, GroupConclusion::Symmetric);
    }
    assert!(is_prime(1_000_003));
}

#[test]
fn square_discriminant_gives_alternating() {
    // disc(x^5 + 20x + 16) = 2^16 5^6, Galois group A_5
    let h = parse_poly("x^5 + 20*x + 16").unwrap();
    let cert = certify_sym_or_alt(&h, 200, 0).unwrap();
    assert_eq!(cert.certificate().unwrap().conclusion, GroupConclusion::Alternating);
}
