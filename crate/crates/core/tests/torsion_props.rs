use proptest::prelude::*;
use rigidity_core::torsionmod::{dot, index_bound_holds, zero_sum_hyperplane, F2PermModule, Perm, Subspace2};

fn perm(m: usize) -> impl Strategy<Value = Perm> {
    Just((0..m).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn spin_is_the_smallest_invariant_subspace(
        (m, gens, v) in (3usize..12).prop_flat_map(|m| (Just(m), prop::collection::vec(perm(m), 1..3), 0u64..(1 << m)))
    ) {
        let module = F2PermModule::new(m, gens.clone()).unwrap();
        let w = module.spin(v).unwrap();
        prop_assert!(w.contains(v));
        prop_assert!(module.is_invariant(&w));
        // it is spanned by images of v under words in the generators
        let mut orbit = vec![v];
        let mut span = Subspace2::span(m, [v]);
        while let Some(u) = orbit.pop() {
            for g in &gens {
                let gu = g.act(u);
                if span.insert(gu) {
                    orbit.push(gu);
                }
            }
        }
        prop_assert_eq!(span, w);
    }

    #[test]
    fn perp_is_an_involution(m in 2usize..16, vs in prop::collection::vec(any::<u64>(), 0..6)) {
        let mask = (1u64 << m) - 1;
        let w = Subspace2::span(m, vs.iter().map(|v| v & mask));
        let p = w.perp();
        prop_assert_eq!(w.dim() + p.dim(), m);
        prop_assert_eq!(p.perp(), w.clone());
        for &a in w.basis() {
            for &b in p.basis() {
                prop_assert!(!dot(a, b));
            }
        }
    }

    #[test]
    fn intersection_and_sum(m in 2usize..14, a in prop::collection::vec(any::<u64>(), 0..5), b in prop::collection::vec(any::<u64>(), 0..5)) {
        let mask = (1u64 << m) - 1;
        let u = Subspace2::span(m, a.iter().map(|v| v & mask));
        let w = Subspace2::span(m, b.iter().map(|v| v & mask));
        let i = u.intersection(&w);
        prop_assert_eq!(u.sum(&w).dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        for x in 0u64..(1 << m.min(10)) {
            prop_assert_eq!(i.contains(x), u.contains(x) && w.contains(x));
        }
    }

    #[test]
    fn perm_cycle_notation_round_trip(p in (1usize..20).prop_flat_map(perm)) {
        let s = p.to_string();
        prop_assert_eq!(Perm::parse(p.degree(), &s).unwrap(), p.clone());
        prop_assert!(p.compose(&p.inverse()).is_identity());
    }
}

#[test]
fn orthogonal_complements_of_submodules() {
    for letters in [6, 8, 10] {
        let module = F2PermModule::alternating(letters).unwrap();
        assert!(module.form_is_invariant());
        for w in module.submodule_lattice().unwrap() {
            let p = w.perp();
            assert!(module.is_invariant(&p));
            assert_eq!(w.dim() + p.dim(), letters);
        }
    }
}

#[test]
fn heart_is_simple() {
    for letters in [6, 8, 10] {
        let module = F2PermModule::alternating(letters).unwrap();
        let m0 = Subspace2::span(letters, [(1u64 << letters) - 1]);
        let m1 = zero_sum_hyperplane(letters);
        assert!(m0.is_subspace_of(&m1));
        assert_eq!(m1.dim() - m0.dim(), letters - 2);
        let between: Vec<_> = module
            .submodule_lattice()
            .unwrap()
            .into_iter()
            .filter(|w| m0.is_subspace_of(w) && w.is_subspace_of(&m1))
            .collect();
        assert_eq!(between.len(), 2);
        assert!(between.contains(&m0) && between.contains(&m1));
    }
}

#[test]
fn centralizers_of_big_groups() {
    for m in 5..=12 {
        assert_eq!(F2PermModule::alternating(m).unwrap().centralizer_dim(), 2, "Alt({m})");
        assert_eq!(F2PermModule::symmetric(m).unwrap().centralizer_dim(), 2, "Sym({m})");
    }
}

#[test]
fn index_bound() {
    assert!((5..=16).all(index_bound_holds));
}
