use std::sync::Arc;

use doublet_core::algebras::classify_algebras;
use doublet_core::cyclotomic::{Cyclotomic, Rational};
use doublet_core::dw::{count_homomorphisms, dw_invariant, GroupPresentation, Letter, Word};
use doublet_core::exec::{self, ExecMode};
use doublet_core::group::build_group;
use doublet_core::modular::{sl2_act, verify_modularity, Double, PairFunction, Sl2Generator};
use doublet_core::FiniteGroup;
use proptest::prelude::*;

const SMALL: [&str; 7] = ["1", "C2", "C3", "C4", "C2xC2", "S3", "D4"];

fn grp(name: &str) -> Arc<FiniteGroup> {
    Arc::new(build_group(name).unwrap())
}

fn word(generators: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..generators, any::<bool>()), 0..6)
        .prop_map(|w| w.into_iter().map(|(generator, inverse)| Letter { generator, inverse }).collect())
}

fn presentation() -> impl Strategy<Value = GroupPresentation> {
    (1usize..=2)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(word(n), 0..3)))
        .prop_map(|(n, rels)| GroupPresentation::new("random", n, rels).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_counts_multiply_over_free_products(a in presentation(), b in presentation(), gi in 0..SMALL.len()) {
        let g = grp(SMALL[gi]);
        let ab = a.free_product(&b).unwrap();
        let lhs = count_homomorphisms(&ab, &g).unwrap();
        prop_assert_eq!(lhs, count_homomorphisms(&a, &g).unwrap() * count_homomorphisms(&b, &g).unwrap());
        let order = Rational::from_integer(g.order() as i128);
        prop_assert_eq!(dw_invariant(&ab, &g).unwrap(), dw_invariant(&a, &g).unwrap() * dw_invariant(&b, &g).unwrap() * order);
    }

    #[test]
    fn decompose_rebuilds_random_sums(gi in 0..SMALL.len(), weights in prop::collection::vec(0u64..4, 22)) {
        let g = grp(SMALL[gi]);
        let d = Double::new(&g).unwrap();
        let want: Vec<u64> = weights[..d.rank()].to_vec();
        let mut chi = PairFunction::zero(&g);
        for (b, &w) in d.simple_characters().iter().zip(&want) {
            chi = chi.add(&b.scale(&Cyclotomic::from_int(w as i64)));
        }
        prop_assert_eq!(d.decompose(&chi).unwrap(), want);
    }
}

#[test]
fn free_group_on_one_generator_is_trivial_invariant() {
    let p = GroupPresentation::parse("<1>").unwrap();
    for name in SMALL {
        assert_eq!(dw_invariant(&p, &grp(name)).unwrap(), Rational::from_integer(1));
    }
}

#[test]
fn algebra_characters_are_t_invariant_and_lagrangian_ones_s_invariant() {
    for name in ["C2", "C3", "S3", "D4", "Q8"] {
        for a in classify_algebras(&grp(name)).unwrap() {
            let chi = a.character();
            assert_eq!(sl2_act(Sl2Generator::T, &chi).values(), chi.values(), "{name}");
            let s_fixed = sl2_act(Sl2Generator::S, &chi).values() == chi.values();
            assert_eq!(s_fixed, a.is_trivialising(), "{name}: |H| = {}, |F| = {}", a.h().order(), a.f().order());
        }
    }
}

#[test]
fn parallel_matches_sequential() {
    for name in ["S3", "Q8", "A4"] {
        let g = grp(name);
        let d = Double::new(&g).unwrap();
        exec::set_mode(ExecMode::Sequential);
        let (s_seq, n_seq) = (d.s_matrix(), classify_algebras(&g).unwrap().len());
        exec::set_mode(ExecMode::Parallel);
        let (s_par, n_par) = (d.s_matrix(), classify_algebras(&g).unwrap().len());
        assert_eq!(s_seq, s_par);
        assert_eq!(n_seq, n_par);
        assert!(verify_modularity(&s_par, &d.t_matrix(), g.order()).passed());
    }
}
