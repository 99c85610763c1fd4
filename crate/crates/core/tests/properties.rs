mod common;

use std::sync::Arc;

use common::*;
use dold_thom::dold_thom::dold_thom_space;
use dold_thom::homology::{homology, normalized_chains, simplicial_homology, IntMatrix};
use dold_thom::monoid::{filtered_composable, Coefficients, Element, FilteredPartialMonoid};
use dold_thom::nerve::{classifying_space, nerve_face};
use dold_thom::simplicial::{sphere, wedge};
use dold_thom::suites::fixture_monoids;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix_strategy() -> impl Strategy<Value = IntMatrix> {
    (1usize..=12, 1usize..=12)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
        .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_postconditions(a in matrix_strategy()) {
        prop_assert_eq!(smith_postconditions(&a), Ok(()));
    }

    #[test]
    fn composable_multisets_are_downward_closed(seed in any::<u64>(), picks in proptest::collection::vec(0usize..6, 0..=5)) {
        let m = random_monoid(&mut ChaCha8Rng::seed_from_u64(seed));
        let items: Vec<Element> = picks.iter().map(|&i| Element::from_index(i % m.len())).collect();
        if m.composable(&items).unwrap() {
            for mask in 0u32..(1 << items.len()) {
                let sub: Vec<Element> = items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect();
                prop_assert!(m.composable(&sub).unwrap());
            }
        }
    }

    #[test]
    fn merging_a_sub_multiset_keeps_the_total(seed in any::<u64>(), picks in proptest::collection::vec(0usize..6, 0..=5), mask in any::<u32>()) {
        let m = random_monoid(&mut ChaCha8Rng::seed_from_u64(seed));
        let items: Vec<Element> = picks.iter().map(|&i| Element::from_index(i % m.len())).collect();
        if let Some(total) = m.try_sum(&items).unwrap() {
            let (inside, outside): (Vec<_>, Vec<_>) = items.iter().enumerate().partition(|(i, _)| mask & (1 << i) != 0);
            let inside: Vec<Element> = inside.into_iter().map(|(_, &e)| e).collect();
            let mut merged: Vec<Element> = outside.into_iter().map(|(_, &e)| e).collect();
            merged.push(m.sum_multiset(&inside).unwrap());
            prop_assert_eq!(m.try_sum(&merged).unwrap(), Some(total));
        }
    }

    #[test]
    fn constant_filtration_matches_the_monoid(seed in any::<u64>(), picks in proptest::collection::vec(0usize..6, 0..=5), levels in 1usize..4) {
        let m = random_monoid(&mut ChaCha8Rng::seed_from_u64(seed));
        let f = FilteredPartialMonoid::constant(m.clone(), levels).unwrap();
        let items: Vec<Element> = picks.iter().map(|&i| Element::from_index(i % m.len())).collect();
        let (ok, level) = filtered_composable(&f, &items).unwrap();
        prop_assert_eq!(ok, m.composable(&items).unwrap());
        prop_assert_eq!(level, ok.then_some(0));
    }

    #[test]
    fn nerve_faces_stay_composable(seed in any::<u64>(), k in 1usize..=4) {
        let m = random_monoid(&mut ChaCha8Rng::seed_from_u64(seed));
        for t in m.composable_tuples(k) {
            for i in 0..=k {
                let face = nerve_face(&m, t.entries(), i);
                prop_assert!(face.is_some());
                prop_assert!(m.composable(&face.unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn homology_ignores_basis_order(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_monoid(&mut rng);
        let b = classifying_space(&m, 4).unwrap();
        let c = normalized_chains(b.space(), 3).unwrap();
        let orders: Vec<Vec<usize>> = c.ranks().iter().map(|&n| {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(&mut rng);
            o
        }).collect();
        prop_assert_eq!(homology(&c, false).unwrap(), homology(&c.permuted(&orders), false).unwrap());
    }

    #[test]
    fn random_monoids_pass_coherence(seed in any::<u64>()) {
        let m = random_monoid(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(coherence_failures(&m, 4), Vec::<String>::new());
    }
}

/// Faces of a configuration drop labels sent to the basepoint and sum
/// those that collide; the surviving total is unchanged.
#[test]
fn faces_conserve_labels() {
    let s2 = Arc::new(sphere(2, 3).unwrap());
    let w = Arc::new(wedge(&sphere(1, 3).unwrap(), 2).unwrap());
    for (_, m) in fixture_monoids() {
        let coeffs = Coefficients::Plain(m.clone());
        for x in [&s2, &w] {
            let dt = dold_thom_space(&coeffs, x, None, 3).unwrap();
            for k in 1..=3 {
                for (ci, c) in dt.configurations(k).iter().enumerate() {
                    for i in 0..=k {
                        let face = &dt.configurations(k - 1)[dt.space().face(k, i, ci as u32) as usize];
                        let surviving: Vec<Element> =
                            c.points().iter().filter(|(s, _)| x.face(k, i, *s) != x.basepoint(k - 1)).map(|(_, l)| *l).collect();
                        assert_eq!(m.try_sum(&surviving).unwrap(), m.try_sum(&face.labels()).unwrap());
                        for (y, label) in face.points() {
                            let preimage: Vec<Element> = c.points().iter().filter(|(s, _)| x.face(k, i, *s) == *y).map(|(_, l)| *l).collect();
                            assert_eq!(m.try_sum(&preimage).unwrap(), Some(*label));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn reduced_degree_zero_vanishes_on_connected_fixtures() {
    let s1 = Arc::new(sphere(1, 2).unwrap());
    for (tag, m) in fixture_monoids() {
        let b = classifying_space(&m, 2).unwrap();
        assert!(simplicial_homology(b.space(), 1, true).unwrap().groups[0].is_zero(), "{tag}");
        let dt = dold_thom_space(&Coefficients::Plain(m), &s1, None, 2).unwrap();
        assert!(simplicial_homology(dt.space(), 1, true).unwrap().groups[0].is_zero(), "{tag}");
    }
}

#[test]
fn group_nerves_have_power_level_sizes() {
    for (tag, m) in fixture_monoids() {
        if m.is_total() {
            let b = classifying_space(&m, 4).unwrap();
            let n = m.len();
            assert_eq!(b.space().level_sizes(), (0..=4).map(|k| n.pow(k as u32)).collect::<Vec<_>>(), "{tag}");
        }
    }
}

#[test]
fn every_complex_squares_to_zero() {
    let s2 = Arc::new(sphere(2, 4).unwrap());
    for (_, m) in fixture_monoids() {
        let b = classifying_space(&m, 4).unwrap();
        assert_eq!(normalized_chains(b.space(), 3).unwrap().boundary_defect(), None);
        let dt = dold_thom_space(&Coefficients::Plain(m), &s2, None, 4).unwrap();
        assert_eq!(normalized_chains(dt.space(), 3).unwrap().boundary_defect(), None);
    }
}
