mod common;

use proptest::prelude::*;
use qo_core::enumerate::random_diagram;
use qo_core::envelope::samples::{permutation_renaming, random_surface};
use qo_core::rewrite::{applicable_moves, main_lemma_move};
use qo_core::{Chord, ChordDiagram, CyclicWord, GlueToken, Label, Renaming, Surface};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn names(k: usize, prefix: &str) -> Vec<Label> {
    (1..=k)
        .map(|i| Label::new(format!("{prefix}{i}")).unwrap())
        .collect()
}

fn surface(seed: u64, k: usize) -> Surface {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_surface(&names(k, "p"), 3, 2, &mut rng)
}

fn diagram(seed: u64, labels: usize, arcs: usize) -> ChordDiagram {
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), labels, arcs)
}

proptest! {
    #[test]
    fn rotation_invariance(k in 0usize..8, r in 0usize..8) {
        let mut items = names(k, "w");
        let w = CyclicWord::new(items.clone()).unwrap();
        if k > 0 {
            items.rotate_left(r % k);
        }
        prop_assert_eq!(CyclicWord::new(items).unwrap(), w);
    }

    #[test]
    fn renaming_functorial(seed in any::<u64>(), k in 0usize..7) {
        let q = surface(seed, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let labels: Vec<Label> = q.labels().into_iter().collect();
        let mut p1: Vec<usize> = (0..k).collect();
        p1.shuffle(&mut rng);
        let mut p2 = p1.clone();
        p2.shuffle(&mut rng);
        let sigma = permutation_renaming(&labels, &p1);
        let rho = permutation_renaming(&labels, &p2);
        let both = rho.after(&sigma).unwrap();
        prop_assert_eq!(q.rename(&sigma).unwrap().rename(&rho).unwrap(), q.rename(&both).unwrap());
        prop_assert_eq!(q.rename(&Renaming::identity(&labels)).unwrap(), q.clone());
        prop_assert_eq!(q.rename(&sigma).unwrap().grade(), q.grade());
    }

    #[test]
    fn evaluation_order_independent(seed in any::<u64>()) {
        let d = diagram(seed, 5, 5);
        let mut order: Vec<Chord> = d.arcs().collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(1)));
        prop_assert_eq!(d.evaluate_in_order(&order).unwrap(), d.evaluate());
    }

    #[test]
    fn evaluation_matches_boundary_walk(seed in any::<u64>()) {
        let d = diagram(seed, 6, 6);
        let q = d.evaluate();
        prop_assert_eq!(q.grade() as usize, d.arc_count());
        prop_assert_eq!(q, common::oracle_surface(&d));
    }

    #[test]
    fn token_names_irrelevant(seed in any::<u64>()) {
        let d = diagram(seed, 4, 5);
        let mut fresh: Vec<u32> = (1..=40).collect();
        fresh.shuffle(&mut ChaCha8Rng::seed_from_u64(!seed));
        let map = d
            .tokens()
            .into_iter()
            .zip(fresh)
            .map(|(t, k)| (t, GlueToken::new(k).unwrap()))
            .collect();
        prop_assert_eq!(d.rename_tokens(&map).unwrap().evaluate(), d.evaluate());
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), k in 0usize..7) {
        let q = surface(seed, k);
        prop_assert_eq!(q.to_string().parse::<Surface>().unwrap(), q);
        let d = diagram(seed, 5, 4);
        prop_assert_eq!(d.to_string().parse::<ChordDiagram>().unwrap(), d);
    }

    #[test]
    fn moves_sound(seed in any::<u64>()) {
        let d = diagram(seed, 4, 4);
        let q = d.evaluate();
        for m in applicable_moves(&d) {
            let next = m.apply(&d).unwrap();
            prop_assert_eq!(next.arc_set(), d.arc_set());
            prop_assert_eq!(next.evaluate(), q.clone(), "{}", m);
        }
    }

    #[test]
    fn main_move_rotations_add(seed in any::<u64>(), k1 in -6i64..6, k2 in -6i64..6) {
        let d = diagram(seed, 4, 3);
        let first = d.arcs().next();
        if let Some(arc) = first {
            let (x, y) = arc.ends();
            let once = main_lemma_move(&d, x, y, k1 + k2, 0).unwrap();
            let twice = main_lemma_move(&main_lemma_move(&d, x, y, k1, 0).unwrap(), x, y, k2, 0).unwrap();
            prop_assert_eq!(once, twice);
        }
    }
}
