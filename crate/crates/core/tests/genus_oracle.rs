mod common;

use common::{catalan, double_factorial, oracle_surface};
use qo_core::enumerate::{enumerate_matchings, genus_distribution, genus_distribution_with};
use qo_core::Execution;
use std::collections::BTreeMap;

fn oracle_table(n: usize) -> BTreeMap<u32, u64> {
    let mut counts = BTreeMap::new();
    for d in enumerate_matchings(n) {
        *counts.entry(oracle_surface(&d).genus()).or_insert(0) += 1;
    }
    counts
}

#[test]
fn tables_match_boundary_walk() {
    for n in 1..=5 {
        let table = genus_distribution(n);
        assert_eq!(table.counts, oracle_table(n), "n = {n}");
        assert_eq!(table.total, double_factorial(n as u64));
        assert_eq!(table.count(0), catalan(n as u64));
    }
}

#[test]
fn known_rows() {
    // ε_g(n) for n = 4: 14, 70, 21
    let t = genus_distribution(4);
    assert_eq!((t.count(0), t.count(1), t.count(2)), (14, 70, 21));
    let t = genus_distribution(5);
    assert_eq!((t.count(0), t.count(1), t.count(2)), (42, 420, 483));
}

#[test]
fn strategies_agree() {
    assert_eq!(
        genus_distribution_with(5, Execution::Sequential),
        genus_distribution_with(5, Execution::Parallel)
    );
}

#[test]
fn oracle_helpers() {
    assert_eq!(
        (1..=5).map(double_factorial).collect::<Vec<_>>(),
        [1, 3, 15, 105, 945]
    );
    assert_eq!((1..=5).map(catalan).collect::<Vec<_>>(), [1, 2, 5, 14, 42]);
}
