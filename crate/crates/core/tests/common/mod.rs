#![allow(dead_code)]

use qo_core::{ChordDiagram, Label, Surface};

/// The surface of a diagram read off its boundary walk, with no gluing at
/// all: position `p` steps to `σ(p) + 1`, where `σ` swaps arc partners and
/// fixes user labels. Each orbit is one boundary cycle; its user labels in
/// visiting order form the cycle. Genus from `G = 2g + b - 1`, `G = #arcs`.
pub fn oracle_surface(d: &ChordDiagram) -> Surface {
    let items = d.base().items();
    let n = items.len();
    let sigma: Vec<usize> = (0..n)
        .map(
            |p| match qo_core::GlueToken::of(&items[p]).and_then(|t| d.partner(t)) {
                Some(other) => items.iter().position(|l| *l == other.label()).unwrap(),
                None => p,
            },
        )
        .collect();
    let mut seen = vec![false; n];
    let mut cycles: Vec<Vec<Label>> = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            if !items[p].is_glue() {
                cycle.push(items[p].clone());
            }
            p = (sigma[p] + 1) % n;
        }
        cycles.push(cycle);
    }
    if cycles.is_empty() {
        cycles.push(Vec::new());
    }
    let grade = d.arc_count() as i64;
    let b = cycles.len() as i64;
    let twice_g = grade - b + 1;
    assert!(
        twice_g >= 0 && twice_g % 2 == 0,
        "grade {grade}, {b} boundaries"
    );
    Surface::from_sequences(cycles, (twice_g / 2) as u32).unwrap()
}

/// `(2n - 1)!!`
pub fn double_factorial(n: u64) -> u64 {
    (1..=n).map(|k| 2 * k - 1).product()
}

pub fn catalan(n: u64) -> u64 {
    let mut c = 1u64;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}
