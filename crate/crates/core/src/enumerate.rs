//! Exhaustive generators for surfaces and matchings, and the genus
//! distribution of chord diagrams on a bare circle.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::chord::{Chord, ChordDiagram, GlueToken};
use crate::exec::Execution;
use crate::surface::{QoRules, Surface};
use crate::words::{CyclicWord, Label};

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("pivot has a successor");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Labels `1, 2, ..., k`.
pub fn numbered_labels(k: usize) -> Vec<Label> {
    (1..=k)
        .map(|i| Label::new(i.to_string()).expect("digits are valid labels"))
        .collect()
}

/// Every way to arrange `labels` into disjoint nonempty cyclic orders.
fn cycle_partitions(labels: &[Label]) -> Vec<Vec<CyclicWord>> {
    let n = labels.len();
    permutations(n)
        .into_iter()
        .map(|perm| {
            let mut seen = vec![false; n];
            let mut cycles = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut items = Vec::new();
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    items.push(labels[i].clone());
                    i = perm[i];
                }
                cycles.push(CyclicWord::from_distinct(items));
            }
            cycles
        })
        .collect()
}

/// All surfaces whose label set is exactly `labels`, with genus at most
/// `max_genus` and no empty boundary cycles (for no labels: the single empty
/// cycle). Sorted by canonical text.
pub fn enumerate_surfaces(labels: &[Label], max_genus: u32) -> Vec<Surface> {
    enumerate_surfaces_bounded(labels, max_genus, 0)
}

/// Like [`enumerate_surfaces`], additionally adding empty boundary cycles as
/// long as the total number of cycles stays at most `max_boundaries`.
pub fn enumerate_surfaces_bounded(
    labels: &[Label],
    max_genus: u32,
    max_boundaries: usize,
) -> Vec<Surface> {
    let mut out = Vec::new();
    for cycles in cycle_partitions(labels) {
        let occupied = cycles.len();
        let min_extra = usize::from(occupied == 0);
        let max_extra = max_boundaries.saturating_sub(occupied).max(min_extra);
        for extra in min_extra..=max_extra {
            let mut all = cycles.clone();
            all.extend(std::iter::repeat_with(CyclicWord::empty).take(extra));
            for g in 0..=max_genus {
                out.push(Surface::new(all.clone(), g).expect("distinct labels, nonempty"));
            }
        }
    }
    sort_by_text(&mut out);
    out
}

/// Surfaces on the labels `1..k` for every `k <= max_labels`, with genus at
/// most `max_genus` and at most `max_boundaries` cycles (at least one).
pub fn surface_family(max_labels: usize, max_genus: u32, max_boundaries: usize) -> Vec<Surface> {
    (0..=max_labels)
        .flat_map(|k| enumerate_surfaces_bounded(&numbered_labels(k), max_genus, max_boundaries))
        .filter(|q| q.boundary_count() <= max_boundaries.max(1))
        .collect()
}

pub(crate) fn sort_by_text<T: fmt::Display>(items: &mut Vec<T>) {
    let mut keyed: Vec<(String, T)> = items.drain(..).map(|x| (x.to_string(), x)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    items.extend(keyed.into_iter().map(|(_, x)| x));
}

/// Every perfect matching of `tokens`, each as a list of chords.
fn matchings_of(tokens: &[GlueToken]) -> Vec<Vec<Chord>> {
    fn rec(free: &[GlueToken], current: &mut Vec<Chord>, out: &mut Vec<Vec<Chord>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(current.clone());
            return;
        };
        for (i, &other) in rest.iter().enumerate() {
            let mut remaining = rest.to_vec();
            remaining.remove(i);
            current.push(Chord::new(first, other).expect("distinct"));
            rec(&remaining, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(tokens, &mut Vec::with_capacity(tokens.len() / 2), &mut out);
    out
}

fn glue_tokens(n: usize) -> Vec<GlueToken> {
    (1..=2 * n as u32)
        .map(|k| GlueToken::new(k).expect("k >= 1"))
        .collect()
}

/// All `(2n-1)!!` perfect matchings on the bare circle `(#1 ... #2n)`.
pub fn enumerate_matchings(n: usize) -> Vec<ChordDiagram> {
    let tokens = glue_tokens(n);
    let base = CyclicWord::from_distinct(tokens.iter().map(|t| t.label()).collect());
    matchings_of(&tokens)
        .into_iter()
        .map(|arcs| ChordDiagram::from_parts(base.clone(), arcs.into_iter().collect()))
        .collect()
}

/// Every diagram with `n_arcs` chords and the user labels `1..n_labels`, up
/// to rotation and renaming of glue tokens: label `1` first, the other labels
/// in every arrangement, tokens `#1..#2n` in reading order, every matching.
pub fn enumerate_diagrams(n_arcs: usize, n_labels: usize) -> Vec<ChordDiagram> {
    if n_labels == 0 {
        return enumerate_matchings(n_arcs);
    }
    let users = numbered_labels(n_labels);
    let tokens = glue_tokens(n_arcs);
    let matchings = matchings_of(&tokens);
    let total = 2 * n_arcs + n_labels;
    let mut out = Vec::new();
    // slots[i] = position of label i + 2
    fn place(k: usize, total: usize, slots: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots.len() == k {
            out.push(slots.clone());
            return;
        }
        for p in 1..total {
            if !slots.contains(&p) {
                slots.push(p);
                place(k, total, slots, out);
                slots.pop();
            }
        }
    }
    let mut placements = Vec::new();
    place(n_labels - 1, total, &mut Vec::new(), &mut placements);
    for slots in placements {
        let mut items: Vec<Option<Label>> = vec![None; total];
        items[0] = Some(users[0].clone());
        for (i, &p) in slots.iter().enumerate() {
            items[p] = Some(users[i + 1].clone());
        }
        let mut next = tokens.iter();
        let items: Vec<Label> = items
            .into_iter()
            .map(|x| x.unwrap_or_else(|| next.next().expect("enough tokens").label()))
            .collect();
        let base = CyclicWord::from_distinct(items);
        for arcs in &matchings {
            out.push(ChordDiagram::from_parts(
                base.clone(),
                arcs.iter().copied().collect(),
            ));
        }
    }
    out
}

/// Counts of geometric genus over all matchings of `n` chords.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GenusTable {
    pub chords: usize,
    pub counts: BTreeMap<u32, u64>,
    pub total: u64,
}

impl GenusTable {
    pub fn count(&self, genus: u32) -> u64 {
        self.counts.get(&genus).copied().unwrap_or(0)
    }
}

impl fmt::Display for GenusTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.total.to_string().len();
        for (g, c) in &self.counts {
            writeln!(f, "g={g}: {c:>width$}")?;
        }
        write!(f, "total: {:>width$}", self.total)
    }
}

pub fn genus_distribution(n: usize) -> GenusTable {
    genus_distribution_with(n, Execution::default())
}

pub fn genus_distribution_with(n: usize, exec: Execution) -> GenusTable {
    genus_distribution_under(n, &QoRules::STANDARD, exec)
}

/// Genus table with evaluation carried out under `rules`.
pub fn genus_distribution_under(n: usize, rules: &QoRules, exec: Execution) -> GenusTable {
    let genera = exec.map(&enumerate_matchings(n), |d| d.evaluate_with(rules).genus());
    let mut counts = BTreeMap::new();
    for g in genera {
        *counts.entry(g).or_insert(0u64) += 1;
    }
    let total = counts.values().sum();
    GenusTable {
        chords: n,
        counts,
        total,
    }
}

/// A random diagram with up to `max_labels` user labels `1, 2, ...` and up
/// to `max_arcs` chords, items in random order.
pub fn random_diagram<R: Rng + ?Sized>(
    rng: &mut R,
    max_labels: usize,
    max_arcs: usize,
) -> ChordDiagram {
    let n_labels = rng.gen_range(0..=max_labels);
    let n_arcs = rng.gen_range(0..=max_arcs);
    let mut tokens: Vec<GlueToken> = (1..=2 * n_arcs as u32)
        .map(|k| GlueToken::new(k).expect("k >= 1"))
        .collect();
    let mut items: Vec<Label> = numbered_labels(n_labels);
    items.extend(tokens.iter().map(|t| t.label()));
    items.shuffle(rng);
    tokens.shuffle(rng);
    let arcs: Vec<Chord> = tokens
        .chunks(2)
        .map(|p| Chord::new(p[0], p[1]).expect("distinct"))
        .collect();
    ChordDiagram::new(items, arcs).expect("a perfect matching on distinct tokens")
}
