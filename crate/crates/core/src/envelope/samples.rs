//! Sample elements for the checkers.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::ass::AssElement;
use crate::enumerate::{enumerate_surfaces_bounded, permutations};
use crate::envelope::Point;
use crate::surface::Surface;
use crate::words::{CyclicWord, Label, Renaming};

/// Produces elements with a prescribed label set.
pub trait SampleSource<E>: Sync {
    /// Every sample element whose label set is exactly `labels`.
    fn exhaustive(&self, labels: &[Label]) -> Vec<E>;
    /// One random element whose label set is exactly `labels`.
    fn random(&self, labels: &[Label], rng: &mut ChaCha8Rng) -> E;
}

/// Surfaces up to a genus and boundary bound; random draws may be larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceSamples {
    pub max_genus: u32,
    /// Empty cycles are added while the cycle count stays at most this.
    pub max_boundaries: usize,
    pub random_max_genus: u32,
    pub random_max_empty: usize,
}

impl SurfaceSamples {
    pub fn new(max_genus: u32) -> Self {
        SurfaceSamples {
            max_genus,
            max_boundaries: 0,
            random_max_genus: max_genus.max(3),
            random_max_empty: 2,
        }
    }

    pub fn with_boundaries(mut self, max_boundaries: usize) -> Self {
        self.max_boundaries = max_boundaries;
        self
    }
}

impl SampleSource<Surface> for SurfaceSamples {
    fn exhaustive(&self, labels: &[Label]) -> Vec<Surface> {
        enumerate_surfaces_bounded(labels, self.max_genus, self.max_boundaries)
    }

    fn random(&self, labels: &[Label], rng: &mut ChaCha8Rng) -> Surface {
        random_surface(labels, self.random_max_genus, self.random_max_empty, rng)
    }
}

/// Points of the terminal operad up to a grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointSamples {
    pub max_grade: u32,
}

impl SampleSource<Point> for PointSamples {
    fn exhaustive(&self, labels: &[Label]) -> Vec<Point> {
        (0..=self.max_grade)
            .map(|grade| Point {
                labels: labels.iter().cloned().collect(),
                grade,
            })
            .collect()
    }

    fn random(&self, labels: &[Label], rng: &mut ChaCha8Rng) -> Point {
        Point {
            labels: labels.iter().cloned().collect(),
            grade: rng.gen_range(0..=self.max_grade + 3),
        }
    }
}

/// Cyclic orders on a label set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WordSamples;

impl SampleSource<AssElement> for WordSamples {
    fn exhaustive(&self, labels: &[Label]) -> Vec<AssElement> {
        let Some((first, rest)) = labels.split_first() else {
            return vec![AssElement::default()];
        };
        permutations(rest.len())
            .into_iter()
            .map(|p| {
                let mut items = vec![first.clone()];
                items.extend(p.iter().map(|&i| rest[i].clone()));
                AssElement::new(CyclicWord::from_distinct(items))
            })
            .collect()
    }

    fn random(&self, labels: &[Label], rng: &mut ChaCha8Rng) -> AssElement {
        let mut items = labels.to_vec();
        items.shuffle(rng);
        AssElement::new(CyclicWord::from_distinct(items))
    }
}

/// A random surface on exactly `labels`: the cycles of a uniform random
/// permutation, up to `max_empty` extra empty cycles, genus up to `max_genus`.
pub fn random_surface(
    labels: &[Label],
    max_genus: u32,
    max_empty: usize,
    rng: &mut ChaCha8Rng,
) -> Surface {
    let n = labels.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
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
    let mut extra = rng.gen_range(0..=max_empty);
    if cycles.is_empty() {
        extra = extra.max(1);
    }
    cycles.extend(std::iter::repeat_with(CyclicWord::empty).take(extra));
    Surface::new(cycles, rng.gen_range(0..=max_genus)).expect("distinct labels")
}

/// `l` with a prime appended.
pub fn primed(l: &Label) -> Label {
    Label::new(format!("{l}'")).expect("priming a user label keeps it valid")
}

/// `labels[i] ↦ primed(labels[perm[i]])`.
pub fn primed_permutation(labels: &[Label], perm: &[usize]) -> Renaming {
    Renaming::new(
        labels
            .iter()
            .zip(perm)
            .map(|(l, &j)| (l.clone(), primed(&labels[j]))),
    )
    .expect("a permutation followed by priming is injective")
}

/// `labels[i] ↦ labels[perm[i]]`.
pub fn permutation_renaming(labels: &[Label], perm: &[usize]) -> Renaming {
    Renaming::new(
        labels
            .iter()
            .zip(perm)
            .map(|(l, &j)| (l.clone(), labels[j].clone())),
    )
    .expect("a permutation is injective")
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// `fixed` followed by `filler1, filler2, ...` up to `total` labels.
pub fn label_set(fixed: &[&str], filler: &str, total: usize) -> Vec<Label> {
    let mut out: Vec<Label> = fixed
        .iter()
        .map(|n| Label::new(*n).expect("valid fixed label"))
        .collect();
    for k in 1..=total.saturating_sub(fixed.len()) {
        out.push(Label::new(format!("{filler}{k}")).expect("valid filler label"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn word_samples_count() {
        let ls = label_set(&["a"], "x", 4);
        assert_eq!(WordSamples.exhaustive(&ls).len(), 6);
        assert_eq!(WordSamples.exhaustive(&[]).len(), 1);
    }

    #[test]
    fn random_surface_has_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ls = label_set(&["a", "b"], "x", 6);
        for _ in 0..50 {
            let q = random_surface(&ls, 3, 2, &mut rng);
            assert_eq!(q.labels(), ls.iter().cloned().collect());
        }
        let q = random_surface(&[], 0, 0, &mut rng);
        assert_eq!(q.boundary_count(), 1);
    }

    #[test]
    fn renamings() {
        let ls = label_set(&["a"], "x", 3);
        let r = primed_permutation(&ls, &[2, 0, 1]);
        assert_eq!(r.apply(&ls[0]).unwrap().as_str(), "x2'");
        assert!(permutation_renaming(&ls, &[0, 1, 2]).is_identity());
    }
}
