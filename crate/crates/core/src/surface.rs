//! Surfaces with marked boundary points and their operad structure.
//!
//! A surface is a multiset of boundary cycles together with its geometric
//! genus `g`. With `b` boundary cycles its grade is `G = 2g + b - 1`.
//!
//! Gluing two surfaces along `a` and `b` splices the two boundary cycles
//! carrying them and adds the genera. Self-gluing along `a`, `b` either cuts
//! the cycle `(a A b B)` into `(A)` and `(B)`, or, when `a` and `b` sit on
//! different cycles `(a A)` and `(b B)`, merges them into `(B A)` and raises
//! the genus by one.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ass::splice;
use crate::error::{Error, Result};
use crate::words::{first_duplicate, CyclicWord, Label, Renaming};

/// A homeomorphism class of a compact surface with marked boundary points.
///
/// Cycles are kept sorted by `(length, content)` so that structural equality
/// is equality of classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surface {
    cycles: Vec<CyclicWord>,
    genus: u32,
}

impl Surface {
    pub fn new(cycles: Vec<CyclicWord>, genus: u32) -> Result<Self> {
        if cycles.is_empty() {
            return Err(Error::NoCycles);
        }
        if let Some(l) = first_duplicate(cycles.iter().flat_map(|c| c.items())) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
        Ok(Self::assemble(cycles, genus))
    }

    /// Builds from raw sequences; each sequence is one boundary cycle.
    pub fn from_sequences(cycles: Vec<Vec<Label>>, genus: u32) -> Result<Self> {
        let words = cycles
            .into_iter()
            .map(CyclicWord::new)
            .collect::<Result<Vec<_>>>()?;
        Surface::new(words, genus)
    }

    /// `{word}^0`.
    pub fn from_word(word: CyclicWord) -> Self {
        Self::assemble(vec![word], 0)
    }

    fn assemble(mut cycles: Vec<CyclicWord>, genus: u32) -> Self {
        cycles.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        Surface { cycles, genus }
    }

    pub fn cycles(&self) -> &[CyclicWord] {
        &self.cycles
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary_count(&self) -> usize {
        self.cycles.len()
    }

    /// `G = 2g + b - 1`.
    pub fn grade(&self) -> u32 {
        2 * self.genus + self.cycles.len() as u32 - 1
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.cycles
            .iter()
            .flat_map(|c| c.items())
            .cloned()
            .collect()
    }

    pub fn label_count(&self) -> usize {
        self.cycles.iter().map(CyclicWord::len).sum()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.cycle_of(label).is_some()
    }

    fn cycle_of(&self, label: &Label) -> Option<usize> {
        self.cycles.iter().position(|c| c.contains(label))
    }

    pub fn rename(&self, rho: &Renaming) -> Result<Surface> {
        let cycles = self
            .cycles
            .iter()
            .map(|c| c.rename(rho))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(cycles, self.genus))
    }

    /// `self ∘_{a,b} other`.
    pub fn compose(&self, a: &Label, other: &Surface, b: &Label) -> Result<Surface> {
        QoRules::STANDARD.compose(self, a, other, b)
    }

    /// `ξ_{ab} self`.
    pub fn self_glue(&self, a: &Label, b: &Label) -> Result<Surface> {
        QoRules::STANDARD.self_glue(self, a, b)
    }

    /// Every boundary cycle read backwards (orientation reversal).
    pub fn reversed(&self) -> Surface {
        Self::assemble(
            self.cycles.iter().map(CyclicWord::reversed).collect(),
            self.genus,
        )
    }
}

/// A deliberately wrong variant of one gluing rule, used to show that the
/// checks in this crate are not vacuous.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// Merging self-gluing leaves the genus unchanged.
    MergeGenusDropped,
    /// Splitting self-gluing returns `{(A), (B)}` instead of `{(B), (A)}`.
    SplitBlocksSwapped,
    /// Gluing keeps only the left genus.
    ComposeGenusDropped,
    /// Splitting self-gluing reverses the block between `a` and `b`.
    SplitBlockReversed,
}

impl Mutation {
    pub const ALL: [Mutation; 4] = [
        Mutation::MergeGenusDropped,
        Mutation::SplitBlocksSwapped,
        Mutation::ComposeGenusDropped,
        Mutation::SplitBlockReversed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::MergeGenusDropped => "merge-genus-dropped",
            Mutation::SplitBlocksSwapped => "split-blocks-swapped",
            Mutation::ComposeGenusDropped => "compose-genus-dropped",
            Mutation::SplitBlockReversed => "split-block-reversed",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The gluing rules, optionally with one mutation applied.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct QoRules {
    pub mutation: Option<Mutation>,
}

impl QoRules {
    pub const STANDARD: QoRules = QoRules { mutation: None };

    pub fn mutated(mutation: Mutation) -> Self {
        QoRules {
            mutation: Some(mutation),
        }
    }

    fn is(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    pub fn compose(&self, q: &Surface, a: &Label, r: &Surface, b: &Label) -> Result<Surface> {
        let i = q
            .cycle_of(a)
            .ok_or_else(|| Error::MissingLabel(a.clone()))?;
        let j = r
            .cycle_of(b)
            .ok_or_else(|| Error::MissingLabel(b.clone()))?;
        if let Some(shared) = q
            .cycles
            .iter()
            .flat_map(|c| c.items())
            .find(|l| r.contains(l))
        {
            return Err(Error::DuplicateLabel(shared.clone()));
        }
        let joined = splice(&q.cycles[i], a, &r.cycles[j], b)?;
        let mut cycles = Vec::with_capacity(q.cycles.len() + r.cycles.len() - 1);
        cycles.push(joined);
        cycles.extend(
            q.cycles
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, c)| c.clone()),
        );
        cycles.extend(
            r.cycles
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, c)| c.clone()),
        );
        let genus = if self.is(Mutation::ComposeGenusDropped) {
            q.genus
        } else {
            q.genus + r.genus
        };
        Ok(Surface::assemble(cycles, genus))
    }

    pub fn self_glue(&self, q: &Surface, a: &Label, b: &Label) -> Result<Surface> {
        if a == b {
            return Err(Error::SelfPair(a.clone()));
        }
        let i = q
            .cycle_of(a)
            .ok_or_else(|| Error::MissingLabel(a.clone()))?;
        let j = q
            .cycle_of(b)
            .ok_or_else(|| Error::MissingLabel(b.clone()))?;
        let mut cycles: Vec<CyclicWord> = q
            .cycles
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, c)| c.clone())
            .collect();
        let from_a = q.cycles[i].starting_at(a).expect("a located");
        if i == j {
            // (a A b B) -> (B), (A)
            let split = from_a.iter().position(|l| l == b).expect("b located");
            let mut block_a = from_a[1..split].to_vec();
            let block_b = from_a[split + 1..].to_vec();
            if self.is(Mutation::SplitBlockReversed) {
                block_a.reverse();
            }
            let (first, second) = if self.is(Mutation::SplitBlocksSwapped) {
                (block_a, block_b)
            } else {
                (block_b, block_a)
            };
            cycles.push(CyclicWord::from_distinct(first));
            cycles.push(CyclicWord::from_distinct(second));
            Ok(Surface::assemble(cycles, q.genus))
        } else {
            // (a A), (b B) -> (B A), one more handle
            let from_b = q.cycles[j].starting_at(b).expect("b located");
            let mut merged = from_b[1..].to_vec();
            merged.extend_from_slice(&from_a[1..]);
            cycles.push(CyclicWord::from_distinct(merged));
            let genus = if self.is(Mutation::MergeGenusDropped) {
                q.genus
            } else {
                q.genus + 1
            };
            Ok(Surface::assemble(cycles, genus))
        }
    }
}

pub fn make_surface(cycles: Vec<Vec<Label>>, genus: u32) -> Result<Surface> {
    Surface::from_sequences(cycles, genus)
}

pub fn qo_rename(q: &Surface, rho: &Renaming) -> Result<Surface> {
    q.rename(rho)
}

pub fn qo_compose(q: &Surface, a: &Label, r: &Surface, b: &Label) -> Result<Surface> {
    q.compose(a, r, b)
}

pub fn qo_self_glue(q: &Surface, a: &Label, b: &Label) -> Result<Surface> {
    q.self_glue(a, b)
}

pub fn surfaces_equal(q1: &Surface, q2: &Surface) -> bool {
    q1 == q2
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for c in &self.cycles {
            write!(f, " {c}")?;
        }
        write!(f, " }}^{}", self.genus)
    }
}

impl fmt::Debug for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON mirror: `{"cycles": [["a","b"],[],["c"]], "g": 1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SurfaceJson {
    pub cycles: Vec<Vec<String>>,
    pub g: u32,
}

impl From<&Surface> for SurfaceJson {
    fn from(q: &Surface) -> Self {
        SurfaceJson {
            cycles: q
                .cycles
                .iter()
                .map(|c| c.items().iter().map(|l| l.as_str().to_string()).collect())
                .collect(),
            g: q.genus,
        }
    }
}

impl TryFrom<SurfaceJson> for Surface {
    type Error = Error;

    fn try_from(value: SurfaceJson) -> Result<Self> {
        let cycles = value
            .cycles
            .into_iter()
            .map(|c| c.into_iter().map(Label::new).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Surface::from_sequences(cycles, value.g)
    }
}

impl Serialize for Surface {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        SurfaceJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Surface {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = SurfaceJson::deserialize(deserializer)?;
        Surface::try_from(raw).map_err(serde::de::Error::custom)
    }
}
