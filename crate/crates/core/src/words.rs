//! Labels, renamings and cyclic words.
//!
//! A [`CyclicWord`] is a finite sequence of pairwise distinct labels taken up
//! to rotation. It is stored in its lexicographically minimal rotation, so two
//! words are equal as cyclic orders exactly when they compare equal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Characters that may not appear in a user label.
pub const RESERVED: &[char] = &['(', ')', '{', '}', '[', ']', '^', '#', ';', ','];

/// Name of a marked point.
///
/// User labels are nonempty printable tokens without whitespace or reserved
/// characters. Names of the form `#k` (`k >= 1`) are glue tokens generated by
/// chord diagrams and canonical expressions; they can only be built through
/// [`Label::glue`] or the diagram parser.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Label(Arc<str>);

impl Label {
    /// A user label.
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if let Some(reason) = user_label_defect(&name) {
            return Err(Error::InvalidLabel { name, reason });
        }
        Ok(Label(name.into()))
    }

    /// The glue token `#k`.
    ///
    /// # Panics
    /// If `k == 0`.
    pub fn glue(k: u32) -> Self {
        assert!(k > 0, "glue token ids start at 1");
        Label(format!("#{k}").into())
    }

    /// Accepts either a user label or a well-formed glue token.
    pub fn any(name: &str) -> Result<Self> {
        if name.starts_with('#') {
            match parse_glue_id(name) {
                Some(k) => Ok(Label::glue(k)),
                None => Err(Error::InvalidLabel {
                    name: name.to_string(),
                    reason: "glue tokens have the form #k with k a positive integer",
                }),
            }
        } else {
            Label::new(name)
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_glue(&self) -> bool {
        self.0.starts_with('#')
    }

    /// The id `k` of a glue token `#k`.
    pub fn glue_id(&self) -> Option<u32> {
        parse_glue_id(&self.0)
    }
}

fn user_label_defect(name: &str) -> Option<&'static str> {
    if name.is_empty() {
        return Some("labels are nonempty");
    }
    if name.starts_with('#') {
        return Some("names starting with `#` are reserved for glue tokens");
    }
    if name.chars().any(char::is_whitespace) {
        return Some("labels contain no whitespace");
    }
    if name.chars().any(|c| RESERVED.contains(&c)) {
        return Some("labels contain none of ( ) { } [ ] ^ # ; ,");
    }
    if name.chars().any(char::is_control) {
        return Some("labels are printable");
    }
    None
}

fn parse_glue_id(name: &str) -> Option<u32> {
    let digits = name.strip_prefix('#')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    digits.parse().ok().filter(|&k| k > 0)
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl std::str::FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Label::new(s)
    }
}

/// A bijection between two finite label sets.
///
/// The domain is the key set and the codomain is the image; injectivity is
/// checked on construction, which makes the map onto its codomain.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Renaming {
    map: BTreeMap<Label, Label>,
}

impl Renaming {
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, Label)>,
    {
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (from, to) in pairs {
            if !image.insert(to.clone()) {
                return Err(Error::NotBijective(format!("`{to}` is hit twice")));
            }
            if let Some(prev) = map.insert(from.clone(), to) {
                return Err(Error::NotBijective(format!(
                    "`{from}` is mapped twice (first to `{prev}`)"
                )));
            }
        }
        Ok(Renaming { map })
    }

    pub fn identity<'a>(labels: impl IntoIterator<Item = &'a Label>) -> Self {
        Renaming {
            map: labels.into_iter().map(|l| (l.clone(), l.clone())).collect(),
        }
    }

    pub fn get(&self, label: &Label) -> Option<&Label> {
        self.map.get(label)
    }

    pub fn apply(&self, label: &Label) -> Result<Label> {
        self.map
            .get(label)
            .cloned()
            .ok_or_else(|| Error::MissingLabel(label.clone()))
    }

    pub fn domain(&self) -> impl Iterator<Item = &Label> {
        self.map.keys()
    }

    pub fn codomain(&self) -> BTreeSet<Label> {
        self.map.values().cloned().collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Label, &Label)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn after(&self, inner: &Renaming) -> Result<Renaming> {
        let map = inner
            .map
            .iter()
            .map(|(a, b)| Ok((a.clone(), self.apply(b)?)))
            .collect::<Result<_>>()?;
        Ok(Renaming { map })
    }

    pub fn inverse(&self) -> Renaming {
        Renaming {
            map: self
                .map
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    /// Restriction to the given labels, each of which must be in the domain.
    pub fn restrict<'a>(&self, labels: impl IntoIterator<Item = &'a Label>) -> Result<Renaming> {
        let map = labels
            .into_iter()
            .map(|l| Ok((l.clone(), self.apply(l)?)))
            .collect::<Result<_>>()?;
        Ok(Renaming { map })
    }

    /// `self ⊔ other`; domains and codomains must be disjoint.
    pub fn disjoint_union(&self, other: &Renaming) -> Result<Renaming> {
        Renaming::new(
            self.pairs()
                .chain(other.pairs())
                .map(|(a, b)| (a.clone(), b.clone())),
        )
    }

    /// Extends by the identity on `labels` not already in the domain.
    pub fn extended_by_identity<'a>(
        &self,
        labels: impl IntoIterator<Item = &'a Label>,
    ) -> Result<Renaming> {
        let mut pairs: Vec<(Label, Label)> =
            self.pairs().map(|(a, b)| (a.clone(), b.clone())).collect();
        for l in labels {
            if !self.map.contains_key(l) {
                pairs.push((l.clone(), l.clone()));
            }
        }
        Renaming::new(pairs)
    }
}

/// A word of distinct labels up to rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CyclicWord {
    items: Vec<Label>,
}

impl CyclicWord {
    /// Canonical rotation of `items`; fails on a repeated label.
    pub fn new(items: Vec<Label>) -> Result<Self> {
        if let Some(l) = first_duplicate(&items) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
        Ok(Self::from_distinct(items))
    }

    pub fn empty() -> Self {
        CyclicWord { items: Vec::new() }
    }

    /// Canonicalizes `items` whose labels are already known to be distinct.
    pub(crate) fn from_distinct(mut items: Vec<Label>) -> Self {
        let start = minimal_rotation(&items);
        items.rotate_left(start);
        CyclicWord { items }
    }

    /// The canonical representative.
    pub fn items(&self) -> &[Label] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, label: &Label) -> bool {
        self.items.contains(label)
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.items.iter().position(|l| l == label)
    }

    /// The word read starting at `label`.
    pub fn starting_at(&self, label: &Label) -> Option<Vec<Label>> {
        let i = self.position(label)?;
        let mut v = self.items.clone();
        v.rotate_left(i);
        Some(v)
    }

    /// All `len()` rotations of the representative (one for the empty word).
    pub fn rotations(&self) -> Vec<Vec<Label>> {
        if self.items.is_empty() {
            return vec![Vec::new()];
        }
        (0..self.items.len())
            .map(|k| {
                let mut v = self.items.clone();
                v.rotate_left(k);
                v
            })
            .collect()
    }

    pub fn rename(&self, rho: &Renaming) -> Result<CyclicWord> {
        let items = self
            .items
            .iter()
            .map(|l| rho.apply(l))
            .collect::<Result<Vec<_>>>()?;
        // a bijection keeps the labels distinct
        Ok(CyclicWord::from_distinct(items))
    }

    /// The same cyclic order read backwards.
    pub fn reversed(&self) -> CyclicWord {
        let mut items = self.items.clone();
        items.reverse();
        CyclicWord::from_distinct(items)
    }
}

/// Index of the lexicographically least rotation of `items`.
/// The first label that occurs twice, scanning left to right.
pub(crate) fn first_duplicate<'a>(items: impl IntoIterator<Item = &'a Label>) -> Option<&'a Label> {
    let items: Vec<&Label> = items.into_iter().collect();
    if items.len() <= 16 {
        return (1..items.len())
            .find(|&i| items[..i].contains(&items[i]))
            .map(|i| items[i]);
    }
    let mut seen = BTreeSet::new();
    items.into_iter().find(|l| !seen.insert(*l))
}

pub(crate) fn minimal_rotation<T: Ord>(items: &[T]) -> usize {
    let n = items.len();
    let mut best = 0;
    for cand in 1..n {
        let less = (0..n)
            .map(|i| items[(cand + i) % n].cmp(&items[(best + i) % n]))
            .find(|o| o.is_ne())
            .is_some_and(|o| o.is_lt());
        if less {
            best = cand;
        }
    }
    best
}

/// Canonical form of a sequence of distinct labels.
pub fn canonical_rotation(items: Vec<Label>) -> Result<CyclicWord> {
    CyclicWord::new(items)
}

/// Labelwise renaming followed by re-canonicalization.
pub fn rename_word(word: &CyclicWord, rho: &Renaming) -> Result<CyclicWord> {
    word.rename(rho)
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for l in &self.items {
            write!(f, " {l}")?;
        }
        f.write_str(" )")
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Builds user labels from string slices; test and example helper.
pub fn labels(names: &[&str]) -> Result<Vec<Label>> {
    names.iter().map(|n| Label::any(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(names: &[&str]) -> CyclicWord {
        CyclicWord::new(labels(names).unwrap()).unwrap()
    }

    fn ren(pairs: &[(&str, &str)]) -> Renaming {
        Renaming::new(
            pairs
                .iter()
                .map(|(a, b)| (Label::any(a).unwrap(), Label::any(b).unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn minimal_rotation_examples() {
        assert_eq!(
            w(&["b", "a", "c"]).items(),
            labels(&["a", "c", "b"]).unwrap()
        );
        assert!(w(&[]).is_empty());
        assert_eq!(w(&["x"]).items(), labels(&["x"]).unwrap());
    }

    #[test]
    fn duplicate_rejected() {
        let err = CyclicWord::new(labels(&["a", "b", "a"]).unwrap()).unwrap_err();
        assert_eq!(err, Error::DuplicateLabel(Label::new("a").unwrap()));
    }

    #[test]
    fn label_validation() {
        assert!(Label::new("").is_err());
        assert!(Label::new("#1").is_err());
        assert!(Label::new("a b").is_err());
        for c in RESERVED {
            assert!(Label::new(format!("x{c}")).is_err(), "{c}");
        }
        assert!(Label::new("x'").is_ok());
        assert!(Label::new("α-1").is_ok());
        assert_eq!(Label::glue(12).glue_id(), Some(12));
        assert!(Label::any("#0").is_err());
        assert!(Label::any("#01").is_err());
        assert!(Label::any("#x").is_err());
        assert_eq!(Label::any("#3").unwrap(), Label::glue(3));
    }

    #[test]
    fn rename_examples() {
        assert_eq!(
            w(&["a", "b"])
                .rename(&ren(&[("a", "x"), ("b", "y")]))
                .unwrap(),
            w(&["x", "y"])
        );
        let abc = w(&["a", "b", "c"]);
        assert_eq!(abc.rename(&Renaming::identity(abc.items())).unwrap(), abc);
        // (c' a' b') rotated to (a' b' c')
        let r = abc
            .rename(&ren(&[("a", "c'"), ("b", "a'"), ("c", "b'")]))
            .unwrap();
        assert_eq!(r.items(), labels(&["a'", "b'", "c'"]).unwrap());
    }

    #[test]
    fn rename_outside_domain() {
        let err = w(&["a", "b"]).rename(&ren(&[("a", "x")])).unwrap_err();
        assert_eq!(err, Error::MissingLabel(Label::new("b").unwrap()));
    }

    #[test]
    fn renaming_rejects_non_injective() {
        let r = Renaming::new(vec![
            (Label::new("a").unwrap(), Label::new("x").unwrap()),
            (Label::new("b").unwrap(), Label::new("x").unwrap()),
        ]);
        assert!(matches!(r, Err(Error::NotBijective(_))));
    }

    #[test]
    fn display() {
        assert_eq!(w(&["b", "a"]).to_string(), "( a b )");
        assert_eq!(w(&[]).to_string(), "( )");
    }
}
