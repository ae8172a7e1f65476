//! The cyclic operad of cyclic orders.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::surface::Surface;
use crate::words::{CyclicWord, Label, Renaming};

/// An element of `Ass(C)`: a cyclic order on the finite set `C`.
///
/// The empty and singleton orders are included; the empty one includes into
/// surfaces as the disc without marked points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct AssElement {
    word: CyclicWord,
}

impl AssElement {
    pub fn new(word: CyclicWord) -> Self {
        AssElement { word }
    }

    pub fn from_labels(items: Vec<Label>) -> Result<Self> {
        Ok(AssElement::new(CyclicWord::new(items)?))
    }

    pub fn word(&self) -> &CyclicWord {
        &self.word
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.word.items().iter().cloned().collect()
    }

    /// Splice composition `self ∘_{a,b} other`.
    ///
    /// Writing `self = (a P)` and `other = (b Q)` cyclically, the result is
    /// `(P Q)`.
    pub fn compose(&self, a: &Label, other: &AssElement, b: &Label) -> Result<AssElement> {
        Ok(AssElement::new(splice(&self.word, a, &other.word, b)?))
    }

    pub fn rename(&self, rho: &Renaming) -> Result<AssElement> {
        Ok(AssElement::new(self.word.rename(rho)?))
    }

    /// `{self}^0`.
    pub fn include(&self) -> Surface {
        Surface::from_word(self.word.clone())
    }
}

/// `(a P) ∘ (b Q) = (P Q)`, checking that the residual labels stay distinct.
pub(crate) fn splice(x: &CyclicWord, a: &Label, y: &CyclicWord, b: &Label) -> Result<CyclicWord> {
    let i = x
        .position(a)
        .ok_or_else(|| Error::MissingLabel(a.clone()))?;
    let j = y
        .position(b)
        .ok_or_else(|| Error::MissingLabel(b.clone()))?;
    let (x, y) = (x.items(), y.items());
    let mut items = Vec::with_capacity(x.len() + y.len() - 2);
    items.extend_from_slice(&x[i + 1..]);
    items.extend_from_slice(&x[..i]);
    items.extend_from_slice(&y[j + 1..]);
    items.extend_from_slice(&y[..j]);
    CyclicWord::new(items)
}

pub fn ass_compose(x: &AssElement, a: &Label, y: &AssElement, b: &Label) -> Result<AssElement> {
    x.compose(a, y, b)
}

pub fn ass_rename(x: &AssElement, rho: &Renaming) -> Result<AssElement> {
    x.rename(rho)
}

pub fn include_in_qo(x: &AssElement) -> Surface {
    x.include()
}

impl fmt::Display for AssElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.word, f)
    }
}
