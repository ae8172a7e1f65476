//! The universal property of surfaces over cyclic orders, made executable.
//!
//! A [`TargetOperad`] is any modular operad in sets. Given a cyclic-operad
//! morphism `f` from [`AssElement`]s into it, [`tilde_f`] extends `f` to
//! surfaces: write the surface as its canonical expression, apply `f` to the
//! base word and contract along every arc. The checkers in [`checks`]
//! verify the operad axioms, that `f` is a cyclic morphism, that the extension
//! does not depend on the canonical expression chosen, and that it is a
//! modular morphism.

pub mod checks;
pub mod samples;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::ass::AssElement;
use crate::canonical::{canonical_diagram, CanonicalExpression};
use crate::error::{Error, Result};
use crate::surface::{Mutation, QoRules, Surface};
use crate::words::{Label, Renaming};

/// A modular operad in the category of sets.
///
/// `compose` adds grades and `contract` raises the grade by one.
pub trait TargetOperad: Sync {
    type Element: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn name(&self) -> String;
    fn labels(&self, e: &Self::Element) -> BTreeSet<Label>;
    fn grade(&self, e: &Self::Element) -> u32;
    fn rename(&self, e: &Self::Element, rho: &Renaming) -> Result<Self::Element>;
    fn compose(
        &self,
        x: &Self::Element,
        a: &Label,
        y: &Self::Element,
        b: &Label,
    ) -> Result<Self::Element>;
    fn contract(&self, x: &Self::Element, a: &Label, b: &Label) -> Result<Self::Element>;
}

/// A morphism of cyclic operads from cyclic orders into `T`.
pub trait AssMorphism<T: TargetOperad>: Fn(&AssElement) -> Result<T::Element> + Sync {}

impl<T: TargetOperad, F: Fn(&AssElement) -> Result<T::Element> + Sync> AssMorphism<T> for F {}

/// Surfaces themselves, with the standard or a mutated set of gluing rules.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QoTarget {
    pub rules: QoRules,
}

impl QoTarget {
    pub fn standard() -> Self {
        QoTarget::default()
    }

    pub fn mutated(m: Mutation) -> Self {
        QoTarget {
            rules: QoRules::mutated(m),
        }
    }
}

impl TargetOperad for QoTarget {
    type Element = Surface;

    fn name(&self) -> String {
        match self.rules.mutation {
            None => "qo".into(),
            Some(m) => format!("qo[{m}]"),
        }
    }

    fn labels(&self, e: &Surface) -> BTreeSet<Label> {
        e.labels()
    }

    fn grade(&self, e: &Surface) -> u32 {
        e.grade()
    }

    fn rename(&self, e: &Surface, rho: &Renaming) -> Result<Surface> {
        e.rename(rho)
    }

    fn compose(&self, x: &Surface, a: &Label, y: &Surface, b: &Label) -> Result<Surface> {
        self.rules.compose(x, a, y, b)
    }

    fn contract(&self, x: &Surface, a: &Label, b: &Label) -> Result<Surface> {
        self.rules.self_glue(x, a, b)
    }
}

/// The canonical inclusion of cyclic orders as genus-0 discs.
pub fn inclusion(x: &AssElement) -> Result<Surface> {
    Ok(x.include())
}

/// The point of the terminal operad at `(labels, grade)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Point {
    pub labels: BTreeSet<Label>,
    pub grade: u32,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("*{")?;
        for l in &self.labels {
            write!(f, " {l}")?;
        }
        write!(f, " }}@{}", self.grade)
    }
}

/// The terminal modular operad: one element for every label set and grade.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Terminal;

impl TargetOperad for Terminal {
    type Element = Point;

    fn name(&self) -> String {
        "terminal".into()
    }

    fn labels(&self, e: &Point) -> BTreeSet<Label> {
        e.labels.clone()
    }

    fn grade(&self, e: &Point) -> u32 {
        e.grade
    }

    fn rename(&self, e: &Point, rho: &Renaming) -> Result<Point> {
        let labels = e
            .labels
            .iter()
            .map(|l| rho.apply(l))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Point {
            labels,
            grade: e.grade,
        })
    }

    fn compose(&self, x: &Point, a: &Label, y: &Point, b: &Label) -> Result<Point> {
        if !x.labels.contains(a) {
            return Err(Error::MissingLabel(a.clone()));
        }
        if !y.labels.contains(b) {
            return Err(Error::MissingLabel(b.clone()));
        }
        if let Some(l) = x.labels.intersection(&y.labels).next() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
        let labels = x
            .labels
            .iter()
            .filter(|l| *l != a)
            .chain(y.labels.iter().filter(|l| *l != b))
            .cloned()
            .collect();
        Ok(Point {
            labels,
            grade: x.grade + y.grade,
        })
    }

    fn contract(&self, x: &Point, a: &Label, b: &Label) -> Result<Point> {
        if a == b {
            return Err(Error::SelfPair(a.clone()));
        }
        for l in [a, b] {
            if !x.labels.contains(l) {
                return Err(Error::MissingLabel(l.clone()));
            }
        }
        let mut labels = x.labels.clone();
        labels.remove(a);
        labels.remove(b);
        Ok(Point {
            labels,
            grade: x.grade + 1,
        })
    }
}

/// The unique morphism from cyclic orders to the terminal operad.
pub fn to_terminal(x: &AssElement) -> Result<Point> {
    Ok(Point {
        labels: x.labels(),
        grade: 0,
    })
}

/// `f̃(q)` computed along a given canonical expression of `q`.
pub fn tilde_f_along<T, F>(target: &T, f: &F, expr: &CanonicalExpression) -> Result<T::Element>
where
    T: TargetOperad,
    F: AssMorphism<T> + ?Sized,
{
    let base = AssElement::new(expr.diagram().base().clone());
    let start = f(&base)?;
    if target.labels(&start) != base.labels() {
        return Err(Error::Undefined(format!(
            "f({base}) does not carry the labels of its argument"
        )));
    }
    expr.diagram().arcs().try_fold(start, |acc, arc| {
        let (x, y) = arc.ends();
        target.contract(&acc, &x.label(), &y.label())
    })
}

/// `f̃(q)` along the default canonical expression.
pub fn tilde_f<T, F>(target: &T, f: &F, q: &Surface) -> Result<T::Element>
where
    T: TargetOperad,
    F: AssMorphism<T> + ?Sized,
{
    tilde_f_along(target, f, &canonical_diagram(q))
}
