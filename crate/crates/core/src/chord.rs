//! Chord diagrams: a circle of labels and glue tokens with arcs pairing the
//! tokens. A diagram is syntax for iterated self-gluings of a single cyclic
//! word; [`ChordDiagram::evaluate`] gives its meaning as a [`Surface`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::surface::{QoRules, Surface};
use crate::words::{CyclicWord, Label};

/// A glue token `#k`, `k >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GlueToken(u32);

impl GlueToken {
    pub fn new(id: u32) -> Result<Self> {
        if id == 0 {
            return Err(Error::Diagram("glue token ids start at 1".into()));
        }
        Ok(GlueToken(id))
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn label(self) -> Label {
        Label::glue(self.0)
    }

    pub fn of(label: &Label) -> Option<GlueToken> {
        label.glue_id().map(GlueToken)
    }
}

impl fmt::Display for GlueToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An unordered pair of distinct tokens, stored with the smaller id first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Chord {
    lo: GlueToken,
    hi: GlueToken,
}

impl Chord {
    pub fn new(x: GlueToken, y: GlueToken) -> Result<Self> {
        if x == y {
            return Err(Error::Diagram(format!("arc joins {x} to itself")));
        }
        Ok(Chord {
            lo: x.min(y),
            hi: x.max(y),
        })
    }

    pub fn ends(self) -> (GlueToken, GlueToken) {
        (self.lo, self.hi)
    }

    pub fn touches(self, t: GlueToken) -> bool {
        self.lo == t || self.hi == t
    }

    pub fn other(self, t: GlueToken) -> Option<GlueToken> {
        if t == self.lo {
            Some(self.hi)
        } else if t == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.lo, self.hi)
    }
}

/// A circle carrying user labels and glue tokens, with a perfect matching on
/// the tokens.
///
/// The circle is stored in canonical rotation, so diagrams that differ only
/// by rotating the circle are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordDiagram {
    base: CyclicWord,
    arcs: BTreeSet<Chord>,
}

impl ChordDiagram {
    pub fn new(items: Vec<Label>, arcs: impl IntoIterator<Item = Chord>) -> Result<Self> {
        let base = CyclicWord::new(items)?;
        let tokens: BTreeSet<GlueToken> = base.items().iter().filter_map(GlueToken::of).collect();
        let mut covered = BTreeSet::new();
        let mut set = BTreeSet::new();
        for arc in arcs {
            for t in [arc.lo, arc.hi] {
                if !tokens.contains(&t) {
                    return Err(Error::Diagram(format!(
                        "arc {arc} uses {t}, which is not on the circle"
                    )));
                }
                if !covered.insert(t) {
                    return Err(Error::Diagram(format!("token {t} is on more than one arc")));
                }
            }
            set.insert(arc);
        }
        if let Some(t) = tokens.difference(&covered).next() {
            return Err(Error::Diagram(format!("token {t} unmatched")));
        }
        Ok(ChordDiagram { base, arcs: set })
    }

    /// Builds from an already validated circle and matching.
    pub(crate) fn from_parts(base: CyclicWord, arcs: BTreeSet<Chord>) -> Self {
        ChordDiagram { base, arcs }
    }

    /// A circle without arcs.
    pub fn bare(word: CyclicWord) -> Result<Self> {
        ChordDiagram::new(word.items().to_vec(), [])
    }

    pub fn base(&self) -> &CyclicWord {
        &self.base
    }

    /// Arcs sorted by the smaller token id.
    pub fn arcs(&self) -> impl ExactSizeIterator<Item = Chord> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_set(&self) -> &BTreeSet<Chord> {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, arc: Chord) -> bool {
        self.arcs.contains(&arc)
    }

    pub fn partner(&self, t: GlueToken) -> Option<GlueToken> {
        self.arcs.iter().find_map(|a| a.other(t))
    }

    pub fn user_labels(&self) -> BTreeSet<Label> {
        self.base
            .items()
            .iter()
            .filter(|l| !l.is_glue())
            .cloned()
            .collect()
    }

    pub fn tokens(&self) -> BTreeSet<GlueToken> {
        self.base.items().iter().filter_map(GlueToken::of).collect()
    }

    /// The surface obtained from `{base}^0` by self-gluing along every arc,
    /// arcs taken in order of their smaller token id.
    pub fn evaluate(&self) -> Surface {
        self.evaluate_with(&QoRules::STANDARD)
    }

    pub fn evaluate_with(&self, rules: &QoRules) -> Surface {
        let start = Surface::from_word(self.base.clone());
        self.arcs.iter().fold(start, |q, arc| {
            rules
                .self_glue(&q, &arc.lo.label(), &arc.hi.label())
                .expect("diagram invariants keep both endpoints present")
        })
    }

    /// Evaluation along an explicit arc order, which must list every arc once.
    pub fn evaluate_in_order(&self, order: &[Chord]) -> Result<Surface> {
        let given: BTreeSet<Chord> = order.iter().copied().collect();
        if given != self.arcs || order.len() != self.arcs.len() {
            return Err(Error::Diagram(
                "order must list each arc exactly once".into(),
            ));
        }
        order
            .iter()
            .try_fold(Surface::from_word(self.base.clone()), |q, arc| {
                q.self_glue(&arc.lo.label(), &arc.hi.label())
            })
    }

    /// Renames glue tokens by `map` (which must be injective on the tokens
    /// present), carrying the arcs along.
    pub fn rename_tokens(&self, map: &BTreeMap<GlueToken, GlueToken>) -> Result<ChordDiagram> {
        let look = |t: GlueToken| {
            map.get(&t)
                .copied()
                .ok_or_else(|| Error::Diagram(format!("no image for {t}")))
        };
        let items = self
            .base
            .items()
            .iter()
            .map(|l| match GlueToken::of(l) {
                Some(t) => look(t).map(GlueToken::label),
                None => Ok(l.clone()),
            })
            .collect::<Result<Vec<_>>>()?;
        let arcs = self
            .arcs
            .iter()
            .map(|a| Chord::new(look(a.lo)?, look(a.hi)?))
            .collect::<Result<Vec<_>>>()?;
        ChordDiagram::new(items, arcs)
    }

    /// Graphviz text: the circle as a cycle of nodes, arcs as chords.
    pub fn render_dot(&self) -> String {
        let items = self.base.items();
        let mut out = String::from("graph chord_diagram {\n");
        if items.is_empty() {
            out.push_str("}\n");
            return out;
        }
        out.push_str("  layout=circo;\n  node [shape=circle];\n");
        for (i, l) in items.iter().enumerate() {
            let shape = if l.is_glue() { ", shape=point" } else { "" };
            let _ = writeln!(out, "  n{i} [label=\"{}\"{shape}];", escape(l.as_str()));
        }
        let n = items.len();
        if n == 2 {
            let _ = writeln!(out, "  n0 -- n1 [style=bold];");
        } else if n > 2 {
            for i in 0..n {
                let _ = writeln!(out, "  n{} -- n{} [style=bold];", i, (i + 1) % n);
            }
        }
        let index: BTreeMap<&Label, usize> =
            items.iter().enumerate().map(|(i, l)| (l, i)).collect();
        for arc in &self.arcs {
            let (x, y) = (index[&arc.lo.label()], index[&arc.hi.label()]);
            let _ = writeln!(out, "  n{x} -- n{y} [color=red, constraint=false];");
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn evaluate(d: &ChordDiagram) -> Surface {
    d.evaluate()
}

pub fn render_dot(d: &ChordDiagram) -> String {
    d.render_dot()
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for l in self.base.items() {
            write!(f, " {l}")?;
        }
        f.write_str(" ;")?;
        for a in &self.arcs {
            write!(f, " {a}")?;
        }
        f.write_str(" ]")
    }
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::labels;

    fn t(k: u32) -> GlueToken {
        GlueToken::new(k).unwrap()
    }

    fn c(x: u32, y: u32) -> Chord {
        Chord::new(t(x), t(y)).unwrap()
    }

    fn d(items: &[&str], arcs: &[(u32, u32)]) -> ChordDiagram {
        ChordDiagram::new(labels(items).unwrap(), arcs.iter().map(|&(x, y)| c(x, y))).unwrap()
    }

    fn s(cycles: &[&[&str]], g: u32) -> Surface {
        Surface::from_sequences(cycles.iter().map(|c| labels(c).unwrap()).collect(), g).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            d(&["1", "2", "3"], &[]).evaluate(),
            s(&[&["1", "2", "3"]], 0)
        );
        assert_eq!(
            d(&["#1", "#2", "#3", "#4"], &[(1, 3), (2, 4)]).evaluate(),
            s(&[&[]], 1)
        );
        assert_eq!(
            d(&["A", "#1", "B", "#2"], &[(1, 2)]).evaluate(),
            s(&[&["A"], &["B"]], 0)
        );
    }

    #[test]
    fn grade_equals_arc_count() {
        let x = d(
            &["#1", "a", "#2", "#3", "b", "#4", "#5", "#6"],
            &[(1, 4), (2, 6), (3, 5)],
        );
        let q = x.evaluate();
        assert_eq!(q.grade() as usize, x.arc_count());
    }

    #[test]
    fn malformed_matchings() {
        let err = ChordDiagram::new(labels(&["a", "#1"]).unwrap(), []).unwrap_err();
        assert_eq!(err, Error::Diagram("token #1 unmatched".into()));
        let err = ChordDiagram::new(labels(&["#1", "#2", "#3"]).unwrap(), [c(1, 2), c(2, 3)])
            .unwrap_err();
        assert!(matches!(err, Error::Diagram(_)));
        let err = ChordDiagram::new(labels(&["#1"]).unwrap(), [c(1, 5)]).unwrap_err();
        assert!(matches!(err, Error::Diagram(_)));
        assert!(Chord::new(t(1), t(1)).is_err());
        assert!(GlueToken::new(0).is_err());
    }

    #[test]
    fn order_must_be_a_permutation() {
        let x = d(&["#1", "#2", "#3", "#4"], &[(1, 3), (2, 4)]);
        assert!(x.evaluate_in_order(&[c(1, 3)]).is_err());
        assert_eq!(
            x.evaluate_in_order(&[c(2, 4), c(1, 3)]).unwrap(),
            x.evaluate()
        );
    }

    #[test]
    fn dot_output() {
        // xi_25 xi_38 xi_67 f<1 2 ... 8>
        let pic = d(
            &["1", "#2", "#3", "4", "#5", "#6", "#7", "#8"],
            &[(2, 5), (3, 8), (6, 7)],
        );
        let dot = pic.render_dot();
        assert_eq!(dot.matches("[label=").count(), 8);
        assert_eq!(dot.matches("color=red").count(), 3);
        assert_eq!(dot.matches("style=bold").count(), 8);
        assert_eq!(pic.render_dot(), dot);
        let empty = ChordDiagram::new(vec![], []).unwrap();
        assert_eq!(empty.render_dot(), "graph chord_diagram {\n}\n");
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(
            d(&["a", "#1", "b", "#2"], &[(1, 2)]).to_string(),
            "[ #1 b #2 a ; (#1 #2) ]"
        );
    }
}
