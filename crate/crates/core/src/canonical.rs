//! Canonical expressions.
//!
//! For `q = {C_1, ..., C_b}^g` with grade `G` the canonical base word is
//!
//! ```text
//! C_1 #1 C_2 #2 #3 C_3 #4 ... #(2b-3) C_b #(2b-2) #(2b-1) ... #(2G)
//! ```
//!
//! with separating arcs `(#1 #2), (#3 #4), ..., (#(2b-3) #(2b-2))` and, for
//! each handle `h`, the crossing pair `(#t #t+2), (#t+1 #t+3)` where
//! `t = 2b - 1 + 4h`. Evaluating that diagram gives back `q`.

use std::collections::BTreeMap;
use std::fmt;

use crate::chord::{Chord, ChordDiagram, GlueToken};
use crate::enumerate::permutations;
use crate::surface::Surface;
use crate::words::{CyclicWord, Label};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalExpression {
    diagram: ChordDiagram,
    cycles: Vec<Vec<Label>>,
    separating: Vec<Chord>,
    handles: Vec<[Chord; 2]>,
    template: Vec<Label>,
}

impl CanonicalExpression {
    /// The expression for the given representing tuples, in the given order.
    pub fn from_tuples(cycles: Vec<Vec<Label>>, genus: u32) -> Self {
        assert!(
            !cycles.is_empty(),
            "a surface has at least one boundary cycle"
        );
        let tok = |k: usize| GlueToken::new(k as u32).expect("ids start at 1");
        let chord = |x: usize, y: usize| Chord::new(tok(x), tok(y)).expect("distinct ids");
        let b = cycles.len();
        let mut items: Vec<Label> = cycles[0].clone();
        let mut separating = Vec::with_capacity(b - 1);
        for (i, c) in cycles.iter().enumerate().skip(1) {
            let (x, y) = (2 * i - 1, 2 * i);
            items.push(tok(x).label());
            items.extend(c.iter().cloned());
            items.push(tok(y).label());
            separating.push(chord(x, y));
        }
        let mut handles = Vec::with_capacity(genus as usize);
        for h in 0..genus as usize {
            let t = 2 * b - 1 + 4 * h;
            items.extend((t..t + 4).map(|k| tok(k).label()));
            handles.push([chord(t, t + 2), chord(t + 1, t + 3)]);
        }
        let arcs = separating
            .iter()
            .copied()
            .chain(handles.iter().flatten().copied());
        let diagram = ChordDiagram::new(items.clone(), arcs).expect("template is a valid diagram");
        CanonicalExpression {
            diagram,
            cycles,
            separating,
            handles,
            template: items,
        }
    }

    pub fn diagram(&self) -> &ChordDiagram {
        &self.diagram
    }

    /// Circle items read from the start of `C_1`, as laid out by the template.
    pub fn template(&self) -> &[Label] {
        &self.template
    }

    /// The diagram printed in template order.
    pub fn diagram_line(&self) -> String {
        let mut s = String::from("[");
        for l in &self.template {
            s.push(' ');
            s.push_str(l.as_str());
        }
        s.push_str(" ;");
        for a in self.diagram.arcs() {
            s.push_str(&format!(" {a}"));
        }
        s.push_str(" ]");
        s
    }

    /// The representing tuples `C_1, ..., C_b` in template order.
    pub fn cycles(&self) -> &[Vec<Label>] {
        &self.cycles
    }

    pub fn separating_arcs(&self) -> &[Chord] {
        &self.separating
    }

    pub fn handle_arcs(&self) -> &[[Chord; 2]] {
        &self.handles
    }

    pub fn genus(&self) -> u32 {
        self.handles.len() as u32
    }

    /// One-line description of the arc partition and the chosen tuples.
    pub fn structure_line(&self) -> String {
        let mut s = format!(
            "structure: b={} g={} cycles",
            self.cycles.len(),
            self.genus()
        );
        for c in &self.cycles {
            s.push_str(" (");
            for l in c {
                s.push(' ');
                s.push_str(l.as_str());
            }
            s.push_str(" )");
        }
        s.push_str(" separating");
        for a in &self.separating {
            s.push_str(&format!(" {a}"));
        }
        s.push_str(" handles");
        for [x, y] in &self.handles {
            s.push_str(&format!(" {x}{y}"));
        }
        s
    }
}

impl fmt::Display for CanonicalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.diagram_line())?;
        write!(f, "{}", self.structure_line())
    }
}

/// The default canonical expression: cycles in stored order, each in its
/// canonical rotation, tokens `#1..#(2G)`.
pub fn canonical_diagram(q: &Surface) -> CanonicalExpression {
    let tuples = q.cycles().iter().map(|c| c.items().to_vec()).collect();
    CanonicalExpression::from_tuples(tuples, q.genus())
}

/// Every canonical expression obtained by reordering the cycles and rotating
/// each representing tuple. Token names stay `#1..#(2G)`. Identical
/// expressions (from repeated cycles) are listed once, sorted by tuples.
pub fn all_canonical_diagrams(q: &Surface) -> Vec<CanonicalExpression> {
    let cycles = q.cycles();
    let rotations: Vec<Vec<Vec<Label>>> = cycles.iter().map(CyclicWord::rotations).collect();
    let mut out = BTreeMap::new();
    for order in permutations(cycles.len()) {
        let mut choice = vec![0usize; order.len()];
        loop {
            let tuples = order
                .iter()
                .zip(&choice)
                .map(|(&i, &r)| rotations[i][r].clone())
                .collect();
            let e = CanonicalExpression::from_tuples(tuples, q.genus());
            out.entry(e.cycles.clone()).or_insert(e);
            // odometer over rotation choices
            let mut k = 0;
            loop {
                if k == order.len() {
                    break;
                }
                choice[k] += 1;
                if choice[k] < rotations[order[k]].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == order.len() {
                break;
            }
        }
    }
    out.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::labels;

    fn s(cycles: &[&[&str]], g: u32) -> Surface {
        Surface::from_sequences(cycles.iter().map(|c| labels(c).unwrap()).collect(), g).unwrap()
    }

    fn diagram(text: &str) -> ChordDiagram {
        text.parse().unwrap()
    }

    #[test]
    fn default_expressions() {
        let e = canonical_diagram(&s(&[&["1", "2"]], 0));
        assert_eq!(e.diagram(), &diagram("[ 1 2 ; ]"));
        let e = canonical_diagram(&s(&[&["A"], &["B"], &["C"]], 0));
        assert_eq!(
            e.diagram(),
            &diagram("[ A #1 B #2 #3 C #4 ; (#1 #2) (#3 #4) ]")
        );
        let e = canonical_diagram(&s(&[&["1"], &["2"]], 1));
        assert_eq!(
            e.diagram(),
            &diagram("[ 1 #1 2 #2 #3 #4 #5 #6 ; (#1 #2) (#3 #5) (#4 #6) ]")
        );
        assert_eq!(e.separating_arcs().len(), 1);
        assert_eq!(e.handle_arcs().len(), 1);
    }

    #[test]
    fn round_trip_small() {
        for q in [
            s(&[&["1", "2"]], 0),
            s(&[&["A"], &["B"], &["C"]], 0),
            s(&[&["1"], &["2"]], 1),
            s(&[&[]], 2),
            s(&[&[], &[], &["x", "y"]], 1),
        ] {
            let e = canonical_diagram(&q);
            assert_eq!(e.diagram().arc_count() as u32, q.grade());
            assert_eq!(e.diagram().evaluate(), q);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_canonical_diagrams(&s(&[&["1", "2"]], 0)).len(), 2);
        assert_eq!(all_canonical_diagrams(&s(&[&["A"], &["B"]], 0)).len(), 2);
        assert_eq!(all_canonical_diagrams(&s(&[&[]], 1)).len(), 1);
        assert_eq!(all_canonical_diagrams(&s(&[&["1"], &["2"]], 1)).len(), 2);
        // 3! orders times 3 * 2 rotations
        assert_eq!(
            all_canonical_diagrams(&s(&[&["a", "b", "c"], &["d", "e"], &["f"]], 0)).len(),
            36
        );
    }

    #[test]
    fn printed_in_template_order() {
        let e = canonical_diagram(&s(&[&["1"], &["2"]], 1));
        assert_eq!(
            e.diagram_line(),
            "[ 1 #1 2 #2 #3 #4 #5 #6 ; (#1 #2) (#3 #5) (#4 #6) ]"
        );
        assert_eq!(diagram(&e.diagram_line()), *e.diagram());
    }

    #[test]
    fn structure_line() {
        let e = canonical_diagram(&s(&[&["1"], &["2"]], 1));
        assert_eq!(
            e.structure_line(),
            "structure: b=2 g=1 cycles ( 1 ) ( 2 ) separating (#1 #2) handles (#3 #5)(#4 #6)"
        );
    }
}
