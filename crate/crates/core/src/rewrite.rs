//! Rewriting moves on chord diagrams.
//!
//! * `main`: for an arc `{x, y}` cutting the circle into `x S1 y S2`, rotate
//!   `S1` and `S2` independently.
//! * `boundary`: a segment `x ... y` whose ends are joined by an arc may be
//!   cut out and reinserted anywhere.
//! * `handle`: four consecutive tokens `a b c d` with arcs `{a, c}` and
//!   `{b, d}` may be moved anywhere.
//!
//! All three keep the arcs (as token pairs) and preserve evaluation; other
//! arcs may freely cross the pivot arc or leave the moved block.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::chord::{Chord, ChordDiagram, GlueToken};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::words::{CyclicWord, Label};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MoveKind {
    MainLemma,
    Boundary,
    Handle,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Move {
    /// Reading the circle as `x S1 y S2`, rotate `S1` left by `k1` and `S2`
    /// left by `k2`.
    MainLemma {
        x: GlueToken,
        y: GlueToken,
        k1: i64,
        k2: i64,
    },
    /// Move the segment running forward from `from` to `to` so that it
    /// follows `after`.
    Boundary {
        from: GlueToken,
        to: GlueToken,
        after: Label,
    },
    /// Move the handle block `a b c d` so that it follows `after`.
    Handle {
        tokens: [GlueToken; 4],
        after: Label,
    },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::MainLemma { .. } => MoveKind::MainLemma,
            Move::Boundary { .. } => MoveKind::Boundary,
            Move::Handle { .. } => MoveKind::Handle,
        }
    }

    pub fn apply(&self, d: &ChordDiagram) -> Result<ChordDiagram> {
        match self {
            Move::MainLemma { x, y, k1, k2 } => main_lemma_move(d, *x, *y, *k1, *k2),
            Move::Boundary { from, to, after } => boundary_move(d, *from, *to, after),
            Move::Handle { tokens, after } => handle_move(d, *tokens, after),
        }
    }
}

fn require_arc(d: &ChordDiagram, x: GlueToken, y: GlueToken) -> Result<()> {
    let arc =
        Chord::new(x, y).map_err(|_| Error::InvalidMove(format!("{x} paired with itself")))?;
    if d.has_arc(arc) {
        Ok(())
    } else {
        Err(Error::InvalidMove(format!(
            "arc ({x} {y}) is not in the diagram"
        )))
    }
}

fn read_from(d: &ChordDiagram, t: GlueToken) -> Result<Vec<Label>> {
    d.base()
        .starting_at(&t.label())
        .ok_or_else(|| Error::InvalidMove(format!("{t} is not on the circle")))
}

fn rotated(items: &[Label], k: i64) -> Vec<Label> {
    let mut v = items.to_vec();
    if !v.is_empty() {
        let k = k.rem_euclid(v.len() as i64) as usize;
        v.rotate_left(k);
    }
    v
}

fn rebuilt(d: &ChordDiagram, items: Vec<Label>) -> ChordDiagram {
    ChordDiagram::from_parts(CyclicWord::from_distinct(items), d.arc_set().clone())
}

pub fn main_lemma_move(
    d: &ChordDiagram,
    x: GlueToken,
    y: GlueToken,
    k1: i64,
    k2: i64,
) -> Result<ChordDiagram> {
    require_arc(d, x, y)?;
    let from_x = read_from(d, x)?;
    let split = from_x
        .iter()
        .position(|l| *l == y.label())
        .expect("arc end on circle");
    let mut items = vec![x.label()];
    items.extend(rotated(&from_x[1..split], k1));
    items.push(y.label());
    items.extend(rotated(&from_x[split + 1..], k2));
    Ok(rebuilt(d, items))
}

/// Cuts `block_len` items starting at `start` out of the circle and puts them
/// back after `after`.
fn relocate(
    d: &ChordDiagram,
    start: GlueToken,
    block_len: usize,
    after: &Label,
) -> Result<ChordDiagram> {
    let from_start = read_from(d, start)?;
    let (block, rest) = from_start.split_at(block_len);
    if rest.is_empty() {
        // the block is the whole circle
        if block.contains(after) {
            return Ok(d.clone());
        }
        return Err(Error::InvalidMove(format!(
            "`{after}` is not on the circle"
        )));
    }
    if block.contains(after) {
        return Err(Error::InvalidMove(format!(
            "insertion point `{after}` lies inside the moved block"
        )));
    }
    let at = rest
        .iter()
        .position(|l| l == after)
        .ok_or_else(|| Error::InvalidMove(format!("`{after}` is not on the circle")))?;
    let mut items = rest[..=at].to_vec();
    items.extend_from_slice(block);
    items.extend_from_slice(&rest[at + 1..]);
    Ok(rebuilt(d, items))
}

pub fn boundary_move(
    d: &ChordDiagram,
    from: GlueToken,
    to: GlueToken,
    after: &Label,
) -> Result<ChordDiagram> {
    require_arc(d, from, to)?;
    let from_start = read_from(d, from)?;
    let end = from_start
        .iter()
        .position(|l| *l == to.label())
        .expect("arc end on circle");
    relocate(d, from, end + 1, after)
}

pub fn handle_move(
    d: &ChordDiagram,
    tokens: [GlueToken; 4],
    after: &Label,
) -> Result<ChordDiagram> {
    let [a, b, c, e] = tokens;
    let from_a = read_from(d, a)?;
    let consecutive = from_a.len() >= 4
        && from_a[1] == b.label()
        && from_a[2] == c.label()
        && from_a[3] == e.label();
    if !consecutive {
        return Err(Error::InvalidMove(format!(
            "{a} {b} {c} {e} are not consecutive"
        )));
    }
    let crossing = Chord::new(a, c).is_ok_and(|x| d.has_arc(x))
        && Chord::new(b, e).is_ok_and(|x| d.has_arc(x));
    if !crossing {
        return Err(Error::InvalidMove(format!(
            "{a} {b} {c} {e} do not form a handle (need arcs ({a} {c}) and ({b} {e}))"
        )));
    }
    relocate(d, a, 4, after)
}

/// Diagrams are equivalent when they evaluate to the same surface.
pub fn equivalent(d1: &ChordDiagram, d2: &ChordDiagram) -> bool {
    d1.evaluate() == d2.evaluate()
}

/// Every non-trivial move applicable to `d`, in a fixed order.
pub fn applicable_moves(d: &ChordDiagram) -> Vec<Move> {
    let mut moves = Vec::new();
    for arc in d.arcs() {
        let (x, y) = arc.ends();
        let from_x = d.base().starting_at(&x.label()).expect("arc end on circle");
        let split = from_x
            .iter()
            .position(|l| *l == y.label())
            .expect("arc end on circle");
        let (n1, n2) = (split - 1, from_x.len() - split - 1);
        for k1 in 0..n1.max(1) {
            for k2 in 0..n2.max(1) {
                if k1 + k2 > 0 {
                    moves.push(Move::MainLemma {
                        x,
                        y,
                        k1: k1 as i64,
                        k2: k2 as i64,
                    });
                }
            }
        }
    }
    for arc in d.arcs() {
        let (lo, hi) = arc.ends();
        for (from, to) in [(lo, hi), (hi, lo)] {
            let from_start = d.base().starting_at(&from.label()).expect("on circle");
            let end = from_start
                .iter()
                .position(|l| *l == to.label())
                .expect("on circle");
            let rest = &from_start[end + 1..];
            // inserting after the last item of `rest` is the identity
            for after in rest.iter().take(rest.len().saturating_sub(1)) {
                moves.push(Move::Boundary {
                    from,
                    to,
                    after: after.clone(),
                });
            }
        }
    }
    let items = d.base().items();
    let n = items.len();
    if n > 4 {
        for i in 0..n {
            let block: Option<Vec<GlueToken>> =
                (0..4).map(|k| GlueToken::of(&items[(i + k) % n])).collect();
            let Some(block) = block else { continue };
            let tokens = [block[0], block[1], block[2], block[3]];
            let is_handle =
                d.partner(tokens[0]) == Some(tokens[2]) && d.partner(tokens[1]) == Some(tokens[3]);
            if !is_handle {
                continue;
            }
            for k in 4..n - 1 {
                moves.push(Move::Handle {
                    tokens,
                    after: items[(i + k) % n].clone(),
                });
            }
        }
    }
    moves
}

/// Breadth-first search for a sequence of moves turning `d1` into `d2`.
///
/// Returns `None` when no sequence of at most `max_depth` moves exists; in
/// particular when the diagrams have different arcs or evaluations.
pub fn find_certificate(
    d1: &ChordDiagram,
    d2: &ChordDiagram,
    max_depth: usize,
) -> Option<Vec<Move>> {
    find_certificate_with(d1, d2, max_depth, Execution::default())
}

pub fn find_certificate_with(
    d1: &ChordDiagram,
    d2: &ChordDiagram,
    max_depth: usize,
    exec: Execution,
) -> Option<Vec<Move>> {
    if d1 == d2 {
        return Some(Vec::new());
    }
    let same_items: bool = {
        let a: BTreeSet<&Label> = d1.base().items().iter().collect();
        let b: BTreeSet<&Label> = d2.base().items().iter().collect();
        a == b
    };
    if !same_items || d1.arc_set() != d2.arc_set() || !equivalent(d1, d2) {
        return None;
    }
    let mut parent: HashMap<ChordDiagram, Option<(ChordDiagram, Move)>> = HashMap::new();
    parent.insert(d1.clone(), None);
    let mut frontier = vec![d1.clone()];
    for _ in 0..max_depth {
        let expanded = exec.map(&frontier, |d| {
            let mut seen = BTreeSet::new();
            applicable_moves(d)
                .into_iter()
                .filter_map(|m| {
                    let next = m.apply(d).expect("generated moves apply");
                    (next != *d && seen.insert(next.clone())).then_some((m, next))
                })
                .collect::<Vec<_>>()
        });
        let mut next_frontier = Vec::new();
        for (d, succs) in frontier.iter().zip(expanded) {
            for (m, next) in succs {
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((d.clone(), m)));
                if next == *d2 {
                    return Some(trace(&parent, d2));
                }
                next_frontier.push(next);
            }
        }
        if next_frontier.is_empty() {
            return None;
        }
        crate::enumerate::sort_by_text(&mut next_frontier);
        frontier = next_frontier;
    }
    None
}

fn trace(
    parent: &HashMap<ChordDiagram, Option<(ChordDiagram, Move)>>,
    end: &ChordDiagram,
) -> Vec<Move> {
    let mut moves = Vec::new();
    let mut at = end.clone();
    while let Some(Some((prev, m))) = parent.get(&at) {
        moves.push(m.clone());
        at = prev.clone();
    }
    moves.reverse();
    moves
}

/// Applies `moves` in turn.
pub fn replay(d: &ChordDiagram, moves: &[Move]) -> Result<ChordDiagram> {
    moves.iter().try_fold(d.clone(), |acc, m| m.apply(&acc))
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::MainLemma { x, y, k1, k2 } => write!(f, "main({x},{y}; {k1},{k2})"),
            Move::Boundary { from, to, after } => {
                write!(f, "boundary({from}..{to} -> after {after})")
            }
            Move::Handle {
                tokens: [a, b, c, d],
                after,
            } => write!(f, "handle({a}{b}{c}{d} -> after {after})"),
        }
    }
}

fn move_error(s: &str, why: &str) -> Error {
    Error::InvalidMove(format!("cannot read `{s}`: {why}"))
}

fn tokens_in(s: &str) -> Option<Vec<GlueToken>> {
    let s = s.trim().strip_prefix('#')?;
    s.split('#')
        .map(|k| {
            Label::any(&format!("#{}", k.trim()))
                .ok()
                .and_then(|l| GlueToken::of(&l))
        })
        .collect()
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (head, body) = t
            .split_once('(')
            .ok_or_else(|| move_error(s, "missing `(`"))?;
        let body = body
            .strip_suffix(')')
            .ok_or_else(|| move_error(s, "missing `)`"))?;
        let target = |rest: &str| -> Result<Label> {
            let after = rest
                .trim()
                .strip_prefix("after")
                .ok_or_else(|| move_error(s, "expected `after <item>`"))?;
            Label::any(after.trim()).map_err(|e| move_error(s, &e.to_string()))
        };
        match head.trim() {
            "main" => {
                let (arc, ks) = body
                    .split_once(';')
                    .ok_or_else(|| move_error(s, "missing `;`"))?;
                let (x, y) = arc
                    .split_once(',')
                    .ok_or_else(|| move_error(s, "expected `#i,#j`"))?;
                let (k1, k2) = ks
                    .split_once(',')
                    .ok_or_else(|| move_error(s, "expected `k1,k2`"))?;
                let tok = |w: &str| match tokens_in(w).as_deref() {
                    Some([t]) => Ok(*t),
                    _ => Err(move_error(s, "expected a glue token")),
                };
                let int = |w: &str| {
                    w.trim()
                        .parse::<i64>()
                        .map_err(|_| move_error(s, "expected an integer"))
                };
                Ok(Move::MainLemma {
                    x: tok(x)?,
                    y: tok(y)?,
                    k1: int(k1)?,
                    k2: int(k2)?,
                })
            }
            "boundary" => {
                let (seg, rest) = body
                    .split_once("->")
                    .ok_or_else(|| move_error(s, "missing `->`"))?;
                let (from, to) = seg
                    .split_once("..")
                    .ok_or_else(|| move_error(s, "expected `#i..#j`"))?;
                match (tokens_in(from).as_deref(), tokens_in(to).as_deref()) {
                    (Some([from]), Some([to])) => Ok(Move::Boundary {
                        from: *from,
                        to: *to,
                        after: target(rest)?,
                    }),
                    _ => Err(move_error(s, "expected `#i..#j`")),
                }
            }
            "handle" => {
                let (block, rest) = body
                    .split_once("->")
                    .ok_or_else(|| move_error(s, "missing `->`"))?;
                match tokens_in(block).as_deref() {
                    Some(&[a, b, c, d]) => Ok(Move::Handle {
                        tokens: [a, b, c, d],
                        after: target(rest)?,
                    }),
                    _ => Err(move_error(s, "expected four glue tokens")),
                }
            }
            other => Err(move_error(s, &format!("unknown move `{other}`"))),
        }
    }
}
