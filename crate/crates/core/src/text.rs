//! Text grammars.
//!
//! ```text
//! word     := "(" label* ")"
//! surface  := "{" word+ "}" "^" genus
//! diagram  := "[" item* ";" ("(" token token ")")* "]"
//! renaming := pair ("," pair)*      pair := label "=" label
//! ```
//!
//! Whitespace is insignificant except as a separator between labels.
//! Errors carry 1-based line and column numbers.

use std::str::FromStr;

use crate::chord::{Chord, ChordDiagram, GlueToken};
use crate::error::{Error, Result};
use crate::surface::Surface;
use crate::words::{CyclicWord, Label, Renaming};

const PUNCT: &[char] = &['(', ')', '{', '}', '[', ']', '^', ';', ','];

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Punct(char),
    Word(&'a str),
}

#[derive(Clone, Debug)]
struct Spanned<'a> {
    tok: Tok<'a>,
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    toks: Vec<Spanned<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let mut toks = Vec::new();
        let (mut line, mut column) = (1, 1);
        let mut word_start: Option<(usize, usize, usize)> = None;
        let flush =
            |toks: &mut Vec<Spanned<'a>>, start: &mut Option<(usize, usize, usize)>, end: usize| {
                if let Some((at, l, c)) = start.take() {
                    toks.push(Spanned {
                        tok: Tok::Word(&src[at..end]),
                        line: l,
                        column: c,
                    });
                }
            };
        for (i, ch) in src.char_indices() {
            if ch.is_whitespace() {
                flush(&mut toks, &mut word_start, i);
            } else if PUNCT.contains(&ch) {
                flush(&mut toks, &mut word_start, i);
                toks.push(Spanned {
                    tok: Tok::Punct(ch),
                    line,
                    column,
                });
            } else if word_start.is_none() {
                word_start = Some((i, line, column));
            }
            if ch == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        flush(&mut toks, &mut word_start, src.len());
        Lexer {
            toks,
            pos: 0,
            end: (line, column),
        }
    }

    fn peek(&self) -> Option<&Spanned<'a>> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn expect(&mut self, p: char) -> Result<()> {
        match self.peek() {
            Some(Spanned {
                tok: Tok::Punct(c), ..
            }) if *c == p => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected `{p}`, found {}", describe(&t.tok)))),
            None => Err(self.error(format!("expected `{p}`, found end of input"))),
        }
    }

    fn at_punct(&self, p: char) -> bool {
        matches!(self.peek(), Some(Spanned { tok: Tok::Punct(c), .. }) if *c == p)
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {} after end", describe(&t.tok)))),
        }
    }

    /// Reads one word and applies `f`, reporting failures at the word.
    fn word<T>(&mut self, what: &str, f: impl FnOnce(&str) -> Result<T>) -> Result<T> {
        match self.peek().cloned() {
            Some(Spanned {
                tok: Tok::Word(w),
                line,
                column,
            }) => {
                self.pos += 1;
                f(w).map_err(|e| Error::Parse {
                    line,
                    column,
                    message: e.to_string(),
                })
            }
            Some(t) => Err(self.error(format!("expected {what}, found {}", describe(&t.tok)))),
            None => Err(self.error(format!("expected {what}, found end of input"))),
        }
    }
}

fn describe(t: &Tok<'_>) -> String {
    match t {
        Tok::Punct(c) => format!("`{c}`"),
        Tok::Word(w) => format!("`{w}`"),
    }
}

fn located<T>(at: (usize, usize), r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line: at.0,
            column: at.1,
            message: other.to_string(),
        },
    })
}

fn word_items(lx: &mut Lexer<'_>, glue_ok: bool) -> Result<Vec<Label>> {
    let mut items = Vec::new();
    lx.expect('(')?;
    while !lx.at_punct(')') {
        let l = lx.word("a label", |w| {
            if glue_ok {
                Label::any(w)
            } else {
                Label::new(w)
            }
        })?;
        items.push(l);
    }
    lx.expect(')')?;
    Ok(items)
}

fn cyclic_word(lx: &mut Lexer<'_>) -> Result<CyclicWord> {
    let at = lx.here();
    let items = word_items(lx, false)?;
    located(at, CyclicWord::new(items))
}

pub fn parse_word(src: &str) -> Result<CyclicWord> {
    let mut lx = Lexer::new(src);
    let w = cyclic_word(&mut lx)?;
    lx.finish()?;
    Ok(w)
}

pub fn parse_surface(src: &str) -> Result<Surface> {
    let mut lx = Lexer::new(src);
    let start = lx.here();
    lx.expect('{')?;
    let mut cycles = Vec::new();
    while lx.at_punct('(') {
        cycles.push(word_items(&mut lx, false)?);
    }
    lx.expect('}')?;
    lx.expect('^')?;
    let genus = lx.word("a genus", |w| {
        let g: i64 = w
            .parse()
            .map_err(|_| Error::Diagram(format!("`{w}` is not an integer")))?;
        if g < 0 {
            return Err(Error::NegativeGenus(g));
        }
        u32::try_from(g).map_err(|_| Error::Diagram(format!("genus {g} too large")))
    })?;
    lx.finish()?;
    located(start, Surface::from_sequences(cycles, genus))
}

pub fn parse_diagram(src: &str) -> Result<ChordDiagram> {
    let mut lx = Lexer::new(src);
    let start = lx.here();
    lx.expect('[')?;
    let mut items = Vec::new();
    while !lx.at_punct(';') {
        if lx.peek().is_none() || lx.at_punct(']') {
            return Err(lx.error("expected `;` separating items from arcs"));
        }
        items.push(lx.word("a label or glue token", Label::any)?);
    }
    lx.expect(';')?;
    let mut arcs = Vec::new();
    while lx.at_punct('(') {
        let at = lx.here();
        lx.expect('(')?;
        let x = lx.word("a glue token", token)?;
        let y = lx.word("a glue token", token)?;
        lx.expect(')')?;
        arcs.push(located(at, Chord::new(x, y))?);
    }
    lx.expect(']')?;
    lx.finish()?;
    located(start, ChordDiagram::new(items, arcs))
}

fn token(w: &str) -> Result<GlueToken> {
    match Label::any(w).ok().and_then(|l| GlueToken::of(&l)) {
        Some(t) => Ok(t),
        None => Err(Error::Diagram(format!("`{w}` is not a glue token #k"))),
    }
}

/// Parses `a=x,b=y`. Each pair is split at its first `=`.
pub fn parse_renaming(src: &str) -> Result<Renaming> {
    let mut pairs = Vec::new();
    let mut offset = 0;
    for part in src.split(',') {
        let trimmed = part.trim();
        let col = offset + part.len() - part.trim_start().len() + 1;
        offset += part.len() + 1;
        if trimmed.is_empty() {
            if src.trim().is_empty() {
                break;
            }
            return Err(Error::Parse {
                line: 1,
                column: col,
                message: "empty renaming pair".into(),
            });
        }
        let at = |message: String| Error::Parse {
            line: 1,
            column: col,
            message,
        };
        let (from, to) = trimmed
            .split_once('=')
            .ok_or_else(|| at(format!("expected `from=to`, found `{trimmed}`")))?;
        let from = Label::new(from.trim()).map_err(|e| at(e.to_string()))?;
        let to = Label::new(to.trim()).map_err(|e| at(e.to_string()))?;
        pairs.push((from, to));
    }
    Renaming::new(pairs).map_err(|e| Error::Parse {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl FromStr for Surface {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_surface(s)
    }
}

impl FromStr for ChordDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_diagram(s)
    }
}

pub fn print_diagram(d: &ChordDiagram) -> String {
    d.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(r: Result<impl std::fmt::Debug>) -> (usize, usize, String) {
        match r {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("( b a c )").unwrap().to_string(), "( a c b )");
        assert_eq!(parse_word("()").unwrap().to_string(), "( )");
        assert_eq!(parse_word("(x)").unwrap().to_string(), "( x )");
        let (l, c, m) = parse_err(parse_word("(a b a)"));
        assert_eq!((l, c), (1, 1));
        assert!(m.contains("duplicate"), "{m}");
    }

    #[test]
    fn surfaces() {
        let q = parse_surface("{ ( a b ) ( ) ( c ) }^1").unwrap();
        assert_eq!(q.to_string(), "{ ( ) ( c ) ( a b ) }^1");
        assert_eq!(q.genus(), 1);
        assert_eq!(
            parse_surface("{(b a)}^0").unwrap().to_string(),
            "{ ( a b ) }^0"
        );
        assert_eq!(parse_surface("{\n ( 1 )\n ( 2 )\n}^ 3").unwrap().grade(), 7);
    }

    #[test]
    fn surface_errors() {
        let (l, c, m) = parse_err(parse_surface("{ ( a ) }^-1"));
        assert_eq!((l, c), (1, 11));
        assert!(m.contains("nonnegative"), "{m}");
        let (_, _, m) = parse_err(parse_surface("{ }^0"));
        assert!(m.contains("at least one"), "{m}");
        let (l, c, _) = parse_err(parse_surface("{ ( a )\n  ( #1 ) }^0"));
        assert_eq!((l, c), (2, 5));
        let (l, c, m) = parse_err(parse_surface("{ ( a ) }"));
        assert_eq!((l, c), (1, 10));
        assert!(m.contains("`^`"), "{m}");
        assert!(parse_surface("{ ( a ) }^0 junk").is_err());
    }

    #[test]
    fn diagrams() {
        let d = parse_diagram("[ a #1 b #2 ; (#1 #2) ]").unwrap();
        assert_eq!(d.arc_count(), 1);
        assert_eq!(d.base().len(), 4);
        let d = parse_diagram("[ #1 #2 ; (#1 #2) ]").unwrap();
        assert_eq!(d.base().len(), 2);
        let (_, _, m) = parse_err(parse_diagram("[ a #1 ; ]"));
        assert!(m.contains("#1 unmatched"), "{m}");
        let (_, _, m) = parse_err(parse_diagram("[ #1 #2 #3 #4 ; (#1 #2) (#2 #3) (#4 #1) ]"));
        assert!(m.contains("more than one arc"), "{m}");
        let (l, c, _) = parse_err(parse_diagram("[ a #0 ; ]"));
        assert_eq!((l, c), (1, 5));
        let (_, _, m) = parse_err(parse_diagram("[ a b ; (a b) ]"));
        assert!(m.contains("not a glue token"), "{m}");
    }

    #[test]
    fn renamings() {
        let r = parse_renaming("a=x, b = y").unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.apply(&Label::new("b").unwrap()).unwrap().as_str(), "y");
        assert!(parse_renaming("a=x,b=x").is_err());
        let (_, c, _) = parse_err(parse_renaming("a=x,bx"));
        assert_eq!(c, 5);
        assert!(parse_renaming("").unwrap().is_empty());
    }
}
