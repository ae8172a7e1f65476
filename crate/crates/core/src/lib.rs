//! Surfaces with marked boundary points as a modular operad, generated by
//! cyclic orders.
//!
//! * [`words`]: labels, renamings, cyclic words.
//! * [`ass`]: the cyclic operad of cyclic orders.
//! * [`surface`]: surfaces `{C_1 ... C_b}^g` with gluing and self-gluing.
//! * [`chord`]: chord diagrams and their evaluation to surfaces.
//! * [`canonical`]: canonical expressions of a surface as a chord diagram.
//! * [`rewrite`]: diagram moves, equivalence and move certificates.
//! * [`envelope`]: target operads, the extension `f̃`, and axiom/morphism
//!   checkers.
//! * [`enumerate`]: exhaustive generators and genus tables.
//! * [`text`]: the text grammars.

pub mod ass;
pub mod canonical;
pub mod chord;
pub mod enumerate;
pub mod envelope;
pub mod error;
pub mod exec;
pub mod rewrite;
pub mod surface;
pub mod text;
pub mod words;

pub use ass::AssElement;
pub use canonical::{all_canonical_diagrams, canonical_diagram, CanonicalExpression};
pub use chord::{Chord, ChordDiagram, GlueToken};
pub use error::{Error, Result};
pub use exec::Execution;
pub use rewrite::{equivalent, find_certificate, Move, MoveKind};
pub use surface::{Mutation, QoRules, Surface};
pub use words::{CyclicWord, Label, Renaming};
