//! Fuzzy regular expressions over integral lattice-ordered monoids,
//! compiled to equivalent fuzzy finite automata.
//!
//! The pipeline:
//!
//! 1. [`regex::parse`] a fuzzy expression such as `0.2((0.1(xy)*)*+y)`.
//! 2. [`lift::lift`] it to an ordinary regular expression over an extended
//!    alphabet, replacing each scalar by a generated letter `$k` and
//!    remembering the scalar table.
//! 3. [`position::glushkov`] builds the position automaton of the lifted
//!    expression.
//! 4. [`synthesis::synthesize_full`] (or [`synthesis::synthesize_reduced`])
//!    turns it into a fuzzy automaton by matrix products with the
//!    transitive closure of the scalar-edge relation.
//! 5. [`runtime::degree`] evaluates membership degrees of words.
//!
//! The synthesized automata recognize exactly the fuzzy language of the
//! original expression; [`regex::eval_direct`] is the independent evaluator
//! used to verify that, and [`reduction`] shrinks automata further by the
//! greatest right invariant crisp equivalence.
//!
//! Everything is generic over the four built-in structures on `[0, 1]`
//! (Gödel, product, Łukasiewicz, Boolean) selected via
//! [`algebra::LMonoid`]; values, automata and expressions are immutable
//! after construction and safe to share across threads.

pub mod algebra;
pub mod corpus;
pub mod fixtures;
pub mod io;
pub mod lift;
pub mod linalg;
pub mod position;
pub mod reduction;
pub mod regex;
pub mod runtime;
pub mod synthesis;

pub use algebra::{make_structure, LMonoid, StructureKind, Value};
pub use io::AutomatonDocument;
pub use lift::{lift, LiftResult, ScalarLetter};
pub use linalg::{FuzzyMatrix, FuzzyVector};
pub use position::{glushkov, nfa_accepts, Nfa};
pub use reduction::{factor_automaton, greatest_right_invariant, Partition};
pub use regex::{eval_direct, parse, render, FuzzyRegex, Letter, Sym, Word};
pub use runtime::{degree, degree_table};
pub use synthesis::{
    base_relation, closure, synthesize_full, synthesize_reduced, theorem1_lower_bound,
    ClosureRelation, FuzzyAutomaton,
};
