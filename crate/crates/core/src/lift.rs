//! Lifting a fuzzy regular expression to an ordinary regular expression.
//!
//! Each distinct scalar appearing in the expression is replaced by a fresh
//! letter `$k` of an associated alphabet `Y`, turning the fuzzy expression
//! `α` into a crisp expression `α_R` over `X ∪ Y`. The scalar table `φ`
//! sends base letters to the unit `e` and each `$k` back to its scalar; its
//! homomorphic extension `φ*` multiplies letter values along a word.

use std::fmt;

use thiserror::Error;

use crate::algebra::{LMonoid, Value};
use crate::regex::{FuzzyRegex, Sym, Word};

/// A generated letter of the associated alphabet `Y` and the scalar it
/// stands for. Ids are 1-based and render as `$1`, `$2`, ….
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarLetter {
    pub id: u32,
    pub value: Value,
}

impl ScalarLetter {
    pub fn sym(self) -> Sym {
        Sym::Scalar(self.id)
    }
}

impl fmt::Display for ScalarLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "${}", self.id)
    }
}

/// The result of lifting: the crisp expression, the associated alphabet,
/// and the structure the scalar table lives in.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftResult {
    /// `α_R`: contains no scalar nodes; scalar letters appear as symbols.
    pub alpha_r: FuzzyRegex,
    /// The associated alphabet `Y`, in first-occurrence order of the scalars.
    pub y_alphabet: Vec<ScalarLetter>,
    pub lm: LMonoid,
}

#[derive(Debug, Error, PartialEq)]
pub enum LiftError {
    #[error("symbol `{0}` is not in the lifted alphabet")]
    UnknownSymbol(Sym),
}

/// Replaces every scalar in `alpha` by a letter of a fresh alphabet `Y`.
///
/// Scalars equal up to the structure tolerance share one letter (`Y` is in
/// bijection with the *set* of scalars). Letters are numbered in first
/// occurrence order, so the output is deterministic. A scalar equal to the
/// unit still receives a letter; no algebraic simplification is attempted.
pub fn lift(alpha: &FuzzyRegex, lm: LMonoid) -> LiftResult {
    fn walk(r: &FuzzyRegex, lm: LMonoid, y: &mut Vec<ScalarLetter>) -> FuzzyRegex {
        match r {
            FuzzyRegex::Empty => FuzzyRegex::Empty,
            FuzzyRegex::Epsilon => FuzzyRegex::Epsilon,
            FuzzyRegex::Sym(s) => FuzzyRegex::Sym(*s),
            FuzzyRegex::Scalar(v, inner) => {
                let letter = match y.iter().find(|sl| lm.value_eq(sl.value, *v)) {
                    Some(sl) => *sl,
                    None => {
                        let sl = ScalarLetter {
                            id: y.len() as u32 + 1,
                            value: *v,
                        };
                        y.push(sl);
                        sl
                    }
                };
                FuzzyRegex::concat(FuzzyRegex::Sym(letter.sym()), walk(inner, lm, y))
            }
            FuzzyRegex::Sum(a, b) => FuzzyRegex::sum(walk(a, lm, y), walk(b, lm, y)),
            FuzzyRegex::Concat(a, b) => FuzzyRegex::concat(walk(a, lm, y), walk(b, lm, y)),
            FuzzyRegex::Star(inner) => FuzzyRegex::star(walk(inner, lm, y)),
        }
    }

    let mut y_alphabet = Vec::new();
    let alpha_r = walk(alpha, lm, &mut y_alphabet);
    debug_assert!(alpha_r.is_crisp());
    LiftResult {
        alpha_r,
        y_alphabet,
        lm,
    }
}

impl LiftResult {
    /// The scalar table `φ`: `e` on base letters, the stored scalar on `$k`.
    pub fn phi(&self, s: Sym) -> Result<Value, LiftError> {
        match s {
            Sym::Letter(_) => Ok(self.lm.one()),
            Sym::Scalar(id) => self
                .y_alphabet
                .iter()
                .find(|sl| sl.id == id)
                .map(|sl| sl.value)
                .ok_or(LiftError::UnknownSymbol(s)),
        }
    }

    /// The homomorphic extension `φ*`: unit on ε, the ordered `⊗`-product of
    /// letter values otherwise.
    pub fn phi_star(&self, v: &Word) -> Result<Value, LiftError> {
        let mut acc = self.lm.one();
        for &s in v.syms() {
            acc = self.lm.otimes(acc, self.phi(s)?);
        }
        Ok(acc)
    }

    pub fn y_syms(&self) -> impl Iterator<Item = Sym> + '_ {
        self.y_alphabet.iter().map(|sl| sl.sym())
    }
}

/// Free-function form of [`LiftResult::phi_star`].
pub fn phi_star(lr: &LiftResult, v: &Word) -> Result<Value, LiftError> {
    lr.phi_star(v)
}

/// The embedding (scattered-subword) order: true iff `u` can be obtained
/// from `v` by deleting letters.
pub fn is_embedded<T: PartialEq>(u: &[T], v: &[T]) -> bool {
    let mut vi = v.iter();
    u.iter().all(|a| vi.any(|b| b == a))
}
