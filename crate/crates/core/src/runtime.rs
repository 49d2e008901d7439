//! Membership-degree evaluation on fuzzy automata.

use thiserror::Error;

use crate::linalg::{vec_mat, vec_vec, FuzzyVector};
use crate::regex::{words_up_to, FuzzyLanguageSample, Sym, TableError, Word};
use crate::synthesis::FuzzyAutomaton;

#[derive(Debug, Error, PartialEq)]
pub enum RuntimeError {
    #[error("symbol `{0}` is not in the automaton alphabet")]
    UnknownLetter(Sym),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// The degree of `u`: the initial vector pushed forward through one matrix
/// per letter, finished against the terminal vector. The empty word gives
/// `σ∘τ` directly.
pub fn degree(a: &FuzzyAutomaton, u: &Word) -> Result<crate::algebra::Value, RuntimeError> {
    let lm = a.structure();
    let mut state: FuzzyVector = a.sigma().clone();
    for &s in u.syms() {
        let m = match s {
            Sym::Letter(l) => a.delta(l),
            Sym::Scalar(_) => None,
        }
        .ok_or(RuntimeError::UnknownLetter(s))?;
        state = vec_mat(&state, m).expect("dimensions agree");
    }
    Ok(vec_vec(&state, a.tau(), lm).expect("dimensions agree"))
}

/// Degrees of every word over the automaton alphabet up to `max_len`.
pub fn degree_table(
    a: &FuzzyAutomaton,
    max_len: usize,
) -> Result<FuzzyLanguageSample, RuntimeError> {
    let alphabet: Vec<Sym> = a.x_alphabet().iter().map(|&l| Sym::Letter(l)).collect();
    let mut sample = FuzzyLanguageSample::new(a.structure());
    for w in words_up_to(&alphabet, max_len)? {
        let v = degree(a, &w)?;
        sample.insert(w, v);
    }
    Ok(sample)
}
