//! Synthesis of fuzzy automata from a crisp automaton and a scalar table.
//!
//! Given a nondeterministic automaton for the lifted expression and the
//! scalar table, the scalar-letter edges induce a reflexive weighted
//! relation `R` on states; its transitive closure `R_A` absorbs every run of
//! scalar letters. The fuzzy automaton is then plain matrix algebra:
//! `δ'_x = R_A ∘ δ_x ∘ R_A` and `τ' = R_A ∘ τ` (full construction), or
//! `δ'_x = R_A ∘ δ_x` restricted to the initial state and the targets of
//! base-letter edges (reduced construction). Both recognize the same fuzzy
//! language as the original fuzzy expression.

use std::fmt;

use thiserror::Error;

use crate::algebra::{LMonoid, Value};
use crate::lift::{lift, LiftError, LiftResult};
use crate::linalg::{compose, mat_vec, FuzzyMatrix, FuzzyVector, LinalgError};
use crate::position::{glushkov, Nfa};
use crate::regex::{FuzzyRegex, Letter, Sym, Word};

/// Cap on the number of words the bounded-shuffle evaluator may visit.
pub const SHUFFLE_ENUM_CAP: u128 = 20_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum SynthesisError {
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("inconsistent automaton shape: {0}")]
    Shape(String),
    #[error("shuffle enumeration would visit about {estimate} words, over the cap of {cap}")]
    EnumerationBudget { estimate: u128, cap: u128 },
}

/// A fuzzy finite automaton: per-letter transition matrices over the base
/// alphabet, a fuzzy initial vector and a fuzzy terminal vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyAutomaton {
    lm: LMonoid,
    x_alphabet: Vec<Letter>,
    delta: Vec<FuzzyMatrix>,
    sigma: FuzzyVector,
    tau: FuzzyVector,
    state_labels: Vec<String>,
}

impl FuzzyAutomaton {
    pub fn new(
        lm: LMonoid,
        x_alphabet: Vec<Letter>,
        delta: Vec<FuzzyMatrix>,
        sigma: FuzzyVector,
        tau: FuzzyVector,
        state_labels: Vec<String>,
    ) -> Result<FuzzyAutomaton, SynthesisError> {
        let n = tau.dim();
        if sigma.dim() != n {
            return Err(SynthesisError::Shape(format!(
                "sigma has {} entries for {} states",
                sigma.dim(),
                n
            )));
        }
        if state_labels.len() != n {
            return Err(SynthesisError::Shape(format!(
                "{} labels for {} states",
                state_labels.len(),
                n
            )));
        }
        if x_alphabet.len() != delta.len() {
            return Err(SynthesisError::Shape(format!(
                "{} letters but {} matrices",
                x_alphabet.len(),
                delta.len()
            )));
        }
        if delta.iter().any(|m| m.dim() != n) {
            return Err(SynthesisError::Shape(
                "transition matrix dimension mismatch".into(),
            ));
        }
        Ok(FuzzyAutomaton {
            lm,
            x_alphabet,
            delta,
            sigma,
            tau,
            state_labels,
        })
    }

    pub fn structure(&self) -> LMonoid {
        self.lm
    }

    pub fn n_states(&self) -> usize {
        self.tau.dim()
    }

    pub fn x_alphabet(&self) -> &[Letter] {
        &self.x_alphabet
    }

    pub fn delta(&self, x: Letter) -> Option<&FuzzyMatrix> {
        let idx = self.x_alphabet.iter().position(|&l| l == x)?;
        Some(&self.delta[idx])
    }

    pub fn matrices(&self) -> impl Iterator<Item = (Letter, &FuzzyMatrix)> {
        self.x_alphabet.iter().copied().zip(self.delta.iter())
    }

    pub fn sigma(&self) -> &FuzzyVector {
        &self.sigma
    }

    pub fn tau(&self) -> &FuzzyVector {
        &self.tau
    }

    pub fn state_labels(&self) -> &[String] {
        &self.state_labels
    }

    /// Entrywise equality of everything, up to the structure tolerance.
    pub fn approx_eq(&self, other: &FuzzyAutomaton) -> bool {
        self.x_alphabet == other.x_alphabet
            && self.sigma.approx_eq(&other.sigma, self.lm)
            && self.tau.approx_eq(&other.tau, self.lm)
            && self
                .delta
                .iter()
                .zip(&other.delta)
                .all(|(a, b)| a.approx_eq(b))
    }
}

/// The closure relation of a crisp automaton: the base relation and its
/// reflexive-transitive closure `R_A`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureRelation {
    pub base: FuzzyMatrix,
    pub matrix: FuzzyMatrix,
}

/// The reflexive relation induced by the scalar-letter edges: the unit on
/// the diagonal, elsewhere the join of the scalars whose letters connect the
/// two states.
pub fn base_relation(
    a: &Nfa,
    lr: &LiftResult,
    lm: LMonoid,
) -> Result<FuzzyMatrix, SynthesisError> {
    let n = a.n_states();
    let mut r = FuzzyMatrix::identity(lm, n);
    for sl in &lr.y_alphabet {
        let Some(m) = a.delta(sl.sym()) else {
            continue; // a scalar letter of the table may be absent from the automaton
        };
        for (i, j) in m.edges() {
            if i == j {
                continue;
            }
            let weighted = lm.otimes(sl.value, lm.one());
            r.set(i, j, lm.join(r.get(i, j), weighted));
        }
    }
    // Scalar letters in the automaton but not in the table are an error.
    for s in a.alphabet() {
        if let Sym::Scalar(_) = s {
            lr.phi(*s)?;
        }
    }
    Ok(r)
}

/// The base relation together with its transitive closure.
pub fn closure(base: &FuzzyMatrix) -> Result<ClosureRelation, SynthesisError> {
    let matrix = crate::linalg::reflexive_transitive_closure(base)?;
    Ok(ClosureRelation {
        base: base.clone(),
        matrix,
    })
}

fn bool_to_fuzzy(m: &crate::position::BoolMat, lm: LMonoid) -> FuzzyMatrix {
    let mut out = FuzzyMatrix::zeros(lm, m.dim());
    for (i, j) in m.edges() {
        out.set(i, j, lm.one());
    }
    out
}

fn finals_to_fuzzy(a: &Nfa, lm: LMonoid) -> FuzzyVector {
    let mut tau = FuzzyVector::zeros(a.n_states());
    for (i, &fin) in a.finals().iter().enumerate() {
        if fin {
            tau.set(i, lm.one());
        }
    }
    tau
}

fn x_letters(a: &Nfa) -> Vec<Letter> {
    a.alphabet()
        .iter()
        .filter_map(|s| match s {
            Sym::Letter(l) => Some(*l),
            Sym::Scalar(_) => None,
        })
        .collect()
}

/// The full construction: same state set as `a`, `δ'_x = R_A ∘ δ_x ∘ R_A`,
/// `τ' = R_A ∘ τ`, crisp initial state 0.
///
/// The caller is responsible for `a` recognizing the language of the lifted
/// expression; [`glushkov`] on `lr.alpha_r` always qualifies.
pub fn synthesize_full(
    a: &Nfa,
    lr: &LiftResult,
    lm: LMonoid,
) -> Result<FuzzyAutomaton, SynthesisError> {
    let rel = closure(&base_relation(a, lr, lm)?)?;
    let r = &rel.matrix;
    let letters = x_letters(a);
    let mut delta = Vec::with_capacity(letters.len());
    for &x in &letters {
        let crisp = bool_to_fuzzy(a.delta(Sym::Letter(x)).unwrap(), lm);
        delta.push(compose(&compose(r, &crisp)?, r)?);
    }
    let tau = mat_vec(r, &finals_to_fuzzy(a, lm))?;
    let n = a.n_states();
    FuzzyAutomaton::new(
        lm,
        letters,
        delta,
        FuzzyVector::unit(lm, n, 0),
        tau,
        (0..n).map(|i| i.to_string()).collect(),
    )
}

/// The states kept by the reduced construction: the initial state plus every
/// target of a base-letter edge, in source order.
pub fn reduced_states(a: &Nfa) -> Vec<usize> {
    let n = a.n_states();
    let mut keep = vec![false; n];
    keep[0] = true;
    for (s, m) in a.matrices() {
        if let Sym::Letter(_) = s {
            for (_, j) in m.edges() {
                keep[j] = true;
            }
        }
    }
    (0..n).filter(|&i| keep[i]).collect()
}

/// The reduced construction: `δ'_x = R_A ∘ δ_x` and `τ' = R_A ∘ τ` restricted
/// to [`reduced_states`]. Recognizes the same fuzzy language as the full
/// construction with possibly fewer states; state labels record the source
/// state indices.
pub fn synthesize_reduced(
    a: &Nfa,
    lr: &LiftResult,
    lm: LMonoid,
) -> Result<FuzzyAutomaton, SynthesisError> {
    let rel = closure(&base_relation(a, lr, lm)?)?;
    let r = &rel.matrix;
    let keep = reduced_states(a);
    let letters = x_letters(a);
    let mut delta = Vec::with_capacity(letters.len());
    for &x in &letters {
        let crisp = bool_to_fuzzy(a.delta(Sym::Letter(x)).unwrap(), lm);
        delta.push(compose(r, &crisp)?.restrict(&keep));
    }
    let tau = mat_vec(r, &finals_to_fuzzy(a, lm))?.restrict(&keep);
    FuzzyAutomaton::new(
        lm,
        letters,
        delta,
        FuzzyVector::unit(lm, keep.len(), 0),
        tau,
        keep.iter().map(|i| i.to_string()).collect(),
    )
}

/// Upper bound on how many words the bounded-shuffle evaluator visits for a
/// word of length `u_len` over an automaton with `n_states` states and `y_len`
/// scalar letters, at the given insertion budget.
pub fn shuffle_enumeration_size(
    u_len: usize,
    n_states: usize,
    y_len: usize,
    insert_budget: usize,
) -> u128 {
    let run_cap = insert_budget.min(n_states.saturating_sub(1));
    // Per gap: all runs of length 0..=run_cap over y_len letters.
    let mut per_gap: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=run_cap {
        per_gap = per_gap.saturating_add(pow);
        pow = pow.saturating_mul(y_len as u128);
    }
    let mut total: u128 = 1;
    for _ in 0..=u_len {
        total = total.saturating_mul(per_gap);
    }
    total
}

struct ShuffleSearch<'a> {
    nfa: &'a Nfa,
    lr: &'a LiftResult,
    lm: LMonoid,
    u: &'a [Sym],
    run_cap: usize,
    best: Value,
}

impl<'a> ShuffleSearch<'a> {
    fn step(&self, states: &[bool], s: Sym) -> Vec<bool> {
        // A symbol without a matrix kills the run, matching the language.
        match self.nfa.step(states, s) {
            Ok(next) => next,
            Err(_) => vec![false; self.nfa.n_states()],
        }
    }

    fn accepts(&self, states: &[bool]) -> bool {
        states
            .iter()
            .zip(self.nfa.finals())
            .any(|(&active, &fin)| active && fin)
    }

    // Depth-first over the words of the bounded shuffle set, in word order:
    // the current prefix is shared, so each extension costs one automaton
    // step instead of a full re-simulation. `run_len` is the length of the
    // scalar-letter run currently open; runs are capped at n−1 because a
    // longer run repeats a state and cutting the cycle keeps acceptance
    // while the table value can only rise.
    fn search(&mut self, gap: usize, states: Vec<bool>, budget: usize, run_len: usize, prefix: Value) {
        if states.iter().all(|&b| !b) {
            return; // nothing downstream can accept
        }
        if budget > 0 && run_len < self.run_cap {
            for k in 0..self.lr.y_alphabet.len() {
                let sl = self.lr.y_alphabet[k];
                let next = self.step(&states, sl.sym());
                let extended = self.lm.otimes(prefix, sl.value);
                self.search(gap, next, budget - 1, run_len + 1, extended);
            }
        }
        if gap == self.u.len() {
            if self.accepts(&states) {
                self.best = self.lm.join(self.best, prefix);
            }
        } else {
            // Base letters carry the unit, so the prefix value is unchanged.
            let next = self.step(&states, self.u[gap]);
            self.search(gap + 1, next, budget, 0, prefix);
        }
    }
}

/// Evaluates the shuffle formula for the degree of `u`: every word obtained
/// from `u` by inserting at most `insert_budget` scalar letters is tested
/// for membership in the lifted language, and the scalar-table values of the
/// accepted words are joined.
///
/// The result is a lower bound of the true degree, and is exact as soon as
/// `insert_budget ≥ (|u|+1) · n` where `n` is the position-automaton state
/// count: a run of more than `n−1` scalar letters between two base letters
/// always repeats a state and can be shortened without lowering its value.
pub fn theorem1_lower_bound(
    alpha: &FuzzyRegex,
    u: &Word,
    insert_budget: usize,
    lm: LMonoid,
) -> Result<Value, SynthesisError> {
    let lr = lift(alpha, lm);
    let nfa = glushkov(&lr.alpha_r);
    let estimate =
        shuffle_enumeration_size(u.len(), nfa.n_states(), lr.y_alphabet.len(), insert_budget);
    if estimate > SHUFFLE_ENUM_CAP {
        return Err(SynthesisError::EnumerationBudget {
            estimate,
            cap: SHUFFLE_ENUM_CAP,
        });
    }
    let run_cap = insert_budget.min(nfa.n_states().saturating_sub(1));
    let mut search = ShuffleSearch {
        nfa: &nfa,
        lr: &lr,
        lm,
        u: u.syms(),
        run_cap,
        best: Value::ZERO,
    };
    let mut initial = vec![false; nfa.n_states()];
    initial[0] = true;
    search.search(0, initial, insert_budget, 0, lm.one());
    Ok(search.best)
}

impl fmt::Display for FuzzyAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {:?}", self.state_labels)?;
        for (x, m) in self.matrices() {
            writeln!(f, "delta_{x}:")?;
            write!(f, "{m}")?;
        }
        let tau: Vec<String> = self.tau.values().iter().map(|v| v.to_string()).collect();
        write!(f, "tau: [{}]", tau.join(", "))
    }
}
