//! State reduction of fuzzy automata by right invariant crisp equivalences.
//!
//! A crisp equivalence `E` on the states is right invariant when
//! `E ∘ δ_x ≤ δ_x ∘ E` for every letter and `E ∘ τ = τ`. Factoring by such
//! an equivalence preserves the recognized fuzzy language. The greatest
//! right invariant crisp equivalence is computed by partition refinement:
//! start from equality of terminal degrees, then repeatedly split classes
//! whose members disagree on some per-letter, per-class transition join.

use std::fmt;

use thiserror::Error;

use crate::algebra::{LMonoid, Value};
use crate::linalg::{compose, mat_vec, FuzzyMatrix, FuzzyVector};
use crate::position::{BoolMat, Nfa};
use crate::regex::Letter;
use crate::synthesis::{FuzzyAutomaton, SynthesisError};

/// A partition of the state set into dense class indices `0..n_classes`.
/// Classes are numbered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    n_classes: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum ReductionError {
    #[error("partition covers {partition} states but the automaton has {automaton}")]
    WrongSize { partition: usize, automaton: usize },
    #[error("partition is not right invariant: {0}")]
    NotRightInvariant(RiViolation),
}

/// A witness that the right invariance conditions fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiViolation {
    /// `(E∘δ_x)(from, to) > (δ_x∘E)(from, to)`.
    Transition { letter: Letter, from: usize, to: usize },
    /// `(E∘τ)(state) ≠ τ(state)`.
    Terminal { state: usize },
}

impl fmt::Display for RiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RiViolation::Transition { letter, from, to } => write!(
                f,
                "(E∘delta_{letter})({from},{to}) exceeds (delta_{letter}∘E)({from},{to})"
            ),
            RiViolation::Terminal { state } => {
                write!(f, "E∘tau differs from tau at state {state}")
            }
        }
    }
}

impl Partition {
    /// Builds a partition from a class assignment, renumbering classes
    /// densely by smallest member.
    pub fn new(raw_class_of: &[usize]) -> Partition {
        let mut remap: Vec<Option<usize>> = vec![None; raw_class_of.len() + 1];
        let mut class_of = Vec::with_capacity(raw_class_of.len());
        let mut n_classes = 0;
        for &c in raw_class_of {
            let slot = remap.get_mut(c).expect("class index out of range");
            let dense = match slot {
                Some(d) => *d,
                None => {
                    let d = n_classes;
                    *slot = Some(d);
                    n_classes += 1;
                    d
                }
            };
            class_of.push(dense);
        }
        Partition { class_of, n_classes }
    }

    pub fn identity(n: usize) -> Partition {
        Partition {
            class_of: (0..n).collect(),
            n_classes: n,
        }
    }

    pub fn n_states(&self) -> usize {
        self.class_of.len()
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn class_of(&self, state: usize) -> usize {
        self.class_of[state]
    }

    pub fn same_class(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// The members of each class, classes in index order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.n_classes];
        for (state, &c) in self.class_of.iter().enumerate() {
            blocks[c].push(state);
        }
        blocks
    }

    /// True when every class of `self` is contained in a class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image: Vec<Option<usize>> = vec![None; self.n_classes];
        for (state, &c) in self.class_of.iter().enumerate() {
            let target = other.class_of[state];
            match image[c] {
                None => image[c] = Some(target),
                Some(t) if t == target => {}
                Some(_) => return false,
            }
        }
        true
    }

    /// The crisp equivalence matrix of the partition.
    pub fn matrix(&self, lm: LMonoid) -> FuzzyMatrix {
        let n = self.class_of.len();
        let mut e = FuzzyMatrix::zeros(lm, n);
        for a in 0..n {
            for b in 0..n {
                if self.same_class(a, b) {
                    e.set(a, b, lm.one());
                }
            }
        }
        e
    }

    /// Intersection (common refinement) of two partitions.
    pub fn meet(&self, other: &Partition) -> Partition {
        assert_eq!(self.n_states(), other.n_states());
        let n = self.n_states();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let mut raw = Vec::with_capacity(n);
        for state in 0..n {
            let key = (self.class_of[state], other.class_of[state]);
            let idx = match seen.iter().position(|&k| k == key) {
                Some(i) => i,
                None => {
                    seen.push(key);
                    seen.len() - 1
                }
            };
            raw.push(idx);
        }
        Partition::new(&raw)
    }
}

/// Checks the right invariance conditions, returning the first violation.
pub fn check_right_invariant(a: &FuzzyAutomaton, p: &Partition) -> Result<(), ReductionError> {
    if p.n_states() != a.n_states() {
        return Err(ReductionError::WrongSize {
            partition: p.n_states(),
            automaton: a.n_states(),
        });
    }
    let lm = a.structure();
    let e = p.matrix(lm);
    for (letter, dx) in a.matrices() {
        let lhs = compose(&e, dx).expect("dimensions agree");
        let rhs = compose(dx, &e).expect("dimensions agree");
        for from in 0..a.n_states() {
            for to in 0..a.n_states() {
                if !lm.value_le(lhs.get(from, to), rhs.get(from, to)) {
                    return Err(ReductionError::NotRightInvariant(RiViolation::Transition {
                        letter,
                        from,
                        to,
                    }));
                }
            }
        }
    }
    let etau = mat_vec(&e, a.tau()).expect("dimensions agree");
    for state in 0..a.n_states() {
        if !lm.value_eq(etau.get(state), a.tau().get(state)) {
            return Err(ReductionError::NotRightInvariant(RiViolation::Terminal {
                state,
            }));
        }
    }
    Ok(())
}

/// True iff `p` is a right invariant crisp equivalence on `a`.
pub fn is_right_invariant(a: &FuzzyAutomaton, p: &Partition) -> bool {
    check_right_invariant(a, p).is_ok()
}

// Groups states by tolerance-equal keys, greedily against the first matching
// representative. Exact for tolerance 0; documented knob for the inexact
// structures, where refinement is float-sensitive.
fn group_by_values(rows: &[Vec<Value>], lm: LMonoid) -> Partition {
    let mut reps: Vec<usize> = Vec::new();
    let mut raw = Vec::with_capacity(rows.len());
    'states: for (state, row) in rows.iter().enumerate() {
        for (class, &rep) in reps.iter().enumerate() {
            if row
                .iter()
                .zip(&rows[rep])
                .all(|(a, b)| lm.value_eq(*a, *b))
            {
                raw.push(class);
                continue 'states;
            }
        }
        reps.push(state);
        raw.push(reps.len() - 1);
    }
    Partition::new(&raw)
}

/// The greatest right invariant crisp equivalence on `a`, by partition
/// refinement.
///
/// The first partition groups states with equal terminal degrees; each round
/// then compares, for every letter and every current class, the join of
/// transition degrees into that class, and splits states that disagree. The
/// sequence of partitions is descending, so it reaches a fixpoint in at most
/// `n` rounds; the worst case is `O(n⁴·|X|)` work.
pub fn greatest_right_invariant(a: &FuzzyAutomaton) -> Partition {
    greatest_right_invariant_trace(a).0
}

/// As [`greatest_right_invariant`], also reporting the class count after
/// each refinement round (the descending chain).
pub fn greatest_right_invariant_trace(a: &FuzzyAutomaton) -> (Partition, Vec<usize>) {
    let lm = a.structure();
    let n = a.n_states();
    if n == 0 {
        return (Partition::identity(0), Vec::new());
    }
    let tau_rows: Vec<Vec<Value>> = (0..n).map(|s| vec![a.tau().get(s)]).collect();
    let mut current = group_by_values(&tau_rows, lm);
    let mut chain = vec![current.n_classes()];
    loop {
        // Signature of a state: for each letter and each current class, the
        // join of transition degrees from the state into the class.
        let blocks = current.blocks();
        let mut rows: Vec<Vec<Value>> = vec![Vec::new(); n];
        for (_, dx) in a.matrices() {
            for (state, row) in rows.iter_mut().enumerate() {
                for members in &blocks {
                    let joined = lm.big_join(members.iter().map(|&b| dx.get(state, b)));
                    row.push(joined);
                }
            }
        }
        let refined = current.meet(&group_by_values(&rows, lm));
        if refined == current {
            return (current, chain);
        }
        chain.push(refined.n_classes());
        current = refined;
    }
}

/// The factor automaton over the classes of a right invariant partition.
///
/// Transition degrees, initial degrees and terminal degrees are joined over
/// class members. Right invariance is validated up front; a violating
/// partition is rejected with a witness rather than silently changing the
/// language.
pub fn factor_automaton(
    a: &FuzzyAutomaton,
    p: &Partition,
) -> Result<FuzzyAutomaton, ReductionError> {
    check_right_invariant(a, p)?;
    let lm = a.structure();
    let blocks = p.blocks();
    let k = blocks.len();
    let mut delta = Vec::with_capacity(a.x_alphabet().len());
    for (_, dx) in a.matrices() {
        let mut m = FuzzyMatrix::zeros(lm, k);
        for (ci, members_i) in blocks.iter().enumerate() {
            for (cj, members_j) in blocks.iter().enumerate() {
                let joined = lm.big_join(
                    members_i
                        .iter()
                        .flat_map(|&i| members_j.iter().map(move |&j| (i, j)))
                        .map(|(i, j)| dx.get(i, j)),
                );
                m.set(ci, cj, joined);
            }
        }
        delta.push(m);
    }
    let mut sigma = FuzzyVector::zeros(k);
    let mut tau = FuzzyVector::zeros(k);
    let mut labels = Vec::with_capacity(k);
    for (c, members) in blocks.iter().enumerate() {
        sigma.set(c, lm.big_join(members.iter().map(|&s| a.sigma().get(s))));
        tau.set(c, lm.big_join(members.iter().map(|&s| a.tau().get(s))));
        let names: Vec<&str> = members.iter().map(|&s| a.state_labels()[s].as_str()).collect();
        labels.push(format!("{{{}}}", names.join(",")));
    }
    FuzzyAutomaton::new(lm, a.x_alphabet().to_vec(), delta, sigma, tau, labels)
        .map_err(|e| match e {
            SynthesisError::Shape(msg) => panic!("factor automaton shape: {msg}"),
            _ => unreachable!(),
        })
}

/// Right invariance of a crisp partition on a nondeterministic automaton:
/// the transition condition over every alphabet symbol plus preservation of
/// the final-state set.
pub fn nfa_right_invariant(a: &Nfa, p: &Partition) -> bool {
    if p.n_states() != a.n_states() {
        return false;
    }
    let n = a.n_states();
    for (_, m) in a.matrices() {
        for from in 0..n {
            for to in 0..n {
                // (E∘δ)(from,to) = 1 iff some from' ≡ from steps to `to`.
                let lhs = (0..n).any(|f2| p.same_class(from, f2) && m.get(f2, to));
                if !lhs {
                    continue;
                }
                let rhs = (0..n).any(|t2| p.same_class(to, t2) && m.get(from, t2));
                if !rhs {
                    return false;
                }
            }
        }
    }
    (0..n).all(|s| {
        let joined = (0..n).any(|s2| p.same_class(s, s2) && a.is_final(s2));
        joined == a.is_final(s)
    })
}

/// The factor of a nondeterministic automaton by a partition whose class of
/// the initial state comes first (class indices follow smallest members, and
/// state 0 is always a smallest member of its class).
pub fn factor_nfa(a: &Nfa, p: &Partition) -> Nfa {
    let blocks = p.blocks();
    let k = blocks.len();
    let mut delta = Vec::new();
    let mut alphabet = Vec::new();
    for (s, m) in a.matrices() {
        let mut fm = BoolMat::zeros(k);
        for (i, j) in m.edges() {
            fm.set(p.class_of(i), p.class_of(j), true);
        }
        alphabet.push(s);
        delta.push(fm);
    }
    let finals = blocks
        .iter()
        .map(|members| members.iter().any(|&s| a.is_final(s)))
        .collect();
    Nfa::new(k, alphabet, delta, finals).expect("factor preserves shape")
}
