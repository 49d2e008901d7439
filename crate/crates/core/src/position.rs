//! The position automaton of a crisp regular expression.
//!
//! States are `0` (initial) plus the symbol positions of the expression,
//! numbered left to right from 1. Position `j` is reachable from `i` on
//! symbol `s` when the symbol at `j` is `s` and `j` follows `i`; the follow
//! sets come from the usual one-pass structural recursion over nullable,
//! first and last.

use std::fmt;

use thiserror::Error;

use crate::regex::{FuzzyRegex, Sym, Word};

/// A square Boolean matrix (one per alphabet symbol in an [`Nfa`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolMat {
    n: usize,
    bits: Vec<bool>,
}

impl BoolMat {
    pub fn zeros(n: usize) -> BoolMat {
        BoolMat {
            n,
            bits: vec![false; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    /// The pairs `(i, j)` with a true entry, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).filter_map(move |j| self.get(i, j).then_some((i, j))))
    }
}

/// A nondeterministic automaton over the working alphabet, with a single
/// initial state `0` and Boolean transition matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Nfa {
    n_states: usize,
    alphabet: Vec<Sym>,
    delta: Vec<BoolMat>,
    finals: Vec<bool>,
}

#[derive(Debug, Error, PartialEq)]
pub enum NfaError {
    #[error("symbol `{0}` is not in the automaton alphabet")]
    UnknownSymbol(Sym),
    #[error("inconsistent automaton shape: {0}")]
    Malformed(String),
}

impl Nfa {
    /// Builds an automaton from explicit parts. The alphabet is brought into
    /// canonical order (base letters before scalar letters).
    pub fn new(
        n_states: usize,
        alphabet: Vec<Sym>,
        delta: Vec<BoolMat>,
        finals: Vec<bool>,
    ) -> Result<Nfa, NfaError> {
        if alphabet.len() != delta.len() {
            return Err(NfaError::Malformed(format!(
                "{} alphabet symbols but {} transition matrices",
                alphabet.len(),
                delta.len()
            )));
        }
        if finals.len() != n_states {
            return Err(NfaError::Malformed(format!(
                "{} states but {} final flags",
                n_states,
                finals.len()
            )));
        }
        if delta.iter().any(|m| m.dim() != n_states) {
            return Err(NfaError::Malformed("transition matrix dimension mismatch".into()));
        }
        let mut paired: Vec<(Sym, BoolMat)> = alphabet.into_iter().zip(delta).collect();
        paired.sort_by_key(|(s, _)| *s);
        let (alphabet, delta) = paired.into_iter().unzip();
        Ok(Nfa {
            n_states,
            alphabet,
            delta,
            finals,
        })
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn alphabet(&self) -> &[Sym] {
        &self.alphabet
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn delta(&self, s: Sym) -> Option<&BoolMat> {
        let idx = self.alphabet.iter().position(|&a| a == s)?;
        Some(&self.delta[idx])
    }

    pub fn matrices(&self) -> impl Iterator<Item = (Sym, &BoolMat)> {
        self.alphabet.iter().copied().zip(self.delta.iter())
    }

    /// One subset-construction step from a set of states.
    pub fn step(&self, from: &[bool], s: Sym) -> Result<Vec<bool>, NfaError> {
        let m = self.delta(s).ok_or(NfaError::UnknownSymbol(s))?;
        let mut next = vec![false; self.n_states];
        for (i, &active) in from.iter().enumerate() {
            if !active {
                continue;
            }
            for (j, slot) in next.iter_mut().enumerate() {
                if m.get(i, j) {
                    *slot = true;
                }
            }
        }
        Ok(next)
    }
}

/// Classic subset-reachability acceptance from state 0.
pub fn nfa_accepts(a: &Nfa, v: &Word) -> Result<bool, NfaError> {
    let mut current = vec![false; a.n_states()];
    current[0] = true;
    for &s in v.syms() {
        current = a.step(&current, s)?;
        if current.iter().all(|&b| !b) {
            break;
        }
    }
    Ok(current
        .iter()
        .zip(a.finals())
        .any(|(&active, &fin)| active && fin))
}

// Per-node position sets for the Glushkov construction.
struct PosInfo {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = a.to_vec();
    for &p in b {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out.sort_unstable();
    out
}

fn analyze(
    r: &FuzzyRegex,
    symbols: &mut Vec<Sym>,
    follow: &mut Vec<Vec<usize>>,
) -> PosInfo {
    match r {
        FuzzyRegex::Empty => PosInfo {
            nullable: false,
            first: vec![],
            last: vec![],
        },
        FuzzyRegex::Epsilon => PosInfo {
            nullable: true,
            first: vec![],
            last: vec![],
        },
        FuzzyRegex::Sym(s) => {
            symbols.push(*s);
            follow.push(Vec::new());
            let p = symbols.len(); // positions are 1-based
            PosInfo {
                nullable: false,
                first: vec![p],
                last: vec![p],
            }
        }
        FuzzyRegex::Scalar(_, _) => {
            panic!("the position construction expects a crisp expression (lift first)")
        }
        FuzzyRegex::Sum(a, b) => {
            let ia = analyze(a, symbols, follow);
            let ib = analyze(b, symbols, follow);
            PosInfo {
                nullable: ia.nullable || ib.nullable,
                first: union(&ia.first, &ib.first),
                last: union(&ia.last, &ib.last),
            }
        }
        FuzzyRegex::Concat(a, b) => {
            let ia = analyze(a, symbols, follow);
            let ib = analyze(b, symbols, follow);
            for &p in &ia.last {
                follow[p - 1] = union(&follow[p - 1], &ib.first);
            }
            PosInfo {
                nullable: ia.nullable && ib.nullable,
                first: if ia.nullable {
                    union(&ia.first, &ib.first)
                } else {
                    ia.first
                },
                last: if ib.nullable {
                    union(&ib.last, &ia.last)
                } else {
                    ib.last
                },
            }
        }
        FuzzyRegex::Star(inner) => {
            let info = analyze(inner, symbols, follow);
            for &p in &info.last {
                follow[p - 1] = union(&follow[p - 1], &info.first);
            }
            PosInfo {
                nullable: true,
                first: info.first,
                last: info.last,
            }
        }
    }
}

/// Builds the position automaton of a crisp regular expression.
///
/// The automaton has `sym_count + 1` states: state 0 is initial, state `p`
/// stands for the `p`-th symbol occurrence. State 0 is final exactly when
/// the expression is nullable.
///
/// Panics if the expression contains scalar nodes; run [`crate::lift::lift`]
/// first.
pub fn glushkov(r: &FuzzyRegex) -> Nfa {
    let mut symbols = Vec::new();
    let mut follow = Vec::new();
    let info = analyze(r, &mut symbols, &mut follow);

    let m = symbols.len();
    let n = m + 1;
    let mut alphabet: Vec<Sym> = symbols.clone();
    alphabet.sort_unstable();
    alphabet.dedup();

    let mut delta: Vec<BoolMat> = alphabet.iter().map(|_| BoolMat::zeros(n)).collect();
    let mut connect = |i: usize, j: usize| {
        let s = symbols[j - 1];
        let idx = alphabet.iter().position(|&a| a == s).unwrap();
        delta[idx].set(i, j, true);
    };
    for &j in &info.first {
        connect(0, j);
    }
    for (i, succs) in follow.iter().enumerate() {
        for &j in succs {
            connect(i + 1, j);
        }
    }

    let mut finals = vec![false; n];
    finals[0] = info.nullable;
    for &p in &info.last {
        finals[p] = true;
    }

    Nfa {
        n_states: n,
        alphabet,
        delta,
        finals,
    }
}

impl fmt::Display for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.n_states)?;
        for (s, m) in self.matrices() {
            let edges: Vec<String> = m
                .edges()
                .map(|(i, j)| format!("{i}->{j}"))
                .collect();
            writeln!(f, "{s}: {}", edges.join(" "))?;
        }
        let finals: Vec<String> = (0..self.n_states)
            .filter(|&i| self.finals[i])
            .map(|i| i.to_string())
            .collect();
        write!(f, "finals: {{{}}}", finals.join(","))
    }
}
