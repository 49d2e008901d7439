//! Serialization of automata as JSON documents and DOT graphs.
//!
//! The JSON document is the interchange format shared by the CLI, the
//! fixture files and the golden tests. Degrees serialize as plain JSON
//! numbers in shortest round-trip decimal form, so export → import → export
//! is byte-identical and the files stay human-readable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{LMonoid, StructureKind, Value};
use crate::linalg::{FuzzyMatrix, FuzzyVector};
use crate::position::{BoolMat, Nfa};
use crate::regex::Sym;
use crate::synthesis::FuzzyAutomaton;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown structure `{0}`")]
    UnknownStructure(String),
    #[error("bad symbol name `{0}`")]
    BadSymbol(String),
    #[error("degree {0} is outside [0, 1]")]
    BadDegree(f64),
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
    #[error("document is not a crisp automaton: {0}")]
    NotCrisp(String),
}

/// Structure header of a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub name: String,
    pub tolerance: f64,
}

/// The on-disk form of an automaton: labels, alphabet, initial and terminal
/// vectors, and one matrix per alphabet symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AutomatonDocument {
    pub structure: StructureDoc,
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub sigma: Vec<f64>,
    pub transitions: BTreeMap<String, Vec<Vec<f64>>>,
    pub tau: Vec<f64>,
}

impl AutomatonDocument {
    pub fn from_json(text: &str) -> Result<AutomatonDocument, DocumentError> {
        let doc: AutomatonDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn structure(&self) -> Result<LMonoid, DocumentError> {
        let kind = StructureKind::from_name(&self.structure.name)
            .map_err(|_| DocumentError::UnknownStructure(self.structure.name.clone()))?;
        LMonoid::with_tolerance(kind, self.structure.tolerance)
            .map_err(|_| DocumentError::Inconsistent("bad tolerance".into()))
    }

    fn validate(&self) -> Result<(), DocumentError> {
        let lm = self.structure()?;
        let n = self.states.len();
        if self.sigma.len() != n || self.tau.len() != n {
            return Err(DocumentError::Inconsistent(format!(
                "{} states but sigma/tau have {}/{} entries",
                n,
                self.sigma.len(),
                self.tau.len()
            )));
        }
        for name in &self.alphabet {
            if Sym::parse(name).is_none() {
                return Err(DocumentError::BadSymbol(name.clone()));
            }
            if !self.transitions.contains_key(name) {
                return Err(DocumentError::Inconsistent(format!(
                    "alphabet symbol `{name}` has no transition matrix"
                )));
            }
        }
        if self.transitions.len() != self.alphabet.len() {
            return Err(DocumentError::Inconsistent(
                "transition keys do not match the alphabet".into(),
            ));
        }
        for (name, rows) in &self.transitions {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(DocumentError::Inconsistent(format!(
                    "matrix for `{name}` is not {n}x{n}"
                )));
            }
        }
        for &raw in self
            .sigma
            .iter()
            .chain(self.tau.iter())
            .chain(self.transitions.values().flatten().flatten())
        {
            lm.value(raw).map_err(|_| DocumentError::BadDegree(raw))?;
        }
        Ok(())
    }

    pub fn from_automaton(a: &FuzzyAutomaton) -> AutomatonDocument {
        let lm = a.structure();
        let mut transitions = BTreeMap::new();
        for (x, m) in a.matrices() {
            let rows: Vec<Vec<f64>> = (0..m.dim())
                .map(|i| m.row(i).iter().map(|v| v.get()).collect())
                .collect();
            transitions.insert(x.to_string(), rows);
        }
        AutomatonDocument {
            structure: StructureDoc {
                name: lm.kind().name().to_string(),
                tolerance: lm.tolerance(),
            },
            states: a.state_labels().to_vec(),
            alphabet: a.x_alphabet().iter().map(|l| l.to_string()).collect(),
            sigma: a.sigma().values().iter().map(|v| v.get()).collect(),
            transitions,
            tau: a.tau().values().iter().map(|v| v.get()).collect(),
        }
    }

    pub fn to_automaton(&self) -> Result<FuzzyAutomaton, DocumentError> {
        self.validate()?;
        let lm = self.structure()?;
        let n = self.states.len();
        let mut letters = Vec::new();
        let mut delta = Vec::new();
        for name in &self.alphabet {
            let sym = Sym::parse(name).expect("validated");
            let Sym::Letter(l) = sym else {
                return Err(DocumentError::BadSymbol(format!(
                    "`{name}`: scalar letters cannot appear in a fuzzy automaton alphabet"
                )));
            };
            let rows = &self.transitions[name];
            let mut m = FuzzyMatrix::zeros(lm, n);
            for (i, row) in rows.iter().enumerate() {
                for (j, &raw) in row.iter().enumerate() {
                    m.set(i, j, Value::new(raw).expect("validated"));
                }
            }
            letters.push(l);
            delta.push(m);
        }
        let sigma = FuzzyVector::from_values(
            self.sigma
                .iter()
                .map(|&v| Value::new(v).expect("validated"))
                .collect(),
        );
        let tau = FuzzyVector::from_values(
            self.tau
                .iter()
                .map(|&v| Value::new(v).expect("validated"))
                .collect(),
        );
        FuzzyAutomaton::new(lm, letters, delta, sigma, tau, self.states.clone())
            .map_err(|e| DocumentError::Inconsistent(e.to_string()))
    }

    /// Reads a crisp automaton: every degree must be 0 or 1 and the initial
    /// vector must be the unit at state 0.
    pub fn to_nfa(&self) -> Result<Nfa, DocumentError> {
        self.validate()?;
        let n = self.states.len();
        let crisp = |raw: f64, what: &str| -> Result<bool, DocumentError> {
            if raw == 0.0 {
                Ok(false)
            } else if raw == 1.0 {
                Ok(true)
            } else {
                Err(DocumentError::NotCrisp(format!("{what} holds degree {raw}")))
            }
        };
        let expected: Vec<f64> = (0..n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect();
        if self.sigma != expected {
            return Err(DocumentError::NotCrisp(
                "initial vector is not the unit at state 0".into(),
            ));
        }
        let mut alphabet = Vec::new();
        let mut delta = Vec::new();
        for name in &self.alphabet {
            let sym =
                Sym::parse(name).ok_or_else(|| DocumentError::BadSymbol(name.clone()))?;
            let rows = &self.transitions[name];
            let mut m = BoolMat::zeros(n);
            for (i, row) in rows.iter().enumerate() {
                for (j, &raw) in row.iter().enumerate() {
                    m.set(i, j, crisp(raw, "a transition")?);
                }
            }
            alphabet.push(sym);
            delta.push(m);
        }
        let finals = self
            .tau
            .iter()
            .map(|&raw| crisp(raw, "a terminal entry"))
            .collect::<Result<Vec<bool>, _>>()?;
        Nfa::new(n, alphabet, delta, finals)
            .map_err(|e| DocumentError::Inconsistent(e.to_string()))
    }

    pub fn from_nfa(a: &Nfa, lm: LMonoid) -> AutomatonDocument {
        let n = a.n_states();
        let mut transitions = BTreeMap::new();
        let mut alphabet = Vec::new();
        for (s, m) in a.matrices() {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if m.get(i, j) { 1.0 } else { 0.0 })
                        .collect()
                })
                .collect();
            alphabet.push(s.to_string());
            transitions.insert(s.to_string(), rows);
        }
        AutomatonDocument {
            structure: StructureDoc {
                name: lm.kind().name().to_string(),
                tolerance: lm.tolerance(),
            },
            states: (0..n).map(|i| i.to_string()).collect(),
            alphabet,
            sigma: (0..n).map(|i| if i == 0 { 1.0 } else { 0.0 }).collect(),
            transitions,
            tau: a
                .finals()
                .iter()
                .map(|&fin| if fin { 1.0 } else { 0.0 })
                .collect(),
        }
    }
}

fn dot_escape(label: &str) -> String {
    label.replace('"', "\\\"")
}

/// DOT export of a fuzzy automaton. Only nonzero transitions are drawn,
/// labeled `letter/degree` with trailing zeros trimmed; nonzero-terminal
/// states are double circles annotated with their degree, and the initial
/// states are marked by incoming arrows.
pub fn fuzzy_to_dot(a: &FuzzyAutomaton) -> String {
    let mut out = String::from("digraph fuzzy_automaton {\n  rankdir=LR;\n");
    for (i, label) in a.state_labels().iter().enumerate() {
        let tau = a.tau().get(i);
        if tau.is_zero() {
            out.push_str(&format!(
                "  q{i} [shape=circle, label=\"{}\"];\n",
                dot_escape(label)
            ));
        } else {
            out.push_str(&format!(
                "  q{i} [shape=doublecircle, label=\"{} / {}\"];\n",
                dot_escape(label),
                tau
            ));
        }
    }
    for (i, v) in a.sigma().values().iter().enumerate() {
        if !v.is_zero() {
            out.push_str(&format!("  __start{i} [shape=point, label=\"\"];\n"));
            out.push_str(&format!("  __start{i} -> q{i};\n"));
        }
    }
    for (x, m) in a.matrices() {
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    out.push_str(&format!("  q{i} -> q{j} [label=\"{x}/{v}\"];\n"));
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

/// DOT export of a crisp automaton; edges carry just the symbol.
pub fn nfa_to_dot(a: &Nfa) -> String {
    let mut out = String::from("digraph nfa {\n  rankdir=LR;\n");
    for i in 0..a.n_states() {
        let shape = if a.is_final(i) { "doublecircle" } else { "circle" };
        out.push_str(&format!("  q{i} [shape={shape}, label=\"{i}\"];\n"));
    }
    out.push_str("  __start [shape=point, label=\"\"];\n  __start -> q0;\n");
    for (s, m) in a.matrices() {
        for (i, j) in m.edges() {
            out.push_str(&format!("  q{i} -> q{j} [label=\"{s}\"];\n"));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::lift;
    use crate::position::glushkov;
    use crate::regex::parse;
    use crate::synthesis::synthesize_full;

    fn build(text: &str, lm: LMonoid) -> FuzzyAutomaton {
        let alpha = parse(text, lm).unwrap();
        let lr = lift(&alpha, lm);
        synthesize_full(&glushkov(&lr.alpha_r), &lr, lm).unwrap()
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let lm = LMonoid::new(StructureKind::Product);
        let a = build("(0.1x*)(yx+0.8y)*", lm);
        let doc = AutomatonDocument::from_automaton(&a);
        let first = doc.to_json();
        let reread = AutomatonDocument::from_json(&first).unwrap();
        let second = reread.to_json();
        assert_eq!(first, second);
        assert!(reread.to_automaton().unwrap().approx_eq(&a));
    }

    #[test]
    fn nfa_round_trips_through_the_document() {
        let lm = LMonoid::new(StructureKind::Godel);
        let alpha = parse("xx*+0.1x*", lm).unwrap();
        let nfa = glushkov(&lift(&alpha, lm).alpha_r);
        let doc = AutomatonDocument::from_nfa(&nfa, LMonoid::new(StructureKind::Boolean));
        let back = doc.to_nfa().unwrap();
        assert_eq!(back, nfa);
    }

    #[test]
    fn dot_edges_carry_degree_labels() {
        let lm = LMonoid::new(StructureKind::Godel);
        let a = build("0.2((0.1(xy)*)*+y)", lm);
        let dot = fuzzy_to_dot(&a);
        assert!(dot.contains("q0 -> q3 [label=\"x/0.1\"]"));
        assert!(dot.contains("q3 -> q4 [label=\"y/1\"]"));
        assert!(dot.contains("doublecircle"));
    }

    #[test]
    fn empty_automaton_renders_an_isolated_initial_node() {
        let lm = LMonoid::new(StructureKind::Godel);
        let a = build("empty", lm);
        let dot = fuzzy_to_dot(&a);
        assert!(dot.contains("__start0 -> q0"));
        assert!(!dot.contains("->q1"));
    }

    #[test]
    fn validation_rejects_inconsistent_documents() {
        let lm = LMonoid::new(StructureKind::Godel);
        let a = build("x+0.5x", lm);
        let mut doc = AutomatonDocument::from_automaton(&a);
        doc.tau.pop();
        assert!(matches!(
            AutomatonDocument::from_json(&doc.to_json()),
            Err(DocumentError::Inconsistent(_))
        ));

        let mut doc = AutomatonDocument::from_automaton(&a);
        doc.structure.name = "heyting".into();
        assert!(matches!(
            AutomatonDocument::from_json(&doc.to_json()),
            Err(DocumentError::UnknownStructure(_))
        ));
    }
}
