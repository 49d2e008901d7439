//! Dense matrix and vector kernels over an ℓ-monoid.
//!
//! Composition is the join-of-products matrix product, with the join over a
//! row taken left to right so results are deterministic regardless of any
//! future parallelism (max is order-insensitive for the built-ins anyway).
//! Matrices are row-major; the state counts in this crate are small, so no
//! sparse storage is attempted.

use std::fmt;

use thiserror::Error;

use crate::algebra::{LMonoid, Value};

#[derive(Debug, Error, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operands live in different structures")]
    StructureMismatch,
    #[error("relation is not reflexive: diagonal entry {index} is not the unit")]
    NotReflexive { index: usize },
}

/// A square matrix of degrees together with its ambient structure.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyMatrix {
    lm: LMonoid,
    n: usize,
    entries: Vec<Value>,
}

impl FuzzyMatrix {
    pub fn zeros(lm: LMonoid, n: usize) -> FuzzyMatrix {
        FuzzyMatrix {
            lm,
            n,
            entries: vec![Value::ZERO; n * n],
        }
    }

    /// The crisp identity (the extended transition relation at ε).
    pub fn identity(lm: LMonoid, n: usize) -> FuzzyMatrix {
        let mut m = FuzzyMatrix::zeros(lm, n);
        for i in 0..n {
            m.set(i, i, lm.one());
        }
        m
    }

    pub fn from_rows(lm: LMonoid, rows: &[Vec<Value>]) -> FuzzyMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        FuzzyMatrix {
            lm,
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn structure(&self) -> LMonoid {
        self.lm
    }

    pub fn get(&self, i: usize, j: usize) -> Value {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Value) {
        self.entries[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Value] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_one())
    }

    /// Entrywise equality up to the structure tolerance.
    pub fn approx_eq(&self, other: &FuzzyMatrix) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| self.lm.value_eq(*a, *b))
    }

    /// Entrywise `≤` up to the structure tolerance.
    pub fn le(&self, other: &FuzzyMatrix) -> bool {
        self.n == other.n
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| self.lm.value_le(*a, *b))
    }

    /// The restriction to the given states, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> FuzzyMatrix {
        let mut out = FuzzyMatrix::zeros(self.lm, keep.len());
        for (i2, &i) in keep.iter().enumerate() {
            for (j2, &j) in keep.iter().enumerate() {
                out.set(i2, j2, self.get(i, j));
            }
        }
        out
    }
}

impl fmt::Display for FuzzyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A vector of degrees (a fuzzy subset of the state set).
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyVector {
    entries: Vec<Value>,
}

impl FuzzyVector {
    pub fn zeros(n: usize) -> FuzzyVector {
        FuzzyVector {
            entries: vec![Value::ZERO; n],
        }
    }

    /// The crisp unit vector at `index`.
    pub fn unit(lm: LMonoid, n: usize, index: usize) -> FuzzyVector {
        let mut v = FuzzyVector::zeros(n);
        v.entries[index] = lm.one();
        v
    }

    pub fn from_values(entries: Vec<Value>) -> FuzzyVector {
        FuzzyVector { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Value {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: Value) {
        self.entries[i] = v;
    }

    pub fn values(&self) -> &[Value] {
        &self.entries
    }

    pub fn approx_eq(&self, other: &FuzzyVector, lm: LMonoid) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| lm.value_eq(*a, *b))
    }

    pub fn restrict(&self, keep: &[usize]) -> FuzzyVector {
        FuzzyVector {
            entries: keep.iter().map(|&i| self.entries[i]).collect(),
        }
    }
}

fn check_dims(left: usize, right: usize) -> Result<(), LinalgError> {
    if left == right {
        Ok(())
    } else {
        Err(LinalgError::DimensionMismatch { left, right })
    }
}

/// Relation composition: `(R∘S)(a,b) = ⋁_c R(a,c) ⊗ S(c,b)`.
pub fn compose(r: &FuzzyMatrix, s: &FuzzyMatrix) -> Result<FuzzyMatrix, LinalgError> {
    check_dims(r.n, s.n)?;
    if r.lm != s.lm {
        return Err(LinalgError::StructureMismatch);
    }
    let lm = r.lm;
    let n = r.n;
    let mut out = FuzzyMatrix::zeros(lm, n);
    for a in 0..n {
        for b in 0..n {
            let mut acc = Value::ZERO;
            for c in 0..n {
                acc = lm.join(acc, lm.otimes(r.get(a, c), s.get(c, b)));
            }
            out.set(a, b, acc);
        }
    }
    Ok(out)
}

/// `(f∘R)(a) = ⋁_b f(b) ⊗ R(b,a)`.
pub fn vec_mat(f: &FuzzyVector, r: &FuzzyMatrix) -> Result<FuzzyVector, LinalgError> {
    check_dims(f.dim(), r.n)?;
    let lm = r.lm;
    let mut out = FuzzyVector::zeros(r.n);
    for a in 0..r.n {
        let mut acc = Value::ZERO;
        for b in 0..r.n {
            acc = lm.join(acc, lm.otimes(f.get(b), r.get(b, a)));
        }
        out.set(a, acc);
    }
    Ok(out)
}

/// `(R∘f)(a) = ⋁_b R(a,b) ⊗ f(b)`.
pub fn mat_vec(r: &FuzzyMatrix, f: &FuzzyVector) -> Result<FuzzyVector, LinalgError> {
    check_dims(r.n, f.dim())?;
    let lm = r.lm;
    let mut out = FuzzyVector::zeros(r.n);
    for a in 0..r.n {
        let mut acc = Value::ZERO;
        for b in 0..r.n {
            acc = lm.join(acc, lm.otimes(r.get(a, b), f.get(b)));
        }
        out.set(a, acc);
    }
    Ok(out)
}

/// `f∘g = ⋁_a f(a) ⊗ g(a)`.
pub fn vec_vec(f: &FuzzyVector, g: &FuzzyVector, lm: LMonoid) -> Result<Value, LinalgError> {
    check_dims(f.dim(), g.dim())?;
    let mut acc = Value::ZERO;
    for a in 0..f.dim() {
        acc = lm.join(acc, lm.otimes(f.get(a), g.get(a)));
    }
    Ok(acc)
}

/// The least transitive relation containing a reflexive `R`, i.e. `R^n`.
///
/// Computed by repeated squaring: reflexivity makes the power sequence
/// nondecreasing with fixpoint `R^n`, so squaring `⌈log₂ n⌉` times reaches
/// it; an early exit fires as soon as a squaring changes nothing.
pub fn reflexive_transitive_closure(r: &FuzzyMatrix) -> Result<FuzzyMatrix, LinalgError> {
    if let Some(index) = (0..r.n).find(|&i| !r.get(i, i).is_one()) {
        return Err(LinalgError::NotReflexive { index });
    }
    let mut current = r.clone();
    let mut covered = 1usize; // current == R^covered
    while covered < r.n.max(1) {
        let squared = compose(&current, &current)?;
        if squared == current {
            break;
        }
        current = squared;
        covered *= 2;
    }
    Ok(current)
}
