//! Integral lattice-ordered monoids over the real unit interval.
//!
//! An ℓ-monoid is an algebra `(L, ∧, ∨, ⊗, 0, 1, e)` where `(L, ∧, ∨, 0, 1)`
//! is a bounded lattice, `(L, ⊗, e)` is a monoid, `0` annihilates, and `⊗`
//! distributes over `∨`. All structures provided here are *integral*: the
//! monoid unit `e` coincides with the lattice top `1`. Degrees are
//! represented as `f64` values in `[0, 1]`; the Boolean structure restricts
//! the carrier to `{0, 1}`.

use std::fmt;

use thiserror::Error;

/// Errors raised when building structures or carrier values.
#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("unknown structure name `{0}` (expected godel, product, lukasiewicz or boolean)")]
    UnknownStructure(String),
    #[error("tolerance must be a finite non-negative real, got {0}")]
    InvalidTolerance(f64),
    #[error("value {0} is outside the carrier [0, 1]")]
    OutOfCarrier(f64),
    #[error("value {0} is not a Boolean degree (the Boolean carrier is {{0, 1}})")]
    NotBoolean(f64),
}

/// A single element of the carrier `L ⊆ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Value(f64);

impl Value {
    /// The bottom element `0`.
    pub const ZERO: Value = Value(0.0);
    /// The top element `1`, which is also the monoid unit `e`.
    pub const ONE: Value = Value(1.0);

    /// Wraps a raw degree, rejecting anything outside `[0, 1]`.
    pub fn new(raw: f64) -> Result<Value, AlgebraError> {
        if raw.is_finite() && (0.0..=1.0).contains(&raw) {
            Ok(Value(raw))
        } else {
            Err(AlgebraError::OutOfCarrier(raw))
        }
    }

    /// The raw degree.
    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1.0
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The four built-in structures on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Godel,
    Product,
    Lukasiewicz,
    Boolean,
}

impl StructureKind {
    /// All built-in structures, in a fixed order.
    pub const ALL: [StructureKind; 4] = [
        StructureKind::Godel,
        StructureKind::Product,
        StructureKind::Lukasiewicz,
        StructureKind::Boolean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Godel => "godel",
            StructureKind::Product => "product",
            StructureKind::Lukasiewicz => "lukasiewicz",
            StructureKind::Boolean => "boolean",
        }
    }

    pub fn from_name(name: &str) -> Result<StructureKind, AlgebraError> {
        match name {
            "godel" => Ok(StructureKind::Godel),
            "product" => Ok(StructureKind::Product),
            "lukasiewicz" => Ok(StructureKind::Lukasiewicz),
            "boolean" => Ok(StructureKind::Boolean),
            other => Err(AlgebraError::UnknownStructure(other.to_string())),
        }
    }

    /// Default comparison tolerance: min/max arithmetic is exact on binary
    /// floats, products and truncated sums are not.
    pub fn default_tolerance(self) -> f64 {
        match self {
            StructureKind::Godel | StructureKind::Boolean => 0.0,
            StructureKind::Product | StructureKind::Lukasiewicz => 1e-9,
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An integral ℓ-monoid: the structure selection plus the tolerance used for
/// value comparisons. Immutable and freely copyable; all operations are pure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LMonoid {
    kind: StructureKind,
    tolerance: f64,
}

/// Builds one of the four built-in structures with an explicit tolerance.
pub fn make_structure(name: &str, tolerance: f64) -> Result<LMonoid, AlgebraError> {
    let kind = StructureKind::from_name(name)?;
    LMonoid::with_tolerance(kind, tolerance)
}

impl LMonoid {
    /// A structure with its default tolerance.
    pub fn new(kind: StructureKind) -> LMonoid {
        LMonoid {
            kind,
            tolerance: kind.default_tolerance(),
        }
    }

    pub fn with_tolerance(kind: StructureKind, tolerance: f64) -> Result<LMonoid, AlgebraError> {
        if !tolerance.is_finite() || tolerance < 0.0 {
            return Err(AlgebraError::InvalidTolerance(tolerance));
        }
        Ok(LMonoid { kind, tolerance })
    }

    pub fn kind(self) -> StructureKind {
        self.kind
    }

    pub fn tolerance(self) -> f64 {
        self.tolerance
    }

    /// The bottom element `0`.
    pub fn zero(self) -> Value {
        Value::ZERO
    }

    /// The monoid unit `e`, equal to the lattice top `1` (integrality).
    pub fn one(self) -> Value {
        Value::ONE
    }

    /// Wraps a raw degree, additionally restricting the Boolean carrier to
    /// `{0, 1}`.
    pub fn value(self, raw: f64) -> Result<Value, AlgebraError> {
        let v = Value::new(raw)?;
        if self.kind == StructureKind::Boolean && raw != 0.0 && raw != 1.0 {
            return Err(AlgebraError::NotBoolean(raw));
        }
        Ok(v)
    }

    /// Lattice meet `∧` (min for every built-in).
    pub fn meet(self, a: Value, b: Value) -> Value {
        Value(a.0.min(b.0))
    }

    /// Lattice join `∨` (max for every built-in).
    pub fn join(self, a: Value, b: Value) -> Value {
        Value(a.0.max(b.0))
    }

    /// The multiplication `⊗`. Argument order is preserved even though every
    /// built-in happens to be commutative.
    pub fn otimes(self, a: Value, b: Value) -> Value {
        let raw = match self.kind {
            StructureKind::Godel => a.0.min(b.0),
            StructureKind::Product => a.0 * b.0,
            // The unit cases are taken directly: rounding in `x + 1 - 1`
            // would otherwise break the exact unit law.
            StructureKind::Lukasiewicz if a.0 == 1.0 => b.0,
            StructureKind::Lukasiewicz if b.0 == 1.0 => a.0,
            StructureKind::Lukasiewicz => (a.0 + b.0 - 1.0).max(0.0),
            StructureKind::Boolean => {
                if a.0 != 0.0 && b.0 != 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
        };
        Value(raw)
    }

    /// Join of a finite family; the empty join is `0`.
    pub fn big_join<I>(self, values: I) -> Value
    where
        I: IntoIterator<Item = Value>,
    {
        values
            .into_iter()
            .fold(Value::ZERO, |acc, v| self.join(acc, v))
    }

    /// `⊗`-product of a finite family in order; the empty product is `e`.
    pub fn big_otimes<I>(self, values: I) -> Value
    where
        I: IntoIterator<Item = Value>,
    {
        values
            .into_iter()
            .fold(Value::ONE, |acc, v| self.otimes(acc, v))
    }

    /// Value equality up to the structure tolerance.
    pub fn value_eq(self, a: Value, b: Value) -> bool {
        (a.0 - b.0).abs() <= self.tolerance
    }

    /// `a ≤ b` up to the structure tolerance.
    pub fn value_le(self, a: Value, b: Value) -> bool {
        a.0 <= b.0 + self.tolerance
    }
}

/// Convenience alias for [`LMonoid::big_join`] matching the free-function
/// style used by callers that do not hold a structure method chain.
pub fn big_join<I>(lm: LMonoid, values: I) -> Value
where
    I: IntoIterator<Item = Value>,
{
    lm.big_join(values)
}

/// Convenience alias for [`LMonoid::value_eq`].
pub fn value_eq(lm: LMonoid, a: Value, b: Value) -> bool {
    lm.value_eq(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn godel() -> LMonoid {
        LMonoid::new(StructureKind::Godel)
    }

    #[test]
    fn make_structure_selects_the_multiplication() {
        let g = make_structure("godel", 0.0).unwrap();
        assert_eq!(g.otimes(Value(0.2), Value(0.1)), Value(0.1));

        let p = make_structure("product", 1e-9).unwrap();
        assert_eq!(p.otimes(Value(0.1), Value(0.8)).get(), 0.1 * 0.8);

        let l = make_structure("lukasiewicz", 1e-9).unwrap();
        for x in [0.0, 0.25, 0.7, 1.0] {
            assert_eq!(l.otimes(Value::ONE, Value(x)), Value(x));
        }

        let b = make_structure("boolean", 0.0).unwrap();
        assert_eq!(b.otimes(Value::ONE, Value::ONE), Value::ONE);
        assert_eq!(b.otimes(Value::ONE, Value::ZERO), Value::ZERO);
    }

    #[test]
    fn make_structure_rejects_unknown_names() {
        assert!(matches!(
            make_structure("heyting", 0.0),
            Err(AlgebraError::UnknownStructure(_))
        ));
        assert!(matches!(
            make_structure("godel", -1.0),
            Err(AlgebraError::InvalidTolerance(_))
        ));
    }

    #[test]
    fn big_join_examples() {
        let g = godel();
        assert_eq!(
            g.big_join([Value(0.1), Value(0.2), Value::ZERO]),
            Value(0.2)
        );
        let p = LMonoid::new(StructureKind::Product);
        assert_eq!(p.big_join([]), Value::ZERO);
        let b = LMonoid::new(StructureKind::Boolean);
        assert_eq!(
            b.big_join([Value::ZERO, Value::ONE, Value::ZERO]),
            Value::ONE
        );
    }

    #[test]
    fn value_eq_uses_the_tolerance() {
        let g = godel();
        assert!(g.value_eq(Value(0.2), Value(0.2)));
        assert!(!g.value_eq(Value(0.1), Value(0.2)));

        let p = LMonoid::new(StructureKind::Product);
        let three = p.big_otimes([Value(0.1), Value(0.8), Value(0.8)]);
        assert!(p.value_eq(Value(0.064), three));
    }

    #[test]
    fn boolean_carrier_is_two_valued() {
        let b = LMonoid::new(StructureKind::Boolean);
        assert!(b.value(0.0).is_ok());
        assert!(b.value(1.0).is_ok());
        assert!(matches!(b.value(0.5), Err(AlgebraError::NotBoolean(_))));
        assert!(matches!(
            Value::new(1.5),
            Err(AlgebraError::OutOfCarrier(_))
        ));
    }
}
