//! Shared inputs for the benchmark targets.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fuzzre::algebra::{LMonoid, Value};
use fuzzre::linalg::FuzzyMatrix;

/// The worked examples exercised throughout the test suite.
pub fn worked_expressions() -> Vec<(&'static str, &'static str)> {
    vec![
        ("godel_nested_star", "0.2((0.1(xy)*)*+y)"),
        ("product_two_scalar", "(0.1x*)(yx+0.8y)*"),
        ("single_letter", "xx*+0.1x*"),
    ]
}

/// A synthetic expression with `groups` scalared groups, giving a position
/// automaton of roughly `4 * groups` states and a scalar alphabet that grows
/// with `groups`.
pub fn layered_expression(groups: usize) -> String {
    let mut out = String::new();
    for g in 0..groups {
        if g > 0 {
            out.push('+');
        }
        let scalar = (g % 9 + 1) as f64 / 10.0;
        out.push_str(&format!("{scalar}(xy)*{scalar}y"));
    }
    format!("({out})*")
}

/// A random reflexive matrix, the input shape the closure kernel sees.
pub fn random_reflexive_matrix(lm: LMonoid, n: usize, seed: u64) -> FuzzyMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = FuzzyMatrix::zeros(lm, n);
    for i in 0..n {
        for j in 0..n {
            if rng.random_range(0..4u32) == 0 {
                m.set(i, j, Value::new(rng.random::<f64>()).unwrap());
            }
        }
        m.set(i, i, lm.one());
    }
    m
}
