//! Seeded random expression and automaton corpora, plus the oracle check
//! used by the fuzz harness: a synthesized automaton must agree with the
//! direct evaluator on every short word.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{LMonoid, StructureKind, Value};
use crate::lift::lift;
use crate::position::{glushkov, BoolMat, Nfa};
use crate::regex::{words_up_to, FuzzyRegex, Letter, Sym, Word};
use crate::runtime::degree;
use crate::synthesis::{synthesize_full, synthesize_reduced};

/// Shape of a random expression corpus.
#[derive(Debug, Clone)]
pub struct RegexConfig {
    pub max_depth: usize,
    pub alphabet: Vec<Letter>,
    pub scalars: Vec<f64>,
}

impl RegexConfig {
    /// The standard fuzzing corpus: depth up to 4, up to three letters,
    /// scalars from a small grid (restricted to `{0, 1}` for the Boolean
    /// carrier).
    pub fn standard(kind: StructureKind, alphabet_size: usize) -> RegexConfig {
        let letters = ['x', 'y', 'z'];
        let scalars = match kind {
            StructureKind::Boolean => vec![0.0, 1.0],
            _ => vec![0.0, 0.25, 0.5, 0.75, 1.0],
        };
        RegexConfig {
            max_depth: 4,
            alphabet: letters[..alphabet_size.clamp(1, 3)]
                .iter()
                .map(|&c| Letter::new(c).unwrap())
                .collect(),
            scalars,
        }
    }
}

/// A deterministic per-case generator: the same `(seed, case)` pair always
/// yields the same stream, so failures reproduce and cases can be sharded.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ case.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn node<R: Rng>(rng: &mut R, cfg: &RegexConfig, depth: usize) -> FuzzyRegex {
    let leaf = |rng: &mut R| match rng.random_range(0..10u32) {
        0 => FuzzyRegex::Epsilon,
        1 => FuzzyRegex::Empty,
        _ => {
            let l = cfg.alphabet[rng.random_range(0..cfg.alphabet.len())];
            FuzzyRegex::sym(l)
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    match rng.random_range(0..10u32) {
        0..=2 => leaf(rng),
        3 | 4 => FuzzyRegex::sum(node(rng, cfg, depth - 1), node(rng, cfg, depth - 1)),
        5 | 6 => FuzzyRegex::concat(node(rng, cfg, depth - 1), node(rng, cfg, depth - 1)),
        7 | 8 => {
            let raw = cfg.scalars[rng.random_range(0..cfg.scalars.len())];
            FuzzyRegex::scalar(Value::new(raw).unwrap(), node(rng, cfg, depth - 1))
        }
        _ => FuzzyRegex::star(node(rng, cfg, depth - 1)),
    }
}

/// Draws a random expression of depth at most `cfg.max_depth`.
pub fn random_regex<R: Rng>(rng: &mut R, cfg: &RegexConfig) -> FuzzyRegex {
    node(rng, cfg, cfg.max_depth)
}

/// Draws a random crisp automaton over the given alphabet (initial state 0,
/// roughly a quarter of the possible edges, at least one final state).
pub fn random_nfa<R: Rng>(rng: &mut R, n_states: usize, alphabet: &[Sym]) -> Nfa {
    let mut delta = Vec::with_capacity(alphabet.len());
    for _ in alphabet {
        let mut m = BoolMat::zeros(n_states);
        for i in 0..n_states {
            for j in 0..n_states {
                if rng.random_range(0..4u32) == 0 {
                    m.set(i, j, true);
                }
            }
        }
        delta.push(m);
    }
    let mut finals: Vec<bool> = (0..n_states).map(|_| rng.random_range(0..3u32) == 0).collect();
    if !finals.iter().any(|&f| f) {
        finals[rng.random_range(0..n_states)] = true;
    }
    Nfa::new(n_states, alphabet.to_vec(), delta, finals).expect("consistent shape")
}

/// A disagreement between the direct evaluator and a synthesized automaton.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub word: Word,
    pub oracle: Value,
    pub full: Value,
    pub reduced: Value,
}

/// Builds the full and reduced automata of `alpha` and checks both against
/// the direct evaluator on every word up to `max_len` over the expression's
/// own letters. Degrees must agree within the structure tolerance.
pub fn verify_case(
    alpha: &FuzzyRegex,
    lm: LMonoid,
    max_len: usize,
) -> Result<(), Box<Mismatch>> {
    let lr = lift(alpha, lm);
    let nfa = glushkov(&lr.alpha_r);
    let full = synthesize_full(&nfa, &lr, lm).expect("synthesis succeeds on lifted input");
    let reduced = synthesize_reduced(&nfa, &lr, lm).expect("synthesis succeeds on lifted input");
    let letters: Vec<Sym> = alpha
        .alphabet()
        .into_iter()
        .filter(|s| matches!(s, Sym::Letter(_)))
        .collect();
    let words = words_up_to(&letters, max_len).expect("corpus words fit the cap");
    for word in words {
        let oracle = crate::regex::eval_direct(alpha, &word, lm);
        let got_full = degree(&full, &word).expect("letters come from the expression");
        let got_reduced = degree(&reduced, &word).expect("letters come from the expression");
        if !lm.value_eq(oracle, got_full) || !lm.value_eq(oracle, got_reduced) {
            return Err(Box::new(Mismatch {
                word,
                oracle,
                full: got_full,
                reduced: got_reduced,
            }));
        }
    }
    Ok(())
}
