//! Fuzzy regular expressions: AST, text syntax, and the direct recursive
//! evaluator of the fuzzy language a given expression denotes.
//!
//! The text grammar is
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor+
//! factor := SCALAR factor | base ('*')*
//! base   := '(' expr ')' | LETTER | 'eps' | 'empty'
//! SCALAR := [0-9]+ ('.' [0-9]+)?
//! LETTER := [a-z]
//! ```
//!
//! with whitespace ignored between tokens. Star binds tightest, then a
//! scalar prefix (which takes the whole following factor including its
//! trailing stars), then juxtaposition, then `+`. The keywords `eps` and
//! `empty` take precedence over reading their characters as single letters.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{LMonoid, Value};

/// Words-per-table cap for [`language_table`].
pub const WORD_TABLE_CAP: usize = 1 << 20;

/// A letter of the base alphabet `X` (lowercase Latin in the text syntax).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(char);

impl Letter {
    pub fn new(c: char) -> Option<Letter> {
        c.is_ascii_lowercase().then_some(Letter(c))
    }

    pub fn as_char(self) -> char {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A symbol of the working alphabet: either a base letter from `X` or a
/// generated scalar letter `$k` from the associated alphabet `Y`.
///
/// Scalar letters only appear in lifted (crisp) expressions; the parser
/// never produces them. The derived order puts `X` before `Y` and is the
/// canonical alphabet order used in automata and serialized documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Letter(Letter),
    Scalar(u32),
}

impl Sym {
    /// Parses `x` or `$3` style symbol names (used by document import).
    pub fn parse(text: &str) -> Option<Sym> {
        let mut chars = text.chars();
        match chars.next()? {
            '$' => {
                let rest = &text[1..];
                if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                rest.parse::<u32>().ok().filter(|&k| k > 0).map(Sym::Scalar)
            }
            c => {
                if chars.next().is_some() {
                    return None;
                }
                Letter::new(c).map(Sym::Letter)
            }
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Letter(l) => write!(f, "{l}"),
            Sym::Scalar(k) => write!(f, "${k}"),
        }
    }
}

impl From<Letter> for Sym {
    fn from(l: Letter) -> Sym {
        Sym::Letter(l)
    }
}

/// A finite word over the working alphabet; the empty word is ε.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Sym>);

impl Word {
    pub fn epsilon() -> Word {
        Word(Vec::new())
    }

    pub fn new(syms: Vec<Sym>) -> Word {
        Word(syms)
    }

    pub fn from_letters(text: &str) -> Option<Word> {
        text.chars()
            .map(|c| Letter::new(c).map(Sym::Letter))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// Parses the display form: `eps` for ε, otherwise a run of letters and
    /// `$k` symbols, e.g. `x$2y`.
    pub fn parse(text: &str) -> Option<Word> {
        if text == "eps" {
            return Some(Word::epsilon());
        }
        let bytes = text.as_bytes();
        let mut syms = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i] == b'$' {
                let start = i + 1;
                let mut end = start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let sym = Sym::parse(&text[i..end])?;
                syms.push(sym);
                i = end;
            } else {
                syms.push(Sym::Letter(Letter::new(bytes[i] as char)?));
                i += 1;
            }
        }
        Some(Word(syms))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn syms(&self) -> &[Sym] {
        &self.0
    }

    pub fn push(&mut self, s: Sym) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut syms = self.0.clone();
        syms.extend_from_slice(&other.0);
        Word(syms)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("eps");
        }
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromIterator<Sym> for Word {
    fn from_iter<I: IntoIterator<Item = Sym>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

/// The AST of a fuzzy regular expression.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyRegex {
    /// ∅ — the constant-zero language.
    Empty,
    /// ε — the unit at the empty word.
    Epsilon,
    /// A single symbol.
    Sym(Sym),
    /// Scalar multiplication `λβ`.
    Scalar(Value, Box<FuzzyRegex>),
    /// Union `β + γ`.
    Sum(Box<FuzzyRegex>, Box<FuzzyRegex>),
    /// Concatenation `βγ`.
    Concat(Box<FuzzyRegex>, Box<FuzzyRegex>),
    /// Kleene star `β*`.
    Star(Box<FuzzyRegex>),
}

impl FuzzyRegex {
    pub fn sym(s: impl Into<Sym>) -> FuzzyRegex {
        FuzzyRegex::Sym(s.into())
    }

    pub fn scalar(v: Value, inner: FuzzyRegex) -> FuzzyRegex {
        FuzzyRegex::Scalar(v, Box::new(inner))
    }

    pub fn sum(a: FuzzyRegex, b: FuzzyRegex) -> FuzzyRegex {
        FuzzyRegex::Sum(Box::new(a), Box::new(b))
    }

    pub fn concat(a: FuzzyRegex, b: FuzzyRegex) -> FuzzyRegex {
        FuzzyRegex::Concat(Box::new(a), Box::new(b))
    }

    pub fn star(inner: FuzzyRegex) -> FuzzyRegex {
        FuzzyRegex::Star(Box::new(inner))
    }

    /// Number of symbol occurrences (the expression length `|α|`).
    pub fn sym_count(&self) -> usize {
        match self {
            FuzzyRegex::Empty | FuzzyRegex::Epsilon => 0,
            FuzzyRegex::Sym(_) => 1,
            FuzzyRegex::Scalar(_, r) | FuzzyRegex::Star(r) => r.sym_count(),
            FuzzyRegex::Sum(a, b) | FuzzyRegex::Concat(a, b) => a.sym_count() + b.sym_count(),
        }
    }

    /// True if the expression contains no scalar multiplication, i.e. it is
    /// an ordinary (crisp) regular expression.
    pub fn is_crisp(&self) -> bool {
        match self {
            FuzzyRegex::Empty | FuzzyRegex::Epsilon | FuzzyRegex::Sym(_) => true,
            FuzzyRegex::Scalar(_, _) => false,
            FuzzyRegex::Star(r) => r.is_crisp(),
            FuzzyRegex::Sum(a, b) | FuzzyRegex::Concat(a, b) => a.is_crisp() && b.is_crisp(),
        }
    }

    /// The distinct symbols occurring in the expression, in canonical order.
    pub fn alphabet(&self) -> Vec<Sym> {
        fn walk(r: &FuzzyRegex, out: &mut Vec<Sym>) {
            match r {
                FuzzyRegex::Empty | FuzzyRegex::Epsilon => {}
                FuzzyRegex::Sym(s) => {
                    if !out.contains(s) {
                        out.push(*s);
                    }
                }
                FuzzyRegex::Scalar(_, r) | FuzzyRegex::Star(r) => walk(r, out),
                FuzzyRegex::Sum(a, b) | FuzzyRegex::Concat(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out
    }
}

/// Parse errors carry the byte position where the problem was found.
#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("scalar {value} at position {pos} is outside [0, 1]")]
    ScalarOutOfRange { pos: usize, value: f64 },
    #[error("scalar {value} at position {pos} is not a Boolean degree")]
    ScalarNotBoolean { pos: usize, value: f64 },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    lm: LMonoid,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, lm: LMonoid) -> Parser<'a> {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            lm,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<FuzzyRegex, ParseError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = FuzzyRegex::sum(acc, self.term()?);
        }
        Ok(acc)
    }

    // A term is one or more factors; a factor starts with a scalar literal,
    // an opening paren, a letter, or a keyword.
    fn term(&mut self) -> Result<FuzzyRegex, ParseError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            if c == b'(' || c.is_ascii_lowercase() || c.is_ascii_digit() {
                acc = FuzzyRegex::concat(acc, self.factor()?);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FuzzyRegex, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let value = self.scalar_literal()?;
                let inner = self.factor()?;
                Ok(FuzzyRegex::scalar(value, inner))
            }
            _ => {
                let mut acc = self.base()?;
                while self.peek() == Some(b'*') {
                    self.pos += 1;
                    acc = FuzzyRegex::star(acc);
                }
                Ok(acc)
            }
        }
    }

    fn base(&mut self) -> Result<FuzzyRegex, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_lowercase() => {
                // Keywords win over reading their characters as letters.
                if self.rest().starts_with(b"eps") {
                    self.pos += 3;
                    return Ok(FuzzyRegex::Epsilon);
                }
                if self.rest().starts_with(b"empty") {
                    self.pos += 5;
                    return Ok(FuzzyRegex::Empty);
                }
                self.pos += 1;
                Ok(FuzzyRegex::sym(Letter::new(c as char).unwrap()))
            }
            Some(c) => Err(self.error(format!("unexpected character `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn rest(&self) -> &[u8] {
        &self.src[self.pos..]
    }

    fn scalar_literal(&mut self) -> Result<Value, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.src.len()
            && self.src[self.pos] == b'.'
            && self
                .src
                .get(self.pos + 1)
                .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let raw: f64 = text
            .parse()
            .map_err(|_| self.error(format!("bad scalar literal `{text}`")))?;
        match self.lm.value(raw) {
            Ok(v) => Ok(v),
            Err(crate::algebra::AlgebraError::NotBoolean(_)) => {
                Err(ParseError::ScalarNotBoolean { pos: start, value: raw })
            }
            Err(_) => Err(ParseError::ScalarOutOfRange { pos: start, value: raw }),
        }
    }
}

/// Parses the text syntax into an AST, validating scalar literals against
/// the given structure's carrier.
pub fn parse(text: &str, lm: LMonoid) -> Result<FuzzyRegex, ParseError> {
    let mut p = Parser::new(text, lm);
    let ast = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(ast)
}

// Precedence levels used by the renderer: a node prints bare only when its
// level is at least the context's minimum.
const LVL_SUM: u8 = 0;
const LVL_CONCAT: u8 = 1;
const LVL_SCALAR: u8 = 2;
const LVL_STAR: u8 = 3;
const LVL_ATOM: u8 = 4;

fn level(r: &FuzzyRegex) -> u8 {
    match r {
        FuzzyRegex::Sum(_, _) => LVL_SUM,
        FuzzyRegex::Concat(_, _) => LVL_CONCAT,
        FuzzyRegex::Scalar(_, _) => LVL_SCALAR,
        FuzzyRegex::Star(_) => LVL_STAR,
        FuzzyRegex::Empty | FuzzyRegex::Epsilon | FuzzyRegex::Sym(_) => LVL_ATOM,
    }
}

fn render_into(r: &FuzzyRegex, min_level: u8, out: &mut String) {
    let parens = level(r) < min_level;
    if parens {
        out.push('(');
    }
    match r {
        FuzzyRegex::Empty => out.push_str("empty"),
        FuzzyRegex::Epsilon => out.push_str("eps"),
        FuzzyRegex::Sym(s) => out.push_str(&s.to_string()),
        FuzzyRegex::Scalar(v, inner) => {
            out.push_str(&v.to_string());
            // A directly nested scalar needs parens so the two literals do
            // not fuse into one token.
            let lvl = if matches!(**inner, FuzzyRegex::Scalar(_, _)) {
                LVL_STAR
            } else {
                LVL_SCALAR
            };
            render_into(inner, lvl, out);
        }
        FuzzyRegex::Sum(a, b) => {
            render_into(a, LVL_SUM, out);
            out.push('+');
            render_into(b, LVL_CONCAT, out);
        }
        FuzzyRegex::Concat(a, b) => {
            render_into(a, LVL_CONCAT, out);
            render_into(b, LVL_SCALAR, out);
        }
        FuzzyRegex::Star(inner) => {
            render_into(inner, LVL_ATOM, out);
            out.push('*');
        }
    }
    if parens {
        out.push(')');
    }
}

/// Pretty-prints an AST so that `parse(render(r))` is structurally equal to
/// `r`. Scalar letters from lifted expressions print as `$k`; such strings
/// are not re-parseable, which is fine because lifted expressions are a
/// display-only surface.
pub fn render(r: &FuzzyRegex) -> String {
    let mut out = String::new();
    render_into(r, LVL_SUM, &mut out);
    out
}

/// Memoizing evaluator of the fuzzy language semantics. Nodes are numbered
/// by a pre-pass so memo keys are `(node, lo, hi)` substring cells.
struct Evaluator<'a> {
    nodes: Vec<&'a FuzzyRegex>,
    word: &'a [Sym],
    lm: LMonoid,
    // expr cells and a parallel table for the nonempty-factor star closure
    memo: Vec<Option<Value>>,
    star_memo: Vec<Option<Value>>,
    width: usize,
}

fn collect_nodes<'a>(r: &'a FuzzyRegex, out: &mut Vec<&'a FuzzyRegex>) -> usize {
    let id = out.len();
    out.push(r);
    match r {
        FuzzyRegex::Empty | FuzzyRegex::Epsilon | FuzzyRegex::Sym(_) => {}
        FuzzyRegex::Scalar(_, inner) | FuzzyRegex::Star(inner) => {
            collect_nodes(inner, out);
        }
        FuzzyRegex::Sum(a, b) | FuzzyRegex::Concat(a, b) => {
            collect_nodes(a, out);
            collect_nodes(b, out);
        }
    }
    id
}

impl<'a> Evaluator<'a> {
    fn new(r: &'a FuzzyRegex, word: &'a [Sym], lm: LMonoid) -> Evaluator<'a> {
        let mut nodes = Vec::new();
        collect_nodes(r, &mut nodes);
        let n = word.len() + 1;
        let width = n * n;
        Evaluator {
            memo: vec![None; nodes.len() * width],
            star_memo: vec![None; nodes.len() * width],
            nodes,
            word,
            lm,
            width,
        }
    }

    fn cell(&self, id: usize, lo: usize, hi: usize) -> usize {
        id * self.width + lo * (self.word.len() + 1) + hi
    }

    fn eval(&mut self, id: usize, lo: usize, hi: usize) -> Value {
        let cell = self.cell(id, lo, hi);
        if let Some(v) = self.memo[cell] {
            return v;
        }
        let lm = self.lm;
        let node: &'a FuzzyRegex = self.nodes[id];
        let v = match node {
            FuzzyRegex::Empty => Value::ZERO,
            FuzzyRegex::Epsilon => {
                if lo == hi {
                    lm.one()
                } else {
                    Value::ZERO
                }
            }
            FuzzyRegex::Sym(s) => {
                if hi == lo + 1 && self.word[lo] == *s {
                    lm.one()
                } else {
                    Value::ZERO
                }
            }
            FuzzyRegex::Scalar(v, _) => {
                let v = *v;
                lm.otimes(v, self.eval(id + 1, lo, hi))
            }
            FuzzyRegex::Sum(a, _) => {
                let right = id + 1 + node_count(a);
                let lv = self.eval(id + 1, lo, hi);
                let rv = self.eval(right, lo, hi);
                lm.join(lv, rv)
            }
            FuzzyRegex::Concat(a, _) => {
                let right = id + 1 + node_count(a);
                let mut acc = Value::ZERO;
                for mid in lo..=hi {
                    let lv = self.eval(id + 1, lo, mid);
                    let rv = self.eval(right, mid, hi);
                    acc = lm.join(acc, lm.otimes(lv, rv));
                }
                acc
            }
            FuzzyRegex::Star(_) => self.star(id, lo, hi),
        };
        self.memo[cell] = Some(v);
        v
    }

    // Star over nonempty first factors: S(ε) = e and
    // S(u) = ⋁_{u = vw, v ≠ ε} ‖β‖(v) ⊗ S(w). Empty factors never raise the
    // join because inserting one multiplies by ‖β‖(ε) ≤ e and ⊗ is isotone.
    fn star(&mut self, id: usize, lo: usize, hi: usize) -> Value {
        if lo == hi {
            return self.lm.one();
        }
        let cell = self.cell(id, lo, hi);
        if let Some(v) = self.star_memo[cell] {
            return v;
        }
        let lm = self.lm;
        let mut acc = Value::ZERO;
        for mid in (lo + 1)..=hi {
            let head = self.eval(id + 1, lo, mid);
            if head.is_zero() {
                continue;
            }
            let tail = self.star(id, mid, hi);
            acc = lm.join(acc, lm.otimes(head, tail));
        }
        self.star_memo[cell] = Some(acc);
        acc
    }
}

fn node_count(r: &FuzzyRegex) -> usize {
    match r {
        FuzzyRegex::Empty | FuzzyRegex::Epsilon | FuzzyRegex::Sym(_) => 1,
        FuzzyRegex::Scalar(_, inner) | FuzzyRegex::Star(inner) => 1 + node_count(inner),
        FuzzyRegex::Sum(a, b) | FuzzyRegex::Concat(a, b) => 1 + node_count(a) + node_count(b),
    }
}

/// Evaluates the membership degree of `u` in the fuzzy language of `r` by
/// structural recursion on the expression. This is the semantic oracle the
/// automata constructions are verified against.
pub fn eval_direct(r: &FuzzyRegex, u: &Word, lm: LMonoid) -> Value {
    Evaluator::new(r, u.syms(), lm).eval(0, 0, u.len())
}

/// A finite sample of a fuzzy language: every word up to a length bound with
/// its degree, together with the structure the degrees live in.
#[derive(Debug, Clone)]
pub struct FuzzyLanguageSample {
    lm: LMonoid,
    entries: BTreeMap<Word, Value>,
}

impl FuzzyLanguageSample {
    pub fn new(lm: LMonoid) -> FuzzyLanguageSample {
        FuzzyLanguageSample {
            lm,
            entries: BTreeMap::new(),
        }
    }

    pub fn structure(&self) -> LMonoid {
        self.lm
    }

    pub fn insert(&mut self, w: Word, v: Value) {
        self.entries.insert(w, v);
    }

    pub fn get(&self, w: &Word) -> Option<Value> {
        self.entries.get(w).copied()
    }

    /// Entries in shortlex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, Value)> {
        let mut sorted: Vec<_> = self.entries.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sorted.into_iter().map(|(w, v)| (w, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error("word table would hold {required} words, over the cap of {cap}")]
    BudgetExceeded { required: u128, cap: usize },
}

/// All words over `alphabet` up to `max_len`, in shortlex order.
pub fn words_up_to(alphabet: &[Sym], max_len: usize) -> Result<Vec<Word>, TableError> {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total += layer;
        layer = layer.saturating_mul(alphabet.len() as u128);
        if total > WORD_TABLE_CAP as u128 {
            return Err(TableError::BudgetExceeded {
                required: total,
                cap: WORD_TABLE_CAP,
            });
        }
    }
    let mut words = vec![Word::epsilon()];
    let mut frontier = vec![Word::epsilon()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * alphabet.len());
        for w in &frontier {
            for &s in alphabet {
                let mut w2 = w.clone();
                w2.push(s);
                next.push(w2);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(words)
}

/// Tabulates [`eval_direct`] for every word over the expression's own
/// alphabet up to `max_len`.
pub fn language_table(
    r: &FuzzyRegex,
    max_len: usize,
    lm: LMonoid,
) -> Result<FuzzyLanguageSample, TableError> {
    let alphabet = r.alphabet();
    let mut sample = FuzzyLanguageSample::new(lm);
    for w in words_up_to(&alphabet, max_len)? {
        let v = eval_direct(r, &w, lm);
        sample.insert(w, v);
    }
    Ok(sample)
}
