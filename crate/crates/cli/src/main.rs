//! `fuzzre` — compile fuzzy regular expressions to fuzzy finite automata.
//!
//! Exit codes: 0 on success, 1 on usage errors (including expression syntax
//! errors), 2 when `fuzz` finds a verification mismatch. Diagnostics go to
//! stderr; machine-readable output (JSON, DOT, degree tables) goes to
//! stdout.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use fuzzre::algebra::{LMonoid, StructureKind};
use fuzzre::corpus::{case_rng, random_regex, verify_case, RegexConfig};
use fuzzre::io::{fuzzy_to_dot, nfa_to_dot, AutomatonDocument};
use fuzzre::lift::{lift, LiftResult};
use fuzzre::position::{glushkov, Nfa};
use fuzzre::reduction::{factor_automaton, greatest_right_invariant};
use fuzzre::regex::{parse, render, words_up_to, FuzzyRegex, Sym, Word};
use fuzzre::runtime::degree;
use fuzzre::synthesis::{synthesize_full, synthesize_reduced, FuzzyAutomaton};

#[derive(Parser)]
#[command(name = "fuzzre", version, about = "Fuzzy regular expressions to fuzzy automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    Godel,
    Product,
    Lukasiewicz,
    Boolean,
}

impl StructureArg {
    fn kind(self) -> StructureKind {
        match self {
            StructureArg::Godel => StructureKind::Godel,
            StructureArg::Product => StructureKind::Product,
            StructureArg::Lukasiewicz => StructureKind::Lukasiewicz,
            StructureArg::Boolean => StructureKind::Boolean,
        }
    }
}

#[derive(Args)]
struct StructureOpts {
    /// Degree structure on [0, 1]
    #[arg(long, value_enum, default_value = "godel")]
    structure: StructureArg,
    /// Comparison tolerance (defaults to 0 for godel/boolean, 1e-9 otherwise)
    #[arg(long)]
    tolerance: Option<f64>,
}

impl StructureOpts {
    fn monoid(&self) -> Result<LMonoid, String> {
        let kind = self.structure.kind();
        match self.tolerance {
            None => Ok(LMonoid::new(kind)),
            Some(t) => LMonoid::with_tolerance(kind, t).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportStage {
    /// The crisp position automaton of the lifted expression
    Nfa,
    /// The synthesized fuzzy automaton
    Fuzzy,
    /// The fuzzy automaton factored by its greatest right invariant equivalence
    Minimized,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FuzzStructure {
    Godel,
    Product,
    Lukasiewicz,
    Boolean,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its canonical form
    Check {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        opts: StructureOpts,
    },
    /// Print the lifted expression and its scalar table
    Lift {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        opts: StructureOpts,
        #[arg(long, value_enum, default_value = "text")]
        format: LiftFormat,
    },
    /// Compile an expression into a fuzzy automaton (JSON on stdout)
    Build {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        opts: StructureOpts,
        /// Use the reduced construction
        #[arg(long)]
        reduced: bool,
    },
    /// Evaluate membership degrees of words
    Eval {
        /// Expression to compile and evaluate
        #[arg(long, conflicts_with = "input")]
        expr: Option<String>,
        /// Automaton document to evaluate instead of compiling an expression
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        opts: StructureOpts,
        #[arg(long)]
        reduced: bool,
        /// Word to evaluate (repeatable; `eps` is the empty word)
        #[arg(long = "word")]
        words: Vec<String>,
        /// Tabulate every word up to this length instead
        #[arg(long, conflicts_with = "words")]
        max_len: Option<usize>,
    },
    /// Factor the automaton by its greatest right invariant equivalence
    Minimize {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        opts: StructureOpts,
        #[arg(long)]
        reduced: bool,
    },
    /// Export a pipeline stage as JSON or DOT
    Export {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        opts: StructureOpts,
        #[arg(long, value_enum)]
        stage: ExportStage,
        #[arg(long, value_enum, default_value = "json")]
        format: ExportFormat,
        #[arg(long)]
        reduced: bool,
    },
    /// Compare synthesized automata against the direct evaluator on a
    /// random expression corpus
    Fuzz {
        #[arg(long)]
        cases: u64,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, default_value = "4")]
        max_depth: usize,
        /// Check all words up to this length
        #[arg(long, default_value = "6")]
        max_len: usize,
        #[arg(long, value_enum, default_value = "all")]
        structure: FuzzStructure,
    },
}

fn compile(
    expr: &str,
    lm: LMonoid,
    reduced: bool,
) -> Result<(FuzzyRegex, LiftResult, Nfa, FuzzyAutomaton), String> {
    let alpha = parse(expr, lm).map_err(|e| e.to_string())?;
    let lr = lift(&alpha, lm);
    let nfa = glushkov(&lr.alpha_r);
    let automaton = if reduced {
        synthesize_reduced(&nfa, &lr, lm)
    } else {
        synthesize_full(&nfa, &lr, lm)
    }
    .map_err(|e| e.to_string())?;
    Ok((alpha, lr, nfa, automaton))
}

/// Rounds to 12 significant digits and prints the shortest decimal form.
fn format_degree(raw: f64) -> String {
    if raw == 0.0 {
        return "0".to_string();
    }
    let magnitude = raw.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - magnitude);
    let rounded = (raw * scale).round() / scale;
    format!("{rounded}")
}

fn eval_words(
    automaton: &FuzzyAutomaton,
    words: &[String],
    max_len: Option<usize>,
) -> Result<String, String> {
    let mut out = String::new();
    match max_len {
        Some(len) => {
            let alphabet: Vec<Sym> = automaton
                .x_alphabet()
                .iter()
                .map(|&l| Sym::Letter(l))
                .collect();
            for w in words_up_to(&alphabet, len).map_err(|e| e.to_string())? {
                let d = degree(automaton, &w).map_err(|e| e.to_string())?;
                out.push_str(&format!("{w}\t{}\n", format_degree(d.get())));
            }
        }
        None => {
            if words.is_empty() {
                return Err("pass --word at least once, or --max-len".to_string());
            }
            for text in words {
                let w = Word::parse(text).ok_or_else(|| format!("bad word `{text}`"))?;
                let d = degree(automaton, &w).map_err(|e| e.to_string())?;
                out.push_str(&format!("{w}\t{}\n", format_degree(d.get())));
            }
        }
    }
    Ok(out)
}

fn lift_output(lr: &LiftResult, format: LiftFormat, x_syms: &[Sym]) -> String {
    match format {
        LiftFormat::Text => {
            let mut out = format!("{}\n", render(&lr.alpha_r));
            for &s in x_syms {
                out.push_str(&format!("{s}\t1\n"));
            }
            for sl in &lr.y_alphabet {
                out.push_str(&format!("{}\t{}\n", sl.sym(), sl.value));
            }
            out
        }
        LiftFormat::Json => {
            let mut phi = BTreeMap::new();
            for &s in x_syms {
                phi.insert(s.to_string(), 1.0);
            }
            for sl in &lr.y_alphabet {
                phi.insert(sl.sym().to_string(), sl.value.get());
            }
            let doc = serde_json::json!({
                "alpha_r": render(&lr.alpha_r),
                "phi": phi,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { expr, opts } => {
            let lm = opts.monoid()?;
            let alpha = parse(&expr, lm).map_err(|e| e.to_string())?;
            println!("{}", render(&alpha));
        }
        Command::Lift { expr, opts, format } => {
            let lm = opts.monoid()?;
            let alpha = parse(&expr, lm).map_err(|e| e.to_string())?;
            let lr = lift(&alpha, lm);
            let x_syms: Vec<Sym> = alpha
                .alphabet()
                .into_iter()
                .filter(|s| matches!(s, Sym::Letter(_)))
                .collect();
            print!("{}", lift_output(&lr, format, &x_syms));
        }
        Command::Build { expr, opts, reduced } => {
            let lm = opts.monoid()?;
            let (_, _, _, automaton) = compile(&expr, lm, reduced)?;
            println!("{}", AutomatonDocument::from_automaton(&automaton).to_json());
        }
        Command::Eval {
            expr,
            input,
            opts,
            reduced,
            words,
            max_len,
        } => {
            let automaton = match (expr, input) {
                (Some(expr), None) => {
                    let lm = opts.monoid()?;
                    compile(&expr, lm, reduced)?.3
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| format!("cannot read `{path}`: {e}"))?;
                    AutomatonDocument::from_json(&text)
                        .and_then(|doc| doc.to_automaton())
                        .map_err(|e| e.to_string())?
                }
                _ => return Err("pass exactly one of --expr or --input".to_string()),
            };
            print!("{}", eval_words(&automaton, &words, max_len)?);
        }
        Command::Minimize { expr, opts, reduced } => {
            let lm = opts.monoid()?;
            let (_, _, _, automaton) = compile(&expr, lm, reduced)?;
            let partition = greatest_right_invariant(&automaton);
            let factored = factor_automaton(&automaton, &partition).map_err(|e| e.to_string())?;
            eprintln!(
                "states: {} -> {}",
                automaton.n_states(),
                factored.n_states()
            );
            let blocks: Vec<String> = partition
                .blocks()
                .iter()
                .map(|members| {
                    let names: Vec<&str> = members
                        .iter()
                        .map(|&s| automaton.state_labels()[s].as_str())
                        .collect();
                    format!("{{{}}}", names.join(","))
                })
                .collect();
            eprintln!("partition: {}", blocks.join(" "));
            println!("{}", AutomatonDocument::from_automaton(&factored).to_json());
        }
        Command::Export {
            expr,
            opts,
            stage,
            format,
            reduced,
        } => {
            let lm = opts.monoid()?;
            let (_, _, nfa, automaton) = compile(&expr, lm, reduced)?;
            let text = match (stage, format) {
                (ExportStage::Nfa, ExportFormat::Json) => {
                    AutomatonDocument::from_nfa(&nfa, LMonoid::new(StructureKind::Boolean))
                        .to_json()
                }
                (ExportStage::Nfa, ExportFormat::Dot) => nfa_to_dot(&nfa),
                (ExportStage::Fuzzy, ExportFormat::Json) => {
                    AutomatonDocument::from_automaton(&automaton).to_json()
                }
                (ExportStage::Fuzzy, ExportFormat::Dot) => fuzzy_to_dot(&automaton),
                (ExportStage::Minimized, fmt) => {
                    let partition = greatest_right_invariant(&automaton);
                    let factored =
                        factor_automaton(&automaton, &partition).map_err(|e| e.to_string())?;
                    match fmt {
                        ExportFormat::Json => AutomatonDocument::from_automaton(&factored).to_json(),
                        ExportFormat::Dot => fuzzy_to_dot(&factored),
                    }
                }
            };
            println!("{}", text.trim_end());
        }
        Command::Fuzz {
            cases,
            seed,
            max_depth,
            max_len,
            structure,
        } => {
            let kinds: Vec<StructureKind> = match structure {
                FuzzStructure::Godel => vec![StructureKind::Godel],
                FuzzStructure::Product => vec![StructureKind::Product],
                FuzzStructure::Lukasiewicz => vec![StructureKind::Lukasiewicz],
                FuzzStructure::Boolean => vec![StructureKind::Boolean],
                FuzzStructure::All => StructureKind::ALL.to_vec(),
            };
            for case in 0..cases {
                for &kind in &kinds {
                    let lm = LMonoid::new(kind);
                    let mut rng = case_rng(seed, case);
                    let size = 1 + (case % 3) as usize;
                    let mut cfg = RegexConfig::standard(kind, size);
                    cfg.max_depth = max_depth;
                    let alpha = random_regex(&mut rng, &cfg);
                    if let Err(m) = verify_case(&alpha, lm, max_len) {
                        eprintln!(
                            "MISMATCH seed={seed} case={case} structure={kind} expr='{}' \
                             word='{}' oracle={} full={} reduced={}",
                            render(&alpha),
                            m.word,
                            m.oracle,
                            m.full,
                            m.reduced
                        );
                        return Ok(ExitCode::from(2));
                    }
                }
            }
            eprintln!("fuzz: {cases} cases passed (seed {seed})");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
