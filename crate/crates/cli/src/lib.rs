//! Command-line front end for `wreath-core`.
//!
//! Every analysis command prints a [`VerdictDocument`]. The exit status only
//! reports whether the analysis ran: 0 on success whatever the verdict,
//! 1 for usage errors, 2 for unreadable or invalid input.

pub mod document;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use wreath_core::oracle::{level_transitive_with, OracleLimits};
use wreath_core::{
    abelianization_equal, abelianization_stream, conjugate, format_word, is_spherically_transitive,
    minimize_with_origin, parse_word, rational_form, to_dot, transitive_k2_fast, validate_cyclic,
    AutomatonFile, Error, StreamEvidence,
};

pub use document::VerdictDocument;
use document::{list, optional};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wreath",
    version,
    about = "Analyse finite-state automorphisms of rooted trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a file and report its structure and cyclic labels
    Validate { file: PathBuf },
    /// Decide spherical transitivity of the initial state
    Transitive {
        file: PathBuf,
        /// Check only the first n+2 coefficients (binary alphabet only)
        #[arg(long)]
        fast2: bool,
    },
    /// Print leading coefficients of the abelianization stream
    Coeffs {
        file: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        component: usize,
    },
    /// Print the abelianization as numerator / denominator polynomials
    Rational {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        component: usize,
    },
    /// Decide whether two elements have the same abelianization
    EqualAb { file1: PathBuf, file2: PathBuf },
    /// Decide conjugacy of two elements
    Conjugate { file1: PathBuf, file2: PathBuf },
    /// Count orbits on one level of the tree by enumeration
    Orbit {
        file: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = OracleLimits::default().max_words)]
        max_words: u64,
    },
    /// Apply the initial state to a word
    Apply {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Automaton for w -> FILE1(FILE2(w))
    Compose {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Automaton for the inverse automorphism
    Inverse {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimal automaton for the same automorphism
    Minimize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Moore diagram in Graphviz DOT syntax
    Dot { file: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

type CmdResult = Result<String, Failure>;

struct Input {
    path: String,
    bytes: Vec<u8>,
    file: AutomatonFile,
}

impl Input {
    fn load(path: &Path) -> Result<Self, Failure> {
        let shown = path.display().to_string();
        let bytes = fs::read(path).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("{shown}: {e}"),
        })?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| Failure {
            code: EXIT_INPUT,
            message: format!("{shown}: not valid UTF-8"),
        })?;
        let file = AutomatonFile::parse(&text).map_err(|e| input_error(&shown, e))?;
        Ok(Self {
            path: shown,
            bytes,
            file,
        })
    }

    fn fail(&self, e: Error) -> Failure {
        input_error(&self.path, e)
    }

    fn record(&self, doc: &mut VerdictDocument) {
        doc.add_input(&self.path, &self.bytes);
    }
}

fn input_error(path: &str, e: Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{path}: {e}"),
    }
}

/// Runs the CLI on `args` (including the program name) without touching the
/// process' stdout, stderr or exit status.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Transitive { file, fast2 } => transitive(&file, fast2),
        Command::Coeffs {
            file,
            count,
            component,
        } => coeffs(&file, count, component),
        Command::Rational { file, component } => rational(&file, component),
        Command::EqualAb { file1, file2 } => equal_ab(&file1, &file2),
        Command::Conjugate { file1, file2 } => conjugacy(&file1, &file2),
        Command::Orbit {
            file,
            level,
            max_words,
        } => orbit(&file, level, max_words),
        Command::Apply { file, word } => apply(&file, &word),
        Command::Compose {
            file1,
            file2,
            output,
        } => compose(&file1, &file2, output.as_deref()),
        Command::Inverse { file, output } => inverse(&file, output.as_deref()),
        Command::Minimize { file, output } => minimize(&file, output.as_deref()),
        Command::Dot { file } => {
            let input = Input::load(&file)?;
            Ok(to_dot(&input.file.automaton))
        }
    }
}

fn validate(path: &Path) -> CmdResult {
    let input = Input::load(path)?;
    let f = &input.file;
    let m = &f.automaton;
    let mut doc = VerdictDocument::new("validate");
    input.record(&mut doc);
    doc.set("alphabet", m.alphabet_size())
        .set("states", m.num_states())
        .set("initial", optional(f.initial.map(|q| m.name(q))));
    if let Some(q) = f.initial {
        doc.set("reachable_states", m.reachable_from(q).len());
    }
    match validate_cyclic(m) {
        Ok(labels) => {
            let rendered: Vec<String> = (0..m.num_states())
                .map(|q| format!("{}={}", m.name(q), labels.label(q)[0]))
                .collect();
            doc.set("cyclic", true)
                .set("cyclic_labels", rendered.join(" "));
        }
        Err(Error::NotCyclic(state)) => {
            doc.set("cyclic", false).set("non_cyclic_state", state);
        }
        Err(e) => return Err(input.fail(e)),
    }
    if let Some(labels) = &f.labels {
        doc.set("abelian_moduli", list(labels.moduli()));
    }
    Ok(doc.to_string())
}

fn transitive(path: &Path, fast2: bool) -> CmdResult {
    let input = Input::load(path)?;
    let g = input.file.initial_automaton().map_err(|e| input.fail(e))?;
    let verdict = if fast2 {
        transitive_k2_fast(&g)
    } else {
        is_spherically_transitive(&g)
    }
    .map_err(|e| input.fail(e))?;
    let mut doc = VerdictDocument::new("transitive");
    input.record(&mut doc);
    doc.set(
        "method",
        if fast2 {
            "binary-fast"
        } else {
            "cycle-detection"
        },
    )
    .set("transitive", verdict.transitive)
    .set("first_bad_index", optional(verdict.first_bad_index))
    .set("modulus", verdict.stream.modulus());
    match &verdict.stream {
        StreamEvidence::Complete(s) => {
            doc.set("stream", "complete")
                .set("preperiod", list(s.preperiod()))
                .set("period", list(s.period()));
        }
        StreamEvidence::Prefix { terms, .. } => {
            doc.set("stream", "prefix")
                .set("checked_terms", list(terms));
        }
    }
    Ok(doc.to_string())
}

fn coeffs(path: &Path, count: usize, component: usize) -> CmdResult {
    let input = Input::load(path)?;
    let g = input.file.labeled_or_cyclic().map_err(|e| input.fail(e))?;
    let s = abelianization_stream(&g, component).map_err(|e| input.fail(e))?;
    let mut doc = VerdictDocument::new("coeffs");
    input.record(&mut doc);
    doc.set("component", component)
        .set("modulus", s.modulus())
        .set("count", count)
        .set("terms", list(&s.terms(count)))
        .set("preperiod", list(s.preperiod()))
        .set("period", list(s.period()));
    Ok(doc.to_string())
}

fn rational(path: &Path, component: usize) -> CmdResult {
    let input = Input::load(path)?;
    let g = input.file.labeled_or_cyclic().map_err(|e| input.fail(e))?;
    let r = rational_form(&g, component).map_err(|e| input.fail(e))?;
    let mut doc = VerdictDocument::new("rational");
    input.record(&mut doc);
    doc.set("component", component)
        .set("modulus", r.modulus())
        .set("numerator", list(r.numerator()))
        .set("denominator", list(r.denominator()));
    Ok(doc.to_string())
}

fn equal_ab(path1: &Path, path2: &Path) -> CmdResult {
    let a = Input::load(path1)?;
    let b = Input::load(path2)?;
    let f = a.file.labeled_or_cyclic().map_err(|e| a.fail(e))?;
    let g = b.file.labeled_or_cyclic().map_err(|e| b.fail(e))?;
    let eq = abelianization_equal(&f, &g).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{} vs {}: {e}", a.path, b.path),
    })?;
    let mut doc = VerdictDocument::new("equal-ab");
    a.record(&mut doc);
    b.record(&mut doc);
    doc.set("moduli", list(f.labels().moduli()))
        .set("equal", eq.equal)
        .set("witness", optional(eq.witness));
    Ok(doc.to_string())
}

fn conjugacy(path1: &Path, path2: &Path) -> CmdResult {
    let a = Input::load(path1)?;
    let b = Input::load(path2)?;
    let f = a.file.initial_automaton().map_err(|e| a.fail(e))?;
    let g = b.file.initial_automaton().map_err(|e| b.fail(e))?;
    // per-input checks first so errors name the offending file
    let tf = is_spherically_transitive(&f).map_err(|e| a.fail(e))?;
    let tg = is_spherically_transitive(&g).map_err(|e| b.fail(e))?;
    let verdict = conjugate(&f, &g).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{} vs {}: {e}", a.path, b.path),
    })?;
    let mut doc = VerdictDocument::new("conjugate");
    a.record(&mut doc);
    b.record(&mut doc);
    doc.set("transitive.1", tf.transitive)
        .set("transitive.2", tg.transitive)
        .set("verdict", verdict.verdict)
        .set("reason", verdict.reason);
    Ok(doc.to_string())
}

fn orbit(path: &Path, level: usize, max_words: u64) -> CmdResult {
    let input = Input::load(path)?;
    let g = input.file.initial_automaton().map_err(|e| input.fail(e))?;
    let r =
        level_transitive_with(&g, level, &OracleLimits { max_words }).map_err(|e| input.fail(e))?;
    let mut doc = VerdictDocument::new("orbit");
    input.record(&mut doc);
    doc.set("level", r.level)
        .set("orbit_count", r.orbit_count)
        .set("max_orbit", r.max_orbit)
        .set("transitive", r.transitive);
    Ok(doc.to_string())
}

fn apply(path: &Path, word: &str) -> CmdResult {
    let input = Input::load(path)?;
    let g = input.file.initial_automaton().map_err(|e| input.fail(e))?;
    let k = g.alphabet_size();
    let w = parse_word(word, k).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("word `{word}`: {e}"),
    })?;
    let image = g.apply(&w).map_err(|e| input.fail(e))?;
    let mut doc = VerdictDocument::new("apply");
    input.record(&mut doc);
    doc.set("word", format_word(&w, k))
        .set("image", format_word(&image, k));
    Ok(doc.to_string())
}

/// Serialized automaton on stdout, or written to `output` with a short report.
fn emit(command: &str, inputs: &[&Input], file: AutomatonFile, output: Option<&Path>) -> CmdResult {
    let text = file.to_string();
    let Some(out) = output else {
        return Ok(text);
    };
    fs::write(out, &text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", out.display()),
    })?;
    let mut doc = VerdictDocument::new(command);
    for input in inputs {
        input.record(&mut doc);
    }
    doc.set("output", out.display())
        .set("states", file.automaton.num_states());
    Ok(doc.to_string())
}

fn compose(path1: &Path, path2: &Path, output: Option<&Path>) -> CmdResult {
    let a = Input::load(path1)?;
    let b = Input::load(path2)?;
    let f = a.file.initial_automaton().map_err(|e| a.fail(e))?;
    let g = b.file.initial_automaton().map_err(|e| b.fail(e))?;
    let (fg, pairs) = f.compose_with_origin(&g).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{} vs {}: {e}", a.path, b.path),
    })?;
    let labels = match (&a.file.labels, &b.file.labels) {
        (Some(lf), Some(lg)) => lf.for_pairs(lg, &pairs).ok(),
        _ => None,
    };
    emit(
        "compose",
        &[&a, &b],
        AutomatonFile::from_initial(fg, labels),
        output,
    )
}

fn inverse(path: &Path, output: Option<&Path>) -> CmdResult {
    let input = Input::load(path)?;
    let g = input.file.initial_automaton().map_err(|e| input.fail(e))?;
    let labels = input.file.labels.as_ref().map(|l| l.negated());
    emit(
        "inverse",
        &[&input],
        AutomatonFile::from_initial(g.inverse(), labels),
        output,
    )
}

fn minimize(path: &Path, output: Option<&Path>) -> CmdResult {
    let input = Input::load(path)?;
    let g = input.file.initial_automaton().map_err(|e| input.fail(e))?;
    let (m, origin) = minimize_with_origin(&g);
    let labels = input.file.labels.as_ref().map(|l| l.select(&origin));
    emit(
        "minimize",
        &[&input],
        AutomatonFile::from_initial(m, labels),
        output,
    )
}
