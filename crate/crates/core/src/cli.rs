//! The `zwt` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::matrix::{format_complex, Matrix, Psd};
use crate::normalform::{bits, canonical_of_map, diagrams_equal, NormalForm};
use crate::{qinfo, rules, semantics};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DIFFERENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

/// Random samples added per parameterized schema by `check-axioms`.
const RANDOM_SAMPLES: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "zwt", version, about = "ZW-calculus with the tick: semantics, normal forms and equality")]
pub struct Cli {
    /// Print matrix entries as decimal complex numbers.
    #[arg(long, global = true)]
    pub float: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pure interpretation of a tick-free diagram.
    Interp { file: PathBuf },
    /// Choi matrix of the superoperator.
    Choi {
        file: PathBuf,
        /// Use the ticked cap, i.e. transpose on the input wires.
        #[arg(long)]
        proper: bool,
    },
    /// Apply the superoperator to a density matrix.
    Superop {
        file: PathBuf,
        #[arg(long)]
        rho: PathBuf,
    },
    /// Canonical normal form of the map.
    Nf { file: PathBuf },
    /// Semantic equality; exit 0 when equal, 1 otherwise.
    Eq { left: PathBuf, right: PathBuf },
    /// Soundness of every axiom schema on the sample grid.
    CheckAxioms {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Soundness of the lemma corpus.
    CheckLemmas {
        #[arg(long)]
        json: bool,
    },
    /// Hermiticity preservation and complete positivity.
    Classify { file: PathBuf },
    /// Positive-partial-transpose test.
    Ppt {
        rho: PathBuf,
        /// Number of leading qubits in the first subsystem.
        #[arg(long)]
        split: usize,
    },
    /// Spin flip `Y ρᵀ Y` of a qubit density matrix.
    Spinflip { rho: PathBuf },
    /// Render a diagram.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Text,
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn diagram(path: &Path) -> Result<Diagram> {
    Diagram::parse(&read(path)?)
}

fn matrix(path: &Path) -> Result<Matrix> {
    Matrix::parse_text(&read(path)?)
}

fn nf_text(nf: &NormalForm, float: bool) -> Result<String> {
    if !float {
        return Ok(nf.to_text());
    }
    let n = nf.qubits();
    let mut s = format!("n {n}\n");
    for t in nf.terms() {
        s.push_str(&format!("{} {} {}\n", bits(t.x, n), bits(t.y, n), format_complex(t.lambda.to_complex()?)));
    }
    Ok(s)
}

fn psd_word(p: Psd) -> &'static str {
    match p {
        Psd::Yes => "yes",
        Psd::No => "no",
        Psd::Indeterminate => "unknown",
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let float = cli.float;
    match &cli.command {
        Command::Interp { file } => {
            write!(out, "{}", semantics::interp(&diagram(file)?)?.to_text(float)?)?;
        }
        Command::Choi { file, proper } => {
            let d = diagram(file)?;
            let f = if *proper { semantics::proper_choi(&d)? } else { semantics::choi(&d)? };
            write!(out, "{}", f.to_text(float)?)?;
        }
        Command::Superop { file, rho } => {
            write!(out, "{}", semantics::apply_superop(&diagram(file)?, &matrix(rho)?)?.to_text(float)?)?;
        }
        Command::Nf { file } => {
            write!(out, "{}", nf_text(&canonical_of_map(&diagram(file)?)?, float)?)?;
        }
        Command::Eq { left, right } => {
            let equal = diagrams_equal(&diagram(left)?, &diagram(right)?)?;
            writeln!(out, "{}", if equal { "equal" } else { "not equal" })?;
            return Ok(if equal { EXIT_OK } else { EXIT_DIFFERENT });
        }
        Command::CheckAxioms { json, seed } => {
            let report = rules::check_soundness(&rules::schemas(), RANDOM_SAMPLES, *seed)?;
            write!(out, "{}", if *json { report.to_json_lines() } else { report.to_text() })?;
            return Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
        Command::CheckLemmas { json } => {
            let report = rules::check_corpus()?;
            write!(out, "{}", if *json { report.to_json_lines() } else { report.to_text() })?;
            return Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
        Command::Classify { file } => {
            let f = semantics::choi(&diagram(file)?)?;
            let hp = f.is_hermitian();
            let cp = if hp { psd_word(f.psd()) } else { "no" };
            writeln!(out, "HP: {}, CP: {cp}", if hp { "yes" } else { "no" })?;
        }
        Command::Ppt { rho, split } => {
            let m = matrix(rho)?;
            let ok = qinfo::ppt_check(&m, *split)?;
            let min = qinfo::partial_transpose(&m, *split)?.min_eigenvalue()?;
            writeln!(out, "PPT: {}", if ok { "yes" } else { "no" })?;
            writeln!(out, "min eigenvalue of partial transpose: {}", crate::matrix::format_sig(min))?;
        }
        Command::Spinflip { rho } => {
            write!(out, "{}", qinfo::spin_flip(&matrix(rho)?)?.to_text(float)?)?;
        }
        Command::Render { file, format } => {
            let d = diagram(file)?;
            match format {
                Format::Dot => write!(out, "{}", d.render_dot())?,
                Format::Text => writeln!(out, "{}", d.print())?,
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "zwt: {e}");
            match e {
                Error::Io(_) | Error::Parse { .. } | Error::Arity { .. } | Error::Ticked => EXIT_USAGE,
                Error::Dimension(_) | Error::NotHermitian | Error::Trace(_) | Error::Invalid(_) => EXIT_USAGE,
                Error::Inadmissible { .. } | Error::UnknownRule(_) | Error::NoMatch { .. } => EXIT_USAGE,
                _ => EXIT_CHECK_FAILED,
            }
        }
    }
}
