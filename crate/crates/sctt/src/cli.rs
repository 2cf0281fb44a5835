//! Command-line driver. Exit codes: 0 success, 1 checking failures,
//! 2 I/O or usage errors.

use crate::check::normalize_term;
use crate::diag::Diagnostic;
use crate::driver::Session;
use crate::pretty::print_core;
use crate::stdlib;
use crate::syntax::{SInterval, STope};
use crate::tope::{self, Interval, Tope, DEFAULT_CUBE_CAP};
use crate::{lexer, parser, resolve};
use clap::{Parser as ClapParser, Subcommand, ValueEnum};
use std::io::IsTerminal;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Structured,
}

#[derive(Debug, ClapParser)]
#[command(name = "sctt", about = "A proof checker for a simplicial type theory", version)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Diagnostic format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: OutputMode,
    /// Disable color in text diagnostics.
    #[arg(long, global = true)]
    no_color: bool,
    /// Maximum cube-context size the tope solver accepts.
    #[arg(long, global = true)]
    cube_cap: Option<usize>,
    /// Library search directory (repeatable; overrides SCTT_LIB).
    #[arg(long, global = true)]
    lib_path: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Check .stt files in order.
    Check {
        files: Vec<PathBuf>,
        /// Load the standard library first.
        #[arg(long)]
        with_lib: bool,
    },
    /// Print the normal form of a term in the environment of a checked file.
    Normalize {
        file: PathBuf,
        term: String,
        /// Load the standard library before the file.
        #[arg(long)]
        with_lib: bool,
    },
    /// Decide a tope sequent "x1 .. xn |- HYP => GOAL".
    Tope { sequent: String },
    /// Print the standard-library manifest (item, file, axiom deps).
    Manifest,
}

struct Printer {
    mode: OutputMode,
    color: bool,
}

impl Printer {
    fn diag(&self, d: &Diagnostic) {
        match self.mode {
            OutputMode::Text => println!("{}", d.render_text(self.color)),
            OutputMode::Structured => println!("{}", d.render_structured()),
        }
    }
}

fn lib_dirs(cli: &Cli) -> Vec<PathBuf> {
    if !cli.lib_path.is_empty() {
        return cli.lib_path.clone();
    }
    if let Ok(p) = std::env::var("SCTT_LIB") {
        return vec![PathBuf::from(p)];
    }
    vec![PathBuf::from("lib")]
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let cap = cli.cube_cap.unwrap_or(DEFAULT_CUBE_CAP);
    if cap == 0 {
        eprintln!("error: --cube-cap must be at least 1");
        return 2;
    }
    let printer = Printer {
        mode: cli.output,
        color: !cli.no_color
            && cli.output == OutputMode::Text
            && std::io::stdout().is_terminal(),
    };
    match &cli.cmd {
        Cmd::Check { files, with_lib } => cmd_check(&cli, &printer, cap, files, *with_lib),
        Cmd::Normalize {
            file,
            term,
            with_lib,
        } => cmd_normalize(&cli, &printer, cap, file, term, *with_lib),
        Cmd::Tope { sequent } => cmd_tope(cap, sequent),
        Cmd::Manifest => cmd_manifest(&cli, &printer, cap),
    }
}

fn load_lib_into(
    cli: &Cli,
    printer: &Printer,
    session: &mut Session,
) -> Result<Vec<PathBuf>, i32> {
    match stdlib::load_library(session, &lib_dirs(cli)) {
        Ok(loaded) => Ok(loaded),
        Err(stdlib::LibError::Io(p, e)) => {
            eprintln!("error: cannot read {}: {e}", p.display());
            Err(2)
        }
        Err(stdlib::LibError::Check(d)) => {
            printer.diag(&d);
            Err(1)
        }
    }
}

fn cmd_check(
    cli: &Cli,
    printer: &Printer,
    cap: usize,
    files: &[PathBuf],
    with_lib: bool,
) -> i32 {
    let mut session = Session::new(cap);
    let mut errors = 0usize;
    let mut loaded: Vec<PathBuf> = Vec::new();
    if with_lib {
        match load_lib_into(cli, printer, &mut session) {
            Ok(l) => loaded = l,
            Err(code) => return code,
        }
    }
    for file in files {
        let canon = file.canonicalize().unwrap_or_else(|_| file.clone());
        if loaded.contains(&canon) {
            continue; // already checked as part of the library
        }
        let src = match std::fs::read_to_string(file) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", file.display());
                return 2;
            }
        };
        if let Err(d) = session.check_source(&file.display().to_string(), &src) {
            printer.diag(&d);
            errors += 1;
        }
    }
    let summary = format!(
        "checked {} declarations, {} errors",
        session.checker.checked, errors
    );
    match printer.mode {
        OutputMode::Text => println!("{summary}"),
        OutputMode::Structured => eprintln!("{summary}"),
    }
    if errors == 0 {
        0
    } else {
        1
    }
}

fn cmd_normalize(
    cli: &Cli,
    printer: &Printer,
    cap: usize,
    file: &PathBuf,
    term: &str,
    with_lib: bool,
) -> i32 {
    let mut session = Session::new(cap);
    if with_lib {
        if let Err(code) = load_lib_into(cli, printer, &mut session) {
            return code;
        }
    }
    let src = match std::fs::read_to_string(file) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return 2;
        }
    };
    if let Err(d) = session.check_source(&file.display().to_string(), &src) {
        printer.diag(&d);
        return 1;
    }
    let result = (|| -> Result<String, Diagnostic> {
        let tokens = lexer::tokenize(term)?;
        let t = parser::parse_term(&tokens)?;
        let ct = resolve::resolve_term(&t, &session.names)?;
        let (nf, _) = normalize_term(&session.checker.globals, &ct)?;
        Ok(print_core(&nf, &[], &[]))
    })();
    match result {
        Ok(s) => {
            println!("{s}");
            0
        }
        Err(d) => {
            printer.diag(&d.with_file("<term>"));
            1
        }
    }
}

fn surface_tope_to_indices(t: &STope, names: &[String]) -> Result<Tope<usize>, String> {
    let iv = |i: &SInterval| -> Result<Interval<usize>, String> {
        Ok(match i {
            SInterval::Zero(_) => Interval::Zero,
            SInterval::One(_) => Interval::One,
            SInterval::Name(n, _) => Interval::Var(
                names
                    .iter()
                    .position(|m| m == n)
                    .ok_or_else(|| format!("unknown cube variable `{n}`"))?,
            ),
        })
    };
    Ok(match t {
        STope::Top(_) => Tope::Top,
        STope::Bot(_) => Tope::Bot,
        STope::Le(a, b) => Tope::Le(iv(a)?, iv(b)?),
        STope::Eq(a, b) => Tope::Eq(iv(a)?, iv(b)?),
        STope::And(a, b) => Tope::and(
            surface_tope_to_indices(a, names)?,
            surface_tope_to_indices(b, names)?,
        ),
        STope::Or(a, b) => Tope::or(
            surface_tope_to_indices(a, names)?,
            surface_tope_to_indices(b, names)?,
        ),
    })
}

fn cmd_tope(cap: usize, sequent: &str) -> i32 {
    let parsed = (|| -> Result<(Vec<String>, Tope<usize>, Tope<usize>), String> {
        let (ctx, rest) = sequent
            .split_once("|-")
            .ok_or("sequent must contain `|-`")?;
        let (hyp, goal) = rest.split_once("=>").ok_or("sequent must contain `=>`")?;
        let names: Vec<String> = ctx.split_whitespace().map(|s| s.to_string()).collect();
        if names.iter().any(|n| n == "0" || n == "1") {
            return Err("endpoints cannot be context variables".to_string());
        }
        let parse = |s: &str| -> Result<Tope<usize>, String> {
            let tokens = lexer::tokenize(s).map_err(|d| d.message)?;
            let t = parser::parse_tope(&tokens).map_err(|d| d.message)?;
            surface_tope_to_indices(&t, &names)
        };
        Ok((names.clone(), parse(hyp)?, parse(goal)?))
    })();
    let (names, hyp, goal) = match parsed {
        Ok(x) => x,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    match tope::tope_entails(names.len(), &hyp, &goal, cap) {
        Ok(None) => {
            println!("valid");
            0
        }
        Ok(Some(order)) => {
            println!("invalid: {}", order.render(&names));
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn cmd_manifest(cli: &Cli, printer: &Printer, cap: usize) -> i32 {
    let mut session = Session::new(cap);
    if let Err(code) = load_lib_into(cli, printer, &mut session) {
        return code;
    }
    match stdlib::verify_library(&session) {
        Ok(lines) => {
            for l in &lines {
                match printer.mode {
                    OutputMode::Text => println!("{}", l.render()),
                    OutputMode::Structured => {
                        let rec = serde_json::json!({
                            "name": l.name,
                            "file": l.file,
                            "axioms": l.axioms,
                        });
                        println!("{rec}");
                    }
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
