//! Shared helpers for the integration test suite.
// Each test target compiles its own copy; not every target uses every helper.
#![allow(dead_code)]

use sctt::driver::Session;
use std::path::{Path, PathBuf};
use std::process::Command;

pub const CUBE_CAP: usize = 8;

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("workspace root")
}

pub fn lib_dir() -> PathBuf {
    repo_root().join("lib")
}

pub fn lib_files() -> Vec<PathBuf> {
    sctt::stdlib::LIB_FILES
        .iter()
        .map(|f| lib_dir().join(f))
        .collect()
}

/// A session with the whole standard library loaded.
pub fn lib_session() -> Session {
    let mut s = Session::new(CUBE_CAP);
    sctt::stdlib::load_library(&mut s, &[lib_dir()]).expect("standard library must check");
    s
}

pub fn sctt_cmd() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sctt"))
}

/// Parse a term string and normalize it in the session environment,
/// returning the printed normal form.
pub fn normalize_in(session: &Session, term: &str) -> Result<String, sctt::Diagnostic> {
    let tokens = sctt::lexer::tokenize(term)?;
    let t = sctt::parser::parse_term(&tokens)?;
    let ct = sctt::resolve::resolve_term(&t, &session.names)?;
    let (nf, _) = sctt::normalize_term(&session.checker.globals, &ct)?;
    Ok(sctt::pretty::print_core(&nf, &[], &[]))
}

/// Axiom dependencies of a checked global, as a sorted vector.
pub fn axioms_of(session: &Session, name: &str) -> Vec<String> {
    session
        .checker
        .globals
        .get(name)
        .unwrap_or_else(|| panic!("global `{name}` missing"))
        .axioms
        .iter()
        .cloned()
        .collect()
}
