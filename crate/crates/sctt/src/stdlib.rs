//! Loading and verifying the shipped proof library: the file list, the
//! required items with their exact axiom dependencies, and the manifest.

use crate::diag::Diagnostic;
use crate::driver::Session;
use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

/// Library files in dependency order.
pub const LIB_FILES: &[&str] = &[
    "00_prelude.stt",
    "01_paths.stt",
    "02_contract.stt",
    "03_equiv.stt",
    "04_univalence.stt",
    "05_shapes_hom.stt",
    "06_segal.stt",
    "07_rezk.stt",
    "08_yoneda.stt",
];

/// The items the library must provide, with their exact transitive axiom
/// dependencies.
pub const REQUIRED_ITEMS: &[(&str, &[&str])] = &[
    ("inv", &[]),
    ("concat", &[]),
    ("assoc", &[]),
    ("isContr", &[]),
    ("isEquiv", &[]),
    ("Equiv", &[]),
    ("idToEquiv", &[]),
    ("ua", &["ua"]),
    ("funext", &["funext"]),
    ("hom", &[]),
    ("hom2", &[]),
    ("isSegal", &[]),
    ("comp", &[]),
    ("idarr", &[]),
    ("compUnitLeft", &[]),
    ("compUnitRight", &[]),
    ("compAssoc", &[]),
    ("iso", &[]),
    ("idToIso", &[]),
    ("isRezk", &[]),
    ("evid", &[]),
    ("yon", &[]),
    ("naturality", &[]),
    ("yoneda", &["funext"]),
];

#[derive(Debug)]
pub enum LibError {
    Io(PathBuf, std::io::Error),
    Check(Box<Diagnostic>),
}

impl fmt::Display for LibError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LibError::Io(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            LibError::Check(d) => write!(f, "{d}"),
        }
    }
}

impl From<Diagnostic> for LibError {
    fn from(d: Diagnostic) -> Self {
        LibError::Check(Box::new(d))
    }
}

/// Locate a library file in the first search directory that has it.
pub fn find_lib_file(dirs: &[PathBuf], name: &str) -> Option<PathBuf> {
    dirs.iter().map(|d| d.join(name)).find(|p| p.is_file())
}

/// Load the whole library into a session. Returns the canonical paths of
/// the files that were loaded.
pub fn load_library(
    session: &mut Session,
    dirs: &[PathBuf],
) -> Result<Vec<PathBuf>, LibError> {
    let mut loaded = Vec::new();
    for name in LIB_FILES {
        let path = find_lib_file(dirs, name)
            .ok_or_else(|| {
                LibError::Io(
                    dirs.first()
                        .map(|d| d.join(name))
                        .unwrap_or_else(|| Path::new(name).to_path_buf()),
                    std::io::Error::new(std::io::ErrorKind::NotFound, "no such file"),
                )
            })?;
        let src = std::fs::read_to_string(&path)
            .map_err(|e| LibError::Io(path.clone(), e))?;
        session.check_source(name, &src)?;
        loaded.push(path.canonicalize().unwrap_or(path));
    }
    Ok(loaded)
}

/// One manifest line: declaration, defining file, axiom dependencies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestLine {
    pub name: String,
    pub file: String,
    pub axioms: Vec<String>,
}

impl ManifestLine {
    pub fn render(&self) -> String {
        let axioms = if self.axioms.is_empty() {
            "-".to_string()
        } else {
            self.axioms.join(",")
        };
        format!("{} {} {}", self.name, self.file, axioms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    MissingItem(String),
    UnexpectedAxiomUse(String, String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::MissingItem(n) => write!(f, "missing library item `{n}`"),
            VerifyError::UnexpectedAxiomUse(n, a) => {
                write!(f, "`{n}` has unexpected axiom dependencies: {a}")
            }
        }
    }
}

/// The manifest for everything the session declared, in order.
pub fn manifest(session: &Session) -> Vec<ManifestLine> {
    session
        .decl_files
        .iter()
        .map(|(name, file)| {
            let axioms = session
                .checker
                .globals
                .get(name)
                .map(|e| e.axioms.iter().cloned().collect())
                .unwrap_or_default();
            ManifestLine {
                name: name.clone(),
                file: file.clone(),
                axioms,
            }
        })
        .collect()
}

/// Check that every required item exists with exactly the expected axiom
/// dependencies; returns the full manifest on success.
pub fn verify_library(session: &Session) -> Result<Vec<ManifestLine>, VerifyError> {
    for (name, expected) in REQUIRED_ITEMS {
        let entry = session
            .checker
            .globals
            .get(name)
            .ok_or_else(|| VerifyError::MissingItem(name.to_string()))?;
        let expected: BTreeSet<String> = expected.iter().map(|s| s.to_string()).collect();
        if entry.axioms != expected {
            let got = if entry.axioms.is_empty() {
                "-".to_string()
            } else {
                entry.axioms.iter().cloned().collect::<Vec<_>>().join(",")
            };
            return Err(VerifyError::UnexpectedAxiomUse(name.to_string(), got));
        }
    }
    Ok(manifest(session))
}

/// Transitive postulate dependencies of one item.
pub fn report_axiom_usage(session: &Session, name: &str) -> Result<BTreeSet<String>, VerifyError> {
    session
        .checker
        .globals
        .get(name)
        .map(|e| e.axioms.clone())
        .ok_or_else(|| VerifyError::MissingItem(name.to_string()))
}
