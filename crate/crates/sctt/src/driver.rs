//! Incremental multi-file checking: a session feeds files through the
//! lexer, parser, resolver, and checker in order, so later files may use
//! names declared in earlier ones.

use crate::check::Checker;
use crate::diag::{Code, Diagnostic};
use crate::resolve;
use crate::{lexer, parser};
use std::collections::BTreeSet;

pub struct Session {
    pub checker: Checker,
    /// names in scope for resolution, in declaration order
    pub names: BTreeSet<String>,
    /// (declaration name, file) in declaration order
    pub decl_files: Vec<(String, String)>,
}

impl Session {
    pub fn new(cube_cap: usize) -> Self {
        Session {
            checker: Checker::new(cube_cap),
            names: BTreeSet::new(),
            decl_files: Vec::new(),
        }
    }

    /// Check one source file against the session environment. Stops at the
    /// first error; successfully checked declarations stay in scope.
    pub fn check_source(&mut self, file: &str, source: &str) -> Result<(), Diagnostic> {
        let go = |s: &mut Self| -> Result<(), Diagnostic> {
            let tokens = lexer::tokenize(source)?;
            let decls = parser::parse_module(&tokens)?;
            for d in &decls {
                if let Some((name, span)) = &d.name {
                    if s.names.contains(name) {
                        return Err(Diagnostic::error(
                            Code::DuplicateDeclaration,
                            *span,
                            format!("`{name}` is declared twice"),
                        ));
                    }
                }
                let rd = resolve::resolve_decl(d, &s.names)?;
                s.checker.check_decl(&rd)?;
                if let Some(name) = &rd.name {
                    s.names.insert(name.clone());
                    s.decl_files.push((name.clone(), file.to_string()));
                }
            }
            Ok(())
        };
        go(self).map_err(|e| e.with_file(file))
    }
}
