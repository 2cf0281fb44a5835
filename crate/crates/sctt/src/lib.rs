//! A batch proof checker for a dependent type theory with identity types,
//! extension types over a directed-interval shape layer, and postulated
//! univalence, together with a checked standard library of synthetic
//! ∞-category theory.
//!
//! The crate is organized as a pipeline: [`lexer`] and [`parser`] produce
//! surface syntax ([`syntax`]), [`resolve`] scope-checks it into kernel
//! terms ([`core`]), and [`check`] type-checks those using normalization
//! by evaluation ([`eval`], [`value`], [`conv`]) over the tope-logic
//! decision procedure in [`tope`].

pub mod check;
pub mod cli;
pub mod conv;
pub mod core;
pub mod driver;
pub mod diag;
pub mod eval;
pub mod guide;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod resolve;
pub mod stdlib;
pub mod syntax;
pub mod tope;
pub mod value;

pub use check::{normalize_term, Checker};
pub use diag::{Code, Diagnostic, Severity, Span};
