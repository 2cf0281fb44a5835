//! The user guide, embedded as doc-tests.
//!
//! Each module mirrors one chapter of the mdbook under `book/`; the
//! `include_str!` wiring makes `cargo test --doc` run every Rust snippet
//! in the book, so the guide can never drift from the implementation.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/type-theory.md")]
pub mod type_theory {}

#[doc = include_str!("../../../book/src/tope-logic.md")]
pub mod tope_logic {}

#[doc = include_str!("../../../book/src/extension-types.md")]
pub mod extension_types {}

#[doc = include_str!("../../../book/src/library.md")]
pub mod library {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli_guide {}
