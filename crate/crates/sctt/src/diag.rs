//! Source spans, stable error codes, and structured diagnostics.

use serde::Serialize;
use std::fmt;

/// Byte range into a source file. `end` is exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }

    pub fn contains(self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// The stable error taxonomy. Codes never change meaning between releases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Code {
    /// E001: character outside the alphabet.
    LexError,
    /// E002: unexpected token.
    ParseError,
    /// E003: name not in scope.
    UnboundName,
    /// E004: term has no inferable type (bare lambda, pair, refl, hole).
    NotInferable,
    /// E005: checked type does not match.
    TypeMismatch,
    /// E006: refl endpoints are not convertible.
    ReflMismatch,
    /// E007: an extension application point is outside the shape.
    TopeUnsatisfied,
    /// E008: extension body disagrees with its mandated boundary.
    ExtensionBoundaryMismatch,
    /// E009: a name declared twice.
    DuplicateDeclaration,
    /// E010: cube context exceeds the configured cap.
    ContextTooLarge,
    /// E011: cube/tope/type layer confusion.
    LayerMismatch,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::LexError => "E001",
            Code::ParseError => "E002",
            Code::UnboundName => "E003",
            Code::NotInferable => "E004",
            Code::TypeMismatch => "E005",
            Code::ReflMismatch => "E006",
            Code::TopeUnsatisfied => "E007",
            Code::ExtensionBoundaryMismatch => "E008",
            Code::DuplicateDeclaration => "E009",
            Code::ContextTooLarge => "E010",
            Code::LayerMismatch => "E011",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

/// A single report. `counter_order` is populated for E007 and by the tope
/// subcommand, holding the least refuting weak order rendered as text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub file: Option<String>,
    pub span: Span,
    pub counter_order: Option<String>,
}

impl Diagnostic {
    pub fn error(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            file: None,
            span,
            counter_order: None,
        }
    }

    pub fn with_file(mut self, file: impl Into<String>) -> Self {
        self.file = Some(file.into());
        self
    }

    pub fn with_counter_order(mut self, order: impl Into<String>) -> Self {
        self.counter_order = Some(order.into());
        self
    }

    /// Human-readable one-line rendering.
    pub fn render_text(&self, color: bool) -> String {
        let label = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Info => "info",
        };
        let head = if color {
            format!("\x1b[1;31m{label}[{}]\x1b[0m", self.code)
        } else {
            format!("{label}[{}]", self.code)
        };
        let loc = match &self.file {
            Some(f) => format!("{f}:{}", self.span),
            None => format!("{}", self.span),
        };
        let mut line = format!("{head}: {loc}: {}", self.message);
        if let Some(w) = &self.counter_order {
            line.push_str(&format!(" (counter-order: {w})"));
        }
        line
    }

    /// Line-delimited machine output: one JSON record per diagnostic with
    /// fixed field names.
    pub fn render_structured(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            severity: Severity,
            code: &'a str,
            file: &'a str,
            start: usize,
            end: usize,
            message: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            counter_order: Option<&'a str>,
        }
        let rec = Record {
            severity: self.severity,
            code: self.code.as_str(),
            file: self.file.as_deref().unwrap_or(""),
            start: self.span.start,
            end: self.span.end,
            message: &self.message,
            counter_order: self.counter_order.as_deref(),
        };
        serde_json::to_string(&rec).expect("diagnostic serializes")
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text(false))
    }
}
