//! The lexer. Line comments run from `--` to end of line; the alphabet is
//! ASCII only. Token spans are non-overlapping and, together with skipped
//! whitespace and comments, cover the input exactly.

use crate::diag::{Code, Diagnostic, Span};
use crate::syntax::{Token, TokenKind, KEYWORDS};

/// Multi-character symbols, longest first so lexing is greedy.
const SYMBOLS: &[&str] = &[
    "===", "|->", "=_{", ":=", "->", "<=", "/\\", "\\/", "(", ")", "{", "}", "[", "]", "<", ">",
    ",", ";", ":", "*", "@", "\\", "?", "|",
];

pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        // line comment
        if c == b'-' && bytes.get(i + 1) == Some(&b'-') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        // identifiers and keywords; `#check` lexes as one keyword token
        if c.is_ascii_alphabetic() || c == b'_' || c == b'#' {
            let start = i;
            i += 1;
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
            {
                i += 1;
            }
            let text = &source[start..i];
            let kind = if KEYWORDS.contains(&text) {
                TokenKind::Keyword
            } else if text.starts_with('#') {
                return Err(Diagnostic::error(
                    Code::LexError,
                    Span::new(start, i),
                    format!("unknown directive `{text}`"),
                ));
            } else {
                TokenKind::Ident
            };
            tokens.push(Token {
                kind,
                text: text.to_string(),
                span: Span::new(start, i),
            });
            continue;
        }
        // endpoint literals and the interval keyword `2`
        if c == b'0' || c == b'1' || c == b'2' {
            if bytes
                .get(i + 1)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
            {
                return Err(Diagnostic::error(
                    Code::LexError,
                    Span::new(i, i + 1),
                    "the only numerals in the language are the endpoints 0 and 1 and the interval 2",
                ));
            }
            let kind = if c == b'2' {
                TokenKind::Keyword
            } else {
                TokenKind::Endpoint
            };
            tokens.push(Token {
                kind,
                text: (c as char).to_string(),
                span: Span::new(i, i + 1),
            });
            i += 1;
            continue;
        }
        for sym in SYMBOLS {
            if source[i..].starts_with(sym) {
                tokens.push(Token {
                    kind: TokenKind::Symbol,
                    text: (*sym).to_string(),
                    span: Span::new(i, i + sym.len()),
                });
                i += sym.len();
                continue 'outer;
            }
        }
        return Err(Diagnostic::error(
            Code::LexError,
            Span::new(i, i + 1),
            format!("character `{}` is outside the alphabet", c as char),
        ));
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(src: &str) -> Vec<String> {
        tokenize(src).unwrap().into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn single_identifier() {
        let toks = tokenize("refl").unwrap();
        assert_eq!(toks.len(), 1);
        assert_eq!(toks[0].text, "refl");
    }

    #[test]
    fn cube_binder_tokens() {
        let toks = tokenize("(t : 2)").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| (t.kind, t.text.as_str())).collect();
        assert_eq!(
            kinds,
            vec![
                (TokenKind::Symbol, "("),
                (TokenKind::Ident, "t"),
                (TokenKind::Symbol, ":"),
                (TokenKind::Keyword, "2"),
                (TokenKind::Symbol, ")"),
            ]
        );
    }

    #[test]
    fn identity_type_tokens() {
        assert_eq!(texts("x =_{A} y"), vec!["x", "=_{", "A", "}", "y"]);
    }

    #[test]
    fn comments_and_coverage() {
        let src = "def x -- trailing\n: U";
        let toks = tokenize(src).unwrap();
        assert_eq!(texts(src), vec!["def", "x", ":", "U"]);
        // spans are non-overlapping and in order
        for w in toks.windows(2) {
            assert!(w[0].span.end <= w[1].span.start);
        }
        // concatenating token texts and skipped gaps reconstructs the input
        let mut rebuilt = String::new();
        let mut pos = 0;
        for t in &toks {
            rebuilt.push_str(&src[pos..t.span.start]);
            rebuilt.push_str(&t.text);
            pos = t.span.end;
        }
        rebuilt.push_str(&src[pos..]);
        assert_eq!(rebuilt, src);
    }

    #[test]
    fn bad_character_reports_first_offender() {
        let err = tokenize("x + y").unwrap_err();
        assert_eq!(err.code, Code::LexError);
        assert_eq!(err.span, Span::new(2, 3));
    }

    #[test]
    fn multi_char_symbols() {
        assert_eq!(
            texts("s <= t === u /\\ TOP \\/ BOT |-> :="),
            vec!["s", "<=", "t", "===", "u", "/\\", "TOP", "\\/", "BOT", "|->", ":="]
        );
    }
}
