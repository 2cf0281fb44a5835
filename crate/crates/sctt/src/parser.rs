//! Recursive-descent parser for modules and terms.
//!
//! Precedence, low to high: tope connectives in term position, `->`
//! (right-associative), `(x : A) * B` (right-associative), `=_{A}`
//! (non-associative), application (left-associative), `@`-application,
//! atoms. Lambdas extend as far right as possible.

use crate::diag::{Code, Diagnostic, Span};
use crate::syntax::*;

pub struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    /// End of input, for error spans at EOF.
    eof: usize,
}

type PResult<T> = Result<T, Diagnostic>;

pub fn parse_module(tokens: &[Token]) -> PResult<Vec<Decl>> {
    let mut p = Parser::new(tokens);
    let mut decls = Vec::new();
    while !p.at_end() {
        decls.push(p.decl()?);
    }
    Ok(decls)
}

pub fn parse_tope(tokens: &[Token]) -> PResult<STope> {
    let mut p = Parser::new(tokens);
    let t = p.tope()?;
    if !p.at_end() {
        return Err(p.err_here("end of input"));
    }
    Ok(t)
}

pub fn parse_term(tokens: &[Token]) -> PResult<Term> {
    let mut p = Parser::new(tokens);
    let t = p.term()?;
    if !p.at_end() {
        return Err(p.err_here("expected end of input"));
    }
    Ok(t)
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        let eof = tokens.last().map(|t| t.span.end).unwrap_or(0);
        Parser { tokens, pos: 0, eof }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, off: usize) -> Option<&'a Token> {
        self.tokens.get(self.pos + off)
    }

    fn span_here(&self) -> Span {
        self.peek()
            .map(|t| t.span)
            .unwrap_or(Span::new(self.eof, self.eof))
    }

    fn err_here(&self, expected: &str) -> Diagnostic {
        let msg = match self.peek() {
            Some(t) => format!("expected {expected}, found `{}`", t.text),
            None => format!("expected {expected}, found end of input"),
        };
        Diagnostic::error(Code::ParseError, self.span_here(), msg)
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.text == text)
    }

    fn eat(&mut self, text: &str) -> Option<&'a Token> {
        if self.at(text) {
            self.bump()
        } else {
            None
        }
    }

    fn expect(&mut self, text: &str) -> PResult<&'a Token> {
        self.eat(text).ok_or_else(|| self.err_here(&format!("`{text}`")))
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => {
                self.bump();
                Ok((t.text.clone(), t.span))
            }
            _ => Err(self.err_here("a name")),
        }
    }

    // ---- declarations ----

    fn decl(&mut self) -> PResult<Decl> {
        let start = self.span_here();
        if self.eat("def").is_some() {
            let name = self.ident()?;
            let params = self.params()?;
            self.expect(":")?;
            let ty = self.term()?;
            self.expect(":=")?;
            let body = self.term()?;
            let end = self.expect(";")?.span;
            Ok(Decl {
                kind: DeclKind::Def,
                name: Some(name),
                params,
                ty,
                body: Some(body),
                span: start.join(end),
            })
        } else if self.eat("postulate").is_some() {
            let name = self.ident()?;
            let params = self.params()?;
            self.expect(":")?;
            let ty = self.term()?;
            let end = self.expect(";")?.span;
            Ok(Decl {
                kind: DeclKind::Postulate,
                name: Some(name),
                params,
                ty,
                body: None,
                span: start.join(end),
            })
        } else if self.eat("#check").is_some() {
            let body = self.term()?;
            self.expect(":")?;
            let ty = self.term()?;
            let end = self.expect(";")?.span;
            Ok(Decl {
                kind: DeclKind::Check,
                name: None,
                params: Vec::new(),
                ty,
                body: Some(body),
                span: start.join(end),
            })
        } else {
            Err(self.err_here("`def`, `postulate`, or `#check`"))
        }
    }

    fn params(&mut self) -> PResult<Vec<ParamGroup>> {
        let mut groups = Vec::new();
        loop {
            if self.at("[") {
                self.bump();
                let tope = self.tope()?;
                self.expect("]")?;
                groups.push(ParamGroup::Tope(tope));
            } else if self.at("(") {
                self.bump();
                let mut names = vec![self.ident()?];
                while self.peek().is_some_and(|t| t.kind == TokenKind::Ident) {
                    names.push(self.ident()?);
                }
                self.expect(":")?;
                if self.at("2") && self.peek_at(1).is_some_and(|t| t.text == ")") {
                    self.bump();
                    self.expect(")")?;
                    groups.push(ParamGroup::Cube { names });
                } else {
                    let ann = self.term()?;
                    self.expect(")")?;
                    groups.push(ParamGroup::Type { names, ann });
                }
            } else {
                break;
            }
        }
        Ok(groups)
    }

    // ---- topes ----

    fn interval(&mut self) -> PResult<SInterval> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Ident => {
                self.bump();
                Ok(SInterval::Name(t.text.clone(), t.span))
            }
            Some(t) if t.text == "0" => {
                self.bump();
                Ok(SInterval::Zero(t.span))
            }
            Some(t) if t.text == "1" => {
                self.bump();
                Ok(SInterval::One(t.span))
            }
            _ => Err(self.err_here("an interval point (a name, 0, or 1)")),
        }
    }

    pub fn tope(&mut self) -> PResult<STope> {
        let mut lhs = self.tope_conj()?;
        while self.eat("\\/").is_some() {
            let rhs = self.tope_conj()?;
            lhs = STope::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn tope_conj(&mut self) -> PResult<STope> {
        let mut lhs = self.tope_atom()?;
        while self.eat("/\\").is_some() {
            let rhs = self.tope_atom()?;
            lhs = STope::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn tope_atom(&mut self) -> PResult<STope> {
        if let Some(t) = self.eat("TOP") {
            return Ok(STope::Top(t.span));
        }
        if let Some(t) = self.eat("BOT") {
            return Ok(STope::Bot(t.span));
        }
        if self.eat("(").is_some() {
            let t = self.tope()?;
            self.expect(")")?;
            return Ok(t);
        }
        let lhs = self.interval()?;
        if self.eat("<=").is_some() {
            let rhs = self.interval()?;
            Ok(STope::Le(lhs, rhs))
        } else if self.eat("===").is_some() {
            let rhs = self.interval()?;
            Ok(STope::Eq(lhs, rhs))
        } else {
            Err(self.err_here("`<=` or `===`"))
        }
    }

    // ---- terms ----

    pub fn term(&mut self) -> PResult<Term> {
        let lhs = self.arrow_term()?;
        // Tope atoms and connectives in term position parse here so the
        // kernel can reject them with a layer diagnostic instead of a
        // parse error.
        if self.at("<=") || self.at("===") {
            let op_le = self.at("<=");
            self.bump();
            let rhs = self.arrow_term()?;
            let span = lhs.span.join(rhs.span);
            let li = term_as_interval(&lhs);
            let ri = term_as_interval(&rhs);
            let (li, ri) = match (li, ri) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Diagnostic::error(
                        Code::ParseError,
                        span,
                        "tope atoms compare interval points only",
                    ))
                }
            };
            let atom = if op_le {
                STope::Le(li, ri)
            } else {
                STope::Eq(li, ri)
            };
            let mut tope = atom;
            while self.at("/\\") || self.at("\\/") {
                let and = self.at("/\\");
                self.bump();
                let rhs = self.tope()?;
                tope = if and {
                    STope::And(Box::new(tope), Box::new(rhs))
                } else {
                    STope::Or(Box::new(tope), Box::new(rhs))
                };
            }
            let span = span.join(tope.span());
            return Ok(Term::new(TermNode::TopeTerm(tope), span));
        }
        Ok(lhs)
    }

    fn arrow_term(&mut self) -> PResult<Term> {
        let start = self.span_here();
        // lambdas and extension lambdas
        if self.at("\\") {
            self.bump();
            if self.eat("{").is_some() {
                let mut names = vec![self.ident()?];
                while self.peek().is_some_and(|t| t.kind == TokenKind::Ident) {
                    names.push(self.ident()?);
                }
                self.expect("}")?;
                self.expect("->")?;
                let body = self.arrow_term()?;
                let span = start.join(body.span);
                return Ok(Term::new(
                    TermNode::ExtLambda { names, body: Box::new(body) },
                    span,
                ));
            }
            let mut names = vec![self.ident()?];
            while self.peek().is_some_and(|t| t.kind == TokenKind::Ident) {
                names.push(self.ident()?);
            }
            self.expect("->")?;
            let body = self.arrow_term()?;
            let span = start.join(body.span);
            let mut term = body;
            for (name, _) in names.into_iter().rev() {
                term = Term::new(TermNode::Lambda { name, body: Box::new(term) }, span);
            }
            return Ok(term);
        }
        // dependent binder group `(x : A) -> B` or `(x : A) * B`
        if let Some(term) = self.try_binder_group()? {
            return Ok(term);
        }
        let lhs = self.eq_term()?;
        if self.eat("->").is_some() {
            let cod = self.arrow_term()?;
            let span = lhs.span.join(cod.span);
            return Ok(Term::new(
                TermNode::Pi {
                    name: "_".to_string(),
                    dom: Box::new(lhs),
                    cod: Box::new(cod),
                },
                span,
            ));
        }
        Ok(lhs)
    }

    /// Attempt `( NAME+ : term )` followed by `->` or `*`; backtracks on
    /// any other shape.
    fn try_binder_group(&mut self) -> PResult<Option<Term>> {
        if !self.at("(") {
            return Ok(None);
        }
        let save = self.pos;
        let start = self.span_here();
        self.bump();
        let mut names = Vec::new();
        while self.peek().is_some_and(|t| t.kind == TokenKind::Ident) {
            names.push(self.ident()?);
        }
        if names.is_empty() || !self.at(":") {
            self.pos = save;
            return Ok(None);
        }
        self.bump();
        let ann = match self.term() {
            Ok(t) => t,
            Err(_) => {
                self.pos = save;
                return Ok(None);
            }
        };
        if self.eat(")").is_none() {
            self.pos = save;
            return Ok(None);
        }
        if self.eat("->").is_some() {
            let cod = self.arrow_term()?;
            let span = start.join(cod.span);
            let mut term = cod;
            for (name, _) in names.into_iter().rev() {
                term = Term::new(
                    TermNode::Pi {
                        name,
                        dom: Box::new(ann.clone()),
                        cod: Box::new(term),
                    },
                    span,
                );
            }
            Ok(Some(term))
        } else if self.eat("*").is_some() {
            let snd = self.arrow_term()?;
            let span = start.join(snd.span);
            let mut term = snd;
            for (name, _) in names.into_iter().rev() {
                term = Term::new(
                    TermNode::Sigma {
                        name,
                        fst: Box::new(ann.clone()),
                        snd: Box::new(term),
                    },
                    span,
                );
            }
            Ok(Some(term))
        } else {
            self.pos = save;
            Ok(None)
        }
    }

    fn eq_term(&mut self) -> PResult<Term> {
        let lhs = self.app_term()?;
        if self.eat("=_{").is_some() {
            let ty = self.term()?;
            self.expect("}")?;
            let rhs = self.app_term()?;
            if self.at("=_{") {
                return Err(self.err_here("`=_{` is non-associative; parenthesize"));
            }
            let span = lhs.span.join(rhs.span);
            return Ok(Term::new(
                TermNode::Id {
                    ty: Box::new(ty),
                    lhs: Box::new(lhs),
                    rhs: Box::new(rhs),
                },
                span,
            ));
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(t) => match t.kind {
                TokenKind::Ident | TokenKind::Endpoint => true,
                TokenKind::Keyword => {
                    matches!(t.text.as_str(), "U" | "2" | "refl" | "idJ" | "first" | "second"
                        | "recOR" | "TOP" | "BOT")
                }
                TokenKind::Symbol => matches!(t.text.as_str(), "(" | "<" | "?"),
            },
            None => false,
        }
    }

    fn app_term(&mut self) -> PResult<Term> {
        let mut head = self.prefix_term()?;
        while self.starts_atom() {
            let arg = self.prefix_term()?;
            let span = head.span.join(arg.span);
            head = Term::new(TermNode::App(Box::new(head), Box::new(arg)), span);
        }
        Ok(head)
    }

    fn prefix_term(&mut self) -> PResult<Term> {
        let start = self.span_here();
        if self.eat("first").is_some() {
            // A bare projection is a (non-inferable) hole projection, not a
            // parse error.
            if !self.starts_atom() {
                return Ok(Term::new(
                    TermNode::First(Box::new(Term::new(TermNode::Hole, start))),
                    start,
                ));
            }
            let arg = self.prefix_term()?;
            let span = start.join(arg.span);
            return Ok(Term::new(TermNode::First(Box::new(arg)), span));
        }
        if self.eat("second").is_some() {
            if !self.starts_atom() {
                return Ok(Term::new(
                    TermNode::Second(Box::new(Term::new(TermNode::Hole, start))),
                    start,
                ));
            }
            let arg = self.prefix_term()?;
            let span = start.join(arg.span);
            return Ok(Term::new(TermNode::Second(Box::new(arg)), span));
        }
        self.postfix_term()
    }

    fn postfix_term(&mut self) -> PResult<Term> {
        let mut term = self.atom()?;
        while self.at("@") {
            self.bump();
            self.expect("(")?;
            let mut args = vec![self.interval()?];
            while self.eat(",").is_some() {
                args.push(self.interval()?);
            }
            let end = self.expect(")")?.span;
            let span = term.span.join(end);
            term = Term::new(TermNode::ExtApp { fun: Box::new(term), args }, span);
        }
        Ok(term)
    }

    fn atom(&mut self) -> PResult<Term> {
        let start = self.span_here();
        let tok = match self.peek() {
            Some(t) => t,
            None => return Err(self.err_here("a term")),
        };
        match tok.text.as_str() {
            "U" => {
                self.bump();
                Ok(Term::new(TermNode::Universe, start))
            }
            "2" => {
                self.bump();
                Ok(Term::new(TermNode::Cube2, start))
            }
            "0" | "1" => {
                self.bump();
                Ok(Term::new(TermNode::Endpoint(tok.text == "1"), start))
            }
            "refl" => {
                self.bump();
                Ok(Term::new(TermNode::Refl, start))
            }
            "?" => {
                self.bump();
                Ok(Term::new(TermNode::Hole, start))
            }
            "TOP" => {
                self.bump();
                Ok(Term::new(TermNode::TopeTerm(STope::Top(start)), start))
            }
            "BOT" => {
                self.bump();
                Ok(Term::new(TermNode::TopeTerm(STope::Bot(start)), start))
            }
            "idJ" => {
                self.bump();
                self.expect("(")?;
                let mut args = Vec::with_capacity(6);
                args.push(self.term()?);
                for _ in 0..5 {
                    self.expect(",")?;
                    args.push(self.term()?);
                }
                let end = self.expect(")")?.span;
                let span = start.join(end);
                let boxed: Box<[Term; 6]> =
                    Box::new(args.try_into().expect("exactly six idJ arguments"));
                Ok(Term::new(TermNode::IdJ(boxed), span))
            }
            "recOR" => {
                self.bump();
                self.expect("(")?;
                let mut cases = Vec::new();
                loop {
                    let tope = self.tope()?;
                    self.expect("|->")?;
                    let body = self.term()?;
                    cases.push((tope, body));
                    if self.eat(",").is_none() {
                        break;
                    }
                }
                let end = self.expect(")")?.span;
                Ok(Term::new(TermNode::RecOr { cases }, start.join(end)))
            }
            "<" => self.extension_type(),
            "(" => {
                self.bump();
                let inner = self.term()?;
                if self.eat(",").is_some() {
                    let snd = self.term()?;
                    let end = self.expect(")")?.span;
                    Ok(Term::new(
                        TermNode::Pair(Box::new(inner), Box::new(snd)),
                        start.join(end),
                    ))
                } else if self.eat(":").is_some() {
                    let ty = self.term()?;
                    let end = self.expect(")")?.span;
                    Ok(Term::new(
                        TermNode::Anno { term: Box::new(inner), ty: Box::new(ty) },
                        start.join(end),
                    ))
                } else {
                    let end = self.expect(")")?.span;
                    Ok(Term::new(inner.node, start.join(end)))
                }
            }
            _ if tok.kind == TokenKind::Ident => {
                self.bump();
                Ok(Term::new(TermNode::Var(tok.text.clone()), start))
            }
            _ => Err(self.err_here("a term")),
        }
    }

    /// `<{t s : 2*2 | psi} -> A [phi |-> a, ...]>` — the boundary clause
    /// may be omitted, meaning no constraint.
    fn extension_type(&mut self) -> PResult<Term> {
        let start = self.expect("<")?.span;
        self.expect("{")?;
        let mut names = vec![self.ident()?];
        while self.peek().is_some_and(|t| t.kind == TokenKind::Ident) {
            names.push(self.ident()?);
        }
        self.expect(":")?;
        let mut dim = 1;
        self.expect("2")?;
        while self.eat("*").is_some() {
            self.expect("2")?;
            dim += 1;
        }
        if dim != names.len() {
            return Err(Diagnostic::error(
                Code::ParseError,
                start.join(self.span_here()),
                format!(
                    "extension type binds {} name(s) but its cube has dimension {dim}",
                    names.len()
                ),
            ));
        }
        self.expect("|")?;
        let psi = self.tope()?;
        self.expect("}")?;
        self.expect("->")?;
        let cod = self.term()?;
        let mut cases = Vec::new();
        if self.eat("[").is_some() {
            loop {
                let tope = self.tope()?;
                self.expect("|->")?;
                let body = self.term()?;
                cases.push((tope, body));
                if self.eat(",").is_none() {
                    break;
                }
            }
            self.expect("]")?;
        }
        let end = self.expect(">")?.span;
        Ok(Term::new(
            TermNode::Extension { names, psi, cod: Box::new(cod), cases },
            start.join(end),
        ))
    }
}

fn term_as_interval(t: &Term) -> Option<SInterval> {
    match &t.node {
        TermNode::Var(x) => Some(SInterval::Name(x.clone(), t.span)),
        TermNode::Endpoint(false) => Some(SInterval::Zero(t.span)),
        TermNode::Endpoint(true) => Some(SInterval::One(t.span)),
        _ => None,
    }
}
