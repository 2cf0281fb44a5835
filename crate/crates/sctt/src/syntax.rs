//! Concrete-syntax trees for the proof language, produced by the parser.

use crate::diag::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Keyword,
    Symbol,
    /// Exactly "0" or "1"; no other numerals exist in the language.
    Endpoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
}

pub const KEYWORDS: &[&str] = &[
    "def",
    "postulate",
    "#check",
    "U",
    "2",
    "refl",
    "idJ",
    "first",
    "second",
    "recOR",
    "TOP",
    "BOT",
];

/// An interval expression in the surface syntax: a name or an endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SInterval {
    Zero(Span),
    One(Span),
    Name(String, Span),
}

impl SInterval {
    pub fn span(&self) -> Span {
        match self {
            SInterval::Zero(s) | SInterval::One(s) => *s,
            SInterval::Name(_, s) => *s,
        }
    }
}

/// A surface tope formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum STope {
    Top(Span),
    Bot(Span),
    Le(SInterval, SInterval),
    Eq(SInterval, SInterval),
    And(Box<STope>, Box<STope>),
    Or(Box<STope>, Box<STope>),
}

impl STope {
    pub fn span(&self) -> Span {
        match self {
            STope::Top(s) | STope::Bot(s) => *s,
            STope::Le(a, b) | STope::Eq(a, b) => a.span().join(b.span()),
            STope::And(a, b) | STope::Or(a, b) => a.span().join(b.span()),
        }
    }
}

/// A surface term together with its source span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub node: TermNode,
    pub span: Span,
}

impl Term {
    pub fn new(node: TermNode, span: Span) -> Self {
        Term { node, span }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermNode {
    Var(String),
    Universe,
    /// The directed interval `2`; only legal as a cube-binder annotation.
    Cube2,
    /// An endpoint literal used in term position (always a layer error).
    Endpoint(bool),
    Pi {
        name: String,
        dom: Box<Term>,
        cod: Box<Term>,
    },
    Lambda {
        name: String,
        body: Box<Term>,
    },
    App(Box<Term>, Box<Term>),
    Sigma {
        name: String,
        fst: Box<Term>,
        snd: Box<Term>,
    },
    Pair(Box<Term>, Box<Term>),
    First(Box<Term>),
    Second(Box<Term>),
    Id {
        ty: Box<Term>,
        lhs: Box<Term>,
        rhs: Box<Term>,
    },
    Refl,
    /// `idJ(A, x, C, d, y, p)` — exactly six children.
    IdJ(Box<[Term; 6]>),
    /// `(t : T)` — a type-annotated term.
    Anno {
        term: Box<Term>,
        ty: Box<Term>,
    },
    Hole,
    /// A tope used in term position (always a layer error downstream).
    TopeTerm(STope),
    /// `<{t ... : 2*...*2 | psi} -> A [phi |-> a, ...]>`
    Extension {
        names: Vec<(String, Span)>,
        psi: STope,
        cod: Box<Term>,
        cases: Vec<(STope, Term)>,
    },
    /// `\{t ...} -> body`
    ExtLambda {
        names: Vec<(String, Span)>,
        body: Box<Term>,
    },
    /// `f @ (i, ...)`
    ExtApp {
        fun: Box<Term>,
        args: Vec<SInterval>,
    },
    /// `recOR(phi |-> a, ...)` — definition by tope cases.
    RecOr {
        cases: Vec<(STope, Term)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclKind {
    Def,
    Postulate,
    Check,
}

/// One parameter group of a declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamGroup {
    /// `(x y : A)` — type layer.
    Type {
        names: Vec<(String, Span)>,
        ann: Term,
    },
    /// `(t s : 2)` — cube layer.
    Cube { names: Vec<(String, Span)> },
    /// `[ tope ]` — tope layer.
    Tope(STope),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub kind: DeclKind,
    /// `None` for anonymous `#check` directives.
    pub name: Option<(String, Span)>,
    pub params: Vec<ParamGroup>,
    pub ty: Term,
    pub body: Option<Term>,
    pub span: Span,
}

/// Alpha-equivalence of surface terms, used by the roundtrip property.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    alpha_eq_in(&mut Vec::new(), a, b)
}

fn lookup(env: &[(String, String)], name: &str, left: bool) -> Option<usize> {
    env.iter()
        .rev()
        .position(|(l, r)| if left { l == name } else { r == name })
}

fn var_eq(env: &[(String, String)], x: &str, y: &str) -> bool {
    match (lookup(env, x, true), lookup(env, y, false)) {
        (Some(i), Some(j)) => i == j,
        (None, None) => x == y,
        _ => false,
    }
}

fn interval_eq(env: &[(String, String)], a: &SInterval, b: &SInterval) -> bool {
    match (a, b) {
        (SInterval::Zero(_), SInterval::Zero(_)) => true,
        (SInterval::One(_), SInterval::One(_)) => true,
        (SInterval::Name(x, _), SInterval::Name(y, _)) => var_eq(env, x, y),
        _ => false,
    }
}

fn tope_eq(env: &[(String, String)], a: &STope, b: &STope) -> bool {
    match (a, b) {
        (STope::Top(_), STope::Top(_)) | (STope::Bot(_), STope::Bot(_)) => true,
        (STope::Le(a1, a2), STope::Le(b1, b2)) | (STope::Eq(a1, a2), STope::Eq(b1, b2)) => {
            interval_eq(env, a1, b1) && interval_eq(env, a2, b2)
        }
        (STope::And(a1, a2), STope::And(b1, b2)) | (STope::Or(a1, a2), STope::Or(b1, b2)) => {
            tope_eq(env, a1, b1) && tope_eq(env, a2, b2)
        }
        _ => false,
    }
}

fn alpha_eq_in(env: &mut Vec<(String, String)>, a: &Term, b: &Term) -> bool {
    use TermNode::*;
    match (&a.node, &b.node) {
        (Var(x), Var(y)) => var_eq(env, x, y),
        (Universe, Universe) | (Cube2, Cube2) | (Refl, Refl) | (Hole, Hole) => true,
        (Endpoint(x), Endpoint(y)) => x == y,
        (
            Pi { name: n1, dom: d1, cod: c1 },
            Pi { name: n2, dom: d2, cod: c2 },
        ) => {
            alpha_eq_in(env, d1, d2) && {
                env.push((n1.clone(), n2.clone()));
                let r = alpha_eq_in(env, c1, c2);
                env.pop();
                r
            }
        }
        (
            Sigma { name: n1, fst: d1, snd: c1 },
            Sigma { name: n2, fst: d2, snd: c2 },
        ) => {
            alpha_eq_in(env, d1, d2) && {
                env.push((n1.clone(), n2.clone()));
                let r = alpha_eq_in(env, c1, c2);
                env.pop();
                r
            }
        }
        (Lambda { name: n1, body: b1 }, Lambda { name: n2, body: b2 }) => {
            env.push((n1.clone(), n2.clone()));
            let r = alpha_eq_in(env, b1, b2);
            env.pop();
            r
        }
        (App(f1, a1), App(f2, a2)) => alpha_eq_in(env, f1, f2) && alpha_eq_in(env, a1, a2),
        (Pair(f1, s1), Pair(f2, s2)) => alpha_eq_in(env, f1, f2) && alpha_eq_in(env, s1, s2),
        (First(t1), First(t2)) | (Second(t1), Second(t2)) => alpha_eq_in(env, t1, t2),
        (
            Id { ty: t1, lhs: l1, rhs: r1 },
            Id { ty: t2, lhs: l2, rhs: r2 },
        ) => alpha_eq_in(env, t1, t2) && alpha_eq_in(env, l1, l2) && alpha_eq_in(env, r1, r2),
        (IdJ(a1), IdJ(a2)) => a1.iter().zip(a2.iter()).all(|(x, y)| alpha_eq_in(env, x, y)),
        (Anno { term: t1, ty: y1 }, Anno { term: t2, ty: y2 }) => {
            alpha_eq_in(env, t1, t2) && alpha_eq_in(env, y1, y2)
        }
        (TopeTerm(t1), TopeTerm(t2)) => tope_eq(env, t1, t2),
        (
            Extension { names: n1, psi: p1, cod: c1, cases: e1 },
            Extension { names: n2, psi: p2, cod: c2, cases: e2 },
        ) => {
            if n1.len() != n2.len() || e1.len() != e2.len() {
                return false;
            }
            for ((x, _), (y, _)) in n1.iter().zip(n2.iter()) {
                env.push((x.clone(), y.clone()));
            }
            let r = tope_eq(env, p1, p2)
                && alpha_eq_in(env, c1, c2)
                && e1.iter().zip(e2.iter()).all(|((q1, t1), (q2, t2))| {
                    tope_eq(env, q1, q2) && alpha_eq_in(env, t1, t2)
                });
            for _ in n1 {
                env.pop();
            }
            r
        }
        (
            ExtLambda { names: n1, body: b1 },
            ExtLambda { names: n2, body: b2 },
        ) => {
            if n1.len() != n2.len() {
                return false;
            }
            for ((x, _), (y, _)) in n1.iter().zip(n2.iter()) {
                env.push((x.clone(), y.clone()));
            }
            let r = alpha_eq_in(env, b1, b2);
            for _ in n1 {
                env.pop();
            }
            r
        }
        (
            ExtApp { fun: f1, args: a1 },
            ExtApp { fun: f2, args: a2 },
        ) => {
            alpha_eq_in(env, f1, f2)
                && a1.len() == a2.len()
                && a1.iter().zip(a2.iter()).all(|(x, y)| interval_eq(env, x, y))
        }
        (RecOr { cases: e1 }, RecOr { cases: e2 }) => {
            e1.len() == e2.len()
                && e1.iter().zip(e2.iter()).all(|((q1, t1), (q2, t2))| {
                    tope_eq(env, q1, q2) && alpha_eq_in(env, t1, t2)
                })
        }
        _ => false,
    }
}
