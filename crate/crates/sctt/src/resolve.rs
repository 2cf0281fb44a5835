//! Scope checking: resolves names to de Bruijn indices, separates the
//! cube and type layers, and rejects forward references.

use crate::core::{CInterval, CTerm, CTope, Core};
use crate::diag::{Code, Diagnostic, Span};
use crate::syntax::*;
use crate::tope::{Interval, Tope};
use std::collections::BTreeSet;
use std::rc::Rc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclLayer {
    Def,
    Postulate,
}

/// A scope-checked declaration ready for the kernel: parameters are folded
/// into the stated type and body.
#[derive(Debug, Clone)]
pub struct ResolvedDecl {
    pub kind: DeclKind,
    pub name: Option<String>,
    pub ty: CTerm,
    pub body: Option<CTerm>,
    pub span: Span,
}

enum Entry {
    Type(String),
    Cube(String),
}

pub struct Resolver<'g> {
    stack: Vec<Entry>,
    globals: &'g BTreeSet<String>,
}

/// Resolve a whole module. Earlier declarations scope over later ones.
pub fn resolve_module(decls: &[Decl]) -> Result<Vec<ResolvedDecl>, Diagnostic> {
    let mut globals = BTreeSet::new();
    let mut out = Vec::new();
    for d in decls {
        out.push(resolve_decl(d, &globals)?);
        if let Some((name, span)) = &d.name {
            if !globals.insert(name.clone()) {
                return Err(Diagnostic::error(
                    Code::DuplicateDeclaration,
                    *span,
                    format!("`{name}` is declared twice"),
                ));
            }
        }
    }
    Ok(out)
}

pub fn resolve_decl(d: &Decl, globals: &BTreeSet<String>) -> Result<ResolvedDecl, Diagnostic> {
    let (ty, body) = fold_params(d)?;
    let mut r = Resolver { stack: Vec::new(), globals };
    let ty = r.term(&ty)?;
    debug_assert!(r.stack.is_empty());
    let body = match &body {
        Some(b) => Some(r.term(b)?),
        None => None,
    };
    Ok(ResolvedDecl {
        kind: d.kind,
        name: d.name.as_ref().map(|(n, _)| n.clone()),
        ty,
        body,
        span: d.span,
    })
}

/// Resolve a standalone term in the scope of the given globals.
pub fn resolve_term(t: &Term, globals: &BTreeSet<String>) -> Result<CTerm, Diagnostic> {
    let mut r = Resolver { stack: Vec::new(), globals };
    r.term(t)
}

/// Desugar parameter groups into the stated type and body. A run of cube
/// groups followed by tope groups becomes one extension binder; a type
/// group becomes Pi binders (and lambdas on the body).
fn fold_params(d: &Decl) -> Result<(Term, Option<Term>), Diagnostic> {
    let mut ty = d.ty.clone();
    let mut body = d.body.clone();
    let mut i = d.params.len();
    while i > 0 {
        // find the start of the trailing group run
        match &d.params[i - 1] {
            ParamGroup::Type { names, ann } => {
                i -= 1;
                for (name, _) in names.iter().rev() {
                    let span = ty.span;
                    ty = Term::new(
                        TermNode::Pi {
                            name: name.clone(),
                            dom: Box::new(ann.clone()),
                            cod: Box::new(ty),
                        },
                        span,
                    );
                    body = body.map(|b| {
                        let span = b.span;
                        Term::new(
                            TermNode::Lambda { name: name.clone(), body: Box::new(b) },
                            span,
                        )
                    });
                }
            }
            ParamGroup::Tope(t) => {
                // scan left for the cube run this tope run attaches to
                let mut j = i;
                while j > 0 && matches!(d.params[j - 1], ParamGroup::Tope(_)) {
                    j -= 1;
                }
                if j == 0 || !matches!(d.params[j - 1], ParamGroup::Cube { .. }) {
                    return Err(Diagnostic::error(
                        Code::LayerMismatch,
                        t.span(),
                        "a tope parameter must follow cube parameters in its group",
                    ));
                }
                let mut k = j;
                while k > 0 && matches!(d.params[k - 1], ParamGroup::Cube { .. }) {
                    k -= 1;
                }
                let (t2, b2) = fold_cube_run(&d.params[k..i], ty, body);
                ty = t2;
                body = b2;
                i = k;
            }
            ParamGroup::Cube { .. } => {
                let mut k = i;
                while k > 0 && matches!(d.params[k - 1], ParamGroup::Cube { .. }) {
                    k -= 1;
                }
                let (t2, b2) = fold_cube_run(&d.params[k..i], ty, body);
                ty = t2;
                body = b2;
                i = k;
            }
        }
    }
    Ok((ty, body))
}

fn fold_cube_run(run: &[ParamGroup], ty: Term, body: Option<Term>) -> (Term, Option<Term>) {
    let mut names = Vec::new();
    let mut topes = Vec::new();
    for g in run {
        match g {
            ParamGroup::Cube { names: ns } => names.extend(ns.iter().cloned()),
            ParamGroup::Tope(t) => topes.push(t.clone()),
            ParamGroup::Type { .. } => unreachable!("cube run contains only cube/tope groups"),
        }
    }
    let span = ty.span;
    let psi = match topes.len() {
        0 => STope::Top(span),
        _ => {
            let mut it = topes.into_iter();
            let first = it.next().unwrap();
            it.fold(first, |a, b| STope::And(Box::new(a), Box::new(b)))
        }
    };
    let ty = Term::new(
        TermNode::Extension {
            names: names.clone(),
            psi,
            cod: Box::new(ty),
            cases: Vec::new(),
        },
        span,
    );
    let body = body.map(|b| {
        let span = b.span;
        Term::new(TermNode::ExtLambda { names, body: Box::new(b) }, span)
    });
    (ty, body)
}

impl<'g> Resolver<'g> {
    fn lookup_type(&self, name: &str, span: Span) -> Result<Core, Diagnostic> {
        let mut ty_idx = 0;
        for e in self.stack.iter().rev() {
            match e {
                Entry::Type(n) => {
                    if n == name {
                        return Ok(Core::Var(ty_idx));
                    }
                    ty_idx += 1;
                }
                Entry::Cube(n) => {
                    if n == name {
                        return Err(Diagnostic::error(
                            Code::LayerMismatch,
                            span,
                            format!("`{name}` is a cube variable; it cannot be used as a term"),
                        ));
                    }
                }
            }
        }
        if self.globals.contains(name) {
            return Ok(Core::Global(name.to_string()));
        }
        Err(Diagnostic::error(
            Code::UnboundName,
            span,
            format!("unbound name `{name}`"),
        ))
    }

    fn lookup_cube(&self, name: &str, span: Span) -> Result<usize, Diagnostic> {
        let mut cube_idx = 0;
        for e in self.stack.iter().rev() {
            match e {
                Entry::Cube(n) => {
                    if n == name {
                        return Ok(cube_idx);
                    }
                    cube_idx += 1;
                }
                Entry::Type(n) => {
                    if n == name {
                        return Err(Diagnostic::error(
                            Code::LayerMismatch,
                            span,
                            format!(
                                "`{name}` is a type-layer variable; an interval point is required"
                            ),
                        ));
                    }
                }
            }
        }
        if self.globals.contains(name) {
            return Err(Diagnostic::error(
                Code::LayerMismatch,
                span,
                format!("`{name}` is a declaration; an interval point is required"),
            ));
        }
        Err(Diagnostic::error(
            Code::UnboundName,
            span,
            format!("unbound name `{name}`"),
        ))
    }

    fn interval(&self, i: &SInterval) -> Result<CInterval, Diagnostic> {
        Ok(match i {
            SInterval::Zero(_) => Interval::Zero,
            SInterval::One(_) => Interval::One,
            SInterval::Name(x, span) => Interval::Var(self.lookup_cube(x, *span)?),
        })
    }

    fn tope(&self, t: &STope) -> Result<CTope, Diagnostic> {
        Ok(match t {
            STope::Top(_) => Tope::Top,
            STope::Bot(_) => Tope::Bot,
            STope::Le(a, b) => Tope::Le(self.interval(a)?, self.interval(b)?),
            STope::Eq(a, b) => Tope::Eq(self.interval(a)?, self.interval(b)?),
            STope::And(a, b) => Tope::and(self.tope(a)?, self.tope(b)?),
            STope::Or(a, b) => Tope::or(self.tope(a)?, self.tope(b)?),
        })
    }

    fn term(&mut self, t: &Term) -> Result<CTerm, Diagnostic> {
        let span = t.span;
        let node = match &t.node {
            TermNode::Var(x) => self.lookup_type(x, span)?,
            TermNode::Universe => Core::U,
            TermNode::Cube2 => {
                return Err(Diagnostic::error(
                    Code::LayerMismatch,
                    span,
                    "the interval `2` is not a type; it may only annotate cube binders",
                ))
            }
            TermNode::Endpoint(_) => {
                return Err(Diagnostic::error(
                    Code::LayerMismatch,
                    span,
                    "interval endpoints may only appear in topes and `@` applications",
                ))
            }
            TermNode::TopeTerm(_) => {
                return Err(Diagnostic::error(
                    Code::LayerMismatch,
                    span,
                    "a tope formula cannot be used as a term",
                ))
            }
            TermNode::Pi { name, dom, cod } => {
                // `(t : 2) -> B` is a layer error: cube binders belong to
                // extension types.
                if matches!(dom.node, TermNode::Cube2) {
                    return Err(Diagnostic::error(
                        Code::LayerMismatch,
                        span,
                        "cube binders are not Pi binders; use an extension type",
                    ));
                }
                let dom = self.term(dom)?;
                self.stack.push(Entry::Type(name.clone()));
                let cod = self.term(cod);
                self.stack.pop();
                Core::Pi {
                    name: name.clone(),
                    dom: Rc::new(dom),
                    cod: Rc::new(cod?),
                }
            }
            TermNode::Sigma { name, fst, snd } => {
                if matches!(fst.node, TermNode::Cube2) {
                    return Err(Diagnostic::error(
                        Code::LayerMismatch,
                        span,
                        "cube binders are not Sigma binders; use an extension type",
                    ));
                }
                let fst = self.term(fst)?;
                self.stack.push(Entry::Type(name.clone()));
                let snd = self.term(snd);
                self.stack.pop();
                Core::Sigma {
                    name: name.clone(),
                    fst: Rc::new(fst),
                    snd: Rc::new(snd?),
                }
            }
            TermNode::Lambda { name, body } => {
                self.stack.push(Entry::Type(name.clone()));
                let body = self.term(body);
                self.stack.pop();
                Core::Lam { name: name.clone(), body: Rc::new(body?) }
            }
            TermNode::App(f, a) => Core::App(Rc::new(self.term(f)?), Rc::new(self.term(a)?)),
            TermNode::Pair(a, b) => Core::Pair(Rc::new(self.term(a)?), Rc::new(self.term(b)?)),
            TermNode::First(x) => Core::Fst(Rc::new(self.term(x)?)),
            TermNode::Second(x) => Core::Snd(Rc::new(self.term(x)?)),
            TermNode::Id { ty, lhs, rhs } => Core::Id {
                ty: Rc::new(self.term(ty)?),
                lhs: Rc::new(self.term(lhs)?),
                rhs: Rc::new(self.term(rhs)?),
            },
            TermNode::Refl => Core::Refl,
            TermNode::IdJ(args) => Core::J {
                ty: Rc::new(self.term(&args[0])?),
                lhs: Rc::new(self.term(&args[1])?),
                motive: Rc::new(self.term(&args[2])?),
                base: Rc::new(self.term(&args[3])?),
                rhs: Rc::new(self.term(&args[4])?),
                path: Rc::new(self.term(&args[5])?),
            },
            TermNode::Anno { term, ty } => Core::Anno {
                term: Rc::new(self.term(term)?),
                ty: Rc::new(self.term(ty)?),
            },
            TermNode::Hole => Core::Hole,
            TermNode::Extension { names, psi, cod, cases } => {
                for (n, _) in names {
                    self.stack.push(Entry::Cube(n.clone()));
                }
                let inner = (|| {
                    let psi = self.tope(psi)?;
                    let cod = self.term(cod)?;
                    let mut rcases = Vec::new();
                    for (tope, body) in cases {
                        rcases.push((self.tope(tope)?, Rc::new(self.term(body)?)));
                    }
                    Ok(Core::Ext {
                        names: names.iter().map(|(n, _)| n.clone()).collect(),
                        dim: names.len(),
                        psi,
                        cod: Rc::new(cod),
                        cases: rcases,
                    })
                })();
                for _ in names {
                    self.stack.pop();
                }
                inner?
            }
            TermNode::ExtLambda { names, body } => {
                for (n, _) in names {
                    self.stack.push(Entry::Cube(n.clone()));
                }
                let body = self.term(body);
                for _ in names {
                    self.stack.pop();
                }
                Core::ExtLam {
                    names: names.iter().map(|(n, _)| n.clone()).collect(),
                    dim: names.len(),
                    body: Rc::new(body?),
                }
            }
            TermNode::ExtApp { fun, args } => {
                let fun = self.term(fun)?;
                let mut rargs = Vec::new();
                for a in args {
                    rargs.push(self.interval(a)?);
                }
                Core::ExtApp { fun: Rc::new(fun), args: rargs, ann: None }
            }
            TermNode::RecOr { cases } => {
                let mut rcases = Vec::new();
                for (tope, body) in cases {
                    rcases.push((self.tope(tope)?, Rc::new(self.term(body)?)));
                }
                Core::RecOr { cases: rcases }
            }
        };
        Ok(node.at(span))
    }
}
