//! Pretty-printing with minimal parentheses. Output reparses to an
//! alpha-equivalent term.

use crate::core::{CInterval, CTerm, CTope, Core};
use crate::diag::Span;
use crate::syntax::*;
use crate::tope::{Interval, Tope};
use std::fmt::Write;

/// Render a kernel term for display, naming free variables from the two
/// context name stacks (bottom first).
pub fn print_core(t: &CTerm, tnames: &[String], cnames: &[String]) -> String {
    let mut tn = tnames.to_vec();
    let mut cn = cnames.to_vec();
    pretty_print(&core_to_surface(t, &mut tn, &mut cn))
}

fn freshen(name: &str, tn: &[String], cn: &[String]) -> String {
    // `_` must not appear as a variable occurrence (it reads back as a
    // hole), so anonymous binders get a real name.
    let mut n = if name == "_" { "x" } else { name }.to_string();
    while tn.contains(&n) || cn.contains(&n) {
        n.push('\'');
    }
    n
}

fn surface_interval(i: &CInterval, cn: &[String]) -> SInterval {
    let sp = Span::new(0, 0);
    match i {
        Interval::Zero => SInterval::Zero(sp),
        Interval::One => SInterval::One(sp),
        Interval::Var(idx) => {
            let name = cn
                .get(cn.len().wrapping_sub(1 + idx))
                .cloned()
                .unwrap_or_else(|| format!("t{idx}"));
            SInterval::Name(name, sp)
        }
    }
}

fn surface_tope(t: &CTope, cn: &[String]) -> STope {
    let sp = Span::new(0, 0);
    match t {
        Tope::Top => STope::Top(sp),
        Tope::Bot => STope::Bot(sp),
        Tope::Le(a, b) => STope::Le(surface_interval(a, cn), surface_interval(b, cn)),
        Tope::Eq(a, b) => STope::Eq(surface_interval(a, cn), surface_interval(b, cn)),
        Tope::And(a, b) => STope::And(
            Box::new(surface_tope(a, cn)),
            Box::new(surface_tope(b, cn)),
        ),
        Tope::Or(a, b) => STope::Or(
            Box::new(surface_tope(a, cn)),
            Box::new(surface_tope(b, cn)),
        ),
    }
}

/// Convert a kernel term back to surface syntax with invented, non-capturing
/// binder names. The result reparses to an alpha-equivalent term.
pub fn core_to_surface(t: &CTerm, tn: &mut Vec<String>, cn: &mut Vec<String>) -> Term {
    let sp = Span::new(0, 0);
    let node = match &t.node {
        Core::Var(i) => TermNode::Var(
            tn.get(tn.len().wrapping_sub(1 + i))
                .cloned()
                .unwrap_or_else(|| format!("x{i}")),
        ),
        Core::Global(name) => TermNode::Var(name.clone()),
        Core::U => TermNode::Universe,
        Core::Pi { name, dom, cod } => {
            let dom = core_to_surface(dom, tn, cn);
            let name = freshen(name, tn, cn);
            tn.push(name.clone());
            let cod = core_to_surface(cod, tn, cn);
            tn.pop();
            TermNode::Pi {
                name,
                dom: Box::new(dom),
                cod: Box::new(cod),
            }
        }
        Core::Lam { name, body } => {
            let name = freshen(name, tn, cn);
            tn.push(name.clone());
            let body = core_to_surface(body, tn, cn);
            tn.pop();
            TermNode::Lambda {
                name,
                body: Box::new(body),
            }
        }
        Core::App(f, a) => TermNode::App(
            Box::new(core_to_surface(f, tn, cn)),
            Box::new(core_to_surface(a, tn, cn)),
        ),
        Core::Sigma { name, fst, snd } => {
            let fst = core_to_surface(fst, tn, cn);
            let name = freshen(name, tn, cn);
            tn.push(name.clone());
            let snd = core_to_surface(snd, tn, cn);
            tn.pop();
            TermNode::Sigma {
                name,
                fst: Box::new(fst),
                snd: Box::new(snd),
            }
        }
        Core::Pair(a, b) => TermNode::Pair(
            Box::new(core_to_surface(a, tn, cn)),
            Box::new(core_to_surface(b, tn, cn)),
        ),
        Core::Fst(p) => TermNode::First(Box::new(core_to_surface(p, tn, cn))),
        Core::Snd(p) => TermNode::Second(Box::new(core_to_surface(p, tn, cn))),
        Core::Id { ty, lhs, rhs } => TermNode::Id {
            ty: Box::new(core_to_surface(ty, tn, cn)),
            lhs: Box::new(core_to_surface(lhs, tn, cn)),
            rhs: Box::new(core_to_surface(rhs, tn, cn)),
        },
        Core::Refl => TermNode::Refl,
        Core::J {
            ty,
            lhs,
            motive,
            base,
            rhs,
            path,
        } => TermNode::IdJ(Box::new([
            core_to_surface(ty, tn, cn),
            core_to_surface(lhs, tn, cn),
            core_to_surface(motive, tn, cn),
            core_to_surface(base, tn, cn),
            core_to_surface(rhs, tn, cn),
            core_to_surface(path, tn, cn),
        ])),
        Core::Anno { term, ty } => TermNode::Anno {
            term: Box::new(core_to_surface(term, tn, cn)),
            ty: Box::new(core_to_surface(ty, tn, cn)),
        },
        Core::Hole => TermNode::Hole,
        Core::Ext {
            names,
            psi,
            cod,
            cases,
            ..
        } => {
            let mut fresh = Vec::new();
            for n in names {
                let f = freshen(n, tn, cn);
                cn.push(f.clone());
                fresh.push(f);
            }
            let psi = surface_tope(psi, cn);
            let cod = core_to_surface(cod, tn, cn);
            let cases = cases
                .iter()
                .map(|(phi, body)| (surface_tope(phi, cn), core_to_surface(body, tn, cn)))
                .collect();
            for _ in names {
                cn.pop();
            }
            TermNode::Extension {
                names: fresh.into_iter().map(|n| (n, sp)).collect(),
                psi,
                cod: Box::new(cod),
                cases,
            }
        }
        Core::ExtLam { names, body, .. } => {
            let mut fresh = Vec::new();
            for n in names {
                let f = freshen(n, tn, cn);
                cn.push(f.clone());
                fresh.push(f);
            }
            let body = core_to_surface(body, tn, cn);
            for _ in names {
                cn.pop();
            }
            TermNode::ExtLambda {
                names: fresh.into_iter().map(|n| (n, sp)).collect(),
                body: Box::new(body),
            }
        }
        Core::ExtApp { fun, args, .. } => TermNode::ExtApp {
            fun: Box::new(core_to_surface(fun, tn, cn)),
            args: args.iter().map(|a| surface_interval(a, cn)).collect(),
        },
        Core::RecOr { cases } => TermNode::RecOr {
            cases: cases
                .iter()
                .map(|(phi, body)| (surface_tope(phi, cn), core_to_surface(body, tn, cn)))
                .collect(),
        },
    };
    Term::new(node, sp)
}

/// Precedence levels, low to high.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Tope,
    Arrow,
    Sigma,
    Eq,
    App,
    Postfix,
}

pub fn pretty_print(term: &Term) -> String {
    let mut out = String::new();
    print_term(&mut out, term, Prec::Tope);
    out
}

pub fn print_interval(i: &SInterval) -> String {
    match i {
        SInterval::Zero(_) => "0".to_string(),
        SInterval::One(_) => "1".to_string(),
        SInterval::Name(x, _) => x.clone(),
    }
}

pub fn print_tope(t: &STope) -> String {
    let mut out = String::new();
    print_tope_at(&mut out, t, 0);
    out
}

/// tope precedence: 0 = `\/`, 1 = `/\`, 2 = atoms.
fn print_tope_at(out: &mut String, t: &STope, prec: u8) {
    match t {
        STope::Top(_) => out.push_str("TOP"),
        STope::Bot(_) => out.push_str("BOT"),
        STope::Le(a, b) => {
            let _ = write!(out, "{} <= {}", print_interval(a), print_interval(b));
        }
        STope::Eq(a, b) => {
            let _ = write!(out, "{} === {}", print_interval(a), print_interval(b));
        }
        STope::Or(a, b) => {
            let paren = prec > 0;
            if paren {
                out.push('(');
            }
            print_tope_at(out, a, 0);
            out.push_str(" \\/ ");
            print_tope_at(out, b, 1);
            if paren {
                out.push(')');
            }
        }
        STope::And(a, b) => {
            let paren = prec > 1;
            if paren {
                out.push('(');
            }
            print_tope_at(out, a, 1);
            out.push_str(" /\\ ");
            print_tope_at(out, b, 2);
            if paren {
                out.push(')');
            }
        }
    }
}

fn paren(out: &mut String, needed: bool, f: impl FnOnce(&mut String)) {
    if needed {
        out.push('(');
    }
    f(out);
    if needed {
        out.push(')');
    }
}

/// Whether `name` occurs free in `t` (surface-level, respecting binders).
pub fn occurs_free(name: &str, t: &Term) -> bool {
    match &t.node {
        TermNode::Var(x) => x == name,
        TermNode::Universe
        | TermNode::Cube2
        | TermNode::Endpoint(_)
        | TermNode::Refl
        | TermNode::Hole => false,
        TermNode::Pi { name: n, dom, cod } | TermNode::Sigma { name: n, fst: dom, snd: cod } => {
            occurs_free(name, dom) || (n != name && occurs_free(name, cod))
        }
        TermNode::Lambda { name: n, body } => n != name && occurs_free(name, body),
        TermNode::App(f, a) | TermNode::Pair(f, a) => {
            occurs_free(name, f) || occurs_free(name, a)
        }
        TermNode::First(x) | TermNode::Second(x) => occurs_free(name, x),
        TermNode::Id { ty, lhs, rhs } => {
            occurs_free(name, ty) || occurs_free(name, lhs) || occurs_free(name, rhs)
        }
        TermNode::IdJ(args) => args.iter().any(|a| occurs_free(name, a)),
        TermNode::Anno { term, ty } => occurs_free(name, term) || occurs_free(name, ty),
        TermNode::TopeTerm(t) => tope_mentions(name, t),
        TermNode::Extension { names, psi, cod, cases } => {
            if names.iter().any(|(n, _)| n == name) {
                return false;
            }
            tope_mentions(name, psi)
                || occurs_free(name, cod)
                || cases
                    .iter()
                    .any(|(t, a)| tope_mentions(name, t) || occurs_free(name, a))
        }
        TermNode::ExtLambda { names, body } => {
            !names.iter().any(|(n, _)| n == name) && occurs_free(name, body)
        }
        TermNode::ExtApp { fun, args } => {
            occurs_free(name, fun)
                || args
                    .iter()
                    .any(|i| matches!(i, SInterval::Name(x, _) if x == name))
        }
        TermNode::RecOr { cases } => cases
            .iter()
            .any(|(t, a)| tope_mentions(name, t) || occurs_free(name, a)),
    }
}

fn tope_mentions(name: &str, t: &STope) -> bool {
    let mentions = |i: &SInterval| matches!(i, SInterval::Name(x, _) if x == name);
    match t {
        STope::Top(_) | STope::Bot(_) => false,
        STope::Le(a, b) | STope::Eq(a, b) => mentions(a) || mentions(b),
        STope::And(a, b) | STope::Or(a, b) => tope_mentions(name, a) || tope_mentions(name, b),
    }
}

fn print_term(out: &mut String, t: &Term, prec: Prec) {
    match &t.node {
        TermNode::Var(x) => out.push_str(x),
        TermNode::Universe => out.push('U'),
        TermNode::Cube2 => out.push('2'),
        TermNode::Endpoint(b) => out.push(if *b { '1' } else { '0' }),
        TermNode::Refl => out.push_str("refl"),
        TermNode::Hole => out.push('?'),
        TermNode::Pi { name, dom, cod } => paren(out, prec > Prec::Arrow, |out| {
            if name != "_" && occurs_free(name, cod) {
                let _ = write!(out, "({name} : ");
                print_term(out, dom, Prec::Tope);
                out.push_str(") -> ");
            } else {
                // A Sigma domain needs parens (its second component would
                // swallow the arrow on reparse); an annotation `(x : T)`
                // needs them too, or it reads back as a dependent binder.
                let ambiguous = matches!(dom.node, TermNode::Anno { .. });
                paren(out, ambiguous, |out| print_term(out, dom, Prec::Eq));
                out.push_str(" -> ");
            }
            print_term(out, cod, Prec::Arrow);
        }),
        TermNode::Sigma { name, fst, snd } => paren(out, prec > Prec::Sigma, |out| {
            let _ = write!(out, "({name} : ");
            print_term(out, fst, Prec::Tope);
            out.push_str(") * ");
            print_term(out, snd, Prec::Sigma);
        }),
        TermNode::Lambda { name, body } => paren(out, prec > Prec::Arrow, |out| {
            let _ = write!(out, "\\{name} -> ");
            print_term(out, body, Prec::Arrow);
        }),
        TermNode::App(f, a) => paren(out, prec > Prec::App, |out| {
            print_term(out, f, Prec::App);
            out.push(' ');
            print_term(out, a, Prec::Postfix);
        }),
        TermNode::Pair(a, b) => {
            out.push('(');
            print_term(out, a, Prec::Tope);
            out.push_str(", ");
            print_term(out, b, Prec::Tope);
            out.push(')');
        }
        TermNode::First(x) => paren(out, prec > Prec::App, |out| {
            out.push_str("first ");
            print_term(out, x, Prec::Postfix);
        }),
        TermNode::Second(x) => paren(out, prec > Prec::App, |out| {
            out.push_str("second ");
            print_term(out, x, Prec::Postfix);
        }),
        TermNode::Id { ty, lhs, rhs } => paren(out, prec > Prec::Eq, |out| {
            print_term(out, lhs, Prec::App);
            out.push_str(" =_{");
            print_term(out, ty, Prec::Tope);
            out.push_str("} ");
            print_term(out, rhs, Prec::App);
        }),
        TermNode::IdJ(args) => {
            out.push_str("idJ(");
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                print_term(out, a, Prec::Tope);
            }
            out.push(')');
        }
        TermNode::Anno { term, ty } => {
            out.push('(');
            print_term(out, term, Prec::Tope);
            out.push_str(" : ");
            print_term(out, ty, Prec::Tope);
            out.push(')');
        }
        TermNode::TopeTerm(tope) => paren(out, prec > Prec::Tope, |out| {
            out.push_str(&print_tope(tope));
        }),
        TermNode::Extension { names, psi, cod, cases } => {
            out.push_str("<{");
            for (i, (n, _)) in names.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(n);
            }
            out.push_str(" : ");
            for i in 0..names.len() {
                if i > 0 {
                    out.push_str(" * ");
                }
                out.push('2');
            }
            out.push_str(" | ");
            out.push_str(&print_tope(psi));
            out.push_str("} -> ");
            print_term(out, cod, Prec::Sigma);
            if !cases.is_empty() {
                out.push_str(" [");
                for (i, (tope, body)) in cases.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&print_tope(tope));
                    out.push_str(" |-> ");
                    print_term(out, body, Prec::Tope);
                }
                out.push(']');
            }
            out.push('>');
        }
        TermNode::ExtLambda { names, body } => paren(out, prec > Prec::Arrow, |out| {
            out.push_str("\\{");
            for (i, (n, _)) in names.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(n);
            }
            out.push_str("} -> ");
            print_term(out, body, Prec::Arrow);
        }),
        TermNode::ExtApp { fun, args } => paren(out, prec > Prec::Postfix, |out| {
            print_term(out, fun, Prec::Postfix);
            out.push_str(" @ (");
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&print_interval(a));
            }
            out.push(')');
        }),
        TermNode::RecOr { cases } => {
            out.push_str("recOR(");
            for (i, (tope, body)) in cases.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&print_tope(tope));
                out.push_str(" |-> ");
                print_term(out, body, Prec::Tope);
            }
            out.push(')');
        }
    }
}
