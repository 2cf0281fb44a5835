//! Bidirectional type checking. `infer` synthesizes types for eliminations
//! and annotated forms; `check` pushes types into introductions. Both
//! return elaborated terms in which every extension application carries
//! the extension type of its head, so evaluation and conversion can
//! compute mandated boundaries on neutral values.

use crate::conv::ConvCtx;
use crate::core::{CTerm, Core};
use crate::diag::{Code, Diagnostic, Span};
use crate::eval::{
    self, apply, closure_apply, eval, eval_interval, eval_tope, fresh_cubes, j_base_ty,
    j_motive_ty, quote_ext,
};
use crate::pretty::print_core;
use crate::resolve::ResolvedDecl;
use crate::syntax::DeclKind;
use crate::tope::{self, Tope};
use crate::value::*;
use std::collections::BTreeSet;
use std::rc::Rc;

/// The checking context: the three layers plus the evaluation environment
/// that maps every bound variable to itself as a neutral/generic value.
pub struct Ctx<'g> {
    pub g: &'g Globals,
    pub names: Vec<String>,
    pub tys: Vec<Rc<Value>>,
    pub cube_names: Vec<String>,
    pub topes: Vec<VTope>,
    pub env: Env,
}

impl<'g> Ctx<'g> {
    pub fn new(g: &'g Globals) -> Self {
        Ctx {
            g,
            names: Vec::new(),
            tys: Vec::new(),
            cube_names: Vec::new(),
            topes: Vec::new(),
            env: Env::default(),
        }
    }

    fn tlen(&self) -> usize {
        self.tys.len()
    }

    fn clen(&self) -> usize {
        self.cube_names.len()
    }

    fn bind(&mut self, name: &str, ty: Rc<Value>) {
        self.env.vals.push(Value::var(self.tlen()));
        self.names.push(name.to_string());
        self.tys.push(ty);
    }

    fn unbind(&mut self) {
        self.env.vals.pop();
        self.names.pop();
        self.tys.pop();
    }

    fn bind_cubes(&mut self, names: &[String], span: Span) -> Result<(), Diagnostic> {
        let new_len = self.clen() + names.len();
        if new_len > self.g.cube_cap {
            return Err(Diagnostic::error(
                Code::ContextTooLarge,
                span,
                format!(
                    "cube context of size {new_len} exceeds the cap {}",
                    self.g.cube_cap
                ),
            ));
        }
        for n in names {
            self.env.cubes.push(tope::Interval::Var(self.clen()));
            self.cube_names.push(n.clone());
        }
        Ok(())
    }

    fn unbind_cubes(&mut self, n: usize) {
        for _ in 0..n {
            self.env.cubes.pop();
            self.cube_names.pop();
        }
    }

    fn cctx(&self) -> ConvCtx<'g> {
        ConvCtx {
            g: self.g,
            var_tys: self.tys.clone(),
            clen: self.clen(),
            topes: self.topes.clone(),
        }
    }

    fn force(&self, v: &Rc<Value>) -> Rc<Value> {
        self.cctx().force(v)
    }

    fn conv(&self, ty: &Rc<Value>, u: &Rc<Value>, v: &Rc<Value>) -> bool {
        self.cctx().conv(ty, u, v)
    }

    fn conv_ty(&self, u: &Rc<Value>, v: &Rc<Value>) -> bool {
        self.cctx().conv_ty(u, v)
    }

    fn entail_counter(&self, goal: &VTope) -> Option<tope::WeakOrder> {
        let hyp = Tope::conj(self.topes.clone());
        tope::tope_entails(
            self.clen(),
            &hyp,
            goal,
            self.g.cube_cap.max(self.clen()),
        )
        .expect("cube context within cap")
    }

    fn eval(&self, t: &CTerm) -> Rc<Value> {
        eval(self.g, &self.env, t)
    }

    pub fn show(&self, v: &Rc<Value>) -> String {
        let t = eval::quote(self.g, self.tlen(), self.clen(), v);
        print_core(&t, &self.names, &self.cube_names)
    }

    fn show_term(&self, t: &CTerm) -> String {
        print_core(t, &self.names, &self.cube_names)
    }
}

fn type_error(span: Span, msg: String) -> Diagnostic {
    Diagnostic::error(Code::TypeMismatch, span, msg)
}

pub fn infer(ctx: &mut Ctx, t: &CTerm) -> Result<(CTerm, Rc<Value>), Diagnostic> {
    let span = t.span;
    match &t.node {
        Core::Var(i) => {
            let ty = ctx.tys[ctx.tlen() - 1 - i].clone();
            Ok((t.clone(), ty))
        }
        Core::Global(name) => {
            let entry = ctx.g.get(name).expect("global resolved before checking");
            Ok((t.clone(), entry.ty.clone()))
        }
        Core::U => Ok((t.clone(), Rc::new(Value::U))),
        Core::Pi { name, dom, cod } => {
            let dom2 = check(ctx, dom, &Rc::new(Value::U))?;
            let dom_v = ctx.eval(&dom2);
            ctx.bind(name, dom_v);
            let cod2 = check(ctx, cod, &Rc::new(Value::U));
            ctx.unbind();
            Ok((
                Core::Pi {
                    name: name.clone(),
                    dom: Rc::new(dom2),
                    cod: Rc::new(cod2?),
                }
                .at(span),
                Rc::new(Value::U),
            ))
        }
        Core::Sigma { name, fst, snd } => {
            let fst2 = check(ctx, fst, &Rc::new(Value::U))?;
            let fst_v = ctx.eval(&fst2);
            ctx.bind(name, fst_v);
            let snd2 = check(ctx, snd, &Rc::new(Value::U));
            ctx.unbind();
            Ok((
                Core::Sigma {
                    name: name.clone(),
                    fst: Rc::new(fst2),
                    snd: Rc::new(snd2?),
                }
                .at(span),
                Rc::new(Value::U),
            ))
        }
        Core::Id { ty, lhs, rhs } => {
            let ty2 = check(ctx, ty, &Rc::new(Value::U))?;
            let a = ctx.eval(&ty2);
            let lhs2 = check(ctx, lhs, &a)?;
            let rhs2 = check(ctx, rhs, &a)?;
            Ok((
                Core::Id {
                    ty: Rc::new(ty2),
                    lhs: Rc::new(lhs2),
                    rhs: Rc::new(rhs2),
                }
                .at(span),
                Rc::new(Value::U),
            ))
        }
        Core::App(f, a) => {
            // Beta-redexes are inferable: type the argument, then the body
            // with the binder at the argument's type.
            if let Core::Lam { name, body } = &f.node {
                let (a2, aty) = infer(ctx, a)?;
                ctx.bind(name, aty);
                let r = infer(ctx, body);
                ctx.unbind();
                let (body2, bty) = r?;
                let f2 = Core::Lam {
                    name: name.clone(),
                    body: Rc::new(body2),
                }
                .at(f.span);
                // The body type may mention the binder; substitute by
                // evaluating it in the extended environment.
                let ty = {
                    let bty_core = eval::quote(ctx.g, ctx.tlen() + 1, ctx.clen(), &bty);
                    let mut env = ctx.env.clone();
                    env.vals.push(ctx.eval(&a2));
                    eval::eval(ctx.g, &env, &bty_core)
                };
                return Ok((Core::App(Rc::new(f2), Rc::new(a2)).at(span), ty));
            }
            let (f2, fty) = infer(ctx, f)?;
            match &*ctx.force(&fty) {
                Value::Pi { dom, cod, .. } => {
                    let a2 = check(ctx, a, dom)?;
                    let ty = closure_apply(ctx.g, cod, ctx.eval(&a2));
                    Ok((Core::App(Rc::new(f2), Rc::new(a2)).at(span), ty))
                }
                _ => Err(type_error(
                    f.span,
                    format!(
                        "applied a term of non-function type {}",
                        ctx.show(&fty)
                    ),
                )),
            }
        }
        Core::Fst(p) => {
            let (p2, pty) = infer(ctx, p)?;
            match &*ctx.force(&pty) {
                Value::Sigma { fst, .. } => {
                    Ok((Core::Fst(Rc::new(p2)).at(span), fst.clone()))
                }
                _ => Err(type_error(
                    p.span,
                    format!("projected from non-pair type {}", ctx.show(&pty)),
                )),
            }
        }
        Core::Snd(p) => {
            let (p2, pty) = infer(ctx, p)?;
            match &*ctx.force(&pty) {
                Value::Sigma { snd, .. } => {
                    let fst_v = eval::fst(ctx.g, ctx.eval(&p2));
                    let ty = closure_apply(ctx.g, snd, fst_v);
                    Ok((Core::Snd(Rc::new(p2)).at(span), ty))
                }
                _ => Err(type_error(
                    p.span,
                    format!("projected from non-pair type {}", ctx.show(&pty)),
                )),
            }
        }
        Core::J {
            ty,
            lhs,
            motive,
            base,
            rhs,
            path,
        } => {
            let ty2 = check(ctx, ty, &Rc::new(Value::U))?;
            let a = ctx.eval(&ty2);
            let lhs2 = check(ctx, lhs, &a)?;
            let lhs_v = ctx.eval(&lhs2);
            let motive2 = check(ctx, motive, &j_motive_ty(ctx.g, &a))?;
            let motive_v = ctx.eval(&motive2);
            let base2 = check(ctx, base, &j_base_ty(ctx.g, &a, &motive_v))?;
            let rhs2 = check(ctx, rhs, &a)?;
            let rhs_v = ctx.eval(&rhs2);
            let path_ty = Rc::new(Value::Id {
                ty: a,
                lhs: lhs_v.clone(),
                rhs: rhs_v.clone(),
            });
            let path2 = check(ctx, path, &path_ty)?;
            let path_v = ctx.eval(&path2);
            let result = apply(
                ctx.g,
                apply(ctx.g, apply(ctx.g, motive_v, lhs_v), rhs_v),
                path_v,
            );
            Ok((
                Core::J {
                    ty: Rc::new(ty2),
                    lhs: Rc::new(lhs2),
                    motive: Rc::new(motive2),
                    base: Rc::new(base2),
                    rhs: Rc::new(rhs2),
                    path: Rc::new(path2),
                }
                .at(span),
                result,
            ))
        }
        Core::Anno { term, ty } => {
            let ty2 = check(ctx, ty, &Rc::new(Value::U))?;
            let ty_v = ctx.eval(&ty2);
            let term2 = check(ctx, term, &ty_v)?;
            Ok((
                Core::Anno {
                    term: Rc::new(term2),
                    ty: Rc::new(ty2),
                }
                .at(span),
                ty_v,
            ))
        }
        Core::Ext {
            names,
            dim,
            psi,
            cod,
            cases,
        } => {
            ctx.bind_cubes(names, span)?;
            let result = (|| {
                let psi_v = eval_tope(&ctx.env, psi);
                ctx.topes.push(psi_v);
                let inner = (|| {
                    let cod2 = check(ctx, cod, &Rc::new(Value::U))?;
                    let cod_v = ctx.eval(&cod2);
                    let mut cases2 = Vec::new();
                    for (phi, body) in cases {
                        let phi_v = eval_tope(&ctx.env, phi);
                        ctx.topes.push(phi_v);
                        let body2 = check(ctx, body, &cod_v);
                        ctx.topes.pop();
                        cases2.push((phi.clone(), Rc::new(body2?)));
                    }
                    // overlapping boundary cases must agree
                    for i in 0..cases2.len() {
                        for j in i + 1..cases2.len() {
                            let pi = eval_tope(&ctx.env, &cases2[i].0);
                            let pj = eval_tope(&ctx.env, &cases2[j].0);
                            ctx.topes.push(Tope::and(pi, pj));
                            let vi = ctx.eval(&cases2[i].1);
                            let vj = ctx.eval(&cases2[j].1);
                            let ok = ctx.conv(&cod_v, &vi, &vj);
                            ctx.topes.pop();
                            if !ok {
                                return Err(Diagnostic::error(
                                    Code::ExtensionBoundaryMismatch,
                                    span,
                                    "boundary cases disagree where their topes overlap"
                                        .to_string(),
                                ));
                            }
                        }
                    }
                    Ok((cod2, cases2))
                })();
                ctx.topes.pop();
                inner
            })();
            ctx.unbind_cubes(names.len());
            let (cod2, cases2) = result?;
            Ok((
                Core::Ext {
                    names: names.clone(),
                    dim: *dim,
                    psi: psi.clone(),
                    cod: Rc::new(cod2),
                    cases: cases2,
                }
                .at(span),
                Rc::new(Value::U),
            ))
        }
        Core::ExtApp { fun, args, .. } => {
            let (fun2, fty) = infer(ctx, fun)?;
            let forced = ctx.force(&fty);
            let Value::Ext(e) = &*forced else {
                return Err(type_error(
                    fun.span,
                    format!(
                        "applied `@` to a term of non-extension type {}",
                        ctx.show(&fty)
                    ),
                ));
            };
            if args.len() != e.dim {
                return Err(type_error(
                    span,
                    format!(
                        "extension application expects {} point(s), got {}",
                        e.dim,
                        args.len()
                    ),
                ));
            }
            let arg_vs: Vec<IVal> = args.iter().map(|a| eval_interval(&ctx.env, a)).collect();
            let psi = e.psi_at(&arg_vs);
            if let Some(order) = ctx.entail_counter(&psi) {
                return Err(Diagnostic::error(
                    Code::TopeUnsatisfied,
                    span,
                    "the application point is outside the extension's shape".to_string(),
                )
                .with_counter_order(order.render(&ctx.cube_names)));
            }
            let ty = e.cod_at(ctx.g, &arg_vs);
            let ann = quote_ext(ctx.g, ctx.tlen(), ctx.clen(), e);
            Ok((
                Core::ExtApp {
                    fun: Rc::new(fun2),
                    args: args.clone(),
                    ann: Some(Rc::new(ann)),
                }
                .at(span),
                ty,
            ))
        }
        Core::Hole => Err(Diagnostic::error(
            Code::NotInferable,
            span,
            "cannot infer a type for a hole; add an annotation".to_string(),
        )),
        Core::Lam { .. } | Core::Pair(..) | Core::Refl | Core::ExtLam { .. }
        | Core::RecOr { .. } => Err(Diagnostic::error(
            Code::NotInferable,
            span,
            format!(
                "cannot infer a type for `{}`; add an annotation",
                ctx.show_term(t)
            ),
        )),
    }
}

pub fn check(ctx: &mut Ctx, t: &CTerm, ty: &Rc<Value>) -> Result<CTerm, Diagnostic> {
    let span = t.span;
    let ty = ctx.force(ty);
    // a type still split by topes: check the term against every branch
    if let Value::Cases(cs) = &*ty {
        let mut out = None;
        for (phi, branch_ty) in cs {
            ctx.topes.push(phi.clone());
            let r = check(ctx, t, branch_ty);
            ctx.topes.pop();
            let elab = r?;
            out.get_or_insert(elab);
        }
        return out.ok_or_else(|| {
            type_error(span, "type is an empty tope case split".to_string())
        });
    }
    match (&t.node, &*ty) {
        (Core::Lam { name, body }, Value::Pi { dom, cod, .. }) => {
            ctx.bind(name, dom.clone());
            let x = ctx.env.vals.last().unwrap().clone();
            let cod_v = closure_apply(ctx.g, cod, x);
            let body2 = check(ctx, body, &cod_v);
            ctx.unbind();
            Ok(Core::Lam {
                name: name.clone(),
                body: Rc::new(body2?),
            }
            .at(span))
        }
        (Core::Lam { .. }, _) => Err(type_error(
            span,
            format!(
                "a function literal cannot have type {}",
                ctx.show(&ty)
            ),
        )),
        (Core::Pair(a, b), Value::Sigma { fst, snd, .. }) => {
            let a2 = check(ctx, a, fst)?;
            let snd_v = closure_apply(ctx.g, snd, ctx.eval(&a2));
            let b2 = check(ctx, b, &snd_v)?;
            Ok(Core::Pair(Rc::new(a2), Rc::new(b2)).at(span))
        }
        (Core::Pair(..), _) => Err(type_error(
            span,
            format!("a pair cannot have type {}", ctx.show(&ty)),
        )),
        (Core::Refl, Value::Id { ty: a, lhs, rhs }) => {
            if ctx.conv(a, lhs, rhs) {
                Ok(Core::Refl.at(span))
            } else {
                Err(Diagnostic::error(
                    Code::ReflMismatch,
                    span,
                    format!(
                        "refl requires equal endpoints, but {} and {} are not convertible",
                        ctx.show(lhs),
                        ctx.show(rhs)
                    ),
                ))
            }
        }
        (Core::Refl, _) => Err(type_error(
            span,
            format!("refl cannot have type {}", ctx.show(&ty)),
        )),
        (Core::ExtLam { names, dim, body }, Value::Ext(e)) => {
            if *dim != e.dim {
                return Err(type_error(
                    span,
                    format!(
                        "extension lambda binds {dim} point(s) but its type expects {}",
                        e.dim
                    ),
                ));
            }
            ctx.bind_cubes(names, span)?;
            let result = (|| {
                let args = fresh_cubes(ctx.clen() - dim, *dim);
                ctx.topes.push(e.psi_at(&args));
                let inner = (|| {
                    let cod_v = e.cod_at(ctx.g, &args);
                    let body2 = check(ctx, body, &cod_v)?;
                    let body_v = ctx.eval(&body2);
                    for (i, (phi, _)) in e.cases.iter().enumerate() {
                        let phi_v = e.tope_at(phi, &args);
                        ctx.topes.push(phi_v);
                        let mandated = e.case_at(ctx.g, i, &args);
                        let ok = ctx.conv(&cod_v, &body_v, &mandated);
                        ctx.topes.pop();
                        if !ok {
                            return Err(Diagnostic::error(
                                Code::ExtensionBoundaryMismatch,
                                body.span,
                                format!(
                                    "the body disagrees with the mandated boundary value {}",
                                    ctx.show(&mandated)
                                ),
                            ));
                        }
                    }
                    Ok(body2)
                })();
                ctx.topes.pop();
                inner
            })();
            ctx.unbind_cubes(names.len());
            Ok(Core::ExtLam {
                names: names.clone(),
                dim: *dim,
                body: Rc::new(result?),
            }
            .at(span))
        }
        (Core::ExtLam { .. }, _) => Err(type_error(
            span,
            format!(
                "an extension lambda cannot have type {}",
                ctx.show(&ty)
            ),
        )),
        (Core::RecOr { cases }, _) => {
            let topes_v: Vec<VTope> =
                cases.iter().map(|(p, _)| eval_tope(&ctx.env, p)).collect();
            let coverage = Tope::disj(topes_v.iter().cloned());
            if let Some(order) = ctx.entail_counter(&coverage) {
                return Err(Diagnostic::error(
                    Code::TopeUnsatisfied,
                    span,
                    "the cases do not cover the current shape".to_string(),
                )
                .with_counter_order(order.render(&ctx.cube_names)));
            }
            let mut cases2 = Vec::new();
            for ((phi, body), phi_v) in cases.iter().zip(topes_v.iter()) {
                ctx.topes.push(phi_v.clone());
                let body2 = check(ctx, body, &ty);
                ctx.topes.pop();
                cases2.push((phi.clone(), Rc::new(body2?)));
            }
            for i in 0..cases2.len() {
                for j in i + 1..cases2.len() {
                    ctx.topes
                        .push(Tope::and(topes_v[i].clone(), topes_v[j].clone()));
                    let vi = ctx.eval(&cases2[i].1);
                    let vj = ctx.eval(&cases2[j].1);
                    let ok = ctx.conv(&ty, &vi, &vj);
                    ctx.topes.pop();
                    if !ok {
                        return Err(Diagnostic::error(
                            Code::ExtensionBoundaryMismatch,
                            span,
                            "case values disagree where their topes overlap".to_string(),
                        ));
                    }
                }
            }
            Ok(Core::RecOr { cases: cases2 }.at(span))
        }
        (Core::Hole, _) => Err(Diagnostic::error(
            Code::NotInferable,
            span,
            format!("hole of expected type {}", ctx.show(&ty)),
        )),
        _ => {
            let (t2, inferred) = infer(ctx, t)?;
            if ctx.conv_ty(&inferred, &ty) {
                Ok(t2)
            } else {
                Err(type_error(
                    span,
                    format!(
                        "expected type {}, found {}",
                        ctx.show(&ty),
                        ctx.show(&inferred)
                    ),
                ))
            }
        }
    }
}

/// Sequential declaration checking: each accepted declaration extends the
/// global environment for the ones after it.
pub struct Checker {
    pub globals: Globals,
    /// declaration order, for deterministic reporting
    pub order: Vec<String>,
    /// number of declarations checked, including anonymous directives
    pub checked: usize,
}

fn collect_axioms(g: &Globals, t: &CTerm, out: &mut BTreeSet<String>) {
    match &t.node {
        Core::Global(name) => {
            if let Some(e) = g.get(name) {
                out.extend(e.axioms.iter().cloned());
            }
        }
        Core::Var(_) | Core::U | Core::Refl | Core::Hole => {}
        Core::Pi { dom, cod, .. } => {
            collect_axioms(g, dom, out);
            collect_axioms(g, cod, out);
        }
        Core::Lam { body, .. } => collect_axioms(g, body, out),
        Core::App(a, b) | Core::Pair(a, b) => {
            collect_axioms(g, a, out);
            collect_axioms(g, b, out);
        }
        Core::Sigma { fst, snd, .. } => {
            collect_axioms(g, fst, out);
            collect_axioms(g, snd, out);
        }
        Core::Fst(p) | Core::Snd(p) => collect_axioms(g, p, out),
        Core::Id { ty, lhs, rhs } => {
            collect_axioms(g, ty, out);
            collect_axioms(g, lhs, out);
            collect_axioms(g, rhs, out);
        }
        Core::J {
            ty,
            lhs,
            motive,
            base,
            rhs,
            path,
        } => {
            for c in [ty, lhs, motive, base, rhs, path] {
                collect_axioms(g, c, out);
            }
        }
        Core::Anno { term, ty } => {
            collect_axioms(g, term, out);
            collect_axioms(g, ty, out);
        }
        Core::Ext { cod, cases, .. } => {
            collect_axioms(g, cod, out);
            for (_, b) in cases {
                collect_axioms(g, b, out);
            }
        }
        Core::ExtLam { body, .. } => collect_axioms(g, body, out),
        Core::ExtApp { fun, ann, .. } => {
            collect_axioms(g, fun, out);
            if let Some(a) = ann {
                collect_axioms(g, a, out);
            }
        }
        Core::RecOr { cases } => {
            for (_, b) in cases {
                collect_axioms(g, b, out);
            }
        }
    }
}

impl Checker {
    pub fn new(cube_cap: usize) -> Self {
        Checker {
            globals: Globals::new(cube_cap),
            order: Vec::new(),
            checked: 0,
        }
    }

    pub fn check_decl(&mut self, d: &ResolvedDecl) -> Result<(), Diagnostic> {
        let label = d
            .name
            .clone()
            .unwrap_or_else(|| "#check".to_string());
        let result = self.check_decl_inner(d);
        result.map_err(|mut e| {
            e.message = format!("in `{label}`: {}", e.message);
            e
        })
    }

    fn check_decl_inner(&mut self, d: &ResolvedDecl) -> Result<(), Diagnostic> {
        let (ty_v, val, axioms) = {
            let mut ctx = Ctx::new(&self.globals);
            let ty2 = check(&mut ctx, &d.ty, &Rc::new(Value::U))?;
            let ty_v = ctx.eval(&ty2);
            match d.kind {
                DeclKind::Def => {
                    let body = d.body.as_ref().expect("def has a body");
                    let body2 = check(&mut ctx, body, &ty_v)?;
                    let val = ctx.eval(&body2);
                    let mut axioms = BTreeSet::new();
                    collect_axioms(&self.globals, &ty2, &mut axioms);
                    collect_axioms(&self.globals, &body2, &mut axioms);
                    (ty_v, Some(val), axioms)
                }
                DeclKind::Postulate => {
                    let mut axioms = BTreeSet::new();
                    collect_axioms(&self.globals, &ty2, &mut axioms);
                    if let Some(name) = &d.name {
                        axioms.insert(name.clone());
                    }
                    (ty_v, None, axioms)
                }
                DeclKind::Check => {
                    let body = d.body.as_ref().expect("#check has a subject term");
                    check(&mut ctx, body, &ty_v)?;
                    self.checked += 1;
                    return Ok(());
                }
            }
        };
        self.checked += 1;
        if let Some(name) = &d.name {
            self.order.push(name.clone());
            self.globals.insert(
                name.clone(),
                GlobalEntry {
                    ty: ty_v,
                    val,
                    axioms,
                },
            );
        }
        Ok(())
    }
}

/// Infer, evaluate, and read back a closed term (relative to the checked
/// globals) in eta-long beta-normal form.
pub fn normalize_term(
    g: &Globals,
    t: &CTerm,
) -> Result<(CTerm, Rc<Value>), Diagnostic> {
    let mut ctx = Ctx::new(g);
    let (t2, ty) = infer(&mut ctx, t)?;
    let v = eval(g, &Env::default(), &t2);
    let mut cc = ConvCtx::new(g);
    Ok((cc.readback(&ty, &v), ty))
}
