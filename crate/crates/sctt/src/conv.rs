//! Definitional equality: type-directed conversion under a cube/tope
//! context, plus the type-directed readback used by `normalize`.
//!
//! Extension types are compared pointwise at a generic cube point under
//! their shape tope. Before any comparison both sides are *forced*: a
//! neutral extension application whose point lies in a mandated boundary
//! (as entailed by the ambient topes) is replaced by the boundary value,
//! and a tope-case value whose guard is entailed collapses to its branch.

use crate::core::CTerm;
use crate::eval::{
    apply, closure_apply, ext_apply, fresh_cubes, fst as vfst, quote, quote_tope, snd as vsnd,
};
use crate::tope::{self, Tope};
use crate::value::*;
use std::rc::Rc;

/// The context conversion runs in: variable types by level, the cube
/// context size, and the tope constraints in force.
pub struct ConvCtx<'g> {
    pub g: &'g Globals,
    pub var_tys: Vec<Rc<Value>>,
    pub clen: usize,
    pub topes: Vec<VTope>,
}

impl<'g> ConvCtx<'g> {
    pub fn new(g: &'g Globals) -> Self {
        ConvCtx {
            g,
            var_tys: Vec::new(),
            clen: 0,
            topes: Vec::new(),
        }
    }

    pub fn tlen(&self) -> usize {
        self.var_tys.len()
    }

    fn cap(&self) -> usize {
        // the checker enforces the cap when binders are introduced, so
        // entailment here never legitimately exceeds it
        self.g.cube_cap.max(self.clen)
    }

    fn hyp(&self) -> VTope {
        Tope::conj(self.topes.clone())
    }

    pub fn entails(&self, goal: &VTope) -> bool {
        tope::tope_entails(self.clen, &self.hyp(), goal, self.cap())
            .expect("cube context within cap")
            .is_none()
    }

    pub fn satisfiable(&self) -> bool {
        tope::satisfiable(self.clen, &self.hyp(), self.cap()).expect("cube context within cap")
    }

    fn tope_equiv(&mut self, a: &VTope, b: &VTope) -> bool {
        self.topes.push(a.clone());
        let fwd = self.entails(b);
        self.topes.pop();
        self.topes.push(b.clone());
        let bwd = self.entails(a);
        self.topes.pop();
        fwd && bwd
    }

    /// Resolve boundary-mandated values and entailed case guards.
    pub fn force(&self, v: &Rc<Value>) -> Rc<Value> {
        match &**v {
            Value::Cases(cs) => {
                for (phi, b) in cs {
                    if self.entails(phi) {
                        return self.force(b);
                    }
                }
                v.clone()
            }
            Value::Neutral(n) => {
                for (i, e) in n.spine.iter().enumerate() {
                    if let Elim::ExtApp { args, ty: Some(ext) } = e {
                        for (ci, (phi, _)) in ext.cases.iter().enumerate() {
                            if self.entails(&ext.tope_at(phi, args)) {
                                let mut val = ext.case_at(self.g, ci, args);
                                for rest in &n.spine[i + 1..] {
                                    val = apply_elim(self.g, val, rest);
                                }
                                return self.force(&val);
                            }
                        }
                    }
                }
                v.clone()
            }
            _ => v.clone(),
        }
    }

    /// Check a property in each branch of a case split; branches refine
    /// the tope context by their guards.
    fn split(
        &mut self,
        cases: &[(VTope, Rc<Value>)],
        mut f: impl FnMut(&mut Self, &Rc<Value>) -> bool,
    ) -> bool {
        cases.iter().all(|(phi, b)| {
            self.topes.push(phi.clone());
            let r = f(self, b);
            self.topes.pop();
            r
        })
    }

    /// Type-directed conversion. `u` and `v` are assumed to both inhabit
    /// `ty`; under an unsatisfiable tope context everything is equal.
    pub fn conv(&mut self, ty: &Rc<Value>, u: &Rc<Value>, v: &Rc<Value>) -> bool {
        if !self.satisfiable() {
            return true;
        }
        let ty = self.force(ty);
        let u = self.force(u);
        let v = self.force(v);
        if let Value::Cases(cs) = &*ty {
            let (u, v) = (u.clone(), v.clone());
            return self.split(cs, |s, t| s.conv(t, &u, &v));
        }
        if let Value::Cases(cs) = &*u {
            let (ty, v) = (ty.clone(), v.clone());
            return self.split(cs, |s, b| s.conv(&ty, b, &v));
        }
        if let Value::Cases(cs) = &*v {
            let (ty, u) = (ty.clone(), u.clone());
            return self.split(cs, |s, b| s.conv(&ty, &u, b));
        }
        match &*ty {
            Value::Pi { dom, cod, .. } => {
                let x = Value::var(self.tlen());
                self.var_tys.push(dom.clone());
                let cod = closure_apply(self.g, cod, x.clone());
                let r = self.conv(
                    &cod,
                    &apply(self.g, u.clone(), x.clone()),
                    &apply(self.g, v.clone(), x),
                );
                self.var_tys.pop();
                r
            }
            Value::Sigma { fst, snd, .. } => {
                let u1 = vfst(self.g, u.clone());
                let v1 = vfst(self.g, v.clone());
                self.conv(fst, &u1, &v1) && {
                    let sty = closure_apply(self.g, snd, u1);
                    self.conv(&sty, &vsnd(self.g, u), &vsnd(self.g, v))
                }
            }
            Value::Ext(e) => {
                let args = fresh_cubes(self.clen, e.dim);
                self.clen += e.dim;
                self.topes.push(e.psi_at(&args));
                let cod = e.cod_at(self.g, &args);
                let ua = ext_apply(self.g, u, args.clone(), Some(e.clone()));
                let va = ext_apply(self.g, v, args, Some(e.clone()));
                let r = self.conv(&cod, &ua, &va);
                self.topes.pop();
                self.clen -= e.dim;
                r
            }
            Value::U => self.conv_ty(&u, &v),
            _ => match (&*u, &*v) {
                (Value::Refl, Value::Refl) => true,
                (Value::Neutral(a), Value::Neutral(b)) => self.conv_neutral(a, b).is_some(),
                _ => false,
            },
        }
    }

    /// Conversion of types (both sides inhabit `U`).
    pub fn conv_ty(&mut self, u: &Rc<Value>, v: &Rc<Value>) -> bool {
        if !self.satisfiable() {
            return true;
        }
        let u = self.force(u);
        let v = self.force(v);
        if let Value::Cases(cs) = &*u {
            let v = v.clone();
            return self.split(cs, |s, b| s.conv_ty(b, &v));
        }
        if let Value::Cases(cs) = &*v {
            let u = u.clone();
            return self.split(cs, |s, b| s.conv_ty(&u, b));
        }
        match (&*u, &*v) {
            (Value::U, Value::U) => true,
            (
                Value::Pi { dom: d1, cod: c1, .. },
                Value::Pi { dom: d2, cod: c2, .. },
            )
            | (
                Value::Sigma { fst: d1, snd: c1, .. },
                Value::Sigma { fst: d2, snd: c2, .. },
            ) => {
                self.conv_ty(d1, d2) && {
                    let x = Value::var(self.tlen());
                    self.var_tys.push(d1.clone());
                    let r = self.conv_ty(
                        &closure_apply(self.g, c1, x.clone()),
                        &closure_apply(self.g, c2, x),
                    );
                    self.var_tys.pop();
                    r
                }
            }
            (
                Value::Id { ty: t1, lhs: l1, rhs: r1 },
                Value::Id { ty: t2, lhs: l2, rhs: r2 },
            ) => self.conv_ty(t1, t2) && self.conv(t1, l1, l2) && self.conv(t1, r1, r2),
            (Value::Ext(e1), Value::Ext(e2)) => self.conv_ext(e1, e2),
            (Value::Neutral(a), Value::Neutral(b)) => self.conv_neutral(a, b).is_some(),
            _ => false,
        }
    }

    fn conv_ext(&mut self, e1: &Rc<VExt>, e2: &Rc<VExt>) -> bool {
        if e1.dim != e2.dim {
            return false;
        }
        let args = fresh_cubes(self.clen, e1.dim);
        self.clen += e1.dim;
        let psi1 = e1.psi_at(&args);
        let psi2 = e2.psi_at(&args);
        let r = self.tope_equiv(&psi1, &psi2) && {
            self.topes.push(psi1);
            let cod1 = e1.cod_at(self.g, &args);
            let cod2 = e2.cod_at(self.g, &args);
            let boundary1 = Tope::disj(e1.cases.iter().map(|(p, _)| e1.tope_at(p, &args)));
            let boundary2 = Tope::disj(e2.cases.iter().map(|(p, _)| e2.tope_at(p, &args)));
            let ok = self.conv_ty(&cod1, &cod2)
                && self.tope_equiv(&boundary1, &boundary2)
                && e1.cases.iter().enumerate().all(|(i, (p1, _))| {
                    e2.cases.iter().enumerate().all(|(j, (p2, _))| {
                        self.topes.push(Tope::and(e1.tope_at(p1, &args), e2.tope_at(p2, &args)));
                        let a1 = e1.case_at(self.g, i, &args);
                        let a2 = e2.case_at(self.g, j, &args);
                        let eq = self.conv(&cod1, &a1, &a2);
                        self.topes.pop();
                        eq
                    })
                });
            self.topes.pop();
            ok
        };
        self.clen -= e1.dim;
        r
    }

    /// Compare two neutrals spine-by-spine; returns the type of the
    /// common value on success (needed to type later spine entries).
    fn conv_neutral(&mut self, a: &Neutral, b: &Neutral) -> Option<Rc<Value>> {
        let mut ty = match (&a.head, &b.head) {
            (Head::Var(x), Head::Var(y)) if x == y => self.var_tys[*x].clone(),
            (Head::Global(x), Head::Global(y)) if x == y => self.g.get(x)?.ty.clone(),
            _ => return None,
        };
        if a.spine.len() != b.spine.len() {
            return None;
        }
        // the value accumulated so far, for dependent projections
        let mut acc = Rc::new(Value::Neutral(Rc::new(Neutral {
            head: a.head.clone(),
            spine: Vec::new(),
        })));
        for (ea, eb) in a.spine.iter().zip(b.spine.iter()) {
            let cur = self.force(&ty);
            match (ea, eb) {
                (Elim::App(x), Elim::App(y)) => {
                    let Value::Pi { dom, cod, .. } = &*cur else {
                        return None;
                    };
                    if !self.conv(dom, x, y) {
                        return None;
                    }
                    ty = closure_apply(self.g, cod, x.clone());
                }
                (Elim::Fst, Elim::Fst) => {
                    let Value::Sigma { fst, .. } = &*cur else {
                        return None;
                    };
                    ty = fst.clone();
                }
                (Elim::Snd, Elim::Snd) => {
                    let Value::Sigma { snd, .. } = &*cur else {
                        return None;
                    };
                    ty = closure_apply(self.g, snd, vfst(self.g, acc.clone()));
                }
                (
                    Elim::J {
                        ty: t1,
                        lhs: l1,
                        motive: m1,
                        base: b1,
                        rhs: r1,
                    },
                    Elim::J {
                        ty: t2,
                        lhs: l2,
                        motive: m2,
                        base: b2,
                        rhs: r2,
                    },
                ) => {
                    if !self.conv_ty(t1, t2) {
                        return None;
                    }
                    if !self.conv(t1, l1, l2) || !self.conv(t1, r1, r2) {
                        return None;
                    }
                    let mty = crate::eval::j_motive_ty(self.g, t1);
                    if !self.conv(&mty, m1, m2) {
                        return None;
                    }
                    let bty = crate::eval::j_base_ty(self.g, t1, m1);
                    if !self.conv(&bty, b1, b2) {
                        return None;
                    }
                    ty = apply(
                        self.g,
                        apply(self.g, apply(self.g, m1.clone(), l1.clone()), r1.clone()),
                        acc.clone(),
                    );
                }
                (
                    Elim::ExtApp { args: a1, ty: ann1 },
                    Elim::ExtApp { args: a2, .. },
                ) => {
                    if a1.len() != a2.len() {
                        return None;
                    }
                    for (s, t) in a1.iter().zip(a2.iter()) {
                        if !self.entails(&Tope::Eq(s.clone(), t.clone())) {
                            return None;
                        }
                    }
                    let ext = match &*cur {
                        Value::Ext(e) => e.clone(),
                        _ => match ann1 {
                            Some(e) => e.clone(),
                            None => return None,
                        },
                    };
                    ty = ext.cod_at(self.g, a1);
                }
                _ => return None,
            }
            acc = apply_elim(self.g, acc, ea);
        }
        Some(ty)
    }

    /// Type-directed readback: beta-normal, eta-long for Pi/Sigma and
    /// extension types.
    pub fn readback(&mut self, ty: &Rc<Value>, v: &Rc<Value>) -> CTerm {
        let ty = self.force(ty);
        let v = self.force(v);
        if let Value::Cases(cs) = &*ty {
            return self.readback_cases(cs, |s, t| s.readback(t, &v));
        }
        match &*ty {
            Value::Pi { name, dom, cod } => {
                let x = Value::var(self.tlen());
                self.var_tys.push(dom.clone());
                let cod = closure_apply(self.g, cod, x.clone());
                let body = self.readback(&cod, &apply(self.g, v.clone(), x));
                self.var_tys.pop();
                crate::core::Core::Lam {
                    name: name.clone(),
                    body: Rc::new(body),
                }
                .at(crate::diag::Span::new(0, 0))
            }
            Value::Sigma { fst, snd, .. } => {
                let v1 = vfst(self.g, v.clone());
                let a = self.readback(fst, &v1);
                let sty = closure_apply(self.g, snd, v1);
                let b = self.readback(&sty, &vsnd(self.g, v));
                crate::core::Core::Pair(Rc::new(a), Rc::new(b)).at(crate::diag::Span::new(0, 0))
            }
            Value::Ext(e) => {
                let args = fresh_cubes(self.clen, e.dim);
                self.clen += e.dim;
                self.topes.push(e.psi_at(&args));
                let cod = e.cod_at(self.g, &args);
                let body = self.readback(&cod, &ext_apply(self.g, v, args, Some(e.clone())));
                self.topes.pop();
                self.clen -= e.dim;
                crate::core::Core::ExtLam {
                    names: e.names.clone(),
                    dim: e.dim,
                    body: Rc::new(body),
                }
                .at(crate::diag::Span::new(0, 0))
            }
            Value::U => self.readback_ty(&v),
            _ => quote(self.g, self.tlen(), self.clen, &v),
        }
    }

    pub fn readback_ty(&mut self, v: &Rc<Value>) -> CTerm {
        let sp = crate::diag::Span::new(0, 0);
        let v = self.force(v);
        if let Value::Cases(cs) = &*v {
            return self.readback_cases(cs, |s, b| s.readback_ty(b));
        }
        match &*v {
            Value::U => crate::core::Core::U.at(sp),
            Value::Pi { name, dom, cod } => {
                let d = self.readback_ty(dom);
                let x = Value::var(self.tlen());
                self.var_tys.push(dom.clone());
                let c = self.readback_ty(&closure_apply(self.g, cod, x));
                self.var_tys.pop();
                crate::core::Core::Pi {
                    name: name.clone(),
                    dom: Rc::new(d),
                    cod: Rc::new(c),
                }
                .at(sp)
            }
            Value::Sigma { name, fst, snd } => {
                let d = self.readback_ty(fst);
                let x = Value::var(self.tlen());
                self.var_tys.push(fst.clone());
                let c = self.readback_ty(&closure_apply(self.g, snd, x));
                self.var_tys.pop();
                crate::core::Core::Sigma {
                    name: name.clone(),
                    fst: Rc::new(d),
                    snd: Rc::new(c),
                }
                .at(sp)
            }
            Value::Id { ty, lhs, rhs } => crate::core::Core::Id {
                ty: Rc::new(self.readback_ty(ty)),
                lhs: Rc::new(self.readback(ty, lhs)),
                rhs: Rc::new(self.readback(ty, rhs)),
            }
            .at(sp),
            Value::Ext(e) => {
                let args = fresh_cubes(self.clen, e.dim);
                let inner = self.clen + e.dim;
                let psi = e.psi_at(&args);
                self.clen = inner;
                self.topes.push(psi.clone());
                let cod = e.cod_at(self.g, &args);
                let cod_t = self.readback_ty(&cod);
                let cases = e
                    .cases
                    .iter()
                    .enumerate()
                    .map(|(i, (p, _))| {
                        let phi = e.tope_at(p, &args);
                        self.topes.push(phi.clone());
                        let body = self.readback(&cod, &e.case_at(self.g, i, &args));
                        self.topes.pop();
                        (quote_tope(inner, &phi), Rc::new(body))
                    })
                    .collect();
                self.topes.pop();
                self.clen -= e.dim;
                crate::core::Core::Ext {
                    names: e.names.clone(),
                    dim: e.dim,
                    psi: quote_tope(inner, &psi),
                    cod: Rc::new(cod_t),
                    cases,
                }
                .at(sp)
            }
            _ => quote(self.g, self.tlen(), self.clen, &v),
        }
    }

    fn readback_cases(
        &mut self,
        cases: &[(VTope, Rc<Value>)],
        mut f: impl FnMut(&mut Self, &Rc<Value>) -> CTerm,
    ) -> CTerm {
        let sp = crate::diag::Span::new(0, 0);
        let cs = cases
            .iter()
            .map(|(phi, b)| {
                self.topes.push(phi.clone());
                let t = f(self, b);
                self.topes.pop();
                (quote_tope(self.clen, phi), Rc::new(t))
            })
            .collect();
        crate::core::Core::RecOr { cases: cs }.at(sp)
    }
}

/// Apply one spine entry to a value.
pub fn apply_elim(g: &Globals, v: Rc<Value>, e: &Elim) -> Rc<Value> {
    match e {
        Elim::App(a) => apply(g, v, a.clone()),
        Elim::Fst => vfst(g, v),
        Elim::Snd => vsnd(g, v),
        Elim::J {
            ty,
            lhs,
            motive,
            base,
            rhs,
        } => crate::eval::j_elim(
            g,
            ty.clone(),
            lhs.clone(),
            motive.clone(),
            base.clone(),
            rhs.clone(),
            v,
        ),
        Elim::ExtApp { args, ty } => ext_apply(g, v, args.clone(), ty.clone()),
    }
}
