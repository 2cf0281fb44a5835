//! Evaluation and structural readback. Evaluation is untyped and total on
//! scope-checked terms that survived the checker.

use crate::core::{CInterval, CTerm, Core};
use crate::diag::Span;
use crate::tope::{Interval, Tope};
use crate::value::*;
use std::rc::Rc;

pub fn eval_interval(env: &Env, i: &CInterval) -> IVal {
    match i {
        Interval::Zero => Interval::Zero,
        Interval::One => Interval::One,
        Interval::Var(idx) => env.cube(*idx),
    }
}

pub fn eval_tope(env: &Env, t: &crate::core::CTope) -> VTope {
    t.map_vars(&mut |&i| env.cube(i)).flatten_intervals()
}

pub fn eval(g: &Globals, env: &Env, t: &CTerm) -> Rc<Value> {
    match &t.node {
        Core::Var(i) => env.val(*i),
        Core::Global(name) => {
            let entry = g.get(name).expect("global resolved before evaluation");
            match &entry.val {
                Some(v) => v.clone(),
                None => Value::global(name),
            }
        }
        Core::U => Rc::new(Value::U),
        Core::Pi { name, dom, cod } => Rc::new(Value::Pi {
            name: name.clone(),
            dom: eval(g, env, dom),
            cod: Closure {
                env: env.clone(),
                body: cod.clone(),
            },
        }),
        Core::Lam { name, body } => Rc::new(Value::Lam {
            name: name.clone(),
            body: Closure {
                env: env.clone(),
                body: body.clone(),
            },
        }),
        Core::App(f, a) => apply(g, eval(g, env, f), eval(g, env, a)),
        Core::Sigma { name, fst, snd } => Rc::new(Value::Sigma {
            name: name.clone(),
            fst: eval(g, env, fst),
            snd: Closure {
                env: env.clone(),
                body: snd.clone(),
            },
        }),
        Core::Pair(a, b) => Rc::new(Value::Pair(eval(g, env, a), eval(g, env, b))),
        Core::Fst(p) => fst(g, eval(g, env, p)),
        Core::Snd(p) => snd(g, eval(g, env, p)),
        Core::Id { ty, lhs, rhs } => Rc::new(Value::Id {
            ty: eval(g, env, ty),
            lhs: eval(g, env, lhs),
            rhs: eval(g, env, rhs),
        }),
        Core::Refl => Rc::new(Value::Refl),
        Core::J {
            ty,
            lhs,
            motive,
            base,
            rhs,
            path,
        } => j_elim(
            g,
            eval(g, env, ty),
            eval(g, env, lhs),
            eval(g, env, motive),
            eval(g, env, base),
            eval(g, env, rhs),
            eval(g, env, path),
        ),
        Core::Anno { term, .. } => eval(g, env, term),
        Core::Hole => panic!("hole survived type checking"),
        Core::Ext {
            names,
            dim,
            psi,
            cod,
            cases,
        } => Rc::new(Value::Ext(Rc::new(VExt {
            names: names.clone(),
            dim: *dim,
            env: env.clone(),
            psi: psi.clone(),
            cod: cod.clone(),
            cases: cases.clone(),
        }))),
        Core::ExtLam { names, dim, body } => Rc::new(Value::ExtLam(CubeClosure {
            names: names.clone(),
            dim: *dim,
            env: env.clone(),
            body: body.clone(),
        })),
        Core::ExtApp { fun, args, ann } => {
            let fun = eval(g, env, fun);
            let args: Vec<IVal> = args.iter().map(|a| eval_interval(env, a)).collect();
            let ann = ann.as_ref().map(|ty| match &*eval(g, env, ty) {
                Value::Ext(e) => e.clone(),
                _ => panic!("extension application annotated with a non-extension type"),
            });
            ext_apply(g, fun, args, ann)
        }
        Core::RecOr { cases } => {
            // a syntactically-true case short-circuits
            for (phi, body) in cases {
                if matches!(phi, Tope::Top) {
                    return eval(g, env, body);
                }
            }
            if cases.len() == 1 {
                return eval(g, env, &cases[0].1);
            }
            Rc::new(Value::Cases(
                cases
                    .iter()
                    .map(|(phi, body)| (eval_tope(env, phi), eval(g, env, body)))
                    .collect(),
            ))
        }
    }
}

pub fn closure_apply(g: &Globals, c: &Closure, arg: Rc<Value>) -> Rc<Value> {
    eval(g, &c.env.pushed_val(arg), &c.body)
}

pub fn cube_closure_apply(g: &Globals, c: &CubeClosure, args: &[IVal]) -> Rc<Value> {
    debug_assert_eq!(args.len(), c.dim);
    eval(g, &c.env.pushed_cubes(args), &c.body)
}

impl VExt {
    pub fn cod_at(&self, g: &Globals, args: &[IVal]) -> Rc<Value> {
        debug_assert_eq!(args.len(), self.dim);
        eval(g, &self.env.pushed_cubes(args), &self.cod)
    }

    pub fn case_at(&self, g: &Globals, idx: usize, args: &[IVal]) -> Rc<Value> {
        eval(g, &self.env.pushed_cubes(args), &self.cases[idx].1)
    }
}

fn map_cases(
    cases: &[(VTope, Rc<Value>)],
    mut f: impl FnMut(&Rc<Value>) -> Rc<Value>,
) -> Rc<Value> {
    Rc::new(Value::Cases(
        cases.iter().map(|(t, v)| (t.clone(), f(v))).collect(),
    ))
}

fn push_elim(n: &Neutral, e: Elim) -> Rc<Value> {
    let mut spine = n.spine.clone();
    spine.push(e);
    Rc::new(Value::Neutral(Rc::new(Neutral {
        head: n.head.clone(),
        spine,
    })))
}

pub fn apply(g: &Globals, f: Rc<Value>, a: Rc<Value>) -> Rc<Value> {
    match &*f {
        Value::Lam { body, .. } => closure_apply(g, body, a),
        Value::Neutral(n) => push_elim(n, Elim::App(a)),
        Value::Cases(cs) => map_cases(cs, |v| apply(g, v.clone(), a.clone())),
        _ => panic!("application of a non-function value"),
    }
}

pub fn fst(g: &Globals, v: Rc<Value>) -> Rc<Value> {
    match &*v {
        Value::Pair(a, _) => a.clone(),
        Value::Neutral(n) => push_elim(n, Elim::Fst),
        Value::Cases(cs) => map_cases(cs, |v| fst(g, v.clone())),
        _ => panic!("first projection of a non-pair value"),
    }
}

pub fn snd(g: &Globals, v: Rc<Value>) -> Rc<Value> {
    match &*v {
        Value::Pair(_, b) => b.clone(),
        Value::Neutral(n) => push_elim(n, Elim::Snd),
        Value::Cases(cs) => map_cases(cs, |v| snd(g, v.clone())),
        _ => panic!("second projection of a non-pair value"),
    }
}

pub fn j_elim(
    g: &Globals,
    ty: Rc<Value>,
    lhs: Rc<Value>,
    motive: Rc<Value>,
    base: Rc<Value>,
    rhs: Rc<Value>,
    path: Rc<Value>,
) -> Rc<Value> {
    match &*path {
        // idJ(A, x, C, d, x, refl) computes to d x : C x x refl
        Value::Refl => apply(g, base, lhs),
        Value::Neutral(n) => push_elim(
            n,
            Elim::J {
                ty,
                lhs,
                motive,
                base,
                rhs,
            },
        ),
        Value::Cases(cs) => map_cases(cs, |p| {
            j_elim(
                g,
                ty.clone(),
                lhs.clone(),
                motive.clone(),
                base.clone(),
                rhs.clone(),
                p.clone(),
            )
        }),
        _ => panic!("J applied to a non-path value"),
    }
}

/// Evaluate a tope with no free cube variables.
fn ground_tope(t: &VTope) -> Option<bool> {
    let rank = |i: &IVal| match i {
        Interval::Zero => Some(0u8),
        Interval::One => Some(1),
        Interval::Var(_) => None,
    };
    Some(match t {
        Tope::Top => true,
        Tope::Bot => false,
        Tope::Le(a, b) => rank(a)? <= rank(b)?,
        Tope::Eq(a, b) => rank(a)? == rank(b)?,
        Tope::And(a, b) => ground_tope(a)? && ground_tope(b)?,
        Tope::Or(a, b) => {
            // short-circuit so one ground disjunct suffices
            match (ground_tope(a), ground_tope(b)) {
                (Some(true), _) | (_, Some(true)) => true,
                (Some(false), Some(false)) => false,
                _ => return None,
            }
        }
    })
}

pub fn ext_apply(
    g: &Globals,
    f: Rc<Value>,
    args: Vec<IVal>,
    ann: Option<Rc<VExt>>,
) -> Rc<Value> {
    match &*f {
        Value::ExtLam(c) => cube_closure_apply(g, c, &args),
        Value::Neutral(n) => {
            // boundary cases that hold at this point outright (for
            // example endpoint applications) compute immediately
            if let Some(ext) = &ann {
                for (idx, (phi, _)) in ext.cases.iter().enumerate() {
                    if ground_tope(&ext.tope_at(phi, &args)) == Some(true) {
                        return ext.case_at(g, idx, &args);
                    }
                }
            }
            push_elim(n, Elim::ExtApp { args, ty: ann })
        }
        Value::Cases(cs) => map_cases(cs, |v| ext_apply(g, v.clone(), args.clone(), ann.clone())),
        _ => panic!("extension application of a non-extension value"),
    }
}

fn dummy() -> Span {
    Span::new(0, 0)
}

fn rc(node: Core) -> Rc<CTerm> {
    Rc::new(node.at(dummy()))
}

/// The motive type of J at `A`: `(x y : A) -> (x =_A y) -> U`, built by
/// evaluating a fixed term template in the environment `[A]`.
pub fn j_motive_ty(g: &Globals, a: &Rc<Value>) -> Rc<Value> {
    let template = rc(Core::Pi {
        name: "x".into(),
        dom: rc(Core::Var(0)),
        cod: rc(Core::Pi {
            name: "y".into(),
            dom: rc(Core::Var(1)),
            cod: rc(Core::Pi {
                name: "_".into(),
                dom: rc(Core::Id {
                    ty: rc(Core::Var(2)),
                    lhs: rc(Core::Var(1)),
                    rhs: rc(Core::Var(0)),
                }),
                cod: rc(Core::U),
            }),
        }),
    });
    let env = Env::default().pushed_val(a.clone());
    eval(g, &env, &template)
}

/// The base-case type of J at `A`, `C`: `(x : A) -> C x x refl`, built in
/// the environment `[A, C]`.
pub fn j_base_ty(g: &Globals, a: &Rc<Value>, c: &Rc<Value>) -> Rc<Value> {
    let template = rc(Core::Pi {
        name: "x".into(),
        dom: rc(Core::Var(1)),
        cod: rc(Core::App(
            rc(Core::App(
                rc(Core::App(rc(Core::Var(1)), rc(Core::Var(0)))),
                rc(Core::Var(0)),
            )),
            rc(Core::Refl),
        )),
    });
    let env = Env::default().pushed_val(a.clone()).pushed_val(c.clone());
    eval(g, &env, &template)
}

fn index_of_level(len: usize, level: usize) -> usize {
    debug_assert!(level < len);
    len - 1 - level
}

pub fn quote_interval(clen: usize, i: &IVal) -> CInterval {
    match i {
        Interval::Zero => Interval::Zero,
        Interval::One => Interval::One,
        Interval::Var(l) => Interval::Var(index_of_level(clen, *l)),
    }
}

pub fn quote_tope(clen: usize, t: &VTope) -> crate::core::CTope {
    t.map_vars(&mut |&l| index_of_level(clen, l))
}

/// Fresh cube points at levels `clen .. clen + dim`.
pub fn fresh_cubes(clen: usize, dim: usize) -> Vec<IVal> {
    (clen..clen + dim).map(Interval::Var).collect()
}

/// Structural readback: beta-normal terms with levels turned back into
/// indices. Used for annotations, error messages, and neutral spines.
pub fn quote(g: &Globals, tlen: usize, clen: usize, v: &Value) -> CTerm {
    let sp = dummy();
    match v {
        Value::U => Core::U.at(sp),
        Value::Pi { name, dom, cod } => {
            let body = closure_apply(g, cod, Value::var(tlen));
            Core::Pi {
                name: name.clone(),
                dom: Rc::new(quote(g, tlen, clen, dom)),
                cod: Rc::new(quote(g, tlen + 1, clen, &body)),
            }
            .at(sp)
        }
        Value::Lam { name, body } => {
            let b = closure_apply(g, body, Value::var(tlen));
            Core::Lam {
                name: name.clone(),
                body: Rc::new(quote(g, tlen + 1, clen, &b)),
            }
            .at(sp)
        }
        Value::Sigma { name, fst, snd } => {
            let s = closure_apply(g, snd, Value::var(tlen));
            Core::Sigma {
                name: name.clone(),
                fst: Rc::new(quote(g, tlen, clen, fst)),
                snd: Rc::new(quote(g, tlen + 1, clen, &s)),
            }
            .at(sp)
        }
        Value::Pair(a, b) => Core::Pair(
            Rc::new(quote(g, tlen, clen, a)),
            Rc::new(quote(g, tlen, clen, b)),
        )
        .at(sp),
        Value::Id { ty, lhs, rhs } => Core::Id {
            ty: Rc::new(quote(g, tlen, clen, ty)),
            lhs: Rc::new(quote(g, tlen, clen, lhs)),
            rhs: Rc::new(quote(g, tlen, clen, rhs)),
        }
        .at(sp),
        Value::Refl => Core::Refl.at(sp),
        Value::Ext(e) => quote_ext(g, tlen, clen, e),
        Value::ExtLam(c) => {
            let args = fresh_cubes(clen, c.dim);
            let b = cube_closure_apply(g, c, &args);
            Core::ExtLam {
                names: c.names.clone(),
                dim: c.dim,
                body: Rc::new(quote(g, tlen, clen + c.dim, &b)),
            }
            .at(sp)
        }
        Value::Neutral(n) => quote_neutral(g, tlen, clen, n),
        Value::Cases(cs) => Core::RecOr {
            cases: cs
                .iter()
                .map(|(t, v)| (quote_tope(clen, t), Rc::new(quote(g, tlen, clen, v))))
                .collect(),
        }
        .at(sp),
    }
}

pub fn quote_ext(g: &Globals, tlen: usize, clen: usize, e: &VExt) -> CTerm {
    let args = fresh_cubes(clen, e.dim);
    let inner = clen + e.dim;
    Core::Ext {
        names: e.names.clone(),
        dim: e.dim,
        psi: quote_tope(inner, &e.psi_at(&args)),
        cod: Rc::new(quote(g, tlen, inner, &e.cod_at(g, &args))),
        cases: e
            .cases
            .iter()
            .enumerate()
            .map(|(i, (phi, _))| {
                (
                    quote_tope(inner, &e.tope_at(phi, &args)),
                    Rc::new(quote(g, tlen, inner, &e.case_at(g, i, &args))),
                )
            })
            .collect(),
    }
    .at(dummy())
}

fn quote_neutral(g: &Globals, tlen: usize, clen: usize, n: &Neutral) -> CTerm {
    let sp = dummy();
    let mut t = match &n.head {
        Head::Var(l) => Core::Var(index_of_level(tlen, *l)).at(sp),
        Head::Global(name) => Core::Global(name.clone()).at(sp),
    };
    for e in &n.spine {
        t = match e {
            Elim::App(a) => Core::App(Rc::new(t), Rc::new(quote(g, tlen, clen, a))).at(sp),
            Elim::Fst => Core::Fst(Rc::new(t)).at(sp),
            Elim::Snd => Core::Snd(Rc::new(t)).at(sp),
            Elim::J {
                ty,
                lhs,
                motive,
                base,
                rhs,
            } => Core::J {
                ty: Rc::new(quote(g, tlen, clen, ty)),
                lhs: Rc::new(quote(g, tlen, clen, lhs)),
                motive: Rc::new(quote(g, tlen, clen, motive)),
                base: Rc::new(quote(g, tlen, clen, base)),
                rhs: Rc::new(quote(g, tlen, clen, rhs)),
                path: Rc::new(t),
            }
            .at(sp),
            Elim::ExtApp { args, ty } => Core::ExtApp {
                fun: Rc::new(t),
                args: args.iter().map(|a| quote_interval(clen, a)).collect(),
                ann: ty.as_ref().map(|e| Rc::new(quote_ext(g, tlen, clen, e))),
            }
            .at(sp),
        };
    }
    t
}
