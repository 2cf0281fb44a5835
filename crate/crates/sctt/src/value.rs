//! Semantic values for normalization by evaluation. Free variables are
//! represented by levels (counting from the bottom of the context), with
//! separate level spaces for the type layer and the cube layer.

use crate::core::{CTerm, CTope};
use crate::tope::{Interval, Tope, DEFAULT_CUBE_CAP};
use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

/// An interval value: an endpoint or a cube variable by level.
pub type IVal = Interval<usize>;
/// A tope over cube levels.
pub type VTope = Tope<usize>;

/// Evaluation environment: parallel stacks for the two layers, indexed by
/// de Bruijn index from the top.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub vals: Vec<Rc<Value>>,
    pub cubes: Vec<IVal>,
}

impl Env {
    pub fn val(&self, i: usize) -> Rc<Value> {
        self.vals[self.vals.len() - 1 - i].clone()
    }

    pub fn cube(&self, i: usize) -> IVal {
        self.cubes[self.cubes.len() - 1 - i].clone()
    }

    pub fn pushed_val(&self, v: Rc<Value>) -> Env {
        let mut e = self.clone();
        e.vals.push(v);
        e
    }

    pub fn pushed_cubes(&self, args: &[IVal]) -> Env {
        let mut e = self.clone();
        e.cubes.extend(args.iter().cloned());
        e
    }
}

/// The checked global environment: every earlier declaration's type and
/// (for defs) value, plus its transitive axiom dependencies.
#[derive(Debug, Default)]
pub struct Globals {
    pub cube_cap: usize,
    map: BTreeMap<String, GlobalEntry>,
}

#[derive(Debug, Clone)]
pub struct GlobalEntry {
    pub ty: Rc<Value>,
    /// `None` for postulates, which evaluate to neutrals.
    pub val: Option<Rc<Value>>,
    pub axioms: BTreeSet<String>,
}

impl Globals {
    pub fn new(cube_cap: usize) -> Self {
        Globals {
            cube_cap,
            map: BTreeMap::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&GlobalEntry> {
        self.map.get(name)
    }

    pub fn insert(&mut self, name: String, entry: GlobalEntry) {
        self.map.insert(name, entry);
    }

    pub fn names(&self) -> impl Iterator<Item = &String> {
        self.map.keys()
    }
}

impl Globals {
    pub fn with_default_cap() -> Self {
        Globals::new(DEFAULT_CUBE_CAP)
    }
}

/// A suspended type-layer binder body.
#[derive(Debug, Clone)]
pub struct Closure {
    pub env: Env,
    pub body: Rc<CTerm>,
}

/// A suspended cube-layer binder body, binding `dim` variables at once.
#[derive(Debug, Clone)]
pub struct CubeClosure {
    pub names: Vec<String>,
    pub dim: usize,
    pub env: Env,
    pub body: Rc<CTerm>,
}

/// An extension-type value: the whole binder group is one closure. The
/// tope, codomain, and boundary cases bind `dim` cube indices over `env`.
#[derive(Debug, Clone)]
pub struct VExt {
    pub names: Vec<String>,
    pub dim: usize,
    pub env: Env,
    pub psi: CTope,
    pub cod: Rc<CTerm>,
    pub cases: Vec<(CTope, Rc<CTerm>)>,
}

impl VExt {
    /// Instantiate a tope bound by this extension at concrete points.
    pub fn tope_at(&self, phi: &CTope, args: &[IVal]) -> VTope {
        debug_assert_eq!(args.len(), self.dim);
        phi.map_vars(&mut |&i| {
            if i < self.dim {
                // index i names binder dim-1-i in source order
                args[self.dim - 1 - i].clone()
            } else {
                self.env.cube(i - self.dim)
            }
        })
        .flatten_intervals()
    }

    pub fn psi_at(&self, args: &[IVal]) -> VTope {
        self.tope_at(&self.psi, args)
    }
}

/// Helper: a `Tope<Interval<usize>>` produced by substitution collapses to
/// a `Tope<usize>` once nested endpoints are folded into the atoms.
pub trait FlattenIntervals {
    fn flatten_intervals(self) -> VTope;
}

impl FlattenIntervals for Tope<IVal> {
    fn flatten_intervals(self) -> VTope {
        fn iv(i: &Interval<IVal>) -> IVal {
            match i {
                Interval::Zero => Interval::Zero,
                Interval::One => Interval::One,
                Interval::Var(v) => v.clone(),
            }
        }
        match self {
            Tope::Top => Tope::Top,
            Tope::Bot => Tope::Bot,
            Tope::Le(a, b) => Tope::Le(iv(&a), iv(&b)),
            Tope::Eq(a, b) => Tope::Eq(iv(&a), iv(&b)),
            Tope::And(a, b) => {
                Tope::and(a.flatten_intervals_box(), b.flatten_intervals_box())
            }
            Tope::Or(a, b) => Tope::or(a.flatten_intervals_box(), b.flatten_intervals_box()),
        }
    }
}

trait FlattenBox {
    fn flatten_intervals_box(self) -> VTope;
}

impl FlattenBox for Box<Tope<IVal>> {
    fn flatten_intervals_box(self) -> VTope {
        (*self).flatten_intervals()
    }
}

#[derive(Debug, Clone)]
pub enum Value {
    U,
    Pi {
        name: String,
        dom: Rc<Value>,
        cod: Closure,
    },
    Lam {
        name: String,
        body: Closure,
    },
    Sigma {
        name: String,
        fst: Rc<Value>,
        snd: Closure,
    },
    Pair(Rc<Value>, Rc<Value>),
    Id {
        ty: Rc<Value>,
        lhs: Rc<Value>,
        rhs: Rc<Value>,
    },
    Refl,
    Ext(Rc<VExt>),
    ExtLam(CubeClosure),
    Neutral(Rc<Neutral>),
    /// A value defined by tope cases that the ambient tope context has not
    /// yet resolved. Eliminations distribute over the branches.
    Cases(Vec<(VTope, Rc<Value>)>),
}

#[derive(Debug, Clone)]
pub enum Head {
    /// Type-layer variable by level.
    Var(usize),
    /// A postulate (defs unfold during evaluation).
    Global(String),
}

#[derive(Debug, Clone)]
pub enum Elim {
    App(Rc<Value>),
    Fst,
    Snd,
    /// A J eliminator stuck on this neutral path.
    J {
        ty: Rc<Value>,
        lhs: Rc<Value>,
        motive: Rc<Value>,
        base: Rc<Value>,
        rhs: Rc<Value>,
    },
    /// Extension application at interval points. `ty` is the extension
    /// type of the head at this point in the spine, used to compute
    /// mandated boundaries once the tope context is known.
    ExtApp {
        args: Vec<IVal>,
        ty: Option<Rc<VExt>>,
    },
}

#[derive(Debug, Clone)]
pub struct Neutral {
    pub head: Head,
    pub spine: Vec<Elim>,
}

impl Value {
    pub fn var(level: usize) -> Rc<Value> {
        Rc::new(Value::Neutral(Rc::new(Neutral {
            head: Head::Var(level),
            spine: Vec::new(),
        })))
    }

    pub fn global(name: &str) -> Rc<Value> {
        Rc::new(Value::Neutral(Rc::new(Neutral {
            head: Head::Global(name.to_string()),
            spine: Vec::new(),
        })))
    }
}
