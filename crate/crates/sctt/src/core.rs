//! Kernel terms: scope-checked, locally nameless. Type-layer and
//! cube-layer variables live in separate de Bruijn index spaces.

use crate::diag::Span;
use crate::tope::{Interval, Tope};
use std::rc::Rc;

/// A tope over cube de Bruijn indices.
pub type CTope = Tope<usize>;
/// An interval expression over cube de Bruijn indices.
pub type CInterval = Interval<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTerm {
    pub node: Core,
    pub span: Span,
}

impl CTerm {
    pub fn new(node: Core, span: Span) -> Self {
        CTerm { node, span }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Core {
    /// Type-layer variable (de Bruijn index).
    Var(usize),
    /// Reference to an earlier declaration.
    Global(String),
    U,
    Pi {
        name: String,
        dom: Rc<CTerm>,
        cod: Rc<CTerm>,
    },
    Lam {
        name: String,
        body: Rc<CTerm>,
    },
    App(Rc<CTerm>, Rc<CTerm>),
    Sigma {
        name: String,
        fst: Rc<CTerm>,
        snd: Rc<CTerm>,
    },
    Pair(Rc<CTerm>, Rc<CTerm>),
    Fst(Rc<CTerm>),
    Snd(Rc<CTerm>),
    Id {
        ty: Rc<CTerm>,
        lhs: Rc<CTerm>,
        rhs: Rc<CTerm>,
    },
    Refl,
    /// `idJ(A, x, C, d, y, p)`.
    J {
        ty: Rc<CTerm>,
        lhs: Rc<CTerm>,
        motive: Rc<CTerm>,
        base: Rc<CTerm>,
        rhs: Rc<CTerm>,
        path: Rc<CTerm>,
    },
    Anno {
        term: Rc<CTerm>,
        ty: Rc<CTerm>,
    },
    Hole,
    /// Extension type; binds `dim` cube variables in `psi`, `cod`, and the
    /// boundary cases.
    Ext {
        names: Vec<String>,
        dim: usize,
        psi: CTope,
        cod: Rc<CTerm>,
        cases: Vec<(CTope, Rc<CTerm>)>,
    },
    /// Binds `dim` cube variables in `body`.
    ExtLam {
        names: Vec<String>,
        dim: usize,
        body: Rc<CTerm>,
    },
    /// Extension application. `ann` is the extension type of `fun`, filled
    /// in by the checker so evaluation can compute mandated boundaries on
    /// neutral heads.
    ExtApp {
        fun: Rc<CTerm>,
        args: Vec<CInterval>,
        ann: Option<Rc<CTerm>>,
    },
    /// Definition by tope cases; no binders of its own.
    RecOr {
        cases: Vec<(CTope, Rc<CTerm>)>,
    },
}

impl Core {
    pub fn at(self, span: Span) -> CTerm {
        CTerm::new(self, span)
    }
}
