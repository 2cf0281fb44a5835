//! Property-based tests: algebraic laws of the tope solver, printer/parser
//! roundtrips for tope formulas, and stability of normalization.

mod common;

use common::*;
use proptest::prelude::*;
use sctt::tope::{satisfiable, tope_entails, Interval, Tope};

const N_VARS: usize = 3;

fn interval_strategy() -> impl Strategy<Value = Interval<usize>> {
    prop_oneof![
        Just(Interval::Zero),
        Just(Interval::One),
        (0..N_VARS).prop_map(Interval::Var),
    ]
}

fn tope_strategy() -> impl Strategy<Value = Tope<usize>> {
    let leaf = prop_oneof![
        Just(Tope::Top),
        Just(Tope::Bot),
        (interval_strategy(), interval_strategy()).prop_map(|(a, b)| Tope::Le(a, b)),
        (interval_strategy(), interval_strategy()).prop_map(|(a, b)| Tope::Eq(a, b)),
    ];
    leaf.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tope::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Tope::or(a, b)),
        ]
    })
}

fn entails(h: &Tope<usize>, g: &Tope<usize>) -> bool {
    tope_entails(N_VARS, h, g, CUBE_CAP).unwrap().is_none()
}

proptest! {
    /// Lattice laws of tope entailment.
    #[test]
    fn tope_lattice_laws(a in tope_strategy(), b in tope_strategy(), c in tope_strategy()) {
        let ab = Tope::and(a.clone(), b.clone());
        prop_assert!(entails(&ab, &a));
        prop_assert!(entails(&ab, &b));
        prop_assert!(entails(&a, &Tope::or(a.clone(), b.clone())));
        prop_assert!(entails(&a, &a));
        prop_assert!(entails(&Tope::Bot, &a));
        prop_assert!(entails(&a, &Tope::Top));
        // Distributivity, both directions.
        let lhs = Tope::and(a.clone(), Tope::or(b.clone(), c.clone()));
        let rhs = Tope::or(Tope::and(a.clone(), b.clone()), Tope::and(a.clone(), c.clone()));
        prop_assert!(entails(&lhs, &rhs));
        prop_assert!(entails(&rhs, &lhs));
    }

    /// Entailment is monotone: strengthening the hypothesis and weakening
    /// the goal both preserve validity.
    #[test]
    fn tope_entailment_monotone(a in tope_strategy(), b in tope_strategy(), c in tope_strategy()) {
        if entails(&a, &b) {
            prop_assert!(entails(&Tope::and(a.clone(), c.clone()), &b));
            prop_assert!(entails(&a, &Tope::or(b.clone(), c.clone())));
        }
    }

    /// Entailment is transitive.
    #[test]
    fn tope_entailment_transitive(a in tope_strategy(), b in tope_strategy(), c in tope_strategy()) {
        if entails(&a, &b) && entails(&b, &c) {
            prop_assert!(entails(&a, &c));
        }
    }

    /// The DNF transformation preserves entailment in both directions.
    #[test]
    fn tope_dnf_equivalent(a in tope_strategy()) {
        let d = Tope::disj(
            sctt::tope::dnf(&a)
                .into_iter()
                .map(|c| c.into_iter().fold(Tope::Top, Tope::and)),
        );
        prop_assert!(entails(&a, &d));
        prop_assert!(entails(&d, &a));
    }

    /// A formula is satisfiable iff it does not entail Bot, and every
    /// refuting weak order yields a consistent rational witness.
    #[test]
    fn tope_witness_consistent(a in tope_strategy(), b in tope_strategy()) {
        match tope_entails(N_VARS, &a, &b, CUBE_CAP).unwrap() {
            None => {}
            Some(order) => {
                let w = order.rational_witness();
                prop_assert_eq!(w.len(), N_VARS);
                prop_assert!(sctt::tope::eval_at_point(&a, &w));
                prop_assert!(!sctt::tope::eval_at_point(&b, &w));
                prop_assert!(satisfiable(N_VARS, &a, CUBE_CAP).unwrap());
            }
        }
    }
}

proptest! {
    /// Printing a tope formula and reparsing it roundtrips through the
    /// surface syntax.
    #[test]
    fn tope_print_parse_roundtrip(a in tope_strategy()) {
        let names: Vec<String> = (0..N_VARS).map(|i| format!("t{i}")).collect();
        let surface = to_surface(&a, &names);
        let printed = sctt::pretty::print_tope(&surface);
        let tokens = sctt::lexer::tokenize(&printed).unwrap();
        let back = sctt::parser::parse_tope(&tokens).unwrap();
        prop_assert_eq!(
            strip(&back), strip(&surface),
            "printed form: {}", printed
        );
    }
}

fn to_surface(t: &Tope<usize>, names: &[String]) -> sctt::syntax::STope {
    use sctt::syntax::{SInterval, STope};
    let sp = sctt::Span::new(0, 0);
    let iv = |i: &Interval<usize>| match i {
        Interval::Zero => SInterval::Zero(sp),
        Interval::One => SInterval::One(sp),
        Interval::Var(v) => SInterval::Name(names[*v].clone(), sp),
    };
    match t {
        Tope::Top => STope::Top(sp),
        Tope::Bot => STope::Bot(sp),
        Tope::Le(a, b) => STope::Le(iv(a), iv(b)),
        Tope::Eq(a, b) => STope::Eq(iv(a), iv(b)),
        Tope::And(a, b) => STope::And(
            Box::new(to_surface(a, names)),
            Box::new(to_surface(b, names)),
        ),
        Tope::Or(a, b) => STope::Or(
            Box::new(to_surface(a, names)),
            Box::new(to_surface(b, names)),
        ),
    }
}

/// Forget spans so structural comparison sees only the formula shape.
fn strip(t: &sctt::syntax::STope) -> String {
    use sctt::syntax::{SInterval, STope};
    let iv = |i: &SInterval| match i {
        SInterval::Zero(_) => "0".to_string(),
        SInterval::One(_) => "1".to_string(),
        SInterval::Name(n, _) => n.clone(),
    };
    match t {
        STope::Top(_) => "T".into(),
        STope::Bot(_) => "F".into(),
        STope::Le(a, b) => format!("le({},{})", iv(a), iv(b)),
        STope::Eq(a, b) => format!("eq({},{})", iv(a), iv(b)),
        STope::And(a, b) => format!("and({},{})", strip(a), strip(b)),
        STope::Or(a, b) => format!("or({},{})", strip(a), strip(b)),
    }
}

/// Normalization is stable: reparsing and renormalizing a printed normal
/// form reproduces it, for every library declaration.
#[test]
fn normalize_stable_on_library() {
    let s = lib_session();
    for name in s.names.iter() {
        // Reparse as `(nf : ty)` — bare normal forms of definitions are
        // often lambdas, which are not inferable without an annotation.
        let g = &s.checker.globals;
        let entry = g.get(name).unwrap();
        let ty_core = sctt::conv::ConvCtx::new(g).readback_ty(&entry.ty);
        let ty_str = sctt::pretty::print_core(&ty_core, &[], &[]);
        let nf = normalize_in(&s, name)
            .unwrap_or_else(|e| panic!("normalizing `{name}` failed: {e}"));
        let nf2 = normalize_in(&s, &format!("({nf} : {ty_str})"))
            .unwrap_or_else(|e| panic!("renormalizing `{name}` failed: {e}\n{nf}"));
        // Binder names may be re-invented during readback, so compare the
        // reparsed normal forms up to alpha.
        let parse = |src: &str| {
            let tokens = sctt::lexer::tokenize(src).unwrap();
            sctt::parser::parse_term(&tokens).unwrap()
        };
        assert!(
            sctt::syntax::alpha_eq(&parse(&nf), &parse(&nf2)),
            "normal form of `{name}` is not stable:\n{nf}\n{nf2}"
        );
    }
}
