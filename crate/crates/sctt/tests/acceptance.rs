//! Acceptance suite: one test (and one PASS/FAIL line) per criterion.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sctt::tope::{eval_at_point, point_sample_check, tope_entails, Interval, Tope};
use std::time::Instant;

fn pass(name: &str) {
    println!("ACCEPTANCE {name}: PASS");
}

/// Criterion 1: `sctt check --with-lib lib/*.stt` exits 0 in under 10 s.
#[test]
fn criterion_1_library_checks_fast() {
    let start = Instant::now();
    let mut cmd = sctt_cmd();
    cmd.arg("check")
        .arg("--with-lib")
        .arg("--lib-path")
        .arg(lib_dir());
    for f in lib_files() {
        cmd.arg(f);
    }
    let out = cmd.output().expect("run sctt");
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "library check failed: {stdout}");
    assert!(
        stdout.trim().ends_with("0 errors"),
        "unexpected summary: {stdout}"
    );
    assert!(
        elapsed.as_secs() < 10,
        "library check took {elapsed:?}, budget is 10 s"
    );
    sctt::stdlib::verify_library(&lib_session()).expect("all required items present");
    pass("library-under-10s");
}

/// Criterion 2: the Yoneda lemma checks; its axiom usage is exactly
/// {funext}; the evid∘yon direction uses unitality only; and the
/// equivalence's underlying maps are definitionally yon and evid.
#[test]
fn criterion_2_yoneda_axiom_usage() {
    let mut s = lib_session();
    assert_eq!(axioms_of(&s, "yoneda"), vec!["funext".to_string()]);
    assert_eq!(axioms_of(&s, "evidYon"), vec!["funext".to_string()]);
    // evid∘yon round trip is unitality only: no axioms at all.
    assert!(axioms_of(&s, "yonEvid").is_empty());
    assert!(axioms_of(&s, "compUnitRight").is_empty());
    assert!(axioms_of(&s, "naturality").is_empty());
    assert!(axioms_of(&s, "compAssoc").is_empty());
    assert_eq!(
        sctt::stdlib::report_axiom_usage(&s, "yoneda").unwrap(),
        ["funext".to_string()].into_iter().collect()
    );
    assert!(sctt::stdlib::report_axiom_usage(&s, "concat")
        .unwrap()
        .is_empty());
    // Underlying maps are definitionally yon and evid.
    let src = "\
postulate A0 : U ;
postulate sA0 : isSegal A0 ;
postulate a0 : A0 ;
postulate b0 : A0 ;
postulate phi0 : (x : A0) -> hom A0 x a0 -> hom A0 x b0 ;
#check refl : first (yoneda A0 sA0 a0 b0)
  =_{hom A0 a0 b0 -> (x : A0) -> hom A0 x a0 -> hom A0 x b0} yon A0 sA0 a0 b0 ;
#check refl : first (first (second (yoneda A0 sA0 a0 b0) phi0))
  =_{hom A0 a0 b0} evid A0 a0 b0 phi0 ;
";
    s.check_source("yoneda_maps.stt", src)
        .expect("underlying maps must be definitionally yon/evid");
    pass("yoneda-axiom-usage");
}

/// Criterion 3: Segal composition checks with the isSegal hypothesis and
/// fails with E005 without it.
#[test]
fn criterion_3_segal_composition() {
    let mut s = lib_session();
    let positive = "\
postulate A1 : U ;
postulate sA1 : isSegal A1 ;
postulate x1 : A1 ;
postulate y1 : A1 ;
postulate z1 : A1 ;
postulate g1 : hom A1 x1 y1 ;
postulate f1 : hom A1 y1 z1 ;
#check comp A1 sA1 x1 y1 z1 f1 g1 : hom A1 x1 z1 ;
#check witness A1 sA1 x1 y1 z1 g1 f1
  : hom2 A1 x1 y1 z1 g1 f1 (comp A1 sA1 x1 y1 z1 f1 g1) ;
";
    s.check_source("segal_pos.stt", positive)
        .expect("composition and witness must check under isSegal");

    let mut s2 = lib_session();
    let negative = "\
postulate A1 : U ;
postulate notSegal : A1 ;
postulate x1 : A1 ;
postulate y1 : A1 ;
postulate z1 : A1 ;
postulate g1 : hom A1 x1 y1 ;
postulate f1 : hom A1 y1 z1 ;
#check comp A1 notSegal x1 y1 z1 f1 g1 : hom A1 x1 z1 ;
";
    let err = s2
        .check_source("segal_neg.stt", negative)
        .expect_err("composition must fail without isSegal");
    assert_eq!(err.code, sctt::Code::TypeMismatch, "expected E005: {err}");
    pass("segal-composition");
}

/// Criterion 4: 20 J-computation instances check by conversion against
/// their base cases, and normalize(concat p refl) = normalize(p).
#[test]
fn criterion_4_j_computation() {
    let mut s = lib_session();
    let src = "\
postulate A2 : U ;
postulate B2 : A2 -> U ;
postulate x2 : A2 ;
postulate y2 : A2 ;
postulate p2 : x2 =_{A2} y2 ;
postulate u2 : B2 x2 ;
#check refl : inv A2 x2 x2 refl =_{x2 =_{A2} x2} refl ;
#check refl : concat A2 x2 x2 x2 refl refl =_{x2 =_{A2} x2} refl ;
#check refl : concat A2 x2 y2 y2 p2 refl =_{x2 =_{A2} y2} p2 ;
#check refl : ap A2 A2 (idfun A2) x2 x2 refl =_{x2 =_{A2} x2} refl ;
#check refl : transport A2 B2 x2 x2 refl u2 =_{B2 x2} u2 ;
#check refl : idJ(A2, x2, \\b c q -> B2 b -> B2 c, \\b -> \\v -> v, x2, refl) u2 =_{B2 x2} u2 ;
#check refl : idJ(U, A2, \\X Y q -> U, \\X -> X, A2, refl) =_{U} A2 ;
#check refl : idJ(A2, x2, \\b c q -> c =_{A2} b, \\b -> refl, x2, refl) =_{x2 =_{A2} x2} refl ;
#check refl : idJ(A2, x2, \\b c q -> (x2 =_{A2} b) -> (x2 =_{A2} c), \\b -> \\r -> r, x2, refl) refl =_{x2 =_{A2} x2} refl ;
#check refl : idJ(A2, x2, \\b c q -> B2 b -> B2 c, \\b -> idfun (B2 b), x2, refl) u2 =_{B2 x2} u2 ;
#check refl : apId A2 x2 x2 refl =_{refl =_{x2 =_{A2} x2} refl} refl ;
#check refl : concatLeftUnit A2 x2 x2 refl =_{refl =_{x2 =_{A2} x2} refl} refl ;
#check refl : assoc A2 x2 x2 x2 x2 refl refl refl =_{refl =_{x2 =_{A2} x2} refl} refl ;
#check refl : invCancelL A2 x2 x2 refl =_{refl =_{x2 =_{A2} x2} refl} refl ;
#check refl : apConcat A2 A2 (idfun A2) x2 x2 x2 refl refl =_{refl =_{x2 =_{A2} x2} refl} refl ;
#check refl : apCompose A2 A2 A2 (idfun A2) (idfun A2) x2 x2 refl =_{refl =_{x2 =_{A2} x2} refl} refl ;
#check refl : cancelR A2 x2 x2 x2 refl refl refl refl =_{refl =_{x2 =_{A2} x2} refl} refl ;
#check refl : transportFibEq A2 A2 (idfun A2) x2 x2 x2 refl refl =_{refl =_{x2 =_{A2} x2} refl} refl ;
#check refl : pairPath A2 B2 x2 x2 refl u2 u2 refl =_{(x2, u2) =_{(a : A2) * B2 a} (x2, u2)} refl ;
#check refl : first (idToEquiv A2 A2 refl) =_{A2 -> A2} idfun A2 ;
";
    let instances = src.matches("#check refl").count();
    assert_eq!(instances, 20, "exactly 20 J instances");
    s.check_source("j_instances.stt", src)
        .expect("all J computation instances must check");
    let lhs = normalize_in(&s, "concat A2 x2 y2 y2 p2 refl").unwrap();
    let rhs = normalize_in(&s, "p2").unwrap();
    assert_eq!(lhs, rhs, "concat p refl must normalize to p");
    assert_eq!(rhs, "p2");
    pass("j-computation");
}

fn rand_interval(rng: &mut ChaCha8Rng, n: usize) -> Interval<usize> {
    match rng.gen_range(0..n + 2) {
        0 => Interval::Zero,
        1 => Interval::One,
        v => Interval::Var(v - 2),
    }
}

fn rand_tope(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> Tope<usize> {
    if depth == 0 || rng.gen_bool(0.35) {
        match rng.gen_range(0..4) {
            0 => Tope::Top,
            1 => Tope::Bot,
            2 => Tope::Le(rand_interval(rng, n), rand_interval(rng, n)),
            _ => Tope::Eq(rand_interval(rng, n), rand_interval(rng, n)),
        }
    } else if rng.gen_bool(0.5) {
        Tope::and(rand_tope(rng, n, depth - 1), rand_tope(rng, n, depth - 1))
    } else {
        Tope::or(rand_tope(rng, n, depth - 1), rand_tope(rng, n, depth - 1))
    }
}

/// All rational grid points with denominators up to n+1 — dense enough to
/// realize the witness of any weak order on n variables.
fn grid(n: usize) -> Vec<Vec<(u32, u32)>> {
    let mut values: Vec<(u32, u32)> = vec![(0, 1), (1, 1)];
    for den in 2..=(n as u32 + 1) {
        for num in 1..den {
            if values
                .iter()
                .all(|&(a, b)| a as u64 * den as u64 != num as u64 * b as u64)
            {
                values.push((num, den));
            }
        }
    }
    let mut points: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
    for _ in 0..n {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(*v);
                    q
                })
            })
            .collect();
    }
    points
}

/// Criterion 5: the tope solver agrees with the point-sampling oracle on
/// at least 10^4 sequents of depth ≤ 3 over ≤ 3 variables in under 60 s.
#[test]
fn criterion_5_tope_solver_completeness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5C77);
    let grids: Vec<_> = (0..=3).map(grid).collect();
    let mut total = 0usize;
    for _ in 0..3000 {
        let n = rng.gen_range(0..=3usize);
        let hyp = rand_tope(&mut rng, n, 3);
        let goal = rand_tope(&mut rng, n, 3);
        // The generated sequent itself.
        match tope_entails(n, &hyp, &goal, CUBE_CAP).unwrap() {
            None => assert!(
                point_sample_check(n, &hyp, &goal, &grids[n]),
                "solver valid but oracle refutes: {n} vars {hyp:?} => {goal:?}"
            ),
            Some(order) => {
                let w = order.rational_witness();
                assert!(eval_at_point(&hyp, &w), "counter-order must satisfy hyp");
                assert!(!eval_at_point(&goal, &w), "counter-order must refute goal");
                assert!(
                    !point_sample_check(n, &hyp, &goal, &grids[n]),
                    "solver refutes but oracle validates: {n} vars {hyp:?} => {goal:?}"
                );
            }
        }
        // Lattice laws instantiated at the same formulas.
        let conj = Tope::and(hyp.clone(), goal.clone());
        let disj = Tope::or(hyp.clone(), goal.clone());
        assert!(tope_entails(n, &conj, &hyp, CUBE_CAP).unwrap().is_none());
        assert!(tope_entails(n, &conj, &goal, CUBE_CAP).unwrap().is_none());
        assert!(tope_entails(n, &hyp, &disj, CUBE_CAP).unwrap().is_none());
        assert!(tope_entails(n, &goal, &disj, CUBE_CAP).unwrap().is_none());
        assert!(tope_entails(n, &Tope::Bot, &hyp, CUBE_CAP).unwrap().is_none());
        assert!(tope_entails(n, &hyp, &Tope::Top, CUBE_CAP).unwrap().is_none());
        assert!(tope_entails(n, &hyp, &hyp, CUBE_CAP).unwrap().is_none());
        total += 8;
    }
    // Order-theoretic laws of the directed interval.
    let v = |i| Interval::Var(i);
    let trans = Tope::and(Tope::Le(v(0), v(1)), Tope::Le(v(1), v(2)));
    assert!(tope_entails(3, &trans, &Tope::Le(v(0), v(2)), CUBE_CAP)
        .unwrap()
        .is_none());
    let total_order = Tope::or(Tope::Le(v(0), v(1)), Tope::Le(v(1), v(0)));
    assert!(tope_entails(2, &Tope::Top, &total_order, CUBE_CAP)
        .unwrap()
        .is_none());
    let antisym = Tope::and(Tope::Le(v(0), v(1)), Tope::Le(v(1), v(0)));
    assert!(tope_entails(2, &antisym, &Tope::Eq(v(0), v(1)), CUBE_CAP)
        .unwrap()
        .is_none());
    assert!(tope_entails(2, &Tope::Top, &Tope::Le(v(0), v(1)), CUBE_CAP)
        .unwrap()
        .is_some());
    total += 4;
    let elapsed = start.elapsed();
    assert!(total >= 10_000, "only {total} sequents checked");
    assert!(
        elapsed.as_secs() < 60,
        "tope completeness took {elapsed:?}, budget is 60 s"
    );
    pass("tope-solver-completeness");
}

/// Criterion 6: parse(pretty_print(t)) is alpha-equal to t for every
/// corpus term and 1,000 random well-scoped terms.
#[test]
fn criterion_6_parser_roundtrip() {
    let mut checked = 0usize;
    // Corpus terms: every type, body, and parameter annotation in lib/.
    for file in lib_files() {
        let src = std::fs::read_to_string(&file).unwrap();
        let tokens = sctt::lexer::tokenize(&src).unwrap();
        let decls = sctt::parser::parse_module(&tokens).unwrap();
        for d in decls {
            let mut terms = vec![d.ty.clone()];
            if let Some(b) = &d.body {
                terms.push(b.clone());
            }
            for p in &d.params {
                if let sctt::syntax::ParamGroup::Type { ann, .. } = p {
                    terms.push(ann.clone());
                }
            }
            for t in terms {
                roundtrip(&t);
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "corpus should contribute many terms");
    // Random well-scoped terms.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0DD5);
    for _ in 0..1000 {
        let t = gen::term(&mut rng, &mut Vec::new(), &mut Vec::new(), 5);
        roundtrip(&t);
        checked += 1;
    }
    assert!(checked >= 1100, "only {checked} roundtrip terms");
    pass("parser-roundtrip");
}

fn roundtrip(t: &sctt::syntax::Term) {
    let printed = sctt::pretty::pretty_print(t);
    let tokens = sctt::lexer::tokenize(&printed)
        .unwrap_or_else(|e| panic!("reprinted term does not lex: {e}\n{printed}"));
    let back = sctt::parser::parse_term(&tokens)
        .unwrap_or_else(|e| panic!("reprinted term does not parse: {e}\n{printed}"));
    assert!(
        sctt::syntax::alpha_eq(t, &back),
        "roundtrip not alpha-equal:\n{printed}\n{t:?}\n{back:?}"
    );
}

/// Random well-scoped surface term generation.
mod gen {
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;
    use sctt::diag::Span;
    use sctt::syntax::{SInterval, STope, Term, TermNode};

    const NAMES: &[&str] = &["a", "b", "c", "x", "y", "z", "f", "g"];
    const CUBES: &[&str] = &["t", "s", "u", "v"];

    fn sp() -> Span {
        Span::new(0, 0)
    }

    fn t(node: TermNode) -> Term {
        Term::new(node, sp())
    }

    pub fn interval(rng: &mut ChaCha8Rng, cubes: &[String]) -> SInterval {
        if !cubes.is_empty() && rng.gen_bool(0.6) {
            let i = rng.gen_range(0..cubes.len());
            SInterval::Name(cubes[i].clone(), sp())
        } else if rng.gen_bool(0.5) {
            SInterval::Zero(sp())
        } else {
            SInterval::One(sp())
        }
    }

    pub fn tope(rng: &mut ChaCha8Rng, cubes: &[String], depth: usize) -> STope {
        if depth == 0 || rng.gen_bool(0.5) {
            match rng.gen_range(0..4) {
                0 => STope::Top(sp()),
                1 => STope::Bot(sp()),
                2 => STope::Le(interval(rng, cubes), interval(rng, cubes)),
                _ => STope::Eq(interval(rng, cubes), interval(rng, cubes)),
            }
        } else if rng.gen_bool(0.5) {
            STope::And(
                Box::new(tope(rng, cubes, depth - 1)),
                Box::new(tope(rng, cubes, depth - 1)),
            )
        } else {
            STope::Or(
                Box::new(tope(rng, cubes, depth - 1)),
                Box::new(tope(rng, cubes, depth - 1)),
            )
        }
    }

    pub fn term(
        rng: &mut ChaCha8Rng,
        scope: &mut Vec<String>,
        cubes: &mut Vec<String>,
        depth: usize,
    ) -> Term {
        if depth == 0 {
            return leaf(rng, scope);
        }
        match rng.gen_range(0..14) {
            0 => leaf(rng, scope),
            1 => {
                let name = NAMES[rng.gen_range(0..NAMES.len())].to_string();
                let dom = term(rng, scope, cubes, depth - 1);
                scope.push(name.clone());
                let cod = term(rng, scope, cubes, depth - 1);
                scope.pop();
                t(TermNode::Pi {
                    name,
                    dom: Box::new(dom),
                    cod: Box::new(cod),
                })
            }
            2 => {
                let name = NAMES[rng.gen_range(0..NAMES.len())].to_string();
                scope.push(name.clone());
                let body = term(rng, scope, cubes, depth - 1);
                scope.pop();
                t(TermNode::Lambda {
                    name,
                    body: Box::new(body),
                })
            }
            3 => {
                let f = term(rng, scope, cubes, depth - 1);
                let a = term(rng, scope, cubes, depth - 1);
                t(TermNode::App(Box::new(f), Box::new(a)))
            }
            4 => {
                let name = NAMES[rng.gen_range(0..NAMES.len())].to_string();
                let fst = term(rng, scope, cubes, depth - 1);
                scope.push(name.clone());
                let snd = term(rng, scope, cubes, depth - 1);
                scope.pop();
                t(TermNode::Sigma {
                    name,
                    fst: Box::new(fst),
                    snd: Box::new(snd),
                })
            }
            5 => t(TermNode::Pair(
                Box::new(term(rng, scope, cubes, depth - 1)),
                Box::new(term(rng, scope, cubes, depth - 1)),
            )),
            6 => t(TermNode::First(Box::new(term(rng, scope, cubes, depth - 1)))),
            7 => t(TermNode::Second(Box::new(term(rng, scope, cubes, depth - 1)))),
            8 => t(TermNode::Id {
                ty: Box::new(term(rng, scope, cubes, depth - 1)),
                lhs: Box::new(term(rng, scope, cubes, depth - 1)),
                rhs: Box::new(term(rng, scope, cubes, depth - 1)),
            }),
            9 => t(TermNode::IdJ(Box::new([
                term(rng, scope, cubes, depth - 1),
                term(rng, scope, cubes, depth - 1),
                term(rng, scope, cubes, depth - 1),
                term(rng, scope, cubes, depth - 1),
                term(rng, scope, cubes, depth - 1),
                term(rng, scope, cubes, depth - 1),
            ]))),
            10 => t(TermNode::Anno {
                term: Box::new(term(rng, scope, cubes, depth - 1)),
                ty: Box::new(term(rng, scope, cubes, depth - 1)),
            }),
            11 => {
                // Extension type with 1-2 cube binders.
                let dim = rng.gen_range(1..=2usize);
                let names: Vec<(String, Span)> = (0..dim)
                    .map(|i| (CUBES[i].to_string(), sp()))
                    .collect();
                let mut inner: Vec<String> = cubes.clone();
                inner.extend(names.iter().map(|(n, _)| n.clone()));
                let psi = tope(rng, &inner, 2);
                let cod = term(rng, scope, cubes, depth - 1);
                let n_cases = rng.gen_range(0..=2usize);
                let cases = (0..n_cases)
                    .map(|_| {
                        (tope(rng, &inner, 1), {
                            let mut sc = scope.clone();
                            term(rng, &mut sc, &mut inner.clone(), depth - 1)
                        })
                    })
                    .collect();
                t(TermNode::Extension {
                    names,
                    psi,
                    cod: Box::new(cod),
                    cases,
                })
            }
            12 => {
                let dim = rng.gen_range(1..=2usize);
                let names: Vec<(String, Span)> = (0..dim)
                    .map(|i| (CUBES[i].to_string(), sp()))
                    .collect();
                cubes.extend(names.iter().map(|(n, _)| n.clone()));
                let body = term(rng, scope, cubes, depth - 1);
                cubes.truncate(cubes.len() - dim);
                t(TermNode::ExtLambda {
                    names,
                    body: Box::new(body),
                })
            }
            _ => {
                let fun = term(rng, scope, cubes, depth - 1);
                let n_args = rng.gen_range(1..=2usize);
                let args = (0..n_args).map(|_| interval(rng, cubes)).collect();
                t(TermNode::ExtApp {
                    fun: Box::new(fun),
                    args,
                })
            }
        }
    }

    fn leaf(rng: &mut ChaCha8Rng, scope: &[String]) -> Term {
        if !scope.is_empty() && rng.gen_bool(0.5) {
            let i = rng.gen_range(0..scope.len());
            t(TermNode::Var(scope[i].clone()))
        } else if rng.gen_bool(0.5) {
            t(TermNode::Universe)
        } else if rng.gen_bool(0.5) {
            t(TermNode::Refl)
        } else {
            t(TermNode::Hole)
        }
    }
}

/// Criterion 7: every negative-corpus file produces its expected stable
/// error code at the expected span, with byte-identical structured output
/// across two runs.
#[test]
fn criterion_7_negative_corpus() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/negative");
    let expect = std::fs::read_to_string(dir.join("EXPECT")).unwrap();
    let mut n_files = 0usize;
    for line in expect.lines() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [file, code, start, end] = parts[..] else {
            panic!("malformed EXPECT line: {line}")
        };
        let path = dir.join(file);
        let run = || {
            sctt_cmd()
                .arg("--output")
                .arg("structured")
                .arg("check")
                .arg(&path)
                .output()
                .expect("run sctt")
        };
        let out1 = run();
        let out2 = run();
        assert_eq!(
            out1.stdout, out2.stdout,
            "{file}: structured output differs between runs"
        );
        assert_eq!(out1.status.code(), Some(1), "{file}: expected exit 1");
        let text = String::from_utf8(out1.stdout).unwrap();
        let first = text.lines().next().unwrap_or_else(|| panic!("{file}: no output"));
        let rec: serde_json::Value = serde_json::from_str(first)
            .unwrap_or_else(|e| panic!("{file}: invalid structured record: {e}"));
        assert_eq!(rec["code"], *code, "{file}: wrong code: {first}");
        assert_eq!(
            rec["start"].to_string(),
            *start,
            "{file}: wrong start span: {first}"
        );
        assert_eq!(rec["end"].to_string(), *end, "{file}: wrong end span: {first}");
        for key in ["severity", "code", "file", "start", "end", "message"] {
            assert!(
                !rec[key].is_null(),
                "{file}: structured record missing field {key}"
            );
        }
        n_files += 1;
    }
    assert!(n_files >= 25, "negative corpus has only {n_files} files");
    pass("negative-corpus");
}
