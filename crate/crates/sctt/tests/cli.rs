//! End-to-end tests of the command-line interface: exit codes, golden
//! outputs, structured mode, and determinism.

mod common;

use common::*;
use std::process::Output;

fn write_tmp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("sctt-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn check_exit_codes() {
    let good = write_tmp("good.stt", "def id (A : U) (a : A) : A := a ;\n");
    let out = sctt_cmd().arg("check").arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("0 errors"));

    let bad = write_tmp("bad.stt", "def x : U := first ;\n");
    let out = sctt_cmd().arg("check").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("error[E004]"), "{}", stdout(&out));

    let out = sctt_cmd()
        .arg("check")
        .arg("/nonexistent/missing.stt")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

#[test]
fn tope_golden_outputs() {
    let run = |sequent: &str| {
        sctt_cmd()
            .arg("tope")
            .arg(sequent)
            .output()
            .unwrap()
    };

    let out = run("s t u |- s <= t /\\ t <= u => s <= u");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid\n");

    let out = run("s t |- s <= t => t <= s");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "invalid: {0,s} < {t,1}\n");

    let out = run("s t |- TOP => s <= t \\/ t <= s");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid\n");

    let out = run("s t |- 0 === 1 => BOT");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid\n");

    // Usage errors exit 2 with nothing on stdout.
    for bad in [
        "s t s <= t => t <= s",          // missing turnstile
        "s t |- s <= t",                 // missing =>
        "0 t |- TOP => TOP",             // endpoint as context variable
        "s |- q <= s => TOP",            // unknown variable
    ] {
        let out = run(bad);
        assert_eq!(out.status.code(), Some(2), "sequent: {bad}");
        assert!(stdout(&out).is_empty());
        assert!(stderr(&out).contains("error"));
    }
}

#[test]
fn tope_respects_cube_cap() {
    let out = sctt_cmd()
        .arg("--cube-cap")
        .arg("2")
        .arg("tope")
        .arg("s t u |- TOP => TOP")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("error"));
}

#[test]
fn normalize_golden_outputs() {
    let file = write_tmp("norm.stt", "postulate X : U ;\npostulate x : X ;\n");
    let out = sctt_cmd()
        .arg("normalize")
        .arg(&file)
        .arg("(\\a -> a) x")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out), "x\n");

    // The definitional right-unit law, through the CLI.
    let file = write_tmp(
        "norm_lib.stt",
        "postulate A : U ;\npostulate x : A ;\npostulate y : A ;\npostulate p : x =_{A} y ;\n",
    );
    let out = sctt_cmd()
        .arg("--lib-path")
        .arg(lib_dir())
        .arg("normalize")
        .arg(&file)
        .arg("concat A x y y p refl")
        .arg("--with-lib")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out), "p\n");

    // An ill-typed term exits 1.
    let out = sctt_cmd()
        .arg("normalize")
        .arg(&file)
        .arg("x y")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn manifest_matches_golden_file() {
    let out = sctt_cmd()
        .arg("--lib-path")
        .arg(lib_dir())
        .arg("manifest")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let golden = std::fs::read_to_string(repo_root().join("lib/MANIFEST")).unwrap();
    assert_eq!(stdout(&out), golden, "manifest drifted from lib/MANIFEST");
    let text = stdout(&out);
    assert!(text.lines().count() >= 30);
    assert!(text.lines().any(|l| l == "yoneda 08_yoneda.stt funext"));
}

#[test]
fn check_is_deterministic() {
    let run = || {
        let mut cmd = sctt_cmd();
        cmd.arg("--lib-path")
            .arg(lib_dir())
            .arg("check")
            .arg("--with-lib");
        for f in lib_files() {
            cmd.arg(f);
        }
        cmd.output().unwrap()
    };
    let a = run();
    let b = run();
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn structured_mode_streams() {
    // Success: records on stdout (none), summary on stderr.
    let good = write_tmp("ok.stt", "def id (A : U) (a : A) : A := a ;\n");
    let out = sctt_cmd()
        .arg("--output")
        .arg("structured")
        .arg("check")
        .arg(&good)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty(), "stdout: {}", stdout(&out));
    assert!(stderr(&out).contains("0 errors"));

    // Failure: one JSON record per diagnostic on stdout.
    let bad = write_tmp("ko.stt", "def x : U := y ;\n");
    let out = sctt_cmd()
        .arg("--output")
        .arg("structured")
        .arg("check")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let rec: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert_eq!(rec["code"], "E003");
    assert_eq!(rec["severity"], "error");
    assert!(rec["message"].as_str().unwrap().contains("y"));
}
