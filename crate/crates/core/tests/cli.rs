use std::path::PathBuf;

use tempfile::TempDir;
use zwtick::cli::{run, EXIT_DIFFERENT, EXIT_OK, EXIT_USAGE};

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }
}

fn zwt(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zwt").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eq_tick_involution() {
    let ws = Workspace::new();
    let a = ws.file("a.zw", "(compose tick tick) ; two ticks\n");
    let b = ws.file("b.zw", "(id 1)");
    let (code, out, _) = zwt(&["eq", &a, &b]);
    assert_eq!((code, out.trim()), (EXIT_OK, "equal"));
    let t = ws.file("t.zw", "tick");
    let (code, out, _) = zwt(&["eq", &a, &t]);
    assert_eq!((code, out.trim()), (EXIT_DIFFERENT, "not equal"));
}

#[test]
fn classify_tick_and_ground() {
    let ws = Workspace::new();
    let (_, out, _) = zwt(&["classify", &ws.file("t.zw", "tick")]);
    assert_eq!(out.trim(), "HP: yes, CP: no");
    let (_, out, _) = zwt(&["classify", &ws.file("g.zw", "ground")]);
    assert_eq!(out.trim(), "HP: yes, CP: yes");
}

#[test]
fn interp_and_errors() {
    let ws = Workspace::new();
    let (code, out, _) = zwt(&["interp", &ws.file("n.zw", "not")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "2 2\n0 1\n1 0\n");
    let (code, _, err) = zwt(&["interp", &ws.file("t.zw", "tick")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("tick"));
    let (code, _, err) = zwt(&["interp", &ws.file("bad.zw", "(compose cap")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1"));
    let (code, _, _) = zwt(&["interp", "/nonexistent/file.zw"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = zwt(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, out, _) = zwt(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("check-axioms"));
}

#[test]
fn choi_superop_and_float() {
    let ws = Workspace::new();
    let t = ws.file("t.zw", "tick");
    let (_, out, _) = zwt(&["choi", &t]);
    assert_eq!(out, "4 4\n1 0 0 0\n0 0 1 0\n0 1 0 0\n0 0 0 1\n");
    let (_, proper, _) = zwt(&["choi", "--proper", &t]);
    assert_eq!(proper, "4 4\n1 0 0 1\n0 0 0 0\n0 0 0 0\n1 0 0 1\n");
    let rho = ws.file("rho.txt", "2 2\n1/2 w\n-w^3 1/2\n");
    let (_, out, _) = zwt(&["superop", &t, "--rho", &rho]);
    assert_eq!(out, "2 2\n1/2 -w^3\nw 1/2\n");
    let (_, out, _) = zwt(&["--float", "superop", &t, "--rho", &rho]);
    assert!(out.starts_with("2 2\n0.5+0i 0.707106781187-0.707106781187i"), "{out}");
}

#[test]
fn nf_output() {
    let ws = Workspace::new();
    let (_, out, _) = zwt(&["nf", &ws.file("k.zw", "ket1")]);
    assert_eq!(out, "n 1\n1 1 1\n");
    let (_, out, _) = zwt(&["nf", &ws.file("e.zw", "(id 0)")]);
    assert_eq!(out, "n 0\n- - 1\n");
}

#[test]
fn check_suites_report() {
    let (code, out, _) = zwt(&["check-lemmas"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("/0 failures"));
    let (code, out, _) = zwt(&["check-lemmas", "--json"]);
    assert_eq!(code, EXIT_OK);
    for line in out.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn check_axioms_is_deterministic() {
    let (code, a, _) = zwt(&["check-axioms", "--json", "--seed", "5"]);
    assert_eq!(code, EXIT_OK);
    let (_, b, _) = zwt(&["check-axioms", "--json", "--seed", "5"]);
    assert_eq!(a, b);
    let last: serde_json::Value = serde_json::from_str(a.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["fail"], 0);
}

#[test]
fn applications() {
    let ws = Workspace::new();
    let bell = ws.file("bell.txt", "4 4\n1 0 0 1\n0 0 0 0\n0 0 0 0\n1 0 0 1\n");
    let (code, out, _) = zwt(&["ppt", &bell, "--split", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("PPT: no\nmin eigenvalue of partial transpose: -1"), "{out}");
    let zero = ws.file("z.txt", "2 2\n1 0\n0 0\n");
    let (_, out, _) = zwt(&["spinflip", &zero]);
    assert_eq!(out, "2 2\n0 0\n0 1\n");
    let (code, _, _) = zwt(&["ppt", &ws.file("nh.txt", "2 2\n0 1\n0 0\n"), "--split", "1"]);
    assert_eq!(code, EXIT_USAGE);
    let (_, out, _) = zwt(&["render", &ws.file("w.zw", "(w 1 2)"), "--format", "dot"]);
    assert!(out.starts_with("digraph"));
}
