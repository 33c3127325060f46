use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fogm_core::graph::{parse_gadget, read_graph};
use fogm_core::{parse, RunReport};
use tempfile::TempDir;

const VC: &str = "A u. A v. !(u ~ v)\n";
const DIAM2: &str = "A u. A v. E w. (u = v) | (u ~ v) | ((u ~ w) & (v ~ w))\n";
const PI3: &str = "A x. E y. A z. (x ~ y) & ((y ~ z) -> (z = x))\n";
const NO_ISOLATED: &str = "A u. E v. u ~ v\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture {
            dir: tempfile::tempdir().unwrap(),
        };
        f.write("K3.el", "0 1\n1 2\n0 2\n");
        f.write("P3.el", "0 1\n1 2\n");
        f.write("P4.el", "0 1\n1 2\n2 3\n");
        f.write("vc.fol", VC);
        f.write("diam2.fol", DIAM2);
        f.write("pi3.fol", PI3);
        f.write("f.fol", NO_ISOLATED);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_fogm"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn classify_prints_class_and_variables() {
    let fx = Fixture::new();
    assert_eq!(stdout(&fx.run(&["classify", "vc.fol"])), "Pi 1, 2 variables\n");
    assert_eq!(
        stdout(&fx.run(&["classify", "corpus:clique-neighborhood"])),
        "Sigma 2, 3 variables\n"
    );
    fx.write("qf.fol", "true\n");
    assert!(stdout(&fx.run(&["classify", "qf.fol"])).starts_with("Sigma 0 (= Pi 0)"));
}

#[test]
fn classify_reports_parse_errors() {
    let fx = Fixture::new();
    fx.write("bad.fol", "A u. u ~\n");
    let out = fx.run(&["classify", "bad.fol"]);
    assert!(code(&out) > 2);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn check_diameter_of_path() {
    let fx = Fixture::new();
    let out = fx.run(&["check", "P4.el", "diam2.fol"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "false\n");
    assert_eq!(stdout(&fx.run(&["check", "P3.el", "diam2.fol"])), "true\n");
}

#[test]
fn check_with_free_variables() {
    let fx = Fixture::new();
    fx.write("adj.fol", "free x, y; x ~ y\n");
    assert_eq!(stdout(&fx.run(&["check", "P4.el", "adj.fol", "--assign", "1,2"])), "true\n");
    assert_eq!(stdout(&fx.run(&["check", "P4.el", "adj.fol", "--assign", "0,3"])), "false\n");
    assert!(code(&fx.run(&["check", "P4.el", "adj.fol"])) > 2);
}

#[test]
fn solve_yes_and_no() {
    let fx = Fixture::new();
    let out = fx.run(&["solve", "vertex", "K3.el", "vc.fol", "2"]);
    assert_eq!(code(&out), 0);
    let r = RunReport::parse(&stdout(&out));
    assert_eq!(r["outcome"], "YES");
    assert_eq!(r["certificate_size"], "2");
    assert_eq!(r["verified"], "true");
    assert_eq!(r["class"], "Pi 1");
    assert_eq!(r["n"], "3");
    assert_eq!(r["m"], "3");

    let out = fx.run(&["solve", "vertex", "K3.el", "vc.fol", "1"]);
    assert_eq!(code(&out), 1);
    let r = RunReport::parse(&stdout(&out));
    assert_eq!(r["outcome"], "NO");
    assert!(!r.contains_key("certificate"));
}

#[test]
fn solve_unsupported_prefix() {
    let fx = Fixture::new();
    let out = fx.run(&["solve", "vertex", "K3.el", "pi3.fol", "1"]);
    assert_eq!(code(&out), 2);
    let r = RunReport::parse(&stdout(&out));
    assert_eq!(r["outcome"], "UNSUPPORTED");
    assert!(r["reason"].contains("W[2]-hard"));

    let out = fx.run(&["solve", "vertex", "K3.el", "pi3.fol", "1", "--brute-force"]);
    let r = RunReport::parse(&stdout(&out));
    assert_eq!(r["method"], "brute-force");
    assert!(code(&out) <= 1);
}

#[test]
fn solve_edge_variants() {
    let fx = Fixture::new();
    fx.write("cluster.fol", "A x. A y. A z. ((x ~ y) & (y ~ z)) -> ((x = z) | (x ~ z))\n");
    for (variant, expected) in [("removal", 0), ("completion", 0), ("editing", 0)] {
        let out = fx.run(&["solve", variant, "P3.el", "cluster.fol", "1"]);
        assert_eq!(code(&out), expected, "{variant}");
    }
    let out = fx.run(&["solve", "completion", "P4.el", "cluster.fol", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn solve_threads_do_not_change_the_answer() {
    let fx = Fixture::new();
    let one = fx.run(&["solve", "vertex", "P4.el", "corpus:clique-neighborhood", "1"]);
    let four = fx.run(&["solve", "vertex", "P4.el", "corpus:clique-neighborhood", "1", "--threads", "4"]);
    let (a, b) = (RunReport::parse(&stdout(&one)), RunReport::parse(&stdout(&four)));
    assert_eq!(a["outcome"], b["outcome"]);
    assert_eq!(a["certificate"], b["certificate"]);
}

#[test]
fn usage_errors_exit_above_two() {
    let fx = Fixture::new();
    assert!(code(&fx.run(&["solve", "bogus", "K3.el", "vc.fol", "1"])) > 2);
    assert!(code(&fx.run(&["solve", "vertex", "missing.el", "vc.fol", "1"])) > 2);
    assert!(code(&fx.run(&["frobnicate"])) > 2);
    assert_eq!(code(&fx.run(&["--help"])), 0);
}

#[test]
fn reduce_edge_to_vertex_emits_gadget() {
    let fx = Fixture::new();
    let out = fx.run(&["reduce", "edge-to-vertex", "K3.el", "f.fol", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let g = parse_gadget(&text).unwrap();
    assert_eq!(g.graph.vertex_count(), 18);
    assert_eq!(g.budget, 1);

    let out = fx.run(&["reduce", "edge-to-vertex", "K3.el", "f.fol", "1", "--out", "gadget"]);
    let r = RunReport::parse(&stdout(&out));
    assert_eq!(r["n"], "18");
    assert_eq!(r["k"], "1");
    assert_eq!(read_graph(fx.path("gadget.el")).unwrap().vertex_count(), 18);
    let psi = parse(&fs::read_to_string(fx.path("gadget.fol")).unwrap()).unwrap();
    assert!(psi.is_sentence());

    // The emitted instance agrees with the original one.
    let a = fx.run(&["solve", "removal", "K3.el", "f.fol", "1", "--brute-force"]);
    let b = fx.run(&["solve", "vertex", "gadget.el", "gadget.fol", "1"]);
    assert_eq!(code(&a), code(&b));
}

#[test]
fn reduce_removal_to_completion() {
    let fx = Fixture::new();
    let out = fx.run(&["reduce", "removal-to-completion", "K3.el", "vc.fol", "3", "--out", "dual"]);
    assert_eq!(code(&out), 0);
    let g = read_graph(fx.path("dual.el")).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (3, 0));
    let yes = fx.run(&["solve", "completion", "dual.el", "dual.fol", "3"]);
    assert_eq!(code(&yes), 0);
    let no = fx.run(&["solve", "completion", "dual.el", "dual.fol", "2"]);
    assert_eq!(code(&no), 1);
}

#[test]
fn kernelize_triangle() {
    let fx = Fixture::new();
    let out = fx.run(&["kernelize", "K3.el", "vc.fol", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let r = RunReport::parse(&text);
    assert_eq!(r["outcome"], "KERNEL");
    assert_eq!(r["kernel_sets"], "3");
    assert_eq!(text.lines().filter(|l| l.starts_with("set=")).count(), 3);

    // four disjoint edges form a sunflower with empty core
    fx.write("M4.el", "0 1\n2 3\n4 5\n6 7\n");
    let out = fx.run(&["kernelize", "M4.el", "vc.fol", "0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(RunReport::parse(&stdout(&out))["outcome"], "NO");
    assert!(code(&fx.run(&["kernelize", "K3.el", "f.fol", "1"])) > 2);
}

#[test]
fn gen_cross_clique() {
    let fx = Fixture::new();
    let out = fx.run(&["gen", "cross-clique", "--k", "3", "K3.el", "P3.el", "--out", "composed"]);
    assert_eq!(code(&out), 0);
    let r = RunReport::parse(&stdout(&out));
    assert_eq!(r["k"], "0");
    assert_eq!(r["n"], "10");
    assert_eq!(r["class"], "Sigma 2");
    let solved = fx.run(&["solve", "vertex", "composed.el", "composed.fol", "0"]);
    assert_eq!(code(&solved), 0);

    let out = fx.run(&["gen", "cross-clique", "--k", "3", "P3.el", "P3.el"]);
    let text = stdout(&out);
    assert!(text.contains("# k 0"));
    fs::write(fx.path("no.el"), &text).unwrap();
    fx.write("cn.fol", "E x. A y. A z. ((x ~ y) & (x ~ z)) -> ((y = z) | (y ~ z))\n");
    assert_eq!(code(&fx.run(&["solve", "vertex", "no.el", "cn.fol", "0"])), 1);
    assert!(code(&fx.run(&["gen", "cross-clique", "--k", "3", "K3.el", "P4.el"])) > 2);
}

#[test]
fn gen_random_is_seeded() {
    let fx = Fixture::new();
    let a = stdout(&fx.run(&["gen", "random", "8", "--p", "0.4", "--seed", "11"]));
    let b = stdout(&fx.run(&["gen", "random", "8", "--p", "0.4", "--seed", "11"]));
    assert_eq!(a, b);
    let p = fx.write("r.el", &a);
    assert_eq!(read_graph(Path::new(&p)).unwrap().vertex_count(), 8);
    assert!(code(&fx.run(&["gen", "random", "3", "--p", "1.5"])) > 2);
}
