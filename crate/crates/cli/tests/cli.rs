use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use freegraph::{Graph, VertexMap};
use freegraph_cli::{run_command, CommandResult};
use tempfile::TempDir;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Files {
        Files {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn put(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn graph(&self, name: &str, g: &Graph) -> PathBuf {
        self.put(name, &g.to_string())
    }
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> CommandResult {
    let mut argv: Vec<std::ffi::OsString> = vec!["freegraph".into()];
    argv.extend(args.iter().map(|a| a.as_ref().to_os_string()));
    run_command(argv)
}

fn p(path: &Path) -> &std::ffi::OsStr {
    path.as_os_str()
}

fn named(names: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::new(names, edges).unwrap()
}

fn p4() -> Graph {
    named(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")])
}

#[test]
fn recognize_reports_a_p4_witness() {
    let f = Files::new();
    let g = f.graph("p4.graph", &p4());
    let r = run(&[&"recognize", &p(&g)]);
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.stdout, "not a cograph; witness: a b c d\n");
    let c4 = f.graph("c4.graph", &Graph::cycle(4).unwrap());
    assert_eq!(run(&[&"recognize", &p(&c4)]).exit_code, 0);
}

#[test]
fn iso_of_c4_and_its_cotree() {
    let f = Files::new();
    let c4 = f.graph("c4.graph", &Graph::cycle(4).unwrap());
    let tree = f.put("join22.cotree", "(1 (0 x y) (0 z w))\n");
    let realized = run(&[&"realize", &p(&tree)]);
    assert_eq!(realized.exit_code, 0);
    let join22 = f.put("join22.graph", &realized.stdout);
    let r = run(&[&"iso", &p(&c4), &p(&join22)]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.starts_with("isomorphic\n"));
    let k4 = f.graph("k4.graph", &Graph::complete(4));
    assert_eq!(run(&[&"iso", &p(&c4), &p(&k4)]).exit_code, 1);
}

#[test]
fn roundtrip_prints_the_isomorphism_claim() {
    let f = Files::new();
    let c3 = f.graph("c3.graph", &Graph::cycle(3).unwrap());
    let k2 = f.graph("k2.graph", &Graph::complete(2));
    let r = run(&[&"roundtrip", &"--forbidden", &p(&c3), &p(&k2)]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.starts_with("Ψ(Φ(H)) ≅ H\n"));
}

#[test]
fn encode_then_decode_without_the_sidecar() {
    let f = Files::new();
    let p5 = f.graph("p5.graph", &Graph::path(5).unwrap());
    let h = named(&["a", "b", "c"], &[("a", "b")]);
    let input = f.graph("h.graph", &h);
    let side = f.dir.path().join("hubs.txt");
    let enc = run(&[&"encode", &"--forbidden", &p(&p5), &"--input", &p(&input), &"--sidecar", &p(&side)]);
    assert_eq!(enc.exit_code, 0);
    let hubs = fs::read_to_string(&side).unwrap();
    assert_eq!(hubs.lines().count(), 3);
    assert!(hubs.lines().all(|l| l.starts_with("hub ")));
    let encoded = f.put("enc.graph", &enc.stdout);
    let dec = run(&[&"decode", &"--forbidden", &p(&p5), &p(&encoded)]);
    assert_eq!(dec.exit_code, 0);
    let d = Graph::parse(&dec.stdout).unwrap();
    // decoded vertices are named after the hubs in the sidecar
    let m = VertexMap::from_pairs(hubs.lines().map(|l| {
        let parts: Vec<&str> = l.split(' ').collect();
        (parts[1].to_string(), parts[2].to_string())
    }));
    assert!(m.is_isomorphism(&h, &d));
}

#[test]
fn cotree_commands() {
    let f = Files::new();
    let p3 = f.graph("p3.graph", &named(&["a", "b", "c"], &[("a", "b"), ("b", "c")]));
    let r = run(&[&"decompose", &p(&p3)]);
    assert_eq!((r.exit_code, r.stdout.as_str()), (0, "(1 b (0 a c))\n"));
    let r = run(&[&"interpret-tree", &p(&p3)]);
    assert_eq!(r.stdout, "(1 b (0 a c))\n");
    let t = f.put("t.cotree", "(1 (0 a (1 b c)) d)\n");
    let r = run(&[&"delete-leaf", &p(&t), &"a"]);
    assert_eq!(r.stdout, "(1 b c d)\n");
    assert_eq!(run(&[&"delete-leaf", &p(&t), &"z"]).exit_code, 2);
    let bad = f.put("bad.cotree", "(1 a (1 b c))\n");
    let r = run(&[&"validate", &p(&bad)]);
    assert_eq!(r.exit_code, 1);
    assert!(r.stdout.contains("root.1"));
    // the strict parser refuses it outright
    assert_eq!(run(&[&"realize", &p(&bad)]).exit_code, 2);
    let c4 = f.graph("c4.graph", &Graph::cycle(4).unwrap());
    assert_eq!(run(&[&"module", &p(&c4), &"g0", &"g2"]).stdout, "g0 g2\n");
    assert_eq!(run(&[&"strong-module", &p(&c4), &"g0", &"g1"]).stdout, "g0 g1 g2 g3\n");
    let tree = f.put("tree.txt", "(())\n");
    assert_eq!(run(&[&"tree-lift", &p(&tree)]).stdout, "(0 g0 g1 (1 g2 g3))\n");
    assert_eq!(run(&[&"tree-lift", &p(&tree), &"-k", &"1"]).exit_code, 2);
}

#[test]
fn embed_both_ways() {
    let f = Files::new();
    let p3 = f.graph("p3.graph", &Graph::path(3).unwrap());
    let c4 = f.graph("c4.graph", &Graph::cycle(4).unwrap());
    let k3 = f.graph("k3.graph", &Graph::complete(3));
    assert_eq!(run(&[&"embed", &p(&p3), &p(&c4)]).exit_code, 0);
    assert_eq!(run(&[&"embed", &p(&k3), &p(&c4)]).exit_code, 1);
    assert_eq!(run(&[&"embed", &"--via-trees", &p(&p3), &p(&c4)]).exit_code, 0);
    assert_eq!(run(&[&"embed", &"--via-trees", &p(&k3), &p(&c4)]).exit_code, 1);
    let p4 = f.graph("p4.graph", &p4());
    assert_eq!(run(&[&"embed", &"--via-trees", &p(&p3), &p(&p4)]).exit_code, 2);
}

#[test]
fn antichain_types_and_automorphisms() {
    let f = Files::new();
    let c3 = f.graph("c3.graph", &Graph::cycle(3).unwrap());
    let r = run(&[&"antichain", &"--forbidden", &p(&c3), &"--index", &"0,2"]);
    let g = Graph::parse(&r.stdout).unwrap();
    assert_eq!((g.order(), g.size()), (10, 10));
    let p3 = f.graph("p3.graph", &Graph::path(3).unwrap());
    assert_eq!(run(&[&"antichain", &"--forbidden", &p(&p3), &"--index", &"0"]).exit_code, 2);

    let base = f.graph("base.graph", &named(&["a"], &[]));
    let r = run(&[&"types", &"--base", &p(&base), &"--forbidden", &p(&p3), &"-k", &"1"]);
    assert_eq!(r.stdout, "E . true\nE x0 . !(a-x0)\nE x0 . a-x0\n");
    let target = f.graph("t.graph", &named(&["a", "b"], &[]));
    let r = run(&[&"types", &"--base", &p(&base), &"--forbidden", &p(&p3), &"-k", &"1", &"--target", &p(&target)]);
    assert_eq!(r.stdout, "E . true\nE x0 . !(a-x0)\n");

    let r = run(&[&"aut", &p(&p3)]);
    assert_eq!(r.stdout, "2 automorphisms\n()\n(g0 g2)\n");
    let big = f.graph("big.graph", &Graph::empty(11));
    assert_eq!(run(&[&"aut", &p(&big)]).exit_code, 2);
}

#[test]
fn no_z3_text_and_json() {
    let r = run(&[&"no-z3", &"--max-n", &"4"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.contains("n=4 cographs=10 "));
    let r = run(&[&"--json", &"no-z3", &"--max-n", &"4"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["command"], "no-z3");
    assert_eq!(v["verdict"], "no-z3");
    assert_eq!(v["stats"]["sizes"][3]["cographs"], 10);
    assert!(v.get("witness").is_none());
    assert_eq!(run(&[&"no-z3", &"--max-n", &"10"]).exit_code, 2);
}

#[test]
fn json_reports_have_the_common_fields() {
    let f = Files::new();
    let g = f.graph("p4.graph", &p4());
    let r = run(&[&"recognize", &p(&g), &"--json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    for key in ["command", "inputs", "verdict", "stats", "witness"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["witness"], serde_json::json!(["a", "b", "c", "d"]));
}

#[test]
fn input_errors_exit_with_two() {
    let f = Files::new();
    assert_eq!(run(&[&"frobnicate"]).exit_code, 2);
    assert_eq!(run(&[&"recognize", &"--nope", &"x"]).exit_code, 2);
    assert_eq!(run(&[&"recognize", &"/definitely/missing.graph"]).exit_code, 2);
    let bad = f.put("bad.graph", "2 1\na\nb\na z\n");
    let r = run(&[&"recognize", &p(&bad)]);
    assert_eq!(r.exit_code, 2);
    assert!(r.stderr.starts_with("error: "));
    let help = run(&[&"--help"]);
    assert_eq!(help.exit_code, 0);
    assert!(help.stdout.contains("no-z3"));
}

#[test]
fn output_is_deterministic() {
    let f = Files::new();
    let c3 = f.graph("c3.graph", &Graph::cycle(3).unwrap());
    let h = f.graph("h.graph", &Graph::path(3).unwrap());
    let a = run(&[&"encode", &"--forbidden", &p(&c3), &"--input", &p(&h), &"--json"]);
    let b = run(&[&"encode", &"--forbidden", &p(&c3), &"--input", &p(&h), &"--json"]);
    assert_eq!(a, b);
}

#[test]
fn binary_exit_codes() {
    let f = Files::new();
    let g = f.graph("p4.graph", &p4());
    let bin = env!("CARGO_BIN_EXE_freegraph");
    let out = Command::new(bin).arg("recognize").arg(&g).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "not a cograph; witness: a b c d\n");
    let out = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
