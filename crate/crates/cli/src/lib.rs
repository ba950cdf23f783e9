//! Command dispatch for the `freegraph` binary, kept in a library so the
//! commands can be driven from tests without spawning processes.
//!
//! Exit codes: 0 for success or a positive answer, 1 for a well-formed
//! negative answer, 2 for bad input (unknown command, bad flag, unreadable
//! or malformed file).

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use freegraph::automorphism::{automorphisms, check_no_z3};
use freegraph::cotree::{
    interpret_tree_from_graph, least_module, least_strong_module, tree_lift, Cotree, CotreeError, RootedTree,
};
use freegraph::embedding::{antichain_graph, cograph_induced_via_trees, delete_vertex_cotree, OrderError};
use freegraph::gadget::{decode_deliverable, encode_phi, gadget_params};
use freegraph::types::{enumerate_extensions, phi_formula, type_fragment, ConstantedGraph};
use freegraph::{decompose, find_induced_embedding, is_isomorphic, Graph, VertexMap};

#[derive(Debug, Parser)]
#[command(name = "freegraph", version, about = "Cographs, cotrees and graph classes with a forbidden induced subgraph")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a graph is a cograph; otherwise name an induced P4.
    Recognize { graph: PathBuf },
    /// Print the cotree of a cograph.
    Decompose { graph: PathBuf },
    /// Print the graph of a cotree.
    Realize { cotree: PathBuf },
    /// Check a cotree and list every violation.
    Validate { cotree: PathBuf },
    /// Decide whether two graphs are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Decide whether the pattern is an induced subgraph of the target.
    Embed {
        pattern: PathBuf,
        target: PathBuf,
        /// Decide on the cotrees (both graphs must be cographs).
        #[arg(long)]
        via_trees: bool,
    },
    /// Delete a leaf from a cotree, contracting as needed.
    DeleteLeaf { cotree: PathBuf, leaf: String },
    /// Least module of a cograph containing two vertices.
    Module { graph: PathBuf, u: String, v: String },
    /// Least strong module of a cograph containing two vertices.
    StrongModule { graph: PathBuf, u: String, v: String },
    /// Rebuild the cotree from the least strong modules of vertex pairs.
    InterpretTree { graph: PathBuf },
    /// Lift a rooted tree, given in parenthesis form, to a cotree.
    TreeLift {
        tree: PathBuf,
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
    },
    /// Build a member of the cycle antichain for an index set.
    Antichain {
        #[arg(long)]
        forbidden: PathBuf,
        /// Comma-separated indices, e.g. `0,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        index: Vec<usize>,
    },
    /// Print the existential formulas of the extensions of a base graph.
    Types {
        /// Base graph; all its vertices are constants.
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        forbidden: PathBuf,
        #[arg(short = 'k', default_value_t = 4)]
        k: usize,
        /// Keep only the formulas this graph satisfies, with the base
        /// vertices as its constants.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Encode a graph as a graph avoiding the forbidden one.
    Encode {
        #[arg(long)]
        forbidden: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Also write `hub <orig> <encoded>` lines to this file.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Recover a graph from its encoding.
    Decode {
        #[arg(long)]
        forbidden: PathBuf,
        encoded: PathBuf,
    },
    /// Encode, decode and compare with the input.
    Roundtrip {
        #[arg(long)]
        forbidden: PathBuf,
        input: PathBuf,
    },
    /// List the automorphisms of a graph.
    Aut { graph: PathBuf },
    /// Check that no cograph up to the given size has automorphism group Z3.
    NoZ3 {
        #[arg(long)]
        max_n: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Recognize { .. } => "recognize",
            Command::Decompose { .. } => "decompose",
            Command::Realize { .. } => "realize",
            Command::Validate { .. } => "validate",
            Command::Iso { .. } => "iso",
            Command::Embed { .. } => "embed",
            Command::DeleteLeaf { .. } => "delete-leaf",
            Command::Module { .. } => "module",
            Command::StrongModule { .. } => "strong-module",
            Command::InterpretTree { .. } => "interpret-tree",
            Command::TreeLift { .. } => "tree-lift",
            Command::Antichain { .. } => "antichain",
            Command::Types { .. } => "types",
            Command::Encode { .. } => "encode",
            Command::Decode { .. } => "decode",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Aut { .. } => "aut",
            Command::NoZ3 { .. } => "no-z3",
        }
    }
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A successful run: exit code, text output and the JSON fields.
struct Report {
    exit: i32,
    text: String,
    inputs: Value,
    verdict: String,
    witness: Option<Value>,
    stats: Value,
}

impl Report {
    fn new(exit: i32, verdict: impl Into<String>, text: impl Into<String>) -> Report {
        Report {
            exit,
            text: text.into(),
            inputs: json!({}),
            verdict: verdict.into(),
            witness: None,
            stats: json!({}),
        }
    }

    fn inputs(mut self, inputs: Value) -> Report {
        self.inputs = inputs;
        self
    }

    fn witness(mut self, witness: Value) -> Report {
        self.witness = Some(witness);
        self
    }

    fn stats(mut self, stats: Value) -> Report {
        self.stats = stats;
        self
    }
}

type Outcome = Result<Report, String>;

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandResult {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandResult {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let name = cli.command.name();
    match dispatch(&cli.command) {
        Ok(report) => {
            let stdout = if cli.json {
                let mut obj = json!({
                    "command": name,
                    "inputs": report.inputs,
                    "verdict": report.verdict,
                    "stats": report.stats,
                });
                if let Some(w) = report.witness {
                    obj["witness"] = w;
                }
                format!("{}\n", serde_json::to_string_pretty(&obj).expect("JSON values serialize"))
            } else {
                report.text
            };
            CommandResult {
                exit_code: report.exit,
                stdout,
                stderr: String::new(),
            }
        }
        Err(msg) => CommandResult {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    Graph::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_cotree(path: &Path) -> Result<Cotree, String> {
    Cotree::parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn graph_stats(g: &Graph) -> Value {
    json!({ "vertices": g.order(), "edges": g.size() })
}

fn map_json(m: &VertexMap) -> Value {
    Value::Object(m.iter().map(|(a, b)| (a.to_string(), Value::String(b.to_string()))).collect())
}

/// `not a cograph` as a negative answer, anything else as an input error.
fn cotree_of(g: &Graph) -> Result<Result<Cotree, Vec<String>>, String> {
    match decompose(g) {
        Ok(t) => Ok(Ok(t)),
        Err(CotreeError::NotCograph { witness }) => Ok(Err(witness)),
        Err(e) => Err(e.to_string()),
    }
}

fn not_cograph(witness: Vec<String>) -> Report {
    let text = format!("not a cograph; witness: {}\n", witness.join(" "));
    Report::new(1, "not-cograph", text).witness(json!(witness))
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Recognize { graph } => {
            let g = read_graph(graph)?;
            let report = match cotree_of(&g)? {
                Ok(t) => Report::new(0, "cograph", "cograph\n").witness(json!(t.to_string())),
                Err(w) => not_cograph(w),
            };
            Ok(report.inputs(json!({ "graph": path_str(graph) })).stats(graph_stats(&g)))
        }
        Command::Decompose { graph } => {
            let g = read_graph(graph)?;
            let report = match cotree_of(&g)? {
                Ok(t) => Report::new(0, "cograph", format!("{t}\n"))
                    .witness(json!(t.to_string()))
                    .stats(json!({ "vertices": g.order(), "nodes": t.node_count() })),
                Err(w) => not_cograph(w).stats(graph_stats(&g)),
            };
            Ok(report.inputs(json!({ "graph": path_str(graph) })))
        }
        Command::Realize { cotree } => {
            let t = read_cotree(cotree)?;
            let g = t.realize().map_err(|e| e.to_string())?;
            Ok(Report::new(0, "realized", g.to_string())
                .inputs(json!({ "cotree": path_str(cotree) }))
                .witness(json!(g.to_string()))
                .stats(graph_stats(&g)))
        }
        Command::Validate { cotree } => {
            let text = read(cotree)?;
            let t = Cotree::parse_unchecked(&text).map_err(|e| format!("{}: {e}", cotree.display()))?;
            let report = t.validate();
            let lines: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
            let out = if lines.is_empty() {
                Report::new(0, "valid", "valid\n")
            } else {
                Report::new(1, "invalid", format!("invalid\n{}\n", lines.join("\n"))).witness(json!(lines))
            };
            Ok(out
                .inputs(json!({ "cotree": path_str(cotree) }))
                .stats(json!({ "leaves": t.leaf_count(), "violations": lines.len() })))
        }
        Command::Iso { first, second } => {
            let (g, h) = (read_graph(first)?, read_graph(second)?);
            let report = match is_isomorphic(&g, &h) {
                Some(m) => Report::new(0, "isomorphic", format!("isomorphic\nwitness: {m}\n")).witness(map_json(&m)),
                None => Report::new(1, "not-isomorphic", "not isomorphic\n"),
            };
            Ok(report
                .inputs(json!({ "first": path_str(first), "second": path_str(second) }))
                .stats(json!({ "first": graph_stats(&g), "second": graph_stats(&h) })))
        }
        Command::Embed {
            pattern,
            target,
            via_trees,
        } => {
            let (p, t) = (read_graph(pattern)?, read_graph(target)?);
            let inputs = json!({ "pattern": path_str(pattern), "target": path_str(target) });
            let stats = json!({ "pattern": graph_stats(&p), "target": graph_stats(&t) });
            let report = if *via_trees {
                match cograph_induced_via_trees(&p, &t) {
                    Ok(true) => Report::new(0, "embeds", "embeds\n"),
                    Ok(false) => Report::new(1, "does-not-embed", "does not embed\n"),
                    Err(OrderError::NotCographInput { witness }) => {
                        return Err(format!("not a cograph; witness: {}", witness.join(" ")))
                    }
                    Err(e) => return Err(e.to_string()),
                }
            } else {
                match find_induced_embedding(&p, &t, &VertexMap::new()).map_err(|e| e.to_string())? {
                    Some(m) => Report::new(0, "embeds", format!("embeds\nwitness: {m}\n")).witness(map_json(&m)),
                    None => Report::new(1, "does-not-embed", "does not embed\n"),
                }
            };
            Ok(report.inputs(inputs).stats(stats))
        }
        Command::DeleteLeaf { cotree, leaf } => {
            let t = read_cotree(cotree)?;
            let out = delete_vertex_cotree(&t, leaf).map_err(|e| e.to_string())?;
            Ok(Report::new(0, "deleted", format!("{out}\n"))
                .inputs(json!({ "cotree": path_str(cotree), "leaf": leaf }))
                .witness(json!(out.to_string()))
                .stats(json!({ "leaves": out.leaf_count() })))
        }
        Command::Module { graph, u, v } | Command::StrongModule { graph, u, v } => {
            let g = read_graph(graph)?;
            let m = if matches!(cmd, Command::Module { .. }) {
                least_module(&g, u, v)
            } else {
                least_strong_module(&g, u, v)
            }
            .map_err(|e| e.to_string())?;
            Ok(Report::new(0, "module", format!("{}\n", m.members.join(" ")))
                .inputs(json!({ "graph": path_str(graph), "u": u, "v": v }))
                .witness(json!(m.members))
                .stats(json!({ "size": m.len(), "vertices": g.order() })))
        }
        Command::InterpretTree { graph } => {
            let g = read_graph(graph)?;
            let t = interpret_tree_from_graph(&g).map_err(|e| e.to_string())?;
            Ok(Report::new(0, "interpreted", format!("{t}\n"))
                .inputs(json!({ "graph": path_str(graph) }))
                .witness(json!(t.to_string()))
                .stats(json!({ "nodes": t.node_count() })))
        }
        Command::TreeLift { tree, k } => {
            let rt = RootedTree::parse(&read(tree)?).map_err(|e| format!("{}: {e}", tree.display()))?;
            let t = tree_lift(&rt, *k).map_err(|e| e.to_string())?;
            Ok(Report::new(0, "lifted", format!("{t}\n"))
                .inputs(json!({ "tree": path_str(tree), "k": k }))
                .witness(json!(t.to_string()))
                .stats(json!({ "tree_nodes": rt.node_count(), "leaves": t.leaf_count() })))
        }
        Command::Antichain { forbidden, index } => {
            let f = read_graph(forbidden)?;
            let set: BTreeSet<usize> = index.iter().copied().collect();
            let g = antichain_graph(&f, &set).map_err(|e| e.to_string())?;
            Ok(Report::new(0, "built", g.to_string())
                .inputs(json!({ "forbidden": path_str(forbidden), "index": set }))
                .witness(json!(g.to_string()))
                .stats(graph_stats(&g)))
        }
        Command::Types {
            base,
            forbidden,
            k,
            target,
        } => {
            let b = ConstantedGraph::all_constant(read_graph(base)?);
            let f = read_graph(forbidden)?;
            let formulas = match target {
                None => {
                    let exts = enumerate_extensions(&b, &f, *k).map_err(|e| e.to_string())?;
                    exts.iter()
                        .map(|e| phi_formula(e, &b).map_err(|e| e.to_string()))
                        .collect::<Result<Vec<_>, _>>()?
                }
                Some(t) => {
                    let tg = ConstantedGraph::new(read_graph(t)?, b.constants.clone()).map_err(|e| e.to_string())?;
                    type_fragment(&tg, &f, *k).map_err(|e| e.to_string())?
                }
            };
            let lines: Vec<String> = formulas.iter().map(ToString::to_string).collect();
            let mut text = String::new();
            for l in &lines {
                let _ = writeln!(text, "{l}");
            }
            Ok(Report::new(0, "formulas", text)
                .inputs(json!({
                    "base": path_str(base),
                    "forbidden": path_str(forbidden),
                    "k": k,
                    "target": target.as_deref().map(path_str),
                }))
                .witness(json!(lines))
                .stats(json!({ "formulas": lines.len() })))
        }
        Command::Encode {
            forbidden,
            input,
            sidecar,
        } => {
            let (f, h) = (read_graph(forbidden)?, read_graph(input)?);
            let params = gadget_params(&f).map_err(|e| e.to_string())?;
            let enc = encode_phi(&h, &params);
            let out = enc.deliverable();
            if let Some(path) = sidecar {
                let mut lines = String::new();
                for (orig, hub) in enc.hub_of.iter() {
                    let _ = writeln!(lines, "hub {orig} {hub}");
                }
                fs::write(path, lines).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            Ok(Report::new(0, "encoded", out.to_string())
                .inputs(json!({ "forbidden": path_str(forbidden), "input": path_str(input) }))
                .witness(map_json(&enc.hub_of))
                .stats(json!({
                    "vertices": out.order(),
                    "edges": out.size(),
                    "complemented": params.complemented,
                    "n": params.n,
                    "path_len": params.path_len,
                })))
        }
        Command::Decode { forbidden, encoded } => {
            let (f, e) = (read_graph(forbidden)?, read_graph(encoded)?);
            let params = gadget_params(&f).map_err(|e| e.to_string())?;
            let d = decode_deliverable(&e, &params).map_err(|e| e.to_string())?;
            Ok(Report::new(0, "decoded", d.to_string())
                .inputs(json!({ "forbidden": path_str(forbidden), "encoded": path_str(encoded) }))
                .witness(json!(d.to_string()))
                .stats(graph_stats(&d)))
        }
        Command::Roundtrip { forbidden, input } => {
            let (f, h) = (read_graph(forbidden)?, read_graph(input)?);
            let params = gadget_params(&f).map_err(|e| e.to_string())?;
            let out = encode_phi(&h, &params).deliverable();
            let d = decode_deliverable(&out, &params).map_err(|e| e.to_string())?;
            let report = match is_isomorphic(&h, &d) {
                Some(m) => Report::new(0, "round-trip", format!("Ψ(Φ(H)) ≅ H\nwitness: {m}\n")).witness(map_json(&m)),
                None => Report::new(1, "mismatch", "Ψ(Φ(H)) is not isomorphic to H\n"),
            };
            Ok(report
                .inputs(json!({ "forbidden": path_str(forbidden), "input": path_str(input) }))
                .stats(json!({ "input": graph_stats(&h), "encoded": graph_stats(&out) })))
        }
        Command::Aut { graph } => {
            let g = read_graph(graph)?;
            let auts = automorphisms(&g).map_err(|e| e.to_string())?;
            let cycles: Vec<String> = auts.iter().map(|p| p.cycle_notation(&g)).collect();
            let mut text = format!("{} automorphisms\n", auts.len());
            for c in &cycles {
                let _ = writeln!(text, "{c}");
            }
            Ok(Report::new(0, "listed", text)
                .inputs(json!({ "graph": path_str(graph) }))
                .witness(json!(cycles))
                .stats(json!({ "order": auts.len(), "vertices": g.order() })))
        }
        Command::NoZ3 { max_n } => {
            let r = check_no_z3(*max_n).map_err(|e| e.to_string())?;
            let mut text = String::new();
            for s in &r.sizes {
                let _ = writeln!(
                    text,
                    "n={} cographs={} trivial={} z3={} max_order={}",
                    s.n, s.cographs, s.trivial, s.z3, s.max_group_order
                );
            }
            let total = r.z3_total();
            let (exit, verdict) = if total == 0 { (0, "no-z3") } else { (1, "z3-found") };
            let _ = writeln!(text, "{}", if total == 0 { "no cograph has automorphism group Z3" } else { "found cographs with automorphism group Z3" });
            let sizes: Vec<Value> = r
                .sizes
                .iter()
                .map(|s| {
                    json!({
                        "n": s.n,
                        "cographs": s.cographs,
                        "trivial": s.trivial,
                        "z3": s.z3,
                        "max_group_order": s.max_group_order.to_string(),
                    })
                })
                .collect();
            let mut report = Report::new(exit, verdict, text)
                .inputs(json!({ "max_n": max_n }))
                .stats(json!({ "sizes": sizes }));
            if total > 0 {
                report = report.witness(json!(r.z3_witnesses.iter().map(ToString::to_string).collect::<Vec<_>>()));
            }
            Ok(report)
        }
    }
}
