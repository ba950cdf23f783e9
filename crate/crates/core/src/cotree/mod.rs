//! Decomposition trees of finite cographs.
//!
//! A cotree has leaves labelled by vertex names (label 2) and internal nodes
//! labelled 0 (disjoint union of the children) or 1 (join of the children).
//! Two vertices are adjacent in the realized graph iff the meet of their
//! leaves is labelled 1. A valid cotree has internal nodes with at least two
//! children, alternating labels along every parent/child edge between
//! internal nodes, and distinct leaf names; under these conditions every
//! cograph has exactly one cotree up to reordering children.

mod index;
mod lift;
mod modules;
mod parse;

pub use index::{IndexedTree, NodeKind};
pub use lift::{tree_lift, RootedTree};
pub use modules::{
    interpret_tree_from_graph, least_module, least_strong_module, module_closure_oracle,
    module_from_meets, ModuleKind, ModuleSet,
};

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexMap};
use crate::search::find_induced_embedding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CotreeError {
    #[error("graph is empty")]
    EmptyGraph,
    #[error("not a cograph; witness: {}", .witness.join(" "))]
    NotCograph { witness: Vec<String> },
    #[error("input is not a cograph; witness: {}", .witness.join(" "))]
    NotCographInput { witness: Vec<String> },
    #[error("invalid cotree: {0}")]
    InvalidCotree(ValidationReport),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("the two vertices must be distinct (got `{0}` twice)")]
    SameVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph has {0} vertices; the strong-module oracle is limited to 12")]
    TooLarge(usize),
    #[error("lift width must be at least 2, got {0}")]
    BadK(usize),
}

/// Label of an internal cotree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// 0: disjoint union of the children.
    Union,
    /// 1: join of the children.
    Join,
}

impl Label {
    pub fn digit(self) -> char {
        match self {
            Label::Union => '0',
            Label::Join => '1',
        }
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Union => Label::Join,
            Label::Join => Label::Union,
        }
    }

    pub fn from_adjacent(adjacent: bool) -> Label {
        if adjacent {
            Label::Join
        } else {
            Label::Union
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digit())
    }
}

/// A rooted tree with `{0,1}`-labelled internal nodes and named leaves.
///
/// The type admits invalid trees (one child, repeated labels, duplicate
/// names) so that they can be parsed leniently and reported on; see
/// [`Cotree::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cotree {
    Leaf(String),
    Node(Label, Vec<Cotree>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// Internal node with fewer than two children.
    TooFewChildren(usize),
    /// Internal child carries the same label as its parent.
    RepeatedLabel(Label),
    DuplicateLeaf(String),
}

/// An invariant violation at the node reached by following child indices
/// `path` from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: Vec<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: ", format_path(&self.path))?;
        match &self.kind {
            ViolationKind::TooFewChildren(n) => write!(f, "internal node with {n} child(ren)"),
            ViolationKind::RepeatedLabel(l) => write!(f, "child label {l} equals parent label"),
            ViolationKind::DuplicateLeaf(name) => write!(f, "duplicate leaf `{name}`"),
        }
    }
}

pub(crate) fn format_path(path: &[usize]) -> String {
    let mut s = String::from("root");
    for i in path {
        s.push('.');
        s.push_str(&i.to_string());
    }
    s
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl Cotree {
    pub fn leaf(name: impl Into<String>) -> Cotree {
        Cotree::Leaf(name.into())
    }

    pub fn node(label: Label, children: Vec<Cotree>) -> Cotree {
        Cotree::Node(label, children)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Cotree::Leaf(_))
    }

    pub fn label(&self) -> Option<Label> {
        match self {
            Cotree::Leaf(_) => None,
            Cotree::Node(l, _) => Some(*l),
        }
    }

    pub fn children(&self) -> &[Cotree] {
        match self {
            Cotree::Leaf(_) => &[],
            Cotree::Node(_, cs) => cs,
        }
    }

    /// Leaf names in left-to-right order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Cotree::Leaf(name) => out.push(name),
            Cotree::Node(_, cs) => cs.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Cotree::Leaf(_) => 1,
            Cotree::Node(_, cs) => cs.iter().map(Cotree::leaf_count).sum(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(Cotree::node_count).sum::<usize>()
    }

    fn min_leaf(&self) -> &str {
        match self {
            Cotree::Leaf(name) => name,
            Cotree::Node(_, cs) => cs.iter().map(Cotree::min_leaf).min().unwrap_or(""),
        }
    }

    /// Checks every structural invariant and reports each violation.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut seen = std::collections::HashSet::new();
        self.validate_at(&mut Vec::new(), None, &mut seen, &mut report);
        report
    }

    fn validate_at<'a>(
        &'a self,
        path: &mut Vec<usize>,
        parent: Option<Label>,
        seen: &mut std::collections::HashSet<&'a str>,
        report: &mut ValidationReport,
    ) {
        match self {
            Cotree::Leaf(name) => {
                if !seen.insert(name) {
                    report.violations.push(Violation {
                        path: path.clone(),
                        kind: ViolationKind::DuplicateLeaf(name.clone()),
                    });
                }
            }
            Cotree::Node(label, cs) => {
                if parent == Some(*label) {
                    report.violations.push(Violation {
                        path: path.clone(),
                        kind: ViolationKind::RepeatedLabel(*label),
                    });
                }
                if cs.len() < 2 {
                    report.violations.push(Violation {
                        path: path.clone(),
                        kind: ViolationKind::TooFewChildren(cs.len()),
                    });
                }
                for (i, c) in cs.iter().enumerate() {
                    path.push(i);
                    c.validate_at(path, Some(*label), seen, report);
                    path.pop();
                }
            }
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    fn require_valid(&self) -> Result<(), CotreeError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(CotreeError::InvalidCotree(report))
        }
    }

    /// AHU-style code: a leaf is `2`; an internal node is its label followed
    /// by the sorted codes of its children in parentheses. Children are
    /// sorted by code length, then bytewise. Leaf names are ignored.
    pub fn code(&self) -> String {
        match self {
            Cotree::Leaf(_) => "2".to_string(),
            Cotree::Node(label, cs) => {
                let mut codes: Vec<String> = cs.iter().map(Cotree::code).collect();
                codes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                let mut out = String::with_capacity(codes.iter().map(String::len).sum::<usize>() + 3);
                out.push(label.digit());
                out.push('(');
                codes.iter().for_each(|c| out.push_str(c));
                out.push(')');
                out
            }
        }
    }

    /// The canonical code of a valid cotree. Equal codes iff the trees are
    /// isomorphic as labelled trees.
    pub fn canonical_code(&self) -> Result<String, CotreeError> {
        self.require_valid()?;
        Ok(self.code())
    }

    /// Reorders children canonically: by code length, code, then smallest
    /// leaf name.
    pub fn normalized(self) -> Cotree {
        match self {
            Cotree::Leaf(_) => self,
            Cotree::Node(label, cs) => {
                let mut keyed: Vec<(String, String, Cotree)> = cs
                    .into_iter()
                    .map(|c| {
                        let c = c.normalized();
                        (c.code(), c.min_leaf().to_string(), c)
                    })
                    .collect();
                keyed.sort_by(|a, b| {
                    a.0.len()
                        .cmp(&b.0.len())
                        .then_with(|| a.0.cmp(&b.0))
                        .then_with(|| a.1.cmp(&b.1))
                });
                Cotree::Node(label, keyed.into_iter().map(|(_, _, c)| c).collect())
            }
        }
    }

    /// Renames leaves to `g0, g1, ...` in left-to-right order.
    pub fn with_fresh_leaves(&self) -> Cotree {
        fn go(t: &Cotree, next: &mut usize) -> Cotree {
            match t {
                Cotree::Leaf(_) => {
                    *next += 1;
                    Cotree::Leaf(crate::graph::fresh_name(*next - 1))
                }
                Cotree::Node(l, cs) => Cotree::Node(*l, cs.iter().map(|c| go(c, next)).collect()),
            }
        }
        go(self, &mut 0)
    }

    /// The cograph whose vertices are the leaves (in left-to-right order)
    /// and where two vertices are adjacent iff their meet is labelled 1.
    pub fn realize(&self) -> Result<Graph, CotreeError> {
        self.require_valid()?;
        let names: Vec<String> = self.leaves().into_iter().map(str::to_string).collect();
        let mut edges = Vec::new();
        self.join_edges(0, &mut edges);
        Ok(Graph::from_indices(names, edges))
    }

    /// Pushes the edges contributed by join nodes; `offset` is the index of
    /// this subtree's first leaf. Returns the subtree's leaf count.
    fn join_edges(&self, offset: usize, edges: &mut Vec<(usize, usize)>) -> usize {
        match self {
            Cotree::Leaf(_) => 1,
            Cotree::Node(label, cs) => {
                let mut spans = Vec::with_capacity(cs.len());
                let mut at = offset;
                for c in cs {
                    let k = c.join_edges(at, edges);
                    spans.push((at, at + k));
                    at += k;
                }
                if *label == Label::Join {
                    for (i, &(a0, a1)) in spans.iter().enumerate() {
                        for &(b0, b1) in &spans[i + 1..] {
                            for x in a0..a1 {
                                for y in b0..b1 {
                                    edges.push((x, y));
                                }
                            }
                        }
                    }
                }
                at - offset
            }
        }
    }

    /// Strict parse: syntax errors and invariant violations are reported
    /// with line and column.
    pub fn parse(text: &str) -> Result<Cotree, CotreeError> {
        parse::parse(text, true)
    }

    /// Parses the syntax without checking tree invariants.
    pub fn parse_unchecked(text: &str) -> Result<Cotree, CotreeError> {
        parse::parse(text, false)
    }
}

/// S-expression form: `(<label> child ...)` for internal nodes and the bare
/// name for leaves.
impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cotree::Leaf(name) => write!(f, "{name}"),
            Cotree::Node(label, cs) => {
                write!(f, "({label}")?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn p4_witness(g: &Graph) -> Vec<String> {
    let p4 = Graph::path(4).expect("n >= 1");
    let m = find_induced_embedding(&p4, g, &VertexMap::new())
        .expect("empty partial map")
        .expect("a graph that is neither disconnected nor co-disconnected contains P4");
    p4.names()
        .iter()
        .map(|v| m.get(v).expect("total").to_string())
        .collect()
}

/// The decomposition tree of `g`, or a P4 witness if `g` is not a cograph.
/// The result is normalized, so equal graphs give identical trees.
pub fn decompose(g: &Graph) -> Result<Cotree, CotreeError> {
    if g.is_empty() {
        return Err(CotreeError::EmptyGraph);
    }
    let all: Vec<usize> = (0..g.order()).collect();
    match split(g, &all) {
        Some(t) => Ok(t.normalized()),
        None => Err(CotreeError::NotCograph {
            witness: p4_witness(g),
        }),
    }
}

fn split(g: &Graph, set: &[usize]) -> Option<Cotree> {
    if set.len() == 1 {
        return Some(Cotree::Leaf(g.name(set[0]).to_string()));
    }
    let sub = g.induced(set);
    let comps = sub.components();
    let (label, parts) = if comps.len() > 1 {
        (Label::Union, comps)
    } else {
        let co = sub.complement().components();
        if co.len() == 1 {
            return None;
        }
        (Label::Join, co)
    };
    let children = parts
        .into_iter()
        .map(|part| {
            let members: Vec<usize> = part.into_iter().map(|i| set[i]).collect();
            split(g, &members)
        })
        .collect::<Option<Vec<_>>>()?;
    Some(Cotree::Node(label, children))
}

/// True iff `g` is a cograph.
pub fn is_cograph(g: &Graph) -> bool {
    g.is_empty() || decompose(g).is_ok()
}

/// Cograph isomorphism by comparing canonical codes.
pub fn cograph_iso(g: &Graph, h: &Graph) -> Result<bool, CotreeError> {
    let code = |x: &Graph| -> Result<String, CotreeError> {
        if x.is_empty() {
            return Ok(String::new());
        }
        match decompose(x) {
            Ok(t) => Ok(t.code()),
            Err(CotreeError::NotCograph { witness }) => Err(CotreeError::NotCographInput { witness }),
            Err(e) => Err(e),
        }
    };
    Ok(code(g)? == code(h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{combine, Combine};
    use crate::search::is_isomorphic;

    fn t(s: &str) -> Cotree {
        Cotree::parse_unchecked(s).unwrap()
    }

    fn p3() -> Graph {
        Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let k2 = Graph::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(decompose(&k2).unwrap().to_string(), "(1 a b)");
        assert_eq!(decompose(&p3()).unwrap().to_string(), "(1 b (0 a c))");
        let p4 = Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        match decompose(&p4) {
            Err(CotreeError::NotCograph { witness }) => assert_eq!(witness, ["a", "b", "c", "d"]),
            other => panic!("{other:?}"),
        }
        assert_eq!(decompose(&Graph::empty(0)), Err(CotreeError::EmptyGraph));
    }

    #[test]
    fn realize_examples() {
        assert_eq!(t("a").realize().unwrap(), Graph::new(&["a"], &[]).unwrap());
        let c4 = t("(1 (0 a b) (0 c d))").realize().unwrap();
        assert!(is_isomorphic(&c4, &Graph::cycle(4).unwrap()).is_some());
        assert_eq!(t("(0 a b c)").realize().unwrap().size(), 0);
        assert!(matches!(t("(1 a)").realize(), Err(CotreeError::InvalidCotree(_))));
    }

    #[test]
    fn validation_examples() {
        let r = t("(1 (1 a b) c)").validate();
        assert_eq!(
            r.violations,
            vec![Violation {
                path: vec![0],
                kind: ViolationKind::RepeatedLabel(Label::Join)
            }]
        );
        let r = t("(1 (0 a b))").validate();
        assert_eq!(
            r.violations,
            vec![Violation {
                path: vec![],
                kind: ViolationKind::TooFewChildren(1)
            }]
        );
        let r = t("(0 a a)").validate();
        assert_eq!(r.violations[0].kind, ViolationKind::DuplicateLeaf("a".into()));
        let c4 = decompose(&Graph::cycle(4).unwrap()).unwrap();
        assert!(c4.validate().is_valid());
    }

    #[test]
    fn canonical_code_examples() {
        assert_eq!(
            t("(1 a (0 b c))").canonical_code().unwrap(),
            t("(1 (0 x y) z)").canonical_code().unwrap()
        );
        assert_eq!(t("(1 a (0 b c))").code(), "1(20(22))");
        assert_ne!(t("(1 a b)").code(), t("(0 a b)").code());
        let two = Graph::empty(2);
        let join = combine(&two, &two, Combine::Join);
        assert_eq!(
            decompose(&Graph::cycle(4).unwrap()).unwrap().code(),
            decompose(&join).unwrap().code()
        );
        assert!(t("(1 (1 a b) c)").canonical_code().is_err());
    }

    #[test]
    fn cograph_iso_examples() {
        let two = Graph::empty(2);
        let join = combine(&two, &two, Combine::Join);
        assert!(cograph_iso(&Graph::cycle(4).unwrap(), &join).unwrap());
        assert!(!cograph_iso(&Graph::complete(3), &p3()).unwrap());
        assert!(cograph_iso(&p3(), &p3()).unwrap());
        let p4 = Graph::path(4).unwrap();
        assert!(matches!(cograph_iso(&p4, &p3()), Err(CotreeError::NotCographInput { .. })));
    }

    #[test]
    fn normalization_is_order_independent() {
        let a = t("(1 (0 c (1 d e)) b (0 x y))").normalized();
        let b = t("(1 b (0 y x) (0 (1 e d) c))").normalized();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "(1 b (0 x y) (0 c (1 d e)))");
    }

    #[test]
    fn decompose_inverts_realize() {
        let tree = t("(0 (1 a (0 b c)) d (1 e f))").normalized();
        assert_eq!(decompose(&tree.realize().unwrap()).unwrap(), tree);
    }
}
