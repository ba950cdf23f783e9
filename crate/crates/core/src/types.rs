//! Bounded existential types: the finite extensions of a structure with
//! constants inside a forbidden-subgraph class, the existential formula
//! describing each extension, and the fragment of those a target satisfies.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::canon::certificate;
use crate::graph::{Graph, VertexMap};
use crate::search::{find_induced_embedding, is_free};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypesError {
    #[error("the base graph contains the forbidden graph")]
    BaseNotFree,
    #[error("base vertex `{0}` clashes with a fresh vertex name")]
    FreshNameClash(String),
    #[error("constant `{0}` is not a vertex of the graph")]
    UnknownVertex(String),
    #[error("constant `{0}` is repeated")]
    RepeatedConstant(String),
    #[error("not an extension of the base: {0}")]
    NotAnExtension(String),
    #[error("constant `{0}` is not a constant of the target")]
    UnknownConstant(String),
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
}

/// A graph together with an ordered tuple of distinguished vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantedGraph {
    pub graph: Graph,
    pub constants: Vec<String>,
}

impl ConstantedGraph {
    pub fn new(graph: Graph, constants: Vec<String>) -> Result<ConstantedGraph, TypesError> {
        let mut seen = HashSet::new();
        for c in &constants {
            if graph.index_of(c).is_none() {
                return Err(TypesError::UnknownVertex(c.clone()));
            }
            if !seen.insert(c) {
                return Err(TypesError::RepeatedConstant(c.clone()));
            }
        }
        Ok(ConstantedGraph { graph, constants })
    }

    /// A graph with no constants.
    pub fn plain(graph: Graph) -> ConstantedGraph {
        ConstantedGraph {
            graph,
            constants: Vec::new(),
        }
    }

    /// Every vertex is a constant, in graph order.
    pub fn all_constant(graph: Graph) -> ConstantedGraph {
        let constants = graph.names().to_vec();
        ConstantedGraph { graph, constants }
    }

    fn pinned_colors(&self) -> Vec<usize> {
        let mut colors = vec![0; self.graph.order()];
        for (i, c) in self.constants.iter().enumerate() {
            colors[self.graph.index_of(c).expect("constants are vertices")] = i + 1;
        }
        colors
    }

    /// The constants and the edges among them.
    pub fn constant_part(&self) -> ConstantedGraph {
        let keep: Vec<usize> = self
            .constants
            .iter()
            .map(|c| self.graph.index_of(c).expect("constants are vertices"))
            .collect();
        ConstantedGraph {
            graph: self.graph.induced(&keep),
            constants: self.constants.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Const(String),
    Var(usize),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(k) => write!(f, "x{k}"),
        }
    }
}

/// `a E b` when `positive`, otherwise its negation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub a: Term,
    pub b: Term,
    pub positive: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}-{}", self.a, self.b)
        } else {
            write!(f, "!({}-{})", self.a, self.b)
        }
    }
}

/// `∃x0 … ∃x{n-1}` followed by a conjunction of edge literals over the
/// bound variables and the named constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExistentialFormula {
    bound_vars: usize,
    constants: Vec<String>,
    literals: Vec<Literal>,
}

impl ExistentialFormula {
    pub fn new(bound_vars: usize, constants: Vec<String>, literals: Vec<Literal>) -> Result<ExistentialFormula, TypesError> {
        for lit in &literals {
            for t in [&lit.a, &lit.b] {
                let declared = match t {
                    Term::Const(c) => constants.contains(c),
                    Term::Var(k) => *k < bound_vars,
                };
                if !declared {
                    return Err(TypesError::InvalidFormula(format!("`{t}` is not declared")));
                }
            }
            if lit.a == lit.b {
                return Err(TypesError::InvalidFormula(format!("`{lit}` relates a term to itself")));
            }
        }
        Ok(ExistentialFormula {
            bound_vars,
            constants,
            literals,
        })
    }

    pub fn bound_vars(&self) -> usize {
        self.bound_vars
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }
}

impl fmt::Display for ExistentialFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E")?;
        for k in 0..self.bound_vars {
            write!(f, " x{k}")?;
        }
        write!(f, " .")?;
        if self.literals.is_empty() {
            return write!(f, " true");
        }
        for (i, lit) in self.literals.iter().enumerate() {
            let sep = if i == 0 { " " } else { " & " };
            write!(f, "{sep}{lit}")?;
        }
        Ok(())
    }
}

/// Name of the `k`-th fresh vertex of an extension.
pub fn fresh_vertex(k: usize) -> String {
    k.to_string()
}

/// Whether some induced copy of `forbidden` in `g` uses vertex `v`.
fn contains_through(g: &Graph, forbidden: &Graph, v: usize) -> bool {
    (0..forbidden.order()).any(|p| {
        let partial = VertexMap::from_pairs([(forbidden.name(p), g.name(v))]);
        find_induced_embedding(forbidden, g, &partial)
            .expect("names come from the graphs")
            .is_some()
    })
}

/// All forbidden-free extensions of `base` by `0..=k` fresh vertices named
/// `0`, `1`, …, one per isomorphism class fixing the constants. The base
/// itself comes first; then extensions by one vertex, by two, and so on.
pub fn enumerate_extensions(base: &ConstantedGraph, forbidden: &Graph, k: usize) -> Result<Vec<ConstantedGraph>, TypesError> {
    if let Some(v) = (0..k).map(fresh_vertex).find(|v| base.graph.index_of(v).is_some()) {
        return Err(TypesError::FreshNameClash(v));
    }
    if !is_free(&base.graph, forbidden) {
        return Err(TypesError::BaseNotFree);
    }
    let mut out = vec![base.clone()];
    let mut level = vec![base.clone()];
    for j in 0..k {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let n = g.graph.order();
            let mut names = g.graph.names().to_vec();
            names.push(fresh_vertex(j));
            let edges = g.graph.edges();
            for mask in 0..1u64 << n {
                let new_edges = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| (i, n));
                let graph = Graph::from_indices(names.clone(), edges.iter().copied().chain(new_edges));
                if contains_through(&graph, forbidden, n) {
                    continue;
                }
                let ext = ConstantedGraph {
                    graph,
                    constants: base.constants.clone(),
                };
                if seen.insert(certificate(&ext.graph, &ext.pinned_colors())) {
                    next.push(ext);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    Ok(out)
}

/// The formula asserting that the fresh vertices of `ext` exist over the
/// constants of `base`: one variable per fresh vertex (in graph order), an
/// edge or non-edge literal for every constant–fresh pair, then for every
/// pair of fresh vertices.
pub fn phi_formula(ext: &ConstantedGraph, base: &ConstantedGraph) -> Result<ExistentialFormula, TypesError> {
    if ext.constants != base.constants {
        return Err(TypesError::NotAnExtension("the constant tuples differ".into()));
    }
    let mut base_idx = Vec::with_capacity(base.graph.order());
    for v in base.graph.names() {
        base_idx.push(
            ext.graph
                .index_of(v)
                .ok_or_else(|| TypesError::NotAnExtension(format!("vertex `{v}` is missing")))?,
        );
    }
    for i in 0..base_idx.len() {
        for j in i + 1..base_idx.len() {
            if base.graph.adjacent(i, j) != ext.graph.adjacent(base_idx[i], base_idx[j]) {
                return Err(TypesError::NotAnExtension(format!(
                    "adjacency of `{}` and `{}` differs",
                    base.graph.name(i),
                    base.graph.name(j)
                )));
            }
        }
    }
    let fresh: Vec<usize> = (0..ext.graph.order()).filter(|v| !base_idx.contains(v)).collect();
    let mut literals = Vec::new();
    for c in &ext.constants {
        let ci = ext.graph.index_of(c).expect("constants are vertices");
        for (k, &x) in fresh.iter().enumerate() {
            literals.push(Literal {
                a: Term::Const(c.clone()),
                b: Term::Var(k),
                positive: ext.graph.adjacent(ci, x),
            });
        }
    }
    for (k, &x) in fresh.iter().enumerate() {
        for (l, &y) in fresh.iter().enumerate().skip(k + 1) {
            literals.push(Literal {
                a: Term::Var(k),
                b: Term::Var(l),
                positive: ext.graph.adjacent(x, y),
            });
        }
    }
    ExistentialFormula::new(fresh.len(), ext.constants.clone(), literals)
}

struct Evaluation<'a> {
    target: &'a Graph,
    /// Variables in placement order.
    order: Vec<usize>,
    /// Per step: literals against constants and earlier-placed variables.
    checks: Vec<Vec<(Slot, bool)>>,
    /// Per step: earlier-placed twin variables, and whether the twin's value
    /// must be the smaller one.
    twins: Vec<Vec<(usize, bool)>>,
    assignment: Vec<usize>,
    used: Vec<bool>,
}

/// The other side of a literal: a constant's vertex or a variable.
#[derive(Clone, Copy)]
enum Slot {
    Vertex(usize),
    Var(usize),
}

impl Evaluation<'_> {
    fn value(&self, s: Slot) -> usize {
        match s {
            Slot::Vertex(w) => w,
            Slot::Var(l) => self.assignment[l],
        }
    }

    fn run(&mut self, step: usize) -> bool {
        if step == self.order.len() {
            return true;
        }
        let x = self.order[step];
        // a positive literal narrows the candidates to a neighbourhood
        let candidates: Vec<usize> = match self.checks[step].iter().find(|(_, p)| *p) {
            Some(&(s, _)) => self.target.neighbors(self.value(s)).to_vec(),
            None => (0..self.target.order()).collect(),
        };
        for v in candidates {
            if self.used[v]
                || !self.checks[step].iter().all(|&(s, p)| self.target.adjacent(v, self.value(s)) == p)
                || !self.twins[step].iter().all(|&(t, smaller)| (self.assignment[t] < v) == smaller)
            {
                continue;
            }
            self.assignment[x] = v;
            self.used[v] = true;
            if self.run(step + 1) {
                return true;
            }
            self.used[v] = false;
        }
        false
    }
}

/// Whether `target` satisfies `phi`. Bound variables take pairwise distinct
/// values, distinct also from the constants, so that a formula produced by
/// [`phi_formula`] holds exactly when its extension embeds over the
/// constants.
pub fn eval_existential(phi: &ExistentialFormula, target: &ConstantedGraph) -> Result<bool, TypesError> {
    let g = &target.graph;
    let n = phi.bound_vars;
    let mut used = vec![false; g.order()];
    let mut vertex_of = HashMap::new();
    for c in &phi.constants {
        if !target.constants.contains(c) {
            return Err(TypesError::UnknownConstant(c.clone()));
        }
        let v = g.index_of(c).expect("constants are vertices");
        used[v] = true;
        vertex_of.insert(c.as_str(), v);
    }
    // what the literals say about each variable; contradictions fail at once
    let mut rel: Vec<Vec<Option<bool>>> = vec![vec![None; n]; n];
    let mut to_const: Vec<BTreeMap<usize, bool>> = vec![BTreeMap::new(); n];
    for lit in &phi.literals {
        let consistent = match (&lit.a, &lit.b) {
            (Term::Const(a), Term::Const(b)) => g.adjacent(vertex_of[a.as_str()], vertex_of[b.as_str()]) == lit.positive,
            (Term::Const(c), Term::Var(k)) | (Term::Var(k), Term::Const(c)) => {
                *to_const[*k].entry(vertex_of[c.as_str()]).or_insert(lit.positive) == lit.positive
            }
            (Term::Var(k), Term::Var(l)) => {
                let seen = *rel[*k][*l].get_or_insert(lit.positive);
                rel[*l][*k] = Some(seen);
                seen == lit.positive
            }
        };
        if !consistent {
            return Ok(false);
        }
    }
    if n + phi.constants.len() > g.order() {
        return Ok(false);
    }

    // place variables with many positive literals to placed ones first
    let positives = |k: usize, among: &[usize]| among.iter().filter(|&&l| rel[k][l] == Some(true)).count();
    let all: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&k| !placed[k])
            .max_by_key(|&k| {
                let anchored = positives(k, &order) + to_const[k].values().filter(|&&p| p).count();
                (anchored, positives(k, &all), Reverse(k))
            })
            .expect("an unplaced variable");
        placed[next] = true;
        order.push(next);
    }

    // interchangeable variables are kept in increasing order of value
    let twin = |k: usize, l: usize| {
        to_const[k] == to_const[l] && (0..n).all(|m| m == k || m == l || rel[k][m] == rel[l][m])
    };
    let mut checks = Vec::with_capacity(n);
    let mut twins = Vec::with_capacity(n);
    for (step, &x) in order.iter().enumerate() {
        let earlier = &order[..step];
        let mut c: Vec<(Slot, bool)> = to_const[x].iter().map(|(&v, &p)| (Slot::Vertex(v), p)).collect();
        c.extend(earlier.iter().filter_map(|&l| rel[x][l].map(|p| (Slot::Var(l), p))));
        checks.push(c);
        twins.push(earlier.iter().filter(|&&l| twin(x, l)).map(|&l| (l, l < x)).collect());
    }
    let mut ev = Evaluation {
        target: g,
        order,
        checks,
        twins,
        assignment: vec![usize::MAX; n],
        used,
    };
    Ok(ev.run(0))
}

/// The formulas of all extensions of the target's constants by at most `k`
/// fresh vertices that the target satisfies.
pub fn type_fragment(target: &ConstantedGraph, forbidden: &Graph, k: usize) -> Result<Vec<ExistentialFormula>, TypesError> {
    let base = target.constant_part();
    let mut out = Vec::new();
    for ext in enumerate_extensions(&base, forbidden, k)? {
        let phi = phi_formula(&ext, &base)?;
        if eval_existential(&phi, target)? {
            out.push(phi);
        }
    }
    Ok(out)
}

/// The identity on the constants, for extending embeddings over them.
pub fn constant_map(g: &ConstantedGraph, target: &ConstantedGraph) -> VertexMap {
    VertexMap::from_pairs(g.constants.iter().zip(&target.constants).map(|(a, b)| (a.clone(), b.clone())))
}
