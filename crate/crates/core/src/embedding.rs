//! Induced subgraphs of cographs through their cotrees, vertex deletion on
//! cotrees, and the cycle antichains outside the cographs.
//!
//! A cograph `G` is an induced subgraph of a cograph `H` iff the cotree of
//! `G` embeds into the cotree of `H` as a partial order, preserving node
//! labels and the labels of meets of leaves.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cotree::{decompose, Cotree, CotreeError, IndexedTree, NodeKind, ValidationReport};
use crate::graph::{labeled_chain_sum, Graph, VertexMap};
use crate::search::find_induced_embedding;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("invalid cotree: {0}")]
    InvalidCotree(ValidationReport),
    #[error("input is not a cograph; witness: {}", .witness.join(" "))]
    NotCographInput { witness: Vec<String> },
    #[error("`{0}` is not a leaf of the cotree")]
    UnknownLeaf(String),
    #[error("cannot delete the only leaf")]
    LastLeaf,
    #[error("the forbidden graph is an induced subgraph of P4")]
    ForbiddenIsP4Sub,
    #[error("the index set is empty")]
    EmptyIndexSet,
    #[error("cycle offset must be at least 3, got {0}")]
    BadM(usize),
}

fn require_valid(t: &Cotree) -> Result<(), OrderError> {
    let report = t.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(OrderError::InvalidCotree(report))
    }
}

/// Injective node map between two cotrees, by preorder node id (root 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEmbedding {
    pub map: Vec<(usize, usize)>,
    /// Set once the labels of all leaf meets have been compared.
    pub meet_labels_checked: bool,
}

impl TreeEmbedding {
    /// The induced vertex map on leaves.
    pub fn leaf_map(&self, source: &Cotree, target: &Cotree) -> VertexMap {
        let (s, t) = (IndexedTree::new(source), IndexedTree::new(target));
        VertexMap::from_pairs(self.map.iter().filter_map(|&(a, b)| {
            Some((s.leaf_name(a)?.to_string(), t.leaf_name(b)?.to_string()))
        }))
    }
}

struct EmbedSearch<'a> {
    s: &'a IndexedTree,
    t: &'a IndexedTree,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl EmbedSearch<'_> {
    fn fits(&self, x: usize, y: usize) -> bool {
        let (s, t) = (self.s, self.t);
        if self.used[y] || s.leaves_below(x) > t.leaves_below(y) || s.subtree_size(x) > t.subtree_size(y) {
            return false;
        }
        let same_kind = match (s.kind(x), t.kind(y)) {
            (NodeKind::Leaf(_), NodeKind::Leaf(_)) => true,
            (NodeKind::Internal(a), NodeKind::Internal(b)) => a == b,
            _ => false,
        };
        if !same_kind {
            return false;
        }
        let Some(p) = s.parent(x) else {
            return true;
        };
        // earlier siblings are already placed: their images must be
        // incomparable with y and meet it at a node labelled like the parent
        s.children(p).iter().take_while(|&&c| c != x).all(|&c| {
            let fc = self.map[c];
            !t.comparable(y, fc) && t.label(t.meet(y, fc)) == s.label(p)
        })
    }

    fn run(&mut self, x: usize) -> bool {
        if x == self.s.len() {
            return true;
        }
        let range = match self.s.parent(x) {
            Some(p) => {
                let fp = self.map[p];
                fp + 1..fp + self.t.subtree_size(fp)
            }
            None => 0..self.t.len(),
        };
        for y in range {
            if !self.fits(x, y) {
                continue;
            }
            self.map[x] = y;
            self.used[y] = true;
            if self.run(x + 1) {
                return true;
            }
            self.used[y] = false;
        }
        false
    }
}

/// Searches for an injective, order-embedding, label-preserving map from
/// the nodes of `source` into `target` under which the meet of any two
/// source leaves maps to a node with the same label. Source nodes are placed
/// in preorder, target candidates tried in preorder; the first witness is
/// returned.
pub fn label_meet_embed(source: &Cotree, target: &Cotree) -> Result<Option<TreeEmbedding>, OrderError> {
    require_valid(source)?;
    require_valid(target)?;
    let (s, t) = (IndexedTree::new(source), IndexedTree::new(target));
    let mut search = EmbedSearch {
        s: &s,
        t: &t,
        map: vec![usize::MAX; s.len()],
        used: vec![false; t.len()],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let map = search.map;
    let leaves: Vec<usize> = (0..s.len()).filter(|&x| s.is_leaf(x)).collect();
    for (i, &a) in leaves.iter().enumerate() {
        for &b in &leaves[i + 1..] {
            let want = s.label(s.meet(a, b));
            let got = t.label(t.meet(map[a], map[b]));
            assert_eq!(want, got, "sibling meet labels determine leaf meet labels");
        }
    }
    Ok(Some(TreeEmbedding {
        map: map.into_iter().enumerate().collect(),
        meet_labels_checked: true,
    }))
}

fn cotree_of(g: &Graph) -> Result<Cotree, OrderError> {
    decompose(g).map_err(|e| match e {
        CotreeError::NotCograph { witness } => OrderError::NotCographInput { witness },
        CotreeError::EmptyGraph => OrderError::NotCographInput { witness: Vec::new() },
        other => unreachable!("decompose only fails on empty or non-cographs: {other}"),
    })
}

/// `small` is an induced subgraph of `large`, decided on their cotrees.
pub fn cograph_induced_via_trees(small: &Graph, large: &Graph) -> Result<bool, OrderError> {
    let (s, t) = (cotree_of(small)?, cotree_of(large)?);
    Ok(label_meet_embed(&s, &t)?.is_some())
}

enum Deleted {
    /// The deleted leaf itself.
    Gone,
    Kept(Cotree),
    /// The leaf's parent lost its last sibling; this is the survivor.
    Collapsed(Cotree),
}

fn delete_in(t: &Cotree, v: &str) -> Option<Deleted> {
    match t {
        Cotree::Leaf(name) => (name == v).then_some(Deleted::Gone),
        Cotree::Node(label, cs) => {
            let (at, result) = cs.iter().enumerate().find_map(|(i, c)| Some((i, delete_in(c, v)?)))?;
            let mut rest: Vec<Cotree> = cs[..at].to_vec();
            match result {
                Deleted::Gone => {}
                Deleted::Kept(c) => rest.push(c),
                // the survivor moves up to this node: a leaf is reparented,
                // an internal node (same label as this one) is spliced in
                Deleted::Collapsed(Cotree::Node(l, grand)) if l == *label => rest.extend(grand),
                Deleted::Collapsed(other) => rest.push(other),
            }
            rest.extend_from_slice(&cs[at + 1..]);
            Some(if rest.len() == 1 {
                Deleted::Collapsed(rest.pop().expect("one child"))
            } else {
                Deleted::Kept(Cotree::Node(*label, rest))
            })
        }
    }
}

/// The cotree of the graph with leaf `v` removed, by contracting the tree:
/// drop the leaf; if its parent is left with one child, drop the parent and
/// lift the sibling into the grandparent (or make it the root).
pub fn delete_vertex_cotree(t: &Cotree, v: &str) -> Result<Cotree, OrderError> {
    require_valid(t)?;
    if t.is_leaf() {
        return match t {
            Cotree::Leaf(name) if name == v => Err(OrderError::LastLeaf),
            _ => Err(OrderError::UnknownLeaf(v.to_string())),
        };
    }
    match delete_in(t, v) {
        None => Err(OrderError::UnknownLeaf(v.to_string())),
        Some(Deleted::Kept(c)) | Some(Deleted::Collapsed(c)) => Ok(c.normalized()),
        Some(Deleted::Gone) => unreachable!("root is internal"),
    }
}

/// Largest `k` such that the cycle `C_k` is an induced subgraph of `g`.
pub fn max_induced_cycle(g: &Graph) -> Option<usize> {
    (3..=g.order()).rev().find(|&k| {
        let c = Graph::cycle(k).expect("k >= 3");
        find_induced_embedding(&c, g, &VertexMap::new())
            .expect("empty partial map")
            .is_some()
    })
}

/// Which antichain a forbidden graph gives rise to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AntichainSide {
    /// Length of the longest induced cycle on the chosen side.
    pub m: usize,
    /// The cycle was found in the complement of the forbidden graph.
    pub complemented: bool,
}

/// Locates the longest induced cycle in the forbidden graph, or failing
/// that in its complement. Fails iff the graph is an induced subgraph of P4.
pub fn antichain_side(forbidden: &Graph) -> Result<AntichainSide, OrderError> {
    let p4 = Graph::path(4).expect("n >= 1");
    if find_induced_embedding(forbidden, &p4, &VertexMap::new())
        .expect("empty partial map")
        .is_some()
    {
        return Err(OrderError::ForbiddenIsP4Sub);
    }
    if let Some(m) = max_induced_cycle(forbidden) {
        return Ok(AntichainSide { m, complemented: false });
    }
    let m = max_induced_cycle(&forbidden.complement())
        .expect("a graph outside P4's induced subgraphs has an induced cycle in it or its complement");
    Ok(AntichainSide { m, complemented: true })
}

/// The antichain member for index set `indices`: the disjoint union of the
/// cycles `C_{m+1+i}`, or, when the cycle lives in the complement of the
/// forbidden graph, the join of their complements. Vertices are `g0..`.
pub fn antichain_graph(forbidden: &Graph, indices: &BTreeSet<usize>) -> Result<Graph, OrderError> {
    let side = antichain_side(forbidden)?;
    if indices.is_empty() {
        return Err(OrderError::EmptyIndexSet);
    }
    let mut parts = Vec::with_capacity(indices.len());
    let mut next = 0;
    for &i in indices {
        let c = Graph::cycle(side.m + 1 + i).expect("length >= 4");
        let c = if side.complemented { c.complement() } else { c };
        parts.push(c.with_fresh_names(next));
        next += side.m + 1 + i;
    }
    let label = u8::from(side.complemented);
    let labels = vec![label; parts.len()];
    Ok(labeled_chain_sum(&parts, &labels).expect("lengths match"))
}

/// Whether `g` has an induced `C_{m+1+i}` (or its complement, when
/// `complemented`).
pub fn cycle_formula_holds(g: &Graph, i: usize, m: usize, complemented: bool) -> Result<bool, OrderError> {
    if m < 3 {
        return Err(OrderError::BadM(m));
    }
    let c = Graph::cycle(m + 1 + i).expect("length >= 4");
    let pattern = if complemented { c.complement() } else { c };
    Ok(find_induced_embedding(&pattern, g, &VertexMap::new())
        .expect("empty partial map")
        .is_some())
}
