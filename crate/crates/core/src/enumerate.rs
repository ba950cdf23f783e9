//! Exhaustive generators for small instances: unlabelled cotrees (hence
//! cographs) and unlabelled graphs.

use std::collections::HashSet;

use crate::canon::graph_certificate;
use crate::cotree::{Cotree, Label};
use crate::graph::Graph;

/// Every valid cotree with exactly `n` leaves, one per isomorphism class.
/// Leaves are named `g0..` left to right after normalization.
pub fn cotrees_with_leaves(n: usize) -> Vec<Cotree> {
    if n == 0 {
        return Vec::new();
    }
    // shapes[s] = cotrees with s leaves whose root is labelled Union; the
    // Join-rooted ones are their label-flipped images
    let mut shapes: Vec<Vec<Cotree>> = vec![Vec::new(), Vec::new()];
    for size in 2..=n {
        let mut out = Vec::new();
        fill(size, (1, 0), &shapes, &mut Vec::new(), &mut out);
        shapes.push(out);
    }
    let mut all = if n == 1 {
        vec![Cotree::Leaf("x".into())]
    } else {
        let union = shapes[n].clone();
        let join: Vec<Cotree> = union.iter().map(flip).collect();
        union.into_iter().chain(join).collect()
    };
    for t in all.iter_mut() {
        *t = t.clone().normalized().with_fresh_leaves().normalized();
    }
    all
}

/// Children of a Union root: a multiset of leaves and Join-rooted subtrees,
/// listed as a nondecreasing sequence of `(size, index)`; index 0 of size 1
/// is the bare leaf.
fn fill(left: usize, min: (usize, usize), shapes: &[Vec<Cotree>], cur: &mut Vec<Cotree>, out: &mut Vec<Cotree>) {
    if left == 0 {
        if cur.len() >= 2 {
            out.push(Cotree::Node(Label::Union, cur.clone()));
        }
        return;
    }
    // a child as large as the whole tree would leave the root one child
    for s in min.0..=left.min(shapes.len() - 1) {
        let options = if s == 1 { 1 } else { shapes[s].len() };
        let start = if s == min.0 { min.1 } else { 0 };
        for i in start..options {
            let child = if s == 1 {
                Cotree::Leaf("x".into())
            } else {
                flip(&shapes[s][i])
            };
            cur.push(child);
            fill(left - s, (s, i), shapes, cur, out);
            cur.pop();
        }
    }
}

fn flip(t: &Cotree) -> Cotree {
    match t {
        Cotree::Leaf(n) => Cotree::Leaf(n.clone()),
        Cotree::Node(l, cs) => Cotree::Node(l.flip(), cs.iter().map(flip).collect()),
    }
}

/// Every cograph on `1..=max_n` vertices, one per isomorphism class.
pub fn cographs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(cotrees_with_leaves)
        .map(|t| t.realize().expect("generated cotrees are valid"))
        .collect()
}

/// Every labelled graph on vertices `g0..g{n-1}`, by edge bitmask over the
/// pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        Graph::fresh(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e),
        )
    })
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// in order of first appearance among [`labeled_graphs`].
pub fn unlabeled_graphs(n: usize) -> Vec<Graph> {
    let mut seen = HashSet::new();
    labeled_graphs(n)
        .filter(|g| seen.insert(graph_certificate(g)))
        .collect()
}
