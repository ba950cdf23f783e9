//! Canonical certificates for small graphs by individualisation and
//! refinement.
//!
//! Two coloured graphs get the same certificate iff there is a
//! colour-preserving isomorphism between them. Interchangeable twins are
//! individualised only once, which keeps cliques and independent sets cheap.

use crate::graph::Graph;
use crate::search::{ranks, refine};

/// Certificate of `g` where vertex `i` starts with colour `init[i]`.
pub fn certificate(g: &Graph, init: &[usize]) -> Vec<u32> {
    assert_eq!(init.len(), g.order());
    let colors = refine(g, ranks(init));
    let mut best: Option<Vec<u32>> = None;
    explore(g, init, colors, &mut best);
    best.unwrap_or_default()
}

/// Certificate with all vertices equally coloured.
pub fn graph_certificate(g: &Graph) -> Vec<u32> {
    certificate(g, &vec![0; g.order()])
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    (0..g.order()).all(|w| w == u || w == v || g.adjacent(u, w) == g.adjacent(v, w))
}

fn explore(g: &Graph, init: &[usize], colors: Vec<usize>, best: &mut Option<Vec<u32>>) {
    let n = g.order();
    let mut count = vec![0usize; n];
    for &c in &colors {
        count[c] += 1;
    }
    let Some(cell) = (0..n).find(|&c| count[c] > 1) else {
        let cert = leaf_certificate(g, init, &colors);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    };
    let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &members {
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(x, &c)| if c > cell || (c == cell && x != v) { c + 1 } else { c })
            .collect();
        explore(g, init, refine(g, split), best);
    }
}

fn leaf_certificate(g: &Graph, init: &[usize], colors: &[usize]) -> Vec<u32> {
    let n = g.order();
    let mut at = vec![0usize; n];
    for (v, &c) in colors.iter().enumerate() {
        at[c] = v;
    }
    let mut cert = Vec::with_capacity(1 + n + n * n / 64 + 1);
    cert.push(n as u32);
    cert.extend(at.iter().map(|&v| init[v] as u32));
    let mut word = 0u32;
    let mut bits = 0;
    for i in 0..n {
        for j in i + 1..n {
            word = word << 1 | g.adjacent(at[i], at[j]) as u32;
            bits += 1;
            if bits == 32 {
                cert.push(word);
                word = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        cert.push(word << (32 - bits));
    }
    cert
}
