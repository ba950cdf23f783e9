//! Encoding arbitrary finite graphs as graphs avoiding a fixed forbidden
//! induced subgraph, decoding them back, and carrying isomorphisms across.
//!
//! Every vertex of the input becomes a hub sitting on a pendant cycle of
//! length `n+3`. Every pair of vertices is joined by a path of `|𝒢|` internal
//! vertices, each carrying a pendant cycle of length `n+1` (edge) or `n+2`
//! (non-edge). Here `n` is the longest induced cycle of the forbidden graph
//! (or of its complement, in which case the finished encoding is
//! complemented). All induced cycles of the construction have length above
//! `n`, so it cannot contain the forbidden graph.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::embedding::{antichain_side, OrderError};
use crate::graph::{fresh_name, Graph, VertexMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("the forbidden graph is an induced subgraph of P4")]
    ForbiddenIsP4Sub,
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error("the map is not an isomorphism")]
    NotIsomorphism,
}

fn malformed(msg: impl Into<String>) -> GadgetError {
    GadgetError::MalformedEncoding(msg.into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GadgetParams {
    pub forbidden: Graph,
    pub complemented: bool,
    pub n: usize,
    pub path_len: usize,
    pub edge_cycle: usize,
    pub non_edge_cycle: usize,
    pub hub_cycle: usize,
}

pub fn gadget_params(forbidden: &Graph) -> Result<GadgetParams, GadgetError> {
    let side = antichain_side(forbidden).map_err(|e| match e {
        OrderError::ForbiddenIsP4Sub => GadgetError::ForbiddenIsP4Sub,
        other => unreachable!("antichain_side only rejects P4 subgraphs: {other}"),
    })?;
    let n = side.m;
    Ok(GadgetParams {
        forbidden: forbidden.clone(),
        complemented: side.complemented,
        n,
        path_len: forbidden.order(),
        edge_cycle: n + 1,
        non_edge_cycle: n + 2,
        hub_cycle: n + 3,
    })
}

/// The construction before any complementation, with its layout.
#[derive(Debug, Clone)]
pub struct EncodedGraph {
    pub graph: Graph,
    pub hub_of: VertexMap,
    pub params: GadgetParams,
    /// Per input vertex (graph order), its hub cycle starting at the hub.
    hub_cycles: Vec<Vec<usize>>,
    /// Internal vertices of the path between input vertices `i < j`,
    /// listed from the hub of `i`.
    paths: BTreeMap<(usize, usize), Vec<usize>>,
    /// Pendant cycle of each internal vertex, starting at it.
    attached: BTreeMap<usize, Vec<usize>>,
}

impl EncodedGraph {
    /// The graph actually free of the forbidden graph: the construction, or
    /// its complement when the cycle was found in the complement.
    pub fn deliverable(&self) -> Graph {
        if self.params.complemented {
            self.graph.complement()
        } else {
            self.graph.clone()
        }
    }
}

#[derive(Default)]
struct Builder {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn cycle(&mut self, len: usize) -> Vec<usize> {
        let ids: Vec<usize> = (self.order..self.order + len).collect();
        self.order += len;
        for k in 0..len {
            self.edges.push((ids[k], ids[(k + 1) % len]));
        }
        ids
    }
}

pub fn encode_phi(h: &Graph, params: &GadgetParams) -> EncodedGraph {
    let mut b = Builder::default();
    let hub_cycles: Vec<Vec<usize>> = (0..h.order()).map(|_| b.cycle(params.hub_cycle)).collect();
    let mut paths = BTreeMap::new();
    let mut attached = BTreeMap::new();
    for i in 0..h.order() {
        for j in i + 1..h.order() {
            let len = if h.adjacent(i, j) {
                params.edge_cycle
            } else {
                params.non_edge_cycle
            };
            let mut prev = hub_cycles[i][0];
            let mut internal = Vec::with_capacity(params.path_len);
            for _ in 0..params.path_len {
                let c = b.cycle(len);
                b.edges.push((prev, c[0]));
                prev = c[0];
                internal.push(c[0]);
                attached.insert(c[0], c);
            }
            b.edges.push((prev, hub_cycles[j][0]));
            paths.insert((i, j), internal);
        }
    }
    let names = (0..b.order).map(fresh_name).collect();
    let graph = Graph::from_indices(names, b.edges);
    let hub_of = VertexMap::from_pairs(
        hub_cycles
            .iter()
            .enumerate()
            .map(|(v, c)| (h.name(v).to_string(), graph.name(c[0]).to_string())),
    );
    EncodedGraph {
        graph,
        hub_of,
        params: params.clone(),
        hub_cycles,
        paths,
        attached,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Anchor {
    Hub,
    Internal { edge: bool },
}

struct Decoded {
    graph: Graph,
    /// Encoding vertex of each decoded vertex.
    hubs: Vec<usize>,
}

/// Follows a chain of degree-2 vertices from `start` (entered from `from`)
/// and returns the first vertex of higher degree and the chain length.
fn walk_chain(e: &Graph, from: usize, start: usize) -> (usize, usize) {
    let (mut prev, mut cur, mut steps) = (from, start, 0);
    while e.degree(cur) == 2 {
        let next = e.neighbors(cur).iter().copied().find(|&x| x != prev).expect("degree 2");
        (prev, cur) = (cur, next);
        steps += 1;
    }
    (cur, steps)
}

fn decode_hubs(e: &Graph, params: &GadgetParams) -> Result<Decoded, GadgetError> {
    if e.order() == 0 {
        return Ok(Decoded {
            graph: Graph::empty(0),
            hubs: Vec::new(),
        });
    }
    if let Some(v) = (0..e.order()).find(|&v| e.degree(v) < 2) {
        return Err(malformed(format!("vertex {} has degree {}", e.name(v), e.degree(v))));
    }
    let anchors: Vec<usize> = (0..e.order()).filter(|&v| e.degree(v) > 2).collect();
    if anchors.is_empty() {
        // a single input vertex: one bare hub cycle
        if e.order() != params.hub_cycle || !e.is_connected() {
            return Err(malformed("no vertex of degree above 2 and not a single hub cycle"));
        }
        return Ok(Decoded {
            graph: Graph::new(&[e.name(0)], &[]).expect("one vertex"),
            hubs: vec![0],
        });
    }

    let mut kind: BTreeMap<usize, Anchor> = BTreeMap::new();
    let mut covered = 0;
    for &a in &anchors {
        let chains: Vec<usize> = e.neighbors(a).iter().copied().filter(|&x| e.degree(x) == 2).collect();
        if chains.len() != 2 {
            return Err(malformed(format!("{} does not carry exactly one pendant cycle", e.name(a))));
        }
        let (end, steps) = walk_chain(e, a, chains[0]);
        if end != a {
            return Err(malformed(format!("chain from {} ends at {}", e.name(a), e.name(end))));
        }
        let len = steps + 1;
        covered += len;
        let k = match len {
            l if l == params.hub_cycle => Anchor::Hub,
            l if l == params.edge_cycle => Anchor::Internal { edge: true },
            l if l == params.non_edge_cycle => Anchor::Internal { edge: false },
            l => return Err(malformed(format!("{} carries a cycle of length {l}", e.name(a)))),
        };
        kind.insert(a, k);
    }
    if covered != e.order() {
        return Err(malformed("vertices outside every gadget"));
    }

    let hubs: Vec<usize> = anchors.iter().copied().filter(|a| kind[a] == Anchor::Hub).collect();
    let slot: BTreeMap<usize, usize> = hubs.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let anchor_nbrs = |v: usize| -> Vec<usize> { e.neighbors(v).iter().copied().filter(|x| kind.contains_key(x)).collect() };
    let mut pairs: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for &h in &hubs {
        for x in anchor_nbrs(h) {
            let Anchor::Internal { edge } = kind[&x] else {
                return Err(malformed(format!("hubs {} and {} are adjacent", e.name(h), e.name(x))));
            };
            let (mut prev, mut cur, mut count) = (h, x, 0);
            while let Anchor::Internal { edge: here } = kind[&cur] {
                if here != edge {
                    return Err(malformed(format!("path from {} mixes cycle lengths", e.name(h))));
                }
                count += 1;
                let next = anchor_nbrs(cur);
                if next.len() != 2 {
                    return Err(malformed(format!("{} is not on a single path", e.name(cur))));
                }
                let nxt = if next[0] == prev { next[1] } else { next[0] };
                (prev, cur) = (cur, nxt);
            }
            if cur == h || count != params.path_len {
                return Err(malformed(format!("bad path leaving {}", e.name(h))));
            }
            let (a, b) = (slot[&h], slot[&cur]);
            if a < b && pairs.insert((a, b), edge).is_some() {
                return Err(malformed(format!("two paths join {} and {}", e.name(h), e.name(cur))));
            }
        }
    }
    let k = hubs.len();
    if pairs.len() != k * (k - 1) / 2 {
        return Err(malformed("some pair of hubs has no path"));
    }
    let names = hubs.iter().map(|&h| e.name(h).to_string()).collect();
    let edges = pairs.into_iter().filter(|&(_, edge)| edge).map(|(p, _)| p);
    Ok(Decoded {
        graph: Graph::from_indices(names, edges),
        hubs,
    })
}

/// Recovers the encoded graph from a bare construction (before any
/// complementation). Decoded vertices are named after their hubs.
pub fn decode_psi(e: &Graph, params: &GadgetParams) -> Result<Graph, GadgetError> {
    decode_hubs(e, params).map(|d| d.graph)
}

/// [`decode_psi`] on the deliverable form, undoing the complement if any.
pub fn decode_deliverable(g: &Graph, params: &GadgetParams) -> Result<Graph, GadgetError> {
    if params.complemented {
        decode_psi(&g.complement(), params)
    } else {
        decode_psi(g, params)
    }
}

/// Lifts an isomorphism `h ≅ h2` to one between their encodings.
pub fn transport_iso_phi(f: &VertexMap, h: &Graph, h2: &Graph, params: &GadgetParams) -> Result<VertexMap, GadgetError> {
    if !f.is_isomorphism(h, h2) {
        return Err(GadgetError::NotIsomorphism);
    }
    let fi: Vec<usize> = f
        .to_indices(h, h2)
        .map_err(|_| GadgetError::NotIsomorphism)?
        .into_iter()
        .map(|x| x.expect("isomorphisms are total"))
        .collect();
    let (e1, e2) = (encode_phi(h, params), encode_phi(h2, params));
    let mut map = vec![usize::MAX; e1.graph.order()];
    for (v, c) in e1.hub_cycles.iter().enumerate() {
        for (&a, &b) in c.iter().zip(&e2.hub_cycles[fi[v]]) {
            map[a] = b;
        }
    }
    for (&(i, j), p1) in &e1.paths {
        let (a, b) = (fi[i], fi[j]);
        let p2: Vec<usize> = if a < b {
            e2.paths[&(a, b)].clone()
        } else {
            e2.paths[&(b, a)].iter().rev().copied().collect()
        };
        for (x, y) in p1.iter().zip(p2) {
            for (&s, &t) in e1.attached[x].iter().zip(&e2.attached[&y]) {
                map[s] = t;
            }
        }
    }
    let out = VertexMap::from_indices(&e1.graph, &e2.graph, &map);
    debug_assert!(out.is_isomorphism(&e1.graph, &e2.graph));
    Ok(out)
}

/// Pushes an isomorphism of bare encodings down to their decodings.
pub fn transport_iso_psi(f: &VertexMap, e: &Graph, e2: &Graph, params: &GadgetParams) -> Result<VertexMap, GadgetError> {
    if !f.is_isomorphism(e, e2) {
        return Err(GadgetError::NotIsomorphism);
    }
    let (d1, d2) = (decode_hubs(e, params)?, decode_hubs(e2, params)?);
    if d1.graph.order() == 1 {
        // a lone hub cycle has no distinguished hub to follow
        return Ok(VertexMap::from_pairs([(d1.graph.name(0), d2.graph.name(0))]));
    }
    let out = VertexMap::from_pairs(d1.hubs.iter().map(|&h| {
        let name = e.name(h);
        (name, f.get(name).expect("isomorphisms are total"))
    }));
    if !out.is_isomorphism(&d1.graph, &d2.graph) {
        return Err(GadgetError::NotIsomorphism);
    }
    Ok(out)
}

/// The isomorphism from `h` onto the decoding of its encoding, sending each
/// vertex to the decoded vertex of its hub.
pub fn natural_iso_lambda(h: &Graph, params: &GadgetParams) -> VertexMap {
    encode_phi(h, params).hub_of
}
