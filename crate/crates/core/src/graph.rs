//! Finite simple undirected graphs with named vertices.
//!
//! A [`Graph`] is an immutable value: every operation returns a new graph.
//! Vertices keep their declaration order, which is also the order every
//! search in this crate iterates in.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("list lengths differ: {parts} parts but {labels} labels")]
    LengthMismatch { parts: usize, labels: usize },
    #[error("bad size {0}")]
    BadSize(usize),
    #[error("partial map is not an injective map between the two graphs: {0}")]
    BadPartial(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite simple undirected graph.
///
/// Invariants: vertex names are distinct, there are no self-loops and the
/// adjacency matrix is symmetric.
#[derive(Clone)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<bool>,
    nbrs: Vec<Vec<usize>>,
}

/// How [`combine`] connects the two operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    /// No edges between the parts.
    Disjoint,
    /// Every cross pair is an edge.
    Join,
}

/// The fresh vertex name with index `k`.
pub fn fresh_name(k: usize) -> String {
    format!("g{k}")
}

impl Graph {
    /// Builds a graph from names and edges given by name.
    pub fn new<S: AsRef<str>>(names: &[S], edges: &[(S, S)]) -> Result<Graph, GraphError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(name.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let i = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownEndpoint(a.to_string()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownEndpoint(b.to_string()))?;
            if i == j {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            pairs.push((i, j));
        }
        Ok(Graph::build(names, index, pairs))
    }

    /// Builds a graph from names and edges given by vertex index.
    ///
    /// Panics on out-of-range indices or self-loops; callers inside the crate
    /// construct these from already valid data.
    pub(crate) fn from_indices(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect::<HashMap<_, _>>();
        assert_eq!(index.len(), names.len(), "duplicate vertex names");
        let pairs: Vec<_> = edges.into_iter().collect();
        for &(i, j) in &pairs {
            assert!(i != j, "self-loop");
        }
        Graph::build(names, index, pairs)
    }

    fn build(names: Vec<String>, index: HashMap<String, usize>, pairs: Vec<(usize, usize)>) -> Graph {
        let n = names.len();
        let mut adj = vec![false; n * n];
        for (i, j) in pairs {
            adj[i * n + j] = true;
            adj[j * n + i] = true;
        }
        let nbrs = (0..n)
            .map(|i| (0..n).filter(|&j| adj[i * n + j]).collect())
            .collect();
        Graph { names, index, adj, nbrs }
    }

    /// The graph on fresh vertices `g0..g{n-1}` with the given index edges.
    pub fn fresh(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
        Graph::from_indices((0..n).map(fresh_name).collect(), edges)
    }

    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Graph {
        Graph::fresh(n, [])
    }

    pub fn complete(n: usize) -> Graph {
        Graph::fresh(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    /// The path on `n >= 1` vertices.
    pub fn path(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::BadSize(n));
        }
        Ok(Graph::fresh(n, (1..n).map(|i| (i - 1, i))))
    }

    /// The cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::BadSize(n));
        }
        Ok(Graph::fresh(n, (0..n).map(|i| (i, (i + 1) % n))))
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.names.len() + j]
    }

    pub fn adjacent_names(&self, a: &str, b: &str) -> Option<bool> {
        Some(self.adjacent(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.nbrs[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.nbrs[i].len()
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.order() {
            for &j in &self.nbrs[i] {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_names(&self) -> Vec<(&str, &str)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| (self.name(i), self.name(j)))
            .collect()
    }

    /// Two vertices are adjacent in the complement iff they are not adjacent here.
    pub fn complement(&self) -> Graph {
        let n = self.order();
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        let edges: Vec<_> = edges.filter(|&(i, j)| !self.adjacent(i, j)).collect();
        Graph::build(self.names.clone(), self.index.clone(), edges)
    }

    /// The subgraph induced on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let mut edges = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.adjacent(i, j) {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_indices(names, edges)
    }

    /// The graph with vertex `name` deleted.
    pub fn remove_vertex(&self, name: &str) -> Result<Graph, GraphError> {
        let v = self.require(name)?;
        let keep: Vec<usize> = (0..self.order()).filter(|&i| i != v).collect();
        Ok(self.induced(&keep))
    }

    /// Renames vertices to `g{start}..`, preserving order and edges.
    pub fn with_fresh_names(&self, start: usize) -> Graph {
        let names = (start..start + self.order()).map(fresh_name).collect();
        Graph::from_indices(names, self.edges())
    }

    /// Renames every vertex with `prefix` prepended.
    pub fn prefixed(&self, prefix: &str) -> Graph {
        let names = self.names.iter().map(|s| format!("{prefix}{s}")).collect();
        Graph::from_indices(names, self.edges())
    }

    /// Connected components, each listed in vertex order; components are
    /// ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let x = comp[head];
                head += 1;
                for &y in &self.nbrs[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Length of a shortest cycle through vertex `v`, if any.
    pub fn girth_at(&self, v: usize) -> Option<usize> {
        let n = self.order();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        for &u in &self.nbrs[v] {
            // shortest u -> v path avoiding the edge uv
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[u] = 0;
            let mut queue = std::collections::VecDeque::from([u]);
            'bfs: while let Some(x) = queue.pop_front() {
                for &y in &self.nbrs[x] {
                    if x == u && y == v {
                        continue;
                    }
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        if y == v {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if dist[v] != usize::MAX {
                let len = dist[v] + 1;
                best = Some(best.map_or(len, |b| b.min(len)));
            }
        }
        best
    }

    /// Parses the plain text format: a header `n m`, then `n` vertex names,
    /// then `m` lines `u v`. Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let parse_num = |s: &str| {
            s.parse::<usize>().map_err(|_| GraphError::Parse {
                line: hline,
                msg: format!("expected a count, found `{s}`"),
            })
        };
        if nums.len() != 2 {
            return Err(GraphError::Parse {
                line: hline,
                msg: "header must be `n m`".into(),
            });
        }
        let (n, m) = (parse_num(nums[0])?, parse_num(nums[1])?);
        let mut names = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, l) = lines.next().ok_or(GraphError::Parse {
                line: hline,
                msg: format!("expected {n} vertex names"),
            })?;
            if l.split_whitespace().count() != 1 {
                return Err(GraphError::Parse {
                    line,
                    msg: "vertex names may not contain whitespace".into(),
                });
            }
            names.push(l.to_string());
        }
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line, l) = lines.next().ok_or(GraphError::Parse {
                line: hline,
                msg: format!("expected {m} edges"),
            })?;
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(GraphError::Parse {
                    line,
                    msg: "edge lines must be `u v`".into(),
                });
            }
            edges.push((parts[0].to_string(), parts[1].to_string()));
        }
        if let Some((line, _)) = lines.next() {
            return Err(GraphError::Parse {
                line,
                msg: "trailing content".into(),
            });
        }
        Graph::new(&names, &edges)
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({:?}, {:?})", self.names, self.edge_names())
    }
}

/// Writes the plain text format read by [`Graph::parse`].
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.order(), self.size())?;
        for name in &self.names {
            writeln!(f, "{name}")?;
        }
        for (a, b) in self.edge_names() {
            writeln!(f, "{a} {b}")?;
        }
        Ok(())
    }
}

fn names_collide(gs: &[&Graph]) -> bool {
    let mut seen = std::collections::HashSet::new();
    gs.iter()
        .flat_map(|g| g.names.iter())
        .any(|name| !seen.insert(name.as_str()))
}

/// Disjoint or joined union. If the two vertex sets share a name, the left
/// operand's vertices are prefixed with `0.` and the right's with `1.`.
pub fn combine(g: &Graph, h: &Graph, mode: Combine) -> Graph {
    let label = match mode {
        Combine::Disjoint => 0,
        Combine::Join => 1,
    };
    labeled_chain_sum(&[g.clone(), h.clone()], &[label, label])
        .expect("two parts and two labels")
}

/// Sum over a labeled chain: the disjoint union of `parts` where, for
/// `i < j`, every pair across `parts[i]` and `parts[j]` is an edge iff
/// `labels[i] == 1`. Name collisions are resolved by prefixing part `i`
/// with `i.`.
pub fn labeled_chain_sum(parts: &[Graph], labels: &[u8]) -> Result<Graph, GraphError> {
    if parts.len() != labels.len() {
        return Err(GraphError::LengthMismatch {
            parts: parts.len(),
            labels: labels.len(),
        });
    }
    let refs: Vec<&Graph> = parts.iter().collect();
    let rename = names_collide(&refs);
    let mut names = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        offsets.push(names.len());
        for name in &part.names {
            names.push(if rename { format!("{i}.{name}") } else { name.clone() });
        }
    }
    let mut edges = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let off = offsets[i];
        edges.extend(part.edges().into_iter().map(|(a, b)| (a + off, b + off)));
        if labels[i] == 1 {
            for (j, other) in parts.iter().enumerate().skip(i + 1) {
                for a in 0..part.order() {
                    for b in 0..other.order() {
                        edges.push((off + a, offsets[j] + b));
                    }
                }
            }
        }
    }
    Ok(Graph::from_indices(names, edges))
}

/// An injective partial map between the vertex sets of two graphs, keyed by
/// vertex name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexMap {
    pairs: BTreeMap<String, String>,
}

impl VertexMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, S)>) -> Self {
        VertexMap {
            pairs: pairs.into_iter().map(|(a, b)| (a.into(), b.into())).collect(),
        }
    }

    /// The identity on the vertices of `g`.
    pub fn identity(g: &Graph) -> Self {
        Self::from_pairs(g.names().iter().map(|s| (s.clone(), s.clone())))
    }

    pub fn insert(&mut self, from: impl Into<String>, to: impl Into<String>) {
        self.pairs.insert(from.into(), to.into());
    }

    pub fn get(&self, from: &str) -> Option<&str> {
        self.pairs.get(from).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.pairs.values().all(|v| seen.insert(v))
    }

    pub fn inverse(&self) -> VertexMap {
        Self::from_pairs(self.iter().map(|(a, b)| (b.to_string(), a.to_string())))
    }

    /// `other ∘ self`: first apply `self`, then `other`. Points whose image
    /// is outside the domain of `other` are dropped.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        Self::from_pairs(
            self.iter()
                .filter_map(|(a, b)| other.get(b).map(|c| (a.to_string(), c.to_string()))),
        )
    }

    /// Index form: `out[i]` is the image of vertex `i` of `from` in `to`.
    pub(crate) fn to_indices(&self, from: &Graph, to: &Graph) -> Result<Vec<Option<usize>>, GraphError> {
        let mut out = vec![None; from.order()];
        for (a, b) in self.iter() {
            let i = from
                .index_of(a)
                .ok_or_else(|| GraphError::BadPartial(format!("`{a}` is not in the source graph")))?;
            let j = to
                .index_of(b)
                .ok_or_else(|| GraphError::BadPartial(format!("`{b}` is not in the target graph")))?;
            out[i] = Some(j);
        }
        if !self.is_injective() {
            return Err(GraphError::BadPartial("map is not injective".into()));
        }
        Ok(out)
    }

    pub(crate) fn from_indices(from: &Graph, to: &Graph, map: &[usize]) -> VertexMap {
        Self::from_pairs(
            map.iter()
                .enumerate()
                .map(|(i, &j)| (from.name(i).to_string(), to.name(j).to_string())),
        )
    }

    /// True iff this is a total injective map that preserves adjacency and
    /// non-adjacency.
    pub fn is_induced_embedding(&self, from: &Graph, to: &Graph) -> bool {
        let Ok(idx) = self.to_indices(from, to) else {
            return false;
        };
        let Some(idx) = idx.into_iter().collect::<Option<Vec<_>>>() else {
            return false;
        };
        (0..from.order()).all(|i| {
            (i + 1..from.order()).all(|j| from.adjacent(i, j) == to.adjacent(idx[i], idx[j]))
        })
    }

    pub fn is_isomorphism(&self, from: &Graph, to: &Graph) -> bool {
        from.order() == to.order() && self.is_induced_embedding(from, to)
    }
}

impl fmt::Display for VertexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, b) in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{a}->{b}")?;
        }
        Ok(())
    }
}
