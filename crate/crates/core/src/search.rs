//! Brute-force oracles: induced embeddings, freeness, isomorphism and
//! automorphism enumeration.
//!
//! All searches are exact backtracking. Pruning only uses isomorphism
//! invariants (degrees, shortest cycle through a vertex, colour refinement),
//! so answers never depend on it.

use crate::graph::{Graph, GraphError, VertexMap};

/// Colour refinement to a stable partition. Colours are ranks of the
/// signature `(old colour, sorted neighbour colours)`, so the result only
/// depends on the isomorphism type of the coloured graph.
pub(crate) fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.order();
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|i| {
                let mut ns: Vec<usize> = g.neighbors(i).iter().map(|&j| colors[j]).collect();
                ns.sort_unstable();
                (colors[i], ns)
            })
            .collect();
        colors = ranks(&sigs);
        let now = count_classes(&colors);
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

pub(crate) fn ranks<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn is_dense(g: &Graph) -> bool {
    let n = g.order();
    n >= 2 && 4 * g.size() > n * (n - 1)
}

/// Backtracking matcher from `pattern` into `target` preserving adjacency and
/// non-adjacency.
struct Matcher<'a> {
    pattern: &'a Graph,
    target: &'a Graph,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    colors: Option<(&'a [usize], &'a [usize])>,
}

impl<'a> Matcher<'a> {
    fn new(pattern: &'a Graph, target: &'a Graph, order: Vec<usize>, map: Vec<Option<usize>>) -> Self {
        let mut used = vec![false; target.order()];
        for &j in map.iter().flatten() {
            used[j] = true;
        }
        Matcher {
            pattern,
            target,
            order,
            map,
            used,
            colors: None,
        }
    }

    fn fits(&self, p: usize, t: usize) -> bool {
        if self.used[t] || self.target.degree(t) < self.pattern.degree(p) {
            return false;
        }
        if let Some((pc, tc)) = self.colors {
            if pc[p] != tc[t] {
                return false;
            }
        }
        self.map.iter().enumerate().all(|(q, m)| match m {
            Some(u) => self.pattern.adjacent(p, q) == self.target.adjacent(t, *u),
            None => true,
        })
    }

    /// Visits complete maps in lexicographic order of images along
    /// `self.order`. Stops as soon as `visit` returns `false`.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[Option<usize>]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let p = self.order[depth];
        // an already-mapped neighbour narrows the candidates without
        // changing their relative order
        let anchor = self
            .pattern
            .neighbors(p)
            .iter()
            .find_map(|&q| self.map[q]);
        let candidates: Vec<usize> = match anchor {
            Some(u) => self.target.neighbors(u).to_vec(),
            None => (0..self.target.order()).collect(),
        };
        for t in candidates {
            if !self.fits(p, t) {
                continue;
            }
            self.map[p] = Some(t);
            self.used[t] = true;
            let go_on = self.run(depth + 1, visit);
            self.map[p] = None;
            self.used[t] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Finds an induced embedding of `pattern` into `target` extending
/// `partial`. Pattern vertices are assigned in declaration order and target
/// candidates tried in declaration order, so the witness returned is the
/// lexicographically first one.
pub fn find_induced_embedding(
    pattern: &Graph,
    target: &Graph,
    partial: &VertexMap,
) -> Result<Option<VertexMap>, GraphError> {
    let start = partial.to_indices(pattern, target)?;
    for (i, m) in start.iter().enumerate() {
        for (j, n) in start.iter().enumerate().skip(i + 1) {
            if let (Some(a), Some(b)) = (m, n) {
                if pattern.adjacent(i, j) != target.adjacent(*a, *b) {
                    return Ok(None);
                }
            }
        }
    }
    if pattern.order() > target.order() {
        return Ok(None);
    }
    // F embeds in G iff the complement of F embeds in the complement of G,
    // through the same map; searching the sparser side prunes better.
    let flipped;
    let (p, t) = if is_dense(target) {
        flipped = (pattern.complement(), target.complement());
        (&flipped.0, &flipped.1)
    } else {
        (pattern, target)
    };
    let order: Vec<usize> = (0..p.order()).filter(|&i| start[i].is_none()).collect();
    let mut matcher = Matcher::new(p, t, order, start);
    let mut found = None;
    matcher.run(0, &mut |m| {
        found = Some(m.iter().map(|x| x.expect("total")).collect::<Vec<_>>());
        false
    });
    Ok(found.map(|m| VertexMap::from_indices(pattern, target, &m)))
}

/// True iff `forbidden` is not an induced subgraph of `g`.
pub fn is_free(g: &Graph, forbidden: &Graph) -> bool {
    find_induced_embedding(forbidden, g, &VertexMap::new())
        .expect("empty partial map is valid")
        .is_none()
}

/// Initial colours for isomorphism testing: degree and shortest cycle
/// through the vertex.
fn invariant_colors(g: &Graph) -> Vec<(usize, usize)> {
    (0..g.order())
        .map(|i| (g.degree(i), g.girth_at(i).unwrap_or(0)))
        .collect()
}

/// Jointly refined colours of `g` and `h`, comparable across the two graphs.
fn joint_colors(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.order();
    let union = crate::graph::labeled_chain_sum(&[g.with_fresh_names(0), h.with_fresh_names(n)], &[0, 0])
        .expect("two parts");
    let mut init = invariant_colors(g);
    init.extend(invariant_colors(h));
    let colors = refine(&union, ranks(&init));
    (colors[..n].to_vec(), colors[n..].to_vec())
}

/// Pattern order for isomorphism search: breadth-first within each
/// component, starting from a vertex of the rarest colour.
fn bfs_order(g: &Graph, colors: &[usize]) -> Vec<usize> {
    let mut freq = vec![0usize; colors.iter().max().map_or(0, |m| m + 1)];
    for &c in colors {
        freq[c] += 1;
    }
    let mut order = Vec::with_capacity(g.order());
    let mut seen = vec![false; g.order()];
    for comp in g.components() {
        let start = *comp
            .iter()
            .min_by_key(|&&v| (freq[colors[v]], v))
            .expect("nonempty component");
        seen[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

/// Returns an isomorphism `g -> h` if one exists.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<VertexMap> {
    if g.order() != h.order() || g.size() != h.size() {
        return None;
    }
    let flipped;
    let (a, b) = if is_dense(g) {
        flipped = (g.complement(), h.complement());
        (&flipped.0, &flipped.1)
    } else {
        (g, h)
    };
    let (ca, cb) = joint_colors(a, b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return None;
    }
    let order = bfs_order(a, &ca);
    let mut matcher = Matcher::new(a, b, order, vec![None; a.order()]);
    matcher.colors = Some((&ca, &cb));
    let mut found = None;
    matcher.run(0, &mut |m| {
        found = Some(m.iter().map(|x| x.expect("total")).collect::<Vec<_>>());
        false
    });
    found.map(|m| VertexMap::from_indices(g, h, &m))
}

/// All automorphisms of `g` as index permutations (`perm[i]` is the image
/// of vertex `i`), in lexicographic order.
pub fn automorphism_perms(g: &Graph) -> Vec<Vec<usize>> {
    let colors = refine(g, ranks(&invariant_colors(g)));
    let mut matcher = Matcher::new(g, g, (0..g.order()).collect(), vec![None; g.order()]);
    matcher.colors = Some((&colors, &colors));
    let mut out = Vec::new();
    matcher.run(0, &mut |m| {
        out.push(m.iter().map(|x| x.expect("total")).collect());
        true
    });
    out
}
