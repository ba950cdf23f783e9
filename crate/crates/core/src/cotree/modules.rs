//! Least modules `M(u,v)` and least strong modules `S(u,v)` in cographs,
//! and the reconstruction of the cotree from the `S`-sets.
//!
//! In a cograph both sets are first-order definable: `M(u,v)` closes in two
//! witness steps and `S(u,v)` is `M(u,v)` plus every `w` with
//! `v ∉ M(u,w)`. The closure oracles here compute the same sets from the
//! raw definitions for cross-checking.

use std::collections::BTreeMap;

use super::{decompose, Cotree, CotreeError, IndexedTree, Label};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleKind {
    LeastModule,
    LeastStrongModule,
}

/// A vertex set generated by two vertices; members are in graph order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSet {
    pub members: Vec<String>,
    pub kind: ModuleKind,
}

impl ModuleSet {
    fn from_mask(g: &Graph, mask: &[bool], kind: ModuleKind) -> ModuleSet {
        ModuleSet {
            members: (0..g.order())
                .filter(|&i| mask[i])
                .map(|i| g.name(i).to_string())
                .collect(),
            kind,
        }
    }

    pub fn contains(&self, v: &str) -> bool {
        self.members.iter().any(|m| m == v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `w` has an edge to exactly one of `x` and `y`.
fn witnesses(g: &Graph, w: usize, x: usize, y: usize) -> bool {
    w != x && w != y && g.adjacent(w, x) != g.adjacent(w, y)
}

fn pair(g: &Graph, u: &str, v: &str) -> Result<(usize, usize), CotreeError> {
    let i = g
        .index_of(u)
        .ok_or_else(|| CotreeError::UnknownVertex(u.to_string()))?;
    let j = g
        .index_of(v)
        .ok_or_else(|| CotreeError::UnknownVertex(v.to_string()))?;
    if i == j {
        return Err(CotreeError::SameVertex(u.to_string()));
    }
    Ok((i, j))
}

fn require_cograph(g: &Graph) -> Result<(), CotreeError> {
    decompose(g).map(|_| ())
}

/// Membership in `M(u,v)` by the two-step witness formula.
fn in_least_module(g: &Graph, u: usize, v: usize, w: usize) -> bool {
    if w == u || w == v || witnesses(g, w, u, v) {
        return true;
    }
    (0..g.order()).any(|x| {
        x != u && x != v && witnesses(g, x, u, v) && (witnesses(g, w, u, x) || witnesses(g, w, v, x))
    })
}

fn least_module_mask(g: &Graph, u: usize, v: usize) -> Vec<bool> {
    (0..g.order()).map(|w| in_least_module(g, u, v, w)).collect()
}

fn least_strong_module_mask(g: &Graph, u: usize, v: usize) -> Vec<bool> {
    (0..g.order())
        .map(|w| in_least_module(g, u, v, w) || !in_least_module(g, u, w, v))
        .collect()
}

/// `M(u,v)`: every `w` that is `u` or `v`, witnesses that `{u,v}` is not a
/// module, or witnesses that `{u,w'}` or `{v,w'}` is not a module for some
/// witness `w'` of `{u,v}`.
pub fn least_module(g: &Graph, u: &str, v: &str) -> Result<ModuleSet, CotreeError> {
    let (i, j) = pair(g, u, v)?;
    require_cograph(g)?;
    Ok(ModuleSet::from_mask(g, &least_module_mask(g, i, j), ModuleKind::LeastModule))
}

/// `S(u,v)`: every `w` with `w ∈ M(u,v)` or `v ∉ M(u,w)`.
pub fn least_strong_module(g: &Graph, u: &str, v: &str) -> Result<ModuleSet, CotreeError> {
    let (i, j) = pair(g, u, v)?;
    require_cograph(g)?;
    Ok(ModuleSet::from_mask(
        g,
        &least_strong_module_mask(g, i, j),
        ModuleKind::LeastStrongModule,
    ))
}

fn is_module(g: &Graph, set: u32) -> bool {
    let members: Vec<usize> = (0..g.order()).filter(|&i| set >> i & 1 == 1).collect();
    let Some(&first) = members.first() else {
        return true;
    };
    (0..g.order())
        .filter(|&w| set >> w & 1 == 0)
        .all(|w| members.iter().all(|&m| g.adjacent(w, m) == g.adjacent(w, first)))
}

/// Least module or least strong module containing `u` and `v`, computed
/// from the definitions: a witness closure for modules, and for strong
/// modules an enumeration of every vertex subset (limited to 12 vertices).
/// Works on arbitrary graphs.
pub fn module_closure_oracle(g: &Graph, u: &str, v: &str, strong: bool) -> Result<ModuleSet, CotreeError> {
    let (i, j) = pair(g, u, v)?;
    let n = g.order();
    if !strong {
        let mut inside = vec![false; n];
        inside[i] = true;
        inside[j] = true;
        loop {
            let members: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
            let grow: Vec<usize> = (0..n)
                .filter(|&w| !inside[w])
                .filter(|&w| {
                    members.iter().any(|&x| g.adjacent(w, x)) && members.iter().any(|&y| !g.adjacent(w, y))
                })
                .collect();
            if grow.is_empty() {
                return Ok(ModuleSet::from_mask(g, &inside, ModuleKind::LeastModule));
            }
            grow.into_iter().for_each(|w| inside[w] = true);
        }
    }
    if n > 12 {
        return Err(CotreeError::TooLarge(n));
    }
    let modules: Vec<u32> = (1u32..1 << n).filter(|&s| is_module(g, s)).collect();
    let strong = |x: u32| {
        modules
            .iter()
            .all(|&y| x & y == 0 || x & y == x || x & y == y)
    };
    let need = 1u32 << i | 1 << j;
    let best = modules
        .iter()
        .filter(|&&m| m & need == need && strong(m))
        .min_by_key(|m| m.count_ones())
        .copied()
        .expect("the full vertex set is a strong module");
    let mask: Vec<bool> = (0..n).map(|x| best >> x & 1 == 1).collect();
    Ok(ModuleSet::from_mask(g, &mask, ModuleKind::LeastStrongModule))
}

/// `M(u,v)` read off the cotree: all `w` whose meet with `u` or with `v`
/// lies strictly below `u ∧ v`.
pub fn module_from_meets(tree: &Cotree, u: &str, v: &str) -> Result<Vec<String>, CotreeError> {
    let it = IndexedTree::new(tree);
    let lu = it.leaf(u).ok_or_else(|| CotreeError::UnknownVertex(u.to_string()))?;
    let lv = it.leaf(v).ok_or_else(|| CotreeError::UnknownVertex(v.to_string()))?;
    if lu == lv {
        return Err(CotreeError::SameVertex(u.to_string()));
    }
    let m = it.meet(lu, lv);
    let below = |a: usize, b: usize| {
        let x = it.meet(a, b);
        x != m && it.is_ancestor_or_self(m, x)
    };
    Ok(tree
        .leaves()
        .into_iter()
        .filter(|w| {
            let lw = it.leaf(w).expect("leaf of the tree");
            below(lw, lu) || below(lw, lv)
        })
        .map(str::to_string)
        .collect())
}

/// Rebuilds the decomposition tree from the graph alone: internal nodes are
/// the distinct sets `S(u,v)` over pairs `u ≠ v`, ordered by reverse
/// inclusion; a class is labelled by whether its generating pair is an
/// edge; each vertex hangs below the least `S`-set containing it.
pub fn interpret_tree_from_graph(g: &Graph) -> Result<Cotree, CotreeError> {
    require_cograph(g)?;
    let n = g.order();
    if n == 1 {
        return Ok(Cotree::Leaf(g.name(0).to_string()));
    }
    // S-set (as a sorted member list) -> label of its generating pairs
    let mut classes: BTreeMap<Vec<usize>, Label> = BTreeMap::new();
    for u in 0..n {
        for v in u + 1..n {
            let mask = least_strong_module_mask(g, u, v);
            let set: Vec<usize> = (0..n).filter(|&w| mask[w]).collect();
            let label = Label::from_adjacent(g.adjacent(u, v));
            let prev = classes.insert(set, label);
            debug_assert!(prev.is_none_or(|p| p == label), "pairs in one class share their meet");
        }
    }
    let sets: Vec<(Vec<usize>, Label)> = classes.into_iter().collect();
    let contains = |big: &[usize], small: &[usize]| small.iter().all(|x| big.binary_search(x).is_ok());
    // parent of a set: the smallest strictly larger set containing it
    let parent_of = |members: &[usize], skip: Option<usize>| -> Option<usize> {
        sets.iter()
            .enumerate()
            .filter(|(k, (s, _))| Some(*k) != skip && s.len() > members.len() && contains(s, members))
            .min_by_key(|(_, (s, _))| s.len())
            .map(|(k, _)| k)
    };
    let mut kids: Vec<Vec<Cotree>> = vec![Vec::new(); sets.len()];
    let mut internal_kids: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
    let mut root = None;
    for (k, (s, _)) in sets.iter().enumerate() {
        match parent_of(s, Some(k)) {
            Some(p) => internal_kids[p].push(k),
            None => root = Some(k),
        }
    }
    for w in 0..n {
        let home = sets
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| s.binary_search(&w).is_ok())
            .min_by_key(|(_, (s, _))| s.len())
            .map(|(k, _)| k)
            .expect("the full vertex set contains every vertex");
        kids[home].push(Cotree::Leaf(g.name(w).to_string()));
    }
    fn build(k: usize, sets: &[(Vec<usize>, Label)], kids: &mut [Vec<Cotree>], internal: &[Vec<usize>]) -> Cotree {
        let mut children = std::mem::take(&mut kids[k]);
        for &c in &internal[k] {
            children.push(build(c, sets, kids, internal));
        }
        Cotree::Node(sets[k].1, children)
    }
    let root = root.expect("a largest S-set exists");
    Ok(build(root, &sets, &mut kids, &internal_kids).normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn two_k2() -> Graph {
        Graph::new(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]).unwrap()
    }

    fn k2() -> Graph {
        Graph::new(&["a", "b"], &[("a", "b")]).unwrap()
    }

    fn members(m: ModuleSet) -> Vec<String> {
        m.members
    }

    #[test]
    fn least_module_examples() {
        assert_eq!(members(least_module(&p3(), "a", "c").unwrap()), ["a", "c"]);
        assert_eq!(members(least_module(&p3(), "a", "b").unwrap()), ["a", "b", "c"]);
        assert_eq!(members(least_module(&k2(), "a", "b").unwrap()), ["a", "b"]);
    }

    #[test]
    fn least_strong_module_examples() {
        assert_eq!(members(least_strong_module(&p3(), "a", "c").unwrap()), ["a", "c"]);
        assert_eq!(
            members(least_strong_module(&two_k2(), "a", "c").unwrap()),
            ["a", "b", "c", "d"]
        );
        assert_eq!(members(least_strong_module(&k2(), "a", "b").unwrap()), ["a", "b"]);
    }

    #[test]
    fn module_errors() {
        assert_eq!(least_module(&p3(), "a", "a"), Err(CotreeError::SameVertex("a".into())));
        assert_eq!(least_module(&p3(), "a", "z"), Err(CotreeError::UnknownVertex("z".into())));
        let p4 = Graph::path(4).unwrap();
        assert!(matches!(least_module(&p4, "g0", "g1"), Err(CotreeError::NotCograph { .. })));
        assert!(matches!(least_strong_module(&p4, "g0", "g1"), Err(CotreeError::NotCograph { .. })));
        assert_eq!(
            module_closure_oracle(&Graph::empty(13), "g0", "g1", true),
            Err(CotreeError::TooLarge(13))
        );
        // the plain closure has no size limit
        assert!(module_closure_oracle(&Graph::empty(13), "g0", "g1", false).is_ok());
    }

    #[test]
    fn oracles_match_formulas_on_small_examples() {
        for (g, strong) in [(p3(), false), (two_k2(), true), (two_k2(), false), (p3(), true)] {
            for u in g.names() {
                for v in g.names() {
                    if u == v {
                        continue;
                    }
                    let formula = if strong {
                        least_strong_module(&g, u, v).unwrap()
                    } else {
                        least_module(&g, u, v).unwrap()
                    };
                    assert_eq!(formula, module_closure_oracle(&g, u, v, strong).unwrap());
                }
            }
        }
        for strong in [false, true] {
            assert_eq!(
                members(module_closure_oracle(&k2(), "a", "b", strong).unwrap()),
                ["a", "b"]
            );
        }
    }

    #[test]
    fn meet_characterization_on_p3() {
        let t = decompose(&p3()).unwrap();
        assert_eq!(module_from_meets(&t, "a", "c").unwrap(), ["a", "c"]);
        let mut m = module_from_meets(&t, "a", "b").unwrap();
        m.sort();
        assert_eq!(m, ["a", "b", "c"]);
    }

    #[test]
    fn interpreted_tree_examples() {
        assert_eq!(interpret_tree_from_graph(&k2()).unwrap().to_string(), "(1 a b)");
        for g in [p3(), Graph::cycle(4).unwrap(), two_k2()] {
            assert_eq!(interpret_tree_from_graph(&g).unwrap(), decompose(&g).unwrap());
        }
        assert!(matches!(
            interpret_tree_from_graph(&Graph::path(4).unwrap()),
            Err(CotreeError::NotCograph { .. })
        ));
    }
}
