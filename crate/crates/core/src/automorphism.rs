//! Automorphism groups of small graphs, and the argument that no cograph has
//! automorphism group ℤ₃: any automorphism of order three yields one of
//! order two.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::cotree::{decompose, Cotree, CotreeError, IndexedTree};
use crate::enumerate::cotrees_with_leaves;
use crate::graph::{Graph, VertexMap};
use crate::search::automorphism_perms;

/// Largest graph whose automorphisms are listed one by one.
pub const MAX_LISTED: usize = 10;
/// Largest size accepted by [`check_no_z3`].
pub const MAX_NO_Z3: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("{0} vertices is more than this operation accepts")]
    TooLarge(usize),
    #[error("not a cograph; witness: {}", .witness.join(" "))]
    NotCograph { witness: Vec<String> },
    #[error("not an automorphism of the graph")]
    NotAutomorphism,
    #[error("the automorphism does not have order 3")]
    NotOrderThree,
    #[error("the three pairwise meets of the 3-cycle differ")]
    MeetCollapse,
}

/// A permutation of the vertex indices of some fixed graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i]` is the image of vertex `i`; must be a bijection.
    pub fn new(images: Vec<usize>) -> Option<Permutation> {
        let mut hit = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut hit[x], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_vertex_map(g: &Graph, f: &VertexMap) -> Option<Permutation> {
        if f.len() != g.order() {
            return None;
        }
        let images = f.to_indices(g, g).ok()?.into_iter().collect::<Option<Vec<_>>>()?;
        Permutation::new(images)
    }

    pub fn to_vertex_map(&self, g: &Graph) -> VertexMap {
        VertexMap::from_indices(g, g, &self.images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.then(self);
            k += 1;
        }
        k
    }

    pub fn is_automorphism(&self, g: &Graph) -> bool {
        self.images.len() == g.order()
            && g.edges().into_iter().all(|(i, j)| g.adjacent(self.images[i], self.images[j]))
    }

    /// Nontrivial cycles, each starting at its least vertex, ordered by it.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation with vertex names, `()` for the identity.
    pub fn cycle_notation(&self, g: &Graph) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ")))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All automorphisms of `g`, in lexicographic order of image lists.
pub fn automorphisms(g: &Graph) -> Result<Vec<Permutation>, AutError> {
    if g.order() > MAX_LISTED {
        return Err(AutError::TooLarge(g.order()));
    }
    Ok(automorphism_perms(g)
        .into_iter()
        .map(|images| Permutation { images })
        .collect())
}

/// The partition used by [`order3_to_order2`], as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order3Split {
    /// The 3-cycle `a → b → c → a` of `f` that was used.
    pub abc: [usize; 3],
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
}

/// From an automorphism `f` of order 3 of a cograph, builds an involution:
/// take the first 3-cycle `(a b c)` of `f` and the meet `m` of `a`, `b`, `c`
/// in the cotree; let `A`, `B`, `C` be the leaves under the children of `m`
/// holding `a`, `b`, `c` and `D` everything else. The result is `f` on `A`,
/// `f⁻¹` on `B` and the identity elsewhere.
pub fn order3_to_order2(g: &Graph, f: &Permutation) -> Result<(Permutation, Order3Split), AutError> {
    if f.len() != g.order() || !f.is_automorphism(g) {
        return Err(AutError::NotAutomorphism);
    }
    if f.is_identity() || !f.then(f).then(f).is_identity() {
        return Err(AutError::NotOrderThree);
    }
    let tree = decompose(g).map_err(|e| match e {
        CotreeError::NotCograph { witness } => AutError::NotCograph { witness },
        other => unreachable!("a nonempty graph decomposes unless it has a P4: {other}"),
    })?;
    let t = IndexedTree::new(&tree);
    let a = f.cycles().into_iter().find(|c| c.len() == 3).expect("order 3 has a 3-cycle")[0];
    let (b, c) = (f.image(a), f.image(f.image(a)));
    let leaf = |v: usize| t.leaf(g.name(v)).expect("cotree leaves are the vertices");
    let (la, lb, lc) = (leaf(a), leaf(b), leaf(c));
    let m = t.meet(la, lb);
    if t.meet(lb, lc) != m || t.meet(lc, la) != m {
        return Err(AutError::MeetCollapse);
    }
    let (ca, cb, cc) = (t.child_toward(m, la), t.child_toward(m, lb), t.child_toward(m, lc));
    let mut split = Order3Split {
        abc: [a, b, c],
        a: Vec::new(),
        b: Vec::new(),
        c: Vec::new(),
        d: Vec::new(),
    };
    let inv = f.inverse();
    let mut images: Vec<usize> = (0..g.order()).collect();
    for (v, image) in images.iter_mut().enumerate() {
        let lv = leaf(v);
        if t.is_ancestor_or_self(ca, lv) {
            split.a.push(v);
            *image = f.image(v);
        } else if t.is_ancestor_or_self(cb, lv) {
            split.b.push(v);
            *image = inv.image(v);
        } else if t.is_ancestor_or_self(cc, lv) {
            split.c.push(v);
        } else {
            split.d.push(v);
        }
    }
    let out = Permutation { images };
    debug_assert!(out.is_automorphism(g) && !out.is_identity() && out.then(&out).is_identity());
    Ok((out, split))
}

/// Order of the label-preserving automorphism group of a cotree: at each
/// node, isomorphic children may be permuted freely.
pub fn cotree_automorphism_count(t: &Cotree) -> u128 {
    let mut classes: HashMap<String, u128> = HashMap::new();
    let mut product: u128 = 1;
    for c in t.children() {
        *classes.entry(c.code()).or_default() += 1;
        product *= cotree_automorphism_count(c);
    }
    for k in classes.values() {
        product *= (1..=*k).product::<u128>();
    }
    product
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub n: usize,
    pub cographs: usize,
    /// Cographs whose automorphism group has order 3.
    pub z3: usize,
    /// Cographs with trivial automorphism group.
    pub trivial: usize,
    pub max_group_order: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoZ3Report {
    pub sizes: Vec<SizeReport>,
    /// Cotrees of any cographs found with group order 3.
    pub z3_witnesses: Vec<Cotree>,
}

impl NoZ3Report {
    pub fn z3_total(&self) -> usize {
        self.sizes.iter().map(|s| s.z3).sum()
    }
}

/// Examines every cograph on `1..=max_n` vertices and counts those whose
/// automorphism group has order 3 (which would make it ℤ₃).
pub fn check_no_z3(max_n: usize) -> Result<NoZ3Report, AutError> {
    if max_n > MAX_NO_Z3 {
        return Err(AutError::TooLarge(max_n));
    }
    let mut report = NoZ3Report {
        sizes: Vec::new(),
        z3_witnesses: Vec::new(),
    };
    for n in 1..=max_n {
        let trees = cotrees_with_leaves(n);
        let orders: Vec<u128> = trees.par_iter().map(cotree_automorphism_count).collect();
        let mut size = SizeReport {
            n,
            cographs: trees.len(),
            z3: 0,
            trivial: 0,
            max_group_order: 0,
        };
        for (t, &o) in trees.iter().zip(&orders) {
            size.max_group_order = size.max_group_order.max(o);
            match o {
                1 => size.trivial += 1,
                3 => {
                    size.z3 += 1;
                    report.z3_witnesses.push(t.clone());
                }
                _ => {}
            }
        }
        report.sizes.push(size);
    }
    Ok(report)
}
