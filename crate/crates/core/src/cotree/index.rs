use std::collections::HashMap;

use super::{Cotree, Label};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Internal(Label),
    Leaf(String),
}

#[derive(Debug, Clone)]
struct Slot {
    parent: Option<usize>,
    children: Vec<usize>,
    kind: NodeKind,
    depth: usize,
    /// One past the last preorder id in this subtree.
    end: usize,
    leaves: usize,
}

/// Arena view of a cotree with preorder node ids (the root is 0), used for
/// ancestor and meet queries.
#[derive(Debug, Clone)]
pub struct IndexedTree {
    slots: Vec<Slot>,
    leaf_ids: HashMap<String, usize>,
}

impl IndexedTree {
    pub fn new(tree: &Cotree) -> IndexedTree {
        let mut it = IndexedTree {
            slots: Vec::with_capacity(tree.node_count()),
            leaf_ids: HashMap::new(),
        };
        it.push(tree, None, 0);
        it
    }

    fn push(&mut self, t: &Cotree, parent: Option<usize>, depth: usize) -> usize {
        let id = self.slots.len();
        let kind = match t {
            Cotree::Leaf(name) => {
                self.leaf_ids.insert(name.clone(), id);
                NodeKind::Leaf(name.clone())
            }
            Cotree::Node(l, _) => NodeKind::Internal(*l),
        };
        self.slots.push(Slot {
            parent,
            children: Vec::new(),
            kind,
            depth,
            end: id + 1,
            leaves: 0,
        });
        let mut leaves = usize::from(t.is_leaf());
        for c in t.children() {
            let cid = self.push(c, Some(id), depth + 1);
            self.slots[id].children.push(cid);
            leaves += self.slots[cid].leaves;
        }
        self.slots[id].end = self.slots.len();
        self.slots[id].leaves = leaves;
        id
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn kind(&self, id: usize) -> &NodeKind {
        &self.slots[id].kind
    }

    pub fn label(&self, id: usize) -> Option<Label> {
        match self.slots[id].kind {
            NodeKind::Internal(l) => Some(l),
            NodeKind::Leaf(_) => None,
        }
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        matches!(self.slots[id].kind, NodeKind::Leaf(_))
    }

    pub fn parent(&self, id: usize) -> Option<usize> {
        self.slots[id].parent
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.slots[id].children
    }

    pub fn depth(&self, id: usize) -> usize {
        self.slots[id].depth
    }

    /// Number of leaves in the subtree at `id`.
    pub fn leaves_below(&self, id: usize) -> usize {
        self.slots[id].leaves
    }

    /// Number of nodes in the subtree at `id`.
    pub fn subtree_size(&self, id: usize) -> usize {
        self.slots[id].end - id
    }

    pub fn leaf(&self, name: &str) -> Option<usize> {
        self.leaf_ids.get(name).copied()
    }

    pub fn leaf_name(&self, id: usize) -> Option<&str> {
        match &self.slots[id].kind {
            NodeKind::Leaf(n) => Some(n),
            NodeKind::Internal(_) => None,
        }
    }

    /// Leaf names in the subtree at `id`.
    pub fn leaf_names_below(&self, id: usize) -> Vec<&str> {
        (id..self.slots[id].end).filter_map(|x| self.leaf_name(x)).collect()
    }

    /// `a` is an ancestor of `b` or equal to it (`a ⪯ b`, root least).
    pub fn is_ancestor_or_self(&self, a: usize, b: usize) -> bool {
        a <= b && b < self.slots[a].end
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.is_ancestor_or_self(a, b) || self.is_ancestor_or_self(b, a)
    }

    /// Deepest common ancestor.
    pub fn meet(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth(a) > self.depth(b) {
            a = self.parent(a).expect("deeper node has a parent");
        }
        while self.depth(b) > self.depth(a) {
            b = self.parent(b).expect("deeper node has a parent");
        }
        while a != b {
            a = self.parent(a).expect("distinct nodes below the root");
            b = self.parent(b).expect("distinct nodes below the root");
        }
        a
    }

    /// The child of `anc` on the way down to `node`; `anc` must be a strict
    /// ancestor.
    pub fn child_toward(&self, anc: usize, node: usize) -> usize {
        *self
            .children(anc)
            .iter()
            .find(|&&c| self.is_ancestor_or_self(c, node))
            .expect("anc is a strict ancestor of node")
    }
}
