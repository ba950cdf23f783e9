use std::fmt;

use super::{Cotree, CotreeError, Label};
use crate::graph::fresh_name;

/// An unlabelled finite rooted tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    pub children: Vec<RootedTree>,
}

impl RootedTree {
    pub fn single() -> RootedTree {
        RootedTree { children: Vec::new() }
    }

    pub fn with_children(children: Vec<RootedTree>) -> RootedTree {
        RootedTree { children }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(RootedTree::node_count).sum::<usize>()
    }

    /// AHU code: `(` + sorted child codes + `)`. Equal iff isomorphic.
    pub fn code(&self) -> String {
        let mut codes: Vec<String> = self.children.iter().map(RootedTree::code).collect();
        codes.sort();
        format!("({})", codes.concat())
    }

    /// Parses the nested-parentheses form, e.g. `(()(()))`.
    pub fn parse(text: &str) -> Result<RootedTree, CotreeError> {
        let mut stack: Vec<Vec<RootedTree>> = Vec::new();
        let mut done: Option<RootedTree> = None;
        for (li, line) in text.lines().enumerate() {
            for (ci, ch) in line.chars().enumerate() {
                let err = |msg: &str| CotreeError::Parse {
                    line: li + 1,
                    col: ci + 1,
                    msg: msg.to_string(),
                };
                match ch {
                    '(' if done.is_none() => stack.push(Vec::new()),
                    ')' => {
                        let children = stack.pop().ok_or_else(|| err("unexpected `)`"))?;
                        let t = RootedTree { children };
                        match stack.last_mut() {
                            Some(parent) => parent.push(t),
                            None => done = Some(t),
                        }
                    }
                    c if c.is_whitespace() => {}
                    _ => return Err(err("expected `(` or `)`")),
                }
            }
        }
        match (done, stack.is_empty()) {
            (Some(t), true) => Ok(t),
            _ => Err(CotreeError::Parse {
                line: text.lines().count().max(1),
                col: 1,
                msg: "unbalanced parentheses".into(),
            }),
        }
    }

    /// Every rooted tree with exactly `n` nodes, one per isomorphism class.
    pub fn all_with_nodes(n: usize) -> Vec<RootedTree> {
        let mut by_size: Vec<Vec<RootedTree>> = vec![Vec::new(), vec![RootedTree::single()]];
        for size in 2..=n {
            let mut out = Vec::new();
            // child multisets as nondecreasing (size, index) sequences
            fn fill(
                left: usize,
                min: (usize, usize),
                by_size: &[Vec<RootedTree>],
                cur: &mut Vec<RootedTree>,
                out: &mut Vec<RootedTree>,
            ) {
                if left == 0 {
                    out.push(RootedTree::with_children(cur.clone()));
                    return;
                }
                for s in min.0..=left {
                    let start = if s == min.0 { min.1 } else { 0 };
                    for i in start..by_size[s].len() {
                        cur.push(by_size[s][i].clone());
                        fill(left - s, (s, i), by_size, cur, out);
                        cur.pop();
                    }
                }
            }
            fill(size - 1, (1, 0), &by_size, &mut Vec::new(), &mut out);
            by_size.push(out);
        }
        by_size.get(n).cloned().unwrap_or_default()
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for c in &self.children {
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Gives every node of `tree` `k` new leaf children and labels the
/// original nodes by depth parity, root 0. The original nodes become exactly
/// the internal nodes of the result, so non-isomorphic trees lift to
/// non-isomorphic cotrees.
pub fn tree_lift(tree: &RootedTree, k: usize) -> Result<Cotree, CotreeError> {
    if k < 2 {
        return Err(CotreeError::BadK(k));
    }
    fn go(t: &RootedTree, label: Label, k: usize, next: &mut usize) -> Cotree {
        let mut children: Vec<Cotree> = (0..k)
            .map(|_| {
                *next += 1;
                Cotree::Leaf(fresh_name(*next - 1))
            })
            .collect();
        children.extend(t.children.iter().map(|c| go(c, label.flip(), k, next)));
        Cotree::Node(label, children)
    }
    Ok(go(tree, Label::Union, k, &mut 0))
}
