use std::collections::HashSet;
use std::sync::OnceLock;

use freegraph::canon::graph_certificate;
use freegraph::cotree::{
    interpret_tree_from_graph, least_module, least_strong_module, module_closure_oracle, Cotree, IndexedTree,
};
use freegraph::embedding::{cograph_induced_via_trees, delete_vertex_cotree, label_meet_embed};
use freegraph::enumerate::cotrees_with_leaves;
use freegraph::{decompose, find_induced_embedding, is_isomorphic, Graph, VertexMap};
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::fresh(n, pairs.zip(bits).filter(|(_, &b)| b).map(|(p, _)| p))
}

fn any_graph(max: usize) -> impl Strategy<Value = Graph> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits)))
}

fn cotrees_upto_7() -> &'static [Cotree] {
    static ALL: OnceLock<Vec<Cotree>> = OnceLock::new();
    ALL.get_or_init(|| (1..=7).flat_map(cotrees_with_leaves).collect())
}

fn any_cotree() -> impl Strategy<Value = Cotree> {
    prop::sample::select(cotrees_upto_7())
}

fn has_p4(g: &Graph) -> bool {
    let n = g.order();
    (0..n).any(|a| {
        (0..n).any(|b| {
            (0..n).any(|c| {
                (0..n).any(|d| {
                    [a, b, c, d].iter().collect::<HashSet<_>>().len() == 4
                        && g.adjacent(a, b)
                        && g.adjacent(b, c)
                        && g.adjacent(c, d)
                        && !g.adjacent(a, c)
                        && !g.adjacent(b, d)
                        && !g.adjacent(a, d)
                })
            })
        })
    })
}

/// Renames vertex `i` to `p{perm[i]}` and lists the vertices in that order.
fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let names: Vec<String> = (0..g.order()).map(|p| format!("p{p}")).collect();
    let edges: Vec<(String, String)> = g
        .edges()
        .into_iter()
        .map(|(i, j)| (format!("p{}", perm[i]), format!("p{}", perm[j])))
        .collect();
    Graph::new(&names, &edges).unwrap()
}

fn any_permuted_graph(max: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    any_graph(max).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn decompose_succeeds_iff_p4_free(g in any_graph(7)) {
        let ok = decompose(&g).is_ok();
        prop_assert_eq!(ok, !has_p4(&g));
        if let Err(freegraph::CotreeError::NotCograph { witness }) = decompose(&g) {
            // the witness is itself an induced P4
            let idx: Vec<usize> = witness.iter().map(|w| g.index_of(w).unwrap()).collect();
            prop_assert!(has_p4(&g.induced(&idx)));
        }
    }

    #[test]
    fn realize_inverts_decompose(t in any_cotree()) {
        let g = t.realize().unwrap();
        let back = decompose(&g).unwrap();
        prop_assert_eq!(back.canonical_code().unwrap(), t.canonical_code().unwrap());
        prop_assert!(back.is_valid());
    }

    #[test]
    fn complement_flips_every_label(t in any_cotree()) {
        let g = t.realize().unwrap();
        let flipped = decompose(&g.complement()).unwrap();
        let expected: String = t.code().chars().map(|c| match c { '0' => '1', '1' => '0', c => c }).collect();
        prop_assert_eq!(flipped.code(), expected);
    }

    #[test]
    fn relabelling_preserves_isomorphism_and_certificates((g, perm) in any_permuted_graph(7)) {
        let h = permuted(&g, &perm);
        let iso = is_isomorphic(&g, &h);
        prop_assert!(iso.is_some());
        prop_assert!(iso.unwrap().is_isomorphism(&g, &h));
        prop_assert_eq!(graph_certificate(&g), graph_certificate(&h));
    }

    #[test]
    fn certificates_decide_isomorphism(g in any_graph(6), h in any_graph(6)) {
        let same = graph_certificate(&g) == graph_certificate(&h);
        prop_assert_eq!(same, is_isomorphic(&g, &h).is_some());
    }

    #[test]
    fn embedding_witness_is_induced(f in any_graph(4), g in any_graph(7)) {
        if let Some(m) = find_induced_embedding(&f, &g, &VertexMap::new()).unwrap() {
            prop_assert!(m.is_induced_embedding(&f, &g));
        }
        // complement symmetry
        let direct = find_induced_embedding(&f, &g, &VertexMap::new()).unwrap().is_some();
        let flipped = find_induced_embedding(&f.complement(), &g.complement(), &VertexMap::new()).unwrap().is_some();
        prop_assert_eq!(direct, flipped);
    }

    #[test]
    fn tree_embedding_matches_graph_embedding(s in any_cotree(), t in any_cotree()) {
        let (gs, gt) = (s.realize().unwrap(), t.realize().unwrap());
        let via_trees = cograph_induced_via_trees(&gs, &gt).unwrap();
        let direct = find_induced_embedding(&gs, &gt, &VertexMap::new()).unwrap().is_some();
        prop_assert_eq!(via_trees, direct);
        if let Some(e) = label_meet_embed(&s, &t).unwrap() {
            prop_assert!(e.meet_labels_checked);
            let leaves = e.leaf_map(&s, &t);
            prop_assert!(leaves.is_induced_embedding(&gs, &gt));
            // node map is an order embedding
            let (si, ti) = (IndexedTree::new(&s), IndexedTree::new(&t));
            for &(a, fa) in &e.map {
                for &(b, fb) in &e.map {
                    prop_assert_eq!(si.is_ancestor_or_self(a, b), ti.is_ancestor_or_self(fa, fb));
                }
            }
        }
    }

    #[test]
    fn deletion_matches_decomposition(t in any_cotree(), pick in any::<prop::sample::Index>()) {
        prop_assume!(t.leaf_count() >= 2);
        let leaves: Vec<String> = t.leaves().into_iter().map(String::from).collect();
        let v = &leaves[pick.index(leaves.len())];
        let out = delete_vertex_cotree(&t, v).unwrap();
        let g = t.realize().unwrap().remove_vertex(v).unwrap();
        prop_assert!(out.is_valid());
        prop_assert_eq!(out.canonical_code().unwrap(), decompose(&g).unwrap().canonical_code().unwrap());
        let mut got: Vec<&str> = out.leaves();
        got.sort_unstable();
        let mut want: Vec<&str> = leaves.iter().map(String::as_str).filter(|l| l != v).collect();
        want.sort_unstable();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn modules_are_modules(t in any_cotree(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let g = t.realize().unwrap();
        prop_assume!(g.order() >= 2);
        let (i, j) = (a.index(g.order()), b.index(g.order()));
        prop_assume!(i != j);
        let (u, v) = (g.name(i), g.name(j));
        let m = least_module(&g, u, v).unwrap();
        let s = least_strong_module(&g, u, v).unwrap();
        prop_assert_eq!(&m.members, &module_closure_oracle(&g, u, v, false).unwrap().members);
        prop_assert_eq!(&s.members, &module_closure_oracle(&g, u, v, true).unwrap().members);
        prop_assert!(m.members.iter().all(|x| s.contains(x)));
        for outside in g.names().iter().filter(|x| !m.contains(x)) {
            let seen: HashSet<bool> = m.members.iter().map(|x| g.adjacent_names(x, outside).unwrap()).collect();
            prop_assert!(seen.len() <= 1);
        }
    }

    #[test]
    fn interpretation_agrees_with_decomposition(t in any_cotree()) {
        let g = t.realize().unwrap();
        prop_assert_eq!(interpret_tree_from_graph(&g).unwrap().canonical_code().unwrap(), t.canonical_code().unwrap());
    }
}
