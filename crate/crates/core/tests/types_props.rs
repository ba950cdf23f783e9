use freegraph::types::{enumerate_extensions, eval_existential, phi_formula, type_fragment, ConstantedGraph};
use freegraph::{find_induced_embedding, is_isomorphic, Graph, VertexMap};
use proptest::prelude::*;

/// Graph on `c0..c{k-1}` (constants) followed by `v0..`, from an edge mask.
fn build(k: usize, n: usize, bits: &[bool]) -> ConstantedGraph {
    let names: Vec<String> = (0..n).map(|i| if i < k { format!("c{i}") } else { format!("v{i}") }).collect();
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    let edges: Vec<(String, String)> = pairs
        .zip(bits)
        .filter(|(_, b)| **b)
        .map(|((i, j), _)| (names[i].clone(), names[j].clone()))
        .collect();
    let g = Graph::new(&names, &edges).unwrap();
    ConstantedGraph::new(g, names[..k].to_vec()).unwrap()
}

fn any_constanted(k: usize, max: usize) -> impl Strategy<Value = ConstantedGraph> {
    (k.max(1)..=max).prop_flat_map(move |n| prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| build(k, n, &bits)))
}

/// An extension and a target over the same base: the edges among the
/// constants of the target are copied from the extension.
fn pair(max: usize) -> impl Strategy<Value = (ConstantedGraph, ConstantedGraph)> {
    (0usize..=2).prop_flat_map(move |k| {
        (any_constanted(k, max), any_constanted(k, max)).prop_map(move |(h, t)| {
            let n = t.graph.order();
            let bits: Vec<bool> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| if j < k { h.graph.adjacent(i, j) } else { t.graph.adjacent(i, j) })
                .collect();
            (h, build(k, n, &bits))
        })
    })
}

/// Number of integer partitions of `n`.
fn partitions(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

fn is_union_of_cliques(g: &Graph) -> bool {
    g.components()
        .iter()
        .all(|c| c.iter().all(|&a| c.iter().all(|&b| a == b || g.adjacent(a, b))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn formula_holds_iff_extension_embeds((h, target) in pair(6)) {
        let base = h.constant_part();
        let phi = phi_formula(&h, &base).unwrap();
        let by_formula = eval_existential(&phi, &target).unwrap();
        // constants map to themselves
        let fixed = VertexMap::from_pairs(h.constants.iter().map(|c| (c.clone(), c.clone())));
        let by_search = find_induced_embedding(&h.graph, &target.graph, &fixed).unwrap().is_some();
        prop_assert_eq!(by_formula, by_search);
    }

    #[test]
    fn fragments_grow_with_the_target(small in any_constanted(1, 5), extra in prop::collection::vec(any::<bool>(), 6)) {
        // add one vertex to `small`, adjacent per `extra`
        let n = small.graph.order();
        let mut names = small.graph.names().to_vec();
        names.push("new".into());
        let mut edges: Vec<(String, String)> =
            small.graph.edge_names().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        edges.extend((0..n).filter(|&i| extra[i]).map(|i| (names[i].clone(), "new".to_string())));
        let big = ConstantedGraph::new(Graph::new(&names, &edges).unwrap(), small.constants.clone()).unwrap();
        let forbidden = Graph::complete(n + 2);
        for k in 0..=3 {
            let a = type_fragment(&small, &forbidden, k).unwrap();
            let b = type_fragment(&big, &forbidden, k).unwrap();
            prop_assert!(a.iter().all(|f| b.contains(f)));
        }
    }
}

#[test]
fn p3_free_extensions_are_clique_unions() {
    let p3 = Graph::path(3).unwrap();
    let empty = ConstantedGraph::plain(Graph::empty(0));
    for k in 0..=5 {
        let exts = enumerate_extensions(&empty, &p3, k).unwrap();
        let expected: usize = (0..=k).map(partitions).sum();
        assert_eq!(exts.len(), expected, "k={k}");
        assert!(exts.iter().all(|e| is_union_of_cliques(&e.graph)));
        for (i, a) in exts.iter().enumerate() {
            for b in &exts[i + 1..] {
                assert!(is_isomorphic(&a.graph, &b.graph).is_none());
            }
        }
    }
}

#[test]
fn extensions_are_free_and_distinct_over_constants() {
    let c4 = Graph::cycle(4).unwrap();
    let base = build(2, 2, &[true]);
    let exts = enumerate_extensions(&base, &c4, 3).unwrap();
    for e in &exts {
        assert!(freegraph::is_free(&e.graph, &c4));
        assert_eq!(e.constants, base.constants);
    }
    for (i, a) in exts.iter().enumerate() {
        for b in &exts[i + 1..] {
            let pin = VertexMap::from_pairs([("c0", "c0"), ("c1", "c1")]);
            let same = a.graph.order() == b.graph.order()
                && find_induced_embedding(&a.graph, &b.graph, &pin).unwrap().is_some();
            assert!(!same, "{:?} and {:?}", a.graph, b.graph);
        }
    }
}

#[test]
fn cycle_fragments_tell_cycles_apart() {
    let c3 = Graph::cycle(3).unwrap();
    let c4 = ConstantedGraph::plain(Graph::cycle(4).unwrap());
    let c5 = ConstantedGraph::plain(Graph::cycle(5).unwrap());
    let f4 = type_fragment(&c4, &c3, 5).unwrap();
    let f5 = type_fragment(&c5, &c3, 5).unwrap();
    assert_ne!(f4, f5);
    // the 4-cycle formula is in the first fragment only, the 5-cycle one in the second
    let holds = |phi, t: &ConstantedGraph| eval_existential(phi, t).unwrap();
    assert!(f4.iter().any(|phi| phi.bound_vars() == 4 && !holds(phi, &c5)));
    assert!(f5.iter().any(|phi| phi.bound_vars() == 5 && !holds(phi, &c4)));
}
