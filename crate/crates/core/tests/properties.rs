mod common;

use std::collections::BTreeSet;

use common::{
    all_cycles, brute_edge_connectivity, brute_vertex_connectivity, brute_weighted_girth,
    random_graph, random_subcubic,
};
use fvs_core::graph::{
    bridges, connectivity_le3, cut_vertices, girth, is_connected, is_forest, two_edge_cuts,
    validate_fvs, weighted_girth, Edge, Girth, Graph, VertexId,
};
use fvs_core::instances::{format_graph, from_json, parse_graph, to_json, Instance};
use fvs_core::oracle::{min_fvs, min_fvs_naive};
use fvs_core::{embed, faces_of, Error};
use proptest::prelude::*;

fn graph_strategy(max_n: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0..=100u32, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, seed))
}

fn weighted_strategy(max_n: u32) -> impl Strategy<Value = Graph> {
    (graph_strategy(max_n), any::<u64>()).prop_map(|(g, seed)| {
        let mut g = g;
        for (i, e) in g.clone().edges().enumerate() {
            g.set_weight(e.0, e.1, (seed >> (i % 60)) % 4).unwrap();
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn girth_matches_cycle_enumeration(g in graph_strategy(9)) {
        let expected = all_cycles(&g).iter().map(|c| c.vertices.len() as u64).min();
        prop_assert_eq!(girth(&g).finite(), expected);
        prop_assert_eq!(is_forest(&g), expected.is_none());
    }

    #[test]
    fn weighted_girth_matches_cycle_enumeration(g in weighted_strategy(8)) {
        prop_assert_eq!(weighted_girth(&g).finite(), brute_weighted_girth(&g));
    }

    #[test]
    fn oracle_agrees_with_subset_search(g in graph_strategy(10)) {
        let r = min_fvs(&g).unwrap();
        prop_assert_eq!(r.phi, min_fvs_naive(&g).unwrap());
        prop_assert_eq!(r.a + r.phi, g.n());
        prop_assert!(validate_fvs(&g, &r.witness).unwrap());
    }

    #[test]
    fn connectivity_matches_brute_force(n in 2..=11u32, attempts in 0..40u32, seed in any::<u64>()) {
        let g = random_subcubic(n, attempts, seed);
        let c = connectivity_le3(&g);
        prop_assert_eq!(c.vertex, brute_vertex_connectivity(&g));
        prop_assert_eq!(c.edge, brute_edge_connectivity(&g));
        prop_assert_eq!(c.vertex, c.edge);
    }

    #[test]
    fn cut_vertices_and_bridges_match_brute_force(g in graph_strategy(9)) {
        let comps = |h: &Graph| fvs_core::graph::components(h).len();
        let base = comps(&g);
        let cuts: Vec<VertexId> = g
            .vertices()
            .filter(|&v| comps(&g.without_vertices(&[v])) > base)
            .collect();
        prop_assert_eq!(cut_vertices(&g), cuts);
        let expected: Vec<Edge> = g
            .edges()
            .filter(|e| {
                let mut h = g.clone();
                h.remove_edge(e.0, e.1).unwrap();
                comps(&h) > base
            })
            .collect();
        prop_assert_eq!(bridges(&g), expected);
    }

    #[test]
    fn two_edge_cuts_match_brute_force(n in 3..=10u32, p in 20..=70u32, seed in any::<u64>()) {
        let g = random_graph(n, p, seed);
        prop_assume!(is_connected(&g) && bridges(&g).is_empty());
        let es: Vec<Edge> = g.edges().collect();
        let mut expected = BTreeSet::new();
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                let mut h = g.clone();
                h.remove_edge(es[i].0, es[i].1).unwrap();
                h.remove_edge(es[j].0, es[j].1).unwrap();
                if !is_connected(&h) {
                    expected.insert((es[i], es[j]));
                }
            }
        }
        let found: BTreeSet<(Edge, Edge)> = two_edge_cuts(&g)
            .unwrap()
            .into_iter()
            .map(|c| (c.edges[0].min(c.edges[1]), c.edges[0].max(c.edges[1])))
            .collect();
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn embedding_is_valid_exactly_for_planar_inputs(g in graph_strategy(8)) {
        match embed(&g) {
            Ok(rot) => prop_assert!(faces_of(&g, &rot).is_ok()),
            Err(Error::NonPlanar) => {
                // Small non-planar graphs have a K5 or K3,3 subdivision, so
                // they need at least 9 edges and 5 vertices of degree >= 3.
                prop_assert!(g.m() >= 9);
                prop_assert!(g.vertices().filter(|&v| g.degree(v) >= 3).count() >= 5);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn text_and_json_round_trip(g in weighted_strategy(9), with_rot in any::<bool>()) {
        let mut inst = Instance::new(g.clone());
        if with_rot {
            inst.rotation = embed(&g).ok();
        }
        inst.girth = Some(girth(&g));
        let text = format_graph(&inst);
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(format_graph(&back), text);
        prop_assert_eq!(from_json(&to_json(&inst).unwrap()).unwrap(), inst);
    }
}

#[test]
fn infinite_girth_for_forests() {
    let g = Graph::from_edges(&[(0, 1), (1, 2), (1, 3)]).unwrap();
    assert_eq!(girth(&g), Girth::Infinite);
    assert!(all_cycles(&g).is_empty());
}
