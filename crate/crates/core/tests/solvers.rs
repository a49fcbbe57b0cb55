mod common;

use std::collections::BTreeSet;

use common::random_subcubic;
use fvs_core::cubic::solve_cubic;
use fvs_core::embed::{apply_merger, mergeable_triples};
use fvs_core::girth::{
    conjecture_gap_report, solve_planar_unweighted, solve_planar_weighted, trivial_baseline,
    MergerMode, SolverConfig, GAP_REPORT_MAX_N,
};
use fvs_core::graph::{is_forest, is_two_connected, Graph};
use fvs_core::instances::{make_named, random_cubic_2connected, random_planar_girth};
use fvs_core::oracle::min_fvs;
use fvs_core::{BoundKind, PlaneGraph, RuleId};

#[test]
fn cubic_solver_on_small_subcubic_graphs_against_oracle() {
    let mut checked = 0;
    for seed in 0..3000 {
        let n = 4 + (seed % 11) as u32;
        let g = random_subcubic(n, 30, seed);
        if !is_two_connected(&g) {
            continue;
        }
        let cert = solve_cubic(&g).unwrap();
        assert!(cert.verify(&g).unwrap(), "seed {seed}");
        assert_eq!(cert.fallbacks, 0);
        let phi = min_fvs(&g).unwrap().phi;
        assert!(phi <= cert.size());
        checked += 1;
    }
    assert!(checked > 300, "only {checked} 2-connected samples");
}

#[test]
fn cubic_solver_uses_every_reduction_family() {
    let mut seen = BTreeSet::new();
    for seed in 0..400 {
        let g = random_cubic_2connected(12 + 2 * (seed % 40) as u32, seed).unwrap();
        let cert = solve_cubic(&g).unwrap();
        assert!(cert.verify(&g).unwrap());
        seen.extend(cert.trace.iter().map(|s| format!("{:?}", s.rule)));
    }
    for rule in [
        RuleId::Base,
        RuleId::Degree2,
        RuleId::AdjacentTriangles,
        RuleId::TriangleSquare,
        RuleId::TwoSquares,
        RuleId::Triangle,
        RuleId::Generic,
    ] {
        assert!(seen.contains(&format!("{rule:?}")), "{rule:?} never fired");
    }
}

#[test]
fn cubic_traces_designate_the_solution() {
    let g = random_cubic_2connected(40, 3).unwrap();
    let cert = solve_cubic(&g).unwrap();
    let designated: BTreeSet<_> = cert
        .trace
        .iter()
        .flat_map(|s| s.designated.iter().copied())
        .collect();
    assert!(cert.set.is_subset(&designated));
    assert!(cert.trace_json_lines().unwrap().lines().count() == cert.trace.len());
}

#[test]
fn planar_solver_modes_agree_on_validity() {
    for seed in 0..60 {
        for g in [3u32, 4, 6, 8] {
            let (graph, rot) = random_planar_girth(8 + (seed % 16) as u32, g, seed).unwrap();
            let pg = PlaneGraph::new(graph.clone(), rot).unwrap();
            for mode in [MergerMode::GuaranteedOnly, MergerMode::AnyNiceMerger] {
                let cfg = SolverConfig::new(g as u64).with_mode(mode).debug();
                let cert = solve_planar_weighted(&pg, &cfg).unwrap();
                assert!(cert.verify(&graph).unwrap());
                assert_eq!(cert.fallbacks, 0);
            }
        }
    }
}

#[test]
fn planar_trace_lists_reductions() {
    let pg = make_named("dodecahedron").unwrap().plane().unwrap();
    let cert = solve_planar_unweighted(&pg).unwrap();
    assert_eq!(cert.bound.kind, BoundKind::Planar4mOver3g);
    assert!(cert.trace.iter().any(|s| s.rule == RuleId::CubicCore));
}

#[test]
fn trivial_baseline_respects_its_bound() {
    for name in ["k4", "cube", "dodecahedron", "prism", "chain4", "c8"] {
        let pg = make_named(name).unwrap().plane().unwrap();
        let g = fvs_core::graph::girth(pg.graph()).finite().unwrap();
        let cert = trivial_baseline(&pg, g).unwrap();
        assert!(cert.verify(pg.graph()).unwrap(), "{name}");
        assert_eq!(cert.bound.kind, BoundKind::Trivial2mOverG);
    }
}

#[test]
fn theta_graph_merger_leaves_a_forest() {
    // Two poles joined by three paths of length two.
    let g = Graph::from_edges(&[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
    let pg = PlaneGraph::embedded(g).unwrap();
    let specs = mergeable_triples(&pg);
    assert!(!specs.is_empty());
    for spec in specs {
        let after = apply_merger(&pg, &spec).unwrap();
        assert!(is_forest(after.graph()));
        assert!(after.euler_holds());
    }
}

#[test]
fn gap_reports_on_cube_and_dodecahedron() {
    let cube = conjecture_gap_report(
        &make_named("cube").unwrap().plane().unwrap(),
        GAP_REPORT_MAX_N,
    )
    .unwrap();
    assert_eq!(cube.phi, 3);
    assert_eq!(cube.m_over_g.to_string(), "3");
    assert!(cube.optimum_within_m_over_g());
    let dodec = make_named("dodecahedron").unwrap().plane().unwrap();
    let r = conjecture_gap_report(&dodec, GAP_REPORT_MAX_N).unwrap();
    assert_eq!(
        (r.phi, r.m_over_g.to_string(), r.four_m_over_3g.to_string()),
        (6, "6".into(), "8".into())
    );
    assert!(r.planar_size <= 8 && r.trivial_size <= 12);
    assert!(conjecture_gap_report(&dodec, 10).is_err());
}
