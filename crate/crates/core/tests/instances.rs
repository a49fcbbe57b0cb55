use fvs_core::graph::{girth, is_two_connected, Girth};
use fvs_core::instances::{
    disjoint_cycles, make_named, outerplanar_chain, random_cubic_2connected, random_planar_girth,
    random_plane_weighted, read_graph, triangle_replace, write_graph,
};
use fvs_core::oracle::min_fvs;
use fvs_core::{faces_of, Error};

#[test]
fn named_sizes() {
    for (name, n, m) in [
        ("k4", 4, 6),
        ("cube", 8, 12),
        ("dodecahedron", 20, 30),
        ("petersen", 10, 15),
        ("prism", 6, 9),
        ("k33", 6, 9),
        ("c9", 9, 9),
        ("chain4", 12, 21),
    ] {
        let inst = make_named(name).unwrap();
        assert_eq!((inst.graph.n(), inst.graph.m()), (n, m), "{name}");
    }
}

#[test]
fn named_decycling_numbers_match_oracle() {
    for name in [
        "k4",
        "cube",
        "dodecahedron",
        "petersen",
        "prism",
        "k33",
        "c6",
        "chain3",
    ] {
        let inst = make_named(name).unwrap();
        let r = min_fvs(&inst.graph).unwrap();
        assert!(!r.node_budget_hit);
        assert_eq!(Some(r.phi), inst.phi, "{name}");
    }
}

#[test]
fn planar_named_instances_carry_embeddings() {
    for (name, faces) in [("k4", 4), ("cube", 6), ("dodecahedron", 12), ("prism", 5)] {
        let inst = make_named(name).unwrap();
        let rot = inst.rotation.expect("planar instance has a rotation");
        let (f, _) = faces_of(&inst.graph, &rot).unwrap();
        assert_eq!(f.len(), faces, "{name}");
    }
    assert!(make_named("k33").unwrap().rotation.is_none());
    assert!(matches!(
        make_named("tesseract"),
        Err(Error::UnknownName(_))
    ));
}

#[test]
fn chain_forest_number_is_two_thirds_of_n() {
    for k in 1..=6 {
        let g = outerplanar_chain(k);
        let r = min_fvs(&g).unwrap();
        assert_eq!(3 * r.a, 2 * g.n(), "k = {k}");
        assert_eq!(r.phi, k as usize);
    }
}

#[test]
fn triangle_replaced_petersen() {
    let h = triangle_replace(&make_named("petersen").unwrap().graph).unwrap();
    assert_eq!((h.n(), h.m()), (30, 45));
    assert!(h.is_cubic() && is_two_connected(&h));
    assert_eq!(min_fvs(&h).unwrap().phi, 10);
}

#[test]
fn triangle_replacement_preserves_two_connectivity() {
    for seed in 0..20 {
        let g = random_cubic_2connected(12 + 2 * (seed as u32 % 5), seed).unwrap();
        let h = triangle_replace(&g).unwrap();
        assert!(h.is_cubic() && is_two_connected(&h));
    }
}

#[test]
fn disjoint_cycles_oracle() {
    for k in 1..=4 {
        for g in 3..=6 {
            let h = disjoint_cycles(k, g).unwrap();
            assert_eq!((h.n(), h.m()), ((k * g) as usize, (k * g) as usize));
            assert_eq!(min_fvs(&h).unwrap().phi, k as usize);
        }
    }
    assert!(disjoint_cycles(0, 3).is_err());
    assert!(disjoint_cycles(2, 2).is_err());
}

#[test]
fn planar_girth_generator() {
    let (g3, _) = random_planar_girth(16, 3, 5).unwrap();
    assert!(g3.is_cubic(), "t = 0 leaves the cubic base");
    let (g9, rot) = random_planar_girth(16, 9, 5).unwrap();
    assert_eq!(g9.n(), g3.n() + 2 * g3.m());
    assert!(girth(&g9) >= Girth::Finite(9));
    assert!(faces_of(&g9, &rot).is_ok());
    assert_eq!(random_planar_girth(16, 9, 5).unwrap().0, g9);
    assert!(random_planar_girth(16, 2, 5).is_err());
}

#[test]
fn weighted_generator_meets_threshold() {
    for seed in 0..30 {
        let g = 3 + seed % 9;
        let pg = random_plane_weighted(10, g, 6, 25, seed).unwrap();
        match fvs_core::graph::weighted_girth(pg.graph()) {
            Girth::Finite(w) => assert!(w >= g),
            Girth::Infinite => {}
        }
    }
}

#[test]
fn file_round_trip() {
    let dir = std::env::temp_dir().join(format!("fvs-core-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cube.g");
    let cube = make_named("cube").unwrap();
    write_graph(&path, &cube).unwrap();
    assert_eq!(read_graph(&path).unwrap(), cube);
    assert!(matches!(
        read_graph(dir.join("missing.g")),
        Err(Error::Io(_))
    ));
    std::fs::remove_dir_all(&dir).unwrap();
}
