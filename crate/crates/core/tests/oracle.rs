mod common;

use std::time::Duration;

use common::naive::naive_chi2;
use psc_core::embed::EmbeddedGraph;
use psc_core::generators::{
    from_coordinates, gen_corpus, gen_cycle, gen_hub_triple, gen_wegner, k4, octahedron, path, star, CorpusSpec,
};
use psc_core::solvers::{exact_chi2, greedy_color, verify};

fn adjacency(g: &EmbeddedGraph) -> Vec<Vec<usize>> {
    g.vertices().map(|v| g.neighbors(v).to_vec()).collect()
}

fn chi2(g: &EmbeddedGraph) -> usize {
    let r = exact_chi2(g, Duration::from_secs(60)).unwrap();
    assert!(verify(g, &r.witness).unwrap().is_valid());
    r.chi2
}

fn two_k4() -> EmbeddedGraph {
    let pts = [(0.0, 0.0), (1.0, 0.0), (0.5, 1.0), (0.5, 0.4), (0.5, -1.0), (0.5, -0.4)];
    let edges = [
        (0, 1),
        (0, 2),
        (0, 3),
        (1, 2),
        (1, 3),
        (2, 3),
        (0, 4),
        (0, 5),
        (1, 4),
        (1, 5),
        (4, 5),
    ];
    from_coordinates(&pts, &edges).unwrap()
}

#[test]
fn naive_oracle_on_known_graphs() {
    assert_eq!(naive_chi2(&adjacency(&gen_cycle(5).unwrap())), 5);
    assert_eq!(naive_chi2(&adjacency(&gen_cycle(6).unwrap())), 3);
    assert_eq!(naive_chi2(&adjacency(&gen_cycle(7).unwrap())), 4);
    assert_eq!(naive_chi2(&adjacency(&k4())), 4);
    assert_eq!(naive_chi2(&adjacency(&star(5).unwrap())), 6);
    assert_eq!(naive_chi2(&adjacency(&path(2).unwrap())), 2);
}

#[test]
fn exact_matches_naive_up_to_eight_vertices() {
    let mut graphs = gen_corpus(&CorpusSpec::new(150, (1, 8), 0, 404)).unwrap();
    graphs.extend([k4(), octahedron(), two_k4(), gen_cycle(8).unwrap(), star(7).unwrap()]);
    for g in &graphs {
        assert_eq!(chi2(g), naive_chi2(&adjacency(g)), "{}", g.to_pg());
    }
}

#[test]
fn frozen_values() {
    assert_eq!(chi2(&gen_wegner(5).unwrap()), 8);
    assert_eq!(chi2(&gen_wegner(7).unwrap()), 11);
    assert_eq!(chi2(&gen_wegner(9).unwrap()), 14);
    let h = gen_hub_triple(4, 4, 3, true).unwrap();
    assert_eq!(h.max_degree(), 8);
    assert_eq!(chi2(&h), 13);
    assert_eq!(chi2(&two_k4()), 6);
    assert_eq!(chi2(&octahedron()), 6);
}

#[test]
fn greedy_sandwich() {
    for g in gen_corpus(&CorpusSpec::new(60, (2, 20), 0, 405)).unwrap() {
        let d = g.max_degree();
        let k = chi2(&g);
        let greedy = greedy_color(&g).colors_used();
        assert!(d < k && k <= greedy && greedy <= 5 * d + 1, "{d} {k} {greedy}");
    }
}
