use std::collections::VecDeque;

use super::{ConfigWitness, Kind, Recipe};
use crate::budget::Budget;
use crate::embed::{square, EmbeddedGraph, Vertex};

/// Re-evaluates a witness from the definitions, with computations separate
/// from the detectors: BFS distances, whole-face scans and the square.
pub fn check_witness(g: &EmbeddedGraph, budget: &Budget, w: &ConfigWitness) -> bool {
    let d = budget.delta_context;
    let a = &w.actors;
    if a.is_empty() || a.iter().any(|&x| !g.contains(x)) {
        return false;
    }
    let v = a[0];
    let nbrs = sorted(g.neighbors(v));
    match w.kind {
        Kind::Deg1 => g.degree(v) == 1 && a.len() == 2 && nbrs == [a[1]] && w.recipe == Recipe::Delete { v },
        Kind::Deg2 => {
            g.degree(v) == 2
                && a.len() == 3
                && sorted(&a[1..]) == nbrs
                && recipe_adds(w, v, &missing(g, &[(a[1], a[2])]))
        }
        Kind::EdgeSeparator => {
            let (u, x) = (a[0], a[1]);
            let comps = components_avoiding(g, &[u, x]);
            g.has_edge(u, x)
                && comps.len() >= 2
                && matches!(&w.recipe, Recipe::Split { u: ru, v: rv, side }
                    if *ru == u && *rv == x && comps.contains(&sorted(side)))
        }
        Kind::FaceTwoSmall => {
            let (u, x) = (a[0], a[1]);
            let f = match w.recipe {
                Recipe::AddEdge { u: ru, v: rv, face } if ru == u && rv == x => face,
                _ => return false,
            };
            f < g.faces().len()
                && g.faces().face(f).degree() >= 4
                && g.faces().face(f).contains(u)
                && g.faces().face(f).contains(x)
                && u != x
                && !g.has_edge(u, x)
                && [u, x].iter().all(|&y| (3..d).contains(&g.degree(y)))
        }
        Kind::Deg3SmallNbr => {
            g.degree(v) == 3
                && a.len() == 4
                && sorted(&a[1..]) == nbrs
                && g.degree(a[1]) <= 5
                && recipe_adds(w, v, &missing(g, &[(a[1], a[2]), (a[1], a[3])]))
        }
        Kind::Deg3TwoTriangles => {
            g.degree(v) == 3
                && a.len() == 4
                && sorted(&a[1..]) == nbrs
                && g.has_edge(a[2], a[1])
                && g.has_edge(a[2], a[3])
                && a[1..].iter().any(|&y| g.degree(y) <= d.min(10))
                && w.recipe == Recipe::Delete { v }
        }
        Kind::Deg3TriTwoSquares => {
            let mut degs = incident_face_degrees(g, v);
            degs.sort_unstable();
            d <= 10
                && g.degree(v) == 3
                && degs == [3, 4, 4]
                && neighbors_close_bfs(g, v)
                && w.recipe == Recipe::Delete { v }
        }
        Kind::Deg4Tri5Tri => {
            a.len() == 3
                && g.degree(v) == 4
                && is_triangulated(g, v)
                && g.has_edge(v, a[1])
                && g.degree(a[1]) == 5
                && is_triangulated(g, a[1])
                && g.has_edge(v, a[2])
                && a[2] != a[1]
                && g.degree(a[2]) < 12
                && w.recipe == Recipe::Delete { v }
        }
        Kind::GenericDeletable | Kind::WGenericDeletable21 => {
            let palette = if w.kind == Kind::GenericDeletable {
                budget.palette_size
            } else {
                21
            };
            g.vertex_count() >= 2
                && neighbors_close_bfs(g, v)
                && square(g).degree(v) < palette
                && w.recipe == Recipe::Delete { v }
        }
        Kind::WTri5 => g.degree(v) == 5 && is_triangulated(g, v) && w.recipe == Recipe::Delete { v },
        Kind::WDeg4ThreeTriangles => {
            let tri = incident_face_degrees(g, v).iter().filter(|&&x| x == 3).count();
            if g.degree(v) != 4 || tri < 3 || a.len() != 5 || sorted(&a[1..]) != nbrs {
                return false;
            }
            let (first, last) = (a[1], a[4]);
            let close = bfs_avoiding(g, last, v, 2)[first] <= 2;
            let expect: Vec<(Vertex, Vertex)> = if close { vec![] } else { vec![(last, first)] };
            recipe_adds(w, v, &expect)
        }
        Kind::WDeg3Triangle => {
            if g.degree(v) != 3 || a.len() != 4 || sorted(&a[1..]) != nbrs || !g.has_edge(a[1], a[2]) {
                return false;
            }
            let (x, y, z) = (a[1], a[2], a[3]);
            let expect = if g.has_edge(x, z) || g.has_edge(y, z) {
                vec![]
            } else {
                vec![(x, z)]
            };
            recipe_adds(w, v, &expect)
        }
    }
}

/// Literal upper bound on colors forbidden for the deleted vertex, for
/// witnesses that delete one.
pub fn forbidden_bound(g: &EmbeddedGraph, budget: &Budget, w: &ConfigWitness) -> Option<usize> {
    let d = budget.delta_context;
    Some(match w.kind {
        Kind::EdgeSeparator | Kind::FaceTwoSmall => return None,
        Kind::Deg1 => d,
        Kind::Deg2 => 2 * d,
        Kind::Deg3SmallNbr => 2 * d + 5,
        Kind::Deg3TwoTriangles => 2 * d + d.min(10) - 4,
        Kind::Deg3TriTwoSquares => 3 * (d - 2) + 2,
        Kind::Deg4Tri5Tri => 2 * d + g.degree(w.actors[2]) - 5,
        Kind::GenericDeletable => budget.palette_size - 1,
        Kind::WDeg3Triangle => 16,
        Kind::WTri5 | Kind::WDeg4ThreeTriangles | Kind::WGenericDeletable21 => 20,
    })
}

fn sorted(xs: &[Vertex]) -> Vec<Vertex> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v
}

fn missing(g: &EmbeddedGraph, pairs: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    pairs.iter().copied().filter(|&(a, b)| !g.has_edge(a, b)).collect()
}

fn recipe_adds(w: &ConfigWitness, v: Vertex, expect: &[(Vertex, Vertex)]) -> bool {
    match &w.recipe {
        Recipe::Delete { v: rv } => *rv == v && expect.is_empty(),
        Recipe::DeleteAndAdd { v: rv, edges } => *rv == v && edges == expect,
        _ => false,
    }
}

/// BFS distances from `s` in `G - avoid`, capped at `limit + 1`.
fn bfs_avoiding(g: &EmbeddedGraph, s: Vertex, avoid: Vertex, limit: usize) -> Vec<usize> {
    let mut dist = vec![limit + 1; g.vertex_count()];
    dist[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        if dist[x] == limit {
            continue;
        }
        for &y in g.neighbors(x) {
            if y != avoid && dist[y] > dist[x] + 1 {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    dist
}

fn neighbors_close_bfs(g: &EmbeddedGraph, v: Vertex) -> bool {
    let nbrs = g.neighbors(v);
    nbrs.iter().all(|&a| {
        let dist = bfs_avoiding(g, a, v, 2);
        nbrs.iter().all(|&b| dist[b] <= 2)
    })
}

fn components_avoiding(g: &EmbeddedGraph, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut seen: Vec<bool> = (0..n).map(|x| removed.contains(&x)).collect();
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Degree of each face incidence at `v`, from a scan of all face walks.
fn incident_face_degrees(g: &EmbeddedGraph, v: Vertex) -> Vec<usize> {
    g.faces()
        .iter()
        .flat_map(|f| std::iter::repeat_n(f.degree(), f.incidences(v)))
        .collect()
}

fn is_triangulated(g: &EmbeddedGraph, v: Vertex) -> bool {
    let degs = incident_face_degrees(g, v);
    !degs.is_empty() && degs.iter().all(|&x| x == 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::detect_all;
    use crate::generators::{gen_corpus, icosahedron, octahedron, CorpusSpec};

    #[test]
    fn detected_witnesses_check() {
        let mut graphs = gen_corpus(&CorpusSpec::new(30, (5, 40), 0, 21)).unwrap();
        graphs.push(icosahedron());
        graphs.push(octahedron());
        for g in &graphs {
            for budget in [Budget::for_graph(g), Budget::for_delta(g.max_degree().max(9))] {
                for w in detect_all(g, &budget) {
                    assert!(check_witness(g, &budget, &w), "{w:?} on {g:?}");
                }
            }
        }
    }

    #[test]
    fn tampered_witness_fails() {
        let g = icosahedron();
        let b = Budget::for_graph(&g);
        let mut w = detect_all(&g, &b).into_iter().find(|w| w.kind == Kind::WTri5).unwrap();
        assert!(check_witness(&g, &b, &w));
        w.kind = Kind::Deg3TwoTriangles;
        assert!(!check_witness(&g, &b, &w));
    }
}
