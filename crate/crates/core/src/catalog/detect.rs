use super::{CatalogError, ConfigWitness, Kind, Recipe};
use crate::embed::{dist2_neighborhood, EmbeddedGraph, Vertex};

/// Sorted distinct faces around `v`.
pub(crate) fn faces_at(g: &EmbeddedGraph, v: Vertex) -> Vec<usize> {
    let mut fs: Vec<usize> = (0..g.degree(v)).map(|i| g.faces().face_of_dart(v, i)).collect();
    fs.sort_unstable();
    fs.dedup();
    fs
}

/// Face at the corner of `v` between rotation entries `i` and `i + 1`.
pub(crate) fn corner_face(g: &EmbeddedGraph, v: Vertex, i: usize) -> usize {
    g.faces().face_of_dart(v, (i + 1) % g.degree(v))
}

pub(crate) fn corner_degree(g: &EmbeddedGraph, v: Vertex, i: usize) -> usize {
    g.faces().face(corner_face(g, v, i)).degree()
}

pub(crate) fn triangulated(g: &EmbeddedGraph, v: Vertex) -> bool {
    g.degree(v) > 0 && (0..g.degree(v)).all(|i| corner_degree(g, v, i) == 3)
}

/// Every pair of neighbors of `v` is within distance two in `G - v`.
pub(crate) fn pairs_close(g: &EmbeddedGraph, v: Vertex) -> bool {
    let nbrs = g.neighbors(v);
    nbrs.iter()
        .enumerate()
        .all(|(i, &a)| nbrs[i + 1..].iter().all(|&b| g.within_two_avoiding(a, b, &[v])))
}

fn vertex_witness(g: &EmbeddedGraph, kind: Kind, actors: Vec<Vertex>, recipe: Recipe) -> ConfigWitness {
    ConfigWitness {
        kind,
        faces: faces_at(g, actors[0]),
        actors,
        recipe,
    }
}

fn delete_adding(v: Vertex, edges: Vec<(Vertex, Vertex)>) -> Recipe {
    if edges.is_empty() {
        Recipe::Delete { v }
    } else {
        Recipe::DeleteAndAdd { v, edges }
    }
}

pub(crate) fn deg1(g: &EmbeddedGraph) -> Vec<ConfigWitness> {
    g.vertices()
        .filter(|&v| g.degree(v) == 1)
        .map(|v| vertex_witness(g, Kind::Deg1, vec![v, g.neighbors(v)[0]], Recipe::Delete { v }))
        .collect()
}

pub(crate) fn deg2(g: &EmbeddedGraph) -> Vec<ConfigWitness> {
    g.vertices()
        .filter(|&v| g.degree(v) == 2)
        .map(|v| {
            let (u, w) = (g.neighbors(v)[0], g.neighbors(v)[1]);
            let add = if g.has_edge(u, w) { vec![] } else { vec![(u, w)] };
            vertex_witness(g, Kind::Deg2, vec![v, u, w], delete_adding(v, add))
        })
        .collect()
}

/// Edges `uv` with `G - {u, v}` disconnected, each with its smallest side.
pub(crate) fn edge_separators(g: &EmbeddedGraph, first_only: bool) -> Vec<ConfigWitness> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n < 4 {
        return out;
    }
    for u in g.vertices() {
        let (comp, sizes) = labels_without(g, u);
        let art = articulation_points(g, u);
        let mut nbrs: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&v| v > u).collect();
        nbrs.sort_unstable();
        for v in nbrs {
            let k = sizes.len();
            let split = if k == 1 { art[v] } else { sizes[comp[v]] > 1 || k >= 3 };
            if !split {
                continue;
            }
            let comps = g.components_without(&[u, v]);
            let side = comps
                .into_iter()
                .min_by_key(|c| (c.len(), c[0]))
                .expect("at least two components");
            out.push(ConfigWitness {
                kind: Kind::EdgeSeparator,
                actors: vec![u, v],
                faces: vec![],
                recipe: Recipe::Split { u, v, side },
            });
            if first_only {
                return out;
            }
        }
    }
    out
}

/// Component label of each vertex of `G - removed` and the component sizes.
fn labels_without(g: &EmbeddedGraph, removed: Vertex) -> (Vec<usize>, Vec<usize>) {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if s == removed || comp[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        comp[s] = id;
        stack.push(s);
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for &y in g.neighbors(x) {
                if y != removed && comp[y] == usize::MAX {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    (comp, sizes)
}

/// Cut vertices of `G - removed`, by an iterative low-point search.
fn articulation_points(g: &EmbeddedGraph, removed: Vertex) -> Vec<bool> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut next = vec![0usize; n];
    let mut art = vec![false; n];
    let mut time = 0;
    for root in 0..n {
        if root == removed || disc[root] != usize::MAX {
            continue;
        }
        let mut root_children = 0;
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack = vec![root];
        while let Some(&x) = stack.last() {
            if next[x] < g.degree(x) {
                let y = g.neighbors(x)[next[x]];
                next[x] += 1;
                if y == removed {
                    continue;
                }
                if disc[y] == usize::MAX {
                    parent[y] = x;
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    if x == root {
                        root_children += 1;
                    }
                    stack.push(y);
                } else if y != parent[x] {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                let p = parent[x];
                if p != usize::MAX {
                    low[p] = low[p].min(low[x]);
                    if p != root && low[x] >= disc[p] {
                        art[p] = true;
                    }
                }
            }
        }
        art[root] = root_children >= 2;
    }
    art
}

pub(crate) fn face_two_small(g: &EmbeddedGraph, delta: usize) -> Vec<ConfigWitness> {
    let mut found: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for (f, face) in g.faces().iter().enumerate() {
        if face.degree() < 4 {
            continue;
        }
        let small: Vec<Vertex> = face
            .vertex_set()
            .into_iter()
            .filter(|&x| g.degree(x) >= 3 && g.degree(x) < delta)
            .collect();
        for (i, &a) in small.iter().enumerate() {
            for &b in &small[i + 1..] {
                if !g.has_edge(a, b) {
                    found.push((a, b, f));
                }
            }
        }
    }
    found.sort_unstable();
    found.dedup_by_key(|t| (t.0, t.1));
    found
        .into_iter()
        .map(|(u, v, face)| ConfigWitness {
            kind: Kind::FaceTwoSmall,
            actors: vec![u, v],
            faces: vec![face],
            recipe: Recipe::AddEdge { u, v, face },
        })
        .collect()
}

pub(crate) fn deg3_small_nbr(g: &EmbeddedGraph) -> Vec<ConfigWitness> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        let r = g.neighbors(v);
        for i in 0..3 {
            let u = r[i];
            if g.degree(u) > 5 {
                continue;
            }
            let (v1, v2) = (r[(i + 1) % 3], r[(i + 2) % 3]);
            let add: Vec<(Vertex, Vertex)> = [(u, v1), (u, v2)]
                .into_iter()
                .filter(|&(a, b)| !g.has_edge(a, b))
                .collect();
            out.push(vertex_witness(
                g,
                Kind::Deg3SmallNbr,
                vec![v, u, v1, v2],
                delete_adding(v, add),
            ));
        }
    }
    out
}

pub(crate) fn deg3_two_triangles(g: &EmbeddedGraph, delta: usize) -> Vec<ConfigWitness> {
    let cap = delta.min(10);
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        let r = g.neighbors(v);
        let hit = (0..3).find_map(|i| {
            let (a, m, b) = (r[(i + 2) % 3], r[i], r[(i + 1) % 3]);
            let shape = g.has_edge(m, a) && g.has_edge(m, b);
            let small = [a, m, b].iter().any(|&x| g.degree(x) <= cap);
            (shape && small).then_some([a, m, b])
        });
        if let Some([a, m, b]) = hit {
            out.push(vertex_witness(
                g,
                Kind::Deg3TwoTriangles,
                vec![v, a, m, b],
                Recipe::Delete { v },
            ));
        }
    }
    out
}

pub(crate) fn deg3_tri_two_squares(g: &EmbeddedGraph, delta: usize) -> Vec<ConfigWitness> {
    if delta > 10 {
        return Vec::new();
    }
    g.vertices()
        .filter(|&v| g.degree(v) == 3)
        .filter(|&v| {
            let mut degs: Vec<usize> = (0..3).map(|i| corner_degree(g, v, i)).collect();
            degs.sort_unstable();
            degs == [3, 4, 4] && pairs_close(g, v)
        })
        .map(|v| {
            let mut actors = vec![v];
            actors.extend_from_slice(g.neighbors(v));
            vertex_witness(g, Kind::Deg3TriTwoSquares, actors, Recipe::Delete { v })
        })
        .collect()
}

pub(crate) fn deg4_tri5_tri(g: &EmbeddedGraph) -> Vec<ConfigWitness> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 4 && triangulated(g, v)) {
        let mut nbrs = g.neighbors(v).to_vec();
        nbrs.sort_unstable();
        let hit = nbrs
            .iter()
            .copied()
            .filter(|&w| g.degree(w) == 5 && triangulated(g, w))
            .find_map(|w| {
                nbrs.iter()
                    .copied()
                    .find(|&u| u != w && g.degree(u) < 12)
                    .map(|u| (w, u))
            });
        if let Some((w, u)) = hit {
            out.push(vertex_witness(
                g,
                Kind::Deg4Tri5Tri,
                vec![v, w, u],
                Recipe::Delete { v },
            ));
        }
    }
    out
}

pub(crate) fn generic(g: &EmbeddedGraph, palette: usize, kind: Kind) -> Vec<ConfigWitness> {
    if g.vertex_count() < 2 {
        return Vec::new();
    }
    g.vertices()
        .filter(|&v| g.degree(v) < palette && pairs_close(g, v))
        .filter(|&v| dist2_neighborhood(g, v).expect("vertex in range").len() < palette)
        .map(|v| vertex_witness(g, kind, vec![v], Recipe::Delete { v }))
        .collect()
}

pub(crate) fn w_tri5(g: &EmbeddedGraph) -> Vec<ConfigWitness> {
    g.vertices()
        .filter(|&v| g.degree(v) == 5 && triangulated(g, v))
        .map(|v| vertex_witness(g, Kind::WTri5, vec![v], Recipe::Delete { v }))
        .collect()
}

pub(crate) fn w_deg4_three_triangles(g: &EmbeddedGraph) -> Vec<ConfigWitness> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 4) {
        let r = g.neighbors(v);
        let start = (0..4).find(|&i| (0..3).all(|j| corner_degree(g, v, (i + j) % 4) == 3));
        if let Some(i) = start {
            let [a, b, c, d] = [r[i], r[(i + 1) % 4], r[(i + 2) % 4], r[(i + 3) % 4]];
            let add = if g.within_two_avoiding(d, a, &[v]) {
                vec![]
            } else {
                vec![(d, a)]
            };
            out.push(vertex_witness(
                g,
                Kind::WDeg4ThreeTriangles,
                vec![v, a, b, c, d],
                delete_adding(v, add),
            ));
        }
    }
    out
}

pub(crate) fn w_deg3_triangle(g: &EmbeddedGraph) -> Vec<ConfigWitness> {
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        let r = g.neighbors(v);
        if let Some(i) = (0..3).find(|&i| g.has_edge(r[i], r[(i + 1) % 3])) {
            let (x, y, z) = (r[i], r[(i + 1) % 3], r[(i + 2) % 3]);
            let add = if g.has_edge(x, z) || g.has_edge(y, z) {
                vec![]
            } else {
                vec![(x, z)]
            };
            out.push(vertex_witness(
                g,
                Kind::WDeg3Triangle,
                vec![v, x, y, z],
                delete_adding(v, add),
            ));
        }
    }
    out
}

fn sorted(mut ws: Vec<ConfigWitness>) -> Vec<ConfigWitness> {
    ws.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    ws
}

/// First edge-separator in `(u, v)` order.
pub fn find_edge_separator(g: &EmbeddedGraph) -> Option<ConfigWitness> {
    edge_separators(g, true).pop()
}

/// First 4⁺-face pair of non-adjacent vertices of degree in `3..delta`.
pub fn find_face_two_small(g: &EmbeddedGraph, delta: usize) -> Option<ConfigWitness> {
    face_two_small(g, delta).into_iter().next()
}

/// All low-degree vertex configurations of the main catalog for `delta_cap`.
pub fn find_small_vertex_configs(g: &EmbeddedGraph, delta_cap: usize) -> Vec<ConfigWitness> {
    let mut ws = deg1(g);
    ws.extend(deg2(g));
    ws.extend(deg3_small_nbr(g));
    ws.extend(deg3_two_triangles(g, delta_cap));
    ws.extend(deg3_tri_two_squares(g, delta_cap));
    ws.extend(deg4_tri5_tri(g));
    sorted(ws)
}

/// First vertex whose neighbors stay pairwise close without it and whose
/// distance-2 ball is smaller than `palette`.
pub fn find_generic_deletable(g: &EmbeddedGraph, palette: usize) -> Option<ConfigWitness> {
    generic(g, palette, Kind::GenericDeletable).into_iter().next()
}

/// The three configurations specific to `Δ <= 6`.
pub fn find_weak_configs_delta6(g: &EmbeddedGraph) -> Result<Vec<ConfigWitness>, CatalogError> {
    if g.max_degree() > 6 {
        return Err(CatalogError::DeltaTooLarge(g.max_degree()));
    }
    let mut ws = w_tri5(g);
    ws.extend(w_deg4_three_triangles(g));
    ws.extend(w_deg3_triangle(g));
    Ok(sorted(ws))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::EmbeddedGraph;
    use crate::generators::{from_oriented_triangles, k4};

    #[test]
    fn k4_has_no_edge_separator() {
        assert!(find_edge_separator(&k4()).is_none());
    }

    #[test]
    fn bowtie_separators() {
        // triangles 0-1-2 and 0-3-4 sharing vertex 0
        let g = EmbeddedGraph::build(
            5,
            vec![vec![1, 2, 3, 4], vec![2, 0], vec![0, 1], vec![4, 0], vec![0, 3]],
        )
        .unwrap();
        let ws = edge_separators(&g, false);
        let edges: Vec<Vec<Vertex>> = ws.iter().map(|w| w.actors.clone()).collect();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]]);
        assert!(matches!(&ws[0].recipe, Recipe::Split { side, .. } if side == &vec![2]));
    }

    #[test]
    fn diamond_with_pendants_separates_on_shared_edge() {
        // triangles 0-1-2 and 0-1-3 share edge 01; pendants 4 at 2, 5 at 3
        let g = EmbeddedGraph::build(
            6,
            vec![
                vec![1, 3, 2],
                vec![0, 2, 3],
                vec![0, 4, 1],
                vec![1, 5, 0],
                vec![2],
                vec![3],
            ],
        )
        .unwrap();
        assert!(edge_separators(&g, false).iter().any(|w| w.actors == vec![0, 1]));
    }

    #[test]
    fn face_two_small_on_quadrilateral() {
        let g = crate::generators::gen_cycle(6).unwrap();
        assert!(find_face_two_small(&g, g.max_degree()).is_none());
        // bipyramid over an 8-cycle rim 1..=8 with apexes 0 and 9
        let mut faces = vec![];
        for i in 0..8 {
            let (a, b) = (1 + i, 1 + (i + 1) % 8);
            faces.push([0, a, b]);
            faces.push([a, 9, b]);
        }
        let g = from_oriented_triangles(10, &faces).unwrap();
        // dropping rim edges 1-2 and 5-6 leaves 4-faces 0-1-9-2 and 0-5-9-6
        let g = g.remove_edge(1, 2).unwrap().remove_edge(5, 6).unwrap();
        let ws = face_two_small(&g, 8);
        let pairs: Vec<Vec<Vertex>> = ws.iter().map(|w| w.actors.clone()).collect();
        assert_eq!(pairs, vec![vec![1, 2], vec![5, 6]]);
        assert!(g.faces().face(ws[0].faces[0]).degree() == 4);
    }

    #[test]
    fn articulation_matches_bruteforce() {
        let g = crate::generators::gen_random_planar(40, 3).unwrap();
        for u in g.vertices() {
            let art = articulation_points(&g, u);
            for v in g.vertices().filter(|&v| v != u) {
                let base = g.components_without(&[u]).len();
                let after = g.components_without(&[u, v]).len();
                assert_eq!(art[v], after > base, "u={u} v={v}");
            }
        }
    }
}
