use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{from_oriented_triangles, GenError};
use crate::embed::{EmbeddedGraph, Vertex};

/// Stacked (Apollonian) triangulation on `n` vertices: from K4, repeatedly
/// insert a vertex into a uniformly random face and join it to the corners.
pub fn gen_stacked_triangulation(n: usize, seed: u64) -> Result<EmbeddedGraph, GenError> {
    gen_stacked_biased(n, seed, 0.0)
}

/// As [`gen_stacked_triangulation`], but with probability `bias` the face is
/// drawn from those at vertex 0, which raises its degree.
pub fn gen_stacked_biased(n: usize, seed: u64, bias: f64) -> Result<EmbeddedGraph, GenError> {
    if n < 4 {
        return Err(GenError::BadParam("stacked triangulation needs n >= 4".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
    let mut hub_faces: Vec<usize> = vec![0, 1, 2];
    for x in 4..n {
        let mut f = None;
        if bias > 0.0 && rng.gen_bool(bias.min(1.0)) {
            while !hub_faces.is_empty() {
                let k = rng.gen_range(0..hub_faces.len());
                if faces[hub_faces[k]].contains(&0) {
                    f = Some(hub_faces[k]);
                    break;
                }
                hub_faces.swap_remove(k);
            }
        }
        let f = f.unwrap_or_else(|| rng.gen_range(0..faces.len()));
        let [a, b, c] = faces[f];
        faces[f] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
        for idx in [faces.len() - 2, faces.len() - 1] {
            if faces[idx].contains(&0) {
                hub_faces.push(idx);
            }
        }
    }
    Ok(from_oriented_triangles(n, &faces)?)
}

/// A stacked triangulation thinned by deleting each edge outside a fixed
/// spanning tree with probability 0.4.
pub fn gen_random_planar(n: usize, seed: u64) -> Result<EmbeddedGraph, GenError> {
    let g = gen_stacked_triangulation(n, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    Ok(thin_edges(&g, &mut rng, 0.4)?)
}

/// Edges of a depth-first spanning tree rooted at `root`, as a sorted list of
/// `(min, max)` pairs.
pub(crate) fn dfs_tree(g: &EmbeddedGraph, root: Vertex) -> Vec<(Vertex, Vertex)> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut next = vec![0usize; n];
    let mut stack = vec![root];
    seen[root] = true;
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    while let Some(&x) = stack.last() {
        if next[x] == g.degree(x) {
            stack.pop();
            continue;
        }
        let y = g.neighbors(x)[next[x]];
        next[x] += 1;
        if !seen[y] {
            seen[y] = true;
            tree.push((x.min(y), x.max(y)));
            stack.push(y);
        }
    }
    tree.sort_unstable();
    tree
}

/// Removes a batch of edges by dropping them from the rotation. Keeping a
/// spanning tree intact is the caller's job.
pub(crate) fn drop_edges(
    g: &EmbeddedGraph,
    edges: &[(Vertex, Vertex)],
) -> Result<EmbeddedGraph, crate::embed::EmbedError> {
    let mut drop: Vec<(Vertex, Vertex)> = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    drop.sort_unstable();
    let rot = g
        .vertices()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| drop.binary_search(&(v, u)).is_err())
                .collect()
        })
        .collect();
    EmbeddedGraph::build(g.vertex_count(), rot)
}

pub(crate) fn thin_edges(
    g: &EmbeddedGraph,
    rng: &mut ChaCha8Rng,
    prob: f64,
) -> Result<EmbeddedGraph, crate::embed::EmbedError> {
    let tree = dfs_tree(g, rng.gen_range(0..g.vertex_count()));
    let mut drop = Vec::new();
    for u in g.vertices() {
        for &v in g.neighbors(u) {
            if u < v && tree.binary_search(&(u, v)).is_err() && rng.gen_bool(prob) {
                drop.push((u, v));
            }
        }
    }
    drop_edges(g, &drop)
}
