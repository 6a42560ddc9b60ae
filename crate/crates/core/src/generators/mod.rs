//! Embedded planar test graphs: Wegner's construction, stacked
//! triangulations, lattices, and mixed fuzz corpora.

mod corpus;
mod stacked;

pub use corpus::{gen_corpus, CorpusSpec};
pub use stacked::{gen_random_planar, gen_stacked_biased, gen_stacked_triangulation};

use thiserror::Error;

use crate::embed::{EmbedError, EmbeddedGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("wegner requires an odd delta >= 3, got {0}")]
    BadDelta(usize),
    #[error("invalid parameter: {0}")]
    BadParam(String),
    #[error("could not meet the corpus filter: built {built} of {wanted} graphs")]
    ExhaustedAttempts { wanted: usize, built: usize },
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Generator family and its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    Wegner {
        delta: usize,
    },
    HubTriple {
        p: usize,
        q: usize,
        r: usize,
        extra_edge: bool,
    },
    StackedTriangulation {
        n: usize,
        seed: u64,
    },
    Cycle {
        n: usize,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    RandomPlanar {
        n: usize,
        seed: u64,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<EmbeddedGraph, GenError> {
        match *self {
            GenSpec::Wegner { delta } => gen_wegner(delta),
            GenSpec::HubTriple { p, q, r, extra_edge } => gen_hub_triple(p, q, r, extra_edge),
            GenSpec::StackedTriangulation { n, seed } => gen_stacked_triangulation(n, seed),
            GenSpec::Cycle { n } => gen_cycle(n),
            GenSpec::Grid { rows, cols } => gen_grid(rows, cols),
            GenSpec::RandomPlanar { n, seed } => gen_random_planar(n, seed),
        }
    }
}

/// Wegner's graph for odd `delta`: three hubs, sets of `k = (delta-1)/2`
/// degree-2 vertices on each hub pair, and the edge `v2v3`.
pub fn gen_wegner(delta: usize) -> Result<EmbeddedGraph, GenError> {
    if delta < 3 || delta.is_multiple_of(2) {
        return Err(GenError::BadDelta(delta));
    }
    let k = (delta - 1) / 2;
    gen_hub_triple(k, k, k, true)
}

/// Hubs `v1 = 0`, `v2 = 1`, `v3 = 2`; `p` vertices joined to `{v1, v2}`, then
/// `q` joined to `{v1, v3}`, then `r` joined to `{v2, v3}`. With `extra_edge`
/// the hubs `v2` and `v3` are joined outside all the sets.
pub fn gen_hub_triple(p: usize, q: usize, r: usize, extra_edge: bool) -> Result<EmbeddedGraph, GenError> {
    if p == 0 || q == 0 || r == 0 {
        return Err(GenError::BadParam("hub_triple set sizes must be >= 1".into()));
    }
    let hubs = [(0.0, 10.0), (-10.0, -5.0), (10.0, -5.0)];
    let mut points: Vec<(f64, f64)> = hubs.to_vec();
    let mut edges = Vec::new();
    for (size, (a, b)) in [(p, (0, 1)), (q, (0, 2)), (r, (1, 2))] {
        let (pa, pb) = (hubs[a], hubs[b]);
        let mid = ((pa.0 + pb.0) / 2.0, (pa.1 + pb.1) / 2.0);
        // unit normal pointing into the hub triangle (its centroid is the origin)
        let (dx, dy) = (pb.0 - pa.0, pb.1 - pa.1);
        let len = (dx * dx + dy * dy).sqrt();
        let (mut nx, mut ny) = (-dy / len, dx / len);
        if nx * -mid.0 + ny * -mid.1 < 0.0 {
            nx = -nx;
            ny = -ny;
        }
        let step = 3.0 / size as f64;
        for i in 1..=size {
            let t = step * i as f64;
            let id = points.len();
            points.push((mid.0 + nx * t, mid.1 + ny * t));
            edges.push((id, a));
            edges.push((id, b));
        }
    }
    if extra_edge {
        edges.push((1, 2));
    }
    Ok(from_coordinates(&points, &edges)?)
}

pub fn gen_cycle(n: usize) -> Result<EmbeddedGraph, GenError> {
    if n < 3 {
        return Err(GenError::BadParam("cycle needs n >= 3".into()));
    }
    let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    Ok(EmbeddedGraph::build(n, rot)?)
}

/// `rows x cols` grid, vertex `r * cols + c`.
pub fn gen_grid(rows: usize, cols: usize) -> Result<EmbeddedGraph, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::BadParam("grid needs rows, cols >= 1".into()));
    }
    let (points, mut edges) = lattice(rows, cols);
    edges.retain(|&(a, b)| a / cols == b / cols || a % cols == b % cols);
    Ok(from_coordinates(&points, &edges)?)
}

/// Grid with one diagonal per cell: interior vertices have degree 6.
pub fn gen_triangular_grid(rows: usize, cols: usize) -> Result<EmbeddedGraph, GenError> {
    if rows == 0 || cols == 0 {
        return Err(GenError::BadParam("grid needs rows, cols >= 1".into()));
    }
    let (points, edges) = lattice(rows, cols);
    Ok(from_coordinates(&points, &edges)?)
}

type Layout = (Vec<(f64, f64)>, Vec<(Vertex, Vertex)>);

fn lattice(rows: usize, cols: usize) -> Layout {
    let id = |r: usize, c: usize| r * cols + c;
    let mut points = Vec::with_capacity(rows * cols);
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            points.push((c as f64, r as f64));
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if r + 1 < rows && c + 1 < cols {
                edges.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    (points, edges)
}

pub fn k4() -> EmbeddedGraph {
    from_oriented_triangles(4, &[[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]]).expect("K4")
}

pub fn octahedron() -> EmbeddedGraph {
    let mut faces = Vec::new();
    for i in 0..4 {
        let (a, b) = (1 + i, 1 + (i + 1) % 4);
        faces.push([0, a, b]);
        faces.push([a, 5, b]);
    }
    from_oriented_triangles(6, &faces).expect("octahedron")
}

/// Top 0, upper ring 1..=5, lower ring 6..=10, bottom 11.
pub fn icosahedron() -> EmbeddedGraph {
    let mut faces = Vec::new();
    for i in 0..5 {
        let (u0, u1) = (1 + i, 1 + (i + 1) % 5);
        let (l0, l1) = (6 + i, 6 + (i + 1) % 5);
        faces.push([0, u0, u1]);
        faces.push([u0, l0, u1]);
        faces.push([u1, l0, l1]);
        faces.push([l0, 11, l1]);
    }
    from_oriented_triangles(12, &faces).expect("icosahedron")
}

pub fn path(n: usize) -> Result<EmbeddedGraph, GenError> {
    if n == 0 {
        return Err(GenError::BadParam("path needs n >= 1".into()));
    }
    let rot = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i > 0 {
                r.push(i - 1);
            }
            if i + 1 < n {
                r.push(i + 1);
            }
            r
        })
        .collect();
    Ok(EmbeddedGraph::build(n, rot)?)
}

/// `K_{1,k}` with center 0.
pub fn star(k: usize) -> Result<EmbeddedGraph, GenError> {
    let mut rot = vec![(1..=k).collect::<Vec<_>>()];
    rot.extend((0..k).map(|_| vec![0]));
    Ok(EmbeddedGraph::build(k + 1, rot)?)
}

/// Straight-line embedding: each rotation lists neighbors by decreasing
/// angle, which is clockwise.
pub fn from_coordinates(points: &[(f64, f64)], edges: &[(Vertex, Vertex)]) -> Result<EmbeddedGraph, EmbedError> {
    let n = points.len();
    let mut rot: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a >= n || b >= n {
            return Err(EmbedError::UnknownVertex(a.max(b)));
        }
        rot[a].push(b);
        rot[b].push(a);
    }
    for (v, nbrs) in rot.iter_mut().enumerate() {
        let (x, y) = points[v];
        let angle = |u: &Vertex| (points[*u].1 - y).atan2(points[*u].0 - x);
        nbrs.sort_by(|a, b| angle(b).total_cmp(&angle(a)));
    }
    EmbeddedGraph::build(n, rot)
}

/// Builds the triangulation whose faces are the given walks. Each triangle
/// `[a, b, c]` is the face walk `a -> b -> c -> a`.
pub fn from_oriented_triangles(n: usize, faces: &[[Vertex; 3]]) -> Result<EmbeddedGraph, EmbedError> {
    // succ[b] maps a to c for every walk a -> b -> c
    let mut succ: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n];
    for &[a, b, c] in faces {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            if y >= n {
                return Err(EmbedError::UnknownVertex(y));
            }
            succ[y].push((x, z));
        }
    }
    let mut rot = Vec::with_capacity(n);
    for (v, pairs) in succ.iter_mut().enumerate() {
        pairs.sort_unstable();
        let mut order = Vec::with_capacity(pairs.len());
        if let Some(&(start, _)) = pairs.first() {
            let mut cur = start;
            loop {
                order.push(cur);
                let k = pairs
                    .binary_search_by_key(&cur, |&(a, _)| a)
                    .map_err(|_| EmbedError::AsymmetricAdjacency { from: v, to: cur })?;
                cur = pairs[k].1;
                if cur == start || order.len() > pairs.len() {
                    break;
                }
            }
        }
        rot.push(order);
    }
    EmbeddedGraph::build(n, rot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::square;

    #[test]
    fn wegner_11_shape() {
        let g = gen_wegner(11).unwrap();
        assert_eq!(g.vertex_count(), 18);
        assert_eq!([g.degree(0), g.degree(1), g.degree(2)], [10, 11, 11]);
        assert!((3..18).all(|v| g.degree(v) == 2));
        assert_eq!(g, gen_hub_triple(5, 5, 5, true).unwrap());
    }

    #[test]
    fn wegner_rejects_even_or_small() {
        assert_eq!(gen_wegner(8).unwrap_err(), GenError::BadDelta(8));
        assert_eq!(gen_wegner(1).unwrap_err(), GenError::BadDelta(1));
    }

    #[test]
    fn wegner_square_minus_v1_is_clique() {
        for delta in [3, 5, 7, 9, 11] {
            let g = gen_wegner(delta).unwrap();
            let sq = square(&g);
            let k = (delta - 1) / 2;
            let rest: Vec<Vertex> = (1..g.vertex_count()).collect();
            assert_eq!(rest.len(), 3 * k + 2);
            for &a in &rest {
                for &b in &rest {
                    assert!(a == b || sq.contains(a, b));
                }
            }
        }
    }

    #[test]
    fn hub_triple_small() {
        let g = gen_hub_triple(1, 1, 1, false).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.max_degree()), (6, 6, 2));
        assert_eq!(gen_hub_triple(4, 4, 3, true).unwrap().max_degree(), 8);
    }

    #[test]
    fn fixtures() {
        let g = icosahedron();
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 30));
        assert!(g.vertices().all(|v| g.degree(v) == 5));
        let o = octahedron();
        assert_eq!((o.vertex_count(), o.edge_count()), (6, 12));
        assert!(o.vertices().all(|v| o.degree(v) == 4));
        assert_eq!(k4().edge_count(), 6);
        assert_eq!(path(5).unwrap().edge_count(), 4);
        assert_eq!(star(4).unwrap().max_degree(), 4);
    }

    #[test]
    fn grids() {
        let g = gen_grid(3, 4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.faces().len()), (12, 17, 7));
        let t = gen_triangular_grid(4, 4).unwrap();
        assert_eq!(t.max_degree(), 6);
        assert!(t.faces().iter().filter(|f| f.degree() == 3).count() == 18);
    }
}
