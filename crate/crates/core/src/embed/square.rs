use std::collections::VecDeque;

use super::{EmbedError, EmbeddedGraph, Vertex};

/// The square of a graph: `u` and `v` are adjacent iff `1 <= dist(u, v) <= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareGraph {
    adj: Vec<Vec<Vertex>>,
}

impl SquareGraph {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Sorted square-neighbors of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn pair_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Unordered pairs `(u, v)` with `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn from_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        SquareGraph { adj }
    }
}

/// Builds the square by unioning each vertex's neighbors with its
/// neighbors' neighbors.
pub fn square(g: &EmbeddedGraph) -> SquareGraph {
    let n = g.vertex_count();
    let mut mark = vec![usize::MAX; n];
    let mut adj = Vec::with_capacity(n);
    for v in 0..n {
        mark[v] = v;
        let mut out = Vec::new();
        for &u in g.neighbors(v) {
            if mark[u] != v {
                mark[u] = v;
                out.push(u);
            }
            for &w in g.neighbors(u) {
                if mark[w] != v {
                    mark[w] = v;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        adj.push(out);
    }
    SquareGraph { adj }
}

/// Vertices at distance one or two from `v`, by a depth-limited BFS.
pub fn dist2_neighborhood(g: &EmbeddedGraph, v: Vertex) -> Result<Vec<Vertex>, EmbedError> {
    if !g.contains(v) {
        return Err(EmbedError::UnknownVertex(v));
    }
    let mut dist = vec![u8::MAX; g.vertex_count()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        if dist[x] == 2 {
            continue;
        }
        for &y in g.neighbors(x) {
            if dist[y] == u8::MAX {
                dist[y] = dist[x] + 1;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}
