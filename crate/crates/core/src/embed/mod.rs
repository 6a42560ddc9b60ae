//! Embedded planar graphs given by rotation systems.
//!
//! A graph is stored as one cyclic neighbor list per vertex, in clockwise
//! order. Faces are traced from the rotation with a single fixed rule: from
//! the directed edge `u -> v`, the walk continues along `v -> w` where `w` is
//! the clockwise successor of `u` around `v`. Every validated graph is simple,
//! connected, and satisfies `n - m + f = 2`.

mod faces;
mod mutate;
mod pg;
mod square;

pub use faces::{trace_faces, Face, FaceSet};
pub use pg::{parse_pg, PgError, PgFormatError, RawRotation};
pub use square::{dist2_neighborhood, square, SquareGraph};

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("graph has no vertices")]
    Empty,
    #[error("rotation lists {got} vertices but n = {expected}")]
    RotationCount { expected: usize, got: usize },
    #[error("vertex {0} is out of range")]
    UnknownVertex(Vertex),
    #[error("face {0} does not exist")]
    UnknownFace(usize),
    #[error("vertex {0} lists itself as a neighbor")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("vertex {from} lists {to} but {to} does not list {from}")]
    AsymmetricAdjacency { from: Vertex, to: Vertex },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation is not a planar embedding: n - m + f = {euler}")]
    NonPlanarEmbedding { euler: i64 },
    #[error("vertices {0} and {1} are already adjacent")]
    AlreadyAdjacent(Vertex, Vertex),
    #[error("vertices {u} and {v} do not both lie on face {face}")]
    NotOnSameFace { u: Vertex, v: Vertex, face: usize },
    #[error("removing the requested elements would disconnect the graph")]
    WouldDisconnect,
}

/// A simple connected planar graph together with a fixed combinatorial
/// embedding. Values are immutable; mutations return new graphs.
#[derive(Clone)]
pub struct EmbeddedGraph {
    rotation: Vec<Vec<Vertex>>,
    // twin[v][i] is the position of v in rotation[rotation[v][i]]
    twin: Vec<Vec<usize>>,
    // (neighbor, position in rotation), sorted by neighbor
    lookup: Vec<Vec<(Vertex, usize)>>,
    edge_count: usize,
    faces: FaceSet,
}

impl EmbeddedGraph {
    /// Validates a rotation system and builds the graph.
    pub fn build(n: usize, rotation: Vec<Vec<Vertex>>) -> Result<Self, EmbedError> {
        if n == 0 {
            return Err(EmbedError::Empty);
        }
        if rotation.len() != n {
            return Err(EmbedError::RotationCount {
                expected: n,
                got: rotation.len(),
            });
        }

        let mut lookup = Vec::with_capacity(n);
        for (v, nbrs) in rotation.iter().enumerate() {
            let mut sorted: Vec<(Vertex, usize)> = nbrs.iter().copied().enumerate().map(|(i, u)| (u, i)).collect();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(EmbedError::DuplicateNeighbor {
                        vertex: v,
                        neighbor: w[0].0,
                    });
                }
            }
            for &(u, _) in &sorted {
                if u >= n {
                    return Err(EmbedError::UnknownVertex(u));
                }
                if u == v {
                    return Err(EmbedError::SelfLoop(v));
                }
            }
            lookup.push(sorted);
        }

        let mut twin = Vec::with_capacity(n);
        let mut degree_sum = 0;
        for (v, nbrs) in rotation.iter().enumerate() {
            degree_sum += nbrs.len();
            let mut t = Vec::with_capacity(nbrs.len());
            for &u in nbrs {
                match position_in(&lookup[u], v) {
                    Some(p) => t.push(p),
                    None => return Err(EmbedError::AsymmetricAdjacency { from: v, to: u }),
                }
            }
            twin.push(t);
        }

        let mut g = EmbeddedGraph {
            rotation,
            twin,
            lookup,
            edge_count: degree_sum / 2,
            faces: FaceSet::default(),
        };
        if !g.is_connected_without(&[]) {
            return Err(EmbedError::Disconnected);
        }
        g.faces = trace_faces(&g);
        let euler = n as i64 - g.edge_count as i64 + g.faces.len() as i64;
        if euler != 2 {
            return Err(EmbedError::NonPlanarEmbedding { euler });
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.rotation.len()
    }

    /// Clockwise neighbor cycle of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn rotation(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.rotation.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.lookup.len() && position_in(&self.lookup[u], v).is_some()
    }

    /// Position of `u` in the rotation of `v`.
    pub fn position(&self, v: Vertex, u: Vertex) -> Option<usize> {
        position_in(&self.lookup[v], u)
    }

    /// Clockwise successor of `u` in the rotation around `v`.
    pub fn successor(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let rot = &self.rotation[v];
        self.position(v, u).map(|i| rot[(i + 1) % rot.len()])
    }

    /// Clockwise predecessor of `u` in the rotation around `v`.
    pub fn predecessor(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let rot = &self.rotation[v];
        self.position(v, u).map(|i| rot[(i + rot.len() - 1) % rot.len()])
    }

    pub(crate) fn twin(&self, v: Vertex, i: usize) -> usize {
        self.twin[v][i]
    }

    /// Neighbors shared by `u` and `v`.
    pub fn common_neighbors(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let (a, b) = (&self.lookup[u], &self.lookup[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i].0);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Whether `u` and `v` are within distance two without passing through
    /// any vertex of `avoid`.
    pub fn within_two_avoiding(&self, u: Vertex, v: Vertex, avoid: &[Vertex]) -> bool {
        if u == v || self.has_edge(u, v) {
            return true;
        }
        self.common_neighbors(u, v).into_iter().any(|w| !avoid.contains(&w))
    }

    /// Connectivity of the graph with the vertices in `removed` deleted.
    pub fn is_connected_without(&self, removed: &[Vertex]) -> bool {
        self.components_without(removed).len() <= 1
    }

    /// Connected components after deleting `removed`, each sorted, ordered by
    /// smallest member.
    pub fn components_without(&self, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in &self.rotation[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Lexicographic size measure `(|V|, -|E|)`; reductions strictly decrease it.
    pub fn measure(&self) -> (usize, i64) {
        (self.vertex_count(), -(self.edge_count as i64))
    }

    /// 64-bit FNV digest of the canonical `.pg` serialization.
    pub fn canonical_hash(&self) -> u64 {
        use std::hash::Hasher;
        let mut h = fnv::FnvHasher::default();
        h.write(self.to_pg().as_bytes());
        h.finish()
    }
}

impl PartialEq for EmbeddedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotation == other.rotation
    }
}

impl Eq for EmbeddedGraph {}

impl fmt::Debug for EmbeddedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EmbeddedGraph")
            .field("n", &self.vertex_count())
            .field("m", &self.edge_count)
            .field("rotation", &self.rotation)
            .finish()
    }
}

fn position_in(sorted: &[(Vertex, usize)], u: Vertex) -> Option<usize> {
    sorted.binary_search_by_key(&u, |&(w, _)| w).ok().map(|k| sorted[k].1)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k4() -> EmbeddedGraph {
        EmbeddedGraph::build(4, vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn k4_counts() {
        let g = k4();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.faces().len(), 4);
    }

    #[test]
    fn triangle_is_valid() {
        let g = EmbeddedGraph::build(3, vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
    }

    #[test]
    fn asymmetric_rejected() {
        let err = EmbeddedGraph::build(3, vec![vec![1, 2], vec![2], vec![0, 1]]).unwrap_err();
        assert_eq!(err, EmbedError::AsymmetricAdjacency { from: 0, to: 1 });
    }

    #[test]
    fn duplicate_and_self_loop_rejected() {
        let err = EmbeddedGraph::build(2, vec![vec![1, 1], vec![0]]).unwrap_err();
        assert!(matches!(err, EmbedError::DuplicateNeighbor { vertex: 0, neighbor: 1 }));
        let err = EmbeddedGraph::build(2, vec![vec![0, 1], vec![0]]).unwrap_err();
        assert_eq!(err, EmbedError::SelfLoop(0));
        let err = EmbeddedGraph::build(2, vec![vec![5], vec![0]]).unwrap_err();
        assert_eq!(err, EmbedError::UnknownVertex(5));
    }

    #[test]
    fn disconnected_rejected() {
        let err = EmbeddedGraph::build(4, vec![vec![1], vec![0], vec![3], vec![2]]).unwrap_err();
        assert_eq!(err, EmbedError::Disconnected);
    }

    #[test]
    fn k4_with_inconsistent_rotation_is_not_planar() {
        // every vertex uses increasing order: traces 2 faces instead of 4
        let err =
            EmbeddedGraph::build(4, vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]).unwrap_err();
        assert!(matches!(err, EmbedError::NonPlanarEmbedding { .. }));
    }

    #[test]
    fn k33_cannot_be_embedded() {
        let rot = vec![
            vec![3, 4, 5],
            vec![3, 4, 5],
            vec![3, 4, 5],
            vec![0, 1, 2],
            vec![0, 1, 2],
            vec![0, 1, 2],
        ];
        assert!(matches!(
            EmbeddedGraph::build(6, rot),
            Err(EmbedError::NonPlanarEmbedding { .. })
        ));
    }

    #[test]
    fn single_vertex_and_single_edge() {
        let g = EmbeddedGraph::build(1, vec![vec![]]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces().face(0).degree(), 0);
        let g = EmbeddedGraph::build(2, vec![vec![1], vec![0]]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces().face(0).degree(), 2);
    }

    #[test]
    fn successor_and_predecessor() {
        let g = k4();
        assert_eq!(g.successor(0, 1), Some(2));
        assert_eq!(g.successor(0, 3), Some(1));
        assert_eq!(g.predecessor(0, 1), Some(3));
        assert_eq!(g.successor(0, 0), None);
    }
}
