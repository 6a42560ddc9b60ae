use super::{EmbeddedGraph, Vertex};

/// One face of the embedding as its cyclic walk of directed edges. A cut-edge
/// is walked in both directions, so it contributes two corners.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Face {
    corners: Vec<(Vertex, Vertex)>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }

    /// Directed edges `(u, v)` in walk order.
    pub fn corners(&self) -> &[(Vertex, Vertex)] {
        &self.corners
    }

    /// Boundary vertices in walk order, one entry per incidence.
    pub fn boundary(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.corners.iter().map(|&(u, _)| u)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.corners.iter().any(|&(u, _)| u == v)
    }

    /// Number of times the walk visits `v`.
    pub fn incidences(&self, v: Vertex) -> usize {
        self.corners.iter().filter(|&&(u, _)| u == v).count()
    }

    /// Distinct boundary vertices, sorted.
    pub fn vertex_set(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.boundary().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Index in the walk of the first corner leaving `v`.
    pub fn first_corner_at(&self, v: Vertex) -> Option<usize> {
        self.corners.iter().position(|&(u, _)| u == v)
    }
}

/// All faces of an embedding, with a map from each directed edge to its face.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FaceSet {
    faces: Vec<Face>,
    offsets: Vec<usize>,
    dart_face: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    /// Face containing the directed edge from `v` to its `i`-th rotation entry.
    pub fn face_of_dart(&self, v: Vertex, i: usize) -> usize {
        self.dart_face[self.offsets[v] + i]
    }

    pub fn degree_sum(&self) -> usize {
        self.faces.iter().map(Face::degree).sum()
    }
}

/// Traces every face of the rotation system. From `u -> v` the walk moves to
/// `v -> w` with `w` the clockwise successor of `u` around `v`.
pub fn trace_faces(g: &EmbeddedGraph) -> FaceSet {
    let n = g.vertex_count();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for v in 0..n {
        offsets.push(total);
        total += g.degree(v);
    }
    offsets.push(total);

    if total == 0 {
        // lone vertex: the whole plane is one face with an empty boundary
        return FaceSet {
            faces: vec![Face::default()],
            offsets,
            dart_face: Vec::new(),
        };
    }

    const UNSET: usize = usize::MAX;
    let mut dart_face = vec![UNSET; total];
    let mut faces = Vec::new();
    for v in 0..n {
        for i in 0..g.degree(v) {
            if dart_face[offsets[v] + i] != UNSET {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let (mut x, mut k) = (v, i);
            while dart_face[offsets[x] + k] == UNSET {
                dart_face[offsets[x] + k] = id;
                let y = g.neighbors(x)[k];
                corners.push((x, y));
                let back = g.twin(x, k);
                k = (back + 1) % g.degree(y);
                x = y;
            }
            faces.push(Face { corners });
        }
    }
    FaceSet {
        faces,
        offsets,
        dart_face,
    }
}
