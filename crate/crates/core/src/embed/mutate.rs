use super::{EmbedError, EmbeddedGraph, Vertex};

impl EmbeddedGraph {
    /// Adds the edge `uv` through face `face`, splitting it in two. `v` is
    /// inserted into the rotation of `u` at `u`'s first corner on the face and
    /// symmetrically for `u`.
    pub fn add_edge(&self, u: Vertex, v: Vertex, face: usize) -> Result<EmbeddedGraph, EmbedError> {
        for x in [u, v] {
            if !self.contains(x) {
                return Err(EmbedError::UnknownVertex(x));
            }
        }
        if face >= self.faces().len() {
            return Err(EmbedError::UnknownFace(face));
        }
        if u == v {
            return Err(EmbedError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(EmbedError::AlreadyAdjacent(u, v));
        }
        let f = self.faces().face(face);
        let (cu, cv) = match (f.first_corner_at(u), f.first_corner_at(v)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(EmbedError::NotOnSameFace { u, v, face }),
        };
        let mut rot = self.rotation().to_vec();
        insert_at_corner(&mut rot, f.corners(), cu, v);
        insert_at_corner(&mut rot, f.corners(), cv, u);
        EmbeddedGraph::build(rot.len(), rot)
    }

    /// Removes `v` and its edges. Returns the new graph and, for each new
    /// vertex id, the id it had before (ids above `v` shift down by one).
    pub fn delete_vertex(&self, v: Vertex) -> Result<(EmbeddedGraph, Vec<Vertex>), EmbedError> {
        if !self.contains(v) {
            return Err(EmbedError::UnknownVertex(v));
        }
        if self.vertex_count() == 1 || !self.is_connected_without(&[v]) {
            return Err(EmbedError::WouldDisconnect);
        }
        let keep: Vec<Vertex> = self.vertices().filter(|&x| x != v).collect();
        self.induced(&keep)
    }

    /// Subgraph induced by `keep`, inheriting the rotation order. Returns the
    /// new-to-old id map (which is `keep` sorted).
    pub fn induced(&self, keep: &[Vertex]) -> Result<(EmbeddedGraph, Vec<Vertex>), EmbedError> {
        let mut old_ids = keep.to_vec();
        old_ids.sort_unstable();
        old_ids.dedup();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (i, &x) in old_ids.iter().enumerate() {
            if !self.contains(x) {
                return Err(EmbedError::UnknownVertex(x));
            }
            new_id[x] = i;
        }
        let rot: Vec<Vec<Vertex>> = old_ids
            .iter()
            .map(|&x| {
                self.neighbors(x)
                    .iter()
                    .filter_map(|&y| (new_id[y] != usize::MAX).then_some(new_id[y]))
                    .collect()
            })
            .collect();
        let g = EmbeddedGraph::build(rot.len(), rot).map_err(|e| match e {
            EmbedError::Disconnected => EmbedError::WouldDisconnect,
            other => other,
        })?;
        Ok((g, old_ids))
    }

    /// Removes the edge `uv`, which must not be a bridge.
    pub fn remove_edge(&self, u: Vertex, v: Vertex) -> Result<EmbeddedGraph, EmbedError> {
        for x in [u, v] {
            if !self.contains(x) {
                return Err(EmbedError::UnknownVertex(x));
            }
        }
        if !self.has_edge(u, v) {
            return Err(EmbedError::AsymmetricAdjacency { from: u, to: v });
        }
        let mut rot = self.rotation().to_vec();
        rot[u].retain(|&x| x != v);
        rot[v].retain(|&x| x != u);
        EmbeddedGraph::build(rot.len(), rot).map_err(|e| match e {
            EmbedError::Disconnected => EmbedError::WouldDisconnect,
            other => other,
        })
    }

    /// Places a new vertex (id `n`) inside `face`, joined to each distinct
    /// vertex in `attach` at its first corner on the face.
    pub fn insert_vertex_in_face(&self, face: usize, attach: &[Vertex]) -> Result<(EmbeddedGraph, Vertex), EmbedError> {
        if face >= self.faces().len() {
            return Err(EmbedError::UnknownFace(face));
        }
        let f = self.faces().face(face);
        let x = self.vertex_count();
        let mut rot = self.rotation().to_vec();
        if f.degree() == 0 {
            // lone vertex
            rot[0].push(x);
            rot.push(vec![0]);
            return EmbeddedGraph::build(rot.len(), rot).map(|g| (g, x));
        }
        let mut at: Vec<usize> = Vec::with_capacity(attach.len());
        for &a in attach {
            match f.first_corner_at(a) {
                Some(c) if !at.contains(&c) => at.push(c),
                Some(_) => return Err(EmbedError::DuplicateNeighbor { vertex: x, neighbor: a }),
                None => return Err(EmbedError::NotOnSameFace { u: a, v: x, face }),
            }
        }
        at.sort_unstable();
        for &c in &at {
            insert_at_corner(&mut rot, f.corners(), c, x);
        }
        // walk order around the face is anticlockwise around the new vertex
        rot.push(at.iter().rev().map(|&c| f.corners()[c].0).collect());
        EmbeddedGraph::build(rot.len(), rot).map(|g| (g, x))
    }
}

/// Inserts `new` into the rotation of the vertex leaving corner `c` of a face
/// walk, between the incoming and the outgoing edge of that corner.
fn insert_at_corner(rot: &mut [Vec<Vertex>], corners: &[(Vertex, Vertex)], c: usize, new: Vertex) {
    let (x, _) = corners[c];
    let (prev, _) = corners[(c + corners.len() - 1) % corners.len()];
    let list = &mut rot[x];
    let p = list
        .iter()
        .position(|&y| y == prev)
        .expect("face corner refers to a rotation entry");
    list.insert(p + 1, new);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::tests::k4;

    fn cycle(n: usize) -> EmbeddedGraph {
        let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
        EmbeddedGraph::build(n, rot).unwrap()
    }

    fn path3() -> EmbeddedGraph {
        EmbeddedGraph::build(3, vec![vec![1], vec![0, 2], vec![1]]).unwrap()
    }

    #[test]
    fn c4_diagonal_makes_two_triangles() {
        let g = cycle(4);
        let h = g.add_edge(0, 2, 0).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count(), h.faces().len()), (4, 5, 3));
        let mut degs: Vec<usize> = h.faces().iter().map(|f| f.degree()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![3, 3, 4]);
    }

    #[test]
    fn k4_pairs_are_adjacent() {
        assert_eq!(k4().add_edge(0, 1, 0).unwrap_err(), EmbedError::AlreadyAdjacent(0, 1));
    }

    #[test]
    fn c6_chord_splits_into_quadrilaterals() {
        let g = cycle(6);
        let h = g.add_edge(0, 3, 1).unwrap();
        let mut degs: Vec<usize> = h.faces().iter().map(|f| f.degree()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![4, 4, 6]);
    }

    #[test]
    fn add_edge_requires_shared_face() {
        // K4 minus edge 1-2: the triangle 0-2-3 does not touch 1
        let g = k4().remove_edge(1, 2).unwrap();
        assert_eq!(g.faces().len(), 3);
        let far = (0..g.faces().len()).find(|&f| !g.faces().face(f).contains(1)).unwrap();
        assert_eq!(
            g.add_edge(1, 2, far).unwrap_err(),
            EmbedError::NotOnSameFace { u: 1, v: 2, face: far }
        );
    }

    #[test]
    fn k4_minus_vertex_is_triangle() {
        let (h, map) = k4().delete_vertex(0).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (3, 3));
        assert_eq!(map, vec![1, 2, 3]);
    }

    #[test]
    fn path_deletions() {
        let (h, map) = path3().delete_vertex(0).unwrap();
        assert_eq!((h.vertex_count(), h.edge_count()), (2, 1));
        assert_eq!(map, vec![1, 2]);
        assert_eq!(path3().delete_vertex(1).unwrap_err(), EmbedError::WouldDisconnect);
    }

    #[test]
    fn bridge_removal_rejected() {
        assert_eq!(path3().remove_edge(0, 1).unwrap_err(), EmbedError::WouldDisconnect);
    }

    #[test]
    fn vertex_insertion_into_triangle() {
        let g = k4();
        let corners: Vec<Vertex> = g.faces().face(0).boundary().collect();
        let (h, x) = g.insert_vertex_in_face(0, &corners).unwrap();
        assert_eq!(x, 4);
        assert_eq!((h.vertex_count(), h.edge_count(), h.faces().len()), (5, 9, 6));
        assert!(h.faces().iter().all(|f| f.degree() == 3));
    }

    #[test]
    fn vertex_insertion_partial_attach() {
        let g = cycle(5);
        let (h, x) = g.insert_vertex_in_face(0, &[0, 2]).unwrap();
        assert_eq!(h.degree(x), 2);
        assert_eq!(h.faces().len(), 3);
        let (h, _) = g.insert_vertex_in_face(1, &[3]).unwrap();
        assert_eq!(h.faces().len(), 2);
    }
}
