use std::collections::BTreeSet;

use crate::embed::{EmbedError, EmbeddedGraph, Vertex};

/// Joins each pair of neighbors of `v` through the face at their shared
/// corner of `v`, then deletes `v`. Returns the new graph and its new-to-old
/// id map.
pub(super) fn delete_and_add(
    g: &EmbeddedGraph,
    v: Vertex,
    edges: &[(Vertex, Vertex)],
) -> Result<(EmbeddedGraph, Vec<Vertex>), String> {
    let mut rot = g.rotation().to_vec();
    for &(x, y) in edges {
        if g.has_edge(x, y) {
            return Err(format!("{x} and {y} are already adjacent"));
        }
        // walk x -> v -> y: y goes right before v around x, x right after v around y
        let (a, b) = if g.successor(v, x) == Some(y) {
            (x, y)
        } else if g.successor(v, y) == Some(x) {
            (y, x)
        } else {
            return Err(format!("{x} and {y} are not consecutive around {v}"));
        };
        let pa = rot[a].iter().position(|&z| z == v).expect("a ~ v");
        rot[a].insert(pa, b);
        let pb = rot[b].iter().position(|&z| z == v).expect("b ~ v");
        rot[b].insert(pb + 1, a);
    }
    let joined = EmbeddedGraph::build(g.vertex_count(), rot).map_err(|e| e.to_string())?;
    if !is_plane(&joined) {
        return Err("edge insertion left the plane".into());
    }
    joined.delete_vertex(v).map_err(|e: EmbedError| e.to_string())
}

/// Euler's formula for a connected embedding.
pub(super) fn is_plane(g: &EmbeddedGraph) -> bool {
    let n = g.vertex_count() as i64;
    n == 0 || n - g.edge_count() as i64 + g.faces().len() as i64 == 2
}

/// Renaming of the second part's colors in `1..=palette`, as `perm[c - 1]`.
/// The separator endpoints take their colors from the first part and the
/// colors `near2` (second-part vertices next to the separator) move, in
/// ascending order, to the smallest colors outside `near1` and the endpoint
/// colors. Everything left is matched in ascending order.
pub(super) fn merge_permutation(
    palette: usize,
    ends1: (usize, usize),
    ends2: (usize, usize),
    near1: &BTreeSet<usize>,
    near2: &BTreeSet<usize>,
) -> Result<Vec<usize>, String> {
    let mut perm = vec![0usize; palette + 1];
    let mut taken = vec![false; palette + 1];
    for (src, dst) in [(ends2.0, ends1.0), (ends2.1, ends1.1)] {
        if perm[src] != 0 || taken[dst] {
            return Err(format!("separator colors clash: {ends1:?} vs {ends2:?}"));
        }
        perm[src] = dst;
        taken[dst] = true;
    }
    let mut free = (1..=palette).filter(|c| !near1.contains(c));
    for &c in near2 {
        if perm[c] != 0 {
            return Err(format!("color {c} is on a separator endpoint and next to it"));
        }
        let dst = free
            .by_ref()
            .find(|&t| !taken[t])
            .ok_or_else(|| format!("no room for {} colors beside {} in {palette}", near2.len(), near1.len()))?;
        perm[c] = dst;
        taken[dst] = true;
    }
    let mut rest = (1..=palette).filter(|&t| !taken[t]);
    for slot in perm.iter_mut().skip(1) {
        if *slot == 0 {
            *slot = rest.next().expect("bijection");
        }
    }
    Ok(perm[1..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, gen_grid, icosahedron};

    #[test]
    fn deg2_join_stays_plane() {
        let g = gen_cycle(5).unwrap();
        let (h, map) = delete_and_add(&g, 0, &[(1, 4)]).unwrap();
        assert_eq!(map, vec![1, 2, 3, 4]);
        assert_eq!(h.edge_count(), 4);
        assert!(h.faces().iter().all(|f| f.degree() == 4));
    }

    #[test]
    fn grid_centre_two_chords() {
        let g = gen_grid(3, 3).unwrap();
        let nb = g.neighbors(4).to_vec();
        let (h, _) = delete_and_add(&g, 4, &[(nb[0], nb[1]), (nb[1], nb[2])]).unwrap();
        assert!(is_plane(&h));
        assert_eq!(h.edge_count(), 10);
        assert!(delete_and_add(&icosahedron(), 0, &[(1, 2)]).is_err());
        assert!(delete_and_add(&g, 4, &[(nb[0], nb[2])]).is_err());
    }

    #[test]
    fn merge_identity_when_disjoint() {
        let near1: BTreeSet<usize> = [3].into();
        let near2: BTreeSet<usize> = [3, 4].into();
        let p = merge_permutation(6, (1, 2), (1, 2), &near1, &near2).unwrap();
        assert_eq!(p, vec![1, 2, 4, 5, 3, 6]);
        let near1: BTreeSet<usize> = (3..=5).collect();
        assert!(merge_permutation(6, (1, 2), (2, 1), &near1, &near2).is_err());
    }
}
