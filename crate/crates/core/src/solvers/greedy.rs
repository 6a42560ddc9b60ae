use super::SquareColoring;
use crate::embed::{square, EmbeddedGraph, SquareGraph, Vertex};

/// Smallest-last order of `g`: vertices are removed by minimum remaining
/// degree (ties by lower id) and returned in reverse removal order.
pub fn smallest_last_order(g: &EmbeddedGraph) -> Vec<Vertex> {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let max = g.max_degree();
    let mut buckets: Vec<std::collections::BTreeSet<Vertex>> = vec![Default::default(); max + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut low = 0;
    for _ in 0..n {
        low = low.min(max);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop_first().expect("non-empty bucket");
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                buckets[deg[u]].remove(&u);
                deg[u] -= 1;
                buckets[deg[u]].insert(u);
                low = low.min(deg[u]);
            }
        }
    }
    order.reverse();
    order
}

/// Greedy first-fit on the square along the smallest-last order of `g`.
pub fn greedy_color(g: &EmbeddedGraph) -> SquareColoring {
    let sq = square(g);
    greedy_in_order(&sq, &smallest_last_order(g))
}

pub(crate) fn greedy_in_order(sq: &SquareGraph, order: &[Vertex]) -> SquareColoring {
    let n = sq.vertex_count();
    let mut color = vec![0usize; n];
    let mut mark = vec![usize::MAX; n + 2];
    for &v in order {
        for &u in sq.neighbors(v) {
            if color[u] != 0 {
                mark[color[u]] = v;
            }
        }
        color[v] = (1..).find(|&c| mark[c] != v).expect("free color");
    }
    SquareColoring::from_colors(color).expect("colors are positive")
}
