//! Brute-force square chromatic number, independent of the library: distances
//! by BFS over plain adjacency lists, then every set partition of the vertex
//! set is enumerated and the valid one with fewest blocks wins.

use std::collections::VecDeque;

pub fn conflicts(adj: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let n = adj.len();
    let mut m = vec![vec![false; n]; n];
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        for t in 0..n {
            m[s][t] = t != s && dist[t] <= 2;
        }
    }
    m
}

/// Minimum number of blocks over all valid partitions.
pub fn naive_chi2(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    if n == 0 {
        return 0;
    }
    let m = conflicts(adj);
    let mut block = vec![0usize; n];
    let mut best = n;
    enumerate(1, 1, &mut block, &m, &mut best);
    best
}

// restricted growth strings: block[i] <= 1 + max(block[..i])
fn enumerate(i: usize, used: usize, block: &mut [usize], m: &[Vec<bool>], best: &mut usize) {
    let n = block.len();
    if i == n {
        let valid = (0..n).all(|a| (a + 1..n).all(|b| !(m[a][b] && block[a] == block[b])));
        if valid && used < *best {
            *best = used;
        }
        return;
    }
    for b in 0..=used.min(n - 1) {
        block[i] = b;
        enumerate(i + 1, used.max(b + 1), block, m, best);
    }
}
