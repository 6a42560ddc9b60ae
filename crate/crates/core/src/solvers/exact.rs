use std::time::{Duration, Instant};

use thiserror::Error;

use super::{dsatur_color, SquareColoring};
use crate::embed::{square, EmbeddedGraph, SquareGraph, Vertex};

pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub chi2: usize,
    pub witness: SquareColoring,
    /// A clique of the square, hence a lower bound.
    pub lower_bound_clique: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("exact search timed out with {lower} <= chi2 <= {upper}")]
    Timeout {
        lower: usize,
        upper: usize,
        best: SquareColoring,
        clique: Vec<Vertex>,
    },
}

/// Exact χ₂: clique lower bound, DSATUR upper bound, then backtracking for
/// decreasing `k` until `k` colors prove infeasible.
pub fn exact_chi2(g: &EmbeddedGraph, time_limit: Duration) -> Result<ExactResult, ExactError> {
    let deadline = Instant::now() + time_limit;
    let sq = square(g);
    let clique = greedy_clique(g, &sq);
    let lower = clique.len();
    let mut best = dsatur_color(&sq, None).expect("unbounded DSATUR");
    best = SquareColoring::from_colors(best.colors().to_vec()).expect("positive colors");
    while best.palette_size() > lower {
        let k = best.palette_size() - 1;
        let mut search = Search::new(&sq, k, deadline);
        match search.run(&clique) {
            Outcome::Found(colors) => {
                best = SquareColoring::from_colors(colors).expect("positive colors");
            }
            Outcome::Infeasible => break,
            Outcome::Timeout => {
                return Err(ExactError::Timeout {
                    lower,
                    upper: best.palette_size(),
                    best,
                    clique,
                })
            }
        }
    }
    Ok(ExactResult {
        chi2: best.palette_size(),
        witness: best,
        lower_bound_clique: clique,
    })
}

/// Largest clique found by greedy extension from each seed, candidates by
/// decreasing square-degree. The closed neighborhood of a maximum-degree
/// vertex is one candidate, so the size is at least `Δ + 1`.
pub fn greedy_clique(g: &EmbeddedGraph, sq: &SquareGraph) -> Vec<Vertex> {
    let n = sq.vertex_count();
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(sq.degree(v)), v));
    let mut best: Vec<Vertex> = Vec::new();
    if let Some(hub) = g.vertices().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) {
        best.push(hub);
        best.extend_from_slice(g.neighbors(hub));
    }
    for &seed in &by_degree {
        if sq.degree(seed) < best.len() {
            break;
        }
        let mut clique = vec![seed];
        for &u in &by_degree {
            if u != seed && clique.iter().all(|&w| sq.contains(u, w)) {
                clique.push(u);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

enum Outcome {
    Found(Vec<usize>),
    Infeasible,
    Timeout,
}

struct Search<'a> {
    sq: &'a SquareGraph,
    k: usize,
    color: Vec<usize>,
    // forbid[v][c]: number of colored square-neighbors of v with color c
    forbid: Vec<Vec<u32>>,
    sat: Vec<usize>,
    deadline: Instant,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(sq: &'a SquareGraph, k: usize, deadline: Instant) -> Self {
        let n = sq.vertex_count();
        Search {
            sq,
            k,
            color: vec![0; n],
            forbid: vec![vec![0; k + 1]; n],
            sat: vec![0; n],
            deadline,
            nodes: 0,
        }
    }

    fn assign(&mut self, v: Vertex, c: usize) {
        self.color[v] = c;
        for &u in self.sq.neighbors(v) {
            self.forbid[u][c] += 1;
            if self.forbid[u][c] == 1 {
                self.sat[u] += 1;
            }
        }
    }

    fn unassign(&mut self, v: Vertex) {
        let c = self.color[v];
        self.color[v] = 0;
        for &u in self.sq.neighbors(v) {
            self.forbid[u][c] -= 1;
            if self.forbid[u][c] == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn run(&mut self, clique: &[Vertex]) -> Outcome {
        if clique.len() > self.k {
            return Outcome::Infeasible;
        }
        // the clique takes colors 1..=|clique| in any solution up to renaming
        for (i, &v) in clique.iter().enumerate() {
            self.assign(v, i + 1);
        }
        let remaining = self.sq.vertex_count() - clique.len();
        match self.extend(remaining, clique.len()) {
            Some(true) => Outcome::Found(self.color.clone()),
            Some(false) => Outcome::Infeasible,
            None => Outcome::Timeout,
        }
    }

    /// `None` on timeout.
    fn extend(&mut self, remaining: usize, max_used: usize) -> Option<bool> {
        if remaining == 0 {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() > self.deadline {
            return None;
        }
        let v = self.pick().expect("an uncolored vertex remains");
        if self.sat[v] >= self.k {
            return Some(false);
        }
        let top = (max_used + 1).min(self.k);
        for c in 1..=top {
            if self.forbid[v][c] != 0 {
                continue;
            }
            self.assign(v, c);
            let r = self.extend(remaining - 1, max_used.max(c));
            self.unassign(v);
            match r {
                Some(true) => {
                    // keep the solution in place for the caller
                    self.assign(v, c);
                    return Some(true);
                }
                Some(false) => {}
                None => return None,
            }
        }
        Some(false)
    }

    fn pick(&self) -> Option<Vertex> {
        (0..self.sq.vertex_count())
            .filter(|&v| self.color[v] == 0)
            .max_by_key(|&v| (self.sat[v], self.sq.degree(v), std::cmp::Reverse(v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, gen_wegner, k4};
    use crate::solvers::verify;

    #[test]
    fn small_examples() {
        let r = exact_chi2(&gen_cycle(5).unwrap(), DEFAULT_TIME_LIMIT).unwrap();
        assert_eq!(r.chi2, 5);
        let r = exact_chi2(&k4(), DEFAULT_TIME_LIMIT).unwrap();
        assert_eq!(r.chi2, 4);
        assert_eq!(r.lower_bound_clique, vec![0, 1, 2, 3]);
        let c6 = gen_cycle(6).unwrap();
        assert_eq!(exact_chi2(&c6, DEFAULT_TIME_LIMIT).unwrap().chi2, 3);
        let c7 = gen_cycle(7).unwrap();
        assert_eq!(exact_chi2(&c7, DEFAULT_TIME_LIMIT).unwrap().chi2, 4);
    }

    #[test]
    fn wegner_5() {
        let g = gen_wegner(5).unwrap();
        let r = exact_chi2(&g, DEFAULT_TIME_LIMIT).unwrap();
        assert_eq!(r.chi2, 8);
        assert!(verify(&g, &r.witness).unwrap().is_valid());
    }
}
