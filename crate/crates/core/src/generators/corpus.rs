use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::stacked::{dfs_tree, drop_edges, thin_edges};
use super::{gen_cycle, gen_grid, gen_hub_triple, gen_stacked_biased, gen_triangular_grid, path, star, GenError};
use crate::embed::{EmbeddedGraph, Vertex};

const ATTEMPTS_PER_GRAPH: usize = 64;

/// Corpus request: `count` graphs with `n_min <= n <= n_max` and
/// `delta_min <= Δ <= delta_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub delta_min: usize,
    pub delta_max: Option<usize>,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn new(count: usize, n_range: (usize, usize), delta_min: usize, seed: u64) -> Self {
        CorpusSpec {
            count,
            n_min: n_range.0,
            n_max: n_range.1,
            delta_min,
            delta_max: None,
            seed,
        }
    }

    pub fn with_delta_max(mut self, cap: usize) -> Self {
        self.delta_max = Some(cap);
        self
    }

    fn accepts(&self, g: &EmbeddedGraph) -> bool {
        let (n, d) = (g.vertex_count(), g.max_degree());
        n >= self.n_min && n <= self.n_max && d >= self.delta_min && self.delta_max.is_none_or(|cap| d <= cap)
    }
}

/// Builds the corpus. Member `i` depends only on `(seed, i)`, so any prefix
/// of a larger corpus with the same spec is identical.
pub fn gen_corpus(spec: &CorpusSpec) -> Result<Vec<EmbeddedGraph>, GenError> {
    if spec.n_min == 0 || spec.n_min > spec.n_max {
        return Err(GenError::BadParam(format!(
            "bad size range [{}, {}]",
            spec.n_min, spec.n_max
        )));
    }
    if spec.delta_max.is_some_and(|cap| cap < spec.delta_min) {
        return Err(GenError::BadParam("delta_max below delta_min".into()));
    }
    let mut out = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(i as u64);
        let g = (0..ATTEMPTS_PER_GRAPH)
            .filter_map(|_| candidate(spec, &mut rng))
            .find(|g| spec.accepts(g));
        match g {
            Some(g) => out.push(g),
            None => {
                return Err(GenError::ExhaustedAttempts {
                    wanted: spec.count,
                    built: out.len(),
                })
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
enum Family {
    Stacked,
    Biased,
    Thinned,
    HubTriple,
    Grid,
    TriGrid,
    Cycle,
    Tiny,
}

fn candidate(spec: &CorpusSpec, rng: &mut ChaCha8Rng) -> Option<EmbeddedGraph> {
    let n = rng.gen_range(spec.n_min..=spec.n_max);
    let low_cap = spec.delta_max.is_some_and(|c| c <= 6);
    let family = if n < 4 {
        Family::Tiny
    } else if low_cap {
        *[
            Family::Grid,
            Family::TriGrid,
            Family::Cycle,
            Family::Thinned,
            Family::Stacked,
            Family::Biased,
        ]
        .choose(rng)?
    } else if spec.delta_min >= 7 {
        *[
            Family::Stacked,
            Family::Biased,
            Family::Biased,
            Family::Thinned,
            Family::HubTriple,
        ]
        .choose(rng)?
    } else {
        *[
            Family::Stacked,
            Family::Biased,
            Family::Thinned,
            Family::HubTriple,
            Family::Grid,
            Family::TriGrid,
            Family::Cycle,
        ]
        .choose(rng)?
    };
    let seed: u64 = rng.gen();
    let mut g = match family {
        Family::Tiny => match rng.gen_range(0..3) {
            0 => path(n).ok()?,
            1 if n >= 3 => gen_cycle(n).ok()?,
            _ => star(n - 1).ok()?,
        },
        Family::Stacked => gen_stacked_biased(n, seed, 0.0).ok()?,
        Family::Biased => {
            let target = spec.delta_min.max(4) + rng.gen_range(0..=8);
            let bias = (target.saturating_sub(3) as f64 / (n - 3) as f64).clamp(0.0, 1.0);
            gen_stacked_biased(n, seed, bias).ok()?
        }
        Family::Thinned => {
            let g = gen_stacked_biased(n, seed, 0.0).ok()?;
            let prob = rng.gen_range(0.1..0.7);
            thin_edges(&g, rng, prob).ok()?
        }
        Family::HubTriple => {
            let rest = n.saturating_sub(3).max(3);
            let p = rng.gen_range(1..=rest - 2);
            let q = rng.gen_range(1..=rest - p - 1);
            gen_hub_triple(p, q, rest - p - q, rng.gen_bool(0.5)).ok()?
        }
        Family::Grid | Family::TriGrid => {
            let rows = rng.gen_range(1..=((n as f64).sqrt() as usize).max(1));
            let cols = (n / rows).max(1);
            if matches!(family, Family::Grid) {
                gen_grid(rows, cols).ok()?
            } else {
                gen_triangular_grid(rows, cols).ok()?
            }
        }
        Family::Cycle => gen_cycle(n).ok()?,
    };
    let ops = rng.gen_range(0..=3 + g.vertex_count() / 40);
    for _ in 0..ops {
        if let Some(h) = perturb(&g, spec.n_max, rng) {
            g = h;
        }
    }
    if let Some(cap) = spec.delta_max {
        g = cap_degree(&g, cap, rng)?;
    }
    Some(g)
}

fn perturb(g: &EmbeddedGraph, n_max: usize, rng: &mut ChaCha8Rng) -> Option<EmbeddedGraph> {
    let f = rng.gen_range(0..g.faces().len());
    let face = g.faces().face(f);
    let verts = face.vertex_set();
    match rng.gen_range(0..3) {
        0 => {
            // chord through a 4+-face
            if face.degree() < 4 {
                return None;
            }
            let u = *verts.choose(rng)?;
            let options: Vec<Vertex> = verts.iter().copied().filter(|&w| w != u && !g.has_edge(u, w)).collect();
            let v = *options.choose(rng)?;
            g.add_edge(u, v, f).ok()
        }
        1 => {
            if g.vertex_count() >= n_max || verts.is_empty() {
                return None;
            }
            let k = rng.gen_range(1..=verts.len().min(4));
            let attach: Vec<Vertex> = verts.choose_multiple(rng, k).copied().collect();
            g.insert_vertex_in_face(f, &attach).ok().map(|(h, _)| h)
        }
        _ => {
            let u = rng.gen_range(0..g.vertex_count());
            let v = *g.neighbors(u).choose(rng)?;
            g.remove_edge(u, v).ok()
        }
    }
}

/// Drops edges outside a spanning tree at vertices above `cap`, highest-degree
/// neighbors first.
fn cap_degree(g: &EmbeddedGraph, cap: usize, rng: &mut ChaCha8Rng) -> Option<EmbeddedGraph> {
    if g.max_degree() <= cap {
        return Some(g.clone());
    }
    let tree = dfs_tree(g, rng.gen_range(0..g.vertex_count()));
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut dropped: Vec<(Vertex, Vertex)> = Vec::new();
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    for v in order {
        if deg[v] <= cap {
            continue;
        }
        let mut nbrs: Vec<Vertex> = g.neighbors(v).to_vec();
        nbrs.sort_by_key(|&u| (std::cmp::Reverse(deg[u]), u));
        for u in nbrs {
            if deg[v] <= cap {
                break;
            }
            let e = (v.min(u), v.max(u));
            if tree.binary_search(&e).is_ok() || dropped.contains(&e) {
                continue;
            }
            dropped.push(e);
            deg[v] -= 1;
            deg[u] -= 1;
        }
    }
    drop_edges(g, &dropped).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn high_delta_filter() {
        let graphs = gen_corpus(&CorpusSpec::new(10, (20, 40), 9, 1)).unwrap();
        assert_eq!(graphs.len(), 10);
        for g in &graphs {
            assert!(g.max_degree() >= 9);
            assert!((20..=40).contains(&g.vertex_count()));
        }
    }

    #[test]
    fn single_tiny_graph() {
        let graphs = gen_corpus(&CorpusSpec::new(1, (4, 4), 0, 11)).unwrap();
        assert_eq!(graphs[0].vertex_count(), 4);
    }

    #[test]
    fn delta_twelve() {
        let graphs = gen_corpus(&CorpusSpec::new(5, (30, 60), 12, 3)).unwrap();
        assert!(graphs.iter().all(|g| g.max_degree() >= 12));
    }

    #[test]
    fn capped_corpus() {
        let graphs = gen_corpus(&CorpusSpec::new(20, (10, 80), 0, 4).with_delta_max(6)).unwrap();
        assert!(graphs.iter().all(|g| g.max_degree() <= 6));
    }

    #[test]
    fn reproducible_and_prefix_stable() {
        let a = gen_corpus(&CorpusSpec::new(6, (10, 30), 0, 9)).unwrap();
        let b = gen_corpus(&CorpusSpec::new(3, (10, 30), 0, 9)).unwrap();
        assert_eq!(a[..3], b[..]);
    }

    #[test]
    fn impossible_filter_exhausts() {
        let err = gen_corpus(&CorpusSpec::new(2, (4, 5), 9, 0)).unwrap_err();
        assert_eq!(err, GenError::ExhaustedAttempts { wanted: 2, built: 0 });
    }
}
