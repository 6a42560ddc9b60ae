use std::cmp::Reverse;
use std::collections::BTreeSet;

use thiserror::Error;

use super::SquareColoring;
use crate::embed::{SquareGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("DSATUR needed more than {budget} colors")]
pub struct Overflow {
    pub budget: usize,
}

/// DSATUR on the square. The next vertex has the most distinct neighbor
/// colors, then the higher square-degree, then the lower id; it takes the
/// smallest free color.
pub fn dsatur_color(sq: &SquareGraph, budget: Option<usize>) -> Result<SquareColoring, Overflow> {
    let n = sq.vertex_count();
    let mut color = vec![0usize; n];
    // distinct neighbor colors of each vertex, sorted
    let mut seen: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue: BTreeSet<(usize, usize, Reverse<Vertex>)> = (0..n).map(|v| (0, sq.degree(v), Reverse(v))).collect();
    while let Some((_, _, Reverse(v))) = queue.pop_last() {
        let mut c = 1;
        for &s in &seen[v] {
            if s == c {
                c += 1;
            } else if s > c {
                break;
            }
        }
        if let Some(b) = budget {
            if c > b {
                return Err(Overflow { budget: b });
            }
        }
        color[v] = c;
        for &u in sq.neighbors(v) {
            if color[u] != 0 {
                continue;
            }
            if let Err(pos) = seen[u].binary_search(&c) {
                let key = (seen[u].len(), sq.degree(u), Reverse(u));
                queue.remove(&key);
                seen[u].insert(pos, c);
                queue.insert((seen[u].len(), sq.degree(u), Reverse(u)));
            }
        }
    }
    let k = color.iter().copied().max().unwrap_or(0);
    Ok(SquareColoring::new(budget.unwrap_or(k).max(k), color).expect("colors are positive"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::square;
    use crate::generators::{gen_cycle, gen_stacked_triangulation, k4, star};
    use crate::solvers::verify;

    #[test]
    fn examples() {
        let c = dsatur_color(&square(&k4()), Some(4)).unwrap();
        assert_eq!(c.colors_used(), 4);
        assert_eq!(
            dsatur_color(&square(&gen_cycle(5).unwrap()), Some(4)),
            Err(Overflow { budget: 4 })
        );
        let c = dsatur_color(&square(&star(4).unwrap()), None).unwrap();
        assert_eq!(c.palette_size(), 5);
    }

    #[test]
    fn valid_on_triangulation() {
        let g = gen_stacked_triangulation(400, 8).unwrap();
        let c = dsatur_color(&square(&g), None).unwrap();
        assert!(verify(&g, &c).unwrap().is_valid());
    }

    #[test]
    fn budget_sets_palette() {
        let c = dsatur_color(&square(&k4()), Some(10)).unwrap();
        assert_eq!(c.palette_size(), 10);
        assert_eq!(c.colors_used(), 4);
    }
}
