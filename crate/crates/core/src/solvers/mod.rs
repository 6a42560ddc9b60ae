//! Square-coloring back-ends: verification, greedy and DSATUR heuristics, and
//! an exact branch-and-bound oracle for χ₂.

mod dsatur;
mod exact;
mod greedy;

pub use dsatur::{dsatur_color, Overflow};
pub use exact::{exact_chi2, greedy_clique, ExactError, ExactResult, DEFAULT_TIME_LIMIT};
pub use greedy::{greedy_color, smallest_last_order};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embed::{EmbeddedGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {0} has no color")]
    PartialColoring(Vertex),
    #[error("vertex {vertex} has color {color} outside 1..={palette}")]
    ColorOutOfRange {
        vertex: Vertex,
        color: usize,
        palette: usize,
    },
    #[error("coloring lists vertex {0}, which is not in the graph")]
    UnknownVertex(Vertex),
    #[error("malformed coloring file: {0}")]
    BadFormat(String),
}

/// A total vertex coloring with colors in `1..=palette_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareColoring {
    palette_size: usize,
    colors: Vec<usize>,
}

impl SquareColoring {
    /// Colors are indexed by vertex and must be nonzero.
    pub fn new(palette_size: usize, colors: Vec<usize>) -> Result<Self, ColoringError> {
        for (v, &c) in colors.iter().enumerate() {
            if c == 0 || c > palette_size {
                return Err(ColoringError::ColorOutOfRange {
                    vertex: v,
                    color: c,
                    palette: palette_size,
                });
            }
        }
        Ok(SquareColoring { palette_size, colors })
    }

    /// Uses the largest color as the palette size.
    pub fn from_colors(colors: Vec<usize>) -> Result<Self, ColoringError> {
        let k = colors.iter().copied().max().unwrap_or(0);
        SquareColoring::new(k, colors)
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn color_of(&self, v: Vertex) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut cs = self.colors.clone();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }

    pub fn to_json(&self) -> String {
        let rec = ColoringRecord {
            palette: self.palette_size,
            colors: self.colors.iter().copied().enumerate().collect(),
        };
        serde_json::to_string(&rec).expect("coloring serializes")
    }

    /// Parses `{"palette": k, "colors": {...}}` for a graph on `n` vertices.
    pub fn from_json(text: &str, n: usize) -> Result<Self, ColoringError> {
        let rec: ColoringRecord = serde_json::from_str(text).map_err(|e| ColoringError::BadFormat(e.to_string()))?;
        if let Some((&v, _)) = rec.colors.range(n..).next() {
            return Err(ColoringError::UnknownVertex(v));
        }
        let colors = (0..n)
            .map(|v| rec.colors.get(&v).copied().ok_or(ColoringError::PartialColoring(v)))
            .collect::<Result<Vec<_>, _>>()?;
        SquareColoring::new(rec.palette, colors)
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringRecord {
    palette: usize,
    colors: BTreeMap<usize, usize>,
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// Two vertices at distance at most two with the same color.
    Conflict {
        u: Vertex,
        v: Vertex,
        color: usize,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Checks every pair at distance one or two. Reports the violating pair that
/// is smallest in `(u, v)` order.
pub fn verify(g: &EmbeddedGraph, c: &SquareColoring) -> Result<Verdict, ColoringError> {
    let n = g.vertex_count();
    if c.len() < n {
        return Err(ColoringError::PartialColoring(c.len()));
    }
    if c.len() > n {
        return Err(ColoringError::UnknownVertex(n));
    }
    let mut best: Option<(Vertex, Vertex)> = None;
    for u in g.vertices() {
        for &w in g.neighbors(u) {
            for x in std::iter::once(w).chain(g.neighbors(w).iter().copied()) {
                if x != u && c.color_of(x) == c.color_of(u) {
                    let pair = (u.min(x), u.max(x));
                    if best.is_none_or(|b| pair < b) {
                        best = Some(pair);
                    }
                }
            }
        }
        if let Some((a, _)) = best {
            if a <= u {
                break;
            }
        }
    }
    Ok(match best {
        None => Verdict::Valid,
        Some((u, v)) => Verdict::Conflict {
            u,
            v,
            color: c.color_of(u),
        },
    })
}
