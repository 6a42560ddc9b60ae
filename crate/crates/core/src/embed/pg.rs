//! The `.pg` text format.
//!
//! ```text
//! # comment
//! n 3
//! 0: 1 2
//! 1: 2 0
//! 2: 0 1
//! ```
//!
//! The header gives the vertex count; each vertex line lists its clockwise
//! rotation. Serialization is canonical (vertex order, single spaces, no
//! comments), so `to_pg` after parsing its own output is the identity.

use std::fmt::Write as _;

use thiserror::Error;

use super::{EmbedError, EmbeddedGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgError {
    #[error("line {line}: expected header `n <count>`")]
    BadHeader { line: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: malformed vertex line")]
    BadLine { line: usize },
    #[error("line {line}: vertex {vertex} out of range")]
    OutOfRange { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} listed twice")]
    DuplicateVertex { line: usize, vertex: usize },
    #[error("vertex {0} has no rotation line")]
    MissingVertex(usize),
}

/// A parsed but unvalidated rotation system. May be disconnected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRotation {
    pub n: usize,
    pub rotation: Vec<Vec<Vertex>>,
}

pub fn parse_pg(text: &str) -> Result<RawRotation, PgError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(PgError::MissingHeader)?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count.parse::<usize>().map_err(|_| PgError::BadHeader { line: hline })?,
        _ => return Err(PgError::BadHeader { line: hline }),
    };

    let mut rotation: Vec<Option<Vec<Vertex>>> = vec![None; n];
    for (line, l) in lines {
        let (head, rest) = l.split_once(':').ok_or(PgError::BadLine { line })?;
        let u: usize = head.trim().parse().map_err(|_| PgError::BadLine { line })?;
        if u >= n {
            return Err(PgError::OutOfRange { line, vertex: u });
        }
        if rotation[u].is_some() {
            return Err(PgError::DuplicateVertex { line, vertex: u });
        }
        let mut nbrs = Vec::new();
        for tok in rest.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| PgError::BadLine { line })?;
            if v >= n {
                return Err(PgError::OutOfRange { line, vertex: v });
            }
            nbrs.push(v);
        }
        rotation[u] = Some(nbrs);
    }
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or(PgError::MissingVertex(v)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RawRotation { n, rotation })
}

impl RawRotation {
    pub fn build(self) -> Result<EmbeddedGraph, EmbedError> {
        EmbeddedGraph::build(self.n, self.rotation)
    }

    /// Splits into connected components (over the symmetric closure of the
    /// lists) and builds each one. Returns each component with the original
    /// id of each of its vertices.
    pub fn components(&self) -> Result<Vec<(EmbeddedGraph, Vec<Vertex>)>, EmbedError> {
        let n = self.n;
        let mut undirected = vec![Vec::new(); n];
        for (u, nbrs) in self.rotation.iter().enumerate() {
            for &v in nbrs {
                if v >= n {
                    return Err(EmbedError::UnknownVertex(v));
                }
                undirected[u].push(v);
                undirected[v].push(u);
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut groups: Vec<Vec<Vertex>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = groups.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for &y in &undirected[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            groups.push(members);
        }
        let mut local = vec![0; n];
        for members in &groups {
            for (i, &x) in members.iter().enumerate() {
                local[x] = i;
            }
        }
        groups
            .into_iter()
            .map(|members| {
                let rot = members
                    .iter()
                    .map(|&x| self.rotation[x].iter().map(|&y| local[y]).collect())
                    .collect();
                EmbeddedGraph::build(members.len(), rot).map(|g| (g, members))
            })
            .collect()
    }
}

impl EmbeddedGraph {
    /// Canonical `.pg` serialization.
    pub fn to_pg(&self) -> String {
        let mut out = String::with_capacity(8 * (self.vertex_count() + 2 * self.edge_count()));
        let _ = writeln!(out, "n {}", self.vertex_count());
        for v in self.vertices() {
            let _ = write!(out, "{v}:");
            for u in self.neighbors(v) {
                let _ = write!(out, " {u}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_pg(text: &str) -> Result<EmbeddedGraph, PgFormatError> {
        Ok(parse_pg(text)?.build()?)
    }
}

/// Parse or validation failure while reading a `.pg` file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgFormatError {
    #[error(transparent)]
    Syntax(#[from] PgError),
    #[error(transparent)]
    Embedding(#[from] EmbedError),
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "n 3\n0: 1 2\n1: 2 0\n2: 0 1\n";

    #[test]
    fn round_trip_is_exact() {
        let g = EmbeddedGraph::from_pg(TRIANGLE).unwrap();
        assert_eq!(g.to_pg(), TRIANGLE);
    }

    #[test]
    fn comments_and_order_are_accepted() {
        let text = "# a triangle\nn 3\n2: 0 1\n# middle\n0: 1 2\n1: 2 0\n";
        let g = EmbeddedGraph::from_pg(text).unwrap();
        assert_eq!(g.to_pg(), TRIANGLE);
    }

    #[test]
    fn lone_vertex_line() {
        let g = EmbeddedGraph::from_pg("n 1\n0:\n").unwrap();
        assert_eq!(g.to_pg(), "n 1\n0:\n");
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(parse_pg(""), Err(PgError::MissingHeader));
        assert_eq!(parse_pg("m 3\n"), Err(PgError::BadHeader { line: 1 }));
        assert_eq!(parse_pg("n 2\n0 1\n"), Err(PgError::BadLine { line: 2 }));
        assert_eq!(parse_pg("n 2\n0: 4\n"), Err(PgError::OutOfRange { line: 2, vertex: 4 }));
        assert_eq!(parse_pg("n 2\n0: 1\n"), Err(PgError::MissingVertex(1)));
        assert_eq!(
            parse_pg("n 2\n0: 1\n0: 1\n"),
            Err(PgError::DuplicateVertex { line: 3, vertex: 0 })
        );
    }

    #[test]
    fn components_are_split() {
        let raw = parse_pg("n 5\n0: 1\n1: 0\n2: 3 4\n3: 4 2\n4: 2 3\n").unwrap();
        let comps = raw.components().unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].1, vec![0, 1]);
        assert_eq!(comps[1].1, vec![2, 3, 4]);
        assert_eq!(comps[1].0.edge_count(), 3);
    }
}
