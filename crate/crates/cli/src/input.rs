use std::fs;
use std::path::Path;

use psc_core::embed::{parse_pg, EmbeddedGraph, Vertex};

use crate::CliError;

/// A graph file split into its connected components, each with the file id
/// of every vertex.
pub struct Input {
    pub n: usize,
    pub parts: Vec<(EmbeddedGraph, Vec<Vertex>)>,
}

impl Input {
    pub fn max_degree(&self) -> usize {
        self.parts.iter().map(|(g, _)| g.max_degree()).max().unwrap_or(0)
    }

    pub fn edges(&self) -> usize {
        self.parts.iter().map(|(g, _)| g.edge_count()).sum()
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<Input, CliError> {
    let text = read_text(path)?;
    let raw = parse_pg(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let n = raw.n;
    let parts = raw
        .components()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(Input { n, parts })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
