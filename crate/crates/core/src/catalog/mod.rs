//! Reducible configurations: detection, witnesses and reduction recipes.

mod check;
mod detect;

pub use check::{check_witness, forbidden_bound};
pub use detect::{
    find_edge_separator, find_face_two_small, find_generic_deletable, find_small_vertex_configs,
    find_weak_configs_delta6,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, CatalogKind};
use crate::embed::{EmbeddedGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("the delta <= 6 catalog needs max degree <= 6, got {0}")]
    DeltaTooLarge(usize),
}

/// Configuration kinds in reducer priority order within each catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    Deg1,
    Deg2,
    EdgeSeparator,
    FaceTwoSmall,
    Deg3SmallNbr,
    Deg3TwoTriangles,
    Deg3TriTwoSquares,
    Deg4Tri5Tri,
    GenericDeletable,
    #[serde(rename = "W_Tri5")]
    WTri5,
    #[serde(rename = "W_Deg4ThreeTriangles")]
    WDeg4ThreeTriangles,
    #[serde(rename = "W_Deg3Triangle")]
    WDeg3Triangle,
    #[serde(rename = "W_GenericDeletable21")]
    WGenericDeletable21,
}

const MAIN_KINDS: &[Kind] = &[
    Kind::Deg1,
    Kind::Deg2,
    Kind::EdgeSeparator,
    Kind::FaceTwoSmall,
    Kind::Deg3SmallNbr,
    Kind::Deg3TwoTriangles,
    Kind::Deg3TriTwoSquares,
    Kind::Deg4Tri5Tri,
    Kind::GenericDeletable,
];

const DELTA6_KINDS: &[Kind] = &[
    Kind::Deg1,
    Kind::Deg2,
    Kind::EdgeSeparator,
    Kind::FaceTwoSmall,
    Kind::Deg3SmallNbr,
    Kind::WTri5,
    Kind::WDeg4ThreeTriangles,
    Kind::WDeg3Triangle,
    Kind::WGenericDeletable21,
];

/// Kinds of a catalog, highest priority first.
pub fn kinds_for(catalog: CatalogKind) -> &'static [Kind] {
    match catalog {
        CatalogKind::Main => MAIN_KINDS,
        CatalogKind::Delta6 => DELTA6_KINDS,
    }
}

/// How to shrink the graph around a witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Recipe {
    Delete {
        v: Vertex,
    },
    /// Delete `v` after joining each listed pair, every pair being two
    /// neighbors of `v` that are consecutive in its rotation.
    DeleteAndAdd {
        v: Vertex,
        edges: Vec<(Vertex, Vertex)>,
    },
    AddEdge {
        u: Vertex,
        v: Vertex,
        face: usize,
    },
    /// Split along the edge-separator `uv`; `side` is one component of
    /// `G - {u, v}`.
    Split {
        u: Vertex,
        v: Vertex,
        side: Vec<Vertex>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfigWitness {
    pub kind: Kind,
    pub actors: Vec<Vertex>,
    pub faces: Vec<usize>,
    pub recipe: Recipe,
}

impl ConfigWitness {
    fn sort_key(&self) -> (Kind, &[Vertex], &[usize]) {
        (self.kind, &self.actors, &self.faces)
    }
}

/// Witnesses of one kind (empty if the kind needs a context it lacks), sorted
/// by actors.
pub fn detect_kind(g: &EmbeddedGraph, budget: &Budget, kind: Kind) -> Vec<ConfigWitness> {
    let d = budget.delta_context;
    let mut out = match kind {
        Kind::Deg1 => detect::deg1(g),
        Kind::Deg2 => detect::deg2(g),
        Kind::EdgeSeparator => detect::edge_separators(g, false),
        Kind::FaceTwoSmall => detect::face_two_small(g, d),
        Kind::Deg3SmallNbr => detect::deg3_small_nbr(g),
        Kind::Deg3TwoTriangles => detect::deg3_two_triangles(g, d),
        Kind::Deg3TriTwoSquares => detect::deg3_tri_two_squares(g, d),
        Kind::Deg4Tri5Tri => detect::deg4_tri5_tri(g),
        Kind::GenericDeletable => detect::generic(g, budget.palette_size, Kind::GenericDeletable),
        Kind::WTri5 => detect::w_tri5(g),
        Kind::WDeg4ThreeTriangles => detect::w_deg4_three_triangles(g),
        Kind::WDeg3Triangle => detect::w_deg3_triangle(g),
        Kind::WGenericDeletable21 => detect::generic(g, 21, Kind::WGenericDeletable21),
    };
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Every witness of the budget's catalog in priority order: kind rank, then
/// actors, then faces.
pub fn detect_all(g: &EmbeddedGraph, budget: &Budget) -> Vec<ConfigWitness> {
    kinds_for(budget.catalog)
        .iter()
        .flat_map(|&k| detect_kind(g, budget, k))
        .collect()
}

/// The first entry of [`detect_all`], without scanning lower-priority kinds.
pub fn first_witness(g: &EmbeddedGraph, budget: &Budget) -> Option<ConfigWitness> {
    for &kind in kinds_for(budget.catalog) {
        let found = if kind == Kind::EdgeSeparator {
            detect::edge_separators(g, true)
        } else {
            detect_kind(g, budget, kind)
        };
        if let Some(w) = found.into_iter().next() {
            return Some(w);
        }
    }
    None
}

/// JSON array of witnesses, fields in declaration order.
pub fn report_json(witnesses: &[ConfigWitness]) -> String {
    serde_json::to_string(witnesses).expect("witnesses serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_cycle, gen_wegner, icosahedron, k4, octahedron, path};

    fn main_budget(g: &EmbeddedGraph) -> Budget {
        Budget {
            catalog: CatalogKind::Main,
            ..Budget::for_delta(g.max_degree().max(9))
        }
    }

    #[test]
    fn c5_reports_deg2_only() {
        let g = gen_cycle(5).unwrap();
        let ws = detect_all(&g, &main_budget(&g));
        assert_eq!(ws.len(), 5);
        assert!(ws.iter().all(|w| w.kind == Kind::Deg2));
    }

    #[test]
    fn p3_deg1_at_endpoints() {
        let g = path(3).unwrap();
        let ws = detect_kind(&g, &main_budget(&g), Kind::Deg1);
        let vs: Vec<Vertex> = ws.iter().map(|w| w.actors[0]).collect();
        assert_eq!(vs, vec![0, 2]);
        assert!(matches!(ws[0].recipe, Recipe::Delete { v: 0 }));
    }

    #[test]
    fn c4_deg2_everywhere() {
        let g = gen_cycle(4).unwrap();
        let ws = detect_kind(&g, &main_budget(&g), Kind::Deg2);
        assert_eq!(ws.len(), 4);
        assert!(matches!(&ws[0].recipe, Recipe::DeleteAndAdd { v: 0, edges } if edges.len() == 1));
    }

    #[test]
    fn k4_witnesses() {
        let g = k4();
        let ws = detect_all(&g, &main_budget(&g));
        assert!(ws.iter().any(|w| w.kind == Kind::Deg3SmallNbr));
        assert!(ws
            .iter()
            .all(|w| w.kind != Kind::EdgeSeparator && w.kind != Kind::FaceTwoSmall));
        assert_eq!(detect_kind(&g, &main_budget(&g), Kind::GenericDeletable).len(), 4);
        let ws = detect_all(&g, &Budget::for_graph(&g));
        assert!(ws.iter().any(|w| w.kind == Kind::WDeg3Triangle));
        assert_eq!(first_witness(&g, &Budget::for_graph(&g)).as_ref(), ws.first());
    }

    #[test]
    fn wegner_11_reports() {
        let g = gen_wegner(11).unwrap();
        let b = Budget::for_graph(&g);
        let deg2: Vec<Vertex> = detect_kind(&g, &b, Kind::Deg2).iter().map(|w| w.actors[0]).collect();
        assert_eq!(deg2, (3..18).collect::<Vec<_>>());
        let generic = detect_kind(&g, &b, Kind::GenericDeletable);
        assert!(generic.iter().all(|w| w.actors[0] != 0));
        assert_eq!(first_witness(&g, &b).unwrap().kind, Kind::Deg2);
    }

    #[test]
    fn delta6_fixtures() {
        let g = icosahedron();
        let ws = find_weak_configs_delta6(&g).unwrap();
        let tri5: Vec<Vertex> = ws
            .iter()
            .filter(|w| w.kind == Kind::WTri5)
            .map(|w| w.actors[0])
            .collect();
        assert_eq!(tri5, (0..12).collect::<Vec<_>>());
        let g = octahedron();
        let ws = find_weak_configs_delta6(&g).unwrap();
        assert_eq!(ws.iter().filter(|w| w.kind == Kind::WDeg4ThreeTriangles).count(), 6);
        let ws = find_weak_configs_delta6(&k4()).unwrap();
        assert!(ws.iter().any(|w| w.kind == Kind::WDeg3Triangle));
        assert_eq!(
            find_weak_configs_delta6(&gen_wegner(7).unwrap()),
            Err(CatalogError::DeltaTooLarge(7))
        );
    }

    #[test]
    fn json_shape() {
        let g = path(3).unwrap();
        let ws = detect_kind(&g, &main_budget(&g), Kind::Deg1);
        let text = report_json(&ws[..1]);
        assert_eq!(
            text,
            r#"[{"kind":"Deg1","actors":[0,1],"faces":[0],"recipe":{"op":"delete","v":0}}]"#
        );
    }
}
