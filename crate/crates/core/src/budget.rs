use serde::{Deserialize, Serialize};

use crate::embed::EmbeddedGraph;

/// Which family of reducible configurations applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogKind {
    /// The `Δ >= 9` configurations, also used for `Δ ∈ {7, 8}`.
    Main,
    /// The `Δ <= 6` configurations.
    Delta6,
}

/// Palette size and the `Δ` value that drives every detector threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub palette_size: usize,
    pub delta_context: usize,
    pub catalog: CatalogKind,
}

impl Budget {
    /// `2Δ+7` for `Δ >= 9`; 25 with context 9 for `Δ ∈ {7, 8}`; 21 with
    /// context 6 for `Δ <= 6`.
    pub fn for_delta(delta: usize) -> Budget {
        match delta {
            0..=6 => Budget {
                palette_size: 21,
                delta_context: 6,
                catalog: CatalogKind::Delta6,
            },
            7 | 8 => Budget {
                palette_size: 25,
                delta_context: 9,
                catalog: CatalogKind::Main,
            },
            d => Budget {
                palette_size: 2 * d + 7,
                delta_context: d,
                catalog: CatalogKind::Main,
            },
        }
    }

    pub fn for_graph(g: &EmbeddedGraph) -> Budget {
        Budget::for_delta(g.max_degree())
    }

    /// Same thresholds with a different palette.
    pub fn with_palette(self, palette_size: usize) -> Budget {
        Budget { palette_size, ..self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regimes() {
        assert_eq!(Budget::for_delta(9).palette_size, 25);
        assert_eq!(Budget::for_delta(12).palette_size, 31);
        let b = Budget::for_delta(7);
        assert_eq!((b.palette_size, b.delta_context, b.catalog), (25, 9, CatalogKind::Main));
        let b = Budget::for_delta(3);
        assert_eq!(
            (b.palette_size, b.delta_context, b.catalog),
            (21, 6, CatalogKind::Delta6)
        );
    }
}
