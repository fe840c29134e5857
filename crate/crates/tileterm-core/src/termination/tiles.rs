use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::graph::{count_morphisms, Graph, MorphismClass};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub name: String,
    pub graph: Graph,
}

impl Tile {
    pub fn new(name: impl Into<String>, graph: Graph) -> Tile {
        Tile { name: name.into(), graph }
    }
}

/// A tile with its weight and the class of morphisms that are counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileEntry {
    pub tile: Tile,
    pub weight: u64,
    pub class: MorphismClass,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum ConfigError {
    #[error("tile `{0}` has weight 0; weights must be positive")]
    ZeroWeight(String),
    #[error("tile `{0}` is used more than once")]
    DuplicateTile(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TileConfig {
    entries: Vec<TileEntry>,
}

impl TileConfig {
    pub fn new(entries: Vec<TileEntry>) -> Result<TileConfig, ConfigError> {
        let mut names = HashSet::new();
        for e in &entries {
            if e.weight == 0 {
                return Err(ConfigError::ZeroWeight(e.tile.name.clone()));
            }
            if !names.insert(e.tile.name.as_str()) {
                return Err(ConfigError::DuplicateTile(e.tile.name.clone()));
            }
        }
        Ok(TileConfig { entries })
    }

    /// Shorthand for a single-tile configuration.
    pub fn single(tile: Tile, weight: u64, class: MorphismClass) -> Result<TileConfig, ConfigError> {
        TileConfig::new(vec![TileEntry { tile, weight, class }])
    }

    pub fn entries(&self) -> &[TileEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `Σ weight · |class(T, X)|` over the configured tiles.
pub fn tiling_weight(cfg: &TileConfig, x: &Graph) -> u64 {
    cfg.entries
        .iter()
        .map(|e| e.weight * count_morphisms(&e.tile.graph, x, e.class) as u64)
        .sum()
}
