//! Termination by weighted subgraph counting.
//!
//! A tile configuration assigns each host graph a weight: the weighted
//! number of class morphisms from each tile into it. A rule is decreasing
//! if every step strictly lowers that weight, which is established without
//! looking at any host by sliding tilings of the rule's right-hand side
//! type back to its left-hand side type.

mod slide;
mod tiles;
mod verdict;

pub use slide::{
    compute_phi, is_valid_tiling, partition_by_iso, slide_options, SlideFailure, SlideOption,
    KEPT_OUTCOMES, MAX_OUTCOMES,
};
pub use tiles::{tiling_weight, ConfigError, Tile, TileConfig, TileEntry};
pub use verdict::{
    analyze_system, analyze_tile, check_deleting_rule, check_slide_preconditions, classify_rule,
    ProofState, RuleVerdict, SlideReport, Stage, Status, NOTE_MATCH_RESTRICTION,
};
