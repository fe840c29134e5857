//! PBPO⁺ rules and rewrite steps.

mod encode;
mod explore;
mod rule;
mod step;

pub use encode::{encode_dpo_rule, partial_map_classifier, DpoRule};
pub use explore::{longest_derivation, successors, ExploreError, Successors, DEFAULT_BOUND};
pub use rule::{PbpoRule, RuleError, Violation};
pub use step::{apply_step, enumerate_adherences, induced_match, Adherence, RewriteStep, StepError};
