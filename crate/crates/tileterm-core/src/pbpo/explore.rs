//! Bounded exploration of the rewrite relation, used to cross-check
//! termination verdicts against actual derivations.

use crate::graph::{Graph, IsoClasses, MorphismClass};

use super::rule::PbpoRule;
use super::step::{apply_step, enumerate_adherences};

pub const DEFAULT_BOUND: usize = 10_000;

/// One-step results up to isomorphism, with positional ids.
#[derive(Debug, Clone)]
pub struct Successors {
    pub graphs: Vec<Graph>,
    /// The bound was hit; `graphs` is incomplete.
    pub truncated: bool,
}

pub fn successors(
    rules: &[PbpoRule],
    g: &Graph,
    match_class: MorphismClass,
    bound: usize,
) -> Successors {
    let mut seen = IsoClasses::new();
    for rule in rules {
        for adh in enumerate_adherences(rule, g, match_class) {
            let step = apply_step(rule, &adh.alpha).expect("enumerated adherences are valid");
            seen.insert(step.result.with_positional_ids(), ());
            if seen.len() > bound {
                let mut graphs = seen.into_graphs();
                graphs.truncate(bound);
                return Successors { graphs, truncated: true };
            }
        }
    }
    Successors { graphs: seen.into_graphs(), truncated: false }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExploreError {
    #[error("the rewrite relation has a cycle reachable from the start graph")]
    Cycle,
    #[error("more than {0} distinct graphs are reachable")]
    TooManyStates(usize),
}

/// Length of the longest derivation from `start`, counting steps.
pub fn longest_derivation(
    rules: &[PbpoRule],
    start: &Graph,
    match_class: MorphismClass,
    max_states: usize,
) -> Result<usize, ExploreError> {
    // None marks a graph on the current DFS path
    let mut memo: IsoClasses<Option<usize>> = IsoClasses::new();
    dfs(rules, &start.with_positional_ids(), match_class, max_states, &mut memo)
}

fn dfs(
    rules: &[PbpoRule],
    g: &Graph,
    class: MorphismClass,
    max_states: usize,
    memo: &mut IsoClasses<Option<usize>>,
) -> Result<usize, ExploreError> {
    match memo.get(g) {
        Some(Some(n)) => return Ok(*n),
        Some(None) => return Err(ExploreError::Cycle),
        None => {}
    }
    if memo.len() >= max_states {
        return Err(ExploreError::TooManyStates(max_states));
    }
    memo.insert(g.clone(), None);
    let next = successors(rules, g, class, usize::MAX);
    let mut best = 0;
    for h in &next.graphs {
        best = best.max(1 + dfs(rules, h, class, max_states, memo)?);
    }
    *memo.get_mut(g).expect("inserted above") = Some(best);
    Ok(best)
}
