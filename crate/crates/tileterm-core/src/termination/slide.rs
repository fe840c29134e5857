//! Sliding tilings of `R'` back into `L'`.
//!
//! A tiling `h: T → G_R` that is not contained in the image of `w` is sent
//! along `w'` to some `f: T → R'`. Each such `f` is slid through `K'` to a
//! morphism into `L'`, and the slid morphisms must be pairwise distinct so
//! that the resulting map on tilings of the host is injective.

use std::collections::{BTreeSet, HashSet};

use crate::graph::{
    enumerate_morphisms, factorize, pullback, right_inverses, Morphism, MorphismClass,
};
use crate::pbpo::PbpoRule;

/// Upper bound on the number of distinct slide outcomes that are counted.
pub const MAX_OUTCOMES: usize = 100_000;

/// Outcome sets kept in a report; the count goes on up to [`MAX_OUTCOMES`].
pub const KEPT_OUTCOMES: usize = 32;

/// Splits `tilings` by whether the pullback of `base` along each tiling is
/// an isomorphism, i.e. whether the tiling lies entirely inside `base`.
pub fn partition_by_iso(base: &Morphism, tilings: Vec<Morphism>) -> (Vec<Morphism>, Vec<Morphism>) {
    tilings.into_iter().partition(|t| {
        pullback(base, t).map(|pb| pb.right.is_iso()).unwrap_or(false)
    })
}

/// Whether the part of `f` that lies inside `R` is itself in `class`.
pub fn is_valid_tiling(rule: &PbpoRule, f: &Morphism, class: MorphismClass) -> bool {
    pullback(f, rule.t_r()).is_ok_and(|pb| class.contains(&pb.right))
}

/// The valid tilings `T → R'` that do not lie entirely inside `R`.
pub fn compute_phi(rule: &PbpoRule, tile: &crate::graph::Graph, class: MorphismClass) -> Vec<Morphism> {
    let all = enumerate_morphisms(tile, rule.rhs_type(), MorphismClass::Hom);
    let valid = all.into_iter().filter(|f| is_valid_tiling(rule, f, class)).collect();
    partition_by_iso(rule.t_r(), valid).1
}

/// One way to slide a tiling of `R'`: `via: T → K'` with `r' ∘ via = f`,
/// and the composite `l' ∘ via: T → L'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlideOption {
    pub via: Morphism,
    pub composite: Morphism,
}

/// All admissible slides of `f`. Empty means `f` cannot be slid.
pub fn slide_options(f: &Morphism, rule: &PbpoRule, class: MorphismClass) -> Vec<SlideOption> {
    let pb = pullback(rule.r_prime(), f).expect("f has codomain R'");
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in right_inverses(&pb.right) {
        let via = pb.left.compose(&g).expect("composable");
        if !seen.insert(key(&via)) {
            continue;
        }
        let keep = match class {
            MorphismClass::Hom => true,
            MorphismClass::Mono | MorphismClass::RegularMono => {
                rule.l_prime().compose(&factorize(&via).mono).expect("composable").is_monic()
            }
        };
        if keep {
            let composite = rule.l_prime().compose(&via).expect("composable");
            out.push(SlideOption { via, composite });
        }
    }
    out
}

pub(crate) type MorphismKey = (Vec<usize>, Vec<usize>);

pub(crate) fn key(m: &Morphism) -> MorphismKey {
    (m.vertex_map().to_vec(), m.edge_map().to_vec())
}

/// Why a tile could not be slid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlideFailure {
    /// No section of the pullback of `r'` along the tiling exists, or none
    /// preserves the counted class.
    NoSlide { tiling: usize },
    /// Every choice of slides sends two tilings to the same morphism into `L'`.
    NotMonicFor,
}

impl std::fmt::Display for SlideFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SlideFailure::NoSlide { tiling } => {
                write!(f, "tiling #{tiling} of R' has no admissible slide into L'")
            }
            SlideFailure::NotMonicFor => {
                write!(f, "l' identifies slid tilings under every choice of slides")
            }
        }
    }
}

/// The distinct sets of composites into `L'` that arise from choosing one
/// slide per tiling, subject to pairwise distinctness.
#[derive(Debug, Clone)]
pub struct Outcomes {
    pub sets: Vec<BTreeSet<MorphismKey>>,
    /// Counting stopped at [`MAX_OUTCOMES`].
    pub capped: bool,
}

/// Enumerates outcome sets by backtracking over per-tiling choices.
pub(crate) fn outcomes(options: &[Vec<SlideOption>]) -> Outcomes {
    // composites only: `via` is irrelevant once the slide is admissible
    let choices: Vec<Vec<MorphismKey>> = options
        .iter()
        .map(|opts| {
            let mut ks: Vec<MorphismKey> = opts.iter().map(|o| key(&o.composite)).collect();
            ks.sort();
            ks.dedup();
            ks
        })
        .collect();
    let mut order: Vec<usize> = (0..choices.len()).collect();
    order.sort_by_key(|&i| choices[i].len());

    let mut found: HashSet<BTreeSet<MorphismKey>> = HashSet::new();
    let mut sets = Vec::new();
    let mut current: Vec<MorphismKey> = Vec::new();
    let mut capped = false;
    walk(&choices, &order, 0, &mut current, &mut found, &mut sets, &mut capped);
    Outcomes { sets, capped }
}

fn walk(
    choices: &[Vec<MorphismKey>],
    order: &[usize],
    depth: usize,
    current: &mut Vec<MorphismKey>,
    found: &mut HashSet<BTreeSet<MorphismKey>>,
    sets: &mut Vec<BTreeSet<MorphismKey>>,
    capped: &mut bool,
) {
    if *capped {
        return;
    }
    if depth == order.len() {
        let set: BTreeSet<MorphismKey> = current.iter().cloned().collect();
        if found.insert(set.clone()) {
            sets.push(set);
            if sets.len() >= MAX_OUTCOMES {
                *capped = true;
            }
        }
        return;
    }
    for k in &choices[order[depth]] {
        if current.contains(k) {
            continue;
        }
        current.push(k.clone());
        walk(choices, order, depth + 1, current, found, sets, capped);
        current.pop();
        if *capped {
            return;
        }
    }
}
