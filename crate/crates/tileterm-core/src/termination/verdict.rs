use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::{enumerate_morphisms, Morphism, MorphismClass};
use crate::pbpo::{PbpoRule, Violation};

use super::slide::{
    compute_phi, is_valid_tiling, key, outcomes, partition_by_iso, slide_options, MorphismKey,
    SlideFailure, SlideOption, KEPT_OUTCOMES,
};
use super::tiles::{TileConfig, TileEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Decreasing,
    NonIncreasing,
    Unknown,
}

impl Status {
    fn from_weights(slides_ok: bool, delta: u64, r: u64) -> Status {
        match (slides_ok, delta.cmp(&r)) {
            (true, std::cmp::Ordering::Greater) => Status::Decreasing,
            (true, std::cmp::Ordering::Equal) => Status::NonIncreasing,
            _ => Status::Unknown,
        }
    }
}

/// Slide analysis of one rule against one tile.
#[derive(Debug, Clone)]
pub struct SlideReport {
    pub tile: String,
    pub weight: u64,
    pub class: MorphismClass,
    /// `|Hom(T, R')|`
    pub hom_into_r1: usize,
    pub valid: usize,
    pub iso_in_r: usize,
    pub noniso_in_r: usize,
    pub ways_to_slide: usize,
    pub ways_capped: bool,
    /// Up to [`KEPT_OUTCOMES`] outcome sets, as morphisms `T → L'`.
    pub slid_sets: Vec<Vec<Morphism>>,
    /// The chosen `Δ`, as morphisms `T → L`.
    pub delta: Vec<Morphism>,
    pub slide_failure: Option<SlideFailure>,
}

impl SlideReport {
    pub fn slide_successful(&self) -> bool {
        self.slide_failure.is_none()
    }

    pub fn delta_size(&self) -> usize {
        self.delta.len()
    }

    pub fn delta_weight(&self) -> u64 {
        self.delta.len() as u64 * self.weight
    }

    pub fn r_weight(&self) -> u64 {
        self.iso_in_r as u64 * self.weight
    }
}

#[derive(Debug, Clone)]
pub struct RuleVerdict {
    pub rule: String,
    pub status: Status,
    pub reports: Vec<SlideReport>,
    pub notes: Vec<String>,
}

impl RuleVerdict {
    pub fn slides_successful(&self) -> bool {
        self.reports.iter().all(SlideReport::slide_successful)
    }

    pub fn delta_weight(&self) -> u64 {
        self.reports.iter().map(SlideReport::delta_weight).sum()
    }

    pub fn r_weight(&self) -> u64 {
        self.reports.iter().map(SlideReport::r_weight).sum()
    }
}

/// Runs the slide analysis for one tile entry.
pub fn analyze_tile(rule: &PbpoRule, entry: &TileEntry) -> SlideReport {
    let class = entry.class;
    let tile = &entry.tile.graph;
    let all = enumerate_morphisms(tile, rule.rhs_type(), MorphismClass::Hom);
    let hom_into_r1 = all.len();
    let valid: Vec<Morphism> = all.into_iter().filter(|f| is_valid_tiling(rule, f, class)).collect();
    let n_valid = valid.len();
    let (iso, phi) = partition_by_iso(rule.t_r(), valid);
    debug_assert_eq!(phi, compute_phi(rule, tile, class));

    let mut report = SlideReport {
        tile: entry.tile.name.clone(),
        weight: entry.weight,
        class,
        hom_into_r1,
        valid: n_valid,
        iso_in_r: iso.len(),
        noniso_in_r: phi.len(),
        ways_to_slide: 0,
        ways_capped: false,
        slid_sets: Vec::new(),
        delta: Vec::new(),
        slide_failure: None,
    };

    let options: Vec<Vec<SlideOption>> = phi.iter().map(|f| slide_options(f, rule, class)).collect();
    if let Some(i) = options.iter().position(Vec::is_empty) {
        report.slide_failure = Some(SlideFailure::NoSlide { tiling: i });
        return report;
    }
    let outs = outcomes(&options);
    if outs.sets.is_empty() {
        report.slide_failure = Some(SlideFailure::NotMonicFor);
        return report;
    }
    report.ways_to_slide = outs.sets.len();
    report.ways_capped = outs.capped;

    let by_key: std::collections::HashMap<MorphismKey, &Morphism> =
        options.iter().flatten().map(|o| (key(&o.composite), &o.composite)).collect();
    report.slid_sets = outs
        .sets
        .iter()
        .take(KEPT_OUTCOMES)
        .map(|s| s.iter().map(|k| by_key[k].clone()).collect())
        .collect();

    let candidates = delta_candidates(rule, entry);
    let disjoint_by_construction = rule.t_k().is_monic() && rule.right_square_is_pullback();
    report.delta = if disjoint_by_construction {
        if cfg!(debug_assertions) {
            let slid: HashSet<&MorphismKey> = by_key.keys().collect();
            debug_assert!(candidates.iter().all(|(k, _)| !slid.contains(k)));
        }
        candidates.into_iter().map(|(_, t)| t).collect()
    } else {
        best_delta(candidates, &outs.sets)
    };
    report
}

/// Class morphisms `T → L`, one per distinct composite with `tL`.
fn delta_candidates(rule: &PbpoRule, entry: &TileEntry) -> Vec<(MorphismKey, Morphism)> {
    let mut seen = HashSet::new();
    enumerate_morphisms(&entry.tile.graph, rule.lhs(), entry.class)
        .into_iter()
        .filter_map(|t| {
            let k = key(&rule.t_l().compose(&t).expect("composable"));
            seen.insert(k.clone()).then_some((k, t))
        })
        .collect()
}

fn best_delta(
    candidates: Vec<(MorphismKey, Morphism)>,
    sets: &[BTreeSet<MorphismKey>],
) -> Vec<Morphism> {
    let best = sets
        .iter()
        .map(|s| candidates.iter().filter(|(k, _)| !s.contains(k)).count())
        .enumerate()
        .max_by_key(|&(i, n)| (n, std::cmp::Reverse(i)))
        .map(|(i, _)| i);
    match best {
        Some(i) => candidates.into_iter().filter(|(k, _)| !sets[i].contains(k)).map(|(_, t)| t).collect(),
        None => Vec::new(),
    }
}

/// Every precondition of the slide argument, for each tile; returns the
/// first failure.
pub fn check_slide_preconditions(
    rule: &PbpoRule,
    cfg: &TileConfig,
) -> Result<(), (String, SlideFailure)> {
    for entry in cfg.entries() {
        if let Some(f) = analyze_tile(rule, entry).slide_failure {
            return Err((entry.tile.name.clone(), f));
        }
    }
    Ok(())
}

pub const NOTE_MATCH_RESTRICTION: &str = "conditional on match restriction";

/// Classifies a rule as decreasing, non-increasing or unknown.
pub fn classify_rule(rule: &PbpoRule, cfg: &TileConfig) -> RuleVerdict {
    let mut notes = Vec::new();
    let fatal: Vec<Violation> = rule
        .validate()
        .into_iter()
        .filter(|v| !matches!(v, Violation::NotMonic { morphism: "tL" }))
        .collect();
    if !fatal.is_empty() {
        notes.extend(fatal.iter().map(|v| format!("invalid rule: {v}")));
        return RuleVerdict { rule: rule.name().to_string(), status: Status::Unknown, reports: Vec::new(), notes };
    }
    let mut blocked = false;
    for entry in cfg.entries() {
        if !entry.class.contains(rule.t_r()) {
            notes.push(format!("tR is not in the class counted for tile {}", entry.tile.name));
            blocked = true;
        }
        if !entry.class.contains(rule.t_l()) {
            let note = format!("{NOTE_MATCH_RESTRICTION}: tL is not among the {}", entry.class);
            if !notes.contains(&note) {
                notes.push(note);
            }
        }
    }
    let reports: Vec<SlideReport> = cfg.entries().iter().map(|e| analyze_tile(rule, e)).collect();
    let mut verdict = RuleVerdict { rule: rule.name().to_string(), status: Status::Unknown, reports, notes };
    if !blocked {
        verdict.status =
            Status::from_weights(verdict.slides_successful(), verdict.delta_weight(), verdict.r_weight());
    }
    verdict
}

/// A rule that preserves or deletes but never adds or merges is decreasing
/// for monic matches, with `L` itself as the tile.
pub fn check_deleting_rule(rule: &PbpoRule) -> bool {
    rule.l_prime().is_monic() && !rule.l().is_epic() && rule.r().is_iso()
}

/// One `use` of the analyzer: the configuration, the verdicts, and the
/// rules pruned as a result.
#[derive(Debug, Clone)]
pub struct Stage {
    pub config: TileConfig,
    pub verdicts: Vec<RuleVerdict>,
    pub pruned: Vec<String>,
}

/// A relative termination proof in progress.
#[derive(Debug, Clone)]
pub struct ProofState {
    system: String,
    rules: Vec<PbpoRule>,
    remaining: Vec<usize>,
    stages: Vec<Stage>,
}

impl ProofState {
    pub fn new(system: impl Into<String>, rules: Vec<PbpoRule>) -> ProofState {
        let remaining = (0..rules.len()).collect();
        ProofState { system: system.into(), rules, remaining, stages: Vec::new() }
    }

    pub fn system(&self) -> &str {
        &self.system
    }

    pub fn original(&self) -> &[PbpoRule] {
        &self.rules
    }

    pub fn remaining(&self) -> impl Iterator<Item = &PbpoRule> {
        self.remaining.iter().map(|&i| &self.rules[i])
    }

    pub fn remaining_names(&self) -> Vec<String> {
        self.remaining().map(|r| r.name().to_string()).collect()
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn is_proven(&self) -> bool {
        self.remaining.is_empty()
    }

    /// Drops the last stage and restores the rules it pruned.
    pub fn undo(&mut self) -> Option<Stage> {
        let stage = self.stages.pop()?;
        let pruned: HashSet<&str> = self
            .stages
            .iter()
            .flat_map(|s| s.pruned.iter().map(String::as_str))
            .collect();
        self.remaining = (0..self.rules.len()).filter(|&i| !pruned.contains(self.rules[i].name())).collect();
        Some(stage)
    }
}

/// Classifies every remaining rule. If none is unknown, the decreasing ones
/// are pruned and a stage is recorded; otherwise the state is unchanged.
pub fn analyze_system(state: &ProofState, cfg: &TileConfig) -> (Vec<RuleVerdict>, ProofState) {
    let verdicts: Vec<RuleVerdict> = state.remaining().map(|r| classify_rule(r, cfg)).collect();
    let mut next = state.clone();
    if verdicts.iter().all(|v| v.status != Status::Unknown) {
        let pruned: Vec<String> = verdicts
            .iter()
            .filter(|v| v.status == Status::Decreasing)
            .map(|v| v.rule.clone())
            .collect();
        next.remaining.retain(|&i| !pruned.iter().any(|p| p == state.rules[i].name()));
        next.stages.push(Stage { config: cfg.clone(), verdicts: verdicts.clone(), pruned });
    }
    (verdicts, next)
}
