//! Executes rewrite steps on random hosts and checks the tiling weight,
//! counted by brute force, against each verdict.

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use tileterm_core::corpus::Workspace;
use tileterm_core::graph::{Graph, GraphBuilder, MorphismClass};
use tileterm_core::pbpo::{apply_step, enumerate_adherences, PbpoRule};
use tileterm_core::termination::{analyze_system, ProofState, Status, TileConfig, TileEntry};

use super::{brute_force_count, corpus_root, extended_root};
use MorphismClass::{Hom, Mono};

pub const HOSTS_PER_RULE: usize = 50;
pub const MAX_HOST_VERTICES: usize = 5;
pub const MAX_HOST_EDGES: usize = 6;

/// A proof of a corpus system: one tile configuration per stage.
pub struct ProvenCase {
    pub root: PathBuf,
    pub system: &'static str,
    pub stages: Vec<Vec<(&'static str, u64, MorphismClass)>>,
}

pub fn proven_cases() -> Vec<ProvenCase> {
    let c = corpus_root;
    let case = |root: PathBuf, system, stages| ProvenCase { root, system, stages };
    vec![
        case(c(), "multiset_as_graph", vec![vec![("a_loop", 5, Mono), ("b_loop", 3, Mono)]]),
        case(c(), "generalized_multiset_as_graph", vec![vec![("a_loop", 5, Mono), ("b_loop", 3, Mono)]]),
        case(c(), "delete_loop_and_nonloop", vec![vec![("single_nonloop_edge", 1, Hom)]]),
        case(
            c(),
            "delete_loop_and_nonloop",
            vec![vec![("single_nonloop_edge", 1, Mono), ("single_loop", 1, Mono)]],
        ),
        case(c(), "unfold_to_triangle", vec![vec![("two_opposing_edges", 1, Mono)]]),
        case(c(), "folding_an_edge", vec![vec![("single_nonloop_edge", 1, Mono)]]),
        case(
            c(),
            "duplicating_bipartite_components",
            vec![vec![("single_loop", 1, Mono)], vec![("single_node", 1, Mono)]],
        ),
        case(extended_root(), "plump_string", vec![vec![("string_ab", 1, Mono)], vec![("c_edge", 1, Mono)]]),
    ]
}

pub fn config(ws: &Workspace, entries: &[(&str, u64, MorphismClass)]) -> TileConfig {
    TileConfig::new(
        entries
            .iter()
            .map(|&(t, weight, class)| TileEntry { tile: ws.tile(t).unwrap().tile.clone(), weight, class })
            .collect(),
    )
    .unwrap()
}

/// The weight of `g`, by brute force.
pub fn oracle_weight(cfg: &TileConfig, g: &Graph) -> u64 {
    cfg.entries().iter().map(|e| e.weight * brute_force_count(&e.tile.graph, g, e.class) as u64).sum()
}

/// A copy of `L` plus random vertices and edges over the labels of `L'`,
/// within the host size bounds.
pub fn random_host(rule: &PbpoRule, rng: &mut StdRng) -> Graph {
    let labels = rule.lhs_type().labels();
    let vlabels: Vec<&String> = labels.vertex.iter().collect();
    let elabels: Vec<&String> = labels.edge.iter().collect();
    let l = rule.lhs();
    let mut b = GraphBuilder::new();
    for v in l.vertices() {
        b.add_vertex(v.id.clone(), v.label.clone()).unwrap();
    }
    for e in l.edges() {
        b.add_edge(e.id.clone(), e.src, e.tgt, e.label.clone()).unwrap();
    }
    let extra_v = rng.gen_range(0..=MAX_HOST_VERTICES.saturating_sub(l.vertex_count()));
    for i in 0..extra_v {
        b.add_vertex(format!("h{i}"), vlabels.choose(rng).unwrap().as_str()).unwrap();
    }
    let nv = l.vertex_count() + extra_v;
    if nv > 0 {
        let extra_e = rng.gen_range(0..=MAX_HOST_EDGES.saturating_sub(l.edge_count()));
        for i in 0..extra_e {
            let (s, t) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
            b.add_edge(format!("H{i}"), s, t, elabels.choose(rng).unwrap().as_str()).unwrap();
        }
    }
    b.build()
}

#[derive(Debug, Default)]
pub struct SoundnessSummary {
    /// (system, rule, hosts with at least one step, steps)
    pub per_rule: Vec<(String, String, usize, usize)>,
    pub violations: Vec<String>,
}

impl SoundnessSummary {
    pub fn steps(&self) -> usize {
        self.per_rule.iter().map(|r| r.3).sum()
    }

    pub fn min_hosts(&self) -> usize {
        self.per_rule.iter().map(|r| r.2).min().unwrap_or(0)
    }
}

/// Replays every proven case and, for each rule with a Decreasing or
/// NonIncreasing verdict, rewrites random hosts until
/// [`HOSTS_PER_RULE`] of them admit a step.
pub fn run_soundness(seed: u64) -> SoundnessSummary {
    let mut summary = SoundnessSummary::default();
    let mut rng = StdRng::seed_from_u64(seed);
    for case in proven_cases() {
        let ws = Workspace::load(&case.root).unwrap();
        let sys = ws.system(case.system).unwrap();
        let mut state = ProofState::new(sys.name.clone(), sys.rules.clone());
        for stage in &case.stages {
            let cfg = config(&ws, stage);
            let (verdicts, next) = analyze_system(&state, &cfg);
            for (rule, verdict) in state.remaining().zip(&verdicts) {
                if verdict.status == Status::Unknown {
                    summary.violations.push(format!("{}/{}: unexpected Unknown", case.system, rule.name()));
                    continue;
                }
                let (hosts, steps) = check_rule(rule, &cfg, verdict.status, &mut rng, &mut summary.violations);
                summary.per_rule.push((case.system.to_string(), rule.name().to_string(), hosts, steps));
            }
            state = next;
        }
        if !state.is_proven() {
            summary.violations.push(format!("{}: not proven", case.system));
        }
    }
    summary
}

fn check_rule(
    rule: &PbpoRule,
    cfg: &TileConfig,
    status: Status,
    rng: &mut StdRng,
    violations: &mut Vec<String>,
) -> (usize, usize) {
    let (mut hosts, mut steps) = (0, 0);
    for _ in 0..HOSTS_PER_RULE * 40 {
        if hosts >= HOSTS_PER_RULE {
            break;
        }
        let host = random_host(rule, rng);
        let adherences = enumerate_adherences(rule, &host, Hom);
        if adherences.is_empty() {
            continue;
        }
        hosts += 1;
        let before = oracle_weight(cfg, &host);
        for a in adherences {
            let after = oracle_weight(cfg, &apply_step(rule, &a.alpha).unwrap().result);
            steps += 1;
            let ok = match status {
                Status::Decreasing => after < before,
                _ => after <= before,
            };
            if !ok {
                violations.push(format!("{} ({status:?}): weight {before} -> {after} on {host:?}", rule.name()));
            }
        }
    }
    (hosts, steps)
}
