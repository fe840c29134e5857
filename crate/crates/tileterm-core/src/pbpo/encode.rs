//! Partial map classifiers and the encoding of left-linear DPO rules.

use std::collections::HashSet;

use crate::graph::{fresh_id, pushout, Edge, Graph, LabelSet, Morphism, Vertex};

use super::rule::{PbpoRule, RuleError};

/// `η: X ↪ T(X)`.
///
/// `T(X)` adds one context vertex per vertex label and, for every ordered
/// pair of its vertices and every edge label, one fresh edge. Every
/// homomorphism `Y → T(X)` then corresponds to exactly one partial map
/// `Y ⇀ X`.
pub fn partial_map_classifier(x: &Graph, labels: &LabelSet) -> Morphism {
    let mut vlabels = labels.vertex.clone();
    let mut elabels = labels.edge.clone();
    vlabels.extend(x.vertices().iter().map(|v| v.label.clone()));
    elabels.extend(x.edges().iter().map(|e| e.label.clone()));

    let mut vtaken: HashSet<String> = x.vertices().iter().map(|v| v.id.clone()).collect();
    let mut vertices = x.vertices().to_vec();
    for label in &vlabels {
        let base = if vlabels.len() == 1 { "c".to_string() } else { format!("c_{label}") };
        vertices.push(Vertex { id: fresh_id(&base, &mut vtaken), label: label.clone() });
    }

    let mut etaken: HashSet<String> = x.edges().iter().map(|e| e.id.clone()).collect();
    let mut edges = x.edges().to_vec();
    let shout = |id: &str| id.replace('.', "").to_uppercase();
    for src in 0..vertices.len() {
        for tgt in 0..vertices.len() {
            for label in &elabels {
                let mut base = format!("{}{}", shout(&vertices[src].id), shout(&vertices[tgt].id));
                if elabels.len() > 1 {
                    base = format!("{base}_{label}");
                }
                edges.push(Edge { id: fresh_id(&base, &mut etaken), src, tgt, label: label.clone() });
            }
        }
    }

    let tx = Graph::from_parts(vertices, edges).expect("classifier ids are unique");
    Morphism::new(
        x.clone(),
        tx,
        (0..x.vertex_count()).collect(),
        (0..x.edge_count()).collect(),
    )
    .expect("the inclusion is a homomorphism")
}

/// A DPO rule `L <-l- K -r-> R`.
#[derive(Debug, Clone)]
pub struct DpoRule {
    pub name: String,
    pub l: Morphism,
    pub r: Morphism,
}

/// Encodes a left-linear DPO rule.
///
/// `tK = η_K` and `L'` is the pushout of `l` along `η_K`, so the context
/// may only attach to preserved elements: deleted vertices cannot have
/// dangling edges, which is the gluing condition.
pub fn encode_dpo_rule(dpo: &DpoRule, labels: &LabelSet) -> Result<PbpoRule, RuleError> {
    if !dpo.l.is_monic() {
        return Err(RuleError::IllTyped { name: "l", reason: "a DPO rule must be left-linear".into() });
    }
    if dpo.l.dom() != dpo.r.dom() {
        return Err(RuleError::IllTyped { name: "r", reason: "l and r must share the domain K".into() });
    }
    let mut all = labels.clone();
    all.extend(&LabelSet::of([dpo.l.cod(), dpo.l.dom(), dpo.r.cod()]));
    let eta_k = partial_map_classifier(dpo.l.dom(), &all);
    let po = pushout(&dpo.l, &eta_k)?;
    PbpoRule::new(dpo.name.clone(), dpo.l.clone(), dpo.r.clone(), po.left, eta_k, po.right)
}
