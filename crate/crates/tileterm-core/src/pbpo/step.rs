//! Strong matches, adherences and rewrite steps.
//!
//! A step is computed from an adherence `α: G_L → L'` alone:
//!
//! 1. pull `tL` back along `α`; the leg `j` into `L` must be iso, and
//!    `m = n ∘ j⁻¹`;
//! 2. `G_K` is the pullback of `α` and `l'`, with legs `g_L` and `u'`;
//! 3. pulling `u'` back along `tK` gives `v: Y → G_K` and an iso `i: Y → K`,
//!    so `u = v ∘ i⁻¹`;
//! 4. `G_R` is the pushout of `r ∘ i` and `v`.

use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::graph::{
    fresh_id, id_atoms, pullback, pushout_named, Graph, GraphError, HomSearch, Morphism, MorphismClass,
};
use crate::graph::PushoutNaming;

use super::rule::{pullback_defect, PbpoRule};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("not an adherence: the pullback of tL along alpha is not isomorphic to L")]
    NotAnAdherence,
    #[error("the adherence does not have L' as codomain")]
    WrongCodomain,
    #[error("the pullback of u' along tK is not isomorphic to K")]
    InterfaceNotIso,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An adherence `α: G_L → L'` and the strong match `m: L → G_L` it induces.
#[derive(Debug, Clone)]
pub struct Adherence {
    pub alpha: Morphism,
    pub matching: Morphism,
}

/// All objects and morphisms of one rewrite step.
#[derive(Debug, Clone)]
pub struct RewriteStep {
    pub host: Graph,
    pub alpha: Morphism,
    pub matching: Morphism,
    pub g_k: Graph,
    /// `G_K → G_L`
    pub g_l: Morphism,
    /// `G_K → K'`
    pub u_prime: Morphism,
    /// `K → G_K`
    pub u: Morphism,
    pub result: Graph,
    /// `G_K → G_R`
    pub g_r: Morphism,
    /// `R → G_R`
    pub w: Morphism,
    /// `G_R → R'`
    pub w_prime: Morphism,
}

/// The match induced by `alpha`, if `alpha` is an adherence.
pub fn induced_match(rule: &PbpoRule, alpha: &Morphism) -> Result<Morphism, StepError> {
    if alpha.cod() != rule.lhs_type() {
        return Err(StepError::WrongCodomain);
    }
    let pb = pullback(rule.t_l(), alpha)?;
    let j_inv = pb.left.inverse().ok_or(StepError::NotAnAdherence)?;
    Ok(pb.right.compose_unchecked(&j_inv))
}

/// All adherences of `host` whose match lies in `match_class`, ordered by
/// match and then by adherence.
pub fn enumerate_adherences(
    rule: &PbpoRule,
    host: &Graph,
    match_class: MorphismClass,
) -> Vec<Adherence> {
    let t_l = rule.t_l();
    let l_prime_type = rule.lhs_type();
    let mut out = Vec::new();

    if !t_l.is_monic() {
        // no structure to exploit: try every homomorphism into L'
        for alpha in HomSearch::new(host, l_prime_type).collect() {
            if let Ok(m) = induced_match(rule, &alpha) {
                if match_class.contains(&m) {
                    out.push(Adherence { alpha, matching: m });
                }
            }
        }
        return out;
    }

    // With tL monic a strong match is monic and determines α on its image;
    // every other host element must land outside the image of tL.
    let mut pattern_v = vec![false; l_prime_type.vertex_count()];
    for &j in t_l.vertex_map() {
        pattern_v[j] = true;
    }
    let mut pattern_e = vec![false; l_prime_type.edge_count()];
    for &j in t_l.edge_map() {
        pattern_e[j] = true;
    }
    let context_v: Vec<usize> = (0..pattern_v.len()).filter(|&j| !pattern_v[j]).collect();
    let context_e: Vec<usize> = (0..pattern_e.len()).filter(|&j| !pattern_e[j]).collect();

    for m in HomSearch::new(rule.lhs(), host).injective(true).collect() {
        if !match_class.contains(&m) {
            continue;
        }
        let mut search = HomSearch::new(host, l_prime_type);
        let mut image_v = vec![None; host.vertex_count()];
        for (i, &g) in m.vertex_map().iter().enumerate() {
            image_v[g] = Some(t_l.v(i));
        }
        for (g, fixed) in image_v.into_iter().enumerate() {
            search = search.restrict_vertex(g, fixed.map_or_else(|| context_v.clone(), |j| vec![j]));
        }
        let mut image_e = vec![None; host.edge_count()];
        for (i, &g) in m.edge_map().iter().enumerate() {
            image_e[g] = Some(t_l.e(i));
        }
        for (g, fixed) in image_e.into_iter().enumerate() {
            search = match fixed {
                Some(j) => search.restrict_edge(g, [j]),
                None => search.restrict_edge(g, context_e.iter().copied()),
            };
        }
        let mut alphas = Vec::new();
        search.for_each(|v, e| {
            alphas.push((v.to_vec(), e.to_vec()));
            ControlFlow::Continue(())
        });
        alphas.sort();
        for (v, e) in alphas {
            let alpha = Morphism::new_unchecked(host.clone(), l_prime_type.clone(), v, e);
            debug_assert!(induced_match(rule, &alpha).is_ok_and(|mm| mm == m));
            out.push(Adherence { alpha, matching: m.clone() });
        }
    }
    out
}

/// Executes the step induced by `alpha`.
pub fn apply_step(rule: &PbpoRule, alpha: &Morphism) -> Result<RewriteStep, StepError> {
    let matching = induced_match(rule, alpha)?;
    let host = alpha.dom().clone();

    let pb2 = pullback(alpha, rule.l_prime())?;
    let g_k = host_named(&pb2.object, &pb2.left, &pb2.right);
    let g_l = pb2.left.with_dom(g_k.clone());
    let u_prime = pb2.right.with_dom(g_k.clone());

    let pb3 = pullback(&u_prime, rule.t_k())?;
    let v = pb3.left;
    let i = pb3.right;
    let i_inv = i.inverse().ok_or(StepError::InterfaceNotIso)?;
    let u = v.compose_unchecked(&i_inv);

    let r_i = rule.r().compose_unchecked(&i);
    let po = pushout_named(&r_i, &v, PushoutNaming::PreferSecond)?;
    let w_prime = po.mediate(rule.t_r(), &rule.r_prime().compose_unchecked(&u_prime))?;
    let result = po.object;
    let w = po.left;
    let g_r = po.right;

    Ok(RewriteStep { host, alpha: alpha.clone(), matching, g_k, g_l, u_prime, u, result, g_r, w, w_prime })
}

/// Renames the elements of `G_K` after the host elements they sit over;
/// elements duplicated by `l'` get the `K'` id appended.
fn host_named(g_k: &Graph, to_host: &Morphism, to_k_prime: &Morphism) -> Graph {
    let host = to_host.cod();
    let kp = to_k_prime.cod();
    let mut vcount = vec![0usize; host.vertex_count()];
    for &h in to_host.vertex_map() {
        vcount[h] += 1;
    }
    let mut ecount = vec![0usize; host.edge_count()];
    for &h in to_host.edge_map() {
        ecount[h] += 1;
    }
    let mut taken = HashSet::new();
    let vnames = (0..g_k.vertex_count())
        .map(|x| {
            let h = &host.vertices()[to_host.v(x)].id;
            let base = if vcount[to_host.v(x)] == 1 {
                h.clone()
            } else {
                format!("{h}_{}", joined_atoms(&kp.vertices()[to_k_prime.v(x)].id))
            };
            fresh_id(&base, &mut taken)
        })
        .collect();
    let mut taken = HashSet::new();
    let enames = (0..g_k.edge_count())
        .map(|x| {
            let h = &host.edges()[to_host.e(x)].id;
            let base = if ecount[to_host.e(x)] == 1 {
                h.clone()
            } else {
                format!("{h}_{}", joined_atoms(&kp.edges()[to_k_prime.e(x)].id))
            };
            fresh_id(&base, &mut taken)
        })
        .collect();
    g_k.renamed(vnames, enames)
}

fn joined_atoms(id: &str) -> String {
    id_atoms(id).into_iter().collect::<Vec<_>>().join("_")
}

impl RewriteStep {
    /// Re-checks every face of the step diagram; returns the failing ones.
    pub fn check_faces(&self, rule: &PbpoRule) -> Vec<&'static str> {
        let mut bad = Vec::new();
        let eq = |a: Morphism, b: &Morphism| a == *b;
        if !eq(self.alpha.compose_unchecked(&self.matching), rule.t_l()) {
            bad.push("alpha . m = tL");
        }
        if self.alpha.compose_unchecked(&self.g_l) != rule.l_prime().compose_unchecked(&self.u_prime) {
            bad.push("alpha . gL = l' . u'");
        }
        if !eq(self.u_prime.compose_unchecked(&self.u), rule.t_k()) {
            bad.push("u' . u = tK");
        }
        if self.g_l.compose_unchecked(&self.u) != self.matching.compose_unchecked(rule.l()) {
            bad.push("gL . u = m . l");
        }
        if self.g_r.compose_unchecked(&self.u) != self.w.compose_unchecked(rule.r()) {
            bad.push("gR . u = w . r");
        }
        if !eq(self.w_prime.compose_unchecked(&self.w), rule.t_r()) {
            bad.push("w' . w = tR");
        }
        if self.w_prime.compose_unchecked(&self.g_r) != rule.r_prime().compose_unchecked(&self.u_prime) {
            bad.push("w' . gR = r' . u'");
        }
        if pullback_defect(rule.t_l(), &self.alpha, &Morphism::identity(rule.lhs()), &self.matching).is_some() {
            bad.push("strong match square is a pullback");
        }
        if pullback_defect(&self.alpha, rule.l_prime(), &self.g_l, &self.u_prime).is_some() {
            bad.push("G_K square is a pullback");
        }
        if !is_pushout_square(rule.r(), &self.u, &self.w, &self.g_r) {
            bad.push("G_R square is a pushout");
        }
        bad
    }
}

/// Whether `x ∘ f = y ∘ g` is a pushout square for the span `f, g`.
pub(crate) fn is_pushout_square(f: &Morphism, g: &Morphism, x: &Morphism, y: &Morphism) -> bool {
    if x.compose_unchecked(f) != y.compose_unchecked(g) {
        return false;
    }
    let Ok(po) = crate::graph::pushout(f, g) else { return false };
    po.mediate(x, y).is_ok_and(|h| h.is_iso())
}
