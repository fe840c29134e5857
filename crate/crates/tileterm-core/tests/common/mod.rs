//! Random small graphs and brute-force oracles shared by the integration
//! tests. The oracles deliberately avoid the crate's search code.

#![allow(dead_code)]

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tileterm_core::graph::{Graph, GraphBuilder, Morphism, MorphismClass};

pub fn corpus_root() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn extended_root() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus-extended")
}

/// A graph from `(vertex labels, (src, tgt, label) edges)`.
pub fn graph(vlabels: &[&str], edges: &[(usize, usize, &str)]) -> Graph {
    let mut b = GraphBuilder::new();
    for (i, l) in vlabels.iter().enumerate() {
        b.add_vertex(format!("v{i}"), *l).unwrap();
    }
    for (i, &(s, t, l)) in edges.iter().enumerate() {
        b.add_edge(format!("E{i}"), s, t, l).unwrap();
    }
    b.build()
}

/// Graphs with at most `max_v` vertices, `max_e` edges and labels drawn
/// from the first `labels` letters.
pub fn arb_graph(max_v: usize, max_e: usize, labels: usize) -> impl Strategy<Value = Graph> {
    let names: Vec<&'static str> = ["a", "b", "c"][..labels].to_vec();
    let names2 = names.clone();
    (1..=max_v)
        .prop_flat_map(move |nv| {
            let vl = prop::collection::vec(prop::sample::select(names.clone()), nv);
            let es = prop::collection::vec((0..nv, 0..nv, prop::sample::select(names2.clone())), 0..=max_e);
            (vl, es)
        })
        .prop_map(|(vl, es)| graph(&vl, &es))
}

/// Like [`arb_graph`] but possibly empty.
pub fn arb_graph0(max_v: usize, max_e: usize, labels: usize) -> impl Strategy<Value = Graph> {
    prop_oneof![1 => Just(Graph::empty()), 8 => arb_graph(max_v, max_e, labels)]
}

/// Every vertex map and edge map, filtered by the homomorphism and label
/// conditions and optionally by injectivity.
pub fn brute_force_homs(t: &Graph, g: &Graph, injective: bool) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for vmap in all_maps(t.vertex_count(), g.vertex_count()) {
        if injective && !distinct(&vmap) {
            continue;
        }
        if t.vertices().iter().zip(&vmap).any(|(v, &j)| v.label != g.vertices()[j].label) {
            continue;
        }
        for emap in all_maps(t.edge_count(), g.edge_count()) {
            if injective && !distinct(&emap) {
                continue;
            }
            let ok = t.edges().iter().zip(&emap).all(|(e, &j)| {
                let h = &g.edges()[j];
                h.label == e.label && h.src == vmap[e.src] && h.tgt == vmap[e.tgt]
            });
            if ok {
                out.push((vmap.clone(), emap));
            }
        }
    }
    out
}

pub fn brute_force_count(t: &Graph, g: &Graph, class: MorphismClass) -> usize {
    brute_force_homs(t, g, class.requires_injective()).len()
}

pub fn brute_force_morphisms(t: &Graph, g: &Graph, class: MorphismClass) -> Vec<Morphism> {
    brute_force_homs(t, g, class.requires_injective())
        .into_iter()
        .map(|(v, e)| Morphism::new(t.clone(), g.clone(), v, e).unwrap())
        .collect()
}

/// All maps `{0..n} → {0..m}` in lexicographic order.
pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < m {
                break;
            }
            cur[i] = 0;
        }
    }
}

pub fn distinct(xs: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    xs.iter().all(|x| seen.insert(*x))
}

/// A random homomorphism into `c`: every domain element is a preimage of a
/// random codomain element, so construction never fails.
pub fn random_morphism_into(c: &Graph, seed: u64, max_v: usize, max_e: usize) -> Morphism {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    let mut vmap = Vec::new();
    let mut emap = Vec::new();
    if c.vertex_count() > 0 {
        for _ in 0..rng.gen_range(0..=max_v) {
            let j = rng.gen_range(0..c.vertex_count());
            b.add_vertex(format!("a{}", vmap.len()), c.vertices()[j].label.clone()).unwrap();
            vmap.push(j);
        }
    }
    if c.edge_count() > 0 {
        for _ in 0..rng.gen_range(0..=max_e) {
            let j = rng.gen_range(0..c.edge_count());
            let e = &c.edges()[j];
            let end = |target: usize, rng: &mut StdRng, b: &mut GraphBuilder, vmap: &mut Vec<usize>| {
                let pre: Vec<usize> = (0..vmap.len()).filter(|&i| vmap[i] == target).collect();
                if !pre.is_empty() && rng.gen_bool(0.7) {
                    pre[rng.gen_range(0..pre.len())]
                } else {
                    let i = b.add_vertex(format!("a{}", vmap.len()), c.vertices()[target].label.clone()).unwrap();
                    vmap.push(target);
                    i
                }
            };
            let s = end(e.src, &mut rng, &mut b, &mut vmap);
            let t = end(e.tgt, &mut rng, &mut b, &mut vmap);
            b.add_edge(format!("A{}", emap.len()), s, t, e.label.clone()).unwrap();
            emap.push(j);
        }
    }
    Morphism::new(b.build(), c.clone(), vmap, emap).unwrap()
}

/// Same structure, fresh ids, vertices and edges shuffled.
pub fn shuffled_copy(g: &Graph, seed: u64) -> Graph {
    use rand::seq::SliceRandom;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut vperm: Vec<usize> = (0..g.vertex_count()).collect();
    vperm.shuffle(&mut rng);
    let mut eperm: Vec<usize> = (0..g.edge_count()).collect();
    eperm.shuffle(&mut rng);
    let mut pos = vec![0; g.vertex_count()];
    let mut b = GraphBuilder::new();
    for (k, &i) in vperm.iter().enumerate() {
        pos[i] = k;
        b.add_vertex(format!("n{k}"), g.vertices()[i].label.clone()).unwrap();
    }
    for (k, &i) in eperm.iter().enumerate() {
        let e = &g.edges()[i];
        b.add_edge(format!("M{k}"), pos[e.src], pos[e.tgt], e.label.clone()).unwrap();
    }
    b.build()
}

/// Graphs over the given vertex and edge alphabets.
pub fn arb_graph_over(
    max_v: usize,
    max_e: usize,
    vlabels: &[&'static str],
    elabels: &[&'static str],
) -> impl Strategy<Value = Graph> {
    let (vl, el) = (vlabels.to_vec(), elabels.to_vec());
    (0..=max_v)
        .prop_flat_map(move |nv| {
            let vs = prop::collection::vec(prop::sample::select(vl.clone()), nv);
            let max_e = if nv == 0 { 0 } else { max_e };
            let es = prop::collection::vec((0..nv.max(1), 0..nv.max(1), prop::sample::select(el.clone())), 0..=max_e);
            (vs, es)
        })
        .prop_map(|(vs, es)| graph(&vs, &es))
}

/// All subgraphs of `g` with their inclusions.
pub fn subgraphs(g: &Graph) -> Vec<Morphism> {
    let mut out = Vec::new();
    for vmask in 0u32..(1 << g.vertex_count()) {
        let vs: Vec<usize> = (0..g.vertex_count()).filter(|i| vmask & (1 << i) != 0).collect();
        let allowed: Vec<usize> = (0..g.edge_count())
            .filter(|&e| vs.contains(&g.edges()[e].src) && vs.contains(&g.edges()[e].tgt))
            .collect();
        for emask in 0u32..(1 << allowed.len()) {
            let es: Vec<usize> = (0..allowed.len()).filter(|i| emask & (1 << i) != 0).map(|i| allowed[i]).collect();
            let mut b = GraphBuilder::new();
            for &v in &vs {
                b.add_vertex(g.vertices()[v].id.clone(), g.vertices()[v].label.clone()).unwrap();
            }
            for &e in &es {
                let edge = &g.edges()[e];
                let s = vs.iter().position(|&v| v == edge.src).unwrap();
                let t = vs.iter().position(|&v| v == edge.tgt).unwrap();
                b.add_edge(edge.id.clone(), s, t, edge.label.clone()).unwrap();
            }
            out.push(Morphism::new(b.build(), g.clone(), vs.clone(), es).unwrap());
        }
    }
    out
}
pub mod soundness;
pub mod kernel;
