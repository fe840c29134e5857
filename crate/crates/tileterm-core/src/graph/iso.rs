use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use super::{Graph, HomSearch, Morphism};

const ROUNDS: usize = 3;

/// Per-vertex colours after a few rounds of neighbourhood refinement.
pub(crate) fn refined_colors(g: &Graph) -> Vec<u64> {
    let n = g.vertex_count();
    let mut colors: Vec<u64> = g
        .vertices()
        .iter()
        .map(|v| {
            let mut h = DefaultHasher::new();
            v.label.hash(&mut h);
            h.finish()
        })
        .collect();
    let mut incident: Vec<Vec<(u8, usize, &str)>> = vec![Vec::new(); n];
    for e in g.edges() {
        if e.src == e.tgt {
            incident[e.src].push((0, e.src, &e.label));
        } else {
            incident[e.src].push((1, e.tgt, &e.label));
            incident[e.tgt].push((2, e.src, &e.label));
        }
    }
    for _ in 0..ROUNDS {
        colors = (0..n)
            .map(|v| {
                let mut sig: Vec<(u8, u64, &str)> =
                    incident[v].iter().map(|&(d, w, l)| (d, colors[w], l)).collect();
                sig.sort_unstable();
                let mut h = DefaultHasher::new();
                colors[v].hash(&mut h);
                sig.hash(&mut h);
                h.finish()
            })
            .collect();
    }
    colors
}

fn iso_search<'a>(g: &'a Graph, h: &'a Graph) -> Option<HomSearch<'a>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut el_g: Vec<&str> = g.edges().iter().map(|e| e.label.as_str()).collect();
    let mut el_h: Vec<&str> = h.edges().iter().map(|e| e.label.as_str()).collect();
    el_g.sort_unstable();
    el_h.sort_unstable();
    if el_g != el_h {
        return None;
    }
    let (cg, ch) = (refined_colors(g), refined_colors(h));
    let mut by_color: HashMap<u64, Vec<usize>> = HashMap::new();
    for (j, c) in ch.iter().enumerate() {
        by_color.entry(*c).or_default().push(j);
    }
    let mut search = HomSearch::new(g, h).injective(true);
    for (i, c) in cg.iter().enumerate() {
        let cands = by_color.get(c)?;
        search = search.restrict_vertex(i, cands.clone());
    }
    Some(search)
}

/// An isomorphism `g → h`, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Morphism> {
    iso_search(g, h)?.first()
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    iso_search(g, h).is_some_and(|s| s.exists())
}

/// Every isomorphism `g → h`.
pub fn isomorphisms(g: &Graph, h: &Graph) -> Vec<Morphism> {
    iso_search(g, h).map(|s| s.collect()).unwrap_or_default()
}

/// A map from graphs up to isomorphism to values, in insertion order.
#[derive(Debug, Clone)]
pub struct IsoClasses<T> {
    entries: Vec<(Graph, T)>,
    buckets: HashMap<u64, Vec<usize>>,
}

impl<T> Default for IsoClasses<T> {
    fn default() -> Self {
        IsoClasses { entries: Vec::new(), buckets: HashMap::new() }
    }
}

impl<T> IsoClasses<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn position(&self, g: &Graph, key: u64) -> Option<usize> {
        self.buckets.get(&key)?.iter().copied().find(|&i| are_isomorphic(&self.entries[i].0, g))
    }

    pub fn get(&self, g: &Graph) -> Option<&T> {
        self.position(g, g.invariant()).map(|i| &self.entries[i].1)
    }

    pub fn get_mut(&mut self, g: &Graph) -> Option<&mut T> {
        self.position(g, g.invariant()).map(|i| &mut self.entries[i].1)
    }

    /// Inserts unless an isomorphic graph is present; returns whether it was new.
    pub fn insert(&mut self, g: Graph, value: T) -> bool {
        let key = g.invariant();
        if self.position(&g, key).is_some() {
            return false;
        }
        self.buckets.entry(key).or_default().push(self.entries.len());
        self.entries.push((g, value));
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Graph, &T)> {
        self.entries.iter().map(|(g, t)| (g, t))
    }

    pub fn into_graphs(self) -> Vec<Graph> {
        self.entries.into_iter().map(|(g, _)| g).collect()
    }
}
