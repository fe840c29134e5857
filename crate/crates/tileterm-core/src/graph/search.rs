//! Backtracking enumeration of homomorphisms.
//!
//! Vertices of the domain are assigned first, in an order that prefers
//! vertices adjacent to already placed ones and then high degree. Each
//! placement checks that every domain edge closed by it still has a
//! candidate image. Edges are assigned once all vertices are placed.

use std::ops::ControlFlow;

use super::{Graph, Morphism, MorphismClass};

/// A configurable search for morphisms `dom → cod`.
#[derive(Clone)]
pub struct HomSearch<'a> {
    dom: &'a Graph,
    cod: &'a Graph,
    injective: bool,
    vertex_candidates: Vec<Option<Vec<usize>>>,
    edge_allowed: Vec<Option<Vec<bool>>>,
}

impl<'a> HomSearch<'a> {
    pub fn new(dom: &'a Graph, cod: &'a Graph) -> HomSearch<'a> {
        HomSearch {
            dom,
            cod,
            injective: false,
            vertex_candidates: vec![None; dom.vertex_count()],
            edge_allowed: vec![None; dom.edge_count()],
        }
    }

    pub fn injective(mut self, injective: bool) -> Self {
        self.injective = injective;
        self
    }

    pub fn class(self, class: MorphismClass) -> Self {
        self.injective(class.requires_injective())
    }

    /// Only allow images of vertex `v` among `candidates`.
    pub fn restrict_vertex(mut self, v: usize, candidates: Vec<usize>) -> Self {
        self.vertex_candidates[v] = Some(candidates);
        self
    }

    /// Only allow images of edge `e` among `allowed`.
    pub fn restrict_edge(mut self, e: usize, allowed: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; self.cod.edge_count()];
        for j in allowed {
            mask[j] = true;
        }
        self.edge_allowed[e] = Some(mask);
        self
    }

    /// Calls `visit(vertex_map, edge_map)` for every solution, in search order.
    pub fn for_each<F>(&self, visit: F)
    where
        F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    {
        let Some(mut state) = State::prepare(self) else { return };
        let mut visit = visit;
        let _ = state.place_vertex(0, &mut visit);
    }

    /// All solutions, sorted lexicographically by (vertex map, edge map).
    pub fn collect(&self) -> Vec<Morphism> {
        let mut maps = Vec::new();
        self.for_each(|v, e| {
            maps.push((v.to_vec(), e.to_vec()));
            ControlFlow::Continue(())
        });
        maps.sort();
        maps.into_iter()
            .map(|(v, e)| Morphism::new_unchecked(self.dom.clone(), self.cod.clone(), v, e))
            .collect()
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.for_each(|_, _| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }

    pub fn first(&self) -> Option<Morphism> {
        let mut found = None;
        self.for_each(|v, e| {
            found = Some(Morphism::new_unchecked(
                self.dom.clone(),
                self.cod.clone(),
                v.to_vec(),
                e.to_vec(),
            ));
            ControlFlow::Break(())
        });
        found
    }

    pub fn exists(&self) -> bool {
        let mut found = false;
        self.for_each(|_, _| {
            found = true;
            ControlFlow::Break(())
        });
        found
    }
}

/// All morphisms `t → g` in `class`, in lexicographic order.
pub fn enumerate_morphisms(t: &Graph, g: &Graph, class: MorphismClass) -> Vec<Morphism> {
    HomSearch::new(t, g).class(class).collect()
}

pub fn count_morphisms(t: &Graph, g: &Graph, class: MorphismClass) -> usize {
    HomSearch::new(t, g).class(class).count()
}

struct State<'s, 'a> {
    search: &'s HomSearch<'a>,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    /// Domain edges whose later endpoint (in `order`) is `order[k]`.
    closing: Vec<Vec<usize>>,
    /// Codomain edges indexed by `src * n + tgt`.
    between: Vec<Vec<usize>>,
    vmap: Vec<usize>,
    emap: Vec<usize>,
    used_v: Vec<bool>,
    used_e: Vec<bool>,
}

impl<'s, 'a> State<'s, 'a> {
    fn prepare(search: &'s HomSearch<'a>) -> Option<State<'s, 'a>> {
        let (dom, cod) = (search.dom, search.cod);
        let nv = dom.vertex_count();
        let n = cod.vertex_count();
        if search.injective
            && (nv > n || dom.edge_count() > cod.edge_count())
        {
            return None;
        }

        let mut candidates = Vec::with_capacity(nv);
        for (i, v) in dom.vertices().iter().enumerate() {
            let base: Vec<usize> = match &search.vertex_candidates[i] {
                Some(c) => c.clone(),
                None => (0..n).collect(),
            };
            let c: Vec<usize> =
                base.into_iter().filter(|&j| cod.vertices()[j].label == v.label).collect();
            if c.is_empty() {
                return None;
            }
            candidates.push(c);
        }

        let mut between = vec![Vec::new(); n * n];
        for (j, e) in cod.edges().iter().enumerate() {
            between[e.src * n + e.tgt].push(j);
        }

        let order = vertex_order(dom, &candidates);
        let mut position = vec![0; nv];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let mut closing = vec![Vec::new(); nv];
        for (i, e) in dom.edges().iter().enumerate() {
            let k = position[e.src].max(position[e.tgt]);
            closing[k].push(i);
        }

        Some(State {
            search,
            order,
            candidates,
            closing,
            between,
            vmap: vec![usize::MAX; nv],
            emap: vec![usize::MAX; dom.edge_count()],
            used_v: vec![false; n],
            used_e: vec![false; cod.edge_count()],
        })
    }

    fn edge_ok(&self, dom_edge: usize, cod_edge: usize) -> bool {
        let e = &self.search.dom.edges()[dom_edge];
        let c = &self.search.cod.edges()[cod_edge];
        c.label == e.label
            && !(self.search.injective && self.used_e[cod_edge])
            && self.search.edge_allowed[dom_edge].as_ref().map_or(true, |m| m[cod_edge])
    }

    fn edge_candidates(&self, dom_edge: usize) -> &[usize] {
        let e = &self.search.dom.edges()[dom_edge];
        let n = self.search.cod.vertex_count();
        &self.between[self.vmap[e.src] * n + self.vmap[e.tgt]]
    }

    fn place_vertex<F>(&mut self, k: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    {
        if k == self.order.len() {
            return self.place_edge(0, visit);
        }
        let v = self.order[k];
        for ci in 0..self.candidates[v].len() {
            let j = self.candidates[v][ci];
            if self.search.injective && self.used_v[j] {
                continue;
            }
            self.vmap[v] = j;
            let feasible = self.closing[k].iter().all(|&de| {
                self.edge_candidates(de).iter().any(|&ce| self.edge_ok(de, ce))
            });
            if feasible {
                self.used_v[j] = true;
                let flow = self.place_vertex(k + 1, visit);
                self.used_v[j] = false;
                flow?;
            }
        }
        self.vmap[v] = usize::MAX;
        ControlFlow::Continue(())
    }

    fn place_edge<F>(&mut self, i: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
    {
        if i == self.emap.len() {
            return visit(&self.vmap, &self.emap);
        }
        let count = self.edge_candidates(i).len();
        for ci in 0..count {
            let ce = self.edge_candidates(i)[ci];
            if !self.edge_ok(i, ce) {
                continue;
            }
            self.emap[i] = ce;
            self.used_e[ce] = true;
            let flow = self.place_edge(i + 1, visit);
            self.used_e[ce] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Greedy order: most constrained first, then most connected to the
/// already ordered prefix, then highest degree, then lowest index.
fn vertex_order(dom: &Graph, candidates: &[Vec<usize>]) -> Vec<usize> {
    let nv = dom.vertex_count();
    let degree = dom.degrees();
    let mut adjacent = vec![Vec::new(); nv];
    for e in dom.edges() {
        adjacent[e.src].push(e.tgt);
        adjacent[e.tgt].push(e.src);
    }
    let mut placed = vec![false; nv];
    let mut links = vec![0usize; nv];
    let mut order = Vec::with_capacity(nv);
    for _ in 0..nv {
        let next = (0..nv)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                let ka = (candidates[a].len() == 1, links[a], degree[a]);
                let kb = (candidates[b].len() == 1, links[b], degree[b]);
                ka.cmp(&kb).then(b.cmp(&a))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
        for &w in &adjacent[next] {
            links[w] += 1;
        }
    }
    order
}
