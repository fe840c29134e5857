//! Pullbacks and pushouts, computed pointwise on vertices and edges.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{fresh_id, id_atoms, Edge, Graph, GraphError, Morphism, Vertex};

/// Pullback of a cospan `f: A → C ← B: g`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub object: Graph,
    /// `P → A`
    pub left: Morphism,
    /// `P → B`
    pub right: Morphism,
}

impl Pullback {
    /// The unique `Z → P` through which a commuting pair `x: Z → A`,
    /// `y: Z → B` factors.
    pub fn mediate(&self, x: &Morphism, y: &Morphism) -> Result<Morphism, GraphError> {
        if x.dom() != y.dom() {
            return Err(GraphError::ObjectMismatch("competing span has two different apexes"));
        }
        let vindex: HashMap<(usize, usize), usize> = (0..self.object.vertex_count())
            .map(|p| ((self.left.v(p), self.right.v(p)), p))
            .collect();
        let eindex: HashMap<(usize, usize), usize> = (0..self.object.edge_count())
            .map(|p| ((self.left.e(p), self.right.e(p)), p))
            .collect();
        let vmap = (0..x.dom().vertex_count())
            .map(|z| vindex.get(&(x.v(z), y.v(z))).copied().ok_or(GraphError::NotCommuting))
            .collect::<Result<Vec<_>, _>>()?;
        let emap = (0..x.dom().edge_count())
            .map(|z| eindex.get(&(x.e(z), y.e(z))).copied().ok_or(GraphError::NotCommuting))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism::new_unchecked(x.dom().clone(), self.object.clone(), vmap, emap))
    }
}

/// Computes the pullback of `f: A → C` and `g: B → C`. Elements of the
/// pullback object are named `(a,b)`.
pub fn pullback(f: &Morphism, g: &Morphism) -> Result<Pullback, GraphError> {
    if f.cod() != g.cod() {
        return Err(GraphError::ObjectMismatch("cospan legs have different codomains"));
    }
    let (a, b) = (f.dom(), g.dom());

    let mut b_over: HashMap<usize, Vec<usize>> = HashMap::new();
    for j in 0..b.vertex_count() {
        b_over.entry(g.v(j)).or_default().push(j);
    }
    let mut vertices = Vec::new();
    let mut vindex = HashMap::new();
    let (mut lv, mut rv) = (Vec::new(), Vec::new());
    for i in 0..a.vertex_count() {
        for &j in b_over.get(&f.v(i)).map(Vec::as_slice).unwrap_or(&[]) {
            vindex.insert((i, j), vertices.len());
            vertices.push(Vertex {
                id: format!("({},{})", a.vertices()[i].id, b.vertices()[j].id),
                label: a.vertices()[i].label.clone(),
            });
            lv.push(i);
            rv.push(j);
        }
    }

    let mut b_over_e: HashMap<usize, Vec<usize>> = HashMap::new();
    for j in 0..b.edge_count() {
        b_over_e.entry(g.e(j)).or_default().push(j);
    }
    let mut edges = Vec::new();
    let (mut le, mut re) = (Vec::new(), Vec::new());
    for i in 0..a.edge_count() {
        let ea = &a.edges()[i];
        for &j in b_over_e.get(&f.e(i)).map(Vec::as_slice).unwrap_or(&[]) {
            let eb = &b.edges()[j];
            edges.push(Edge {
                id: format!("({},{})", ea.id, eb.id),
                src: vindex[&(ea.src, eb.src)],
                tgt: vindex[&(ea.tgt, eb.tgt)],
                label: ea.label.clone(),
            });
            le.push(i);
            re.push(j);
        }
    }

    let object = Graph::from_parts_unchecked(vertices, edges);
    Ok(Pullback {
        left: Morphism::new_unchecked(object.clone(), a.clone(), lv, le),
        right: Morphism::new_unchecked(object.clone(), b.clone(), rv, re),
        object,
    })
}

/// `⟨f|g⟩`: the leg parallel to `f` of the pullback of `f` along `g`.
pub fn pullback_arrow(f: &Morphism, g: &Morphism) -> Result<Morphism, GraphError> {
    Ok(pullback(f, g)?.right)
}

/// How merged elements of a pushout object are named.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PushoutNaming {
    /// Union of the dot-separated components of all merged ids, sorted and
    /// joined with `.`.
    #[default]
    Union,
    /// As `Union`, but only over ids from the second leg's codomain whenever
    /// the class contains one.
    PreferSecond,
}

/// Pushout of a span `f: A → B`, `g: A → C`.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub object: Graph,
    /// `B → Q`
    pub left: Morphism,
    /// `C → Q`
    pub right: Morphism,
}

impl Pushout {
    /// The unique `Q → Z` with `h ∘ left = x` and `h ∘ right = y`.
    pub fn mediate(&self, x: &Morphism, y: &Morphism) -> Result<Morphism, GraphError> {
        if x.cod() != y.cod() {
            return Err(GraphError::ObjectMismatch("competing cospan has two different tips"));
        }
        let mut vmap = vec![None; self.object.vertex_count()];
        let mut emap = vec![None; self.object.edge_count()];
        let sides = [(&self.left, x), (&self.right, y)];
        for (leg, h) in sides {
            for i in 0..leg.dom().vertex_count() {
                let slot = &mut vmap[leg.v(i)];
                match *slot {
                    None => *slot = Some(h.v(i)),
                    Some(prev) if prev != h.v(i) => return Err(GraphError::NotCommuting),
                    _ => {}
                }
            }
            for i in 0..leg.dom().edge_count() {
                let slot = &mut emap[leg.e(i)];
                match *slot {
                    None => *slot = Some(h.e(i)),
                    Some(prev) if prev != h.e(i) => return Err(GraphError::NotCommuting),
                    _ => {}
                }
            }
        }
        let vmap = vmap.into_iter().map(|o| o.expect("pushout legs are jointly surjective")).collect();
        let emap = emap.into_iter().map(|o| o.expect("pushout legs are jointly surjective")).collect();
        Ok(Morphism::new_unchecked(self.object.clone(), x.cod().clone(), vmap, emap))
    }
}

pub fn pushout(f: &Morphism, g: &Morphism) -> Result<Pushout, GraphError> {
    pushout_named(f, g, PushoutNaming::Union)
}

/// Pushout with an explicit naming policy.
pub fn pushout_named(
    f: &Morphism,
    g: &Morphism,
    naming: PushoutNaming,
) -> Result<Pushout, GraphError> {
    if f.dom() != g.dom() {
        return Err(GraphError::ObjectMismatch("span legs have different domains"));
    }
    let (a, b, c) = (f.dom(), f.cod(), g.cod());
    let nb = b.vertex_count();
    let nbe = b.edge_count();

    let mut vuf = UnionFind::new(nb + c.vertex_count());
    for i in 0..a.vertex_count() {
        vuf.union(f.v(i), nb + g.v(i));
    }
    let mut euf = UnionFind::new(nbe + c.edge_count());
    for i in 0..a.edge_count() {
        euf.union(f.e(i), nbe + g.e(i));
    }

    let vertex_of = |k: usize| -> &Vertex {
        if k < nb { &b.vertices()[k] } else { &c.vertices()[k - nb] }
    };
    let edge_of = |k: usize| -> &Edge {
        if k < nbe { &b.edges()[k] } else { &c.edges()[k - nbe] }
    };

    let vclasses = vuf.classes();
    let mut vclass_of = vec![0; vuf.len()];
    let mut taken = HashSet::new();
    let mut vertices = Vec::with_capacity(vclasses.len());
    for (q, members) in vclasses.iter().enumerate() {
        let label = &vertex_of(members[0]).label;
        for &m in members {
            vclass_of[m] = q;
            if &vertex_of(m).label != label {
                return Err(GraphError::LabelConflict {
                    a: vertex_of(members[0]).id.clone(),
                    b: vertex_of(m).id.clone(),
                });
            }
        }
        let id = merged_id(members, nb, naming, |k| &vertex_of(k).id);
        vertices.push(Vertex { id: fresh_id(&id, &mut taken), label: label.clone() });
    }

    let eclasses = euf.classes();
    let mut eclass_of = vec![0; euf.len()];
    let mut taken = HashSet::new();
    let mut edges = Vec::with_capacity(eclasses.len());
    for (q, members) in eclasses.iter().enumerate() {
        let first = edge_of(members[0]);
        for &m in members {
            eclass_of[m] = q;
            if edge_of(m).label != first.label {
                return Err(GraphError::LabelConflict { a: first.id.clone(), b: edge_of(m).id.clone() });
            }
        }
        let offset = if members[0] < nbe { 0 } else { nb };
        let id = merged_id(members, nbe, naming, |k| &edge_of(k).id);
        edges.push(Edge {
            id: fresh_id(&id, &mut taken),
            src: vclass_of[first.src + offset],
            tgt: vclass_of[first.tgt + offset],
            label: first.label.clone(),
        });
    }

    let object = Graph::from_parts_unchecked(vertices, edges);
    let left = Morphism::new_unchecked(
        b.clone(),
        object.clone(),
        (0..nb).map(|i| vclass_of[i]).collect(),
        (0..nbe).map(|i| eclass_of[i]).collect(),
    );
    let right = Morphism::new_unchecked(
        c.clone(),
        object.clone(),
        (0..c.vertex_count()).map(|i| vclass_of[nb + i]).collect(),
        (0..c.edge_count()).map(|i| eclass_of[nbe + i]).collect(),
    );
    Ok(Pushout { object, left, right })
}

fn merged_id<'g>(
    members: &[usize],
    split: usize,
    naming: PushoutNaming,
    id: impl Fn(usize) -> &'g String,
) -> String {
    let has_second = members.iter().any(|&m| m >= split);
    let chosen = members.iter().filter(|&&m| match naming {
        PushoutNaming::Union => true,
        PushoutNaming::PreferSecond => !has_second || m >= split,
    });
    let mut atoms: BTreeSet<&str> = BTreeSet::new();
    for &m in chosen {
        atoms.extend(id_atoms(id(m)));
    }
    if atoms.is_empty() {
        return "_".to_string();
    }
    atoms.into_iter().collect::<Vec<_>>().join(".")
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so classes stay ordered by first member
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Classes ordered by their smallest member; members ascending.
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.len() {
            let r = self.find(x);
            let slot = *by_root.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[slot].push(x);
        }
        out
    }
}
