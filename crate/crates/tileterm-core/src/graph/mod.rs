//! The category of finite vertex- and edge-labeled directed multigraphs.
//!
//! Graphs are immutable and cheap to clone. Vertices and edges are stored in
//! vectors; their position is the canonical order used by every enumeration
//! in this crate. Morphisms are pairs of index maps.

mod factor;
mod iso;
mod limits;
mod morphism;
mod search;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use factor::{factorize, is_split_epic, right_inverses, Factorization};
pub use iso::{are_isomorphic, find_isomorphism, isomorphisms, IsoClasses};
pub use limits::{pullback, pullback_arrow, pushout, pushout_named, Pullback, Pushout, PushoutNaming};
pub use morphism::{Morphism, MorphismClass, MorphismFlags};
pub use search::{count_morphisms, enumerate_morphisms, HomSearch};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` refers to vertex index {index}, which does not exist")]
    DanglingEdge { edge: String, index: usize },
    #[error("map has {got} entries, expected {expected}")]
    MapLength { expected: usize, got: usize },
    #[error("image index {index} out of range for the codomain")]
    OutOfRange { index: usize },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("objects do not match: {0}")]
    ObjectMismatch(&'static str),
    #[error("label conflict while merging `{a}` and `{b}`")]
    LabelConflict { a: String, b: String },
    #[error("the given morphisms do not commute with the construction")]
    NotCommuting,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct GraphData {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

/// A finite labeled multigraph. Equality is structural, including ids and
/// element order; use [`find_isomorphism`] for equality up to iso.
#[derive(Clone)]
pub struct Graph(Arc<GraphData>);

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{")?;
        for (i, v) in self.vertices().iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}:{}", v.id, v.label)?;
        }
        for e in self.edges() {
            let (s, t) = (&self.vertices()[e.src].id, &self.vertices()[e.tgt].id);
            write!(f, ", {s} -{}:{}-> {t}", e.id, e.label)?;
        }
        write!(f, " }}")
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty()
    }
}

impl Graph {
    pub fn empty() -> Graph {
        Graph(Arc::new(GraphData { vertices: Vec::new(), edges: Vec::new() }))
    }

    /// Builds a graph from raw parts, checking id uniqueness and endpoints.
    pub fn from_parts(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new();
        for v in vertices {
            b.add_vertex(v.id, v.label)?;
        }
        for e in edges {
            b.add_edge(e.id, e.src, e.tgt, e.label)?;
        }
        Ok(b.build())
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Graph {
        Graph(Arc::new(GraphData { vertices, edges }))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.0.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.0.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.vertices.is_empty()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.0.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.0.edges.iter().position(|e| e.id == id)
    }

    /// True if both handles point at the same allocation.
    pub fn same_object(&self, other: &Graph) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Number of edges touching each vertex (a loop counts twice).
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count()];
        for e in self.edges() {
            d[e.src] += 1;
            d[e.tgt] += 1;
        }
        d
    }

    /// Same structure with new ids. Panics if the name lists have the wrong
    /// length; uniqueness is the caller's job.
    pub fn renamed(&self, vertex_ids: Vec<String>, edge_ids: Vec<String>) -> Graph {
        assert_eq!(vertex_ids.len(), self.vertex_count());
        assert_eq!(edge_ids.len(), self.edge_count());
        let vertices = self
            .vertices()
            .iter()
            .zip(vertex_ids)
            .map(|(v, id)| Vertex { id, label: v.label.clone() })
            .collect();
        let edges = self
            .edges()
            .iter()
            .zip(edge_ids)
            .map(|(e, id)| Edge { id, src: e.src, tgt: e.tgt, label: e.label.clone() })
            .collect();
        Graph::from_parts_unchecked(vertices, edges)
    }

    /// Renames every vertex to `v0, v1, ...` and every edge to `e0, e1, ...`.
    pub fn with_positional_ids(&self) -> Graph {
        self.renamed(
            (0..self.vertex_count()).map(|i| format!("v{i}")).collect(),
            (0..self.edge_count()).map(|i| format!("e{i}")).collect(),
        )
    }

    pub fn labels(&self) -> LabelSet {
        let mut ls = LabelSet::default();
        ls.vertex.extend(self.vertices().iter().map(|v| v.label.clone()));
        ls.edge.extend(self.edges().iter().map(|e| e.label.clone()));
        ls
    }

    /// Colour-refinement fingerprint. Isomorphic graphs get equal values;
    /// the converse does not hold.
    pub fn invariant(&self) -> u64 {
        let colors = iso::refined_colors(self);
        let mut sorted = colors;
        sorted.sort_unstable();
        let mut h = std::collections::hash_map::DefaultHasher::new();
        (self.vertex_count(), self.edge_count()).hash(&mut h);
        sorted.hash(&mut h);
        h.finish()
    }
}

/// Vertex and edge label alphabets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelSet {
    pub vertex: BTreeSet<String>,
    pub edge: BTreeSet<String>,
}

impl LabelSet {
    /// The single label `0` on both vertices and edges.
    pub fn unlabeled() -> LabelSet {
        LabelSet::new(["0"], ["0"])
    }

    pub fn new<V, E>(vertex: V, edge: E) -> LabelSet
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator,
        E::Item: Into<String>,
    {
        LabelSet {
            vertex: vertex.into_iter().map(Into::into).collect(),
            edge: edge.into_iter().map(Into::into).collect(),
        }
    }

    /// Labels occurring in any of the graphs.
    pub fn of<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> LabelSet {
        let mut ls = LabelSet::default();
        for g in graphs {
            ls.extend(&g.labels());
        }
        ls
    }

    pub fn extend(&mut self, other: &LabelSet) {
        self.vertex.extend(other.vertex.iter().cloned());
        self.edge.extend(other.edge.iter().cloned());
    }
}

/// Incremental construction with id checks.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_ids: HashMap<String, usize>,
    edge_ids: HashSet<String>,
}

impl GraphBuilder {
    pub fn new() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn add_vertex(
        &mut self,
        id: impl Into<String>,
        label: impl Into<String>,
    ) -> Result<usize, GraphError> {
        let id = id.into();
        if self.vertex_ids.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        let index = self.vertices.len();
        self.vertex_ids.insert(id.clone(), index);
        self.vertices.push(Vertex { id, label: label.into() });
        Ok(index)
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        src: usize,
        tgt: usize,
        label: impl Into<String>,
    ) -> Result<usize, GraphError> {
        let id = id.into();
        for index in [src, tgt] {
            if index >= self.vertices.len() {
                return Err(GraphError::DanglingEdge { edge: id, index });
            }
        }
        if !self.edge_ids.insert(id.clone()) {
            return Err(GraphError::DuplicateEdge(id));
        }
        self.edges.push(Edge { id, src, tgt, label: label.into() });
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_ids.get(id).copied()
    }

    pub fn vertex(&self, index: usize) -> &Vertex {
        &self.vertices[index]
    }

    pub fn build(self) -> Graph {
        Graph::from_parts_unchecked(self.vertices, self.edges)
    }
}

/// Picks `base`, or `base_1`, `base_2`, ... if taken, and records the choice.
pub(crate) fn fresh_id(base: &str, taken: &mut HashSet<String>) -> String {
    if taken.insert(base.to_string()) {
        return base.to_string();
    }
    let mut k = 1;
    loop {
        let candidate = format!("{base}_{k}");
        if taken.insert(candidate.clone()) {
            return candidate;
        }
        k += 1;
    }
}

/// The dot-separated components of an id, as used by merged pushout ids.
pub fn id_atoms(id: &str) -> BTreeSet<&str> {
    id.split('.').filter(|a| !a.is_empty()).collect()
}
