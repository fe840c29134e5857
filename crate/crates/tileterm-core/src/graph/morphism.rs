use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{factor, Graph, GraphError};

/// A label-preserving graph homomorphism, stored as index maps.
#[derive(Clone)]
pub struct Morphism {
    dom: Graph,
    cod: Graph,
    vmap: Vec<usize>,
    emap: Vec<usize>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.vmap == other.vmap
            && self.emap == other.emap
            && self.dom == other.dom
            && self.cod == other.cod
    }
}

impl Eq for Morphism {}

impl Hash for Morphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vmap.hash(state);
        self.emap.hash(state);
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &j) in self.vmap.iter().enumerate() {
            parts.push(format!("{}↦{}", self.dom.vertices()[i].id, self.cod.vertices()[j].id));
        }
        for (i, &j) in self.emap.iter().enumerate() {
            parts.push(format!("{}↦{}", self.dom.edges()[i].id, self.cod.edges()[j].id));
        }
        write!(f, "Morphism[{}]", parts.join(", "))
    }
}

impl Morphism {
    /// Checks totality, ranges, the homomorphism squares and labels.
    pub fn new(
        dom: Graph,
        cod: Graph,
        vmap: Vec<usize>,
        emap: Vec<usize>,
    ) -> Result<Morphism, GraphError> {
        if vmap.len() != dom.vertex_count() {
            return Err(GraphError::MapLength { expected: dom.vertex_count(), got: vmap.len() });
        }
        if emap.len() != dom.edge_count() {
            return Err(GraphError::MapLength { expected: dom.edge_count(), got: emap.len() });
        }
        for (i, &j) in vmap.iter().enumerate() {
            let Some(target) = cod.vertices().get(j) else {
                return Err(GraphError::OutOfRange { index: j });
            };
            if target.label != dom.vertices()[i].label {
                return Err(GraphError::NotHomomorphism(format!(
                    "vertex `{}` has label `{}` but its image `{}` has label `{}`",
                    dom.vertices()[i].id,
                    dom.vertices()[i].label,
                    target.id,
                    target.label
                )));
            }
        }
        for (i, &j) in emap.iter().enumerate() {
            let Some(target) = cod.edges().get(j) else {
                return Err(GraphError::OutOfRange { index: j });
            };
            let e = &dom.edges()[i];
            if target.label != e.label {
                return Err(GraphError::NotHomomorphism(format!(
                    "edge `{}` has label `{}` but its image `{}` has label `{}`",
                    e.id, e.label, target.id, target.label
                )));
            }
            if vmap[e.src] != target.src || vmap[e.tgt] != target.tgt {
                return Err(GraphError::NotHomomorphism(format!(
                    "edge `{}` is mapped to `{}` but its endpoints are not",
                    e.id, target.id
                )));
            }
        }
        Ok(Morphism { dom, cod, vmap, emap })
    }

    pub(crate) fn new_unchecked(
        dom: Graph,
        cod: Graph,
        vmap: Vec<usize>,
        emap: Vec<usize>,
    ) -> Morphism {
        debug_assert_eq!(vmap.len(), dom.vertex_count());
        debug_assert_eq!(emap.len(), dom.edge_count());
        Morphism { dom, cod, vmap, emap }
    }

    pub fn identity(g: &Graph) -> Morphism {
        Morphism {
            dom: g.clone(),
            cod: g.clone(),
            vmap: (0..g.vertex_count()).collect(),
            emap: (0..g.edge_count()).collect(),
        }
    }

    /// The unique morphism out of the empty graph.
    pub fn from_empty(g: &Graph) -> Morphism {
        Morphism { dom: Graph::empty(), cod: g.clone(), vmap: Vec::new(), emap: Vec::new() }
    }

    pub fn dom(&self) -> &Graph {
        &self.dom
    }

    pub fn cod(&self) -> &Graph {
        &self.cod
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vmap
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.emap
    }

    pub fn v(&self, i: usize) -> usize {
        self.vmap[i]
    }

    pub fn e(&self, i: usize) -> usize {
        self.emap[i]
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism, GraphError> {
        if f.cod != self.dom {
            return Err(GraphError::ObjectMismatch("codomain of the first morphism is not the domain of the second"));
        }
        Ok(self.compose_unchecked(f))
    }

    pub(crate) fn compose_unchecked(&self, f: &Morphism) -> Morphism {
        Morphism {
            dom: f.dom.clone(),
            cod: self.cod.clone(),
            vmap: f.vmap.iter().map(|&i| self.vmap[i]).collect(),
            emap: f.emap.iter().map(|&i| self.emap[i]).collect(),
        }
    }

    /// Same maps, with the domain replaced by a structurally identical graph
    /// (typically a renamed copy).
    pub fn with_dom(&self, dom: Graph) -> Morphism {
        assert!(same_shape(&self.dom, &dom), "with_dom: shapes differ");
        Morphism { dom, ..self.clone() }
    }

    /// Same maps, with the codomain replaced by a structurally identical graph.
    pub fn with_cod(&self, cod: Graph) -> Morphism {
        assert!(same_shape(&self.cod, &cod), "with_cod: shapes differ");
        Morphism { cod, ..self.clone() }
    }

    pub fn is_monic(&self) -> bool {
        injective(&self.vmap, self.cod.vertex_count()) && injective(&self.emap, self.cod.edge_count())
    }

    pub fn is_epic(&self) -> bool {
        surjective(&self.vmap, self.cod.vertex_count()) && surjective(&self.emap, self.cod.edge_count())
    }

    pub fn is_iso(&self) -> bool {
        self.vmap.len() == self.cod.vertex_count()
            && self.emap.len() == self.cod.edge_count()
            && self.is_monic()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        if !self.is_iso() {
            return None;
        }
        let mut vinv = vec![0; self.vmap.len()];
        for (i, &j) in self.vmap.iter().enumerate() {
            vinv[j] = i;
        }
        let mut einv = vec![0; self.emap.len()];
        for (i, &j) in self.emap.iter().enumerate() {
            einv[j] = i;
        }
        Some(Morphism { dom: self.cod.clone(), cod: self.dom.clone(), vmap: vinv, emap: einv })
    }

    pub fn classify(&self) -> MorphismFlags {
        let monic = self.is_monic();
        let epic = self.is_epic();
        MorphismFlags {
            monic,
            epic,
            iso: monic && epic,
            regular_monic: monic,
            split_epic: epic && factor::is_split_epic(self),
        }
    }
}

fn same_shape(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && a.vertices().iter().zip(b.vertices()).all(|(x, y)| x.label == y.label)
        && a.edges()
            .iter()
            .zip(b.edges())
            .all(|(x, y)| x.label == y.label && x.src == y.src && x.tgt == y.tgt)
}

fn injective(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.iter().all(|&j| !std::mem::replace(&mut seen[j], true))
}

fn surjective(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &j in map {
        seen[j] = true;
    }
    seen.into_iter().all(|b| b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphismFlags {
    pub monic: bool,
    pub epic: bool,
    pub iso: bool,
    pub regular_monic: bool,
    pub split_epic: bool,
}

/// Which morphisms a tile counts. In a topos regular monos are exactly the
/// monos, so `Mono` and `RegularMono` select the same arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MorphismClass {
    #[serde(rename = "h")]
    Hom,
    #[serde(rename = "m")]
    Mono,
    #[serde(rename = "r")]
    RegularMono,
}

impl MorphismClass {
    pub fn contains(self, f: &Morphism) -> bool {
        match self {
            MorphismClass::Hom => true,
            MorphismClass::Mono | MorphismClass::RegularMono => f.is_monic(),
        }
    }

    pub fn requires_injective(self) -> bool {
        !matches!(self, MorphismClass::Hom)
    }

    pub fn from_char(c: char) -> Option<MorphismClass> {
        match c.to_ascii_lowercase() {
            'h' => Some(MorphismClass::Hom),
            'm' => Some(MorphismClass::Mono),
            'r' => Some(MorphismClass::RegularMono),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            MorphismClass::Hom => 'h',
            MorphismClass::Mono => 'm',
            MorphismClass::RegularMono => 'r',
        }
    }
}

impl fmt::Display for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismClass::Hom => "homomorphisms",
            MorphismClass::Mono => "monos",
            MorphismClass::RegularMono => "regular monos",
        })
    }
}

impl FromStr for MorphismClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                MorphismClass::from_char(c).ok_or_else(|| format!("unknown morphism class `{s}`"))
            }
            _ => match s.to_ascii_lowercase().as_str() {
                "hom" | "homomorphisms" => Ok(MorphismClass::Hom),
                "mono" | "monos" => Ok(MorphismClass::Mono),
                "regular" | "regmono" | "regular monos" => Ok(MorphismClass::RegularMono),
                _ => Err(format!("unknown morphism class `{s}`")),
            },
        }
    }
}
