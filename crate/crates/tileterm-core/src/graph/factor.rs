use super::{Graph, HomSearch, Morphism};

/// The (epi, mono) factorization `f = mono ∘ epi` through the image of `f`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub image: Graph,
    pub epi: Morphism,
    pub mono: Morphism,
}

/// Factors `f` through its image subgraph. The image keeps the codomain's
/// ids and order.
pub fn factorize(f: &Morphism) -> Factorization {
    let cod = f.cod();
    let mut vhit = vec![false; cod.vertex_count()];
    for &j in f.vertex_map() {
        vhit[j] = true;
    }
    let mut ehit = vec![false; cod.edge_count()];
    for &j in f.edge_map() {
        ehit[j] = true;
    }
    let vkeep: Vec<usize> = (0..vhit.len()).filter(|&j| vhit[j]).collect();
    let ekeep: Vec<usize> = (0..ehit.len()).filter(|&j| ehit[j]).collect();
    let mut vpos = vec![usize::MAX; cod.vertex_count()];
    for (k, &j) in vkeep.iter().enumerate() {
        vpos[j] = k;
    }
    let mut epos = vec![usize::MAX; cod.edge_count()];
    for (k, &j) in ekeep.iter().enumerate() {
        epos[j] = k;
    }
    let vertices = vkeep.iter().map(|&j| cod.vertices()[j].clone()).collect();
    let edges = ekeep
        .iter()
        .map(|&j| {
            let mut e = cod.edges()[j].clone();
            e.src = vpos[e.src];
            e.tgt = vpos[e.tgt];
            e
        })
        .collect();
    let image = Graph::from_parts_unchecked(vertices, edges);
    let epi = Morphism::new_unchecked(
        f.dom().clone(),
        image.clone(),
        f.vertex_map().iter().map(|&j| vpos[j]).collect(),
        f.edge_map().iter().map(|&j| epos[j]).collect(),
    );
    let mono = Morphism::new_unchecked(image.clone(), cod.clone(), vkeep, ekeep);
    Factorization { image, epi, mono }
}

fn section_search(e: &Morphism) -> Option<HomSearch<'_>> {
    let (a, b) = (e.dom(), e.cod());
    let mut vfiber = vec![Vec::new(); b.vertex_count()];
    for i in 0..a.vertex_count() {
        vfiber[e.v(i)].push(i);
    }
    let mut efiber = vec![Vec::new(); b.edge_count()];
    for i in 0..a.edge_count() {
        efiber[e.e(i)].push(i);
    }
    if vfiber.iter().any(Vec::is_empty) || efiber.iter().any(Vec::is_empty) {
        return None;
    }
    let mut search = HomSearch::new(b, a);
    for (j, fiber) in vfiber.into_iter().enumerate() {
        search = search.restrict_vertex(j, fiber);
    }
    for (j, fiber) in efiber.into_iter().enumerate() {
        search = search.restrict_edge(j, fiber);
    }
    Some(search)
}

/// Every `g` with `e ∘ g = id`. Empty exactly when `e` is not split epic.
pub fn right_inverses(e: &Morphism) -> Vec<Morphism> {
    section_search(e).map(|s| s.collect()).unwrap_or_default()
}

pub fn is_split_epic(e: &Morphism) -> bool {
    section_search(e).is_some_and(|s| s.exists())
}
