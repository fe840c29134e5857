//! Kernel properties as plain functions, shared by the proptest suite and
//! the acceptance runner.

use std::collections::HashSet;

use proptest::prelude::*;
use tileterm_core::graph::*;

use super::*;
use MorphismClass::{Hom, Mono, RegularMono};

pub type Check = Result<(), TestCaseError>;

pub fn hom_counts_match_brute_force(t: Graph, g: Graph) -> Check {
    let mut seen = HashSet::new();
    for class in [Hom, Mono] {
        let found = enumerate_morphisms(&t, &g, class);
        let oracle = brute_force_morphisms(&t, &g, class);
        prop_assert_eq!(found.len(), oracle.len());
        prop_assert!(found.iter().all(|m| oracle.contains(m)));
        prop_assert!(found.iter().all(|m| seen.insert((class, m.clone()))), "duplicates");
        prop_assert_eq!(count_morphisms(&t, &g, class), oracle.len());
    }
    let monos = enumerate_morphisms(&t, &g, Mono);
    prop_assert_eq!(&monos, &enumerate_morphisms(&t, &g, RegularMono));
    prop_assert!(monos.len() <= count_morphisms(&t, &g, Hom));
    // deterministic order
    prop_assert_eq!(enumerate_morphisms(&t, &g, Hom), enumerate_morphisms(&t, &g, Hom));
    Ok(())
}

pub fn pullback_is_a_pullback(c: Graph, s1: u64, s2: u64, x: Graph) -> Check {
    let f = random_morphism_into(&c, s1, 3, 3);
    let g = random_morphism_into(&c, s2, 3, 3);
    let pb = pullback(&f, &g).unwrap();
    prop_assert_eq!(f.compose(&pb.left).unwrap(), g.compose(&pb.right).unwrap());

    // carrier = pairs with equal image
    let pv = (0..f.dom().vertex_count())
        .flat_map(|a| (0..g.dom().vertex_count()).map(move |b| (a, b)))
        .filter(|&(a, b)| f.v(a) == g.v(b))
        .count();
    let pe = (0..f.dom().edge_count())
        .flat_map(|a| (0..g.dom().edge_count()).map(move |b| (a, b)))
        .filter(|&(a, b)| f.e(a) == g.e(b))
        .count();
    prop_assert_eq!(pb.object.vertex_count(), pv);
    prop_assert_eq!(pb.object.edge_count(), pe);

    // universal property against every commuting span from x
    let into_p = enumerate_morphisms(&x, &pb.object, Hom);
    for xa in enumerate_morphisms(&x, f.dom(), Hom) {
        for xb in enumerate_morphisms(&x, g.dom(), Hom) {
            if f.compose(&xa).unwrap() != g.compose(&xb).unwrap() {
                continue;
            }
            let mediators: Vec<_> = into_p
                .iter()
                .filter(|u| pb.left.compose(u).unwrap() == xa && pb.right.compose(u).unwrap() == xb)
                .collect();
            prop_assert_eq!(mediators.len(), 1);
            prop_assert_eq!(mediators[0], &pb.mediate(&xa, &xb).unwrap());
        }
    }
    Ok(())
}

pub fn pushout_is_a_pushout(a: Graph, b: Graph, c: Graph, sb: usize, sc: usize, x: Graph) -> Check {
    // spans over a common A: pick random morphisms by brute force
    let fs = enumerate_morphisms(&a, &b, Hom);
    let gs = enumerate_morphisms(&a, &c, Hom);
    prop_assume!(!fs.is_empty() && !gs.is_empty());
    let f = &fs[sb % fs.len()];
    let g = &gs[sc % gs.len()];
    let po = pushout(f, g).unwrap();
    prop_assert_eq!(po.left.compose(f).unwrap(), po.right.compose(g).unwrap());

    // carrier = classes of the generated equivalence on B + C
    let classes = |nb: usize, nc: usize, pairs: Vec<(usize, usize)>| {
        let mut parent: Vec<usize> = (0..nb + nc).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i { let r = find(p, p[i]); p[i] = r; }
            p[i]
        }
        for (i, j) in pairs {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, nb + j));
            parent[ri] = rj;
        }
        (0..nb + nc).filter(|&i| find(&mut parent, i) == i).count()
    };
    let vpairs = (0..a.vertex_count()).map(|i| (f.v(i), g.v(i))).collect();
    let epairs = (0..a.edge_count()).map(|i| (f.e(i), g.e(i))).collect();
    prop_assert_eq!(po.object.vertex_count(), classes(b.vertex_count(), c.vertex_count(), vpairs));
    prop_assert_eq!(po.object.edge_count(), classes(b.edge_count(), c.edge_count(), epairs));

    let into_x = enumerate_morphisms(&po.object, &x, Hom);
    for xb in enumerate_morphisms(&b, &x, Hom) {
        for xc in enumerate_morphisms(&c, &x, Hom) {
            if xb.compose(f).unwrap() != xc.compose(g).unwrap() {
                continue;
            }
            let mediators: Vec<_> = into_x
                .iter()
                .filter(|u| u.compose(&po.left).unwrap() == xb && u.compose(&po.right).unwrap() == xc)
                .collect();
            prop_assert_eq!(mediators.len(), 1);
            prop_assert_eq!(mediators[0], &po.mediate(&xb, &xc).unwrap());
        }
    }
    // the pushout itself factors through the identity only
    prop_assert_eq!(po.mediate(&po.left, &po.right).unwrap(), Morphism::identity(&po.object));
    Ok(())
}

pub fn pushout_along_a_mono_is_a_pullback(b: Graph, c: Graph, s: u64, pick: usize) -> Check {
    let f = factorize(&random_morphism_into(&b, s, 3, 3)).mono;
    let a = f.dom().clone();
    let gs = enumerate_morphisms(&a, &c, Hom);
    prop_assume!(!gs.is_empty());
    let g = &gs[pick % gs.len()];
    let po = pushout(&f, g).unwrap();
    let pb = pullback(&po.left, &po.right).unwrap();
    prop_assert_eq!(pb.object.vertex_count(), a.vertex_count());
    prop_assert_eq!(pb.object.edge_count(), a.edge_count());
    let u = pb.mediate(&f, g).unwrap();
    prop_assert!(u.is_iso());
    Ok(())
}

pub fn factorization_laws(c: Graph, s: u64) -> Check {
    let f = random_morphism_into(&c, s, 4, 4);
    let fac = factorize(&f);
    prop_assert_eq!(fac.mono.compose(&fac.epi).unwrap(), f.clone());
    prop_assert!(fac.epi.is_epic());
    prop_assert!(fac.mono.is_monic());
    let vimg: HashSet<_> = f.vertex_map().iter().collect();
    let eimg: HashSet<_> = f.edge_map().iter().collect();
    prop_assert_eq!(fac.image.vertex_count(), vimg.len());
    prop_assert_eq!(fac.image.edge_count(), eimg.len());
    Ok(())
}

pub fn right_inverses_are_complete(c: Graph, s: u64) -> Check {
    let e = factorize(&random_morphism_into(&c, s, 4, 4)).epi;
    let found = right_inverses(&e);
    let id = Morphism::identity(e.cod());
    let oracle: Vec<Morphism> = brute_force_morphisms(e.cod(), e.dom(), Hom)
        .into_iter()
        .filter(|g| e.compose(g).unwrap() == id)
        .collect();
    prop_assert_eq!(found.len(), oracle.len());
    for g in &found {
        prop_assert!(oracle.contains(g));
        prop_assert!(g.is_monic());
    }
    prop_assert_eq!(e.classify().split_epic, !found.is_empty());
    Ok(())
}
