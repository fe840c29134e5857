mod common;

use common::*;
use proptest::prelude::*;
use tileterm_core::corpus::{infer_morphism, parse_graph, parse_rule_graphs, Workspace};
use tileterm_core::graph::*;
use tileterm_core::pbpo::*;

use MorphismClass::{Hom, Mono};

fn corpus_rules() -> Vec<PbpoRule> {
    let mut rules = Vec::new();
    for root in [corpus_root(), extended_root()] {
        let ws = Workspace::load(root).unwrap();
        assert!(ws.warnings.is_empty(), "{:?}", ws.warnings);
        rules.extend(ws.systems.into_iter().flat_map(|s| s.rules));
    }
    rules
}

fn system(name: &str) -> Vec<PbpoRule> {
    let ws = Workspace::load(corpus_root()).unwrap();
    ws.system(name).unwrap().rules.clone()
}

fn folding() -> PbpoRule {
    system("folding_an_edge").remove(0)
}

fn dpo(name: &str, l: &str, k: &str, r: &str) -> DpoRule {
    let (l, k, r) = (parse_graph(l).unwrap(), parse_graph(k).unwrap(), parse_graph(r).unwrap());
    DpoRule {
        name: name.into(),
        l: infer_morphism(name, "l", &k, &l).unwrap(),
        r: infer_morphism(name, "r", &k, &r).unwrap(),
    }
}

fn unfold_dpo() -> DpoRule {
    dpo(
        "rho",
        "x:0 -P:0-> y:0  y:0 -Q:0-> <-S:0- z:0",
        "x:0 -P:0-> y:0",
        "x:0 -P:0-> y:0  y:0 -Q:0-> w:0  w:0 -S:0-> x:0",
    )
}

#[test]
fn every_corpus_rule_is_valid_and_completed() {
    let rules = corpus_rules();
    assert!(rules.len() >= 13);
    for rule in &rules {
        assert_eq!(rule.validate(), vec![], "{}", rule.name());
        // completion is a pushout, and along the monic tK also a pullback
        let c = rule.completed();
        assert_eq!(c.rhs_type(), rule.rhs_type());
        assert_eq!(c.t_r(), rule.t_r());
        assert_eq!(rule.r_prime().compose(rule.t_k()).unwrap(), rule.t_r().compose(rule.r()).unwrap());
        let po = pushout(rule.t_k(), rule.r()).unwrap();
        assert!(po.mediate(rule.r_prime(), rule.t_r()).unwrap().is_iso(), "{}", rule.name());
        assert!(rule.right_square_is_pullback(), "{}", rule.name());
    }
}

#[test]
fn folding_completion_has_ten_edges() {
    let rule = folding();
    assert_eq!(rule.rhs_type().vertex_count(), 2);
    assert_eq!(rule.rhs_type().edge_count(), 10);
    let ids: Vec<&str> = rule.rhs_type().vertices().iter().map(|v| v.id.as_str()).collect();
    assert!(ids.contains(&"x.y") && ids.contains(&"c"), "{ids:?}");
}

#[test]
fn completion_with_identity_tk_keeps_r() {
    let k = parse_graph("x:0 -E:0-> y:0").unwrap();
    let r = parse_graph("x.y:0 -E:0-> x.y:0").unwrap();
    let l = parse_graph("x:0 -E:0-> y:0 z:0").unwrap();
    let rule = PbpoRule::new(
        "id",
        infer_morphism("id", "l", &k, &l).unwrap(),
        infer_morphism("id", "r", &k, &r).unwrap(),
        Morphism::identity(&l),
        Morphism::identity(&k),
        infer_morphism("id", "l'", &k, &l).unwrap(),
    )
    .unwrap();
    assert!(rule.t_r().is_iso());
    assert!(are_isomorphic(rule.rhs_type(), rule.rhs()));
}

#[test]
fn multiset_completion() {
    let rho = system("multiset_as_graph").remove(0);
    let rp = rho.rhs_type();
    let loops = |label: &str, in_r: bool| {
        let image: Vec<usize> = rho.t_r().vertex_map().to_vec();
        rp.edges()
            .iter()
            .filter(|e| e.src == e.tgt && e.label == label && image.contains(&e.src) == in_r)
            .count()
    };
    assert_eq!(loops("b", true), 3);
    assert_eq!(loops("a", true), 0);
    assert_eq!(loops("a", false), 1);
    assert_eq!(loops("b", false), 1);
    assert_eq!(rp.vertex_count(), 4);
    assert_eq!(rp.edge_count(), 5);
}

fn folding_parts() -> (Graph, Graph, Graph, Graph, Graph) {
    let text = std::fs::read_to_string(corpus_root().join("systems/03-folding_an_edge.pbpop")).unwrap();
    let g = parse_rule_graphs(&text).unwrap().remove(0);
    (g.l, g.l_prime, g.k, g.k_prime, g.r)
}

#[test]
fn redirected_l_prime_breaks_commutation() {
    let (l, lp, k, kp, r) = folding_parts();
    let proper = infer_morphism("bad", "l'", &kp, &lp).unwrap();
    let swap = isomorphisms(&kp, &lp).into_iter().find(|f| *f != proper).unwrap();
    let rule = PbpoRule::new(
        "bad",
        infer_morphism("bad", "l", &k, &l).unwrap(),
        infer_morphism("bad", "r", &k, &r).unwrap(),
        infer_morphism("bad", "tL", &l, &lp).unwrap(),
        infer_morphism("bad", "tK", &k, &kp).unwrap(),
        swap,
    )
    .unwrap();
    let v = rule.validate();
    assert!(matches!(v.as_slice(), [Violation::LeftSquareNotCommuting { .. }]), "{v:?}");
    assert!(v[0].to_string().starts_with("left square does not commute"));
}

#[test]
fn too_small_interface_is_not_a_pullback() {
    // drop the edge P from K; the square still commutes
    let (l, lp, _, kp, _) = folding_parts();
    let k = parse_graph("x:0 y:0").unwrap();
    let r = parse_graph("x.y:0").unwrap();
    let rule = PbpoRule::new(
        "small",
        infer_morphism("small", "l", &k, &l).unwrap(),
        infer_morphism("small", "r", &k, &r).unwrap(),
        infer_morphism("small", "tL", &l, &lp).unwrap(),
        infer_morphism("small", "tK", &k, &kp).unwrap(),
        infer_morphism("small", "l'", &kp, &lp).unwrap(),
    )
    .unwrap();
    let v = rule.validate();
    assert!(matches!(v.as_slice(), [Violation::LeftSquareNotPullback { .. }]), "{v:?}");
    // independent check: the pullback of tL and l' has more edges than K
    let pb = pullback(rule.t_l(), rule.l_prime()).unwrap();
    assert_eq!(pb.object.edge_count(), 1);
    assert_eq!(rule.interface().edge_count(), 0);
}

#[test]
fn folding_adheres_once_to_an_edge() {
    let rule = folding();
    let host = parse_graph("a:0 -E:0-> b:0").unwrap();
    let adh = enumerate_adherences(&rule, &host, Mono);
    assert_eq!(adh.len(), 1);
    assert!(adh[0].matching.is_iso());
    let step = apply_step(&rule, &adh[0].alpha).unwrap();
    assert!(step.check_faces(&rule).is_empty());
    assert_eq!(step.result.vertex_count(), 1);
    assert_eq!(step.result.edge_count(), 1);
    assert_eq!(step.result.vertices()[0].id, "a.b");
    assert_eq!(step.result.edges()[0].src, step.result.edges()[0].tgt);
}

#[test]
fn folding_a_path() {
    let rule = folding();
    let host = parse_graph("x:0 -E:0-> y:0 -F:0-> z:0").unwrap();
    let steps: Vec<RewriteStep> = enumerate_adherences(&rule, &host, Mono)
        .into_iter()
        .map(|a| apply_step(&rule, &a.alpha).unwrap())
        .collect();
    assert_eq!(steps.len(), 2);
    // folding x -> y: z goes to the context
    let step = steps.iter().find(|s| s.matching.v(0) == 0).unwrap();
    assert!(step.check_faces(&rule).is_empty());
    let g = &step.result;
    assert_eq!(g.vertex_count(), 2);
    let xy = g.vertex_index("x.y").unwrap();
    let z = g.vertex_index("z").unwrap();
    let mut ends: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.src, e.tgt)).collect();
    ends.sort();
    let mut expected = vec![(xy, xy), (xy, z)];
    expected.sort();
    assert_eq!(ends, expected);
}

#[test]
fn no_adherence_without_edges() {
    let host = parse_graph("a:0 b:0").unwrap();
    assert!(enumerate_adherences(&folding(), &host, Hom).is_empty());
}

#[test]
fn trivial_type_graph_adheres_by_identity() {
    let l = parse_graph("x:0 -E:0-> y:0").unwrap();
    let id = Morphism::identity(&l);
    let rule = PbpoRule::new("triv", id.clone(), id.clone(), id.clone(), id.clone(), id.clone()).unwrap();
    let adh = enumerate_adherences(&rule, &l, Mono);
    assert_eq!(adh.len(), 1);
    assert_eq!(adh[0].alpha, id);
}

#[test]
fn non_adherence_is_rejected() {
    let rule = folding();
    // send the host edge to a context loop: L does not match
    let host = parse_graph("a:0 -E:0-> a:0").unwrap();
    let alpha = enumerate_morphisms(&host, rule.lhs_type(), Hom)
        .into_iter()
        .find(|a| induced_match(&rule, a).is_err())
        .unwrap();
    assert!(matches!(apply_step(&rule, &alpha), Err(StepError::NotAnAdherence)));
}

#[test]
fn identity_rule_rewrites_nothing() {
    let labels = LabelSet::unlabeled();
    let rule = encode_dpo_rule(&dpo("id", "x:0 -E:0-> y:0", "x:0 -E:0-> y:0", "x:0 -E:0-> y:0"), &labels).unwrap();
    let host = parse_graph("a:0 -A:0-> b:0 -B:0-> c:0 -C:0-> a:0  b:0 -D:0-> b:0").unwrap();
    let adh = enumerate_adherences(&rule, &host, Mono);
    assert_eq!(adh.len(), 3);
    for a in adh {
        let step = apply_step(&rule, &a.alpha).unwrap();
        assert!(step.check_faces(&rule).is_empty());
        assert!(are_isomorphic(&step.result, &host));
    }
}

#[test]
fn encoded_unfold_rule_equals_the_corpus_rule() {
    let enc = encode_dpo_rule(&unfold_dpo(), &LabelSet::unlabeled()).unwrap();
    let corpus = system("unfold_to_triangle").remove(0);
    assert!(enc.validate().is_empty());
    for (a, b) in [
        (enc.lhs(), corpus.lhs()),
        (enc.lhs_type(), corpus.lhs_type()),
        (enc.interface(), corpus.interface()),
        (enc.interface_type(), corpus.interface_type()),
        (enc.rhs(), corpus.rhs()),
        (enc.rhs_type(), corpus.rhs_type()),
    ] {
        assert!(are_isomorphic(a, b), "{a:?} vs {b:?}");
    }
}

#[test]
fn encoded_string_rule_has_a_single_context_node() {
    let labels = LabelSet::new(["0"], ["a", "b", "c", "d"]);
    let rho = encode_dpo_rule(&dpo("rho", "x:0 -A:a-> y:0 -B:b-> z:0", "x:0 z:0", "x:0 -A:a-> y:0 -C:c-> z:0"), &labels)
        .unwrap();
    let lp = rho.lhs_type();
    assert_eq!(lp.vertex_count(), 4);
    // closure over {x, z, c}: 9 ordered pairs, 4 labels, plus the two L edges
    assert_eq!(lp.edge_count(), 9 * 4 + 2);
    let y = lp.vertex_index("y").unwrap();
    assert_eq!(lp.degrees()[y], 2);
}

#[test]
fn encoding_rejects_non_left_linear_spans() {
    let d = dpo("merge", "x.y:0", "x:0 y:0", "x:0 y:0");
    assert!(encode_dpo_rule(&d, &LabelSet::unlabeled()).is_err());
}

#[test]
fn steps_on_corpus_rules_satisfy_every_face() {
    let hosts = [
        "a:0 -A:0-> b:0 -B:0-> a:0  b:0 -C:0-> b:0",
        "a:0 -A:a-> a:0  b:0 -B:a-> b:0  c:0 -C:b-> c:0",
        "a:0 -A:0-> b:0 -B:0-> c:0  c:0 -C:0-> b:0",
        "a:0 -A:a-> b:0 -B:b-> c:0 -C:c-> d:0 -D:d-> e:0",
    ];
    let mut executed = 0;
    for rule in corpus_rules() {
        for h in hosts {
            let host = parse_graph(h).unwrap();
            for a in enumerate_adherences(&rule, &host, Hom) {
                let step = apply_step(&rule, &a.alpha).unwrap();
                assert_eq!(step.check_faces(&rule), Vec::<&str>::new(), "{} on {h}", rule.name());
                // independent size oracles for the pullback and the pushout
                let pairs = |f: &[usize], g: &[usize]| f.iter().map(|x| g.iter().filter(|y| *y == x).count()).sum::<usize>();
                assert_eq!(step.g_k.vertex_count(), pairs(a.alpha.vertex_map(), rule.l_prime().vertex_map()));
                assert_eq!(step.g_k.edge_count(), pairs(a.alpha.edge_map(), rule.l_prime().edge_map()));
                executed += 1;
            }
        }
    }
    assert!(executed > 20, "{executed}");
}

/// Direct left-linear DPO: for each monic match, search every subgraph of
/// the host for a pushout complement, then glue in R.
fn dpo_oracle(d: &DpoRule, host: &Graph) -> Vec<Graph> {
    let (l, r) = (&d.l, &d.r);
    let mut out = Vec::new();
    for m in brute_force_morphisms(l.cod(), host, Mono) {
        let ml = m.compose(l).unwrap();
        for incl in subgraphs(host) {
            // k: K -> D with incl ∘ k = m ∘ l
            let ks: Vec<Morphism> = brute_force_morphisms(l.dom(), incl.dom(), Hom)
                .into_iter()
                .filter(|k| incl.compose(k).unwrap() == ml)
                .collect();
            for k in ks {
                let po = pushout(l, &k).unwrap();
                if po.mediate(&m, &incl).is_ok_and(|h| h.is_iso()) {
                    out.push(pushout(&k, r).unwrap().object);
                }
            }
        }
    }
    out
}

fn same_up_to_iso(a: &[Graph], b: &[Graph]) -> bool {
    let mut rest: Vec<&Graph> = b.iter().collect();
    for g in a {
        match rest.iter().position(|h| are_isomorphic(g, h)) {
            Some(i) => {
                rest.remove(i);
            }
            None => return false,
        }
    }
    rest.is_empty()
}

fn pbpo_results(rule: &PbpoRule, host: &Graph) -> Vec<Graph> {
    enumerate_adherences(rule, host, Mono)
        .into_iter()
        .map(|a| {
            let step = apply_step(rule, &a.alpha).unwrap();
            assert!(step.check_faces(rule).is_empty());
            step.result
        })
        .collect()
}

fn unlabeled_dpo_rules() -> Vec<DpoRule> {
    vec![
        unfold_dpo(),
        dpo("delete_node", "x:0", "", ""),
        dpo("delete_edge", "x:0 -E:0-> y:0", "x:0 y:0", "x:0 y:0"),
        dpo("merge", "x:0 y:0", "x:0 y:0", "x.y:0"),
        dpo("add_loop", "x:0", "x:0", "x:0 -L:0-> x:0"),
        dpo("fold", "x:0 -E:0-> y:0", "x:0 y:0", "x.y:0 -E:0-> x.y:0"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn encoded_dpo_matches_direct_dpo(host in arb_graph_over(3, 4, &["0"], &["0"])) {
        for d in unlabeled_dpo_rules() {
            let rule = encode_dpo_rule(&d, &LabelSet::unlabeled()).unwrap();
            let ours = pbpo_results(&rule, &host);
            let oracle = dpo_oracle(&d, &host);
            prop_assert!(same_up_to_iso(&ours, &oracle), "{}: {} vs {} results", d.name, ours.len(), oracle.len());
        }
    }

    #[test]
    fn encoded_string_rules_match_direct_dpo(host in arb_graph_over(3, 4, &["0"], &["a", "b", "c", "d"])) {
        let labels = LabelSet::new(["0"], ["a", "b", "c", "d"]);
        for d in [
            dpo("rho", "x:0 -A:a-> y:0 -B:b-> z:0", "x:0 z:0", "x:0 -A:a-> y:0 -C:c-> z:0"),
            dpo("tau", "x:0 -C:c-> y:0 -D:d-> z:0", "x:0 z:0", "x:0 -D:d-> y:0 -B:b-> z:0"),
        ] {
            let rule = encode_dpo_rule(&d, &labels).unwrap();
            prop_assert!(same_up_to_iso(&pbpo_results(&rule, &host), &dpo_oracle(&d, &host)));
        }
    }

    #[test]
    fn classifier_counts_partial_maps(
        x in arb_graph_over(2, 2, &["a", "b"], &["a", "b"]),
        y in arb_graph_over(3, 3, &["a", "b"], &["a", "b"]),
    ) {
        let eta = partial_map_classifier(&x, &LabelSet::new(["a", "b"], ["a", "b"]));
        prop_assert!(eta.is_monic());
        let partial_maps: usize = subgraphs(&y).iter().map(|s| brute_force_count(s.dom(), &x, Hom)).sum();
        prop_assert_eq!(count_morphisms(&y, eta.cod(), Hom), partial_maps);
    }

    #[test]
    fn adherences_match_exhaustive_search(host in arb_graph_over(3, 3, &["0"], &["0"])) {
        for rule in system("folding_an_edge").into_iter().chain(system("delete_loop_and_nonloop")) {
            let fast = enumerate_adherences(&rule, &host, Hom);
            let slow: Vec<Morphism> = brute_force_morphisms(&host, rule.lhs_type(), Hom)
                .into_iter()
                .filter(|a| induced_match(&rule, a).is_ok())
                .collect();
            prop_assert_eq!(fast.len(), slow.len());
            for a in &fast {
                prop_assert!(slow.contains(&a.alpha));
                prop_assert_eq!(a.alpha.compose(&a.matching).unwrap(), rule.t_l().clone());
            }
        }
    }
}

#[test]
fn generalized_rule_adherences_match_exhaustive_search() {
    // l' is not monic here, and tL is
    let rho = system("generalized_multiset_as_graph").remove(0);
    let host = parse_graph("p:0 -A:a-> p:0  q:0 -B:a-> q:0  q:0 -C:b-> q:0  r:0 -D:b-> q:0").unwrap();
    let fast = enumerate_adherences(&rho, &host, Mono);
    let slow = enumerate_morphisms(&host, rho.lhs_type(), Hom)
        .into_iter()
        .filter(|a| induced_match(&rho, a).is_ok_and(|m| m.is_monic()))
        .count();
    assert_eq!(fast.len(), slow);
    assert!(!fast.is_empty());
    for a in fast {
        assert!(apply_step(&rho, &a.alpha).unwrap().check_faces(&rho).is_empty());
    }
}

fn worst_host(m: usize, n: usize) -> Graph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(format!("n{i}"), "0").unwrap();
    }
    for j in 0..m {
        b.add_edge(format!("L{j}"), 0, 0, "0").unwrap();
    }
    b.build()
}

#[test]
fn longest_derivations_for_small_hosts() {
    let rules = system("duplicating_bipartite_components");
    for (m, n) in [(0, 1), (1, 1), (1, 2), (2, 2)] {
        let expected = (1usize << m) * (n - 1) + m + 1;
        let got = longest_derivation(&rules, &worst_host(m, n), Mono, DEFAULT_BOUND).unwrap();
        assert_eq!(got, expected, "m={m} n={n}");
    }
}

#[test]
fn successors_are_deduplicated_up_to_iso() {
    let rules = system("delete_loop_and_nonloop");
    let g = parse_graph("a:0 -A:0-> b:0  c:0 -B:0-> d:0").unwrap();
    // both edges give isomorphic results
    let next = successors(&rules, &g, Mono, DEFAULT_BOUND);
    assert_eq!(next.graphs.len(), 1);
    assert!(!next.truncated);
    let cut = successors(&rules, &parse_graph("a:0 -A:0-> b:0  a:0 -B:0-> a:0").unwrap(), Mono, 1);
    assert!(cut.truncated);
}

#[test]
fn cycles_are_reported() {
    let id = encode_dpo_rule(&dpo("id", "x:0", "x:0", "x:0"), &LabelSet::unlabeled()).unwrap();
    let r = longest_derivation(&[id], &parse_graph("a:0").unwrap(), Mono, DEFAULT_BOUND);
    assert_eq!(r, Err(ExploreError::Cycle));
}
