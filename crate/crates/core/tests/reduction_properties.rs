mod common;

use proptest::prelude::*;

use tagclique::encoding::{
    enumerate_k_cliques, graph_gadget, list_gadget, node_gadget, parse_toks, to_terminals, Graph,
    Token,
};
use tagclique::gadgets::{build_cc, build_nc, build_reduction_grammar};
use tagclique::program::{embed_tuple, program_to_grammar, TupleDecider, Tuple4};
use tagclique::recognizer::ChartRecognizer;
use tagclique::reduction::{
    build_derivation, find_clique, has_clique, recognize_decomposition, run_campaign,
    style_fast_check, verify_instance, CampaignConfig, CngAt, ReductionError,
};
use tagclique::tag::{replay, Terminal};

use common::{has_clique_by_extension, hashed, random_graph, rng};

fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n).map(|v| (v, v % n + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn k6_minus_edge() -> Graph {
    let mut g = Graph::complete(6);
    g.remove_edge(2, 5);
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracles_agree(seed in any::<u64>(), p in 0.3f64..0.9, m in 1usize..7) {
        let g = random_graph(&mut rng(seed), 10, p);
        prop_assert_eq!(has_clique(&g, m), has_clique_by_extension(&g, m));
        if let Some(c) = find_clique(&g, m) {
            prop_assert_eq!(c.len(), m);
            for (i, &u) in c.iter().enumerate() {
                prop_assert!(c[i + 1..].iter().all(|&v| g.has_edge(u, v)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn reduction_agrees_with_the_oracle(seed in any::<u64>(), n in 6usize..8, p in 0.6f64..0.95) {
        let g = random_graph(&mut rng(seed), n, p);
        let report = verify_instance(&g, 1).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
        if let Some(anchors) = report.anchors {
            let cliques = enumerate_k_cliques(&g, 1);
            let mut union: Vec<usize> = anchors.0.iter().map(|&i| cliques[i].vertices()[0]).collect();
            union.sort_unstable();
            union.dedup();
            prop_assert_eq!(union.len(), 6);
        }
    }
}

#[test]
fn oracle_examples() {
    assert!(has_clique(&Graph::complete(6), 6));
    assert!(!has_clique(&k6_minus_edge(), 6));
    assert!(has_clique(&Graph::new(1), 1));
}

#[test]
fn reduction_examples() {
    let k7 = verify_instance(&Graph::complete(7), 1).unwrap();
    assert!(k7.oracle_result && k7.decomp_result);
    assert_eq!(k7.constructive_result, Some(true));

    let c7 = verify_instance(&cycle(7), 1).unwrap();
    assert!(!c7.oracle_result && !c7.decomp_result);
    assert_eq!(c7.constructive_result, None);

    assert!(recognize_decomposition(&graph_gadget(&Graph::complete(6), 1), 1).unwrap());
    assert!(!recognize_decomposition(&graph_gadget(&k6_minus_edge(), 1), 1).unwrap());
}

#[test]
fn planted_clique_in_sparse_noise() {
    let mut g = random_graph(&mut rng(9), 9, 0.2);
    for u in 2..=7 {
        for v in u + 1..=7 {
            g.add_edge(u, v).unwrap();
        }
    }
    let report = verify_instance(&g, 1).unwrap();
    assert!(report.passed() && report.oracle_result);
}

#[test]
fn either_of_two_cliques_derives_the_encoding() {
    let mut edges = Vec::new();
    for base in [0, 6] {
        for u in 1..=6 {
            for v in u + 1..=6 {
                edges.push((base + u, base + v));
            }
        }
    }
    let g = Graph::from_edges(12, &edges).unwrap();
    let rg = build_reduction_grammar();
    let s = to_terminals(&graph_gadget(&g, 1));
    for clique in [vec![1, 2, 3, 4, 5, 6], vec![7, 8, 9, 10, 11, 12]] {
        let d = build_derivation(&rg, &g, 1, &clique).unwrap();
        let tree = replay(&rg.grammar, &d).unwrap();
        assert!(tree.marked_addresses().is_empty());
        assert_eq!(tree.yield_terminals(), s);
    }
}

#[test]
fn non_cliques_are_refused() {
    let rg = build_reduction_grammar();
    let g = k6_minus_edge();
    let err = build_derivation(&rg, &g, 1, &[1, 2, 3, 4, 5, 6]).unwrap_err();
    assert!(matches!(err, ReductionError::NotAClique(_)));
    let err = build_derivation(&rg, &Graph::complete(7), 1, &[1, 2, 3]).unwrap_err();
    assert!(matches!(err, ReductionError::NotAClique(_)));
}

#[test]
fn strings_of_the_wrong_shape_are_malformed() {
    let soup = parse_toks("0 1 $ # l1 r1 e | S").unwrap();
    assert!(recognize_decomposition(&soup, 1).is_err());
    let mut s = graph_gadget(&Graph::complete(6), 1);
    s.retain(|&t| t != Token::E);
    assert!(recognize_decomposition(&s, 1).is_err());
    // a k=2 reading of a k=1 encoding has the wrong segment shape
    assert!(recognize_decomposition(&graph_gadget(&Graph::complete(6), 1), 2).is_err());
}

#[test]
fn pairwise_check_examples() {
    let k4 = Graph::complete(4);
    let cliques = enumerate_k_cliques(&k4, 1);
    assert!(style_fast_check(&k4, &cliques, [0, 1, 2, 3], CngAt::Outer));
    let path = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
    let cliques = enumerate_k_cliques(&path, 1);
    for layout in [CngAt::Outer, CngAt::Inner] {
        assert!(!style_fast_check(&path, &cliques, [0, 1, 2, 3], layout));
    }
}

#[test]
fn specialized_deciders_agree_with_the_chart() {
    let center = Terminal::new("e");
    let g = Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
    let nc = build_nc();
    let decider = TupleDecider::new(&nc);
    let grammar = program_to_grammar(&nc, &center);
    let chart = ChartRecognizer::new(&grammar);
    let mut accepted = 0;
    for v in [[1, 2, 2, 2], [2, 1, 3, 1], [1, 3, 2, 2], [2, 2, 1, 3], [3, 2, 2, 2]] {
        let t = Tuple4::new(
            hashed(node_gadget(&g, v[0]).unwrap(), false),
            hashed(list_gadget(&g, v[1]).unwrap(), true),
            hashed(list_gadget(&g, v[2]).unwrap(), false),
            hashed(list_gadget(&g, v[3]).unwrap(), true),
        );
        let member = decider.contains(&t);
        accepted += usize::from(member);
        assert_eq!(chart.recognize(&embed_tuple(&t, &center)).unwrap(), member, "{v:?}");
    }
    assert!(accepted > 0 && accepted < 5);

    let cc = build_cc();
    let decider = TupleDecider::new(&cc);
    let grammar = program_to_grammar(&cc, &center);
    let chart = ChartRecognizer::new(&grammar);
    let k2 = Graph::complete(2);
    for v in [[1, 2, 2, 2], [1, 1, 2, 2]] {
        let t = Tuple4::new(
            hashed(node_gadget(&k2, v[0]).unwrap(), false),
            hashed(list_gadget(&k2, v[1]).unwrap(), true),
            hashed(list_gadget(&k2, v[2]).unwrap(), false),
            hashed(list_gadget(&k2, v[3]).unwrap(), true),
        );
        assert_eq!(chart.recognize(&embed_tuple(&t, &center)).unwrap(), decider.contains(&t));
    }
}

#[test]
fn campaigns_are_reproducible() {
    let empty = run_campaign(&CampaignConfig::new(1, 6..=6, 1, 0)).unwrap();
    assert!(empty.records.is_empty());
    assert_eq!(empty.disagreements(), 0);

    let config = CampaignConfig::new(42, 6..=7, 1, 4);
    let a = run_campaign(&config).unwrap();
    let b = run_campaign(&config).unwrap();
    assert_eq!(a.report(), b.report());
    assert_eq!(a.disagreements(), 0);
    assert_eq!(a.positives(), 2);
}
