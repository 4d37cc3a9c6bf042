mod common;

use proptest::prelude::*;

use tagclique::encoding::{
    check_segment_shape, clique_list_gadget, clique_node_gadget, encoded_length,
    enumerate_k_cliques, entry_segments, graph_gadget, list_gadget, node_gadget, parse_layout,
    parse_toks, write_toks, Graph, Token,
};

use common::{all_graphs, random_graph, rng};

fn contains(hay: &[Token], needle: &[Token]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

/// Splits `# x # # y # ...` into its `#`-delimited blocks.
fn hash_blocks(s: &[Token]) -> Vec<Vec<Token>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < s.len() {
        assert_eq!(s[i], Token::Hash);
        let end = i + 1 + s[i + 1..].iter().position(|&t| t == Token::Hash).unwrap();
        out.push(s[i + 1..end].to_vec());
        i = end + 1;
    }
    out
}

fn naive_cliques(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n).filter(|v| m >> (v - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|vs| {
            vs.iter()
                .enumerate()
                .all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
        })
        .collect();
    out.sort();
    out
}

#[test]
fn node_gadgets_occur_in_list_gadgets_exactly_for_neighbors() {
    for n in 1..=4 {
        for g in all_graphs(n) {
            for u in 1..=n {
                let lg = list_gadget(&g, u).unwrap();
                for v in 1..=n {
                    let ng = node_gadget(&g, v).unwrap();
                    assert_eq!(contains(&lg, &ng), g.has_edge(u, v), "{g:?} {u} {v}");
                }
            }
        }
    }
}

#[test]
fn clique_gadget_blocks_pair_every_vertex_once() {
    let mut r = rng(2);
    for _ in 0..20 {
        let g = random_graph(&mut r, 6, 0.8);
        for k in 1..=3 {
            let cliques = enumerate_k_cliques(&g, k);
            for c in &cliques {
                for d in &cliques {
                    let cng = hash_blocks(&clique_node_gadget(&g, c, k).unwrap());
                    let clg = hash_blocks(&clique_list_gadget(&g, d, k).unwrap());
                    assert_eq!(cng.len(), k * k);
                    assert_eq!(clg.len(), k * k);
                    let mut pairs = Vec::new();
                    for i in 0..k * k {
                        let u = c.vertices()[i / k];
                        let v = d.vertices()[i % k];
                        assert_eq!(cng[i], node_gadget(&g, u).unwrap());
                        assert_eq!(clg[i], list_gadget(&g, v).unwrap());
                        pairs.push((u, v));
                    }
                    pairs.sort_unstable();
                    pairs.dedup();
                    assert_eq!(pairs.len(), k * k);
                }
            }
        }
    }
}

#[test]
fn clique_enumeration_matches_subsets() {
    for g in all_graphs(5) {
        for k in 1..=4 {
            let listed: Vec<Vec<usize>> = enumerate_k_cliques(&g, k)
                .iter()
                .map(|c| c.vertices().to_vec())
                .collect();
            assert_eq!(listed, naive_cliques(&g, k));
        }
    }
}

#[test]
fn encoded_length_is_exact() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            for k in 1..=2 {
                assert_eq!(graph_gadget(&g, k).len(), encoded_length(&g, k));
            }
        }
    }
    let mut r = rng(6);
    for _ in 0..200 {
        let g = random_graph(&mut r, 6, 0.5);
        for k in 1..=2 {
            assert_eq!(graph_gadget(&g, k).len(), encoded_length(&g, k));
        }
    }
}

#[test]
fn graphs_without_cliques_encode_to_e() {
    assert_eq!(graph_gadget(&Graph::new(5), 2), vec![Token::E]);
    assert_eq!(encoded_length(&Graph::new(5), 2), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encodings_parse_back_into_entries(seed in any::<u64>(), n in 1usize..8, k in 1usize..3) {
        let g = random_graph(&mut rng(seed), n, 0.6);
        let s = graph_gadget(&g, k);
        prop_assert_eq!(&s, &graph_gadget(&g, k));
        let layout = parse_layout(&s).unwrap();
        check_segment_shape(&s, &layout, k).unwrap();
        let cliques = enumerate_k_cliques(&g, k);
        prop_assert_eq!(layout.entries(), cliques.len());
        for (b, block) in layout.blocks.iter().enumerate() {
            for (entry, c) in block.iter().zip(&cliques) {
                let (left, right) = entry_segments(&g, c, k, b + 1).unwrap();
                prop_assert_eq!(&s[entry.left.clone()], &left[..]);
                prop_assert_eq!(&s[entry.right.clone()], &right[..]);
                prop_assert_eq!(s[entry.right.start - 2], Token::l(b + 1));
            }
        }
        prop_assert_eq!(s[layout.e_pos], Token::E);
        prop_assert_eq!(parse_toks(&write_toks(&s)).unwrap(), s);
    }

    #[test]
    fn graph_text_round_trips(seed in any::<u64>(), n in 0usize..9) {
        let g = random_graph(&mut rng(seed), n, 0.5);
        prop_assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn dropping_a_delimiter_is_malformed(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = random_graph(&mut rng(seed), 6, 0.7);
        let s = graph_gadget(&g, 1);
        let structural: Vec<usize> = (0..s.len()).filter(|&i| !s[i].is_segment()).collect();
        let mut broken = s.clone();
        broken.remove(structural[pick.index(structural.len())]);
        let rejected = parse_layout(&broken)
            .and_then(|layout| check_segment_shape(&broken, &layout, 1))
            .is_err();
        prop_assert!(rejected);
    }
}

#[test]
fn graph_files_accept_comments_and_duplicates() {
    let g = Graph::parse("c a triangle\np 4 3\n1 2\n2 3\n\n3 1\n2 1\n").unwrap();
    assert_eq!(g.n(), 4);
    assert_eq!(g.edge_count(), 3);
    assert!(Graph::parse("1 1\n").is_err());
    assert!(Graph::parse("1 x\n").is_err());
    assert!(Graph::parse("p 3 1\n1 4\n").is_err());
}
