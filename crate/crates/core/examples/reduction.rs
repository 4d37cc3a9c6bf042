// Γ generates the encoding of a graph exactly when the graph has a 6k-clique.

use tagclique::encoding::{graph_gadget, to_terminals, Graph};
use tagclique::gadgets::{build_reduction_grammar, grammar_stats};
use tagclique::reduction::{build_derivation, find_clique, DecompositionRecognizer};
use tagclique::tag::replay;

pub fn run_example() {
    let gamma = build_reduction_grammar();
    print!("{}", grammar_stats(&gamma.grammar));

    let mut g = Graph::complete(7);
    g.remove_edge(1, 7);
    let s = graph_gadget(&g, 1);
    let decider = DecompositionRecognizer::new();
    let anchors = decider.witness(&s, 1).unwrap().expect("K7 minus an edge has a 6-clique");
    println!("anchors: {:?}", anchors.0);

    let clique = find_clique(&g, 6).unwrap();
    let d = build_derivation(&gamma, &g, 1, &clique).unwrap();
    let tree = replay(&gamma.grammar, &d).unwrap();
    assert!(tree.marked_addresses().is_empty());
    assert_eq!(tree.yield_terminals(), to_terminals(&s));
    println!("{} adjunctions derive all {} tokens", d.steps.len(), s.len());

    g.remove_edge(2, 3);
    g.remove_edge(4, 5);
    assert!(find_clique(&g, 6).is_none());
    assert!(!decider.recognize(&graph_gadget(&g, 1), 1).unwrap());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
