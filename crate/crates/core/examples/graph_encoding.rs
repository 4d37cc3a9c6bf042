// Reading a graph and encoding its k-cliques as a token string.

use tagclique::encoding::{
    encoded_length, enumerate_k_cliques, graph_gadget, list_gadget, node_gadget, parse_toks,
    write_toks, Graph,
};

pub fn run_example() {
    let g = Graph::parse("p 4 4\n1 2\n1 3\n2 3\n3 4\n").unwrap();
    assert_eq!(write_toks(&node_gadget(&g, 3).unwrap()), "$ 0 1 1 $\n");
    assert_eq!(
        write_toks(&list_gadget(&g, 1).unwrap()),
        "$ 0 1 0 $ $ 0 1 1 $\n"
    );
    let triangles = enumerate_k_cliques(&g, 3);
    assert_eq!(triangles.len(), 1);

    let gg = graph_gadget(&g, 1);
    assert_eq!(gg.len(), encoded_length(&g, 1));
    let text = write_toks(&gg);
    assert_eq!(parse_toks(&text).unwrap(), gg);
    println!("|GG| = {} tokens", gg.len());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
