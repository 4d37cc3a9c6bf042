// Chart recognition under obligatory adjunction, checked against bounded
// enumeration.

use tagclique::program::{make_eq, program_to_grammar};
use tagclique::recognizer::{chart_stats, recognize};
use tagclique::tag::{enumerate_language, terminals, Grammar, Terminal, Tree, TreeNode};

pub fn run_example() {
    let init = Tree::initial(TreeNode::inner(
        "S",
        vec![
            TreeNode::leaf("a"),
            TreeNode::marked("X", vec![TreeNode::leaf("b")]),
            TreeNode::leaf("c"),
        ],
    ))
    .unwrap();
    let closer = Tree::auxiliary(TreeNode::inner("X", vec![TreeNode::foot("X")])).unwrap();
    let g = Grammar::from_trees(vec![init], vec![closer]).unwrap();
    assert!(recognize(&g, &terminals("a b c")).unwrap());
    assert!(!recognize(&g, &terminals("a b")).unwrap());

    let eq = make_eq(&[Terminal::new("0"), Terminal::new("1")]).unwrap();
    let g = program_to_grammar(&eq, &Terminal::new("e"));
    let s = terminals("0 1 1 0 e 0 1 1 0");
    assert!(recognize(&g, &s).unwrap());
    assert!(!recognize(&g, &terminals("0 1 e 0 1")).unwrap());

    let lang = enumerate_language(&g, 5, 12);
    for w in &lang {
        assert!(recognize(&g, w).unwrap());
    }
    let stats = chart_stats(&g, &s).unwrap();
    println!("{} strings up to length 5; chart for |s|=9: {stats:?}", lang.len());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
