// Adjoining an auxiliary tree into an initial tree and reading the result.

use tagclique::tag::{adjoin, terminals, Address, Tree, TreeNode};

pub fn run_example() {
    // S( a [B](b) c )
    let initial = Tree::initial(TreeNode::inner(
        "S",
        vec![
            TreeNode::leaf("a"),
            TreeNode::marked("B", vec![TreeNode::leaf("b")]),
            TreeNode::leaf("c"),
        ],
    ))
    .unwrap();
    // B( [B](a) [A](B* b) [A](c) )
    let aux = Tree::auxiliary(TreeNode::inner(
        "B",
        vec![
            TreeNode::marked("B", vec![TreeNode::leaf("a")]),
            TreeNode::marked("A", vec![TreeNode::foot("B"), TreeNode::leaf("b")]),
            TreeNode::marked("A", vec![TreeNode::leaf("c")]),
        ],
    ))
    .unwrap();

    let at = initial.marked_addresses()[0].clone();
    assert_eq!(at, Address(vec![1]));
    let derived = adjoin(&initial, &at, &aux).unwrap();

    assert_eq!(derived.yield_terminals(), terminals("a a b b c c"));
    let marks = derived.marked_addresses();
    assert_eq!(marks.len(), 3);
    println!("yield: {:?}", derived.yield_terminals());
    println!("marked: {marks:?}");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
