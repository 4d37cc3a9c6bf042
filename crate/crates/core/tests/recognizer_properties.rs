mod common;

use proptest::prelude::*;

use tagclique::recognizer::{recognize, AgendaOrder, ChartRecognizer};
use tagclique::tag::{enumerate_language, terminals, Grammar, Tree, TreeNode};

use common::{all_strings, random_grammar, rng, two_letters};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chart_agrees_with_enumeration(seed in any::<u64>()) {
        let g = random_grammar(&mut rng(seed));
        // every auxiliary tree writes a terminal, so 6 adjunctions reach length 6
        let lang = enumerate_language(&g, 6, 6);
        let chart = ChartRecognizer::new(&g);
        for s in all_strings(&two_letters(), 6) {
            prop_assert_eq!(chart.recognize(&s).unwrap(), lang.contains(&s), "{:?}", s);
        }
    }

    #[test]
    fn agenda_order_does_not_change_the_decision(seed in any::<u64>()) {
        let g = random_grammar(&mut rng(seed));
        let fifo = ChartRecognizer::new(&g).with_order(AgendaOrder::Fifo);
        let lifo = ChartRecognizer::new(&g).with_order(AgendaOrder::Lifo);
        for s in all_strings(&two_letters(), 5) {
            prop_assert_eq!(fifo.recognize(&s).unwrap(), lifo.recognize(&s).unwrap());
        }
    }
}

fn figure_grammar() -> Grammar {
    let init = Tree::initial(TreeNode::inner(
        "A",
        vec![
            TreeNode::leaf("a"),
            TreeNode::marked("B", vec![TreeNode::leaf("b")]),
            TreeNode::leaf("c"),
        ],
    ))
    .unwrap();
    let aux = Tree::auxiliary(TreeNode::inner(
        "B",
        vec![
            TreeNode::marked("B", vec![TreeNode::leaf("a")]),
            TreeNode::marked("A", vec![TreeNode::foot("B"), TreeNode::leaf("b")]),
            TreeNode::marked("A", vec![TreeNode::leaf("c")]),
        ],
    ))
    .unwrap();
    Grammar::from_trees(vec![init], vec![aux]).unwrap()
}

#[test]
fn accepted_strings_have_derivations() {
    let g = figure_grammar();
    let lang = enumerate_language(&g, 9, 9);
    let abc = [terminals("a"), terminals("b"), terminals("c")].concat();
    for s in all_strings(&abc, 7) {
        assert_eq!(recognize(&g, &s).unwrap(), lang.contains(&s), "{s:?}");
    }
}

#[test]
fn unknown_terminals_are_errors() {
    assert!(recognize(&figure_grammar(), &terminals("a z c")).is_err());
}
