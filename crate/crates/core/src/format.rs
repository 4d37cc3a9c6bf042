//! JSON grammar documents.
//!
//! ```json
//! {
//!   "version": 1,
//!   "terminals": ["a"],
//!   "non_terminals": ["S"],
//!   "initial_trees": [
//!     {"label": "S", "node_kind": "internal", "marked": false,
//!      "children": [{"label": "a", "node_kind": "leaf", "marked": false, "children": []}]}
//!   ],
//!   "auxiliary_trees": [],
//!   "named_labels": {"start": "S"}
//! }
//! ```
//!
//! `node_kind` is `internal`, `leaf` (a terminal) or `foot`. `named_labels`
//! is optional. Output is pretty-printed with a trailing newline, and
//! printing a parsed document reproduces it byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tag::{Grammar, NonTerminal, TagError, Terminal, Tree, TreeNode};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported version {0}")]
    UnsupportedVersion(u32),
    #[error("{0}")]
    BadNode(String),
    #[error(transparent)]
    Grammar(#[from] TagError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Internal,
    Leaf,
    Foot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub label: String,
    pub node_kind: NodeKind,
    pub marked: bool,
    pub children: Vec<NodeDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrammarDoc {
    pub version: u32,
    pub terminals: Vec<String>,
    pub non_terminals: Vec<String>,
    pub initial_trees: Vec<NodeDoc>,
    pub auxiliary_trees: Vec<NodeDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub named_labels: BTreeMap<String, String>,
}

fn node_doc(node: &TreeNode) -> NodeDoc {
    match node {
        TreeNode::Inner {
            label,
            marked,
            children,
        } => NodeDoc {
            label: label.name().to_string(),
            node_kind: NodeKind::Internal,
            marked: *marked,
            children: children.iter().map(|c| node_doc(c)).collect(),
        },
        TreeNode::Leaf(t) => NodeDoc {
            label: t.name().to_string(),
            node_kind: NodeKind::Leaf,
            marked: false,
            children: Vec::new(),
        },
        TreeNode::Foot(l) => NodeDoc {
            label: l.name().to_string(),
            node_kind: NodeKind::Foot,
            marked: false,
            children: Vec::new(),
        },
    }
}

fn tree_node(doc: &NodeDoc) -> Result<TreeNode, FormatError> {
    match doc.node_kind {
        NodeKind::Internal => Ok(TreeNode::make_inner(
            NonTerminal::new(&doc.label),
            doc.marked,
            doc.children.iter().map(tree_node).collect::<Result<_, _>>()?,
        )),
        NodeKind::Leaf | NodeKind::Foot if !doc.children.is_empty() || doc.marked => Err(
            FormatError::BadNode(format!("leaf {:?} has children or a mark", doc.label)),
        ),
        NodeKind::Leaf => Ok(TreeNode::Leaf(Terminal::new(&doc.label))),
        NodeKind::Foot => Ok(TreeNode::Foot(NonTerminal::new(&doc.label))),
    }
}

pub fn grammar_doc(g: &Grammar, named: &BTreeMap<String, NonTerminal>) -> GrammarDoc {
    GrammarDoc {
        version: FORMAT_VERSION,
        terminals: g.terminals().iter().map(|t| t.name().to_string()).collect(),
        non_terminals: g.non_terminals().iter().map(|n| n.name().to_string()).collect(),
        initial_trees: g.initial_trees().iter().map(|t| node_doc(t.root())).collect(),
        auxiliary_trees: g.auxiliary_trees().iter().map(|t| node_doc(t.root())).collect(),
        named_labels: named
            .iter()
            .map(|(k, v)| (k.clone(), v.name().to_string()))
            .collect(),
    }
}

pub fn grammar_from_doc(
    doc: &GrammarDoc,
) -> Result<(Grammar, BTreeMap<String, NonTerminal>), FormatError> {
    if doc.version != FORMAT_VERSION {
        return Err(FormatError::UnsupportedVersion(doc.version));
    }
    let initial = doc
        .initial_trees
        .iter()
        .map(|n| Ok(Tree::initial(tree_node(n)?)?))
        .collect::<Result<Vec<_>, FormatError>>()?;
    let auxiliary = doc
        .auxiliary_trees
        .iter()
        .map(|n| Ok(Tree::auxiliary(tree_node(n)?)?))
        .collect::<Result<Vec<_>, FormatError>>()?;
    let grammar = Grammar::new(
        initial,
        auxiliary,
        doc.terminals.iter().map(Terminal::new).collect(),
        doc.non_terminals.iter().map(NonTerminal::new).collect(),
    )?;
    let named = doc
        .named_labels
        .iter()
        .map(|(k, v)| (k.clone(), NonTerminal::new(v)))
        .collect();
    Ok((grammar, named))
}

/// Serializes a grammar and its named labels.
pub fn print_grammar(g: &Grammar, named: &BTreeMap<String, NonTerminal>) -> String {
    let mut out =
        serde_json::to_string_pretty(&grammar_doc(g, named)).expect("documents always serialize");
    out.push('\n');
    out
}

pub fn parse_grammar(
    text: &str,
) -> Result<(Grammar, BTreeMap<String, NonTerminal>), FormatError> {
    let doc: GrammarDoc = serde_json::from_str(text)?;
    grammar_from_doc(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Grammar {
        let init = Tree::initial(TreeNode::inner(
            "S",
            vec![
                TreeNode::leaf("a"),
                TreeNode::marked("X", vec![TreeNode::leaf("b")]),
            ],
        ))
        .unwrap();
        let aux = Tree::auxiliary(TreeNode::inner("X", vec![TreeNode::foot("X")])).unwrap();
        Grammar::from_trees(vec![init], vec![aux]).unwrap()
    }

    #[test]
    fn round_trip() {
        let named = BTreeMap::from([("start".to_string(), NonTerminal::new("S"))]);
        let text = print_grammar(&small(), &named);
        let (g, n) = parse_grammar(&text).unwrap();
        assert_eq!(g, small());
        assert_eq!(n, named);
        assert_eq!(print_grammar(&g, &n), text);
        assert!(!print_grammar(&g, &BTreeMap::new()).contains("named_labels"));
    }

    #[test]
    fn rejects_bad_documents() {
        let text = print_grammar(&small(), &BTreeMap::new());
        let bumped = text.replace("\"version\": 1", "\"version\": 9");
        assert!(matches!(
            parse_grammar(&bumped),
            Err(FormatError::UnsupportedVersion(9))
        ));
        let undeclared = text.replace("\"b\"\n", "\"c\"\n");
        assert!(matches!(
            parse_grammar(&undeclared),
            Err(FormatError::Grammar(_))
        ));
        assert!(matches!(parse_grammar("{"), Err(FormatError::Json(_))));
    }
}
