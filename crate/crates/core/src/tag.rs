//! Tree-adjoining grammars: elementary trees, adjunction, yields, derivation
//! replay and a bounded language enumerator.
//!
//! Adjunction is obligatory: a marked inner node must receive exactly one
//! auxiliary tree, and unmarked nodes never receive one. Trees are immutable
//! values that share structure through [`Arc`]; [`adjoin`] copies only the
//! path from the root to the adjunction site.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A terminal symbol.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Terminal(Arc<str>);

impl Terminal {
    pub fn new(name: impl AsRef<str>) -> Self {
        Terminal(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A non-terminal symbol.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NonTerminal(Arc<str>);

impl NonTerminal {
    pub fn new(name: impl AsRef<str>) -> Self {
        NonTerminal(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for NonTerminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", &*self.0)
    }
}

impl fmt::Display for NonTerminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Path of 0-based child indices from the root.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address(pub Vec<u16>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn child(&self, index: u16) -> Self {
        let mut path = self.0.clone();
        path.push(index);
        Address(path)
    }

    pub fn join(&self, rest: &Address) -> Self {
        let mut path = Vec::with_capacity(self.0.len() + rest.0.len());
        path.extend_from_slice(&self.0);
        path.extend_from_slice(&rest.0);
        Address(path)
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{:?}", self.0)
    }
}

impl From<Vec<u16>> for Address {
    fn from(path: Vec<u16>) -> Self {
        Address(path)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TagError {
    #[error("address {0:?} does not resolve to a node")]
    AddressUnresolvable(Address),
    #[error("node at {0:?} is not marked for adjunction")]
    NotMarked(Address),
    #[error("label mismatch: node is {node}, auxiliary root is {aux}")]
    LabelMismatch { node: NonTerminal, aux: NonTerminal },
    #[error("tree is not an auxiliary tree")]
    NotAuxiliary,
    #[error("malformed tree: {0}")]
    InvalidTree(String),
    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),
    #[error("unknown {kind} tree id {id}")]
    UnknownTree { kind: &'static str, id: usize },
    #[error("derivation step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<TagError>,
    },
}

/// One node of an elementary or derived tree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TreeNode {
    /// Root or inner node. `marked` is always false on a root.
    Inner {
        label: NonTerminal,
        marked: bool,
        children: Vec<Arc<TreeNode>>,
    },
    Leaf(Terminal),
    Foot(NonTerminal),
}

// Derived trees in the reduction are tens of thousands of nodes deep; the
// default recursive drop would overflow the stack.
impl Drop for TreeNode {
    #[allow(clippy::collapsible_match)]
    fn drop(&mut self) {
        let mut stack = match self {
            TreeNode::Inner { children, .. } => std::mem::take(children),
            _ => return,
        };
        while let Some(node) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(node) {
                if let TreeNode::Inner { children, .. } = &mut node {
                    stack.append(children);
                }
            }
        }
    }
}

impl fmt::Debug for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeNode::Inner {
                label,
                marked,
                children,
            } => {
                if *marked {
                    write!(f, "[{label}]")?;
                } else {
                    write!(f, "{label}")?;
                }
                f.write_str("(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c:?}")?;
                }
                f.write_str(")")
            }
            TreeNode::Leaf(t) => write!(f, "{t}"),
            TreeNode::Foot(n) => write!(f, "{n}*"),
        }
    }
}

impl TreeNode {
    pub fn inner(label: impl AsRef<str>, children: Vec<TreeNode>) -> Self {
        Self::make_inner(NonTerminal::new(label), false, children)
    }

    pub fn marked(label: impl AsRef<str>, children: Vec<TreeNode>) -> Self {
        Self::make_inner(NonTerminal::new(label), true, children)
    }

    pub fn leaf(t: impl AsRef<str>) -> Self {
        TreeNode::Leaf(Terminal::new(t))
    }

    pub fn foot(label: impl AsRef<str>) -> Self {
        TreeNode::Foot(NonTerminal::new(label))
    }

    pub fn make_inner(label: NonTerminal, marked: bool, children: Vec<TreeNode>) -> Self {
        TreeNode::Inner {
            label,
            marked,
            children: children.into_iter().map(Arc::new).collect(),
        }
    }

    pub fn children(&self) -> &[Arc<TreeNode>] {
        match self {
            TreeNode::Inner { children, .. } => children,
            _ => &[],
        }
    }

    pub fn non_terminal(&self) -> Option<&NonTerminal> {
        match self {
            TreeNode::Inner { label, .. } | TreeNode::Foot(label) => Some(label),
            TreeNode::Leaf(_) => None,
        }
    }

    pub fn is_marked(&self) -> bool {
        matches!(self, TreeNode::Inner { marked: true, .. })
    }

    fn with_mark(&self, mark: bool) -> TreeNode {
        match self {
            TreeNode::Inner {
                label, children, ..
            } => TreeNode::Inner {
                label: label.clone(),
                marked: mark,
                children: children.clone(),
            },
            other => other.clone(),
        }
    }

    fn with_child(&self, index: usize, child: Arc<TreeNode>) -> TreeNode {
        match self {
            TreeNode::Inner {
                label,
                marked,
                children,
            } => {
                let mut children = children.clone();
                children[index] = child;
                TreeNode::Inner {
                    label: label.clone(),
                    marked: *marked,
                    children,
                }
            }
            _ => unreachable!("with_child on a leaf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeKind {
    Initial,
    Auxiliary,
}

/// An initial or auxiliary tree. Derived trees use the same type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    kind: TreeKind,
    root: Arc<TreeNode>,
    foot: Option<Address>,
}

pub type ElementaryTree = Tree;
pub type DerivedTree = Tree;

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}:{:?}", self.kind, self.root)
    }
}

impl Tree {
    pub fn initial(root: TreeNode) -> Result<Self, TagError> {
        Self::from_root(TreeKind::Initial, Arc::new(root))
    }

    pub fn auxiliary(root: TreeNode) -> Result<Self, TagError> {
        Self::from_root(TreeKind::Auxiliary, Arc::new(root))
    }

    /// Validates the structural invariants and locates the foot.
    pub fn from_root(kind: TreeKind, root: Arc<TreeNode>) -> Result<Self, TagError> {
        let root_label = match &*root {
            TreeNode::Inner {
                label,
                marked,
                children,
            } => {
                if *marked {
                    return Err(TagError::InvalidTree("root is marked".into()));
                }
                if children.is_empty() {
                    return Err(TagError::InvalidTree("root has no children".into()));
                }
                label.clone()
            }
            _ => return Err(TagError::InvalidTree("root must be an inner node".into())),
        };
        let mut foot = None;
        let mut trail = PathTrail::default();
        let mut stack = vec![(root.as_ref(), PathTrail::ROOT)];
        while let Some((node, entry)) = stack.pop() {
            match node {
                TreeNode::Inner { children, .. } => {
                    if children.is_empty() {
                        return Err(TagError::InvalidTree(format!(
                            "inner node at {:?} has no children",
                            trail.address(entry)
                        )));
                    }
                    if children.len() > u16::MAX as usize {
                        return Err(TagError::InvalidTree("arity exceeds 65535".into()));
                    }
                    for (i, c) in children.iter().enumerate() {
                        stack.push((c, trail.push(entry, i as u16)));
                    }
                }
                TreeNode::Leaf(_) => {}
                TreeNode::Foot(label) => {
                    if kind == TreeKind::Initial {
                        return Err(TagError::InvalidTree("initial tree has a foot".into()));
                    }
                    if foot.is_some() {
                        return Err(TagError::InvalidTree("more than one foot".into()));
                    }
                    if *label != root_label {
                        return Err(TagError::InvalidTree(format!(
                            "foot label {label} differs from root label {root_label}"
                        )));
                    }
                    foot = Some(trail.address(entry));
                }
            }
        }
        if kind == TreeKind::Auxiliary && foot.is_none() {
            return Err(TagError::InvalidTree("auxiliary tree without foot".into()));
        }
        Ok(Tree { kind, root, foot })
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    pub fn root_label(&self) -> &NonTerminal {
        self.root.non_terminal().expect("root is an inner node")
    }

    pub fn foot_address(&self) -> Option<&Address> {
        self.foot.as_ref()
    }

    pub fn node_at(&self, at: &Address) -> Option<&TreeNode> {
        let mut node: &TreeNode = &self.root;
        for &i in &at.0 {
            node = node.children().get(i as usize)?;
        }
        Some(node)
    }

    /// Preorder traversal with addresses.
    pub fn nodes(&self) -> Vec<(Address, &TreeNode)> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root.as_ref(), Address::root())];
        while let Some((node, addr)) = stack.pop() {
            for (i, c) in node.children().iter().enumerate().rev() {
                stack.push((c, addr.child(i as u16)));
            }
            out.push((addr, node));
        }
        out
    }

    pub fn node_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self.root.as_ref()];
        while let Some(node) = stack.pop() {
            count += 1;
            stack.extend(node.children().iter().map(|c| c.as_ref()));
        }
        count
    }

    /// Number of terminal leaves.
    pub fn terminal_count(&self) -> usize {
        let mut count = 0;
        let mut stack = vec![self.root.as_ref()];
        while let Some(node) = stack.pop() {
            if let TreeNode::Leaf(_) = node {
                count += 1;
            }
            stack.extend(node.children().iter().map(|c| c.as_ref()));
        }
        count
    }

    /// Leaves labeled with a non-terminal (the foot, if any).
    pub fn non_terminal_leaf_count(&self) -> usize {
        usize::from(self.foot.is_some())
    }

    pub fn marked_addresses(&self) -> Vec<Address> {
        marked_addresses(self)
    }

    pub fn yield_terminals(&self) -> Vec<Terminal> {
        tree_yield(self)
    }

    /// Terminal leaves left and right of the foot.
    pub fn split_yield(&self) -> (Vec<Terminal>, Vec<Terminal>) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut seen_foot = false;
        let mut stack = vec![self.root.as_ref()];
        while let Some(node) = stack.pop() {
            match node {
                TreeNode::Leaf(t) if seen_foot => right.push(t.clone()),
                TreeNode::Leaf(t) => left.push(t.clone()),
                TreeNode::Foot(_) => seen_foot = true,
                TreeNode::Inner { children, .. } => {
                    stack.extend(children.iter().rev().map(|c| c.as_ref()))
                }
            }
        }
        (left, right)
    }

    /// Every non-terminal and terminal used as a label.
    pub fn labels(&self) -> (BTreeSet<NonTerminal>, BTreeSet<Terminal>) {
        let mut nts = BTreeSet::new();
        let mut ts = BTreeSet::new();
        let mut stack = vec![self.root.as_ref()];
        while let Some(node) = stack.pop() {
            stack.extend(node.children().iter().map(|c| c.as_ref()));
            match node {
                TreeNode::Inner { label, .. } | TreeNode::Foot(label) => {
                    nts.insert(label.clone());
                }
                TreeNode::Leaf(t) => {
                    ts.insert(t.clone());
                }
            }
        }
        (nts, ts)
    }

    /// Rebuilds the tree with every node passed through `f`, keeping the kind.
    pub fn map_nodes(&self, f: &mut impl FnMut(&TreeNode) -> TreeNode) -> Result<Tree, TagError> {
        fn go(node: &TreeNode, f: &mut impl FnMut(&TreeNode) -> TreeNode) -> TreeNode {
            let mapped = f(node);
            match mapped {
                TreeNode::Inner {
                    ref label, marked, ..
                } => {
                    let children = node
                        .children()
                        .iter()
                        .map(|c| Arc::new(go(c, f)))
                        .collect();
                    TreeNode::Inner {
                        label: label.clone(),
                        marked,
                        children,
                    }
                }
                other => other,
            }
        }
        Tree::from_root(self.kind, Arc::new(go(&self.root, f)))
    }
}

/// Adjoins `aux` at the marked node `at` of `derived`.
///
/// The subtree at `at` moves under the foot of `aux` and loses its mark.
pub fn adjoin(derived: &Tree, at: &Address, aux: &Tree) -> Result<Tree, TagError> {
    if aux.kind != TreeKind::Auxiliary {
        return Err(TagError::NotAuxiliary);
    }
    // Collect the path so the rebuild is iterative.
    let mut path: Vec<&Arc<TreeNode>> = Vec::with_capacity(at.len() + 1);
    let mut node = &derived.root;
    path.push(node);
    for &i in &at.0 {
        node = node
            .children()
            .get(i as usize)
            .ok_or_else(|| TagError::AddressUnresolvable(at.clone()))?;
        path.push(node);
    }
    let target = *path.last().expect("path holds the root");
    let label = match &**target {
        TreeNode::Inner { label, marked, .. } => {
            if !marked {
                return Err(TagError::NotMarked(at.clone()));
            }
            label
        }
        _ => return Err(TagError::NotMarked(at.clone())),
    };
    if label != aux.root_label() {
        return Err(TagError::LabelMismatch {
            node: label.clone(),
            aux: aux.root_label().clone(),
        });
    }

    let aux_foot = aux.foot.as_ref().expect("auxiliary tree has a foot");
    let mut aux_path: Vec<&Arc<TreeNode>> = Vec::with_capacity(aux_foot.len() + 1);
    let mut n = &aux.root;
    aux_path.push(n);
    for &i in &aux_foot.0 {
        n = &n.children()[i as usize];
        aux_path.push(n);
    }
    let mut replacement = Arc::new(target.with_mark(false));
    for (depth, &i) in aux_foot.0.iter().enumerate().rev() {
        replacement = Arc::new(aux_path[depth].with_child(i as usize, replacement));
    }
    for (depth, &i) in at.0.iter().enumerate().rev() {
        replacement = Arc::new(path[depth].with_child(i as usize, replacement));
    }

    let foot = derived.foot.as_ref().map(|f| {
        if at.is_prefix_of(f) {
            let mut p = at.join(aux_foot);
            p.0.extend_from_slice(&f.0[at.len()..]);
            p
        } else {
            f.clone()
        }
    });
    Ok(Tree {
        kind: derived.kind,
        root: replacement,
        foot,
    })
}

/// Left-to-right terminal leaves; feet contribute nothing.
pub fn tree_yield(tree: &Tree) -> Vec<Terminal> {
    let mut out = Vec::new();
    let mut stack = vec![tree.root.as_ref()];
    while let Some(node) = stack.pop() {
        match node {
            TreeNode::Leaf(t) => out.push(t.clone()),
            TreeNode::Foot(_) => {}
            TreeNode::Inner { children, .. } => {
                stack.extend(children.iter().rev().map(|c| c.as_ref()))
            }
        }
    }
    out
}

/// Addresses of marked nodes in preorder.
pub fn marked_addresses(tree: &Tree) -> Vec<Address> {
    let mut out = Vec::new();
    let mut trail = PathTrail::default();
    let mut stack = vec![(tree.root.as_ref(), PathTrail::ROOT)];
    while let Some((node, entry)) = stack.pop() {
        if let TreeNode::Inner {
            marked, children, ..
        } = node
        {
            if *marked {
                out.push(trail.address(entry));
            }
            for (i, c) in children.iter().enumerate().rev() {
                if matches!(**c, TreeNode::Inner { .. }) {
                    stack.push((c, trail.push(entry, i as u16)));
                }
            }
        }
    }
    out
}

/// Parent-pointer log for traversals that only occasionally need an address.
#[derive(Default)]
struct PathTrail {
    entries: Vec<(usize, u16)>,
}

impl PathTrail {
    const ROOT: usize = usize::MAX;

    fn push(&mut self, parent: usize, index: u16) -> usize {
        self.entries.push((parent, index));
        self.entries.len() - 1
    }

    fn address(&self, mut entry: usize) -> Address {
        let mut path = Vec::new();
        while entry != Self::ROOT {
            let (parent, index) = self.entries[entry];
            path.push(index);
            entry = parent;
        }
        path.reverse();
        Address(path)
    }
}

/// A TAG `(I, A, T, N)`. Tree ids are indices into the two lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grammar {
    initial: Vec<Tree>,
    auxiliary: Vec<Tree>,
    terminals: Vec<Terminal>,
    non_terminals: Vec<NonTerminal>,
}

impl Grammar {
    pub fn new(
        initial: Vec<Tree>,
        auxiliary: Vec<Tree>,
        terminals: Vec<Terminal>,
        non_terminals: Vec<NonTerminal>,
    ) -> Result<Self, TagError> {
        let ts: HashSet<&Terminal> = terminals.iter().collect();
        let ns: HashSet<&NonTerminal> = non_terminals.iter().collect();
        if ts.len() != terminals.len() || ns.len() != non_terminals.len() {
            return Err(TagError::InvalidGrammar("duplicate symbol".into()));
        }
        for t in &initial {
            if t.kind != TreeKind::Initial {
                return Err(TagError::InvalidGrammar("auxiliary tree in I".into()));
            }
        }
        for t in &auxiliary {
            if t.kind != TreeKind::Auxiliary {
                return Err(TagError::InvalidGrammar("initial tree in A".into()));
            }
        }
        for tree in initial.iter().chain(&auxiliary) {
            let (tree_nts, tree_ts) = tree.labels();
            if let Some(n) = tree_nts.iter().find(|n| !ns.contains(n)) {
                return Err(TagError::InvalidGrammar(format!("undeclared non-terminal {n}")));
            }
            if let Some(t) = tree_ts.iter().find(|t| !ts.contains(t)) {
                return Err(TagError::InvalidGrammar(format!("undeclared terminal {t}")));
            }
        }
        Ok(Grammar {
            initial,
            auxiliary,
            terminals,
            non_terminals,
        })
    }

    /// Builds a grammar whose symbol sets are exactly the labels used, in
    /// order of first appearance.
    pub fn from_trees(initial: Vec<Tree>, auxiliary: Vec<Tree>) -> Result<Self, TagError> {
        let mut terminals = Vec::new();
        let mut non_terminals = Vec::new();
        let mut seen_t = HashSet::new();
        let mut seen_n = HashSet::new();
        for tree in initial.iter().chain(&auxiliary) {
            for (_, node) in tree.nodes() {
                match node {
                    TreeNode::Leaf(t) => {
                        if seen_t.insert(t.clone()) {
                            terminals.push(t.clone());
                        }
                    }
                    TreeNode::Inner { label, .. } | TreeNode::Foot(label) => {
                        if seen_n.insert(label.clone()) {
                            non_terminals.push(label.clone());
                        }
                    }
                }
            }
        }
        Grammar::new(initial, auxiliary, terminals, non_terminals)
    }

    pub fn initial_trees(&self) -> &[Tree] {
        &self.initial
    }

    pub fn auxiliary_trees(&self) -> &[Tree] {
        &self.auxiliary
    }

    pub fn terminals(&self) -> &[Terminal] {
        &self.terminals
    }

    pub fn non_terminals(&self) -> &[NonTerminal] {
        &self.non_terminals
    }

    pub fn initial_tree(&self, id: usize) -> Result<&Tree, TagError> {
        self.initial.get(id).ok_or(TagError::UnknownTree {
            kind: "initial",
            id,
        })
    }

    pub fn auxiliary_tree(&self, id: usize) -> Result<&Tree, TagError> {
        self.auxiliary.get(id).ok_or(TagError::UnknownTree {
            kind: "auxiliary",
            id,
        })
    }
}

/// A derivation as an ordered list of adjunctions into the current tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub initial: usize,
    pub steps: Vec<(Address, usize)>,
}

/// Folds [`adjoin`] over the steps of `d`.
pub fn replay(grammar: &Grammar, d: &Derivation) -> Result<Tree, TagError> {
    let mut tree = grammar.initial_tree(d.initial)?.clone();
    for (step, (at, aux_id)) in d.steps.iter().enumerate() {
        let wrap = |source| TagError::Step {
            step,
            source: Box::new(source),
        };
        let aux = grammar.auxiliary_tree(*aux_id).map_err(wrap)?;
        tree = adjoin(&tree, at, aux).map_err(wrap)?;
    }
    Ok(tree)
}

/// All yields of complete derived trees reachable with at most
/// `max_adjunctions` adjunctions whose yield length is at most `max_yield_len`.
///
/// Adjunction never removes terminals, so any derived tree with more than
/// `max_yield_len` terminals is pruned. Adjunctions at distinct nodes
/// commute, so the search always expands the first marked node in preorder.
pub fn enumerate_language(
    grammar: &Grammar,
    max_yield_len: usize,
    max_adjunctions: usize,
) -> BTreeSet<Vec<Terminal>> {
    let mut language = BTreeSet::new();
    let mut seen: HashSet<Tree> = HashSet::new();
    let mut frontier: Vec<Tree> = grammar
        .initial
        .iter()
        .filter(|t| t.terminal_count() <= max_yield_len)
        .cloned()
        .collect();
    for t in &frontier {
        seen.insert(t.clone());
    }
    for round in 0..=max_adjunctions {
        let mut next = Vec::new();
        for tree in &frontier {
            let marks = marked_addresses(tree);
            let Some(first) = marks.first() else {
                language.insert(tree_yield(tree));
                continue;
            };
            if round == max_adjunctions {
                continue;
            }
            for aux in &grammar.auxiliary {
                let Ok(derived) = adjoin(tree, first, aux) else {
                    continue;
                };
                if derived.terminal_count() <= max_yield_len && seen.insert(derived.clone()) {
                    next.push(derived);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    language
}

/// Convenience for tests and examples: whitespace-separated terminals.
pub fn terminals(s: &str) -> Vec<Terminal> {
    s.split_whitespace().map(Terminal::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_initial() -> Tree {
        Tree::initial(TreeNode::inner(
            "A",
            vec![
                TreeNode::leaf("a"),
                TreeNode::marked("B", vec![TreeNode::leaf("b")]),
                TreeNode::leaf("c"),
            ],
        ))
        .unwrap()
    }

    fn fig1_aux() -> Tree {
        Tree::auxiliary(TreeNode::inner(
            "B",
            vec![
                TreeNode::marked("B", vec![TreeNode::leaf("a")]),
                TreeNode::marked("A", vec![TreeNode::foot("B"), TreeNode::leaf("b")]),
                TreeNode::marked("A", vec![TreeNode::leaf("c")]),
            ],
        ))
        .unwrap()
    }

    #[test]
    fn nested_adjunction() {
        let init = fig1_initial();
        assert_eq!(tree_yield(&init), terminals("a b c"));
        assert_eq!(marked_addresses(&init), vec![Address(vec![1])]);
        let result = adjoin(&init, &Address(vec![1]), &fig1_aux()).unwrap();
        assert_eq!(tree_yield(&result), terminals("a a b b c c"));
        assert_eq!(
            marked_addresses(&result),
            vec![
                Address(vec![1, 0]),
                Address(vec![1, 1]),
                Address(vec![1, 2])
            ]
        );
        // inputs untouched
        assert_eq!(marked_addresses(&init).len(), 1);
        assert_eq!(result.kind(), TreeKind::Initial);
        // the displaced B now sits under the foot position, unmarked
        let moved = result.node_at(&Address(vec![1, 1, 0])).unwrap();
        assert_eq!(moved.non_terminal().unwrap().name(), "B");
        assert!(!moved.is_marked());
    }

    #[test]
    fn terminator_unmarks() {
        let t = Tree::initial(TreeNode::inner(
            "S",
            vec![
                TreeNode::leaf("a"),
                TreeNode::marked("X", vec![TreeNode::leaf("b")]),
            ],
        ))
        .unwrap();
        let term = Tree::auxiliary(TreeNode::inner("X", vec![TreeNode::foot("X")])).unwrap();
        let r = adjoin(&t, &Address(vec![1]), &term).unwrap();
        assert!(marked_addresses(&r).is_empty());
        assert_eq!(tree_yield(&r), terminals("a b"));
        assert_eq!(r.node_count(), t.node_count() + 1);
    }

    #[test]
    fn adjoin_errors() {
        let init = fig1_initial();
        let aux = fig1_aux();
        assert_eq!(
            adjoin(&init, &Address::root(), &aux),
            Err(TagError::NotMarked(Address::root()))
        );
        assert_eq!(
            adjoin(&init, &Address(vec![7]), &aux),
            Err(TagError::AddressUnresolvable(Address(vec![7])))
        );
        assert_eq!(
            adjoin(&init, &Address(vec![1]), &init),
            Err(TagError::NotAuxiliary)
        );
        let other = Tree::auxiliary(TreeNode::inner("Q", vec![TreeNode::foot("Q")])).unwrap();
        assert!(matches!(
            adjoin(&init, &Address(vec![1]), &other),
            Err(TagError::LabelMismatch { .. })
        ));
    }

    #[test]
    fn invalid_trees_rejected() {
        assert!(Tree::initial(TreeNode::marked("S", vec![TreeNode::leaf("a")])).is_err());
        assert!(Tree::initial(TreeNode::inner("S", vec![TreeNode::foot("S")])).is_err());
        assert!(Tree::auxiliary(TreeNode::inner("S", vec![TreeNode::leaf("a")])).is_err());
        assert!(Tree::auxiliary(TreeNode::inner("S", vec![TreeNode::foot("T")])).is_err());
        assert!(Tree::auxiliary(TreeNode::inner(
            "S",
            vec![TreeNode::foot("S"), TreeNode::foot("S")]
        ))
        .is_err());
        assert!(Tree::initial(TreeNode::inner("S", vec![TreeNode::inner("X", vec![])])).is_err());
    }

    #[test]
    fn single_leaf_yield() {
        let t = Tree::initial(TreeNode::inner("S", vec![TreeNode::leaf("x")])).unwrap();
        assert_eq!(tree_yield(&t), terminals("x"));
        assert!(marked_addresses(&t).is_empty());
    }

    #[test]
    fn replay_reports_step() {
        let g = Grammar::from_trees(vec![fig1_initial()], vec![fig1_aux()]).unwrap();
        let empty = Derivation {
            initial: 0,
            steps: vec![],
        };
        assert_eq!(replay(&g, &empty).unwrap(), fig1_initial());
        let d = Derivation {
            initial: 0,
            steps: vec![(Address(vec![1]), 0), (Address(vec![1]), 0)],
        };
        match replay(&g, &d) {
            Err(TagError::Step { step: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn enumerate_small_languages() {
        let init = Tree::initial(TreeNode::inner(
            "S",
            vec![
                TreeNode::leaf("a"),
                TreeNode::marked("X", vec![TreeNode::leaf("b")]),
                TreeNode::leaf("c"),
            ],
        ))
        .unwrap();
        let term = Tree::auxiliary(TreeNode::inner("X", vec![TreeNode::foot("X")])).unwrap();
        let g = Grammar::from_trees(vec![init.clone()], vec![term]).unwrap();
        let lang = enumerate_language(&g, 10, 1);
        assert_eq!(lang, BTreeSet::from([terminals("a b c")]));

        let stuck = Grammar::from_trees(vec![init], vec![]).unwrap();
        assert!(enumerate_language(&stuck, 10, 5).is_empty());
    }

    #[test]
    fn deep_tree_drops_without_overflow() {
        let mut tree = Tree::initial(TreeNode::inner(
            "S",
            vec![TreeNode::marked("X", vec![TreeNode::leaf("a")])],
        ))
        .unwrap();
        let grow = Tree::auxiliary(TreeNode::inner(
            "X",
            vec![TreeNode::marked("X", vec![TreeNode::foot("X")])],
        ))
        .unwrap();
        let mut at = Address(vec![0]);
        for _ in 0..2_000 {
            tree = adjoin(&tree, &at, &grow).unwrap();
            at = at.child(0);
        }
        assert_eq!(marked_addresses(&tree), vec![at]);
        drop(tree);
        let mut node = TreeNode::leaf("a");
        for _ in 0..300_000 {
            node = TreeNode::inner("X", vec![node]);
        }
        let deep = Tree::initial(TreeNode::inner("S", vec![node])).unwrap();
        assert_eq!(tree_yield(&deep).len(), 1);
        drop(deep);
    }
}
