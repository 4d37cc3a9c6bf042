//! The clique-detecting programs and the reduction grammar Γ.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::encoding::{alphabet, Token};
use crate::program::{combine_all, make_a, make_eq, make_w, make_w1, Program};
use crate::tag::{Grammar, NonTerminal, Terminal, Tree, TreeNode};

fn ts(tokens: &[Token]) -> Vec<Terminal> {
    tokens.iter().map(|t| t.terminal()).collect()
}

fn relabel(p: &Program, name: &str) -> Program {
    let map = BTreeMap::from([
        (p.in_label().clone(), NonTerminal::new(format!("{name}_In"))),
        (p.out_label().clone(), NonTerminal::new(format!("{name}_Out"))),
    ]);
    p.rename(&map)
}

/// `W(#)·A({0,1,$})·W($)·Eq({0,1})·W($)·A({0,1,$})·W(#)`, with input
/// `NC_In` and output `NC_Out`.
pub fn build_nc() -> Program {
    use Token::*;
    let bits_dollar = ts(&[Zero, One, Dollar]);
    let nc = combine_all(&[
        make_w1(&Hash.terminal()),
        make_a(&bits_dollar).expect("non-empty"),
        make_w1(&Dollar.terminal()),
        make_eq(&ts(&[Zero, One])).expect("non-empty"),
        make_w1(&Dollar.terminal()),
        make_a(&bits_dollar).expect("non-empty"),
        make_w1(&Hash.terminal()),
    ]);
    relabel(&nc, "NC")
}

fn loop_tree(root: &NonTerminal, marked: &NonTerminal) -> Tree {
    Tree::auxiliary(TreeNode::make_inner(
        root.clone(),
        false,
        vec![TreeNode::make_inner(
            marked.clone(),
            true,
            vec![TreeNode::Foot(root.clone())],
        )],
    ))
    .expect("loop tree is well formed")
}

/// Any number of sequential calls to NC, with input `CC_In` and output
/// `CC_Out`.
pub fn build_cc() -> Program {
    let nc = build_nc();
    let cc_in = NonTerminal::new("CC_In");
    let cc_out = NonTerminal::new("CC_Out");
    let mut trees: Vec<Tree> = nc.trees().iter().map(|t| t.tree().clone()).collect();
    trees.push(loop_tree(&cc_in, nc.out_label()));
    trees.push(loop_tree(nc.out_label(), nc.in_label()));
    trees.push(loop_tree(nc.out_label(), &cc_out));
    Program::new("CC", trees, cc_in, cc_out).expect("CC is a program")
}

/// `CC·W(§)·CC`
pub fn build_c() -> Program {
    let cc = build_cc();
    combine_all(&[cc.clone(), make_w1(&Token::Sect.terminal()), cc])
}

/// The three programs that each test one almost-4k-clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PKind {
    P1346,
    P1256,
    P2345,
}

impl PKind {
    pub const ALL: [PKind; 3] = [PKind::P1346, PKind::P1256, PKind::P2345];

    pub fn name(self) -> &'static str {
        match self {
            PKind::P1346 => "P1346",
            PKind::P1256 => "P1256",
            PKind::P2345 => "P2345",
        }
    }

    /// Blocks whose segments the program reads, in tuple order.
    pub fn blocks(self) -> [usize; 4] {
        match self {
            PKind::P1346 => [1, 3, 4, 6],
            PKind::P1256 => [1, 2, 5, 6],
            PKind::P2345 => [2, 3, 4, 5],
        }
    }

    /// Part index of C's first CC inside the program.
    pub fn c_part(self) -> usize {
        match self {
            PKind::P1346 => 2,
            PKind::P1256 | PKind::P2345 => 1,
        }
    }
}

impl fmt::Display for PKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `A(T)·W(|)·C·W(l1,r3,l4,r6)` and its two siblings, with input and
/// output relabeled `<name>_In` / `<name>_Out`.
pub fn build_p(kind: PKind) -> Program {
    use Token::*;
    let any = make_a(&alphabet()).expect("non-empty");
    let pipe = make_w1(&Pipe.terminal());
    let w = |a: Token, b: Token, c: Token, d: Token| {
        make_w(&a.terminal(), &b.terminal(), &c.terminal(), &d.terminal())
    };
    let c = build_c();
    let p = match kind {
        PKind::P1346 => combine_all(&[any, pipe, c, w(L1, R3, L4, R6)]),
        PKind::P1256 => combine_all(&[w(R1, L2, R5, L6), c, pipe, any]),
        PKind::P2345 => combine_all(&[w(R2, L3, R4, L5), c, pipe, any]),
    };
    relabel(&p, kind.name())
}

/// Γ with its handle labels and the programs it was assembled from.
#[derive(Clone, Debug)]
pub struct ReductionGrammar {
    pub grammar: Grammar,
    /// Readable names for key labels. The C, CC and NC entries name the
    /// copy used inside P1346.
    pub handles: BTreeMap<String, NonTerminal>,
    /// The programs as they occur in Γ, still normal (before unmarking).
    pub programs: [Program; 3],
    /// Auxiliary tree id of each program's first tree.
    pub offsets: [usize; 3],
    /// Auxiliary tree id of the only tree with more than one mark.
    pub triple: usize,
}

impl ReductionGrammar {
    pub fn program(&self, kind: PKind) -> &Program {
        &self.programs[kind as usize]
    }

    /// Grammar auxiliary id of a program tree.
    pub fn aux_id(&self, kind: PKind, tree: usize) -> usize {
        self.offsets[kind as usize] + tree
    }

    pub fn handle(&self, name: &str) -> &NonTerminal {
        &self.handles[name]
    }
}

fn unmark(tree: &Tree, label: &NonTerminal) -> Tree {
    tree.map_nodes(&mut |node| match node {
        TreeNode::Inner {
            label: l,
            marked: true,
            ..
        } if l == label => TreeNode::make_inner(l.clone(), false, Vec::new()),
        other => shallow(other),
    })
    .expect("unmarking keeps the tree valid")
}

fn shallow(node: &TreeNode) -> TreeNode {
    match node {
        TreeNode::Inner { label, marked, .. } => {
            TreeNode::make_inner(label.clone(), *marked, Vec::new())
        }
        other => other.clone(),
    }
}

fn label_with_base<'a>(p: &'a Program, part: usize, base: &str) -> &'a NonTerminal {
    let range = p.parts()[part].trees.clone();
    p.trees()[range]
        .iter()
        .map(|t| t.input())
        .find(|l| l.name().split('~').next() == Some(base))
        .expect("label present in part")
}

/// Assembles Γ: the initial tree `S(P1346_In*(e))`, the triple-adjunction
/// tree, and the trees of the three P programs on disjoint labels, with
/// `P1256_Out` and `P2345_Out` left unmarked.
pub fn build_reduction_grammar() -> ReductionGrammar {
    let mut taken: HashSet<NonTerminal> = HashSet::new();
    let mut programs = Vec::new();
    for (i, kind) in PKind::ALL.into_iter().enumerate() {
        let p = build_p(kind);
        let p = if i == 0 {
            taken.extend(p.non_terminals());
            p
        } else {
            relabel(&p.fresh_copy(&mut taken), kind.name())
        };
        programs.push(p);
    }
    let programs: [Program; 3] = programs.try_into().expect("three programs");
    let [p1346, p1256, p2345] = &programs;

    let start = NonTerminal::new("S");
    let initial = Tree::initial(TreeNode::make_inner(
        start.clone(),
        false,
        vec![TreeNode::make_inner(
            p1346.in_label().clone(),
            true,
            vec![TreeNode::Leaf(Token::E.terminal())],
        )],
    ))
    .expect("initial tree is well formed");
    let triple = Tree::auxiliary(TreeNode::make_inner(
        p1346.out_label().clone(),
        false,
        vec![TreeNode::make_inner(
            p1256.in_label().clone(),
            true,
            vec![TreeNode::make_inner(
                p2345.in_label().clone(),
                true,
                vec![TreeNode::Foot(p1346.out_label().clone())],
            )],
        )],
    ))
    .expect("triple tree is well formed");

    let mut aux = vec![triple];
    let mut offsets = [0; 3];
    for (i, p) in programs.iter().enumerate() {
        offsets[i] = aux.len();
        for t in p.trees() {
            let tree = if i > 0 && t.output() == p.out_label() {
                unmark(t.tree(), p.out_label())
            } else {
                t.tree().clone()
            };
            aux.push(tree);
        }
    }
    let inferred = Grammar::from_trees(vec![initial], aux).expect("Γ is a grammar");
    let grammar = Grammar::new(
        inferred.initial_trees().to_vec(),
        inferred.auxiliary_trees().to_vec(),
        alphabet(),
        inferred.non_terminals().to_vec(),
    )
    .expect("Γ uses the reduction alphabet");

    let c = PKind::P1346.c_part();
    let mut handles = BTreeMap::new();
    handles.insert("S".to_string(), start);
    for (kind, p) in PKind::ALL.iter().zip(&programs) {
        handles.insert(format!("{kind}_In"), p.in_label().clone());
        handles.insert(format!("{kind}_Out"), p.out_label().clone());
    }
    let parts = p1346.parts();
    handles.insert("C_In".into(), parts[c].in_label.clone());
    handles.insert("C_Out".into(), parts[c + 2].out_label.clone());
    handles.insert("CC_In".into(), parts[c].in_label.clone());
    handles.insert("CC_Out".into(), parts[c].out_label.clone());
    handles.insert("NC_In".into(), label_with_base(p1346, c, "NC_In").clone());
    handles.insert("NC_Out".into(), label_with_base(p1346, c, "NC_Out").clone());

    ReductionGrammar {
        grammar,
        handles,
        programs,
        offsets,
        triple: 0,
    }
}

/// Size figures of a grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrammarStats {
    pub trees: usize,
    pub initial_trees: usize,
    pub auxiliary_trees: usize,
    pub non_terminals: usize,
    pub terminals: usize,
    pub max_nodes_per_tree: usize,
    pub total_nodes: usize,
    pub multi_mark_trees: usize,
}

pub fn grammar_stats(g: &Grammar) -> GrammarStats {
    let all = || g.initial_trees().iter().chain(g.auxiliary_trees());
    GrammarStats {
        trees: all().count(),
        initial_trees: g.initial_trees().len(),
        auxiliary_trees: g.auxiliary_trees().len(),
        non_terminals: g.non_terminals().len(),
        terminals: g.terminals().len(),
        max_nodes_per_tree: all().map(Tree::node_count).max().unwrap_or(0),
        total_nodes: all().map(Tree::node_count).sum(),
        multi_mark_trees: all().filter(|t| t.marked_addresses().len() > 1).count(),
    }
}

impl fmt::Display for GrammarStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trees={}", self.trees)?;
        writeln!(f, "initial_trees={}", self.initial_trees)?;
        writeln!(f, "auxiliary_trees={}", self.auxiliary_trees)?;
        writeln!(f, "non_terminals={}", self.non_terminals)?;
        writeln!(f, "terminals={}", self.terminals)?;
        writeln!(f, "max_nodes_per_tree={}", self.max_nodes_per_tree)?;
        writeln!(f, "total_nodes={}", self.total_nodes)?;
        writeln!(f, "multi_mark_trees={}", self.multi_mark_trees)
    }
}
