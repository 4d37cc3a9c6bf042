//! Bottom-up chart recognition for TAGs with obligatory adjunction.
//!
//! Items are dotted per node: `Dot(node, d, i, j, gap)` says the first `d`
//! children of `node` derive `s[i..j]`, leaving `gap` for the foot if the foot
//! lies below. `Top(node, i, j, gap)` is a node after any adjunction it needs.
//! A marked node only becomes `Top` by wrapping an auxiliary root item whose
//! foot gap equals the node's span. Items are `O(|G| N^4)`; combining a
//! marked node with an auxiliary root is the `O(N^6)` step.

use std::collections::VecDeque;

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::tag::{Grammar, Terminal, TreeKind, TreeNode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognizeError {
    #[error("terminal {0} is not in the grammar's alphabet")]
    UnknownTerminal(Terminal),
}

type Pos = u32;
type Gap = Option<(Pos, Pos)>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Item {
    Top {
        node: u32,
        i: Pos,
        j: Pos,
        gap: Gap,
    },
    Dot {
        node: u32,
        dot: u32,
        i: Pos,
        j: Pos,
        gap: Gap,
    },
}

#[derive(Debug)]
enum Kind {
    Inner { marked: bool, children: Vec<u32> },
    Leaf(u32),
    Foot,
}

#[derive(Debug)]
struct Node {
    kind: Kind,
    label: u32,
    parent: Option<(u32, u32)>,
    aux_root: bool,
    initial_root: bool,
}

/// Grammar flattened into one node table.
struct Compiled {
    nodes: Vec<Node>,
}

fn compile(grammar: &Grammar) -> (Compiled, FxHashMap<Terminal, u32>) {
    let mut term_ids = FxHashMap::default();
    for (i, t) in grammar.terminals().iter().enumerate() {
        term_ids.insert(t.clone(), i as u32);
    }
    let mut nt_ids: FxHashMap<&str, u32> = FxHashMap::default();
    for (i, n) in grammar.non_terminals().iter().enumerate() {
        nt_ids.insert(n.name(), i as u32);
    }
    let mut nodes: Vec<Node> = Vec::new();
    let trees = grammar
        .initial_trees()
        .iter()
        .chain(grammar.auxiliary_trees());
    for tree in trees {
        let is_aux = tree.kind() == TreeKind::Auxiliary;
        let mut stack: Vec<(&TreeNode, Option<(u32, u32)>)> = vec![(tree.root(), None)];
        while let Some((tn, parent)) = stack.pop() {
            let id = nodes.len() as u32;
            if let Some((p, c)) = parent {
                if let Kind::Inner { children, .. } = &mut nodes[p as usize].kind {
                    debug_assert_eq!(children.len() as u32, c);
                    children.push(id);
                }
            }
            let (kind, label) = match tn {
                TreeNode::Inner { label, marked, .. } => (
                    Kind::Inner {
                        marked: *marked,
                        children: Vec::new(),
                    },
                    nt_ids[label.name()],
                ),
                TreeNode::Leaf(t) => (Kind::Leaf(term_ids[t]), u32::MAX),
                TreeNode::Foot(label) => (Kind::Foot, nt_ids[label.name()]),
            };
            nodes.push(Node {
                kind,
                label,
                parent,
                aux_root: parent.is_none() && is_aux,
                initial_root: parent.is_none() && !is_aux,
            });
            // children are pushed in reverse so that they are numbered in order
            for (c, child) in tn.children().iter().enumerate().rev() {
                stack.push((child, Some((id, c as u32))));
            }
        }
    }
    (Compiled { nodes }, term_ids)
}

/// Agenda discipline; the accept decision does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AgendaOrder {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ChartStats {
    pub items: usize,
    pub deductions: usize,
    pub accepted: bool,
}

struct Chart<'a> {
    c: &'a Compiled,
    n: Pos,
    items: FxHashSet<Item>,
    agenda: VecDeque<Item>,
    order: AgendaOrder,
    deductions: usize,
    accepted: bool,
    // Top items by (node, start): (end, gap)
    tops: FxHashMap<(u32, Pos), Vec<(Pos, Gap)>>,
    // Dot items waiting for child `dot` at position j: (start, gap)
    waiting: FxHashMap<(u32, u32, Pos), Vec<(Pos, Gap)>>,
    // Completed marked nodes by (label, i, j): (node, gap)
    marked_done: FxHashMap<(u32, Pos, Pos), Vec<(u32, Gap)>>,
    // Auxiliary root tops by (label, foot_i, foot_j): (i, j)
    aux_roots: FxHashMap<(u32, Pos, Pos), Vec<(Pos, Pos)>>,
}

fn merge(a: Gap, b: Gap) -> Option<Gap> {
    match (a, b) {
        (Some(_), Some(_)) => None,
        (Some(g), None) | (None, Some(g)) => Some(Some(g)),
        (None, None) => Some(None),
    }
}

impl<'a> Chart<'a> {
    fn add(&mut self, item: Item) {
        self.deductions += 1;
        if self.items.insert(item) {
            match self.order {
                AgendaOrder::Fifo => self.agenda.push_back(item),
                AgendaOrder::Lifo => self.agenda.push_front(item),
            }
        }
    }

    fn run(&mut self, stop_on_accept: bool) {
        while let Some(item) = self.agenda.pop_front() {
            match item {
                Item::Top { node, i, j, gap } => self.on_top(node, i, j, gap),
                Item::Dot {
                    node,
                    dot,
                    i,
                    j,
                    gap,
                } => self.on_dot(node, dot, i, j, gap),
            }
            if stop_on_accept && self.accepted {
                return;
            }
        }
    }

    fn on_top(&mut self, node: u32, i: Pos, j: Pos, gap: Gap) {
        let info = &self.c.nodes[node as usize];
        if info.initial_root && i == 0 && j == self.n && gap.is_none() {
            self.accepted = true;
        }
        if info.aux_root {
            let (p, q) = gap.expect("auxiliary root spans its foot");
            let key = (info.label, p, q);
            self.aux_roots.entry(key).or_default().push((i, j));
            if let Some(targets) = self.marked_done.get(&key).cloned() {
                for (target, g) in targets {
                    self.add(Item::Top {
                        node: target,
                        i,
                        j,
                        gap: g,
                    });
                }
            }
        }
        let Some((parent, c)) = info.parent else {
            return;
        };
        self.tops.entry((node, i)).or_default().push((j, gap));
        if c == 0 {
            self.add(Item::Dot {
                node: parent,
                dot: 1,
                i,
                j,
                gap,
            });
        } else if let Some(waiting) = self.waiting.get(&(parent, c, i)).cloned() {
            for (h, g0) in waiting {
                if let Some(g) = merge(g0, gap) {
                    self.add(Item::Dot {
                        node: parent,
                        dot: c + 1,
                        i: h,
                        j,
                        gap: g,
                    });
                }
            }
        }
    }

    fn on_dot(&mut self, node: u32, dot: u32, i: Pos, j: Pos, gap: Gap) {
        let info = &self.c.nodes[node as usize];
        let Kind::Inner { marked, children } = &info.kind else {
            unreachable!("dot items live on inner nodes");
        };
        if dot as usize == children.len() {
            if !*marked {
                self.add(Item::Top { node, i, j, gap });
            } else {
                let key = (info.label, i, j);
                self.marked_done.entry(key).or_default().push((node, gap));
                if let Some(wraps) = self.aux_roots.get(&key).cloned() {
                    for (oi, oj) in wraps {
                        self.add(Item::Top {
                            node,
                            i: oi,
                            j: oj,
                            gap,
                        });
                    }
                }
            }
            return;
        }
        let child = children[dot as usize];
        self.waiting.entry((node, dot, j)).or_default().push((i, gap));
        if let Some(tops) = self.tops.get(&(child, j)).cloned() {
            for (k, g2) in tops {
                if let Some(g) = merge(gap, g2) {
                    self.add(Item::Dot {
                        node,
                        dot: dot + 1,
                        i,
                        j: k,
                        gap: g,
                    });
                }
            }
        }
    }
}

/// Chart recognizer bound to one grammar; reusable across strings.
pub struct ChartRecognizer<'g> {
    compiled: Compiled,
    term_ids: FxHashMap<Terminal, u32>,
    order: AgendaOrder,
    _grammar: &'g Grammar,
}

impl<'g> ChartRecognizer<'g> {
    pub fn new(grammar: &'g Grammar) -> Self {
        let (compiled, term_ids) = compile(grammar);
        ChartRecognizer {
            compiled,
            term_ids,
            order: AgendaOrder::Fifo,
            _grammar: grammar,
        }
    }

    pub fn with_order(mut self, order: AgendaOrder) -> Self {
        self.order = order;
        self
    }

    pub fn recognize(&self, s: &[Terminal]) -> Result<bool, RecognizeError> {
        Ok(self.run(s, true)?.accepted)
    }

    /// Runs to the fixpoint and reports chart size.
    pub fn stats(&self, s: &[Terminal]) -> Result<ChartStats, RecognizeError> {
        self.run(s, false)
    }

    fn run(&self, s: &[Terminal], stop_on_accept: bool) -> Result<ChartStats, RecognizeError> {
        let ids: Vec<u32> = s
            .iter()
            .map(|t| {
                self.term_ids
                    .get(t)
                    .copied()
                    .ok_or_else(|| RecognizeError::UnknownTerminal(t.clone()))
            })
            .collect::<Result<_, _>>()?;
        let n = ids.len() as Pos;
        let mut chart = Chart {
            c: &self.compiled,
            n,
            items: FxHashSet::default(),
            agenda: VecDeque::new(),
            order: self.order,
            deductions: 0,
            accepted: false,
            tops: FxHashMap::default(),
            waiting: FxHashMap::default(),
            marked_done: FxHashMap::default(),
            aux_roots: FxHashMap::default(),
        };
        for (id, node) in self.compiled.nodes.iter().enumerate() {
            let id = id as u32;
            match node.kind {
                Kind::Leaf(t) => {
                    for (i, &sym) in ids.iter().enumerate() {
                        if sym == t {
                            let i = i as Pos;
                            chart.add(Item::Top {
                                node: id,
                                i,
                                j: i + 1,
                                gap: None,
                            });
                        }
                    }
                }
                Kind::Foot => {
                    for i in 0..=n {
                        for j in i..=n {
                            chart.add(Item::Top {
                                node: id,
                                i,
                                j,
                                gap: Some((i, j)),
                            });
                        }
                    }
                }
                Kind::Inner { .. } => {}
            }
        }
        chart.run(stop_on_accept);
        Ok(ChartStats {
            items: chart.items.len(),
            deductions: chart.deductions,
            accepted: chart.accepted,
        })
    }
}

/// Decides `s ∈ L(grammar)`.
pub fn recognize(grammar: &Grammar, s: &[Terminal]) -> Result<bool, RecognizeError> {
    ChartRecognizer::new(grammar).recognize(s)
}

pub fn chart_stats(grammar: &Grammar, s: &[Terminal]) -> Result<ChartStats, RecognizeError> {
    ChartRecognizer::new(grammar).stats(s)
}
