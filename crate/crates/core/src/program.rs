//! Programming with trees.
//!
//! A normal tree is an auxiliary tree with exactly one marked node, lying on
//! the root-to-foot spine. Its terminal leaves fall into four groups (left of
//! the spine above / below the marked node, right below / above), giving a
//! [`Tuple4`]. Adjoining normal trees one after another concatenates tuples
//! by the chain law `(n1 m1, m2 n2, n3 m3, m4 n4)`. A [`Program`] is a set of
//! normal trees with an input and an output label; its executions are the
//! label chains from input to output.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Range;

use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::tag::{adjoin, Address, Grammar, NonTerminal, TagError, Terminal, Tree, TreeKind, TreeNode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProgramError {
    #[error("normal trees must be auxiliary")]
    NotAuxiliary,
    #[error("normal trees have exactly one marked node, found {0}")]
    MarkCountNotOne(usize),
    #[error("the marked node is not on the root-to-foot path")]
    MarkOffSpine,
    #[error("cannot chain: output {output} does not match input {input}")]
    LabelMismatch {
        output: NonTerminal,
        input: NonTerminal,
    },
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("no tree has input {0}")]
    MissingInput(NonTerminal),
    #[error("no tree has output {0}")]
    MissingOutput(NonTerminal),
    #[error(transparent)]
    Tag(#[from] TagError),
}

/// Four terminal strings.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple4(pub [Vec<Terminal>; 4]);

impl Tuple4 {
    pub fn new(a: Vec<Terminal>, b: Vec<Terminal>, c: Vec<Terminal>, d: Vec<Terminal>) -> Self {
        Tuple4([a, b, c, d])
    }

    pub fn empty() -> Self {
        Tuple4::default()
    }

    pub fn total_len(&self) -> usize {
        self.0.iter().map(Vec::len).sum()
    }

    /// The tuple generated by running `self` and then `next`.
    pub fn then(&self, next: &Tuple4) -> Tuple4 {
        let [n1, n2, n3, n4] = &self.0;
        let [m1, m2, m3, m4] = &next.0;
        Tuple4([
            [n1.as_slice(), m1].concat(),
            [m2.as_slice(), n2].concat(),
            [n3.as_slice(), m3].concat(),
            [m4.as_slice(), n4].concat(),
        ])
    }

    /// `(b, c, d, a)`
    pub fn rotate(&self) -> Tuple4 {
        let [a, b, c, d] = self.0.clone();
        Tuple4([b, c, d, a])
    }
}

impl fmt::Debug for Tuple4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if part.is_empty() {
                f.write_str("ε")?;
            }
            for (j, t) in part.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{t}")?;
            }
        }
        f.write_str(")")
    }
}

/// An auxiliary tree validated as normal, with its labels and tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalTree {
    tree: Tree,
    input: NonTerminal,
    output: NonTerminal,
    tuple: Tuple4,
    marked_at: Address,
}

impl NormalTree {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn input(&self) -> &NonTerminal {
        &self.input
    }

    pub fn output(&self) -> &NonTerminal {
        &self.output
    }

    pub fn tuple(&self) -> &Tuple4 {
        &self.tuple
    }

    /// Address of the unique marked node.
    pub fn marked_at(&self) -> &Address {
        &self.marked_at
    }
}

pub fn validate_normal(tree: &Tree) -> Result<NormalTree, ProgramError> {
    if tree.kind() != TreeKind::Auxiliary {
        return Err(ProgramError::NotAuxiliary);
    }
    let marks = tree.marked_addresses();
    if marks.len() != 1 {
        return Err(ProgramError::MarkCountNotOne(marks.len()));
    }
    let marked_at = marks.into_iter().next().expect("one mark");
    let foot = tree.foot_address().expect("auxiliary tree has a foot");
    if !marked_at.is_prefix_of(foot) {
        return Err(ProgramError::MarkOffSpine);
    }

    // Walk the spine; every off-spine child belongs to one of four groups.
    let mut groups: [Vec<Terminal>; 4] = Default::default();
    let mut right_above: Vec<Vec<Terminal>> = Vec::new();
    let mut right_below: Vec<Vec<Terminal>> = Vec::new();
    let mut node = tree.root();
    for (depth, &step) in foot.0.iter().enumerate() {
        let below = depth >= marked_at.len();
        let mut right = Vec::new();
        for (i, child) in node.children().iter().enumerate() {
            let i = i as u16;
            if i == step {
                continue;
            }
            let leaves = subtree_terminals(child);
            match (i < step, below) {
                (true, false) => groups[0].extend(leaves),
                (true, true) => groups[1].extend(leaves),
                (false, _) => right.extend(leaves),
            }
        }
        if below {
            right_below.push(right);
        } else {
            right_above.push(right);
        }
        node = &node.children()[step as usize];
    }
    // right-hand groups in yield order: deepest spine node first
    for leaves in right_below.into_iter().rev() {
        groups[2].extend(leaves);
    }
    for leaves in right_above.into_iter().rev() {
        groups[3].extend(leaves);
    }
    let output = tree
        .node_at(&marked_at)
        .and_then(TreeNode::non_terminal)
        .expect("marked node is inner")
        .clone();
    Ok(NormalTree {
        input: tree.root_label().clone(),
        output,
        tuple: Tuple4(groups),
        tree: tree.clone(),
        marked_at,
    })
}

fn subtree_terminals(node: &TreeNode) -> Vec<Terminal> {
    let mut out = Vec::new();
    let mut stack = vec![node];
    while let Some(n) = stack.pop() {
        match n {
            TreeNode::Leaf(t) => out.push(t.clone()),
            TreeNode::Foot(_) => {}
            TreeNode::Inner { children, .. } => {
                stack.extend(children.iter().rev().map(|c| c.as_ref()))
            }
        }
    }
    out
}

/// Adjoins `m` into `n` at `n`'s marked node.
pub fn chain(n: &NormalTree, m: &NormalTree) -> Result<NormalTree, ProgramError> {
    if m.input != n.output {
        return Err(ProgramError::LabelMismatch {
            output: n.output.clone(),
            input: m.input.clone(),
        });
    }
    let derived = adjoin(&n.tree, &n.marked_at, &m.tree)?;
    validate_normal(&derived)
}

/// A contiguous range of a program's trees that came from one basic program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub name: String,
    pub in_label: NonTerminal,
    pub out_label: NonTerminal,
    pub trees: Range<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    trees: Vec<NormalTree>,
    in_label: NonTerminal,
    out_label: NonTerminal,
    parts: Vec<Part>,
}

impl Program {
    /// A basic program consisting of a single part named `name`.
    pub fn new(
        name: impl Into<String>,
        trees: Vec<Tree>,
        in_label: NonTerminal,
        out_label: NonTerminal,
    ) -> Result<Self, ProgramError> {
        let normal = trees
            .iter()
            .map(validate_normal)
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_parts(
            normal,
            in_label.clone(),
            out_label.clone(),
            vec![Part {
                name: name.into(),
                in_label,
                out_label,
                trees: 0..trees.len(),
            }],
        )
    }

    fn from_parts(
        trees: Vec<NormalTree>,
        in_label: NonTerminal,
        out_label: NonTerminal,
        parts: Vec<Part>,
    ) -> Result<Self, ProgramError> {
        if !trees.iter().any(|t| t.input == in_label) {
            return Err(ProgramError::MissingInput(in_label));
        }
        if !trees.iter().any(|t| t.output == out_label) {
            return Err(ProgramError::MissingOutput(out_label));
        }
        Ok(Program {
            trees,
            in_label,
            out_label,
            parts,
        })
    }

    pub fn trees(&self) -> &[NormalTree] {
        &self.trees
    }

    pub fn in_label(&self) -> &NonTerminal {
        &self.in_label
    }

    pub fn out_label(&self) -> &NonTerminal {
        &self.out_label
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// N(P): every non-terminal used by the program's trees.
    pub fn non_terminals(&self) -> BTreeSet<NonTerminal> {
        self.trees
            .iter()
            .flat_map(|t| t.tree.labels().0)
            .collect()
    }

    pub fn terminals(&self) -> BTreeSet<Terminal> {
        self.trees
            .iter()
            .flat_map(|t| t.tree.labels().1)
            .collect()
    }

    /// The sub-program made of one part's trees.
    pub fn part_program(&self, index: usize) -> Program {
        let part = &self.parts[index];
        Program {
            trees: self.trees[part.trees.clone()].to_vec(),
            in_label: part.in_label.clone(),
            out_label: part.out_label.clone(),
            parts: vec![Part {
                trees: 0..part.trees.len(),
                ..part.clone()
            }],
        }
    }

    /// Applies a label substitution to every tree and handle.
    pub fn rename(&self, map: &BTreeMap<NonTerminal, NonTerminal>) -> Program {
        let sub = |l: &NonTerminal| map.get(l).cloned().unwrap_or_else(|| l.clone());
        let trees = self
            .trees
            .iter()
            .map(|nt| {
                let tree = nt
                    .tree
                    .map_nodes(&mut |node| match node {
                        TreeNode::Inner { label, marked, .. } => {
                            TreeNode::make_inner(sub(label), *marked, Vec::new())
                        }
                        TreeNode::Foot(label) => TreeNode::Foot(sub(label)),
                        leaf => leaf.clone(),
                    })
                    .expect("renaming keeps trees well formed");
                NormalTree {
                    input: sub(&nt.input),
                    output: sub(&nt.output),
                    tuple: nt.tuple.clone(),
                    marked_at: nt.marked_at.clone(),
                    tree,
                }
            })
            .collect();
        Program {
            trees,
            in_label: sub(&self.in_label),
            out_label: sub(&self.out_label),
            parts: self
                .parts
                .iter()
                .map(|p| Part {
                    name: p.name.clone(),
                    in_label: sub(&p.in_label),
                    out_label: sub(&p.out_label),
                    trees: p.trees.clone(),
                })
                .collect(),
        }
    }

    /// Renames every non-terminal to a fresh name not in `taken`, and adds
    /// the new names to `taken`.
    pub fn fresh_copy(&self, taken: &mut HashSet<NonTerminal>) -> Program {
        self.fresh_copy_mapped(taken).0
    }

    /// [`Program::fresh_copy`], also returning the renaming.
    pub fn fresh_copy_mapped(
        &self,
        taken: &mut HashSet<NonTerminal>,
    ) -> (Program, BTreeMap<NonTerminal, NonTerminal>) {
        let map = fresh_names(&self.non_terminals(), None, taken);
        (self.rename(&map), map)
    }
}

fn base_name(name: &str) -> &str {
    name.split('~').next().unwrap_or(name)
}

fn fresh_names(
    labels: &BTreeSet<NonTerminal>,
    keep: Option<(&NonTerminal, &NonTerminal)>,
    taken: &mut HashSet<NonTerminal>,
) -> BTreeMap<NonTerminal, NonTerminal> {
    let mut map = BTreeMap::new();
    for label in labels {
        if let Some((from, to)) = keep {
            if label == from {
                map.insert(label.clone(), to.clone());
                continue;
            }
        }
        let base = base_name(label.name());
        let fresh = (1..)
            .map(|c| NonTerminal::new(format!("{base}~{c}")))
            .find(|cand| !taken.contains(cand))
            .expect("unbounded counter");
        taken.insert(fresh.clone());
        map.insert(label.clone(), fresh);
    }
    map
}

/// `P · Q`: `P ∪ Q''` where `Q''` is a fresh copy of `Q` whose input is
/// replaced by `P`'s output.
pub fn combine(p: &Program, q: &Program) -> Program {
    combine_mapped(p, q).0
}

/// [`combine`], also returning the renaming applied to `q`'s labels.
pub fn combine_mapped(p: &Program, q: &Program) -> (Program, BTreeMap<NonTerminal, NonTerminal>) {
    let mut taken: HashSet<NonTerminal> = p.non_terminals().into_iter().collect();
    let map = fresh_names(
        &q.non_terminals(),
        Some((&q.in_label, &p.out_label)),
        &mut taken,
    );
    let q2 = q.rename(&map);
    let offset = p.trees.len();
    let mut trees = p.trees.clone();
    trees.extend(q2.trees);
    let mut parts = p.parts.clone();
    parts.extend(q2.parts.into_iter().map(|part| Part {
        trees: part.trees.start + offset..part.trees.end + offset,
        ..part
    }));
    let program = Program {
        trees,
        in_label: p.in_label.clone(),
        out_label: q2.out_label,
        parts,
    };
    (program, map)
}

/// Left-to-right `combine` over a non-empty list.
pub fn combine_all(programs: &[Program]) -> Program {
    let (first, rest) = programs.split_first().expect("at least one program");
    rest.iter().fold(first.clone(), |acc, q| combine(&acc, q))
}

fn set_name(sigma: &[Terminal]) -> String {
    let names: Vec<&str> = sigma.iter().map(Terminal::name).collect();
    format!("{{{}}}", names.join(","))
}

fn io_labels(name: &str) -> (NonTerminal, NonTerminal) {
    (
        NonTerminal::new(format!("{name}_In")),
        NonTerminal::new(format!("{name}_Out")),
    )
}

fn leaf(t: &Terminal) -> TreeNode {
    TreeNode::Leaf(t.clone())
}

fn node(label: &NonTerminal, marked: bool, children: Vec<TreeNode>) -> TreeNode {
    TreeNode::make_inner(label.clone(), marked, children)
}

/// `W(a,b,c,d)`: writes one character to each position.
pub fn make_w(a: &Terminal, b: &Terminal, c: &Terminal, d: &Terminal) -> Program {
    let name = if a == b && b == c && c == d {
        format!("W({a})")
    } else {
        format!("W({a},{b},{c},{d})")
    };
    let (input, output) = io_labels(&name);
    let tree = Tree::auxiliary(node(
        &input,
        false,
        vec![
            leaf(a),
            node(
                &output,
                true,
                vec![leaf(b), TreeNode::Foot(input.clone()), leaf(c)],
            ),
            leaf(d),
        ],
    ))
    .expect("W tree is well formed");
    Program::new(name, vec![tree], input, output).expect("W is a program")
}

/// `W(a) = W(a,a,a,a)`
pub fn make_w1(a: &Terminal) -> Program {
    make_w(a, a, a, a)
}

/// `Eq(Σ)`: computes `{(v, v^R, v, v^R) | v ∈ Σ*}`.
pub fn make_eq(sigma: &[Terminal]) -> Result<Program, ProgramError> {
    if sigma.is_empty() {
        return Err(ProgramError::EmptyAlphabet);
    }
    let name = format!("Eq{}", set_name(sigma));
    let (input, output) = io_labels(&name);
    let mut trees = vec![closer(&input, &output)];
    for s in sigma {
        trees.push(
            Tree::auxiliary(node(
                &input,
                false,
                vec![
                    leaf(s),
                    node(
                        &input,
                        true,
                        vec![leaf(s), TreeNode::Foot(input.clone()), leaf(s)],
                    ),
                    leaf(s),
                ],
            ))
            .expect("Eq tree is well formed"),
        );
    }
    Program::new(name, trees, input, output)
}

fn closer(input: &NonTerminal, output: &NonTerminal) -> Tree {
    Tree::auxiliary(node(
        input,
        false,
        vec![node(output, true, vec![TreeNode::Foot(input.clone())])],
    ))
    .expect("closer tree is well formed")
}

/// `A(Σ)`: computes `(Σ*)^4`. Four single-character trees per symbol, one
/// per position, plus the closing tree.
pub fn make_a(sigma: &[Terminal]) -> Result<Program, ProgramError> {
    if sigma.is_empty() {
        return Err(ProgramError::EmptyAlphabet);
    }
    let name = format!("A{}", set_name(sigma));
    let (input, output) = io_labels(&name);
    let foot = || TreeNode::Foot(input.clone());
    let mut trees = vec![closer(&input, &output)];
    for s in sigma {
        let shapes = [
            node(&input, false, vec![leaf(s), node(&input, true, vec![foot()])]),
            node(&input, false, vec![node(&input, true, vec![leaf(s), foot()])]),
            node(&input, false, vec![node(&input, true, vec![foot(), leaf(s)])]),
            node(&input, false, vec![node(&input, true, vec![foot()]), leaf(s)]),
        ];
        for shape in shapes {
            trees.push(Tree::auxiliary(shape).expect("A tree is well formed"));
        }
    }
    Program::new(name, trees, input, output)
}

/// Tree indices of an execution of `make_a(sigma)` that generates `t`, or
/// `None` if `t` uses a symbol outside `sigma`.
///
/// Positions 1 and 3 are written front to back; positions 2 and 4 back to
/// front, since later trees prepend there.
pub fn a_execution(sigma: &[Terminal], t: &Tuple4) -> Option<Vec<usize>> {
    let index: BTreeMap<&Terminal, usize> = sigma.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut chain = Vec::with_capacity(t.total_len() + 1);
    for (d, part) in t.0.iter().enumerate() {
        let tree = |s: &Terminal| index.get(s).map(|&i| 1 + 4 * i + d);
        if d % 2 == 0 {
            for s in part {
                chain.push(tree(s)?);
            }
        } else {
            for s in part.iter().rev() {
                chain.push(tree(s)?);
            }
        }
    }
    chain.push(0);
    Some(chain)
}

/// Every tuple of an execution with total length at most `max_total_len`.
///
/// Breadth-first over `(label, tuple)` states; tuples only grow, and the
/// state set is finite under the length bound. States that cannot reach
/// the output within the bound are dropped early.
pub fn enumerate_tuples(p: &Program, max_total_len: usize) -> BTreeSet<Tuple4> {
    let mut by_input: BTreeMap<&NonTerminal, Vec<&NormalTree>> = BTreeMap::new();
    for t in &p.trees {
        by_input.entry(&t.input).or_default().push(t);
    }
    let to_out = min_remaining(p);
    let fits = |label: &NonTerminal, tuple: &Tuple4| {
        to_out
            .get(label)
            .is_some_and(|&rest| tuple.total_len() + rest <= max_total_len)
    };
    let mut out = BTreeSet::new();
    let mut seen: HashSet<(NonTerminal, Tuple4)> = HashSet::new();
    let mut queue = VecDeque::new();
    let start = Tuple4::empty();
    for t in by_input.get(&p.in_label).into_iter().flatten() {
        let tuple = start.then(&t.tuple);
        if fits(&t.output, &tuple) && seen.insert((t.output.clone(), tuple.clone())) {
            queue.push_back((t.output.clone(), tuple));
        }
    }
    while let Some((label, tuple)) = queue.pop_front() {
        if label == p.out_label {
            out.insert(tuple.clone());
        }
        for t in by_input.get(&label).into_iter().flatten() {
            let next = tuple.then(&t.tuple);
            if fits(&t.output, &next) && seen.insert((t.output.clone(), next.clone())) {
                queue.push_back((t.output.clone(), next));
            }
        }
    }
    out
}

/// For each label, the fewest terminals any path from it to the output
/// writes; labels that cannot reach the output are absent.
fn min_remaining(p: &Program) -> BTreeMap<NonTerminal, usize> {
    let mut dist = BTreeMap::from([(p.out_label.clone(), 0)]);
    let mut changed = true;
    while changed {
        changed = false;
        for t in &p.trees {
            let Some(&rest) = dist.get(&t.output) else {
                continue;
            };
            let via = t.tuple.total_len() + rest;
            if dist.get(&t.input).is_none_or(|&d| via < d) {
                dist.insert(t.input.clone(), via);
                changed = true;
            }
        }
    }
    dist
}

/// Decides `t ∈ L(p)`.
pub fn tuple_in_program(p: &Program, t: &Tuple4) -> bool {
    TupleDecider::new(p).contains(t)
}

struct Edge {
    tree: u32,
    target: u32,
    parts: [Box<[u16]>; 4],
}

/// A program compiled for repeated membership queries.
///
/// The search runs over states `(label, i1, j2, i3, j4)`: positions 1 and 3
/// are consumed from the front, positions 2 and 4 from the back (later trees
/// prepend there). Before the full search, each pair of positions is solved
/// on its own; a pair projection is a necessary condition, and its
/// co-reachable states prune the four-position search.
pub struct TupleDecider {
    edges: Vec<Vec<Edge>>,
    incoming: Vec<Vec<(u32, u32)>>,
    start: u32,
    accept: u32,
    symbols: FxHashMap<Terminal, u16>,
}

/// The compiled form of a tuple: symbol ids per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompiledTuple([Vec<u16>; 4]);

impl CompiledTuple {
    pub fn from_parts(parts: [Vec<u16>; 4]) -> Self {
        CompiledTuple(parts)
    }

    fn lens(&self) -> [usize; 4] {
        [self.0[0].len(), self.0[1].len(), self.0[2].len(), self.0[3].len()]
    }
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
const PAIR_STATE_LIMIT: usize = 1 << 18;

type Key = u128;

fn key(label: u32, pos: [u16; 4]) -> Key {
    (label as u128)
        | (pos[0] as u128) << 32
        | (pos[1] as u128) << 48
        | (pos[2] as u128) << 64
        | (pos[3] as u128) << 80
}

fn unkey(k: Key) -> (u32, [u16; 4]) {
    (
        k as u32,
        [
            (k >> 32) as u16,
            (k >> 48) as u16,
            (k >> 64) as u16,
            (k >> 80) as u16,
        ],
    )
}

/// Dense set of `(label, pa, pb)` states of one pair projection.
struct PairSet {
    lb: usize,
    per_label: usize,
    bits: Vec<u64>,
}

impl PairSet {
    fn new(labels: usize, la: usize, lb: usize) -> Self {
        let per_label = (la + 1) * (lb + 1);
        PairSet {
            lb: lb + 1,
            per_label,
            bits: vec![0; (labels * per_label).div_ceil(64)],
        }
    }

    #[inline]
    fn index(&self, label: u32, a: u16, b: u16) -> usize {
        label as usize * self.per_label + a as usize * self.lb + b as usize
    }

    #[inline]
    fn contains(&self, label: u32, a: u16, b: u16) -> bool {
        let i = self.index(label, a, b);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns whether the state was new.
    #[inline]
    fn insert(&mut self, label: u32, a: u16, b: u16) -> bool {
        let i = self.index(label, a, b);
        let (word, bit) = (i / 64, 1 << (i % 64));
        let new = self.bits[word] & bit == 0;
        self.bits[word] |= bit;
        new
    }
}

impl TupleDecider {
    pub fn new(p: &Program) -> Self {
        let mut label_ids: BTreeMap<&NonTerminal, u32> = BTreeMap::new();
        for t in &p.trees {
            for l in [&t.input, &t.output] {
                let next = label_ids.len() as u32;
                label_ids.entry(l).or_insert(next);
            }
        }
        let mut symbols: FxHashMap<Terminal, u16> = FxHashMap::default();
        let mut sym = |t: &Terminal| {
            let next = symbols.len() as u16;
            *symbols.entry(t.clone()).or_insert(next)
        };
        // One extra label stands for "no tree applied yet"; it is never
        // accepting and has the input label's outgoing trees.
        let n = label_ids.len() + 1;
        let start = (n - 1) as u32;
        let mut edges: Vec<Vec<Edge>> = (0..n).map(|_| Vec::new()).collect();
        let mut incoming: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
        for (i, t) in p.trees.iter().enumerate() {
            let source = label_ids[&t.input];
            let target = label_ids[&t.output];
            let parts = t.tuple.0.clone().map(|part| part.iter().map(&mut sym).collect());
            let mk = |parts: &[Box<[u16]>; 4]| Edge {
                tree: i as u32,
                target,
                parts: parts.clone(),
            };
            if t.input == p.in_label {
                incoming[target as usize].push((start, edges[start as usize].len() as u32));
                edges[start as usize].push(mk(&parts));
            }
            incoming[target as usize].push((source, edges[source as usize].len() as u32));
            edges[source as usize].push(mk(&parts));
        }
        let accept = label_ids
            .get(&p.out_label)
            .copied()
            .unwrap_or(u32::MAX);
        TupleDecider {
            edges,
            incoming,
            start,
            accept,
            symbols,
        }
    }

    /// `None` when the tuple uses a symbol no tree writes.
    pub fn compile(&self, t: &Tuple4) -> Option<CompiledTuple> {
        let mut out: [Vec<u16>; 4] = Default::default();
        for (slot, part) in out.iter_mut().zip(&t.0) {
            if part.len() > u16::MAX as usize - 1 {
                return None;
            }
            for term in part {
                slot.push(*self.symbols.get(term)?);
            }
        }
        Some(CompiledTuple(out))
    }

    pub fn contains(&self, t: &Tuple4) -> bool {
        match self.compile(t) {
            Some(c) => self.contains_compiled(&c),
            None => false,
        }
    }

    pub fn contains_compiled(&self, t: &CompiledTuple) -> bool {
        self.search(t, false).is_some()
    }

    /// Tree indices (into the program's trees) of one execution generating `t`.
    pub fn witness(&self, t: &Tuple4) -> Option<Vec<usize>> {
        let c = self.compile(t)?;
        self.search(&c, true)
    }

    /// Membership of `(t[a], t[b])` in the projection of `L(p)` onto
    /// positions `a < b`; the other positions are ignored.
    pub fn pair_member(&self, a: usize, b: usize, sa: &[u16], sb: &[u16]) -> bool {
        let mut parts: [Vec<u16>; 4] = Default::default();
        parts[a] = sa.to_vec();
        parts[b] = sb.to_vec();
        self.pair_coreachable(&CompiledTuple(parts), a, b).is_some()
    }

    /// Symbol ids of `part`, or `None` when a symbol is never written.
    pub fn compile_part(&self, part: &[Terminal]) -> Option<Vec<u16>> {
        part.iter().map(|t| self.symbols.get(t).copied()).collect()
    }

    fn initial_pos(t: &CompiledTuple) -> [u16; 4] {
        let l = t.lens();
        [0, l[1] as u16, 0, l[3] as u16]
    }

    fn final_pos(t: &CompiledTuple) -> [u16; 4] {
        let l = t.lens();
        [l[0] as u16, 0, l[2] as u16, 0]
    }

    #[inline]
    fn advance(t: &CompiledTuple, pos: u16, dim: usize, part: &[u16]) -> Option<u16> {
        let s = &t.0[dim];
        let pos = pos as usize;
        let len = part.len();
        if dim.is_multiple_of(2) {
            (s.get(pos..pos + len)? == part).then_some((pos + len) as u16)
        } else {
            (pos >= len && &s[pos - len..pos] == part).then(|| (pos - len) as u16)
        }
    }

    #[inline]
    fn retreat(t: &CompiledTuple, pos: u16, dim: usize, part: &[u16]) -> Option<u16> {
        let s = &t.0[dim];
        let pos = pos as usize;
        let len = part.len();
        if dim.is_multiple_of(2) {
            (pos >= len && &s[pos - len..pos] == part).then(|| (pos - len) as u16)
        } else {
            (s.get(pos..pos + len)? == part).then_some((pos + len) as u16)
        }
    }

    /// States of the `(a, b)` projection that are reachable from the start
    /// and can still reach acceptance; `None` if the start cannot.
    fn pair_coreachable(&self, t: &CompiledTuple, a: usize, b: usize) -> Option<PairSet> {
        let init = Self::initial_pos(t);
        let fin = Self::final_pos(t);
        let lens = t.lens();
        let labels = self.edges.len();
        let mut seen = PairSet::new(labels, lens[a], lens[b]);
        let mut stack = vec![(self.start, init[a], init[b])];
        seen.insert(self.start, init[a], init[b]);
        while let Some((label, pa, pb)) = stack.pop() {
            for e in &self.edges[label as usize] {
                let Some(na) = Self::advance(t, pa, a, &e.parts[a]) else {
                    continue;
                };
                let Some(nb) = Self::advance(t, pb, b, &e.parts[b]) else {
                    continue;
                };
                if seen.insert(e.target, na, nb) {
                    stack.push((e.target, na, nb));
                }
            }
        }
        if self.accept == u32::MAX || !seen.contains(self.accept, fin[a], fin[b]) {
            return None;
        }
        let mut co = PairSet::new(labels, lens[a], lens[b]);
        co.insert(self.accept, fin[a], fin[b]);
        let mut stack = vec![(self.accept, fin[a], fin[b])];
        while let Some((label, pa, pb)) = stack.pop() {
            for &(source, ei) in &self.incoming[label as usize] {
                let e = &self.edges[source as usize][ei as usize];
                let Some(qa) = Self::retreat(t, pa, a, &e.parts[a]) else {
                    continue;
                };
                let Some(qb) = Self::retreat(t, pb, b, &e.parts[b]) else {
                    continue;
                };
                if seen.contains(source, qa, qb) && co.insert(source, qa, qb) {
                    stack.push((source, qa, qb));
                }
            }
        }
        co.contains(self.start, init[a], init[b]).then_some(co)
    }

    fn search(&self, t: &CompiledTuple, want_witness: bool) -> Option<Vec<usize>> {
        let lens = t.lens();
        let mut filters: Vec<(usize, usize, PairSet)> = Vec::new();
        for (a, b) in PAIRS {
            if (lens[a] + 1) * (lens[b] + 1) > PAIR_STATE_LIMIT {
                continue;
            }
            filters.push((a, b, self.pair_coreachable(t, a, b)?));
        }
        let allowed = |label: u32, pos: &[u16; 4]| {
            filters
                .iter()
                .all(|(a, b, co)| co.contains(label, pos[*a], pos[*b]))
        };

        let init = Self::initial_pos(t);
        let fin = Self::final_pos(t);
        let start = key(self.start, init);
        let goal = key(self.accept, fin);
        let mut seen: FxHashSet<Key> = FxHashSet::default();
        let mut parent: FxHashMap<Key, (Key, u32)> = FxHashMap::default();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            if k == goal {
                if !want_witness {
                    return Some(Vec::new());
                }
                let mut path = Vec::new();
                let mut cur = k;
                while cur != start {
                    let (prev, tree) = parent[&cur];
                    path.push(tree as usize);
                    cur = prev;
                }
                path.reverse();
                return Some(path);
            }
            let (label, pos) = unkey(k);
            // reverse so that the first tree is explored first
            for e in self.edges[label as usize].iter().rev() {
                let mut next = pos;
                let mut ok = true;
                for dim in 0..4 {
                    match Self::advance(t, pos[dim], dim, &e.parts[dim]) {
                        Some(p) => next[dim] = p,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok || !allowed(e.target, &next) {
                    continue;
                }
                let nk = key(e.target, next);
                if seen.insert(nk) {
                    if want_witness {
                        parent.insert(nk, (k, e.tree));
                    }
                    stack.push(nk);
                }
            }
        }
        None
    }
}

/// Embeds `p` in a grammar whose strings are `n1 n2 center n3 n4`.
///
/// The initial tree is `S(In*(center))` with `In` marked; a terminator
/// tree rooted at `p`'s output closes the last mark.
pub fn program_to_grammar(p: &Program, center: &Terminal) -> Grammar {
    let labels = p.non_terminals();
    let start = (0..)
        .map(|i| {
            if i == 0 {
                NonTerminal::new("S")
            } else {
                NonTerminal::new(format!("S~{i}"))
            }
        })
        .find(|s| !labels.contains(s))
        .expect("unbounded");
    let initial = Tree::initial(node(
        &start,
        false,
        vec![node(&p.in_label, true, vec![leaf(center)])],
    ))
    .expect("initial tree is well formed");
    let terminator = Tree::auxiliary(node(
        &p.out_label,
        false,
        vec![TreeNode::Foot(p.out_label.clone())],
    ))
    .expect("terminator is well formed");
    let mut aux: Vec<Tree> = p.trees.iter().map(|t| t.tree.clone()).collect();
    aux.push(terminator);
    Grammar::from_trees(vec![initial], aux).expect("embedded program is a grammar")
}

/// Builds the string `n1 n2 center n3 n4`.
pub fn embed_tuple(t: &Tuple4, center: &Terminal) -> Vec<Terminal> {
    let [a, b, c, d] = &t.0;
    let mut s = Vec::with_capacity(t.total_len() + 1);
    s.extend_from_slice(a);
    s.extend_from_slice(b);
    s.push(center.clone());
    s.extend_from_slice(c);
    s.extend_from_slice(d);
    s
}
