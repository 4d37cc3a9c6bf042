#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tagclique::encoding::{Graph, Token};
use tagclique::program::Tuple4;
use tagclique::tag::{Grammar, NonTerminal, Terminal, Tree, TreeNode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every graph on `n` vertices, in edge-mask order.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// `# tokens #`, with the inner part optionally reversed.
pub fn hashed(mut tokens: Vec<Token>, reverse: bool) -> Vec<Terminal> {
    if reverse {
        tokens.reverse();
    }
    let mut out = vec![Token::Hash.terminal()];
    out.extend(tokens.iter().map(|t| t.terminal()));
    out.push(Token::Hash.terminal());
    out
}

pub fn reversed(mut ts: Vec<Terminal>) -> Vec<Terminal> {
    ts.reverse();
    ts
}

/// Independent clique test: extend each vertex set one vertex at a time,
/// in any order, keeping only sets that stay pairwise adjacent.
pub fn has_clique_by_extension(g: &Graph, m: usize) -> bool {
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for set in &layer {
            for v in 1..=g.n() {
                if !set.contains(&v) && set.iter().all(|&u| g.has_edge(u, v)) {
                    let mut s = set.clone();
                    s.push(v);
                    s.sort_unstable();
                    next.push(s);
                }
            }
        }
        next.sort();
        next.dedup();
        layer = next;
        if layer.is_empty() {
            return false;
        }
    }
    true
}

const LABELS: [&str; 3] = ["S", "A", "B"];

pub fn two_letters() -> [Terminal; 2] {
    [Terminal::new("a"), Terminal::new("b")]
}

fn random_subtree(rng: &mut impl Rng, depth: usize, mark: f64) -> TreeNode {
    if depth >= 2 || rng.gen_bool(0.4) {
        return TreeNode::leaf(["a", "b"][rng.gen_range(0..2)]);
    }
    let arity = rng.gen_range(1..=2);
    let children = (0..arity).map(|_| random_subtree(rng, depth + 1, mark)).collect();
    let label = LABELS[rng.gen_range(1..3)];
    if rng.gen_bool(mark) {
        TreeNode::marked(label, children)
    } else {
        TreeNode::inner(label, children)
    }
}

fn random_root(rng: &mut impl Rng, label: &str, foot: bool) -> Option<Tree> {
    let arity = rng.gen_range(1..=2);
    let mark = if foot { 0.4 } else { 0.8 };
    let mut children: Vec<TreeNode> = (0..arity)
        .map(|_| {
            let depth = if foot && rng.gen_bool(0.6) { 2 } else { 1 };
            random_subtree(rng, depth, mark)
        })
        .collect();
    if foot {
        // the foot goes at the end of a random path of inner nodes
        let slot = rng.gen_range(0..=children.len());
        let nest = rng.gen_range(0..=1);
        let mut node = TreeNode::foot(label);
        for _ in 0..nest {
            let inner = LABELS[rng.gen_range(1..3)];
            let mut siblings = vec![node];
            if rng.gen_bool(0.5) {
                siblings.insert(rng.gen_range(0..2), TreeNode::leaf("a"));
            }
            node = if rng.gen_bool(mark) {
                TreeNode::marked(inner, siblings)
            } else {
                TreeNode::inner(inner, siblings)
            };
        }
        children.insert(slot, node);
    }
    let root = TreeNode::inner(label, children);
    let tree = if foot {
        Tree::auxiliary(root)
    } else {
        Tree::initial(root)
    }
    .ok()?;
    let writes = tree.terminal_count() >= 1;
    (tree.node_count() <= 7 && (writes || !foot)).then_some(tree)
}

/// `X(t X*)` or `X(X* t)`, possibly with the foot under a marked node.
fn small_aux(rng: &mut impl Rng, label: &str) -> Tree {
    let t = TreeNode::leaf(["a", "b"][rng.gen_range(0..2)]);
    let mut foot = TreeNode::foot(label);
    if rng.gen_bool(0.4) {
        foot = TreeNode::marked(LABELS[rng.gen_range(1..3)], vec![foot]);
    }
    let children = if rng.gen_bool(0.5) { vec![t, foot] } else { vec![foot, t] };
    Tree::auxiliary(TreeNode::inner(label, children)).unwrap()
}

/// A random grammar with at most 5 trees of at most 7 nodes over the
/// terminals `a` and `b`, in which every auxiliary tree writes a terminal.
pub fn random_grammar(rng: &mut impl Rng) -> Grammar {
    let trees = rng.gen_range(2..=5);
    let initial_count = rng.gen_range(1..=2.min(trees - 1));
    let mut initial = Vec::new();
    while initial.len() < initial_count {
        initial.extend(random_root(rng, "S", false));
    }
    let mut aux = Vec::new();
    while aux.len() < trees - initial_count {
        // alternate labels so that both usually have auxiliary trees
        let label = LABELS[1 + (aux.len() + rng.gen_range(0..2) * usize::from(aux.len() > 1)) % 2];
        if rng.gen_bool(0.6) {
            aux.push(small_aux(rng, label));
        } else {
            aux.extend(random_root(rng, label, true));
        }
    }
    Grammar::new(
        initial,
        aux,
        two_letters().to_vec(),
        LABELS.iter().map(NonTerminal::new).collect(),
    )
    .unwrap()
}

/// All strings over `alphabet` of length at most `max_len`.
pub fn all_strings(alphabet: &[Terminal], max_len: usize) -> Vec<Vec<Terminal>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &layer {
            for t in alphabet {
                let mut w: Vec<Terminal> = s.clone();
                w.push(t.clone());
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn shuffled<T: Clone>(rng: &mut impl Rng, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}

/// One graph per isomorphism class on `n` vertices: the first in edge-mask
/// order of each class.
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let index = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let perms = permutations(n);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canonical = images
            .iter()
            .map(|img| {
                (0..pairs.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0u32, |acc, i| acc | 1 << img[i])
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| (pairs[i].0 + 1, pairs[i].1 + 1))
                .collect();
            out.push(Graph::from_edges(n, &edges).unwrap());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

fn leaves(ts: &[Terminal]) -> Vec<TreeNode> {
    ts.iter().map(|x| TreeNode::Leaf(x.clone())).collect()
}

/// `In[o1 Mid[i1 Out*[o2 Low[i2 In* i3] o3] i4] o4]`, whose tuple is
/// `(o1 i1, o2 i2, i3 o3, i4 o4)` in yield order.
pub fn normal_tree(input: &str, output: &str, parts: &[Vec<Terminal>; 8]) -> (Tree, Tuple4) {
    let [o1, i1, o2, i2, i3, o3, i4, o4] = parts;
    let nt = NonTerminal::new;
    let low = TreeNode::make_inner(
        nt("Low"),
        false,
        [leaves(i2), vec![TreeNode::Foot(nt(input))], leaves(i3)].concat(),
    );
    let out = TreeNode::make_inner(nt(output), true, [leaves(o2), vec![low], leaves(o3)].concat());
    let mid = TreeNode::make_inner(nt("Mid"), false, [leaves(i1), vec![out], leaves(i4)].concat());
    let root = TreeNode::make_inner(nt(input), false, [leaves(o1), vec![mid], leaves(o4)].concat());
    let tuple = Tuple4::new(
        [o1.clone(), i1.clone()].concat(),
        [o2.clone(), i2.clone()].concat(),
        [i3.clone(), o3.clone()].concat(),
        [i4.clone(), o4.clone()].concat(),
    );
    (Tree::auxiliary(root).unwrap(), tuple)
}


/// All 4-tuples over `alphabet` with total length at most `max_total`.
pub fn all_tuples(alphabet: &[Terminal], max_total: usize) -> Vec<Tuple4> {
    let words = all_strings(alphabet, max_total);
    let mut out = Vec::new();
    for a in &words {
        for b in words.iter().filter(|b| a.len() + b.len() <= max_total) {
            for c in words.iter().filter(|c| a.len() + b.len() + c.len() <= max_total) {
                for d in words
                    .iter()
                    .filter(|d| a.len() + b.len() + c.len() + d.len() <= max_total)
                {
                    out.push(Tuple4::new(a.clone(), b.clone(), c.clone(), d.clone()));
                }
            }
        }
    }
    out
}
