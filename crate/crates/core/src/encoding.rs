//! Graphs, cliques and the graph gadget string.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

use crate::tag::Terminal;

/// The 19 symbols of the reduction alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Token {
    Zero,
    One,
    Dollar,
    Hash,
    Pipe,
    Sect,
    E,
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl Token {
    pub const ALL: [Token; 19] = [
        Token::Zero,
        Token::One,
        Token::Dollar,
        Token::Hash,
        Token::Pipe,
        Token::Sect,
        Token::E,
        Token::L1,
        Token::L2,
        Token::L3,
        Token::L4,
        Token::L5,
        Token::L6,
        Token::R1,
        Token::R2,
        Token::R3,
        Token::R4,
        Token::R5,
        Token::R6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Token::Zero => "0",
            Token::One => "1",
            Token::Dollar => "$",
            Token::Hash => "#",
            Token::Pipe => "|",
            Token::Sect => "S",
            Token::E => "e",
            Token::L1 => "l1",
            Token::L2 => "l2",
            Token::L3 => "l3",
            Token::L4 => "l4",
            Token::L5 => "l5",
            Token::L6 => "l6",
            Token::R1 => "r1",
            Token::R2 => "r2",
            Token::R3 => "r3",
            Token::R4 => "r4",
            Token::R5 => "r5",
            Token::R6 => "r6",
        }
    }

    /// `l_i` for `i` in 1..=6.
    pub fn l(i: usize) -> Token {
        [Token::L1, Token::L2, Token::L3, Token::L4, Token::L5, Token::L6][i - 1]
    }

    /// `r_i` for `i` in 1..=6.
    pub fn r(i: usize) -> Token {
        [Token::R1, Token::R2, Token::R3, Token::R4, Token::R5, Token::R6][i - 1]
    }

    /// Block index of an `l_i` token.
    pub fn l_index(self) -> Option<usize> {
        (1..=6).find(|&i| Token::l(i) == self)
    }

    /// Symbols that may occur inside a gadget segment.
    pub fn is_segment(self) -> bool {
        matches!(
            self,
            Token::Zero | Token::One | Token::Dollar | Token::Hash | Token::Sect
        )
    }

    pub fn terminal(self) -> Terminal {
        Terminal::new(self.name())
    }

    pub fn from_terminal(t: &Terminal) -> Option<Token> {
        t.name().parse().ok()
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown token {0:?}")]
pub struct UnknownToken(pub String);

impl FromStr for Token {
    type Err = UnknownToken;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Token::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| UnknownToken(s.to_string()))
    }
}

/// The reduction alphabet as terminals, in canonical order.
pub fn alphabet() -> Vec<Terminal> {
    Token::ALL.iter().map(|t| t.terminal()).collect()
}

pub fn to_terminals(tokens: &[Token]) -> Vec<Terminal> {
    tokens.iter().map(|t| t.terminal()).collect()
}

pub fn from_terminals(ts: &[Terminal]) -> Result<Vec<Token>, UnknownToken> {
    ts.iter()
        .map(|t| Token::from_terminal(t).ok_or_else(|| UnknownToken(t.name().to_string())))
        .collect()
}

/// Parses a `.toks` document: whitespace-separated token names.
pub fn parse_toks(text: &str) -> Result<Vec<Token>, UnknownToken> {
    text.split_whitespace().map(str::parse).collect()
}

/// Space-separated token names with a trailing newline.
pub fn write_toks(tokens: &[Token]) -> String {
    let mut out = String::with_capacity(tokens.len() * 2 + 1);
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(t.name());
    }
    out.push('\n');
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A simple undirected graph on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v).expect("valid edge");
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds `{u, v}`; returns whether the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        self.adj[(u - 1) * self.n + (v - 1)] = true;
        self.adj[(v - 1) * self.n + (u - 1)] = true;
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.neighbors[a - 1];
            let at = list.partition_point(|&x| x < b);
            list.insert(at, b);
        }
        Ok(true)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u == 0 || v == 0 || u > self.n || v > self.n || !self.has_edge(u, v) {
            return;
        }
        self.adj[(u - 1) * self.n + (v - 1)] = false;
        self.adj[(v - 1) * self.n + (u - 1)] = false;
        self.neighbors[u - 1].retain(|&x| x != v);
        self.neighbors[v - 1].retain(|&x| x != u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && u <= self.n && v <= self.n && self.adj[(u - 1) * self.n + (v - 1)]
    }

    /// Ascending neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v - 1].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|u| {
                self.neighbors(u)
                    .iter()
                    .filter(move |&&v| v > u)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    /// Parses an edge list. Lines are `u v` (or `e u v`); an optional
    /// `p <n> <m>` header fixes the vertex count, otherwise it is the largest
    /// vertex seen. Blank lines and lines starting with `c` are skipped.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let fields: Vec<&str> = raw.split_whitespace().collect();
            let err = |msg: &str| GraphError::Parse {
                line,
                msg: msg.to_string(),
            };
            let num = |s: &str| s.parse::<usize>().map_err(|_| err("expected a number"));
            match fields.as_slice() {
                [] => {}
                [c, ..] if c.starts_with('c') => {}
                ["p", rest @ ..] => {
                    if declared.is_some() || !edges.is_empty() {
                        return Err(err("header must come first"));
                    }
                    let nums: Vec<&str> = rest
                        .iter()
                        .copied()
                        .filter(|f| f.parse::<usize>().is_ok())
                        .collect();
                    match nums.as_slice() {
                        [n, _m] => declared = Some(num(n)?),
                        _ => return Err(err("header is p <n> <m>")),
                    }
                }
                ["e", u, v] | [u, v] => edges.push((num(u)?, num(v)?, line)),
                _ => return Err(err("expected `u v`")),
            }
        }
        let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v, _)| u.max(v)).max().unwrap_or(0));
        let mut g = Graph::new(n);
        for (u, v, _) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// The edge-list format accepted by [`Graph::parse`], with a header.
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = format!("p {} {}\n", self.n, edges.len());
        for (u, v) in edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("expected a clique of size {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("vertices {0:?} do not form a clique")]
    NotAClique(Vec<usize>),
}

/// Strictly ascending, pairwise adjacent vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KClique(Vec<usize>);

impl KClique {
    pub fn new(g: &Graph, mut vertices: Vec<usize>) -> Result<Self, EncodingError> {
        vertices.sort_unstable();
        for &v in &vertices {
            if v == 0 || v > g.n() {
                return Err(EncodingError::VertexOutOfRange { v, n: g.n() });
            }
        }
        let ok = vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if !ok {
            return Err(EncodingError::NotAClique(vertices));
        }
        Ok(KClique(vertices))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Bits per vertex code: the bit length of `n`, at least 1.
pub fn width(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()).max(1) as usize
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), EncodingError> {
    if v == 0 || v > g.n() {
        Err(EncodingError::VertexOutOfRange { v, n: g.n() })
    } else {
        Ok(())
    }
}

fn push_code(out: &mut Vec<Token>, v: usize, w: usize) {
    out.push(Token::Dollar);
    for bit in (0..w).rev() {
        out.push(if v >> bit & 1 == 1 { Token::One } else { Token::Zero });
    }
    out.push(Token::Dollar);
}

/// `$ v̄ $` with `v̄` the fixed-width binary code, most significant bit first.
pub fn node_gadget(g: &Graph, v: usize) -> Result<Vec<Token>, EncodingError> {
    check_vertex(g, v)?;
    let mut out = Vec::new();
    push_code(&mut out, v, width(g.n()));
    Ok(out)
}

/// Node gadgets of all neighbors of `v`, ascending.
pub fn list_gadget(g: &Graph, v: usize) -> Result<Vec<Token>, EncodingError> {
    check_vertex(g, v)?;
    let w = width(g.n());
    let mut out = Vec::new();
    for &u in g.neighbors(v) {
        push_code(&mut out, u, w);
    }
    Ok(out)
}

fn check_arity(c: &KClique, k: usize) -> Result<(), EncodingError> {
    if c.len() != k {
        return Err(EncodingError::ArityMismatch {
            expected: k,
            found: c.len(),
        });
    }
    Ok(())
}

/// Each vertex's `# NG(v) #` repeated `k` times, vertices ascending.
pub fn clique_node_gadget(g: &Graph, c: &KClique, k: usize) -> Result<Vec<Token>, EncodingError> {
    check_arity(c, k)?;
    let mut out = Vec::new();
    for &v in c.vertices() {
        let ng = node_gadget(g, v)?;
        for _ in 0..k {
            out.push(Token::Hash);
            out.extend_from_slice(&ng);
            out.push(Token::Hash);
        }
    }
    Ok(out)
}

/// The sequence of `# LG(v) #` over the clique, repeated `k` times.
pub fn clique_list_gadget(g: &Graph, c: &KClique, k: usize) -> Result<Vec<Token>, EncodingError> {
    check_arity(c, k)?;
    let mut once = Vec::new();
    for &v in c.vertices() {
        once.push(Token::Hash);
        once.extend(list_gadget(g, v)?);
        once.push(Token::Hash);
    }
    Ok(once.repeat(k))
}

/// `X § CLG(C)^R` with `X` either `CNG(C)` or `CLG(C)`.
fn half(head: &[Token], clg: &[Token]) -> Vec<Token> {
    let mut out = Vec::with_capacity(head.len() + clg.len() + 1);
    out.extend_from_slice(head);
    out.push(Token::Sect);
    out.extend(clg.iter().rev());
    out
}

/// The two segments of a clique's entry in block `i` (1-based).
pub fn entry_segments(
    g: &Graph,
    c: &KClique,
    k: usize,
    block: usize,
) -> Result<(Vec<Token>, Vec<Token>), EncodingError> {
    let cng = clique_node_gadget(g, c, k)?;
    let clg = clique_list_gadget(g, c, k)?;
    let node = half(&cng, &clg);
    let list = half(&clg, &clg);
    Ok(if block <= 3 { (node, list) } else { (list, node) })
}

/// The graph gadget for cliques of size `k`.
pub fn graph_gadget(g: &Graph, k: usize) -> Vec<Token> {
    let cliques = enumerate_k_cliques(g, k);
    let mut segments = Vec::with_capacity(cliques.len());
    for c in &cliques {
        let cng = clique_node_gadget(g, c, k).expect("clique of size k");
        let clg = clique_list_gadget(g, c, k).expect("clique of size k");
        segments.push((half(&cng, &clg), half(&clg, &clg)));
    }
    let mut out = Vec::with_capacity(encoded_length(g, k));
    for block in 1..=6 {
        if block == 4 {
            out.push(Token::E);
        }
        for (node, list) in &segments {
            let (left, right) = if block <= 3 { (node, list) } else { (list, node) };
            out.push(Token::Pipe);
            out.extend_from_slice(left);
            out.push(Token::l(block));
            out.push(Token::r(block));
            out.extend_from_slice(right);
            out.push(Token::Pipe);
        }
    }
    out
}

/// All `k`-cliques, lexicographic in their ascending vertex sequences.
pub fn enumerate_k_cliques(g: &Graph, k: usize) -> Vec<KClique> {
    fn extend(g: &Graph, k: usize, current: &mut Vec<usize>, out: &mut Vec<KClique>) {
        if current.len() == k {
            out.push(KClique(current.clone()));
            return;
        }
        let from = current.last().map_or(1, |&v| v + 1);
        for v in from..=g.n() {
            if current.iter().all(|&u| g.has_edge(u, v)) {
                current.push(v);
                extend(g, k, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k >= 1 {
        extend(g, k, &mut Vec::new(), &mut out);
    }
    out
}

/// `|graph_gadget(g, k)|` from gadget sizes alone.
pub fn encoded_length(g: &Graph, k: usize) -> usize {
    let w = width(g.n());
    let cng = k * k * (w + 4);
    let per_clique: usize = enumerate_k_cliques(g, k)
        .iter()
        .map(|c| {
            let clg = k * c
                .vertices()
                .iter()
                .map(|&v| 2 + g.degree(v) * (w + 2))
                .sum::<usize>();
            cng + 3 * clg + 6
        })
        .sum();
    6 * per_clique + 1
}

/// Token positions of one entry `| left l_i r_i right |`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub open: usize,
    pub left: Range<usize>,
    pub right: Range<usize>,
    pub close: usize,
}

/// The six blocks of an encoder-shaped string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub blocks: [Vec<Entry>; 6],
    pub e_pos: usize,
}

impl Layout {
    /// Entries per block.
    pub fn entries(&self) -> usize {
        self.blocks[0].len()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed encoding at token {at}: {msg}")]
pub struct MalformedEncoding {
    pub at: usize,
    pub msg: String,
}

fn malformed(at: usize, msg: impl Into<String>) -> MalformedEncoding {
    MalformedEncoding {
        at,
        msg: msg.into(),
    }
}

/// Splits a string into its six blocks of `| left l_i r_i right |` entries
/// with a single `e` between blocks 3 and 4. All blocks must have the same
/// number of entries.
pub fn parse_layout(s: &[Token]) -> Result<Layout, MalformedEncoding> {
    let mut blocks: [Vec<Entry>; 6] = Default::default();
    let mut e_pos = None;
    let mut current = 1;
    let mut pos = 0;
    let segment_end = |mut p: usize| {
        while p < s.len() && s[p].is_segment() {
            p += 1;
        }
        p
    };
    while pos < s.len() {
        match s[pos] {
            Token::E => {
                if e_pos.is_some() || current > 4 {
                    return Err(malformed(pos, "misplaced e"));
                }
                e_pos = Some(pos);
                current = 4;
                pos += 1;
            }
            Token::Pipe => {
                let open = pos;
                let left_end = segment_end(pos + 1);
                let block = s
                    .get(left_end)
                    .and_then(|t| t.l_index())
                    .ok_or_else(|| malformed(left_end, "expected l_i"))?;
                if (block <= 3) != e_pos.is_none() || block < current {
                    return Err(malformed(left_end, format!("block {block} out of order")));
                }
                current = block;
                if s.get(left_end + 1) != Some(&Token::r(block)) {
                    return Err(malformed(left_end + 1, format!("expected r{block}")));
                }
                let right_start = left_end + 2;
                let right_end = segment_end(right_start);
                if s.get(right_end) != Some(&Token::Pipe) {
                    return Err(malformed(right_end, "expected |"));
                }
                blocks[block - 1].push(Entry {
                    open,
                    left: open + 1..left_end,
                    right: right_start..right_end,
                    close: right_end,
                });
                pos = right_end + 1;
            }
            t => return Err(malformed(pos, format!("unexpected {t}"))),
        }
    }
    let e_pos = e_pos.ok_or_else(|| malformed(s.len(), "missing e"))?;
    let m = blocks[0].len();
    if let Some(b) = blocks.iter().position(|b| b.len() != m) {
        return Err(malformed(e_pos, format!("block {} has a different entry count", b + 1)));
    }
    Ok(Layout { blocks, e_pos })
}

/// Checks that every segment is `X § Y` with exactly `2k²` `#` in each of
/// `X` and `Y`.
pub fn check_segment_shape(s: &[Token], layout: &Layout, k: usize) -> Result<(), MalformedEncoding> {
    let want = 2 * k * k;
    for entry in layout.blocks.iter().flatten() {
        for seg in [&entry.left, &entry.right] {
            let body = &s[seg.clone()];
            let sects: Vec<usize> = body
                .iter()
                .enumerate()
                .filter(|(_, t)| **t == Token::Sect)
                .map(|(i, _)| i)
                .collect();
            let [mid] = sects[..] else {
                return Err(malformed(seg.start, "segment needs exactly one §"));
            };
            let hashes = |part: &[Token]| part.iter().filter(|t| **t == Token::Hash).count();
            if hashes(&body[..mid]) != want || hashes(&body[mid + 1..]) != want {
                return Err(malformed(seg.start, format!("segment halves need {want} #")));
            }
        }
    }
    Ok(())
}
