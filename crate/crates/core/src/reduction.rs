//! Deciding 6k-clique through Γ, and checking that decision against brute force.
//!
//! [`DecompositionRecognizer`] decides membership of an encoder-shaped string
//! in L(Γ) by searching for six anchor entries whose segments form the three
//! tuples that C must generate. [`build_derivation`] goes the other way and
//! turns a 6k-clique into an explicit derivation of the encoding.

use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::encoding::{
    alphabet, check_segment_shape, clique_list_gadget, clique_node_gadget, enumerate_k_cliques, graph_gadget,
    parse_layout, to_terminals, EncodingError, Graph, KClique, Layout,
    MalformedEncoding, Token,
};
use crate::gadgets::{build_c, PKind, ReductionGrammar};
use crate::program::{a_execution, CompiledTuple, Program, Tuple4, TupleDecider};
use crate::tag::{replay, Address, Derivation, TagError, Terminal};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("vertices {0:?} do not form a clique of the required size")]
    NotAClique(Vec<usize>),
    #[error("cannot split the clique: {0}")]
    SplitImpossible(String),
    #[error(transparent)]
    Malformed(#[from] MalformedEncoding),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Tag(#[from] TagError),
}

/// Some `m`-clique of `g`, ascending, found by extending ascending vertex
/// sets with common neighbors.
pub fn find_clique(g: &Graph, m: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, m: usize, current: &mut Vec<usize>, candidates: &[usize]) -> bool {
        if current.len() == m {
            return true;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if current.len() + candidates.len() - i < m {
                break;
            }
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(v, u))
                .collect();
            current.push(v);
            if go(g, m, current, &next) {
                return true;
            }
            current.pop();
        }
        false
    }
    let all: Vec<usize> = (1..=g.n()).collect();
    let mut current = Vec::with_capacity(m);
    go(g, m, &mut current, &all).then_some(current)
}

pub fn has_clique(g: &Graph, m: usize) -> bool {
    find_clique(g, m).is_some()
}

/// Where the two CNG segments sit in a tuple for C.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CngAt {
    /// positions 1 and 4
    Outer,
    /// positions 2 and 3
    Inner,
}

impl CngAt {
    fn centers(self) -> [usize; 2] {
        match self {
            CngAt::Outer => [0, 3],
            CngAt::Inner => [1, 2],
        }
    }
}

fn cross_adjacent(g: &Graph, a: &KClique, b: &KClique) -> bool {
    a.vertices()
        .iter()
        .all(|&u| b.vertices().iter().all(|&v| g.has_edge(u, v)))
}

/// The pairwise predicate behind C: each of the two centers forms a
/// 2k-clique with each of the other three cliques.
pub fn style_fast_check(g: &Graph, cliques: &[KClique], idx: [usize; 4], layout: CngAt) -> bool {
    layout.centers().iter().all(|&x| {
        (0..4)
            .filter(|&y| y != x)
            .all(|y| cross_adjacent(g, &cliques[idx[x]], &cliques[idx[y]]))
    })
}

/// The segments `X § CLG^R` for four cliques, with `X = CNG` at the
/// center positions and `X = CLG` elsewhere.
pub fn c_tuple(g: &Graph, k: usize, cliques: [&KClique; 4], layout: CngAt) -> Tuple4 {
    let centers = layout.centers();
    let parts = std::array::from_fn(|i| {
        let c = cliques[i];
        let clg = clique_list_gadget(g, c, k).expect("clique of size k");
        let mut seg = if centers.contains(&i) {
            clique_node_gadget(g, c, k).expect("clique of size k")
        } else {
            clg.clone()
        };
        seg.push(Token::Sect);
        seg.extend(clg.iter().rev());
        to_terminals(&seg)
    });
    Tuple4(parts)
}

/// Entry indices `c1..c6` (0-based), one per block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Anchors(pub [usize; 6]);

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// For each style: the (block, side) of its four positions, and which
/// anchor each position reads. Styles are blue, red, purple.
const STYLES: [[(usize, Side); 4]; 3] = [
    [(1, Side::Left), (3, Side::Right), (4, Side::Left), (6, Side::Right)],
    [(1, Side::Right), (2, Side::Left), (5, Side::Right), (6, Side::Left)],
    [(2, Side::Right), (3, Side::Left), (4, Side::Right), (5, Side::Left)],
];

/// Anchors are assigned in this order; each style's pairs are checked as
/// soon as both of their anchors are set, and the full styles once all
/// six are.
const ORDER: [usize; 6] = [0, 5, 2, 3, 1, 4];

/// Membership in L(Γ) for encoder-shaped strings.
pub struct DecompositionRecognizer {
    decider: TupleDecider,
}

impl Default for DecompositionRecognizer {
    fn default() -> Self {
        Self::new()
    }
}

type Segments = [[Vec<Option<Vec<u16>>>; 4]; 3];

struct Search<'a> {
    decider: &'a TupleDecider,
    segs: Segments,
    m: usize,
    pair_memo: FxHashMap<(usize, usize, usize, usize, usize), bool>,
    full_memo: FxHashMap<(usize, [usize; 4]), bool>,
}

impl Search<'_> {
    fn pair(&mut self, style: usize, da: usize, db: usize, ia: usize, ib: usize) -> bool {
        if let Some(&hit) = self.pair_memo.get(&(style, da, db, ia, ib)) {
            return hit;
        }
        let ok = match (&self.segs[style][da][ia], &self.segs[style][db][ib]) {
            (Some(a), Some(b)) => self.decider.pair_member(da, db, a, b),
            _ => false,
        };
        self.pair_memo.insert((style, da, db, ia, ib), ok);
        ok
    }

    fn full(&mut self, style: usize, idx: [usize; 4]) -> bool {
        if let Some(&hit) = self.full_memo.get(&(style, idx)) {
            return hit;
        }
        let segs = &self.segs[style];
        let parts: Option<[Vec<u16>; 4]> = (0..4)
            .map(|d| segs[d][idx[d]].clone())
            .collect::<Option<Vec<_>>>()
            .map(|v| v.try_into().expect("four parts"));
        let ok = parts.is_some_and(|p| {
            self.decider
                .contains_compiled(&CompiledTuple::from_parts(p))
        });
        self.full_memo.insert((style, idx), ok);
        ok
    }

    fn consistent(&mut self, assigned: &[Option<usize>; 6], var: usize) -> bool {
        for style in 0..3 {
            let vars = style_vars(style);
            let Some(dv) = vars.iter().position(|&v| v == var) else {
                continue;
            };
            for (d, &other) in vars.iter().enumerate() {
                if d == dv {
                    continue;
                }
                let (Some(x), Some(y)) = (assigned[var], assigned[other]) else {
                    continue;
                };
                let (da, db, ia, ib) = if dv < d { (dv, d, x, y) } else { (d, dv, y, x) };
                if !self.pair(style, da, db, ia, ib) {
                    return false;
                }
            }
        }
        true
    }

    fn assign(&mut self, level: usize, assigned: &mut [Option<usize>; 6]) -> bool {
        if level == ORDER.len() {
            return (0..3).all(|style| {
                let idx = style_vars(style).map(|v| assigned[v].expect("assigned"));
                self.full(style, idx)
            });
        }
        let var = ORDER[level];
        for x in 0..self.m {
            assigned[var] = Some(x);
            if self.consistent(assigned, var) && self.assign(level + 1, assigned) {
                return true;
            }
        }
        assigned[var] = None;
        false
    }
}

/// Anchor (0-based `c_i - 1`) read by each position of a style.
fn style_vars(style: usize) -> [usize; 4] {
    STYLES[style].map(|(block, _)| block - 1)
}

impl DecompositionRecognizer {
    pub fn new() -> Self {
        Self::for_program(&build_c())
    }

    /// Uses `c` in place of the standard C program.
    pub fn for_program(c: &Program) -> Self {
        DecompositionRecognizer {
            decider: TupleDecider::new(c),
        }
    }

    /// Parses and shape-checks `s`.
    pub fn layout(&self, s: &[Token], k: usize) -> Result<Layout, MalformedEncoding> {
        let layout = parse_layout(s)?;
        check_segment_shape(s, &layout, k)?;
        Ok(layout)
    }

    pub fn recognize(&self, s: &[Token], k: usize) -> Result<bool, MalformedEncoding> {
        Ok(self.witness(s, k)?.is_some())
    }

    /// Anchors of an accepting decomposition, if any.
    pub fn witness(&self, s: &[Token], k: usize) -> Result<Option<Anchors>, MalformedEncoding> {
        let layout = self.layout(s, k)?;
        let m = layout.entries();
        let segs: Segments = std::array::from_fn(|style| {
            std::array::from_fn(|d| {
                let (block, side) = STYLES[style][d];
                layout.blocks[block - 1]
                    .iter()
                    .map(|e| {
                        let range = match side {
                            Side::Left => e.left.clone(),
                            Side::Right => e.right.clone(),
                        };
                        self.decider.compile_part(&to_terminals(&s[range]))
                    })
                    .collect()
            })
        });
        let mut search = Search {
            decider: &self.decider,
            segs,
            m,
            pair_memo: FxHashMap::default(),
            full_memo: FxHashMap::default(),
        };
        let mut assigned = [None; 6];
        Ok(search
            .assign(0, &mut assigned)
            .then(|| Anchors(assigned.map(|a| a.expect("all assigned")))))
    }
}

/// One-shot [`DecompositionRecognizer::recognize`].
pub fn recognize_decomposition(s: &[Token], k: usize) -> Result<bool, MalformedEncoding> {
    DecompositionRecognizer::new().recognize(s, k)
}

fn validate_clique(g: &Graph, k: usize, clique: &[usize]) -> Result<Vec<usize>, ReductionError> {
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let ok = k >= 1
        && sorted.len() == 6 * k
        && clique.len() == 6 * k
        && KClique::new(g, sorted.clone()).is_ok();
    if ok {
        Ok(sorted)
    } else {
        Err(ReductionError::NotAClique(clique.to_vec()))
    }
}

/// A derivation in Γ of `graph_gadget(g, k)` from a 6k-clique.
///
/// The clique is cut into six ascending k-cliques `C1..C6`; each P program
/// runs over the segments of its three anchored entries, with its A part
/// absorbing the text between them.
pub fn build_derivation(
    rg: &ReductionGrammar,
    g: &Graph,
    k: usize,
    clique: &[usize],
) -> Result<Derivation, ReductionError> {
    let sorted = validate_clique(g, k, clique)?;
    let cliques = enumerate_k_cliques(g, k);
    let mut anchors = [0; 6];
    for (i, chunk) in sorted.chunks(k).enumerate() {
        anchors[i] = cliques
            .iter()
            .position(|c| c.vertices() == chunk)
            .ok_or_else(|| ReductionError::SplitImpossible(format!("{chunk:?} is not listed")))?;
    }
    let s = graph_gadget(g, k);
    let layout = parse_layout(&s)?;
    derivation_for_anchors(rg, &s, &layout, Anchors(anchors))
}

/// A derivation of `s` whose three C executions read the anchored entries.
pub fn derivation_for_anchors(
    rg: &ReductionGrammar,
    s: &[Token],
    layout: &Layout,
    anchors: Anchors,
) -> Result<Derivation, ReductionError> {
    let entry = |block: usize| &layout.blocks[block - 1][anchors.0[block - 1]];
    let text = |r: std::ops::Range<usize>| to_terminals(&s[r]);
    let seg = |block: usize, side: Side| {
        let e = entry(block);
        text(match side {
            Side::Left => e.left.clone(),
            Side::Right => e.right.clone(),
        })
    };
    let e = layout.e_pos;

    let mut steps = Vec::new();
    let mut p1346_out = Address::root();
    for kind in [PKind::P1346, PKind::P2345, PKind::P1256] {
        let style = match kind {
            PKind::P1346 => 0,
            PKind::P1256 => 1,
            PKind::P2345 => 2,
        };
        let c_segs: [Vec<Terminal>; 4] = std::array::from_fn(|d| {
            let (block, side) = STYLES[style][d];
            seg(block, side)
        });
        let junk: [Vec<Terminal>; 4] = match kind {
            PKind::P1346 => [
                text(0..entry(1).open),
                text(entry(3).close + 1..e),
                text(e + 1..entry(4).open),
                text(entry(6).close + 1..s.len()),
            ],
            PKind::P1256 => [
                text(entry(1).close + 1..entry(2).open),
                Vec::new(),
                text(entry(5).close + 1..entry(6).open),
                Vec::new(),
            ],
            PKind::P2345 => [
                text(entry(2).close + 1..entry(3).open),
                Vec::new(),
                text(entry(4).close + 1..entry(5).open),
                Vec::new(),
            ],
        };
        let chain = program_chain(rg.program(kind), kind, &c_segs, junk)?;
        let start = match kind {
            PKind::P1346 => Address(vec![0]),
            PKind::P2345 => p1346_out.join(&Address(vec![0, 0])),
            PKind::P1256 => p1346_out.join(&Address(vec![0])),
        };
        let mut at = start;
        let p = rg.program(kind);
        for tree in chain {
            steps.push((at.clone(), rg.aux_id(kind, tree)));
            at = at.join(p.trees()[tree].marked_at());
        }
        if kind == PKind::P1346 {
            steps.push((at.clone(), rg.triple));
            p1346_out = at;
        }
    }
    Ok(Derivation { initial: 0, steps })
}

/// Tree indices of one execution of a P program whose C part reads
/// `c_segs` and whose A part writes `junk`.
fn program_chain(
    p: &Program,
    kind: PKind,
    c_segs: &[Vec<Terminal>; 4],
    junk: [Vec<Terminal>; 4],
) -> Result<Vec<usize>, ReductionError> {
    let sect = Token::Sect.terminal();
    // C = CCa·W(§)·CCb: positions 1 and 3 read `a § b`, positions 2 and 4
    // read `b § a` since later trees prepend there.
    let mut cca: [Vec<Terminal>; 4] = Default::default();
    let mut ccb: [Vec<Terminal>; 4] = Default::default();
    for d in 0..4 {
        let segment = &c_segs[d];
        let mid = segment
            .iter()
            .position(|t| *t == sect)
            .ok_or_else(|| ReductionError::SplitImpossible("segment without §".into()))?;
        let (u, w) = (segment[..mid].to_vec(), segment[mid + 1..].to_vec());
        if d % 2 == 0 {
            cca[d] = u;
            ccb[d] = w;
        } else {
            ccb[d] = u;
            cca[d] = w;
        }
    }
    let c = kind.c_part();
    let mut part_tuples: Vec<(usize, Tuple4)> = vec![(c, Tuple4(cca)), (c + 2, Tuple4(ccb))];
    let a_part = if kind == PKind::P1346 { 0 } else { 5 };
    part_tuples.push((a_part, Tuple4(junk)));

    let mut chain = Vec::new();
    for (i, part) in p.parts().iter().enumerate() {
        let sub = p.part_program(i);
        let rejected = || ReductionError::SplitImpossible(format!("{} rejects its part", part.name));
        let local = match part_tuples.iter().find(|(j, _)| *j == i) {
            Some((j, t)) if *j == a_part => a_execution(&alphabet(), t).ok_or_else(rejected)?,
            Some((_, t)) => TupleDecider::new(&sub).witness(t).ok_or_else(rejected)?,
            None => vec![0],
        };
        chain.extend(local.into_iter().map(|t| part.trees.start + t));
    }
    Ok(chain)
}

/// Outcome of checking one graph end to end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub edges: usize,
    pub k: usize,
    pub oracle_result: bool,
    pub decomp_result: bool,
    /// Present iff the oracle found a clique: whether the replayed
    /// derivation yields the encoding exactly.
    pub constructive_result: Option<bool>,
    pub anchors: Option<Anchors>,
    /// For accepted strings: whether the anchored cliques form a 6k-clique.
    pub witness_valid: Option<bool>,
    pub encoded_length: usize,
    pub timings: PhaseTimings,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhaseTimings {
    pub oracle: Duration,
    pub encode: Duration,
    pub decomp: Duration,
    pub constructive: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.oracle_result == self.decomp_result
            && self.constructive_result.is_some() == self.oracle_result
            && self.constructive_result != Some(false)
            && self.witness_valid != Some(false)
    }
}

/// Shared, graph-independent machinery for [`verify_instance`].
pub struct Verifier {
    pub grammar: ReductionGrammar,
    pub decomposer: DecompositionRecognizer,
}

impl Default for Verifier {
    fn default() -> Self {
        Self::new()
    }
}

impl Verifier {
    pub fn new() -> Self {
        Verifier {
            grammar: crate::gadgets::build_reduction_grammar(),
            decomposer: DecompositionRecognizer::new(),
        }
    }

    pub fn verify(&self, g: &Graph, k: usize) -> Result<VerificationReport, ReductionError> {
        let mut timings = PhaseTimings::default();

        let t = Instant::now();
        let clique = find_clique(g, 6 * k);
        timings.oracle = t.elapsed();

        let t = Instant::now();
        let s = graph_gadget(g, k);
        timings.encode = t.elapsed();

        let t = Instant::now();
        let anchors = self.decomposer.witness(&s, k)?;
        timings.decomp = t.elapsed();
        let cliques = enumerate_k_cliques(g, k);
        let witness_valid = anchors.map(|a| {
            let mut union: Vec<usize> = a
                .0
                .iter()
                .flat_map(|&i| cliques[i].vertices().to_vec())
                .collect();
            union.sort_unstable();
            union.dedup();
            union.len() == 6 * k && KClique::new(g, union).is_ok()
        });

        let t = Instant::now();
        let constructive_result = match &clique {
            Some(c) => {
                let d = build_derivation(&self.grammar, g, k, c)?;
                let tree = replay(&self.grammar.grammar, &d)?;
                Some(tree.marked_addresses().is_empty() && tree.yield_terminals() == to_terminals(&s))
            }
            None => None,
        };
        timings.constructive = t.elapsed();

        Ok(VerificationReport {
            n: g.n(),
            edges: g.edge_count(),
            k,
            oracle_result: clique.is_some(),
            decomp_result: anchors.is_some(),
            constructive_result,
            anchors,
            witness_valid,
            encoded_length: s.len(),
            timings,
        })
    }
}

/// One-shot [`Verifier::verify`].
pub fn verify_instance(g: &Graph, k: usize) -> Result<VerificationReport, ReductionError> {
    Verifier::new().verify(g, k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Planted,
    CliqueFree,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceKind::Planted => "planted",
            InstanceKind::CliqueFree => "clique_free",
        })
    }
}

/// A random graph with a 6k-clique on random vertices.
pub fn planted_instance(rng: &mut impl Rng, n: usize, k: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("valid edge");
            }
        }
    }
    let mut members: Vec<usize> = sample(rng, n, 6 * k).into_iter().map(|i| i + 1).collect();
    members.sort_unstable();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            g.add_edge(u, v).expect("valid edge");
        }
    }
    g
}

/// A planted instance with edges removed until the oracle finds no
/// 6k-clique; each removal deletes a random edge of a found clique.
pub fn clique_free_instance(rng: &mut impl Rng, n: usize, k: usize, p: f64) -> Graph {
    let mut g = planted_instance(rng, n, k, p);
    while let Some(c) = find_clique(&g, 6 * k) {
        let i = rng.gen_range(0..c.len());
        let mut j = rng.gen_range(0..c.len() - 1);
        if j >= i {
            j += 1;
        }
        g.remove_edge(c[i], c[j]);
    }
    g
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    pub seed: u64,
    pub n_range: RangeInclusive<usize>,
    pub k: usize,
    pub trials: usize,
    /// Noise edge probability.
    pub density: f64,
}

impl CampaignConfig {
    pub fn new(seed: u64, n_range: RangeInclusive<usize>, k: usize, trials: usize) -> Self {
        CampaignConfig {
            seed,
            n_range,
            k,
            trials,
            density: 0.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: usize,
    pub kind: InstanceKind,
    pub graph: Graph,
    pub report: VerificationReport,
}

/// Everything needed to rerun a failing trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproBundle {
    pub trial: usize,
    pub graph_text: String,
    pub command: String,
}

impl ReproBundle {
    /// Writes `trial<N>.graph` and `trial<N>.cmd` into `dir`.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("trial{}.graph", self.trial)), &self.graph_text)?;
        std::fs::write(dir.join(format!("trial{}.cmd", self.trial)), format!("{}\n", self.command))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignSummary {
    pub config: CampaignConfig,
    pub records: Vec<TrialRecord>,
    pub failure: Option<ReproBundle>,
}

impl CampaignSummary {
    pub fn disagreements(&self) -> usize {
        self.records.iter().filter(|r| !r.report.passed()).count()
    }

    pub fn positives(&self) -> usize {
        self.records.iter().filter(|r| r.report.oracle_result).count()
    }

    /// Line-oriented `key=value` report: one block per trial, then a
    /// summary block. Timings are left out so that equal seeds give equal
    /// bytes.
    pub fn report(&self) -> String {
        let mut out = String::new();
        let opt = |b: Option<bool>| b.map_or("none".to_string(), |b| b.to_string());
        for r in &self.records {
            let rep = &r.report;
            out.push_str(&format!("trial={}\n", r.trial));
            out.push_str(&format!("kind={}\n", r.kind));
            out.push_str(&format!("n={}\n", rep.n));
            out.push_str(&format!("edges={}\n", rep.edges));
            out.push_str(&format!("k={}\n", rep.k));
            out.push_str(&format!("encoded_length={}\n", rep.encoded_length));
            out.push_str(&format!("oracle={}\n", rep.oracle_result));
            out.push_str(&format!("decomp={}\n", rep.decomp_result));
            out.push_str(&format!("constructive={}\n", opt(rep.constructive_result)));
            out.push_str(&format!("witness_valid={}\n", opt(rep.witness_valid)));
            out.push_str(&format!("passed={}\n\n", rep.passed()));
        }
        let c = &self.config;
        out.push_str(&format!("seed={}\n", c.seed));
        out.push_str(&format!("n_range={}..={}\n", c.n_range.start(), c.n_range.end()));
        out.push_str(&format!("k={}\n", c.k));
        out.push_str(&format!("trials={}\n", self.records.len()));
        out.push_str(&format!("positives={}\n", self.positives()));
        out.push_str(&format!("negatives={}\n", self.records.len() - self.positives()));
        out.push_str(&format!("disagreements={}\n", self.disagreements()));
        if let Some(f) = &self.failure {
            out.push_str(&format!("failed_trial={}\n", f.trial));
            out.push_str(&format!("repro_command={}\n", f.command));
        }
        out
    }
}

/// Seeded trials alternating planted and clique-free graphs, stopping at
/// the first trial whose report does not pass.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignSummary, ReductionError> {
    run_campaign_with(&Verifier::new(), config)
}

pub fn run_campaign_with(
    verifier: &Verifier,
    config: &CampaignConfig,
) -> Result<CampaignSummary, ReductionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut summary = CampaignSummary {
        config: config.clone(),
        records: Vec::new(),
        failure: None,
    };
    let k = config.k;
    for trial in 0..config.trials {
        let n = rng.gen_range(config.n_range.clone()).max(6 * k);
        let kind = if trial % 2 == 0 {
            InstanceKind::Planted
        } else {
            InstanceKind::CliqueFree
        };
        let graph = match kind {
            InstanceKind::Planted => planted_instance(&mut rng, n, k, config.density),
            InstanceKind::CliqueFree => clique_free_instance(&mut rng, n, k, config.density),
        };
        let report = verifier.verify(&graph, k)?;
        let passed = report.passed();
        if !passed {
            summary.failure = Some(ReproBundle {
                trial,
                graph_text: graph.to_text(),
                command: format!(
                    "tagclique verify --n {} --k {} --trials {} --seed {}",
                    n,
                    k,
                    trial + 1,
                    config.seed
                ),
            });
        }
        summary.records.push(TrialRecord {
            trial,
            kind,
            graph,
            report,
        });
        if !passed {
            break;
        }
    }
    Ok(summary)
}
