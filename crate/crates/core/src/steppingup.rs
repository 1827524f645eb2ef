//! The 4-colouring of triples of binary strings stepped up from a red/blue
//! colouring of pairs, and a search for monochromatic copies of a pattern in
//! it (or in any edge colouring).

use std::cmp::Ordering;
use std::io::{Read, Write};

use num_bigint::BigUint;
use rand::seq::index;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Vertex};
use crate::oracle;
use crate::reduction::{EdgeColouring, ExplicitColouring};
use crate::rng;

/// Strings of length up to this are materialised as vertex ids.
pub const MAX_MATERIALISED_M: u32 = 24;

/// `(gamma_1, ..., gamma_m)` stored as its rank `b = sum gamma_i 2^(i-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StringRepr", into = "StringRepr")]
pub struct BinaryString {
    b: u64,
    m: u32,
}

#[derive(Serialize, Deserialize)]
struct StringRepr {
    /// `gamma_1` first.
    bits: Vec<u8>,
}

impl TryFrom<StringRepr> for BinaryString {
    type Error = Error;

    fn try_from(r: StringRepr) -> Result<Self> {
        BinaryString::from_bits(&r.bits)
    }
}

impl From<BinaryString> for StringRepr {
    fn from(s: BinaryString) -> Self {
        StringRepr { bits: s.bits() }
    }
}

impl BinaryString {
    pub fn from_rank(b: u64, m: u32) -> Result<Self> {
        if m == 0 || m > 63 || b >> m != 0 {
            return Err(Error::InvalidParameter(format!("rank {b} does not fit {m} bits")));
        }
        Ok(BinaryString { b, m })
    }

    /// From `gamma_1, ..., gamma_m`.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.iter().any(|&g| g > 1) {
            return Err(Error::InvalidParameter("bits must be 0 or 1".into()));
        }
        let b = bits.iter().enumerate().map(|(i, &g)| u64::from(g) << i).sum();
        Self::from_rank(b, bits.len() as u32)
    }

    pub fn rank(&self) -> u64 {
        self.b
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `gamma_i`, one-based.
    pub fn gamma(&self, i: u32) -> u8 {
        ((self.b >> (i - 1)) & 1) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (1..=self.m).map(|i| self.gamma(i)).collect()
    }
}

fn same_length(a: &BinaryString, b: &BinaryString) -> Result<()> {
    if a.m != b.m {
        return Err(Error::InvalidParameter(format!("strings of lengths {} and {}", a.m, b.m)));
    }
    if a.b == b.b {
        return Err(Error::InvalidParameter("strings are equal".into()));
    }
    Ok(())
}

/// The largest coordinate (one-based) at which two ranks differ.
pub fn delta_rank(a: u64, b: u64) -> u32 {
    64 - (a ^ b).leading_zeros()
}

/// The largest coordinate (one-based) at which the strings differ.
pub fn delta(a: &BinaryString, b: &BinaryString) -> Result<u32> {
    same_length(a, b)?;
    Ok(delta_rank(a.b, b.b))
}

/// Compares by rank.
pub fn string_order(a: &BinaryString, b: &BinaryString) -> Result<Ordering> {
    same_length(a, b)?;
    Ok(a.b.cmp(&b.b))
}

/// Compares by the coordinate at `delta`: the string with 0 there is smaller.
pub fn string_order_by_delta(a: &BinaryString, b: &BinaryString) -> Result<Ordering> {
    let d = delta(a, b)?;
    Ok(if a.gamma(d) == 0 { Ordering::Less } else { Ordering::Greater })
}

/// Whether `delta(first, last)` is the largest consecutive delta.
pub fn delta_max_property(chain: &[BinaryString]) -> Result<bool> {
    if chain.len() < 2 {
        return Err(Error::InvalidParameter("a chain needs at least two strings".into()));
    }
    let mut best = 0;
    for w in chain.windows(2) {
        if string_order(&w[0], &w[1])? != Ordering::Less {
            return Err(Error::InvalidParameter("chain is not strictly increasing".into()));
        }
        best = best.max(delta(&w[0], &w[1])?);
    }
    Ok(delta(&chain[0], &chain[chain.len() - 1])? == best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseProvenance {
    Pentagon,
    Paley,
    Random { seed: u64 },
    File { path: String },
    Explicit,
}

/// A red/blue colouring of the pairs of `0..m`. Vertex `i` stands for
/// coordinate `i + 1` of the binary strings.
#[derive(Clone, Debug, Serialize)]
pub struct BaseColouring {
    pub m: usize,
    pub provenance: BaseProvenance,
    /// Largest red and blue cliques, when verified.
    pub max_red_clique: Option<usize>,
    pub max_blue_clique: Option<usize>,
    #[serde(skip)]
    red: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairColour {
    Red,
    Blue,
}

pub const DEFAULT_CLIQUE_NODE_BUDGET: u64 = 50_000_000;

impl BaseColouring {
    fn index(m: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * m + j
    }

    pub fn from_fn(m: usize, provenance: BaseProvenance, red: impl Fn(usize, usize) -> bool) -> Self {
        let mut table = vec![false; m * m];
        for i in 0..m {
            for j in i + 1..m {
                table[Self::index(m, i, j)] = red(i, j);
            }
        }
        let mut c = BaseColouring {
            m,
            provenance,
            max_red_clique: None,
            max_blue_clique: None,
            red: table,
        };
        c.verify_cliques(DEFAULT_CLIQUE_NODE_BUDGET);
        c
    }

    /// Red 5-cycle `{i, i+1 mod 5}`, blue complement.
    pub fn pentagon() -> Self {
        Self::from_fn(5, BaseProvenance::Pentagon, |i, j| matches!((j + 5 - i) % 5, 1 | 4))
    }

    /// Red when the difference is a nonzero square mod the prime `m = 1 mod 4`.
    pub fn paley(m: usize) -> Result<Self> {
        let prime = m >= 5 && (2..m).take_while(|d| d * d <= m).all(|d| m % d != 0);
        if !prime || m % 4 != 1 {
            return Err(Error::InvalidParameter(format!("Paley colouring needs a prime = 1 mod 4, got {m}")));
        }
        let squares: Vec<bool> = {
            let mut s = vec![false; m];
            for x in 1..m {
                s[x * x % m] = true;
            }
            s
        };
        Ok(Self::from_fn(m, BaseProvenance::Paley, |i, j| squares[(j + m - i) % m]))
    }

    pub fn random(m: usize, seed: u64) -> Self {
        let mut r = rng::seeded(seed);
        let mut red = vec![false; m * m];
        for i in 0..m {
            for j in i + 1..m {
                red[Self::index(m, i, j)] = r.gen();
            }
        }
        Self::from_fn(m, BaseProvenance::Random { seed }, |i, j| red[Self::index(m, i, j)])
    }

    pub fn colour(&self, i: usize, j: usize) -> PairColour {
        if self.red[Self::index(self.m, i, j)] {
            PairColour::Red
        } else {
            PairColour::Blue
        }
    }

    pub fn is_red(&self, i: usize, j: usize) -> bool {
        self.red[Self::index(self.m, i, j)]
    }

    /// Rows `i,j,red|blue` with `i < j`, no header.
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
        for i in 0..self.m {
            for j in i + 1..self.m {
                let c = if self.is_red(i, j) { "red" } else { "blue" };
                out.write_record([i.to_string(), j.to_string(), c.to_string()])
                    .map_err(|e| Error::Parse(e.to_string()))?;
            }
        }
        out.flush().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }

    /// Reads rows `i,j,red|blue`. `m` defaults to one more than the largest index.
    pub fn read_csv(r: impl Read, m: Option<usize>, path: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(r);
        for rec in reader.records() {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            if rec.len() != 3 {
                return Err(Error::Parse(format!("expected 3 fields, got {}", rec.len())));
            }
            let i: usize = rec[0].parse().map_err(|_| Error::Parse(format!("bad index {:?}", &rec[0])))?;
            let j: usize = rec[1].parse().map_err(|_| Error::Parse(format!("bad index {:?}", &rec[1])))?;
            let red = match &rec[2] {
                "red" => true,
                "blue" => false,
                other => return Err(Error::Parse(format!("colour must be red or blue, got {other:?}"))),
            };
            if i == j {
                return Err(Error::Parse(format!("loop {i},{j}")));
            }
            rows.push((i.min(j), i.max(j), red));
        }
        let m = m.unwrap_or_else(|| rows.iter().map(|r| r.1 + 1).max().unwrap_or(0));
        let mut table = vec![None; m * m];
        for (i, j, red) in rows {
            if j >= m {
                return Err(Error::Parse(format!("index {j} out of range for m = {m}")));
            }
            if table[Self::index(m, i, j)].replace(red).is_some() {
                return Err(Error::Parse(format!("pair {i},{j} listed twice")));
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                if table[Self::index(m, i, j)].is_none() {
                    return Err(Error::Parse(format!("pair {i},{j} has no colour")));
                }
            }
        }
        Ok(Self::from_fn(m, BaseProvenance::File { path: path.into() }, |i, j| table[Self::index(m, i, j)] == Some(true)))
    }

    /// Computes the largest clique of each colour when `m <= 64` and the
    /// search fits `budget`; otherwise leaves them unset.
    pub fn verify_cliques(&mut self, budget: u64) {
        if self.m > 64 {
            return;
        }
        let masks = |want: bool| -> Vec<u64> {
            (0..self.m)
                .map(|i| {
                    (0..self.m)
                        .filter(|&j| j != i && self.is_red(i, j) == want)
                        .fold(0u64, |acc, j| acc | 1 << j)
                })
                .collect()
        };
        let all = if self.m == 64 { u64::MAX } else { (1u64 << self.m) - 1 };
        let (red, blue) = (masks(true), masks(false));
        self.max_red_clique = max_clique(&red, all, budget);
        self.max_blue_clique = max_clique(&blue, all, budget);
    }

    /// As a 2-colouring of `K_m` with red = colour 0.
    pub fn to_graph_colouring(&self) -> Result<ExplicitColouring> {
        ExplicitColouring::from_fn(2, self.m, 2, |s| u8::from(!self.is_red(s[0], s[1])))
    }
}

fn max_clique(adj: &[u64], all: u64, budget: u64) -> Option<usize> {
    fn rec(adj: &[u64], size: usize, cand: u64, best: &mut usize, nodes: &mut u64, budget: u64) -> bool {
        if cand == 0 {
            *best = (*best).max(size);
            return true;
        }
        if size + cand.count_ones() as usize <= *best {
            return true;
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                break;
            }
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !rec(adj, size + 1, rest & adj[v], best, nodes, budget) {
                return false;
            }
        }
        *best = (*best).max(size);
        true
    }
    let mut best = 0;
    let mut nodes = 0;
    rec(adj, 0, all, &mut best, &mut nodes, budget).then_some(best)
}

/// The stepped-up colouring of triples of `{0,1}^m`. Vertices are ranks.
#[derive(Clone, Debug)]
pub struct StepUpColouring {
    pub base: BaseColouring,
}

pub const C1: u8 = 0;
pub const C2: u8 = 1;
pub const C3: u8 = 2;
pub const C4: u8 = 3;

impl StepUpColouring {
    pub fn new(base: BaseColouring) -> Result<Self> {
        if base.m < 2 || base.m > 63 {
            return Err(Error::InvalidParameter(format!("base size {} outside 2..=63", base.m)));
        }
        Ok(StepUpColouring { base })
    }

    pub fn m(&self) -> u32 {
        self.base.m as u32
    }

    fn colour_of_ranks(&self, a: u64, b: u64, c: u64) -> u8 {
        let d1 = delta_rank(a, b);
        let d2 = delta_rank(b, c);
        let red = self.base.is_red(d1 as usize - 1, d2 as usize - 1);
        match (red, d1 < d2) {
            (true, true) => C1,
            (true, false) => C2,
            (false, true) => C3,
            (false, false) => C4,
        }
    }
}

impl EdgeColouring for StepUpColouring {
    fn uniformity(&self) -> usize {
        3
    }

    fn n_vertices(&self) -> usize {
        1usize << self.m().min(MAX_MATERIALISED_M)
    }

    fn colours(&self) -> u8 {
        4
    }

    fn colour(&self, subset: &[Vertex]) -> u8 {
        self.colour_of_ranks(subset[0] as u64, subset[1] as u64, subset[2] as u64)
    }
}

/// Colour (0..4 for C1..C4) of a triple of distinct strings, in any order.
pub fn stepup_colour(su: &StepUpColouring, triple: [BinaryString; 3]) -> Result<u8> {
    let mut t = triple;
    for s in &t {
        if s.m != su.m() {
            return Err(Error::InvalidParameter(format!("string of length {} for m = {}", s.m, su.m())));
        }
    }
    t.sort_by_key(|s| s.b);
    if t[0].b == t[1].b || t[1].b == t[2].b {
        return Err(Error::InvalidParameter("triple has repeated strings".into()));
    }
    Ok(su.colour_of_ranks(t[0].b, t[1].b, t[2].b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchResult {
    None,
    Counterexample,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub mode: SearchMode,
    pub result: SearchResult,
    /// Image of each pattern vertex.
    pub copy: Vec<Vertex>,
    pub colour: Option<u8>,
    pub nodes: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    /// Exhaustive search ran out of budget and fell back to sampling.
    pub downgraded: bool,
    /// The counterexample passed the independent checker.
    pub reverified: bool,
}

#[derive(Clone, Debug)]
pub struct CopySearchConfig {
    pub node_budget: u64,
    pub samples: u64,
    pub seed: u64,
    /// Restrict to these colours (all when `None`).
    pub colours: Option<Vec<u8>>,
}

impl Default for CopySearchConfig {
    fn default() -> Self {
        CopySearchConfig {
            node_budget: 2_000_000_000,
            samples: 10_000,
            seed: 0,
            colours: None,
        }
    }
}

/// Pattern vertices reordered so that each new vertex closes as many edges
/// as possible, with the edges each placement closes.
struct SearchPlan {
    order: Vec<Vertex>,
    closing: Vec<Vec<Vec<usize>>>,
}

fn plan(pattern: &Hypergraph) -> SearchPlan {
    let n = pattern.n_vertices();
    let degrees = pattern.degrees();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |v: usize| {
            let closed = pattern
                .edges()
                .iter()
                .filter(|e| e.contains(&v) && e.iter().all(|&u| u == v || placed[u]))
                .count();
            (closed, degrees[v])
        };
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| score(a).cmp(&score(b)).then(b.cmp(&a)))
            .unwrap();
        placed[v] = true;
        order.push(v);
    }
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            p[v] = i;
        }
        p
    };
    let mut closing = vec![Vec::new(); n];
    for e in pattern.edges() {
        let last = e.iter().map(|&v| pos[v]).max().unwrap();
        closing[last].push(e.iter().map(|&v| pos[v]).collect());
    }
    SearchPlan { order, closing }
}

struct CopyWalk<'a> {
    c: &'a dyn EdgeColouring,
    plan: &'a SearchPlan,
    hosts: &'a [Vertex],
    colour: u8,
    img: Vec<Vertex>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    probe: Vec<Vertex>,
}

impl CopyWalk<'_> {
    fn run(&mut self, depth: usize) -> Option<bool> {
        if depth == self.img.len() {
            return Some(true);
        }
        for hi in 0..self.hosts.len() {
            if self.used[hi] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.img[depth] = self.hosts[hi];
            let ok = self.plan.closing[depth].iter().all(|e| {
                self.probe.clear();
                self.probe.extend(e.iter().map(|&p| self.img[p]));
                self.probe.sort_unstable();
                self.c.colour(&self.probe) == self.colour
            });
            if ok {
                self.used[hi] = true;
                let r = self.run(depth + 1);
                self.used[hi] = false;
                if r != Some(false) {
                    return r;
                }
            }
        }
        Some(false)
    }
}

fn search_from_root(
    c: &dyn EdgeColouring,
    plan: &SearchPlan,
    hosts: &[Vertex],
    colour: u8,
    root: usize,
    budget: u64,
) -> (Option<Option<Vec<Vertex>>>, u64) {
    let n = plan.order.len();
    let mut walk = CopyWalk {
        c,
        plan,
        hosts,
        colour,
        img: vec![0; n],
        used: vec![false; hosts.len()],
        nodes: 1,
        budget,
        probe: Vec::with_capacity(c.uniformity()),
    };
    walk.img[0] = hosts[root];
    if !plan.closing[0].is_empty() {
        // a single-vertex edge cannot occur for uniformity >= 2
        return (Some(None), 1);
    }
    walk.used[root] = true;
    let r = if n == 1 { Some(true) } else { walk.run(1) };
    let out = r.map(|found| {
        found.then(|| {
            let mut copy = vec![0; n];
            for (i, &v) in plan.order.iter().enumerate() {
                copy[v] = walk.img[i];
            }
            copy
        })
    });
    (out, walk.nodes)
}

/// Outcome of a search over a set of host vertices.
enum Scan {
    Found(u8, Vec<Vertex>, u64),
    None(u64),
    OutOfBudget(u64),
}

fn scan(c: &dyn EdgeColouring, pattern: &Hypergraph, hosts: &[Vertex], colours: &[u8], budget: u64, parallel: bool) -> Scan {
    if pattern.n_vertices() == 0 {
        return match colours.first() {
            Some(&col) => Scan::Found(col, Vec::new(), 0),
            None => Scan::None(0),
        };
    }
    if hosts.len() < pattern.n_vertices() {
        return Scan::None(0);
    }
    let p = plan(pattern);
    let jobs: Vec<(u8, usize)> = colours.iter().flat_map(|&col| (0..hosts.len()).map(move |r| (col, r))).collect();
    let share = (budget / jobs.len().max(1) as u64).max(1);
    let run = |&(col, root): &(u8, usize)| search_from_root(c, &p, hosts, col, root, share);
    let results: Vec<_> = if parallel { jobs.par_iter().map(run).collect() } else { jobs.iter().map(run).collect() };
    let nodes = results.iter().map(|r| r.1).sum();
    // the first job in (colour, root) order that found a copy wins
    for ((col, _), (r, _)) in jobs.iter().zip(&results) {
        if let Some(Some(copy)) = r {
            return Scan::Found(*col, copy.clone(), nodes);
        }
    }
    if results.iter().any(|r| r.0.is_none()) {
        Scan::OutOfBudget(nodes)
    } else {
        Scan::None(nodes)
    }
}

/// Searches a copy of `pattern` whose edges all receive one colour.
/// Exhaustive when the pruned search fits the node budget; otherwise samples
/// random vertex sets of the pattern's size. Counterexamples are re-checked by
/// an independent verifier.
pub fn find_mono_copy(c: &dyn EdgeColouring, pattern: &Hypergraph, cfg: &CopySearchConfig) -> Result<Verdict> {
    if pattern.k() != c.uniformity() {
        return Err(Error::InvalidParameter(format!(
            "pattern is {}-uniform, colouring is {}-uniform",
            pattern.k(),
            c.uniformity()
        )));
    }
    let colours: Vec<u8> = match &cfg.colours {
        Some(cs) => cs.iter().copied().filter(|&x| x < c.colours()).collect(),
        None => (0..c.colours()).collect(),
    };
    let hosts: Vec<Vertex> = (0..c.n_vertices()).collect();
    let mut verdict = Verdict {
        mode: SearchMode::Exhaustive,
        result: SearchResult::None,
        copy: Vec::new(),
        colour: None,
        nodes: 0,
        seed: cfg.seed,
        samples: None,
        downgraded: false,
        reverified: false,
    };
    let found = match scan(c, pattern, &hosts, &colours, cfg.node_budget, true) {
        Scan::Found(col, copy, nodes) => {
            verdict.nodes = nodes;
            Some((col, copy))
        }
        Scan::None(nodes) => {
            verdict.nodes = nodes;
            None
        }
        Scan::OutOfBudget(nodes) => {
            verdict.nodes = nodes;
            verdict.mode = SearchMode::Sampled;
            verdict.downgraded = true;
            verdict.samples = Some(cfg.samples);
            let k = pattern.n_vertices();
            let per_sample = (cfg.node_budget / cfg.samples.max(1)).max(1_000);
            let hits: Vec<(Option<(u8, Vec<Vertex>)>, u64)> = (0..cfg.samples)
                .into_par_iter()
                .map(|i| {
                    let mut r = rng::substream(cfg.seed, i);
                    let mut subset = index::sample(&mut r, hosts.len(), k).into_vec();
                    subset.sort_unstable();
                    match scan(c, pattern, &subset, &colours, per_sample, false) {
                        Scan::Found(col, copy, n) => (Some((col, copy)), n),
                        Scan::None(n) | Scan::OutOfBudget(n) => (None, n),
                    }
                })
                .collect();
            verdict.nodes += hits.iter().map(|h| h.1).sum::<u64>();
            hits.into_iter().find_map(|h| h.0)
        }
    };
    if let Some((col, copy)) = found {
        let pred = |s: &[usize]| c.colour(s) == col;
        verdict.reverified = oracle::verify_copy(&pred, pattern.edges(), &copy);
        if !verdict.reverified {
            return Err(Error::Certificate(format!("search reported copy {copy:?} in colour {col} that fails verification")));
        }
        verdict.result = SearchResult::Counterexample;
        verdict.colour = Some(col);
        verdict.copy = copy;
    }
    Ok(verdict)
}

/// [`find_mono_copy`] on the stepped-up colouring; requires a 3-uniform
/// pattern and `m` small enough to enumerate.
pub fn verify_no_mono_copy(su: &StepUpColouring, pattern: &Hypergraph, cfg: &CopySearchConfig) -> Result<Verdict> {
    if pattern.k() != 3 {
        return Err(Error::InvalidParameter("the stepped-up colouring is on triples".into()));
    }
    if su.m() > MAX_MATERIALISED_M {
        return Err(Error::BudgetExceeded {
            what: "vertices of the stepped-up colouring",
            needed: 1u128 << su.m(),
            limit: 1u128 << MAX_MATERIALISED_M,
        });
    }
    find_mono_copy(su, pattern, cfg)
}

/// `m = ceil(2^(n/4))` and the resulting vertex count `2^m`.
#[derive(Clone, Debug, Serialize)]
pub struct ScaleTrace {
    pub n: u32,
    pub m: String,
    pub vertices: String,
    pub pattern_max_degree_bound: u64,
}

pub fn scale_trace(n: u32) -> Result<ScaleTrace> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!("n must be even and at least 4, got {n}")));
    }
    let two_n = BigUint::from(1u32) << n;
    let mut m = two_n.nth_root(4);
    if m.pow(4) < two_n {
        m += 1u32;
    }
    let vertices = match u32::try_from(&m) {
        Ok(mm) if mm <= 64 => (BigUint::from(1u32) << mm).to_string(),
        _ => format!("2^{m}"),
    };
    Ok(ScaleTrace {
        n,
        m: m.to_string(),
        vertices,
        pattern_max_degree_bound: 3 * u64::from(n),
    })
}

/// A colouring given either explicitly or by rule.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ColouringSpec {
    Rule { rule: RuleName, base: BaseSpec },
    Explicit(ExplicitColouring),
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum RuleName {
    SteppingUp,
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseSpec {
    Pentagon,
    Paley { m: usize },
    Random { m: usize, seed: u64 },
    File { path: String },
}

impl BaseSpec {
    pub fn build(&self) -> Result<BaseColouring> {
        match self {
            BaseSpec::Pentagon => Ok(BaseColouring::pentagon()),
            BaseSpec::Paley { m } => BaseColouring::paley(*m),
            BaseSpec::Random { m, seed } => Ok(BaseColouring::random(*m, *seed)),
            BaseSpec::File { path } => {
                let f = std::fs::File::open(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                BaseColouring::read_csv(f, None, path)
            }
        }
    }
}

impl ColouringSpec {
    pub fn resolve(self) -> Result<Box<dyn EdgeColouring>> {
        Ok(match self {
            ColouringSpec::Explicit(c) => Box::new(c),
            ColouringSpec::Rule { base, .. } => Box::new(StepUpColouring::new(base.build()?)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{combinations, cycle_spoke};

    fn s(bits: &[u8]) -> BinaryString {
        BinaryString::from_bits(bits).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&s(&[1, 0, 0]), &s(&[0, 1, 0])).unwrap(), 2);
        assert_eq!(delta(&s(&[0, 0, 0, 0]), &s(&[0, 0, 0, 1])).unwrap(), 4);
        let a = s(&[1, 0, 1, 0]);
        let b = s(&[1, 1, 0, 0]);
        assert_eq!(delta(&a, &b).unwrap(), 3);
        assert_eq!((a.rank(), b.rank()), (5, 3));
        assert_eq!(string_order_by_delta(&b, &a).unwrap(), Ordering::Less);
        assert!(delta(&a, &a).is_err());
        assert!(delta(&a, &s(&[1, 0])).is_err());
    }

    #[test]
    fn order_examples() {
        let x = BinaryString::from_rank(3, 4).unwrap();
        let y = BinaryString::from_rank(5, 4).unwrap();
        assert_eq!(string_order(&x, &y).unwrap(), Ordering::Less);
        let zero = BinaryString::from_rank(0, 4).unwrap();
        for b in 1..16 {
            assert_eq!(string_order(&zero, &BinaryString::from_rank(b, 4).unwrap()).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn order_rules_agree_exhaustively() {
        for m in 1..=5u32 {
            for a in 0..1u64 << m {
                for b in 0..1u64 << m {
                    if a != b {
                        let (x, y) = (BinaryString::from_rank(a, m).unwrap(), BinaryString::from_rank(b, m).unwrap());
                        assert_eq!(string_order(&x, &y).unwrap(), string_order_by_delta(&x, &y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn serialization_is_little_endian() {
        let x = BinaryString::from_rank(6, 4).unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"bits":[0,1,1,0]}"#);
        let back: BinaryString = serde_json::from_str(r#"{"bits":[0,1,1,0]}"#).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn stepup_colour_examples() {
        let su = StepUpColouring::new(BaseColouring::pentagon()).unwrap();
        // m = 5 here; coordinates 1 and 2 are red-adjacent in the pentagon
        let st = |b| BinaryString::from_rank(b, 5).unwrap();
        assert_eq!(stepup_colour(&su, [st(0), st(1), st(2)]).unwrap(), C1);
        assert_eq!(stepup_colour(&su, [st(2), st(3), st(1)]).unwrap(), C2);
        // coordinates 1 and 3 are blue
        assert_eq!(stepup_colour(&su, [st(0), st(1), st(4)]).unwrap(), C3);
        assert_eq!(stepup_colour(&su, [st(1), st(4), st(5)]).unwrap(), C4);
        assert!(stepup_colour(&su, [st(1), st(1), st(2)]).is_err());
    }

    #[test]
    fn m2_examples() {
        for red in [true, false] {
            let base = BaseColouring::from_fn(2, BaseProvenance::Explicit, |_, _| red);
            let su = StepUpColouring::new(base).unwrap();
            let st = |b| BinaryString::from_rank(b, 2).unwrap();
            assert_eq!(stepup_colour(&su, [st(0), st(1), st(2)]).unwrap(), if red { C1 } else { C3 });
            assert_eq!(stepup_colour(&su, [st(1), st(2), st(3)]).unwrap(), if red { C2 } else { C4 });
        }
    }

    #[test]
    fn delta_chain_examples() {
        let all: Vec<BinaryString> = (0..16).map(|b| BinaryString::from_rank(b, 4).unwrap()).collect();
        assert!(delta_max_property(&all).unwrap());
        assert!(delta_max_property(&all[3..5]).unwrap());
        assert!(delta_max_property(&[all[2], all[1]]).is_err());
        assert!(delta_max_property(&all[..1]).is_err());
    }

    #[test]
    fn base_colourings() {
        let p = BaseColouring::pentagon();
        assert_eq!((p.max_red_clique, p.max_blue_clique), (Some(2), Some(2)));
        let one = BaseColouring::random(1, 3);
        assert_eq!(one.max_red_clique, Some(1));
        let paley = BaseColouring::paley(17).unwrap();
        assert_eq!((paley.max_red_clique, paley.max_blue_clique), (Some(3), Some(3)));
        assert!(BaseColouring::paley(7).is_err());
        let r = BaseColouring::random(8, 4);
        let g = r.to_graph_colouring().unwrap();
        for (col, reported) in [(0u8, r.max_red_clique.unwrap()), (1, r.max_blue_clique.unwrap())] {
            let is_clique = |set: &[usize]| combinations(set.len(), 2).all(|p| g.colour(&[set[p[0]], set[p[1]]]) == col);
            assert!(combinations(8, reported).any(|c| is_clique(&c)));
            assert!(!combinations(8, reported + 1).any(|c| is_clique(&c)));
        }
    }

    #[test]
    fn csv_round_trip() {
        let p = BaseColouring::pentagon();
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 10);
        assert!(text.starts_with("0,1,red\n0,2,blue\n"));
        let back = BaseColouring::read_csv(&buf[..], None, "mem").unwrap();
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(back.colour(i, j), p.colour(i, j));
            }
        }
        assert!(BaseColouring::read_csv("0,1,red\n".as_bytes(), Some(3), "mem").is_err());
        assert!(BaseColouring::read_csv("0,1,green\n".as_bytes(), None, "mem").is_err());
    }

    #[test]
    fn single_edge_always_found() {
        let su = StepUpColouring::new(BaseColouring::random(4, 1)).unwrap();
        let e = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        let v = verify_no_mono_copy(&su, &e, &CopySearchConfig::default()).unwrap();
        assert_eq!(v.result, SearchResult::Counterexample);
        assert!(v.reverified);
    }

    #[test]
    fn complete_base_gives_mono_cycle_spoke() {
        // all-red base: every triple is C1 or C2, so large mono sets exist
        let base = BaseColouring::from_fn(4, BaseProvenance::Explicit, |_, _| true);
        let su = StepUpColouring::new(base).unwrap();
        let v = verify_no_mono_copy(&su, &cycle_spoke(4).unwrap(), &CopySearchConfig::default()).unwrap();
        assert_eq!(v.result, SearchResult::Counterexample);
    }

    #[test]
    fn downgrade_to_sampling() {
        let su = StepUpColouring::new(BaseColouring::pentagon()).unwrap();
        let cfg = CopySearchConfig { node_budget: 1_000, samples: 50, ..Default::default() };
        let v = verify_no_mono_copy(&su, &cycle_spoke(6).unwrap(), &cfg).unwrap();
        assert_eq!(v.mode, SearchMode::Sampled);
        assert!(v.downgraded);
        assert_eq!(v.samples, Some(50));
    }

    #[test]
    fn scale() {
        let t = scale_trace(8).unwrap();
        assert_eq!((t.m.as_str(), t.vertices.as_str()), ("4", "16"));
        assert_eq!(scale_trace(6).unwrap().m, "3");
        assert!(scale_trace(5).is_err());
    }

    #[test]
    fn rule_reference_resolves() {
        let spec: ColouringSpec = serde_json::from_str(r#"{"rule":"stepping_up","base":{"kind":"pentagon"}}"#).unwrap();
        let c = spec.resolve().unwrap();
        assert_eq!((c.uniformity(), c.n_vertices(), c.colours()), (3, 32, 4));
        let spec: ColouringSpec = serde_json::from_str(r#"{"k":2,"n":2,"q":2,"edges":[[[0,1],1]]}"#).unwrap();
        assert_eq!(spec.resolve().unwrap().colour(&[0, 1]), 1);
    }
}
