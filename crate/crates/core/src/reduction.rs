//! From a colouring of a complete hypergraph to a monochromatic copy of a
//! bounded-degree pattern: clique counting, the clique hypergraph, a random
//! equitable partition, the condensation chain, the embedding, and the
//! projection back to the colouring. Also the explicit bound formulas.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_ratio, factorial, log10_biguint, ratio_to_string, Ratio};
use crate::drc::{self, drc_chain, ChainConfig};
use crate::embed::{embed_pattern, EmbedConfig, Policy};
use crate::error::{Error, Result};
use crate::hypercore::{combinations, strong_chromatic_number, ColouringMode, Edge, Hypergraph, PartiteHypergraph, Vertex, EXACT_CHROMATIC_VERTEX_CAP};
use crate::rng;

/// A `q`-colouring of all `k`-subsets of `0..n`.
pub trait EdgeColouring: Sync {
    fn uniformity(&self) -> usize;
    fn n_vertices(&self) -> usize;
    fn colours(&self) -> u8;
    /// Colour of a sorted `k`-subset.
    fn colour(&self, subset: &[Vertex]) -> u8;
}

/// A colouring stored as a table indexed by colex rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ExplicitRepr", into = "ExplicitRepr")]
pub struct ExplicitColouring {
    k: usize,
    n: usize,
    q: u8,
    table: Vec<u8>,
    binom: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ExplicitRepr {
    k: usize,
    n: usize,
    q: u8,
    edges: Vec<(Vec<Vertex>, u8)>,
}

impl TryFrom<ExplicitRepr> for ExplicitColouring {
    type Error = Error;

    fn try_from(r: ExplicitRepr) -> Result<Self> {
        let mut c = ExplicitColouring::blank(r.k, r.n, r.q)?;
        let mut seen = vec![false; c.table.len()];
        for (mut s, col) in r.edges {
            s.sort_unstable();
            if s.len() != r.k || s.windows(2).any(|w| w[0] == w[1]) || s.iter().any(|&v| v >= r.n) {
                return Err(Error::Parse(format!("{s:?} is not a {}-subset of 0..{}", r.k, r.n)));
            }
            if col >= r.q {
                return Err(Error::Parse(format!("colour {col} out of range for q = {}", r.q)));
            }
            let i = c.rank(&s);
            if seen[i] {
                return Err(Error::Parse(format!("{s:?} coloured twice")));
            }
            seen[i] = true;
            c.table[i] = col;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Parse("colouring does not cover every subset".into()));
        }
        Ok(c)
    }
}

impl From<ExplicitColouring> for ExplicitRepr {
    fn from(c: ExplicitColouring) -> Self {
        let edges = combinations(c.n, c.k).map(|s| {
            let col = c.colour(&s);
            (s, col)
        });
        ExplicitRepr {
            k: c.k,
            n: c.n,
            q: c.q,
            edges: edges.collect(),
        }
    }
}

impl ExplicitColouring {
    fn blank(k: usize, n: usize, q: u8) -> Result<Self> {
        if k == 0 || q == 0 {
            return Err(Error::InvalidParameter("colourings need k >= 1 and q >= 1".into()));
        }
        let mut binom = vec![vec![0usize; k + 1]; n + 1];
        for v in 0..=n {
            binom[v][0] = 1;
            for j in 1..=k.min(v) {
                binom[v][j] = binom[v - 1][j - 1] + if j <= v - 1 { binom[v - 1][j] } else { 0 };
            }
        }
        let size = binom[n][k];
        Ok(ExplicitColouring {
            k,
            n,
            q,
            table: vec![0; size],
            binom,
        })
    }

    fn rank(&self, s: &[Vertex]) -> usize {
        s.iter().enumerate().map(|(i, &v)| self.binom[v][i + 1]).sum()
    }

    pub fn from_fn(k: usize, n: usize, q: u8, f: impl Fn(&[Vertex]) -> u8) -> Result<Self> {
        let mut c = Self::blank(k, n, q)?;
        for s in combinations(n, k) {
            let col = f(&s);
            if col >= q {
                return Err(Error::InvalidParameter(format!("colour {col} out of range for q = {q}")));
            }
            let i = c.rank(&s);
            c.table[i] = col;
        }
        Ok(c)
    }

    pub fn from_colouring(c: &dyn EdgeColouring) -> Result<Self> {
        Self::from_fn(c.uniformity(), c.n_vertices(), c.colours(), |s| c.colour(s))
    }

    pub fn monochromatic(k: usize, n: usize, q: u8, colour: u8) -> Result<Self> {
        Self::from_fn(k, n, q, |_| colour)
    }

    /// Colour 0 on the 5-cycle `{i, i+1 mod 5}`, colour 1 on its complement.
    pub fn pentagon() -> Self {
        Self::from_fn(2, 5, 2, |s| u8::from(!matches!(s[1] - s[0], 1 | 4))).expect("valid")
    }

    pub fn random(k: usize, n: usize, q: u8, seed: u64) -> Result<Self> {
        let mut r = rng::seeded(seed);
        let mut c = Self::blank(k, n, q)?;
        for s in combinations(n, k) {
            let i = c.rank(&s);
            c.table[i] = r.gen_range(0..q);
        }
        Ok(c)
    }

    /// The restriction to vertices `0..n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        Self::from_fn(self.k, n.min(self.n), self.q, |s| self.colour(s))
    }
}

impl EdgeColouring for ExplicitColouring {
    fn uniformity(&self) -> usize {
        self.k
    }

    fn n_vertices(&self) -> usize {
        self.n
    }

    fn colours(&self) -> u8 {
        self.q
    }

    fn colour(&self, subset: &[Vertex]) -> u8 {
        self.table[self.rank(subset)]
    }
}

/// A view of a colouring restricted to its first `n` vertices.
pub struct Restricted<'a> {
    pub inner: &'a dyn EdgeColouring,
    pub n: usize,
}

impl EdgeColouring for Restricted<'_> {
    fn uniformity(&self) -> usize {
        self.inner.uniformity()
    }

    fn n_vertices(&self) -> usize {
        self.n.min(self.inner.n_vertices())
    }

    fn colours(&self) -> u8 {
        self.inner.colours()
    }

    fn colour(&self, subset: &[Vertex]) -> u8 {
        self.inner.colour(subset)
    }
}

pub const DEFAULT_CLIQUE_BUDGET: u64 = 100_000_000;

/// Depth-first over vertex sets that stay monochromatic, rooted at `root`.
/// Calls `found` on every monochromatic `l`-set.
fn mono_walk(c: &dyn EdgeColouring, l: usize, root: Vertex, budget: u64, found: &mut dyn FnMut(u8, &[Vertex])) -> Result<u64> {
    let k = c.uniformity();
    let n = c.n_vertices();
    let sub_idx: Vec<Vec<usize>> = if k >= 1 { combinations(l.saturating_sub(1), k - 1).collect() } else { Vec::new() };
    let mut set = vec![root];
    let mut nodes = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        c: &dyn EdgeColouring,
        k: usize,
        l: usize,
        n: usize,
        set: &mut Vec<Vertex>,
        colour: Option<u8>,
        sub_idx: &[Vec<usize>],
        nodes: &mut u64,
        budget: u64,
        found: &mut dyn FnMut(u8, &[Vertex]),
    ) -> Result<()> {
        if set.len() == l {
            if let Some(col) = colour {
                found(col, set);
            } else {
                for col in 0..c.colours() {
                    found(col, set);
                }
            }
            return Ok(());
        }
        let last = *set.last().unwrap();
        for v in last + 1..n {
            if n - v < l - set.len() {
                break;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExceeded {
                    what: "monochromatic clique search",
                    needed: u128::from(*nodes),
                    limit: u128::from(budget),
                });
            }
            let mut col = colour;
            let mut ok = true;
            if set.len() + 1 >= k {
                let mut probe = Vec::with_capacity(k);
                for idx in sub_idx.iter().filter(|ix| ix.last().is_none_or(|&m| m < set.len())) {
                    probe.clear();
                    probe.extend(idx.iter().map(|&i| set[i]));
                    probe.push(v);
                    let got = c.colour(&probe);
                    match col {
                        None => col = Some(got),
                        Some(x) if x != got => {
                            ok = false;
                            break;
                        }
                        _ => {}
                    }
                }
            }
            if ok {
                set.push(v);
                rec(c, k, l, n, set, col, sub_idx, nodes, budget, found)?;
                set.pop();
            }
        }
        Ok(())
    }

    rec(c, k, l, n, &mut set, None, &sub_idx, &mut nodes, budget, found)?;
    Ok(nodes)
}

fn check_clique_size(c: &dyn EdgeColouring, l: usize) -> Result<()> {
    if l < c.uniformity() || l == 0 {
        return Err(Error::InvalidParameter(format!(
            "clique size {l} is below the uniformity {}",
            c.uniformity()
        )));
    }
    Ok(())
}

/// For each colour, the number of `l`-sets all of whose `k`-subsets have it.
pub fn count_mono_cliques(c: &dyn EdgeColouring, l: usize, budget: u64) -> Result<Vec<u64>> {
    check_clique_size(c, l)?;
    let q = c.colours() as usize;
    let per_root: Vec<Result<(Vec<u64>, u64)>> = (0..c.n_vertices())
        .into_par_iter()
        .map(|root| {
            let mut counts = vec![0u64; q];
            let nodes = mono_walk(c, l, root, budget, &mut |col, _| counts[col as usize] += 1)?;
            Ok((counts, nodes))
        })
        .collect();
    let mut total = vec![0u64; q];
    let mut nodes = 0u64;
    for r in per_root {
        let (counts, n) = r?;
        nodes += n;
        for (t, c) in total.iter_mut().zip(counts) {
            *t += c;
        }
    }
    if nodes > budget {
        return Err(Error::BudgetExceeded {
            what: "monochromatic clique search",
            needed: u128::from(nodes),
            limit: u128::from(budget),
        });
    }
    Ok(total)
}

/// The `l`-uniform hypergraph of `l`-sets monochromatic in `colour`.
pub fn clique_hypergraph(c: &dyn EdgeColouring, colour: u8, l: usize, budget: u64) -> Result<Hypergraph> {
    check_clique_size(c, l)?;
    let per_root: Vec<Result<Vec<Edge>>> = (0..c.n_vertices())
        .into_par_iter()
        .map(|root| {
            let mut edges = Vec::new();
            mono_walk(c, l, root, budget, &mut |col, s| {
                if col == colour {
                    edges.push(s.to_vec())
                }
            })?;
            Ok(edges)
        })
        .collect();
    let mut edges = Vec::new();
    for r in per_root {
        edges.extend(r?);
    }
    Hypergraph::new(l.max(2), c.n_vertices(), edges)
}

/// Splits the vertices uniformly at random into `l` parts of equal size and
/// keeps the edges meeting every part once.
pub fn random_equitable_partition(g: &Hypergraph, l: usize, seed: u64) -> Result<PartiteHypergraph> {
    let n = g.n_vertices();
    if l == 0 || n % l != 0 || n == 0 {
        return Err(Error::InvalidParameter(format!("{l} parts do not divide {n} vertices")));
    }
    if g.k() != l {
        return Err(Error::InvalidParameter(format!("partition into {l} parts of a {}-uniform hypergraph", g.k())));
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng::seeded(seed));
    let size = n / l;
    let parts: Vec<Vec<Vertex>> = order.chunks(size).map(|c| c.to_vec()).collect();
    let mut part_of = vec![0usize; n];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = i;
        }
    }
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| {
            let mut hit = vec![false; l];
            e.iter().all(|&v| !std::mem::replace(&mut hit[part_of[v]], true))
        })
        .cloned()
        .collect();
    PartiteHypergraph::new(parts, edges)
}

/// Probability that a fixed `l`-set is a transversal of a uniform random
/// equitable partition of `n` vertices into `l` parts.
pub fn transversal_probability(n: usize, l: usize) -> Result<Ratio> {
    if l == 0 || n % l != 0 || n < l {
        return Err(Error::InvalidParameter(format!("{l} parts do not divide {n} vertices")));
    }
    let p = (n / l) as u64;
    let (n, l) = (n as u64, l as u64);
    let num = factorial(l) * factorial(n - l) * factorial(p).pow(l as u32);
    let den = factorial(p - 1).pow(l as u32) * factorial(n);
    Ok(Ratio::new(num.into(), den.into()))
}

/// `l! / l^l`.
pub fn transversal_floor(l: usize) -> Ratio {
    Ratio::new(factorial(l as u64).into(), BigUint::from(l).pow(l as u32).into())
}

#[derive(Clone, Debug, Serialize)]
pub struct Extension {
    pub pattern: PartiteHypergraph,
    /// `classes[i]` holds the original vertices placed in part `i`.
    pub classes: Vec<Vec<Vertex>>,
    /// Auxiliary vertices, numbered from `n` upward.
    pub auxiliary: Vec<Vertex>,
    pub original_vertices: usize,
}

/// Pads every edge of `h` to an `l`-partite `l`-edge with fresh vertices,
/// one in each part the edge misses. Parts come from a strong colouring.
pub fn extend_to_partite(h: &Hypergraph, l: usize) -> Result<Extension> {
    let k = h.k();
    if l < k {
        return Err(Error::Precondition(format!("l = {l} is below the uniformity {k}")));
    }
    let mode = if h.n_vertices() <= EXACT_CHROMATIC_VERTEX_CAP { ColouringMode::Exact } else { ColouringMode::Greedy };
    let col = strong_chromatic_number(h, mode)?;
    if col.count > l {
        return Err(Error::Precondition(format!(
            "strong colouring needs {} colours{}, more than l = {l}",
            col.count,
            if mode == ColouringMode::Greedy { " (greedy)" } else { "" }
        )));
    }
    // Final part sizes: class members plus one auxiliary vertex per edge
    // avoiding the class. Larger parts go first; the last part is embedded
    // into the smallest chain level.
    let degrees = h.degrees();
    let mut sizes = vec![(0usize, 0usize); l];
    for (v, &c) in col.colours.iter().enumerate() {
        sizes[c].0 += 1;
        sizes[c].1 += degrees[v];
    }
    let mut rank: Vec<usize> = (0..l).collect();
    rank.sort_by_key(|&c| (std::cmp::Reverse(sizes[c].0 + h.edge_count() - sizes[c].1), c));
    let mut slot = vec![0; l];
    for (i, &c) in rank.iter().enumerate() {
        slot[c] = i;
    }
    let colours: Vec<usize> = col.colours.iter().map(|&c| slot[c]).collect();
    let mut classes = vec![Vec::new(); l];
    for (v, &c) in colours.iter().enumerate() {
        classes[c].push(v);
    }
    let mut parts = classes.clone();
    let mut next = h.n_vertices();
    let mut auxiliary = Vec::new();
    let mut edges = Vec::with_capacity(h.edge_count());
    for e in h.edges() {
        let mut used = vec![false; l];
        for &v in e {
            used[colours[v]] = true;
        }
        let mut big = e.clone();
        for (i, part) in parts.iter_mut().enumerate() {
            if !used[i] {
                part.push(next);
                big.push(next);
                auxiliary.push(next);
                next += 1;
            }
        }
        edges.push(big);
    }
    Ok(Extension {
        pattern: PartiteHypergraph::new(parts, edges)?,
        classes,
        auxiliary,
        original_vertices: h.n_vertices(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateEntry {
    pub edge: Edge,
    pub image: Vec<Vertex>,
    pub colour: u8,
}

#[derive(Clone, Debug, Serialize)]
pub struct Projection {
    pub colour: u8,
    /// Pattern vertex to colouring vertex.
    pub map: BTreeMap<Vertex, Vertex>,
    pub certificate: Vec<CertificateEntry>,
}

/// Restricts an embedding of the extended pattern to the original vertices
/// and certifies that every edge of `h` lands on a `colour`-coloured set.
pub fn project_embedding(assignment: &BTreeMap<Vertex, Vertex>, c: &dyn EdgeColouring, h: &Hypergraph, colour: u8) -> Result<Projection> {
    let mut map = BTreeMap::new();
    for v in 0..h.n_vertices() {
        let img = *assignment
            .get(&v)
            .ok_or_else(|| Error::Certificate(format!("vertex {v} has no image")))?;
        if img >= c.n_vertices() {
            return Err(Error::Certificate(format!("image {img} of {v} is outside the colouring")));
        }
        map.insert(v, img);
    }
    let mut images: Vec<Vertex> = map.values().copied().collect();
    images.sort_unstable();
    if images.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Certificate("projection is not injective".into()));
    }
    let mut certificate = Vec::with_capacity(h.edge_count());
    for e in h.edges() {
        let mut image: Vec<Vertex> = e.iter().map(|v| map[v]).collect();
        image.sort_unstable();
        let got = c.colour(&image);
        if got != colour {
            return Err(Error::Certificate(format!("edge {e:?} maps to {image:?} of colour {got}, expected {colour}")));
        }
        certificate.push(CertificateEntry { edge: e.clone(), image, colour: got });
    }
    Ok(Projection { colour, map, certificate })
}

/// Re-checks a projection against the colouring from scratch.
pub fn certificate_holds(p: &Projection, c: &dyn EdgeColouring, h: &Hypergraph) -> bool {
    p.certificate.len() == h.edge_count()
        && h.edges().iter().zip(&p.certificate).all(|(e, entry)| {
            let mut image: Vec<Vertex> = e.iter().map(|v| p.map[v]).collect();
            image.sort_unstable();
            entry.edge == *e && entry.image == image && c.colour(&image) == p.colour
        })
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Defaults to `(k-1)*Delta + 1`.
    pub l: Option<usize>,
    pub s: u32,
    pub beta: Ratio,
    pub attempts: u32,
    /// Try every colour with cliques in descending count order, not just the majority.
    pub all_colours: bool,
    pub policy: Policy,
    pub node_budget: u64,
    pub clique_budget: u64,
    pub census_budget: u128,
    pub retry_cap: u64,
    pub seed: u64,
    pub timings: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            l: None,
            s: 1,
            beta: Ratio::new(1.into(), 4.into()),
            attempts: 8,
            all_colours: false,
            policy: Policy::Backtrack,
            node_budget: crate::embed::DEFAULT_NODE_BUDGET,
            clique_budget: DEFAULT_CLIQUE_BUDGET,
            census_budget: drc::DEFAULT_CENSUS_BUDGET,
            retry_cap: drc::DEFAULT_RETRY_CAP,
            seed: 0,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AttemptReport {
    pub colour: u8,
    pub attempt: u32,
    pub seed: u64,
    pub transversal_edges: usize,
    pub density: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chain_edge_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub embed_success: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_expanded: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deepest_frontier: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternSummary {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub extended_vertices: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub success: bool,
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    pub n_used: usize,
    pub l: usize,
    pub pattern: Option<PatternSummary>,
    pub clique_counts: Vec<u64>,
    pub colour_order: Vec<u8>,
    pub attempts: Vec<AttemptReport>,
    pub failure_stage: Option<String>,
    pub failure_detail: Option<String>,
    pub copy: Option<Projection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u128>>,
}

impl PipelineReport {
    fn fail(mut self, stage: &str, detail: impl Into<String>) -> Self {
        self.success = false;
        self.failure_stage = Some(stage.into());
        self.failure_detail = Some(detail.into());
        self
    }
}

/// Searches a monochromatic copy of `h` in `c` through the clique hypergraph.
/// Failures at any stage are reported, not raised; only malformed input errors.
pub fn ramsey_pipeline(c: &dyn EdgeColouring, h: &Hypergraph, cfg: &PipelineConfig) -> Result<PipelineReport> {
    let k = c.uniformity();
    if h.k() != k {
        return Err(Error::InvalidParameter(format!("pattern is {}-uniform, colouring is {k}-uniform", h.k())));
    }
    let delta = h.max_degree();
    let l = cfg.l.unwrap_or((k - 1) * delta.max(1) + 1).max(k);
    let n = c.n_vertices();
    let n_used = n - n % l;
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, u128>| {
        timings.insert(name.to_string(), clock.elapsed().as_millis());
        clock = Instant::now();
    };
    let mut report = PipelineReport {
        success: false,
        seed: cfg.seed,
        k,
        n,
        n_used,
        l,
        pattern: None,
        clique_counts: Vec::new(),
        colour_order: Vec::new(),
        attempts: Vec::new(),
        failure_stage: None,
        failure_detail: None,
        copy: None,
        timings_ms: None,
    };
    let finish = |mut r: PipelineReport, timings: BTreeMap<String, u128>| {
        if cfg.timings {
            r.timings_ms = Some(timings);
        }
        Ok(r)
    };

    let ext = match extend_to_partite(h, l) {
        Ok(e) => e,
        Err(e) => return finish(report.fail("extension", e.to_string()), timings),
    };
    report.pattern = Some(PatternSummary {
        vertices: h.n_vertices(),
        edges: h.edge_count(),
        max_degree: delta,
        extended_vertices: ext.pattern.n_vertices(),
    });
    let view = Restricted { inner: c, n: n_used };
    let counts = match count_mono_cliques(&view, l, cfg.clique_budget) {
        Ok(x) => x,
        Err(e) => return finish(report.fail("cliques", e.to_string()), timings),
    };
    lap("cliques", &mut timings);
    let mut order: Vec<u8> = (0..c.colours()).filter(|&i| counts[i as usize] > 0).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(counts[i as usize]), i));
    if !cfg.all_colours {
        order.truncate(1);
    }
    report.clique_counts = counts;
    report.colour_order = order.clone();
    if order.is_empty() {
        return finish(report.fail("cliques", format!("no monochromatic {l}-clique in any colour")), timings);
    }
    let widest = ext.pattern.parts().iter().map(Vec::len).max().unwrap_or(0);
    if widest > n_used / l {
        return finish(report.fail("size", format!("parts of {} vertices cannot host a pattern part of {widest}", n_used / l)), timings);
    }

    let chain_delta = ext.pattern.max_degree().max(1);
    let mut last_stage = "embed";
    for &colour in &order {
        let gl = match clique_hypergraph(&view, colour, l, cfg.clique_budget) {
            Ok(g) => g,
            Err(e) => return finish(report.fail("cliques", e.to_string()), timings),
        };
        let colour_seed = rng::derive_seed(cfg.seed, u64::from(colour));
        for attempt in 0..cfg.attempts {
            let seed = rng::derive_seed(colour_seed, u64::from(attempt));
            let part = random_equitable_partition(&gl, l, rng::derive_seed(seed, 0))?;
            lap("partition", &mut timings);
            let mut rec = AttemptReport {
                colour,
                attempt,
                seed,
                transversal_edges: part.edge_count(),
                density: ratio_to_string(&drc::density(&part)?),
                chain_edge_counts: Vec::new(),
                chain_error: None,
                embed_success: None,
                nodes_expanded: None,
                deepest_frontier: None,
            };
            if part.edge_count() == 0 {
                last_stage = "partition";
                report.attempts.push(rec);
                continue;
            }
            let mut chain_cfg = ChainConfig::new(cfg.s, cfg.beta.clone(), chain_delta, rng::derive_seed(seed, 1));
            chain_cfg.retry_cap = cfg.retry_cap;
            chain_cfg.census_budget = cfg.census_budget;
            let chain = match drc_chain(&part, &chain_cfg) {
                Ok(ch) => ch,
                Err(e) => {
                    rec.chain_error = Some(e.to_string());
                    last_stage = "chain";
                    report.attempts.push(rec);
                    continue;
                }
            };
            lap("chain", &mut timings);
            rec.chain_edge_counts = chain.levels().iter().map(PartiteHypergraph::edge_count).collect();
            let emb = embed_pattern(
                &chain,
                &ext.pattern,
                &EmbedConfig {
                    policy: cfg.policy,
                    seed: rng::derive_seed(seed, 2),
                    node_budget: cfg.node_budget,
                },
            )?;
            lap("embed", &mut timings);
            rec.embed_success = Some(emb.success);
            rec.nodes_expanded = Some(emb.nodes_expanded);
            rec.deepest_frontier = emb.failure.as_ref().map(|f| f.deepest_frontier);
            report.attempts.push(rec);
            if emb.success && emb.verified {
                let proj = project_embedding(&emb.assignment, c, h, colour)?;
                report.success = true;
                report.copy = Some(proj);
                return finish(report, timings);
            }
            last_stage = "embed";
        }
    }
    let tried = report.attempts.len();
    finish(report.fail(last_stage, format!("no copy after {tried} attempts")), timings)
}

pub const DEFAULT_DIGIT_CAP: u64 = 100_000;

fn digits_to_bits(digits: u64) -> f64 {
    digits as f64 / std::f64::consts::LOG10_2
}

/// `t_1(x) = x`, `t_{i+1}(x) = 2^{t_i(x)}`.
pub fn tower(i: u32, x: &BigUint, digit_cap: u64) -> Result<BigUint> {
    if i == 0 {
        return Err(Error::InvalidParameter("tower height must be at least 1".into()));
    }
    let mut t = x.clone();
    for _ in 1..i {
        let bits = t.to_u64().filter(|&b| (b as f64) <= digits_to_bits(digit_cap));
        let Some(b) = bits else {
            return Err(Error::DigitCap {
                digits: t.to_f64().map_or(u64::MAX, |b| (b * std::f64::consts::LOG10_2).min(u64::MAX as f64) as u64),
                cap: digit_cap,
            });
        };
        t = BigUint::one() << b;
    }
    Ok(t)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum RklSource {
    /// A known value or upper bound for the Ramsey number of the complete hypergraph.
    Literal { value: BigUint },
    /// `r_k(l; q) <= t_k(ceil(c * l))` with caller-supplied `c`.
    ErdosRado { c: Ratio },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundParams {
    pub k: usize,
    pub delta: usize,
    pub q: u8,
    pub rkl: RklSource,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum BoundMode {
    MaxDegree,
    StrongChromatic { l: usize },
    EdgeCount { m: u64 },
    SteppingUpLower { m: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub formula: String,
    pub substitution: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundResult {
    pub mode: BoundMode,
    /// Exact decimal value when it fits under the digit cap.
    pub exact: Option<String>,
    pub symbolic: String,
    pub log10_estimate: f64,
    pub trace: Vec<TraceStep>,
}

impl BoundResult {
    pub fn exact_value(&self) -> Option<BigUint> {
        self.exact.as_ref().and_then(|s| s.parse().ok())
    }
}

/// A number that may be too large to write down.
#[derive(Clone, Debug)]
struct Quantity {
    exact: Option<BigUint>,
    expr: String,
    log10: f64,
}

impl Quantity {
    fn exact(v: BigUint) -> Self {
        Quantity {
            expr: v.to_string(),
            log10: log10_biguint(&v),
            exact: Some(v),
        }
    }

    fn shown(&self) -> String {
        match &self.exact {
            Some(v) => v.to_string(),
            None => format!("{} (about 10^{:.3e})", self.expr, self.log10),
        }
    }

    fn pow(&self, e: &BigUint, digit_cap: u64) -> Quantity {
        let log10 = self.log10 * e.to_f64().unwrap_or(f64::INFINITY);
        let expr = format!("({})^({})", self.expr, e);
        match (&self.exact, e.to_u32()) {
            (Some(b), Some(ex)) if log10 <= digit_cap as f64 => {
                let v = b.pow(ex);
                Quantity {
                    log10: log10_biguint(&v),
                    expr: v.to_string(),
                    exact: Some(v),
                }
            }
            (Some(b), _) if b.is_zero() || b.is_one() => Quantity::exact(b.clone()),
            _ => Quantity { exact: None, expr, log10 },
        }
    }
}

fn tower_quantity(i: u32, x: &BigUint, digit_cap: u64) -> Quantity {
    match tower(i, x, digit_cap) {
        Ok(v) => Quantity::exact(v),
        Err(_) => {
            // highest level still representable, then symbolic above it
            let mut h = 1;
            while h < i && tower(h + 1, x, digit_cap).is_ok() {
                h += 1;
            }
            let base = tower(h, x, digit_cap).expect("height 1 is exact");
            let log10 = if i == h + 1 { base.to_f64().unwrap_or(f64::INFINITY) * std::f64::consts::LOG10_2 } else { f64::INFINITY };
            Quantity {
                exact: None,
                expr: format!("t_{}({})", i - h + 1, base),
                log10,
            }
        }
    }
}

/// Integer ceiling of `k * sqrt(m)`.
pub fn ceil_k_sqrt_m(k: u64, m: u64) -> u64 {
    let sq = (k as u128) * (k as u128) * (m as u128);
    let r = sq.sqrt();
    (if r * r == sq { r } else { r + 1 }) as u64
}

fn rkl_quantity(p: &BoundParams, l: usize, digit_cap: u64, trace: &mut Vec<TraceStep>) -> Result<Quantity> {
    match &p.rkl {
        RklSource::Literal { value } => {
            if value < &BigUint::from(l) {
                return Err(Error::InvalidParameter(format!("r_{}({l};{}) is at least {l}, got {value}", p.k, p.q)));
            }
            trace.push(TraceStep {
                formula: format!("r_k(l;q) with k={}, l={l}, q={}", p.k, p.q),
                substitution: "supplied".into(),
                value: value.to_string(),
            });
            Ok(Quantity::exact(value.clone()))
        }
        RklSource::ErdosRado { c } => {
            let x = ceil_ratio(&(c * Ratio::from_integer(l.into())));
            let x = x.to_biguint().filter(|x| !x.is_zero()).ok_or_else(|| Error::InvalidParameter("Erdos-Rado constant must be positive".into()))?;
            let q = tower_quantity(p.k as u32, &x, digit_cap);
            trace.push(TraceStep {
                formula: "r_k(l;q) <= t_k(ceil(c*l))".into(),
                substitution: format!("k={}, c={}, l={l}, ceil(c*l)={x}", p.k, ratio_to_string(c)),
                value: q.shown(),
            });
            Ok(q)
        }
    }
}

fn strong_chromatic_bound_value(p: &BoundParams, l: usize, digit_cap: u64, trace: &mut Vec<TraceStep>) -> Result<Quantity> {
    let r = rkl_quantity(p, l, digit_cap, trace)?;
    let e = BigUint::from(2 * l * p.delta).pow(l as u32);
    trace.push(TraceStep {
        formula: "(2*l*Delta)^l".into(),
        substitution: format!("l={l}, Delta={}", p.delta),
        value: e.to_string(),
    });
    let v = r.pow(&e, digit_cap);
    trace.push(TraceStep {
        formula: "r_k(l;q)^((2*l*Delta)^l)".into(),
        substitution: format!("r_k(l;q)={}, exponent={e}", r.shown()),
        value: v.shown(),
    });
    Ok(v)
}

/// The explicit constant in front of `n` (or the absolute bound, per mode)
/// with a step-by-step trace.
pub fn bound_calculator(p: &BoundParams, mode: BoundMode, digit_cap: u64) -> Result<BoundResult> {
    if p.k < 2 || p.q == 0 {
        return Err(Error::InvalidParameter("need k >= 2 and q >= 1".into()));
    }
    let mut trace = Vec::new();
    let q = match mode {
        BoundMode::MaxDegree => {
            if p.k < 3 {
                return Err(Error::Precondition(format!("this bound is stated for k >= 3, got k = {}", p.k)));
            }
            let l = p.k * p.delta;
            let r = rkl_quantity(p, l, digit_cap, &mut trace)?;
            let e = BigUint::from(2 * p.k * p.delta * p.delta).pow(l as u32);
            trace.push(TraceStep {
                formula: "(2*k*Delta^2)^(k*Delta)".into(),
                substitution: format!("k={}, Delta={}", p.k, p.delta),
                value: e.to_string(),
            });
            let v = r.pow(&e, digit_cap);
            trace.push(TraceStep {
                formula: "r_k(k*Delta)^((2*k*Delta^2)^(k*Delta))".into(),
                substitution: format!("r_k({l})={}, exponent={e}", r.shown()),
                value: v.shown(),
            });
            v
        }
        BoundMode::StrongChromatic { l } => {
            if l < p.k {
                return Err(Error::InvalidParameter(format!("strong chromatic number {l} is below k = {}", p.k)));
            }
            strong_chromatic_bound_value(p, l, digit_cap, &mut trace)?
        }
        BoundMode::EdgeCount { m } => {
            if m == 0 {
                return Err(Error::InvalidParameter("edge count must be positive".into()));
            }
            let l = ceil_k_sqrt_m(p.k as u64, m) as usize;
            trace.push(TraceStep {
                formula: "l = ceil(k*sqrt(m))".into(),
                substitution: format!("k={}, m={m}", p.k),
                value: l.to_string(),
            });
            strong_chromatic_bound_value(p, l.max(p.k), digit_cap, &mut trace)?
        }
        BoundMode::SteppingUpLower { m } => {
            let x = (m.sqrt() / 4) as u64;
            let x = (x..=x + 1).rev().find(|&x| 16 * x * x <= m).unwrap_or(0);
            trace.push(TraceStep {
                formula: "x = floor(sqrt(m)/4)".into(),
                substitution: format!("m={m}"),
                value: x.to_string(),
            });
            let v = tower_quantity(3, &BigUint::from(x), digit_cap);
            trace.push(TraceStep {
                formula: "lower bound t_3(x) = 2^(2^x)".into(),
                substitution: format!("x={x}"),
                value: v.shown(),
            });
            v
        }
    };
    Ok(BoundResult {
        mode,
        exact: q.exact.as_ref().map(BigUint::to_string),
        symbolic: q.expr,
        log10_estimate: q.log10,
        trace,
    })
}
