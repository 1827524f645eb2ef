//! Embedding a bounded-degree `l`-partite pattern into a host through its
//! condensation chain.
//!
//! Pattern vertices are placed part by part, last part first. A vertex of
//! pattern part `j` may go to host vertex `v` of part `j` only when, for every
//! pattern edge through it, the images of the edge's later-part vertices
//! together with `v` form an edge of the chain level `G_{l-j}` (one-based:
//! `G_{l-j+1}`). Vertices of the last part must lie in `G_1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, binomial_u128, pow_ratio, ratio_int, ratio_to_string, Ratio};
use crate::drc::{self, DrcChain};
use crate::error::{Error, Result};
use crate::hypercore::{Edge, LinkIndex, PartiteHypergraph, Vertex};
use crate::rng;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// Pattern vertices in placement order: part `l` first, ascending index
/// within a part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingOrder {
    pub sequence: Vec<Vertex>,
    pub part_of: BTreeMap<Vertex, usize>,
}

pub fn embedding_order(pattern: &PartiteHypergraph) -> EmbeddingOrder {
    let mut sequence = Vec::with_capacity(pattern.n_vertices());
    let mut part_of = BTreeMap::new();
    for (j, part) in pattern.parts().iter().enumerate().rev() {
        for &v in part {
            sequence.push(v);
            part_of.insert(v, j);
        }
    }
    EmbeddingOrder { sequence, part_of }
}

/// A partial injective map from pattern vertices to host vertices. The
/// embedded vertices are the first `frontier` vertices of the order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub assignment: BTreeMap<Vertex, Vertex>,
    pub frontier: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceNeighbourhood {
    pub vertex: Vertex,
    /// Earlier vertices sharing an edge with `vertex`.
    pub members: Vec<Vertex>,
}

pub fn trace_neighbourhoods(pattern: &PartiteHypergraph, order: &EmbeddingOrder) -> Vec<TraceNeighbourhood> {
    let pos: HashMap<Vertex, usize> = order.sequence.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut nbrs: HashMap<Vertex, BTreeSet<Vertex>> = HashMap::new();
    for e in pattern.edges() {
        for &a in e {
            for &b in e {
                if pos[&b] < pos[&a] {
                    nbrs.entry(a).or_default().insert(b);
                }
            }
        }
    }
    order
        .sequence
        .iter()
        .map(|&v| TraceNeighbourhood {
            vertex: v,
            members: nbrs.remove(&v).map(|s| s.into_iter().collect()).unwrap_or_default(),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// Smallest candidate, no backtracking.
    Greedy,
    /// Seeded-random candidate, no backtracking.
    GreedyRandom,
    /// Depth-first over candidates in ascending order, within the node budget.
    Backtrack,
    /// Depth-first with seeded-random candidate order.
    BacktrackRandom,
}

impl Policy {
    fn backtracks(self) -> bool {
        matches!(self, Policy::Backtrack | Policy::BacktrackRandom)
    }

    fn randomised(self) -> bool {
        matches!(self, Policy::GreedyRandom | Policy::BacktrackRandom)
    }
}

#[derive(Clone, Debug)]
pub struct EmbedConfig {
    pub policy: Policy,
    pub seed: u64,
    pub node_budget: u64,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig {
            policy: Policy::Backtrack,
            seed: 0,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Indexes for repeated candidate queries against one chain and pattern.
pub struct EmbedContext<'a> {
    chain: &'a DrcChain,
    pattern: &'a PartiteHypergraph,
    order: EmbeddingOrder,
    incident: HashMap<Vertex, Vec<usize>>,
    /// `links[r]` indexes `G_r`; `links[0]` is unused.
    links: Vec<LinkIndex>,
}

impl<'a> EmbedContext<'a> {
    pub fn new(chain: &'a DrcChain, pattern: &'a PartiteHypergraph) -> Result<Self> {
        if pattern.l() != chain.l() {
            return Err(Error::Precondition(format!(
                "pattern has {} parts but the chain has {} levels",
                pattern.l(),
                chain.l()
            )));
        }
        let mut incident: HashMap<Vertex, Vec<usize>> = HashMap::new();
        for (i, e) in pattern.edges().iter().enumerate() {
            for &v in e {
                incident.entry(v).or_default().push(i);
            }
        }
        let mut links = vec![LinkIndex::default()];
        links.extend((1..=chain.l()).map(|r| chain.level(r).link_index()));
        Ok(EmbedContext {
            chain,
            pattern,
            order: embedding_order(pattern),
            incident,
            links,
        })
    }

    pub fn order(&self) -> &EmbeddingOrder {
        &self.order
    }

    fn candidates(&self, img: &HashMap<Vertex, Vertex>, used: &HashSet<Vertex>, next: Vertex) -> Vec<Vertex> {
        let l = self.chain.l();
        let j = self.order.part_of[&next];
        let mut cand: Option<Vec<Vertex>> = (j == l - 1).then(|| self.links[1].link(&[]).to_vec());
        for &ei in self.incident.get(&next).map(Vec::as_slice).unwrap_or(&[]) {
            let e = &self.pattern.edges()[ei];
            let Some(key) = e[j + 1..].iter().map(|u| img.get(u).copied()).collect::<Option<Vec<_>>>() else {
                continue;
            };
            let link = self.links[l - j].link(&key);
            cand = Some(match cand {
                None => link.to_vec(),
                Some(c) => c.into_iter().filter(|v| link.binary_search(v).is_ok()).collect(),
            });
        }
        cand.unwrap_or_else(|| self.chain.top().part(j).to_vec())
            .into_iter()
            .filter(|v| !used.contains(v))
            .collect()
    }

    pub fn candidate_set(&self, emb: &Embedding, next: Vertex) -> Vec<Vertex> {
        let img: HashMap<Vertex, Vertex> = emb.assignment.iter().map(|(&a, &b)| (a, b)).collect();
        let used: HashSet<Vertex> = emb.assignment.values().copied().collect();
        self.candidates(&img, &used, next)
    }
}

/// Host vertices available to `next` given the partial embedding `emb`.
pub fn candidate_set(chain: &DrcChain, pattern: &PartiteHypergraph, emb: &Embedding, next: Vertex) -> Result<Vec<Vertex>> {
    Ok(EmbedContext::new(chain, pattern)?.candidate_set(emb, next))
}

/// Whether `f(e ∩ L_i)` is an edge of `G_{|e ∩ L_i|}` for every pattern edge.
pub fn partial_invariant_holds(chain: &DrcChain, pattern: &PartiteHypergraph, emb: &Embedding) -> bool {
    let l = pattern.l();
    pattern.edges().iter().all(|e| {
        let r = e.iter().filter(|v| emb.assignment.contains_key(v)).count();
        if r == 0 {
            return true;
        }
        let tail = &e[l - r..];
        let Some(image) = tail.iter().map(|v| emb.assignment.get(v).copied()).collect::<Option<Vec<_>>>() else {
            return false;
        };
        chain.level(r).contains_edge(&image)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureReport {
    pub deepest_frontier: usize,
    pub pattern_vertices: usize,
    pub budget_exhausted: bool,
    /// Candidate-set sizes along the first path that reached the deepest frontier.
    pub candidate_counts: Vec<usize>,
    pub dead_end_vertex: Option<Vertex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbedReport {
    pub success: bool,
    pub assignment: BTreeMap<Vertex, Vertex>,
    pub verified: bool,
    pub policy: Policy,
    pub seed: u64,
    pub nodes_expanded: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureReport>,
}

impl EmbedReport {
    pub fn embedding(&self) -> Option<Embedding> {
        self.success.then(|| Embedding {
            assignment: self.assignment.clone(),
            frontier: self.assignment.len(),
        })
    }
}

struct Search<'c, 'a> {
    ctx: &'c EmbedContext<'a>,
    policy: Policy,
    rng: rng::Rng,
    img: HashMap<Vertex, Vertex>,
    used: HashSet<Vertex>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    deepest: usize,
    path_counts: Vec<usize>,
    deepest_counts: Vec<usize>,
}

impl Search<'_, '_> {
    fn run(&mut self, pos: usize) -> bool {
        let seq = &self.ctx.order.sequence;
        if pos == seq.len() {
            return true;
        }
        let v = seq[pos];
        let mut cands = self.ctx.candidates(&self.img, &self.used, v);
        if self.policy.randomised() {
            cands.shuffle(&mut self.rng);
        }
        self.path_counts.push(cands.len());
        if pos > self.deepest || self.deepest_counts.is_empty() {
            self.deepest = self.deepest.max(pos);
            self.deepest_counts = self.path_counts.clone();
        }
        let tries = if self.policy.backtracks() { cands.len() } else { cands.len().min(1) };
        for &c in &cands[..tries] {
            if self.nodes >= self.budget {
                self.exhausted = true;
                break;
            }
            self.nodes += 1;
            self.img.insert(v, c);
            self.used.insert(c);
            if self.run(pos + 1) {
                return true;
            }
            self.img.remove(&v);
            self.used.remove(&c);
            if self.exhausted {
                break;
            }
        }
        self.path_counts.pop();
        false
    }
}

pub fn embed_pattern(chain: &DrcChain, pattern: &PartiteHypergraph, cfg: &EmbedConfig) -> Result<EmbedReport> {
    let ctx = EmbedContext::new(chain, pattern)?;
    let mut search = Search {
        ctx: &ctx,
        policy: cfg.policy,
        rng: rng::seeded(cfg.seed),
        img: HashMap::new(),
        used: HashSet::new(),
        nodes: 0,
        budget: cfg.node_budget,
        exhausted: false,
        deepest: 0,
        path_counts: Vec::new(),
        deepest_counts: Vec::new(),
    };
    let found = search.run(0);
    let n = ctx.order.sequence.len();
    if found {
        let emb = Embedding {
            assignment: search.img.iter().map(|(&a, &b)| (a, b)).collect(),
            frontier: n,
        };
        debug_assert!(partial_invariant_holds(chain, pattern, &emb));
        let verified = check_embedding(chain.top(), pattern, &emb);
        Ok(EmbedReport {
            success: true,
            assignment: emb.assignment,
            verified,
            policy: cfg.policy,
            seed: cfg.seed,
            nodes_expanded: search.nodes,
            failure: None,
        })
    } else {
        let deepest = search.deepest;
        Ok(EmbedReport {
            success: false,
            assignment: BTreeMap::new(),
            verified: false,
            policy: cfg.policy,
            seed: cfg.seed,
            nodes_expanded: search.nodes,
            failure: Some(FailureReport {
                deepest_frontier: deepest,
                pattern_vertices: n,
                budget_exhausted: search.exhausted,
                candidate_counts: search.deepest_counts,
                dead_end_vertex: ctx.order.sequence.get(deepest).copied(),
            }),
        })
    }
}

/// Injective, part-respecting, and every pattern edge lands on a host edge.
pub fn check_embedding(host: &PartiteHypergraph, pattern: &PartiteHypergraph, emb: &Embedding) -> bool {
    if host.l() != pattern.l() {
        return false;
    }
    let mut seen = HashSet::new();
    for (j, part) in pattern.parts().iter().enumerate() {
        for v in part {
            let Some(&img) = emb.assignment.get(v) else {
                return false;
            };
            if host.part_of(img) != Some(j) || !seen.insert(img) {
                return false;
            }
        }
    }
    pattern
        .edges()
        .iter()
        .all(|e| host.contains_edge(&e.iter().map(|v| emb.assignment[v]).collect::<Vec<_>>()))
}

/// `s = 2 l D`.
pub fn default_s(l: usize, delta: usize) -> u32 {
    (2 * l * delta) as u32
}

/// `beta = 2 (eps/2)^((2 l D)^(l-1))`, raised to `floor` when given. When the
/// exact value is too large to represent the floor is returned (the exact
/// value is then far below any usable floor).
pub fn default_beta(eps: &Ratio, l: usize, delta: usize, floor: Option<&Ratio>, bit_cap: u64) -> Result<Ratio> {
    let base = eps / ratio_int(2);
    let exponent = (2 * l as u64 * delta as u64).checked_pow(l.saturating_sub(1) as u32);
    let bits_per_power = base.numer().bits() + base.denom().bits();
    let exact = exponent
        .filter(|&e| e.checked_mul(bits_per_power).is_some_and(|b| b <= bit_cap))
        .map(|e| pow_ratio(&base, e) * ratio_int(2));
    match (exact, floor) {
        (Some(b), Some(f)) => Ok(if &b > f { b } else { f.clone() }),
        (Some(b), None) => Ok(b),
        (None, Some(f)) => Ok(f.clone()),
        (None, None) => Err(Error::DigitCap {
            digits: exponent.map_or(u64::MAX, |e| (e as f64 * bits_per_power as f64 * 0.30103) as u64),
            cap: (bit_cap as f64 * 0.30103) as u64,
        }),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodnessEntry {
    /// Pattern vertex whose trace neighbourhood image this is; `None` for the empty set.
    pub vertex: Option<Vertex>,
    pub u: Vec<Vertex>,
    pub bad_extensions: u64,
    pub threshold: String,
    pub good: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodnessReport {
    pub dangerous_sets: usize,
    pub entries: Vec<GoodnessEntry>,
    pub all_good: bool,
}

/// Minimal unions (as host vertex sets) of dangerous sets across the chain.
pub fn dangerous_unions(chain: &DrcChain, beta: &Ratio, budget: u128) -> Result<(usize, Vec<Vec<Vertex>>)> {
    let mut unions = BTreeSet::new();
    let mut count = 0;
    for r in 1..chain.l() {
        let sets = drc::dangerous_sets(chain.level(r + 1), chain.level(r), chain.delta_max, beta, budget)?;
        count += sets.len();
        for s in sets {
            let u: BTreeSet<Vertex> = s.into_iter().flatten().collect();
            unions.insert(u.into_iter().collect::<Vec<_>>());
        }
    }
    let all: Vec<Vec<Vertex>> = unions.into_iter().collect();
    let minimal = all
        .iter()
        .filter(|a| !all.iter().any(|b| b != *a && b.len() < a.len() && b.iter().all(|v| a.binary_search(v).is_ok())))
        .cloned()
        .collect();
    Ok((count, minimal))
}

/// `(beta / 4lD)^(lD - |U|) * C(N, lD - |U|)`.
pub fn goodness_threshold(beta: &Ratio, l: usize, delta: usize, n: usize, u_len: usize) -> Ratio {
    let ld = l * delta;
    let rest = ld.saturating_sub(u_len) as u64;
    let factor = beta / ratio_int((4 * ld) as u64);
    pow_ratio(&factor, rest) * Ratio::from_integer(BigInt::from(binomial(n as u64, rest)))
}

/// Classifies the image of every trace neighbourhood (and the empty set) as
/// good or bad. Audit only: the embedder never consults it.
pub fn goodness_audit(chain: &DrcChain, pattern: &PartiteHypergraph, emb: &Embedding, beta: &Ratio, budget: u128) -> Result<GoodnessReport> {
    let l = chain.l();
    let delta = chain.delta_max;
    let n = chain.part_size();
    let host = chain.top();
    let (dangerous_sets, unions) = dangerous_unions(chain, beta, budget)?;

    let dense: HashMap<Vertex, usize> = host.parts().iter().flatten().enumerate().map(|(i, &v)| (v, i)).collect();
    let words = dense.len().div_ceil(64).max(1);
    let to_bits = |vs: &[Vertex]| {
        let mut b = vec![0u64; words];
        for v in vs {
            let i = dense[v];
            b[i / 64] |= 1 << (i % 64);
        }
        b
    };
    let union_bits: Vec<Vec<u64>> = unions.iter().map(|u| to_bits(u)).collect();

    let order = embedding_order(pattern);
    let traces = trace_neighbourhoods(pattern, &order);
    let mut targets: Vec<(Option<Vertex>, Vec<Vertex>)> = vec![(None, Vec::new())];
    for t in &traces {
        let mut u: Vec<Vertex> = t.members.iter().filter_map(|m| emb.assignment.get(m).copied()).collect();
        u.sort_unstable();
        targets.push((Some(t.vertex), u));
    }

    let mut cache: HashMap<Vec<Vertex>, u64> = HashMap::new();
    let mut entries = Vec::new();
    for (vertex, u) in targets {
        let count = match cache.get(&u) {
            Some(&c) => c,
            None => {
                let c = count_bad_extensions(host, delta, &u, &union_bits, &to_bits, budget)?;
                cache.insert(u.clone(), c);
                c
            }
        };
        let threshold = goodness_threshold(beta, l, delta, n, u.len());
        let good = ratio_int(count) < threshold;
        entries.push(GoodnessEntry {
            vertex,
            u,
            bad_extensions: count,
            threshold: ratio_to_string(&threshold),
            good,
        });
    }
    Ok(GoodnessReport {
        dangerous_sets,
        all_good: entries.iter().all(|e| e.good),
        entries,
    })
}

fn count_bad_extensions(
    host: &PartiteHypergraph,
    delta: usize,
    u: &[Vertex],
    union_bits: &[Vec<u64>],
    to_bits: &dyn Fn(&[Vertex]) -> Vec<u64>,
    budget: u128,
) -> Result<u64> {
    let mut free: Vec<Vec<Vertex>> = Vec::new();
    let mut need: Vec<usize> = Vec::new();
    let mut total: u128 = 1;
    for part in host.parts() {
        let inside = part.iter().filter(|v| u.contains(v)).count();
        if inside > delta {
            return Ok(0);
        }
        let rest: Vec<Vertex> = part.iter().copied().filter(|v| !u.contains(v)).collect();
        total = total.saturating_mul(binomial_u128(rest.len() as u64, (delta - inside) as u64));
        need.push(delta - inside);
        free.push(rest);
    }
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: "goodness audit extensions",
            needed: total,
            limit: budget,
        });
    }
    let mut chosen = u.to_vec();
    let mut count = 0u64;
    extend_parts(&free, &need, 0, 0, &mut chosen, &mut |t| {
        let bits = to_bits(t);
        if union_bits.iter().any(|ub| ub.iter().zip(&bits).all(|(a, b)| a & !b == 0)) {
            count += 1;
        }
    });
    Ok(count)
}

fn extend_parts(free: &[Vec<Vertex>], need: &[usize], part: usize, start: usize, chosen: &mut Vec<Vertex>, visit: &mut dyn FnMut(&[Vertex])) {
    if part == free.len() {
        visit(chosen);
        return;
    }
    if need[part] == 0 {
        extend_parts(free, need, part + 1, 0, chosen, visit);
        return;
    }
    for i in start..free[part].len() {
        chosen.push(free[part][i]);
        let mut next_need = need.to_vec();
        next_need[part] -= 1;
        extend_parts(free, &next_need, part, i + 1, chosen, visit);
        chosen.pop();
    }
}

/// Beta as a float, for diagnostics.
pub fn beta_as_f64(beta: &Ratio) -> f64 {
    if beta.is_positive() {
        beta.numer().to_f64().unwrap_or(f64::INFINITY) / beta.denom().to_f64().unwrap_or(f64::INFINITY)
    } else {
        0.0
    }
}

/// Embeds each pattern edge's image for reporting.
pub fn image_edges(pattern: &PartiteHypergraph, emb: &Embedding) -> Vec<Edge> {
    pattern
        .edges()
        .iter()
        .map(|e| e.iter().map(|v| emb.assignment[v]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::drc::{drc_chain, ChainConfig};

    fn three_part_pattern() -> PartiteHypergraph {
        // W_1 = {0, 1}, W_2 = {2, 3}, W_3 = {4}; two edges sharing vertex 4.
        PartiteHypergraph::new(vec![vec![0, 1], vec![2, 3], vec![4]], vec![vec![0, 2, 4], vec![1, 3, 4]]).unwrap()
    }

    #[test]
    fn order_examples() {
        let p = PartiteHypergraph::new(vec![vec![10], vec![11], vec![12]], vec![]).unwrap();
        assert_eq!(embedding_order(&p).sequence, vec![12, 11, 10]);
        let p = PartiteHypergraph::new(vec![vec![3, 1, 2]], vec![]).unwrap();
        assert_eq!(embedding_order(&p).sequence, vec![1, 2, 3]);
        let p = PartiteHypergraph::new(vec![vec![0, 1], vec![2, 3]], vec![]).unwrap();
        assert_eq!(embedding_order(&p).sequence, vec![2, 3, 0, 1]);
    }

    #[test]
    fn trace_neighbourhoods_respect_order() {
        let p = three_part_pattern();
        let order = embedding_order(&p);
        let traces = trace_neighbourhoods(&p, &order);
        let by_vertex: HashMap<_, _> = traces.iter().map(|t| (t.vertex, t.members.clone())).collect();
        assert!(by_vertex[&4].is_empty());
        assert_eq!(by_vertex[&2], vec![4]);
        assert_eq!(by_vertex[&0], vec![2, 4]);
    }

    #[test]
    fn complete_host_candidates_and_embedding() {
        let host = PartiteHypergraph::complete(3, 4).unwrap();
        let chain = drc_chain(&host, &ChainConfig::new(2, ratio(1, 2), 2, 1)).unwrap();
        let p = three_part_pattern();
        let fresh = Embedding::default();
        assert_eq!(candidate_set(&chain, &p, &fresh, 4).unwrap(), host.part(2).to_vec());
        for policy in [Policy::Greedy, Policy::GreedyRandom, Policy::Backtrack] {
            let rep = embed_pattern(&chain, &p, &EmbedConfig { policy, seed: 3, node_budget: 1000 }).unwrap();
            assert!(rep.success && rep.verified);
            assert!(check_embedding(&host, &p, &rep.embedding().unwrap()));
        }
    }

    #[test]
    fn empty_g1_blocks_first_vertex() {
        let host = PartiteHypergraph::complete(3, 2).unwrap();
        let mut levels: Vec<PartiteHypergraph> = DrcChain::projections(&host, ratio(1, 2), 1).unwrap().levels().to_vec();
        levels[2] = levels[2].with_parts_and_edges(0, vec![]).unwrap();
        let chain = DrcChain::from_levels(levels, 1, ratio(1, 2), 1).unwrap();
        let p = three_part_pattern();
        assert!(candidate_set(&chain, &p, &Embedding::default(), 4).unwrap().is_empty());
        let rep = embed_pattern(&chain, &p, &EmbedConfig::default()).unwrap();
        assert!(!rep.success);
        assert_eq!(rep.failure.unwrap().deepest_frontier, 0);
    }

    #[test]
    fn check_embedding_rejects_broken_maps() {
        let host = PartiteHypergraph::new(PartiteHypergraph::block_parts(3, 2), vec![vec![0, 2, 4], vec![1, 3, 4]]).unwrap();
        let p = three_part_pattern();
        let good = Embedding {
            assignment: BTreeMap::from([(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]),
            frontier: 5,
        };
        assert!(check_embedding(&host, &p, &good));
        let mut swapped = good.clone();
        swapped.assignment.insert(2, 3);
        swapped.assignment.insert(3, 2);
        assert!(!check_embedding(&host, &p, &swapped));
        let mut clash = good.clone();
        clash.assignment.insert(1, 0);
        assert!(!check_embedding(&host, &p, &clash));
        let mut partial = good;
        partial.assignment.remove(&1);
        assert!(!check_embedding(&host, &p, &partial));
        // identity embedding of a host into itself
        let id = Embedding {
            assignment: (0..6).map(|v| (v, v)).collect(),
            frontier: 6,
        };
        assert!(check_embedding(&host, &host, &id));
    }

    #[test]
    fn hidden_copy_is_found_by_backtracking() {
        // Host = the pattern itself spread over block parts of size 2 plus noise-free.
        let host = PartiteHypergraph::new(PartiteHypergraph::block_parts(3, 2), vec![vec![0, 2, 4], vec![1, 3, 4]]).unwrap();
        let chain = DrcChain::projections(&host, ratio(1, 2), 2).unwrap();
        let p = three_part_pattern();
        let rep = embed_pattern(&chain, &p, &EmbedConfig::default()).unwrap();
        assert!(rep.success && rep.verified);
        assert_eq!(rep.assignment[&4], 4);
    }

    #[test]
    fn default_parameters() {
        assert_eq!(default_s(3, 2), 12);
        let b = default_beta(&ratio(1, 2), 2, 1, None, 1 << 20).unwrap();
        // 2 * (1/4)^(4^1)
        assert_eq!(b, ratio(2, 256));
        let f = ratio(1, 10);
        assert_eq!(default_beta(&ratio(1, 2), 19, 9, Some(&f), 1 << 20).unwrap(), f);
        assert!(default_beta(&ratio(1, 2), 19, 9, None, 1 << 20).is_err());
    }

    #[test]
    fn goodness_on_complete_host() {
        let host = PartiteHypergraph::complete(3, 3).unwrap();
        let chain = drc_chain(&host, &ChainConfig::new(1, ratio(1, 2), 1, 2)).unwrap();
        let p = three_part_pattern();
        let rep = embed_pattern(&chain, &p, &EmbedConfig::default()).unwrap();
        let audit = goodness_audit(&chain, &p, &rep.embedding().unwrap(), &ratio(1, 2), 1_000_000).unwrap();
        assert_eq!(audit.dangerous_sets, 0);
        assert!(audit.all_good);
    }

    #[test]
    fn goodness_flags_empty_set_when_everything_is_dangerous() {
        let host = PartiteHypergraph::complete(3, 3).unwrap();
        let mut levels = DrcChain::projections(&host, ratio(1, 2), 1).unwrap().levels().to_vec();
        // Empty top level: every nonempty edge set of G_2 is dangerous.
        levels[0] = levels[0].with_parts_and_edges(0, vec![]).unwrap();
        let chain = DrcChain::from_levels(levels, 1, ratio(1, 2), 1).unwrap();
        let audit = goodness_audit(&chain, &three_part_pattern(), &Embedding::default(), &ratio(1, 2), 1_000_000).unwrap();
        let empty = &audit.entries[0];
        assert!(empty.vertex.is_none());
        assert!(!empty.good);
        assert!(!audit.all_good);
    }
}
