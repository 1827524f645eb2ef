//! Dependent random choice: the condensation step from an `r`-partite level
//! to an `(r-1)`-partite level, its dangerous-set census, and the iterated
//! chain `G_l, ..., G_1`.
//!
//! A step samples a multiset `T` of `s` vertices of the first part (with
//! repetition) and keeps every `(r-1)`-tuple of the trailing parts that
//! extends to an edge through every vertex of `T`. Steps are retried with
//! fresh sub-streams until the survivor count reaches the required density.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial_u128, pow_ratio, ratio_int, ratio_to_f64, ratio_to_string, Ratio};
use crate::error::{Error, Result};
use crate::hypercore::{Edge, LinkIndex, PartiteHypergraph, Vertex};
use crate::rng;

/// Full census enumeration is allowed up to this many edge subsets.
pub const DEFAULT_CENSUS_BUDGET: u128 = 10_000_000;
/// Samples drawn by the estimated (unaudited) census.
pub const CENSUS_SAMPLES: u64 = 200_000;
/// Upper limit applied to the `ceil(8 / eps^s)` retry default.
pub const DEFAULT_RETRY_CAP: u64 = 10_000;
pub const DEFAULT_EXPECTATION_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct DrcParams {
    pub s: u32,
    pub beta: Ratio,
    /// Required density of the produced level.
    pub delta_target: Ratio,
    pub max_retries: u64,
    pub seed: u64,
    pub census_budget: u128,
    /// Density used in the dangerous-set ceiling; the input level's own
    /// density when `None`.
    pub ceiling_density: Option<Ratio>,
}

impl DrcParams {
    pub fn new(s: u32, beta: Ratio, delta_target: Ratio, seed: u64) -> Result<Self> {
        let p = DrcParams {
            s,
            beta,
            delta_target,
            max_retries: DEFAULT_RETRY_CAP,
            seed,
            census_budget: DEFAULT_CENSUS_BUDGET,
            ceiling_density: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let one = Ratio::one();
        if self.s == 0 {
            return Err(Error::InvalidParameter("s must be positive".into()));
        }
        if !self.beta.is_positive() || self.beta > one {
            return Err(Error::InvalidParameter(format!("beta = {} is outside (0,1]", self.beta)));
        }
        if !self.delta_target.is_positive() || self.delta_target > one {
            return Err(Error::InvalidParameter(format!(
                "delta_target = {} is outside (0,1]",
                self.delta_target
            )));
        }
        if self.max_retries == 0 {
            return Err(Error::InvalidParameter("max_retries must be positive".into()));
        }
        Ok(())
    }
}

/// `min(ceil(8 / eps^s), cap)`: the success probability of one attempt is at
/// least `eps^s / 4`.
pub fn default_max_retries(eps: &Ratio, s: u32, cap: u64) -> u64 {
    if !eps.is_positive() {
        return cap;
    }
    let log2_inv = -ratio_to_f64(eps).log2();
    if log2_inv.is_finite() && log2_inv * f64::from(s) > 60.0 {
        return cap;
    }
    let need = crate::arith::ceil_ratio(&(ratio_int(8) / pow_ratio(eps, u64::from(s))));
    need.to_u64().map_or(cap, |v| v.clamp(1, cap))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrcSample {
    /// The multiset `T`, in draw order.
    pub witnesses: Vec<Vertex>,
    pub survivor_edges: Vec<Edge>,
    pub x: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DangerousCensus {
    /// Uniformity of the upper level `G_r`.
    pub level: usize,
    /// `Y_w`: dangerous sets of weight `w` (estimates when not audited).
    pub per_weight: BTreeMap<usize, u64>,
    /// Ceiling `4 r D eps^-s beta^s w^(rD) r^w N^w` for `w = 0..=(r-1)D`;
    /// `None` when the upper level is empty and no ceiling applies.
    #[serde(skip)]
    pub bound_per_weight: BTreeMap<usize, Option<Ratio>>,
    pub within_bounds: bool,
    pub audited: bool,
    pub subsets_examined: u64,
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub delta_max: usize,
    pub beta: Ratio,
    pub s: u32,
    /// `eps` in the ceiling.
    pub density: Ratio,
    pub budget: u128,
}

/// Number of common extensions `v` in the first part of `g` of the
/// transversal `e` of the trailing parts.
pub fn edge_degree(g: &PartiteHypergraph, e: &[Vertex]) -> Result<usize> {
    let l = g.l();
    if l < 2 || e.len() != l - 1 {
        return Err(Error::InvalidParameter(format!(
            "{e:?} is not a transversal of parts 2..{l}"
        )));
    }
    for (i, &v) in e.iter().enumerate() {
        if g.part_of(v) != Some(i + 1) {
            return Err(Error::InvalidParameter(format!(
                "{e:?} is not a transversal of parts 2..{l}"
            )));
        }
    }
    Ok(g.edges().iter().filter(|edge| &edge[1..] == e).count())
}

fn equal_part_size(g: &PartiteHypergraph) -> Result<usize> {
    g.part_size()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Precondition("host parts must be nonempty and of equal size".into()))
}

/// Edge density `|E| / N^r`.
pub fn density(g: &PartiteHypergraph) -> Result<Ratio> {
    let n = equal_part_size(g)?;
    let total = num_traits::pow(BigInt::from(n), g.l());
    Ok(Ratio::new(BigInt::from(g.edge_count()), total))
}

/// `E[X] = sum over (r-1)-transversals e of (d(e)/N)^s`, exactly.
pub fn exact_expected_survivors(g: &PartiteHypergraph, s: u32, budget: u128) -> Result<Ratio> {
    let n = equal_part_size(g)?;
    if g.l() < 2 {
        return Err(Error::Precondition("need at least two parts".into()));
    }
    let tuples = (n as u128).checked_pow(g.l() as u32 - 1).unwrap_or(u128::MAX);
    if tuples > budget {
        return Err(Error::BudgetExceeded {
            what: "expected-survivor enumeration",
            needed: tuples,
            limit: budget,
        });
    }
    let links = g.link_index();
    let nn = ratio_int(n as u64);
    let mut total = Ratio::zero();
    for (_, link) in links.iter() {
        total += pow_ratio(&(ratio_int(link.len() as u64) / &nn), u64::from(s));
    }
    Ok(total)
}

/// Survivors for a fixed multiset of witnesses.
pub fn common_neighbourhood(links: &LinkIndex, witnesses: &[Vertex]) -> Vec<Edge> {
    let mut distinct = witnesses.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut out: Vec<Edge> = links
        .iter()
        .filter(|(_, link)| distinct.iter().all(|w| link.binary_search(w).is_ok()))
        .map(|(tail, _)| tail.clone())
        .collect();
    out.sort_unstable();
    out
}

/// Draws the witness multiset for one attempt.
fn draw_witnesses(first_part: &[Vertex], s: u32, r: &mut rng::Rng) -> Vec<Vertex> {
    (0..s).map(|_| first_part[r.gen_range(0..first_part.len())]).collect()
}

/// One sampled attempt without retries; used by the statistical checks.
pub fn sample_once(g: &PartiteHypergraph, links: &LinkIndex, s: u32, r: &mut rng::Rng) -> DrcSample {
    let witnesses = draw_witnesses(g.part(0), s, r);
    let survivor_edges = common_neighbourhood(links, &witnesses);
    DrcSample {
        x: survivor_edges.len(),
        witnesses,
        survivor_edges,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub level: usize,
    pub s: u32,
    pub beta: String,
    pub x: usize,
    pub delta_required: String,
    #[serde(rename = "Yw")]
    pub yw: BTreeMap<String, u64>,
    #[serde(rename = "Yw_bound")]
    pub yw_bound: BTreeMap<String, String>,
    pub within_bounds: bool,
    pub audited: bool,
    pub attempts: u64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct DrcStep {
    pub level: PartiteHypergraph,
    pub sample: DrcSample,
    pub census: DangerousCensus,
    pub attempts: u64,
    pub params: DrcParams,
}

impl DrcStep {
    pub fn report(&self) -> StepReport {
        StepReport {
            level: self.census.level,
            s: self.params.s,
            beta: ratio_to_string(&self.params.beta),
            x: self.sample.x,
            delta_required: ratio_to_string(&self.params.delta_target),
            yw: self.census.per_weight.iter().map(|(w, c)| (w.to_string(), *c)).collect(),
            yw_bound: self
                .census
                .bound_per_weight
                .iter()
                .map(|(w, b)| (w.to_string(), b.as_ref().map_or_else(|| "none".to_string(), ratio_to_string)))
                .collect(),
            within_bounds: self.census.within_bounds,
            audited: self.census.audited,
            attempts: self.attempts,
            seed: self.params.seed,
        }
    }
}

/// One condensation step. Attempt `i` draws from sub-stream `i` of the seed.
pub fn drc_step(g: &PartiteHypergraph, delta_max: usize, p: &DrcParams) -> Result<DrcStep> {
    p.validate()?;
    let n = equal_part_size(g)?;
    let r = g.l();
    if r < 2 {
        return Err(Error::Precondition("drc_step needs at least two parts".into()));
    }
    let links = g.link_index();
    let tuples = pow_ratio(&ratio_int(n as u64), r as u64 - 1);
    let required = &p.delta_target * &tuples;
    let mut best: Option<DrcSample> = None;
    let mut accepted = None;
    for attempt in 0..p.max_retries {
        let mut stream = rng::substream(p.seed, attempt);
        let sample = sample_once(g, &links, p.s, &mut stream);
        let ok = ratio_int(sample.x as u64) >= required;
        if best.as_ref().map_or(true, |b| sample.x > b.x) {
            best = Some(sample.clone());
        }
        if ok {
            accepted = Some((sample, attempt + 1));
            break;
        }
    }
    let Some((sample, attempts)) = accepted else {
        return Err(Error::RetriesExhausted {
            level: r,
            attempts: p.max_retries,
            best_x: best.map_or(0, |b| b.x),
            required_x: ratio_to_string(&required),
            seed: p.seed,
        });
    };
    let level = g.with_parts_and_edges(1, sample.survivor_edges.clone())?;
    let cfg = CensusConfig {
        delta_max,
        beta: p.beta.clone(),
        s: p.s,
        density: match &p.ceiling_density {
            Some(d) => d.clone(),
            None => density(g)?,
        },
        budget: p.census_budget,
    };
    let census = match dangerous_census(g, &level, &cfg) {
        Ok(c) => c,
        Err(Error::BudgetExceeded { .. }) => sampled_census(g, &level, &cfg, rng::derive_seed(p.seed, u64::MAX)),
        Err(e) => return Err(e),
    };
    Ok(DrcStep {
        level,
        sample,
        census,
        attempts,
        params: p.clone(),
    })
}

/// Number of nonempty subsets of at most `delta_max` edges.
pub fn census_subset_count(edges: usize, delta_max: usize) -> u128 {
    (1..=delta_max.min(edges))
        .map(|t| binomial_u128(edges as u64, t as u64))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// The dangerous-set ceiling for each weight `0..=(r-1)*delta_max`.
pub fn census_ceilings(r: usize, n: usize, cfg: &CensusConfig) -> BTreeMap<usize, Option<Ratio>> {
    let max_w = (r - 1) * cfg.delta_max;
    let mut out = BTreeMap::new();
    for w in 0..=max_w {
        if !cfg.density.is_positive() {
            out.insert(w, None);
            continue;
        }
        let s = u64::from(cfg.s);
        let alpha = ratio_int((4 * r * cfg.delta_max) as u64) / pow_ratio(&cfg.density, s);
        let rest = pow_ratio(&cfg.beta, s)
            * pow_ratio(&ratio_int(w as u64), (r * cfg.delta_max) as u64)
            * pow_ratio(&ratio_int(r as u64), w as u64)
            * pow_ratio(&ratio_int(n as u64), w as u64);
        out.insert(w, Some(alpha * rest));
    }
    out
}

fn within_bounds(per_weight: &BTreeMap<usize, u64>, bounds: &BTreeMap<usize, Option<Ratio>>) -> bool {
    per_weight.iter().all(|(w, &y)| {
        y == 0
            || match bounds.get(w) {
                Some(Some(b)) => ratio_int(y) < *b,
                Some(None) => true,
                None => false,
            }
    })
}

/// Prepared data shared by the exact and sampled census.
struct CensusInput<'a> {
    links: Vec<&'a [Vertex]>,
    dense_edges: Vec<Vec<usize>>,
    vertex_count: usize,
    n: usize,
    beta: &'a Ratio,
}

impl<'a> CensusInput<'a> {
    fn new(upper_links: &'a LinkIndex, lower: &'a PartiteHypergraph, n: usize, beta: &'a Ratio) -> Self {
        let mut ids: HashMap<Vertex, usize> = HashMap::new();
        let dense_edges = lower
            .edges()
            .iter()
            .map(|e| {
                e.iter()
                    .map(|v| {
                        let next = ids.len();
                        *ids.entry(*v).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        CensusInput {
            links: lower.edges().iter().map(|e| upper_links.link(e)).collect(),
            dense_edges,
            vertex_count: ids.len(),
            n,
            beta,
        }
    }

    /// `|N(S)| < beta N`.
    fn dangerous(&self, common: usize) -> bool {
        BigInt::from(common) * self.beta.denom() < self.beta.numer() * BigInt::from(self.n)
    }
}

fn intersect(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

struct CensusWalk<'a> {
    input: &'a CensusInput<'a>,
    delta_max: usize,
    mult: Vec<u32>,
    weight: usize,
    per_weight: BTreeMap<usize, u64>,
    examined: u64,
}

impl CensusWalk<'_> {
    fn visit(&mut self, start: usize, depth: usize, common: &[Vertex]) {
        for i in start..self.input.links.len() {
            let next = if depth == 0 {
                self.input.links[i].to_vec()
            } else {
                intersect(common, self.input.links[i])
            };
            for &v in &self.input.dense_edges[i] {
                if self.mult[v] == 0 {
                    self.weight += 1;
                }
                self.mult[v] += 1;
            }
            self.examined += 1;
            if self.input.dangerous(next.len()) {
                *self.per_weight.entry(self.weight).or_insert(0) += 1;
            }
            if depth + 1 < self.delta_max {
                self.visit(i + 1, depth + 1, &next);
            }
            for &v in &self.input.dense_edges[i] {
                self.mult[v] -= 1;
                if self.mult[v] == 0 {
                    self.weight -= 1;
                }
            }
        }
    }
}

/// Exact census of dangerous edge sets of `lower` relative to `upper`.
/// The first-edge branches are explored in parallel and merged by weight.
pub fn dangerous_census(upper: &PartiteHypergraph, lower: &PartiteHypergraph, cfg: &CensusConfig) -> Result<DangerousCensus> {
    let n = equal_part_size(upper)?;
    check_level_pair(upper, lower)?;
    let subsets = census_subset_count(lower.edge_count(), cfg.delta_max);
    if subsets > cfg.budget {
        return Err(Error::BudgetExceeded {
            what: "dangerous-set census",
            needed: subsets,
            limit: cfg.budget,
        });
    }
    let upper_links = upper.link_index();
    let input = CensusInput::new(&upper_links, lower, n, &cfg.beta);
    let m = input.links.len();
    let branches: Vec<(BTreeMap<usize, u64>, u64)> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut walk = CensusWalk {
                input: &input,
                delta_max: cfg.delta_max,
                mult: vec![0; input.vertex_count],
                weight: 0,
                per_weight: BTreeMap::new(),
                examined: 0,
            };
            if cfg.delta_max > 0 {
                // Restrict the top level to the single edge `first`.
                for &v in &input.dense_edges[first] {
                    walk.mult[v] += 1;
                }
                walk.weight = input.dense_edges[first].len();
                let common = input.links[first].to_vec();
                walk.examined += 1;
                if input.dangerous(common.len()) {
                    *walk.per_weight.entry(walk.weight).or_insert(0) += 1;
                }
                if cfg.delta_max > 1 {
                    walk.visit(first + 1, 1, &common);
                }
            }
            (walk.per_weight, walk.examined)
        })
        .collect();
    let mut per_weight = BTreeMap::new();
    let mut examined = 0;
    for (pw, ex) in branches {
        examined += ex;
        for (w, c) in pw {
            *per_weight.entry(w).or_insert(0) += c;
        }
    }
    let bounds = census_ceilings(upper.l(), n, cfg);
    Ok(DangerousCensus {
        level: upper.l(),
        within_bounds: within_bounds(&per_weight, &bounds),
        per_weight,
        bound_per_weight: bounds,
        audited: true,
        subsets_examined: examined,
    })
}

/// Estimated census from uniformly sampled edge subsets; never audited.
pub fn sampled_census(upper: &PartiteHypergraph, lower: &PartiteHypergraph, cfg: &CensusConfig, seed: u64) -> DangerousCensus {
    let n = upper.part_size().unwrap_or(0);
    let upper_links = upper.link_index();
    let input = CensusInput::new(&upper_links, lower, n, &cfg.beta);
    let m = input.links.len();
    let sizes: Vec<usize> = (1..=cfg.delta_max.min(m)).collect();
    let weights: Vec<f64> = sizes.iter().map(|&t| binomial_u128(m as u64, t as u64) as f64).collect();
    let total: f64 = weights.iter().sum();
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    let mut r = rng::seeded(seed);
    let samples = if sizes.is_empty() { 0 } else { CENSUS_SAMPLES };
    for _ in 0..samples {
        let mut pick = r.gen::<f64>() * total;
        let mut t = sizes[sizes.len() - 1];
        for (i, w) in weights.iter().enumerate() {
            if pick < *w {
                t = sizes[i];
                break;
            }
            pick -= w;
        }
        let chosen = index::sample(&mut r, m, t).into_vec();
        let mut common = input.links[chosen[0]].to_vec();
        let mut verts: Vec<usize> = Vec::new();
        for &i in &chosen {
            common = intersect(&common, input.links[i]);
            verts.extend(&input.dense_edges[i]);
        }
        verts.sort_unstable();
        verts.dedup();
        if input.dangerous(common.len()) {
            *counts.entry(verts.len()).or_insert(0) += 1;
        }
    }
    let per_weight: BTreeMap<usize, u64> = counts
        .into_iter()
        .map(|(w, c)| (w, (c as f64 / samples as f64 * total).round() as u64))
        .collect();
    let bounds = census_ceilings(upper.l(), n, cfg);
    DangerousCensus {
        level: upper.l(),
        within_bounds: within_bounds(&per_weight, &bounds),
        per_weight,
        bound_per_weight: bounds,
        audited: false,
        subsets_examined: samples,
    }
}

fn check_level_pair(upper: &PartiteHypergraph, lower: &PartiteHypergraph) -> Result<()> {
    if upper.l() < 2 || lower.l() + 1 != upper.l() || lower.parts() != &upper.parts()[1..] {
        return Err(Error::Precondition(
            "lower level must live on the trailing parts of the upper level".into(),
        ));
    }
    Ok(())
}

/// Every dangerous edge set of `lower` relative to `upper` (exact, budgeted).
pub fn dangerous_sets(upper: &PartiteHypergraph, lower: &PartiteHypergraph, delta_max: usize, beta: &Ratio, budget: u128) -> Result<Vec<Vec<Edge>>> {
    let n = equal_part_size(upper)?;
    check_level_pair(upper, lower)?;
    let subsets = census_subset_count(lower.edge_count(), delta_max);
    if subsets > budget {
        return Err(Error::BudgetExceeded {
            what: "dangerous-set listing",
            needed: subsets,
            limit: budget,
        });
    }
    let upper_links = upper.link_index();
    let input = CensusInput::new(&upper_links, lower, n, beta);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    list_dangerous(&input, lower.edges(), delta_max, 0, None, &mut chosen, &mut out);
    Ok(out)
}

fn list_dangerous(
    input: &CensusInput,
    edges: &[Edge],
    delta_max: usize,
    start: usize,
    common: Option<&[Vertex]>,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<Edge>>,
) {
    if chosen.len() == delta_max {
        return;
    }
    for i in start..edges.len() {
        let next = match common {
            None => input.links[i].to_vec(),
            Some(c) => intersect(c, input.links[i]),
        };
        chosen.push(i);
        if input.dangerous(next.len()) {
            out.push(chosen.iter().map(|&j| edges[j].clone()).collect());
        }
        list_dangerous(input, edges, delta_max, i + 1, Some(&next), chosen, out);
        chosen.pop();
    }
}

#[derive(Clone, Debug)]
pub struct ChainConfig {
    pub s: u32,
    pub beta: Ratio,
    pub delta_max: usize,
    pub seed: u64,
    pub retry_cap: u64,
    pub census_budget: u128,
}

impl ChainConfig {
    pub fn new(s: u32, beta: Ratio, delta_max: usize, seed: u64) -> Self {
        ChainConfig {
            s,
            beta,
            delta_max,
            seed,
            retry_cap: DEFAULT_RETRY_CAP,
            census_budget: DEFAULT_CENSUS_BUDGET,
        }
    }
}

/// The levels `G_l, ..., G_1` (index 0 is the host). `G_r` lives on the last
/// `r` parts of the host.
#[derive(Clone, Debug)]
pub struct DrcChain {
    levels: Vec<PartiteHypergraph>,
    densities: Vec<Ratio>,
    steps: Vec<StepReport>,
    pub s: u32,
    pub beta: Ratio,
    pub delta_max: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub l: usize,
    pub part_size: usize,
    pub s: u32,
    pub beta: String,
    pub delta_max: usize,
    pub seed: u64,
    /// `delta_l, ..., delta_1`.
    pub densities: Vec<String>,
    pub edge_counts: Vec<usize>,
    pub steps: Vec<StepReport>,
}

impl DrcChain {
    /// A chain from explicit levels. Required densities follow the recurrence
    /// from the host's actual density; no step reports are attached.
    pub fn from_levels(levels: Vec<PartiteHypergraph>, s: u32, beta: Ratio, delta_max: usize) -> Result<Self> {
        let Some(top) = levels.first() else {
            return Err(Error::InvalidParameter("a chain needs at least one level".into()));
        };
        let l = top.l();
        equal_part_size(top)?;
        if levels.len() != l {
            return Err(Error::InvalidParameter(format!("expected {l} levels, got {}", levels.len())));
        }
        for (i, g) in levels.iter().enumerate() {
            if g.parts() != &top.parts()[i..] {
                return Err(Error::InvalidParameter(format!("level G_{} is not on the trailing parts", l - i)));
            }
        }
        let densities = density_recurrence(density(top)?, s, l);
        Ok(DrcChain {
            levels,
            densities,
            steps: Vec::new(),
            s,
            beta,
            delta_max,
            seed: 0,
        })
    }

    /// The chain of projections: `G_r` is the set of trailing `r`-tuples of
    /// host edges. Every partial match extends, so embedding into it is an
    /// exact search of the host for patterns without isolated vertices.
    pub fn projections(top: &PartiteHypergraph, beta: Ratio, delta_max: usize) -> Result<Self> {
        let l = top.l();
        let levels = (0..l)
            .map(|i| top.with_parts_and_edges(i, top.edges().iter().map(|e| e[i..].to_vec()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_levels(levels, 1, beta, delta_max)
    }

    pub fn l(&self) -> usize {
        self.levels.len()
    }

    pub fn part_size(&self) -> usize {
        self.levels[0].part_size().unwrap_or(0)
    }

    pub fn top(&self) -> &PartiteHypergraph {
        &self.levels[0]
    }

    /// `G_r` for `1 <= r <= l`.
    pub fn level(&self, r: usize) -> &PartiteHypergraph {
        &self.levels[self.l() - r]
    }

    pub fn levels(&self) -> &[PartiteHypergraph] {
        &self.levels
    }

    /// Required density `delta_r`.
    pub fn density(&self, r: usize) -> &Ratio {
        &self.densities[self.l() - r]
    }

    pub fn densities(&self) -> &[Ratio] {
        &self.densities
    }

    pub fn steps(&self) -> &[StepReport] {
        &self.steps
    }

    pub fn report(&self) -> ChainReport {
        ChainReport {
            l: self.l(),
            part_size: self.part_size(),
            s: self.s,
            beta: ratio_to_string(&self.beta),
            delta_max: self.delta_max,
            seed: self.seed,
            densities: self.densities.iter().map(ratio_to_string).collect(),
            edge_counts: self.levels.iter().map(PartiteHypergraph::edge_count).collect(),
            steps: self.steps.clone(),
        }
    }
}

/// `delta_l = eps`, `delta_{r-1} = delta_r^s / 2`; returned top-down.
pub fn density_recurrence(eps: Ratio, s: u32, l: usize) -> Vec<Ratio> {
    let mut out = vec![eps];
    for _ in 1..l {
        let prev = out.last().expect("nonempty");
        out.push(pow_ratio(prev, u64::from(s)) / ratio_int(2));
    }
    out
}

/// Closed form `delta_{l-i} = 2^{-(s^i - 1)/(s - 1)} eps^{s^i}` (for `s = 1`
/// the exponent of two is `i`).
pub fn closed_form_density(eps: &Ratio, s: u32, i: u32) -> Ratio {
    let si = u64::from(s).pow(i);
    let two_exp = if s == 1 { u64::from(i) } else { (si - 1) / (u64::from(s) - 1) };
    pow_ratio(eps, si) / pow_ratio(&ratio_int(2), two_exp)
}

/// Iterates [`drc_step`] `l - 1` times starting from the host density.
pub fn drc_chain(g: &PartiteHypergraph, cfg: &ChainConfig) -> Result<DrcChain> {
    let l = g.l();
    equal_part_size(g)?;
    let densities = density_recurrence(density(g)?, cfg.s, l);
    let mut levels = vec![g.clone()];
    let mut steps = Vec::new();
    for r in (2..=l).rev() {
        let delta_r = &densities[l - r];
        let delta_next = densities[l - r + 1].clone();
        if !delta_next.is_positive() {
            return Err(Error::Precondition("host has no edges".into()));
        }
        let params = DrcParams {
            s: cfg.s,
            beta: cfg.beta.clone(),
            delta_target: delta_next,
            max_retries: default_max_retries(delta_r, cfg.s, cfg.retry_cap),
            seed: rng::derive_seed(cfg.seed, r as u64),
            census_budget: cfg.census_budget,
            ceiling_density: Some(delta_r.clone()),
        };
        let step = drc_step(levels.last().expect("nonempty"), cfg.delta_max, &params)?;
        steps.push(step.report());
        levels.push(step.level);
    }
    Ok(DrcChain {
        levels,
        densities,
        steps,
        s: cfg.s,
        beta: cfg.beta.clone(),
        delta_max: cfg.delta_max,
        seed: cfg.seed,
    })
}
