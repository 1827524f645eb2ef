//! Agreement checks between the fast searchers and the brute-force oracles.

use std::collections::BTreeMap;

use rand::Rng as _;
use serde::Serialize;

use crate::arith::ratio;
use crate::drc::{self, dangerous_census, drc_chain, ChainConfig, CensusConfig, DrcChain};
use crate::embed::{self, embed_pattern, goodness_audit, EmbedConfig, EmbedContext, Embedding, Policy};
use crate::hypercore::{gen_pattern, strong_chromatic_number, transversals, ColouringMode, Hypergraph, PartiteHypergraph, PatternKind};
use crate::oracle::{self, Outcome, SearchBudget};
use crate::reduction::{count_mono_cliques, EdgeColouring, ExplicitColouring};
use crate::rng;
use crate::steppingup::{find_mono_copy, CopySearchConfig, SearchResult};

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub instances: u64,
    pub skipped: u64,
    pub disagreements: Vec<String>,
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        CheckReport {
            name,
            instances: 0,
            skipped: 0,
            disagreements: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.disagreements.len() < 20 {
            self.disagreements.push(detail());
        }
    }

    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfTestReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

/// Runs every check with `instances` random cases each.
pub fn run_selftest(instances: u64, seed: u64) -> SelfTestReport {
    let checks = vec![
        copy_search_agreement(instances, rng::derive_seed(seed, 1)),
        embed_agreement(instances, rng::derive_seed(seed, 2)),
        clique_count_agreement(instances, rng::derive_seed(seed, 3)),
        census_agreement(instances, rng::derive_seed(seed, 4)),
        candidate_agreement(instances, rng::derive_seed(seed, 5)),
        goodness_agreement(instances.min(50), rng::derive_seed(seed, 6)),
        strong_chromatic_agreement(instances, rng::derive_seed(seed, 7)),
        ramsey_sanity(),
    ];
    SelfTestReport {
        seed,
        passed: checks.iter().all(CheckReport::passed),
        checks,
    }
}

/// Monochromatic copy search against the naive backtracker.
pub fn copy_search_agreement(instances: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("mono copy search vs naive");
    for i in 0..instances {
        let mut r = rng::substream(seed, i);
        let k = r.gen_range(2..=3);
        let n = r.gen_range(k + 1..=if k == 2 { 10 } else { 8 });
        let q = r.gen_range(2..=3u8);
        let pn = r.gen_range(k..=5.min(n));
        let max_m = oracle::subsets(pn, k).len().min(5);
        let m = r.gen_range(1..=max_m);
        let c = ExplicitColouring::random(k, n, q, r.gen()).expect("valid");
        let h = gen_pattern(PatternKind::Random { k, n: pn, m, seed: r.gen() }).expect("valid");
        let fast = find_mono_copy(&c, &h, &CopySearchConfig { seed: i, ..Default::default() });
        let (slow, _) = oracle::naive_find_mono_copy(n, &|s| c.colour(s), q, pn, h.edges(), None, &SearchBudget::nodes(u64::MAX));
        match fast {
            Ok(v) => {
                let fast_found = v.result == SearchResult::Counterexample;
                let slow_found = matches!(slow, Outcome::Found(_));
                let verified = !fast_found || {
                    let col = v.colour.unwrap();
                    oracle::verify_copy(&|s| c.colour(s) == col, h.edges(), &v.copy)
                };
                rep.record(fast_found == slow_found && verified, || format!("instance {i}: fast {fast_found}, naive {slow_found}"));
            }
            Err(e) => rep.record(false, || format!("instance {i}: {e}")),
        }
    }
    rep
}

fn random_partite_pattern(r: &mut rng::Rng, l: usize, max_part: usize) -> PartiteHypergraph {
    let mut parts = Vec::with_capacity(l);
    let mut next = 0;
    for _ in 0..l {
        let size = r.gen_range(1..=max_part);
        parts.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let all: Vec<_> = transversals(&parts).collect();
    let m = r.gen_range(1..=all.len().min(4));
    let mut edges: Vec<_> = rand::seq::index::sample(r, all.len(), m).into_iter().map(|j| all[j].clone()).collect();
    // cover every vertex: isolated vertices of the last part would need
    // distinct images in G_1 that the projection chain does not provide
    for v in 0..next {
        if !edges.iter().any(|e| e.contains(&v)) {
            let through: Vec<_> = all.iter().filter(|e| e.contains(&v)).collect();
            edges.push(through[r.gen_range(0..through.len())].clone());
        }
    }
    PartiteHypergraph::new(parts, edges).expect("valid")
}

/// Exact embedding (backtracking over the projection chain) against the
/// naive part-respecting copy search.
pub fn embed_agreement(instances: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("partite embedding vs naive");
    for i in 0..instances {
        let mut r = rng::substream(seed, i);
        let l = r.gen_range(2..=3);
        let n = r.gen_range(2..=4);
        let host = PartiteHypergraph::random(l, n, r.gen_range(0.2..0.9), r.gen()).expect("valid");
        let pattern = random_partite_pattern(&mut r, l, 2);
        let chain = DrcChain::projections(&host, ratio(1, 2), pattern.max_degree().max(1)).expect("valid");
        let fast = embed_pattern(&chain, &pattern, &EmbedConfig { policy: Policy::Backtrack, seed: i, node_budget: u64::MAX }).expect("valid");
        let host_n = l * n;
        let pred = |s: &[usize]| host.to_part_order(s).is_some_and(|e| host.contains_edge(&e));
        let allowed = |p: usize, h: usize| pattern.part_of(p) == host.part_of(h);
        let (slow, _) = oracle::naive_find_copy(host_n, &pred, pattern.n_vertices(), pattern.edges(), Some(&allowed), &SearchBudget::nodes(u64::MAX));
        let slow_found = matches!(slow, Outcome::Found(_));
        let sound = !fast.success || (fast.verified && embed::check_embedding(&host, &pattern, &fast.embedding().unwrap()));
        rep.record(fast.success == slow_found && sound, || format!("instance {i}: fast {}, naive {slow_found}", fast.success));
    }
    rep
}

pub fn clique_count_agreement(instances: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("mono clique count vs naive");
    for i in 0..instances {
        let mut r = rng::substream(seed, i);
        let k = r.gen_range(2..=3);
        let n = r.gen_range(k..=9);
        let l = r.gen_range(k..=n.min(5));
        let q = r.gen_range(1..=3u8);
        let c = ExplicitColouring::random(k, n, q, r.gen()).expect("valid");
        let fast = count_mono_cliques(&c, l, u64::MAX);
        let slow = oracle::naive_count_mono_cliques(n, k, l, q, &|s| c.colour(s));
        rep.record(fast.as_ref().ok() == Some(&slow), || format!("instance {i}: {fast:?} vs {slow:?}"));
    }
    rep
}

fn nonzero(m: &BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    m.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect()
}

pub fn census_agreement(instances: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("dangerous-set census vs naive");
    for i in 0..instances {
        let mut r = rng::substream(seed, i);
        let l = r.gen_range(2..=3);
        let n = r.gen_range(2..=3);
        let upper = PartiteHypergraph::random(l, n, r.gen_range(0.2..0.9), r.gen()).expect("valid");
        let lower_full = PartiteHypergraph::random(l - 1, n, r.gen_range(0.2..0.9), r.gen()).expect("valid");
        // relabel the lower level onto the upper level's trailing parts
        let shift = n;
        let lower = upper
            .with_parts_and_edges(1, lower_full.edges().iter().map(|e| e.iter().map(|v| v + shift).collect()).collect())
            .expect("valid");
        let delta_max = r.gen_range(1..=3);
        let beta = ratio(r.gen_range(1..=3), 4);
        let cfg = CensusConfig {
            delta_max,
            beta: beta.clone(),
            s: 1,
            density: ratio(1, 2),
            budget: drc::DEFAULT_CENSUS_BUDGET,
        };
        let fast = dangerous_census(&upper, &lower, &cfg).map(|c| nonzero(&c.per_weight));
        let slow = oracle::naive_dangerous_census(upper.edges(), lower.edges(), upper.part(0), delta_max, &beta, n);
        rep.record(fast.as_ref().ok() == Some(&slow), || format!("instance {i}: {fast:?} vs {slow:?}"));
    }
    rep
}

fn random_chain(r: &mut rng::Rng, l: usize, n: usize, delta_max: usize) -> Option<DrcChain> {
    let host = PartiteHypergraph::random(l, n, r.gen_range(0.5..1.0), r.gen()).ok()?;
    drc_chain(&host, &ChainConfig::new(1, ratio(1, 2), delta_max, r.gen())).ok()
}

pub fn candidate_agreement(instances: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("embedding candidates vs naive filter");
    for i in 0..instances {
        let mut r = rng::substream(seed, i);
        let l = r.gen_range(2..=3);
        let pattern = random_partite_pattern(&mut r, l, 2);
        let Some(chain) = random_chain(&mut r, l, 4, pattern.max_degree().max(1)) else {
            rep.skipped += 1;
            continue;
        };
        let ctx = EmbedContext::new(&chain, &pattern).expect("valid");
        let levels: Vec<Vec<Vec<usize>>> = std::iter::once(Vec::new())
            .chain((1..=l).map(|rr| chain.level(rr).edges().to_vec()))
            .collect();
        let mut emb = Embedding::default();
        let mut ok = true;
        for &v in &ctx.order().sequence.clone() {
            let part = ctx.order().part_of[&v];
            let fast = ctx.candidate_set(&emb, v);
            let slow = oracle::naive_candidate_filter(chain.top().part(part), &levels, pattern.edges(), &emb.assignment, v, part);
            if fast != slow {
                ok = false;
                break;
            }
            let Some(&pick) = fast.get(r.gen_range(0..fast.len().max(1))) else { break };
            emb.assignment.insert(v, pick);
            emb.frontier += 1;
            if !embed::partial_invariant_holds(&chain, &pattern, &emb) {
                ok = false;
                break;
            }
        }
        rep.record(ok, || format!("instance {i}: candidate sets differ"));
    }
    rep
}

pub fn goodness_agreement(instances: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("goodness audit vs naive recount");
    for i in 0..instances {
        let mut r = rng::substream(seed, i);
        let l = 3;
        let pattern = random_partite_pattern(&mut r, l, 2);
        let delta = pattern.max_degree().max(1);
        let Some(chain) = random_chain(&mut r, l, 3, delta) else {
            rep.skipped += 1;
            continue;
        };
        let beta = ratio(1, 2);
        let found = embed_pattern(&chain, &pattern, &EmbedConfig::default()).expect("valid");
        let emb = found.embedding().unwrap_or_default();
        let Ok(audit) = goodness_audit(&chain, &pattern, &emb, &beta, 10_000_000) else {
            rep.skipped += 1;
            continue;
        };
        let (_, unions) = embed::dangerous_unions(&chain, &beta, 10_000_000).expect("fits");
        let ok = audit.entries.iter().all(|e| {
            let slow = oracle::naive_bad_count(chain.top().parts(), delta, &e.u, &unions);
            slow == e.bad_extensions && e.good == (crate::arith::ratio_int(slow) < embed::goodness_threshold(&beta, l, delta, 3, e.u.len()))
        });
        rep.record(ok, || format!("instance {i}: bad-extension counts differ"));
    }
    rep
}

pub fn strong_chromatic_agreement(instances: u64, seed: u64) -> CheckReport {
    let mut rep = CheckReport::new("exact strong chromatic number vs naive");
    for i in 0..instances {
        let mut r = rng::substream(seed, i);
        let k = r.gen_range(2..=3);
        let n = r.gen_range(k..=7);
        let m = r.gen_range(0..=oracle::subsets(n, k).len().min(6));
        let h = gen_pattern(PatternKind::Random { k, n, m, seed: r.gen() }).expect("valid");
        let fast = strong_chromatic_number(&h, ColouringMode::Exact).map(|c| c.count);
        let slow = oracle::naive_strong_chromatic(n, h.edges());
        rep.record(fast.as_ref().ok() == Some(&slow), || format!("instance {i}: {fast:?} vs {slow}"));
    }
    rep
}

/// `K_3` arrows at 6 vertices and not at 5.
pub fn ramsey_sanity() -> CheckReport {
    let mut rep = CheckReport::new("r(K_3) = 6");
    let tri = Hypergraph::complete(3, 2).expect("valid");
    let b = SearchBudget::default();
    let six = oracle::exhaustive_ramsey_check(3, tri.edges(), 2, 6, 2, &b);
    let five = oracle::exhaustive_ramsey_check(3, tri.edges(), 2, 5, 2, &b);
    rep.record(six.as_ref().is_ok_and(|v| v.arrows), || "N = 6 does not arrow".into());
    rep.record(five.as_ref().is_ok_and(|v| !v.arrows), || "N = 5 arrows".into());
    rep
}
