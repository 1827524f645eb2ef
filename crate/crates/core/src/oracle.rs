//! Brute-force reference implementations. Nothing here calls into the fast
//! paths; inputs are plain edge lists and predicates.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Ratio;
use crate::error::{Error, Result};
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetMode {
    Exhaustive,
    Sampled { trials: u64 },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_millis: Option<u64>,
    pub mode: BudgetMode,
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes,
            max_millis: None,
            mode: BudgetMode::Exhaustive,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 || self.max_millis == Some(0) || self.mode == (BudgetMode::Sampled { trials: 0 }) {
            return Err(Error::InvalidParameter("search budget caps must be positive".into()));
        }
        Ok(())
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::nodes(10_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "copy", rename_all = "snake_case")]
pub enum Outcome<T> {
    Found(T),
    None,
    BudgetExceeded,
}

impl<T> Outcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// All `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

struct Clock {
    start: Instant,
    limit: Option<Duration>,
}

impl Clock {
    fn new(budget: &SearchBudget) -> Self {
        Clock {
            start: Instant::now(),
            limit: budget.max_millis.map(Duration::from_millis),
        }
    }

    fn expired(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() > l)
    }
}

/// Finds an injective map `pattern vertex -> host vertex` (pattern vertices
/// `0..pattern_n`) sending every pattern edge to a host edge. Host edges are
/// given by a predicate on sorted vertex sets. `allowed(p, h)` restricts
/// which host vertices `h` pattern vertex `p` may use. Returns the image of
/// each pattern vertex and the node count.
pub fn naive_find_copy(
    host_n: usize,
    host_edge: &dyn Fn(&[usize]) -> bool,
    pattern_n: usize,
    pattern_edges: &[Vec<usize>],
    allowed: Option<&dyn Fn(usize, usize) -> bool>,
    budget: &SearchBudget,
) -> (Outcome<Vec<usize>>, u64) {
    // edges checked once their largest pattern vertex is placed
    let mut closing: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); pattern_n];
    for e in pattern_edges {
        if let Some(&top) = e.iter().max() {
            closing[top].push(e);
        }
    }
    let mut map = vec![usize::MAX; pattern_n];
    let mut used = vec![false; host_n];
    let mut nodes = 0u64;
    let clock = Clock::new(budget);

    fn rec(
        i: usize,
        host_n: usize,
        host_edge: &dyn Fn(&[usize]) -> bool,
        allowed: Option<&dyn Fn(usize, usize) -> bool>,
        closing: &[Vec<&Vec<usize>>],
        map: &mut [usize],
        used: &mut [bool],
        nodes: &mut u64,
        budget: &SearchBudget,
        clock: &Clock,
    ) -> Option<bool> {
        if i == map.len() {
            return Some(true);
        }
        for h in 0..host_n {
            if used[h] || allowed.is_some_and(|a| !a(i, h)) {
                continue;
            }
            *nodes += 1;
            if *nodes > budget.max_nodes || (*nodes % 4096 == 0 && clock.expired()) {
                return None;
            }
            map[i] = h;
            let ok = closing[i]
                .iter()
                .all(|e| host_edge(&sorted(e.iter().map(|&v| map[v]).collect())));
            if ok {
                used[h] = true;
                let r = rec(i + 1, host_n, host_edge, allowed, closing, map, used, nodes, budget, clock);
                used[h] = false;
                match r {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
        }
        map[i] = usize::MAX;
        Some(false)
    }

    let r = rec(0, host_n, host_edge, allowed, &closing, &mut map, &mut used, &mut nodes, budget, &clock);
    let outcome = match r {
        Some(true) => Outcome::Found(map),
        Some(false) => Outcome::None,
        None => Outcome::BudgetExceeded,
    };
    (outcome, nodes)
}

/// A copy of the pattern all of whose edges receive one colour. Colours are
/// tried in order `0..q`.
pub fn naive_find_mono_copy(
    host_n: usize,
    colour: &dyn Fn(&[usize]) -> u8,
    q: u8,
    pattern_n: usize,
    pattern_edges: &[Vec<usize>],
    allowed: Option<&dyn Fn(usize, usize) -> bool>,
    budget: &SearchBudget,
) -> (Outcome<(u8, Vec<usize>)>, u64) {
    let mut total = 0u64;
    let mut exceeded = false;
    for c in 0..q {
        let pred = |s: &[usize]| colour(s) == c;
        let (o, n) = naive_find_copy(host_n, &pred, pattern_n, pattern_edges, allowed, budget);
        total += n;
        match o {
            Outcome::Found(m) => return (Outcome::Found((c, m)), total),
            Outcome::BudgetExceeded => exceeded = true,
            Outcome::None => {}
        }
    }
    (if exceeded { Outcome::BudgetExceeded } else { Outcome::None }, total)
}

/// Injective, and every pattern edge's image satisfies the predicate.
pub fn verify_copy(host_edge: &dyn Fn(&[usize]) -> bool, pattern_edges: &[Vec<usize>], map: &[usize]) -> bool {
    let mut seen = map.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len() == map.len()
        && pattern_edges
            .iter()
            .all(|e| e.iter().all(|&v| v < map.len()) && host_edge(&sorted(e.iter().map(|&v| map[v]).collect())))
}

/// Per-colour count of `l`-subsets of `0..n` whose `k`-subsets all share that colour.
pub fn naive_count_mono_cliques(n: usize, k: usize, l: usize, q: u8, colour: &dyn Fn(&[usize]) -> u8) -> Vec<u64> {
    let mut counts = vec![0u64; q as usize];
    let inner = subsets(l, k);
    for big in subsets(n, l) {
        let cols: Vec<u8> = inner
            .iter()
            .map(|idx| colour(&idx.iter().map(|&i| big[i]).collect::<Vec<_>>()))
            .collect();
        if let Some(&c0) = cols.first() {
            if cols.iter().all(|&c| c == c0) {
                counts[c0 as usize] += 1;
            }
        }
    }
    counts
}

/// Dangerous-set census by direct enumeration. `upper` edges are tuples
/// `(v, rest...)` with `v` in `first_part`; `lower` edges are `rest` tuples.
/// Counts edge sets `S` of `lower` with `1 <= |S| <= delta` and fewer than
/// `beta * n` common extensions, keyed by the size of their vertex union.
pub fn naive_dangerous_census(
    upper: &[Vec<usize>],
    lower: &[Vec<usize>],
    first_part: &[usize],
    delta: usize,
    beta: &Ratio,
    n: usize,
) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for t in 1..=delta.min(lower.len()) {
        for pick in subsets(lower.len(), t) {
            let ext = first_part
                .iter()
                .filter(|&&v| {
                    pick.iter().all(|&i| {
                        let mut want = vec![v];
                        want.extend_from_slice(&lower[i]);
                        upper.contains(&want)
                    })
                })
                .count();
            if Ratio::from_integer(ext.into()) < beta * Ratio::from_integer(n.into()) {
                let mut union: Vec<usize> = pick.iter().flat_map(|&i| lower[i].iter().copied()).collect();
                union.sort_unstable();
                union.dedup();
                *out.entry(union.len()).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Number of vertex sets with exactly `delta` vertices in every part that
/// contain `u` and some set from `unions`.
pub fn naive_bad_count(parts: &[Vec<usize>], delta: usize, u: &[usize], unions: &[Vec<usize>]) -> u64 {
    let per_part: Vec<Vec<Vec<usize>>> = parts
        .iter()
        .map(|p| subsets(p.len(), delta).into_iter().map(|ix| ix.iter().map(|&i| p[i]).collect()).collect())
        .collect();
    let mut count = 0u64;
    let mut idx = vec![0usize; parts.len()];
    if per_part.iter().any(|c| c.is_empty()) {
        return 0;
    }
    loop {
        let t: Vec<usize> = idx.iter().enumerate().flat_map(|(p, &i)| per_part[p][i].iter().copied()).collect();
        if u.iter().all(|v| t.contains(v)) && unions.iter().any(|s| s.iter().all(|v| t.contains(v))) {
            count += 1;
        }
        let mut p = 0;
        loop {
            if p == idx.len() {
                return count;
            }
            idx[p] += 1;
            if idx[p] < per_part[p].len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Embedding candidates by testing every host vertex of the part against the
/// level edge lists. `levels[r]` holds the edges of `G_r` (`levels[0]` unused),
/// `pattern_edges` are in part order, `part` is the part of `next`.
pub fn naive_candidate_filter(
    host_part: &[usize],
    levels: &[Vec<Vec<usize>>],
    pattern_edges: &[Vec<usize>],
    assignment: &BTreeMap<usize, usize>,
    next: usize,
    part: usize,
) -> Vec<usize> {
    let l = levels.len() - 1;
    host_part
        .iter()
        .copied()
        .filter(|v| !assignment.values().any(|w| w == v))
        .filter(|&v| part + 1 != l || levels[1].contains(&vec![v]))
        .filter(|&v| {
            pattern_edges.iter().filter(|e| e.contains(&next)).all(|e| {
                let pos = e.iter().position(|&x| x == next).unwrap();
                let mut tuple = vec![v];
                for u in &e[pos + 1..] {
                    match assignment.get(u) {
                        Some(&img) => tuple.push(img),
                        None => return true,
                    }
                }
                levels[l - part].contains(&tuple)
            })
        })
        .collect()
}

/// Fewest colours such that no edge repeats a colour, by trying every
/// assignment with `1, 2, ...` colours.
pub fn naive_strong_chromatic(n: usize, edges: &[Vec<usize>]) -> usize {
    if n == 0 {
        return 0;
    }
    for c in 1..=n {
        let mut assign = vec![0usize; n];
        loop {
            let proper = edges.iter().all(|e| {
                let mut cs: Vec<usize> = e.iter().map(|&v| assign[v]).collect();
                cs.sort_unstable();
                cs.windows(2).all(|w| w[0] != w[1])
            });
            if proper {
                return c;
            }
            let mut i = 0;
            while i < n {
                assign[i] += 1;
                if assign[i] < c {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    n
}

#[derive(Clone, Debug, Serialize)]
pub struct RamseyVerdict {
    /// Every colouring contains a monochromatic copy.
    pub arrows: bool,
    /// Colour of each `k`-subset (lexicographic order) in a colouring without one.
    pub witness: Option<Vec<u8>>,
    pub colourings: u128,
}

/// Whether every `q`-colouring of the complete `k`-uniform hypergraph on `n`
/// vertices contains a monochromatic copy of the pattern.
pub fn exhaustive_ramsey_check(pattern_n: usize, pattern_edges: &[Vec<usize>], k: usize, n: usize, q: u8, budget: &SearchBudget) -> Result<RamseyVerdict> {
    let ksets = subsets(n, k);
    let total = (q as u128)
        .checked_pow(ksets.len() as u32)
        .filter(|&t| t <= budget.max_nodes as u128)
        .ok_or(Error::BudgetExceeded {
            what: "colourings to enumerate",
            needed: (q as f64).powi(ksets.len() as i32).min(u128::MAX as f64) as u128,
            limit: budget.max_nodes as u128,
        })?;
    let index: BTreeMap<Vec<usize>, usize> = ksets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let decode = |mut code: u128| -> Vec<u8> {
        (0..ksets.len())
            .map(|_| {
                let c = (code % q as u128) as u8;
                code /= q as u128;
                c
            })
            .collect()
    };
    let inner = SearchBudget::nodes(u64::MAX);
    let bad = (0..total).into_par_iter().find_first(|&code| {
        let cols = decode(code);
        let colour = |s: &[usize]| cols[index[s]];
        matches!(naive_find_mono_copy(n, &colour, q, pattern_n, pattern_edges, None, &inner).0, Outcome::None)
    });
    Ok(RamseyVerdict {
        arrows: bad.is_none(),
        witness: bad.map(decode),
        colourings: total,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Estimate {
    pub trials: u64,
    pub mean: f64,
    pub std_dev: f64,
    pub std_err: f64,
}

/// Mean and sample standard deviation of `trial` over independent seeded
/// substreams `0..trials` of `master_seed`.
pub fn montecarlo<F>(trials: u64, master_seed: u64, trial: F) -> Result<Estimate>
where
    F: Fn(&mut rng::Rng) -> f64 + Sync,
{
    if trials < 2 {
        return Err(Error::InvalidParameter("montecarlo needs at least 2 trials".into()));
    }
    let xs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|i| trial(&mut rng::substream(master_seed, i)))
        .collect();
    let n = trials as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let std_dev = var.sqrt();
    Ok(Estimate {
        trials,
        mean,
        std_dev,
        std_err: std_dev / n.sqrt(),
    })
}

/// A fair coin flip, as 0 or 1.
pub fn coin(r: &mut rng::Rng) -> f64 {
    if r.gen::<bool>() {
        1.0
    } else {
        0.0
    }
}
