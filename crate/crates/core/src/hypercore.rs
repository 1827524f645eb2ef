//! Hypergraph representations, degrees, shadow graphs, strong colourings
//! and pattern generators.

use std::collections::{BTreeSet, HashMap};

use rand::seq::index;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::arith::binomial_u128;
use crate::error::{Error, Result};
use crate::rng;

pub type Vertex = usize;
pub type Edge = Vec<Vertex>;

/// Largest shadow graph the exact strong-chromatic search accepts.
pub const EXACT_CHROMATIC_VERTEX_CAP: usize = 24;

/// A `k`-uniform hypergraph on vertices `0..n`; edges are sorted and the edge
/// list is sorted lexicographically without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphRepr", into = "HypergraphRepr")]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    k: usize,
    n: usize,
    edges: Vec<Edge>,
}

impl TryFrom<HypergraphRepr> for Hypergraph {
    type Error = Error;

    fn try_from(r: HypergraphRepr) -> Result<Self> {
        Hypergraph::new(r.k, r.n, r.edges)
    }
}

impl From<Hypergraph> for HypergraphRepr {
    fn from(h: Hypergraph) -> Self {
        HypergraphRepr {
            k: h.k,
            n: h.n,
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Builds a hypergraph, canonicalising edge order and dropping duplicate edges.
    pub fn new(k: usize, n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidHypergraph(format!("uniformity must be at least 2, got {k}")));
        }
        let mut canon = BTreeSet::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != k {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} does not have {k} vertices")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} repeats a vertex")));
            }
            if e[k - 1] >= n {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} has a vertex outside 0..{n}")));
            }
            canon.insert(e);
        }
        Ok(Hypergraph {
            k,
            n,
            edges: canon.into_iter().collect(),
        })
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, Vec::new())
    }

    /// The complete `k`-uniform hypergraph on `n` vertices.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameter(format!("complete({n},{k}) needs k <= n")));
        }
        Self::new(k, n, combinations(n, k))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `edge` must be sorted.
    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// The graph joining two vertices iff some edge contains both.
    pub fn shadow_graph(&self) -> Hypergraph {
        let mut pairs = BTreeSet::new();
        for e in &self.edges {
            for (i, &u) in e.iter().enumerate() {
                for &v in &e[i + 1..] {
                    pairs.insert(vec![u, v]);
                }
            }
        }
        Hypergraph {
            k: 2,
            n: self.n,
            edges: pairs.into_iter().collect(),
        }
    }

    /// Neighbour lists of the shadow graph.
    pub fn shadow_adjacency(&self) -> Vec<Vec<Vertex>> {
        let shadow = self.shadow_graph();
        let mut adj = vec![Vec::new(); self.n];
        for e in shadow.edges() {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        adj
    }
}

/// An `l`-uniform `l`-partite hypergraph. Each edge is stored in part order
/// (`edge[i]` lies in `parts[i]`), and the edge list is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartiteRepr", into = "PartiteRepr")]
pub struct PartiteHypergraph {
    parts: Vec<Vec<Vertex>>,
    part_of: HashMap<Vertex, usize>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct PartiteRepr {
    k: usize,
    n: usize,
    edges: Vec<Edge>,
    parts: Vec<Vec<Vertex>>,
}

impl TryFrom<PartiteRepr> for PartiteHypergraph {
    type Error = Error;

    fn try_from(r: PartiteRepr) -> Result<Self> {
        if r.parts.len() != r.k {
            return Err(Error::InvalidHypergraph(format!(
                "k = {} but {} parts were given",
                r.k,
                r.parts.len()
            )));
        }
        let g = PartiteHypergraph::new(r.parts, r.edges)?;
        if g.n_vertices() != r.n {
            return Err(Error::InvalidHypergraph(format!(
                "n = {} but the parts hold {} vertices",
                r.n,
                g.n_vertices()
            )));
        }
        Ok(g)
    }
}

impl From<PartiteHypergraph> for PartiteRepr {
    fn from(g: PartiteHypergraph) -> Self {
        PartiteRepr {
            k: g.l(),
            n: g.n_vertices(),
            edges: g.edges,
            parts: g.parts,
        }
    }
}

impl PartiteHypergraph {
    /// Builds a partite hypergraph. Edges may list their vertices in any
    /// order; they are rearranged into part order.
    pub fn new(parts: Vec<Vec<Vertex>>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let l = parts.len();
        if l == 0 {
            return Err(Error::InvalidHypergraph("a partite hypergraph needs at least one part".into()));
        }
        let mut part_of = HashMap::new();
        let mut parts = parts;
        for (i, part) in parts.iter_mut().enumerate() {
            part.sort_unstable();
            for &v in part.iter() {
                if part_of.insert(v, i).is_some() {
                    return Err(Error::InvalidHypergraph(format!("vertex {v} lies in two parts")));
                }
            }
        }
        let mut canon = BTreeSet::new();
        for e in edges {
            if e.len() != l {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} does not have {l} vertices")));
            }
            let mut ordered = vec![usize::MAX; l];
            for &v in &e {
                let p = *part_of
                    .get(&v)
                    .ok_or_else(|| Error::InvalidHypergraph(format!("edge {e:?}: vertex {v} is in no part")))?;
                if ordered[p] != usize::MAX {
                    return Err(Error::InvalidHypergraph(format!("edge {e:?} is not a transversal")));
                }
                ordered[p] = v;
            }
            canon.insert(ordered);
        }
        Ok(PartiteHypergraph {
            parts,
            part_of,
            edges: canon.into_iter().collect(),
        })
    }

    /// `l` parts of `part_size` vertices each; part `i` holds
    /// `i*part_size .. (i+1)*part_size`.
    pub fn block_parts(l: usize, part_size: usize) -> Vec<Vec<Vertex>> {
        (0..l).map(|i| (i * part_size..(i + 1) * part_size).collect()).collect()
    }

    /// The complete `l`-partite hypergraph with block parts.
    pub fn complete(l: usize, part_size: usize) -> Result<Self> {
        let parts = Self::block_parts(l, part_size);
        let edges: Vec<Edge> = transversals(&parts).collect();
        Self::new(parts, edges)
    }

    /// Random host: each transversal of the block parts is kept independently
    /// with probability `density`.
    pub fn random(l: usize, part_size: usize, density: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidParameter(format!("density {density} is outside [0,1]")));
        }
        let parts = Self::block_parts(l, part_size);
        let mut r = rng::seeded(seed);
        let edges: Vec<Edge> = transversals(&parts).filter(|_| r.gen_bool(density)).collect();
        Self::new(parts, edges)
    }

    pub fn l(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[Vertex] {
        &self.parts[i]
    }

    pub fn part_of(&self, v: Vertex) -> Option<usize> {
        self.part_of.get(&v).copied()
    }

    pub fn n_vertices(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// Common part size, if all parts have the same size.
    pub fn part_size(&self) -> Option<usize> {
        let n = self.parts[0].len();
        self.parts.iter().all(|p| p.len() == n).then_some(n)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `edge` must be in part order.
    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok()
    }

    /// Orders an arbitrary vertex set by part; `None` unless it is a transversal.
    pub fn to_part_order(&self, vertices: &[Vertex]) -> Option<Edge> {
        if vertices.len() != self.l() {
            return None;
        }
        let mut ordered = vec![usize::MAX; self.l()];
        for &v in vertices {
            let p = self.part_of(v)?;
            if ordered[p] != usize::MAX {
                return None;
            }
            ordered[p] = v;
        }
        Some(ordered)
    }

    pub fn degree_map(&self) -> HashMap<Vertex, usize> {
        let mut deg: HashMap<Vertex, usize> = self.part_of.keys().map(|&v| (v, 0)).collect();
        for e in &self.edges {
            for v in e {
                *deg.get_mut(v).expect("edge vertex in a part") += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degree_map().into_values().max().unwrap_or(0)
    }

    /// The sub-hypergraph on parts `from..` obtained by dropping the leading
    /// coordinates of every edge (no deduplication beyond set semantics).
    pub fn with_parts_and_edges(&self, first_part: usize, edges: Vec<Edge>) -> Result<Self> {
        Self::new(self.parts[first_part..].to_vec(), edges)
    }

    /// Index from each trailing tuple `edge[1..]` to the sorted vertices `v`
    /// of the first part with `v + tuple` an edge.
    pub fn link_index(&self) -> LinkIndex {
        let mut map: HashMap<Vec<Vertex>, Vec<Vertex>> = HashMap::new();
        for e in &self.edges {
            map.entry(e[1..].to_vec()).or_default().push(e[0]);
        }
        LinkIndex { map }
    }
}

/// See [`PartiteHypergraph::link_index`].
#[derive(Clone, Debug, Default)]
pub struct LinkIndex {
    map: HashMap<Vec<Vertex>, Vec<Vertex>>,
}

impl LinkIndex {
    pub fn link(&self, tail: &[Vertex]) -> &[Vertex] {
        self.map.get(tail).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Vertex>, &Vec<Vertex>)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// A set of edges of one level together with its weight (size of the union).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    edges: Vec<Edge>,
    weight: usize,
}

impl EdgeSet {
    pub fn new(edges: Vec<Edge>) -> Self {
        let weight = union_size(&edges);
        EdgeSet { edges, weight }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn weight(&self) -> usize {
        self.weight
    }
}

pub fn weight(s: &EdgeSet) -> usize {
    s.weight()
}

pub(crate) fn union_size(edges: &[Edge]) -> usize {
    edges.iter().flatten().collect::<BTreeSet<_>>().len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColouringMode {
    Exact,
    Greedy,
}

/// A vertex colouring in which no edge repeats a colour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongColouring {
    pub count: usize,
    pub colours: Vec<usize>,
}

impl StrongColouring {
    pub fn classes(&self) -> Vec<Vec<Vertex>> {
        let mut classes = vec![Vec::new(); self.count];
        for (v, &c) in self.colours.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }

    pub fn is_proper_for(&self, h: &Hypergraph) -> bool {
        h.edges().iter().all(|e| {
            let cs: BTreeSet<_> = e.iter().map(|&v| self.colours[v]).collect();
            cs.len() == e.len()
        })
    }
}

pub fn strong_chromatic_number(h: &Hypergraph, mode: ColouringMode) -> Result<StrongColouring> {
    let adj = h.shadow_adjacency();
    let greedy = greedy_colouring(&adj);
    match mode {
        ColouringMode::Greedy => Ok(greedy),
        ColouringMode::Exact => {
            if h.n_vertices() > EXACT_CHROMATIC_VERTEX_CAP {
                return Err(Error::BudgetExceeded {
                    what: "exact strong colouring (shadow vertices)",
                    needed: h.n_vertices() as u128,
                    limit: EXACT_CHROMATIC_VERTEX_CAP as u128,
                });
            }
            Ok(exact_colouring(&adj, greedy))
        }
    }
}

fn greedy_colouring(adj: &[Vec<Vertex>]) -> StrongColouring {
    let n = adj.len();
    let mut colours = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let used: BTreeSet<usize> = adj[v].iter().map(|&u| colours[u]).filter(|&c| c != usize::MAX).collect();
        let c = (0..).find(|c| !used.contains(c)).expect("unbounded range");
        colours[v] = c;
        count = count.max(c + 1);
    }
    StrongColouring { count, colours }
}

/// Branch and bound: tries each colour count below the greedy bound, largest
/// degree first, with colour-symmetry breaking.
fn exact_colouring(adj: &[Vec<Vertex>], greedy: StrongColouring) -> StrongColouring {
    let n = adj.len();
    if n == 0 {
        return greedy;
    }
    let masks: Vec<u64> = adj.iter().map(|ns| ns.iter().fold(0u64, |m, &u| m | (1 << u))).collect();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].len()));
    let mut best = greedy;
    let lower = if masks.iter().any(|&m| m != 0) { 2 } else { 1 };
    for target in lower..best.count {
        let mut colours = vec![usize::MAX; n];
        if colour_rec(&masks, &order, 0, target, 0, &mut colours) {
            best = StrongColouring { count: target, colours };
            break;
        }
    }
    best
}

fn colour_rec(masks: &[u64], order: &[Vertex], idx: usize, target: usize, used: usize, colours: &mut [usize]) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    for c in 0..(used + 1).min(target) {
        let clash = (0..masks.len()).any(|u| masks[v] >> u & 1 == 1 && colours[u] == c);
        if clash {
            continue;
        }
        colours[v] = c;
        if colour_rec(masks, order, idx + 1, target, used.max(c + 1), colours) {
            return true;
        }
        colours[v] = usize::MAX;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternKind {
    /// `K_l^(k)`.
    Complete { l: usize, k: usize },
    /// Edges `{v_i, v_{i+1}, v_j}` over a cyclic order of `n` vertices.
    CycleSpoke { n: usize },
    Random { k: usize, n: usize, m: usize, seed: u64 },
    /// Path with `n` vertices (graph, k = 2).
    Path { n: usize },
}

pub fn gen_pattern(kind: PatternKind) -> Result<Hypergraph> {
    match kind {
        PatternKind::Complete { l, k } => Hypergraph::complete(l, k),
        PatternKind::CycleSpoke { n } => cycle_spoke(n),
        PatternKind::Random { k, n, m, seed } => random_hypergraph(k, n, m, seed),
        PatternKind::Path { n } => {
            if n < 2 {
                return Err(Error::InvalidParameter("a path needs at least 2 vertices".into()));
            }
            Hypergraph::new(2, n, (0..n - 1).map(|i| vec![i, i + 1]))
        }
    }
}

pub fn cycle_spoke(n: usize) -> Result<Hypergraph> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("cycle_spoke needs n >= 4, got {n}")));
    }
    let mut edges = Vec::with_capacity(n * n);
    for i in 0..n {
        let next = (i + 1) % n;
        for j in 0..n {
            if j != i && j != next {
                edges.push(vec![i, next, j]);
            }
        }
    }
    Hypergraph::new(3, n, edges)
}

fn random_hypergraph(k: usize, n: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!("random hypergraph needs 2 <= k <= n (k={k}, n={n})")));
    }
    let total = binomial_u128(n as u64, k as u64);
    if m as u128 > total {
        return Err(Error::InvalidParameter(format!("cannot place {m} edges; only {total} {k}-sets exist")));
    }
    let mut r = rng::seeded(seed);
    if total <= 1 << 20 {
        let all: Vec<Edge> = combinations(n, k).collect();
        let picked = index::sample(&mut r, all.len(), m);
        return Hypergraph::new(k, n, picked.into_iter().map(|i| all[i].clone()));
    }
    let mut set = BTreeSet::new();
    while set.len() < m {
        let mut e: Edge = index::sample(&mut r, n, k).into_vec();
        e.sort_unstable();
        set.insert(e);
    }
    Hypergraph::new(k, n, set)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().expect("checked above");
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Every transversal of `parts`, in part order.
pub fn transversals(parts: &[Vec<Vertex>]) -> impl Iterator<Item = Edge> + '_ {
    let l = parts.len();
    let mut idx = vec![0usize; l];
    let mut done = parts.iter().any(Vec::is_empty);
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out: Edge = (0..l).map(|i| parts[i][idx[i]]).collect();
        let mut i = l;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < parts[i].len() {
                break;
            }
            idx[i] = 0;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> Hypergraph {
        Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(Hypergraph::complete(4, 3).unwrap().max_degree(), 3);
        assert_eq!(single_edge().max_degree(), 1);
        assert_eq!(Hypergraph::empty(3, 5).unwrap().max_degree(), 0);
    }

    #[test]
    fn cycle_spoke_six_counts() {
        let h = cycle_spoke(6).unwrap();
        assert_eq!(h.edge_count(), 18);
        assert_eq!(h.max_degree(), 9);
        assert_eq!(3 * h.edge_count() / 6, 9);
        assert_eq!(h.shadow_graph(), Hypergraph::complete(6, 2).unwrap());
        let s = strong_chromatic_number(&h, ColouringMode::Exact).unwrap();
        assert_eq!(s.count, 6);
        assert!(s.is_proper_for(&h));
    }

    #[test]
    fn cycle_spoke_four_is_complete() {
        assert_eq!(cycle_spoke(4).unwrap(), Hypergraph::complete(4, 3).unwrap());
        assert!(cycle_spoke(3).is_err());
        for n in 5..12 {
            let h = cycle_spoke(n).unwrap();
            assert_eq!(h.edge_count(), n * n - 3 * n);
            assert!(h.max_degree() <= 3 * n);
        }
    }

    #[test]
    fn canonicalisation_and_validation() {
        let h = Hypergraph::new(3, 4, vec![vec![2, 1, 0], vec![0, 1, 2], vec![3, 0, 1]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![0, 1, 3]]);
        assert!(Hypergraph::new(3, 3, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, 3, vec![vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::new(3, 3, vec![vec![0, 1, 3]]).is_err());
        assert!(Hypergraph::new(1, 3, vec![]).is_err());
    }

    #[test]
    fn shadow_examples() {
        assert_eq!(single_edge().shadow_graph(), Hypergraph::complete(3, 2).unwrap());
        let two = Hypergraph::new(3, 6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let sh = two.shadow_graph();
        assert_eq!(sh.edge_count(), 6);
        assert!(!sh.contains_edge(&[2, 3]));
    }

    #[test]
    fn strong_colouring_examples() {
        let k4 = Hypergraph::complete(4, 3).unwrap();
        assert_eq!(strong_chromatic_number(&k4, ColouringMode::Exact).unwrap().count, 4);
        assert_eq!(strong_chromatic_number(&single_edge(), ColouringMode::Greedy).unwrap().count, 3);
        let empty = Hypergraph::empty(2, 3).unwrap();
        assert_eq!(strong_chromatic_number(&empty, ColouringMode::Exact).unwrap().count, 1);
        let big = Hypergraph::empty(2, EXACT_CHROMATIC_VERTEX_CAP + 1).unwrap();
        assert!(matches!(
            strong_chromatic_number(&big, ColouringMode::Exact),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn exact_beats_greedy_on_crown() {
        // Crown graph: greedy in index order needs 3 colours, the graph is bipartite.
        let edges = vec![vec![0, 3], vec![0, 5], vec![1, 2], vec![1, 5], vec![2, 4], vec![3, 4]];
        let h = Hypergraph::new(2, 6, edges).unwrap();
        let g = strong_chromatic_number(&h, ColouringMode::Greedy).unwrap();
        let e = strong_chromatic_number(&h, ColouringMode::Exact).unwrap();
        assert!(e.count <= g.count);
        assert_eq!(e.count, 2);
        assert!(e.is_proper_for(&h));
    }

    #[test]
    fn weights() {
        assert_eq!(EdgeSet::new(vec![]).weight(), 0);
        assert_eq!(weight(&EdgeSet::new(vec![vec![0, 1], vec![2, 3]])), 4);
        assert_eq!(EdgeSet::new(vec![vec![0, 1], vec![1, 2]]).weight(), 3);
    }

    #[test]
    fn partite_construction() {
        let g = PartiteHypergraph::new(vec![vec![0], vec![1], vec![2, 3]], vec![vec![2, 0, 1]]).unwrap();
        assert_eq!(g.edges(), &[vec![0, 1, 2]]);
        assert_eq!(g.part_size(), None);
        assert!(PartiteHypergraph::new(vec![vec![0], vec![1]], vec![vec![0, 0]]).is_err());
        assert!(PartiteHypergraph::new(vec![vec![0, 1], vec![1]], vec![]).is_err());
        let c = PartiteHypergraph::complete(3, 2).unwrap();
        assert_eq!(c.edge_count(), 8);
        assert_eq!(c.link_index().link(&[2, 4]), &[0, 1]);
    }

    #[test]
    fn json_formats() {
        let h = cycle_spoke(5).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.starts_with("{\"k\":3,\"n\":5,\"edges\":[[0,1,2]"));
        let back: Hypergraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        let bad: std::result::Result<Hypergraph, _> = serde_json::from_str(r#"{"k":3,"n":2,"edges":[[0,1,2]]}"#);
        assert!(bad.is_err());

        let g = PartiteHypergraph::random(3, 3, 0.5, 1).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"parts\":[[0,1,2],[3,4,5],[6,7,8]]"));
        let back: PartiteHypergraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn generators() {
        assert_eq!(gen_pattern(PatternKind::Complete { l: 4, k: 3 }).unwrap().edge_count(), 4);
        let a = gen_pattern(PatternKind::Random { k: 3, n: 7, m: 9, seed: 3 }).unwrap();
        let b = gen_pattern(PatternKind::Random { k: 3, n: 7, m: 9, seed: 3 }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 9);
        assert!(gen_pattern(PatternKind::Random { k: 3, n: 4, m: 5, seed: 0 }).is_err());
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
    }
}
