use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hyperramsey::arith::parse_ratio;
use hyperramsey::drc::{drc_chain, ChainConfig, DrcChain};
use hyperramsey::embed::{embed_pattern, goodness_audit, EmbedConfig, Policy, DEFAULT_NODE_BUDGET};
use hyperramsey::hypercore::{gen_pattern, strong_chromatic_number, ColouringMode, Hypergraph, PartiteHypergraph, PatternKind};
use hyperramsey::oracle::{self, Outcome, SearchBudget};
use hyperramsey::reduction::{
    bound_calculator, ceil_k_sqrt_m, extend_to_partite, ramsey_pipeline, BoundMode, BoundParams, EdgeColouring, PipelineConfig, RklSource,
    DEFAULT_DIGIT_CAP,
};
use hyperramsey::rng::derive_seed;
use hyperramsey::selftest::run_selftest;
use hyperramsey::steppingup::{find_mono_copy, BaseSpec, CopySearchConfig, SearchResult, StepUpColouring};

use crate::{emit, inputs, Failure, Global};

/// Seed stream for inputs a command generates itself (hosts, colourings).
const INPUT_STREAM: u64 = 0;
/// Seed stream for the dependent random choice chain.
const CHAIN_STREAM: u64 = 1;
/// Seed stream for randomised embedding policies.
const EMBED_STREAM: u64 = 2;

fn ratio_arg(s: &str) -> Result<String, String> {
    parse_ratio(s).map(|_| s.to_string()).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Cycle-spoke 3-graph on n vertices.
    CycleSpoke {
        #[arg(long)]
        n: usize,
    },
    /// Complete k-graph on l vertices.
    Complete {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Path graph on n vertices.
    Path {
        #[arg(long)]
        n: usize,
    },
    /// Random k-graph with n vertices and m edges.
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Base red/blue colouring of pairs as CSV rows `i,j,colour`.
    Base {
        #[arg(long, value_enum)]
        kind: BaseKind,
        /// Vertex count for paley and random.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Random l-partite host with parts of size n.
    Host {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
    /// Random explicit edge colouring, or a stepping-up rule reference.
    Colouring {
        #[arg(long, required_unless_present = "stepping_up")]
        k: Option<usize>,
        #[arg(long, required_unless_present = "stepping_up")]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        q: u8,
        /// Base colouring for the stepping-up rule: pentagon, paley:M, random:M or a CSV path.
        #[arg(long, conflicts_with_all = ["k", "n"])]
        stepping_up: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum BaseKind {
    Pentagon,
    Paley,
    Random,
}

#[derive(Subcommand, Debug)]
pub enum RunCommand {
    /// Build a dependent random choice chain with its dangerous-set census.
    Drc(DrcArgs),
    /// Embed a partite pattern into a chain built on a host.
    Embed(EmbedArgs),
    /// Find a certified monochromatic copy through the clique reduction.
    Reduce(ReduceArgs),
    /// Search a stepped-up colouring for a monochromatic copy.
    StepupVerify(StepupArgs),
    /// Evaluate a Ramsey bound with its derivation trace.
    Bound(BoundArgs),
    /// Strong chromatic number of a pattern.
    Chroma(ChromaArgs),
    /// Brute-force Ramsey check or monochromatic copy search.
    Oracle(OracleArgs),
    /// Compare the fast searchers with the brute-force oracles.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct HostArgs {
    /// Host JSON; generated from --l, --n, --density when absent.
    #[arg(long)]
    host: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    l: usize,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0.9)]
    density: f64,
}

impl HostArgs {
    fn load(&self, seed: u64) -> Result<PartiteHypergraph, Failure> {
        match &self.host {
            Some(p) => inputs::host(p),
            None => Ok(PartiteHypergraph::random(self.l, self.n, self.density, derive_seed(seed, INPUT_STREAM))?),
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ChainArgs {
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value = "1/4", value_parser = ratio_arg)]
    beta: String,
    #[arg(long, default_value_t = hyperramsey::drc::DEFAULT_RETRY_CAP)]
    retry_cap: u64,
}

impl ChainArgs {
    fn build(&self, host: &PartiteHypergraph, delta: usize, seed: u64) -> Result<DrcChain, Failure> {
        let mut cfg = ChainConfig::new(self.s, parse_ratio(&self.beta)?, delta, derive_seed(seed, CHAIN_STREAM));
        cfg.retry_cap = self.retry_cap;
        Ok(drc_chain(host, &cfg)?)
    }
}

#[derive(Args, Debug, Serialize)]
pub struct DrcArgs {
    #[command(flatten)]
    host: HostArgs,
    #[command(flatten)]
    chain: ChainArgs,
    /// Largest pattern degree the chain must serve.
    #[arg(long, default_value_t = 2)]
    delta: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyArg {
    Greedy,
    GreedyRandom,
    Backtrack,
    BacktrackRandom,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Greedy => Policy::Greedy,
            PolicyArg::GreedyRandom => Policy::GreedyRandom,
            PolicyArg::Backtrack => Policy::Backtrack,
            PolicyArg::BacktrackRandom => Policy::BacktrackRandom,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct EmbedArgs {
    #[command(flatten)]
    host: HostArgs,
    #[command(flatten)]
    chain: ChainArgs,
    /// Partite pattern JSON, or any pattern accepted elsewhere (extended to the host's part count).
    #[arg(long, default_value = "path-4")]
    pattern: String,
    #[arg(long, value_enum, default_value_t = PolicyArg::Backtrack)]
    policy: PolicyArg,
    /// Also count bad extensions of every trace neighbourhood image.
    #[arg(long)]
    goodness: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct ReduceArgs {
    /// Colouring JSON (explicit table or rule reference); random when absent.
    #[arg(long)]
    colouring: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 18)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: u8,
    #[arg(long, default_value = "path-4")]
    pattern: String,
    /// Part count (defaults to (k-1)*Delta + 1).
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, default_value_t = 8)]
    attempts: u32,
    #[arg(long)]
    all_colours: bool,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value = "1/4", value_parser = ratio_arg)]
    beta: String,
}

#[derive(Args, Debug, Serialize)]
pub struct StepupArgs {
    /// pentagon, paley:M, random:M or a CSV file of rows `i,j,red|blue`.
    #[arg(long, default_value = "pentagon")]
    base: String,
    #[arg(long, default_value = "cycle-spoke-6")]
    pattern: String,
    /// Random vertex subsets checked if exhaustive search runs out of budget.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundModeArg {
    /// Pattern of maximum degree Delta, k >= 3.
    #[value(alias = "theorem4")]
    MaxDegree,
    /// Pattern with strong chromatic number l.
    #[value(alias = "remark")]
    StrongChromatic,
    /// Pattern with m edges.
    #[value(alias = "theorem7")]
    EdgeCount,
    /// Lower bound for 3-graphs with m edges.
    #[value(alias = "corollary2")]
    SteppingUpLower,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    mode: BoundModeArg,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    delta: usize,
    #[arg(long, default_value_t = 2)]
    q: u8,
    /// Literal value of the complete-hypergraph Ramsey number.
    #[arg(long, conflicts_with = "erdos_rado")]
    rkl: Option<String>,
    /// Use the tower estimate with this constant instead of a literal.
    #[arg(long, value_parser = ratio_arg)]
    erdos_rado: Option<String>,
    /// Strong chromatic number, for strong-chromatic mode.
    #[arg(long)]
    l: Option<usize>,
    /// Edge count, for edge-count and stepping-up-lower modes.
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_DIGIT_CAP)]
    digit_cap: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ChromaArgs {
    #[arg(long)]
    pattern: String,
    /// Greedy colouring instead of exact search.
    #[arg(long)]
    greedy: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct OracleArgs {
    #[arg(long, default_value = "complete-2-3")]
    pattern: String,
    /// Search this colouring instead of checking every colouring.
    #[arg(long)]
    colouring: Option<PathBuf>,
    /// Vertices of the complete host for the exhaustive check.
    #[arg(long, default_value_t = 6)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: u8,
}

#[derive(Args, Debug, Serialize)]
pub struct SelftestArgs {
    /// Random instances per check.
    #[arg(long, default_value_t = 100)]
    instances: u64,
}

pub fn gen(g: &Global, cmd: GenCommand) -> u8 {
    let seed = derive_seed(g.seed, INPUT_STREAM);
    let text = (|| -> Result<String, Failure> {
        let hyper = |kind| -> Result<String, Failure> { Ok(emit::json(&serde_json::to_value(gen_pattern(kind)?).expect("serializable"))) };
        match cmd {
            GenCommand::CycleSpoke { n } => hyper(PatternKind::CycleSpoke { n }),
            GenCommand::Complete { k, l } => hyper(PatternKind::Complete { l, k }),
            GenCommand::Path { n } => hyper(PatternKind::Path { n }),
            GenCommand::Random { k, n, m } => hyper(PatternKind::Random { k, n, m, seed }),
            GenCommand::Base { kind, m } => {
                let spec = match kind {
                    BaseKind::Pentagon => "pentagon".to_string(),
                    BaseKind::Paley => format!("paley:{}", m.ok_or_else(|| Failure::Usage("paley needs --m".into()))?),
                    BaseKind::Random => format!("random:{}", m.ok_or_else(|| Failure::Usage("random needs --m".into()))?),
                };
                let mut buf = Vec::new();
                inputs::base(&spec, seed)?.write_csv(&mut buf)?;
                Ok(String::from_utf8(buf).expect("csv is utf-8"))
            }
            GenCommand::Host { l, n, density } => {
                let h = PartiteHypergraph::random(l, n, density, seed)?;
                Ok(emit::json(&serde_json::to_value(h).expect("serializable")))
            }
            GenCommand::Colouring { k, n, q, stepping_up } => {
                let v = match stepping_up {
                    Some(base) => json!({ "rule": "stepping_up", "base": base_spec(&base, seed)? }),
                    None => serde_json::to_value(inputs::random_colouring(k.unwrap_or(2), n.unwrap_or(0), q, seed)?).expect("serializable"),
                };
                Ok(emit::json(&v))
            }
        }
    })();
    match text.and_then(|t| emit::write_out(g, &t)) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}

fn base_spec(spec: &str, seed: u64) -> Result<BaseSpec, Failure> {
    let size = |rest: &str| rest.parse::<usize>().map_err(|_| Failure::Usage(format!("bad base size in {spec:?}")));
    Ok(if spec == "pentagon" {
        BaseSpec::Pentagon
    } else if let Some(rest) = spec.strip_prefix("paley:") {
        BaseSpec::Paley { m: size(rest)? }
    } else if let Some(rest) = spec.strip_prefix("random:") {
        BaseSpec::Random { m: size(rest)?, seed }
    } else {
        BaseSpec::File { path: spec.to_string() }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Verdict {
    Success,
    None,
    Failure,
}

impl Verdict {
    fn exit_code(self) -> u8 {
        match self {
            Verdict::Success => 0,
            Verdict::None | Verdict::Failure => 1,
        }
    }
}

fn ok(b: bool) -> Verdict {
    if b {
        Verdict::Success
    } else {
        Verdict::Failure
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

pub fn run(g: &Global, cmd: RunCommand) -> u8 {
    let (name, args, outcome) = match &cmd {
        RunCommand::Drc(a) => ("drc", to_value(a), run_drc(g, a)),
        RunCommand::Embed(a) => ("embed", to_value(a), run_embed(g, a)),
        RunCommand::Reduce(a) => ("reduce", to_value(a), run_reduce(g, a)),
        RunCommand::StepupVerify(a) => ("stepup-verify", to_value(a), run_stepup(g, a)),
        RunCommand::Bound(a) => ("bound", to_value(a), run_bound(a)),
        RunCommand::Chroma(a) => ("chroma", to_value(a), run_chroma(a)),
        RunCommand::Oracle(a) => ("oracle", to_value(a), run_oracle(g, a)),
        RunCommand::Selftest(a) => ("selftest", to_value(a), Ok(run_selftest_cmd(g, a))),
    };
    let mut doc = json!({
        "command": name,
        "seed": g.seed,
        "global": to_value(g),
        "args": args,
    });
    let code = match outcome {
        Ok((verdict, report)) => {
            doc["verdict"] = to_value(verdict);
            doc["report"] = report;
            verdict.exit_code()
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            doc["verdict"] = json!("error");
            doc["error"] = json!(f.message());
            f.exit_code()
        }
    };
    match emit::write_out(g, &emit::document(&doc, g.format)) {
        Ok(()) => code,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}

type RunResult = Result<(Verdict, Value), Failure>;

fn run_drc(g: &Global, a: &DrcArgs) -> RunResult {
    let host = a.host.load(g.seed)?;
    let chain = a.chain.build(&host, a.delta, g.seed)?;
    let report = chain.report();
    let within = report.steps.iter().all(|s| s.within_bounds);
    Ok((Verdict::Success, json!({ "chain": report, "census_within_bounds": within })))
}

fn run_embed(g: &Global, a: &EmbedArgs) -> RunResult {
    let host = a.host.load(g.seed)?;
    let pattern = match inputs::partite_pattern(&a.pattern)? {
        Some(p) => p,
        None => extend_to_partite(&inputs::pattern(&a.pattern)?, host.l())?.pattern,
    };
    let delta = pattern.max_degree().max(1);
    let chain = a.chain.build(&host, delta, g.seed)?;
    let cfg = EmbedConfig {
        policy: a.policy.into(),
        seed: derive_seed(g.seed, EMBED_STREAM),
        node_budget: g.budget_nodes.unwrap_or(DEFAULT_NODE_BUDGET),
    };
    let rep = embed_pattern(&chain, &pattern, &cfg)?;
    let mut out = json!({
        "pattern": { "vertices": pattern.n_vertices(), "edges": pattern.edge_count(), "parts": pattern.l(), "max_degree": delta },
        "chain": chain.report(),
        "embedding": rep,
    });
    if a.goodness {
        if let Some(emb) = rep.embedding() {
            out["goodness"] = to_value(goodness_audit(&chain, &pattern, &emb, &chain.beta, hyperramsey::drc::DEFAULT_CENSUS_BUDGET)?);
        }
    }
    Ok((ok(rep.success && rep.verified), out))
}

fn run_reduce(g: &Global, a: &ReduceArgs) -> RunResult {
    let h = inputs::pattern(&a.pattern)?;
    let c: Box<dyn EdgeColouring> = match &a.colouring {
        Some(p) => inputs::colouring(p)?,
        None => Box::new(inputs::random_colouring(a.k, a.n, a.q, derive_seed(g.seed, INPUT_STREAM))?),
    };
    let cfg = PipelineConfig {
        l: a.l,
        s: a.s,
        beta: parse_ratio(&a.beta)?,
        attempts: a.attempts,
        all_colours: a.all_colours,
        node_budget: g.budget_nodes.unwrap_or(DEFAULT_NODE_BUDGET),
        seed: g.seed,
        ..PipelineConfig::default()
    };
    let rep = ramsey_pipeline(c.as_ref(), &h, &cfg)?;
    Ok((ok(rep.success), to_value(rep)))
}

fn run_stepup(g: &Global, a: &StepupArgs) -> RunResult {
    let base = inputs::base(&a.base, derive_seed(g.seed, INPUT_STREAM))?;
    let pattern = inputs::pattern(&a.pattern)?;
    let su = StepUpColouring::new(base)?;
    let cfg = CopySearchConfig {
        node_budget: g.budget_nodes.unwrap_or(CopySearchConfig::default().node_budget),
        samples: a.samples,
        seed: g.seed,
        colours: None,
    };
    let verdict = find_mono_copy(&su, &pattern, &cfg)?;
    let v = match verdict.result {
        SearchResult::Counterexample => Verdict::Success,
        SearchResult::None => Verdict::None,
    };
    Ok((v, json!({ "base": su.base, "vertices": su.n_vertices(), "verdict": verdict })))
}

fn run_bound(a: &BoundArgs) -> RunResult {
    let rkl = match (&a.rkl, &a.erdos_rado) {
        (Some(v), None) => RklSource::Literal {
            value: v.parse().map_err(|_| Failure::Usage(format!("--rkl must be a non-negative integer, got {v:?}")))?,
        },
        (None, Some(c)) => RklSource::ErdosRado { c: parse_ratio(c)? },
        (None, None) if matches!(a.mode, BoundModeArg::SteppingUpLower) => RklSource::Literal { value: 0u32.into() },
        _ => return Err(Failure::Usage("give --rkl or --erdos-rado".into())),
    };
    let need = |x: Option<u64>, flag: &str| x.ok_or_else(|| Failure::Usage(format!("this mode needs --{flag}")));
    let mode = match a.mode {
        BoundModeArg::MaxDegree => BoundMode::MaxDegree,
        BoundModeArg::StrongChromatic => BoundMode::StrongChromatic { l: need(a.l.map(|l| l as u64), "l")? as usize },
        BoundModeArg::EdgeCount => BoundMode::EdgeCount { m: need(a.m, "m")? },
        BoundModeArg::SteppingUpLower => BoundMode::SteppingUpLower { m: need(a.m, "m")? },
    };
    let p = BoundParams { k: a.k, delta: a.delta, q: a.q, rkl };
    Ok((Verdict::Success, to_value(bound_calculator(&p, mode, a.digit_cap)?)))
}

fn run_chroma(a: &ChromaArgs) -> RunResult {
    let h = inputs::pattern(&a.pattern)?;
    let mode = if a.greedy { ColouringMode::Greedy } else { ColouringMode::Exact };
    let c = strong_chromatic_number(&h, mode)?;
    let (k, m) = (h.k() as u64, h.edge_count() as u64);
    // count <= k*sqrt(m) compared exactly as count^2 <= k^2 m
    let within = (c.count as u128).pow(2) <= (k as u128).pow(2) * m as u128 || m == 0;
    Ok((
        Verdict::Success,
        json!({
            "mode": if a.greedy { "greedy" } else { "exact" },
            "k": k,
            "edges": m,
            "strong_chromatic_number": c.count,
            "colours": c.colours,
            "ceil_k_sqrt_m": ceil_k_sqrt_m(k, m),
            "within_k_sqrt_m": within,
        }),
    ))
}

fn budget(g: &Global) -> SearchBudget {
    SearchBudget {
        max_millis: g.budget_ms,
        ..SearchBudget::nodes(g.budget_nodes.unwrap_or(SearchBudget::default().max_nodes))
    }
}

fn run_oracle(g: &Global, a: &OracleArgs) -> RunResult {
    let h: Hypergraph = inputs::pattern(&a.pattern)?;
    let b = budget(g);
    b.validate()?;
    match &a.colouring {
        Some(p) => {
            let c = inputs::colouring(p)?;
            if c.uniformity() != h.k() {
                return Err(Failure::Usage("pattern and colouring uniformities differ".into()));
            }
            let (out, nodes) = oracle::naive_find_mono_copy(c.n_vertices(), &|s| c.colour(s), c.colours(), h.n_vertices(), h.edges(), None, &b);
            let v = match out {
                Outcome::Found(_) => Verdict::Success,
                Outcome::None => Verdict::None,
                Outcome::BudgetExceeded => Verdict::Failure,
            };
            Ok((v, json!({ "search": out, "nodes": nodes })))
        }
        None => {
            let r = oracle::exhaustive_ramsey_check(h.n_vertices(), h.edges(), h.k(), a.n, a.q, &b)?;
            let v = if r.arrows { Verdict::Success } else { Verdict::None };
            Ok((v, to_value(r)))
        }
    }
}

fn run_selftest_cmd(g: &Global, a: &SelftestArgs) -> (Verdict, Value) {
    let r = run_selftest(a.instances, g.seed);
    (ok(r.passed), to_value(r))
}
