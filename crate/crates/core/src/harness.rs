//! Benchmark driver behind the `graphalg` binary.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algorithms::{self, IterationRecord, DEFAULT_ALPHA, DEFAULT_EPS};
use crate::descriptor::{Descriptor, DirectionPolicy, DEFAULT_MAX_NITER, DEFAULT_SWITCH_RATIO};
use crate::error::{GraphError, Result};
use crate::io::{self, EdgeList, RmatParams};
use crate::matrix::SparseMatrix;
use crate::ops::Direction;
use crate::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Bfs,
    Sssp,
    Pr,
    Cc,
    Tc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Bfs,
        Algorithm::Sssp,
        Algorithm::Pr,
        Algorithm::Cc,
        Algorithm::Tc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bfs => "bfs",
            Algorithm::Sssp => "sssp",
            Algorithm::Pr => "pr",
            Algorithm::Cc => "cc",
            Algorithm::Tc => "tc",
        }
    }

    /// BFS and SSSP are frontier traversals with a per-iteration trace.
    pub fn is_traversal(self) -> bool {
        matches!(self, Algorithm::Bfs | Algorithm::Sssp)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| GraphError::InvalidInput(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Rmat(RmatParams),
}

impl GraphSource {
    pub fn id(&self) -> String {
        match self {
            GraphSource::File(p) => p
                .file_name()
                .map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned()),
            GraphSource::Rmat(r) => format!("rmat-s{}-ef{}-seed{}", r.scale, r.edge_factor, r.seed),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub algorithm: Algorithm,
    pub graph: GraphSource,
    pub source: usize,
    pub alpha: f64,
    pub eps: f64,
    pub max_iters: usize,
    pub direction: DirectionPolicy,
    pub switch_ratio: f64,
    pub runs: usize,
    pub threads: usize,
    pub verify: bool,
    /// Seed for the 1..=64 edge weights SSSP uses on unweighted inputs.
    pub weight_seed: u64,
    /// Stop pull row reductions early in BFS.
    pub early_exit: bool,
}

impl BenchConfig {
    pub fn new(algorithm: Algorithm, graph: GraphSource) -> Self {
        Self {
            algorithm,
            graph,
            source: 0,
            alpha: DEFAULT_ALPHA,
            eps: DEFAULT_EPS,
            max_iters: DEFAULT_MAX_NITER,
            direction: DirectionPolicy::Auto,
            switch_ratio: DEFAULT_SWITCH_RATIO,
            runs: 10,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            verify: false,
            weight_seed: 1,
            early_exit: true,
        }
    }
}

/// A graph after loading and cleanup: undirected, no self-loops, no
/// duplicates; weighted when the algorithm needs weights.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub id: String,
    pub edges: EdgeList,
    pub cleanup: io::PreprocessStats,
    pub load_ms: f64,
    pub preprocess_ms: f64,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn load_graph(source: &GraphSource, algorithm: Algorithm, weight_seed: u64) -> Result<LoadedGraph> {
    let t = Instant::now();
    let raw = match source {
        GraphSource::File(p) => io::read_matrix_market(p)?,
        GraphSource::Rmat(r) => io::generate_rmat(r)?,
    };
    let load_ms = ms(t.elapsed());
    let t = Instant::now();
    let (mut edges, cleanup) = io::preprocess_counted(&raw, true);
    if algorithm == Algorithm::Sssp && edges.weights.is_none() {
        edges = io::assign_weights(&edges, 1, 64, weight_seed)?;
    }
    if algorithm != Algorithm::Sssp {
        edges.weights = None;
    }
    Ok(LoadedGraph {
        id: source.id(),
        edges,
        cleanup,
        load_ms,
        preprocess_ms: ms(t.elapsed()),
    })
}

/// One row of the direction trace.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub frontier_nvals: u64,
    pub estimated_frontier_edges: u64,
    pub threshold_edges: u64,
    pub total_edges: u64,
    pub direction: Direction,
    pub rule_holds: bool,
    pub matrix_entries_read: u64,
    pub semiring_multiplies: u64,
    pub semiring_adds: u64,
}

impl From<&IterationRecord> for TraceRow {
    fn from(r: &IterationRecord) -> Self {
        Self {
            iteration: r.iteration,
            frontier_nvals: r.decision.frontier_nvals,
            estimated_frontier_edges: r.decision.estimated_frontier_edges,
            threshold_edges: r.decision.threshold_edges,
            total_edges: r.decision.total_edges,
            direction: r.decision.chosen,
            rule_holds: r.decision.rule_holds(),
            matrix_entries_read: r.counters.matrix_entries_read,
            semiring_multiplies: r.counters.semiring_multiplies,
            semiring_adds: r.counters.semiring_adds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: Algorithm,
    pub dataset: String,
    pub vertices: usize,
    /// `nnz(A)`: stored entries of the undirected adjacency matrix.
    pub edges: usize,
    /// Entries read or sampled, and what cleanup removed from them.
    pub cleanup: io::PreprocessStats,
    pub runs: usize,
    pub threads: usize,
    pub direction: DirectionPolicy,
    pub switch_ratio: f64,
    pub load_ms: f64,
    pub preprocess_ms: f64,
    /// Matrix construction (both orientations).
    pub setup_ms: f64,
    pub runtimes_ms: Vec<f64>,
    pub mean_runtime_ms: f64,
    /// `edges / mean runtime`, in millions per second.
    pub mteps: f64,
    pub iterations: usize,
    pub trace: Vec<TraceRow>,
    /// Hex SHA-256 of the canonical output.
    pub digest: String,
    pub verification: Option<Verification>,
}

impl RunReport {
    pub fn summary_line(&self) -> String {
        let mut s = format!(
            "{} dataset={} n={} nnz={} runs={} threads={} mean={:.3}ms mteps={:.3} iterations={} digest={}",
            self.algorithm,
            self.dataset,
            self.vertices,
            self.edges,
            self.runs,
            self.threads,
            self.mean_runtime_ms,
            self.mteps,
            self.iterations,
            &self.digest[..16],
        );
        if let Some(v) = &self.verification {
            s.push_str(if v.passed { " verify=ok" } else { " verify=MISMATCH" });
        }
        s
    }

    pub fn trace_table(&self) -> String {
        let mut s = String::from("iter  frontier  est_edges  threshold  direction  entries_read  multiplies\n");
        for r in &self.trace {
            s.push_str(&format!(
                "{:>4}  {:>8}  {:>9}  {:>9}  {:>9}  {:>12}  {:>10}\n",
                r.iteration,
                r.frontier_nvals,
                r.estimated_frontier_edges,
                r.threshold_edges,
                r.direction.to_string(),
                r.matrix_entries_read,
                r.semiring_multiplies
            ));
        }
        s
    }
}

/// Canonical algorithm output, hashed into the report digest.
#[derive(Clone, Debug, PartialEq)]
pub enum Output {
    Levels(Vec<i64>),
    Distances(Vec<f64>),
    Ranks(Vec<f64>),
    Labels(Vec<i64>),
    Triangles(u64),
}

impl Output {
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        match self {
            Output::Levels(v) | Output::Labels(v) => {
                h.update(if matches!(self, Output::Levels(_)) {
                    b"levels"
                } else {
                    b"labels"
                });
                v.iter().for_each(|x| h.update(x.to_le_bytes()));
            }
            Output::Distances(v) | Output::Ranks(v) => {
                h.update(if matches!(self, Output::Ranks(_)) {
                    b"ranks"
                } else {
                    b"dists"
                });
                v.iter().for_each(|x| h.update(x.to_bits().to_le_bytes()));
            }
            Output::Triangles(t) => {
                h.update(b"triangles");
                h.update(t.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }
}

enum Prepared {
    Int(SparseMatrix<i64>),
    Float(SparseMatrix<f64>),
}

struct Outcome {
    output: Output,
    iterations: usize,
    trace: Vec<IterationRecord>,
}

fn run_once(cfg: &BenchConfig, a: &Prepared) -> Result<(Outcome, Duration)> {
    let mut desc = Descriptor::new()
        .with_direction(cfg.direction)
        .with_switch_ratio(cfg.switch_ratio)
        .with_max_niter(cfg.max_iters)
        .with_workers(cfg.threads)
        .with_early_exit(cfg.early_exit && cfg.algorithm == Algorithm::Bfs);
    let t = Instant::now();
    let (outcome, elapsed) = match (cfg.algorithm, a) {
        (Algorithm::Bfs, Prepared::Int(a)) => {
            let r = algorithms::bfs(a, cfg.source, &mut desc)?;
            let elapsed = t.elapsed();
            (
                Outcome {
                    output: Output::Levels(r.levels.to_vec(0)),
                    iterations: r.iterations,
                    trace: r.trace,
                },
                elapsed,
            )
        }
        (Algorithm::Sssp, Prepared::Float(a)) => {
            let r = algorithms::sssp(a, cfg.source, &mut desc)?;
            let elapsed = t.elapsed();
            let output = Output::Distances(r.distances.to_vec(f64::INFINITY));
            (
                Outcome {
                    output,
                    iterations: r.iterations,
                    trace: r.trace,
                },
                elapsed,
            )
        }
        (Algorithm::Pr, Prepared::Float(a)) => {
            let r = algorithms::pagerank(a, cfg.alpha, cfg.eps, &mut desc)?;
            let elapsed = t.elapsed();
            (
                Outcome {
                    output: Output::Ranks(r.ranks.to_vec(0.0)),
                    iterations: r.iterations,
                    trace: Vec::new(),
                },
                elapsed,
            )
        }
        (Algorithm::Cc, Prepared::Int(a)) => {
            let r = algorithms::connected_components(a, &mut desc)?;
            let elapsed = t.elapsed();
            let output = Output::Labels(r.labels.to_vec(i64::MAX));
            (
                Outcome {
                    output,
                    iterations: r.iterations,
                    trace: Vec::new(),
                },
                elapsed,
            )
        }
        (Algorithm::Tc, Prepared::Int(a)) => {
            let r = algorithms::triangle_count(a, &mut desc)?;
            let elapsed = t.elapsed();
            (
                Outcome {
                    output: Output::Triangles(r.ntris),
                    iterations: 1,
                    trace: Vec::new(),
                },
                elapsed,
            )
        }
        _ => return Err(GraphError::Contract("matrix domain does not match algorithm")),
    };
    Ok((outcome, elapsed))
}

fn check(cfg: &BenchConfig, edges: &EdgeList, output: &Output) -> Verification {
    let adj = verify::adjacency(edges);
    let (passed, detail) = match output {
        Output::Levels(got) => {
            let want = verify::bfs_levels(&adj, cfg.source);
            let bad = got.iter().zip(&want).filter(|(g, w)| g != w).count();
            (bad == 0, format!("queue BFS: {bad} of {} levels differ", want.len()))
        }
        Output::Distances(got) => {
            let want = verify::dijkstra(&adj, cfg.source);
            let bad = got
                .iter()
                .zip(&want)
                .filter(|(g, w)| !(g == w || (*g - *w).abs() <= 1e-9 * w.abs()))
                .count();
            (bad == 0, format!("Dijkstra: {bad} of {} distances differ", want.len()))
        }
        Output::Ranks(got) => {
            let want = verify::power_method(&adj, cfg.alpha, cfg.eps, cfg.max_iters);
            let worst = got.iter().zip(&want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max);
            (worst <= 1e-9, format!("power method: max abs difference {worst:.3e}"))
        }
        Output::Labels(got) => {
            let want = verify::union_find_labels(edges.n, &edges.edges);
            let bad = got.iter().zip(&want).filter(|(g, w)| **g != **w as i64).count();
            (bad == 0, format!("union-find: {bad} of {} labels differ", want.len()))
        }
        Output::Triangles(got) => {
            let want = verify::triangles(&adj);
            (*got == want, format!("adjacency merge: {want} triangles, engine {got}"))
        }
    };
    Verification { passed, detail }
}

/// Loads the graph, runs the algorithm `cfg.runs` times on a pool of
/// `cfg.threads` workers, and reports the mean time of the algorithm call
/// alone.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<RunReport> {
    if cfg.runs == 0 {
        return Err(GraphError::InvalidInput("--runs must be at least 1".into()));
    }
    let g = load_graph(&cfg.graph, cfg.algorithm, cfg.weight_seed)?;
    if matches!(cfg.algorithm, Algorithm::Bfs | Algorithm::Sssp) && cfg.source >= g.edges.n {
        return Err(GraphError::InvalidInput(format!(
            "source {} outside a graph of {} vertices",
            cfg.source, g.edges.n
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .map_err(|e| GraphError::Resource(e.to_string()))?;
    pool.install(|| {
        let t = Instant::now();
        let a = match cfg.algorithm {
            Algorithm::Sssp | Algorithm::Pr => Prepared::Float(io::edges_to_matrix(&g.edges)?),
            _ => Prepared::Int(io::edges_to_matrix(&g.edges)?),
        };
        let setup_ms = ms(t.elapsed());
        let nnz = match &a {
            Prepared::Int(a) => a.nvals(),
            Prepared::Float(a) => a.nvals(),
        };
        let mut runtimes_ms = Vec::with_capacity(cfg.runs);
        let mut last = None;
        for _ in 0..cfg.runs {
            let (outcome, elapsed) = run_once(cfg, &a)?;
            runtimes_ms.push(ms(elapsed));
            last = Some(outcome);
        }
        let last = last.expect("at least one run");
        let mean_runtime_ms = runtimes_ms.iter().sum::<f64>() / runtimes_ms.len() as f64;
        let verification = cfg.verify.then(|| check(cfg, &g.edges, &last.output));
        Ok(RunReport {
            algorithm: cfg.algorithm,
            dataset: g.id.clone(),
            vertices: g.edges.n,
            edges: nnz,
            cleanup: g.cleanup,
            runs: cfg.runs,
            threads: cfg.threads.max(1),
            direction: cfg.direction,
            switch_ratio: cfg.switch_ratio,
            load_ms: g.load_ms,
            preprocess_ms: g.preprocess_ms,
            setup_ms,
            mean_runtime_ms,
            mteps: mteps(nnz, mean_runtime_ms),
            runtimes_ms,
            iterations: last.iterations,
            trace: last.trace.iter().map(TraceRow::from).collect(),
            digest: last.output.digest(),
            verification,
        })
    })
}

/// `edges / runtime` in millions per second.
pub fn mteps(edges: usize, runtime_ms: f64) -> f64 {
    if runtime_ms > 0.0 {
        edges as f64 / (runtime_ms * 1e-3) / 1e6
    } else {
        0.0
    }
}

/// Runs a traversal once and returns its per-iteration direction trace.
pub fn dump_direction_trace(cfg: &BenchConfig) -> Result<Vec<TraceRow>> {
    if !cfg.algorithm.is_traversal() {
        return Err(GraphError::InvalidInput(format!(
            "direction traces exist for bfs and sssp, not {}",
            cfg.algorithm
        )));
    }
    let mut once = cfg.clone();
    once.runs = 1;
    once.verify = false;
    Ok(run_benchmark(&once)?.trace)
}
