//! Exhaustive enumeration of musquash and bi-musquash generator rows.
//!
//! Row 1 is filled left to right, then (for bi-musquash search) row 2. The
//! supports are fixed by the generation rule, so every complete candidate
//! already expands to a valid table; what remains is the Gauss parity screen
//! and the planarity-based realizability test.
//!
//! Parity is known before a row is finished: the crossing `{a, b}` sits at a
//! position of run `a` determined by where one generator holds a particular
//! value, and likewise in run `b`. Its two occurrences are an odd distance
//! apart iff those two generator positions have a prescribed parity sum. The
//! incremental prune checks each such constraint as soon as both positions
//! are placed, which rejects exactly the candidates the full-word screen
//! would reject.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{gadget_planar, gauss_word, parity_check, parity_check_fast, realizable};
use crate::tables::{
    canonical_form, chiral_canonical_form, expand_bimusquash, expand_musquash, mirror,
    set_generators, shift_label, GeneratorPair, GeneratorSet, IntersectionTable, SCHEMA_VERSION,
};

/// Environment variable that overrides the worker count chosen by callers
/// that use [`SearchConfig::from_env`].
pub const WORKERS_ENV: &str = "BIMUSQUASH_WORKERS";

/// Depth (in row-1 entries) at which work is split between workers.
const SPLIT_DEPTH: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchKind {
    Musquash,
    Bimusquash,
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchKind::Musquash => "musquash",
            SearchKind::Bimusquash => "bi-musquash",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pruning {
    /// Reject partial generator rows whose parity constraints already fail.
    pub parity_incremental: bool,
    /// Test planarity once per orbit under rotation and traversal reversal.
    pub canonical_first: bool,
}

impl Pruning {
    pub fn none() -> Self {
        Pruning {
            parity_incremental: false,
            canonical_first: false,
        }
    }

    pub fn full() -> Self {
        Pruning {
            parity_incremental: true,
            canonical_first: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub pruning: Pruning,
    pub workers: usize,
    pub limits: SearchLimits,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            pruning: Pruning::full(),
            workers: 1,
            limits: SearchLimits::default(),
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn with_limits(mut self, limits: SearchLimits) -> Self {
        self.limits = limits;
        self
    }

    /// Uses [`WORKERS_ENV`] when set, otherwise the available parallelism.
    pub fn from_env(n: usize) -> Self {
        let workers = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|p| p.get())
                    .unwrap_or(1)
            });
        SearchConfig::new(n).with_workers(workers)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneStats {
    /// Search-tree nodes entered, including complete candidates.
    pub nodes_visited: u64,
    /// Partial rows cut by the incremental parity constraints.
    pub parity_prefix_cuts: u64,
    /// Complete candidates rejected by the full-word parity screen.
    pub parity_rejected: u64,
    /// Candidates that passed parity.
    pub parity_survivors: u64,
    /// Gadget-graph planarity tests actually run.
    pub planarity_tests: u64,
    /// Parity survivors whose word turned out not to be realizable.
    pub realizability_rejected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionClass {
    /// Canonical form (rows) shared by every member.
    pub canonical: Vec<Vec<usize>>,
    /// Indices into [`SearchReport::solutions`].
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub kind: SearchKind,
    pub n: usize,
    pub pruning: Pruning,
    pub candidates_examined: u64,
    pub stats: PruneStats,
    /// Generator rows, sorted lexicographically.
    pub solutions: Vec<GeneratorPair>,
    /// Distinct labelled tables among the solutions.
    pub labeled_tables: usize,
    /// Solutions grouped by canonical form (rotation, reversal, mirror).
    pub classes: Vec<SolutionClass>,
    /// Number of orbits under rotation and traversal reversal only.
    pub chiral_classes: usize,
    /// Every solution's mirror is also a solution.
    pub mirror_closed: bool,
    /// Every solution passed an independent from-scratch re-check.
    pub all_reverified: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    /// Tables of all solutions, in solution order.
    pub fn tables(&self) -> Vec<IntersectionTable> {
        self.solutions
            .iter()
            .map(|g| expand(self.kind, g).expect("solutions expand"))
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Machine-readable report. Deterministic: wall time and worker count
    /// are not part of it.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} search, n = {}: {} candidates, {} solutions, {} labelled tables, {} classes ({} chiral)\n",
            self.kind,
            self.n,
            self.candidates_examined,
            self.solutions.len(),
            self.labeled_tables,
            self.classes.len(),
            self.chiral_classes
        );
        s += &format!(
            "nodes {}, parity cuts {}, parity rejected {}, planarity tests {}, realizability rejected {}\n",
            self.stats.nodes_visited,
            self.stats.parity_prefix_cuts,
            self.stats.parity_rejected,
            self.stats.planarity_tests,
            self.stats.realizability_rejected
        );
        s += &format!("wall time {:.3} s\n", self.elapsed.as_secs_f64());
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialProgress {
    pub nodes_visited: u64,
    pub candidates_examined: u64,
    pub solutions_so_far: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("n = {0} is out of range for this search")]
    BadLength(usize),
    #[error("search budget exhausted after {} nodes ({} candidates, {} solutions so far)", .0.nodes_visited, .0.candidates_examined, .0.solutions_so_far)]
    BudgetExhausted(PartialProgress),
    #[error("solution {0:?} failed independent re-verification")]
    VerificationFailed(GeneratorPair),
}

pub fn expand(
    kind: SearchKind,
    gen: &GeneratorPair,
) -> Result<IntersectionTable, crate::tables::TableError> {
    match kind {
        SearchKind::Musquash => expand_musquash(&gen.row1, gen.n),
        SearchKind::Bimusquash => expand_bimusquash(gen),
    }
}

/// Full pipeline from scratch: expand, classify, parity, realizability.
pub fn verify_solution(kind: SearchKind, gen: &GeneratorPair) -> bool {
    let Ok(table) = expand(kind, gen) else {
        return false;
    };
    let class = table.classify();
    let conforms = match kind {
        SearchKind::Musquash => class.is_musquash,
        SearchKind::Bimusquash => class.is_bimusquash,
    };
    if !class.valid_rows || !conforms {
        return false;
    }
    let word = gauss_word(&table).to_double_occurrence();
    parity_check(&word) && realizable(&word).realizable
}

// ---------------------------------------------------------------------------
// Problem set-up

struct Problem {
    kind: SearchKind,
    n: usize,
    len: usize,
    gens: usize,
    supports: Vec<Vec<usize>>,
    /// Indexed by key `g * (n + 1) + value`: partner key and required parity
    /// of `pos(key) + pos(partner)`.
    constraints: Vec<Vec<(usize, usize)>>,
}

impl Problem {
    fn new(kind: SearchKind, n: usize) -> Self {
        let len = n - 3;
        let gens = match kind {
            SearchKind::Musquash => 1,
            SearchKind::Bimusquash => 2,
        };
        let supports: Vec<Vec<usize>> = (0..gens)
            .map(|g| {
                let row = g + 1;
                (1..=n)
                    .filter(|&v| !crate::tables::adjacent_or_equal(v, row, n))
                    .collect()
            })
            .collect();
        let gen_of = |r: usize| match kind {
            SearchKind::Musquash => 0,
            SearchKind::Bimusquash => (r + 1) % 2,
        };
        let shift_of = |r: usize| -> i64 {
            match kind {
                SearchKind::Musquash => r as i64 - 1,
                SearchKind::Bimusquash => r as i64 - 1 - ((r + 1) % 2) as i64,
            }
        };
        let key = |g: usize, v: usize| g * (n + 1) + v;
        let mut sets: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); gens * (n + 1)];
        for a in 1..=n {
            for b in a + 1..=n {
                if crate::tables::adjacent_or_equal(a, b, n) {
                    continue;
                }
                let k1 = key(gen_of(a), shift_label(b, -shift_of(a), n));
                let k2 = key(gen_of(b), shift_label(a, -shift_of(b), n));
                let parity = (1 + (b - a) * len) % 2;
                sets[k1].insert((k2, parity));
                sets[k2].insert((k1, parity));
            }
        }
        Problem {
            kind,
            n,
            len,
            gens,
            supports,
            constraints: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    fn key(&self, g: usize, v: usize) -> usize {
        g * (self.n + 1) + v
    }

    fn depth(&self) -> usize {
        self.gens * self.len
    }
}

struct State {
    rows: Vec<Vec<usize>>,
    used: Vec<bool>,
    pos: Vec<usize>,
}

const UNPLACED: usize = usize::MAX;

impl State {
    fn new(p: &Problem) -> Self {
        State {
            rows: vec![Vec::with_capacity(p.len); p.gens],
            used: vec![false; p.gens * (p.n + 1)],
            pos: vec![UNPLACED; p.gens * (p.n + 1)],
        }
    }

    fn placed(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn consistent(&self, p: &Problem, key: usize, t: usize) -> bool {
        p.constraints[key].iter().all(|&(other, parity)| {
            let q = if other == key { t } else { self.pos[other] };
            q == UNPLACED || (t + q) % 2 == parity
        })
    }

    fn push(&mut self, p: &Problem, g: usize, v: usize) {
        let key = p.key(g, v);
        self.pos[key] = self.rows[g].len();
        self.used[key] = true;
        self.rows[g].push(v);
    }

    fn pop(&mut self, p: &Problem, g: usize) {
        let v = self.rows[g].pop().expect("non-empty row");
        let key = p.key(g, v);
        self.pos[key] = UNPLACED;
        self.used[key] = false;
    }
}

struct Budget {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    fn charge(&self, nodes: u64) -> bool {
        let total = self.nodes.fetch_add(nodes, Ordering::Relaxed) + nodes;
        let over_nodes = self.max_nodes.is_some_and(|m| total > m);
        let over_time = self.deadline.is_some_and(|d| Instant::now() > d);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }
}

#[derive(Default)]
struct WorkerResult {
    stats: PruneStats,
    candidates: u64,
    /// Parity survivors that still need (or passed) planarity.
    survivors: Vec<GeneratorPair>,
    /// Chiral canonical form of each survivor when testing per orbit.
    keys: Vec<IntersectionTable>,
    unsent_nodes: u64,
    aborted: bool,
}

struct Worker<'a> {
    problem: &'a Problem,
    pruning: Pruning,
    filter: &'a (dyn Fn(&GeneratorPair) -> bool + Sync),
    budget: &'a Budget,
    out: WorkerResult,
}

impl Worker<'_> {
    fn enter_node(&mut self) -> bool {
        self.out.stats.nodes_visited += 1;
        self.out.unsent_nodes += 1;
        if self.out.unsent_nodes >= 4096 {
            let n = std::mem::take(&mut self.out.unsent_nodes);
            if !self.budget.charge(n) {
                self.out.aborted = true;
            }
        }
        !self.out.aborted
    }

    fn dfs(&mut self, state: &mut State) {
        if !self.enter_node() {
            return;
        }
        let p = self.problem;
        let placed = state.placed();
        if placed == p.depth() {
            self.complete(state);
            return;
        }
        let g = placed / p.len;
        let t = placed % p.len;
        for &v in &p.supports[g] {
            let key = p.key(g, v);
            if state.used[key] {
                continue;
            }
            if self.pruning.parity_incremental && !state.consistent(p, key, t) {
                self.out.stats.parity_prefix_cuts += 1;
                continue;
            }
            state.push(p, g, v);
            self.dfs(state);
            state.pop(p, g);
            if self.out.aborted {
                return;
            }
        }
    }

    fn complete(&mut self, state: &State) {
        let p = self.problem;
        let gen = GeneratorPair {
            n: p.n,
            row1: state.rows[0].clone(),
            row2: state.rows.get(1).cloned(),
        };
        if !(self.filter)(&gen) {
            return;
        }
        self.out.candidates += 1;
        let table = expand(p.kind, &gen).expect("search supports give valid rows");
        let word = gauss_word(&table).to_double_occurrence();
        if !parity_check_fast(&word) {
            self.out.stats.parity_rejected += 1;
            return;
        }
        self.out.stats.parity_survivors += 1;
        if self.pruning.canonical_first {
            self.out.keys.push(chiral_canonical_form(&table));
            self.out.survivors.push(gen);
        } else {
            self.out.stats.planarity_tests += 1;
            if gadget_planar(&word) {
                self.out.survivors.push(gen);
            } else {
                self.out.stats.realizability_rejected += 1;
            }
        }
    }
}

/// Deterministic list of row-1 prefixes of length `SPLIT_DEPTH`.
fn prefixes(p: &Problem, pruning: Pruning) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    prefixes_at(p, pruning, SPLIT_DEPTH.min(p.len), &mut out);
    out
}

fn check_length(kind: SearchKind, n: usize) -> Result<(), SearchError> {
    let ok = match kind {
        SearchKind::Musquash => n >= 5,
        SearchKind::Bimusquash => n >= 6 && n % 2 == 0,
    };
    if ok {
        Ok(())
    } else {
        Err(SearchError::BadLength(n))
    }
}

/// Runs a search with an extra candidate filter applied before any checks.
/// A filter that returns `false` drops the candidate; the soundness harness
/// uses this to inject deliberately unsound prunes.
pub fn enumerate_with_filter(
    kind: SearchKind,
    cfg: &SearchConfig,
    filter: &(dyn Fn(&GeneratorPair) -> bool + Sync),
) -> Result<SearchReport, SearchError> {
    check_length(kind, cfg.n)?;
    let started = Instant::now();
    let problem = Problem::new(kind, cfg.n);
    let budget = Budget {
        max_nodes: cfg.limits.max_nodes,
        deadline: cfg.limits.max_time.map(|d| started + d),
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };

    let split = prefixes(&problem, cfg.pruning);
    let run_prefix = |prefix: &Vec<usize>| -> WorkerResult {
        let mut worker = Worker {
            problem: &problem,
            pruning: cfg.pruning,
            filter,
            budget: &budget,
            out: WorkerResult::default(),
        };
        let mut state = State::new(&problem);
        for &v in prefix {
            state.push(&problem, 0, v);
        }
        worker.dfs(&mut state);
        if worker.out.unsent_nodes > 0 && !budget.charge(worker.out.unsent_nodes) {
            worker.out.aborted = true;
        }
        worker.out
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<WorkerResult> = pool.install(|| split.par_iter().map(run_prefix).collect());

    let mut stats = PruneStats::default();
    // Workers count nodes from the split depth down; shallower nodes are
    // counted here.
    stats.nodes_visited = prefix_node_count(&problem, cfg.pruning);
    let mut candidates = 0;
    let mut survivors = Vec::new();
    let mut keys = Vec::new();
    let mut aborted = budget.exhausted.load(Ordering::Relaxed);
    for r in results {
        stats.nodes_visited += r.stats.nodes_visited;
        stats.parity_prefix_cuts += r.stats.parity_prefix_cuts;
        stats.parity_rejected += r.stats.parity_rejected;
        stats.parity_survivors += r.stats.parity_survivors;
        stats.planarity_tests += r.stats.planarity_tests;
        stats.realizability_rejected += r.stats.realizability_rejected;
        candidates += r.candidates;
        survivors.extend(r.survivors);
        keys.extend(r.keys);
        aborted |= r.aborted;
    }
    stats.parity_prefix_cuts += prefix_cut_count(&problem, cfg.pruning);

    if aborted {
        return Err(SearchError::BudgetExhausted(PartialProgress {
            nodes_visited: stats.nodes_visited,
            candidates_examined: candidates,
            solutions_so_far: survivors.len(),
        }));
    }

    let solutions = if cfg.pruning.canonical_first {
        let mut orbits: BTreeMap<&IntersectionTable, bool> = BTreeMap::new();
        for k in &keys {
            orbits.insert(k, false);
        }
        let verdicts: Vec<bool> = pool.install(|| {
            orbits
                .keys()
                .collect::<Vec<_>>()
                .par_iter()
                .map(|t| gadget_planar(&gauss_word(t).to_double_occurrence()))
                .collect()
        });
        stats.planarity_tests = verdicts.len() as u64;
        for (slot, v) in orbits.values_mut().zip(verdicts) {
            *slot = v;
        }
        let mut kept = Vec::new();
        for (gen, key) in survivors.into_iter().zip(&keys) {
            if orbits[key] {
                kept.push(gen);
            } else {
                stats.realizability_rejected += 1;
            }
        }
        kept
    } else {
        survivors
    };

    let mut report = build_report(kind, cfg, candidates, stats, solutions, &pool)?;
    report.elapsed = started.elapsed();
    Ok(report)
}

fn prefix_node_count(p: &Problem, pruning: Pruning) -> u64 {
    // Nodes strictly above the split depth: root plus every partial prefix
    // shorter than the split depth.
    let depth = SPLIT_DEPTH.min(p.len);
    (0..depth)
        .map(|d| {
            let mut q = Vec::new();
            prefixes_at(p, pruning, d, &mut q);
            q.len() as u64
        })
        .sum()
}

fn prefix_cut_count(p: &Problem, pruning: Pruning) -> u64 {
    if !pruning.parity_incremental {
        return 0;
    }
    let depth = SPLIT_DEPTH.min(p.len);
    let mut cuts = 0;
    for d in 0..depth {
        let mut q = Vec::new();
        prefixes_at(p, pruning, d, &mut q);
        for prefix in q {
            let mut state = State::new(p);
            for &v in &prefix {
                state.push(p, 0, v);
            }
            for &v in &p.supports[0] {
                let key = p.key(0, v);
                if !state.used[key] && !state.consistent(p, key, d) {
                    cuts += 1;
                }
            }
        }
    }
    cuts
}

fn prefixes_at(p: &Problem, pruning: Pruning, depth: usize, out: &mut Vec<Vec<usize>>) {
    fn go(p: &Problem, pruning: Pruning, state: &mut State, depth: usize, out: &mut Vec<Vec<usize>>) {
        if state.rows[0].len() == depth {
            out.push(state.rows[0].clone());
            return;
        }
        let t = state.rows[0].len();
        for &v in &p.supports[0] {
            let key = p.key(0, v);
            if state.used[key] || (pruning.parity_incremental && !state.consistent(p, key, t)) {
                continue;
            }
            state.push(p, 0, v);
            go(p, pruning, state, depth, out);
            state.pop(p, 0);
        }
    }
    go(p, pruning, &mut State::new(p), depth, out);
}

fn build_report(
    kind: SearchKind,
    cfg: &SearchConfig,
    candidates: u64,
    stats: PruneStats,
    mut solutions: Vec<GeneratorPair>,
    pool: &rayon::ThreadPool,
) -> Result<SearchReport, SearchError> {
    solutions.sort();
    solutions.dedup();

    let failures: Vec<Option<GeneratorPair>> = pool.install(|| {
        solutions
            .par_iter()
            .map(|g| (!verify_solution(kind, g)).then(|| g.clone()))
            .collect()
    });
    if let Some(bad) = failures.into_iter().flatten().next() {
        return Err(SearchError::VerificationFailed(bad));
    }

    let tables: Vec<IntersectionTable> = solutions
        .iter()
        .map(|g| expand(kind, g).expect("solutions expand"))
        .collect();
    let labeled_tables = tables.iter().collect::<BTreeSet<_>>().len();

    let canon: Vec<IntersectionTable> = pool.install(|| tables.par_iter().map(canonical_form).collect());
    let mut grouped: BTreeMap<&IntersectionTable, Vec<usize>> = BTreeMap::new();
    for (i, c) in canon.iter().enumerate() {
        grouped.entry(c).or_default().push(i);
    }
    let classes = grouped
        .into_iter()
        .map(|(c, members)| SolutionClass {
            canonical: c.rows().to_vec(),
            members,
        })
        .collect();
    let chiral_classes = pool
        .install(|| {
            tables
                .par_iter()
                .map(chiral_canonical_form)
                .collect::<Vec<_>>()
        })
        .into_iter()
        .collect::<BTreeSet<_>>()
        .len();
    let table_set: BTreeSet<&IntersectionTable> = tables.iter().collect();
    let mirror_closed = tables.iter().all(|t| table_set.contains(&mirror(t)));

    Ok(SearchReport {
        schema_version: SCHEMA_VERSION,
        kind,
        n: cfg.n,
        pruning: cfg.pruning,
        candidates_examined: candidates,
        stats,
        solutions,
        labeled_tables,
        classes,
        chiral_classes,
        mirror_closed,
        all_reverified: true,
        elapsed: Duration::ZERO,
    })
}

/// All bi-musquash generator pairs at `cfg.n` whose table is parity-clean
/// and realizable.
pub fn enumerate_bimusquash(cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    enumerate_with_filter(SearchKind::Bimusquash, cfg, &|_| true)
}

/// All musquash rows at `n` whose table is parity-clean and realizable.
pub fn enumerate_musquash(n: usize, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    let cfg = SearchConfig { n, ..cfg.clone() };
    enumerate_with_filter(SearchKind::Musquash, &cfg, &|_| true)
}

// ---------------------------------------------------------------------------
// Soundness

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pruned search lost {lost:?} and invented {extra:?}")]
pub struct SoundnessDiff {
    pub lost: Vec<GeneratorPair>,
    pub extra: Vec<GeneratorPair>,
}

pub fn compare_solution_sets(
    unpruned: &SearchReport,
    pruned: &SearchReport,
) -> Result<(), SoundnessDiff> {
    let a: BTreeSet<_> = unpruned.solutions.iter().cloned().collect();
    let b: BTreeSet<_> = pruned.solutions.iter().cloned().collect();
    if a == b {
        return Ok(());
    }
    Err(SoundnessDiff {
        lost: a.difference(&b).cloned().collect(),
        extra: b.difference(&a).cloned().collect(),
    })
}

/// Runs the unpruned search and the pruned search (with `extra_prune`
/// applied on top) and compares solution sets.
pub fn pruning_soundness_harness_with(
    kind: SearchKind,
    n: usize,
    extra_prune: &(dyn Fn(&GeneratorPair) -> bool + Sync),
) -> Result<(), SoundnessDiff> {
    let base = SearchConfig::new(n).with_workers(1);
    let unpruned = enumerate_with_filter(kind, &base.clone().with_pruning(Pruning::none()), &|_| true)
        .expect("unpruned search completes at harness sizes");
    let pruned = enumerate_with_filter(kind, &base.with_pruning(Pruning::full()), extra_prune)
        .expect("pruned search completes at harness sizes");
    compare_solution_sets(&unpruned, &pruned)
}

/// Pruned and unpruned bi-musquash searches at `n` return the same solutions.
pub fn pruning_soundness_harness(n: usize) -> Result<(), SoundnessDiff> {
    pruning_soundness_harness_with(SearchKind::Bimusquash, n, &|_| true)
}

// ---------------------------------------------------------------------------
// Conjecture verdicts

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// `n = 0 mod 4`: no bi-musquash exists.
    None,
    /// `n = 2 mod 4`, `n >= 10`: exactly the SET1/SET2 pair, mirror images.
    ExactlySetPair,
    /// `n = 6`: the statement is left open; the verdict only reports.
    SpecialCaseN6,
}

impl Expectation {
    pub fn for_length(n: usize) -> Self {
        if n % 4 == 0 {
            Expectation::None
        } else if n == 6 {
            Expectation::SpecialCaseN6
        } else {
            Expectation::ExactlySetPair
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureVerdict {
    pub schema_version: u32,
    pub n: usize,
    pub expected: Expectation,
    pub solutions: usize,
    pub labeled_tables: usize,
    pub classes: usize,
    pub chiral_classes: usize,
    /// Both SET generator pairs are among the solutions (`n = 2 mod 4`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set_pair_found: Option<bool>,
    /// canonical(mirror(SET1)) == canonical(SET2) (`n = 2 mod 4`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror_related: Option<bool>,
    /// Classes other than the one holding the SET pair (`n = 2 mod 4`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other_classes: Option<usize>,
    /// Uniqueness restricted to doubled odd musquashes: the doubled star
    /// polygon lands in the SET class (`n = 2 mod 4`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub doubling_reading_holds: Option<bool>,
    /// The doubled triangle's table is among the classes (`n = 6`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains_doubled_triangle: Option<bool>,
    /// Uniqueness read over every bi-musquash table.
    pub matches_conjecture: bool,
}

impl ConjectureVerdict {
    pub fn summary(&self) -> String {
        match self.expected {
            Expectation::None => format!(
                "{} bi-musquashes found — {} with conjecture",
                self.solutions,
                if self.matches_conjecture { "consistent" } else { "INCONSISTENT" }
            ),
            Expectation::ExactlySetPair => format!(
                "{} bi-musquash generator pairs in {} class(es); SET pair found: {}; mirror-related: {}; \
                 other classes: {}; doubled star in SET class: {}; {} with conjecture",
                self.solutions,
                self.classes,
                self.set_pair_found.unwrap_or(false),
                self.mirror_related.unwrap_or(false),
                self.other_classes.unwrap_or(0),
                self.doubling_reading_holds.unwrap_or(false),
                if self.matches_conjecture { "consistent" } else { "INCONSISTENT" }
            ),
            Expectation::SpecialCaseN6 => format!(
                "{} bi-musquash generator pairs in {} class(es) ({} chiral); doubled triangle present: {}",
                self.solutions,
                self.classes,
                self.chiral_classes,
                self.contains_doubled_triangle.unwrap_or(false)
            ),
        }
    }
}

/// Compares a finished bi-musquash search with what the conjecture predicts.
pub fn verdict_from_report(report: &SearchReport) -> ConjectureVerdict {
    let n = report.n;
    let expected = Expectation::for_length(n);
    let mut verdict = ConjectureVerdict {
        schema_version: SCHEMA_VERSION,
        n,
        expected,
        solutions: report.solutions.len(),
        labeled_tables: report.labeled_tables,
        classes: report.classes.len(),
        chiral_classes: report.chiral_classes,
        set_pair_found: None,
        mirror_related: None,
        other_classes: None,
        doubling_reading_holds: None,
        contains_doubled_triangle: None,
        matches_conjecture: false,
    };
    match expected {
        Expectation::None => verdict.matches_conjecture = report.solutions.is_empty(),
        Expectation::ExactlySetPair => {
            let p = n / 2;
            let g1 = set_generators(GeneratorSet::Set1, p).expect("p is odd and >= 5");
            let g2 = set_generators(GeneratorSet::Set2, p).expect("p is odd and >= 5");
            let t1 = expand_bimusquash(&g1).expect("SET rows expand");
            let t2 = expand_bimusquash(&g2).expect("SET rows expand");
            let found = report.solutions.contains(&g1) && report.solutions.contains(&g2);
            let related = canonical_form(&mirror(&t1)) == canonical_form(&t2);
            let set_class = canonical_form(&t1);
            let has_set_class = report.classes.iter().any(|c| c.canonical == set_class.rows());
            let others = report.classes.len() - usize::from(has_set_class);
            let doubled = crate::geometry::doubled_star_table(p)
                .map(|t| canonical_form(&t) == set_class)
                .unwrap_or(false);
            verdict.set_pair_found = Some(found);
            verdict.mirror_related = Some(related);
            verdict.other_classes = Some(others);
            verdict.doubling_reading_holds = Some(found && has_set_class && doubled);
            verdict.matches_conjecture = found && related && has_set_class && others == 0;
        }
        Expectation::SpecialCaseN6 => {
            let doubled = crate::geometry::doubled_star_table(3)
                .map(|t| canonical_form(&t))
                .ok();
            let present = doubled.is_some_and(|d| {
                report.classes.iter().any(|c| c.canonical == d.rows())
            });
            verdict.contains_doubled_triangle = Some(present);
            verdict.matches_conjecture = present;
        }
    }
    verdict
}

pub fn verify_conjecture(cfg: &SearchConfig) -> Result<ConjectureVerdict, SearchError> {
    let report = enumerate_bimusquash(cfg)?;
    Ok(verdict_from_report(&report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unpruned_candidate_count_is_factorial_squared() {
        let cfg = SearchConfig::new(6).with_pruning(Pruning::none());
        let r = enumerate_bimusquash(&cfg).unwrap();
        assert_eq!(r.candidates_examined, 36);
        let r = enumerate_musquash(7, &cfg).unwrap();
        assert_eq!(r.candidates_examined, 24);
    }

    #[test]
    fn rejects_bad_lengths() {
        assert_eq!(
            enumerate_bimusquash(&SearchConfig::new(7)).unwrap_err(),
            SearchError::BadLength(7)
        );
        assert!(enumerate_musquash(4, &SearchConfig::new(4)).is_err());
    }

    #[test]
    fn musquash5_is_the_pentagram() {
        let r = enumerate_musquash(5, &SearchConfig::new(5)).unwrap();
        let rows: Vec<_> = r.solutions.iter().map(|g| g.row1.clone()).collect();
        // Reversing each row of the pentagram table is not realizable.
        assert_eq!(rows, vec![vec![3, 4]]);
        assert_eq!(r.classes.len(), 1);
        assert!(!r.mirror_closed);
    }

    #[test]
    fn node_budget_is_reported_not_truncated() {
        let cfg = SearchConfig::new(8).with_limits(SearchLimits {
            max_nodes: Some(10),
            max_time: None,
        });
        assert!(matches!(
            enumerate_bimusquash(&cfg),
            Err(SearchError::BudgetExhausted(_))
        ));
    }

    #[test]
    fn parity_constraints_match_full_word_screen() {
        // Every candidate that survives incremental parity passes the full
        // screen, so the full screen rejects nothing.
        for n in [6, 8] {
            let r = enumerate_bimusquash(&SearchConfig::new(n)).unwrap();
            assert_eq!(r.stats.parity_rejected, 0);
            let u = enumerate_bimusquash(&SearchConfig::new(n).with_pruning(Pruning::none())).unwrap();
            assert_eq!(u.stats.parity_survivors, r.stats.parity_survivors);
        }
    }

    #[test]
    fn injected_unsound_prune_is_caught() {
        let diff = pruning_soundness_harness_with(SearchKind::Bimusquash, 6, &|g| g.row1[0] != 3)
            .unwrap_err();
        assert!(!diff.lost.is_empty());
        assert!(diff.lost.iter().all(|g| g.row1[0] == 3));
        assert!(diff.extra.is_empty());
    }
}
