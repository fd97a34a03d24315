//! Ground-truth checks on finished runs, and the experiment driver.
//!
//! The harness may look at everything the agent cannot: the graph, the
//! replayed positions, and the `Visit` claims in the trace. From those it
//! rebuilds the map-to-graph correspondence and checks it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agent::{Environment, RunOutcome, RunStatus, RunTrace, TraceEvent, DEFAULT_BUDGET_FACTOR};
use crate::error::HarnessError;
use crate::explorer::{explore, ExplorationMap, MapId};
use crate::families::{generate, GeneratorSpec, PortScheme};
use crate::graph::{PortNumberedGraph, VertexId};
use crate::homotopy::{is_triangle_free, unfold_tree_cover, verify_simplicial_covering};

/// Why a map is not the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch(pub String);

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn mismatch<T>(msg: impl Into<String>) -> Result<T, Mismatch> {
    Err(Mismatch(msg.into()))
}

/// Rooted port-preserving isomorphism between `map` (rooted at its
/// homebase) and `g` rooted at `v0`. Ports make the bijection forced, so a
/// single synchronized traversal decides it.
pub fn verify_rooted_isomorphism(map: &ExplorationMap, g: &PortNumberedGraph, v0: VertexId) -> Result<(), Mismatch> {
    if v0 >= g.vertex_count() {
        return mismatch(format!("root {v0} is not a vertex"));
    }
    if map.vertex_count() != g.vertex_count() {
        return mismatch(format!(
            "vertex count: map has {}, graph has {}",
            map.vertex_count(),
            g.vertex_count()
        ));
    }
    let mut fwd: Vec<Option<VertexId>> = vec![None; map.vertex_count()];
    let mut back: Vec<Option<MapId>> = vec![None; g.vertex_count()];
    fwd[ExplorationMap::HOMEBASE] = Some(v0);
    back[v0] = Some(ExplorationMap::HOMEBASE);
    let mut queue = VecDeque::from([ExplorationMap::HOMEBASE]);
    while let Some(n) = queue.pop_front() {
        let v = fwd[n].expect("queued vertices are matched");
        if map.degree(n) != g.degree(v) {
            return mismatch(format!(
                "degree: map vertex {n} has {}, graph vertex {v} has {}",
                map.degree(n),
                g.degree(v)
            ));
        }
        for (p, m, q) in map.ports(n) {
            let Some(h) = g.via_port(v, p) else {
                return mismatch(format!("port {p} at map vertex {n} is missing at {v}"));
            };
            if h.in_port != q {
                return mismatch(format!("edge at map vertex {n} port {p}: far port {q} vs {}", h.in_port));
            }
            match (fwd[m], back[h.to]) {
                (None, None) => {
                    fwd[m] = Some(h.to);
                    back[h.to] = Some(m);
                    queue.push_back(m);
                }
                (Some(x), Some(y)) if x == h.to && y == m => {}
                _ => return mismatch(format!("map vertex {m} and graph vertex {} are matched inconsistently", h.to)),
            }
        }
    }
    if let Some(n) = fwd.iter().position(Option::is_none) {
        return mismatch(format!("map vertex {n} is unreachable from the homebase"));
    }
    Ok(())
}

/// Ground-truth positions of every `Visit` claim, in trace order.
fn visits(trace: &RunTrace, g: &PortNumberedGraph) -> Result<Vec<(MapId, VertexId)>, HarnessError> {
    let mut at = trace.root;
    let mut out = Vec::new();
    for e in &trace.events {
        match *e {
            TraceEvent::Move { out_port, .. } => {
                at = g
                    .via_port(at, out_port)
                    .ok_or_else(|| HarnessError::MalformedTrace(format!("no port {out_port} at {at}")))?
                    .to;
            }
            TraceEvent::Visit { map_vertex } => out.push((map_vertex, at)),
            _ => {}
        }
    }
    Ok(out)
}

/// Extends the explored part of `phi` to the frontier: a frontier vertex
/// goes where its least `(explored neighbor, port there)` edge leads.
fn extend_phi(map: &ExplorationMap, explored: &BTreeMap<MapId, VertexId>, g: &PortNumberedGraph) -> Result<Vec<VertexId>, String> {
    let mut phi = vec![usize::MAX; map.vertex_count()];
    for n in 0..map.vertex_count() {
        if map.is_explored(n) {
            phi[n] = *explored
                .get(&n)
                .ok_or_else(|| format!("explored map vertex {n} was never visited"))?;
            continue;
        }
        let anchor = map
            .ports(n)
            .filter(|&(_, m, _)| map.is_explored(m))
            .map(|(_, m, q)| (m, q))
            .min()
            .ok_or_else(|| format!("frontier vertex {n} hangs off no explored vertex"))?;
        let base = *explored
            .get(&anchor.0)
            .ok_or_else(|| format!("explored map vertex {} was never visited", anchor.0))?;
        phi[n] = g
            .via_port(base, anchor.1)
            .ok_or_else(|| format!("port {} missing at graph vertex {base}", anchor.1))?
            .to;
    }
    Ok(phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub phase: u32,
    pub failures: Vec<String>,
}

impl PhaseReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Rebuilds the map-to-graph correspondence at the end of every phase and
/// checks it: port-preserving homomorphism, local injectivity, local
/// surjectivity and equal balls at explored vertices, path independence,
/// one visit per map vertex. Phase 1 must reproduce the homebase ball.
pub fn verify_phase_invariants(trace: &RunTrace, g: &PortNumberedGraph, v0: VertexId) -> Result<Vec<PhaseReport>, HarnessError> {
    if trace.root != v0 || v0 >= g.vertex_count() {
        return Err(HarnessError::MalformedTrace(format!("trace starts at {} not {v0}", trace.root)));
    }
    let mut at = v0;
    let mut explored: BTreeMap<MapId, VertexId> = BTreeMap::new();
    let mut pending: Vec<String> = Vec::new();
    let mut reports = Vec::new();
    for e in &trace.events {
        match e {
            TraceEvent::Move { out_port, .. } => {
                at = g
                    .via_port(at, *out_port)
                    .ok_or_else(|| HarnessError::MalformedTrace(format!("no port {out_port} at {at}")))?
                    .to;
            }
            TraceEvent::Visit { map_vertex } => {
                if explored.insert(*map_vertex, at).is_some() {
                    pending.push(format!("map vertex {map_vertex} visited twice"));
                }
            }
            TraceEvent::PhaseEnd { phase, map: Some(map) } => {
                let mut failures = std::mem::take(&mut pending);
                check_snapshot(map, &explored, g, v0, &mut failures);
                if *phase == 1 {
                    check_first_phase(map, g, v0, &mut failures);
                }
                reports.push(PhaseReport { phase: *phase, failures });
            }
            _ => {}
        }
    }
    if reports.is_empty() {
        return Err(HarnessError::MissingSnapshots);
    }
    Ok(reports)
}

fn check_first_phase(map: &ExplorationMap, g: &PortNumberedGraph, v0: VertexId, failures: &mut Vec<String>) {
    let ball = g.ball(v0).expect("root checked");
    if map.vertex_count() != ball.vertex_count()
        || map.edge_count() != ball.edges().len()
        || !map.ball_at(ExplorationMap::HOMEBASE).is_rooted_isomorphic(&ball)
    {
        failures.push("phase-1 map is not the homebase ball".into());
    }
}

fn check_snapshot(
    map: &ExplorationMap,
    explored: &BTreeMap<MapId, VertexId>,
    g: &PortNumberedGraph,
    v0: VertexId,
    failures: &mut Vec<String>,
) {
    let phi = match extend_phi(map, explored, g) {
        Ok(phi) => phi,
        Err(e) => return failures.push(e),
    };
    if phi[ExplorationMap::HOMEBASE] != v0 {
        failures.push("homebase is not mapped to the root".into());
    }
    for n in 0..map.vertex_count() {
        let mut images = BTreeSet::new();
        for (p, m, q) in map.ports(n) {
            match g.via_port(phi[n], p) {
                Some(h) if h.to == phi[m] && h.in_port == q => {}
                _ => failures.push(format!("homomorphism: edge {n}-{m} (ports {p},{q}) has no matching image")),
            }
            if !images.insert(phi[m]) {
                failures.push(format!("local injectivity: two neighbors of {n} map to {}", phi[m]));
            }
        }
        if map.is_explored(n) {
            if map.degree(n) != g.degree(phi[n]) {
                failures.push(format!(
                    "local surjectivity: explored vertex {n} has degree {}, image has {}",
                    map.degree(n),
                    g.degree(phi[n])
                ));
            }
            if !map.ball_at(n).is_rooted_isomorphic(&g.ball(phi[n]).expect("image is a vertex")) {
                failures.push(format!("triangles: ball at explored vertex {n} differs from its image"));
            }
        }
    }
    for (name, dest) in [("bfs", tree_dest(map, g, v0, false)), ("dfs", tree_dest(map, g, v0, true))] {
        for (n, d) in dest.iter().enumerate() {
            if *d != Some(phi[n]) {
                failures.push(format!("path independence: {name} path to {n} ends at {d:?}, not {}", phi[n]));
            }
        }
    }
}

/// Where the root walk along a spanning tree of the map ends in `g`, for
/// every map vertex. `None` when a port is missing or the vertex is not
/// reached.
fn tree_dest(map: &ExplorationMap, g: &PortNumberedGraph, v0: VertexId, depth_first: bool) -> Vec<Option<VertexId>> {
    let mut dest = vec![None; map.vertex_count()];
    let mut seen = vec![false; map.vertex_count()];
    let mut todo = VecDeque::from([ExplorationMap::HOMEBASE]);
    seen[ExplorationMap::HOMEBASE] = true;
    dest[ExplorationMap::HOMEBASE] = Some(v0);
    loop {
        let next = if depth_first { todo.pop_back() } else { todo.pop_front() };
        let Some(n) = next else { break };
        for (p, m, _) in map.ports(n) {
            if !seen[m] {
                seen[m] = true;
                dest[m] = dest[n].and_then(|v| g.via_port(v, p)).map(|h| h.to);
                todo.push_back(m);
            }
        }
    }
    dest
}

/// Replays the moves and reports ground-truth vertices never stood on.
pub fn verify_coverage(trace: &RunTrace, g: &PortNumberedGraph, v0: VertexId) -> Result<(), BTreeSet<VertexId>> {
    let mut unvisited: BTreeSet<VertexId> = (0..g.vertex_count()).collect();
    let mut at = v0;
    unvisited.remove(&at);
    for e in &trace.events {
        if let TraceEvent::Move { out_port, .. } = *e {
            match g.via_port(at, out_port) {
                Some(h) => at = h.to,
                None => break,
            }
            unvisited.remove(&at);
        }
    }
    if unvisited.is_empty() {
        Ok(())
    } else {
        Err(unvisited)
    }
}

/// The final map, read through the visited positions, is a simplicial
/// covering of `g` (frontier vertices only need to be homomorphic).
pub fn verify_covering(map: &ExplorationMap, trace: &RunTrace, g: &PortNumberedGraph) -> Result<(), String> {
    let visits = visits(trace, g).map_err(|e| e.to_string())?;
    let explored: BTreeMap<MapId, VertexId> = visits.into_iter().collect();
    let phi = extend_phi(map, &explored, g)?;
    let frontier: BTreeSet<VertexId> = map.frontier().into_iter().collect();
    verify_simplicial_covering(&map.to_graph(), g, &phi, &frontier).map_err(|e| e.to_string())
}

/// For a triangle-free `g`: `map` is a tree that embeds, rooted and
/// port-preserving, into the unfolding of `g` from `v0`.
pub fn verify_cover_prefix(map: &ExplorationMap, g: &PortNumberedGraph, v0: VertexId) -> Result<(), Mismatch> {
    if !is_triangle_free(g) {
        return mismatch("graph has triangles");
    }
    if map.edge_count() + 1 != map.vertex_count() {
        return mismatch("map is not a tree");
    }
    let mut depth = vec![usize::MAX; map.vertex_count()];
    depth[0] = 0;
    let mut order = VecDeque::from([0]);
    let mut radius = 0;
    while let Some(n) = order.pop_front() {
        radius = radius.max(depth[n]);
        for (_, m, _) in map.ports(n) {
            if depth[m] == usize::MAX {
                depth[m] = depth[n] + 1;
                order.push_back(m);
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return mismatch("map is not connected");
    }
    let cover = unfold_tree_cover(g, v0, radius).map_err(|e| Mismatch(e.to_string()))?;
    let mut image: Vec<Option<VertexId>> = vec![None; map.vertex_count()];
    image[0] = Some(0);
    let mut queue = VecDeque::from([0]);
    while let Some(n) = queue.pop_front() {
        let t = image[n].expect("queued vertices are placed");
        for (p, m, q) in map.ports(n) {
            let Some(h) = cover.tree.via_port(t, p) else {
                return mismatch(format!("port {p} at map vertex {n} leaves the unfolding"));
            };
            if h.in_port != q {
                return mismatch(format!("map edge {n}-{m} disagrees with the unfolding on ports"));
            }
            match image[m] {
                None => {
                    image[m] = Some(h.to);
                    queue.push_back(m);
                }
                Some(x) if x == h.to => {}
                Some(_) => return mismatch("map edge closes a cycle in the unfolding"),
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootsPolicy {
    #[default]
    All,
    /// `k` distinct roots drawn with a seeded generator.
    Sample { k: usize, seed: u64 },
}

impl RootsPolicy {
    pub fn roots(&self, n: usize) -> Vec<VertexId> {
        match *self {
            RootsPolicy::All => (0..n).collect(),
            RootsPolicy::Sample { k, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut r = rand::seq::index::sample(&mut rng, n, k.min(n)).into_vec();
                r.sort_unstable();
                r
            }
        }
    }
}

/// What a run is expected to do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    #[default]
    Halt,
    NoHalt,
    Any,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct CheckFlags {
    pub phase_invariants: bool,
    pub final_isomorphism: bool,
    pub coverage: bool,
    pub covering: bool,
    pub cluster_tree: bool,
    /// Non-halted runs on triangle-free graphs: map is a prefix of the unfolding.
    pub cover_prefix: bool,
}

impl Default for CheckFlags {
    fn default() -> Self {
        Self {
            phase_invariants: true,
            final_isomorphism: true,
            coverage: true,
            covering: true,
            cluster_tree: false,
            cover_prefix: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Generator spec strings, e.g. `chordal:n=50,rate=0.4,seed=3`.
    pub generators: Vec<String>,
    #[serde(default)]
    pub roots: RootsPolicy,
    /// Port schemes overriding the specs' own, e.g. `random:1`. Empty keeps
    /// each spec's scheme.
    #[serde(default)]
    pub port_schemes: Vec<String>,
    #[serde(default = "default_budget_factor")]
    pub budget_factor: f64,
    #[serde(default)]
    pub expect: Expectation,
    #[serde(default)]
    pub checks: CheckFlags,
    #[serde(default)]
    pub output: Option<String>,
}

fn default_budget_factor() -> f64 {
    DEFAULT_BUDGET_FACTOR
}

impl ExperimentConfig {
    pub fn new(generators: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            generators: generators.into_iter().map(Into::into).collect(),
            roots: RootsPolicy::All,
            port_schemes: Vec::new(),
            budget_factor: DEFAULT_BUDGET_FACTOR,
            expect: Expectation::Halt,
            checks: CheckFlags::default(),
            output: None,
        }
    }

    /// Every `(spec, root)` pair, in a fixed order.
    pub fn expand(&self) -> Result<Vec<(GeneratorSpec, VertexId)>, HarnessError> {
        let schemes: Vec<Option<PortScheme>> = if self.port_schemes.is_empty() {
            vec![None]
        } else {
            self.port_schemes
                .iter()
                .map(|s| s.parse().map(Some))
                .collect::<Result<_, _>>()?
        };
        let mut runs = Vec::new();
        for text in &self.generators {
            let base: GeneratorSpec = text.parse()?;
            for scheme in &schemes {
                let spec = scheme.map_or(base, |p| base.ports(p));
                for root in self.roots.roots(spec.vertex_count()) {
                    runs.push((spec, root));
                }
            }
        }
        Ok(runs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn from_result<E: fmt::Display>(r: Result<(), E>) -> Self {
        match r {
            Ok(()) => CheckResult { pass: true, detail: None },
            Err(e) => CheckResult {
                pass: false,
                detail: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub spec: String,
    pub generator: GeneratorSpec,
    pub root: VertexId,
    pub status: RunStatus,
    pub moves: usize,
    pub n: usize,
    pub m: usize,
    pub moves_per_vertex: f64,
    pub checks: BTreeMap<String, CheckResult>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }

    pub fn family(&self) -> &str {
        self.spec.split(':').next().unwrap_or_default()
    }
}

/// Explores `g` from `root` with a budget of `ceil(factor * n)` moves.
pub fn run_explorer(g: &PortNumberedGraph, root: VertexId, budget_factor: f64) -> Result<RunOutcome, HarnessError> {
    let env = Environment::with_budget_factor(g, root, budget_factor)?;
    Ok(explore(env)?)
}

/// Applies the requested checks to a finished run.
pub fn check_run(
    g: &PortNumberedGraph,
    outcome: &RunOutcome,
    expect: Expectation,
    flags: &CheckFlags,
) -> BTreeMap<String, CheckResult> {
    let root = outcome.trace.root;
    let halted = outcome.status == RunStatus::Halted;
    let mut checks = BTreeMap::new();
    let status_ok = match expect {
        Expectation::Halt => halted,
        Expectation::NoHalt => !halted,
        Expectation::Any => true,
    };
    checks.insert(
        "status".to_string(),
        CheckResult::from_result(if status_ok {
            Ok(())
        } else {
            Err(format!("status {:?} but expected {expect:?}", outcome.status))
        }),
    );
    if flags.phase_invariants {
        let r = verify_phase_invariants(&outcome.trace, g, root)
            .map_err(|e| e.to_string())
            .and_then(|phases| match phases.into_iter().find(|p| !p.ok()) {
                Some(p) => Err(format!("phase {}: {}", p.phase, p.failures.join("; "))),
                None => Ok(()),
            });
        checks.insert("phase_invariants".into(), CheckResult::from_result(r));
    }
    if flags.cluster_tree {
        let r = g
            .cluster_decomposition(root)
            .map_err(|e| e.to_string())
            .and_then(|d| if d.is_tree() { Ok(()) } else { Err("cluster graph is not a tree".into()) });
        checks.insert("cluster_tree".into(), CheckResult::from_result(r));
    }
    if halted {
        let map = outcome.final_map.as_ref().expect("halted runs carry a map");
        if flags.final_isomorphism {
            checks.insert("final_isomorphism".into(), CheckResult::from_result(verify_rooted_isomorphism(map, g, root)));
        }
        if flags.coverage {
            let r = verify_coverage(&outcome.trace, g, root).map_err(|u| format!("unvisited: {u:?}"));
            checks.insert("coverage".into(), CheckResult::from_result(r));
        }
        if flags.covering {
            checks.insert("covering".into(), CheckResult::from_result(verify_covering(map, &outcome.trace, g)));
        }
    } else if flags.cover_prefix && outcome.status == RunStatus::BudgetExhausted {
        let r = match &outcome.final_map {
            Some(map) => verify_cover_prefix(map, g, root),
            None => mismatch("no map at cutoff"),
        };
        checks.insert("cover_prefix".into(), CheckResult::from_result(r));
    }
    checks
}

/// Generates, explores and checks one instance.
pub fn run_one(spec: &GeneratorSpec, root: VertexId, config: &ExperimentConfig) -> Result<(RunReport, RunTrace), HarnessError> {
    let g = generate(spec)?;
    let outcome = run_explorer(&g, root, config.budget_factor)?;
    let checks = check_run(&g, &outcome, config.expect, &config.checks);
    let report = RunReport {
        spec: spec.to_string(),
        generator: *spec,
        root,
        status: outcome.status,
        moves: outcome.moves,
        n: g.vertex_count(),
        m: g.edge_count(),
        moves_per_vertex: outcome.moves as f64 / g.vertex_count() as f64,
        checks,
    };
    Ok((report, outcome.trace))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub family: String,
    pub n: usize,
    pub runs: usize,
    pub halted: usize,
    pub failed: usize,
    pub mean_moves_per_vertex: f64,
    pub max_moves_per_vertex: f64,
}

/// Aggregates reports by family and size.
pub fn summarize(reports: &[RunReport]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, usize), Vec<&RunReport>> = BTreeMap::new();
    for r in reports {
        groups.entry((r.family().to_string(), r.n)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((family, n), rs)| {
            // Sorted so the mean does not depend on report order.
            let mut ratios: Vec<f64> = rs.iter().map(|r| r.moves_per_vertex).collect();
            ratios.sort_by(f64::total_cmp);
            SummaryRow {
                family,
                n,
                runs: rs.len(),
                halted: rs.iter().filter(|r| r.status == RunStatus::Halted).count(),
                failed: rs.iter().filter(|r| !r.passed()).count(),
                mean_moves_per_vertex: ratios.iter().sum::<f64>() / rs.len() as f64,
                max_moves_per_vertex: ratios.last().copied().unwrap_or(0.0),
            }
        })
        .collect()
}

pub fn render_summary(rows: &[SummaryRow]) -> String {
    let mut out = format!(
        "{:<10} {:>6} {:>6} {:>7} {:>7} {:>10} {:>10}\n",
        "family", "n", "runs", "halted", "failed", "mean m/n", "max m/n"
    );
    for r in rows {
        out += &format!(
            "{:<10} {:>6} {:>6} {:>7} {:>7} {:>10.3} {:>10.3}\n",
            r.family, r.n, r.runs, r.halted, r.failed, r.mean_moves_per_vertex, r.max_moves_per_vertex
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub reports: Vec<RunReport>,
    pub summary: Vec<SummaryRow>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(RunReport::passed)
    }

    /// Writes `report.json` and `summary.txt` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<(), HarnessError> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), serde_json::to_string_pretty(self)? + "\n")?;
        fs::write(dir.join("summary.txt"), render_summary(&self.summary))?;
        Ok(())
    }
}

/// Runs every configured instance in parallel; reports keep config order.
/// Writes the output files when `config.output` is set.
pub fn run_suite(config: &ExperimentConfig) -> Result<SuiteResult, HarnessError> {
    let runs = config.expand()?;
    let reports = runs
        .par_iter()
        .map(|(spec, root)| run_one(spec, *root, config).map(|(r, _)| r))
        .collect::<Result<Vec<_>, _>>()?;
    let summary = summarize(&reports);
    let result = SuiteResult { reports, summary };
    if let Some(dir) = &config.output {
        result.write_to(Path::new(dir))?;
    }
    Ok(result)
}
