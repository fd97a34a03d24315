//! Cluster-by-cluster exploration of graphs whose BFS clusters form a tree.
//!
//! Each phase pops a cluster of frontier vertices, walks it while sensing,
//! then turns what it saw into new map vertices and edges. The freshly
//! mapped frontier splits into child clusters which go on the stack. When
//! the stack is empty the map is complete and the agent halts. A sensed
//! ball that disagrees with the map ends the run with an error instead.

mod ledger;
mod map;
mod tour;

use std::collections::{BTreeMap, BTreeSet};

pub use ledger::{apply_ledger, harvest_ledger, HorRecord, PreVertex, PreVertexKey, PreVertexLedger};
pub use map::{ExplorationMap, MapConflict, MapId};
pub use tour::{plan_cluster_tour, TourError, TourPlan, TourStep};

use crate::agent::{run_agent, Agent, Environment, RunOutcome, Step};
use crate::error::AgentError;
use crate::graph::{Ball, ClusterId};

/// Clusters waiting to be explored, and the id counter for new ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterStack {
    stack: Vec<ClusterId>,
    next_id: ClusterId,
}

impl Default for ClusterStack {
    fn default() -> Self {
        Self::new()
    }
}

impl ClusterStack {
    /// Holds only the homebase cluster 0.
    pub fn new() -> Self {
        Self {
            stack: vec![0],
            next_id: 1,
        }
    }

    pub fn fresh_id(&mut self) -> ClusterId {
        self.next_id += 1;
        self.next_id - 1
    }

    pub fn push(&mut self, c: ClusterId) {
        debug_assert!(c < self.next_id && !self.stack.contains(&c));
        self.stack.push(c);
    }

    pub fn pop(&mut self) -> Option<ClusterId> {
        self.stack.pop()
    }

    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    pub fn len(&self) -> usize {
        self.stack.len()
    }
}

/// Compares every recorded ball of `cluster` with the map's own ball there.
/// Returns the first vertex that disagrees.
pub fn check_local_iso(map: &ExplorationMap, balls: &BTreeMap<MapId, Ball>, cluster: &BTreeSet<MapId>) -> Result<(), MapId> {
    for &n in cluster {
        match balls.get(&n) {
            Some(b) if b.is_rooted_isomorphic(&map.ball_at(n)) => {}
            _ => return Err(n),
        }
    }
    Ok(())
}

/// Groups `new_ids` into components along edges among themselves, numbers
/// them, and pushes them so that the component with the largest least id
/// is on top.
pub fn discover_new_clusters(map: &mut ExplorationMap, new_ids: &[MapId], stack: &mut ClusterStack) -> Vec<ClusterId> {
    let fresh: BTreeSet<MapId> = new_ids.iter().copied().collect();
    let mut done = BTreeSet::new();
    let mut pushed = Vec::new();
    for &start in &fresh {
        if !done.insert(start) {
            continue;
        }
        let c = stack.fresh_id();
        let mut todo = vec![start];
        while let Some(n) = todo.pop() {
            map.set_cir(n, c);
            for (_, m, _) in map.ports(n) {
                if fresh.contains(&m) && done.insert(m) {
                    todo.push(m);
                }
            }
        }
        stack.push(c);
        pushed.push(c);
    }
    pushed
}

/// The exploration agent. Drive it with [`run_agent`] or use [`explore`].
#[derive(Clone, Debug, Default)]
pub struct Explorer {
    map: ExplorationMap,
    stack: ClusterStack,
    balls: BTreeMap<MapId, Ball>,
    at: MapId,
    phase: u32,
}

impl Explorer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    /// The ball recorded at `n`, if `n` has been explored.
    pub fn recorded_ball(&self, n: MapId) -> Option<&Ball> {
        self.balls.get(&n)
    }

    fn record_ball(&mut self, n: MapId, ball: Ball) {
        self.map.set_vis(n, self.phase);
        self.balls.insert(n, ball);
    }

    fn run_phase(&mut self, env: &mut Environment<'_>, c: ClusterId) -> Result<Step, AgentError> {
        let cluster: BTreeSet<MapId> = self.map.cluster_members(c).into_iter().collect();
        let plan = match plan_cluster_tour(&self.map, self.at, &cluster) {
            Ok(p) => p,
            Err(e) => return Ok(Step::Error(e.to_string())),
        };
        for step in plan.steps {
            match step {
                TourStep::Move { port, in_port, to } => {
                    let arrived = env.move_via(port)?;
                    if arrived != in_port {
                        return Ok(Step::Error(format!(
                            "expected to arrive at map vertex {to} by port {in_port}, came in by {arrived}"
                        )));
                    }
                    self.at = to;
                }
                TourStep::Visit(n) => {
                    env.mark_visit(n);
                    let obs = env.sense();
                    self.record_ball(n, obs.ball);
                }
            }
        }

        let conflict = |e: MapConflict| Step::Error(format!("map update failed: {e}"));
        let ledger = match harvest_ledger(&self.map, &self.balls, &cluster) {
            Ok(l) => l,
            Err(e) => return Ok(conflict(e)),
        };
        let new_ids = match apply_ledger(&mut self.map, &ledger) {
            Ok(ids) => ids,
            Err(e) => return Ok(conflict(e)),
        };
        if let Err(n) = check_local_iso(&self.map, &self.balls, &cluster) {
            return Ok(Step::Error(format!(
                "ball seen at map vertex {n} does not match the map"
            )));
        }
        discover_new_clusters(&mut self.map, &new_ids, &mut self.stack);
        env.end_phase(self.phase, &self.map);
        Ok(Step::Continue)
    }
}

impl Agent for Explorer {
    fn step(&mut self, env: &mut Environment<'_>) -> Result<Step, AgentError> {
        let Some(c) = self.stack.pop() else {
            return Ok(Step::Halt);
        };
        self.phase += 1;
        env.begin_phase(self.phase);
        self.run_phase(env, c)
    }

    fn map(&self) -> Option<&ExplorationMap> {
        Some(&self.map)
    }
}

/// Runs a fresh [`Explorer`] in `env`.
pub fn explore(env: Environment<'_>) -> Result<RunOutcome, AgentError> {
    run_agent(&mut Explorer::new(), env)
}
