//! The runtime that sits between an agent algorithm and the hidden graph.
//!
//! An [`Environment`] owns the ground-truth position and only hands out what
//! the model allows: the binoculars ball (with fresh local ids on every
//! look) and the in-port of the last move. Every interaction is logged to a
//! [`RunTrace`] so runs can be replayed and audited afterwards.

use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AgentError, HarnessError};
use crate::explorer::{ExplorationMap, MapId};
use crate::graph::{Ball, Port, PortNumberedGraph, VertexId};

pub const TRACE_FORMAT: &str = "binoculars-trace";
pub const TRACE_VERSION: u32 = 1;

/// Default budget: this many moves per ground-truth vertex.
pub const DEFAULT_BUDGET_FACTOR: f64 = 50.0;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub ball: Ball,
    pub arrival_port: Option<Port>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Sense {
        ball: Ball,
        arrival_port: Option<Port>,
    },
    Move {
        out_port: Port,
        in_port: Port,
    },
    /// The agent's own claim about which map vertex it is standing on.
    Visit {
        map_vertex: MapId,
    },
    PhaseStart {
        phase: u32,
    },
    PhaseEnd {
        phase: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        map: Option<ExplorationMap>,
    },
    Halt,
    BudgetExhausted,
    ErrorDetected {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct TraceHeader {
    format: String,
    version: u32,
    root: VertexId,
    budget: usize,
}

/// Ordered event log of one run. `root` and `budget` are harness metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunTrace {
    pub root: VertexId,
    pub budget: usize,
    pub events: Vec<TraceEvent>,
}

impl RunTrace {
    pub fn move_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::Move { .. }))
            .count()
    }

    /// Ground-truth positions: the root, then one entry per move.
    pub fn replay_positions(&self, g: &PortNumberedGraph) -> Result<Vec<VertexId>, HarnessError> {
        let mut at = self.root;
        if at >= g.vertex_count() {
            return Err(HarnessError::MalformedTrace(format!("root {at} out of range")));
        }
        let mut out = vec![at];
        for e in &self.events {
            if let TraceEvent::Move { out_port, in_port } = *e {
                let h = g.via_port(at, out_port).ok_or_else(|| {
                    HarnessError::MalformedTrace(format!("no port {out_port} at vertex {at}"))
                })?;
                if h.in_port != in_port {
                    return Err(HarnessError::MalformedTrace(format!(
                        "move through port {out_port} at {at} arrives by {} but trace says {in_port}",
                        h.in_port
                    )));
                }
                at = h.to;
                out.push(at);
            }
        }
        Ok(out)
    }

    /// JSON lines: a version header, then one event per line.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let header = TraceHeader {
            format: TRACE_FORMAT.into(),
            version: TRACE_VERSION,
            root: self.root,
            budget: self.budget,
        };
        serde_json::to_writer(&mut w, &header)?;
        writeln!(w)?;
        for e in &self.events {
            serde_json::to_writer(&mut w, e)?;
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self, HarnessError> {
        let mut lines = r.lines();
        let first = lines
            .next()
            .ok_or_else(|| HarnessError::MalformedTrace("empty trace".into()))??;
        let header: TraceHeader = serde_json::from_str(&first)?;
        if header.format != TRACE_FORMAT || header.version != TRACE_VERSION {
            return Err(HarnessError::MalformedTrace(format!(
                "unsupported trace {} v{}",
                header.format, header.version
            )));
        }
        let mut events = Vec::new();
        for line in lines {
            let line = line?;
            if !line.trim().is_empty() {
                events.push(serde_json::from_str(&line)?);
            }
        }
        Ok(RunTrace {
            root: header.root,
            budget: header.budget,
            events,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Halted,
    BudgetExhausted,
    ErrorDetected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub status: RunStatus,
    pub moves: usize,
    /// Present whenever the agent had a map; always present on halt.
    pub final_map: Option<ExplorationMap>,
    pub trace: RunTrace,
}

/// One agent, one hidden graph, one position.
pub struct Environment<'g> {
    graph: &'g PortNumberedGraph,
    position: VertexId,
    moves: usize,
    budget: usize,
    arrival: Option<Port>,
    rng: ChaCha8Rng,
    snapshots: bool,
    trace: RunTrace,
}

impl<'g> Environment<'g> {
    pub fn new(graph: &'g PortNumberedGraph, root: VertexId, budget: usize) -> Result<Self, AgentError> {
        let violations = graph.validate();
        if !violations.is_empty() {
            return Err(AgentError::InvalidArgument(format!(
                "graph is invalid: {}",
                violations[0]
            )));
        }
        if root >= graph.vertex_count() {
            return Err(AgentError::InvalidArgument(format!("root {root} out of range")));
        }
        if budget == 0 {
            return Err(AgentError::InvalidArgument("budget must be positive".into()));
        }
        Ok(Self {
            graph,
            position: root,
            moves: 0,
            budget,
            arrival: None,
            rng: ChaCha8Rng::seed_from_u64(0),
            snapshots: true,
            trace: RunTrace {
                root,
                budget,
                events: Vec::new(),
            },
        })
    }

    /// Budget of `ceil(factor * n)` moves.
    pub fn with_budget_factor(graph: &'g PortNumberedGraph, root: VertexId, factor: f64) -> Result<Self, AgentError> {
        let budget = (factor * graph.vertex_count() as f64).ceil().max(1.0) as usize;
        Self::new(graph, root, budget)
    }

    /// Seed for the local-id shuffling of observed balls.
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng = ChaCha8Rng::seed_from_u64(seed);
        self
    }

    /// Whether phase ends carry a copy of the map (on by default).
    pub fn with_snapshots(mut self, on: bool) -> Self {
        self.snapshots = on;
        self
    }

    pub fn moves(&self) -> usize {
        self.moves
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Hidden from agents by convention; for harness checks only.
    pub fn ground_truth_position(&self) -> VertexId {
        self.position
    }

    pub fn trace(&self) -> &RunTrace {
        &self.trace
    }

    /// Looks through the binoculars at the current vertex.
    pub fn sense(&mut self) -> Observation {
        let ball = self.graph.ball(self.position).expect("position is a vertex");
        let mut perm: Vec<usize> = (1..ball.vertex_count()).collect();
        perm.shuffle(&mut self.rng);
        perm.insert(0, Ball::CENTER);
        let ball = ball.relabelled(&perm);
        self.trace.events.push(TraceEvent::Sense {
            ball: ball.clone(),
            arrival_port: self.arrival,
        });
        Observation {
            ball,
            arrival_port: self.arrival,
        }
    }

    /// Leaves through `port`; returns the in-port at the new vertex.
    pub fn move_via(&mut self, port: Port) -> Result<Port, AgentError> {
        let h = self
            .graph
            .via_port(self.position, port)
            .ok_or(AgentError::NoSuchPort { port })?;
        if self.moves >= self.budget {
            return Err(AgentError::BudgetExhausted);
        }
        self.moves += 1;
        self.position = h.to;
        self.arrival = Some(h.in_port);
        self.trace.events.push(TraceEvent::Move {
            out_port: port,
            in_port: h.in_port,
        });
        Ok(h.in_port)
    }

    pub fn arrival_port(&self) -> Option<Port> {
        self.arrival
    }

    pub fn mark_visit(&mut self, map_vertex: MapId) {
        self.trace.events.push(TraceEvent::Visit { map_vertex });
    }

    pub fn begin_phase(&mut self, phase: u32) {
        self.trace.events.push(TraceEvent::PhaseStart { phase });
    }

    pub fn end_phase(&mut self, phase: u32, map: &ExplorationMap) {
        let map = self.snapshots.then(|| map.clone());
        self.trace.events.push(TraceEvent::PhaseEnd { phase, map });
    }
}

pub enum Step {
    Continue,
    Halt,
    Error(String),
}

/// A mobile-agent algorithm driven by [`run_agent`].
pub trait Agent {
    fn on_start(&mut self, _env: &mut Environment<'_>) -> Result<(), AgentError> {
        Ok(())
    }

    fn step(&mut self, env: &mut Environment<'_>) -> Result<Step, AgentError>;

    /// The agent's current map, if it keeps one.
    fn map(&self) -> Option<&ExplorationMap> {
        None
    }
}

/// Runs `agent` until it halts, declares an error, or runs out of moves.
/// A move through a missing port is an algorithm bug and is returned as
/// `Err`.
pub fn run_agent<A: Agent + ?Sized>(agent: &mut A, mut env: Environment<'_>) -> Result<RunOutcome, AgentError> {
    let outcome = |env: Environment<'_>, status, final_map| RunOutcome {
        status,
        moves: env.moves,
        final_map,
        trace: env.trace,
    };
    let mut result = agent.on_start(&mut env).map(|_| Step::Continue);
    loop {
        match result {
            Ok(Step::Continue) => result = agent.step(&mut env),
            Ok(Step::Halt) => {
                let map = agent.map().cloned().ok_or(AgentError::MissingMap)?;
                env.trace.events.push(TraceEvent::Halt);
                return Ok(outcome(env, RunStatus::Halted, Some(map)));
            }
            Ok(Step::Error(reason)) => {
                env.trace.events.push(TraceEvent::ErrorDetected { reason });
                let map = agent.map().cloned();
                return Ok(outcome(env, RunStatus::ErrorDetected, map));
            }
            Err(AgentError::BudgetExhausted) => {
                env.trace.events.push(TraceEvent::BudgetExhausted);
                let map = agent.map().cloned();
                return Ok(outcome(env, RunStatus::BudgetExhausted, map));
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, GeneratorSpec};

    fn gen(s: &str) -> PortNumberedGraph {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    struct Idle(ExplorationMap);

    impl Agent for Idle {
        fn step(&mut self, _env: &mut Environment<'_>) -> Result<Step, AgentError> {
            Ok(Step::Halt)
        }
        fn map(&self) -> Option<&ExplorationMap> {
            Some(&self.0)
        }
    }

    struct AlwaysPortZero;

    impl Agent for AlwaysPortZero {
        fn step(&mut self, env: &mut Environment<'_>) -> Result<Step, AgentError> {
            env.move_via(0)?;
            Ok(Step::Continue)
        }
    }

    #[test]
    fn environment_arguments() {
        let k3 = gen("complete:3");
        let env = Environment::new(&k3, 0, 100).unwrap();
        assert_eq!((env.moves(), env.ground_truth_position()), (0, 0));
        let c6 = gen("cycle:6");
        assert!(Environment::new(&c6, 3, 10).is_ok());
        assert!(matches!(
            Environment::new(&c6, 3, 0),
            Err(AgentError::InvalidArgument(_))
        ));
        assert!(Environment::new(&c6, 6, 10).is_err());
    }

    #[test]
    fn sensing_before_and_after_a_move() {
        let c6 = gen("cycle:6");
        let mut env = Environment::new(&c6, 0, 10).unwrap();
        let o = env.sense();
        assert_eq!((o.ball.vertex_count(), o.ball.edges().len()), (3, 2));
        assert_eq!(o.arrival_port, None);
        let q = env.move_via(1).unwrap();
        assert_eq!(env.sense().arrival_port, Some(q));
        let h = c6.via_port(0, 1).unwrap();
        assert_eq!(q, h.in_port);
    }

    #[test]
    fn repeated_senses_are_isomorphic_but_relabelled() {
        let g = gen("complete:8,ports=random:4");
        let mut env = Environment::new(&g, 2, 10).unwrap();
        let a = env.sense().ball;
        let b = env.sense().ball;
        assert!(a.is_rooted_isomorphic(&b));
        assert_ne!(a, b, "local ids should be reshuffled");
    }

    #[test]
    fn backtrack_on_k3() {
        let k3 = gen("complete:3");
        let mut env = Environment::new(&k3, 0, 100).unwrap();
        let q = env.move_via(0).unwrap();
        env.move_via(q).unwrap();
        assert_eq!((env.ground_truth_position(), env.moves()), (0, 2));
        assert_eq!(env.move_via(9), Err(AgentError::NoSuchPort { port: 9 }));
    }

    #[test]
    fn walking_around_c6() {
        let c6 = gen("cycle:6,ports=random:7");
        let mut env = Environment::new(&c6, 0, 100).unwrap();
        let mut arrived: Option<Port> = None;
        for _ in 0..6 {
            let out = (0..2).find(|&p| Some(p) != arrived).unwrap();
            arrived = Some(env.move_via(out).unwrap());
        }
        assert_eq!(env.ground_truth_position(), 0);
        let positions = env.trace().replay_positions(&c6).unwrap();
        assert_eq!(positions.len(), 7);
        let distinct: std::collections::BTreeSet<_> = positions.iter().collect();
        assert_eq!(distinct.len(), 6);
    }

    #[test]
    fn run_outcomes() {
        let k3 = gen("complete:3");
        let out = run_agent(&mut Idle(ExplorationMap::homebase()), Environment::new(&k3, 0, 5).unwrap()).unwrap();
        assert_eq!((out.status, out.moves), (RunStatus::Halted, 0));
        assert!(out.final_map.is_some());

        let out = run_agent(&mut AlwaysPortZero, Environment::new(&k3, 0, 5).unwrap()).unwrap();
        assert_eq!((out.status, out.moves), (RunStatus::BudgetExhausted, 5));
        assert_eq!(out.trace.move_count(), 5);
        assert_eq!(out.trace.events.last(), Some(&TraceEvent::BudgetExhausted));

        struct Lost;
        impl Agent for Lost {
            fn step(&mut self, env: &mut Environment<'_>) -> Result<Step, AgentError> {
                env.move_via(42)?;
                Ok(Step::Continue)
            }
        }
        assert_eq!(
            run_agent(&mut Lost, Environment::new(&k3, 0, 5).unwrap()),
            Err(AgentError::NoSuchPort { port: 42 })
        );
    }

    #[test]
    fn jsonl_round_trip() {
        let k3 = gen("complete:3");
        let out = run_agent(&mut AlwaysPortZero, Environment::new(&k3, 1, 3).unwrap()).unwrap();
        let text = out.trace.to_jsonl();
        assert!(text.lines().next().unwrap().contains("\"version\":1"));
        let back = RunTrace::read_jsonl(text.as_bytes()).unwrap();
        assert_eq!(back, out.trace);
    }
}
