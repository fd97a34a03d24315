//! Ground-truth port-numbered graphs.
//!
//! A [`PortNumberedGraph`] is the hidden network the agent walks on. Vertex
//! ids are dense `0..n` and exist only for the harness; everything the agent
//! sees goes through [`Ball`], whose ids are local to one observation.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{FormatError, GraphError};

pub type VertexId = usize;
pub type Port = u32;
pub type ClusterId = usize;

/// One direction of an edge as stored at its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdge {
    pub to: VertexId,
    pub out_port: Port,
    pub in_port: Port,
}

/// An edge record `(u, v, port at u, port at v)`.
pub type EdgeRecord = (VertexId, VertexId, Port, Port);

/// A broken model assumption found by [`PortNumberedGraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Empty,
    SelfLoop { vertex: VertexId },
    ParallelEdges { u: VertexId, v: VertexId },
    PortCollision { vertex: VertexId, port: Port },
    AsymmetricEdge {
        from: VertexId,
        to: VertexId,
        out_port: Port,
        in_port: Port,
    },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty graph"),
            Violation::SelfLoop { vertex } => write!(f, "not simple: self-loop at {vertex}"),
            Violation::ParallelEdges { u, v } => {
                write!(f, "not simple: parallel edges between {u} and {v}")
            }
            Violation::PortCollision { vertex, port } => {
                write!(f, "port injectivity: port {port} used twice at vertex {vertex}")
            }
            Violation::AsymmetricEdge {
                from,
                to,
                out_port,
                in_port,
            } => write!(
                f,
                "asymmetric edge record: {from}->{to} via ({out_port},{in_port}) has no mirror"
            ),
            Violation::Disconnected { components } => {
                write!(f, "disconnected: {components} components")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortNumberedGraph {
    adj: Vec<Vec<HalfEdge>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<VertexId, String>,
}

impl PortNumberedGraph {
    /// Builds and validates a graph from edge records.
    pub fn new(n: usize, edges: &[EdgeRecord]) -> Result<Self, GraphError> {
        let g = Self::from_edges_unchecked(n, edges)?;
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    /// Builds a graph without checking the model assumptions. Only vertex
    /// ranges are enforced, since adjacency is indexed by vertex.
    pub fn from_edges_unchecked(n: usize, edges: &[EdgeRecord]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v, pu, pv) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::InvalidVertex { vertex: x, n });
                }
            }
            adj[u].push(HalfEdge {
                to: v,
                out_port: pu,
                in_port: pv,
            });
            if u != v {
                adj[v].push(HalfEdge {
                    to: u,
                    out_port: pv,
                    in_port: pu,
                });
            }
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    /// Raw adjacency lists, possibly asymmetric. Used to exercise
    /// [`validate`](Self::validate) on malformed records.
    pub fn from_adjacency_unchecked(mut adj: Vec<Vec<HalfEdge>>) -> Self {
        for list in &mut adj {
            list.sort();
            list.sort_by_key(|h| h.out_port);
        }
        Self {
            adj,
            labels: BTreeMap::new(),
        }
    }

    pub fn with_labels(mut self, labels: BTreeMap<VertexId, String>) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, String> {
        &self.labels
    }

    /// Returns every violated model assumption; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.adj.len();
        if n == 0 {
            return vec![Violation::Empty];
        }
        let mut out = Vec::new();
        for (v, list) in self.adj.iter().enumerate() {
            let mut ports = BTreeSet::new();
            let mut targets = BTreeSet::new();
            for h in list {
                if h.to == v {
                    out.push(Violation::SelfLoop { vertex: v });
                    continue;
                }
                if !ports.insert(h.out_port) {
                    out.push(Violation::PortCollision {
                        vertex: v,
                        port: h.out_port,
                    });
                }
                if !targets.insert(h.to) && v < h.to {
                    out.push(Violation::ParallelEdges { u: v, v: h.to });
                }
                let mirrored = self.adj.get(h.to).is_some_and(|back| {
                    back.iter().any(|b| {
                        b.to == v && b.out_port == h.in_port && b.in_port == h.out_port
                    })
                });
                if !mirrored {
                    out.push(Violation::AsymmetricEdge {
                        from: v,
                        to: h.to,
                        out_port: h.out_port,
                        in_port: h.in_port,
                    });
                }
            }
        }
        let components = self.component_count();
        if components > 1 {
            out.push(Violation::Disconnected { components });
        }
        out
    }

    fn component_count(&self) -> usize {
        let n = self.adj.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for h in &self.adj[v] {
                    if h.to < n && !seen[h.to] {
                        seen[h.to] = true;
                        stack.push(h.to);
                    }
                }
            }
        }
        count
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Half-edges at `v`, sorted by out-port.
    pub fn half_edges(&self, v: VertexId) -> &[HalfEdge] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().map(|h| h.to)
    }

    /// The half-edge leaving `v` through `port`, if any.
    pub fn via_port(&self, v: VertexId, port: Port) -> Option<HalfEdge> {
        let list = self.adj.get(v)?;
        list.binary_search_by_key(&port, |h| h.out_port)
            .ok()
            .map(|i| list[i])
    }

    /// Ports `(at u, at v)` of the edge `uv`, if present.
    pub fn edge_ports(&self, u: VertexId, v: VertexId) -> Option<(Port, Port)> {
        let (a, b, flip) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v, false)
        } else {
            (v, u, true)
        };
        self.adj[a].iter().find(|h| h.to == b).map(|h| {
            if flip {
                (h.in_port, h.out_port)
            } else {
                (h.out_port, h.in_port)
            }
        })
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_ports(u, v).is_some()
    }

    /// Edge records with `u < v`, ordered by `(u, port at u)`.
    pub fn edges(&self) -> Vec<EdgeRecord> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for h in list {
                if u < h.to {
                    out.push((u, h.to, h.out_port, h.in_port));
                }
            }
        }
        out
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                n: self.adj.len(),
            })
        }
    }

    /// The radius-1 ball around `v` with local ids (center 0, neighbors in
    /// out-port order).
    pub fn ball(&self, v: VertexId) -> Result<Ball, GraphError> {
        self.ball_with_ids(v).map(|(b, _)| b)
    }

    /// Like [`ball`](Self::ball) but also returns the side table mapping
    /// local ids back to ground-truth vertices.
    pub fn ball_with_ids(&self, v: VertexId) -> Result<(Ball, Vec<VertexId>), GraphError> {
        self.check_vertex(v)?;
        let mut ids = Vec::with_capacity(self.adj[v].len() + 1);
        ids.push(v);
        let mut local: HashMap<VertexId, usize> = HashMap::with_capacity(self.adj[v].len() + 1);
        local.insert(v, 0);
        let mut edges = Vec::new();
        for h in &self.adj[v] {
            local.insert(h.to, ids.len());
            edges.push(BallEdge {
                a: 0,
                b: ids.len(),
                port_a: h.out_port,
                port_b: h.in_port,
            });
            ids.push(h.to);
        }
        for (la, &w) in ids.iter().enumerate().skip(1) {
            for h in &self.adj[w] {
                if let Some(&lb) = local.get(&h.to) {
                    if lb > la {
                        edges.push(BallEdge {
                            a: la,
                            b: lb,
                            port_a: h.out_port,
                            port_b: h.in_port,
                        });
                    }
                }
            }
        }
        Ok((
            Ball {
                vertex_count: ids.len(),
                edges,
            },
            ids,
        ))
    }

    /// Follows `ports` from `v`; `None` as soon as a port is missing.
    pub fn dest(&self, v: VertexId, ports: &[Port]) -> Option<VertexId> {
        let mut at = v;
        for &p in ports {
            at = self.via_port(at, p)?.to;
        }
        (at < self.adj.len()).then_some(at)
    }

    /// BFS distance layering from `root`.
    pub fn layering(&self, root: VertexId) -> Result<Layering, GraphError> {
        self.check_vertex(root)?;
        let n = self.adj.len();
        let mut sphere_of = vec![usize::MAX; n];
        sphere_of[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for h in &self.adj[v] {
                if sphere_of[h.to] == usize::MAX {
                    sphere_of[h.to] = sphere_of[v] + 1;
                    queue.push_back(h.to);
                }
            }
        }
        let depth = sphere_of.iter().filter(|&&d| d != usize::MAX).max().copied();
        let mut spheres = vec![Vec::new(); depth.map_or(0, |d| d + 1)];
        for (v, &d) in sphere_of.iter().enumerate() {
            if d != usize::MAX {
                spheres[d].push(v);
            }
        }
        Ok(Layering {
            root,
            sphere_of,
            spheres,
        })
    }

    /// Splits every sphere into the connected components of its induced
    /// subgraph and records which clusters touch.
    pub fn cluster_decomposition(&self, root: VertexId) -> Result<ClusterDecomposition, GraphError> {
        let layering = self.layering(root)?;
        let n = self.adj.len();
        let mut cluster_of = vec![usize::MAX; n];
        let mut clusters = Vec::new();
        for (i, sphere) in layering.spheres.iter().enumerate() {
            for &s in sphere {
                if cluster_of[s] != usize::MAX {
                    continue;
                }
                let id = clusters.len();
                cluster_of[s] = id;
                let mut members = vec![s];
                let mut stack = vec![s];
                while let Some(v) = stack.pop() {
                    for h in &self.adj[v] {
                        if layering.sphere_of[h.to] == i && cluster_of[h.to] == usize::MAX {
                            cluster_of[h.to] = id;
                            members.push(h.to);
                            stack.push(h.to);
                        }
                    }
                }
                members.sort_unstable();
                clusters.push(Cluster {
                    id,
                    sphere: i,
                    vertices: members,
                });
            }
        }
        let mut edges = BTreeSet::new();
        for (u, v, _, _) in self.edges() {
            let (cu, cv) = (cluster_of[u], cluster_of[v]);
            if cu == cv {
                continue;
            }
            let (su, sv) = (clusters[cu].sphere, clusters[cv].sphere);
            assert_ne!(su, sv, "same-sphere adjacency between distinct clusters");
            edges.insert(if su < sv { (cu, cv) } else { (cv, cu) });
        }
        Ok(ClusterDecomposition {
            root,
            clusters,
            cluster_of,
            edges,
        })
    }

    /// The same graph with vertex `v` renamed to `perm[v]`; ports are kept.
    pub fn renamed(&self, perm: &[VertexId]) -> Self {
        let n = self.adj.len();
        assert_eq!(perm.len(), n);
        let mut adj = vec![Vec::new(); n];
        for (v, list) in self.adj.iter().enumerate() {
            adj[perm[v]] = list
                .iter()
                .map(|h| HalfEdge {
                    to: perm[h.to],
                    ..*h
                })
                .collect();
        }
        let labels = self
            .labels
            .iter()
            .map(|(v, l)| (perm[*v], l.clone()))
            .collect();
        Self::from_adjacency_unchecked(adj).with_labels(labels)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.vertex_count(),
            edges: self.edges().into_iter().map(|(u, v, p, q)| [u as u64, v as u64, p as u64, q as u64]).collect(),
            labels: (!self.labels.is_empty()).then(|| {
                self.labels
                    .iter()
                    .map(|(v, l)| (v.to_string(), l.clone()))
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    /// Parses the JSON graph format and validates it. Rejections carry the
    /// line of each offending edge entry.
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let file: GraphFile = serde_json::from_str(text)?;
        let lines = edge_entry_lines(text);
        let line_of = |i: usize| lines.get(i).copied().unwrap_or(0);
        let mut problems = Vec::new();
        let mut records = Vec::with_capacity(file.edges.len());
        for (i, e) in file.edges.iter().enumerate() {
            let as_port = |x: u64| Port::try_from(x).ok();
            match (as_port(e[2]), as_port(e[3])) {
                (Some(p), Some(q)) if (e[0] as usize) < file.n && (e[1] as usize) < file.n => {
                    records.push((e[0] as usize, e[1] as usize, p, q));
                }
                _ => problems.push(format!(
                    "line {}: edge #{i} {:?}: vertex or port out of range (n = {})",
                    line_of(i),
                    e,
                    file.n
                )),
            }
        }
        if !problems.is_empty() {
            return Err(FormatError::Rejected(problems));
        }
        let mut labels = BTreeMap::new();
        for (k, l) in file.labels.unwrap_or_default() {
            match k.parse::<VertexId>() {
                Ok(v) if v < file.n => {
                    labels.insert(v, l);
                }
                _ => problems.push(format!("labels: key `{k}` is not a vertex id")),
            }
        }
        let g = Self::from_edges_unchecked(file.n, &records)
            .expect("ranges checked above")
            .with_labels(labels);
        for violation in g.validate() {
            let culprits: Vec<usize> = records
                .iter()
                .enumerate()
                .filter(|(_, r)| violation_touches(&violation, r))
                .map(|(i, _)| i)
                .collect();
            if culprits.is_empty() {
                problems.push(violation.to_string());
            }
            for i in culprits {
                problems.push(format!(
                    "line {}: edge #{i} {:?}: {violation}",
                    line_of(i),
                    file.edges[i]
                ));
            }
        }
        if problems.is_empty() {
            Ok(g)
        } else {
            Err(FormatError::Rejected(problems))
        }
    }
}

fn violation_touches(v: &Violation, &(a, b, pa, pb): &EdgeRecord) -> bool {
    match *v {
        Violation::SelfLoop { vertex } => a == vertex && b == vertex,
        Violation::ParallelEdges { u, v } => (a, b) == (u, v) || (a, b) == (v, u),
        Violation::PortCollision { vertex, port } => {
            (a == vertex && pa == port) || (b == vertex && pb == port)
        }
        Violation::AsymmetricEdge { from, to, .. } => (a, b) == (from, to) || (a, b) == (to, from),
        Violation::Empty | Violation::Disconnected { .. } => false,
    }
}

/// 1-based line numbers of the entries of the top-level `"edges"` array.
fn edge_entry_lines(text: &str) -> Vec<usize> {
    let Some(start) = text.find("\"edges\"") else {
        return Vec::new();
    };
    let mut line = 1 + text[..start].matches('\n').count();
    let mut depth = 0usize;
    let mut out = Vec::new();
    for c in text[start..].chars() {
        match c {
            '\n' => line += 1,
            '[' => {
                depth += 1;
                if depth == 2 {
                    out.push(line);
                }
            }
            ']' => {
                if depth <= 1 {
                    break;
                }
                depth -= 1;
            }
            _ => {}
        }
    }
    out
}

/// On-disk JSON graph: `{"n": 3, "edges": [[u, v, portAtU, portAtV], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[u64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

/// Local vertex id inside a [`Ball`]. The center is always 0.
pub type LocalId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BallEdge {
    pub a: LocalId,
    pub b: LocalId,
    pub port_a: Port,
    pub port_b: Port,
}

/// What the binoculars show: the induced radius-1 ball with ports, center 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ball {
    vertex_count: usize,
    edges: Vec<BallEdge>,
}

/// Port-only description of a ball; two balls are rooted port-isomorphic
/// exactly when their signatures are equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BallSignature {
    /// `(port at center, port at neighbor)`, sorted.
    pub spokes: Vec<(Port, Port)>,
    /// Rim edges keyed by the center ports of their endpoints:
    /// `(center port to x, center port to y, port at x, port at y)` with the
    /// first two ascending.
    pub rims: Vec<(Port, Port, Port, Port)>,
}

impl Ball {
    pub const CENTER: LocalId = 0;

    pub fn from_parts(vertex_count: usize, edges: Vec<BallEdge>) -> Self {
        Self {
            vertex_count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[BallEdge] {
        &self.edges
    }

    pub fn center_degree(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.a == Self::CENTER || e.b == Self::CENTER)
            .count()
    }

    /// `(local id, port at neighbor)` for each center port.
    pub fn spokes(&self) -> BTreeMap<Port, (LocalId, Port)> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            if e.a == Self::CENTER {
                out.insert(e.port_a, (e.b, e.port_b));
            } else if e.b == Self::CENTER {
                out.insert(e.port_b, (e.a, e.port_a));
            }
        }
        out
    }

    /// Edges between two non-center vertices.
    pub fn rim_edges(&self) -> impl Iterator<Item = &BallEdge> {
        self.edges
            .iter()
            .filter(|e| e.a != Self::CENTER && e.b != Self::CENTER)
    }

    pub fn signature(&self) -> BallSignature {
        let mut center_port = vec![None; self.vertex_count];
        let mut spokes = Vec::new();
        for (p, (l, q)) in self.spokes() {
            center_port[l] = Some(p);
            spokes.push((p, q));
        }
        let mut rims: Vec<_> = self
            .rim_edges()
            .filter_map(|e| {
                let (x, y) = (center_port[e.a]?, center_port[e.b]?);
                Some(if x < y {
                    (x, y, e.port_a, e.port_b)
                } else {
                    (y, x, e.port_b, e.port_a)
                })
            })
            .collect();
        rims.sort_unstable();
        BallSignature { spokes, rims }
    }

    pub fn is_rooted_isomorphic(&self, other: &Ball) -> bool {
        self.is_well_formed() && other.is_well_formed() && self.signature() == other.signature()
    }

    /// Every non-center vertex hangs off the center, ports are injective at
    /// every local vertex, and there are no self-loops.
    pub fn is_well_formed(&self) -> bool {
        let mut ports: Vec<BTreeSet<Port>> = vec![BTreeSet::new(); self.vertex_count];
        let mut attached = vec![false; self.vertex_count];
        if self.vertex_count == 0 {
            return false;
        }
        attached[Self::CENTER] = true;
        for e in &self.edges {
            if e.a == e.b || e.a >= self.vertex_count || e.b >= self.vertex_count {
                return false;
            }
            if !ports[e.a].insert(e.port_a) || !ports[e.b].insert(e.port_b) {
                return false;
            }
            if e.a == Self::CENTER {
                attached[e.b] = true;
            }
            if e.b == Self::CENTER {
                attached[e.a] = true;
            }
        }
        attached.into_iter().all(|x| x)
    }

    /// Renames local vertex `l` to `perm[l]`; `perm[0]` must be 0.
    pub fn relabelled(&self, perm: &[LocalId]) -> Ball {
        assert_eq!(perm.len(), self.vertex_count);
        assert_eq!(perm[Self::CENTER], Self::CENTER, "center must stay 0");
        let edges = self
            .edges
            .iter()
            .map(|e| BallEdge {
                a: perm[e.a],
                b: perm[e.b],
                ..*e
            })
            .collect();
        Ball {
            vertex_count: self.vertex_count,
            edges,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layering {
    pub root: VertexId,
    pub sphere_of: Vec<usize>,
    pub spheres: Vec<Vec<VertexId>>,
}

impl Layering {
    /// Neighbors of `v` one sphere closer to the root.
    pub fn predecessors(&self, g: &PortNumberedGraph, v: VertexId) -> Vec<VertexId> {
        let d = self.sphere_of[v];
        let mut out: Vec<_> = g
            .neighbors(v)
            .filter(|&u| d > 0 && self.sphere_of[u] == d - 1)
            .collect();
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub id: ClusterId,
    pub sphere: usize,
    pub vertices: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterDecomposition {
    pub root: VertexId,
    /// Ordered by sphere, then by smallest member; cluster 0 is `{root}`.
    pub clusters: Vec<Cluster>,
    pub cluster_of: Vec<ClusterId>,
    /// `(lower sphere cluster, higher sphere cluster)`.
    pub edges: BTreeSet<(ClusterId, ClusterId)>,
}

impl ClusterDecomposition {
    pub const ROOT: ClusterId = 0;

    pub fn is_tree(&self) -> bool {
        // The cluster graph of a connected graph is connected.
        self.edges.len() + 1 == self.clusters.len()
    }

    pub fn predecessors(&self, c: ClusterId) -> Vec<ClusterId> {
        self.edges
            .iter()
            .filter(|&&(_, hi)| hi == c)
            .map(|&(lo, _)| lo)
            .collect()
    }

    pub fn successors(&self, c: ClusterId) -> Vec<ClusterId> {
        self.edges
            .range((c, 0)..=(c, usize::MAX))
            .map(|&(_, hi)| hi)
            .collect()
    }

    /// The unique predecessor cluster of `c`. Fails when the cluster graph is
    /// not a tree, which signals an input that is not simply connected.
    pub fn ancestor(&self, c: ClusterId) -> Result<ClusterId, GraphError> {
        if c >= self.clusters.len() {
            return Err(GraphError::InvalidCluster(c));
        }
        if c == Self::ROOT {
            return Err(GraphError::RootCluster(c));
        }
        let predecessors = self.predecessors(c);
        if !self.is_tree() || predecessors.len() != 1 {
            return Err(GraphError::NotATree {
                cluster: c,
                predecessors,
            });
        }
        Ok(predecessors[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical(n: usize, pairs: &[(usize, usize)]) -> PortNumberedGraph {
        let mut next = vec![0; n];
        let edges: Vec<_> = pairs
            .iter()
            .map(|&(u, v)| {
                let r = (u, v, next[u], next[v]);
                next[u] += 1;
                next[v] += 1;
                r
            })
            .collect();
        PortNumberedGraph::new(n, &edges).unwrap()
    }

    fn k3() -> PortNumberedGraph {
        canonical(3, &[(0, 1), (0, 2), (1, 2)])
    }

    fn cycle(n: usize) -> PortNumberedGraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        canonical(n, &pairs)
    }

    #[test]
    fn k3_with_canonical_ports_is_valid() {
        assert!(k3().validate().is_empty());
        for v in 0..3 {
            let ports: Vec<_> = k3().half_edges(v).iter().map(|h| h.out_port).collect();
            assert_eq!(ports, vec![0, 1]);
        }
    }

    #[test]
    fn duplicate_out_port_is_reported() {
        let g = PortNumberedGraph::from_edges_unchecked(3, &[(0, 1, 0, 0), (0, 2, 0, 0)]).unwrap();
        let v = g.validate();
        assert!(v.contains(&Violation::PortCollision { vertex: 0, port: 0 }));
        assert!(v.iter().any(|x| x.to_string().contains("port injectivity")));
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        let g = PortNumberedGraph::from_edges_unchecked(4, &[(0, 1, 0, 0), (2, 3, 0, 0)]).unwrap();
        let v = g.validate();
        assert_eq!(v, vec![Violation::Disconnected { components: 2 }]);
        assert!(v[0].to_string().contains("disconnected"));
    }

    #[test]
    fn asymmetric_and_non_simple_records() {
        let adj = vec![
            vec![HalfEdge { to: 1, out_port: 0, in_port: 3 }],
            vec![HalfEdge { to: 0, out_port: 0, in_port: 0 }],
        ];
        let g = PortNumberedGraph::from_adjacency_unchecked(adj);
        assert!(g
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::AsymmetricEdge { from: 0, .. })));
        let g = PortNumberedGraph::from_edges_unchecked(2, &[(0, 1, 0, 0), (0, 1, 1, 1)]).unwrap();
        assert!(g.validate().contains(&Violation::ParallelEdges { u: 0, v: 1 }));
        let g = PortNumberedGraph::from_edges_unchecked(1, &[(0, 0, 0, 1)]).unwrap();
        assert!(g.validate().contains(&Violation::SelfLoop { vertex: 0 }));
    }

    #[test]
    fn balls_of_k3_and_c6() {
        let b = k3().ball(1).unwrap();
        assert_eq!((b.vertex_count(), b.edges().len()), (3, 3));
        let b = cycle(6).ball(4).unwrap();
        assert_eq!((b.vertex_count(), b.edges().len()), (3, 2));
        assert_eq!(b.rim_edges().count(), 0);
        assert!(matches!(
            cycle(6).ball(6),
            Err(GraphError::InvalidVertex { vertex: 6, n: 6 })
        ));
    }

    #[test]
    fn dest_follows_ports() {
        let g = cycle(4);
        assert_eq!(g.dest(2, &[]), Some(2));
        // Port 0 always leads to the smaller neighbor here, so the walk
        // bounces between 0 and 1.
        assert_eq!(g.dest(0, &[0, 0, 0, 0]), Some(0));
        let h = g.via_port(1, 1).unwrap();
        assert_eq!(g.dest(h.to, &[h.in_port]), Some(1));
        assert_eq!(g.dest(0, &[7]), None);
    }

    #[test]
    fn layering_examples() {
        let l = k3().layering(0).unwrap();
        assert_eq!(l.spheres, vec![vec![0], vec![1, 2]]);
        let p5 = canonical(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let l = p5.layering(0).unwrap();
        assert_eq!(l.spheres, (0..5).map(|i| vec![i]).collect::<Vec<_>>());
        let l = cycle(6).layering(0).unwrap();
        let sizes: Vec<_> = l.spheres.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
    }

    #[test]
    fn clusters_and_ancestors() {
        let d = k3().cluster_decomposition(0).unwrap();
        assert_eq!(d.clusters.len(), 2);
        assert_eq!(d.clusters[1].vertices, vec![1, 2]);
        assert!(d.is_tree());
        assert_eq!(d.ancestor(1), Ok(0));
        assert_eq!(d.ancestor(0), Err(GraphError::RootCluster(0)));

        let p5 = canonical(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let d = p5.cluster_decomposition(0).unwrap();
        for c in 1..5 {
            assert_eq!(d.ancestor(c), Ok(c - 1));
        }

        let d = cycle(6).cluster_decomposition(0).unwrap();
        assert_eq!(d.clusters.len(), 6);
        assert!(!d.is_tree());
        let last = d.cluster_of[3];
        assert_eq!(d.clusters[last].sphere, 3);
        match d.ancestor(last) {
            Err(GraphError::NotATree { predecessors, .. }) => assert_eq!(predecessors.len(), 2),
            other => panic!("expected NotATree, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip_and_diagnostics() {
        let g = k3();
        let back = PortNumberedGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);

        let text = "{\n  \"n\": 3,\n  \"edges\": [\n    [0, 1, 0, 0],\n    [0, 2, 0, 1]\n  ]\n}";
        let err = PortNumberedGraph::from_json(text).unwrap_err().to_string();
        assert!(err.contains("line 4"), "{err}");
        assert!(err.contains("line 5"), "{err}");
        assert!(err.contains("port injectivity"), "{err}");

        let text = "{\"n\": 2, \"edges\": [[0, 5, 0, 0]]}";
        let err = PortNumberedGraph::from_json(text).unwrap_err().to_string();
        assert!(err.contains("out of range"), "{err}");
    }

    #[test]
    fn labels_survive_json() {
        let mut labels = BTreeMap::new();
        labels.insert(2, "x".to_string());
        let g = k3().with_labels(labels);
        let back = PortNumberedGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.labels().get(&2).map(String::as_str), Some("x"));
    }
}
