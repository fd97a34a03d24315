use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Ball, BallEdge, ClusterId, EdgeRecord, Port, PortNumberedGraph};

/// Map vertex id, allocated in creation order. The homebase is 0.
pub type MapId = usize;

/// Inserting an edge would break port injectivity or simplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
pub enum MapConflict {
    #[error("port {port} at map vertex {vertex} already leads elsewhere")]
    PortCollision { vertex: MapId, port: Port },
    #[error("map vertices {a} and {b} are already joined by a differently labelled edge")]
    ParallelEdge { a: MapId, b: MapId },
    #[error("self-loop at map vertex {0}")]
    SelfLoop(MapId),
}

/// The agent's map: a port-numbered graph plus the cluster (`cir`) and
/// phase-of-visit (`vis`) labels. `vis = None` marks the frontier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "MapFile", try_from = "MapFile")]
pub struct ExplorationMap {
    adj: Vec<BTreeMap<Port, (MapId, Port)>>,
    cir: Vec<Option<ClusterId>>,
    vis: Vec<Option<u32>>,
}

impl Default for ExplorationMap {
    fn default() -> Self {
        Self::homebase()
    }
}

impl ExplorationMap {
    pub const HOMEBASE: MapId = 0;

    /// A single explored vertex in cluster 0, visited in phase 0.
    pub fn homebase() -> Self {
        Self {
            adj: vec![BTreeMap::new()],
            cir: vec![Some(0)],
            vis: vec![Some(0)],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeMap::len).sum::<usize>() / 2
    }

    pub fn degree(&self, n: MapId) -> usize {
        self.adj[n].len()
    }

    pub fn add_vertex(&mut self) -> MapId {
        self.adj.push(BTreeMap::new());
        self.cir.push(None);
        self.vis.push(None);
        self.adj.len() - 1
    }

    /// Adds `a -- b` labelled `(port_a, port_b)`. Returns `Ok(false)` if the
    /// identical edge is already present.
    pub fn add_edge(&mut self, a: MapId, b: MapId, port_a: Port, port_b: Port) -> Result<bool, MapConflict> {
        if a == b {
            return Err(MapConflict::SelfLoop(a));
        }
        match (self.adj[a].get(&port_a), self.adj[b].get(&port_b)) {
            (Some(&x), Some(&y)) if x == (b, port_b) && y == (a, port_a) => return Ok(false),
            (Some(_), _) => return Err(MapConflict::PortCollision { vertex: a, port: port_a }),
            (_, Some(_)) => return Err(MapConflict::PortCollision { vertex: b, port: port_b }),
            (None, None) => {}
        }
        if self.adj[a].values().any(|&(t, _)| t == b) {
            return Err(MapConflict::ParallelEdge { a, b });
        }
        self.adj[a].insert(port_a, (b, port_b));
        self.adj[b].insert(port_b, (a, port_a));
        Ok(true)
    }

    /// Deletes the edge between `a` and `b`, if any.
    pub fn remove_edge(&mut self, a: MapId, b: MapId) -> bool {
        let Some((&pa, &(_, pb))) = self.adj[a].iter().find(|(_, &(t, _))| t == b) else {
            return false;
        };
        self.adj[a].remove(&pa);
        self.adj[b].remove(&pb);
        true
    }

    /// `(neighbor, far port)` behind `port` at `n`.
    pub fn via_port(&self, n: MapId, port: Port) -> Option<(MapId, Port)> {
        self.adj.get(n)?.get(&port).copied()
    }

    /// The neighbor of `n` reached by an edge labelled exactly `(p, q)`.
    pub fn edge_labelled(&self, n: MapId, p: Port, q: Port) -> Option<MapId> {
        match self.via_port(n, p) {
            Some((m, far)) if far == q => Some(m),
            _ => None,
        }
    }

    /// `(port, neighbor, far port)` in port order.
    pub fn ports(&self, n: MapId) -> impl Iterator<Item = (Port, MapId, Port)> + '_ {
        self.adj[n].iter().map(|(&p, &(m, q))| (p, m, q))
    }

    pub fn cir(&self, n: MapId) -> Option<ClusterId> {
        self.cir[n]
    }

    pub fn set_cir(&mut self, n: MapId, c: ClusterId) {
        self.cir[n] = Some(c);
    }

    pub fn vis(&self, n: MapId) -> Option<u32> {
        self.vis[n]
    }

    pub fn set_vis(&mut self, n: MapId, phase: u32) {
        self.vis[n] = Some(phase);
    }

    pub fn is_explored(&self, n: MapId) -> bool {
        self.vis[n].is_some()
    }

    pub fn frontier(&self) -> Vec<MapId> {
        (0..self.adj.len()).filter(|&n| self.vis[n].is_none()).collect()
    }

    pub fn cluster_members(&self, c: ClusterId) -> Vec<MapId> {
        (0..self.adj.len()).filter(|&n| self.cir[n] == Some(c)).collect()
    }

    /// Edge records with `a < b`.
    pub fn edges(&self) -> Vec<EdgeRecord> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, ports) in self.adj.iter().enumerate() {
            for (&pa, &(b, pb)) in ports {
                if a < b {
                    out.push((a, b, pa, pb));
                }
            }
        }
        out
    }

    /// `B_M(n, 1)` with local ids as in [`PortNumberedGraph::ball`].
    pub fn ball_at(&self, n: MapId) -> Ball {
        let mut local = BTreeMap::from([(n, 0usize)]);
        let mut edges = Vec::new();
        for (i, (&p, &(m, q))) in self.adj[n].iter().enumerate() {
            local.insert(m, i + 1);
            edges.push(BallEdge { a: 0, b: i + 1, port_a: p, port_b: q });
        }
        for (&m, &lm) in local.iter().filter(|(_, &l)| l > 0) {
            for (&p, &(x, q)) in &self.adj[m] {
                if let Some(&lx) = local.get(&x) {
                    if lx > lm {
                        edges.push(BallEdge { a: lm, b: lx, port_a: p, port_b: q });
                    }
                }
            }
        }
        Ball::from_parts(local.len(), edges)
    }

    /// The map as a plain port-numbered graph (ids preserved).
    pub fn to_graph(&self) -> PortNumberedGraph {
        PortNumberedGraph::from_edges_unchecked(self.vertex_count(), &self.edges())
            .expect("map edges reference map vertices")
    }
}

/// JSON form: the graph format plus `cir`, `vis` and `homebase`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct MapFile {
    n: usize,
    edges: Vec<EdgeRecord>,
    cir: Vec<Option<ClusterId>>,
    vis: Vec<Option<u32>>,
    homebase: MapId,
}

impl From<ExplorationMap> for MapFile {
    fn from(m: ExplorationMap) -> Self {
        MapFile {
            n: m.vertex_count(),
            edges: m.edges(),
            cir: m.cir,
            vis: m.vis,
            homebase: ExplorationMap::HOMEBASE,
        }
    }
}

impl TryFrom<MapFile> for ExplorationMap {
    type Error = String;

    fn try_from(f: MapFile) -> Result<Self, Self::Error> {
        if f.cir.len() != f.n || f.vis.len() != f.n || f.homebase != 0 || f.n == 0 {
            return Err("map tables disagree with n or homebase is not 0".into());
        }
        let mut m = ExplorationMap {
            adj: vec![BTreeMap::new(); f.n],
            cir: f.cir,
            vis: f.vis,
        };
        for (a, b, pa, pb) in f.edges {
            if a >= f.n || b >= f.n {
                return Err(format!("edge ({a},{b}) out of range"));
            }
            m.add_edge(a, b, pa, pb).map_err(|e| e.to_string())?;
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> ExplorationMap {
        let mut m = ExplorationMap::homebase();
        let a = m.add_vertex();
        let b = m.add_vertex();
        m.add_edge(0, a, 0, 0).unwrap();
        m.add_edge(0, b, 1, 0).unwrap();
        m.add_edge(a, b, 1, 1).unwrap();
        m
    }

    #[test]
    fn duplicate_edges_are_skipped_and_collisions_caught() {
        let mut m = triangle();
        assert_eq!(m.add_edge(1, 2, 1, 1), Ok(false));
        assert_eq!(m.add_edge(2, 1, 1, 1), Ok(false));
        assert_eq!(
            m.add_edge(1, 2, 1, 2),
            Err(MapConflict::PortCollision { vertex: 1, port: 1 })
        );
        let c = m.add_vertex();
        assert_eq!(
            m.add_edge(0, c, 0, 0),
            Err(MapConflict::PortCollision { vertex: 0, port: 0 })
        );
        assert_eq!(m.add_edge(0, 1, 5, 5), Err(MapConflict::ParallelEdge { a: 0, b: 1 }));
    }

    #[test]
    fn map_ball_matches_graph_ball() {
        let g = PortNumberedGraph::new(3, &[(0, 1, 0, 0), (0, 2, 1, 0), (1, 2, 1, 1)]).unwrap();
        let m = triangle();
        for v in 0..3 {
            assert!(m.ball_at(v).is_rooted_isomorphic(&g.ball(v).unwrap()));
        }
        let mut broken = m.clone();
        assert!(broken.remove_edge(1, 2));
        assert!(!broken.ball_at(0).is_rooted_isomorphic(&g.ball(0).unwrap()));
    }

    #[test]
    fn json_shape() {
        let mut m = triangle();
        m.set_vis(1, 2);
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"homebase\":0"));
        assert!(text.contains("\"vis\":[0,2,null]"));
        let back: ExplorationMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
