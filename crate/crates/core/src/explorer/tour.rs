use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::map::{ExplorationMap, MapId};
use crate::graph::Port;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TourStep {
    /// Leave through `port`; the map predicts arrival at `to` by `in_port`.
    Move { port: Port, in_port: Port, to: MapId },
    /// First arrival at a cluster vertex: look through the binoculars here.
    Visit(MapId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TourPlan {
    pub steps: Vec<TourStep>,
}

impl TourPlan {
    pub fn move_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, TourStep::Move { .. }))
            .count()
    }

    pub fn visit_order(&self) -> Vec<MapId> {
        self.steps
            .iter()
            .filter_map(|s| match *s {
                TourStep::Visit(n) => Some(n),
                _ => None,
            })
            .collect()
    }

    pub fn ports(&self) -> Vec<Port> {
        self.steps
            .iter()
            .filter_map(|s| match *s {
                TourStep::Move { port, .. } => Some(port),
                _ => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TourError {
    #[error("cluster is empty")]
    EmptyCluster,
    #[error("cluster unreachable in map from vertex {0}")]
    Unreachable(MapId),
    #[error("cluster is not connected in the map")]
    Disconnected,
}

/// Shortest map path (lowest port first on ties) to the nearest cluster
/// vertex, then a depth-first walk of the cluster that ends at the last
/// newly visited vertex.
pub fn plan_cluster_tour(map: &ExplorationMap, from: MapId, cluster: &BTreeSet<MapId>) -> Result<TourPlan, TourError> {
    if cluster.is_empty() {
        return Err(TourError::EmptyCluster);
    }
    let mut steps = approach(map, from, cluster)?;
    let entry = match steps.last() {
        Some(&TourStep::Move { to, .. }) => to,
        _ => from,
    };

    let mut seen = BTreeSet::from([entry]);
    steps.push(TourStep::Visit(entry));
    let mut last_visit = steps.len();
    // Each frame: vertex and an iterator position over its ports.
    let mut stack: Vec<(MapId, Option<Port>)> = vec![(entry, None)];
    while let Some(&mut (n, ref mut after)) = stack.last_mut() {
        let next = map
            .ports(n)
            .find(|&(p, m, _)| after.map_or(true, |a| p > a) && cluster.contains(&m) && !seen.contains(&m));
        match next {
            Some((p, m, q)) => {
                *after = Some(p);
                seen.insert(m);
                steps.push(TourStep::Move { port: p, in_port: q, to: m });
                steps.push(TourStep::Visit(m));
                last_visit = steps.len();
                stack.push((m, None));
            }
            None => {
                stack.pop();
                if let Some(&(parent, Some(p))) = stack.last() {
                    let (_, back) = map.via_port(parent, p).expect("tree edge");
                    steps.push(TourStep::Move { port: back, in_port: p, to: parent });
                }
            }
        }
    }
    if seen.len() != cluster.len() {
        return Err(TourError::Disconnected);
    }
    steps.truncate(last_visit);
    Ok(TourPlan { steps })
}

fn approach(map: &ExplorationMap, from: MapId, cluster: &BTreeSet<MapId>) -> Result<Vec<TourStep>, TourError> {
    if from >= map.vertex_count() {
        return Err(TourError::Unreachable(from));
    }
    let mut parent: Vec<Option<(MapId, Port, Port)>> = vec![None; map.vertex_count()];
    let mut seen = vec![false; map.vertex_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(n) = queue.pop_front() {
        if cluster.contains(&n) {
            let mut path = Vec::new();
            let mut at = n;
            while let Some((prev, p, q)) = parent[at] {
                path.push(TourStep::Move { port: p, in_port: q, to: at });
                at = prev;
            }
            path.reverse();
            return Ok(path);
        }
        for (p, m, q) in map.ports(n) {
            if !seen[m] {
                seen[m] = true;
                parent[m] = Some((n, p, q));
                queue.push_back(m);
            }
        }
    }
    Err(TourError::Unreachable(from))
}
