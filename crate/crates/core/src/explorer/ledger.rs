use std::collections::{BTreeMap, BTreeSet};

use super::map::{ExplorationMap, MapConflict, MapId};
use crate::graph::{Ball, Port};

/// A not-yet-mapped neighbor of explored vertex `n`, seen behind port `p`.
pub type PreVertexKey = (MapId, Port);

/// `(n, p, q)`: pre-vertex `(n, p)` whose edge carries far port `q`.
pub type PreVertex = (MapId, Port, Port);

/// `(n, p1, p2, (r, s))` with `p1 < p2`: the unmapped neighbors behind `p1`
/// and `p2` are joined by an edge labelled `(r, s)` (`r` at the `p1` side).
pub type HorRecord = (MapId, Port, Port, (Port, Port));

/// Disjoint sets with path compression and union by size.
#[derive(Clone, Debug, Default)]
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.size.push(1);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Everything one phase learns before the map is touched.
#[derive(Clone, Debug, Default)]
pub struct PreVertexLedger {
    pre_verts: BTreeMap<PreVertexKey, Port>,
    slot: BTreeMap<PreVertexKey, usize>,
    sets: DisjointSets,
    equiv_pairs: BTreeSet<(PreVertexKey, PreVertexKey)>,
    hor: BTreeSet<HorRecord>,
}

impl PreVertexLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.pre_verts.is_empty()
    }

    /// Adds `(n, p, q)`. A second far port for the same key is kept out and
    /// reported, since it can only come from a broken map.
    pub fn add_pre_vertex(&mut self, n: MapId, p: Port, q: Port) -> Result<(), MapConflict> {
        match self.pre_verts.get(&(n, p)) {
            Some(&old) if old != q => Err(MapConflict::PortCollision { vertex: n, port: p }),
            Some(_) => Ok(()),
            None => {
                self.pre_verts.insert((n, p), q);
                let s = self.sets.add();
                self.slot.insert((n, p), s);
                Ok(())
            }
        }
    }

    /// Records `a ≡ b`, adding both pre-vertices if needed.
    pub fn add_equivalence(&mut self, a: PreVertex, b: PreVertex) -> Result<(), MapConflict> {
        self.add_pre_vertex(a.0, a.1, a.2)?;
        self.add_pre_vertex(b.0, b.1, b.2)?;
        let (ka, kb) = ((a.0, a.1), (b.0, b.1));
        self.equiv_pairs.insert((ka.min(kb), ka.max(kb)));
        let (sa, sb) = (self.slot[&ka], self.slot[&kb]);
        self.sets.union(sa, sb);
        Ok(())
    }

    /// Records a horizontal edge; the ports may come in either order.
    pub fn add_hor(&mut self, n: MapId, p1: Port, p2: Port, label: (Port, Port)) {
        let rec = if p1 < p2 {
            (n, p1, p2, label)
        } else {
            (n, p2, p1, (label.1, label.0))
        };
        self.hor.insert(rec);
    }

    pub fn pre_vertices(&self) -> impl Iterator<Item = PreVertex> + '_ {
        self.pre_verts.iter().map(|(&(n, p), &q)| (n, p, q))
    }

    pub fn equiv_pairs(&self) -> &BTreeSet<(PreVertexKey, PreVertexKey)> {
        &self.equiv_pairs
    }

    pub fn hor_records(&self) -> &BTreeSet<HorRecord> {
        &self.hor
    }

    /// Equivalence classes, each sorted, ordered by their least member.
    pub fn classes(&self) -> Vec<Vec<PreVertexKey>> {
        let mut sets = self.sets.clone();
        let mut by_root: BTreeMap<usize, Vec<PreVertexKey>> = BTreeMap::new();
        // Keys iterate in ascending order, so each class comes out sorted.
        for (&key, &s) in &self.slot {
            by_root.entry(sets.find(s)).or_default().push(key);
        }
        let mut classes: Vec<_> = by_root.into_values().collect();
        classes.sort_unstable_by_key(|c| c[0]);
        classes
    }

    /// The least member of the class of `key`.
    pub fn representative(&self, key: PreVertexKey) -> Option<PreVertexKey> {
        let mut sets = self.sets.clone();
        let root = sets.find(*self.slot.get(&key)?);
        self.slot
            .iter()
            .find(|&(_, &s)| sets.find(s) == root)
            .map(|(&k, _)| k)
    }
}

/// Reads the balls of `cluster` against the current map and fills a fresh
/// ledger: unmapped spokes become pre-vertices, triangles through one mapped
/// spoke to another cluster vertex give equivalences, and triangles through
/// two unmapped spokes give horizontal records.
pub fn harvest_ledger(
    map: &ExplorationMap,
    balls: &BTreeMap<MapId, Ball>,
    cluster: &BTreeSet<MapId>,
) -> Result<PreVertexLedger, MapConflict> {
    let mut ledger = PreVertexLedger::new();
    for &n in cluster {
        let Some(ball) = balls.get(&n) else { continue };
        let sig = ball.signature();
        let far: BTreeMap<Port, Port> = sig.spokes.iter().copied().collect();
        let mapped = |p: Port| map.edge_labelled(n, p, far[&p]);

        for &(p, q) in &sig.spokes {
            if mapped(p).is_none() {
                ledger.add_pre_vertex(n, p, q)?;
            }
        }
        for &(px, py, rx, ry) in &sig.rims {
            for (pv, pw, r, s) in [(px, py, rx, ry), (py, px, ry, rx)] {
                let Some(m) = mapped(pv) else { continue };
                if mapped(pw).is_some() || !cluster.contains(&m) {
                    continue;
                }
                if map.edge_labelled(m, r, s).is_none() {
                    ledger.add_equivalence((n, pw, far[&pw]), (m, r, s))?;
                }
            }
            if mapped(px).is_none() && mapped(py).is_none() {
                ledger.add_hor(n, px, py, (rx, ry));
            }
        }
    }
    Ok(ledger)
}

/// Adds one vertex per class, then vertical and horizontal edges. Returns
/// the new ids in allocation order. Duplicate edges are skipped; anything
/// that would break port injectivity or simplicity is a conflict.
pub fn apply_ledger(map: &mut ExplorationMap, ledger: &PreVertexLedger) -> Result<Vec<MapId>, MapConflict> {
    let mut new_of: BTreeMap<PreVertexKey, MapId> = BTreeMap::new();
    let mut new_ids = Vec::new();
    for class in ledger.classes() {
        let id = map.add_vertex();
        new_ids.push(id);
        for key in class {
            new_of.insert(key, id);
        }
    }
    for (n, p, q) in ledger.pre_vertices() {
        map.add_edge(n, new_of[&(n, p)], p, q)?;
    }
    for &(n, p1, p2, (r, s)) in ledger.hor_records() {
        let (a, b) = (new_of[&(n, p1)], new_of[&(n, p2)]);
        map.add_edge(a, b, r, s)?;
    }
    Ok(new_ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_follow_least_member() {
        let mut l = PreVertexLedger::new();
        l.add_pre_vertex(3, 1, 0).unwrap();
        l.add_equivalence((2, 4, 0), (3, 1, 0)).unwrap();
        l.add_pre_vertex(1, 0, 0).unwrap();
        assert_eq!(l.classes(), vec![vec![(1, 0)], vec![(2, 4), (3, 1)]]);
        assert_eq!(l.representative((3, 1)), Some((2, 4)));
        assert_eq!(l.representative((9, 9)), None);
    }

    #[test]
    fn far_port_disagreement_is_a_conflict() {
        let mut l = PreVertexLedger::new();
        l.add_pre_vertex(0, 1, 2).unwrap();
        assert!(l.add_pre_vertex(0, 1, 2).is_ok());
        assert!(l.add_pre_vertex(0, 1, 3).is_err());
    }

    #[test]
    fn hor_records_are_normalized() {
        let mut l = PreVertexLedger::new();
        l.add_hor(0, 5, 2, (7, 8));
        l.add_hor(0, 2, 5, (8, 7));
        assert_eq!(l.hor_records().iter().copied().collect::<Vec<_>>(), vec![(0, 2, 5, (8, 7))]);
    }

    #[test]
    fn empty_ledger_leaves_map_alone() {
        let mut m = ExplorationMap::homebase();
        let before = m.clone();
        assert_eq!(apply_ledger(&mut m, &PreVertexLedger::new()), Ok(vec![]));
        assert_eq!(m, before);
    }
}
