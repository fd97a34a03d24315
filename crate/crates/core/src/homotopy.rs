//! Bounded combinatorial homotopy: loop rewriting, contractibility search,
//! simple connectivity, tree unfoldings of triangle-free graphs and covering
//! checks. These are the ground-truth oracles the explorer is judged against.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::HomotopyError;
use crate::graph::{EdgeRecord, PortNumberedGraph, VertexId};

/// A closed walk where consecutive vertices are equal or adjacent.
///
/// Stored cyclically without the closing repeat: `(a, b, a)` and `(a, b)`
/// are the same loop, and every single-vertex loop is a point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Loop(Vec<VertexId>);

impl Loop {
    /// From a closed sequence `v0, ..., vk` with `v0 == vk` (a single
    /// vertex is also accepted).
    pub fn closed(seq: &[VertexId]) -> Result<Self, HomotopyError> {
        match seq {
            [] => Err(HomotopyError::InvalidLoop("empty sequence".into())),
            [v] => Ok(Loop(vec![*v])),
            [first, .., last] if first == last => Ok(Loop(seq[..seq.len() - 1].to_vec())),
            _ => Err(HomotopyError::InvalidLoop("first and last vertex differ".into())),
        }
    }

    /// From a cyclic sequence; the closing step goes from the last entry
    /// back to the first.
    pub fn cyclic(seq: Vec<VertexId>) -> Result<Self, HomotopyError> {
        if seq.is_empty() {
            return Err(HomotopyError::InvalidLoop("empty sequence".into()));
        }
        Ok(Loop(seq))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.0.len() == 1
    }

    /// The closed form `v0, ..., v0`.
    pub fn to_closed(&self) -> Vec<VertexId> {
        let mut v = self.0.clone();
        if v.len() > 1 {
            v.push(v[0]);
        }
        v
    }

    pub fn is_valid_in(&self, g: &PortNumberedGraph) -> bool {
        let n = g.vertex_count();
        let s = &self.0;
        s.iter().all(|&v| v < n)
            && (0..s.len()).all(|i| {
                let (a, b) = (s[i], s[(i + 1) % s.len()]);
                a == b || g.has_edge(a, b)
            })
    }

    /// Rotation starting at the lexicographically least position.
    pub fn canonical(&self) -> Loop {
        let s = &self.0;
        let best = (0..s.len())
            .min_by(|&i, &j| s[i..].iter().chain(&s[..i]).cmp(s[j..].iter().chain(&s[..j])))
            .unwrap_or(0);
        Loop(s[best..].iter().chain(&s[..best]).copied().collect())
    }
}

impl fmt::Display for Loop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.to_closed().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Contract,
    Backtrack,
    Push,
    /// Inverse of one of the three removals.
    Insert,
}

/// One elementary homotopy applied to the canonical form of the current loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomotopyMove {
    pub kind: MoveKind,
    pub index: usize,
    /// Inserted vertex (only for [`MoveKind::Insert`]); it lands right
    /// after position `index`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<VertexId>,
}

impl HomotopyMove {
    /// Applies the move to `l.canonical()`; `None` if it is not legal there.
    pub fn apply(&self, g: &PortNumberedGraph, l: &Loop) -> Option<Loop> {
        let s = l.canonical().0;
        let len = s.len();
        if self.index >= len {
            return None;
        }
        match self.kind {
            MoveKind::Insert => {
                let x = self.vertex?;
                let (a, b) = (s[self.index], s[(self.index + 1) % len]);
                if !insertable(g, a, x, b) {
                    return None;
                }
                let mut out = s;
                out.insert(self.index + 1, x);
                Some(Loop(out).canonical())
            }
            kind => {
                if removal_kind(g, &s, self.index) != Some(kind) {
                    return None;
                }
                let mut out = s;
                out.remove(self.index);
                Some(Loop(out).canonical())
            }
        }
    }
}

fn near(g: &PortNumberedGraph, a: VertexId, b: VertexId) -> bool {
    a == b || g.has_edge(a, b)
}

/// Whether `x` may sit between consecutive entries `a` and `b`.
fn insertable(g: &PortNumberedGraph, a: VertexId, x: VertexId, b: VertexId) -> bool {
    near(g, a, x) && near(g, x, b) && (x == a || x == b || a == b || g.has_edge(a, b))
}

fn removal_kind(g: &PortNumberedGraph, s: &[VertexId], i: usize) -> Option<MoveKind> {
    let len = s.len();
    if len < 2 {
        return None;
    }
    let (prev, cur, next) = (s[(i + len - 1) % len], s[i], s[(i + 1) % len]);
    if cur == next || cur == prev {
        Some(MoveKind::Contract)
    } else if prev == next {
        Some(MoveKind::Backtrack)
    } else if g.has_edge(prev, next) {
        Some(MoveKind::Push)
    } else {
        None
    }
}

/// All moves from `l` whose result has at most `max_len` vertices.
fn moves_from(g: &PortNumberedGraph, l: &Loop, max_len: usize) -> Vec<(HomotopyMove, Loop)> {
    let s = l.canonical().0;
    let len = s.len();
    let mut out = Vec::new();
    for i in 0..len {
        if let Some(kind) = removal_kind(g, &s, i) {
            let mv = HomotopyMove { kind, index: i, vertex: None };
            let mut next = s.clone();
            next.remove(i);
            out.push((mv, Loop(next).canonical()));
        }
    }
    if len < max_len {
        for i in 0..len {
            let (a, b) = (s[i], s[(i + 1) % len]);
            let mut candidates: BTreeSet<VertexId> = BTreeSet::from([a, b]);
            if a == b || g.has_edge(a, b) {
                candidates.extend(g.neighbors(a).filter(|&x| near(g, x, b)));
            }
            for x in candidates {
                if insertable(g, a, x, b) {
                    let mut next = s.clone();
                    next.insert(i + 1, x);
                    let mv = HomotopyMove {
                        kind: MoveKind::Insert,
                        index: i,
                        vertex: Some(x),
                    };
                    out.push((mv, Loop(next).canonical()));
                }
            }
        }
    }
    out
}

/// Every loop one elementary homotopy away from `l`, in canonical form.
/// Both shortening and lengthening moves are included.
pub fn elementary_moves(g: &PortNumberedGraph, l: &Loop) -> BTreeSet<Loop> {
    moves_from(g, l, usize::MAX).into_iter().map(|(_, x)| x).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionBudget {
    pub max_loop_length: usize,
    pub max_steps: usize,
}

impl ContractionBudget {
    pub fn for_loop(l: &Loop) -> Self {
        Self {
            max_loop_length: 2 * l.len() + 4,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Contractible { steps: usize },
    /// Every loop reachable within the length cap was examined.
    NotContractibleWithinBudget,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractibilityAnswer {
    pub verdict: Verdict,
    #[serde(rename = "loop")]
    pub start: Loop,
    /// Present for contractible verdicts; replays from `start` to a point.
    pub moves: Option<Vec<HomotopyMove>>,
}

impl ContractibilityAnswer {
    pub fn is_contractible(&self) -> bool {
        matches!(self.verdict, Verdict::Contractible { .. })
    }

    /// Replays the trace and returns the final loop.
    pub fn replay(&self, g: &PortNumberedGraph) -> Option<Loop> {
        let mut cur = self.start.canonical();
        for mv in self.moves.as_ref()? {
            cur = mv.apply(g, &cur)?;
        }
        Some(cur)
    }

    pub fn trace_json(&self) -> String {
        serde_json::json!({ "loop": self.start.to_closed(), "moves": self.moves })
            .to_string()
    }
}

/// Decides whether `l` reduces to a point. A greedy pass of shortening
/// moves runs first; if it gets stuck, a breadth-first search over the
/// loop-rewriting graph takes over, capped by `budget`.
pub fn is_contractible(
    g: &PortNumberedGraph,
    l: &Loop,
    budget: ContractionBudget,
) -> Result<ContractibilityAnswer, HomotopyError> {
    if !l.is_valid_in(g) {
        return Err(HomotopyError::InvalidLoop(format!("{l} is not a loop of the graph")));
    }
    let start = l.canonical();
    let answer = |verdict, moves| ContractibilityAnswer {
        verdict,
        start: start.clone(),
        moves,
    };
    if let Some(moves) = greedy_contraction(g, &start) {
        return Ok(answer(Verdict::Contractible { steps: moves.len() }, Some(moves)));
    }
    let mut parent: HashMap<Loop, Option<(Loop, HomotopyMove)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start.clone()]);
    let mut expanded = 0usize;
    while let Some(cur) = queue.pop_front() {
        if cur.is_point() {
            let mut moves = Vec::new();
            let mut at = cur;
            while let Some(Some((prev, mv))) = parent.get(&at) {
                moves.push(*mv);
                at = prev.clone();
            }
            moves.reverse();
            return Ok(answer(Verdict::Contractible { steps: moves.len() }, Some(moves)));
        }
        if expanded >= budget.max_steps {
            return Ok(answer(Verdict::BudgetExhausted, None));
        }
        expanded += 1;
        for (mv, next) in moves_from(g, &cur, budget.max_loop_length) {
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), mv)));
                queue.push_back(next);
            }
        }
    }
    Ok(answer(Verdict::NotContractibleWithinBudget, None))
}

fn greedy_contraction(g: &PortNumberedGraph, start: &Loop) -> Option<Vec<HomotopyMove>> {
    let mut cur = start.clone();
    let mut moves = Vec::new();
    while !cur.is_point() {
        let s = &cur.0;
        let i = (0..s.len()).find(|&i| removal_kind(g, s, i).is_some())?;
        let mv = HomotopyMove {
            kind: removal_kind(g, s, i)?,
            index: i,
            vertex: None,
        };
        cur = mv.apply(g, &cur)?;
        moves.push(mv);
    }
    Some(moves)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityBudget {
    /// Instances above this size are refused.
    pub max_vertices: usize,
    /// When set, every simple cycle up to this length is also checked.
    pub simple_cycle_cap: Option<usize>,
    /// Cap on the number of enumerated simple cycles.
    pub max_cycles: usize,
}

impl Default for ConnectivityBudget {
    fn default() -> Self {
        Self {
            max_vertices: 64,
            simple_cycle_cap: None,
            max_cycles: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimpleConnectivity {
    Yes,
    /// `witness` is provably not contractible.
    No { witness: Loop },
    /// `undecided` could not be contracted within budget.
    Unknown { undecided: Loop },
}

/// Simple connectivity through simple cycles.
///
/// The fundamental cycles of a BFS spanning tree generate every loop up to
/// homotopy, so "yes" needs only those. "No" is claimed only on
/// triangle-free graphs, where no 2-cell exists and a cyclically reduced
/// nontrivial cycle can never shrink.
pub fn is_simply_connected(
    g: &PortNumberedGraph,
    budget: &ConnectivityBudget,
) -> Result<SimpleConnectivity, HomotopyError> {
    let n = g.vertex_count();
    if n > budget.max_vertices {
        return Err(HomotopyError::TooLarge(format!(
            "{n} vertices exceeds the oracle cap of {}",
            budget.max_vertices
        )));
    }
    let mut cycles = fundamental_cycles(g);
    if let Some(cap) = budget.simple_cycle_cap {
        cycles.extend(simple_cycles(g, cap, budget.max_cycles));
    }
    if cycles.is_empty() {
        return Ok(SimpleConnectivity::Yes);
    }
    if is_triangle_free(g) {
        return Ok(SimpleConnectivity::No {
            witness: cycles.swap_remove(0),
        });
    }
    for c in cycles {
        let answer = is_contractible(g, &c, ContractionBudget::for_loop(&c))?;
        if !answer.is_contractible() {
            return Ok(SimpleConnectivity::Unknown { undecided: c });
        }
    }
    Ok(SimpleConnectivity::Yes)
}

pub fn is_triangle_free(g: &PortNumberedGraph) -> bool {
    g.edges().iter().all(|&(u, v, _, _)| !g.neighbors(u).any(|w| g.has_edge(w, v)))
}

/// One simple cycle per non-tree edge of the BFS tree rooted at 0.
pub fn fundamental_cycles(g: &PortNumberedGraph) -> Vec<Loop> {
    let Ok(layering) = g.layering(0) else {
        return Vec::new();
    };
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    for sphere in &layering.spheres[1..] {
        for &v in sphere {
            parent[v] = layering.predecessors(g, v)[0];
        }
    }
    let depth = &layering.sphere_of;
    let mut out = Vec::new();
    for (u, v, _, _) in g.edges() {
        if parent[u] == v || parent[v] == u {
            continue;
        }
        let (mut a, mut b) = (u, v);
        let (mut left, mut right) = (vec![a], vec![b]);
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
                left.push(a);
            } else {
                b = parent[b];
                right.push(b);
            }
        }
        right.pop();
        right.reverse();
        left.extend(right);
        out.push(Loop(left).canonical());
    }
    out
}

/// Simple cycles of length `3..=max_len`, each listed once, at most `max_count`.
pub fn simple_cycles(g: &PortNumberedGraph, max_len: usize, max_count: usize) -> Vec<Loop> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        extend_cycles(g, s, max_len, max_count, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
        path.pop();
        if out.len() >= max_count {
            break;
        }
    }
    out
}

fn extend_cycles(
    g: &PortNumberedGraph,
    start: VertexId,
    max_len: usize,
    max_count: usize,
    path: &mut Vec<VertexId>,
    on_path: &mut [bool],
    out: &mut Vec<Loop>,
) {
    let last = *path.last().expect("path starts at start");
    for w in g.neighbors(last).collect::<Vec<_>>() {
        if out.len() >= max_count {
            return;
        }
        // Cycles are rooted at their smallest vertex; orientation is fixed by
        // requiring the second vertex to be below the last one.
        if w == start && path.len() >= 3 && path[1] < last {
            out.push(Loop(path.clone()));
        } else if w > start && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            extend_cycles(g, start, max_len, max_count, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Truncated universal cover of a triangle-free graph: the tree of
/// non-backtracking walks from `root`, with inherited ports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCover {
    pub tree: PortNumberedGraph,
    /// Endpoint of each walk; walk 0 is the empty walk at the root.
    pub projection: Vec<VertexId>,
    pub depth: Vec<usize>,
    pub radius: usize,
}

impl TreeCover {
    /// Walks of maximal length, whose degree is truncated.
    pub fn boundary(&self) -> BTreeSet<VertexId> {
        (0..self.depth.len())
            .filter(|&i| self.depth[i] == self.radius)
            .collect()
    }
}

pub const MAX_COVER_VERTICES: usize = 1_000_000;

pub fn unfold_tree_cover(
    g: &PortNumberedGraph,
    root: VertexId,
    radius: usize,
) -> Result<TreeCover, HomotopyError> {
    if !is_triangle_free(g) {
        return Err(HomotopyError::HasTriangles);
    }
    if root >= g.vertex_count() {
        return Err(HomotopyError::InvalidLoop(format!("root {root} out of range")));
    }
    let mut projection = vec![root];
    let mut depth = vec![0];
    let mut arrived_by: Vec<Option<u32>> = vec![None];
    let mut edges: Vec<EdgeRecord> = Vec::new();
    let mut i = 0;
    while i < projection.len() {
        if depth[i] < radius {
            for h in g.half_edges(projection[i]) {
                if Some(h.out_port) == arrived_by[i] {
                    continue;
                }
                let child = projection.len();
                if child >= MAX_COVER_VERTICES {
                    return Err(HomotopyError::TooLarge(format!(
                        "unfolding exceeds {MAX_COVER_VERTICES} walks"
                    )));
                }
                projection.push(h.to);
                depth.push(depth[i] + 1);
                arrived_by.push(Some(h.in_port));
                edges.push((i, child, h.out_port, h.in_port));
            }
        }
        i += 1;
    }
    let tree = PortNumberedGraph::new(projection.len(), &edges)
        .expect("unfolding is a port-consistent tree");
    Ok(TreeCover {
        tree,
        projection,
        depth,
        radius,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoveringViolation {
    NotTotal { len: usize, expected: usize },
    Homomorphism { edge: (VertexId, VertexId) },
    LocalInjectivity { vertex: VertexId, image: VertexId },
    PortPreservation { edge: (VertexId, VertexId) },
    Degree { vertex: VertexId, expected: usize, found: usize },
    BallIsomorphism { vertex: VertexId },
}

impl fmt::Display for CoveringViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotTotal { len, expected } => {
                write!(f, "map covers {len} of {expected} vertices")
            }
            Self::Homomorphism { edge } => write!(f, "homomorphism: edge {edge:?} has no image"),
            Self::LocalInjectivity { vertex, image } => write!(
                f,
                "local injectivity: two neighbors of {vertex} both map to {image}"
            ),
            Self::PortPreservation { edge } => {
                write!(f, "port preservation: edge {edge:?} changes labels")
            }
            Self::Degree {
                vertex,
                expected,
                found,
            } => write!(f, "degree: vertex {vertex} has {found}, image has {expected}"),
            Self::BallIsomorphism { vertex } => {
                write!(f, "ball isomorphism: ball at {vertex} differs from its image")
            }
        }
    }
}

/// Checks that `phi: V(h) -> V(g)` is a simplicial covering. Vertices in
/// `truncated` are only required to be homomorphic, injective and
/// port-preserving; their degree and ball are not compared.
pub fn verify_simplicial_covering(
    h: &PortNumberedGraph,
    g: &PortNumberedGraph,
    phi: &[VertexId],
    truncated: &BTreeSet<VertexId>,
) -> Result<(), CoveringViolation> {
    if phi.len() != h.vertex_count() || phi.iter().any(|&x| x >= g.vertex_count()) {
        return Err(CoveringViolation::NotTotal {
            len: phi.iter().filter(|&&x| x < g.vertex_count()).count(),
            expected: h.vertex_count(),
        });
    }
    for u in 0..h.vertex_count() {
        let mut images = BTreeSet::new();
        for e in h.half_edges(u) {
            if !g.has_edge(phi[u], phi[e.to]) {
                return Err(CoveringViolation::Homomorphism { edge: (u, e.to) });
            }
            if !images.insert(phi[e.to]) {
                return Err(CoveringViolation::LocalInjectivity {
                    vertex: u,
                    image: phi[e.to],
                });
            }
        }
        for e in h.half_edges(u) {
            if g.edge_ports(phi[u], phi[e.to]) != Some((e.out_port, e.in_port)) {
                return Err(CoveringViolation::PortPreservation { edge: (u, e.to) });
            }
        }
        if truncated.contains(&u) {
            continue;
        }
        if h.degree(u) != g.degree(phi[u]) {
            return Err(CoveringViolation::Degree {
                vertex: u,
                expected: g.degree(phi[u]),
                found: h.degree(u),
            });
        }
        let (hb, gb) = (h.ball(u).expect("in range"), g.ball(phi[u]).expect("in range"));
        if hb.signature() != gb.signature() {
            return Err(CoveringViolation::BallIsomorphism { vertex: u });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, GeneratorSpec};

    fn gen(s: &str) -> PortNumberedGraph {
        generate(&s.parse::<GeneratorSpec>().unwrap()).unwrap()
    }

    fn closed(seq: &[VertexId]) -> Loop {
        Loop::closed(seq).unwrap().canonical()
    }

    #[test]
    fn loop_construction() {
        assert_eq!(closed(&[1, 2, 1]), Loop::cyclic(vec![1, 2]).unwrap().canonical());
        assert!(Loop::closed(&[1, 2]).is_err());
        assert!(Loop::closed(&[]).is_err());
        assert_eq!(closed(&[3, 1, 2, 3]).vertices(), &[1, 2, 3]);
        assert_eq!(closed(&[2, 0, 1, 2]).to_string(), "(0,1,2,0)");
    }

    #[test]
    fn stationary_loop_contracts() {
        let g = gen("path:3");
        let moves = elementary_moves(&g, &closed(&[1, 1, 1]));
        assert!(moves.contains(&closed(&[1, 1])));
    }

    #[test]
    fn backtrack_reduces_to_point() {
        let g = gen("path:3");
        assert!(elementary_moves(&g, &closed(&[0, 1, 0])).contains(&closed(&[0])));
    }

    #[test]
    fn triangle_pushes_across_its_cell() {
        let g = gen("complete:3");
        let moves = elementary_moves(&g, &closed(&[0, 1, 2, 0]));
        assert!(moves.contains(&closed(&[0, 2, 0])));
        // Oracle: removing any one corner of the triangle is a push.
        let expected: BTreeSet<_> = [closed(&[1, 2, 1]), closed(&[0, 2, 0]), closed(&[0, 1, 0])]
            .into_iter()
            .collect();
        let shorter: BTreeSet<_> = moves.into_iter().filter(|l| l.len() == 2).collect();
        assert_eq!(shorter, expected);
    }

    #[test]
    fn loops_in_trees_contract() {
        let g = gen("tree:n=12,seed=5");
        let l = Loop::closed(&[0, g.neighbors(0).next().unwrap(), 0]).unwrap();
        let a = is_contractible(&g, &l, ContractionBudget::for_loop(&l)).unwrap();
        assert!(a.is_contractible());
        assert!(a.replay(&g).unwrap().is_point());
    }

    #[test]
    fn square_is_not_contractible() {
        let g = gen("cycle:4");
        let l = closed(&[0, 1, 2, 3, 0]);
        for max_loop_length in [6, 8] {
            let budget = ContractionBudget {
                max_loop_length,
                max_steps: 1_000_000,
            };
            let a = is_contractible(&g, &l, budget).unwrap();
            assert_eq!(a.verdict, Verdict::NotContractibleWithinBudget);
        }
        let tiny = ContractionBudget {
            max_loop_length: 8,
            max_steps: 3,
        };
        assert_eq!(is_contractible(&g, &l, tiny).unwrap().verdict, Verdict::BudgetExhausted);
    }

    #[test]
    fn octahedron_hexagon_contracts() {
        let g = gen("johnson:4,2");
        // Subsets in lexicographic order: 0={0,1} 1={0,2} 2={0,3} 3={1,2}
        // 4={1,3} 5={2,3}. Antipodal pairs: (0,5), (1,4), (2,3).
        let hexagon = [0, 1, 3, 4, 5, 2, 0];
        for w in hexagon.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
        let l = closed(&hexagon);
        let a = is_contractible(&g, &l, ContractionBudget::for_loop(&l)).unwrap();
        assert!(a.is_contractible());
        assert!(a.replay(&g).unwrap().is_point());
        // The equator square needs a detour over a pole.
        let square = closed(&[0, 1, 5, 4, 0]);
        let a = is_contractible(&g, &square, ContractionBudget::for_loop(&square)).unwrap();
        assert!(a.is_contractible());
        assert!(a.moves.as_ref().unwrap().iter().any(|m| m.kind == MoveKind::Insert));
        assert!(a.replay(&g).unwrap().is_point());
        assert!(a.trace_json().contains("\"moves\""));
    }

    #[test]
    fn simple_connectivity_examples() {
        let b = ConnectivityBudget::default();
        assert_eq!(is_simply_connected(&gen("tree:n=10,seed=1"), &b), Ok(SimpleConnectivity::Yes));
        for k in 4..9 {
            let r = is_simply_connected(&gen(&format!("cycle:{k}")), &b).unwrap();
            assert!(matches!(r, SimpleConnectivity::No { .. }), "cycle {k}: {r:?}");
        }
        assert_eq!(is_simply_connected(&gen("johnson:4,2"), &b), Ok(SimpleConnectivity::Yes));
        let exhaustive = ConnectivityBudget {
            simple_cycle_cap: Some(6),
            ..b.clone()
        };
        assert_eq!(
            is_simply_connected(&gen("johnson:4,2"), &exhaustive),
            Ok(SimpleConnectivity::Yes)
        );
        assert!(is_simply_connected(&gen("path:100"), &b).is_err());
    }

    #[test]
    fn simple_cycles_of_k4() {
        // K4 has 4 triangles and 3 four-cycles.
        let c = simple_cycles(&gen("complete:4"), 4, 100);
        assert_eq!(c.iter().filter(|l| l.len() == 3).count(), 4);
        assert_eq!(c.iter().filter(|l| l.len() == 4).count(), 3);
    }

    #[test]
    fn unfoldings() {
        let c6 = gen("cycle:6");
        let cover = unfold_tree_cover(&c6, 0, 4).unwrap();
        assert_eq!(cover.tree.vertex_count(), 9);
        assert_eq!(cover.tree.edge_count(), 8);
        assert!((0..9).all(|v| cover.tree.degree(v) <= 2));

        let p5 = gen("path:5");
        let cover = unfold_tree_cover(&p5, 0, 10).unwrap();
        assert_eq!(cover.tree.vertex_count(), 5);
        assert_eq!(cover.projection, vec![0, 1, 2, 3, 4]);

        let cover = unfold_tree_cover(&gen("cycle:4"), 0, 2).unwrap();
        assert_eq!(cover.tree.vertex_count(), 5);

        assert_eq!(
            unfold_tree_cover(&gen("complete:3"), 0, 2),
            Err(HomotopyError::HasTriangles)
        );
    }

    #[test]
    fn coverings() {
        let g = gen("johnson:5,2");
        let id: Vec<_> = (0..10).collect();
        assert_eq!(verify_simplicial_covering(&g, &g, &id, &BTreeSet::new()), Ok(()));

        let c6 = gen("cycle:6");
        let cover = unfold_tree_cover(&c6, 0, 6).unwrap();
        assert_eq!(
            verify_simplicial_covering(&cover.tree, &c6, &cover.projection, &cover.boundary()),
            Ok(())
        );
        assert!(verify_simplicial_covering(&cover.tree, &c6, &cover.projection, &BTreeSet::new())
            .is_err());

        // Collapse both neighbors of vertex 1 of a path onto vertex 0.
        let p3 = gen("path:3");
        let r = verify_simplicial_covering(&p3, &p3, &[0, 1, 0], &BTreeSet::new());
        let v = r.unwrap_err();
        assert!(matches!(v, CoveringViolation::LocalInjectivity { vertex: 1, .. }));
        assert!(v.to_string().contains("local injectivity"));
    }
}
