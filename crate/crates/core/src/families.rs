//! Graph generators and the structural condition checkers.
//!
//! Generators are addressed by short spec strings such as `johnson:5,2`,
//! `chordal:n=100,rate=0.4,seed=7` or `cycle:6`. Port numbering is chosen by
//! an optional `ports=canonical` / `ports=random:SEED` item.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::SpecError;
use crate::graph::{EdgeRecord, Layering, Port, PortNumberedGraph, VertexId};

/// Hard cap on generated vertex counts.
pub const MAX_VERTICES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Johnson { n: usize, k: usize },
    RandomChordal { n: usize, rate: f64 },
    Complete { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Tree { n: usize },
    Grid { rows: usize, cols: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PortScheme {
    /// Ports `0..deg` assigned in increasing neighbor order.
    #[default]
    Canonical,
    /// A seeded random permutation of `0..deg` at every vertex.
    Random(u64),
}

impl fmt::Display for PortScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortScheme::Canonical => write!(f, "canonical"),
            PortScheme::Random(s) => write!(f, "random:{s}"),
        }
    }
}

impl FromStr for PortScheme {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SpecError::Syntax {
            spec: s.to_string(),
            reason: "port scheme is `canonical` or `random:SEED`".into(),
        };
        match s.split_once(':') {
            None if s == "canonical" => Ok(PortScheme::Canonical),
            Some(("random", seed)) => seed.parse().map(PortScheme::Random).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// A fully determined graph instance: same spec, same graph, bit for bit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub seed: u64,
    pub ports: PortScheme,
}

impl GeneratorSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            seed: 0,
            ports: PortScheme::Canonical,
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn ports(mut self, ports: PortScheme) -> Self {
        self.ports = ports;
        self
    }

    pub fn vertex_count(&self) -> usize {
        match self.family {
            Family::Johnson { n, k } => binomial(n, k),
            Family::RandomChordal { n, .. }
            | Family::Complete { n }
            | Family::Path { n }
            | Family::Cycle { n }
            | Family::Tree { n } => n,
            Family::Grid { rows, cols } => rows.saturating_mul(cols),
        }
    }

    pub fn check(&self) -> Result<(), SpecError> {
        let bad = |m: String| Err(SpecError::Parameters(m));
        match self.family {
            Family::Johnson { n, k } if k == 0 || k > n => {
                return bad(format!("johnson needs 1 <= k <= n, got n={n}, k={k}"))
            }
            Family::RandomChordal { rate, .. } if !(0.0..=10.0).contains(&rate) => {
                return bad(format!("chordal rate must lie in [0, 10], got {rate}"))
            }
            Family::Cycle { n } if n < 3 => return bad(format!("cycle needs n >= 3, got {n}")),
            _ => {}
        }
        let n = self.vertex_count();
        if n == 0 {
            return bad("graph would be empty".into());
        }
        if n > MAX_VERTICES {
            return bad(format!("{n} vertices exceeds the cap of {MAX_VERTICES}"));
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Johnson { n, k } => write!(f, "johnson:{n},{k}")?,
            Family::RandomChordal { n, rate } => {
                write!(f, "chordal:n={n},rate={rate},seed={}", self.seed)?
            }
            Family::Complete { n } => write!(f, "complete:{n}")?,
            Family::Path { n } => write!(f, "path:{n}")?,
            Family::Cycle { n } => write!(f, "cycle:{n}")?,
            Family::Tree { n } => write!(f, "tree:n={n},seed={}", self.seed)?,
            Family::Grid { rows, cols } => write!(f, "grid:{rows},{cols}")?,
        }
        if self.ports != PortScheme::Canonical {
            write!(f, ",ports={}", self.ports)?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorSpec {
    type Err = SpecError;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let syntax = |reason: &str| SpecError::Syntax {
            spec: spec.to_string(),
            reason: reason.to_string(),
        };
        let (family, rest) = spec.split_once(':').ok_or_else(|| syntax("missing `:`"))?;
        let mut positional = Vec::new();
        let mut keyed = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.split_once('=') {
                Some((k, v)) => keyed.push((k.trim(), v.trim())),
                None => positional.push(item),
            }
        }
        let mut seed = 0u64;
        let mut ports = PortScheme::Canonical;
        let mut n_key = None;
        let mut rate = None;
        for &(k, v) in &keyed {
            match k {
                "seed" => seed = v.parse().map_err(|_| syntax("seed is a u64"))?,
                "ports" => ports = v.parse()?,
                "n" => n_key = Some(v.parse::<usize>().map_err(|_| syntax("n is a natural"))?),
                "rate" => rate = Some(v.parse::<f64>().map_err(|_| syntax("rate is a number"))?),
                _ => return Err(syntax(&format!("unknown key `{k}`"))),
            }
        }
        let nat = |i: usize| -> Result<usize, SpecError> {
            positional
                .get(i)
                .ok_or_else(|| syntax("missing positional parameter"))?
                .parse()
                .map_err(|_| syntax("parameters are naturals"))
        };
        let size = |i: usize| n_key.map_or_else(|| nat(i), Ok);
        let family = match family.trim() {
            "johnson" => Family::Johnson { n: nat(0)?, k: nat(1)? },
            "chordal" => Family::RandomChordal {
                n: size(0)?,
                rate: rate.ok_or_else(|| syntax("chordal needs rate="))?,
            },
            "complete" => Family::Complete { n: size(0)? },
            "path" => Family::Path { n: size(0)? },
            "cycle" => Family::Cycle { n: size(0)? },
            "tree" => Family::Tree { n: size(0)? },
            "grid" => Family::Grid { rows: nat(0)?, cols: nat(1)? },
            other => return Err(SpecError::UnknownFamily(other.to_string())),
        };
        let spec = GeneratorSpec { family, seed, ports };
        spec.check()?;
        Ok(spec)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return usize::MAX,
        };
    }
    acc
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<PortNumberedGraph, SpecError> {
    spec.check()?;
    let (n, pairs) = match spec.family {
        Family::Johnson { n, k } => johnson_pairs(n, k),
        Family::RandomChordal { n, rate } => (n, random_chordal_pairs(n, rate, spec.seed)),
        Family::Complete { n } => (
            n,
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        ),
        Family::Path { n } => (n, (1..n).map(|v| (v - 1, v)).collect()),
        Family::Cycle { n } => (n, (0..n).map(|v| (v, (v + 1) % n)).collect()),
        Family::Tree { n } => (n, random_tree(n, &mut ChaCha8Rng::seed_from_u64(spec.seed))),
        Family::Grid { rows, cols } => {
            let id = |r: usize, c: usize| r * cols + c;
            let mut pairs = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        pairs.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        pairs.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            (rows * cols, pairs)
        }
    };
    let edges = assign_ports(n, &pairs, spec.ports);
    PortNumberedGraph::new(n, &edges).map_err(|e| SpecError::Parameters(e.to_string()))
}

/// Attaches ports to an undirected simple edge list.
pub fn assign_ports(n: usize, pairs: &[(VertexId, VertexId)], scheme: PortScheme) -> Vec<EdgeRecord> {
    let mut nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &(u, v) in pairs {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let mut rng = match scheme {
        PortScheme::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        PortScheme::Canonical => None,
    };
    let mut port_to: Vec<Vec<(VertexId, Port)>> = Vec::with_capacity(n);
    for list in &mut nbrs {
        list.sort_unstable();
        let mut ports: Vec<Port> = (0..list.len() as Port).collect();
        if let Some(rng) = rng.as_mut() {
            ports.shuffle(rng);
        }
        port_to.push(list.iter().copied().zip(ports).collect());
    }
    let lookup = |u: VertexId, v: VertexId| {
        let i = port_to[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .expect("neighbor present");
        port_to[u][i].1
    };
    pairs
        .iter()
        .map(|&(u, v)| (u, v, lookup(u, v), lookup(v, u)))
        .collect()
}

fn johnson_pairs(n: usize, k: usize) -> (usize, Vec<(VertexId, VertexId)>) {
    // k-subsets of {0..n} in lexicographic order.
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        subsets.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    let mut pairs = Vec::new();
    for a in 0..subsets.len() {
        for b in a + 1..subsets.len() {
            let common = subsets[a]
                .iter()
                .filter(|x| subsets[b].binary_search(x).is_ok())
                .count();
            if common + 1 == k {
                pairs.push((a, b));
            }
        }
    }
    (subsets.len(), pairs)
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

/// A random recursive tree plus chords between vertices at distance two,
/// each kept only if the graph stays chordal. `rate · n` chords are sought,
/// with at most 50 attempts per chord.
fn random_chordal_pairs(n: usize, rate: f64, seed: u64) -> Vec<(VertexId, VertexId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_tree(n, &mut rng);
    let mut adj: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
    for &(u, v) in &tree {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut pairs = tree;
    let target = (rate * n as f64).round() as usize;
    let mut added = 0;
    let mut attempts = 0;
    while added < target && attempts < 50 * target && n >= 3 {
        attempts += 1;
        let x = rng.gen_range(0..n);
        let Some(&y) = pick(&adj[x], &mut rng) else {
            continue;
        };
        let Some(&z) = pick(&adj[y], &mut rng) else {
            continue;
        };
        if z == x || adj[x].contains(&z) {
            continue;
        }
        if chord_keeps_chordal(&adj, x, z) {
            adj[x].insert(z);
            adj[z].insert(x);
            pairs.push((x.min(z), x.max(z)));
            added += 1;
        }
    }
    pairs
}

fn pick<'a, T>(set: &'a BTreeSet<T>, rng: &mut ChaCha8Rng) -> Option<&'a T> {
    if set.is_empty() {
        None
    } else {
        set.iter().nth(rng.gen_range(0..set.len()))
    }
}

/// In a chordal graph, adding the non-edge `xz` keeps it chordal iff no
/// induced `x`–`z` path of length >= 3 exists, i.e. iff the common
/// neighbors of `x` and `z` separate them.
fn chord_keeps_chordal(adj: &[BTreeSet<VertexId>], x: VertexId, z: VertexId) -> bool {
    let common: BTreeSet<_> = adj[x].intersection(&adj[z]).copied().collect();
    let mut seen = vec![false; adj.len()];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if w == z {
                return false;
            }
            if !seen[w] && !common.contains(&w) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    true
}

/// Counterexample to a structural condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ConditionWitness {
    /// Same-sphere edge with no common neighbor one sphere closer.
    Triangle {
        root: VertexId,
        edge: (VertexId, VertexId),
    },
    /// Vertex whose predecessors induce a disconnected subgraph.
    Interval {
        root: VertexId,
        vertex: VertexId,
        predecessors: Vec<VertexId>,
    },
}

impl ConditionWitness {
    /// Re-derives the failure from scratch; `true` when it reproduces.
    pub fn recheck(&self, g: &PortNumberedGraph) -> bool {
        match *self {
            ConditionWitness::Triangle { root, edge: (v, w) } => {
                let Ok(l) = g.layering(root) else {
                    return false;
                };
                let k = l.sphere_of[v];
                g.has_edge(v, w)
                    && l.sphere_of[w] == k
                    && k > 0
                    && !g
                        .neighbors(v)
                        .any(|u| l.sphere_of[u] + 1 == k && g.has_edge(u, w))
            }
            ConditionWitness::Interval { root, vertex, .. } => {
                let Ok(l) = g.layering(root) else {
                    return false;
                };
                let preds = l.predecessors(g, vertex);
                !induced_connected(g, &preds)
            }
        }
    }

    pub fn root(&self) -> VertexId {
        match *self {
            ConditionWitness::Triangle { root, .. } | ConditionWitness::Interval { root, .. } => root,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub holds: bool,
    pub witness: Option<ConditionWitness>,
}

impl ConditionReport {
    pub fn ok() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: ConditionWitness) -> Self {
        Self {
            holds: false,
            witness: Some(witness),
        }
    }
}

fn induced_connected(g: &PortNumberedGraph, set: &[VertexId]) -> bool {
    let Some(&first) = set.first() else {
        return true;
    };
    let members: BTreeSet<_> = set.iter().copied().collect();
    let mut seen = BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if members.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == members.len()
}

fn layering_or_panic(g: &PortNumberedGraph, v0: VertexId) -> Layering {
    g.layering(v0).expect("root must be a vertex of g")
}

/// Every same-sphere edge `vw` has a common neighbor one sphere closer to `v0`.
pub fn check_triangle_condition(g: &PortNumberedGraph, v0: VertexId) -> ConditionReport {
    let l = layering_or_panic(g, v0);
    for (v, w, _, _) in g.edges() {
        let k = l.sphere_of[v];
        if k == 0 || l.sphere_of[w] != k {
            continue;
        }
        let has_apex = g
            .neighbors(v)
            .any(|u| l.sphere_of[u] + 1 == k && g.has_edge(u, w));
        if !has_apex {
            return ConditionReport::fail(ConditionWitness::Triangle { root: v0, edge: (v, w) });
        }
    }
    ConditionReport::ok()
}

/// Every vertex other than `v0` has a connected set of predecessors.
pub fn check_interval_condition(g: &PortNumberedGraph, v0: VertexId) -> ConditionReport {
    let l = layering_or_panic(g, v0);
    for v in 0..g.vertex_count() {
        if v == v0 {
            continue;
        }
        let preds = l.predecessors(g, v);
        if !induced_connected(g, &preds) {
            return ConditionReport::fail(ConditionWitness::Interval {
                root: v0,
                vertex: v,
                predecessors: preds,
            });
        }
    }
    ConditionReport::ok()
}

/// Triangle and interval conditions from every root.
pub fn is_weetman(g: &PortNumberedGraph) -> ConditionReport {
    for v0 in 0..g.vertex_count() {
        for report in [check_triangle_condition(g, v0), check_interval_condition(g, v0)] {
            if !report.holds {
                return report;
            }
        }
    }
    ConditionReport::ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalityReport {
    pub chordal: bool,
    /// Perfect elimination ordering (first eliminated first), when chordal.
    pub elimination_order: Option<Vec<VertexId>>,
}

/// Maximum cardinality search followed by a perfect-elimination check.
pub fn is_chordal(g: &PortNumberedGraph) -> ChordalityReport {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut numbered = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unnumbered vertex left");
        numbered[v] = true;
        visit.push(v);
        for w in g.neighbors(v) {
            if !numbered[w] {
                weight[w] += 1;
            }
        }
    }
    let order: Vec<VertexId> = visit.into_iter().rev().collect();
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        let later: Vec<_> = g.neighbors(v).filter(|&w| position[w] > position[v]).collect();
        let Some(&parent) = later.iter().min_by_key(|&&w| position[w]) else {
            continue;
        };
        if later.iter().any(|&w| w != parent && !g.has_edge(parent, w)) {
            return ChordalityReport {
                chordal: false,
                elimination_order: None,
            };
        }
    }
    ChordalityReport {
        chordal: true,
        elimination_order: Some(order),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GeneratorSpec {
        s.parse().unwrap()
    }

    fn gen(s: &str) -> PortNumberedGraph {
        generate(&spec(s)).unwrap()
    }

    /// Johnson graph straight from the definition, via bitmasks.
    fn johnson_oracle(n: usize, k: usize) -> (usize, usize, Vec<usize>) {
        let sets: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() as usize == k).collect();
        let mut degree = vec![0; sets.len()];
        let mut edges = 0;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if (sets[i] & sets[j]).count_ones() as usize == k - 1 {
                    edges += 1;
                    degree[i] += 1;
                    degree[j] += 1;
                }
            }
        }
        (sets.len(), edges, degree)
    }

    #[test]
    fn johnson_5_2_matches_definition() {
        let g = gen("johnson:5,2");
        let (n, m, deg) = johnson_oracle(5, 2);
        assert_eq!((n, m), (10, 30));
        assert!(deg.iter().all(|&d| d == 6));
        assert_eq!(g.vertex_count(), n);
        assert_eq!(g.edge_count(), m);
        assert!((0..n).all(|v| g.degree(v) == 6));
    }

    #[test]
    fn johnson_ball_has_seven_vertices() {
        let g = gen("johnson:5,2");
        for v in 0..10 {
            let b = g.ball(v).unwrap();
            assert_eq!(b.vertex_count(), 7);
            assert_eq!(b.center_degree(), 6);
        }
    }

    #[test]
    fn johnson_n_1_is_complete() {
        for n in 1..7 {
            let g = gen(&format!("johnson:{n},1"));
            assert_eq!(g.edge_count(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn cycle_six() {
        let g = gen("cycle:6");
        assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
        assert!((0..6).all(|v| g.degree(v) == 2));
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(matches!(
            "johnson:2,3".parse::<GeneratorSpec>(),
            Err(SpecError::Parameters(_))
        ));
        assert!(matches!(
            "wheel:5".parse::<GeneratorSpec>(),
            Err(SpecError::UnknownFamily(_))
        ));
        assert!("cycle:2".parse::<GeneratorSpec>().is_err());
        assert!("chordal:n=10".parse::<GeneratorSpec>().is_err());
        assert!("path".parse::<GeneratorSpec>().is_err());
    }

    #[test]
    fn spec_strings_echo() {
        for s in [
            "johnson:5,2",
            "chordal:n=100,rate=0.4,seed=7",
            "cycle:6",
            "tree:n=30,seed=2,ports=random:9",
            "grid:3,4",
        ] {
            assert_eq!(spec(s).to_string(), s);
        }
    }

    #[test]
    fn random_ports_are_permutations() {
        let g = gen("complete:6,ports=random:3");
        for v in 0..6 {
            let mut ports: Vec<_> = g.half_edges(v).iter().map(|h| h.out_port).collect();
            ports.sort_unstable();
            assert_eq!(ports, (0..5).collect::<Vec<_>>());
        }
        assert_ne!(g, gen("complete:6"));
    }

    #[test]
    fn triangle_condition_examples() {
        let k4 = gen("complete:4");
        assert!((0..4).all(|v| check_triangle_condition(&k4, v).holds));
        let c5 = gen("cycle:5");
        let r = check_triangle_condition(&c5, 0);
        assert_eq!(
            r.witness,
            Some(ConditionWitness::Triangle { root: 0, edge: (2, 3) })
        );
        assert!(r.witness.unwrap().recheck(&c5));
        let p5 = gen("path:5");
        assert!((0..5).all(|v| check_triangle_condition(&p5, v).holds));
    }

    #[test]
    fn interval_condition_examples() {
        let t = gen("tree:n=20,seed=4");
        assert!((0..20).all(|v| check_interval_condition(&t, v).holds));
        let c4 = gen("cycle:4");
        let r = check_interval_condition(&c4, 0);
        match &r.witness {
            Some(ConditionWitness::Interval { vertex, predecessors, .. }) => {
                assert_eq!(*vertex, 2);
                assert_eq!(predecessors, &vec![1, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(r.witness.unwrap().recheck(&c4));
        let oct = gen("johnson:4,2");
        assert!((0..6).all(|v| check_interval_condition(&oct, v).holds));
    }

    #[test]
    fn weetman_examples() {
        assert!(is_weetman(&gen("complete:7")).holds);
        assert!(is_weetman(&gen("chordal:n=50,rate=0.3,seed=1")).holds);
        for k in 4..10 {
            let g = gen(&format!("cycle:{k}"));
            let r = is_weetman(&g);
            assert!(!r.holds);
            assert!(r.witness.unwrap().recheck(&g));
        }
        assert!(!is_weetman(&gen("grid:3,3")).holds);
    }

    #[test]
    fn chordality_examples() {
        assert!(is_chordal(&gen("tree:n=40,seed=1")).chordal);
        let c4 = is_chordal(&gen("cycle:4"));
        assert!(!c4.chordal && c4.elimination_order.is_none());
        let r = is_chordal(&gen("chordal:n=100,rate=0.5,seed=3"));
        assert_eq!(r.elimination_order.map(|o| o.len()), Some(100));
        assert!(!is_chordal(&gen("johnson:4,2")).chordal);
    }

    #[test]
    fn chordal_generator_adds_chords() {
        let g = gen("chordal:n=100,rate=0.5,seed=11");
        assert!(g.edge_count() > 99);
    }
}
