//! Graphs, vertex/edge sets and the boundary machinery used by the
//! diagnosability arguments.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest hypercube dimension we are willing to construct.
pub const MAX_DIMENSION: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Binary label of width `dim`, most significant bit first. Label
    /// position `i` counts from the right, so `u^1` of `000` prints as `001`.
    pub fn label(self, dim: u32) -> String {
        format!("{:0width$b}", self.0, width = dim as usize)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// An unordered vertex pair stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[u32; 2]", try_from = "[u32; 2]")]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    /// Canonical edge between `a` and `b`. Loops are rejected.
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(Error::domain(format!("loop at vertex {a}")));
        }
        Ok(Edge {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    pub fn lo(self) -> VertexId {
        self.lo
    }

    pub fn hi(self) -> VertexId {
        self.hi
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }
}

impl From<Edge> for [u32; 2] {
    fn from(e: Edge) -> Self {
        [e.lo.0, e.hi.0]
    }
}

impl TryFrom<[u32; 2]> for Edge {
    type Error = Error;

    fn try_from(p: [u32; 2]) -> Result<Self> {
        Edge::new(p[0], p[1])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Sorted set of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        self.0.remove(&v)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.0.intersection(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> VertexSet {
        symmetric_difference(self, other)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn max(&self) -> Option<VertexId> {
        self.0.last().copied()
    }

    /// Bit mask of the members, if every id is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        self.iter().try_fold(0u64, |m, v| (v.0 < 64).then(|| m | (1u64 << v.0)))
    }

    pub fn from_mask(mask: u64) -> VertexSet {
        let mut set = VertexSet::new();
        let mut m = mask;
        while m != 0 {
            set.insert(VertexId(m.trailing_zeros()));
            m &= m - 1;
        }
        set
    }

    pub fn ids(&self) -> Vec<u32> {
        self.iter().map(|v| v.0).collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[u32; N]> for VertexSet {
    fn from(ids: [u32; N]) -> Self {
        ids.into_iter().map(VertexId).collect()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

/// Sorted set of canonical edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.0.contains(&e)
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Convenience constructor from raw pairs.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<EdgeSet> {
        pairs.iter().map(|&(a, b)| Edge::new(a, b)).collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().join(","))
    }
}

#[derive(Clone, Debug)]
enum Base {
    /// Implicit hypercube adjacency.
    Cube { dim: u32 },
    /// Sorted adjacency lists.
    Lists(Vec<Vec<VertexId>>),
}

/// Immutable simple undirected graph.
///
/// Hypercubes are stored implicitly; removing edges keeps the implicit
/// adjacency and records the missing edges, so `Q_20 - F_e` stays cheap.
#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: usize,
    edge_count: usize,
    base: Base,
    missing: BTreeSet<Edge>,
}

impl Graph {
    /// `Q_n`: vertices `0..2^n`, adjacent iff the ids differ in one bit.
    pub fn hypercube(n: u32) -> Result<Graph> {
        if !(1..=MAX_DIMENSION).contains(&n) {
            return Err(Error::bound(format!(
                "hypercube dimension {n} not in [1, {MAX_DIMENSION}]"
            )));
        }
        let vertex_count = 1usize << n;
        Ok(Graph {
            vertex_count,
            edge_count: n as usize * (vertex_count / 2),
            base: Base::Cube { dim: n },
            missing: BTreeSet::new(),
        })
    }

    /// Build a graph from an explicit edge list. Duplicate edges and loops
    /// are rejected.
    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        if vertex_count > u32::MAX as usize {
            return Err(Error::bound(format!("{vertex_count} vertices")));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        let mut seen = BTreeSet::new();
        for e in edges {
            if e.hi.index() >= vertex_count {
                return Err(Error::domain(format!(
                    "edge {e} references a vertex outside 0..{vertex_count}"
                )));
            }
            if !seen.insert(e) {
                return Err(Error::domain(format!("duplicate edge {e}")));
            }
            adj[e.lo.index()].push(e.hi);
            adj[e.hi.index()].push(e.lo);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            vertex_count,
            edge_count: seen.len(),
            base: Base::Lists(adj),
            missing: BTreeSet::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `Some(n)` only for an intact `Q_n`.
    pub fn dimension(&self) -> Option<u32> {
        match self.base {
            Base::Cube { dim } if self.missing.is_empty() => Some(dim),
            _ => None,
        }
    }

    /// Dimension of the underlying hypercube even after edge removal.
    pub fn cube_dimension(&self) -> Option<u32> {
        match self.base {
            Base::Cube { dim } => Some(dim),
            Base::Lists(_) => None,
        }
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.vertex_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count as u32).map(VertexId)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if !self.contains_vertex(u) || !self.contains_vertex(v) || u == v {
            return false;
        }
        let in_base = match &self.base {
            Base::Cube { .. } => (u.0 ^ v.0).is_power_of_two(),
            Base::Lists(adj) => adj[u.index()].binary_search(&v).is_ok(),
        };
        in_base && !self.missing.contains(&Edge::new(u, v).expect("u != v"))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.lo, e.hi)
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> Neighbors<'_> {
        let inner = match &self.base {
            Base::Cube { dim } => NeighborsInner::Cube {
                v: v.0,
                dim: *dim,
                down: *dim,
                up: 0,
            },
            Base::Lists(adj) => NeighborsInner::List(adj[v.index()].iter()),
        };
        Neighbors {
            graph: self,
            v,
            inner,
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).count()
    }

    /// Minimum degree with the smallest vertex attaining it.
    pub fn min_degree(&self) -> Option<(usize, VertexId)> {
        self.vertices()
            .map(|v| (self.degree(v), v))
            .min_by_key(|&(d, v)| (d, v))
    }

    /// All edges, sorted by `(lo, hi)`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&w| w > u)
                .map(move |w| Edge { lo: u, hi: w })
        })
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    /// `G - F_e`: same vertices, edges of `F_e` removed.
    pub fn remove_edges(&self, faulty: &EdgeSet) -> Result<Graph> {
        if let Some(e) = faulty.iter().find(|&e| !self.contains_edge(e)) {
            return Err(Error::domain(format!("{e} is not an edge of the graph")));
        }
        let mut g = self.clone();
        match &mut g.base {
            Base::Cube { .. } => g.missing.extend(faulty.iter()),
            Base::Lists(adj) => {
                for e in faulty.iter() {
                    adj[e.lo.index()].retain(|&x| x != e.hi);
                    adj[e.hi.index()].retain(|&x| x != e.lo);
                }
            }
        }
        g.edge_count -= faulty.len();
        Ok(g)
    }

    /// Edges removed from the underlying hypercube, if any.
    pub fn missing_edges(&self) -> EdgeSet {
        self.missing.iter().copied().collect()
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "vertex {v} is not in a graph with {} vertices",
                self.vertex_count
            )))
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        s.max().map_or(Ok(()), |v| self.check_vertex(v))
    }

    pub(crate) fn check_edges(&self, fe: &EdgeSet) -> Result<()> {
        match fe.iter().find(|&e| !self.contains_edge(e)) {
            Some(e) => Err(Error::domain(format!("{e} is not an edge of the graph"))),
            None => Ok(()),
        }
    }

    /// Adjacency bit masks, available for graphs with at most 64 vertices.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        (self.vertex_count <= 64).then(|| {
            self.vertices()
                .map(|v| self.neighbors(v).fold(0u64, |m, w| m | (1u64 << w.0)))
                .collect()
        })
    }

    /// Edge-list text: `p <count>`, an optional `dim <n>` line for intact
    /// hypercubes, then `e <u> <v>` per edge in sorted order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.vertex_count);
        if let Some(n) = self.dimension() {
            out.push_str(&format!("dim {n}\n"));
        }
        for e in self.edges() {
            out.push_str(&format!("e {} {}\n", e.lo, e.hi));
        }
        out
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut count = None;
        let mut dim = None;
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Error::parse(line_no, format!("bad integer `{s}`")))
            };
            match fields.as_slice() {
                ["p", c] if count.is_none() => count = Some(num(c)? as usize),
                ["dim", n] if dim.is_none() => dim = Some(num(n)? as u32),
                ["e", u, v] => {
                    if count.is_none() {
                        return Err(Error::parse(line_no, "edge before `p` line"));
                    }
                    let (u, v) = (num(u)?, num(v)?);
                    if u > u32::MAX as u64 || v > u32::MAX as u64 {
                        return Err(Error::parse(line_no, "vertex id too large"));
                    }
                    let e = Edge::new(u as u32, v as u32)
                        .map_err(|e| Error::parse(line_no, e.to_string()))?;
                    edges.push(e);
                }
                _ => return Err(Error::parse(line_no, format!("unexpected `{line}`"))),
            }
        }
        let count = count.ok_or_else(|| Error::parse(0, "missing `p` line"))?;
        let graph = Graph::from_edges(count, edges)?;
        match dim {
            None => Ok(graph),
            Some(n) => {
                let cube = Graph::hypercube(n)?;
                let same = cube.vertex_count == graph.vertex_count
                    && cube.edge_count == graph.edge_count
                    && graph.edges().all(|e| cube.contains_edge(e));
                if same {
                    Ok(cube)
                } else {
                    Err(Error::parse(0, format!("edges do not form Q_{n}")))
                }
            }
        }
    }

    /// First 16 hex digits of the SHA-256 of the edge-list text.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_edge_list().as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

pub struct Neighbors<'a> {
    graph: &'a Graph,
    v: VertexId,
    inner: NeighborsInner<'a>,
}

enum NeighborsInner<'a> {
    /// Clear set bits from the top down, then set clear bits bottom up;
    /// this yields ids in ascending order.
    Cube { v: u32, dim: u32, down: u32, up: u32 },
    List(std::slice::Iter<'a, VertexId>),
}

impl Iterator for Neighbors<'_> {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        loop {
            let w = match &mut self.inner {
                NeighborsInner::List(it) => return it.next().copied(),
                NeighborsInner::Cube { v, dim, down, up } => {
                    let mut found = None;
                    while *down > 0 {
                        *down -= 1;
                        if *v & (1 << *down) != 0 {
                            found = Some(*v ^ (1 << *down));
                            break;
                        }
                    }
                    if found.is_none() {
                        while *up < *dim {
                            let b = *up;
                            *up += 1;
                            if *v & (1 << b) == 0 {
                                found = Some(*v | (1 << b));
                                break;
                            }
                        }
                    }
                    VertexId(found?)
                }
            };
            let e = Edge {
                lo: self.v.min(w),
                hi: self.v.max(w),
            };
            if !self.graph.missing.contains(&e) {
                return Some(w);
            }
        }
    }
}

/// The `i`-th neighbor `u^i` of `u` in `Q_dim` (bit `i - 1` flipped).
pub fn neighbor(u: VertexId, i: u32, dim: u32) -> Result<VertexId> {
    if !(1..=dim).contains(&i) || dim > MAX_DIMENSION {
        return Err(Error::bound(format!("dimension index {i} not in [1, {dim}]")));
    }
    if u.0 >> dim != 0 {
        return Err(Error::domain(format!("vertex {u} is not in Q_{dim}")));
    }
    Ok(VertexId(u.0 ^ (1 << (i - 1))))
}

/// `N_G(S)`, or the closed neighborhood `C_G(S) = N_G(S) ∪ S` when `closed`.
pub fn neighborhood(g: &Graph, s: &VertexSet, closed: bool) -> Result<VertexSet> {
    g.check_set(s)?;
    let mut out: VertexSet = s
        .iter()
        .flat_map(|v| g.neighbors(v))
        .filter(|w| !s.contains(*w))
        .collect();
    if closed {
        out = out.union(s);
    }
    Ok(out)
}

pub fn common_neighbors(g: &Graph, u: VertexId, v: VertexId) -> Result<VertexSet> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::domain("common neighbors need two distinct vertices"));
    }
    let nu: VertexSet = g.neighbors(u).collect();
    Ok(g.neighbors(v).filter(|w| nu.contains(*w)).collect())
}

pub fn symmetric_difference(a: &VertexSet, b: &VertexSet) -> VertexSet {
    a.0.symmetric_difference(&b.0).copied().collect()
}

/// Closed form of the minimum `m`-vertex boundary of `Q_n`, valid for
/// `1 <= m <= 2n`. Evaluated on doubled values so everything stays integral.
pub fn min_boundary_formula(m: u64, n: u64) -> Result<u64> {
    if n == 0 || m == 0 || m > 2 * n {
        return Err(Error::bound(format!("m = {m} not in [1, 2n] for n = {n}")));
    }
    let (m, n) = (m as i128, n as i128);
    let doubled = if m <= n + 1 {
        -m * m + (2 * n - 1) * m + 2
    } else {
        -m * m + (4 * n - 3) * m - 2 * n * n + 4
    };
    assert!(
        doubled % 2 == 0 && doubled >= 0,
        "boundary formula left the integers at m = {m}, n = {n}"
    );
    Ok((doubled / 2) as u64)
}

/// Exhaustive minimum of `|N_G(S)|` over all `m`-subsets `S`, together with
/// the lexicographically least subset attaining it. `budget` caps the
/// number of subsets examined.
pub fn min_boundary_bruteforce(g: &Graph, m: usize, budget: u64) -> Result<(usize, VertexSet)> {
    let nv = g.vertex_count();
    if m == 0 || m > nv {
        return Err(Error::bound(format!("m = {m} not in [1, {nv}]")));
    }
    let total = binomial(nv as u64, m as u64);
    if total > budget as u128 {
        return Err(Error::Budget {
            limit: budget,
            visited: 0,
            partial: format!("C({nv}, {m}) = {total} subsets requested"),
        });
    }
    let mut best: Option<(usize, Vec<u32>)> = None;
    if let Some(adj) = g.adjacency_masks() {
        for combo in (0..nv as u32).combinations(m) {
            let s = combo.iter().fold(0u64, |acc, &v| acc | (1 << v));
            let boundary = combo.iter().fold(0u64, |acc, &v| acc | adj[v as usize]) & !s;
            let b = boundary.count_ones() as usize;
            if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
                best = Some((b, combo));
            }
        }
    } else {
        for combo in (0..nv as u32).combinations(m) {
            let s: VertexSet = combo.iter().map(|&v| VertexId(v)).collect();
            let b = neighborhood(g, &s, false)?.len();
            if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
                best = Some((b, combo));
            }
        }
    }
    let (b, combo) = best.expect("at least one subset");
    Ok((b, combo.into_iter().map(VertexId).collect()))
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for y in g.neighbors(VertexId(x as u32)) {
                let y = y.index();
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let len = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&v| VertexId(v)).collect()
    }

    #[test]
    fn hypercube_sizes() {
        let q3 = Graph::hypercube(3).unwrap();
        assert_eq!(q3.vertex_count(), 8);
        assert_eq!(q3.edges().count(), 12);
        assert!(q3.vertices().all(|v| q3.degree(v) == 3));

        let q1 = Graph::hypercube(1).unwrap();
        assert_eq!((q1.vertex_count(), q1.edge_count()), (2, 1));

        assert!(matches!(Graph::hypercube(0), Err(Error::Bound(_))));
        assert!(matches!(Graph::hypercube(21), Err(Error::Bound(_))));
    }

    #[test]
    fn q4_girth_is_four() {
        assert_eq!(girth(&Graph::hypercube(4).unwrap()), Some(4));
        assert_eq!(girth(&Graph::hypercube(1).unwrap()), None);
    }

    #[test]
    fn neighbors_are_sorted() {
        let q4 = Graph::hypercube(4).unwrap();
        for v in q4.vertices() {
            let ns: Vec<_> = q4.neighbors(v).collect();
            assert!(ns.windows(2).all(|w| w[0] < w[1]), "{v}: {ns:?}");
            assert_eq!(ns.len(), 4);
        }
    }

    #[test]
    fn neighbor_flips_one_bit() {
        assert_eq!(neighbor(VertexId(0b000), 1, 3).unwrap(), VertexId(0b001));
        assert_eq!(neighbor(VertexId(0b101), 2, 3).unwrap(), VertexId(0b111));
        for u in 0..16 {
            for i in 1..=4 {
                let w = neighbor(VertexId(u), i, 4).unwrap();
                assert_eq!(neighbor(w, i, 4).unwrap(), VertexId(u));
            }
        }
        assert!(matches!(neighbor(VertexId(0), 0, 3), Err(Error::Bound(_))));
        assert!(matches!(neighbor(VertexId(0), 4, 3), Err(Error::Bound(_))));
    }

    #[test]
    fn neighborhood_examples() {
        let q3 = Graph::hypercube(3).unwrap();
        assert_eq!(
            neighborhood(&q3, &set(&[0]), false).unwrap(),
            set(&[0b001, 0b010, 0b100])
        );
        assert_eq!(
            neighborhood(&q3, &set(&[0b000, 0b001, 0b011]), false).unwrap(),
            set(&[0b010, 0b100, 0b101, 0b111])
        );
        let all: VertexSet = q3.vertices().collect();
        assert!(neighborhood(&q3, &all, false).unwrap().is_empty());
        assert_eq!(
            neighborhood(&q3, &set(&[0]), true).unwrap(),
            set(&[0, 1, 2, 4])
        );
        assert!(matches!(
            neighborhood(&q3, &set(&[8]), false),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn common_neighbor_examples() {
        let q3 = Graph::hypercube(3).unwrap();
        let c = |a, b| common_neighbors(&q3, VertexId(a), VertexId(b)).unwrap();
        assert_eq!(c(0b000, 0b011), set(&[0b001, 0b010]));
        assert!(c(0b000, 0b111).is_empty());
        assert!(c(0b000, 0b001).is_empty());
        assert!(common_neighbors(&q3, VertexId(2), VertexId(2)).is_err());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(min_boundary_formula(1, 4).unwrap(), 4);
        assert_eq!(min_boundary_formula(3, 3).unwrap(), 4);
        assert_eq!(min_boundary_formula(5, 3).unwrap(), 3);
        assert_eq!(min_boundary_formula(3, 4).unwrap(), 7);
        assert!(matches!(min_boundary_formula(0, 3), Err(Error::Bound(_))));
        assert!(matches!(min_boundary_formula(7, 3), Err(Error::Bound(_))));
    }

    #[test]
    fn bruteforce_examples() {
        let q3 = Graph::hypercube(3).unwrap();
        let (b, s) = min_boundary_bruteforce(&q3, 3, 1_000).unwrap();
        assert_eq!(b, 4);
        // {000,001,010} is the lexicographically first path on three vertices.
        assert_eq!(s, set(&[0, 1, 2]));
        assert_eq!(neighborhood(&q3, &set(&[0, 1, 3]), false).unwrap().len(), 4);

        assert_eq!(min_boundary_bruteforce(&q3, 1, 1_000).unwrap(), (3, set(&[0])));

        let q4 = Graph::hypercube(4).unwrap();
        let (b, _) = min_boundary_bruteforce(&q4, 5, 10_000).unwrap();
        assert_eq!(b as u64, min_boundary_formula(5, 4).unwrap());
        assert_eq!(b, 6);

        assert!(matches!(
            min_boundary_bruteforce(&q4, 8, 100),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn remove_edges_examples() {
        let q3 = Graph::hypercube(3).unwrap();
        let same = q3.remove_edges(&EdgeSet::new()).unwrap();
        assert_eq!(same.edge_set(), q3.edge_set());
        assert_eq!(same.dimension(), Some(3));

        let one = q3.remove_edges(&EdgeSet::from_pairs(&[(0, 1)]).unwrap()).unwrap();
        assert_eq!(one.degree(VertexId(0)), 2);
        assert_eq!(one.degree(VertexId(1)), 2);
        assert!((2..8).all(|v| one.degree(VertexId(v)) == 3));
        assert_eq!(one.dimension(), None);
        assert_eq!(one.edge_count(), 11);

        let star = EdgeSet::from_pairs(&[(0, 1), (0, 2), (0, 4)]).unwrap();
        let iso = q3.remove_edges(&star).unwrap();
        assert_eq!(iso.degree(VertexId(0)), 0);

        let bad = EdgeSet::from_pairs(&[(0, 3)]).unwrap();
        assert!(matches!(q3.remove_edges(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn symmetric_difference_examples() {
        let a = set(&[0b000, 0b010]);
        let b = set(&[0b000, 0b100]);
        assert_eq!(symmetric_difference(&a, &b), set(&[0b010, 0b100]));
        assert!(symmetric_difference(&a, &a).is_empty());
        assert_eq!(symmetric_difference(&a, &VertexSet::new()), a);
    }

    #[test]
    fn edge_list_round_trip() {
        let q3 = Graph::hypercube(3).unwrap();
        let text = q3.to_edge_list();
        assert!(text.starts_with("p 8\ndim 3\ne 0 1\n"));
        let back = Graph::from_edge_list(&text).unwrap();
        assert_eq!(back.dimension(), Some(3));
        assert_eq!(back.fingerprint(), q3.fingerprint());

        let cut = q3.remove_edges(&EdgeSet::from_pairs(&[(0, 1)]).unwrap()).unwrap();
        let text = cut.to_edge_list();
        assert!(!text.contains("dim"));
        let back = Graph::from_edge_list(&text).unwrap();
        assert_eq!(back.edge_set(), cut.edge_set());
        assert_ne!(back.fingerprint(), q3.fingerprint());

        assert!(Graph::from_edge_list("p 3\ne 0 0\n").is_err());
        assert!(Graph::from_edge_list("p 3\ne 0 1\ne 1 0\n").is_err());
        assert!(Graph::from_edge_list("e 0 1\n").is_err());
    }

    #[test]
    fn masks_match_sets() {
        let s = set(&[1, 5, 63]);
        assert_eq!(VertexSet::from_mask(s.to_mask().unwrap()), s);
        assert_eq!(set(&[64]).to_mask(), None);
    }
}
