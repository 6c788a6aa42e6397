//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Adjacency is stored twice: as a
//! bitset row per vertex for constant-time edge tests, and as a sorted
//! neighbour list for deterministic iteration.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("vertex {v} lies inside part {part}")]
    VertexInPart { v: usize, part: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<FixedBitSet>,
    nbrs: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Repeated pairs are merged.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_rows(vec![FixedBitSet::with_capacity(n); n])
    }

    fn from_rows(rows: Vec<FixedBitSet>) -> Self {
        let nbrs: Vec<Vec<usize>> = rows.iter().map(|r| r.ones().collect()).collect();
        let m = nbrs.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            n: rows.len(),
            rows,
            nbrs,
            m,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    /// Neighbourhood of `v` as a bitset over `0..n`.
    #[inline]
    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.nbrs[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.nbrs[u]
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n })
        }
    }

    pub fn is_complete(&self) -> bool {
        self.m == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Graph {
        let mut rows = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut r = self.rows[v].clone();
            r.toggle_range(..);
            r.set(v, false);
            rows.push(r);
        }
        Self::from_rows(rows)
    }

    /// Induced subgraph on `vertices`, which are relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<InducedSubgraph, GraphError> {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            if local[v] != usize::MAX {
                return Err(GraphError::DuplicateVertex(v));
            }
            local[v] = i;
        }
        let k = vertices.len();
        let mut rows = vec![FixedBitSet::with_capacity(k); k];
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.nbrs[v] {
                let j = local[w];
                if j != usize::MAX {
                    rows[i].insert(j);
                }
            }
        }
        Ok(InducedSubgraph {
            graph: Self::from_rows(rows),
            map: vertices.to_vec(),
        })
    }

    /// Induced subgraph on the vertices not in `removed`, in ascending id order.
    pub fn without(&self, removed: &[usize]) -> InducedSubgraph {
        let mut keep = vec![true; self.n];
        for &v in removed {
            if v < self.n {
                keep[v] = false;
            }
        }
        let vs: Vec<usize> = (0..self.n).filter(|&v| keep[v]).collect();
        self.induced(&vs).expect("ids are in range and distinct")
    }

    /// The isomorphic copy in which vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph, GraphError> {
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n {
                return Err(GraphError::VertexOutOfRange { v: p, n: self.n });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::DuplicateVertex(p));
            }
        }
        if perm.len() != self.n {
            return Err(GraphError::VertexOutOfRange {
                v: perm.len(),
                n: self.n,
            });
        }
        Graph::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&FixedBitSet::with_capacity(self.n).complement_all())
    }

    /// Components of the subgraph induced by `allowed`.
    pub fn components_within(&self, allowed: &FixedBitSet) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        for s in allowed.ones() {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.nbrs[u] {
                    if allowed.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// `N(S)`: vertices outside `set` with a neighbour in `set`, sorted.
    pub fn set_neighbourhood(&self, set: &[usize]) -> Vec<usize> {
        let mut inside = FixedBitSet::with_capacity(self.n);
        let mut acc = FixedBitSet::with_capacity(self.n);
        for &v in set {
            inside.insert(v);
            acc.union_with(&self.rows[v]);
        }
        acc.difference_with(&inside);
        acc.ones().collect()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Every vertex of `left` adjacent to every vertex of `right`.
    pub fn is_complete_to(&self, left: &[usize], right: &[usize]) -> bool {
        left.iter()
            .all(|&u| right.iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_anticomplete_to(&self, left: &[usize], right: &[usize]) -> bool {
        left.iter()
            .all(|&u| right.iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Shortest path from `from` to `to` whose interior lies in `interior`,
    /// breaking ties by smallest neighbour id at each BFS expansion.
    pub fn shortest_path_through(
        &self,
        from: usize,
        to: usize,
        interior: &FixedBitSet,
    ) -> Option<Vec<usize>> {
        if from == to {
            return Some(vec![from]);
        }
        let mut prev = vec![usize::MAX; self.n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.nbrs[u] {
                if prev[w] != usize::MAX {
                    continue;
                }
                if w == to {
                    prev[w] = u;
                    let mut path = vec![to];
                    let mut cur = u;
                    while cur != from {
                        path.push(cur);
                        cur = prev[cur];
                    }
                    path.push(from);
                    path.reverse();
                    return Some(path);
                }
                if interior.contains(w) {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("vertex_count", &self.n)?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

/// An induced subgraph together with the host id of each local vertex.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `map[local] = host id`
    pub map: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_host(&self, local: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = local.iter().map(|&v| self.map[v]).collect();
        out.sort_unstable();
        out
    }
}

pub(crate) trait ComplementAll {
    fn complement_all(self) -> Self;
}

impl ComplementAll for FixedBitSet {
    fn complement_all(mut self) -> Self {
        self.insert_range(..);
        self
    }
}

/// Builds a bitset over `0..n` holding `items`.
pub fn bitset(n: usize, items: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for &v in items {
        b.insert(v);
    }
    b
}

/// Neighbour / non-neighbour counts of one vertex in one part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartTrace {
    pub neighbours: usize,
    pub non_neighbours: usize,
}

impl PartTrace {
    pub fn size(&self) -> usize {
        self.neighbours + self.non_neighbours
    }
}

/// Per-part adjacency counts of a vertex against a list of vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceProfile {
    pub parts: Vec<PartTrace>,
}

impl TraceProfile {
    /// At most `t` non-neighbours in part `i` (the vertex is `t`-disconnected to it).
    pub fn few_non_neighbours(&self, i: usize, t: usize) -> bool {
        self.parts[i].non_neighbours <= t
    }

    /// At most `t` neighbours in part `i` (the vertex is `t`-connected to it).
    pub fn few_neighbours(&self, i: usize, t: usize) -> bool {
        self.parts[i].neighbours <= t
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Counts the neighbours and non-neighbours of `v` in each of `parts`.
pub fn trace(g: &Graph, v: usize, parts: &[Vec<usize>]) -> Result<TraceProfile, GraphError> {
    g.check_vertex(v)?;
    let mut out = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        let mut nb = 0;
        for &u in part {
            g.check_vertex(u)?;
            if u == v {
                return Err(GraphError::VertexInPart { v, part: i });
            }
            if g.has_edge(v, u) {
                nb += 1;
            }
        }
        out.push(PartTrace {
            neighbours: nb,
            non_neighbours: part.len() - nb,
        });
    }
    Ok(TraceProfile { parts: out })
}
