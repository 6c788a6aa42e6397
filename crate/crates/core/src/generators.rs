//! Deterministic graph generators, including the excluded pattern `P(a,b)`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("pattern parameters must be positive, got a={a}, b={b}")]
    PatternParameters { a: usize, b: usize },
    #[error("subdivision length for edge ({0}, {1}) must be at least 1")]
    ZeroLength(usize, usize),
    #[error("({0}, {1}) is not an edge of the input graph")]
    MissingEdge(usize, usize),
    #[error("multipartite generator needs at least one part")]
    NoParts,
    #[error("multipartite part {0} has size zero")]
    EmptyPart(usize),
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Role of a vertex in `P(a,b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Apex,
    Pair,
    APart,
    BPart,
}

/// `K(a, b+2)` plus an apex adjacent to exactly two vertices `x, y` of the
/// larger side. Vertex layout: apex `0`, pair `1, 2`, A-part `3..3+a`,
/// B-part `3+a..3+a+b`.
#[derive(Debug, Clone)]
pub struct PatternPab {
    pub a: usize,
    pub b: usize,
    pub graph: Graph,
    pub roles: Vec<Role>,
}

impl PatternPab {
    pub fn new(a: usize, b: usize) -> Result<Self, GenError> {
        if a == 0 || b == 0 {
            return Err(GenError::PatternParameters { a, b });
        }
        let n = 3 + a + b;
        let mut roles = vec![Role::Apex, Role::Pair, Role::Pair];
        roles.extend(std::iter::repeat_n(Role::APart, a));
        roles.extend(std::iter::repeat_n(Role::BPart, b));

        let mut edges = vec![(0, 1), (0, 2)];
        for x in 1..3 {
            for u in 3..3 + a {
                edges.push((x, u));
            }
        }
        for u in 3..3 + a {
            for w in 3 + a..n {
                edges.push((u, w));
            }
        }
        let graph = Graph::new(n, edges)?;
        Ok(PatternPab { a, b, graph, roles })
    }

    pub fn apex(&self) -> usize {
        0
    }

    pub fn pair(&self) -> [usize; 2] {
        [1, 2]
    }

    pub fn a_part(&self) -> Vec<usize> {
        (3..3 + self.a).collect()
    }

    pub fn b_part(&self) -> Vec<usize> {
        (3 + self.a..3 + self.a + self.b).collect()
    }

    /// Vertices grouped by role; within a group any permutation is an automorphism.
    pub fn twin_classes(&self) -> Vec<Vec<usize>> {
        vec![self.pair().to_vec(), self.a_part(), self.b_part()]
    }
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("valid by construction")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("valid by construction")
}

/// `C_n` for `n >= 3`; smaller `n` gives a path.
pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    if n >= 3 {
        edges.push((0, n - 1));
    }
    Graph::new(n, edges).expect("valid by construction")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, edges).expect("valid by construction")
}

/// Complete multipartite graph; part `i` occupies a contiguous id range.
pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph, GenError> {
    if sizes.is_empty() {
        return Err(GenError::NoParts);
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(GenError::EmptyPart(i));
    }
    let n: usize = sizes.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| part_of[u] != part_of[v]);
    Ok(Graph::new(n, edges.collect::<Vec<_>>())?)
}

/// Id ranges of the parts produced by [`complete_multipartite`].
pub fn multipartite_parts(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let p = (start..start + s).collect();
            start += s;
            p
        })
        .collect()
}

/// Erdős-Rényi `G(n, p)`: pair `(u, v)`, visited in lexicographic order,
/// is an edge iff the next uniform draw is below `p`.
pub fn random(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    let mut r = rng::seeded(seed);
    random_with(n, p, &mut r)
}

pub fn random_with(n: usize, p: f64, r: &mut rng::Rng) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Probability(p));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng::coin(r, p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::new(n, edges)?)
}

/// Replaces each listed edge `uv` of length `L` by a path with `L - 1` fresh
/// interior vertices; length 1 keeps the edge. Original vertices keep their
/// ids. Fresh vertices take ids `n..`, and `seed` permutes which fresh id
/// lands at which path position.
pub fn subdivide(
    g: &Graph,
    lengths: &BTreeMap<(usize, usize), usize>,
    seed: u64,
) -> Result<Graph, GenError> {
    let mut normalized = BTreeMap::new();
    for (&(u, v), &len) in lengths {
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        if !g.has_edge(u, v) {
            return Err(GenError::MissingEdge(u, v));
        }
        if len == 0 {
            return Err(GenError::ZeroLength(u, v));
        }
        normalized.insert((u.min(v), u.max(v)), len);
    }
    let fresh_total: usize = normalized.values().map(|&l| l - 1).sum();
    let mut fresh: Vec<usize> = (g.n()..g.n() + fresh_total).collect();
    let mut r = rng::seeded(seed);
    rng::shuffle(&mut r, &mut fresh);

    let mut edges = Vec::with_capacity(g.edge_count() + fresh_total);
    let mut next = fresh.into_iter();
    for (u, v) in g.edges() {
        let len = normalized.get(&(u, v)).copied().unwrap_or(1);
        let mut prev = u;
        for _ in 1..len {
            let w = next.next().expect("counted above");
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, v));
    }
    Ok(Graph::new(g.n() + fresh_total, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_counts() {
        for (a, b) in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 4)] {
            let p = PatternPab::new(a, b).unwrap();
            assert_eq!(p.graph.n(), 3 + a + b);
            assert_eq!(p.graph.edge_count(), 2 + 2 * a + a * b);
        }
        assert_eq!(
            PatternPab::new(0, 2).unwrap_err(),
            GenError::PatternParameters { a: 0, b: 2 }
        );
    }

    #[test]
    fn pattern_edge_set_is_exactly_the_listed_union() {
        let p = PatternPab::new(3, 2).unwrap();
        let mut expected = std::collections::BTreeSet::new();
        for x in p.pair() {
            expected.insert((p.apex(), x));
            for u in p.a_part() {
                expected.insert((x, u));
            }
        }
        for u in p.a_part() {
            for w in p.b_part() {
                expected.insert((u.min(w), u.max(w)));
            }
        }
        let actual: std::collections::BTreeSet<_> = p.graph.edges().collect();
        assert_eq!(actual, expected);
    }

    #[test]
    fn multipartite_small_cases() {
        assert_eq!(complete_multipartite(&[1, 1, 1]).unwrap(), complete(3));
        let c4 = complete_multipartite(&[2, 2]).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));
        assert_eq!(complete_multipartite(&[]), Err(GenError::NoParts));
        assert_eq!(complete_multipartite(&[2, 0]), Err(GenError::EmptyPart(1)));
    }

    #[test]
    fn random_extremes_and_determinism() {
        assert_eq!(random(5, 0.0, 9).unwrap().edge_count(), 0);
        assert_eq!(random(5, 1.0, 9).unwrap(), complete(5));
        assert_eq!(random(10, 0.5, 42).unwrap(), random(10, 0.5, 42).unwrap());
        assert!(matches!(random(3, 1.5, 0), Err(GenError::Probability(_))));
    }

    #[test]
    fn subdivision_basics() {
        let k3 = complete(3);
        let ones: BTreeMap<_, _> = k3.edges().map(|e| (e, 1)).collect();
        assert_eq!(subdivide(&k3, &ones, 5).unwrap(), k3);

        let one = BTreeMap::from([((0, 1), 2)]);
        let c4 = subdivide(&k3, &one, 5).unwrap();
        assert_eq!(c4.n(), 4);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));

        assert_eq!(
            subdivide(&k3, &BTreeMap::from([((0, 1), 0)]), 0),
            Err(GenError::ZeroLength(0, 1))
        );
        assert_eq!(
            subdivide(&path(3), &BTreeMap::from([((0, 2), 2)]), 0),
            Err(GenError::MissingEdge(0, 2))
        );
    }

    #[test]
    fn petersen_shape() {
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
    }
}
