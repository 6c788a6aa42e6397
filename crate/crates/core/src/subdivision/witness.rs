//! Certificates for induced subdivisions and their checker.
//!
//! The checker works from the raw definition: branch images are distinct,
//! every pattern edge has a host path between the right images, paths are
//! internally disjoint, and inside the union of all these vertices the
//! host's edges are exactly the consecutive path pairs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

/// Host path realizing one pattern edge `(u, v)`, `u < v`, running from the
/// image of `u` to the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathImage {
    pub edge: (usize, usize),
    pub path: Vec<usize>,
}

impl PathImage {
    /// Number of edges on the path.
    pub fn length(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    pub fn interior(&self) -> &[usize] {
        if self.path.len() <= 2 {
            &[]
        } else {
            &self.path[1..self.path.len() - 1]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionWitness {
    /// `branch_map[pattern vertex] = host vertex`
    pub branch_map: Vec<usize>,
    pub paths: Vec<PathImage>,
}

impl SubdivisionWitness {
    /// Every host vertex used by the witness, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut all: BTreeSet<usize> = self.branch_map.iter().copied().collect();
        for p in &self.paths {
            all.extend(p.path.iter().copied());
        }
        all.into_iter().collect()
    }

    pub fn max_path_length(&self) -> usize {
        self.paths.iter().map(PathImage::length).max().unwrap_or(0)
    }

    /// Rewrites host ids through `map` (e.g. local ids of an induced subgraph to host ids).
    pub fn relabel(&self, map: &[usize]) -> SubdivisionWitness {
        SubdivisionWitness {
            branch_map: self.branch_map.iter().map(|&v| map[v]).collect(),
            paths: self
                .paths
                .iter()
                .map(|p| PathImage {
                    edge: p.edge,
                    path: p.path.iter().map(|&v| map[v]).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum WitnessDefect {
    #[error("branch map has {found} entries, pattern has {expected} vertices")]
    BranchMapSize { expected: usize, found: usize },
    #[error("host vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("branch map not injective: host vertex {vertex} used twice")]
    BranchMapNotInjective { vertex: usize },
    #[error("no path for pattern edge {edge:?}")]
    MissingPath { edge: (usize, usize) },
    #[error("path given for {edge:?}, which is not a pattern edge or is repeated")]
    UnexpectedPath { edge: (usize, usize) },
    #[error("path for {edge:?} does not join the branch images")]
    WrongEndpoints { edge: (usize, usize) },
    #[error("path for {edge:?} has length 0")]
    PathTooShort { edge: (usize, usize) },
    #[error("consecutive path vertices not adjacent: {u} and {v} on {edge:?}")]
    AdjacencyViolated {
        edge: (usize, usize),
        u: usize,
        v: usize,
    },
    #[error("paths not internally disjoint: vertex {vertex} reused")]
    NotInternallyDisjoint { vertex: usize },
    #[error("non-adjacency violated: {u} and {v} are adjacent")]
    NonAdjacencyViolated { u: usize, v: usize },
}

/// Checks `w` against the definition of an induced subdivision of `h` in `g`.
pub fn validate_witness(h: &Graph, g: &Graph, w: &SubdivisionWitness) -> Result<(), WitnessDefect> {
    if w.branch_map.len() != h.n() {
        return Err(WitnessDefect::BranchMapSize {
            expected: h.n(),
            found: w.branch_map.len(),
        });
    }
    let mut occupied = BTreeSet::new();
    for &x in &w.branch_map {
        if x >= g.n() {
            return Err(WitnessDefect::VertexOutOfRange { vertex: x });
        }
        if !occupied.insert(x) {
            return Err(WitnessDefect::BranchMapNotInjective { vertex: x });
        }
    }

    let pattern_edges: BTreeSet<(usize, usize)> = h.edges().collect();
    let mut by_edge: BTreeMap<(usize, usize), &PathImage> = BTreeMap::new();
    for p in &w.paths {
        let key = (p.edge.0.min(p.edge.1), p.edge.0.max(p.edge.1));
        if !pattern_edges.contains(&key) || by_edge.insert(key, p).is_some() {
            return Err(WitnessDefect::UnexpectedPath { edge: p.edge });
        }
    }

    let mut expected_edges = BTreeSet::new();
    for &(u, v) in &pattern_edges {
        let p = by_edge
            .get(&(u, v))
            .ok_or(WitnessDefect::MissingPath { edge: (u, v) })?;
        if let Some(&x) = p.path.iter().find(|&&x| x >= g.n()) {
            return Err(WitnessDefect::VertexOutOfRange { vertex: x });
        }
        if p.path.len() < 2 {
            return Err(WitnessDefect::PathTooShort { edge: (u, v) });
        }
        let (first, last) = (p.path[0], *p.path.last().expect("nonempty"));
        let (bu, bv) = (w.branch_map[u], w.branch_map[v]);
        if !((first == bu && last == bv) || (first == bv && last == bu)) {
            return Err(WitnessDefect::WrongEndpoints { edge: (u, v) });
        }
        for pair in p.path.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(WitnessDefect::AdjacencyViolated {
                    edge: (u, v),
                    u: pair[0],
                    v: pair[1],
                });
            }
            expected_edges.insert((pair[0].min(pair[1]), pair[0].max(pair[1])));
        }
        for &x in &p.path[1..p.path.len() - 1] {
            if !occupied.insert(x) {
                return Err(WitnessDefect::NotInternallyDisjoint { vertex: x });
            }
        }
    }

    let union: Vec<usize> = occupied.into_iter().collect();
    for (i, &x) in union.iter().enumerate() {
        for &y in &union[i + 1..] {
            if g.has_edge(x, y) && !expected_edges.contains(&(x, y)) {
                return Err(WitnessDefect::NonAdjacencyViolated { u: x, v: y });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn triangle_witness() -> SubdivisionWitness {
        // C5 = 0-1-2-3-4-0 as a subdivision of K3 with branch vertices 0, 1, 3
        SubdivisionWitness {
            branch_map: vec![0, 1, 3],
            paths: vec![
                PathImage {
                    edge: (0, 1),
                    path: vec![0, 1],
                },
                PathImage {
                    edge: (0, 2),
                    path: vec![0, 4, 3],
                },
                PathImage {
                    edge: (1, 2),
                    path: vec![1, 2, 3],
                },
            ],
        }
    }

    #[test]
    fn accepts_cycle_as_subdivided_triangle() {
        let k3 = generators::complete(3);
        validate_witness(&k3, &generators::cycle(5), &triangle_witness()).unwrap();
    }

    #[test]
    fn shared_interior_vertex() {
        let k3 = generators::complete(3);
        let mut w = triangle_witness();
        w.paths[2].path = vec![1, 4, 3];
        let g = Graph::new(5, [(0, 1), (1, 4), (0, 4), (4, 3), (1, 2), (2, 3)]).unwrap();
        let err = validate_witness(&k3, &g, &w).unwrap_err();
        assert!(err.to_string().starts_with("paths not internally disjoint"));
    }

    #[test]
    fn extra_chord() {
        let k3 = generators::complete(3);
        let mut edges: Vec<_> = generators::cycle(5).edges().collect();
        edges.push((1, 4));
        let g = Graph::new(5, edges).unwrap();
        let err = validate_witness(&k3, &g, &triangle_witness()).unwrap_err();
        assert_eq!(err, WitnessDefect::NonAdjacencyViolated { u: 1, v: 4 });
        assert!(err.to_string().starts_with("non-adjacency violated"));
    }

    #[test]
    fn structural_defects() {
        let k3 = generators::complete(3);
        let c5 = generators::cycle(5);
        let mut w = triangle_witness();
        w.branch_map = vec![0, 0, 3];
        assert!(matches!(
            validate_witness(&k3, &c5, &w),
            Err(WitnessDefect::BranchMapNotInjective { vertex: 0 })
        ));
        let mut w = triangle_witness();
        w.paths.pop();
        assert_eq!(
            validate_witness(&k3, &c5, &w),
            Err(WitnessDefect::MissingPath { edge: (1, 2) })
        );
        let mut w = triangle_witness();
        w.paths[1].path = vec![0, 2, 3];
        assert!(matches!(
            validate_witness(&k3, &c5, &w),
            Err(WitnessDefect::AdjacencyViolated { .. })
        ));
    }
}
