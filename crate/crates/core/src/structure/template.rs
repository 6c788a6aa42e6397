//! Induced complete multipartite subgraphs.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("template has no parts")]
    NoParts,
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {0} appears in more than one place")]
    Overlap(usize),
    #[error("part {part} contains the edge ({u}, {v})")]
    EdgeInPart { part: usize, u: usize, v: usize },
    #[error("{u} (part {pu}) and {v} (part {pv}) are not adjacent")]
    MissingEdge {
        u: usize,
        pu: usize,
        v: usize,
        pv: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Disjoint independent parts, pairwise complete. Each part is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Template {
    parts: Vec<Vec<usize>>,
}

impl Template {
    /// Builds a template after checking every invariant by direct enumeration.
    pub fn new(g: &Graph, mut parts: Vec<Vec<usize>>) -> Result<Self, TemplateError> {
        for p in &mut parts {
            p.sort_unstable();
        }
        Self::check(g, &parts)?;
        Ok(Template { parts })
    }

    pub fn check(g: &Graph, parts: &[Vec<usize>]) -> Result<(), TemplateError> {
        if parts.is_empty() {
            return Err(TemplateError::NoParts);
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (i, p) in parts.iter().enumerate() {
            if p.is_empty() {
                return Err(TemplateError::EmptyPart(i));
            }
            for &v in p {
                g.check_vertex(v)?;
                if owner[v] != usize::MAX {
                    return Err(TemplateError::Overlap(v));
                }
                owner[v] = i;
            }
        }
        for (i, p) in parts.iter().enumerate() {
            for (k, &u) in p.iter().enumerate() {
                if let Some(&v) = p[k + 1..].iter().find(|&&v| g.has_edge(u, v)) {
                    return Err(TemplateError::EdgeInPart { part: i, u, v });
                }
            }
            for (j, q) in parts.iter().enumerate().skip(i + 1) {
                for &u in p {
                    if let Some(&v) = q.iter().find(|&&v| !g.has_edge(u, v)) {
                        return Err(TemplateError::MissingEdge { u, pu: i, v, pv: j });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    /// All template vertices, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.parts.concat();
        all.sort_unstable();
        all
    }

    pub fn min_part_size(&self) -> usize {
        self.parts.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Index of the part holding `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.binary_search(&v).is_ok())
    }
}
