//! The attachment partition of the vertices outside a template.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;
use crate::structure::adjacency::{classify_vertex, VertexClass};
use crate::structure::{StructureError, Template};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MClass {
    pub i: usize,
    pub j: usize,
    pub vertices: Vec<usize>,
}

/// Every vertex outside the template lands in exactly one class. All vertex
/// lists are sorted; `c` has one entry per part; `m` lists nonempty classes
/// ordered by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttachmentPartition {
    pub z: Vec<usize>,
    pub c: Vec<Vec<usize>>,
    pub a_free: Vec<usize>,
    pub m: Vec<MClass>,
}

impl AttachmentPartition {
    pub fn m_class(&self, i: usize, j: usize) -> &[usize] {
        self.m
            .iter()
            .find(|c| c.i == i && c.j == j)
            .map_or(&[], |c| &c.vertices)
    }

    pub fn class_of(&self, v: usize) -> Option<VertexClass> {
        if self.z.binary_search(&v).is_ok() {
            return Some(VertexClass::Z);
        }
        if self.a_free.binary_search(&v).is_ok() {
            return Some(VertexClass::AFree);
        }
        if let Some(part) = self.c.iter().position(|c| c.binary_search(&v).is_ok()) {
            return Some(VertexClass::C { part });
        }
        self.m
            .iter()
            .find(|c| c.vertices.binary_search(&v).is_ok())
            .map(|c| VertexClass::M { i: c.i, j: c.j })
    }
}

/// Classifies every vertex outside `x`. A vertex whose trace is impossible in
/// the class aborts with the induced `P(a,a)` it forces.
pub fn partition_attachment(
    g: &Graph,
    x: &Template,
    a: usize,
) -> Result<AttachmentPartition, StructureError> {
    let in_x = crate::graph::bitset(g.n(), &x.vertices());
    let mut out = AttachmentPartition {
        z: Vec::new(),
        c: vec![Vec::new(); x.r()],
        a_free: Vec::new(),
        m: Vec::new(),
    };
    let mut m: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for v in g.vertices().filter(|&v| !in_x.contains(v)) {
        match classify_vertex(g, x, v, a)? {
            (VertexClass::Z, _) => out.z.push(v),
            (VertexClass::C { part }, _) => out.c[part].push(v),
            (VertexClass::AFree, _) => out.a_free.push(v),
            (VertexClass::M { i, j }, _) => m.entry((i, j)).or_default().push(v),
            (VertexClass::Invalid { reason }, witness) => {
                return Err(StructureError::NotInClass {
                    vertex: v,
                    reason,
                    witness: witness.map(Box::new),
                })
            }
        }
    }
    out.m = m
        .into_iter()
        .map(|((i, j), vertices)| MClass { i, j, vertices })
        .collect();
    Ok(out)
}
