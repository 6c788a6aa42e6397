//! The two constructive colouring branches.

use serde::Serialize;

use crate::graph::Graph;
use crate::oracles::ColouringCertificate;
use crate::structure::partition::partition_attachment;
use crate::structure::{StructureError, Template};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominatingColouring {
    pub certificate: ColouringCertificate,
    /// The first `a + 1` vertices of each part.
    pub dominating_set: Vec<usize>,
    /// `dominator[v]`: smallest vertex of the set adjacent to `v`, for `v` outside it.
    pub dominator: Vec<Option<usize>>,
    /// Largest chromatic number among the neighbourhoods `N_{G-S}(v)`, `v` in the set.
    pub tau_observed: usize,
    /// `(1 + tau_observed)(a + 1) r`.
    pub budget: usize,
}

/// Colours a graph whose attachment partition has no free vertices.
///
/// `S` takes `a + 1` vertices from every part and dominates the graph. Each
/// vertex outside `S` joins the group of its smallest dominator; each group
/// is coloured by `subcolour` from its own palette, and every vertex of `S`
/// gets a colour of its own.
pub fn dominating_colouring<F>(
    g: &Graph,
    x: &Template,
    a: usize,
    mut subcolour: F,
) -> Result<DominatingColouring, StructureError>
where
    F: FnMut(&Graph) -> Result<ColouringCertificate, StructureError>,
{
    let partition = partition_attachment(g, x, a)?;
    if !partition.a_free.is_empty() {
        return Err(StructureError::FreeVerticesPresent {
            count: partition.a_free.len(),
        });
    }
    let mut s: Vec<usize> = x
        .parts()
        .iter()
        .flat_map(|p| p[..a + 1].iter().copied())
        .collect();
    s.sort_unstable();
    let in_s = crate::graph::bitset(g.n(), &s);

    let mut dominator = vec![None; g.n()];
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); s.len()];
    for v in g.vertices().filter(|&v| !in_s.contains(v)) {
        let k = s
            .iter()
            .position(|&d| g.has_edge(d, v))
            .ok_or(StructureError::NotDominating { vertex: v })?;
        dominator[v] = Some(s[k]);
        groups[k].push(v);
    }

    let mut colour = vec![usize::MAX; g.n()];
    let mut next = 0;
    for &v in &s {
        colour[v] = next;
        next += 1;
    }
    let mut tau_observed = 0;
    for (k, &d) in s.iter().enumerate() {
        let nbhd: Vec<usize> = g
            .neighbours(d)
            .iter()
            .copied()
            .filter(|&u| !in_s.contains(u))
            .collect();
        let full = subcolour(&g.induced(&nbhd)?.graph)?;
        tau_observed = tau_observed.max(full.colours_used);

        let sub = g.induced(&groups[k])?;
        let local = subcolour(&sub.graph)?;
        for (i, &c) in local.colour.iter().enumerate() {
            colour[sub.map[i]] = next + c;
        }
        next += local.colours_used;
    }
    let certificate = ColouringCertificate::from_colours(&colour);
    certificate.verify(g).map_err(|e| {
        StructureError::InvalidComponent(format!("dominating colouring is improper: {e}"))
    })?;
    let budget = (1 + tau_observed) * (a + 1) * x.r();
    debug_assert!(certificate.colours_used <= budget);
    Ok(DominatingColouring {
        certificate,
        dominating_set: s,
        dominator,
        tau_observed,
        budget,
    })
}

/// Peels minimum-degree vertices (smallest id first) and colours greedily in
/// reverse order, using at most `d` colours. Fails with the remaining core if
/// some subgraph has minimum degree at least `d`.
pub fn degeneracy_colouring(g: &Graph, d: usize) -> Result<ColouringCertificate, StructureError> {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        if degree[v] >= d {
            let core = (0..n).filter(|&u| !removed[u]).collect();
            return Err(StructureError::NotDegenerate { d, core });
        }
        removed[v] = true;
        order.push(v);
        for &w in g.neighbours(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    let mut colour = vec![usize::MAX; n];
    for &v in order.iter().rev() {
        let used: Vec<usize> = g
            .neighbours(v)
            .iter()
            .map(|&w| colour[w])
            .filter(|&c| c != usize::MAX)
            .collect();
        colour[v] = (0..).find(|c| !used.contains(c)).expect("unbounded");
    }
    Ok(ColouringCertificate::from_colours(&colour))
}

/// Largest minimum degree over all subgraphs.
pub(crate) fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        best = best.max(degree[v]);
        removed[v] = true;
        for &w in g.neighbours(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    best
}
