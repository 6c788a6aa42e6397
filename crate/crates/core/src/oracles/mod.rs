//! Exact desk-scale oracles: cliques, independent sets, colouring,
//! Ramsey extraction, connectivity and induced embeddings.

mod clique;
mod colouring;
mod connectivity;
mod embedding;

use serde::Serialize;

pub use clique::{max_clique, Clique};
#[cfg(test)]
pub(crate) use colouring::chromatic_unguarded;
pub use colouring::{chromatic_number, ColouringCertificate};
pub use connectivity::{
    find_k_connected_chromatic, is_k_connected, local_cut, min_vertex_cut, vertex_connectivity,
    KConnectedOutcome, SearchStep,
};
pub use embedding::induced_embedding;

use crate::graph::Graph;
use crate::limits::{GuardExceeded, Limits};

/// `ω(g)` with a sorted witness clique.
pub fn clique_number(g: &Graph, limits: &Limits) -> Result<Clique, GuardExceeded> {
    Limits::check("max_clique_vertices", limits.max_clique_vertices, g.n())?;
    Ok(max_clique(g))
}

/// A maximum independent set, sorted (maximum clique of the complement).
pub fn max_independent_set(g: &Graph, limits: &Limits) -> Result<Vec<usize>, GuardExceeded> {
    Limits::check("max_clique_vertices", limits.max_clique_vertices, g.n())?;
    Ok(max_clique(&g.complement()).vertices)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamseyKind {
    Clique,
    IndependentSet,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyOutcome {
    pub kind: RamseyKind,
    pub vertices: Vec<usize>,
}

/// A clique or an independent set with at least `p + q` vertices, preferring
/// a clique. `Neither` is returned only when exact search rules both out.
pub fn ramsey_extract(
    g: &Graph,
    p: usize,
    q: usize,
    limits: &Limits,
) -> Result<RamseyOutcome, GuardExceeded> {
    let target = p + q;
    let clique = clique_number(g, limits)?;
    if clique.size >= target {
        return Ok(RamseyOutcome {
            kind: RamseyKind::Clique,
            vertices: clique.vertices,
        });
    }
    let independent = max_independent_set(g, limits)?;
    if independent.len() >= target {
        return Ok(RamseyOutcome {
            kind: RamseyKind::IndependentSet,
            vertices: independent,
        });
    }
    Ok(RamseyOutcome {
        kind: RamseyKind::Neither,
        vertices: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn independent_sets() {
        let l = Limits::default();
        assert_eq!(max_independent_set(&Graph::empty(5), &l).unwrap().len(), 5);
        assert_eq!(
            max_independent_set(&generators::complete(5), &l)
                .unwrap()
                .len(),
            1
        );
        let c7 = generators::cycle(7);
        let brute = (0u32..128)
            .filter(|&m| {
                let s: Vec<usize> = (0..7).filter(|&v| m >> v & 1 == 1).collect();
                c7.is_independent(&s)
            })
            .map(u32::count_ones)
            .max()
            .unwrap();
        assert_eq!(brute, 3);
        let mis = max_independent_set(&c7, &l).unwrap();
        assert_eq!(mis.len(), 3);
        assert!(c7.is_independent(&mis));
    }

    #[test]
    fn ramsey_examples() {
        let l = Limits::default();
        let k10 = ramsey_extract(&generators::complete(10), 4, 6, &l).unwrap();
        assert_eq!(k10.kind, RamseyKind::Clique);
        assert_eq!(k10.vertices.len(), 10);
        let c5 = ramsey_extract(&generators::cycle(5), 1, 2, &l).unwrap();
        assert_eq!(c5.kind, RamseyKind::Neither);
        let e = ramsey_extract(&Graph::empty(4), 2, 1, &l).unwrap();
        assert_eq!(e.kind, RamseyKind::IndependentSet);
    }
}
