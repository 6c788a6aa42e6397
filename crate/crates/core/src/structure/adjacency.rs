//! How a single vertex attaches to independent sets and templates.

use serde::Serialize;

use crate::generators::PatternPab;
use crate::graph::{trace, Graph, TraceProfile};
use crate::structure::{StructureError, Template};
use crate::subdivision::{PathImage, SubdivisionWitness};

/// Witness for an induced subdivision of `P(a,a)` in which only the two apex
/// edges may be subdivided. `apex_paths[k]` runs from the apex image to
/// `pair[k]`; every other pattern edge is a host edge.
pub(crate) fn pattern_witness(
    apex_paths: [Vec<usize>; 2],
    a_images: &[usize],
    b_images: &[usize],
) -> SubdivisionWitness {
    let a = a_images.len();
    let p = PatternPab::new(a, b_images.len()).expect("nonempty parts");
    let apex = apex_paths[0][0];
    let pair = [
        *apex_paths[0].last().expect("nonempty"),
        *apex_paths[1].last().expect("nonempty"),
    ];
    let mut branch_map = vec![apex, pair[0], pair[1]];
    branch_map.extend_from_slice(a_images);
    branch_map.extend_from_slice(b_images);
    let paths = p
        .graph
        .edges()
        .map(|(u, v)| {
            let path = match (u, v) {
                (0, 1) => apex_paths[0].clone(),
                (0, 2) => apex_paths[1].clone(),
                _ => vec![branch_map[u], branch_map[v]],
            };
            PathImage { edge: (u, v), path }
        })
        .collect();
    SubdivisionWitness { branch_map, paths }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TrichotomyVerdict {
    /// Fewer than `a` non-neighbours in `A_set`: nothing is claimed.
    Exempt,
    /// At most one neighbour in `B_set`.
    OneConnected,
    /// At most `a - 1` non-neighbours in `B_set`.
    NearlyComplete,
    /// Two neighbours and `a` non-neighbours in `B_set`: an induced `P(a,a)`.
    Violation { witness: SubdivisionWitness },
}

/// For independent `A_set`, `B_set` complete to each other and `v` outside
/// both: once `v` misses `a` vertices of `A_set`, it is 1-connected or
/// `(a-1)`-disconnected to `B_set`, or the host contains `P(a,a)`.
pub fn check_adjacency_trichotomy(
    g: &Graph,
    a_set: &[usize],
    b_set: &[usize],
    v: usize,
    a: usize,
) -> Result<TrichotomyVerdict, StructureError> {
    if a == 0 {
        return Err(StructureError::Parameter("a must be positive".into()));
    }
    g.check_vertex(v)?;
    for &u in a_set.iter().chain(b_set) {
        g.check_vertex(u)?;
    }
    if a_set.contains(&v) {
        return Err(StructureError::VertexInside {
            vertex: v,
            name: "A_set",
        });
    }
    if b_set.contains(&v) {
        return Err(StructureError::VertexInside {
            vertex: v,
            name: "B_set",
        });
    }
    if !g.is_independent(a_set) {
        return Err(StructureError::NotIndependent { name: "A_set" });
    }
    if !g.is_independent(b_set) {
        return Err(StructureError::NotIndependent { name: "B_set" });
    }
    for &x in a_set {
        if let Some(&y) = b_set.iter().find(|&&y| !g.has_edge(x, y)) {
            return Err(StructureError::NotComplete { u: x, v: y });
        }
    }

    let missed_a: Vec<usize> = a_set
        .iter()
        .copied()
        .filter(|&x| !g.has_edge(v, x))
        .collect();
    if missed_a.len() < a {
        return Ok(TrichotomyVerdict::Exempt);
    }
    let (hit_b, missed_b): (Vec<usize>, Vec<usize>) =
        b_set.iter().partition(|&&y| g.has_edge(v, y));
    if hit_b.len() <= 1 {
        return Ok(TrichotomyVerdict::OneConnected);
    }
    if missed_b.len() < a {
        return Ok(TrichotomyVerdict::NearlyComplete);
    }
    let witness = pattern_witness(
        [vec![v, hit_b[0]], vec![v, hit_b[1]]],
        &missed_a[..a],
        &missed_b[..a],
    );
    Ok(TrichotomyVerdict::Violation { witness })
}

/// The three conclusions about a vertex outside a template and outside the
/// set of vertices with at most `z_threshold` non-neighbours in every part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyType {
    pub in_z: bool,
    /// Parts holding at least `a` non-neighbours.
    pub heavy_parts: Vec<usize>,
    /// Some part holds at least `a` non-neighbours.
    pub has_heavy_part: bool,
    /// For a heavy part `i`, every other part is 1-connected or `(a-1)`-disconnected.
    pub other_parts_dichotomous: bool,
    /// If some non-`i` part is 1-connected then so is part `i`.
    pub one_connection_propagates: bool,
}

/// Evaluates the adjacency-type conclusions for `v` against `x`. The
/// threshold defining `Z` is explicit: the attachment partition uses `a`,
/// the stand-alone statement uses `a - 1`.
pub fn adjacency_type(
    g: &Graph,
    x: &Template,
    v: usize,
    a: usize,
    z_threshold: usize,
) -> Result<AdjacencyType, StructureError> {
    let t = trace_against(g, x, v, a)?;
    let r = t.len();
    let in_z = (0..r).all(|i| t.few_non_neighbours(i, z_threshold));
    let heavy_parts: Vec<usize> = (0..r).filter(|&i| t.parts[i].non_neighbours >= a).collect();
    if in_z {
        return Ok(AdjacencyType {
            in_z,
            heavy_parts,
            has_heavy_part: true,
            other_parts_dichotomous: true,
            one_connection_propagates: true,
        });
    }
    let dichotomous = |j: usize| t.few_neighbours(j, 1) || t.few_non_neighbours(j, a - 1);
    let other_parts_dichotomous = heavy_parts
        .iter()
        .all(|&i| (0..r).filter(|&j| j != i).all(dichotomous));
    let one_connection_propagates = heavy_parts.iter().all(|&i| {
        let some_other = (0..r).any(|j| j != i && t.few_neighbours(j, 1));
        !some_other || t.few_neighbours(i, 1)
    });
    Ok(AdjacencyType {
        in_z,
        has_heavy_part: !heavy_parts.is_empty(),
        heavy_parts,
        other_parts_dichotomous,
        one_connection_propagates,
    })
}

/// Attachment class of a vertex outside a template.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum VertexClass {
    /// At most `a` non-neighbours in every part.
    Z,
    /// A unique part (the conflict part) holds at least `a` non-neighbours.
    C { part: usize },
    /// 1-connected to every part.
    AFree,
    /// `i`: first part with at most `a - 1` non-neighbours; `j`: first part with at most one neighbour.
    M { i: usize, j: usize },
    /// A trace no host in the class can produce.
    Invalid { reason: String },
}

/// Classification from the trace alone. `Invalid` marks a vertex with at
/// least two heavy parts where some heavy part still has two neighbours.
pub fn classify_trace(t: &TraceProfile, a: usize) -> VertexClass {
    let r = t.len();
    if (0..r).all(|i| t.few_non_neighbours(i, a)) {
        return VertexClass::Z;
    }
    let heavy: Vec<usize> = (0..r).filter(|&i| t.parts[i].non_neighbours >= a).collect();
    if let [i] = heavy[..] {
        return VertexClass::C { part: i };
    }
    if let Some(&i) = heavy.iter().find(|&&i| !t.few_neighbours(i, 1)) {
        return VertexClass::Invalid {
            reason: format!(
                "{} neighbours and {} non-neighbours in part {i} while another part holds at least {a} non-neighbours",
                t.parts[i].neighbours, t.parts[i].non_neighbours
            ),
        };
    }
    if heavy.len() == r {
        return VertexClass::AFree;
    }
    let i = (0..r)
        .find(|&i| t.few_non_neighbours(i, a - 1))
        .expect("a light part exists");
    let j = (0..r)
        .find(|&j| t.few_neighbours(j, 1))
        .expect("a heavy part exists");
    VertexClass::M { i, j }
}

fn trace_against(
    g: &Graph,
    x: &Template,
    v: usize,
    a: usize,
) -> Result<TraceProfile, StructureError> {
    if a == 0 {
        return Err(StructureError::Parameter("a must be positive".into()));
    }
    for (i, p) in x.parts().iter().enumerate() {
        if p.len() < a + 1 {
            return Err(StructureError::PartTooSmall {
                part: i,
                size: p.len(),
                needed: a + 1,
            });
        }
    }
    Ok(trace(g, v, x.parts())?)
}

/// Classifies `v` and, for an invalid trace, extracts the induced `P(a,a)`
/// that the trace forces.
pub fn classify_vertex(
    g: &Graph,
    x: &Template,
    v: usize,
    a: usize,
) -> Result<(VertexClass, Option<SubdivisionWitness>), StructureError> {
    let t = trace_against(g, x, v, a)?;
    let class = classify_trace(&t, a);
    if !matches!(class, VertexClass::Invalid { .. }) {
        return Ok((class, None));
    }
    let r = t.len();
    let heavy: Vec<usize> = (0..r).filter(|&i| t.parts[i].non_neighbours >= a).collect();
    let b_part = *heavy
        .iter()
        .find(|&&i| !t.few_neighbours(i, 1))
        .expect("invalid trace");
    let a_part = *heavy
        .iter()
        .find(|&&i| i != b_part)
        .expect("two heavy parts");
    let verdict = check_adjacency_trichotomy(g, x.part(a_part), x.part(b_part), v, a)?;
    let TrichotomyVerdict::Violation { witness } = verdict else {
        unreachable!("an invalid trace is a trichotomy violation");
    };
    Ok((class, Some(witness)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::subdivision::validate_witness;

    /// Host: template parts `0..4` and `4..8`, plus vertex 8 with the given neighbours.
    fn host(sizes: &[usize], nbrs: &[usize]) -> (Graph, Template) {
        let base = generators::complete_multipartite(sizes).unwrap();
        let n = base.n();
        let mut edges: Vec<_> = base.edges().collect();
        edges.extend(nbrs.iter().map(|&u| (u, n)));
        let g = Graph::new(n + 1, edges).unwrap();
        let t = Template::new(&g, generators::multipartite_parts(sizes)).unwrap();
        (g, t)
    }

    #[test]
    fn trichotomy_cases() {
        let (g, t) = host(&[4, 4], &[0, 1, 2, 3]);
        assert_eq!(
            check_adjacency_trichotomy(&g, t.part(0), t.part(1), 8, 2).unwrap(),
            TrichotomyVerdict::Exempt
        );
        let (g, t) = host(&[4, 4], &[0, 1, 4]);
        assert_eq!(
            check_adjacency_trichotomy(&g, t.part(0), t.part(1), 8, 2).unwrap(),
            TrichotomyVerdict::OneConnected
        );
        let (g, t) = host(&[4, 4], &[0, 1, 4, 5, 6]);
        assert_eq!(
            check_adjacency_trichotomy(&g, t.part(0), t.part(1), 8, 2).unwrap(),
            TrichotomyVerdict::NearlyComplete
        );
    }

    #[test]
    fn trichotomy_violation_witness_validates() {
        let (g, t) = host(&[4, 4], &[0, 1, 4, 5]);
        let v = check_adjacency_trichotomy(&g, t.part(0), t.part(1), 8, 2).unwrap();
        let TrichotomyVerdict::Violation { witness } = v else {
            panic!("{v:?}")
        };
        let p = PatternPab::new(2, 2).unwrap();
        validate_witness(&p.graph, &g, &witness).unwrap();
        assert_eq!(witness.branch_map[0], 8);
    }

    #[test]
    fn trichotomy_preconditions() {
        let (g, t) = host(&[4, 4], &[]);
        assert!(matches!(
            check_adjacency_trichotomy(&g, t.part(0), t.part(0), 8, 2),
            Err(StructureError::NotComplete { .. })
        ));
        assert!(matches!(
            check_adjacency_trichotomy(&g, &[0, 4], t.part(1), 8, 2),
            Err(StructureError::NotIndependent { name: "A_set" })
        ));
        assert!(matches!(
            check_adjacency_trichotomy(&g, t.part(0), t.part(1), 0, 2),
            Err(StructureError::VertexInside { vertex: 0, .. })
        ));
    }

    #[test]
    fn classification_examples() {
        // at most a non-neighbours everywhere
        let (g, t) = host(&[4, 4], &[0, 1, 4, 5]);
        assert_eq!(classify_vertex(&g, &t, 8, 2).unwrap().0, VertexClass::Z);
        // complete to the second part, a+1 non-neighbours in the first
        let (g, t) = host(&[4, 4], &[0, 4, 5, 6, 7]);
        assert_eq!(
            classify_vertex(&g, &t, 8, 2).unwrap().0,
            VertexClass::C { part: 0 }
        );
        // r = 3, a = 2: nearly complete to the first part, at most one neighbour elsewhere
        let (g, t) = host(&[5, 5, 5], &[0, 1, 2, 3, 5, 10]);
        assert_eq!(
            classify_vertex(&g, &t, 15, 2).unwrap().0,
            VertexClass::M { i: 0, j: 1 }
        );
        let (g, t) = host(&[4, 4], &[]);
        assert_eq!(classify_vertex(&g, &t, 8, 2).unwrap().0, VertexClass::AFree);
    }

    #[test]
    fn invalid_classification_carries_witness() {
        // three non-neighbours in part 0, and two neighbours plus two non-neighbours in part 1
        let (g, t) = host(&[4, 4], &[0, 4, 5]);
        let (class, w) = classify_vertex(&g, &t, 8, 2).unwrap();
        assert!(matches!(class, VertexClass::Invalid { .. }));
        let p = PatternPab::new(2, 2).unwrap();
        validate_witness(&p.graph, &g, &w.unwrap()).unwrap();
    }

    #[test]
    fn part_size_precondition() {
        let (g, t) = host(&[2, 4], &[]);
        assert!(matches!(
            classify_vertex(&g, &t, 6, 2),
            Err(StructureError::PartTooSmall { part: 0, .. })
        ));
    }

    #[test]
    fn adjacency_type_thresholds() {
        let (g, t) = host(&[4, 4], &[0, 1, 4, 5]);
        // two non-neighbours per part: inside Z at threshold a, outside at a - 1
        assert!(adjacency_type(&g, &t, 8, 2, 2).unwrap().in_z);
        let at = adjacency_type(&g, &t, 8, 2, 1).unwrap();
        assert!(!at.in_z);
        assert!(at.has_heavy_part);
        // two neighbours and two non-neighbours: the host is outside the class
        assert!(!at.other_parts_dichotomous);
    }
}
