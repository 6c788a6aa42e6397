//! Growing a template by one part out of nearly complete vertices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::Graph;
use crate::limits::Limits;
use crate::oracles::max_independent_set;
use crate::structure::{StructureError, Template};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GrowthOutcome {
    Grown {
        template: Template,
    },
    /// No trace class holds an independent set of size `s`.
    Insufficient {
        reason: String,
        classes: usize,
        largest_class: usize,
        best_independent: usize,
    },
}

/// Buckets `z` by exact non-neighbour trace in `x`, and in each class (largest
/// first) looks for an independent set `I` with `|I| >= s`. On success the
/// new template is `I` plus each part minus the shared non-neighbours of `I`.
/// The output is re-verified as a template before returning.
pub fn grow_template(
    g: &Graph,
    x: &Template,
    z: &[usize],
    s: usize,
    a: usize,
    limits: &Limits,
) -> Result<GrowthOutcome, StructureError> {
    if s == 0 {
        return Err(StructureError::Parameter("s must be positive".into()));
    }
    for (i, p) in x.parts().iter().enumerate() {
        if p.len() != s + a {
            return Err(StructureError::PartSizeMismatch {
                part: i,
                size: p.len(),
                expected: s + a,
            });
        }
    }
    let in_x = crate::graph::bitset(g.n(), &x.vertices());
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &v in z {
        g.check_vertex(v)?;
        if in_x.contains(v) {
            return Err(StructureError::VertexInside {
                vertex: v,
                name: "the template",
            });
        }
        let mut missed = Vec::new();
        for (i, p) in x.parts().iter().enumerate() {
            let before = missed.len();
            missed.extend(p.iter().copied().filter(|&u| !g.has_edge(u, v)));
            if missed.len() - before > a {
                return Err(StructureError::NotNearlyComplete {
                    vertex: v,
                    part: i,
                    a,
                });
            }
        }
        missed.sort_unstable();
        classes.entry(missed).or_default().push(v);
    }

    let mut order: Vec<(&Vec<usize>, &Vec<usize>)> = classes.iter().collect();
    order.sort_by_key(|(_, members)| std::cmp::Reverse(members.len()));
    let mut best_independent = 0;
    for (missed, members) in &order {
        if members.len() < s {
            break;
        }
        let sub = g.induced(members)?;
        let indep = sub.to_host(&max_independent_set(&sub.graph, limits)?);
        best_independent = best_independent.max(indep.len());
        if indep.len() < s {
            continue;
        }
        let mut parts: Vec<Vec<usize>> = x
            .parts()
            .iter()
            .map(|p| {
                p.iter()
                    .copied()
                    .filter(|u| missed.binary_search(u).is_err())
                    .collect()
            })
            .collect();
        parts.push(indep);
        let template = Template::new(g, parts)?;
        return Ok(GrowthOutcome::Grown { template });
    }
    Ok(GrowthOutcome::Insufficient {
        reason: if z.is_empty() {
            "no candidate vertices".into()
        } else {
            format!("no trace class holds an independent set of size {s}")
        },
        classes: classes.len(),
        largest_class: order.first().map_or(0, |(_, m)| m.len()),
        best_independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn three_independent_vertices_complete_to_template() {
        // parts of size s + a = 4, plus 3 pairwise non-adjacent vertices complete to X
        let g = generators::complete_multipartite(&[4, 4, 3]).unwrap();
        let t = Template::new(&g, generators::multipartite_parts(&[4, 4])).unwrap();
        let out = grow_template(&g, &t, &[8, 9, 10], 2, 2, &Limits::default()).unwrap();
        let GrowthOutcome::Grown { template } = out else {
            panic!("{out:?}")
        };
        assert_eq!(template.r(), 3);
        let sizes: Vec<usize> = template.parts().iter().map(Vec::len).collect();
        assert_eq!(&sizes[..2], &[4, 4]);
        assert!(sizes[2] >= 2);
        Template::check(&g, template.parts()).unwrap();
    }

    #[test]
    fn empty_z_is_insufficient() {
        let g = generators::complete_multipartite(&[4, 4]).unwrap();
        let t = Template::new(&g, generators::multipartite_parts(&[4, 4])).unwrap();
        let out = grow_template(&g, &t, &[], 2, 2, &Limits::default()).unwrap();
        assert!(matches!(
            out,
            GrowthOutcome::Insufficient { classes: 0, .. }
        ));
    }

    #[test]
    fn shared_misses_are_trimmed() {
        // z-vertices 8, 9 both miss vertex 0 and vertex 4
        let base = generators::complete_multipartite(&[4, 4]).unwrap();
        let mut edges: Vec<_> = base.edges().collect();
        for z in [8, 9] {
            edges.extend([1, 2, 3, 5, 6, 7].map(|u| (u, z)));
        }
        let g = Graph::new(10, edges).unwrap();
        let t = Template::new(&g, generators::multipartite_parts(&[4, 4])).unwrap();
        let out = grow_template(&g, &t, &[8, 9], 2, 2, &Limits::default()).unwrap();
        let GrowthOutcome::Grown { template } = out else {
            panic!("{out:?}")
        };
        assert_eq!(
            template.parts(),
            &[vec![1, 2, 3], vec![5, 6, 7], vec![8, 9]]
        );
    }

    #[test]
    fn parts_listed_out_of_id_order() {
        // same host as above, template given with the higher-id part first
        let base = generators::complete_multipartite(&[4, 4]).unwrap();
        let mut edges: Vec<_> = base.edges().collect();
        for z in [8, 9] {
            edges.extend([1, 2, 3, 5, 6, 7].map(|u| (u, z)));
        }
        let g = Graph::new(10, edges).unwrap();
        let t = Template::new(&g, vec![vec![4, 5, 6, 7], vec![0, 1, 2, 3]]).unwrap();
        let out = grow_template(&g, &t, &[8, 9], 2, 2, &Limits::default()).unwrap();
        let GrowthOutcome::Grown { template } = out else {
            panic!("{out:?}")
        };
        assert_eq!(
            template.parts(),
            &[vec![5, 6, 7], vec![1, 2, 3], vec![8, 9]]
        );
    }

    #[test]
    fn clique_z_is_insufficient_and_preconditions_hold() {
        let base = generators::complete_multipartite(&[4, 4]).unwrap();
        let mut edges: Vec<_> = base.edges().collect();
        for z in [8, 9] {
            edges.extend((0..8).map(|u| (u, z)));
        }
        edges.push((8, 9));
        let g = Graph::new(10, edges).unwrap();
        let t = Template::new(&g, generators::multipartite_parts(&[4, 4])).unwrap();
        let out = grow_template(&g, &t, &[8, 9], 2, 2, &Limits::default()).unwrap();
        assert!(matches!(
            out,
            GrowthOutcome::Insufficient {
                best_independent: 1,
                ..
            }
        ));
        assert!(matches!(
            grow_template(&g, &t, &[8], 3, 2, &Limits::default()),
            Err(StructureError::PartSizeMismatch { .. })
        ));
    }
}
