//! Neighbourhoods of free components and the separators they form.
//!
//! For a component `Q` of the free vertices, `N(Q)` is counted inside every
//! attachment class and compared with the numeric bounds. Independently of
//! the numbers, three structural probes look for the configurations that
//! force an induced `P(a,a)`; when one is present the probe builds the copy
//! (apex inside `Q`, the two apex edges subdivided along a path through `Q`)
//! and validates it.

use std::collections::{BTreeMap, VecDeque};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use serde::Serialize;

use crate::generators::PatternPab;
use crate::graph::{bitset, Graph};
use crate::structure::adjacency::pattern_witness;
use crate::structure::{AttachmentPartition, BoundSheet, StructureError, Template};
use crate::subdivision::{validate_witness, SubdivisionWitness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    /// Largest count over the classes the bound applies to.
    pub observed: usize,
    pub bound: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Probe {
    /// The triggering configuration is absent.
    NotTriggered { name: &'static str },
    /// Triggered, and the constructed copy validated.
    Witness {
        name: &'static str,
        detail: String,
        witness: SubdivisionWitness,
    },
    /// Triggered, but the construction's size or adjacency requirements fail here.
    Inapplicable { name: &'static str, reason: String },
}

impl Probe {
    pub fn witness(&self) -> Option<&SubdivisionWitness> {
        match self {
            Probe::Witness { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutsetVerdict {
    /// `X` minus `N(Q)`.
    pub far_side: Vec<usize>,
    /// No vertex of the far side is reachable from `Q` once `N(Q)` is deleted.
    pub separated: bool,
    /// `Q` and the far side are both nonempty and separated.
    pub is_cutset: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutsetReport {
    pub component: Vec<usize>,
    pub neighbourhood: Vec<usize>,
    pub z_count: usize,
    pub x_counts: Vec<usize>,
    pub c_counts: Vec<usize>,
    /// `(i, j, count)` for every nonempty `M(i,j)` class.
    pub m_counts: Vec<(usize, usize, usize)>,
    pub bound_checks: Vec<BoundCheck>,
    pub probes: Vec<Probe>,
    pub cutset: CutsetVerdict,
}

impl CutsetReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &SubdivisionWitness> {
        self.probes.iter().filter_map(Probe::witness)
    }
}

fn verdict(name: &'static str, observed: usize, bound: &BigUint) -> BoundCheck {
    BoundCheck {
        name,
        observed,
        bound: bound.to_str_radix(10),
        holds: BigUint::from(observed) <= *bound,
    }
}

fn count_in(set: &FixedBitSet, vs: &[usize]) -> usize {
    vs.iter().filter(|&&v| set.contains(v)).count()
}

pub fn component_cutset_report(
    g: &Graph,
    x: &Template,
    partition: &AttachmentPartition,
    q: &[usize],
    a: usize,
    bounds: &BoundSheet,
) -> Result<CutsetReport, StructureError> {
    if q.is_empty() {
        return Err(StructureError::InvalidComponent(
            "component is empty".into(),
        ));
    }
    for &v in q {
        g.check_vertex(v)?;
        if partition.a_free.binary_search(&v).is_err() {
            return Err(StructureError::InvalidComponent(format!(
                "vertex {v} is not free"
            )));
        }
    }
    let mut component = q.to_vec();
    component.sort_unstable();
    let in_q = bitset(g.n(), &component);
    let free = bitset(g.n(), &partition.a_free);
    let comps = g.components_within(&free);
    if !comps.contains(&component) {
        return Err(StructureError::InvalidComponent(
            "not a connected component of the free vertices".into(),
        ));
    }

    let neighbourhood = g.set_neighbourhood(&component);
    let in_n = bitset(g.n(), &neighbourhood);
    let z_count = count_in(&in_n, &partition.z);
    let x_counts: Vec<usize> = x.parts().iter().map(|p| count_in(&in_n, p)).collect();
    let c_counts: Vec<usize> = partition.c.iter().map(|c| count_in(&in_n, c)).collect();
    let m_counts: Vec<(usize, usize, usize)> = partition
        .m
        .iter()
        .map(|m| (m.i, m.j, count_in(&in_n, &m.vertices)))
        .collect();

    let omega = BigUint::from(bounds.omega);
    let bound_checks = vec![
        verdict("z_neighbours", z_count, &bounds.z_neighbour_bound),
        verdict(
            "x_part_neighbours",
            x_counts.iter().copied().max().unwrap_or(0),
            &BigUint::from(1u32),
        ),
        verdict(
            "m_class_neighbours",
            m_counts.iter().map(|m| m.2).max().unwrap_or(0),
            &omega,
        ),
        verdict(
            "c_class_neighbours",
            c_counts.iter().copied().max().unwrap_or(0),
            &bounds.c_neighbour_bound,
        ),
    ];

    let ctx = ProbeContext { g, x, q: &in_q, a };
    let probes = vec![
        ctx.x_part_probe(),
        ctx.m_class_probe(partition, &in_n),
        ctx.c_class_probe(partition, &in_n),
    ];

    let cutset = separation(g, x, &component, &in_n);
    Ok(CutsetReport {
        component,
        neighbourhood,
        z_count,
        x_counts,
        c_counts,
        m_counts,
        bound_checks,
        probes,
        cutset,
    })
}

/// Deletes `N(Q)` and searches from `Q`; independent of the class counts.
fn separation(g: &Graph, x: &Template, q: &[usize], in_n: &FixedBitSet) -> CutsetVerdict {
    let far_side: Vec<usize> = x
        .vertices()
        .into_iter()
        .filter(|&v| !in_n.contains(v))
        .collect();
    let mut seen = vec![false; g.n()];
    let mut queue: VecDeque<usize> = q.iter().copied().collect();
    for &v in q {
        seen[v] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            if !seen[w] && !in_n.contains(w) {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let separated = far_side.iter().all(|&v| !seen[v]);
    CutsetVerdict {
        is_cutset: separated && !far_side.is_empty() && !q.is_empty(),
        separated,
        far_side,
    }
}

struct ProbeContext<'a> {
    g: &'a Graph,
    x: &'a Template,
    q: &'a FixedBitSet,
    a: usize,
}

impl ProbeContext<'_> {
    fn finish(&self, name: &'static str, detail: String, witness: SubdivisionWitness) -> Probe {
        let p = PatternPab::new(self.a, self.a).expect("a >= 1");
        match validate_witness(&p.graph, self.g, &witness) {
            Ok(()) => Probe::Witness {
                name,
                detail,
                witness,
            },
            Err(defect) => Probe::Inapplicable {
                name,
                reason: format!("constructed copy failed validation: {defect}"),
            },
        }
    }

    fn neighbours_of_set(&self, set: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.g.n());
        for &v in set {
            acc.union_with(self.g.row(v));
        }
        acc
    }

    fn too_small(name: &'static str, what: &str, have: usize, need: usize) -> Probe {
        Probe::Inapplicable {
            name,
            reason: format!("{what} has {have} vertices, {need} needed"),
        }
    }

    /// Two vertices of one part with neighbours in `Q`: a shortest path in `Q`
    /// between their attachments, plus a second part, gives the copy.
    fn x_part_probe(&self) -> Probe {
        const NAME: &str = "x_part_neighbours";
        let g = self.g;
        let qs: Vec<usize> = self.q.ones().collect();
        // (distance, part, x', y') minimal over attachments to distinct vertices of one part
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (i, part) in self.x.parts().iter().enumerate() {
            let attach: Vec<(usize, usize)> = qs
                .iter()
                .filter_map(|&v| part.iter().find(|&&u| g.has_edge(u, v)).map(|&u| (v, u)))
                .collect();
            for (k, &(xq, xu)) in attach.iter().enumerate() {
                let dist = bfs_within(g, xq, self.q);
                for &(yq, yu) in &attach[k + 1..] {
                    if xu == yu || dist[yq] == usize::MAX {
                        continue;
                    }
                    let cand = (dist[yq], i, xq, yq);
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((_, i, xq, yq)) = best else {
            return Probe::NotTriggered { name: NAME };
        };
        let path = self
            .g
            .shortest_path_through(xq, yq, self.q)
            .expect("same component");
        let part = self.x.part(i);
        let x = *part.iter().find(|&&u| g.has_edge(u, xq)).expect("attached");
        let y = *part.iter().find(|&&u| g.has_edge(u, yq)).expect("attached");
        let n_path = self.neighbours_of_set(&path);
        let b_side: Vec<usize> = part
            .iter()
            .copied()
            .filter(|&u| u != x && u != y && !n_path.contains(u))
            .collect();
        if b_side.len() < self.a {
            return Self::too_small(NAME, "trimmed attachment part", b_side.len(), self.a);
        }
        let other = (0..self.x.r())
            .filter(|&k| k != i)
            .map(|k| {
                let kept: Vec<usize> = self
                    .x
                    .part(k)
                    .iter()
                    .copied()
                    .filter(|&u| !n_path.contains(u))
                    .collect();
                (k, kept)
            })
            .max_by_key(|(k, kept)| (kept.len(), std::cmp::Reverse(*k)));
        let Some((k, a_side)) = other else {
            return Probe::Inapplicable {
                name: NAME,
                reason: "template has a single part".into(),
            };
        };
        if a_side.len() < self.a {
            return Self::too_small(NAME, "trimmed second part", a_side.len(), self.a);
        }
        let mut to_y = path.clone();
        to_y.push(y);
        let witness = pattern_witness([vec![xq, x], to_y], &a_side[..self.a], &b_side[..self.a]);
        self.finish(
            NAME,
            format!(
                "part {i} reached at {x} and {y} along a path of {} vertices; second part {k}",
                path.len()
            ),
            witness,
        )
    }

    /// Two non-adjacent neighbours of `Q` in one `M(i,j)` class.
    fn m_class_probe(&self, partition: &AttachmentPartition, in_n: &FixedBitSet) -> Probe {
        const NAME: &str = "m_class_neighbours";
        for m in &partition.m {
            let hits: Vec<usize> = m
                .vertices
                .iter()
                .copied()
                .filter(|&v| in_n.contains(v))
                .collect();
            let Some((x, y)) = non_adjacent_pair(self.g, &hits) else {
                continue;
            };
            let path = self
                .g
                .shortest_path_through(x, y, self.q)
                .expect("both see the component");
            let interior = &path[1..path.len() - 1];
            let n_interior = self.neighbours_of_set(interior);
            let n_path = self.neighbours_of_set(&path);
            let a_side: Vec<usize> = self
                .x
                .part(m.i)
                .iter()
                .copied()
                .filter(|&u| {
                    self.g.has_edge(u, x) && self.g.has_edge(u, y) && !n_interior.contains(u)
                })
                .collect();
            let b_side: Vec<usize> = self
                .x
                .part(m.j)
                .iter()
                .copied()
                .filter(|&u| !n_path.contains(u))
                .collect();
            if a_side.len() < self.a {
                return Self::too_small(
                    NAME,
                    "common neighbours in the nearly complete part",
                    a_side.len(),
                    self.a,
                );
            }
            if b_side.len() < self.a {
                return Self::too_small(NAME, "trimmed sparse part", b_side.len(), self.a);
            }
            let apex = path[1];
            let to_x = vec![apex, x];
            let to_y = path[1..].to_vec();
            let witness = pattern_witness([to_x, to_y], &a_side[..self.a], &b_side[..self.a]);
            return self.finish(
                NAME,
                format!("class M({}, {}) holds {x} and {y}", m.i, m.j),
                witness,
            );
        }
        Probe::NotTriggered { name: NAME }
    }

    /// Two non-adjacent neighbours of `Q` in one conflict class whose first
    /// `a + 1` non-neighbours in the conflict part coincide.
    fn c_class_probe(&self, partition: &AttachmentPartition, in_n: &FixedBitSet) -> Probe {
        const NAME: &str = "c_class_neighbours";
        let g = self.g;
        let n_q = self.neighbours_of_set(&self.q.ones().collect::<Vec<_>>());
        for (i, class) in partition.c.iter().enumerate() {
            let part = self.x.part(i);
            let mut by_signature: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for &v in class.iter().filter(|&&v| in_n.contains(v)) {
                let sig: Vec<usize> = part
                    .iter()
                    .copied()
                    .filter(|&u| !g.has_edge(u, v))
                    .take(self.a + 1)
                    .collect();
                by_signature.entry(sig).or_default().push(v);
            }
            for (sig, members) in &by_signature {
                let Some((x, y)) = non_adjacent_pair(g, members) else {
                    continue;
                };
                let path = g
                    .shortest_path_through(x, y, self.q)
                    .expect("both see the component");
                let interior = &path[1..path.len() - 1];
                let n_interior = self.neighbours_of_set(interior);
                let b_side: Vec<usize> =
                    sig.iter().copied().filter(|&u| !n_q.contains(u)).collect();
                if b_side.len() < self.a {
                    return Self::too_small(
                        NAME,
                        "shared non-neighbours outside N(Q)",
                        b_side.len(),
                        self.a,
                    );
                }
                let other = (0..self.x.r())
                    .filter(|&k| k != i)
                    .map(|k| {
                        let kept: Vec<usize> = self
                            .x
                            .part(k)
                            .iter()
                            .copied()
                            .filter(|&u| {
                                g.has_edge(u, x) && g.has_edge(u, y) && !n_interior.contains(u)
                            })
                            .collect();
                        (k, kept)
                    })
                    .max_by_key(|(k, kept)| (kept.len(), std::cmp::Reverse(*k)));
                let Some((k, a_side)) = other else {
                    return Probe::Inapplicable {
                        name: NAME,
                        reason: "template has a single part".into(),
                    };
                };
                if a_side.len() < self.a {
                    return Self::too_small(NAME, "trimmed second part", a_side.len(), self.a);
                }
                let apex = path[1];
                let witness = pattern_witness(
                    [vec![apex, x], path[1..].to_vec()],
                    &a_side[..self.a],
                    &b_side[..self.a],
                );
                return self.finish(
                    NAME,
                    format!(
                        "conflict class {i} holds {x} and {y} sharing {sig:?}; second part {k}"
                    ),
                    witness,
                );
            }
        }
        Probe::NotTriggered { name: NAME }
    }
}

fn non_adjacent_pair(g: &Graph, vs: &[usize]) -> Option<(usize, usize)> {
    vs.iter().enumerate().find_map(|(k, &x)| {
        vs[k + 1..]
            .iter()
            .find(|&&y| !g.has_edge(x, y))
            .map(|&y| (x, y))
    })
}

/// BFS distances from `s` inside `allowed`.
fn bfs_within(g: &Graph, s: usize, allowed: &FixedBitSet) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbours(u) {
            if allowed.contains(w) && dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}
