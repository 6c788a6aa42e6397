//! Exhaustive catalogs of small graphs up to isomorphism.
//!
//! Canonical forms use colour refinement plus individualization; each leaf
//! of the search tree is a discrete labelling and the canonical form is the
//! smallest resulting adjacency word. Limited to 11 vertices (55 bits).

use std::collections::HashSet;

use crate::graph::Graph;

pub const MAX_CANONICAL_VERTICES: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u64,
}

impl CanonicalForm {
    pub fn to_graph(self) -> Graph {
        let mut edges = Vec::new();
        for j in 1..self.n {
            for i in 0..j {
                if self.bits >> pair_index(i, j) & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(self.n, edges).expect("decoded pairs are valid")
    }
}

#[inline]
fn pair_index(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

/// Stable ranks of `(colour, sorted neighbour colours)` signatures, iterated to a fixpoint.
fn refine(g: &Graph, mut colour: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    let mut classes = count_classes(&colour);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.neighbours(v).iter().map(|&w| colour[w]).collect();
                nc.sort_unstable();
                (colour[v], nc, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; n];
        let mut rank = 0;
        for k in 0..n {
            if k > 0 && (sigs[k].0 != sigs[k - 1].0 || sigs[k].1 != sigs[k - 1].1) {
                rank += 1;
            }
            next[sigs[k].2] = rank;
        }
        let new_classes = if n == 0 { 0 } else { rank + 1 };
        colour = next;
        if new_classes == classes {
            return colour;
        }
        classes = new_classes;
    }
}

fn count_classes(colour: &[usize]) -> usize {
    colour.iter().collect::<HashSet<_>>().len()
}

fn labelled_bits(g: &Graph, label: &[usize]) -> u64 {
    let mut bits = 0u64;
    for (u, v) in g.edges() {
        let (i, j) = (label[u].min(label[v]), label[u].max(label[v]));
        bits |= 1 << pair_index(i, j);
    }
    bits
}

fn search(g: &Graph, colour: Vec<usize>, best: &mut u64) {
    let n = g.n();
    // first (lowest colour) non-singleton cell
    let mut counts = vec![0usize; n];
    for &c in &colour {
        counts[c] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        *best = (*best).min(labelled_bits(g, &colour));
        return;
    };
    for v in (0..n).filter(|&v| colour[v] == target) {
        let individualized: Vec<usize> = colour
            .iter()
            .enumerate()
            .map(|(w, &c)| {
                if c > target || (c == target && w != v) {
                    c + 1
                } else {
                    c
                }
            })
            .collect();
        search(g, refine(g, individualized), best);
    }
}

/// Canonical form of `g`; panics above [`MAX_CANONICAL_VERTICES`].
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    assert!(n <= MAX_CANONICAL_VERTICES, "canonical forms need n <= 11");
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut sorted = degrees.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let initial = degrees
        .iter()
        .map(|d| sorted.binary_search(d).expect("present"))
        .collect();
    let mut best = u64::MAX;
    search(g, refine(g, initial), &mut best);
    if n < 2 {
        best = 0;
    }
    CanonicalForm { n, bits: best }
}

pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && canonical_form(g) == canonical_form(h)
}

/// Adds one vertex in every possible way to every graph, keeping the
/// extensions accepted by `keep`, deduplicated up to isomorphism.
pub fn extend_by_vertex<F>(graphs: &[Graph], keep: F) -> Vec<Graph>
where
    F: Fn(&Graph) -> bool,
{
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        let n = g.n();
        for mask in 0u64..(1 << n) {
            let mut edges: Vec<(usize, usize)> = g.edges().collect();
            edges.extend((0..n).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n)));
            let h = Graph::new(n + 1, edges).expect("valid extension");
            if !keep(&h) {
                continue;
            }
            let form = canonical_form(&h);
            if seen.insert(form) {
                out.push(form);
            }
        }
    }
    out.sort();
    out.into_iter().map(CanonicalForm::to_graph).collect()
}

/// All graphs on exactly `n` vertices, one per isomorphism class, in canonical order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0)];
    for _ in 0..n {
        level = extend_by_vertex(&level, |_| true);
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn class_counts_match_the_known_sequence() {
        // 1, 1, 2, 4, 11, 34, 156 graphs on 0..=6 vertices
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn relabelling_preserves_form() {
        let p = generators::petersen();
        let perm = [3, 7, 1, 9, 0, 2, 8, 5, 4, 6];
        let q = Graph::new(10, p.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        assert!(!isomorphic(
            &p,
            &generators::complete_multipartite(&[5, 5]).unwrap()
        ));
    }

    #[test]
    fn round_trips_through_form() {
        let c5 = generators::cycle(5);
        let form = canonical_form(&c5);
        assert!(isomorphic(&form.to_graph(), &c5));
    }
}
