//! Maximum clique by branch and bound with greedy-colouring bounds.

use serde::Serialize;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clique {
    pub size: usize,
    /// Sorted witness.
    pub vertices: Vec<usize>,
}

/// Greedy sequential colouring of `cands` (in order). Returns the vertices
/// regrouped by colour class and, per position, the class number (1-based).
fn colour_sort(g: &Graph, cands: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cands {
        match classes
            .iter_mut()
            .find(|c| c.iter().all(|&w| !g.has_edge(v, w)))
        {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(cands.len());
    let mut bounds = Vec::with_capacity(cands.len());
    for (k, class) in classes.into_iter().enumerate() {
        for v in class {
            order.push(v);
            bounds.push(k + 1);
        }
    }
    (order, bounds)
}

fn expand(g: &Graph, current: &mut Vec<usize>, cands: &[usize], best: &mut Vec<usize>) {
    let (order, bounds) = colour_sort(g, cands);
    for k in (0..order.len()).rev() {
        if current.len() + bounds[k] <= best.len() {
            return;
        }
        let v = order[k];
        current.push(v);
        let next: Vec<usize> = order[..k]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(v, w))
            .collect();
        if next.is_empty() {
            if current.len() > best.len() {
                best.clone_from(current);
            }
        } else {
            expand(g, current, &next, best);
        }
        current.pop();
    }
}

/// A maximum clique of `g` (empty for the empty graph). Unguarded.
pub fn max_clique(g: &Graph) -> Clique {
    let mut cands: Vec<usize> = g.vertices().collect();
    cands.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best = Vec::new();
    expand(g, &mut Vec::new(), &cands, &mut best);
    best.sort_unstable();
    Clique {
        size: best.len(),
        vertices: best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn brute_force(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                g.is_clique(&set)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn named_graphs() {
        assert_eq!(max_clique(&generators::complete(5)).size, 5);
        assert_eq!(max_clique(&generators::cycle(5)).size, 2);
        assert_eq!(max_clique(&Graph::empty(0)).size, 0);
        assert_eq!(max_clique(&Graph::empty(3)).size, 1);
        let m = generators::complete_multipartite(&[3, 3, 3]).unwrap();
        assert_eq!(brute_force(&m), 3);
        assert_eq!(max_clique(&m).size, 3);
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        for seed in 0..200 {
            let g = generators::random(10, 0.2 + (seed % 7) as f64 * 0.1, seed).unwrap();
            let c = max_clique(&g);
            assert!(g.is_clique(&c.vertices));
            assert_eq!(c.size, brute_force(&g), "seed {seed}");
        }
    }
}
