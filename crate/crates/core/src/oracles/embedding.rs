//! Induced subgraph embedding by plain backtracking.

use crate::graph::Graph;
use crate::limits::{GuardExceeded, Limits};

/// Pattern vertices in an order where each vertex (after the first of its
/// component) has an already-placed neighbour.
fn placement_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut placed = vec![false; h.n()];
    let mut roots: Vec<usize> = h.vertices().collect();
    roots.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    for r in roots {
        if placed[r] {
            continue;
        }
        placed[r] = true;
        order.push(r);
        let mut i = order.len() - 1;
        while i < order.len() {
            let u = order[i];
            for &w in h.neighbours(u) {
                if !placed[w] {
                    placed[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

struct Embed<'a> {
    h: &'a Graph,
    g: &'a Graph,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Embed<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let u = self.order[depth];
        let anchor = self.order[..depth]
            .iter()
            .copied()
            .find(|&w| self.h.has_edge(u, w));
        let candidates: Vec<usize> = match anchor {
            Some(w) => self.g.neighbours(self.image[w]).to_vec(),
            None => self.g.vertices().collect(),
        };
        for x in candidates {
            if self.used[x] || self.g.degree(x) < self.h.degree(u) {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&w| self.h.has_edge(u, w) == self.g.has_edge(x, self.image[w]));
            if !consistent {
                continue;
            }
            self.image[u] = x;
            self.used[x] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[x] = false;
        }
        false
    }
}

/// An injective map `V(h) → V(g)` preserving adjacency and non-adjacency, if any.
pub fn induced_embedding(
    h: &Graph,
    g: &Graph,
    limits: &Limits,
) -> Result<Option<Vec<usize>>, GuardExceeded> {
    Limits::check("max_embedding_pattern", limits.max_embedding_pattern, h.n())?;
    if h.n() > g.n() {
        return Ok(None);
    }
    let mut e = Embed {
        h,
        g,
        order: placement_order(h),
        image: vec![usize::MAX; h.n()],
        used: vec![false; g.n()],
    };
    Ok(e.extend(0).then_some(e.image))
}
