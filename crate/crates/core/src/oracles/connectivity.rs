//! Vertex connectivity via unit-capacity max-flow on the split graph (Menger).
//!
//! A graph is `k`-connected when it is complete with at least `k + 1`
//! vertices, or non-complete and every deletion of at most `k - 1` vertices
//! leaves it connected.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::Graph;
use crate::limits::{GuardExceeded, Limits};
use crate::oracles::colouring::chromatic_unguarded;

struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Edmonds-Karp; returns the flow value, stopping early at `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.adj[u] {
                    let w = self.head[e];
                    if self.cap[e] > 0 && !seen[w] {
                        seen[w] = true;
                        via[w] = e;
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.head[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let w = self.head[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Minimum `s`-`t` vertex separator for non-adjacent `s != t`, sorted.
pub fn local_cut(g: &Graph, s: usize, t: usize) -> Vec<usize> {
    local_cut_bounded(g, s, t, u32::MAX).1
}

fn local_cut_bounded(g: &Graph, s: usize, t: usize, limit: u32) -> (u32, Vec<usize>) {
    debug_assert!(s != t && !g.has_edge(s, t));
    let n = g.n();
    let big = n as u32 + 1;
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, c);
    }
    for (u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, big);
        net.add_arc(2 * v + 1, 2 * u, big);
    }
    let flow = net.max_flow(2 * s + 1, 2 * t, limit);
    if flow >= limit {
        return (flow, Vec::new());
    }
    let side = net.reachable(2 * s + 1);
    let cut = (0..n)
        .filter(|&v| v != s && v != t && side[2 * v] && !side[2 * v + 1])
        .collect();
    (flow, cut)
}

/// A minimum vertex cut of a non-complete graph (empty when disconnected);
/// `None` for complete graphs. Ties go to the lexicographically first pair.
pub fn min_vertex_cut(g: &Graph) -> Option<Vec<usize>> {
    if g.is_complete() {
        return None;
    }
    let mut best: Option<Vec<usize>> = None;
    for s in g.vertices() {
        for t in s + 1..g.n() {
            if g.has_edge(s, t) {
                continue;
            }
            let limit = best.as_ref().map_or(u32::MAX, |b| b.len() as u32);
            let (flow, cut) = local_cut_bounded(g, s, t, limit);
            if flow < limit {
                best = Some(cut);
                if flow == 0 {
                    return best;
                }
            }
        }
    }
    best
}

/// Largest `k` with `is_k_connected(g, k)`; `n - 1` for `K_n`, and 0 for the null graph.
pub fn vertex_connectivity(g: &Graph) -> usize {
    match min_vertex_cut(g) {
        None => g.n().saturating_sub(1),
        Some(cut) => cut.len(),
    }
}

pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.is_complete() {
        g.n() > k
    } else {
        vertex_connectivity(g) >= k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchStep {
    pub vertices: Vec<usize>,
    pub chromatic: usize,
    pub connectivity: usize,
    /// Separator used to split this stage, if one was taken.
    pub cut: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum KConnectedOutcome {
    Found {
        vertices: Vec<usize>,
        connectivity: usize,
        chromatic: usize,
        trail: Vec<SearchStep>,
    },
    Exhausted {
        reason: String,
        trail: Vec<SearchStep>,
    },
}

/// Searches for an induced subgraph that is `k`-connected with chromatic number at least `k`.
///
/// Recurses along minimum cuts into the side (component plus cut) of
/// largest chromatic number; returns `Exhausted` when every side drops below `k`.
pub fn find_k_connected_chromatic(
    g: &Graph,
    k: usize,
    limits: &Limits,
) -> Result<KConnectedOutcome, GuardExceeded> {
    Limits::check(
        "max_colouring_vertices",
        limits.max_colouring_vertices,
        g.n(),
    )?;
    let mut current: Vec<usize> = g.vertices().collect();
    let mut trail = Vec::new();
    loop {
        let sub = g.induced(&current).expect("valid ids");
        let chi = chromatic_unguarded(&sub.graph).colours_used;
        let kappa = vertex_connectivity(&sub.graph);
        if chi < k {
            trail.push(SearchStep {
                vertices: current.clone(),
                chromatic: chi,
                connectivity: kappa,
                cut: None,
            });
            return Ok(KConnectedOutcome::Exhausted {
                reason: format!("chromatic number {chi} < {k}"),
                trail,
            });
        }
        if is_k_connected(&sub.graph, k) {
            return Ok(KConnectedOutcome::Found {
                vertices: current,
                connectivity: kappa,
                chromatic: chi,
                trail,
            });
        }
        let Some(cut) = min_vertex_cut(&sub.graph) else {
            trail.push(SearchStep {
                vertices: current.clone(),
                chromatic: chi,
                connectivity: kappa,
                cut: None,
            });
            return Ok(KConnectedOutcome::Exhausted {
                reason: format!(
                    "complete graph on {} vertices is not {k}-connected",
                    current.len()
                ),
                trail,
            });
        };
        let rest = sub.graph.without(&cut);
        let mut best: Option<(usize, Vec<usize>)> = None;
        for comp in rest.graph.components() {
            let mut side: Vec<usize> = comp.iter().map(|&v| rest.map[v]).collect();
            side.extend(cut.iter().copied());
            side.sort_unstable();
            let side_graph = sub.graph.induced(&side).expect("valid ids");
            let side_chi = chromatic_unguarded(&side_graph.graph).colours_used;
            if best.as_ref().is_none_or(|(c, _)| side_chi > *c) {
                best = Some((side_chi, side));
            }
        }
        trail.push(SearchStep {
            vertices: current.clone(),
            chromatic: chi,
            connectivity: kappa,
            cut: Some(sub.to_host(&cut)),
        });
        let (side_chi, side) = best.expect("a cut leaves at least two components");
        if side_chi < k {
            return Ok(KConnectedOutcome::Exhausted {
                reason: format!("every side of the cut has chromatic number below {k}"),
                trail,
            });
        }
        current = sub.to_host(&side);
    }
}
