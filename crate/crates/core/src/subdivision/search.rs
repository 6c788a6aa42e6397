//! Backtracking search for induced subdivisions.
//!
//! Phase one maps pattern vertices to host vertices (highest pattern degree
//! first, host degree at least pattern degree, pattern non-edges mapped to
//! host non-edges). Phase two routes every pattern edge whose images are not
//! adjacent through an induced path, shortest length first, enforcing the
//! "no extra adjacency" condition as each interior vertex is placed.

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::subdivision::witness::{PathImage, SubdivisionWitness};

const UNREACHED: usize = usize::MAX;

pub(crate) struct Engine<'a> {
    h: &'a Graph,
    g: &'a Graph,
    order: Vec<usize>,
    /// Earlier member of the same twin class, whose image must be smaller.
    sym_prev: Vec<Option<usize>>,
    image: Vec<usize>,
    in_use: Vec<bool>,
    edges: Vec<(usize, usize)>,
    paths: Vec<Vec<usize>>,
    need: Vec<usize>,
    branch_adj: Vec<u64>,
    interior_adj: Vec<u32>,
}

impl<'a> Engine<'a> {
    /// `twin_classes` lists pattern vertices whose images may be taken in
    /// increasing order without losing solutions (classes of pairwise twins).
    pub(crate) fn new(h: &'a Graph, g: &'a Graph, twin_classes: &[Vec<usize>]) -> Self {
        assert!(h.n() <= 64, "pattern masks are 64-bit");
        let mut order: Vec<usize> = h.vertices().collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
        let mut sym_prev = vec![None; h.n()];
        for class in twin_classes {
            let mut members = class.clone();
            members.sort_unstable();
            for pair in members.windows(2) {
                sym_prev[pair[1]] = Some(pair[0]);
            }
        }
        // a twin class member must be placed after its predecessor
        let pos = |order: &[usize], v: usize| order.iter().position(|&x| x == v).expect("present");
        for v in h.vertices() {
            if let Some(p) = sym_prev[v] {
                debug_assert!(pos(&order, p) < pos(&order, v), "twins share a degree");
            }
        }
        Engine {
            h,
            g,
            order,
            sym_prev,
            image: vec![UNREACHED; h.n()],
            in_use: vec![false; g.n()],
            edges: h.edges().collect(),
            paths: Vec::new(),
            need: Vec::new(),
            branch_adj: vec![0; g.n()],
            interior_adj: vec![0; g.n()],
        }
    }

    pub(crate) fn run(mut self) -> Option<SubdivisionWitness> {
        if self.h.n() > self.g.n() {
            return None;
        }
        if !self.place(0) {
            return None;
        }
        let paths = self
            .edges
            .iter()
            .zip(&self.paths)
            .map(|(&edge, path)| PathImage {
                edge,
                path: path.clone(),
            })
            .collect();
        Some(SubdivisionWitness {
            branch_map: self.image,
            paths,
        })
    }

    fn place(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.start_routing();
        }
        let u = self.order[depth];
        let lo = self.sym_prev[u].map_or(0, |w| self.image[w] + 1);
        let need_degree = self.h.degree(u);
        for x in lo..self.g.n() {
            if self.in_use[x] || self.g.degree(x) < need_degree {
                continue;
            }
            let ok = self.order[..depth]
                .iter()
                .all(|&w| self.h.has_edge(u, w) || !self.g.has_edge(x, self.image[w]));
            if !ok {
                continue;
            }
            self.image[u] = x;
            self.in_use[x] = true;
            if self.place(depth + 1) {
                return true;
            }
            self.in_use[x] = false;
        }
        self.image[u] = UNREACHED;
        false
    }

    fn start_routing(&mut self) -> bool {
        self.paths = vec![Vec::new(); self.edges.len()];
        self.need.clear();
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            let (s, t) = (self.image[u], self.image[v]);
            if self.g.has_edge(s, t) {
                self.paths[i] = vec![s, t];
            } else {
                self.need.push(i);
            }
        }
        for x in self.g.vertices() {
            self.branch_adj[x] = 0;
        }
        for u in self.h.vertices() {
            for &x in self.g.neighbours(self.image[u]) {
                self.branch_adj[x] |= 1 << u;
            }
        }
        self.route(0)
    }

    fn allowed(&self, x: usize, mask: u64) -> bool {
        !self.in_use[x] && self.branch_adj[x] & !mask == 0
    }

    fn route(&mut self, k: usize) -> bool {
        if k == self.need.len() {
            return true;
        }
        let e = self.need[k];
        let (u, v) = self.edges[e];
        let (s, t) = (self.image[u], self.image[v]);
        let mask = (1u64 << u) | (1u64 << v);

        // distance to t through currently admissible interior vertices
        let mut dist = vec![UNREACHED; self.g.n()];
        let mut queue = VecDeque::new();
        let mut reachable = 0;
        for &x in self.g.neighbours(t) {
            if self.allowed(x, mask) && self.interior_adj[x] == 0 {
                dist[x] = 1;
                queue.push_back(x);
                reachable += 1;
            }
        }
        while let Some(x) = queue.pop_front() {
            for &y in self.g.neighbours(x) {
                if dist[y] == UNREACHED && self.allowed(y, mask) && self.interior_adj[y] == 0 {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                    reachable += 1;
                }
            }
        }
        if !self.g.neighbours(s).iter().any(|&x| dist[x] != UNREACHED) {
            return false;
        }
        let mut interior = Vec::new();
        for len in 1..=reachable {
            if self.extend(k, e, (s, t, mask), len, &dist, &mut interior) {
                return true;
            }
        }
        false
    }

    fn extend(
        &mut self,
        k: usize,
        e: usize,
        (s, t, mask): (usize, usize, u64),
        len: usize,
        dist: &[usize],
        interior: &mut Vec<usize>,
    ) -> bool {
        let placed = interior.len();
        if placed == len {
            let mut path = Vec::with_capacity(len + 2);
            path.push(s);
            path.extend_from_slice(interior);
            path.push(t);
            self.paths[e] = path;
            return self.route(k + 1);
        }
        let last = interior.last().copied().unwrap_or(s);
        let expected_adj = if placed == 0 { 0 } else { 1 };
        for i in 0..self.g.neighbours(last).len() {
            let w = self.g.neighbours(last)[i];
            if !self.allowed(w, mask) || dist[w] == UNREACHED || placed + dist[w] > len {
                continue;
            }
            if self.interior_adj[w] != expected_adj {
                continue;
            }
            if placed > 0 && self.g.has_edge(w, s) {
                continue;
            }
            if self.g.has_edge(w, t) != (placed + 1 == len) {
                continue;
            }
            self.in_use[w] = true;
            for &x in self.g.neighbours(w) {
                self.interior_adj[x] += 1;
            }
            interior.push(w);
            if self.extend(k, e, (s, t, mask), len, dist, interior) {
                return true;
            }
            interior.pop();
            for &x in self.g.neighbours(w) {
                self.interior_adj[x] -= 1;
            }
            self.in_use[w] = false;
        }
        false
    }
}
