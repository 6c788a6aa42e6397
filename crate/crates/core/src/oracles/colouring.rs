//! Exact chromatic number: clique lower bound, DSATUR upper bound, and a
//! DSATUR-ordered backtracking search for each intermediate `k`.

use serde::Serialize;

use crate::graph::Graph;
use crate::limits::{GuardExceeded, Limits};
use crate::oracles::clique::max_clique;

/// A proper colouring. `colour[v]` is in `0..colours_used` and every value is used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColouringCertificate {
    pub colour: Vec<usize>,
    pub colours_used: usize,
}

impl ColouringCertificate {
    /// Renumbers colours by first appearance so the used set is `0..k`.
    pub fn from_colours(raw: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let colour: Vec<usize> = raw
            .iter()
            .map(|c| {
                let next = remap.len();
                *remap.entry(*c).or_insert(next)
            })
            .collect();
        ColouringCertificate {
            colours_used: remap.len(),
            colour,
        }
    }

    /// Checks properness and the `colours_used` count; names the first defect.
    pub fn verify(&self, g: &Graph) -> Result<(), String> {
        if self.colour.len() != g.n() {
            return Err(format!(
                "certificate covers {} vertices, graph has {}",
                self.colour.len(),
                g.n()
            ));
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| self.colour[u] == self.colour[v]) {
            return Err(format!("edge ({u}, {v}) is monochromatic"));
        }
        let distinct: std::collections::BTreeSet<_> = self.colour.iter().collect();
        if distinct.len() != self.colours_used {
            return Err(format!(
                "colours_used = {} but {} colours appear",
                self.colours_used,
                distinct.len()
            ));
        }
        Ok(())
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<Option<usize>>,
    // forbid[v * k + c] = number of neighbours of v coloured c
    forbid: Vec<u32>,
    saturation: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        Search {
            g,
            k,
            colour: vec![None; g.n()],
            forbid: vec![0; g.n() * k],
            saturation: vec![0; g.n()],
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = Some(c);
        for &w in self.g.neighbours(v) {
            let slot = &mut self.forbid[w * self.k + c];
            if *slot == 0 {
                self.saturation[w] += 1;
            }
            *slot += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = None;
        for &w in self.g.neighbours(v) {
            let slot = &mut self.forbid[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.colour[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.g.degree(v), std::cmp::Reverse(v)))
    }

    fn solve(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        if self.saturation[v] >= self.k {
            return false;
        }
        for c in 0..self.k.min(used + 1) {
            if self.forbid[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.solve(used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

fn dsatur_greedy(g: &Graph) -> Vec<usize> {
    let k = g.n().max(1);
    let mut s = Search::new(g, k);
    while let Some(v) = s.pick() {
        let c = (0..k)
            .find(|&c| s.forbid[v * k + c] == 0)
            .expect("n colours always suffice");
        s.assign(v, c);
    }
    s.colour
        .into_iter()
        .map(|c| c.expect("all assigned"))
        .collect()
}

/// Minimum colouring of a connected or disconnected graph, unguarded.
fn exact_colouring(g: &Graph) -> Vec<usize> {
    if g.n() == 0 {
        return Vec::new();
    }
    let greedy = dsatur_greedy(g);
    let upper = greedy.iter().max().map_or(0, |&c| c + 1);
    let clique = max_clique(g);
    for k in clique.size..upper {
        let mut s = Search::new(g, k);
        // clique vertices take distinct fixed colours
        for (c, &v) in clique.vertices.iter().enumerate() {
            s.assign(v, c);
        }
        if s.solve(clique.size) {
            return s.colour.into_iter().map(|c| c.expect("solved")).collect();
        }
    }
    greedy
}

/// Exact chromatic number with a certificate; each component is solved separately.
pub fn chromatic_number(g: &Graph, limits: &Limits) -> Result<ColouringCertificate, GuardExceeded> {
    Limits::check(
        "max_colouring_vertices",
        limits.max_colouring_vertices,
        g.n(),
    )?;
    Ok(chromatic_unguarded(g))
}

pub(crate) fn chromatic_unguarded(g: &Graph) -> ColouringCertificate {
    let mut colour = vec![0; g.n()];
    for comp in g.components() {
        let sub = g.induced(&comp).expect("component ids valid");
        let local = exact_colouring(&sub.graph);
        for (i, c) in local.into_iter().enumerate() {
            colour[sub.map[i]] = c;
        }
    }
    ColouringCertificate::from_colours(&colour)
}
