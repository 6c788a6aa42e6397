//! Complete bipartite subgraphs and maximal complete multipartite templates.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::graph::Graph;
use crate::limits::Limits;
use crate::oracles::{clique_number, max_independent_set};
use crate::structure::{StructureError, Template};

/// The two sides `(U, W)` of a biclique.
type SidePair = (Vec<usize>, Vec<usize>);

/// Two disjoint `s`-sets, complete to each other (edges inside either side
/// are allowed). `U` is the lexicographically first `s`-set that admits a
/// partner; `W` is the first `s` vertices of its common neighbourhood.
pub fn find_kss(g: &Graph, s: usize, limits: &Limits) -> Result<Option<SidePair>, StructureError> {
    Limits::check("max_biclique_vertices", limits.max_biclique_vertices, g.n())?;
    if s == 0 {
        return Ok(Some((Vec::new(), Vec::new())));
    }
    let candidates: Vec<usize> = g.vertices().filter(|&v| g.degree(v) >= s).collect();
    let mut all = FixedBitSet::with_capacity(g.n());
    all.insert_range(..);
    let mut chosen = Vec::with_capacity(s);
    Ok(kss_extend(g, s, &candidates, 0, &all, &mut chosen))
}

fn kss_extend(
    g: &Graph,
    s: usize,
    candidates: &[usize],
    from: usize,
    common: &FixedBitSet,
    chosen: &mut Vec<usize>,
) -> Option<SidePair> {
    if chosen.len() == s {
        let w: Vec<usize> = common.ones().take(s).collect();
        return Some((chosen.clone(), w));
    }
    for idx in from..candidates.len() {
        if candidates.len() - idx < s - chosen.len() {
            break;
        }
        let v = candidates[idx];
        let mut next = common.clone();
        next.intersect_with(g.row(v));
        if next.count_ones(..) < s {
            continue;
        }
        chosen.push(v);
        if let Some(found) = kss_extend(g, s, candidates, idx + 1, &next, chosen) {
            return Some(found);
        }
        chosen.pop();
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum BicliqueOutcome {
    /// Independent `f`-subsets of each side; together an induced `K(f,f)`.
    Found { left: Vec<usize>, right: Vec<usize> },
    /// A side has independence number below `f`.
    Missing {
        left_independence: usize,
        right_independence: usize,
        needed: usize,
    },
}

/// Takes a maximum independent set inside each side and keeps its first `f`
/// vertices. The result is re-checked as an induced `K(f,f)`.
pub fn extract_induced_biclique(
    g: &Graph,
    u: &[usize],
    w: &[usize],
    f: usize,
    limits: &Limits,
) -> Result<BicliqueOutcome, StructureError> {
    for &x in u {
        g.check_vertex(x)?;
        if let Some(&y) = w.iter().find(|&&y| !g.has_edge(x, y)) {
            return Err(StructureError::NotComplete { u: x, v: y });
        }
    }
    let side = |set: &[usize]| -> Result<Vec<usize>, StructureError> {
        let sub = g.induced(set)?;
        Ok(sub.to_host(&max_independent_set(&sub.graph, limits)?))
    };
    let (left, right) = (side(u)?, side(w)?);
    if left.len() < f || right.len() < f {
        return Ok(BicliqueOutcome::Missing {
            left_independence: left.len(),
            right_independence: right.len(),
            needed: f,
        });
    }
    let (left, right) = (left[..f].to_vec(), right[..f].to_vec());
    Template::check(g, &[left.clone(), right.clone()])?;
    Ok(BicliqueOutcome::Found { left, right })
}

/// Part size forced by the size law for `r` parts, if positive.
pub(crate) fn part_size(f: usize, a: usize, r: usize) -> Option<usize> {
    let cut = a * r.saturating_sub(2);
    (f > cut).then(|| f - cut)
}

/// The largest `r >= 2` for which `g` has an induced complete `r`-partite
/// subgraph whose parts all have exactly `f - a(r-2)` vertices. Every `r`
/// up to `ω(g)` is searched exhaustively, since existence is not monotone in `r`.
pub fn max_template(
    g: &Graph,
    f: usize,
    a: usize,
    limits: &Limits,
) -> Result<Template, StructureError> {
    Limits::check("max_biclique_vertices", limits.max_biclique_vertices, g.n())?;
    if f < a + 2 {
        return Err(StructureError::Parameter(format!(
            "f = {f} must be at least a + 2 = {}",
            a + 2
        )));
    }
    let omega = clique_number(g, limits)?.size;
    let mut best = None;
    let mut r = 2;
    while r <= omega {
        let Some(p) = part_size(f, a, r) else { break };
        if let Some(parts) = multipartite_search(g, r, p) {
            best = Some(parts);
        }
        r += 1;
    }
    match best {
        Some(parts) => Ok(Template::new(g, parts)?),
        None => Err(StructureError::NoTemplate { f, a }),
    }
}

/// First (lexicographic by part minima) induced complete `r`-partite subgraph
/// with all parts of size `p`.
pub(crate) fn multipartite_search(g: &Graph, r: usize, p: usize) -> Option<Vec<Vec<usize>>> {
    let mut pool = FixedBitSet::with_capacity(g.n());
    pool.insert_range(..);
    let mut parts = Vec::with_capacity(r);
    search_parts(g, r, p, &pool, 0, &mut parts).then_some(parts)
}

/// `pool`: vertices complete to every chosen part. Each new part's minimum
/// exceeds the previous part's minimum.
fn search_parts(
    g: &Graph,
    r: usize,
    p: usize,
    pool: &FixedBitSet,
    min_start: usize,
    parts: &mut Vec<Vec<usize>>,
) -> bool {
    if parts.len() == r {
        return true;
    }
    if pool.count_ones(..) < (r - parts.len()) * p {
        return false;
    }
    let remaining = r - parts.len();
    let starts: Vec<usize> = pool.ones().filter(|&v| v >= min_start).collect();
    for &first in &starts {
        // every later part has a larger minimum, so enough pool must lie above `first`
        let mut part = vec![first];
        let mut options = pool.clone();
        options.difference_with(g.row(first));
        options.set_range(..first + 1, false);
        if remaining > 1
            && pool.ones().filter(|&v| v > first).count() < (remaining - 1) * p + (p - 1)
        {
            continue;
        }
        if grow_part(g, r, p, pool, &mut options, &mut part, parts) {
            return true;
        }
    }
    false
}

/// Extends an independent `part` from `options` (vertices above the current
/// maximum, non-adjacent to the part); on completion recurses on the next part.
fn grow_part(
    g: &Graph,
    r: usize,
    p: usize,
    pool: &FixedBitSet,
    options: &mut FixedBitSet,
    part: &mut Vec<usize>,
    parts: &mut Vec<Vec<usize>>,
) -> bool {
    if part.len() == p {
        let mut next_pool = pool.clone();
        for &v in part.iter() {
            next_pool.intersect_with(g.row(v));
        }
        parts.push(part.clone());
        if search_parts(g, r, p, &next_pool, part[0] + 1, parts) {
            return true;
        }
        parts.pop();
        return false;
    }
    if options.count_ones(..) < p - part.len() {
        return false;
    }
    let choices: Vec<usize> = options.ones().collect();
    for v in choices {
        let mut narrowed = options.clone();
        narrowed.difference_with(g.row(v));
        narrowed.set_range(..v + 1, false);
        part.push(v);
        if grow_part(g, r, p, pool, &mut narrowed, part, parts) {
            return true;
        }
        part.pop();
    }
    false
}
