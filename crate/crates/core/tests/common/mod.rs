//! Brute-force oracles used only by the integration tests. None of them
//! calls into the searches they are compared against.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use ispab::subdivision::SubdivisionWitness;
use ispab::Graph;

/// Adjacency as bitmasks; hosts in these tests have at most 64 vertices.
pub fn masks(g: &Graph) -> Vec<u64> {
    assert!(g.n() <= 64);
    g.vertices()
        .map(|v| g.neighbours(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

/// Does some vertex subset of `g` induce a subdivision of `h`?
///
/// Every subset `S` with `|E(G[S])| - |S| = |E(H)| - |V(H)|` is tried. Vertices
/// of degree other than 2 in `G[S]` must be branch vertices; the remaining
/// branch vertices are chosen among the degree-2 ones in every possible way.
/// Suppressing the non-branch vertices must give a simple graph isomorphic to `h`.
pub fn naive_contains_subdivision(h: &Graph, g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 20, "subset enumeration is exponential");
    let adj = masks(g);
    let excess = h.edge_count() as i64 - h.n() as i64;
    let hmasks = masks(h);
    for s in 0u64..1 << n {
        let size = s.count_ones() as usize;
        if size < h.n() {
            continue;
        }
        let edges: u32 = (0..n)
            .filter(|&v| s >> v & 1 == 1)
            .map(|v| (adj[v] & s).count_ones())
            .sum::<u32>()
            / 2;
        if edges as i64 - size as i64 != excess {
            continue;
        }
        if induces_subdivision(&adj, s, h, &hmasks) {
            return true;
        }
    }
    false
}

fn induces_subdivision(adj: &[u64], s: u64, h: &Graph, hmasks: &[u64]) -> bool {
    let members: Vec<usize> = (0..adj.len()).filter(|&v| s >> v & 1 == 1).collect();
    let deg = |v: usize| (adj[v] & s).count_ones() as usize;
    let forced: Vec<usize> = members.iter().copied().filter(|&v| deg(v) != 2).collect();
    let optional: Vec<usize> = members.iter().copied().filter(|&v| deg(v) == 2).collect();
    if forced.len() > h.n() {
        return false;
    }
    let extra = h.n() - forced.len();
    let mut chosen = Vec::new();
    choose(&optional, extra, 0, &mut chosen, &mut |pick| {
        let mut branch = forced.clone();
        branch.extend_from_slice(pick);
        branch.sort_unstable();
        suppressed_matches(adj, s, &branch, hmasks)
    })
}

fn choose(
    pool: &[usize],
    k: usize,
    from: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if cur.len() == k {
        return f(cur);
    }
    for i in from..pool.len() {
        if pool.len() - i < k - cur.len() {
            break;
        }
        cur.push(pool[i]);
        if choose(pool, k, i + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Walks from each branch vertex along degree-2 chains; rejects loops,
/// parallel edges and chains that never reach a branch vertex.
fn suppressed_matches(adj: &[u64], s: u64, branch: &[usize], hmasks: &[u64]) -> bool {
    let bset: u64 = branch.iter().fold(0, |m, &v| m | 1 << v);
    let index = |v: usize| branch.iter().position(|&b| b == v).expect("branch vertex");
    // a chain is keyed by its two (end, first step) pairs, smaller first
    let mut chains = BTreeSet::new();
    let mut visited = bset;
    for &b in branch {
        let mut nbrs = adj[b] & s;
        while nbrs != 0 {
            let first = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            let (mut prev, mut cur) = (b, first);
            while bset >> cur & 1 == 0 {
                visited |= 1 << cur;
                let next = adj[cur] & s & !(1 << prev);
                prev = cur;
                cur = next.trailing_zeros() as usize;
            }
            if cur == b {
                return false;
            }
            chains.insert(((b, first).min((cur, prev)), (b, first).max((cur, prev))));
        }
    }
    if visited != s {
        return false;
    }
    let mut reduced = vec![0u64; branch.len()];
    for ((u, _), (v, _)) in chains {
        let (i, j) = (index(u), index(v));
        if reduced[i] >> j & 1 == 1 {
            return false;
        }
        reduced[i] |= 1 << j;
        reduced[j] |= 1 << i;
    }
    isomorphic_masks(&reduced, hmasks)
}

/// Backtracking isomorphism test on adjacency masks, pruned by degree.
pub fn isomorphic_masks(a: &[u64], b: &[u64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let da: Vec<u32> = a.iter().map(|m| m.count_ones()).collect();
    let db: Vec<u32> = b.iter().map(|m| m.count_ones()).collect();
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut map = vec![usize::MAX; a.len()];
    let mut used = vec![false; b.len()];
    extend_iso(a, b, &da, &db, 0, &mut map, &mut used)
}

fn extend_iso(
    a: &[u64],
    b: &[u64],
    da: &[u32],
    db: &[u32],
    i: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == a.len() {
        return true;
    }
    for j in 0..b.len() {
        if used[j] || da[i] != db[j] {
            continue;
        }
        if (0..i).all(|k| (a[i] >> k & 1) == (b[j] >> map[k] & 1)) {
            map[i] = j;
            used[j] = true;
            if extend_iso(a, b, da, db, i + 1, map, used) {
                return true;
            }
            used[j] = false;
        }
    }
    map[i] = usize::MAX;
    false
}

/// Checks a witness from first principles: branch vertices distinct, one
/// path per pattern edge with the right ends, paths meeting only at shared
/// ends, and no host edge among the used vertices besides path edges.
pub fn check_witness(h: &Graph, g: &Graph, w: &SubdivisionWitness) -> Result<(), String> {
    if w.branch_map.len() != h.n() {
        return Err("branch map has the wrong length".into());
    }
    let branches: BTreeSet<usize> = w.branch_map.iter().copied().collect();
    if branches.len() != h.n() {
        return Err("branch vertices repeat".into());
    }
    let expected: BTreeSet<(usize, usize)> = h.edges().collect();
    let listed: BTreeSet<(usize, usize)> = w.paths.iter().map(|p| p.edge).collect();
    if expected != listed || w.paths.len() != expected.len() {
        return Err("paths do not match the pattern edges".into());
    }
    let mut used = branches.clone();
    let mut path_edges = BTreeSet::new();
    for p in &w.paths {
        let (u, v) = p.edge;
        if p.path.first() != Some(&w.branch_map[u]) || p.path.last() != Some(&w.branch_map[v]) {
            return Err(format!("path for {:?} has wrong ends", p.edge));
        }
        if p.path.len() < 2 {
            return Err("path too short".into());
        }
        for &x in &p.path[1..p.path.len() - 1] {
            if !used.insert(x) {
                return Err(format!("vertex {x} reused"));
            }
        }
        for e in p.path.windows(2) {
            if !g.has_edge(e[0], e[1]) {
                return Err(format!("{} {} not adjacent", e[0], e[1]));
            }
            path_edges.insert((e[0].min(e[1]), e[0].max(e[1])));
        }
    }
    let used: Vec<usize> = used.into_iter().collect();
    for (i, &x) in used.iter().enumerate() {
        for &y in &used[i + 1..] {
            if g.has_edge(x, y) && !path_edges.contains(&(x, y)) {
                return Err(format!("chord {x} {y}"));
            }
        }
    }
    Ok(())
}

pub fn brute_clique_number(g: &Graph) -> usize {
    let adj = masks(g);
    let mut best = 0;
    let all = if g.n() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n()) - 1
    };
    grow_clique(&adj, 0, all, &mut best);
    best
}

fn grow_clique(adj: &[u64], size: usize, cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    grow_clique(adj, size + 1, cand & adj[v], best);
    grow_clique(adj, size, cand & !(1 << v), best);
}

/// Smallest `k` admitting a proper `k`-colouring, by plain backtracking.
pub fn brute_chromatic(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let adj = masks(g);
    (1..=g.n())
        .find(|&k| colourable(&adj, k, 0, &mut vec![usize::MAX; g.n()], 0))
        .expect("n colours suffice")
}

fn colourable(adj: &[u64], k: usize, v: usize, colour: &mut Vec<usize>, used: usize) -> bool {
    if v == adj.len() {
        return true;
    }
    // symmetry: a new vertex may open at most one fresh colour
    for c in 0..k.min(used + 1) {
        if (0..v).all(|u| adj[v] >> u & 1 == 0 || colour[u] != c) {
            colour[v] = c;
            if colourable(adj, k, v + 1, colour, used.max(c + 1)) {
                return true;
            }
        }
    }
    colour[v] = usize::MAX;
    false
}

/// Connected after deleting `removed` (bitmask)? The empty graph counts as connected.
pub fn connected_without(adj: &[u64], removed: u64) -> bool {
    let n = adj.len();
    let alive: u64 = ((1u128 << n) - 1) as u64 & !removed;
    if alive == 0 {
        return true;
    }
    let start = alive.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        let mut next = adj[u] & alive & !seen;
        seen |= next;
        while next != 0 {
            queue.push_back(next.trailing_zeros() as usize);
            next &= next - 1;
        }
    }
    seen == alive
}

/// Complete with at least `k + 1` vertices, or not complete and no set of
/// at most `k - 1` vertices disconnects what remains.
pub fn brute_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let adj = masks(g);
    let complete = (0..n).all(|v| adj[v].count_ones() as usize == n - 1);
    if complete {
        return n > k;
    }
    for removed in 0u64..1 << n {
        if (removed.count_ones() as usize) < k && !connected_without(&adj, removed) {
            return false;
        }
    }
    true
}
