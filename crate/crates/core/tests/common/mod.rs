//! Brute-force oracles and random instance builders shared by the
//! integration tests. Nothing here calls the library's algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lcol::{Color, Graph, ListAssignment, Vertex};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits.get(i).copied().unwrap_or(false) {
                g.insert_edge(u, v);
            }
            i += 1;
        }
    }
    g
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Component count of `g` restricted to `alive`, by repeated DFS.
pub fn count_components(g: &Graph, alive: &[bool]) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        if !alive[s] || seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

pub fn brute_cut_vertices(g: &Graph) -> BTreeSet<Vertex> {
    let all = vec![true; g.n()];
    let base = count_components(g, &all);
    (0..g.n())
        .filter(|&v| {
            let mut alive = all.clone();
            alive[v] = false;
            // An isolated vertex is not a cut vertex.
            count_components(g, &alive) > base - usize::from(g.degree(v) == 0)
        })
        .collect()
}

/// Smallest vertex set whose removal leaves a disconnected graph, or
/// `n - 1` for complete graphs.
pub fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n.saturating_sub(1);
    }
    for size in 0..n {
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != size {
                continue;
            }
            let alive: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 0).collect();
            if count_components(g, &alive) > 1 {
                return size;
            }
        }
    }
    n - 1
}

/// Floyd-Warshall distances, `usize::MAX` when unreachable.
pub fn all_pairs(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    for row in &mut d {
        for x in row.iter_mut() {
            if *x >= inf {
                *x = usize::MAX;
            }
        }
    }
    d
}

/// Minimum distance between distinct components of `g[set]`, 0 if there is
/// at most one or none of them reach each other.
pub fn brute_set_distance(g: &Graph, set: &[Vertex]) -> usize {
    let mut alive = vec![false; g.n()];
    for &v in set {
        alive[v] = true;
    }
    // Label components of g[set] by flood fill.
    let mut label = vec![usize::MAX; g.n()];
    let mut next = 0;
    for &s in set {
        if label[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        label[s] = next;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if alive[w] && label[w] == usize::MAX {
                    label[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    if next <= 1 {
        return 0;
    }
    let d = all_pairs(g);
    let mut best = usize::MAX;
    for &u in set {
        for &v in set {
            if label[u] != label[v] {
                best = best.min(d[u][v]);
            }
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Exhaustive list coloring; returns a coloring if one exists.
pub fn brute_color(g: &Graph, lists: &ListAssignment) -> Option<Vec<Color>> {
    let n = g.n();
    let opts: Vec<Vec<Color>> = (0..n).map(|v| lists.list(v).iter().copied().collect()).collect();
    let adj = adjacency(g);
    let mut cur: Vec<Color> = Vec::with_capacity(n);
    fn rec(i: usize, opts: &[Vec<Color>], adj: &[Vec<bool>], cur: &mut Vec<Color>) -> bool {
        if i == opts.len() {
            return true;
        }
        for &c in &opts[i] {
            if (0..i).all(|j| !adj[i][j] || cur[j] != c) {
                cur.push(c);
                if rec(i + 1, opts, adj, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    rec(0, &opts, &adj, &mut cur).then_some(cur)
}

/// K5 minor by trying every labeling of vertices with branch sets 0..5
/// (5 = unused): five connected, pairwise adjacent sets.
pub fn brute_k5_minor(g: &Graph) -> bool {
    let n = g.n();
    if n < 5 || g.m() < 10 {
        return false;
    }
    let adj = adjacency(g);
    let mut label = vec![5u8; n];
    let total = 6usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let mut counts = [0usize; 6];
        for v in 0..n {
            label[v] = (c % 6) as u8;
            counts[label[v] as usize] += 1;
            c /= 6;
        }
        if counts[..5].contains(&0) {
            continue;
        }
        // Canonical order of first appearance prunes symmetric labelings.
        let mut first = [usize::MAX; 5];
        for v in (0..n).rev() {
            if label[v] < 5 {
                first[label[v] as usize] = v;
            }
        }
        if first.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let connected = (0..5u8).all(|b| {
            let alive: Vec<bool> = (0..n).map(|v| label[v] == b).collect();
            count_components(g, &alive) == 1
        });
        if !connected {
            continue;
        }
        let mut touch = [[false; 5]; 5];
        for u in 0..n {
            for v in 0..n {
                if adj[u][v] && label[u] < 5 && label[v] < 5 {
                    touch[label[u] as usize][label[v] as usize] = true;
                }
            }
        }
        if (0..5).all(|a| (0..5).all(|b| a == b || touch[a][b])) {
            return true;
        }
    }
    false
}

/// A random connected Gallai tree on at most `max_n` vertices, built by
/// gluing cliques and odd cycles at existing vertices. Also returns the
/// blocks.
pub fn random_gallai_tree(rng: &mut StdRng, max_n: usize) -> (Graph, Vec<Vec<Vertex>>) {
    let mut g = Graph::new(1);
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let target = rng.gen_range(1..=max_n);
    while g.n() < target {
        let room = target - g.n();
        let at = rng.gen_range(0..g.n());
        let cycle = rng.gen_bool(0.3) && room >= 4;
        let new = if cycle {
            let len = [5, 7, 9].into_iter().filter(|&l| l - 1 <= room).collect::<Vec<_>>();
            *len.choose(rng).unwrap() - 1
        } else {
            rng.gen_range(1..=room.min(4))
        };
        let mut verts = vec![at];
        for _ in 0..new {
            verts.push(g.add_vertex());
        }
        if cycle {
            for i in 0..verts.len() {
                g.insert_edge(verts[i], verts[(i + 1) % verts.len()]);
            }
        } else {
            for i in 0..verts.len() {
                for j in i + 1..verts.len() {
                    g.insert_edge(verts[i], verts[j]);
                }
            }
        }
        blocks.push(verts);
    }
    (g, blocks)
}

/// Degree-sized lists for a Gallai tree: either the block-wise disjoint
/// pattern (each block gets fresh colors, `|B| - 1` for cliques and 2 for
/// cycles), optionally with one color swapped, or random lists from a small
/// palette.
pub fn gallai_lists(rng: &mut StdRng, g: &Graph, blocks: &[Vec<Vertex>]) -> ListAssignment {
    let n = g.n();
    let mut lists: Vec<BTreeSet<Color>> = vec![BTreeSet::new(); n];
    if n > 1 && rng.gen_bool(0.6) {
        let mut next: Color = 1;
        for b in blocks {
            let clique = b.iter().all(|&u| b.iter().all(|&v| u == v || g.has_edge(u, v)));
            let size = if clique { b.len() - 1 } else { 2 };
            let colors: Vec<Color> = (next..next + size as Color).collect();
            next += size as Color;
            for &v in b {
                lists[v].extend(colors.iter().copied());
            }
        }
        if rng.gen_bool(0.4) {
            let v = rng.gen_range(0..n);
            if let Some(&c) = lists[v].iter().next() {
                lists[v].remove(&c);
                let mut fresh = rng.gen_range(1..=next + 1);
                while lists[v].contains(&fresh) {
                    fresh += 1;
                }
                lists[v].insert(fresh);
            }
        }
    } else {
        let palette = g.max_degree().max(1) as Color + 1;
        for v in 0..n {
            let mut all: Vec<Color> = (1..=palette).collect();
            all.shuffle(rng);
            lists[v] = all[..g.degree(v).max(1)].iter().copied().collect();
        }
    }
    ListAssignment::from_sets_unchecked(lists)
}

/// A random connected graph on `n` vertices: random tree plus extra edges.
pub fn random_connected(rng: &mut StdRng, n: usize, extra: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.insert_edge(u, v);
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            g.insert_edge(u, v);
        }
    }
    g
}

/// Random lists of size `d(v)` (at least 1) from `1..=palette`.
pub fn degree_lists(rng: &mut StdRng, g: &Graph, palette: Color) -> ListAssignment {
    let lists = (0..g.n())
        .map(|v| {
            let mut all: Vec<Color> = (1..=palette).collect();
            all.shuffle(rng);
            all[..g.degree(v).max(1).min(palette as usize)].iter().copied().collect()
        })
        .collect();
    ListAssignment::from_sets_unchecked(lists)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Exhaustive coloring that enumerates proper colorings of `sep` and then
/// brute-forces each component of the rest separately with reduced lists.
pub fn brute_color_via_separator(g: &Graph, lists: &ListAssignment, sep: &[Vertex]) -> bool {
    let n = g.n();
    let mut in_sep = vec![false; n];
    for &v in sep {
        in_sep[v] = true;
    }
    let rest: Vec<bool> = (0..n).map(|v| !in_sep[v]).collect();
    let mut comps: Vec<Vec<Vertex>> = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if !rest[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in g.neighbors(comp[i]) {
                if rest[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comps.push(comp);
    }
    let mut colors: Vec<Option<Color>> = vec![None; n];
    fn rec(
        i: usize,
        sep: &[Vertex],
        g: &Graph,
        lists: &ListAssignment,
        comps: &[Vec<Vertex>],
        colors: &mut Vec<Option<Color>>,
    ) -> bool {
        if i == sep.len() {
            return comps.iter().all(|comp| {
                let (h, map) = g.induced(comp);
                let reduced = map
                    .iter()
                    .map(|&v| {
                        let mut l = lists.list(v).clone();
                        for &w in g.neighbors(v) {
                            if let Some(c) = colors[w] {
                                l.remove(&c);
                            }
                        }
                        l
                    })
                    .collect::<Vec<_>>();
                if reduced.iter().any(|l| l.is_empty()) {
                    return false;
                }
                brute_color(&h, &ListAssignment::from_sets_unchecked(reduced)).is_some()
            });
        }
        let v = sep[i];
        for &c in lists.list(v) {
            if g.neighbors(v).iter().all(|&w| colors[w] != Some(c)) {
                colors[v] = Some(c);
                if rec(i + 1, sep, g, lists, comps, colors) {
                    return true;
                }
                colors[v] = None;
            }
        }
        false
    }
    rec(0, sep, g, lists, &comps, &mut colors)
}

/// Whether `g` stays connected after deleting any two vertices.
pub fn survives_two_deletions(g: &Graph) -> bool {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            let mut alive = vec![true; n];
            alive[a] = false;
            alive[b] = false;
            if count_components(g, &alive) > 1 {
                return false;
            }
        }
    }
    n >= 4
}
