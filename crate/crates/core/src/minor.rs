//! Exact K5-minor containment by contraction branching.
//!
//! A graph has a K5 minor iff some sequence of edge contractions produces a
//! graph containing K5 as a subgraph. The search works on a contracted graph
//! whose vertices carry branch sets (disjoint connected sets of original
//! vertices) and branches on an edge: contract it, or freeze it (never
//! contract it in this subtree). Freezing is only a restriction, so any step
//! may drop frozen marks without losing completeness. Before each branch:
//!
//! - vertices of degree at most 1 are deleted; a degree-2 vertex is merged
//!   into a neighbor over an unfrozen edge, or deleted if both are frozen;
//! - a vertex of degree at most 3 whose edges are all frozen is deleted;
//! - fewer than five vertices or ten edges means no K5 minor;
//! - a disconnected graph or one with a cut vertex is split, since K5 is
//!   2-connected;
//! - at a 2-cut `{a, b}` each side is searched separately with all other
//!   sides contracted into `a`, since K5 is 3-connected.
//!
//! Graphs already shown K5-free are memoized.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::structure::is_planar;

/// Default node budget used by [`has_k5_minor`].
pub const DEFAULT_MINOR_NODES: u64 = 2_000_000;

/// Largest graph accepted by the search.
pub const MAX_MINOR_VERTICES: usize = 128;

type Mask = u128;

/// Five pairwise disjoint, connected, pairwise adjacent vertex sets.
pub type K5Witness = [Vec<Vertex>; 5];

#[derive(Clone)]
struct Minor {
    adj: Vec<Mask>,
    /// Frozen edges, symmetric, subset of `adj`.
    frz: Vec<Mask>,
    alive: Mask,
    sets: Vec<Vec<Vertex>>,
}

impl Minor {
    fn nbrs(&self, v: usize) -> Mask {
        self.adj[v] & self.alive
    }

    fn deg(&self, v: usize) -> u32 {
        self.nbrs(v).count_ones()
    }

    fn free_nbrs(&self, v: usize) -> Mask {
        self.nbrs(v) & !self.frz[v]
    }

    fn remove(&mut self, v: usize) {
        self.alive &= !(1 << v);
    }

    /// Merge `v` into `u`. A merged edge stays frozen only if it was frozen
    /// on both sides.
    fn contract(&mut self, u: usize, v: usize) {
        let nu = self.nbrs(u) & !(1 << v);
        let nv = self.nbrs(v) & !(1 << u);
        let fu = self.frz[u] & nu;
        let fv = self.frz[v] & nv;
        let frozen = (fu & fv) | (fu & !nv) | (fv & !nu);
        self.adj[u] = nu | nv;
        self.frz[u] = frozen;
        for w in bits(nu | nv) {
            self.adj[w] |= 1 << u;
            if frozen >> w & 1 == 1 {
                self.frz[w] |= 1 << u;
            } else {
                self.frz[w] &= !(1 << u);
            }
        }
        let moved = std::mem::take(&mut self.sets[v]);
        self.sets[u].extend(moved);
        self.remove(v);
    }

    fn freeze(&mut self, u: usize, v: usize) {
        self.frz[u] |= 1 << v;
        self.frz[v] |= 1 << u;
    }

    fn restrict(&self, alive: Mask) -> Minor {
        Minor {
            adj: self.adj.clone(),
            frz: vec![0; self.frz.len()],
            alive,
            sets: self.sets.clone(),
        }
    }

    /// Connected components of the alive vertices outside `removed`.
    fn components(&self, removed: Mask) -> Vec<Mask> {
        let mut left = self.alive & !removed;
        let mut out = Vec::new();
        while left != 0 {
            let s = left.trailing_zeros() as usize;
            let mut comp: Mask = 1 << s;
            let mut frontier: Mask = 1 << s;
            while frontier != 0 {
                let mut next = 0;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= left & !comp;
                comp |= next;
                frontier = next;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    fn key(&self) -> Vec<Mask> {
        let mut k = vec![self.alive];
        for v in bits(self.alive) {
            k.push(self.nbrs(v));
            k.push(self.frz[v] & self.alive);
        }
        k
    }
}

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

struct Search {
    nodes: u64,
    max_nodes: u64,
    free: HashSet<Vec<Mask>>,
}

impl Search {
    fn run(&mut self, mut m: Minor) -> Result<Option<K5Witness>> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::BudgetExceeded(self.max_nodes));
        }
        reduce(&mut m);
        let n = m.alive.count_ones();
        let edges: u32 = bits(m.alive).map(|v| m.deg(v)).sum::<u32>() / 2;
        if n < 5 || edges < 10 {
            return Ok(None);
        }
        if let Some(w) = find_k5_subgraph(&m) {
            return Ok(Some(w));
        }
        let key = m.key();
        if self.free.contains(&key) {
            return Ok(None);
        }
        let found = self.split_or_branch(&m)?;
        if found.is_none() {
            self.free.insert(key);
        }
        Ok(found)
    }

    fn split_or_branch(&mut self, m: &Minor) -> Result<Option<K5Witness>> {
        let comps = m.components(0);
        if comps.len() > 1 {
            for c in comps {
                if let Some(w) = self.run(m.restrict(c))? {
                    return Ok(Some(w));
                }
            }
            return Ok(None);
        }
        let verts: Vec<usize> = bits(m.alive).collect();
        for &a in &verts {
            let parts = m.components(1 << a);
            if parts.len() > 1 {
                for p in parts {
                    if let Some(w) = self.run(m.restrict(p | 1 << a))? {
                        return Ok(Some(w));
                    }
                }
                return Ok(None);
            }
        }
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                let parts = m.components(1 << a | 1 << b);
                if parts.len() > 1 {
                    for (pi, &p) in parts.iter().enumerate() {
                        let mut side = m.restrict(m.alive);
                        for (qi, &q) in parts.iter().enumerate() {
                            if qi != pi {
                                // q is connected and touches a, so merging in
                                // BFS order from a keeps every step a contraction.
                                let mut rest = q;
                                while rest != 0 {
                                    let v = (side.nbrs(a) & rest).trailing_zeros() as usize;
                                    side.contract(a, v);
                                    rest &= !(1 << v);
                                }
                            }
                        }
                        side.alive = p | 1 << a | 1 << b;
                        if let Some(w) = self.run(side)? {
                            return Ok(Some(w));
                        }
                    }
                    return Ok(None);
                }
            }
        }
        // Branch on an unfrozen edge at the vertex of highest degree.
        let Some(u) = verts
            .iter()
            .copied()
            .filter(|&v| m.free_nbrs(v) != 0)
            .max_by_key(|&v| (m.deg(v), std::cmp::Reverse(v)))
        else {
            return Ok(None);
        };
        let v = bits(m.free_nbrs(u))
            .max_by_key(|&w| (m.deg(w), std::cmp::Reverse(w)))
            .unwrap();
        let mut contracted = m.clone();
        contracted.contract(u, v);
        if let Some(w) = self.run(contracted)? {
            return Ok(Some(w));
        }
        let mut frozen = m.clone();
        frozen.freeze(u, v);
        self.run(frozen)
    }
}

fn reduce(m: &mut Minor) {
    loop {
        let mut changed = false;
        for v in bits(m.alive) {
            let d = m.deg(v);
            let free = m.free_nbrs(v);
            if d <= 1 || (free == 0 && d <= 3) {
                m.remove(v);
                changed = true;
            } else if d == 2 {
                let u = free.trailing_zeros() as usize;
                m.contract(u, v);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

fn find_k5_subgraph(m: &Minor) -> Option<K5Witness> {
    fn grow(m: &Minor, chosen: &mut Vec<usize>, cand: Mask) -> bool {
        if chosen.len() == 5 {
            return true;
        }
        for v in bits(cand) {
            chosen.push(v);
            let above = if v + 1 >= 128 { 0 } else { !((1 << (v + 1)) - 1) };
            let next = cand & m.adj[v] & above;
            if (next.count_ones() as usize) + chosen.len() >= 5 && grow(m, chosen, next) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let rich: Mask = bits(m.alive)
        .filter(|&v| m.deg(v) >= 4)
        .fold(0, |acc, v| acc | 1 << v);
    let mut chosen = Vec::new();
    if grow(m, &mut chosen, rich) {
        let mut out: [Vec<Vertex>; 5] = Default::default();
        for (slot, &v) in out.iter_mut().zip(&chosen) {
            let mut s = m.sets[v].clone();
            s.sort_unstable();
            *slot = s;
        }
        out.sort();
        Some(out)
    } else {
        None
    }
}

/// Exact K5-minor search with an explicit node budget. Planar graphs are
/// answered without searching, at any size.
pub fn find_k5_minor(g: &Graph, max_nodes: u64) -> Result<Option<K5Witness>> {
    let n = g.n();
    if is_planar(g) {
        return Ok(None);
    }
    if n > MAX_MINOR_VERTICES {
        return Err(Error::Precondition(format!(
            "minor search limited to {MAX_MINOR_VERTICES} vertices, got {n}"
        )));
    }
    let adj = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0 as Mask, |acc, &w| acc | 1 << w))
        .collect();
    let alive = if n == 128 { Mask::MAX } else { (1 << n) - 1 };
    let minor = Minor {
        adj,
        frz: vec![0; n],
        alive,
        sets: (0..n).map(|v| vec![v]).collect(),
    };
    let mut search = Search {
        nodes: 0,
        max_nodes: max_nodes.max(1),
        free: HashSet::new(),
    };
    search.run(minor)
}

/// K5-minor test with the default budget.
pub fn has_k5_minor(g: &Graph) -> Result<Option<K5Witness>> {
    find_k5_minor(g, DEFAULT_MINOR_NODES)
}

/// Checks that `w` really is a K5 minor model in `g`.
pub fn is_k5_model(g: &Graph, w: &K5Witness) -> bool {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, set) in w.iter().enumerate() {
        if set.is_empty() {
            return false;
        }
        for &v in set {
            if v >= g.n() || owner[v] != usize::MAX {
                return false;
            }
            owner[v] = i;
        }
        let (sub, _) = g.induced(set);
        if !sub.is_connected() {
            return false;
        }
    }
    let mut touch = [[false; 5]; 5];
    for (u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != usize::MAX && b != usize::MAX && a != b {
            touch[a][b] = true;
            touch[b][a] = true;
        }
    }
    (0..5).all(|i| (0..5).all(|j| i == j || touch[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k5_and_friends() {
        let w = has_k5_minor(&Graph::complete(5)).unwrap().unwrap();
        assert!(is_k5_model(&Graph::complete(5), &w));
        assert!(has_k5_minor(&Graph::complete(4)).unwrap().is_none());
        let k6 = Graph::complete(6);
        assert!(is_k5_model(&k6, &has_k5_minor(&k6).unwrap().unwrap()));
    }

    #[test]
    fn subdivided_k5_found() {
        let mut g = Graph::new(5);
        for u in 0..5 {
            for v in u + 1..5 {
                let m = g.add_vertex();
                g.insert_edge(u, m);
                g.insert_edge(m, v);
            }
        }
        let w = has_k5_minor(&g).unwrap().unwrap();
        assert!(is_k5_model(&g, &w));
    }

    #[test]
    fn k33_and_petersen() {
        let k33 = Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert!(has_k5_minor(&k33).unwrap().is_none());
        let mut p = Graph::new(10);
        for i in 0..5 {
            p.insert_edge(i, (i + 1) % 5);
            p.insert_edge(i, i + 5);
            p.insert_edge(i + 5, (i + 2) % 5 + 5);
        }
        let w = has_k5_minor(&p).unwrap().unwrap();
        assert!(is_k5_model(&p, &w));
    }

    #[test]
    fn budget_signal() {
        let mut p = Graph::new(10);
        for i in 0..5 {
            p.insert_edge(i, (i + 1) % 5);
            p.insert_edge(i, i + 5);
            p.insert_edge(i + 5, (i + 2) % 5 + 5);
        }
        assert_eq!(find_k5_minor(&p, 1), Err(Error::BudgetExceeded(1)));
    }
}
