//! Graphs, list assignments and colorings.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u32;

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<BTreeSet<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 0..n {
            g.insert_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for i in 1..n {
            g.insert_edge(i - 1, i);
        }
        g
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(BTreeSet::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if !self.insert_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        Ok(())
    }

    /// Inserts `uv` if absent; returns whether it was new. Panics on a loop.
    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert_ne!(u, v, "self-loop");
        let fresh = self.adj[u].insert(v);
        if fresh {
            self.adj[v].insert(u);
            self.m += 1;
        }
        fresh
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj[u].remove(&v);
        if had {
            self.adj[v].remove(&u);
            self.m -= 1;
        }
        had
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m * 2 == n * n.saturating_sub(1)
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order. Returns the subgraph and the map back to original ids.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    h.insert_edge(i, j);
                }
            }
        }
        (h, vertices.to_vec())
    }

    /// Connected components of the subgraph induced by `mask` (all vertices
    /// when `None`). Each component is sorted; components ordered by their
    /// smallest vertex.
    pub fn components_within(&self, mask: Option<&[bool]>) -> Vec<Vec<Vertex>> {
        let inside = |v: Vertex| mask.is_none_or(|m| m[v]);
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] || !inside(s) {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] && inside(w) {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(None)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// BFS distances from a set of sources; `usize::MAX` marks unreachable.
    pub fn distances_from(&self, sources: &[Vertex]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// A list of permitted colors for every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListAssignment {
    lists: Vec<BTreeSet<Color>>,
}

impl ListAssignment {
    /// Builds an assignment, rejecting empty lists.
    pub fn new(lists: Vec<BTreeSet<Color>>) -> Result<Self> {
        if let Some(v) = lists.iter().position(BTreeSet::is_empty) {
            return Err(Error::EmptyList(v));
        }
        Ok(ListAssignment { lists })
    }

    /// Builds an assignment without checking for empty lists. Reduced lists in
    /// intermediate coloring steps may legitimately run empty.
    pub fn from_sets_unchecked(lists: Vec<BTreeSet<Color>>) -> Self {
        ListAssignment { lists }
    }

    pub fn uniform(n: usize, colors: impl IntoIterator<Item = Color>) -> Self {
        let set: BTreeSet<Color> = colors.into_iter().collect();
        ListAssignment {
            lists: vec![set; n],
        }
    }

    pub fn from_slices(lists: &[&[Color]]) -> Result<Self> {
        Self::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lists.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    #[inline]
    pub fn list(&self, v: Vertex) -> &BTreeSet<Color> {
        &self.lists[v]
    }

    #[inline]
    pub fn list_mut(&mut self, v: Vertex) -> &mut BTreeSet<Color> {
        &mut self.lists[v]
    }

    pub fn lists(&self) -> &[BTreeSet<Color>] {
        &self.lists
    }

    pub fn push(&mut self, list: BTreeSet<Color>) {
        self.lists.push(list);
    }

    pub fn max_color(&self) -> Option<Color> {
        self.lists.iter().filter_map(|l| l.last().copied()).max()
    }

    /// Restriction to `vertices`, in the given order.
    pub fn restrict(&self, vertices: &[Vertex]) -> ListAssignment {
        ListAssignment {
            lists: vertices.iter().map(|&v| self.lists[v].clone()).collect(),
        }
    }

    pub fn check_against(&self, g: &Graph) -> Result<()> {
        if self.lists.len() != g.n() {
            return Err(Error::ListCount {
                expected: g.n(),
                got: self.lists.len(),
            });
        }
        Ok(())
    }
}

/// A possibly partial assignment of colors to vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring(Vec<Option<Color>>);

impl Coloring {
    pub fn empty(n: usize) -> Self {
        Coloring(vec![None; n])
    }

    pub fn from_total(colors: Vec<Color>) -> Self {
        Coloring(colors.into_iter().map(Some).collect())
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.0[v]
    }

    #[inline]
    pub fn set(&mut self, v: Vertex, c: Color) {
        self.0[v] = Some(c);
    }

    #[inline]
    pub fn unset(&mut self, v: Vertex) {
        self.0[v] = None;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.0
    }

    /// True iff no edge has both ends assigned the same color.
    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| match (self.0[u], self.0[v]) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }
}

/// `|L(v)| = min{d(v), k}` for every vertex.
pub fn validate_f_assignment(g: &Graph, lists: &ListAssignment, k: usize) -> bool {
    lists.len() == g.n() && (0..g.n()).all(|v| lists.list(v).len() == g.degree(v).min(k))
}

/// Splits the vertex set into `S_k` (degree `< k`) and `B_k` (degree `>= k`).
pub fn small_big_split(g: &Graph, k: usize) -> (Vec<Vertex>, Vec<Vertex>) {
    (0..g.n()).partition(|&v| g.degree(v) < k)
}

/// Smallest distance in `g` between two distinct components of `g[set]`;
/// 0 when `g[set]` has at most one component. Components that are mutually
/// unreachable contribute nothing.
pub fn component_distance(g: &Graph, set: &[Vertex]) -> usize {
    let mut mask = vec![false; g.n()];
    for &v in set {
        mask[v] = true;
    }
    let comps = g.components_within(Some(&mask));
    if comps.len() <= 1 {
        return 0;
    }
    let mut owner = vec![usize::MAX; g.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            owner[v] = i;
        }
    }
    let mut best = usize::MAX;
    for (i, c) in comps.iter().enumerate() {
        let dist = g.distances_from(c);
        for v in 0..g.n() {
            if owner[v] != usize::MAX && owner[v] != i && dist[v] < best {
                best = dist[v];
            }
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// `d(S_k)` for the graph.
pub fn small_distance(g: &Graph, k: usize) -> usize {
    component_distance(g, &small_big_split(g, k).0)
}

/// True iff `c` is total, proper, and picks every color from its list.
pub fn check_coloring(g: &Graph, lists: &ListAssignment, c: &Coloring) -> bool {
    c.len() == g.n()
        && lists.len() == g.n()
        && (0..g.n()).all(|v| c.get(v).is_some_and(|x| lists.list(v).contains(&x)))
        && c.is_proper(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(0, 0), Err(Error::SelfLoop(0)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(g.add_edge(0, 5), Err(Error::VertexOutOfRange { .. })));
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn split_of_k4() {
        let (s, b) = small_big_split(&Graph::complete(4), 5);
        assert_eq!(s, vec![0, 1, 2, 3]);
        assert!(b.is_empty());
    }

    #[test]
    fn f_assignment_size_mismatch() {
        let g = Graph::complete(3);
        let l = ListAssignment::uniform(3, [1]);
        assert!(!validate_f_assignment(&g, &l, 5));
        let l = ListAssignment::uniform(3, [1, 2]);
        assert!(validate_f_assignment(&g, &l, 5));
    }

    #[test]
    fn distance_conventions() {
        let g = Graph::path(7);
        assert_eq!(component_distance(&g, &[0, 1, 2]), 0);
        assert_eq!(component_distance(&g, &[]), 0);
        assert_eq!(component_distance(&g, &[0, 3, 6]), 3);
        assert_eq!(component_distance(&g, &[0, 1, 4]), 3);
    }

    #[test]
    fn coloring_checks() {
        let c4 = Graph::cycle(4);
        let l = ListAssignment::uniform(4, [1, 2]);
        assert!(check_coloring(&c4, &l, &Coloring::from_total(vec![1, 2, 1, 2])));
        assert!(!check_coloring(&c4, &l, &Coloring::from_total(vec![1, 2, 3, 2])));
        let k2 = Graph::complete(2);
        let l = ListAssignment::uniform(2, [1]);
        assert!(!check_coloring(&k2, &l, &Coloring::from_total(vec![1, 1])));
        assert!(!check_coloring(&k2, &l, &Coloring::empty(2)));
    }

    #[test]
    fn empty_lists_rejected() {
        assert_eq!(
            ListAssignment::new(vec![BTreeSet::from([1]), BTreeSet::new()]),
            Err(Error::EmptyList(1))
        );
    }
}
