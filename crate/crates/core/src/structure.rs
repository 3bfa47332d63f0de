//! Blocks, Gallai trees, vertex connectivity and end-block classification.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

/// Blocks (maximal 2-connected subgraphs, bridges, isolated vertices) and the
/// cut vertices joining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex sets, ordered by smallest vertex.
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    /// Blocks containing each vertex.
    pub vertex_blocks: Vec<Vec<usize>>,
}

impl BlockDecomposition {
    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.vertex_blocks[v].len() > 1
    }

    /// Cut vertices contained in block `b`.
    pub fn block_cut_vertices(&self, b: usize) -> Vec<Vertex> {
        self.blocks[b]
            .iter()
            .copied()
            .filter(|&v| self.is_cut_vertex(v))
            .collect()
    }

    /// Incidences `(block, cut vertex)` of the block tree.
    pub fn block_tree_edges(&self) -> Vec<(usize, Vertex)> {
        let mut out = Vec::new();
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                if self.is_cut_vertex(v) {
                    out.push((b, v));
                }
            }
        }
        out
    }

    /// Leaf blocks of the block tree: blocks with at most one cut vertex.
    pub fn end_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&b| self.block_cut_vertices(b).len() <= 1)
            .collect()
    }
}

/// Block decomposition by the lowpoint method (iterative DFS).
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let nbrs: Vec<Vec<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    const UNSET: usize = usize::MAX;
    let mut tin = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut blocks: Vec<Vec<Vertex>> = Vec::new();
    let mut vstack: Vec<Vertex> = Vec::new();

    for root in 0..n {
        if tin[root] != UNSET {
            continue;
        }
        if nbrs[root].is_empty() {
            tin[root] = timer;
            timer += 1;
            blocks.push(vec![root]);
            continue;
        }
        tin[root] = timer;
        low[root] = timer;
        timer += 1;
        vstack.push(root);
        // (vertex, parent, next neighbor index)
        let mut call: Vec<(Vertex, Vertex, usize)> = vec![(root, UNSET, 0)];
        while let Some(&mut (u, parent, ref mut idx)) = call.last_mut() {
            if *idx < nbrs[u].len() {
                let w = nbrs[u][*idx];
                *idx += 1;
                if tin[w] == UNSET {
                    tin[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    vstack.push(w);
                    call.push((w, u, 0));
                } else if w != parent {
                    low[u] = low[u].min(tin[w]);
                }
            } else {
                call.pop();
                if parent != UNSET {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] >= tin[parent] {
                        let mut block = vec![parent];
                        while let Some(x) = vstack.pop() {
                            block.push(x);
                            if x == u {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
        vstack.clear();
    }

    blocks.sort();
    let mut vertex_blocks = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            vertex_blocks[v].push(i);
        }
    }
    let cut_vertices = (0..n).filter(|&v| vertex_blocks[v].len() > 1).collect();
    BlockDecomposition {
        blocks,
        cut_vertices,
        vertex_blocks,
    }
}

fn block_edge_count(g: &Graph, block: &[Vertex]) -> usize {
    block
        .iter()
        .map(|&v| block.iter().filter(|&&w| w > v && g.has_edge(v, w)).count())
        .sum()
}

pub fn is_complete_block(g: &Graph, block: &[Vertex]) -> bool {
    let s = block.len();
    block_edge_count(g, block) * 2 == s * s.saturating_sub(1)
}

/// Odd cycle of length at least 3: odd order, as many edges as vertices,
/// every vertex of degree 2 inside the block.
pub fn is_odd_cycle_block(g: &Graph, block: &[Vertex]) -> bool {
    let s = block.len();
    s >= 3
        && s % 2 == 1
        && block_edge_count(g, block) == s
        && block
            .iter()
            .all(|&v| block.iter().filter(|&&w| g.has_edge(v, w)).count() == 2)
}

/// `Ok(())` when every block is complete or an odd cycle, otherwise the first
/// offending block.
pub fn gallai_witness(g: &Graph) -> Result<(), Vec<Vertex>> {
    let bd = block_decomposition(g);
    for b in &bd.blocks {
        if !is_complete_block(g, b) && !is_odd_cycle_block(g, b) {
            return Err(b.clone());
        }
    }
    Ok(())
}

/// Every block of every component is a complete graph or an odd cycle.
pub fn is_gallai_tree(g: &Graph) -> bool {
    gallai_witness(g).is_ok()
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths, stopping once
/// `cap` is reached. `s` and `t` must be distinct and non-adjacent.
pub fn local_connectivity(g: &Graph, s: Vertex, t: Vertex, cap: usize) -> usize {
    // Vertex v splits into v_in = 2v and v_out = 2v + 1 joined by a unit arc.
    let n = g.n();
    let mut head: Vec<usize> = Vec::new();
    let mut capy: Vec<i32> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut add = |a: usize, b: usize, c: i32, head: &mut Vec<usize>, capy: &mut Vec<i32>| {
        adj[a].push(head.len());
        head.push(b);
        capy.push(c);
        adj[b].push(head.len());
        head.push(a);
        capy.push(0);
    };
    let big = n as i32 + 1;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        add(2 * v, 2 * v + 1, c, &mut head, &mut capy);
    }
    for (u, v) in g.edges() {
        add(2 * u + 1, 2 * v, big, &mut head, &mut capy);
        add(2 * v + 1, 2 * u, big, &mut head, &mut capy);
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0;
    let mut prev = vec![usize::MAX; 2 * n];
    while flow < cap {
        prev.iter_mut().for_each(|p| *p = usize::MAX);
        let mut seen = vec![false; 2 * n];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &e in &adj[x] {
                let y = head[e];
                if capy[e] > 0 && !seen[y] {
                    seen[y] = true;
                    prev[y] = e;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut x = sink;
        while x != source {
            let e = prev[x];
            capy[e] -= 1;
            capy[e ^ 1] += 1;
            x = head[e ^ 1];
        }
        flow += 1;
    }
    flow
}

/// Left-right planarity test. Planar graphs have no K5 minor, so this is a
/// cheap sufficient check for minor-freeness.
pub fn is_planar(g: &Graph) -> bool {
    let mut pg = petgraph::graph::UnGraph::<(), ()>::with_capacity(g.n(), g.m());
    let ids: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for (u, v) in g.edges() {
        pg.add_edge(ids[u], ids[v], ());
    }
    rustworkx_core::planar::is_planar(&pg)
}

/// Vertex connectivity; `n - 1` for complete graphs, 0 for disconnected ones.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = g.min_degree();
    let mut i = 0;
    while i <= best && i < n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_connectivity(g, i, j, best));
            }
        }
        i += 1;
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockShape {
    K1,
    K2,
    K3,
    K4,
    /// Odd cycle on the given number (at least 5) of vertices.
    OddCycle(usize),
    Other,
}

impl BlockShape {
    pub fn of(g: &Graph, block: &[Vertex]) -> Self {
        match block.len() {
            1 => BlockShape::K1,
            2 => BlockShape::K2,
            s @ 3..=4 if is_complete_block(g, block) => {
                if s == 3 {
                    BlockShape::K3
                } else {
                    BlockShape::K4
                }
            }
            s if is_odd_cycle_block(g, block) => BlockShape::OddCycle(s),
            _ => BlockShape::Other,
        }
    }
}

impl std::fmt::Display for BlockShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockShape::K1 => write!(f, "K1"),
            BlockShape::K2 => write!(f, "K2"),
            BlockShape::K3 => write!(f, "K3"),
            BlockShape::K4 => write!(f, "K4"),
            BlockShape::OddCycle(l) => write!(f, "C{l}"),
            BlockShape::Other => write!(f, "other"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndBlockClass {
    pub label: BlockShape,
    pub block: Vec<Vertex>,
    /// The block's cut vertex, if the block is not a whole component.
    pub attachment: Option<Vertex>,
}

/// One entry per leaf of the block tree.
pub fn classify_end_blocks(g: &Graph) -> Vec<EndBlockClass> {
    let bd = block_decomposition(g);
    bd.end_blocks()
        .into_iter()
        .map(|b| {
            let block = bd.blocks[b].clone();
            EndBlockClass {
                label: BlockShape::of(g, &block),
                attachment: bd.block_cut_vertices(b).first().copied(),
                block,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn blocks_of_small_graphs() {
        let bd = block_decomposition(&Graph::complete(4));
        assert_eq!(bd.blocks, vec![vec![0, 1, 2, 3]]);
        assert!(bd.cut_vertices.is_empty());

        let bd = block_decomposition(&two_triangles());
        assert_eq!(bd.blocks, vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(bd.cut_vertices, vec![2]);

        let bd = block_decomposition(&Graph::new(2));
        assert_eq!(bd.blocks, vec![vec![0], vec![1]]);
    }

    #[test]
    fn gallai_examples() {
        assert!(is_gallai_tree(&Graph::cycle(5)));
        assert_eq!(gallai_witness(&Graph::cycle(4)), Err(vec![0, 1, 2, 3]));
        // K4 and C7 glued at vertex 3, another C7 hanging off vertex 5.
        let mut g = Graph::complete(4);
        let mut prev = 3;
        let mut first_c7 = Vec::new();
        for _ in 0..6 {
            let v = g.add_vertex();
            g.insert_edge(prev, v);
            first_c7.push(v);
            prev = v;
        }
        g.insert_edge(prev, 3);
        let hub = first_c7[1];
        let mut prev = hub;
        for _ in 0..6 {
            let v = g.add_vertex();
            g.insert_edge(prev, v);
            prev = v;
        }
        g.insert_edge(prev, hub);
        assert!(is_gallai_tree(&g));
        g.insert_edge(0, first_c7[0]);
        assert!(!is_gallai_tree(&g));
    }

    #[test]
    fn connectivity_basics() {
        assert_eq!(vertex_connectivity(&Graph::complete(4)), 3);
        assert_eq!(vertex_connectivity(&Graph::cycle(6)), 2);
        assert_eq!(vertex_connectivity(&Graph::path(4)), 1);
        assert_eq!(vertex_connectivity(&Graph::new(3)), 0);
        assert_eq!(vertex_connectivity(&two_triangles()), 1);
    }

    #[test]
    fn end_block_labels() {
        let e = classify_end_blocks(&Graph::complete(4));
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].label, e[0].attachment), (BlockShape::K4, None));

        let e = classify_end_blocks(&Graph::path(3));
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(|c| c.label == BlockShape::K2 && c.attachment == Some(1)));

        // K4 on 0..4 glued to C5 through vertex 0.
        let mut g = Graph::complete(4);
        let c: Vec<_> = (0..4).map(|_| g.add_vertex()).collect();
        g.insert_edge(0, c[0]);
        g.insert_edge(c[0], c[1]);
        g.insert_edge(c[1], c[2]);
        g.insert_edge(c[2], c[3]);
        g.insert_edge(c[3], 0);
        let mut labels: Vec<_> = classify_end_blocks(&g)
            .into_iter()
            .map(|c| (c.label, c.attachment))
            .collect();
        labels.sort_by_key(|l| format!("{:?}", l));
        assert_eq!(
            labels,
            vec![(BlockShape::K4, Some(0)), (BlockShape::OddCycle(5), Some(0))]
        );
    }
}
