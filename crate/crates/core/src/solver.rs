//! Exact list coloring and degree-choosability.
//!
//! [`solve_exact`] is a backtracking search used as the ground truth for every
//! colorability claim. The rest of the module handles connected graphs whose
//! lists are at least as long as the degrees: such a graph is uncolorable
//! exactly when every list has the vertex's degree, every block is complete
//! or an odd cycle, and the lists split into per-block color sets that are
//! disjoint at cut vertices. [`uncolorability_certificate`] finds that split;
//! [`color_degree_choosable`] colors everything else.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{check_coloring, Color, Coloring, Graph, ListAssignment, Vertex};
use crate::structure::{block_decomposition, is_complete_block, is_odd_cycle_block};

/// Default node budget when none is configured.
pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

/// Largest number of distinct colors the exact search supports.
pub const MAX_PALETTE: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_nodes: u64,
    pub seed: u64,
}

impl SolveBudget {
    pub fn new(max_nodes: u64) -> Self {
        SolveBudget {
            max_nodes: max_nodes.max(1),
            seed: 0,
        }
    }
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget::new(DEFAULT_MAX_NODES)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Colorable,
    Uncolorable,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub coloring: Option<Coloring>,
    /// Present when an uncolorable component is a degree-list Gallai tree.
    pub certificate: Option<Theorem5Certificate>,
    /// Branching decisions made.
    pub nodes: u64,
}

impl SolveResult {
    pub fn is_colorable(&self) -> bool {
        self.verdict == Verdict::Colorable
    }
}

/// Per-block color sets proving that a Gallai tree with degree-sized lists
/// has no coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem5Certificate {
    pub blocks: Vec<Vec<Vertex>>,
    pub block_lists: Vec<BTreeSet<Color>>,
}

impl Theorem5Certificate {
    /// Checks disjointness at shared vertices, the union property and the
    /// per-block set sizes.
    pub fn verify(&self, g: &Graph, lists: &ListAssignment) -> bool {
        if self.blocks.len() != self.block_lists.len() || lists.len() != g.n() {
            return false;
        }
        let mut union: Vec<BTreeSet<Color>> = vec![BTreeSet::new(); g.n()];
        for (block, set) in self.blocks.iter().zip(&self.block_lists) {
            let want = if is_complete_block(g, block) {
                block.len() - 1
            } else if is_odd_cycle_block(g, block) {
                2
            } else {
                return false;
            };
            if set.len() != want {
                return false;
            }
            for &v in block {
                if !union[v].is_disjoint(set) {
                    return false;
                }
                union[v].extend(set);
            }
        }
        (0..g.n()).all(|v| &union[v] == lists.list(v))
    }
}

struct Palette {
    colors: Vec<Color>,
}

impl Palette {
    fn of(lists: &ListAssignment) -> Result<Self> {
        let all: BTreeSet<Color> = lists.lists().iter().flatten().copied().collect();
        if all.len() > MAX_PALETTE {
            return Err(Error::Precondition(format!(
                "exact search supports at most {MAX_PALETTE} distinct colors, got {}",
                all.len()
            )));
        }
        Ok(Palette {
            colors: all.into_iter().collect(),
        })
    }

    fn mask(&self, list: &BTreeSet<Color>) -> u128 {
        list.iter().fold(0, |acc, c| {
            acc | 1 << self.colors.binary_search(c).expect("color in palette")
        })
    }
}

enum Undo {
    Domain(usize, u128),
    Assign(usize),
}

struct Search<'a> {
    nbrs: &'a [Vec<usize>],
    dom: Vec<u128>,
    color: Vec<Option<u32>>,
    trail: Vec<Undo>,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    /// Assigns palette index `c` to `v` and propagates singleton domains.
    fn assign(&mut self, v: usize, c: u32) -> bool {
        let mut queue = VecDeque::from([(v, c)]);
        while let Some((v, c)) = queue.pop_front() {
            match self.color[v] {
                Some(d) if d == c => continue,
                Some(_) => return false,
                None => {}
            }
            if self.dom[v] >> c & 1 == 0 {
                return false;
            }
            self.color[v] = Some(c);
            self.trail.push(Undo::Assign(v));
            let bit = 1u128 << c;
            for &w in self.nbrs[v].iter() {
                if self.color[w].is_some() {
                    if self.color[w] == Some(c) {
                        return false;
                    }
                    continue;
                }
                let d = self.dom[w];
                if d & bit != 0 {
                    self.trail.push(Undo::Domain(w, d));
                    let nd = d & !bit;
                    self.dom[w] = nd;
                    match nd.count_ones() {
                        0 => return false,
                        1 => queue.push_back((w, nd.trailing_zeros())),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Domain(v, d) => self.dom[v] = d,
                Undo::Assign(v) => self.color[v] = None,
            }
        }
    }

    fn search(&mut self) -> Result<bool> {
        // Smallest ratio of list size to uncolored degree; a vertex with no
        // uncolored neighbor counts as degree 1/2, so it goes last.
        let mut best: Option<(u64, u64, usize)> = None;
        for v in 0..self.dom.len() {
            if self.color[v].is_none() {
                let size = u64::from(self.dom[v].count_ones());
                let deg = self.nbrs[v].iter().filter(|&&w| self.color[w].is_none()).count() as u64;
                let (num, den) = if deg == 0 { (2 * size, 1) } else { (size, deg) };
                if best.is_none_or(|(bn, bd, _)| num * bd < bn * den) {
                    best = Some((num, den, v));
                }
            }
        }
        let Some((_, _, v)) = best else {
            return Ok(true);
        };
        let mut options = self.dom[v];
        while options != 0 {
            let c = options.trailing_zeros();
            options &= options - 1;
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::BudgetExceeded(self.max_nodes));
            }
            let mark = self.trail.len();
            if self.assign(v, c) && self.search()? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

/// Solves one connected piece; `Ok(None)` means uncolorable.
fn solve_piece(
    g: &Graph,
    lists: &ListAssignment,
    palette: &Palette,
    budget_left: u64,
    nodes: &mut u64,
) -> Result<Option<Vec<Color>>> {
    let nbrs: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut s = Search {
        nbrs: &nbrs,
        dom: (0..g.n()).map(|v| palette.mask(lists.list(v))).collect(),
        color: vec![None; g.n()],
        trail: Vec::new(),
        nodes: 0,
        max_nodes: budget_left,
    };
    let mut ok = s.dom.iter().all(|&d| d != 0);
    for v in 0..g.n() {
        if ok && s.dom[v].count_ones() == 1 && s.color[v].is_none() {
            ok = s.assign(v, s.dom[v].trailing_zeros());
        }
    }
    let found = if ok { s.search() } else { Ok(false) };
    *nodes += s.nodes;
    Ok(found?.then(|| {
        s.color
            .iter()
            .map(|c| palette.colors[c.expect("total") as usize])
            .collect()
    }))
}

/// Exact L-coloring search: branch on the vertex with the fewest remaining
/// colors per uncolored neighbor (lowest id on ties), ascending colors,
/// singleton propagation. Components are solved independently and share the
/// node budget.
pub fn solve_exact(g: &Graph, lists: &ListAssignment, budget: SolveBudget) -> Result<SolveResult> {
    lists.check_against(g)?;
    let palette = Palette::of(lists)?;
    let mut coloring = Coloring::empty(g.n());
    let mut nodes = 0u64;
    for comp in g.components() {
        let (sub, map) = g.induced(&comp);
        let sub_lists = lists.restrict(&comp);
        let left = budget.max_nodes.saturating_sub(nodes).max(1);
        match solve_piece(&sub, &sub_lists, &palette, left, &mut nodes) {
            Ok(Some(colors)) => {
                for (i, c) in colors.into_iter().enumerate() {
                    coloring.set(map[i], c);
                }
            }
            Ok(None) => {
                let certificate = uncolorability_certificate(&sub, &sub_lists).map(|mut cert| {
                    for b in &mut cert.blocks {
                        for v in b.iter_mut() {
                            *v = map[*v];
                        }
                    }
                    cert
                });
                return Ok(SolveResult {
                    verdict: Verdict::Uncolorable,
                    coloring: None,
                    certificate,
                    nodes,
                });
            }
            Err(Error::BudgetExceeded(_)) => {
                return Ok(SolveResult {
                    verdict: Verdict::BudgetExceeded,
                    coloring: None,
                    certificate: None,
                    nodes,
                });
            }
            Err(e) => return Err(e),
        }
    }
    debug_assert!(check_coloring(g, lists, &coloring));
    Ok(SolveResult {
        verdict: Verdict::Colorable,
        coloring: Some(coloring),
        certificate: None,
        nodes,
    })
}

fn degree_lists_ok(g: &Graph, lists: &ListAssignment) -> bool {
    lists.len() == g.n() && (0..g.n()).all(|v| lists.list(v).len() >= g.degree(v))
}

/// Finds the per-block color sets for a connected graph with `|L(v)| >= d(v)`,
/// or `None` when no such split exists. Blocks are processed leaves first:
/// a block's set is forced to equal the residual list of each of its
/// vertices other than the one toward the root.
pub fn uncolorability_certificate(g: &Graph, lists: &ListAssignment) -> Option<Theorem5Certificate> {
    if g.n() == 0 || !g.is_connected() || !degree_lists_ok(g, lists) {
        return None;
    }
    if (0..g.n()).any(|v| lists.list(v).len() != g.degree(v)) {
        return None;
    }
    let bd = block_decomposition(g);
    let nb = bd.blocks.len();
    let mut want = Vec::with_capacity(nb);
    for b in &bd.blocks {
        if is_complete_block(g, b) {
            want.push(b.len() - 1);
        } else if is_odd_cycle_block(g, b) {
            want.push(2);
        } else {
            return None;
        }
    }

    // Root the block tree at block 0; record each block's parent cut vertex.
    let mut parent_cut: Vec<Option<Vertex>> = vec![None; nb];
    let mut order = Vec::with_capacity(nb);
    let mut seen_block = vec![false; nb];
    let mut seen_cut = vec![false; g.n()];
    let mut queue = VecDeque::from([0usize]);
    seen_block[0] = true;
    while let Some(b) = queue.pop_front() {
        order.push(b);
        for &v in &bd.blocks[b] {
            if bd.is_cut_vertex(v) && !seen_cut[v] && Some(v) != parent_cut[b] {
                seen_cut[v] = true;
                for &c in &bd.vertex_blocks[v] {
                    if !seen_block[c] {
                        seen_block[c] = true;
                        parent_cut[c] = Some(v);
                        queue.push_back(c);
                    }
                }
            }
        }
    }

    let mut residual: Vec<BTreeSet<Color>> = lists.lists().to_vec();
    let mut sets: Vec<BTreeSet<Color>> = vec![BTreeSet::new(); nb];
    for &b in order.iter().rev() {
        let mut members = bd.blocks[b].iter().filter(|&&v| Some(v) != parent_cut[b]);
        let first = *members.next()?;
        let set = residual[first].clone();
        if set.len() != want[b] || members.any(|&v| residual[v] != set) {
            return None;
        }
        for &v in &bd.blocks[b] {
            if Some(v) != parent_cut[b] {
                residual[v].clear();
            }
        }
        if let Some(p) = parent_cut[b] {
            if !set.is_subset(&residual[p]) {
                return None;
            }
            residual[p].retain(|c| !set.contains(c));
        }
        sets[b] = set;
    }
    let cert = Theorem5Certificate {
        blocks: bd.blocks.clone(),
        block_lists: sets,
    };
    debug_assert!(cert.verify(g, lists));
    Some(cert)
}

/// Which step of [`color_degree_choosable_traced`] produced the coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoosableRoute {
    /// Greedy toward a vertex with more colors than neighbors.
    Surplus(Vertex),
    /// Adjacent vertices with different lists; the first is colored off the
    /// second's list.
    UnequalNeighbors(Vertex, Vertex),
    /// Two non-adjacent neighbors of the middle vertex share a color.
    SameColorPair { middle: Vertex, a: Vertex, b: Vertex },
    /// Exact search fallback.
    Exact,
}

/// Greedy coloring of the uncolored vertices of a connected region, toward
/// `root`. Each vertex is colored while its BFS parent is still uncolored, so
/// a vertex with `|L'(v)| >= d'(v)` always has a free color, and the root
/// needs one spare.
fn greedy_toward(
    g: &Graph,
    lists: &ListAssignment,
    coloring: &mut Coloring,
    root: Vertex,
) -> Option<()> {
    let mut order = vec![root];
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in g.neighbors(u) {
            if !seen[w] && coloring.get(w).is_none() {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    for &v in order.iter().rev() {
        let used: BTreeSet<Color> = g.neighbors(v).iter().filter_map(|&w| coloring.get(w)).collect();
        let c = *lists.list(v).iter().find(|c| !used.contains(c))?;
        coloring.set(v, c);
    }
    Some(())
}

fn free_surplus(g: &Graph, lists: &ListAssignment, coloring: &Coloring, v: Vertex) -> bool {
    let used: BTreeSet<Color> = g.neighbors(v).iter().filter_map(|&w| coloring.get(w)).collect();
    let free = lists.list(v).iter().filter(|c| !used.contains(c)).count();
    let open = g.neighbors(v).iter().filter(|&&w| coloring.get(w).is_none()).count();
    free > open
}

/// Colors every uncolored component from a surplus vertex, if each has one.
fn finish_by_surplus(g: &Graph, lists: &ListAssignment, coloring: &mut Coloring) -> Option<()> {
    let mask: Vec<bool> = (0..g.n()).map(|v| coloring.get(v).is_none()).collect();
    for comp in g.components_within(Some(&mask)) {
        let root = *comp.iter().find(|&&v| free_surplus(g, lists, coloring, v))?;
        greedy_toward(g, lists, coloring, root)?;
    }
    Some(())
}

fn try_same_color_pair(g: &Graph, lists: &ListAssignment) -> Option<(Coloring, ChoosableRoute)> {
    let bd = block_decomposition(g);
    for block in &bd.blocks {
        if is_complete_block(g, block) || is_odd_cycle_block(g, block) {
            continue;
        }
        for &v in block {
            let inside: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|w| block.contains(w)).collect();
            for (i, &a) in inside.iter().enumerate() {
                for &b in &inside[i + 1..] {
                    if g.has_edge(a, b) {
                        continue;
                    }
                    for &c in lists.list(a).intersection(lists.list(b)) {
                        let mut coloring = Coloring::empty(g.n());
                        coloring.set(a, c);
                        coloring.set(b, c);
                        if finish_by_surplus(g, lists, &mut coloring).is_some() {
                            return Some((coloring, ChoosableRoute::SameColorPair { middle: v, a, b }));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Colors a connected graph with `|L(v)| >= d(v)` that is not certified
/// uncolorable, reporting the route taken.
pub fn color_degree_choosable_traced(
    g: &Graph,
    lists: &ListAssignment,
) -> Result<(Coloring, ChoosableRoute)> {
    lists.check_against(g)?;
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    if let Some(v) = (0..g.n()).find(|&v| lists.list(v).len() < g.degree(v)) {
        return Err(Error::Precondition(format!("vertex {v} has fewer colors than neighbors")));
    }
    if uncolorability_certificate(g, lists).is_some() {
        return Err(Error::Precondition(
            "lists split into per-block sets; the graph has no coloring".into(),
        ));
    }
    let done = |c: Coloring, r| -> Result<(Coloring, ChoosableRoute)> {
        if check_coloring(g, lists, &c) {
            Ok((c, r))
        } else {
            Err(Error::Internal(format!("route {r:?} produced an invalid coloring")))
        }
    };

    if let Some(r) = (0..g.n()).find(|&v| lists.list(v).len() > g.degree(v)) {
        let mut c = Coloring::empty(g.n());
        if greedy_toward(g, lists, &mut c, r).is_some() {
            return done(c, ChoosableRoute::Surplus(r));
        }
    }

    let bd = block_decomposition(g);
    for u in 0..g.n() {
        if bd.is_cut_vertex(u) {
            continue;
        }
        for &v in g.neighbors(u) {
            if let Some(&col) = lists.list(u).difference(lists.list(v)).next() {
                let mut c = Coloring::empty(g.n());
                c.set(u, col);
                if finish_by_surplus(g, lists, &mut c).is_some() {
                    return done(c, ChoosableRoute::UnequalNeighbors(u, v));
                }
            }
        }
    }

    if let Some((c, r)) = try_same_color_pair(g, lists) {
        return done(c, r);
    }

    let res = solve_exact(g, lists, SolveBudget::default())?;
    match res.coloring {
        Some(c) => done(c, ChoosableRoute::Exact),
        None => Err(Error::Internal(format!(
            "exact search found no coloring ({:?}) for an uncertified instance",
            res.verdict
        ))),
    }
}

pub fn color_degree_choosable(g: &Graph, lists: &ListAssignment) -> Result<Coloring> {
    color_degree_choosable_traced(g, lists).map(|(c, _)| c)
}
