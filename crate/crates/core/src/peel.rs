//! Peeling colorings: color or reserve colors on each small-degree component,
//! color the big-degree remainder, then put the deferred parts back.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{
    check_coloring, component_distance, small_big_split, validate_f_assignment, Color, Coloring,
    Graph, ListAssignment, Vertex,
};
use crate::minor::find_k5_minor;
use crate::solver::{color_degree_choosable, solve_exact, SolveBudget, Verdict};
use crate::structure::{
    block_decomposition, is_gallai_tree, is_odd_cycle_block, vertex_connectivity,
    BlockDecomposition,
};

/// Node budget for the K5-minor checks made while peeling.
pub const DEFAULT_PEEL_MINOR_NODES: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    K8,
    ThreeConnected,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::K8 => "k8",
            Mode::ThreeConnected => "threeconn",
        })
    }
}

/// Which branch handled a small-degree component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    /// Not a Gallai tree: deferred whole.
    NotGallai,
    /// Some vertex has more colors than neighbors: deferred whole.
    Surplus,
    Case(u8),
    Sub(u8, char),
}

impl CaseId {
    /// The numbered case this id belongs to, if any.
    pub fn main(self) -> Option<u8> {
        match self {
            CaseId::Case(n) | CaseId::Sub(n, _) => Some(n),
            _ => None,
        }
    }

    pub fn valid_for(self, mode: Mode) -> bool {
        match (mode, self) {
            (_, CaseId::NotGallai | CaseId::Surplus) => true,
            (Mode::K8, CaseId::Case(n)) => (1..=7).contains(&n),
            (Mode::K8, CaseId::Sub(7, 'a' | 'b')) => true,
            (Mode::ThreeConnected, CaseId::Case(n)) => (1..=5).contains(&n),
            (Mode::ThreeConnected, CaseId::Sub(2, 'a' | 'b')) => true,
            _ => false,
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::NotGallai => f.write_str("i"),
            CaseId::Surplus => f.write_str("ii"),
            CaseId::Case(n) => write!(f, "{n}"),
            CaseId::Sub(n, c) => write!(f, "{n}{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseLabel {
    pub mode: Mode,
    pub case: CaseId,
    /// The structural predicate that matched.
    pub justification: String,
}

impl CaseLabel {
    fn new(mode: Mode, case: CaseId, why: impl Into<String>) -> Self {
        CaseLabel {
            mode,
            case,
            justification: why.into(),
        }
    }
}

/// Why a deferred part could be colored when it was put back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reinsertion {
    NotGallai,
    Surplus(Vertex),
    UnequalLists(Vertex, Vertex),
}

impl fmt::Display for Reinsertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reinsertion::NotGallai => f.write_str("not-gallai"),
            Reinsertion::Surplus(v) => write!(f, "surplus {v}"),
            Reinsertion::UnequalLists(u, v) => write!(f, "unequal-lists {u} {v}"),
        }
    }
}

/// What happened to one small-degree component. Vertex ids refer to the
/// graph given to the top-level call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRecord {
    pub vertices: Vec<Vertex>,
    pub label: CaseLabel,
    pub precolored: Vec<(Vertex, Color)>,
    pub reserved: Vec<(Vertex, Vec<Color>)>,
    /// Colors removed from the lists of big neighbors.
    pub deleted: Vec<(Vertex, Vec<Color>)>,
    pub deferred: Vec<Vertex>,
    /// Edges added between big vertices while the component was removed.
    pub aux_edges: Vec<(Vertex, Vertex)>,
    pub reinsertion: Option<Reinsertion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    /// Several connected components, peeled one by one (see children).
    Components,
    /// No small vertices: the lists alone suffice.
    AllBig,
    /// Every vertex is small: degree-choosability.
    AllSmall,
    Peeled,
    /// A component forced a split; the rest is in the children.
    Split,
    /// A hypothesis failed on a subproblem; exact search was used.
    Fallback(String),
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Components => f.write_str("components"),
            Route::AllBig => f.write_str("all-big"),
            Route::AllSmall => f.write_str("all-small"),
            Route::Peeled => f.write_str("peeled"),
            Route::Split => f.write_str("split"),
            Route::Fallback(why) => write!(f, "fallback ({why})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorStatus {
    Verified,
    /// Not checked (disabled, too large, or out of budget).
    Assumed,
}

impl fmt::Display for MinorStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MinorStatus::Verified => "verified",
            MinorStatus::Assumed => "assumed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelTrace {
    pub mode: Mode,
    pub k: usize,
    pub vertices: usize,
    pub route: Route,
    /// K5-minor-freeness of the input (top level only).
    pub minor_check: Option<MinorStatus>,
    /// K5-minor-freeness after auxiliary edges were added, if any were.
    pub aux_minor_check: Option<MinorStatus>,
    pub components: Vec<ComponentRecord>,
    pub children: Vec<PeelTrace>,
}

impl PeelTrace {
    fn new(mode: Mode, k: usize, vertices: usize) -> Self {
        PeelTrace {
            mode,
            k,
            vertices,
            route: Route::Peeled,
            minor_check: None,
            aux_minor_check: None,
            components: Vec::new(),
            children: Vec::new(),
        }
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a PeelTrace>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }

    fn all(&self) -> Vec<&PeelTrace> {
        let mut out = Vec::new();
        self.walk(&mut out);
        out
    }

    /// Largest number of colors deleted from one big vertex in any step.
    pub fn max_deleted(&self) -> usize {
        self.all()
            .iter()
            .flat_map(|t| {
                let mut per: BTreeMap<Vertex, usize> = BTreeMap::new();
                for r in &t.components {
                    for (w, cs) in &r.deleted {
                        *per.entry(*w).or_default() += cs.len();
                    }
                }
                per.into_values().collect::<Vec<_>>()
            })
            .max()
            .unwrap_or(0)
    }

    /// Every case id recorded anywhere in the trace.
    pub fn case_ids(&self) -> BTreeSet<CaseId> {
        self.all()
            .iter()
            .flat_map(|t| t.components.iter().map(|r| r.label.case))
            .collect()
    }

    /// Whether any step fell back to exact search.
    pub fn used_fallback(&self) -> bool {
        self.all().iter().any(|t| matches!(t.route, Route::Fallback(_)))
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        write!(f, "{pad}peel mode={} k={} n={} route={}", self.mode, self.k, self.vertices, self.route)?;
        if let Some(m) = self.minor_check {
            write!(f, " minor={m}")?;
        }
        if let Some(m) = self.aux_minor_check {
            write!(f, " aux-minor={m}")?;
        }
        writeln!(f)?;
        for r in &self.components {
            writeln!(
                f,
                "{pad}  component {:?} case={} why=\"{}\"",
                r.vertices, r.label.case, r.label.justification
            )?;
            if !r.precolored.is_empty() {
                let items: Vec<String> = r.precolored.iter().map(|(v, c)| format!("{v}:{c}")).collect();
                writeln!(f, "{pad}    precolored {}", items.join(" "))?;
            }
            for (v, cs) in &r.reserved {
                writeln!(f, "{pad}    reserved {v}:{cs:?}")?;
            }
            if !r.deleted.is_empty() {
                let items: Vec<String> = r.deleted.iter().map(|(v, cs)| format!("{v}:{cs:?}")).collect();
                writeln!(f, "{pad}    deleted {}", items.join(" "))?;
            }
            if !r.deferred.is_empty() {
                writeln!(f, "{pad}    deferred {:?}", r.deferred)?;
            }
            if !r.aux_edges.is_empty() {
                let items: Vec<String> = r.aux_edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                writeln!(f, "{pad}    aux {}", items.join(" "))?;
            }
            if let Some(re) = r.reinsertion {
                writeln!(f, "{pad}    reinsert {re}")?;
            }
        }
        for c in &self.children {
            c.write_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for PeelTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeelOptions {
    /// Node budget for K5-minor checks; 0 skips them.
    pub minor_nodes: u64,
    pub budget: SolveBudget,
    /// Accept k = 6 in three-connected mode (fails when the last case is hit).
    pub allow_k6: bool,
}

impl Default for PeelOptions {
    fn default() -> Self {
        PeelOptions {
            minor_nodes: DEFAULT_PEEL_MINOR_NODES,
            budget: SolveBudget::default(),
            allow_k6: false,
        }
    }
}

fn minor_status(g: &Graph, nodes: u64) -> Result<MinorStatus> {
    if nodes == 0 {
        return Ok(MinorStatus::Assumed);
    }
    match find_k5_minor(g, nodes) {
        Ok(None) => Ok(MinorStatus::Verified),
        Ok(Some(w)) => Err(Error::Precondition(format!("graph has a K5 minor: {w:?}"))),
        Err(Error::BudgetExceeded(_) | Error::Precondition(_)) => Ok(MinorStatus::Assumed),
        Err(e) => Err(e),
    }
}

/// Describes the K5 minor behind a contradiction, if the search finds one.
fn minor_evidence(g: &Graph, nodes: u64) -> String {
    if nodes == 0 {
        return "K5 minor search skipped".into();
    }
    match find_k5_minor(g, nodes) {
        Ok(Some(w)) => format!("K5 minor branch sets {w:?}"),
        Ok(None) => "no K5 minor found either, so a hypothesis of the input is violated".into(),
        Err(e) => format!("K5 minor search gave up: {e}"),
    }
}

/// One planned action for a small-degree component.
#[derive(Debug, Clone)]
struct Plan {
    label: CaseLabel,
    precolor: Vec<(Vertex, Color)>,
    reserve: Vec<(Vertex, BTreeSet<Color>)>,
    aux: Vec<(Vertex, Vertex)>,
    deferred: Vec<Vertex>,
}

impl Plan {
    fn defer(label: CaseLabel, h: &[Vertex]) -> Self {
        Plan {
            label,
            precolor: Vec::new(),
            reserve: Vec::new(),
            aux: Vec::new(),
            deferred: h.to_vec(),
        }
    }
}

#[derive(Debug, Clone)]
enum Step {
    Plan(Plan),
    /// End block whose non-cut part `rest` only sees the component.
    Split3 { label: CaseLabel, rest: Vec<Vertex>, cut: Vertex },
    /// End block K4 at `v1` whose other vertices see the same big vertices.
    Split7b { label: CaseLabel, v1: Vertex, rest: Vec<Vertex> },
}

impl Step {
    fn label(&self) -> &CaseLabel {
        match self {
            Step::Plan(p) => &p.label,
            Step::Split3 { label, .. } | Step::Split7b { label, .. } => label,
        }
    }
}

/// A small-degree component as an induced subgraph with its id map.
struct Comp<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    small: &'a [bool],
    verts: Vec<Vertex>,
    h: Graph,
    bd: BlockDecomposition,
}

impl<'a> Comp<'a> {
    fn new(g: &'a Graph, lists: &'a ListAssignment, small: &'a [bool], verts: &[Vertex]) -> Self {
        let (h, _) = g.induced(verts);
        let bd = block_decomposition(&h);
        Comp {
            g,
            lists,
            small,
            verts: verts.to_vec(),
            h,
            bd,
        }
    }

    fn list(&self, i: usize) -> &BTreeSet<Color> {
        self.lists.list(self.verts[i])
    }

    /// Big neighbors (graph ids) of local vertex `i`.
    fn big_nbrs(&self, i: usize) -> Vec<Vertex> {
        self.g
            .neighbors(self.verts[i])
            .iter()
            .copied()
            .filter(|&w| !self.small[w])
            .collect()
    }

    fn ids(&self, local: &[usize]) -> Vec<Vertex> {
        local.iter().map(|&i| self.verts[i]).collect()
    }

    fn ids_except(&self, skip: &[usize]) -> Vec<Vertex> {
        (0..self.h.n())
            .filter(|i| !skip.contains(i))
            .map(|i| self.verts[i])
            .collect()
    }

    fn is_odd_cycle(&self) -> bool {
        self.bd.blocks.len() == 1 && self.h.n() >= 5 && is_odd_cycle_block(&self.h, &self.bd.blocks[0])
    }

    /// End blocks as (block index, attachment, non-cut vertices), in block order.
    fn end_blocks(&self) -> Vec<(usize, usize, Vec<usize>)> {
        if self.bd.blocks.len() < 2 {
            return Vec::new();
        }
        self.bd
            .end_blocks()
            .into_iter()
            .map(|b| {
                let cut = self.bd.block_cut_vertices(b)[0];
                let rest = self.bd.blocks[b].iter().copied().filter(|&v| v != cut).collect();
                (b, cut, rest)
            })
            .collect()
    }

    /// Vertices of block `b` in cycle order starting at `start`.
    fn cycle_order(&self, b: usize, start: usize) -> Vec<usize> {
        let block = &self.bd.blocks[b];
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < block.len() {
            let next = self
                .h
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| w != prev && block.binary_search(&w).is_ok() && !order.contains(&w))
                .expect("block is a cycle");
            order.push(next);
            prev = cur;
            cur = next;
        }
        order
    }

    /// First ordered pair from `pairs` with a color in `L(u) \ L(v)`.
    fn unequal(&self, pairs: &[(usize, usize)]) -> Option<(usize, Color)> {
        pairs.iter().find_map(|&(u, v)| {
            self.list(u)
                .difference(self.list(v))
                .next()
                .map(|&c| (u, c))
        })
    }

    /// First ordered pair `(u, v)` from `pairs` and big `w` adjacent to `u`
    /// but not `v`; returns `w` and the auxiliary edges from `w` to the big
    /// neighbors of `v`.
    fn aux_trick(&self, pairs: &[(usize, usize)]) -> Option<AuxTrick> {
        for &(u, v) in pairs {
            let vn = self.big_nbrs(v);
            if let Some(w) = self.big_nbrs(u).into_iter().find(|w| !vn.contains(w)) {
                let aux = vn
                    .into_iter()
                    .filter(|&x| x != w && !self.g.has_edge(w, x))
                    .map(|x| (w.min(x), w.max(x)))
                    .collect();
                return Some((u, v, aux));
            }
        }
        None
    }

    fn smallest(&self, i: usize, count: usize) -> Result<BTreeSet<Color>> {
        let l = self.list(i);
        if l.len() < count {
            return Err(Error::Precondition(format!(
                "vertex {} needs {count} colors, list has {}",
                self.verts[i],
                l.len()
            )));
        }
        Ok(l.iter().take(count).copied().collect())
    }
}

/// Ordered pairs of distinct elements, lexicographic.
fn ordered_pairs(vs: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &u in vs {
        for &v in vs {
            if u != v {
                out.push((u, v));
            }
        }
    }
    out
}

/// Both orientations of consecutive pairs along a path.
fn path_pairs(path: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for w in path.windows(2) {
        out.push((w[0], w[1]));
        out.push((w[1], w[0]));
    }
    out
}

struct Peeler {
    mode: Mode,
    k: usize,
    opts: PeelOptions,
}

type Colors = Vec<Color>;
/// The chosen pair `(u, v)` and the auxiliary edges from the helper.
type AuxTrick = (usize, usize, Vec<(Vertex, Vertex)>);

impl Peeler {
    fn label(&self, case: CaseId, why: impl Into<String>) -> CaseLabel {
        CaseLabel::new(self.mode, case, why)
    }

    fn exact(&self, g: &Graph, lists: &ListAssignment) -> Result<Colors> {
        let res = solve_exact(g, lists, self.opts.budget)?;
        match res.verdict {
            Verdict::Colorable => Ok(total(res.coloring.expect("colorable result carries a coloring"))),
            Verdict::Uncolorable => Err(Error::Internal("exact search found no coloring of a subproblem".into())),
            Verdict::BudgetExceeded => Err(Error::BudgetExceeded(res.nodes)),
        }
    }

    /// Precolors the given local vertices and defers the rest of the component.
    fn precolor_plan(&self, c: &Comp, label: CaseLabel, assign: &[(usize, Color)]) -> Step {
        let done: Vec<usize> = assign.iter().map(|&(v, _)| v).collect();
        Step::Plan(Plan {
            label,
            precolor: assign.iter().map(|&(v, col)| (c.verts[v], col)).collect(),
            reserve: Vec::new(),
            aux: Vec::new(),
            deferred: c.ids_except(&done),
        })
    }

    fn reserve_plan(&self, c: &Comp, label: CaseLabel, v: usize, count: usize) -> Result<Step> {
        let colors = c.smallest(v, count)?;
        let mut p = Plan::defer(label, &c.verts);
        p.reserve.push((c.verts[v], colors));
        Ok(Step::Plan(p))
    }

    fn aux_plan(&self, c: &Comp, case: CaseId, u: usize, v: usize, aux: Vec<(Vertex, Vertex)>) -> Step {
        let why = format!(
            "equal lists; a big neighbor of {} misses {}",
            c.verts[u], c.verts[v]
        );
        let mut p = Plan::defer(self.label(case, why), &c.verts);
        p.aux = aux;
        Step::Plan(p)
    }

    fn contradiction(&self, c: &Comp, case: &str) -> Error {
        Error::Internal(format!(
            "case {case} contradiction on component {:?}: {}",
            c.verts,
            minor_evidence(c.g, self.opts.minor_nodes)
        ))
    }

    fn plan(&self, c: &Comp) -> Result<Step> {
        if !is_gallai_tree(&c.h) {
            return Ok(Step::Plan(Plan::defer(
                self.label(CaseId::NotGallai, "component is not a Gallai tree"),
                &c.verts,
            )));
        }
        if let Some(&v) = c.verts.iter().find(|&&v| c.lists.list(v).len() > c.g.degree(v)) {
            return Ok(Step::Plan(Plan::defer(
                self.label(CaseId::Surplus, format!("vertex {v} has more colors than neighbors")),
                &c.verts,
            )));
        }
        match self.mode {
            Mode::K8 => self.plan_k8(c),
            Mode::ThreeConnected => self.plan_3(c),
        }
    }

    fn plan_k8(&self, c: &Comp) -> Result<Step> {
        let n = c.h.n();
        if c.h.is_complete() {
            let col = color_degree_choosable(&c.h, &c.lists.restrict(&c.verts))?;
            let assign: Vec<(usize, Color)> = (0..n).map(|v| (v, col.get(v).unwrap())).collect();
            let label = self.label(CaseId::Case(1), format!("H is K{n}"));
            return Ok(self.precolor_plan(c, label, &assign));
        }
        if c.is_odd_cycle() {
            let order = c.cycle_order(0, 0);
            let mut pairs = path_pairs(&order);
            pairs.extend([(order[n - 1], order[0]), (order[0], order[n - 1])]);
            if let Some((u, col)) = c.unequal(&pairs) {
                let label = self.label(CaseId::Case(2), format!("H is C{n}; unequal lists at {}", c.verts[u]));
                return Ok(self.precolor_plan(c, label, &[(u, col)]));
            }
            let three: Vec<Color> = c.smallest(order[0], 3)?.into_iter().collect();
            let assign: Vec<(usize, Color)> = order
                .iter()
                .enumerate()
                .map(|(i, &v)| (v, if i == n - 1 { three[2] } else { three[i % 2] }))
                .collect();
            let label = self.label(CaseId::Case(2), format!("H is C{n}; equal lists, three colors"));
            return Ok(self.precolor_plan(c, label, &assign));
        }
        let ends = c.end_blocks();
        if ends.is_empty() {
            return Err(Error::Internal(format!("component {:?} has no end blocks", c.verts)));
        }
        for (_, cut, rest) in &ends {
            if rest.iter().all(|&x| c.g.degree(c.verts[x]) == c.h.degree(x)) {
                return Ok(Step::Split3 {
                    label: self.label(
                        CaseId::Case(3),
                        format!("end block at cut vertex {} sees nothing outside H", c.verts[*cut]),
                    ),
                    rest: c.ids(rest),
                    cut: c.verts[*cut],
                });
            }
        }
        for (b, cut, _) in &ends {
            let len = c.bd.blocks[*b].len();
            if len >= 5 && is_odd_cycle_block(&c.h, &c.bd.blocks[*b]) {
                let order = c.cycle_order(*b, *cut);
                let path = &order[1..];
                if let Some((u, col)) = c.unequal(&path_pairs(path)) {
                    let label = self.label(
                        CaseId::Case(4),
                        format!("end block C{len}; unequal lists at {}", c.verts[u]),
                    );
                    return Ok(self.precolor_plan(c, label, &[(u, col)]));
                }
                let three: Vec<Color> = c.smallest(path[0], 3)?.into_iter().collect();
                let last = path.len() - 1;
                let assign: Vec<(usize, Color)> = path
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let col = if i == 0 || i == last {
                            three[0]
                        } else if i % 2 == 1 {
                            three[1]
                        } else {
                            three[2]
                        };
                        (v, col)
                    })
                    .collect();
                let label = self.label(
                    CaseId::Case(4),
                    format!("end block C{len}; both neighbors of cut vertex {} get one color", c.verts[*cut]),
                );
                return Ok(self.precolor_plan(c, label, &assign));
            }
        }
        if let Some((_, _, rest)) = ends.iter().find(|(b, _, _)| c.bd.blocks[*b].len() == 2) {
            let label = self.label(CaseId::Case(5), "end block K2; reserve two colors");
            return self.reserve_plan(c, label, rest[0], 2);
        }
        if let Some((_, _, rest)) = ends.iter().find(|(b, _, _)| c.bd.blocks[*b].len() == 3) {
            let v = *rest
                .iter()
                .find(|&&x| c.list(x).len() >= 3)
                .ok_or_else(|| Error::Internal("end block K3 without a big neighbor".into()))?;
            let label = self.label(CaseId::Case(6), "end block K3; reserve three colors");
            return self.reserve_plan(c, label, v, 3);
        }
        if let Some((b, _, _)) = ends.iter().find(|(b, _, _)| c.bd.blocks[*b].len() != 4) {
            return Err(Error::Precondition(format!(
                "component {:?} has an end block on {} vertices",
                c.verts,
                c.bd.blocks[*b].len()
            )));
        }
        let (_, v1, rest) = &ends[0];
        let pairs = ordered_pairs(rest);
        if let Some((u, col)) = c.unequal(&pairs) {
            let label = self.label(CaseId::Case(7), format!("end blocks K4; unequal lists at {}", c.verts[u]));
            return Ok(self.precolor_plan(c, label, &[(u, col)]));
        }
        if let Some((u, v, aux)) = c.aux_trick(&pairs) {
            return Ok(self.aux_plan(c, CaseId::Sub(7, 'a'), u, v, aux));
        }
        Ok(Step::Split7b {
            label: self.label(
                CaseId::Sub(7, 'b'),
                format!("end block K4 at {}; equal lists, same big neighbors", c.verts[*v1]),
            ),
            v1: c.verts[*v1],
            rest: c.ids(rest),
        })
    }

    fn plan_3(&self, c: &Comp) -> Result<Step> {
        let n = c.h.n();
        if n == 1 {
            let col = *c.list(0).first().expect("lists are nonempty");
            let label = self.label(CaseId::Case(1), "H is a single vertex");
            return Ok(self.precolor_plan(c, label, &[(0, col)]));
        }
        let ends = c.end_blocks();
        let end_of = |len: usize| ends.iter().find(|(b, _, _)| c.bd.blocks[*b].len() == len);
        let pair = if n == 2 {
            Some(vec![0, 1])
        } else {
            end_of(3).map(|(_, _, rest)| rest.clone())
        };
        if let Some(vs) = pair {
            let pairs = ordered_pairs(&vs);
            if let Some((u, col)) = c.unequal(&pairs) {
                let label = self.label(CaseId::Case(2), format!("K2 or end block K3; unequal lists at {}", c.verts[u]));
                return Ok(self.precolor_plan(c, label, &[(u, col)]));
            }
            if let Some((u, v, aux)) = c.aux_trick(&pairs) {
                return Ok(self.aux_plan(c, CaseId::Sub(2, 'a'), u, v, aux));
            }
            return Err(self.contradiction(c, "2b"));
        }
        let cycle_path = if c.is_odd_cycle() {
            let order = c.cycle_order(0, 0);
            Some(order[..n - 1].to_vec())
        } else {
            ends.iter()
                .find(|(b, _, _)| c.bd.blocks[*b].len() >= 5 && is_odd_cycle_block(&c.h, &c.bd.blocks[*b]))
                .map(|(b, cut, _)| c.cycle_order(*b, *cut)[1..].to_vec())
        };
        if let Some(path) = cycle_path {
            let pairs = path_pairs(&path);
            if let Some((u, col)) = c.unequal(&pairs) {
                let label = self.label(CaseId::Case(3), format!("odd cycle; unequal lists at {}", c.verts[u]));
                return Ok(self.precolor_plan(c, label, &[(u, col)]));
            }
            if let Some((u, v, aux)) = c.aux_trick(&pairs) {
                return Ok(self.aux_plan(c, CaseId::Case(3), u, v, aux));
            }
            return Err(self.contradiction(c, "3"));
        }
        let triple = if c.h.is_complete() {
            if n > 4 {
                return Err(Error::Precondition(format!("component {:?} is K{n}", c.verts)));
            }
            Some(vec![0, 1, 2])
        } else {
            end_of(4).map(|(_, _, rest)| rest.clone())
        };
        if let Some(vs) = triple {
            let pairs = ordered_pairs(&vs);
            if let Some((u, col)) = c.unequal(&pairs) {
                let label = self.label(CaseId::Case(4), format!("K3, K4 or end block K4; unequal lists at {}", c.verts[u]));
                return Ok(self.precolor_plan(c, label, &[(u, col)]));
            }
            if let Some((u, v, aux)) = c.aux_trick(&pairs) {
                return Ok(self.aux_plan(c, CaseId::Case(4), u, v, aux));
            }
            return Err(self.contradiction(c, "4"));
        }
        if let Some((_, _, rest)) = end_of(2) {
            if self.k < 7 {
                return Err(Error::Precondition(format!(
                    "all end blocks K2 at k = {}: not covered below k = 7",
                    self.k
                )));
            }
            let label = self.label(CaseId::Case(5), "all end blocks K2; reserve two colors");
            return self.reserve_plan(c, label, rest[0], 2);
        }
        Err(Error::Internal(format!("component {:?} matches no case", c.verts)))
    }

    /// Colors `g` (not necessarily connected) under relaxed lists
    /// `|L(v)| >= min(d(v), k)`. `origin` maps local ids to top-level ids.
    fn run(&self, g: &Graph, lists: &ListAssignment, origin: &[Vertex]) -> Result<(Colors, PeelTrace)> {
        let n = g.n();
        let mut trace = PeelTrace::new(self.mode, self.k, n);
        if n == 0 {
            return Ok((Vec::new(), trace));
        }
        let comps = g.components();
        if comps.len() > 1 {
            trace.route = Route::Components;
            let mut colors = vec![0; n];
            for comp in comps {
                let (sub, _) = g.induced(&comp);
                let o: Vec<Vertex> = comp.iter().map(|&v| origin[v]).collect();
                let (cs, t) = self.run(&sub, &lists.restrict(&comp), &o)?;
                for (i, &v) in comp.iter().enumerate() {
                    colors[v] = cs[i];
                }
                trace.children.push(t);
            }
            return Ok((colors, trace));
        }
        let small: Vec<bool> = (0..n).map(|v| g.degree(v) < self.k).collect();
        let fits = (0..n).all(|v| lists.list(v).len() >= g.degree(v));
        if small.iter().all(|&s| !s) {
            trace.route = Route::AllBig;
            return Ok((self.exact(g, lists)?, trace));
        }
        if is_gallai_tree(g) || small.iter().all(|&s| s) {
            if fits {
                if let Ok(c) = color_degree_choosable(g, lists) {
                    trace.route = Route::AllSmall;
                    return Ok((total(c), trace));
                }
            }
            trace.route = Route::Fallback("Gallai tree or all-small subproblem".into());
            return Ok((self.exact(g, lists)?, trace));
        }
        let s_comps = g.components_within(Some(&small));
        let s_all: Vec<Vertex> = (0..n).filter(|&v| small[v]).collect();
        if s_comps.len() > 1 && component_distance(g, &s_all) < 3 {
            trace.route = Route::Fallback("small components closer than 3".into());
            return Ok((self.exact(g, lists)?, trace));
        }
        let mut plans = Vec::new();
        for verts in &s_comps {
            let comp = Comp::new(g, lists, &small, verts);
            match self.plan(&comp)? {
                Step::Plan(p) => plans.push(p),
                Step::Split3 { label, rest, cut } => {
                    return self.split3(g, lists, origin, verts, label, &rest, cut);
                }
                Step::Split7b { label, v1, rest } => {
                    return self.split7b(g, lists, origin, verts, label, v1, &rest);
                }
            }
        }
        self.execute(g, lists, origin, &small, &s_comps, plans, trace)
    }

    #[allow(clippy::too_many_arguments)]
    fn execute(
        &self,
        g: &Graph,
        lists: &ListAssignment,
        origin: &[Vertex],
        small: &[bool],
        s_comps: &[Vec<Vertex>],
        plans: Vec<Plan>,
        mut trace: PeelTrace,
    ) -> Result<(Colors, PeelTrace)> {
        let n = g.n();
        let bound = match self.mode {
            Mode::K8 => 3,
            Mode::ThreeConnected => 2,
        };
        let mut colors: Vec<Option<Color>> = vec![None; n];
        let mut work = lists.clone();
        let mut records = Vec::new();
        let mut per_big: BTreeMap<Vertex, usize> = BTreeMap::new();
        for (verts, p) in s_comps.iter().zip(&plans) {
            let mut deleted: BTreeMap<Vertex, Vec<Color>> = BTreeMap::new();
            let mut strike = |v: Vertex, cs: &BTreeSet<Color>, work: &mut ListAssignment| {
                for &w in g.neighbors(v) {
                    if small[w] {
                        continue;
                    }
                    for &col in cs {
                        if work.list_mut(w).remove(&col) {
                            deleted.entry(w).or_default().push(col);
                        }
                    }
                }
            };
            for &(v, col) in &p.precolor {
                colors[v] = Some(col);
                strike(v, &BTreeSet::from([col]), &mut work);
            }
            for (v, cs) in &p.reserve {
                strike(*v, cs, &mut work);
            }
            for (w, cs) in &deleted {
                *per_big.entry(*w).or_default() += cs.len();
            }
            records.push(ComponentRecord {
                vertices: verts.iter().map(|&v| origin[v]).collect(),
                label: p.label.clone(),
                precolored: p.precolor.iter().map(|&(v, c)| (origin[v], c)).collect(),
                reserved: p
                    .reserve
                    .iter()
                    .map(|(v, cs)| (origin[*v], cs.iter().copied().collect()))
                    .collect(),
                deleted: deleted.into_iter().map(|(w, cs)| (origin[w], cs)).collect(),
                deferred: p.deferred.iter().map(|&v| origin[v]).collect(),
                aux_edges: p.aux.iter().map(|&(u, v)| (origin[u], origin[v])).collect(),
                reinsertion: None,
            });
        }
        if let Some((&w, &cnt)) = per_big.iter().find(|(_, &c)| c > bound) {
            return Err(Error::Internal(format!(
                "big vertex {} lost {cnt} colors (bound {bound})",
                origin[w]
            )));
        }

        // Big remainder, with auxiliary edges.
        let big: Vec<Vertex> = (0..n).filter(|&v| !small[v]).collect();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in big.iter().enumerate() {
            pos[v] = i;
        }
        let (mut gb, _) = g.induced(&big);
        let aux: Vec<(Vertex, Vertex)> = plans.iter().flat_map(|p| p.aux.iter().copied()).collect();
        for &(u, v) in &aux {
            gb.insert_edge(pos[u], pos[v]);
        }
        if !aux.is_empty() {
            let mut modified = g.clone();
            for &(u, v) in &aux {
                modified.insert_edge(u, v);
            }
            let gone: Vec<Vertex> = s_comps
                .iter()
                .zip(&plans)
                .filter(|(_, p)| !p.aux.is_empty())
                .flat_map(|(vs, _)| vs.iter().copied())
                .collect();
            let keep: Vec<Vertex> = (0..n).filter(|v| !gone.contains(v)).collect();
            let (reduced, _) = modified.induced(&keep);
            trace.aux_minor_check = Some(minor_status(&reduced, self.opts.minor_nodes).map_err(|e| {
                Error::Internal(format!("auxiliary edges created a K5 minor: {e}"))
            })?);
        }
        if let Some(&v) = big.iter().find(|&&v| work.list(v).len() < 5.min(lists.list(v).len())) {
            return Err(Error::Internal(format!(
                "big vertex {} kept {} colors",
                origin[v],
                work.list(v).len()
            )));
        }
        let big_colors = self.exact(&gb, &work.restrict(&big))?;
        for (i, &v) in big.iter().enumerate() {
            colors[v] = Some(big_colors[i]);
        }

        // Put the deferred parts back.
        for (p, rec) in plans.iter().zip(records.iter_mut()) {
            if p.deferred.is_empty() {
                continue;
            }
            let (hd, _) = g.induced(&p.deferred);
            let mut reduced = Vec::with_capacity(p.deferred.len());
            for &v in &p.deferred {
                let base = p
                    .reserve
                    .iter()
                    .find(|(r, _)| *r == v)
                    .map(|(_, cs)| cs.clone())
                    .unwrap_or_else(|| lists.list(v).clone());
                let used: BTreeSet<Color> = g.neighbors(v).iter().filter_map(|&w| colors[w]).collect();
                reduced.push(base.difference(&used).copied().collect::<BTreeSet<Color>>());
            }
            let rl = ListAssignment::from_sets_unchecked(reduced);
            let local = |i: usize| origin[p.deferred[i]];
            if !hd.is_connected() {
                return Err(Error::Internal(format!("deferred part {:?} is disconnected", rec.deferred)));
            }
            if let Some(i) = (0..hd.n()).find(|&i| rl.list(i).len() < hd.degree(i)) {
                return Err(Error::Internal(format!(
                    "deferred vertex {} has fewer colors than neighbors",
                    local(i)
                )));
            }
            rec.reinsertion = Some(reinsertion_condition(&hd, &rl).map(|r| match r {
                Reinsertion::NotGallai => r,
                Reinsertion::Surplus(v) => Reinsertion::Surplus(local(v)),
                Reinsertion::UnequalLists(u, v) => Reinsertion::UnequalLists(local(u), local(v)),
            }).ok_or_else(|| {
                Error::Internal(format!("deferred part {:?} meets none of the reinsertion conditions", rec.deferred))
            })?);
            let col = color_degree_choosable(&hd, &rl)?;
            for (i, &v) in p.deferred.iter().enumerate() {
                colors[v] = col.get(i);
            }
        }
        trace.components = records;
        let out: Colors = colors
            .into_iter()
            .map(|c| c.ok_or_else(|| Error::Internal("vertex left uncolored".into())))
            .collect::<Result<_>>()?;
        verify(g, lists, &out)?;
        Ok((out, trace))
    }

    #[allow(clippy::too_many_arguments)]
    fn split3(
        &self,
        g: &Graph,
        lists: &ListAssignment,
        origin: &[Vertex],
        verts: &[Vertex],
        label: CaseLabel,
        rest: &[Vertex],
        cut: Vertex,
    ) -> Result<(Colors, PeelTrace)> {
        let n = g.n();
        let (gx, _) = g.induced(rest);
        let cx = color_degree_choosable(&gx, &lists.restrict(rest))?;
        let mut colors: Vec<Option<Color>> = vec![None; n];
        for (i, &v) in rest.iter().enumerate() {
            colors[v] = cx.get(i);
        }
        let remain: Vec<Vertex> = (0..n).filter(|v| !rest.contains(v)).collect();
        let (g2, _) = g.induced(&remain);
        let mut l2 = lists.restrict(&remain);
        let ci = remain.binary_search(&cut).expect("cut vertex stays");
        for &x in g.neighbors(cut) {
            if let Some(col) = colors[x] {
                l2.list_mut(ci).remove(&col);
            }
        }
        let o2: Vec<Vertex> = remain.iter().map(|&v| origin[v]).collect();
        let (c2, child) = self.run(&g2, &l2, &o2)?;
        for (i, &v) in remain.iter().enumerate() {
            colors[v] = Some(c2[i]);
        }
        let mut trace = PeelTrace::new(self.mode, self.k, n);
        trace.route = Route::Split;
        trace.components.push(ComponentRecord {
            vertices: verts.iter().map(|&v| origin[v]).collect(),
            label,
            precolored: rest.iter().map(|&v| (origin[v], colors[v].unwrap())).collect(),
            reserved: Vec::new(),
            deleted: Vec::new(),
            deferred: Vec::new(),
            aux_edges: Vec::new(),
            reinsertion: None,
        });
        trace.children.push(child);
        let out = total_opt(colors)?;
        verify(g, lists, &out)?;
        Ok((out, trace))
    }

    #[allow(clippy::too_many_arguments)]
    fn split7b(
        &self,
        g: &Graph,
        lists: &ListAssignment,
        origin: &[Vertex],
        verts: &[Vertex],
        label: CaseLabel,
        v1: Vertex,
        rest: &[Vertex],
    ) -> Result<(Colors, PeelTrace)> {
        let n = g.n();
        let mut cut = g.clone();
        for &v in rest {
            cut.remove_edge(v1, v);
        }
        let parts = cut.components();
        let side1 = parts.iter().find(|p| p.contains(&v1)).expect("v1 is somewhere").clone();
        if side1.contains(&rest[0]) {
            return Err(Error::Internal(format!(
                "case 7b: removing the edges at {} leaves the graph connected; {}",
                origin[v1],
                minor_evidence(g, self.opts.minor_nodes)
            )));
        }
        let side2: Vec<Vertex> = (0..n).filter(|v| !side1.contains(v)).collect();
        let mut colors: Vec<Option<Color>> = vec![None; n];
        let mut trace = PeelTrace::new(self.mode, self.k, n);
        trace.route = Route::Split;

        let (g1, _) = cut.induced(&side1);
        let o1: Vec<Vertex> = side1.iter().map(|&v| origin[v]).collect();
        let (c1, t1) = self.run(&g1, &lists.restrict(&side1), &o1)?;
        for (i, &v) in side1.iter().enumerate() {
            colors[v] = Some(c1[i]);
        }
        let c_v1 = colors[v1].unwrap();
        let (g2, _) = cut.induced(&side2);
        let mut l2 = lists.restrict(&side2);
        for &v in rest {
            let i = side2.binary_search(&v).expect("rest lies on the far side");
            l2.list_mut(i).remove(&c_v1);
        }
        let o2: Vec<Vertex> = side2.iter().map(|&v| origin[v]).collect();
        let (c2, t2) = self.run(&g2, &l2, &o2)?;
        for (i, &v) in side2.iter().enumerate() {
            colors[v] = Some(c2[i]);
        }
        trace.components.push(ComponentRecord {
            vertices: verts.iter().map(|&v| origin[v]).collect(),
            label,
            precolored: Vec::new(),
            reserved: Vec::new(),
            deleted: Vec::new(),
            deferred: Vec::new(),
            aux_edges: Vec::new(),
            reinsertion: None,
        });
        trace.children.push(t1);
        trace.children.push(t2);
        let out = total_opt(colors)?;
        verify(g, lists, &out)?;
        Ok((out, trace))
    }
}

fn total(c: Coloring) -> Colors {
    c.as_slice().iter().map(|x| x.expect("total coloring")).collect()
}

fn total_opt(c: Vec<Option<Color>>) -> Result<Colors> {
    c.into_iter()
        .map(|x| x.ok_or_else(|| Error::Internal("vertex left uncolored".into())))
        .collect()
}

fn verify(g: &Graph, lists: &ListAssignment, colors: &[Color]) -> Result<()> {
    if check_coloring(g, lists, &Coloring::from_total(colors.to_vec())) {
        Ok(())
    } else {
        Err(Error::Internal("peeling produced an invalid coloring".into()))
    }
}

/// Which of the three coloring conditions a connected deferred part meets:
/// not a Gallai tree, a vertex with spare colors, or adjacent non-cut
/// vertices with different lists.
pub fn reinsertion_condition(h: &Graph, lists: &ListAssignment) -> Option<Reinsertion> {
    if !is_gallai_tree(h) {
        return Some(Reinsertion::NotGallai);
    }
    if let Some(v) = (0..h.n()).find(|&v| lists.list(v).len() > h.degree(v)) {
        return Some(Reinsertion::Surplus(v));
    }
    let bd = block_decomposition(h);
    for u in 0..h.n() {
        if bd.is_cut_vertex(u) {
            continue;
        }
        for &v in h.neighbors(u) {
            if v > u && !bd.is_cut_vertex(v) && lists.list(u) != lists.list(v) {
                return Some(Reinsertion::UnequalLists(u, v));
            }
        }
    }
    None
}

fn check_small_spacing(g: &Graph, k: usize, need: usize) -> Result<()> {
    let (s, _) = small_big_split(g, k);
    let mut mask = vec![false; g.n()];
    for &v in &s {
        mask[v] = true;
    }
    if g.components_within(Some(&mask)).len() > 1 {
        let d = component_distance(g, &s);
        if d < need {
            return Err(Error::Precondition(format!("d(S_{k}) = {d}, need at least {need}")));
        }
    }
    Ok(())
}

fn check_common(g: &Graph, lists: &ListAssignment, k: usize) -> Result<()> {
    lists.check_against(g)?;
    if !validate_f_assignment(g, lists, k) {
        return Err(Error::Precondition(format!("lists are not min(d(v), {k})-sized")));
    }
    Ok(())
}

/// Colors a K5-minor-free graph with `|L(v)| = min(d(v), k)`, `k >= 8`,
/// `d(S_k) >= 3` (or a single small component) and no Gallai-tree component.
pub fn peel_color_k8(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    opts: PeelOptions,
) -> Result<(Coloring, PeelTrace)> {
    if k < 8 {
        return Err(Error::Precondition(format!("k8 mode needs k >= 8, got {k}")));
    }
    check_common(g, lists, k)?;
    check_small_spacing(g, k, 3)?;
    for comp in g.components() {
        let (sub, _) = g.induced(&comp);
        if is_gallai_tree(&sub) {
            return Err(Error::Precondition(format!("component {comp:?} is a Gallai tree")));
        }
    }
    let minor = minor_status(g, opts.minor_nodes)?;
    let p = Peeler { mode: Mode::K8, k, opts };
    let origin: Vec<Vertex> = (0..g.n()).collect();
    let (c, mut trace) = p.run(g, lists, &origin)?;
    trace.minor_check = Some(minor);
    Ok((Coloring::from_total(c), trace))
}

/// Colors a 3-connected, non-complete, K5-minor-free graph with
/// `|L(v)| = min(d(v), k)`, `k >= 7`, `d(S_k) >= 3` (or a single small
/// component). With `allow_k6`, `k = 6` is accepted too.
pub fn peel_color_3connected(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    opts: PeelOptions,
) -> Result<(Coloring, PeelTrace)> {
    if k < 7 && !(k == 6 && opts.allow_k6) {
        return Err(Error::Precondition(format!("three-connected mode needs k >= 7, got {k}")));
    }
    check_common(g, lists, k)?;
    if g.is_complete() {
        return Err(Error::Precondition("graph is complete".into()));
    }
    let kappa = vertex_connectivity(g);
    if kappa < 3 {
        return Err(Error::Precondition(format!("graph is only {kappa}-connected")));
    }
    check_small_spacing(g, k, 3)?;
    let minor = minor_status(g, opts.minor_nodes)?;
    let p = Peeler {
        mode: Mode::ThreeConnected,
        k,
        opts,
    };
    let origin: Vec<Vertex> = (0..g.n()).collect();
    let (c, mut trace) = p.run(g, lists, &origin)?;
    trace.minor_check = Some(minor);
    Ok((Coloring::from_total(c), trace))
}

/// The case a small-degree component `h` (vertex set) falls into, with lists
/// as given. Neither `g` nor `lists` is modified.
pub fn classify_component_case(
    g: &Graph,
    lists: &ListAssignment,
    h: &[Vertex],
    k: usize,
    mode: Mode,
) -> Result<CaseLabel> {
    lists.check_against(g)?;
    let small: Vec<bool> = (0..g.n()).map(|v| g.degree(v) < k).collect();
    let mut verts = h.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if verts.is_empty() || verts.iter().any(|&v| v >= g.n() || !small[v]) {
        return Err(Error::Precondition("component must be a nonempty set of small vertices".into()));
    }
    let comp = Comp::new(g, lists, &small, &verts);
    if !comp.h.is_connected() {
        return Err(Error::Precondition("component is not connected".into()));
    }
    let p = Peeler {
        mode,
        k,
        opts: PeelOptions {
            minor_nodes: 0,
            ..PeelOptions::default()
        },
    };
    Ok(p.plan(&comp)?.label().clone())
}

fn color_big_rest(
    g: &Graph,
    work: &ListAssignment,
    colors: &mut [Option<Color>],
    budget: SolveBudget,
) -> Result<()> {
    let rest: Vec<Vertex> = (0..g.n()).filter(|&v| colors[v].is_none()).collect();
    let (gr, _) = g.induced(&rest);
    let res = solve_exact(&gr, &work.restrict(&rest), budget)?;
    match res.verdict {
        Verdict::Colorable => {
            let c = res.coloring.expect("colorable result carries a coloring");
            for (i, &v) in rest.iter().enumerate() {
                colors[v] = c.get(i);
            }
            Ok(())
        }
        Verdict::Uncolorable => Err(Error::Internal("remaining big vertices have no coloring".into())),
        Verdict::BudgetExceeded => Err(Error::BudgetExceeded(res.nodes)),
    }
}

/// Colors every vertex of degree at most 5 first (they are pairwise at
/// distance at least 3), then the rest, whose lists keep at least 5 colors.
pub fn color_distance3(g: &Graph, lists: &ListAssignment, budget: SolveBudget) -> Result<Coloring> {
    check_common(g, lists, 6)?;
    let small: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) <= 5).collect();
    let dist_ok = small.iter().all(|&v| {
        let d = g.distances_from(&[v]);
        small.iter().all(|&u| u == v || d[u] >= 3)
    });
    if !dist_ok {
        return Err(Error::Precondition("vertices of degree at most 5 are closer than 3".into()));
    }
    let mut colors: Vec<Option<Color>> = vec![None; g.n()];
    let mut work = lists.clone();
    for &v in &small {
        let c = *lists.list(v).first().expect("lists are nonempty");
        colors[v] = Some(c);
        for &w in g.neighbors(v) {
            work.list_mut(w).remove(&c);
        }
    }
    color_big_rest(g, &work, &mut colors, budget)?;
    let out = Coloring::from_total(total_opt(colors)?);
    if !check_coloring(g, lists, &out) {
        return Err(Error::Internal("distance-3 coloring is invalid".into()));
    }
    Ok(out)
}

/// Colors a graph whose small components are at distance at least 5: one
/// big helper per component takes a color outside its small neighbor's
/// list, the big vertices are colored, then each component is finished from
/// the neighbor that kept a spare color.
pub fn color_far_components(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    budget: SolveBudget,
) -> Result<Coloring> {
    if k < 6 {
        return Err(Error::Precondition(format!("needs k >= 6, got {k}")));
    }
    check_common(g, lists, k)?;
    check_small_spacing(g, k, 5)?;
    let n = g.n();
    let small: Vec<bool> = (0..n).map(|v| g.degree(v) < k).collect();
    let comps = g.components_within(Some(&small));
    let mut colors: Vec<Option<Color>> = vec![None; n];
    let mut work = lists.clone();
    for comp in &comps {
        let helper = comp.iter().find_map(|&v| {
            g.neighbors(v).iter().find(|&&w| !small[w]).map(|&w| (v, w))
        });
        let Some((v, w)) = helper else {
            // A whole connected component of small vertices.
            let (h, _) = g.induced(comp);
            let c = color_degree_choosable(&h, &lists.restrict(comp))?;
            for (i, &x) in comp.iter().enumerate() {
                colors[x] = c.get(i);
            }
            continue;
        };
        let c = *lists
            .list(w)
            .difference(lists.list(v))
            .next()
            .ok_or_else(|| Error::Internal(format!("helper {w} has no color outside L({v})")))?;
        colors[w] = Some(c);
        for &x in g.neighbors(w) {
            work.list_mut(x).remove(&c);
        }
    }
    // Big vertices other than helpers: at most one helper neighbor each.
    let rest_big: Vec<Vertex> = (0..n).filter(|&v| !small[v] && colors[v].is_none()).collect();
    let mut big_only = colors.clone();
    for v in 0..n {
        if small[v] && big_only[v].is_none() {
            big_only[v] = Some(0);
        }
    }
    if !rest_big.is_empty() {
        color_big_rest(g, &work, &mut big_only, budget)?;
        for &v in &rest_big {
            colors[v] = big_only[v];
        }
    }
    for comp in &comps {
        if comp.iter().all(|&v| colors[v].is_some()) {
            continue;
        }
        let (h, _) = g.induced(comp);
        let reduced: Vec<BTreeSet<Color>> = comp
            .iter()
            .map(|&v| {
                let used: BTreeSet<Color> = g.neighbors(v).iter().filter_map(|&w| colors[w]).collect();
                lists.list(v).difference(&used).copied().collect()
            })
            .collect();
        let c = color_degree_choosable(&h, &ListAssignment::from_sets_unchecked(reduced))?;
        for (i, &v) in comp.iter().enumerate() {
            colors[v] = c.get(i);
        }
    }
    let out = Coloring::from_total(total_opt(colors)?);
    if !check_coloring(g, lists, &out) {
        return Err(Error::Internal("far-components coloring is invalid".into()));
    }
    Ok(out)
}
