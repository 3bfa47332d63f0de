//! Counterexample constructions: each generator returns the graph, its list
//! assignment and the properties the construction is supposed to have.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{small_distance, validate_f_assignment, Color, Graph, ListAssignment, Vertex};
use crate::structure::{is_planar, vertex_connectivity};

/// Metadata is recomputed at generation time up to this many vertices.
pub const AUDIT_LIMIT: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    Colorable,
    Uncolorable,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Colorable => "colorable",
            Claim::Uncolorable => "uncolorable",
        })
    }
}

/// Claimed properties of a generated instance. `None` means the construction
/// makes no claim (or the value could not be audited).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GadgetMeta {
    pub k: usize,
    pub claim: Option<Claim>,
    pub min_degree: Option<usize>,
    pub connectivity: Option<usize>,
    pub small_distance: Option<usize>,
    pub planar: Option<bool>,
    /// Whether the lists form an f-assignment for `k`.
    pub f_assignment: bool,
    pub provenance: String,
    /// Properties taken on trust from the construction rather than recomputed.
    pub trusted: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub meta: GadgetMeta,
}

impl GadgetInstance {
    /// Recomputes degree, distance, planarity and f-assignment metadata;
    /// connectivity only up to [`AUDIT_LIMIT`] vertices.
    fn audit(&mut self) {
        let g = &self.graph;
        self.meta.min_degree = Some(g.min_degree());
        self.meta.planar = Some(is_planar(g));
        self.meta.small_distance = Some(small_distance(g, self.meta.k));
        self.meta.f_assignment = validate_f_assignment(g, &self.lists, self.meta.k);
        if g.n() <= AUDIT_LIMIT {
            self.meta.connectivity = Some(vertex_connectivity(g));
        }
    }
}

fn palette(k: usize) -> BTreeSet<Color> {
    (1..=k as Color).collect()
}

/// All `r`-subsets of `1..=k` in lexicographic order.
fn subsets(k: usize, r: usize) -> Vec<Vec<Color>> {
    fn rec(start: Color, k: Color, r: usize, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..=k {
            cur.push(c);
            rec(c + 1, k, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, k as Color, r, &mut Vec::new(), &mut out);
    out
}

/// Two adjacent hubs `x`, `y` and, for each pair `{i, j}` of colors from
/// `1..=k`, an edge `u v` joined to both hubs with lists `{0, i, j}`. Whatever
/// pair the hubs take, the matching edge is left with color 0 only.
///
/// Vertex ids: `x = 0`, `y = 1`, `u_i = 2 + 2i`, `v_i = 3 + 2i`.
pub fn gen_fig1(k: usize) -> Result<GadgetInstance> {
    if k < 3 {
        return Err(Error::Precondition(format!("fig1 needs k >= 3, got {k}")));
    }
    let pairs = subsets(k, 2);
    let s = pairs.len();
    let mut g = Graph::new(2 + 2 * s);
    g.insert_edge(0, 1);
    let mut lists = vec![palette(k), palette(k)];
    for (i, pair) in pairs.iter().enumerate() {
        let (u, v) = (2 + 2 * i, 3 + 2 * i);
        for hub in [0, 1] {
            g.insert_edge(hub, u);
            g.insert_edge(hub, v);
        }
        g.insert_edge(u, v);
        let l: BTreeSet<Color> = std::iter::once(0).chain(pair.iter().copied()).collect();
        lists.push(l.clone());
        lists.push(l);
    }
    let mut inst = GadgetInstance {
        graph: g,
        lists: ListAssignment::new(lists)?,
        meta: GadgetMeta {
            k,
            claim: Some(Claim::Uncolorable),
            provenance: "two hubs with one list-{0,i,j} edge per color pair".into(),
            ..Default::default()
        },
    };
    inst.audit();
    if inst.meta.small_distance != Some(2) {
        inst.meta.notes.push(format!(
            "computed d(S_{k}) = {}, not the 2 the construction is meant to show",
            inst.meta.small_distance.unwrap_or(0)
        ));
    }
    Ok(inst)
}

/// A triangle `x y z` fully joined to an independent set with one vertex per
/// color triple from `1..=k`, listed by that triple.
///
/// Vertex ids: `x, y, z = 0, 1, 2`, `v_i = 3 + i`.
pub fn gen_complete_minus_clique(k: usize) -> Result<GadgetInstance> {
    if k < 3 {
        return Err(Error::Precondition(format!("kplus needs k >= 3, got {k}")));
    }
    let triples = subsets(k, 3);
    let mut g = Graph::new(3 + triples.len());
    g.insert_edge(0, 1);
    g.insert_edge(0, 2);
    g.insert_edge(1, 2);
    let mut lists = vec![palette(k); 3];
    for (i, t) in triples.iter().enumerate() {
        for hub in 0..3 {
            g.insert_edge(hub, 3 + i);
        }
        lists.push(t.iter().copied().collect());
    }
    let mut inst = GadgetInstance {
        graph: g,
        lists: ListAssignment::new(lists)?,
        meta: GadgetMeta {
            k,
            claim: Some(Claim::Uncolorable),
            provenance: "triangle joined to one vertex per color triple".into(),
            ..Default::default()
        },
    };
    inst.audit();
    Ok(inst)
}

/// Joins every base vertex to its own clique on `k - 4` new vertices. The
/// new vertices all get the same `k - 4` fresh colors, which are also added
/// to every base list. The result is colorable iff the base instance is.
///
/// Vertex ids: base vertices keep their ids; the clique of base vertex `v`
/// is `n + v * t .. n + (v + 1) * t` with `t = k - 4`.
pub fn gen_triangle_augmented(
    base: &Graph,
    base_lists: &ListAssignment,
    k: usize,
) -> Result<GadgetInstance> {
    if !(5..=7).contains(&k) {
        return Err(Error::Precondition(format!("k must be 5, 6 or 7, got {k}")));
    }
    base_lists.check_against(base)?;
    if base.min_degree() < 4 {
        return Err(Error::Precondition("base graph needs minimum degree 4".into()));
    }
    if let Some(v) = (0..base.n()).find(|&v| base_lists.list(v).len() != 4) {
        return Err(Error::Precondition(format!("base list of vertex {v} is not a 4-list")));
    }
    let t = k - 4;
    let first = base_lists.max_color().map_or(0, |c| c + 1);
    let fresh: BTreeSet<Color> = (first..first + t as Color).collect();
    let n = base.n();
    let mut g = base.clone();
    let mut lists: Vec<BTreeSet<Color>> = (0..n)
        .map(|v| base_lists.list(v).union(&fresh).copied().collect())
        .collect();
    for v in 0..n {
        let clique: Vec<Vertex> = (0..t).map(|_| g.add_vertex()).collect();
        for (i, &a) in clique.iter().enumerate() {
            g.insert_edge(v, a);
            for &b in &clique[i + 1..] {
                g.insert_edge(a, b);
            }
            lists.push(fresh.clone());
        }
    }
    let mut inst = GadgetInstance {
        graph: g,
        lists: ListAssignment::new(lists)?,
        meta: GadgetMeta {
            k,
            claim: None,
            provenance: format!("base joined to K{t} cliques on {t} fresh colors"),
            notes: vec!["colorable exactly when the base instance is".into()],
            ..Default::default()
        },
    };
    inst.audit();
    Ok(inst)
}

/// Corners of the six triangular faces of the frame, as (first ring vertex,
/// second ring vertex, hub) with ring vertices indexed 0..4 and hub 0 = x,
/// 1 = y.
const FACES: [(usize, usize, usize); 6] = [(0, 1, 0), (0, 1, 1), (1, 2, 0), (1, 2, 1), (2, 3, 0), (2, 3, 1)];

/// Prescribed corner colors per face; `None` stands for the hub's color.
const PRESCRIBED: [[Option<Color>; 3]; 6] = [
    [Some(2), Some(1), None],
    [Some(3), Some(1), None],
    [Some(2), Some(3), None],
    [Some(3), Some(2), None],
    [Some(1), Some(2), None],
    [Some(1), Some(3), None],
];

/// Vertices of one face filling, relative to the face's first vertex.
pub const FACE_SIZE: usize = 4;
/// Vertices of one frame copy besides the two hubs.
pub const COPY_SIZE: usize = 4 + 6 * FACE_SIZE;

/// Appends one copy of the planar frame (ring `u_1..u_4`, six filled faces)
/// to `g`, attached to hubs `x` and `y`. Returns the ring vertices.
fn append_h_copy(
    g: &mut Graph,
    lists: &mut Vec<BTreeSet<Color>>,
    x: Vertex,
    y: Vertex,
    a: Color,
    b: Color,
) -> [Vertex; 4] {
    let ring: [Vertex; 4] = std::array::from_fn(|_| g.add_vertex());
    let ring_list: BTreeSet<Color> = [a, b, 1, 2, 3].into_iter().collect();
    for &u in &ring {
        g.insert_edge(x, u);
        g.insert_edge(y, u);
        lists.push(ring_list.clone());
    }
    for i in 0..3 {
        g.insert_edge(ring[i], ring[i + 1]);
    }
    for (face, colors) in FACES.iter().zip(PRESCRIBED) {
        let hub = if face.2 == 0 { x } else { y };
        let hub_color = if face.2 == 0 { a } else { b };
        let corners = [ring[face.0], ring[face.1], hub];
        let [alpha, beta, gamma] = colors.map(|c| c.unwrap_or(hub_color));
        let w: [Vertex; 3] = std::array::from_fn(|_| g.add_vertex());
        let z = g.add_vertex();
        // w1 sees the alpha and beta corners, w2 beta and gamma, w3 alpha and gamma.
        let sees = [(0, 1), (1, 2), (0, 2)];
        let pair_colors = [(alpha, beta), (beta, gamma), (alpha, gamma)];
        for i in 0..3 {
            g.insert_edge(w[i], corners[sees[i].0]);
            g.insert_edge(w[i], corners[sees[i].1]);
            g.insert_edge(w[i], z);
            g.insert_edge(w[i], w[(i + 1) % 3]);
            let (p, q) = pair_colors[i];
            lists.push([p, q, 4, 5, 6].into_iter().collect());
        }
        lists.push([4, 5, 6].into_iter().collect());
    }
    ring
}

fn check_hub_colors(a: Color, b: Color) -> Result<()> {
    for c in [a, b] {
        if (1..=6).contains(&c) {
            return Err(Error::ColorClash(c));
        }
    }
    if a == b {
        return Err(Error::ColorClash(a));
    }
    Ok(())
}

/// The 30-vertex planar piece with hubs precolored `a` (x) and `b` (y):
/// every coloring of the ring from `{1, 2, 3}` completes one face's
/// prescribed corner colors, and that face's center then has no color left.
///
/// Vertex ids: `x = 0`, `y = 1`, ring `2..6`, then four vertices per face
/// (`w_1, w_2, w_3, z`) in face order.
pub fn gen_h_k5(a: Color, b: Color) -> Result<GadgetInstance> {
    check_hub_colors(a, b)?;
    let mut g = Graph::new(2);
    let mut lists = vec![BTreeSet::from([a]), BTreeSet::from([b])];
    append_h_copy(&mut g, &mut lists, 0, 1, a, b);
    let mut inst = GadgetInstance {
        graph: g,
        lists: ListAssignment::new(lists)?,
        meta: GadgetMeta {
            k: 5,
            claim: Some(Claim::Uncolorable),
            provenance: "ring of four between two precolored hubs, six filled faces".into(),
            ..Default::default()
        },
    };
    inst.audit();
    Ok(inst)
}

/// Number of frame copies in [`gen_g_k5`].
pub const G_K5_COPIES: usize = 25;

/// Hub colors used by copy `(i, j)`, `0 <= i, j < 5`, in row-major order.
pub fn g_k5_copy_colors(copy: usize) -> (Color, Color) {
    (7 + (copy / 5) as Color, 12 + (copy % 5) as Color)
}

/// 25 copies of [`gen_h_k5`] sharing the hubs `x* = 0`, `y* = 1`, with
/// `L(x*) = {7..11}`, `L(y*) = {12..16}`; copy `c` (vertices
/// `2 + 28c .. 2 + 28(c + 1)`) is wired for the hub pair
/// [`g_k5_copy_colors`]`(c)`, and consecutive copies are chained by an edge
/// from the last ring vertex of one to the first ring vertex of the next.
pub fn gen_g_k5() -> Result<GadgetInstance> {
    let mut g = Graph::new(2);
    let mut lists = vec![(7..=11).collect(), (12..=16).collect()];
    let mut prev_last: Option<Vertex> = None;
    for copy in 0..G_K5_COPIES {
        let (a, b) = g_k5_copy_colors(copy);
        let ring = append_h_copy(&mut g, &mut lists, 0, 1, a, b);
        if let Some(p) = prev_last {
            g.insert_edge(p, ring[0]);
        }
        prev_last = Some(ring[3]);
    }
    let lists = ListAssignment::new(lists)?;
    let k = 5;
    let meta = GadgetMeta {
        k,
        claim: Some(Claim::Uncolorable),
        min_degree: Some(g.min_degree()),
        connectivity: Some(vertex_connectivity(&g)),
        small_distance: Some(small_distance(&g, k)),
        planar: Some(is_planar(&g)),
        f_assignment: validate_f_assignment(&g, &lists, k),
        provenance: "25 chained copies of the precolored-hub frame on shared hubs".into(),
        trusted: vec!["uncolorable (checked copy by copy)".into()],
        notes: Vec::new(),
    };
    Ok(GadgetInstance {
        graph: g,
        lists,
        meta,
    })
}

/// The subinstance of [`gen_g_k5`] induced by the hubs and copy `copy`, with
/// the hubs restricted to that copy's colors. Vertex 0 and 1 are the hubs.
pub fn g_k5_copy_instance(full: &GadgetInstance, copy: usize) -> Result<(Graph, ListAssignment)> {
    if copy >= G_K5_COPIES || full.graph.n() != 2 + G_K5_COPIES * COPY_SIZE {
        return Err(Error::Precondition(format!("no copy {copy} in this instance")));
    }
    let (a, b) = g_k5_copy_colors(copy);
    if !full.lists.list(0).contains(&a) || !full.lists.list(1).contains(&b) {
        return Err(Error::Precondition("hub lists do not contain the copy's colors".into()));
    }
    let start = 2 + copy * COPY_SIZE;
    let verts: Vec<Vertex> = [0, 1].into_iter().chain(start..start + COPY_SIZE).collect();
    let (sub, _) = full.graph.induced(&verts);
    let mut lists = full.lists.restrict(&verts);
    *lists.list_mut(0) = BTreeSet::from([a]);
    *lists.list_mut(1) = BTreeSet::from([b]);
    Ok((sub, lists))
}
