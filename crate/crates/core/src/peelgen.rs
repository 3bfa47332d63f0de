//! Seeded positive instances for the peeling algorithms: Gallai-shaped
//! small components hung on planar frames of big vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::gadgets::{Claim, GadgetInstance, GadgetMeta, AUDIT_LIMIT};
use crate::graph::{small_distance, validate_f_assignment, Color, Graph, ListAssignment, Vertex};
use crate::structure::{is_planar, vertex_connectivity};

/// Small-component shapes. Walks list the outer boundary as drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    K1,
    K2,
    K3,
    K4,
    C5,
    C7,
    P3,
    Star3,
    Bowtie,
    K3K2,
    K4K2,
    C5K2,
    K3K4,
    K4K4,
    C4,
    Diamond,
}

impl Shape {
    pub const ALL: [Shape; 16] = [
        Shape::K1,
        Shape::K2,
        Shape::K3,
        Shape::K4,
        Shape::C5,
        Shape::C7,
        Shape::P3,
        Shape::Star3,
        Shape::Bowtie,
        Shape::K3K2,
        Shape::K4K2,
        Shape::C5K2,
        Shape::K3K4,
        Shape::K4K4,
        Shape::C4,
        Shape::Diamond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::K1 => "K1",
            Shape::K2 => "K2",
            Shape::K3 => "K3",
            Shape::K4 => "K4",
            Shape::C5 => "C5",
            Shape::C7 => "C7",
            Shape::P3 => "P3",
            Shape::Star3 => "star3",
            Shape::Bowtie => "bowtie",
            Shape::K3K2 => "K3-K2",
            Shape::K4K2 => "K4-K2",
            Shape::C5K2 => "C5-K2",
            Shape::K3K4 => "K3-K4",
            Shape::K4K4 => "K4-K4",
            Shape::C4 => "C4",
            Shape::Diamond => "diamond",
        }
    }

    /// Vertex count, edges and cyclic outer walk.
    fn template(self) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
        let cycle = |n: usize| (0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>();
        let k4 = |a, b, c, d| vec![(a, b), (a, c), (a, d), (b, c), (b, d), (c, d)];
        match self {
            Shape::K1 => (1, vec![], vec![0]),
            Shape::K2 => (2, vec![(0, 1)], vec![0, 1]),
            Shape::K3 => (3, cycle(3), vec![0, 1, 2]),
            Shape::K4 => (4, k4(0, 1, 2, 3), vec![0, 1, 2]),
            Shape::C5 => (5, cycle(5), (0..5).collect()),
            Shape::C7 => (7, cycle(7), (0..7).collect()),
            Shape::P3 => (3, vec![(0, 1), (1, 2)], vec![0, 1, 2, 1]),
            Shape::Star3 => (4, vec![(0, 1), (0, 2), (0, 3)], vec![0, 1, 0, 2, 0, 3]),
            Shape::Bowtie => (5, vec![(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)], vec![0, 1, 2, 0, 3, 4]),
            Shape::K3K2 => (4, vec![(0, 1), (0, 2), (1, 2), (2, 3)], vec![0, 1, 2, 3, 2]),
            Shape::K4K2 => {
                let mut e = k4(0, 1, 2, 3);
                e.push((2, 4));
                (5, e, vec![0, 1, 2, 4, 2])
            }
            Shape::C5K2 => {
                let mut e = cycle(5);
                e.push((0, 5));
                (6, e, vec![0, 1, 2, 3, 4, 0, 5])
            }
            Shape::K3K4 => {
                let mut e = vec![(0, 1), (0, 2), (1, 2)];
                e.extend(k4(0, 3, 4, 5));
                (6, e, vec![0, 1, 2, 0, 3, 4])
            }
            Shape::K4K4 => {
                let mut e = k4(0, 1, 2, 3);
                e.extend(k4(0, 4, 5, 6));
                (7, e, vec![0, 1, 2, 0, 4, 5])
            }
            Shape::C4 => (4, cycle(4), vec![0, 1, 2, 3]),
            Shape::Diamond => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)], vec![0, 1, 2, 3]),
        }
    }

    /// Distinct vertices on the outer walk.
    fn visible(self) -> usize {
        self.template().2.iter().collect::<BTreeSet<_>>().len()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace(['.', '⋅', '_'], "-");
        Shape::ALL
            .into_iter()
            .find(|sh| sh.name().to_ascii_lowercase() == norm)
            .ok_or_else(|| Error::InfeasibleOptions(format!("unknown shape '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    /// Cut vertices allowed.
    #[default]
    Low,
    /// 3-connected frames.
    Three,
}

/// Two K4 end blocks at one vertex with equal lists, wired so the first end
/// block is split off (`SplitAtCut`) or handled by an auxiliary edge
/// (`AuxEdge`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composite {
    AuxEdge,
    SplitAtCut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ListStyle {
    /// Per component: either of the two below, chosen by the seed.
    #[default]
    Mixed,
    /// Random subsets of the palette.
    Random,
    /// Prefixes of one random color order per component: equal degrees give
    /// equal lists.
    Nested,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PeelGenOptions {
    pub connectivity: Connectivity,
    /// Shapes to draw from; empty means all that fit.
    pub shapes: Vec<Shape>,
    pub composite: Option<Composite>,
    pub lists: ListStyle,
    /// Three-connected, spacing 3: use the 12-vertex frame (true) or the
    /// 42-vertex one (false); `None` lets the seed decide.
    pub small_frame: Option<bool>,
}

/// Graph under construction plus the small components placed so far.
struct Builder {
    g: Graph,
    comps: Vec<Vec<Vertex>>,
    /// Components whose lists must be nested.
    nested: BTreeSet<usize>,
    shapes: Vec<Shape>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            g: Graph::new(0),
            comps: Vec::new(),
            nested: BTreeSet::new(),
            shapes: Vec::new(),
        }
    }

    fn vertices(&mut self, n: usize) -> Vec<Vertex> {
        (0..n).map(|_| self.g.add_vertex()).collect()
    }

    /// Adds a shape; returns its vertex ids and its outer walk in ids.
    fn place(&mut self, shape: Shape) -> (Vec<Vertex>, Vec<Vertex>) {
        let (n, edges, walk) = shape.template();
        let ids = self.vertices(n);
        for (a, b) in edges {
            self.g.insert_edge(ids[a], ids[b]);
        }
        self.comps.push(ids.clone());
        self.shapes.push(shape);
        let walk = walk.into_iter().map(|i| ids[i]).collect();
        (ids, walk)
    }
}

/// Cyclic segments of `walk` as (start, length), with distinct-vertex counts.
fn segments(walk: &[Vertex]) -> Vec<(usize, usize, usize)> {
    let l = walk.len();
    let mut out = Vec::new();
    for start in 0..l {
        for len in 1..=l {
            let distinct: BTreeSet<Vertex> = (0..len).map(|i| walk[(start + i) % l]).collect();
            out.push((start, len, distinct.len()));
        }
    }
    out
}

/// Joins `owner` to a random contiguous stretch of the walk seeing at least
/// `need` distinct vertices.
fn fan(b: &mut Builder, owner: Vertex, walk: &[Vertex], need: usize, rng: &mut StdRng) -> Result<()> {
    let ok: Vec<(usize, usize, usize)> = segments(walk).into_iter().filter(|s| s.2 >= need).collect();
    let &(start, len, _) = ok
        .choose(rng)
        .ok_or_else(|| Error::InfeasibleOptions(format!("no stretch of the walk sees {need} vertices")))?;
    for i in 0..len {
        b.g.insert_edge(owner, walk[(start + i) % walk.len()]);
    }
    Ok(())
}

fn pick_shape(pool: &[Shape], need: usize, rng: &mut StdRng) -> Result<Shape> {
    let fit: Vec<Shape> = pool.iter().copied().filter(|s| s.visible() >= need).collect();
    fit.choose(rng)
        .copied()
        .ok_or_else(|| Error::InfeasibleOptions(format!("no requested shape shows {need} vertices to its owner")))
}

/// Antiprism on rings `t`, `b` of length `r` with apexes over each ring.
struct World {
    top: Vertex,
    bottom: Vertex,
    ring: Vec<Vertex>,
}

fn add_world(b: &mut Builder, r: usize) -> World {
    let top = b.g.add_vertex();
    let bottom = b.g.add_vertex();
    let t = b.vertices(r);
    let s = b.vertices(r);
    for i in 0..r {
        let j = (i + 1) % r;
        b.g.insert_edge(t[i], t[j]);
        b.g.insert_edge(s[i], s[j]);
        b.g.insert_edge(t[i], s[i]);
        b.g.insert_edge(t[i], s[j]);
        b.g.insert_edge(top, t[i]);
        b.g.insert_edge(bottom, s[i]);
    }
    let ring = t.into_iter().chain(s).collect();
    World { top, bottom, ring }
}

/// Hangs a private component on every ring vertex of `w` and, unless
/// skipped, on each apex.
fn populate_world(
    b: &mut Builder,
    w: &World,
    r: usize,
    k: usize,
    pool: &[Shape],
    skip_top: bool,
    rng: &mut StdRng,
) -> Result<()> {
    let ring_need = k.saturating_sub(5);
    if ring_need > 0 {
        for &owner in &w.ring {
            let shape = pick_shape(pool, ring_need, rng)?;
            let (_, walk) = b.place(shape);
            fan(b, owner, &walk, ring_need, rng)?;
        }
    }
    let apex_need = k.saturating_sub(r).max(1);
    let apexes: Vec<Vertex> = if skip_top { vec![w.bottom] } else { vec![w.top, w.bottom] };
    for apex in apexes {
        let shape = pick_shape(pool, apex_need, rng)?;
        let (_, walk) = b.place(shape);
        fan(b, apex, &walk, apex_need, rng)?;
    }
    Ok(())
}

fn worlds_instance(k: usize, opts: &PeelGenOptions, rng: &mut StdRng) -> Result<Builder> {
    let pool: Vec<Shape> = if opts.shapes.is_empty() { Shape::ALL.to_vec() } else { opts.shapes.clone() };
    let r = (k - 1).max(3);
    let mut b = Builder::new();
    let w0 = add_world(&mut b, r);
    match opts.composite {
        None => populate_world(&mut b, &w0, r, k, &pool, false, rng)?,
        Some(kind) => {
            // Block A = {c, a1, a2, a3} faces the main world, block B =
            // {c, b1, b2, b3} a second one; for the auxiliary-edge variant a3
            // sees a third world instead.
            let (ids, _) = b.place(Shape::K4K4);
            b.nested.insert(b.comps.len() - 1);
            let (a, bb) = ([ids[1], ids[2], ids[3]], [ids[4], ids[5], ids[6]]);
            populate_world(&mut b, &w0, r, k, &pool, true, rng)?;
            let w1 = add_world(&mut b, r);
            populate_world(&mut b, &w1, r, k, &pool, true, rng)?;
            for x in bb {
                b.g.insert_edge(w1.top, x);
            }
            match kind {
                Composite::SplitAtCut => {
                    for x in a {
                        b.g.insert_edge(w0.top, x);
                    }
                }
                Composite::AuxEdge => {
                    b.g.insert_edge(w0.top, a[0]);
                    b.g.insert_edge(w0.top, a[1]);
                    let w2 = add_world(&mut b, r);
                    populate_world(&mut b, &w2, r, k, &pool, true, rng)?;
                    b.g.insert_edge(w2.top, a[2]);
                }
            }
        }
    }
    Ok(b)
}

/// Icosahedron faces: apex 0, upper ring 1..6, lower ring 6..11, apex 11.
fn icosahedron_faces() -> Vec<[usize; 3]> {
    let u = |i: usize| 1 + i % 5;
    let l = |i: usize| 6 + i % 5;
    let mut f = Vec::new();
    for i in 0..5 {
        f.push([0, u(i), u(i + 1)]);
        f.push([u(i), u(i + 1), l(i)]);
        f.push([l(i), l(i + 1), u(i + 1)]);
        f.push([11, l(i), l(i + 1)]);
    }
    f
}

/// Geodesic subdivision of the icosahedron with frequency `nu`: vertex
/// count and triangular faces.
pub fn geodesic(nu: usize) -> (usize, Vec<[usize; 3]>) {
    let mut ids: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
    let mut faces = Vec::new();
    let mut id = |key: Vec<(usize, usize)>| {
        let next = ids.len();
        *ids.entry(key).or_insert(next)
    };
    for [a, b, c] in icosahedron_faces() {
        let mut point = |i: usize, j: usize| {
            let mut key: Vec<(usize, usize)> = [(a, nu - i - j), (b, i), (c, j)]
                .into_iter()
                .filter(|&(_, w)| w > 0)
                .collect();
            key.sort_unstable();
            id(key)
        };
        for i in 0..nu {
            for j in 0..nu - i {
                faces.push([point(i, j), point(i + 1, j), point(i, j + 1)]);
                if i + j + 2 <= nu {
                    faces.push([point(i + 1, j), point(i, j + 1), point(i + 1, j + 1)]);
                }
            }
        }
    }
    (ids.len(), faces)
}

/// Faces covering every vertex exactly once, searched in a seeded order.
fn face_packing(n: usize, faces: &[[usize; 3]], rng: &mut StdRng) -> Option<Vec<[usize; 3]>> {
    let mut order: Vec<[usize; 3]> = faces.to_vec();
    order.shuffle(rng);
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, f) in order.iter().enumerate() {
        for &v in f {
            at[v].push(i);
        }
    }
    fn rec(covered: &mut Vec<bool>, at: &[Vec<usize>], faces: &[[usize; 3]], out: &mut Vec<usize>) -> bool {
        let Some(v) = covered.iter().position(|&c| !c) else {
            return true;
        };
        for &fi in &at[v] {
            let f = faces[fi];
            if f.iter().any(|&x| covered[x]) {
                continue;
            }
            f.iter().for_each(|&x| covered[x] = true);
            out.push(fi);
            if rec(covered, at, faces, out) {
                return true;
            }
            out.pop();
            f.iter().for_each(|&x| covered[x] = false);
        }
        false
    }
    let mut out = Vec::new();
    rec(&mut vec![false; n], &at, &order, &mut out).then(|| out.into_iter().map(|i| order[i]).collect())
}

/// Joins from the three corners of a face to a component's outer walk
/// (template ids): a triangulated annulus, then maybe a few joins dropped.
/// Corner `i` must gain `need[i]` distinct neighbors.
fn annulus(walk: &[usize], need: [usize; 3], rng: &mut StdRng) -> Option<Vec<BTreeSet<usize>>> {
    let l = walk.len();
    let mut options = Vec::new();
    for rot in 0..l {
        for s1 in 0..=l {
            for s2 in s1..=l {
                let arcs = [(0, s1), (s1, s2), (s2, l)];
                let sets: Vec<BTreeSet<usize>> = arcs
                    .iter()
                    .map(|&(x, y)| (x..=y).map(|i| walk[(rot + i) % l]).collect())
                    .collect();
                if (0..3).all(|i| sets[i].len() >= need[i]) {
                    options.push(sets);
                }
            }
        }
    }
    let mut sets = options.choose(rng)?.clone();
    if rng.gen_bool(0.4) {
        let mut joins: Vec<(usize, usize)> = (0..3).flat_map(|i| sets[i].iter().map(move |&v| (i, v))).collect();
        joins.shuffle(rng);
        for (i, v) in joins {
            if sets[i].len() > need[i].max(1) && rng.gen_bool(0.5) {
                sets[i].remove(&v);
            }
        }
    }
    Some(sets)
}

/// Attaches `shape` inside the face `corners` if the face plus the shape is
/// 3-connected and the shape stays small; gluing along the face triangle
/// then keeps the whole graph 3-connected.
fn try_face(b: &mut Builder, shape: Shape, corners: [Vertex; 3], k: usize, rng: &mut StdRng) -> bool {
    let need = corners.map(|v| k.saturating_sub(b.g.degree(v)));
    let (n, edges, walk) = shape.template();
    let Some(joins) = annulus(&walk, need, rng) else {
        return false;
    };
    let mut local = Graph::complete(3);
    for _ in 0..n {
        local.add_vertex();
    }
    for &(x, y) in &edges {
        local.insert_edge(3 + x, 3 + y);
    }
    for (i, set) in joins.iter().enumerate() {
        for &v in set {
            local.insert_edge(i, 3 + v);
        }
    }
    if (3..3 + n).any(|v| local.degree(v) >= k) || vertex_connectivity(&local) < 3 {
        return false;
    }
    let (ids, _) = b.place(shape);
    for (i, set) in joins.iter().enumerate() {
        for &v in set {
            b.g.insert_edge(corners[i], ids[v]);
        }
    }
    true
}

fn faces_instance(k: usize, opts: &PeelGenOptions, rng: &mut StdRng) -> Result<Builder> {
    let pool: Vec<Shape> = if opts.shapes.is_empty() { Shape::ALL.to_vec() } else { opts.shapes.clone() };
    let small = opts.small_frame.unwrap_or_else(|| rng.gen_bool(0.5));
    let (n, faces) = geodesic(if small { 1 } else { 2 });
    let packing = face_packing(n, &faces, rng).ok_or_else(|| Error::Internal("frame has no face packing".into()))?;
    let mut b = Builder::new();
    b.vertices(n);
    for f in &faces {
        b.g.insert_edge(f[0], f[1]);
        b.g.insert_edge(f[1], f[2]);
        b.g.insert_edge(f[0], f[2]);
    }
    for face in packing {
        let placed = (0..64).any(|_| {
            let shape = *pool.choose(rng).expect("shape pool is nonempty");
            try_face(&mut b, shape, face, k, rng)
        });
        if !placed {
            let need = face.map(|v| k.saturating_sub(b.g.degree(v)));
            return Err(Error::InfeasibleOptions(format!(
                "no requested shape fits a face whose corners need {need:?} more neighbors"
            )));
        }
    }
    Ok(b)
}

/// Joins ring `inner` to ring `outer` by a triangulated annulus: inner
/// vertex `i` sees the outer stretch `floor(i b / a) ..= floor((i + 1) b / a)`
/// shifted by `shift`.
fn ring_annulus(g: &mut Graph, inner: &[Vertex], outer: &[Vertex], shift: usize) {
    let (a, bl) = (inner.len(), outer.len());
    for (i, &u) in inner.iter().enumerate() {
        for j in (i * bl / a)..=((i + 1) * bl / a) {
            g.insert_edge(u, outer[(j + shift) % bl]);
        }
    }
}

fn ring(g: &mut Graph, len: usize) -> Vec<Vertex> {
    let r: Vec<Vertex> = (0..len).map(|_| g.add_vertex()).collect();
    for i in 0..len {
        g.insert_edge(r[i], r[(i + 1) % len]);
    }
    r
}

/// Concentric rings: small cycle, owners, `hubs` hub rings, owners, small
/// cycle. The two cycles end up `hubs + 3` apart.
fn rings_instance(k: usize, hubs: usize, b: &mut Builder, rng: &mut StdRng) -> Result<()> {
    let x = 3;
    // Each hub sees at least `q + 1` owners per owner ring it touches.
    let q = match hubs {
        1 => k.saturating_sub(4).div_ceil(2),
        _ => k.saturating_sub(5),
    }
    .max(1);
    let o = x * q;
    let mut cycle_len = [0; 2];
    for len in cycle_len.iter_mut() {
        *len = k.saturating_sub(4).max(1) * o + usize::from(rng.gen_bool(0.5));
    }
    let g = &mut b.g;
    let c_a = ring(g, cycle_len[0]);
    let o_a = ring(g, o);
    let hub_rings: Vec<Vec<Vertex>> = (0..hubs).map(|_| ring(g, x)).collect();
    let o_b = ring(g, o);
    let c_b = ring(g, cycle_len[1]);
    ring_annulus(g, &o_a, &c_a, rng.gen_range(0..c_a.len()));
    ring_annulus(g, &hub_rings[0], &o_a, rng.gen_range(0..o));
    for w in hub_rings.windows(2) {
        ring_annulus(g, &w[0], &w[1], rng.gen_range(0..x));
    }
    ring_annulus(g, &hub_rings[hubs - 1], &o_b, rng.gen_range(0..o));
    ring_annulus(g, &o_b, &c_b, rng.gen_range(0..c_b.len()));
    b.comps.push(c_a);
    b.comps.push(c_b);
    b.shapes.extend(cycle_len.map(|l| if l % 2 == 1 { Shape::C7 } else { Shape::C4 }));
    Ok(())
}

fn rings_family(k: usize, spacing: usize, opts: &PeelGenOptions, rng: &mut StdRng) -> Result<Builder> {
    if !opts.shapes.is_empty() || opts.composite.is_some() {
        return Err(Error::InfeasibleOptions(format!(
            "at spacing {spacing} the small components are long cycles; shapes cannot be chosen"
        )));
    }
    if spacing > 5 {
        return Err(Error::InfeasibleOptions(format!("spacing {spacing} is not generated (at most 5)")));
    }
    let hubs = spacing - 3;
    let mut b = Builder::new();
    rings_instance(k, hubs, &mut b, rng)?;
    if opts.connectivity == Connectivity::Low {
        // A second copy joined by one edge between the hubs farthest from
        // the small cycles, so the bridge does not shorten the spacing.
        let n1 = b.g.n();
        rings_instance(k, hubs, &mut b, rng)?;
        let small: Vec<usize> = b.comps.iter().flatten().copied().collect();
        let dist = b.g.distances_from(&small);
        let far = |r: std::ops::Range<usize>| r.filter(|&v| dist[v] != usize::MAX).max_by_key(|&v| (dist[v], std::cmp::Reverse(v)));
        let hub1 = far(0..n1);
        let hub2 = far(n1..b.g.n());
        match (hub1, hub2) {
            (Some(u), Some(v)) => {
                b.g.insert_edge(u, v);
            }
            _ => return Err(Error::Internal("rings without big vertices".into())),
        }
    }
    Ok(b)
}

/// Seeded lists: big vertices draw `k` colors from `1..=k + 3`, each small
/// component random or nested subsets of the same palette.
fn seeded_lists(b: &Builder, k: usize, style: ListStyle, rng: &mut StdRng) -> ListAssignment {
    let n = b.g.n();
    let palette: Vec<Color> = (1..=(k + 3) as Color).collect();
    let mut lists: Vec<BTreeSet<Color>> = vec![BTreeSet::new(); n];
    let mut in_comp = vec![false; n];
    for (ci, comp) in b.comps.iter().enumerate() {
        let nested = b.nested.contains(&ci)
            || match style {
                ListStyle::Nested => true,
                ListStyle::Random => false,
                ListStyle::Mixed => rng.gen_bool(0.5),
            };
        let mut order = palette.clone();
        order.shuffle(rng);
        for &v in comp {
            in_comp[v] = true;
            let d = b.g.degree(v).min(k);
            lists[v] = if nested {
                order[..d].iter().copied().collect()
            } else {
                palette.choose_multiple(rng, d).copied().collect()
            };
        }
    }
    for v in 0..n {
        if !in_comp[v] {
            lists[v] = palette.choose_multiple(rng, b.g.degree(v).min(k)).copied().collect();
        }
    }
    ListAssignment::from_sets_unchecked(lists)
}

/// Checks the built instance: components small, everything else big,
/// spacing and connectivity as requested.
fn audit(b: &Builder, k: usize, spacing: usize, conn: Connectivity) -> std::result::Result<(), String> {
    let g = &b.g;
    let mut small = vec![false; g.n()];
    for comp in &b.comps {
        for &v in comp {
            small[v] = true;
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| small[v] != (g.degree(v) < k)) {
        return Err(format!("vertex {v} has degree {} on the wrong side of {k}", g.degree(v)));
    }
    if g.components_within(Some(&small)).len() != b.comps.len() {
        return Err("small components touch".into());
    }
    let d = small_distance(g, k);
    if b.comps.len() > 1 && d < spacing.max(3) {
        return Err(format!("d(S_k) = {d} below {spacing}"));
    }
    if !is_planar(g) {
        return Err("not planar".into());
    }
    if conn == Connectivity::Three && vertex_connectivity(g) < 3 {
        return Err("frame is not 3-connected".into());
    }
    Ok(())
}

/// A planar instance whose small components (degree `< k`) sit on a frame of
/// big vertices at pairwise distance at least `spacing`, with seeded lists of
/// size `min(d(v), k)`.
pub fn gen_peel_instance(seed: u64, k: usize, spacing: usize, opts: &PeelGenOptions) -> Result<GadgetInstance> {
    if k < 5 || spacing < 2 {
        return Err(Error::Precondition(format!("need k >= 5 and spacing >= 2, got k = {k}, spacing = {spacing}")));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut last = String::new();
    for _ in 0..64 {
        let built = if spacing >= 4 {
            rings_family(k, spacing, opts, &mut rng)
        } else {
            match opts.connectivity {
                Connectivity::Low => worlds_instance(k, opts, &mut rng),
                Connectivity::Three => {
                    if opts.composite.is_some() {
                        return Err(Error::InfeasibleOptions("composites need cut vertices".into()));
                    }
                    faces_instance(k, opts, &mut rng)
                }
            }
        };
        let b = built?;
        if let Err(why) = audit(&b, k, spacing, opts.connectivity) {
            last = why;
            continue;
        }
        let lists = seeded_lists(&b, k, opts.lists, &mut rng);
        let g = b.g.clone();
        let connectivity = (g.n() <= AUDIT_LIMIT || opts.connectivity == Connectivity::Three)
            .then(|| vertex_connectivity(&g));
        let frame = if spacing >= 4 {
            "concentric rings"
        } else if opts.connectivity == Connectivity::Three {
            "face-packed geodesic frame"
        } else {
            "antiprism frame with private components"
        };
        let mut trusted = Vec::new();
        if connectivity.is_none() {
            trusted.push("connectivity".into());
        }
        let meta = GadgetMeta {
            k,
            claim: Some(Claim::Colorable),
            min_degree: Some(g.min_degree()),
            connectivity,
            planar: Some(true),
            small_distance: Some(small_distance(&g, k)),
            f_assignment: validate_f_assignment(&g, &lists, k),
            provenance: format!("{frame}, seed {seed}"),
            trusted,
            notes: vec![format!(
                "shapes: {}",
                b.shapes.iter().map(|s| s.name()).collect::<Vec<_>>().join(" ")
            )],
        };
        return Ok(GadgetInstance { graph: g, lists, meta });
    }
    Err(Error::InfeasibleOptions(format!("no instance after 64 attempts: {last}")))
}
