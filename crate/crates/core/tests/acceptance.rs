//! Exit gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use lcol::gadgets::{
    g_k5_copy_instance, gen_complete_minus_clique, gen_fig1, gen_g_k5, gen_h_k5, gen_triangle_augmented, G_K5_COPIES,
};
use lcol::graph::{check_coloring, small_distance, validate_f_assignment};
use lcol::minor::find_k5_minor;
use lcol::peel::{
    color_distance3, color_far_components, peel_color_3connected, peel_color_k8, CaseId, Mode, PeelOptions, PeelTrace,
};
use lcol::peelgen::{gen_peel_instance, geodesic, Composite, Connectivity, PeelGenOptions, Shape};
use lcol::solver::{color_degree_choosable, solve_exact, uncolorability_certificate, SolveBudget, Verdict};
use lcol::structure::{is_gallai_tree, vertex_connectivity};
use lcol::verify::{verify_paper, VerifyOptions};
use lcol::{Graph, ListAssignment};

type Outcome = Result<String, String>;

fn uncolorable(name: &str, g: &Graph, l: &ListAssignment, limit: Duration) -> Result<String, String> {
    let t = Instant::now();
    let r = solve_exact(g, l, SolveBudget::new(100_000_000)).map_err(|e| format!("{name}: {e}"))?;
    let el = t.elapsed();
    if r.verdict != Verdict::Uncolorable {
        return Err(format!("{name}: {:?}", r.verdict));
    }
    if el > limit {
        return Err(format!("{name}: {el:?} over {limit:?}"));
    }
    Ok(format!("{name} n={} nodes={} {:.0?}", g.n(), r.nodes, el))
}

fn criterion1() -> Outcome {
    let sec = Duration::from_secs(1);
    let mut done = Vec::new();
    for k in 3..=5 {
        let i = gen_fig1(k).map_err(|e| e.to_string())?;
        if i.graph.n() > 22 {
            return Err(format!("fig1({k}) has {} vertices", i.graph.n()));
        }
        done.push(uncolorable(&format!("fig1({k})"), &i.graph, &i.lists, sec)?);
    }
    for k in 3..=5 {
        let i = gen_complete_minus_clique(k).map_err(|e| e.to_string())?;
        if i.graph.n() > 13 {
            return Err(format!("kplus({k}) has {} vertices", i.graph.n()));
        }
        done.push(uncolorable(&format!("kplus({k})"), &i.graph, &i.lists, sec)?);
    }
    let base = Graph::complete(5);
    let four = ListAssignment::uniform(5, 1..=4);
    for k in 5..=7 {
        let i = gen_triangle_augmented(&base, &four, k).map_err(|e| e.to_string())?;
        done.push(uncolorable(&format!("thm7(K5,{k})"), &i.graph, &i.lists, 5 * sec)?);
    }
    let h = gen_h_k5(7, 12).map_err(|e| e.to_string())?;
    done.push(uncolorable("h5(7,12)", &h.graph, &h.lists, 60 * sec)?);
    Ok(done.len().to_string() + " gadgets uncolorable")
}

fn criterion2() -> Outcome {
    let full = gen_g_k5().map_err(|e| e.to_string())?;
    let (g, l) = (&full.graph, &full.lists);
    if (g.n(), g.m()) != (702, 2099) {
        return Err(format!("size {} {}", g.n(), g.m()));
    }
    if !validate_f_assignment(g, l, 5) {
        return Err("not an f-assignment for k=5".into());
    }
    let d = small_distance(g, 5);
    if d != 4 {
        return Err(format!("d(S_5) = {d}"));
    }
    let mut slowest = Duration::ZERO;
    for c in 0..G_K5_COPIES {
        let (cg, cl) = g_k5_copy_instance(&full, c).map_err(|e| e.to_string())?;
        let t = Instant::now();
        uncolorable(&format!("copy {c}"), &cg, &cl, Duration::from_secs(60))?;
        slowest = slowest.max(t.elapsed());
    }
    Ok(format!("{G_K5_COPIES} copies uncolorable (slowest {slowest:.0?}), n=702 m=2099 d=4"))
}

fn criterion3() -> Outcome {
    let f = gen_fig1(4).map_err(|e| e.to_string())?;
    let got = (vertex_connectivity(&f.graph), f.graph.min_degree(), small_distance(&f.graph, 4));
    if got != (2, 3, 2) {
        return Err(format!("fig1(4) kappa/delta/d = {got:?}"));
    }
    let kp = gen_complete_minus_clique(4).map_err(|e| e.to_string())?;
    let kappa = vertex_connectivity(&kp.graph);
    let minor = find_k5_minor(&kp.graph, 100_000_000).map_err(|e| e.to_string())?;
    if kappa != 3 || minor.is_some() {
        return Err(format!("kplus(4) kappa={kappa} minor={minor:?}"));
    }
    if brute_connectivity(&f.graph) != 2 || brute_connectivity(&kp.graph) != 3 || brute_k5_minor(&kp.graph) {
        return Err("oracle disagrees".into());
    }
    Ok("fig1(4) kappa=2 delta=3 d=2; kplus(4) kappa=3, no K5 minor".into())
}

fn criterion4() -> Outcome {
    let (mut gallai, mut certified) = (0, 0);
    let mut seed = 0;
    while gallai < 500 {
        seed += 1;
        let mut r = rng(seed);
        let (g, blocks) = random_gallai_tree(&mut r, 12);
        let lists = gallai_lists(&mut r, &g, &blocks);
        if g.n() < 2 || (0..g.n()).any(|v| lists.list(v).len() != g.degree(v)) {
            continue;
        }
        gallai += 1;
        let cert = uncolorability_certificate(&g, &lists);
        let exact = solve_exact(&g, &lists, SolveBudget::default()).map_err(|e| e.to_string())?;
        let uncol = exact.verdict == Verdict::Uncolorable;
        if cert.is_some() != uncol || uncol != brute_color(&g, &lists).is_none() {
            return Err(format!("gallai seed {seed}: certificate {} exact {:?}", cert.is_some(), exact.verdict));
        }
        if cert.is_some_and(|c| !c.verify(&g, &lists)) {
            return Err(format!("gallai seed {seed}: certificate does not verify"));
        }
        certified += usize::from(uncol);
    }
    let mut other = 0;
    while other < 500 {
        seed += 1;
        let mut r = rng(seed);
        let n = 4 + (seed % 9) as usize;
        let g = random_connected(&mut r, n, n);
        if is_gallai_tree(&g) {
            continue;
        }
        other += 1;
        let lists = degree_lists(&mut r, &g, g.max_degree() as u32 + 1);
        let exact = solve_exact(&g, &lists, SolveBudget::default()).map_err(|e| e.to_string())?;
        if exact.verdict != Verdict::Colorable {
            return Err(format!("non-gallai seed {seed}: {:?}", exact.verdict));
        }
        let c = color_degree_choosable(&g, &lists).map_err(|e| format!("non-gallai seed {seed}: {e}"))?;
        if !check_coloring(&g, &lists, &c) {
            return Err(format!("non-gallai seed {seed}: invalid coloring"));
        }
    }
    Ok(format!("{gallai} gallai trees ({certified} uncolorable), {other} non-gallai graphs, full agreement"))
}

/// Peel instances with at most 30 vertices, kept for criterion 6.
type Small = Vec<(String, Graph, ListAssignment)>;

fn suite(mode: Mode, small: &mut Small) -> Outcome {
    let (k, bound, want): (usize, usize, BTreeSet<u8>) = match mode {
        Mode::K8 => (8, 3, (1..=7).collect()),
        Mode::ThreeConnected => (7, 2, (1..=5).collect()),
    };
    let mut seen: BTreeSet<CaseId> = BTreeSet::new();
    let mut slowest = Duration::ZERO;
    let runs = 120;
    for seed in 0..runs {
        let opts = match mode {
            Mode::K8 => PeelGenOptions {
                composite: match seed % 6 {
                    4 => Some(Composite::AuxEdge),
                    5 => Some(Composite::SplitAtCut),
                    _ => None,
                },
                ..PeelGenOptions::default()
            },
            Mode::ThreeConnected => PeelGenOptions {
                connectivity: Connectivity::Three,
                ..PeelGenOptions::default()
            },
        };
        let name = format!("{mode} seed {seed}");
        let inst = gen_peel_instance(seed, k, 3, &opts).map_err(|e| format!("{name}: {e}"))?;
        let (g, l) = (&inst.graph, &inst.lists);
        let t = Instant::now();
        let res: lcol::Result<(_, PeelTrace)> = match mode {
            Mode::K8 => peel_color_k8(g, l, k, PeelOptions::default()),
            Mode::ThreeConnected => peel_color_3connected(g, l, k, PeelOptions::default()),
        };
        let el = t.elapsed();
        let (c, trace) = res.map_err(|e| format!("{name}: {e}"))?;
        if !check_coloring(g, l, &c) {
            return Err(format!("{name}: invalid coloring"));
        }
        if el > Duration::from_secs(10) {
            return Err(format!("{name}: {el:?}"));
        }
        if trace.used_fallback() {
            return Err(format!("{name}: exact fallback used"));
        }
        if trace.max_deleted() > bound {
            return Err(format!("{name}: {} colors deleted at one vertex", trace.max_deleted()));
        }
        if let Some(bad) = trace.case_ids().into_iter().find(|id| !id.valid_for(mode)) {
            return Err(format!("{name}: case {bad} is not a {mode} case"));
        }
        slowest = slowest.max(el);
        seen.extend(trace.case_ids());
        if g.n() <= 30 {
            small.push((name, g.clone(), l.clone()));
        }
    }
    let covered: BTreeSet<u8> = seen.iter().filter_map(|id| id.main()).collect();
    if !want.is_subset(&covered) {
        return Err(format!("cases covered {covered:?}, want {want:?}"));
    }
    let ids: Vec<String> = seen.iter().map(|c| c.to_string()).collect();
    Ok(format!("{runs} runs k={k}, cases {}, slowest {slowest:.0?}", ids.join(",")))
}

fn criterion5(small: &mut Small) -> Outcome {
    let k8 = suite(Mode::K8, small)?;
    let three = suite(Mode::ThreeConnected, small)?;
    let (n, faces) = geodesic(1);
    let mut ico = Graph::new(n);
    for [a, b, c] in faces {
        ico.insert_edge(a, b);
        ico.insert_edge(b, c);
        ico.insert_edge(a, c);
    }
    let five = ListAssignment::uniform(n, 1..=5);
    let c = color_far_components(&ico, &five, 6, SolveBudget::default()).map_err(|e| format!("far: {e}"))?;
    if !check_coloring(&ico, &five, &c) {
        return Err("far-components coloring invalid".into());
    }
    let opts = PeelGenOptions {
        shapes: vec![Shape::K1],
        ..PeelGenOptions::default()
    };
    let inst = gen_peel_instance(1, 6, 3, &opts).map_err(|e| e.to_string())?;
    let c = color_distance3(&inst.graph, &inst.lists, SolveBudget::default()).map_err(|e| format!("distance3: {e}"))?;
    if !check_coloring(&inst.graph, &inst.lists, &c) {
        return Err("distance-3 coloring invalid".into());
    }
    Ok(format!("{k8}; {three}; both fast paths colored"))
}

fn criterion6(small: &Small) -> Outcome {
    if small.is_empty() {
        return Err("no peel instance with at most 30 vertices".into());
    }
    for (name, g, l) in small {
        let r = solve_exact(g, l, SolveBudget::default()).map_err(|e| format!("{name}: {e}"))?;
        if r.verdict != Verdict::Colorable {
            return Err(format!("{name}: {:?}", r.verdict));
        }
    }
    Ok(format!("{} instances confirmed colorable", small.len()))
}

fn criterion7() -> Outcome {
    let a = verify_paper(&VerifyOptions::default());
    let b = verify_paper(&VerifyOptions {
        parallel: false,
        ..VerifyOptions::default()
    });
    if a.render(false) != b.render(false) {
        return Err("reports differ between runs".into());
    }
    if !a.all_evidenced() {
        return Err("some cell lacks evidence".into());
    }
    Ok(format!("{} cells, report byte-identical", a.cells.len()))
}

fn main() -> ExitCode {
    let mut small = Small::new();
    let results = [
        ("1 gadget refutations", criterion1()),
        ("2 composite copies and metadata", criterion2()),
        ("3 gadget structure", criterion3()),
        ("4 degree-list equivalence", criterion4()),
        ("5 peeling suites", criterion5(&mut small)),
        ("6 oracle cross-check", criterion6(&small)),
        ("7 verify-paper", criterion7()),
    ];
    let mut ok = true;
    for (name, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                ok = false;
                println!("FAIL criterion {name}: {msg}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
