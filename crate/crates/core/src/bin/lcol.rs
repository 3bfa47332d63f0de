//! `lcol`: list-coloring instances on the command line.
//!
//! Exit codes: 0 the claim holds (colorable, check passed, all cells
//! evidenced), 1 uncolorable or refuted, 2 error or budget exhausted.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lcol::gadgets::{
    gen_complete_minus_clique, gen_fig1, gen_g_k5, gen_h_k5, gen_triangle_augmented, GadgetInstance,
};
use lcol::graph::{small_distance, validate_f_assignment, Color, Coloring, Graph, ListAssignment};
use lcol::io::{parse_document, write_gadget, Document};
use lcol::minor::find_k5_minor;
use lcol::peel::{peel_color_3connected, peel_color_k8, PeelOptions};
use lcol::peelgen::{gen_peel_instance, Composite, Connectivity, ListStyle, PeelGenOptions, Shape};
use lcol::solver::{solve_exact, SolveBudget, Verdict};
use lcol::structure::{gallai_witness, is_planar, vertex_connectivity};
use lcol::verify::{verify_paper, VerifyOptions};
use lcol::Error;

#[derive(Parser)]
#[command(name = "lcol", version, about = "List coloring with lists of size min(d(v), k)")]
struct Cli {
    /// Node budget for exact searches (coloring and K5 minors).
    #[arg(long, global = true, env = "LCOL_MAX_NODES", default_value_t = 100_000_000)]
    max_nodes: u64,
    /// Seed for generators and batteries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide colorability exactly; prints a coloring or a certificate.
    Solve {
        /// Instance file (stdin if omitted).
        file: Option<PathBuf>,
    },
    /// Report structural properties; compares them with `# meta` claims.
    Check(CheckArgs),
    /// Write a generated instance to stdout.
    Gen(GenArgs),
    /// Color with a peeling algorithm.
    Peel {
        file: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = PeelMode::K8)]
        mode: PeelMode,
        /// Print the peeling trace.
        #[arg(long)]
        trace: bool,
        /// Accept k = 6 in 3-connected mode.
        #[arg(long)]
        allow_k6: bool,
        /// Budget for the K5-minor check (0 skips it).
        #[arg(long, default_value_t = lcol::peel::DEFAULT_PEEL_MINOR_NODES)]
        minor_nodes: u64,
    },
    /// Reproduce the two summary tables at desk scale.
    VerifyPaper {
        /// Instances per sampled cell.
        #[arg(long, default_value_t = 20)]
        battery: usize,
        /// Add per-cell runtimes (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
        /// Run cells one after another.
        #[arg(long)]
        serial: bool,
        #[arg(long, default_value_t = 10_000)]
        minor_nodes: u64,
    },
}

#[derive(Args)]
struct CheckArgs {
    file: Option<PathBuf>,
    /// Exact colorability, compared against the recorded claim.
    #[arg(long)]
    solve: bool,
    /// Is the graph a Gallai tree?
    #[arg(long)]
    gallai: bool,
    /// Vertex connectivity.
    #[arg(long)]
    kappa: bool,
    /// K5-minor search (and planarity).
    #[arg(long)]
    minor: bool,
    /// d(S_K).
    #[arg(long, value_name = "K")]
    dsk: Option<usize>,
    /// Are the lists an f-assignment, |L(v)| = min(d(v), K)?
    #[arg(long, value_name = "K")]
    fassign: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PeelMode {
    K8,
    #[value(name = "3conn")]
    ThreeConn,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fig1,
    Kplus,
    Thm7,
    H5,
    G5,
    Peel,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnArg {
    Low,
    Three,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompositeArg {
    Aux,
    Split,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListsArg {
    Mixed,
    Random,
    Nested,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    k: Option<usize>,
    /// thm7: base instance file (default K5 with lists {1,2,3,4}).
    #[arg(long)]
    base: Option<PathBuf>,
    /// h5: precolor of x.
    #[arg(long, default_value_t = 7)]
    a: Color,
    /// h5: precolor of y.
    #[arg(long, default_value_t = 12)]
    b: Color,
    /// peel: required d(S_k).
    #[arg(long, default_value_t = 3)]
    spacing: usize,
    #[arg(long, value_enum, default_value_t = ConnArg::Low)]
    connectivity: ConnArg,
    /// peel: comma-separated component shapes, e.g. K4,C5,K4-K4.
    #[arg(long, value_delimiter = ',')]
    shapes: Vec<String>,
    #[arg(long, value_enum)]
    composite: Option<CompositeArg>,
    #[arg(long, value_enum, default_value_t = ListsArg::Mixed)]
    lists: ListsArg,
}

fn read_doc(file: &Option<PathBuf>) -> Result<Document, Error> {
    let text = match file {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Precondition(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    parse_document(&text)
}

fn print_coloring(out: &mut impl Write, c: &Coloring) -> io::Result<()> {
    for (v, col) in c.as_slice().iter().enumerate() {
        if let Some(col) = col {
            writeln!(out, "v {v} {col}")?;
        }
    }
    Ok(())
}

fn solve(cli: &Cli, file: &Option<PathBuf>) -> Result<u8, Error> {
    let doc = read_doc(file)?;
    let res = solve_exact(&doc.graph, &doc.lists, SolveBudget::new(cli.max_nodes))?;
    let mut out = io::stdout().lock();
    let code = match res.verdict {
        Verdict::Colorable => {
            let _ = writeln!(out, "s colorable");
            if let Some(c) = &res.coloring {
                let _ = print_coloring(&mut out, c);
            }
            0
        }
        Verdict::Uncolorable => {
            let _ = writeln!(out, "s uncolorable");
            if let Some(cert) = &res.certificate {
                for (b, l) in cert.blocks.iter().zip(&cert.block_lists) {
                    let _ = writeln!(out, "b {b:?} {l:?}");
                }
            }
            1
        }
        Verdict::BudgetExceeded => {
            let _ = writeln!(out, "s unknown");
            2
        }
    };
    let _ = writeln!(out, "c nodes {}", res.nodes);
    Ok(code)
}

fn check(cli: &Cli, a: &CheckArgs) -> Result<u8, Error> {
    let doc = read_doc(&a.file)?;
    let g = &doc.graph;
    let mut out = io::stdout().lock();
    let mut refuted = false;
    let meta_k: Option<usize> = doc.meta_value("k").and_then(|v| v.parse().ok());
    // Claims about d(S_k) and list sizes only apply to the recorded k.
    let mut claim = |out: &mut io::StdoutLock, key: &str, got: String, k: Option<usize>| {
        let _ = write!(out, "{key}: {got}");
        let want = doc.meta_value(key).filter(|_| k.is_none() || k == meta_k);
        match want {
            Some(want) if want != got && want != "unknown" => {
                let _ = writeln!(out, " (claimed {want}: REFUTED)");
                refuted = true;
            }
            Some(_) => {
                let _ = writeln!(out, " (matches claim)");
            }
            None => {
                let _ = writeln!(out);
            }
        }
    };
    let _ = writeln!(out, "n: {} m: {}", g.n(), g.m());
    if a.solve {
        let got = match solve_exact(g, &doc.lists, SolveBudget::new(cli.max_nodes))?.verdict {
            Verdict::Colorable => "colorable",
            Verdict::Uncolorable => "uncolorable",
            Verdict::BudgetExceeded => "unknown",
        };
        claim(&mut out, "claim", got.into(), None);
    }
    if a.gallai {
        match gallai_witness(g) {
            Ok(()) if g.is_connected() => claim(&mut out, "gallai", "true".into(), None),
            Ok(()) => claim(&mut out, "gallai", "false (not connected)".into(), None),
            Err(b) => claim(&mut out, "gallai", format!("false (block {b:?})"), None),
        }
    }
    if a.kappa {
        claim(&mut out, "connectivity", vertex_connectivity(g).to_string(), None);
    }
    if a.minor {
        claim(&mut out, "planar", is_planar(g).to_string(), None);
        let got = match find_k5_minor(g, cli.max_nodes) {
            Ok(None) => "none".to_string(),
            Ok(Some(w)) => format!("found {w:?}"),
            Err(e) => format!("unknown ({e})"),
        };
        claim(&mut out, "k5_minor", got, None);
    }
    if let Some(k) = a.dsk {
        claim(&mut out, "small_distance", small_distance(g, k).to_string(), Some(k));
    }
    if let Some(k) = a.fassign {
        claim(&mut out, "f_assignment", validate_f_assignment(g, &doc.lists, k).to_string(), Some(k));
    }
    Ok(u8::from(refuted))
}

fn generate(cli: &Cli, a: &GenArgs) -> Result<u8, Error> {
    let need_k = || a.k.ok_or_else(|| Error::Precondition("--k is required for this family".into()));
    let inst: GadgetInstance = match a.family {
        Family::Fig1 => gen_fig1(need_k()?)?,
        Family::Kplus => gen_complete_minus_clique(need_k()?)?,
        Family::Thm7 => {
            let (base, lists) = match &a.base {
                Some(_) => {
                    let d = read_doc(&a.base)?;
                    (d.graph, d.lists)
                }
                None => (Graph::complete(5), ListAssignment::uniform(5, 1..=4)),
            };
            gen_triangle_augmented(&base, &lists, need_k()?)?
        }
        Family::H5 => gen_h_k5(a.a, a.b)?,
        Family::G5 => gen_g_k5()?,
        Family::Peel => {
            let opts = PeelGenOptions {
                connectivity: match a.connectivity {
                    ConnArg::Low => Connectivity::Low,
                    ConnArg::Three => Connectivity::Three,
                },
                shapes: a.shapes.iter().map(|s| s.parse::<Shape>()).collect::<Result<_, _>>()?,
                composite: a.composite.map(|c| match c {
                    CompositeArg::Aux => Composite::AuxEdge,
                    CompositeArg::Split => Composite::SplitAtCut,
                }),
                lists: match a.lists {
                    ListsArg::Mixed => ListStyle::Mixed,
                    ListsArg::Random => ListStyle::Random,
                    ListsArg::Nested => ListStyle::Nested,
                },
                small_frame: None,
            };
            gen_peel_instance(cli.seed, need_k()?, a.spacing, &opts)?
        }
    };
    let _ = io::stdout().lock().write_all(write_gadget(&inst).as_bytes());
    Ok(0)
}

fn peel(cli: &Cli, file: &Option<PathBuf>, k: usize, mode: PeelMode, trace: bool, allow_k6: bool, minor_nodes: u64) -> Result<u8, Error> {
    let doc = read_doc(file)?;
    let opts = PeelOptions {
        minor_nodes,
        budget: SolveBudget {
            max_nodes: cli.max_nodes.max(1),
            seed: cli.seed,
        },
        allow_k6,
    };
    let (c, tr) = match mode {
        PeelMode::K8 => peel_color_k8(&doc.graph, &doc.lists, k, opts)?,
        PeelMode::ThreeConn => peel_color_3connected(&doc.graph, &doc.lists, k, opts)?,
    };
    let mut out = io::stdout().lock();
    let _ = writeln!(out, "s colorable");
    let _ = print_coloring(&mut out, &c);
    if trace {
        for line in tr.to_string().lines() {
            let _ = writeln!(out, "t {line}");
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.cmd {
        Cmd::Solve { file } => solve(cli, file),
        Cmd::Check(a) => check(cli, a),
        Cmd::Gen(a) => generate(cli, a),
        Cmd::Peel {
            file,
            k,
            mode,
            trace,
            allow_k6,
            minor_nodes,
        } => peel(cli, file, *k, *mode, *trace, *allow_k6, *minor_nodes),
        Cmd::VerifyPaper {
            battery,
            timings,
            serial,
            minor_nodes,
        } => {
            let opts = VerifyOptions {
                seed: cli.seed,
                battery: *battery,
                max_nodes: cli.max_nodes,
                minor_nodes: *minor_nodes,
                parallel: !*serial,
            };
            let report = verify_paper(&opts);
            let _ = io::stdout().lock().write_all(report.render(*timings).as_bytes());
            Ok(u8::from(!report.all_evidenced()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("lcol: {e}");
            ExitCode::from(2)
        }
    }
}

