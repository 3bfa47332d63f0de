//! The `p lcol` text format.
//!
//! ```text
//! p lcol <n> <m>
//! e <u> <v>          (m lines, 0-based)
//! l <v> <c1> ... <ck> (n lines)
//! ```
//!
//! Tokens are whitespace separated and `#` starts a comment. Comment lines of
//! the form `# meta <key> <value>` carry claimed properties and are kept.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gadgets::{Claim, GadgetInstance, GadgetMeta};
use crate::graph::{Color, Graph, ListAssignment};

/// A parsed document: the instance plus its `# meta` lines in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub meta: Vec<(String, String)>,
}

impl Document {
    /// First value recorded under `key`.
    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

struct Tok<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Tok { text: &body[s..i], column: s + 1 });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Tok { text: &body[s..], column: s + 1 });
    }
    out
}

fn err(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, column, msg: msg.into() }
}

fn number<T: std::str::FromStr>(line: usize, t: &Tok<'_>, what: &str) -> Result<T> {
    t.text
        .parse()
        .map_err(|_| err(line, t.column, format!("expected {what}, found `{}`", t.text)))
}

/// Parses a `p lcol` document, keeping `# meta` lines.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph = Graph::new(0);
    let mut lists: Vec<Option<BTreeSet<Color>>> = Vec::new();
    let mut meta = Vec::new();
    let mut edges = 0usize;
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last = ln;
        if let Some(rest) = raw.trim_start().strip_prefix('#') {
            let rest = rest.trim();
            if let Some(kv) = rest.strip_prefix("meta ") {
                let kv = kv.trim();
                let (k, v) = kv.split_once(char::is_whitespace).unwrap_or((kv, ""));
                meta.push((k.to_string(), v.trim().to_string()));
            }
            continue;
        }
        let toks = tokens(raw);
        let Some(first) = toks.first() else { continue };
        match first.text {
            "p" => {
                if header.is_some() {
                    return Err(err(ln, first.column, "second `p` line"));
                }
                if toks.len() != 4 || toks[1].text != "lcol" {
                    return Err(err(ln, first.column, "expected `p lcol <n> <m>`"));
                }
                let n = number(ln, &toks[2], "vertex count")?;
                let m = number(ln, &toks[3], "edge count")?;
                header = Some((n, m, ln));
                graph = Graph::new(n);
                lists = vec![None; n];
            }
            "e" | "l" if header.is_none() => {
                return Err(err(ln, first.column, "`p lcol` line must come first"));
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(err(ln, first.column, "expected `e <u> <v>`"));
                }
                let n = graph.n();
                let mut ends = [0; 2];
                for (slot, t) in ends.iter_mut().zip(&toks[1..]) {
                    *slot = number(ln, t, "vertex")?;
                    if *slot >= n {
                        return Err(err(ln, t.column, format!("vertex {} out of range (n = {n})", slot)));
                    }
                }
                let [u, v] = ends;
                if u == v {
                    return Err(err(ln, toks[1].column, format!("self-loop at {u}")));
                }
                if !graph.insert_edge(u, v) {
                    return Err(err(ln, first.column, format!("duplicate edge {u} {v}")));
                }
                edges += 1;
            }
            "l" => {
                if toks.len() < 3 {
                    return Err(err(ln, first.column, "expected `l <v> <c1> ... <ck>` with at least one color"));
                }
                let v: usize = number(ln, &toks[1], "vertex")?;
                if v >= graph.n() {
                    return Err(err(ln, toks[1].column, format!("list for unknown vertex {v}")));
                }
                if lists[v].is_some() {
                    return Err(err(ln, toks[1].column, format!("second list for vertex {v}")));
                }
                let mut set = BTreeSet::new();
                for t in &toks[2..] {
                    let c: Color = number(ln, t, "color")?;
                    if !set.insert(c) {
                        return Err(err(ln, t.column, format!("color {c} repeated")));
                    }
                }
                lists[v] = Some(set);
            }
            other => return Err(err(ln, first.column, format!("unknown line type `{other}`"))),
        }
    }
    let Some((_, m, pline)) = header else {
        return Err(err(last.max(1), 1, "missing `p lcol <n> <m>` line"));
    };
    if edges != m {
        return Err(err(pline, 1, format!("header promises {m} edges, found {edges}")));
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| err(pline, 1, format!("no list line for vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Document {
        graph,
        lists: ListAssignment::from_sets_unchecked(lists),
        meta,
    })
}

/// Parses a `p lcol` document into its graph and lists.
pub fn parse_instance(text: &str) -> Result<(Graph, ListAssignment)> {
    let d = parse_document(text)?;
    Ok((d.graph, d.lists))
}

/// Writes `g` and `lists` with edges in increasing order.
pub fn write_instance(g: &Graph, lists: &ListAssignment) -> String {
    let mut out = String::new();
    write_body(&mut out, g, lists);
    out
}

fn write_body(out: &mut String, g: &Graph, lists: &ListAssignment) {
    let _ = writeln!(out, "p lcol {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    for v in 0..g.n() {
        let _ = write!(out, "l {v}");
        for c in lists.list(v) {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
}

/// The `# meta` pairs describing a generated instance.
pub fn meta_pairs(meta: &GadgetMeta) -> Vec<(String, String)> {
    let mut out = vec![("k".to_string(), meta.k.to_string())];
    if let Some(c) = meta.claim {
        let c = match c {
            Claim::Colorable => "colorable",
            Claim::Uncolorable => "uncolorable",
        };
        out.push(("claim".into(), c.into()));
    }
    let opt = |v: Option<usize>| v.map_or("unknown".to_string(), |x| x.to_string());
    out.push(("min_degree".into(), opt(meta.min_degree)));
    out.push(("connectivity".into(), opt(meta.connectivity)));
    out.push(("small_distance".into(), opt(meta.small_distance)));
    if let Some(p) = meta.planar {
        out.push(("planar".into(), p.to_string()));
    }
    out.push(("f_assignment".into(), meta.f_assignment.to_string()));
    out.push(("provenance".into(), meta.provenance.clone()));
    for t in &meta.trusted {
        out.push(("trusted".into(), t.clone()));
    }
    for n in &meta.notes {
        out.push(("note".into(), n.clone()));
    }
    out
}

/// Writes a generated instance with its metadata as `# meta` lines.
pub fn write_gadget(inst: &GadgetInstance) -> String {
    let mut out = String::new();
    for (k, v) in meta_pairs(&inst.meta) {
        let v = v.replace('\n', " ");
        let _ = writeln!(out, "# meta {k} {v}");
    }
    write_body(&mut out, &inst.graph, &inst.lists);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gen_fig1;

    #[test]
    fn minimal_document() {
        let (g, l) = parse_instance("p lcol 2 1\ne 0 1\nl 0 1\nl 1 2\n").unwrap();
        assert_eq!(g, Graph::complete(2));
        assert_eq!(l, ListAssignment::from_slices(&[&[1], &[2]]).unwrap());
    }

    #[test]
    fn comments_and_meta() {
        let doc = parse_document("# meta claim uncolorable\n# hello\np lcol 1 0 # trailing\nl 0 3 4\n").unwrap();
        assert_eq!(doc.meta_value("claim"), Some("uncolorable"));
        assert_eq!(doc.lists.list(0), &BTreeSet::from([3, 4]));
    }

    #[test]
    fn errors_name_the_line() {
        let e = parse_instance("p lcol 2 1\ne 0 5\nl 0 1\nl 1 2\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, column: 5, msg: "vertex 5 out of range (n = 2)".into() });
        let dup = parse_instance("p lcol 2 2\ne 0 1\ne 1 0\nl 0 1\nl 1 2\n").unwrap_err();
        assert!(matches!(dup, Error::Parse { line: 3, .. }));
        let unknown = parse_instance("p lcol 2 1\ne 0 1\nl 0 1\nl 2 2\n").unwrap_err();
        assert!(matches!(unknown, Error::Parse { line: 4, column: 3, .. }));
        let missing = parse_instance("p lcol 2 1\ne 0 1\nl 0 1\n").unwrap_err();
        assert!(matches!(missing, Error::Parse { line: 1, .. }));
        assert!(parse_instance("e 0 1\n").is_err());
        assert!(parse_instance("p lcol 2 1\ne 0 x\n").is_err());
    }

    #[test]
    fn fig1_round_trip() {
        let inst = gen_fig1(4).unwrap();
        let text = write_gadget(&inst);
        let doc = parse_document(&text).unwrap();
        assert_eq!(doc.graph, inst.graph);
        assert_eq!(doc.lists, inst.lists);
        assert_eq!(doc.meta, meta_pairs(&inst.meta));
        assert_eq!(write_instance(&doc.graph, &doc.lists), write_instance(&inst.graph, &inst.lists));
    }
}
