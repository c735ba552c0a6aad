//! Text formats for graphs and measures.
//!
//! A graph file has one `vertices N` line, then `edge U V` lines and an
//! optional `root R` line; `#` starts a comment line. A measure file is a list
//! of blocks separated by `---`, each a `mass P/Q` line followed by a graph
//! body with a root.

use std::collections::HashSet;
use std::fmt::Write;

use graphlaw::scalar::{fraction_string, parse_fraction};
use graphlaw::{Error, FiniteSupportMeasure, Graph, Rational, Result, RootedGraph};
use num_traits::Signed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub root: Option<usize>,
}

impl GraphFile {
    pub fn rooted(self) -> Result<RootedGraph> {
        let root = self.root.ok_or(Error::Parse { line: 0, message: "missing `root` line".into() })?;
        RootedGraph::new(self.graph, root)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_index(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

/// Parses a graph body. `first_line` is the 1-based number of the first line,
/// so that errors point into the enclosing file.
fn parse_graph_lines<'a>(lines: impl Iterator<Item = &'a str>, first_line: usize) -> Result<GraphFile> {
    let mut n: Option<usize> = None;
    let mut root = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (offset, raw) in lines.enumerate() {
        let line = first_line + offset;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut toks = text.split_whitespace();
        let word = toks.next().unwrap_or_default();
        match word {
            "vertices" => {
                if n.is_some() {
                    return Err(parse_err(line, "`vertices` given twice"));
                }
                n = Some(parse_index(toks.next(), line, "vertex count")?);
            }
            "edge" => {
                let count = n.ok_or_else(|| parse_err(line, "`edge` before `vertices`"))?;
                let u = parse_index(toks.next(), line, "endpoint")?;
                let v = parse_index(toks.next(), line, "endpoint")?;
                if u >= count || v >= count {
                    return Err(parse_err(line, format!("edge {u} {v} out of range for {count} vertices")));
                }
                if u == v {
                    return Err(parse_err(line, format!("loop at {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(parse_err(line, format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
            "root" => {
                if root.is_some() {
                    return Err(parse_err(line, "`root` given twice"));
                }
                let count = n.ok_or_else(|| parse_err(line, "`root` before `vertices`"))?;
                let r = parse_index(toks.next(), line, "root")?;
                if r >= count {
                    return Err(parse_err(line, format!("root {r} out of range for {count} vertices")));
                }
                root = Some(r);
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }
    let n = n.ok_or_else(|| parse_err(first_line, "missing `vertices` line"))?;
    Ok(GraphFile { graph: Graph::new(n, edges)?, root })
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    parse_graph_lines(text.lines(), 1)
}

pub fn write_graph(g: &Graph, root: Option<usize>) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    if let Some(r) = root {
        let _ = writeln!(out, "root {r}");
    }
    out
}

/// A parsed measure file, plus the classes that appeared more than once.
pub struct MeasureFile {
    pub measure: FiniteSupportMeasure<Rational>,
    pub merged: Vec<graphlaw::CanonKey>,
}

pub fn parse_measure(text: &str) -> Result<MeasureFile> {
    let lines: Vec<&str> = text.lines().collect();
    let mut blocks: Vec<(usize, &[&str])> = Vec::new();
    let mut start = 0;
    for (i, l) in lines.iter().enumerate() {
        if l.trim() == "---" {
            blocks.push((start, &lines[start..i]));
            start = i + 1;
        }
    }
    blocks.push((start, &lines[start..]));

    let mut atoms = Vec::new();
    for (start, block) in blocks {
        let mut mass = None;
        let mut body = Vec::with_capacity(block.len());
        for (offset, raw) in block.iter().enumerate() {
            let text = raw.trim();
            if let Some(rest) = text.strip_prefix("mass ") {
                if mass.is_some() {
                    return Err(parse_err(start + offset + 1, "`mass` given twice"));
                }
                let q = parse_fraction(rest)
                    .filter(|q| q.is_positive())
                    .ok_or_else(|| parse_err(start + offset + 1, format!("bad mass `{}`", rest.trim())))?;
                mass = Some(q);
                body.push("");
            } else {
                body.push(raw);
            }
        }
        if mass.is_none() && body.iter().all(|l| l.trim().is_empty() || l.trim().starts_with('#')) {
            continue;
        }
        let mass = mass.ok_or_else(|| parse_err(start + 1, "block without `mass` line"))?;
        let file = parse_graph_lines(body.into_iter(), start + 1)?;
        if file.root.is_none() {
            return Err(parse_err(start + 1, "block without `root` line"));
        }
        atoms.push((file.rooted()?, mass));
    }
    if atoms.is_empty() {
        return Err(parse_err(1, "no atoms"));
    }
    let (measure, merged) = FiniteSupportMeasure::from_atoms_merged(atoms)?;
    Ok(MeasureFile { measure, merged })
}

pub fn write_measure(mu: &FiniteSupportMeasure<Rational>) -> String {
    let mut out = String::new();
    for (i, atom) in mu.atoms().iter().enumerate() {
        if i > 0 {
            out.push_str("---\n");
        }
        let _ = writeln!(out, "# class {}", atom.key);
        let _ = writeln!(out, "mass {}", fraction_string(&atom.mass));
        let g = &atom.representative;
        out.push_str(&write_graph(g.graph(), Some(g.root())));
    }
    out
}

pub fn measure_json(mu: &FiniteSupportMeasure<Rational>) -> serde_json::Value {
    let atoms: Vec<serde_json::Value> = mu
        .atoms()
        .iter()
        .map(|a| {
            let g = a.representative.graph();
            let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
            serde_json::json!({
                "key_hex": a.key.to_hex(),
                "mass": fraction_string(&a.mass),
                "graph": { "vertices": g.vertex_count(), "edges": edges, "root": a.representative.root() },
            })
        })
        .collect();
    serde_json::json!({ "atoms": atoms })
}
