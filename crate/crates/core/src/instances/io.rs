//! Line-based graph files and their JSON mirror.
//!
//! ```text
//! fvsgraph 1
//! n 4
//! name k4
//! meta girth 3
//! meta phi 2
//! e 0 1
//! e 0 2 5
//! r 0: 1 2 3
//! ```
//!
//! `v <id>` lines list the vertex set when it is not `0..n`. An edge weight
//! is written only when it differs from 1. Blank lines and lines starting
//! with `#` are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Instance;
use crate::embed::{faces_of, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{Girth, Graph, VertexId, Weight};

const MAGIC: &str = "fvsgraph";
const VERSION: u32 = 1;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| err(line, format!("expected a number, found `{tok}`")))
}

fn vertex(line: usize, tok: &str) -> Result<VertexId> {
    num(line, tok).map(VertexId)
}

/// Parses the text format. Semantic checks (edges between listed vertices,
/// rotation consistent and planar) run after all lines are read.
pub fn parse_graph(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    match toks.as_slice() {
        [MAGIC, v] if num::<u32>(ln, v)? == VERSION => {}
        [MAGIC, v] => return Err(err(ln, format!("unsupported version {v}"))),
        _ => return Err(err(ln, format!("expected `{MAGIC} {VERSION}` header"))),
    }
    let (ln, n_line) = lines.next().ok_or_else(|| err(ln, "missing `n` line"))?;
    let n: usize = match n_line.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", k] => num(ln, k)?,
        _ => return Err(err(ln, "expected `n <count>`")),
    };

    let mut inst = Instance::new(Graph::new());
    let mut listed: Vec<(usize, VertexId)> = Vec::new();
    let mut edges: Vec<(usize, VertexId, VertexId, Weight)> = Vec::new();
    let mut rotation: Option<RotationSystem> = None;
    let mut rot_seen = BTreeSet::new();

    for (ln, line) in lines {
        let (kind, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match kind {
            "name" => {
                if rest.trim().is_empty() {
                    return Err(err(ln, "empty name"));
                }
                if inst.name.replace(rest.trim().to_string()).is_some() {
                    return Err(err(ln, "duplicate `name`"));
                }
            }
            "meta" => match toks.as_slice() {
                ["girth", g] => {
                    let g: Girth = g.parse().map_err(|m: String| err(ln, m))?;
                    if inst.girth.replace(g).is_some() {
                        return Err(err(ln, "duplicate `meta girth`"));
                    }
                }
                ["phi", k] => {
                    if inst.phi.replace(num(ln, k)?).is_some() {
                        return Err(err(ln, "duplicate `meta phi`"));
                    }
                }
                _ => return Err(err(ln, "expected `meta girth <g|inf>` or `meta phi <k>`")),
            },
            "v" => match toks.as_slice() {
                [id] => listed.push((ln, vertex(ln, id)?)),
                _ => return Err(err(ln, "expected `v <id>`")),
            },
            "e" => match toks.as_slice() {
                [u, v] => edges.push((ln, vertex(ln, u)?, vertex(ln, v)?, 1)),
                [u, v, w] => edges.push((ln, vertex(ln, u)?, vertex(ln, v)?, num(ln, w)?)),
                _ => return Err(err(ln, "expected `e <u> <v> [weight]`")),
            },
            "r" => {
                let (head, tail) = rest
                    .split_once(':')
                    .ok_or_else(|| err(ln, "expected `r <v>: <neighbors>`"))?;
                let v = vertex(ln, head.trim())?;
                if !rot_seen.insert(v) {
                    return Err(err(ln, format!("duplicate rotation for {v}")));
                }
                let around = tail
                    .split_whitespace()
                    .map(|t| vertex(ln, t))
                    .collect::<Result<Vec<_>>>()?;
                rotation
                    .get_or_insert_with(RotationSystem::new)
                    .set(v, around);
            }
            other => return Err(err(ln, format!("unknown line kind `{other}`"))),
        }
    }

    let mut graph = if listed.is_empty() {
        Graph::with_vertices(n as u32)
    } else {
        let mut g = Graph::new();
        for &(ln, v) in &listed {
            g.add_vertex(v).map_err(|e| err(ln, e.to_string()))?;
        }
        if g.n() != n {
            return Err(err(
                listed[0].0,
                format!("`n {n}` but {} vertices listed", g.n()),
            ));
        }
        g
    };
    for (ln, u, v, w) in edges {
        for x in [u, v] {
            if !graph.contains(x) {
                return Err(err(ln, format!("edge endpoint {x} is not a vertex")));
            }
        }
        graph
            .add_weighted_edge(u, v, w)
            .map_err(|e| err(ln, e.to_string()))?;
    }
    if let Some(rot) = &rotation {
        faces_of(&graph, rot)?;
    }
    inst.graph = graph;
    inst.rotation = rotation;
    Ok(inst)
}

/// Canonical text form; `parse_graph(&format_graph(i))` returns `i`.
pub fn format_graph(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = format!("{MAGIC} {VERSION}\nn {}\n", g.n());
    if let Some(name) = &inst.name {
        let _ = writeln!(out, "name {name}");
    }
    if let Some(girth) = inst.girth {
        let _ = writeln!(out, "meta girth {girth}");
    }
    if let Some(phi) = inst.phi {
        let _ = writeln!(out, "meta phi {phi}");
    }
    if !g.vertices().enumerate().all(|(i, v)| v.0 as usize == i) {
        for v in g.vertices() {
            let _ = writeln!(out, "v {v}");
        }
    }
    for (e, w) in g.weighted_edges() {
        if w == 1 {
            let _ = writeln!(out, "e {} {}", e.0, e.1);
        } else {
            let _ = writeln!(out, "e {} {} {w}", e.0, e.1);
        }
    }
    if let Some(rot) = &inst.rotation {
        for (v, around) in rot.iter() {
            let _ = write!(out, "r {v}:");
            for u in around {
                let _ = write!(out, " {u}");
            }
            out.push('\n');
        }
    }
    out
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Instance> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    std::fs::write(path, format_graph(inst))?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    format: String,
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId, Weight)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation: Option<RotationSystem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    girth: Option<Girth>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<usize>,
}

pub fn to_json(inst: &Instance) -> Result<String> {
    let doc = GraphJson {
        format: MAGIC.into(),
        version: VERSION,
        name: inst.name.clone(),
        vertices: inst.graph.vertices().collect(),
        edges: inst
            .graph
            .weighted_edges()
            .map(|(e, w)| (e.0, e.1, w))
            .collect(),
        rotation: inst.rotation.clone(),
        girth: inst.girth,
        phi: inst.phi,
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn from_json(text: &str) -> Result<Instance> {
    let doc: GraphJson = serde_json::from_str(text)?;
    if doc.format != MAGIC || doc.version != VERSION {
        return Err(err(
            1,
            format!("expected format `{MAGIC}` version {VERSION}"),
        ));
    }
    let mut graph = Graph::new();
    for v in doc.vertices {
        graph.add_vertex(v)?;
    }
    for (u, v, w) in doc.edges {
        if !graph.contains(u) || !graph.contains(v) {
            return Err(Error::MissingEdge(u, v));
        }
        graph.add_weighted_edge(u, v, w)?;
    }
    if let Some(rot) = &doc.rotation {
        faces_of(&graph, rot)?;
    }
    Ok(Instance {
        name: doc.name,
        graph,
        rotation: doc.rotation,
        girth: doc.girth,
        phi: doc.phi,
    })
}
