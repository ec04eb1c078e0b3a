//! The line-oriented graph format.
//!
//! ```text
//! kgraph 1
//! k 2
//! vertex v
//! edge e color=1 range=v source=v
//! edge f color=2 range=v source=v
//! square e f = f e
//! ```

use std::collections::HashMap;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{KGraph, Skeleton};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses and validates a graph. Every error carries the line it refers to.
pub fn parse_graph(text: &str) -> Result<KGraph> {
    let mut skel: Option<Skeleton> = None;
    let mut header = false;
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut edge_line: HashMap<String, usize> = HashMap::new();
    let mut squares: Vec<([String; 4], usize)> = Vec::new();
    let mut last = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        last = line;
        let words: Vec<&str> = body.split_whitespace().collect();
        if !header {
            if words != ["kgraph", "1"] {
                return Err(err(line, "expected header `kgraph 1`"));
            }
            header = true;
            continue;
        }
        match words[0] {
            "k" => {
                if skel.is_some() {
                    return Err(err(line, "rank declared twice"));
                }
                let [_, k] = words[..] else {
                    return Err(err(line, "expected `k <int>`"));
                };
                let k: usize = k.parse().map_err(|_| err(line, format!("bad rank `{k}`")))?;
                if k == 0 {
                    return Err(err(line, "rank must be at least 1"));
                }
                skel = Some(Skeleton::new(k));
            }
            "vertex" => {
                let s = skel.as_mut().ok_or_else(|| err(line, "`k` must precede declarations"))?;
                let [_, name] = words[..] else {
                    return Err(err(line, "expected `vertex <id>`"));
                };
                check_name(name, line)?;
                if let Some(prev) = names.insert(name.to_string(), line) {
                    return Err(err(line, format!("name `{name}` already declared on line {prev}")));
                }
                s.add_vertex(name);
            }
            "edge" => {
                let s = skel.as_mut().ok_or_else(|| err(line, "`k` must precede declarations"))?;
                if words.len() != 5 {
                    return Err(err(line, "expected `edge <id> color=<i> range=<v> source=<w>`"));
                }
                let name = words[1];
                check_name(name, line)?;
                let mut fields: HashMap<&str, &str> = HashMap::new();
                for w in &words[2..] {
                    let (key, value) =
                        w.split_once('=').ok_or_else(|| err(line, format!("expected key=value, got `{w}`")))?;
                    if fields.insert(key, value).is_some() {
                        return Err(err(line, format!("repeated field `{key}`")));
                    }
                }
                let get = |key: &str| fields.get(key).copied().ok_or_else(|| err(line, format!("missing `{key}=`")));
                let color: usize = get("color")?.parse().map_err(|_| err(line, "color must be a positive integer"))?;
                if color == 0 || color > s.k {
                    return Err(err(line, format!("color {color} outside 1..={}", s.k)));
                }
                let vertex = |key: &str| -> Result<u32> {
                    let v = get(key)?;
                    s.vertex_id(v).ok_or_else(|| err(line, format!("unknown vertex `{v}`")))
                };
                let (range, source) = (vertex("range")?, vertex("source")?);
                if let Some(prev) = names.insert(name.to_string(), line) {
                    return Err(err(line, format!("name `{name}` already declared on line {prev}")));
                }
                edge_line.insert(name.to_string(), line);
                s.add_edge(name, color, range, source);
            }
            "square" => {
                let s = skel.as_mut().ok_or_else(|| err(line, "`k` must precede declarations"))?;
                let [_, a, b, "=", c, d] = words[..] else {
                    return Err(err(line, "expected `square <a> <b> = <c> <d>`"));
                };
                let mut ids = [0; 4];
                for (slot, name) in ids.iter_mut().zip([a, b, c, d]) {
                    *slot = s.edge_id(name).ok_or_else(|| err(line, format!("unknown edge `{name}`")))?;
                }
                let col = |i: usize| s.edges[ids[i] as usize].color;
                if !(col(0) < col(1) && col(2) == col(1) && col(3) == col(0)) {
                    return Err(err(
                        line,
                        "square colors must satisfy color(a) < color(b) = color(c), color(d) = color(a)",
                    ));
                }
                s.add_square(ids[0], ids[1], ids[2], ids[3]);
                squares.push(([a, b, c, d].map(String::from), line));
            }
            other => return Err(err(line, format!("unknown declaration `{other}`"))),
        }
    }
    if !header {
        return Err(err(1, "expected header `kgraph 1`"));
    }
    let skel = skel.ok_or_else(|| err(last.max(1), "missing `k` declaration"))?;

    KGraph::new(skel).map_err(|e| {
        let line = match &e {
            Error::MissingSquare(a, _) | Error::CubeConditionFailure(a, ..) => edge_line.get(a).copied(),
            Error::DuplicateSquare(a, b) => {
                squares.iter().filter(|(sq, _)| &sq[0] == a && &sq[1] == b).nth(1).map(|(_, l)| *l)
            }
            Error::NonBijectiveSquares(c, d, _) => squares
                .iter()
                .find(|(sq, _)| &sq[2] == c && &sq[3] == d)
                .map(|(_, l)| *l)
                .or_else(|| edge_line.get(c).copied()),
            Error::Malformed(msg) => squares
                .iter()
                .find(|(sq, _)| msg.contains(&format!("square {} {} = {} {}", sq[0], sq[1], sq[2], sq[3])))
                .map(|(_, l)| *l),
            _ => None,
        };
        err(line.unwrap_or(last.max(1)), e.to_string())
    })
}

fn check_name(name: &str, line: usize) -> Result<()> {
    let ok = !name.is_empty()
        && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && !name.chars().all(|c| c.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(err(line, format!("invalid name `{name}`")))
    }
}

/// Renders a graph in the text format; `parse_graph` inverts it.
pub fn write_graph(g: &KGraph) -> String {
    let s = g.skeleton();
    let mut out = format!("kgraph 1\nk {}\n", s.k);
    for v in &s.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    for e in &s.edges {
        out.push_str(&format!(
            "edge {} color={} range={} source={}\n",
            e.name, e.color, s.vertices[e.range as usize], s.vertices[e.source as usize]
        ));
    }
    for q in &s.squares {
        let n = |id: u32| &s.edges[id as usize].name;
        out.push_str(&format!("square {} {} = {} {}\n", n(q.a), n(q.b), n(q.c), n(q.d)));
    }
    out
}

/// Parses `a,b,…` (or `(a,b,…)`) as a degree of rank k.
pub fn parse_degree(text: &str, k: usize) -> Result<Degree> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    let coords: Vec<u32> = t
        .split(',')
        .map(|c| c.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Malformed(format!("bad degree `{text}`")))?;
    let d = Degree::from_vec(coords);
    d.check_rank(k)?;
    Ok(d)
}
