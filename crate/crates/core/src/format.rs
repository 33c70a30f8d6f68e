//! Plain-text graph format.
//!
//! ```text
//! v=2 e=3
//! 1>2
//! 1>2
//! 1>2
//! ```
//!
//! Vertices are numbered from 1 and `a>b` is an edge with its arrow from
//! `a` to `b`; a loop is written `a>a`. Lines may also be joined by `;`
//! (the one-line form used in reports). Blank lines and `#` comments are
//! ignored.

use crate::canon::GraphClass;
use crate::error::{Error, Result};
use crate::graph::OrientedGraph;

pub fn write_graph(g: &OrientedGraph) -> String {
    let mut out = format!("v={} e={}\n", g.vertex_count(), g.edge_count());
    for (a, b) in g.directed_edges() {
        out.push_str(&format!("{}>{}\n", a + 1, b + 1));
    }
    out
}

/// The same content on one line, fields separated by `; `.
pub fn write_graph_line(g: &OrientedGraph) -> String {
    let text = write_graph(g);
    text.lines().collect::<Vec<_>>().join("; ")
}

impl GraphClass {
    /// Reference labelling in the text format.
    pub fn to_text(&self) -> String {
        write_graph(&self.representative())
    }

    pub fn to_line(&self) -> String {
        write_graph_line(&self.representative())
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parse one graph. Accepts both the multi-line and the `;`-joined form.
pub fn parse_graph(text: &str) -> Result<OrientedGraph> {
    let mut fields = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for part in line.split(';') {
            let part = part.trim();
            if !part.is_empty() {
                fields.push((i + 1, part));
            }
        }
    }
    let Some(&(hline, header)) = fields.first() else {
        return Err(parse_error(1, "empty input"));
    };
    let (n, m) = parse_header(header).ok_or_else(|| parse_error(hline, format!("expected `v=<n> e=<m>`, got `{header}`")))?;
    let body = &fields[1..];
    if body.len() != m {
        let line = body.last().map_or(hline, |f| f.0);
        return Err(parse_error(line, format!("header announces {m} edges, found {}", body.len())));
    }
    let mut edges = Vec::with_capacity(m);
    for &(line, field) in body {
        let (a, b) = field
            .split_once('>')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| parse_error(line, format!("expected `a>b`, got `{field}`")))?;
        if a == 0 || b == 0 || a > n || b > n {
            return Err(parse_error(line, format!("vertex out of range 1..={n} in `{field}`")));
        }
        edges.push((a - 1, b - 1));
    }
    OrientedGraph::from_edges(n, &edges).map_err(|e| parse_error(hline, e.to_string()))
}

fn parse_header(header: &str) -> Option<(usize, usize)> {
    let mut it = header.split_whitespace();
    let n = it.next()?.strip_prefix("v=")?.parse().ok()?;
    let m = it.next()?.strip_prefix("e=")?.parse().ok()?;
    it.next().is_none().then_some((n, m))
}
