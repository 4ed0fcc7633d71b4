//! Line-oriented graph text format.
//!
//! ```text
//! # comment
//! edge <id> <u> <v> color=<token> [zero] [pointed]
//! vertex <v>
//! ```
//!
//! Vertices are created implicitly by edges; `vertex` lines only matter for
//! isolated vertices. The pointed edge may be written with `color=ν` or
//! `color=nu`.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write;

use crate::error::FormatError;
use crate::graph::{Color, ColoredMultigraph, Edge, EdgeId, EdgeKind, VertexId};

struct Tok<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain([(line.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Tok {
                    text: &line[s..i],
                    col: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn parse_vertex(t: &Tok, line: usize) -> Result<VertexId, FormatError> {
    t.text.parse().map_err(|_| FormatError::Parse {
        line,
        col: t.col,
        msg: format!("expected a vertex number, found {:?}", t.text),
    })
}

pub fn parse_graph(src: &str) -> Result<ColoredMultigraph, FormatError> {
    let mut vertices: BTreeSet<VertexId> = BTreeSet::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen: HashSet<EdgeId> = HashSet::new();
    let mut pointed_seen = false;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokens(body);
        let Some(head) = toks.first() else { continue };
        let err = |col: usize, msg: String| FormatError::Parse { line, col, msg };
        match head.text {
            "vertex" => {
                if toks.len() != 2 {
                    return Err(err(head.col, "expected `vertex <v>`".into()));
                }
                vertices.insert(parse_vertex(&toks[1], line)?);
            }
            "edge" => {
                if toks.len() < 5 {
                    let col = body.trim_end().chars().count() + 1;
                    return Err(err(col, "expected `edge <id> <u> <v> color=<token>`".into()));
                }
                let id = EdgeId::new(toks[1].text);
                let u = parse_vertex(&toks[2], line)?;
                let v = parse_vertex(&toks[3], line)?;
                let color = toks[4]
                    .text
                    .strip_prefix("color=")
                    .filter(|c| !c.is_empty())
                    .ok_or_else(|| err(toks[4].col, format!("expected color=<token>, found {:?}", toks[4].text)))?;
                let (mut zero, mut pointed) = (None, None);
                for t in &toks[5..] {
                    match t.text {
                        "zero" if zero.is_none() => zero = Some(t.col),
                        "pointed" if pointed.is_none() => pointed = Some(t.col),
                        other => return Err(err(t.col, format!("unexpected {other:?}"))),
                    }
                }
                let kind = match (zero, pointed) {
                    (Some(a), Some(b)) => return Err(FormatError::PointedZeroConflict { line, col: a.max(b) }),
                    (Some(_), None) => EdgeKind::Zero,
                    (None, Some(_)) => EdgeKind::Pointed,
                    (None, None) => EdgeKind::Regular,
                };
                let color = match (kind, color) {
                    (EdgeKind::Pointed, "nu") => Color::pointed(),
                    _ => Color::new(color),
                };
                if !seen.insert(id.clone()) {
                    return Err(FormatError::DuplicateEdgeId { line, id });
                }
                if kind == EdgeKind::Pointed {
                    if pointed_seen {
                        return Err(FormatError::TwoPointedEdges { line, id });
                    }
                    pointed_seen = true;
                }
                edges.push(Edge::new(id, u, v, color, kind));
            }
            other => return Err(err(head.col, format!("unknown declaration {other:?}"))),
        }
    }
    Ok(ColoredMultigraph::new(vertices, edges)?)
}

/// Prints `g` in the text format; edges in id order, isolated vertices
/// after the edges.
pub fn print_graph(g: &ColoredMultigraph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        let _ = write!(out, "edge {} {} {} color={}", e.id, e.tail, e.head, e.color);
        match e.kind {
            EdgeKind::Regular => {}
            EdgeKind::Zero => out.push_str(" zero"),
            EdgeKind::Pointed => out.push_str(" pointed"),
        }
        out.push('\n');
    }
    for v in g.vertices() {
        if !g.edges().iter().any(|e| e.touches(*v)) {
            let _ = writeln!(out, "vertex {v}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_parallel_edges() {
        let g = parse_graph("# two parallel\nedge a 1 2 color=mu\nedge h 1 2 color=z0 zero\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.vertex_count(), 2);
        assert!(g.edge(&"h".into()).unwrap().is_zero());
        assert_eq!(
            crate::universal_tutte(&g).to_string(),
            "x[mu]·z{loop(z0)} + y[mu]·z{bridge(z0)}"
        );
    }

    #[test]
    fn diagnostics() {
        let dup = parse_graph("edge a 0 1 color=mu\nedge a 1 2 color=mu\n");
        assert!(matches!(dup, Err(FormatError::DuplicateEdgeId { line: 2, .. })));
        let both = parse_graph("edge e 0 1 color=ν zero pointed\n");
        assert_eq!(both, Err(FormatError::PointedZeroConflict { line: 1, col: 25 }));
        let two = parse_graph("edge e 0 1 color=ν pointed\nedge f 0 1 color=nu pointed\n");
        assert!(matches!(two, Err(FormatError::TwoPointedEdges { line: 2, .. })));
        let bad = parse_graph("edge a x 1 color=mu\n");
        assert!(matches!(bad, Err(FormatError::Parse { line: 1, col: 8, .. })));
        let short = parse_graph("\n  edge a 0 1\n");
        assert!(matches!(short, Err(FormatError::Parse { line: 2, .. })));
        assert!(matches!(
            parse_graph("node 1\n"),
            Err(FormatError::Parse { col: 1, .. })
        ));
        assert!(matches!(
            parse_graph("edge a 0 1 color=mu\nedge b 1 2 color=mu zero\n"),
            Err(FormatError::Graph(_))
        ));
    }

    #[test]
    fn round_trip() {
        let src = "edge e 0 1 color=nu pointed\nedge h 1 2 color=z0 zero\nedge m 2 0 color=mu\nvertex 7\n";
        let g = parse_graph(src).unwrap();
        assert!(g.pointed_edge().unwrap().color.is_pointed());
        let text = print_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert!(text.contains("vertex 7"));
    }
}
