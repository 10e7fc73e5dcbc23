//! Text formats for graphs and mean vectors.
//!
//! * DIMACS edge format: optional `c` comment lines, a `p edge <n> <m>`
//!   header, then `e <u> <v>` lines with 1-based endpoints.
//! * Edge list: a first line `<n> <m>`, then `m` lines `<u> <v>` with
//!   0-based endpoints.
//! * Mean vector: one real per line.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    EdgeList,
}

impl GraphFormat {
    /// `.dimacs`, `.col` and `.clq` map to DIMACS; anything else is an edge
    /// list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dimacs" | "col" | "clq") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_field<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

fn build(n: usize, edges: Vec<(usize, usize)>, lines: &[usize]) -> Result<Graph> {
    Graph::from_edge_list(n, edges.iter().copied()).map_err(|e| match e {
        Error::InvalidEdge { u, v, .. } => {
            let at = edges
                .iter()
                .position(|&p| p == (u, v))
                .map(|i| lines[i])
                .unwrap_or(0);
            Error::parse(at, e.to_string())
        }
        other => other,
    })
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (no, line) in numbered_lines(text) {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(no, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge" | "col") => {}
                    other => {
                        return Err(Error::parse(
                            no,
                            format!("expected `p edge`, found format {other:?}"),
                        ))
                    }
                }
                let n = parse_field(no, toks.next(), "node count")?;
                let m = parse_field(no, toks.next(), "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                if header.is_none() {
                    return Err(Error::parse(no, "edge before problem line"));
                }
                let u: usize = parse_field(no, toks.next(), "endpoint")?;
                let v: usize = parse_field(no, toks.next(), "endpoint")?;
                if u == 0 || v == 0 {
                    return Err(Error::parse(no, "DIMACS endpoints are 1-based"));
                }
                edges.push((u - 1, v - 1));
                lines.push(no);
            }
            Some(other) => {
                return Err(Error::parse(no, format!("unexpected line tag `{other}`")));
            }
            None => {}
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `p edge` header"))?;
    if edges.len() != m {
        return Err(Error::parse(
            lines.last().copied().unwrap_or(0),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    build(n, edges, &lines)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut it = numbered_lines(text).filter(|(_, l)| !l.starts_with('#'));
    let (hno, head) = it.next().ok_or_else(|| Error::parse(0, "empty input"))?;
    let mut toks = head.split_whitespace();
    let n: usize = parse_field(hno, toks.next(), "node count")?;
    let m: usize = parse_field(hno, toks.next(), "edge count")?;
    if toks.next().is_some() {
        return Err(Error::parse(hno, "header must be `<n> <m>`"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut lines = Vec::with_capacity(m);
    for (no, line) in it {
        let mut toks = line.split_whitespace();
        let u = parse_field(no, toks.next(), "endpoint")?;
        let v = parse_field(no, toks.next(), "endpoint")?;
        if toks.next().is_some() {
            return Err(Error::parse(no, "expected exactly two endpoints"));
        }
        edges.push((u, v));
        lines.push(no);
    }
    if edges.len() != m {
        return Err(Error::parse(
            lines.last().copied().unwrap_or(hno),
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    build(n, edges, &lines)
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Dimacs => parse_dimacs(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

pub fn read_graph(path: &Path, format: Option<GraphFormat>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    parse_graph(
        &text,
        format.unwrap_or_else(|| GraphFormat::from_path(path)),
    )
}

pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 * (g.m() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dimacs => write_dimacs(g),
        GraphFormat::EdgeList => write_edge_list(g),
    }
}

/// Parses `n` reals, one per line, each in `[0, 1]`.
pub fn parse_mean_vector(text: &str, n: usize) -> Result<Vec<f64>> {
    let mut mean = Vec::with_capacity(n);
    for (no, line) in numbered_lines(text) {
        let v: f64 = parse_field(no, Some(line), "mean entry")?;
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::parse(no, format!("mean entry {v} outside [0, 1]")));
        }
        mean.push(v);
    }
    if mean.len() != n {
        return Err(Error::parse(
            0,
            format!("expected {n} mean entries, found {}", mean.len()),
        ));
    }
    Ok(mean)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::figure_one;
    use proptest::prelude::*;

    #[test]
    fn dimacs_path() {
        let g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g, Graph::path(3));
        let g = parse_dimacs("c hello\n\np edge 3 2\ne 1 2\nc mid\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn edge_list_figure_one() {
        let g = parse_edge_list("5 4\n0 1\n0 2\n1 3\n1 4").unwrap();
        assert_eq!(g, figure_one());
    }

    #[test]
    fn count_mismatch_is_rejected() {
        assert!(matches!(
            parse_dimacs("p edge 3 5\ne 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 1\n1 2"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 1 x"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p graph 3 1\ne 1 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("e 1 2\np edge 2 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("p edge 3 1\ne 0 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n\n2 2"),
            Err(Error::Parse { line: 4, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 7"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(parse_edge_list("").is_err());
        assert!(parse_dimacs("c only comments").is_err());
    }

    #[test]
    fn mean_vector() {
        assert_eq!(
            parse_mean_vector("0.5\n1\n0\n", 3).unwrap(),
            vec![0.5, 1.0, 0.0]
        );
        assert!(parse_mean_vector("0.5\n1.5\n0\n", 3).is_err());
        assert!(parse_mean_vector("0.5\n", 3).is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            GraphFormat::from_path(Path::new("a.dimacs")),
            GraphFormat::Dimacs
        );
        assert_eq!(
            GraphFormat::from_path(Path::new("a.txt")),
            GraphFormat::EdgeList
        );
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..40, raw in proptest::collection::vec((0usize..40, 0usize..40), 0..150)) {
            let edges: Vec<_> = raw.into_iter().map(|(u, v)| (u % n, v % n)).filter(|(u, v)| u != v).collect();
            let g = Graph::from_edge_list(n, edges).unwrap();
            prop_assert_eq!(&parse_dimacs(&write_dimacs(&g)).unwrap(), &g);
            prop_assert_eq!(&parse_edge_list(&write_edge_list(&g)).unwrap(), &g);
        }
    }
}
