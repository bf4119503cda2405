//! Plain-text hypergraph format.
//!
//! ```text
//! c optional comment lines start with `c` or `#`
//! p hg <n> <m>
//! 1 2 3
//! 3 4
//! ```
//!
//! After the header come exactly `m` edge lines. A blank edge line is the
//! empty edge. Once `m` edges have been read only blank and comment lines
//! may follow. Duplicate edges collapse (set semantics), so the parsed
//! hypergraph can have fewer than `m` edges.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("missing `p hg <n> <m>` header")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: u32 },
    #[error("line {line}: not a vertex id: `{token}`")]
    BadToken { line: usize, token: String },
    #[error("header announces {expected} edges but {found} were given")]
    EdgeCount { expected: usize, found: usize },
    #[error("line {line}: unexpected content after the last edge")]
    TrailingContent { line: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn is_comment(line: &str) -> bool {
    line.starts_with('c') || line.starts_with('#')
}

pub fn parse_hypergraph<R: BufRead>(reader: R) -> Result<Hypergraph, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges: Vec<Vec<Vertex>> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if is_comment(trimmed) {
            continue;
        }
        let Some((n, m)) = header else {
            if trimmed.is_empty() {
                continue;
            }
            header = Some(parse_header(trimmed, lineno)?);
            continue;
        };
        if edges.len() == m {
            if trimmed.is_empty() {
                continue;
            }
            return Err(ParseError::TrailingContent { line: lineno });
        }
        let mut edge = Vec::new();
        for tok in trimmed.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| ParseError::BadToken { line: lineno, token: tok.to_string() })?;
            if v == 0 || v > n as u64 {
                return Err(ParseError::VertexOutOfRange { line: lineno, vertex: v, n });
            }
            edge.push(v as Vertex);
        }
        edges.push(edge);
    }

    let (n, m) = header.ok_or(ParseError::MissingHeader)?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount { expected: m, found: edges.len() });
    }
    // ranges were checked above
    Ok(Hypergraph::new(n, edges).expect("validated edges"))
}

pub fn parse_str(text: &str) -> Result<Hypergraph, ParseError> {
    parse_hypergraph(text.as_bytes())
}

fn parse_header(line: &str, lineno: usize) -> Result<(u32, usize), ParseError> {
    let bad = |reason: &str| ParseError::Header { line: lineno, reason: reason.to_string() };
    let toks: Vec<&str> = line.split_whitespace().collect();
    match toks.as_slice() {
        ["p", "hg", n, m] => {
            let n = n.parse().map_err(|_| bad("vertex count is not a non-negative integer"))?;
            let m = m.parse().map_err(|_| bad("edge count is not a non-negative integer"))?;
            Ok((n, m))
        }
        ["p", ..] => Err(bad("expected `p hg <n> <m>`")),
        _ => Err(bad("expected the `p hg <n> <m>` header before any edge")),
    }
}

/// Writes `h` in the text format. Only edges and the id bound are written;
/// the vertex set of the result of reading it back is `1..=n`.
pub fn write_hypergraph<W: Write>(h: &Hypergraph, mut out: W) -> io::Result<()> {
    writeln!(out, "p hg {} {}", h.id_bound(), h.edge_count())?;
    for e in h.edges() {
        write_vertex_line(&mut out, e)?;
    }
    Ok(())
}

pub fn to_string(h: &Hypergraph) -> String {
    let mut buf = Vec::new();
    write_hypergraph(h, &mut buf).expect("write to Vec");
    String::from_utf8(buf).expect("ascii output")
}

/// One ascending, space-separated vertex list per line.
pub fn write_vertex_line<W: Write>(mut out: W, set: &[Vertex]) -> io::Result<()> {
    let mut first = true;
    for v in set {
        if !first {
            out.write_all(b" ")?;
        }
        write!(out, "{v}")?;
        first = false;
    }
    out.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let h = parse_str("p hg 3 3\n1 2\n1 3\n2 3\n").unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edges(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn duplicates_collapse() {
        let h = parse_str("p hg 3 2\n1 2\n1 2\n").unwrap();
        assert_eq!(h.id_bound(), 3);
        assert_eq!(h.edges(), &[vec![1, 2]]);
    }

    #[test]
    fn out_of_range_reports_line() {
        let err = parse_str("p hg 2 1\n1 3\n").unwrap_err();
        assert!(matches!(err, ParseError::VertexOutOfRange { line: 2, vertex: 3, n: 2 }), "{err}");
    }

    #[test]
    fn comments_and_trailing_blank_lines() {
        let text = "c a comment\n# another\np hg 4 2\nc inside\n1 2 3\n4\n\n\n";
        let h = parse_str(text).unwrap();
        assert_eq!(h.edges(), &[vec![1, 2, 3], vec![4]]);
    }

    #[test]
    fn blank_edge_line_is_empty_edge() {
        let h = parse_str("p hg 2 2\n\n1 2\n").unwrap();
        assert!(h.has_empty_edge());
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_str("p cnf 3 1\n1\n"), Err(ParseError::Header { line: 1, .. })));
        assert!(matches!(parse_str("p hg x 1\n1\n"), Err(ParseError::Header { .. })));
        assert!(matches!(parse_str("1 2\n"), Err(ParseError::Header { line: 1, .. })));
        assert!(matches!(parse_str(""), Err(ParseError::MissingHeader)));
        assert!(matches!(parse_str("p hg 3 1\n1 a\n"), Err(ParseError::BadToken { line: 2, .. })));
        assert!(matches!(parse_str("p hg 3 2\n1 2\n"), Err(ParseError::EdgeCount { expected: 2, found: 1 })));
        assert!(matches!(parse_str("p hg 3 1\n1 2\n3\n"), Err(ParseError::TrailingContent { line: 3 })));
        assert!(matches!(parse_str("p hg 3 1\n-1\n"), Err(ParseError::BadToken { .. })));
    }

    #[test]
    fn write_then_read() {
        let h = parse_str("p hg 5 3\n3 1\n5\n\n").unwrap();
        let text = to_string(&h);
        assert_eq!(text, "p hg 5 3\n\n1 3\n5\n");
        assert_eq!(parse_str(&text).unwrap(), h);
    }
}
