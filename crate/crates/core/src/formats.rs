//! graph6, DIMACS `p edge` and plain edge-list encodings.
//!
//! Emitters produce one canonical text per graph; parsers reject anything
//! the emitter would not produce for graph6 (so `emit(parse(s)) == s`
//! whenever parsing succeeds). DIMACS and edge-list parsing are lenient
//! about comments and edge order but strict about counts.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("empty input")]
    Empty,
    #[error("malformed graph6 header at byte {offset}")]
    MalformedHeader { offset: usize },
    #[error("graph6 header uses a long form for n = {n}")]
    NonCanonicalHeader { n: usize },
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated graph6 bit-vector: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing junk at byte {offset}")]
    TrailingJunk { offset: usize },
    #[error("nonzero padding bits in the last graph6 byte")]
    NonzeroPadding,
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("missing problem line `p edge n m`")]
    MissingHeader,
    #[error("declared {declared} edges but found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
}

fn line_err(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Graph6,
    Dimacs,
    Edgelist,
}

impl Format {
    /// `.g6` → graph6, `.col`/`.dimacs` → DIMACS, anything else → edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => Format::Graph6,
            Some("col") | Some("dimacs") => Format::Dimacs,
            _ => Format::Edgelist,
        }
    }

    pub fn parse(self, text: &str) -> Result<Graph, FormatError> {
        match self {
            Format::Graph6 => parse_graph6(text.trim_end_matches(['\n', '\r'])),
            Format::Dimacs => parse_dimacs(text),
            Format::Edgelist => parse_edgelist(text),
        }
    }

    pub fn emit(self, g: &Graph) -> String {
        match self {
            Format::Graph6 => emit_graph6(g) + "\n",
            Format::Dimacs => emit_dimacs(g),
            Format::Edgelist => emit_edgelist(g),
        }
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "dimacs" => Ok(Format::Dimacs),
            "edgelist" => Ok(Format::Edgelist),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::Dimacs => "dimacs",
            Format::Edgelist => "edgelist",
        })
    }
}

const G6_MIN: u8 = 63;
const G6_MAX: u8 = 126;
const MEDIUM: usize = 63;
const LARGE: usize = 258_048;

fn push_n(out: &mut Vec<u8>, n: usize) {
    if n < MEDIUM {
        out.push(n as u8 + G6_MIN);
    } else if n < LARGE {
        out.push(G6_MAX);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + G6_MIN);
        }
    } else {
        out.push(G6_MAX);
        out.push(G6_MAX);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + G6_MIN);
        }
    }
}

/// graph6 encoding: size header, then the upper triangle column by column
/// (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), six bits per byte, zero-padded.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_n(&mut out, n);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + G6_MIN);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + G6_MIN);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(G6_MIN..=G6_MAX).contains(&byte) {
            return Err(FormatError::InvalidByte { offset, byte });
        }
    }
    let six = |i: usize| (bytes[i] - G6_MIN) as usize;
    let (n, header) = if bytes[0] != G6_MAX {
        (six(0), 1)
    } else if bytes.len() >= 2 && bytes[1] != G6_MAX {
        if bytes.len() < 4 {
            return Err(FormatError::MalformedHeader {
                offset: bytes.len(),
            });
        }
        let n = (six(1) << 12) | (six(2) << 6) | six(3);
        if n < MEDIUM {
            return Err(FormatError::NonCanonicalHeader { n });
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(FormatError::MalformedHeader {
                offset: bytes.len(),
            });
        }
        let n = (2..8).fold(0usize, |acc, i| (acc << 6) | six(i));
        if n < LARGE {
            return Err(FormatError::NonCanonicalHeader { n });
        }
        (n, 8)
    };

    let total_bits = n * n.saturating_sub(1) / 2;
    let expected = total_bits.div_ceil(6);
    let body = &bytes[header..];
    if body.len() < expected {
        return Err(FormatError::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(FormatError::TrailingJunk {
            offset: header + expected,
        });
    }
    let pad = expected * 6 - total_bits;
    if pad > 0 && (body[expected - 1] - G6_MIN) & ((1 << pad) - 1) != 0 {
        return Err(FormatError::NonzeroPadding);
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - G6_MIN;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 pairs are in range"))
}

/// `p edge n m` followed by `e u v` lines, 1-indexed, `u < v`, lexicographic.
pub fn emit_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Graph, FormatError> {
    if text.trim().is_empty() {
        return Err(FormatError::Empty);
    }
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(line_err(line, "second problem line"));
                }
                let kind = tok.next();
                if !matches!(kind, Some("edge") | Some("col")) {
                    return Err(line_err(line, "expected `p edge n m`"));
                }
                let n = parse_num(tok.next(), line)?;
                let m = parse_num(tok.next(), line)?;
                if tok.next().is_some() {
                    return Err(line_err(line, "extra tokens after `p edge n m`"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| line_err(line, "edge before problem line"))?;
                let u = parse_num(tok.next(), line)?;
                let v = parse_num(tok.next(), line)?;
                if tok.next().is_some() {
                    return Err(line_err(line, "extra tokens after `e u v`"));
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(line_err(line, format!("vertex outside 1..={n}")));
                }
                if u == v {
                    return Err(line_err(line, format!("self-loop at {u}")));
                }
                let key = (u.min(v) - 1, u.max(v) - 1);
                if !seen.insert(key) {
                    return Err(line_err(line, format!("duplicate edge {u} {v}")));
                }
                edges.push(key);
            }
            Some(other) => return Err(line_err(line, format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or(FormatError::MissingHeader)?;
    if m != edges.len() {
        return Err(FormatError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::new(n, edges).expect("validated above"))
}

fn parse_num(tok: Option<&str>, line: usize) -> Result<usize, FormatError> {
    let tok = tok.ok_or_else(|| line_err(line, "missing number"))?;
    tok.parse()
        .map_err(|_| line_err(line, format!("`{tok}` is not a nonnegative integer")))
}

/// `# n N` directive, then one `u v` pair per line (0-indexed, `u < v`).
pub fn emit_edgelist(g: &Graph) -> String {
    let mut out = format!("# n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Without a `# n N` directive the vertex count is one more than the largest id.
pub fn parse_edgelist(text: &str) -> Result<Graph, FormatError> {
    if text.trim().is_empty() {
        return Err(FormatError::Empty);
    }
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() {
            continue;
        }
        if let Some(comment) = body.strip_prefix('#') {
            let mut tok = comment.split_whitespace();
            if tok.next() == Some("n") {
                declared = Some(parse_num(tok.next(), line)?);
            }
            continue;
        }
        let mut tok = body.split_whitespace();
        let u = parse_num(tok.next(), line)?;
        let v = parse_num(tok.next(), line)?;
        if tok.next().is_some() {
            return Err(line_err(line, "expected exactly two vertex ids"));
        }
        if u == v {
            return Err(line_err(line, format!("self-loop at {u}")));
        }
        if let Some(n) = declared {
            if u >= n || v >= n {
                return Err(line_err(line, format!("vertex outside 0..{n}")));
            }
        }
        edges.push((u, v));
    }
    let n = declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::new(n, edges).map_err(|e| line_err(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn graph6_known_strings() {
        assert_eq!(emit_graph6(&Graph::empty(1)), "@");
        assert_eq!(emit_graph6(&Graph::empty(0)), "?");
        let star = parse_graph6("D?{").unwrap();
        assert_eq!(star.n(), 5);
        assert_eq!(
            star.edges().collect::<Vec<_>>(),
            vec![(0, 4), (1, 4), (2, 4), (3, 4)]
        );
        assert_eq!(emit_graph6(&star), "D?{");
        // K4 is the classic "C~"
        assert_eq!(emit_graph6(&generators::complete(4)), "C~");
    }

    #[test]
    fn graph6_errors_are_distinct() {
        assert_eq!(parse_graph6(""), Err(FormatError::Empty));
        assert_eq!(
            parse_graph6("D?"),
            Err(FormatError::Truncated {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            parse_graph6("D?{?"),
            Err(FormatError::TrailingJunk { offset: 3 })
        );
        assert_eq!(
            parse_graph6("~?"),
            Err(FormatError::MalformedHeader { offset: 2 })
        );
        assert_eq!(
            parse_graph6("~??D"),
            Err(FormatError::NonCanonicalHeader { n: 5 })
        );
        assert_eq!(
            parse_graph6("D? {"),
            Err(FormatError::InvalidByte {
                offset: 2,
                byte: b' '
            })
        );
        // n = 3 leaves three padding bits; "BA" sets one of them
        assert_eq!(parse_graph6("BA"), Err(FormatError::NonzeroPadding));
    }

    #[test]
    fn graph6_long_header() {
        let g = generators::random(70, 0.1, 3).unwrap();
        let s = emit_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip_and_errors() {
        let g = generators::petersen();
        let text = emit_dimacs(&g);
        assert!(text.starts_with("p edge 10 15\n"));
        assert_eq!(parse_dimacs(&text).unwrap(), g);
        assert_eq!(
            parse_dimacs("p edge 3 2\ne 1 2\n"),
            Err(FormatError::EdgeCountMismatch {
                declared: 2,
                found: 1
            })
        );
        assert!(matches!(
            parse_dimacs("e 1 2\n"),
            Err(FormatError::Line { line: 1, .. })
        ));
        assert!(matches!(
            parse_dimacs("c hi\np edge 2 1\ne 1 3\n"),
            Err(FormatError::Line { line: 3, .. })
        ));
        assert_eq!(parse_dimacs("c only\n"), Err(FormatError::MissingHeader));
        let commented = "c a comment\np edge 3 2\ne 3 2\ne 1 2\n";
        assert_eq!(parse_dimacs(commented).unwrap(), generators::path(3));
    }

    #[test]
    fn edgelist_round_trip() {
        let g = Graph::new(6, [(0, 1), (2, 3)]).unwrap();
        let text = emit_edgelist(&g);
        assert_eq!(parse_edgelist(&text).unwrap(), g);
        assert_eq!(parse_edgelist("0 1\n1 2\n").unwrap(), generators::path(3));
        assert!(matches!(
            parse_edgelist("0 0\n"),
            Err(FormatError::Line { line: 1, .. })
        ));
    }

    #[test]
    fn format_inference() {
        assert_eq!(Format::from_path(Path::new("x.g6")), Format::Graph6);
        assert_eq!(Format::from_path(Path::new("x.col")), Format::Dimacs);
        assert_eq!(Format::from_path(Path::new("x.txt")), Format::Edgelist);
    }
}
