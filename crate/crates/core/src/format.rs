//! Plain-text digraph format.
//!
//! ```text
//! # comment lines may appear anywhere
//! n m
//! u v      (m lines, 1-based vertex ids)
//! ```
//!
//! Blank lines are ignored and the trailing newline is optional. The
//! canonical form written by [`serialize_digraph`] has no comments and
//! lists arcs sorted by `(u, v)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, GraphError, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },
    #[error("line {line}: duplicate arc ({u}, {v})")]
    DuplicateArc { line: usize, u: u64, v: u64 },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    OutOfRange { line: usize, vertex: u64, n: usize },
    #[error("header declares {declared} arcs but {read} were read")]
    ArcCountMismatch { declared: usize, read: usize },
}

impl FormatError {
    /// Short machine-readable class name.
    pub fn kind(&self) -> &'static str {
        match self {
            FormatError::Parse { .. } => "parse",
            FormatError::SelfLoop { .. } => "self-loop",
            FormatError::DuplicateArc { .. } => "duplicate-arc",
            FormatError::OutOfRange { .. } => "out-of-range",
            FormatError::ArcCountMismatch { .. } => "arc-count-mismatch",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Collapse repeated arcs instead of rejecting them.
    pub dedupe: bool,
    /// Remove vertices carrying a self-loop instead of rejecting them.
    pub strip_self_loops: bool,
}

/// A parsed digraph plus the bookkeeping needed when self-loop vertices
/// were stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedInstance {
    pub digraph: Digraph,
    /// `original_ids[i]` is the 0-based id in the file of vertex `i`.
    pub original_ids: Vec<Vertex>,
    /// 0-based ids of stripped self-loop vertices. Every one of them lies in
    /// every feedback vertex set of the input.
    pub forced: Vec<Vertex>,
    /// Order declared in the file.
    pub declared_order: usize,
}

/// Strict parse: any self-loop or repeated arc is an error.
pub fn parse_digraph(text: &str) -> Result<Digraph, FormatError> {
    parse_with(text, ParseOptions::default()).map(|loaded| loaded.digraph)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_count(token: &str, line: usize, what: &str) -> Result<u64, FormatError> {
    token.parse().map_err(|_| FormatError::Parse {
        line,
        reason: format!("{what} must be a non-negative integer, got {token:?}"),
    })
}

fn two_tokens<'a>(text: &'a str, line: usize, what: &str) -> Result<(&'a str, &'a str), FormatError> {
    let mut it = text.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(FormatError::Parse {
            line,
            reason: format!("expected {what}"),
        }),
    }
}

pub fn parse_with(text: &str, options: ParseOptions) -> Result<LoadedInstance, FormatError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(FormatError::Parse {
        line: 1,
        reason: "missing header \"n m\"".into(),
    })?;
    let (n_tok, m_tok) = two_tokens(header, header_line, "header \"n m\"")?;
    let n = parse_count(n_tok, header_line, "vertex count")? as usize;
    let declared = parse_count(m_tok, header_line, "arc count")? as usize;
    if n > Vertex::MAX as usize {
        return Err(FormatError::Parse {
            line: header_line,
            reason: format!("vertex count {n} too large"),
        });
    }

    let mut arcs: Vec<(Vertex, Vertex)> = Vec::with_capacity(declared.min(1 << 24));
    let mut arc_lines: Vec<usize> = Vec::with_capacity(declared.min(1 << 24));
    let mut looped = vec![false; if options.strip_self_loops { n } else { 0 }];
    let mut read = 0usize;
    for (line, text) in lines {
        read += 1;
        let (a, b) = two_tokens(text, line, "arc \"u v\"")?;
        let endpoint = |tok: &str| -> Result<Vertex, FormatError> {
            let id = parse_count(tok, line, "vertex id")?;
            if id == 0 || id > n as u64 {
                return Err(FormatError::OutOfRange { line, vertex: id, n });
            }
            Ok((id - 1) as Vertex)
        };
        let (u, v) = (endpoint(a)?, endpoint(b)?);
        if u == v {
            if options.strip_self_loops {
                looped[u as usize] = true;
                continue;
            }
            return Err(FormatError::SelfLoop {
                line,
                vertex: u as u64 + 1,
            });
        }
        arcs.push((u, v));
        arc_lines.push(line);
    }
    if read != declared {
        return Err(FormatError::ArcCountMismatch { declared, read });
    }

    let built = if options.dedupe {
        Digraph::from_arcs_dedup(n, arcs.iter().copied())
    } else {
        Digraph::from_arcs(n, arcs.iter().copied())
    };
    let full = built.map_err(|e| match e {
        GraphError::DuplicateArc(u, v) => {
            let second = arcs
                .iter()
                .enumerate()
                .filter(|(_, &arc)| arc == (u, v))
                .nth(1)
                .map(|(i, _)| arc_lines[i])
                .unwrap_or(0);
            FormatError::DuplicateArc {
                line: second,
                u: u as u64 + 1,
                v: v as u64 + 1,
            }
        }
        other => FormatError::Parse {
            line: 0,
            reason: other.to_string(),
        },
    })?;

    let forced: Vec<Vertex> = looped
        .iter()
        .enumerate()
        .filter(|(_, &l)| l)
        .map(|(v, _)| v as Vertex)
        .collect();
    if forced.is_empty() {
        return Ok(LoadedInstance {
            original_ids: (0..n as Vertex).collect(),
            digraph: full,
            forced,
            declared_order: n,
        });
    }
    let keep = VertexSet::new(n, forced.iter().copied())
        .expect("ids in range")
        .complement();
    let (digraph, original_ids) = full.induced_subdigraph(&keep).expect("same universe");
    Ok(LoadedInstance {
        digraph,
        original_ids,
        forced,
        declared_order: n,
    })
}

/// Canonical text form.
pub fn serialize_digraph(digraph: &Digraph) -> String {
    let mut out = String::with_capacity(16 + digraph.arc_count() * 12);
    writeln!(out, "{} {}", digraph.order(), digraph.arc_count()).unwrap();
    for (u, v) in digraph.arcs() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// A vertex set file: whitespace-separated 1-based ids, `#` comments.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet, FormatError> {
    let mut members = Vec::new();
    for (line, text) in content_lines(text) {
        for tok in text.split_whitespace() {
            let id = parse_count(tok, line, "vertex id")?;
            if id == 0 || id > n as u64 {
                return Err(FormatError::OutOfRange { line, vertex: id, n });
            }
            members.push((id - 1) as Vertex);
        }
    }
    Ok(VertexSet::new(n, members).expect("ids checked"))
}

/// One 1-based id per line.
pub fn serialize_vertex_set(set: &VertexSet) -> String {
    set.iter().map(|v| format!("{}\n", v + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let t = parse_digraph("3 3\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(t.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        let d = parse_digraph("2 2\n1 2\n2 1\n").unwrap();
        assert_eq!(d.arc_count(), 2);
        assert_eq!(
            parse_digraph("2 1\n1 1\n"),
            Err(FormatError::SelfLoop { line: 2, vertex: 1 })
        );
    }

    #[test]
    fn comments_blank_lines_and_missing_newline() {
        let d = parse_digraph("# header next\n\n2 1\n  # an arc\n2 1").unwrap();
        assert_eq!(d.arcs().collect::<Vec<_>>(), vec![(1, 0)]);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(
            parse_digraph("3 2\n1 2\n1 2\n"),
            Err(FormatError::DuplicateArc { line: 3, u: 1, v: 2 })
        );
        assert_eq!(
            parse_digraph("3 3\n1 2\n2 3\n"),
            Err(FormatError::ArcCountMismatch { declared: 3, read: 2 })
        );
        assert_eq!(
            parse_digraph("3 1\n1 2\n2 3\n"),
            Err(FormatError::ArcCountMismatch { declared: 1, read: 2 })
        );
        assert_eq!(
            parse_digraph("3 1\n0 2\n"),
            Err(FormatError::OutOfRange {
                line: 2,
                vertex: 0,
                n: 3
            })
        );
        assert_eq!(
            parse_digraph("3 1\n1 4\n"),
            Err(FormatError::OutOfRange {
                line: 2,
                vertex: 4,
                n: 3
            })
        );
        assert!(matches!(parse_digraph(""), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(parse_digraph("3\n"), Err(FormatError::Parse { line: 1, .. })));
        assert!(matches!(
            parse_digraph("3 1\n1 x\n"),
            Err(FormatError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph("3 1\n1 2 3\n"),
            Err(FormatError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph("-3 0\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn dedupe_option() {
        let opts = ParseOptions {
            dedupe: true,
            ..Default::default()
        };
        let loaded = parse_with("2 3\n1 2\n1 2\n2 1\n", opts).unwrap();
        assert_eq!(loaded.digraph.arc_count(), 2);
    }

    #[test]
    fn strip_self_loops_option() {
        let opts = ParseOptions {
            strip_self_loops: true,
            ..Default::default()
        };
        // Vertex 2 has a loop; arcs through it vanish with it.
        let loaded = parse_with("4 4\n2 2\n1 2\n3 4\n4 3\n", opts).unwrap();
        assert_eq!(loaded.forced, vec![1]);
        assert_eq!(loaded.original_ids, vec![0, 2, 3]);
        assert_eq!(loaded.digraph.arcs().collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
        assert_eq!(loaded.declared_order, 4);
    }

    #[test]
    fn serialization() {
        let d = parse_digraph("2 2\n2 1\n1 2\n").unwrap();
        assert_eq!(serialize_digraph(&d), "2 2\n1 2\n2 1\n");
        assert_eq!(serialize_digraph(&Digraph::edgeless(0)), "0 0\n");
        assert_eq!(parse_digraph("0 0\n").unwrap(), Digraph::edgeless(0));
    }

    #[test]
    fn vertex_sets() {
        let s = parse_vertex_set("# chosen\n1 3\n2\n", 3).unwrap();
        assert_eq!(s.members(), &[0, 1, 2]);
        assert_eq!(serialize_vertex_set(&s), "1\n2\n3\n");
        assert!(parse_vertex_set("4", 3).is_err());
        assert!(parse_vertex_set("0", 3).is_err());
        assert!(parse_vertex_set("", 3).unwrap().is_empty());
    }
}
