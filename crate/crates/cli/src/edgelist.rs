//! Plain-text edge lists.
//!
//! ```text
//! 4 3
//! # generator: path n=4
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The first non-comment line is `n m`, followed by `m` lines `u v` with
//! 0-indexed endpoints. Lines starting with `#` are comments; they are kept
//! and written back after the header. Blank lines are ignored. The file must
//! end with a newline. Writers emit edges as `u < v` in ascending order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rewire_core::Graph;

use crate::error::{CliError, Result};

/// Comment prefix recording how a graph was generated.
pub const GENERATOR_TAG: &str = "generator:";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: Graph,
    /// Comment lines without the leading `#` and one optional space.
    pub comments: Vec<String>,
}

impl EdgeList {
    pub fn new(graph: Graph) -> Self {
        Self {
            graph,
            comments: Vec::new(),
        }
    }

    /// The generator description from a `# generator: ...` comment, if any.
    pub fn generator(&self) -> Option<&str> {
        self.comments
            .iter()
            .find_map(|c| c.strip_prefix(GENERATOR_TAG))
            .map(str::trim)
    }
}

/// A malformed line: 1-based line number and reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn two_numbers(line_no: usize, text: &str, what: &str) -> Result<(usize, usize), ParseError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return fail(
            line_no,
            format!("expected {what}, found {} fields", fields.len()),
        );
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| ParseError {
            line: line_no,
            message: format!("'{s}' is not a nonnegative integer"),
        })
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

pub fn parse(text: &str) -> Result<EdgeList, ParseError> {
    let total_lines = text.lines().count().max(1);
    if !text.ends_with('\n') {
        return fail(total_lines, "missing trailing newline");
    }
    let mut comments = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::new(0);
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            comments.push(comment.strip_prefix(' ').unwrap_or(comment).to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        match header {
            None => {
                let (n, m) = two_numbers(line_no, line, "header 'n m'")?;
                header = Some((n, m));
                graph = Graph::new(n);
            }
            Some((n, m)) => {
                let (u, v) = two_numbers(line_no, line, "edge 'u v'")?;
                if graph.edge_count() == m {
                    return fail(
                        line_no,
                        format!("more than the {m} edges declared in the header"),
                    );
                }
                if u >= n || v >= n {
                    return fail(
                        line_no,
                        format!("edge ({u}, {v}) has an endpoint outside 0..{n}"),
                    );
                }
                if u == v {
                    return fail(line_no, format!("self-loop at node {u}"));
                }
                if !graph.add_edge(u, v).expect("endpoints checked") {
                    return fail(line_no, format!("duplicate edge ({u}, {v})"));
                }
            }
        }
    }
    let Some((_, m)) = header else {
        return fail(total_lines, "missing header 'n m'");
    };
    if graph.edge_count() != m {
        return fail(
            total_lines,
            format!(
                "header declares {m} edges but the file lists {}",
                graph.edge_count()
            ),
        );
    }
    Ok(EdgeList { graph, comments })
}

pub fn write(list: &EdgeList) -> String {
    let g = &list.graph;
    let mut out = String::new();
    writeln!(out, "{} {}", g.node_count(), g.edge_count()).unwrap();
    for c in &list.comments {
        writeln!(out, "# {c}").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_file(path: &Path) -> Result<EdgeList> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line,
        message: e.message,
    })
}

pub fn write_file(path: &Path, list: &EdgeList) -> Result<()> {
    fs::write(path, write(list)).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_keeps_comments() {
        let text = "4 3\n# generator: path n=4\n0 1\n1 2\n2 3\n";
        let list = parse(text).unwrap();
        assert_eq!(list.generator(), Some("path n=4"));
        assert_eq!(write(&list), text);
    }

    #[test]
    fn canonicalizes_edges() {
        let list = parse("# made by hand\n3 2\n2 1\n\n1 0\n").unwrap();
        assert_eq!(write(&list), "3 2\n# made by hand\n0 1\n1 2\n");
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("3 2\n0 1\n", 2, "declares 2 edges"),
            ("3 1\n0 1", 2, "trailing newline"),
            ("3 2\n0 1\n1 1\n", 3, "self-loop"),
            ("3 2\n0 1\n1 0\n", 3, "duplicate"),
            ("3 1\n0 x\n", 2, "'x'"),
            ("3 1\n0 3\n", 2, "outside"),
            ("3 1\n0 1\n1 2\n", 3, "more than"),
            ("3\n", 1, "header"),
            ("# only a comment\n", 1, "missing header"),
        ];
        for (text, line, needle) in cases {
            let err = parse(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err:?}");
            assert!(err.message.contains(needle), "{text:?}: {err:?}");
        }
    }
}
