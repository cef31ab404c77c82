//! Annotation files: one `parent child` pair of zero-based line indices per
//! line. Anything after the second field is ignored on read.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::ReplyGraph;

pub fn read_annotations(text: &str, n: usize) -> Result<ReplyGraph> {
    let mut graph = ReplyGraph::new(n);
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let mut fields = line.split_whitespace();
        let Some(first) = fields.next() else {
            continue;
        };
        let second = fields
            .next()
            .ok_or_else(|| Error::parse(line_no, "expected two message indices"))?;
        let index = |field: &str| {
            field
                .parse::<usize>()
                .map_err(|_| Error::parse(line_no, format!("not a message index: {field:?}")))
        };
        let (parent, child) = (index(first)?, index(second)?);
        if parent > child {
            return Err(Error::AntecedentAfterReply {
                line: line_no,
                parent,
                child,
            });
        }
        if child >= n {
            return Err(Error::IndexOutOfRange {
                line: line_no,
                index: child,
                n,
            });
        }
        graph.add_edge(parent, child)?;
    }
    Ok(graph)
}

/// Writes one newline-terminated `parent child` line per edge, ordered by
/// child and then parent.
pub fn write_annotations(graph: &ReplyGraph) -> String {
    let mut edges: Vec<(usize, usize)> = graph.edges().collect();
    edges.sort_unstable_by_key(|&(p, c)| (c, p));
    let mut out = String::with_capacity(edges.len() * 12);
    for (p, c) in edges {
        writeln!(out, "{p} {c}").unwrap();
    }
    out
}
