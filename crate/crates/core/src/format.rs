//! Instance text format: one edge per line as whitespace-separated vertex
//! ids. Lines whose first non-blank character is `#` and blank lines are
//! ignored; repeated lines are repeated edges.

use crate::error::{Error, Result};
use crate::hypergraph::MultiHypergraph;

/// Parses an instance. The vertex count is one more than the largest id.
pub fn parse_instance(text: &str) -> Result<MultiHypergraph> {
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut edge = Vec::new();
        for token in trimmed.split_whitespace() {
            let v: usize = token.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{token}` is not a vertex id"),
            })?;
            if edge.contains(&v) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("vertex {v} repeated within an edge"),
                });
            }
            edge.push(v);
        }
        edges.push(edge);
    }
    MultiHypergraph::from_edges(edges)
}

/// Writes one line per edge, vertices in ascending order.
pub fn serialize_instance(h: &MultiHypergraph) -> String {
    let mut out = String::new();
    for edge in h.edges() {
        let line: Vec<String> = edge.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_multiplicity() {
        let h = parse_instance("1 2 3\n2 3 4\n1 2 3\n").unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.uniformity(), Some(3));
    }

    #[test]
    fn skips_comments_and_blanks() {
        let h = parse_instance("# comment\n\n0 1\n").unwrap();
        assert_eq!(
            (h.edge_count(), h.vertex_count(), h.uniformity()),
            (1, 2, Some(2))
        );
        let h = parse_instance("").unwrap();
        assert_eq!((h.edge_count(), h.vertex_count()), (0, 0));
    }

    #[test]
    fn reports_line_numbers() {
        assert!(matches!(
            parse_instance("1 1 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("# x\n0 1\n0 -2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_instance("0 1\nfoo\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn serializes_sorted() {
        let h = parse_instance("3 1 2\n0 4\n").unwrap();
        assert_eq!(serialize_instance(&h), "1 2 3\n0 4\n");
    }
}
