//! Instance file formats: DIMACS edge files as the interchange format,
//! plus a simple adjacency-list form for hand-written inputs.

use mis_core::{Graph, VertexId};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: malformed header: {1}")]
    BadHeader(usize, String),
    #[error("line {0}: vertex id {1} out of range 1..={2}")]
    OutOfRange(usize, usize, usize),
    #[error("line {0}: self-loop on vertex {1}")]
    SelfLoop(usize, usize),
    #[error("line {0}: unrecognized line: {1}")]
    BadLine(usize, String),
    #[error("line {0}: edge before header")]
    EdgeBeforeHeader(usize),
    #[error("header declares {declared} edges but the file lists {listed}")]
    EdgeCountMismatch { declared: usize, listed: usize },
    #[error("empty instance file")]
    Empty,
}

/// Parses an instance: DIMACS when a `p` header is present, adjacency
/// list (`u: v w x`, 1-based) otherwise. Duplicate edges collapse.
pub fn parse_instance(text: &str) -> Result<Graph, ParseError> {
    let meaningful = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'));
    match meaningful {
        None => Err(ParseError::Empty),
        Some(line) if line.starts_with("p ") || line == "p" => parse_dimacs(text),
        Some(_) => parse_adjacency(text),
    }
}

fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut n = 0usize;
    let mut declared = 0usize;
    let mut listed = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("p") => {
                let _format = fields
                    .next()
                    .ok_or_else(|| ParseError::BadHeader(lineno, line.into()))?;
                n = parse_num(fields.next(), lineno, line)?;
                declared = parse_num(fields.next(), lineno, line)?;
                if fields.next().is_some() {
                    return Err(ParseError::BadHeader(lineno, line.into()));
                }
                graph = Some(Graph::with_vertices(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or(ParseError::EdgeBeforeHeader(lineno))?;
                let u = parse_num(fields.next(), lineno, line)?;
                let v = parse_num(fields.next(), lineno, line)?;
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(ParseError::OutOfRange(lineno, id, n));
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop(lineno, u));
                }
                listed += 1;
                g.add_edge(u - 1, v - 1).expect("ids validated");
            }
            _ => return Err(ParseError::BadLine(lineno, line.into())),
        }
    }
    let g = graph.ok_or(ParseError::Empty)?;
    if listed != declared {
        return Err(ParseError::EdgeCountMismatch { declared, listed });
    }
    Ok(g)
}

fn parse_adjacency(text: &str) -> Result<Graph, ParseError> {
    let mut rows: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut max_id = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| ParseError::BadLine(lineno, line.into()))?;
        let u: usize = head
            .trim()
            .parse()
            .map_err(|_| ParseError::BadLine(lineno, line.into()))?;
        if u == 0 {
            return Err(ParseError::OutOfRange(lineno, 0, usize::MAX));
        }
        let mut nbrs = Vec::new();
        for tok in tail.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| ParseError::BadLine(lineno, line.into()))?;
            if v == 0 {
                return Err(ParseError::OutOfRange(lineno, 0, usize::MAX));
            }
            if v == u {
                return Err(ParseError::SelfLoop(lineno, u));
            }
            max_id = max_id.max(v);
            nbrs.push(v);
        }
        max_id = max_id.max(u);
        rows.push((lineno, u, nbrs));
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut g = Graph::with_vertices(max_id);
    for (_, u, nbrs) in rows {
        for v in nbrs {
            g.add_edge(u - 1, v - 1).expect("ids validated");
        }
    }
    Ok(g)
}

fn parse_num(tok: Option<&str>, lineno: usize, line: &str) -> Result<usize, ParseError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| ParseError::BadHeader(lineno, line.into()))
}

/// Canonical DIMACS serialization: 1-based ids, sorted distinct edges.
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    let n = g.vertices().max().map_or(0, |v| v + 1);
    out.push_str(&format!("p edge {} {}\n", n, g.size()));
    for (u, v) in g.edge_list() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// 1-based vertex ids for output.
pub fn external_ids(witness: &[VertexId]) -> Vec<usize> {
    witness.iter().map(|&v| v + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_graph() {
        let g = parse_instance("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn parses_cycle_with_comments() {
        let text = "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
        let g = parse_instance(text).unwrap();
        assert_eq!((g.order(), g.size()), (5, 5));
        assert!(g.vertices().all(|v| g.degree(v) == 2));
    }

    #[test]
    fn rejects_self_loop_with_line_number() {
        let err = parse_instance("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop(2, 1));
    }

    #[test]
    fn rejects_out_of_range_and_mismatch() {
        let err = parse_instance("p edge 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(err, ParseError::OutOfRange(2, 3, 2));
        let err = parse_instance("p edge 3 2\ne 1 2\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::EdgeCountMismatch {
                declared: 2,
                listed: 1
            }
        );
    }

    #[test]
    fn duplicate_edge_lines_collapse() {
        let g = parse_instance("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn adjacency_list_round_trips() {
        let g = parse_instance("1: 2 3\n2: 1\n3: 1\n4:\n").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.size(), 2);
        assert_eq!(g.degree(3), 0);
    }

    #[test]
    fn serialization_is_a_parse_fixed_point() {
        let text = "p edge 6 4\ne 3 1\ne 1 2\ne 5 6\ne 2 3\n";
        let g = parse_instance(text).unwrap();
        let canon = to_dimacs(&g);
        let h = parse_instance(&canon).unwrap();
        assert_eq!(to_dimacs(&h), canon);
        assert_eq!(h.edge_list(), g.edge_list());
    }
}
