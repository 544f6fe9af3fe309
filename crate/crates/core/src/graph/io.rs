//! Edge-list text format and JSON form of oriented graphs.
//!
//! Text format: first non-comment line `n m`, then `m` lines `u v` for the
//! arc `u -> v`. Anything after `#` on a line is ignored, as are blank lines.
//! JSON form: `{"n": int, "arcs": [[u, v], ...]}` with arcs sorted.

use serde::{Deserialize, Serialize};

use super::{GraphError, OrientedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub arcs: Vec<[usize; 2]>,
}

impl From<&OrientedGraph> for GraphJson {
    fn from(g: &OrientedGraph) -> Self {
        GraphJson { n: g.n(), arcs: g.arcs().map(|(u, v)| [u, v]).collect() }
    }
}

impl TryFrom<GraphJson> for OrientedGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        Ok(OrientedGraph::from_arcs(j.n, j.arcs.into_iter().map(|[u, v]| (u, v)))?)
    }
}

impl Serialize for OrientedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrientedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        OrientedGraph::try_from(j).map_err(serde::de::Error::custom)
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = fields
            .next()
            .ok_or_else(|| GraphError::Parse { line: lineno, message: format!("missing {what}") })?;
        tok.parse().map_err(|_| GraphError::Parse {
            line: lineno,
            message: format!("{what} `{tok}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = fields.next() {
        return Err(GraphError::Parse { line: lineno, message: format!("unexpected token `{extra}`") });
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<OrientedGraph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (header_line, header) =
        lines.next().ok_or(GraphError::Parse { line: 1, message: "missing header `n m`".into() })?;
    let (n, m) = parse_pair(header, header_line)?;
    let mut g = OrientedGraph::new(n);
    let mut seen = 0;
    for (lineno, line) in lines {
        if seen == m {
            return Err(GraphError::Parse {
                line: lineno,
                message: format!("more than the declared {m} arcs"),
            });
        }
        let (u, v) = parse_pair(line, lineno)?;
        g.add_arc(u, v)?;
        seen += 1;
    }
    if seen < m {
        return Err(GraphError::Parse {
            line: text.lines().count().max(1),
            message: format!("expected {m} arcs, found {seen}"),
        });
    }
    Ok(g)
}

/// Canonical text form: header then arcs in lexicographic order.
pub fn to_edge_list(g: &OrientedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.arc_count());
    for (u, v) in g.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::InvariantViolation;

    #[test]
    fn parses_directed_path() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_anti_parallel() {
        assert_eq!(
            parse_edge_list("2 2\n0 1\n1 0"),
            Err(GraphError::Invariant(InvariantViolation::AntiParallel(1, 0)))
        );
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_edge_list("# header follows\n3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 4, .. }), "{err:?}");
        let err = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Parse { .. }));
        let err = parse_edge_list("").unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
    }

    #[test]
    fn serialization_sorts_arcs() {
        let g = parse_edge_list("4 3 # comment\n2 3\n0 1\n3 0\n").unwrap();
        assert_eq!(to_edge_list(&g), "4 3\n0 1\n2 3\n3 0\n");
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":4,"arcs":[[0,1],[2,3],[3,0]]}"#);
        let back: OrientedGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
    }
}
