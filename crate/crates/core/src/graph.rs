//! Simple undirected graphs with dense vertex ids and the PACE `.gr` format.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for a graph with {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct GrParseError {
    pub line: usize,
    pub kind: GrParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrParseErrorKind {
    #[error("missing `p tw <n> <m>` header")]
    MissingHeader,
    #[error("malformed header `{0}`")]
    MalformedHeader(String),
    #[error("malformed edge line `{0}`")]
    MalformedEdge(String),
    #[error("vertex id {0} out of range")]
    IdOutOfRange(usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("header announces {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are kept sorted and duplicate edges collapse on insertion.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edges: BTreeSet::new(),
            labels: None,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `uv`. Returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { v: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return Ok(false);
        }
        for (a, b) in [(u, v), (v, u)] {
            let list = &mut self.adj[a];
            let pos = list.binary_search(&b).unwrap_err();
            list.insert(pos, b);
        }
        Ok(true)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        if let Some(labels) = &mut self.labels {
            labels.push(String::new());
        }
        self.adj.len() - 1
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n() {
            return Err(GraphError::LabelCount {
                expected: self.n(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Open neighbourhood of `v`, sorted ascending.
    pub fn neighbors(&self, v: usize) -> Result<&[usize], GraphError> {
        self.adj
            .get(v)
            .map(Vec::as_slice)
            .ok_or(GraphError::VertexOutOfRange { v, n: self.n() })
    }

    /// Like [`Graph::neighbors`] but panics on an invalid id.
    pub(crate) fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Copy of the graph with edge `uv` removed (no-op when absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = Graph::new(self.n());
        for (a, b) in self.edges() {
            if (a, b) != (u.min(v), u.max(v)) {
                g.add_edge(a, b).expect("edge of a valid graph");
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut g = Graph::new(self.n() + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("edge of a valid graph");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift).expect("edge of a valid graph");
        }
        g
    }

    /// Connected components, each as a sorted vertex list, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Serializes to the PACE `.gr` format with 1-based ids.
    pub fn to_gr(&self) -> String {
        let mut s = format!("p tw {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges)
            .finish()
    }
}

/// Parses a PACE-2017 `.gr` graph: a `p tw <n> <m>` header followed by `m`
/// lines `u v` with 1-based ids. Lines starting with `c` are comments.
pub fn parse_edge_list(text: &str) -> Result<Graph, GrParseError> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut edge_lines = 0usize;
    let err = |line: usize, kind| GrParseError { line, kind };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match &mut graph {
            None => {
                if tokens.len() != 4 || tokens[0] != "p" || tokens[1] != "tw" {
                    return Err(err(line_no, GrParseErrorKind::MissingHeader));
                }
                let parse = |t: &str| {
                    t.parse::<usize>()
                        .map_err(|_| err(line_no, GrParseErrorKind::MalformedHeader(line.to_string())))
                };
                let n = parse(tokens[2])?;
                let m = parse(tokens[3])?;
                graph = Some((Graph::new(n), m));
            }
            Some((g, _)) => {
                if tokens.len() != 2 {
                    return Err(err(line_no, GrParseErrorKind::MalformedEdge(line.to_string())));
                }
                let mut ids = [0usize; 2];
                for (slot, t) in ids.iter_mut().zip(&tokens) {
                    let id = t.parse::<usize>().map_err(|_| {
                        err(line_no, GrParseErrorKind::MalformedEdge(line.to_string()))
                    })?;
                    if id == 0 || id > g.n() {
                        return Err(err(line_no, GrParseErrorKind::IdOutOfRange(id)));
                    }
                    *slot = id - 1;
                }
                if ids[0] == ids[1] {
                    return Err(err(line_no, GrParseErrorKind::SelfLoop(ids[0] + 1)));
                }
                g.add_edge(ids[0], ids[1]).expect("ids checked above");
                edge_lines += 1;
            }
        }
    }

    let total_lines = text.lines().count().max(1);
    let (g, m) = graph.ok_or(err(total_lines, GrParseErrorKind::MissingHeader))?;
    if edge_lines != m {
        return Err(err(
            total_lines,
            GrParseErrorKind::EdgeCount {
                expected: m,
                found: edge_lines,
            },
        ));
    }
    Ok(g)
}

/// Small graph families used by tests, examples and benchmarks.
pub mod families {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid clique")
    }

    /// Star with one centre (vertex 0) and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
    }

    /// The `2 x k` ladder: rungs `(2i, 2i+1)`, rails `(2i, 2i+2)` and `(2i+1, 2i+3)`.
    pub fn ladder(k: usize) -> Graph {
        let mut g = Graph::new(2 * k);
        for i in 0..k {
            g.add_edge(2 * i, 2 * i + 1).unwrap();
            if i + 1 < k {
                g.add_edge(2 * i, 2 * i + 2).unwrap();
                g.add_edge(2 * i + 1, 2 * i + 3).unwrap();
            }
        }
        g
    }

    /// `rows x cols` grid graph, vertex `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut g = Graph::new(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1).unwrap();
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols).unwrap();
                }
            }
        }
        g
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::new(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_edge() {
        let g = parse_edge_list("p tw 2 1\n1 2").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn parses_edgeless() {
        let g = parse_edge_list("p tw 3 0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn rejects_self_loop_with_line_number() {
        let e = parse_edge_list("p tw 2 1\n1 1").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, GrParseErrorKind::SelfLoop(1));
    }

    #[test]
    fn rejects_bad_header_and_ids() {
        assert_eq!(
            parse_edge_list("1 2").unwrap_err().kind,
            GrParseErrorKind::MissingHeader
        );
        assert!(matches!(
            parse_edge_list("p tw x 1\n1 2").unwrap_err().kind,
            GrParseErrorKind::MalformedHeader(_)
        ));
        let e = parse_edge_list("p tw 2 1\n1 3").unwrap_err();
        assert_eq!((e.line, e.kind), (2, GrParseErrorKind::IdOutOfRange(3)));
        assert!(matches!(
            parse_edge_list("p tw 2 2\n1 2").unwrap_err().kind,
            GrParseErrorKind::EdgeCount { .. }
        ));
    }

    #[test]
    fn duplicate_edge_lines_collapse() {
        let g = parse_edge_list("c comment\np tw 3 3\n1 2\n2 1\n2 3\n").unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(parse_edge_list(&g.to_gr()).unwrap(), g);
    }

    #[test]
    fn neighborhoods() {
        let c6 = families::cycle(6);
        assert_eq!(c6.neighbors(0).unwrap(), &[1, 5]);
        assert!(families::edgeless(4).neighbors(2).unwrap().is_empty());
        assert_eq!(families::star(3).neighbors(0).unwrap(), &[1, 2, 3]);
        assert!(matches!(
            c6.neighbors(6),
            Err(GraphError::VertexOutOfRange { v: 6, n: 6 })
        ));
    }

    #[test]
    fn construction_errors() {
        let mut g = Graph::new(2);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        assert!(matches!(g.add_edge(0, 2), Err(GraphError::VertexOutOfRange { .. })));
        assert_eq!(g.add_edge(0, 1), Ok(true));
        assert_eq!(g.add_edge(1, 0), Ok(false));
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = families::cycle(3).disjoint_union(&families::path(2));
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert_eq!(families::ladder(3).m(), 7);
    }
}
