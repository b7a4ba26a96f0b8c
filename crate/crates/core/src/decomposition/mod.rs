//! Tree and path decompositions: construction from elimination orders,
//! validation, conversion to nice form and the PACE `.td` format.

mod nice;
mod order;
mod td_format;

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;

pub use nice::{make_nice, NiceDecomposition, NiceMismatch, NiceNode, NodeKind};
pub use order::{
    bfs_order, decomposition_from_order, min_degree_order, min_fill_order,
    path_decomposition_from_order, EliminationOrder, OrderError,
};
pub use td_format::{emit_td, parse_td, TdParseError};

/// Bag masks are machine words, so wider decompositions are refused.
pub const MAX_WIDTH: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("decomposition has no bags")]
    NoBags,
    #[error("root {root} out of range for {bags} bags")]
    BadRoot { root: usize, bags: usize },
    #[error("tree links do not form a tree rooted at bag {0}")]
    NotATree(usize),
    #[error("tree edge ({0}, {1}) references a missing bag")]
    BadTreeEdge(usize, usize),
    #[error("invalid decomposition: {0}")]
    Invalid(Violations),
    #[error("width {width} exceeds the supported maximum of {MAX_WIDTH}")]
    TooWide { width: usize },
}

/// A rooted tree decomposition. Bags are sorted vertex lists; `parent` is
/// `None` exactly for the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl TreeDecomposition {
    pub fn new(
        bags: Vec<Vec<usize>>,
        parent: Vec<Option<usize>>,
        root: usize,
    ) -> Result<Self, DecompositionError> {
        if bags.is_empty() {
            return Err(DecompositionError::NoBags);
        }
        if root >= bags.len() || parent.len() != bags.len() {
            return Err(DecompositionError::BadRoot {
                root,
                bags: bags.len(),
            });
        }
        let mut bags = bags;
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        let td = TreeDecomposition { bags, parent, root };
        td.check_tree()?;
        Ok(td)
    }

    /// Builds a decomposition from undirected tree edges, oriented towards `root`.
    pub fn from_tree_edges(
        bags: Vec<Vec<usize>>,
        tree_edges: &[(usize, usize)],
        root: usize,
    ) -> Result<Self, DecompositionError> {
        let count = bags.len();
        if count == 0 {
            return Err(DecompositionError::NoBags);
        }
        if root >= count {
            return Err(DecompositionError::BadRoot { root, bags: count });
        }
        let mut adj = vec![Vec::new(); count];
        for &(a, b) in tree_edges {
            if a >= count || b >= count {
                return Err(DecompositionError::BadTreeEdge(a, b));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if tree_edges.len() + 1 != count {
            return Err(DecompositionError::NotATree(root));
        }
        let mut parent = vec![None; count];
        let mut seen = vec![false; count];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(t) = stack.pop() {
            for &c in &adj[t] {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some(t);
                    stack.push(c);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(DecompositionError::NotATree(root));
        }
        TreeDecomposition::new(bags, parent, root)
    }

    fn check_tree(&self) -> Result<(), DecompositionError> {
        let count = self.bags.len();
        for (t, p) in self.parent.iter().enumerate() {
            match p {
                None if t != self.root => return Err(DecompositionError::NotATree(self.root)),
                Some(_) if t == self.root => return Err(DecompositionError::NotATree(self.root)),
                Some(p) if *p >= count => return Err(DecompositionError::BadTreeEdge(t, *p)),
                _ => {}
            }
        }
        // Every node must reach the root without revisiting anything.
        let mut state = vec![0u8; count];
        state[self.root] = 2;
        for start in 0..count {
            let mut path = Vec::new();
            let mut t = start;
            while state[t] == 0 {
                state[t] = 1;
                path.push(t);
                t = self.parent[t].expect("non-root has a parent");
            }
            if state[t] == 1 {
                return Err(DecompositionError::NotATree(self.root));
            }
            for p in path {
                state[p] = 2;
            }
        }
        Ok(())
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn bag(&self, t: usize) -> &[usize] {
        &self.bags[t]
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Child lists, each sorted ascending.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.bags.len()];
        for (t, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(t);
            }
        }
        children
    }

    /// Undirected tree edges as `(child, parent)`.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(t, p)| p.map(|p| (t, p)))
            .collect()
    }

    /// Maximum bag size minus one; `-1` when every bag is empty.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(Vec::len).max().unwrap_or(0) as i64 - 1
    }

    /// True when every node has at most one child.
    pub fn is_path(&self) -> bool {
        self.children().iter().all(|c| c.len() <= 1)
    }
}

/// Everything wrong with a candidate decomposition of a given graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Violations {
    pub out_of_range: Vec<usize>,
    pub uncovered_edges: Vec<(usize, usize)>,
    pub missing_vertices: Vec<usize>,
    pub disconnected_vertices: Vec<usize>,
}

impl Violations {
    pub fn is_empty(&self) -> bool {
        self.out_of_range.is_empty()
            && self.uncovered_edges.is_empty()
            && self.missing_vertices.is_empty()
            && self.disconnected_vertices.is_empty()
    }
}

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.out_of_range.is_empty() {
            parts.push(format!("vertices out of range {:?}", self.out_of_range));
        }
        if !self.uncovered_edges.is_empty() {
            parts.push(format!("uncovered edges {:?}", self.uncovered_edges));
        }
        if !self.missing_vertices.is_empty() {
            parts.push(format!("vertices in no bag {:?}", self.missing_vertices));
        }
        if !self.disconnected_vertices.is_empty() {
            parts.push(format!(
                "vertices with disconnected bag sets {:?}",
                self.disconnected_vertices
            ));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks edge coverage and the connected-subtree condition for every vertex.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Result<(), Violations> {
    let n = g.n();
    let mut report = Violations::default();
    let mut local_roots = vec![0usize; n];
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];

    for (t, bag) in td.bags.iter().enumerate() {
        let parent_bag = td.parent[t].map(|p| &td.bags[p]);
        for &v in bag {
            if v >= n {
                if !report.out_of_range.contains(&v) {
                    report.out_of_range.push(v);
                }
                continue;
            }
            holders[v].push(t);
            if !parent_bag.is_some_and(|pb| pb.binary_search(&v).is_ok()) {
                local_roots[v] += 1;
            }
        }
    }
    report.out_of_range.sort_unstable();

    for v in 0..n {
        match local_roots[v] {
            0 => report.missing_vertices.push(v),
            1 => {}
            _ => report.disconnected_vertices.push(v),
        }
    }
    for (u, v) in g.edges() {
        let covered = holders[u]
            .iter()
            .any(|&t| td.bags[t].binary_search(&v).is_ok());
        if !covered {
            report.uncovered_edges.push((u, v));
        }
    }

    if report.is_empty() {
        Ok(())
    } else {
        Err(report)
    }
}

/// Min-fill elimination, tree decomposition and nice form in one step.
pub fn min_fill_nice(g: &Graph) -> NiceDecomposition {
    let order = min_fill_order(g);
    make_nice(&decomposition_from_order(g, &order)).expect("elimination decompositions are valid")
}

/// Breadth-first order turned into a nice path decomposition.
pub fn bfs_path_nice(g: &Graph) -> NiceDecomposition {
    let order = bfs_order(g);
    make_nice(&path_decomposition_from_order(g, &order)).expect("order decompositions are valid")
}
