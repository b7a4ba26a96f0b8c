use thiserror::Error;

use super::{DecompositionError, TreeDecomposition, Violations};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: Vec<usize>,
    pub kind: NodeKind,
    pub children: Vec<usize>,
}

/// A nice tree decomposition stored in post-order: every child index is
/// smaller than its parent's, and the root is the last node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    nodes: Vec<NiceNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NiceMismatch {
    #[error("node {node}: {reason}")]
    Malformed { node: usize, reason: String },
    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(usize),
    #[error("vertex {vertex} is forgotten {times} times, expected once")]
    ForgetCount { vertex: usize, times: usize },
    #[error("edge ({0}, {1}) is never seen inside a bag")]
    UncoveredEdge(usize, usize),
}

impl NiceDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &NiceNode {
        &self.nodes[i]
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_path(&self) -> bool {
        self.join_count() == 0
    }

    pub fn join_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Join).count()
    }

    pub fn width(&self) -> i64 {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0) as i64 - 1
    }

    /// Checks the node-kind equations, the empty root and leaf bags, and
    /// the post-order layout.
    pub fn check_structure(&self) -> Result<(), NiceMismatch> {
        let bad = |node: usize, reason: &str| NiceMismatch::Malformed {
            node,
            reason: reason.to_string(),
        };
        if self.nodes.is_empty() {
            return Err(bad(0, "no nodes"));
        }
        if !self.nodes[self.root()].bag.is_empty() {
            return Err(bad(self.root(), "root bag is not empty"));
        }
        let mut has_parent = vec![false; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad(i, "bag is not sorted"));
            }
            for &c in &node.children {
                if c >= i {
                    return Err(bad(i, "child index not below parent"));
                }
                if std::mem::replace(&mut has_parent[c], true) {
                    return Err(bad(c, "node has two parents"));
                }
            }
            let child_bag = |k: usize| &self.nodes[node.children[k]].bag;
            let ok = match node.kind {
                NodeKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
                NodeKind::Introduce(v) => {
                    node.children.len() == 1
                        && child_bag(0).binary_search(&v).is_err()
                        && with(child_bag(0), v) == node.bag
                }
                NodeKind::Forget(v) => {
                    node.children.len() == 1
                        && child_bag(0).binary_search(&v).is_ok()
                        && without(child_bag(0), v) == node.bag
                }
                NodeKind::Join => {
                    node.children.len() == 2 && *child_bag(0) == node.bag && *child_bag(1) == node.bag
                }
            };
            if !ok {
                return Err(bad(i, &format!("{:?} node violates its bag equation", node.kind)));
            }
        }
        if let Some(orphan) = (0..self.root()).find(|&i| !has_parent[i]) {
            return Err(bad(orphan, "node is not connected to the root"));
        }
        Ok(())
    }

    /// Full validity check against a graph: the structure is nice, every
    /// vertex is forgotten exactly once (connected bag sets), and every edge
    /// sits in the bag where its first endpoint is forgotten.
    pub fn check_against(&self, g: &Graph) -> Result<(), NiceMismatch> {
        self.check_structure()?;
        let n = g.n();
        let mut forgets = vec![0usize; n];
        let mut forgotten_at = vec![usize::MAX; n];
        for (i, node) in self.nodes.iter().enumerate() {
            if let Some(&v) = node.bag.iter().find(|&&v| v >= n) {
                return Err(NiceMismatch::UnknownVertex(v));
            }
            if let NodeKind::Forget(v) = node.kind {
                forgets[v] += 1;
                forgotten_at[v] = i;
            }
        }
        if let Some(v) = (0..n).find(|&v| forgets[v] != 1) {
            return Err(NiceMismatch::ForgetCount {
                vertex: v,
                times: forgets[v],
            });
        }
        for (u, v) in g.edges() {
            let covered = |a: usize, b: usize| {
                self.nodes[forgotten_at[a]].bag.binary_search(&b).is_ok()
            };
            if !covered(u, v) && !covered(v, u) {
                return Err(NiceMismatch::UncoveredEdge(u, v));
            }
        }
        Ok(())
    }

    /// Number of graph vertices in each node's subtree, i.e. `|V(G_b)|`
    /// for the graph induced below node `b`.
    pub fn subtree_vertex_counts(&self) -> Vec<usize> {
        let mut below = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            below[i] = match node.kind {
                NodeKind::Leaf => 0,
                NodeKind::Introduce(_) => below[node.children[0]] + 1,
                NodeKind::Forget(_) => below[node.children[0]],
                // Both children share the bag, which is counted in each.
                NodeKind::Join => {
                    below[node.children[0]] + below[node.children[1]] - node.bag.len()
                }
            };
        }
        below
    }
}

fn disconnected_vertices(td: &TreeDecomposition) -> Vec<usize> {
    let mut local_roots = std::collections::BTreeMap::<usize, usize>::new();
    for (t, bag) in td.bags().iter().enumerate() {
        let parent_bag = td.parent(t).map(|p| td.bag(p));
        for &v in bag {
            if !parent_bag.is_some_and(|pb| pb.binary_search(&v).is_ok()) {
                *local_roots.entry(v).or_default() += 1;
            }
        }
    }
    local_roots
        .into_iter()
        .filter(|&(_, roots)| roots > 1)
        .map(|(v, _)| v)
        .collect()
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut out = bag.to_vec();
    let pos = out.binary_search(&v).unwrap_or_else(|p| p);
    out.insert(pos, v);
    out
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&u| u != v).collect()
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, bag: Vec<usize>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode {
            bag,
            kind,
            children,
        });
        self.nodes.len() - 1
    }

    /// Moves from node `from` to a node whose bag is `target`: forgets first,
    /// then introduces, so no intermediate bag outgrows both endpoints.
    fn morph(&mut self, mut from: usize, target: &[usize]) -> usize {
        let current = self.nodes[from].bag.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            let bag = without(&self.nodes[from].bag, v);
            from = self.push(bag, NodeKind::Forget(v), vec![from]);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            let bag = with(&self.nodes[from].bag, v);
            from = self.push(bag, NodeKind::Introduce(v), vec![from]);
        }
        from
    }
}

/// Converts a tree decomposition into nice form with the same width.
///
/// Each bag with `k` children becomes `k - 1` join nodes over the children,
/// after each child has been morphed into the bag by forget and introduce
/// steps. Leaves grow from an empty leaf and the root shrinks to an empty
/// bag. A path-shaped input yields no join nodes.
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceDecomposition, DecompositionError> {
    let disconnected = disconnected_vertices(td);
    if !disconnected.is_empty() {
        return Err(DecompositionError::Invalid(Violations {
            disconnected_vertices: disconnected,
            ..Violations::default()
        }));
    }
    let children = td.children();
    let mut post = Vec::with_capacity(td.len());
    let mut stack = vec![(td.root(), false)];
    while let Some((t, expanded)) = stack.pop() {
        if expanded {
            post.push(t);
        } else {
            stack.push((t, true));
            for &c in children[t].iter().rev() {
                stack.push((c, false));
            }
        }
    }

    let mut b = Builder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; td.len()];
    for t in post {
        let bag = td.bag(t);
        let mut acc: Option<usize> = None;
        for &c in &children[t] {
            let morphed = b.morph(top[c], bag);
            acc = Some(match acc {
                None => morphed,
                Some(prev) => b.push(bag.to_vec(), NodeKind::Join, vec![prev, morphed]),
            });
        }
        top[t] = match acc {
            Some(node) => node,
            None => {
                let leaf = b.push(Vec::new(), NodeKind::Leaf, Vec::new());
                b.morph(leaf, bag)
            }
        };
    }
    b.morph(top[td.root()], &[]);

    let nice = NiceDecomposition { nodes: b.nodes };
    debug_assert!(nice.check_structure().is_ok());
    Ok(nice)
}
