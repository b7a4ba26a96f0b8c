use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use super::TreeDecomposition;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("order has {got} entries but the graph has {n} vertices")]
    WrongLength { got: usize, n: usize },
    #[error("vertex {0} is missing from the order or repeated")]
    NotAPermutation(usize),
}

/// A permutation of the vertex ids, read as "eliminate first to last".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder(Vec<usize>);

impl EliminationOrder {
    pub fn new(order: Vec<usize>, n: usize) -> Result<Self, OrderError> {
        if order.len() != n {
            return Err(OrderError::WrongLength {
                got: order.len(),
                n,
            });
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(OrderError::NotAPermutation(v));
            }
            seen[v] = true;
        }
        Ok(EliminationOrder(order))
    }

    pub fn identity(n: usize) -> Self {
        EliminationOrder((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `positions()[v]` is the index of `v` in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

/// Greedy elimination on a working copy of `g`: repeatedly pick the vertex
/// whose elimination adds the fewest fill edges, lowest id on ties.
///
/// Scores are refreshed only within distance two of the eliminated vertex,
/// which is where fill counts can change.
pub fn min_fill_order(g: &Graph) -> EliminationOrder {
    greedy_order(g, fill_in)
}

/// Same elimination game, scored by current degree.
pub fn min_degree_order(g: &Graph) -> EliminationOrder {
    greedy_order(g, |adj, v| adj[v].len())
}

fn greedy_order(g: &Graph, score: impl Fn(&[BTreeSet<usize>], usize) -> usize) -> EliminationOrder {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.adj(v).iter().copied().collect()).collect();
    let mut current: Vec<usize> = (0..n).map(|v| score(&adj, v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (current[v], v)).collect();
    let mut order = Vec::with_capacity(n);

    while let Some((_, v)) = queue.pop_first() {
        order.push(v);
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &nbrs {
            adj[u].remove(&v);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();

        let mut touched: BTreeSet<usize> = nbrs.iter().copied().collect();
        for &u in &nbrs {
            touched.extend(adj[u].iter().copied());
        }
        for u in touched {
            let fresh = score(&adj, u);
            if fresh != current[u] && queue.remove(&(current[u], u)) {
                current[u] = fresh;
                queue.insert((fresh, u));
            }
        }
    }
    EliminationOrder(order)
}

/// Breadth-first order per component, each started from a minimum-degree
/// vertex, neighbours visited in ascending id. A cheap order for path
/// decompositions of long thin graphs.
pub fn bfs_order(g: &Graph) -> EliminationOrder {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for comp in g.components() {
        let start = *comp
            .iter()
            .min_by_key(|&&v| (g.degree(v), v))
            .expect("components are nonempty");
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in g.adj(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    EliminationOrder(order)
}

/// Elimination-game decomposition: one bag per vertex holding the vertex and
/// its later neighbours in the filled graph. Components end in separate
/// roots, which are hung under a fresh empty bag when there are several.
pub fn decomposition_from_order(g: &Graph, order: &EliminationOrder) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![vec![]], vec![None], 0).expect("single bag");
    }
    let pos = order.positions();
    let mut later: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.adj(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect())
        .collect();

    // Bag index = position in the order.
    let mut bags = Vec::with_capacity(n + 1);
    let mut parent = vec![None; n];
    for (i, &v) in order.as_slice().iter().enumerate() {
        let higher = std::mem::take(&mut later[v]);
        let mut bag: Vec<usize> = higher.iter().copied().collect();
        bag.push(v);
        bags.push(bag);
        if let Some(&next) = higher.iter().min_by_key(|&&u| pos[u]) {
            parent[i] = Some(pos[next]);
            for &u in &higher {
                if u != next {
                    later[next].insert(u);
                }
            }
        }
    }

    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    let root = if roots.len() == 1 {
        roots[0]
    } else {
        bags.push(Vec::new());
        parent.push(None);
        for &r in &roots {
            parent[r] = Some(n);
        }
        n
    };
    TreeDecomposition::new(bags, parent, root).expect("elimination tree is a tree")
}

/// Path decomposition from a vertex order: bag `i` holds `order[i]` together
/// with every earlier vertex that still has a neighbour at position `i` or
/// later. Bag `i + 1` is the parent of bag `i`.
pub fn path_decomposition_from_order(g: &Graph, order: &EliminationOrder) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::new(vec![vec![]], vec![None], 0).expect("single bag");
    }
    let pos = order.positions();
    let last: Vec<usize> = (0..n)
        .map(|v| g.adj(v).iter().map(|&u| pos[u]).fold(pos[v], usize::max))
        .collect();

    let mut bags: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        for bag in &mut bags[pos[v]..=last[v]] {
            bag.push(v);
        }
    }
    let parent = (0..n).map(|i| (i + 1 < n).then_some(i + 1)).collect();
    TreeDecomposition::new(bags, parent, n - 1).expect("path is a tree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate;
    use crate::graph::families;

    fn check(g: &Graph, td: &TreeDecomposition) -> i64 {
        validate(g, td).unwrap();
        td.width()
    }

    #[test]
    fn min_fill_widths() {
        let p4 = families::path(4);
        assert_eq!(check(&p4, &decomposition_from_order(&p4, &min_fill_order(&p4))), 1);
        let c6 = families::cycle(6);
        assert_eq!(check(&c6, &decomposition_from_order(&c6, &min_fill_order(&c6))), 2);
        let k4 = families::complete(4);
        assert_eq!(check(&k4, &decomposition_from_order(&k4, &min_fill_order(&k4))), 3);
    }

    #[test]
    fn min_fill_breaks_ties_by_lowest_id() {
        // Every vertex of C6 has fill 1 initially.
        assert_eq!(min_fill_order(&families::cycle(6)).as_slice()[0], 0);
        // Leaves have fill 0; the centre of a star has the most.
        let order = min_fill_order(&families::star(3));
        assert_eq!(order.as_slice()[0], 1);
    }

    #[test]
    fn elimination_small_cases() {
        let edge = families::path(2);
        let td = decomposition_from_order(&edge, &EliminationOrder::identity(2));
        assert_eq!(check(&edge, &td), 1);
        let empty3 = families::edgeless(3);
        let td = decomposition_from_order(&empty3, &min_fill_order(&empty3));
        assert_eq!(check(&empty3, &td), 0);
        assert_eq!(td.len(), 4, "three singleton bags under a fresh root");
        let none = Graph::new(0);
        assert_eq!(decomposition_from_order(&none, &EliminationOrder::identity(0)).width(), -1);
    }

    #[test]
    fn path_decompositions() {
        let p4 = families::path(4);
        let td = path_decomposition_from_order(&p4, &EliminationOrder::identity(4));
        assert!(td.is_path());
        assert_eq!(check(&p4, &td), 1);
        let c6 = families::cycle(6);
        assert_eq!(
            check(&c6, &path_decomposition_from_order(&c6, &EliminationOrder::identity(6))),
            2
        );
        let k4 = families::complete(4);
        assert_eq!(
            check(&k4, &path_decomposition_from_order(&k4, &EliminationOrder::identity(4))),
            3
        );
        let ladder = families::ladder(50);
        assert_eq!(check(&ladder, &path_decomposition_from_order(&ladder, &bfs_order(&ladder))), 2);
    }

    #[test]
    fn order_validation() {
        assert!(EliminationOrder::new(vec![1, 0, 2], 3).is_ok());
        assert_eq!(
            EliminationOrder::new(vec![0, 0, 2], 3),
            Err(OrderError::NotAPermutation(0))
        );
        assert_eq!(
            EliminationOrder::new(vec![0], 3),
            Err(OrderError::WrongLength { got: 1, n: 3 })
        );
    }
}
