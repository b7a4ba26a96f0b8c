//! Bottom-up table filling over a nice decomposition.
//!
//! A table holds one value per subset `M` of the node's bag, encoded as a
//! bitmask over bag positions (the bag is sorted, so position `i` is the
//! `i`-th smallest vertex). Nodes are stored in post-order, so a single
//! forward sweep sees every child before its parent; child tables are
//! dropped as soon as the parent is filled.

use crate::decomposition::{NiceDecomposition, NodeKind};
use crate::graph::Graph;

use super::value::CountValue;

/// Work counters for one traversal.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpStats {
    pub nodes: usize,
    pub join_nodes: usize,
    /// Cell products evaluated in join nodes.
    pub join_products: u64,
    /// Largest table, in cells.
    pub max_table: usize,
}

fn low(p: usize) -> usize {
    (1usize << p) - 1
}

/// Drops bit `p`, shifting higher bits down.
fn remove_bit(m: usize, p: usize) -> usize {
    (m & low(p)) | ((m >> (p + 1)) << p)
}

/// Opens a zero bit at position `p`, shifting higher bits up.
fn insert_zero(m: usize, p: usize) -> usize {
    (m & low(p)) | ((m >> p) << (p + 1))
}

/// Positions in `bag` of the neighbours of `v`.
fn neighbor_mask(g: &Graph, v: usize, bag: &[usize]) -> usize {
    bag.iter()
        .enumerate()
        .filter(|&(_, &u)| g.has_edge(u, v))
        .fold(0, |m, (i, _)| m | (1 << i))
}

fn position(bag: &[usize], v: usize) -> usize {
    bag.binary_search(&v).expect("vertex is in the bag")
}

struct Sweep<'a, V> {
    nd: &'a NiceDecomposition,
    tables: Vec<Option<Vec<V>>>,
    below: Vec<usize>,
    stats: DpStats,
}

impl<'a, V: CountValue> Sweep<'a, V> {
    fn new(nd: &'a NiceDecomposition) -> Self {
        Sweep {
            nd,
            tables: vec![None; nd.len()],
            below: nd.subtree_vertex_counts(),
            stats: DpStats::default(),
        }
    }

    fn take(&mut self, child: usize) -> Vec<V> {
        self.tables[child].take().expect("child table computed before parent")
    }

    /// Children of a join ordered by how many vertices hang below them, smaller first.
    fn join_children(&mut self, i: usize) -> (Vec<V>, Vec<V>) {
        let c = &self.nd.node(i).children;
        let (a, b) = if self.below[c[0]] <= self.below[c[1]] {
            (c[0], c[1])
        } else {
            (c[1], c[0])
        };
        self.stats.join_nodes += 1;
        (self.take(a), self.take(b))
    }

    fn store(&mut self, i: usize, table: Vec<V>) {
        self.stats.nodes += 1;
        self.stats.max_table = self.stats.max_table.max(table.len());
        self.tables[i] = Some(table);
    }

    fn finish(mut self) -> (V, DpStats) {
        let root = self.nd.root();
        let mut table = self.take(root);
        debug_assert_eq!(table.len(), 1);
        (std::mem::take(&mut table[0]), self.stats)
    }
}

/// Matchings of `G_b` whose edges all have an endpoint outside the bag,
/// indexed by the set `M` of bag vertices they leave uncovered.
///
/// With `perfect` set, forgotten vertices must be covered; otherwise a
/// forgotten vertex may also stay unmatched.
pub fn matchings<V: CountValue>(g: &Graph, nd: &NiceDecomposition, perfect: bool) -> (V, DpStats) {
    let mut sweep = Sweep::<V>::new(nd);
    for (i, node) in nd.nodes().iter().enumerate() {
        let size = 1usize << node.bag.len();
        let table = match node.kind {
            NodeKind::Leaf => vec![V::one()],
            NodeKind::Introduce(v) => {
                // A fresh vertex has no forgotten neighbours yet, so it is uncovered.
                let p = position(&node.bag, v);
                let mut child = sweep.take(node.children[0]);
                (0..size)
                    .map(|m| {
                        if m & (1 << p) != 0 {
                            std::mem::take(&mut child[remove_bit(m, p)])
                        } else {
                            V::default()
                        }
                    })
                    .collect()
            }
            NodeKind::Forget(v) => {
                let child_bag = &nd.node(node.children[0]).bag;
                let p = position(child_bag, v);
                let vbit = 1 << p;
                let nbrs = neighbor_mask(g, v, &node.bag);
                let mut child = sweep.take(node.children[0]);
                (0..size)
                    .map(|m| {
                        let cm = insert_zero(m, p);
                        let mut val = std::mem::take(&mut child[cm]);
                        if !perfect {
                            val.add(&child[cm | vbit]);
                        }
                        // Pair v with a bag neighbour u that the parent state says is covered.
                        let mut candidates = nbrs & !m;
                        while candidates != 0 {
                            let j = candidates.trailing_zeros() as usize;
                            candidates &= candidates - 1;
                            let ubit = 1 << (if j < p { j } else { j + 1 });
                            val.add_grown(&child[cm | vbit | ubit]);
                        }
                        val
                    })
                    .collect()
            }
            NodeKind::Join => {
                let (small, large) = sweep.join_children(i);
                let full = size - 1;
                let mut products = 0u64;
                let table = (0..size)
                    .map(|m| {
                        let rest = full & !m;
                        let mut val = V::default();
                        // Split the covered vertices between the two sides.
                        let mut h = rest;
                        loop {
                            let a = &small[m | h];
                            let b = &large[m | (rest ^ h)];
                            products += 1;
                            if !a.is_zero() && !b.is_zero() {
                                val.add(&V::product(a, b));
                            }
                            if h == 0 {
                                break;
                            }
                            h = (h - 1) & rest;
                        }
                        val
                    })
                    .collect();
                sweep.stats.join_products += products;
                table
            }
        };
        sweep.store(i, table);
    }
    sweep.finish()
}

/// Independent sets `I` of `G_b` with `I ∩ X_b = M`. Sizes are credited
/// when a vertex is forgotten, so shared bag vertices are never counted twice.
pub fn independent_sets<V: CountValue>(g: &Graph, nd: &NiceDecomposition) -> (V, DpStats) {
    let mut sweep = Sweep::<V>::new(nd);
    for (i, node) in nd.nodes().iter().enumerate() {
        let size = 1usize << node.bag.len();
        let table = match node.kind {
            NodeKind::Leaf => vec![V::one()],
            NodeKind::Introduce(v) => {
                let p = position(&node.bag, v);
                let nbrs = neighbor_mask(g, v, &node.bag);
                let child = sweep.take(node.children[0]);
                (0..size)
                    .map(|m| {
                        if m & (1 << p) == 0 || m & nbrs == 0 {
                            child[remove_bit(m, p)].clone()
                        } else {
                            V::default()
                        }
                    })
                    .collect()
            }
            NodeKind::Forget(v) => {
                let child_bag = &nd.node(node.children[0]).bag;
                let p = position(child_bag, v);
                let mut child = sweep.take(node.children[0]);
                (0..size)
                    .map(|m| {
                        let cm = insert_zero(m, p);
                        let mut val = std::mem::take(&mut child[cm]);
                        val.add_grown(&child[cm | (1 << p)]);
                        val
                    })
                    .collect()
            }
            NodeKind::Join => {
                let (small, large) = sweep.join_children(i);
                sweep.stats.join_products += size as u64;
                small
                    .iter()
                    .zip(&large)
                    .map(|(a, b)| V::product(a, b))
                    .collect()
            }
        };
        sweep.store(i, table);
    }
    sweep.finish()
}
