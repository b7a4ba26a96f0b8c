//! Perfect matchings of chain graphs by transfer matrices.
//!
//! A chain element is a small graph with a left boundary `L` and a right
//! boundary `R` of equal size, paired positionally by `f: L -> R`. The chain of
//! length `n` glues `n` copies so that `R` of copy `i` is `L` of copy `i + 1`.
//!
//! States are subsets `α` of `V \ L`, encoded as bitmasks over the vertices of
//! `V \ L` in ascending id. `b[n][α]` is the number of perfect matchings of the
//! length-`n` chain with the last copy's `α` deleted; `b[n] = A · b[n-1]`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{parse_edge_list, GrParseError, Graph};

/// Largest `|V \ L|` accepted by [`build_transition`].
pub const MAX_STATE_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("boundaries differ in size: |L| = {left}, |R| = {right}")]
    BoundarySizes { left: usize, right: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} listed twice in a boundary")]
    DuplicateBoundaryVertex(usize),
    #[error("vertex {0} lies in both boundaries")]
    BoundaryOverlap(usize),
    #[error("f does not carry the graph induced on L onto the one induced on R (pair {0}, {1})")]
    NotIsomorphic(usize, usize),
    #[error("chain length must be at least 1")]
    ZeroLength,
    #[error("state vertex {0} lies in L")]
    StateInLeft(usize),
    #[error("{0} state vertices exceed the cap of {MAX_STATE_VERTICES}")]
    TooManyStates(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GrParseError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainElement {
    graph: Graph,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl ChainElement {
    /// `f` maps `left[i]` to `right[i]`.
    pub fn new(graph: Graph, left: Vec<usize>, right: Vec<usize>) -> Result<Self, ChainError> {
        if left.len() != right.len() {
            return Err(ChainError::BoundarySizes {
                left: left.len(),
                right: right.len(),
            });
        }
        for side in [&left, &right] {
            let mut seen = vec![false; graph.n()];
            for &v in side {
                if v >= graph.n() {
                    return Err(ChainError::VertexOutOfRange(v));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(ChainError::DuplicateBoundaryVertex(v));
                }
            }
        }
        if let Some(&v) = left.iter().find(|v| right.contains(v)) {
            return Err(ChainError::BoundaryOverlap(v));
        }
        if graph.n() > 64 {
            return Err(ChainError::VertexOutOfRange(graph.n() - 1));
        }
        for i in 0..left.len() {
            for j in i + 1..left.len() {
                if graph.has_edge(left[i], left[j]) != graph.has_edge(right[i], right[j]) {
                    return Err(ChainError::NotIsomorphic(left[i], left[j]));
                }
            }
        }
        Ok(ChainElement { graph, left, right })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    /// Vertices outside `L`, ascending. State bit `i` stands for the `i`-th of them.
    pub fn state_vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|v| !self.left.contains(v)).collect()
    }

    fn left_mask(&self) -> u64 {
        self.left.iter().fold(0, |m, &v| m | 1 << v)
    }
}

/// Glues `n` copies of the element. Copy 1 keeps the element's ids; each later
/// copy reuses the previous copy's `R` for its `L` and numbers its other
/// vertices consecutively in ascending element id.
pub fn build_chain(e: &ChainElement, n: usize) -> Result<Graph, ChainError> {
    if n == 0 {
        return Err(ChainError::ZeroLength);
    }
    let k = e.graph.n();
    let inner = k - e.left.len();
    let mut g = Graph::new(k + (n - 1) * inner);
    let mut prev: Vec<usize> = (0..k).collect();
    for (u, v) in e.graph.edges() {
        g.add_edge(u, v).expect("ids in range");
    }
    let mut next_id = k;
    for _ in 1..n {
        let mut ids = vec![usize::MAX; k];
        for (&l, &r) in e.left.iter().zip(&e.right) {
            ids[l] = prev[r];
        }
        for id in ids.iter_mut().filter(|id| **id == usize::MAX) {
            *id = next_id;
            next_id += 1;
        }
        for (u, v) in e.graph.edges() {
            g.add_edge(ids[u], ids[v]).expect("ids in range");
        }
        prev = ids;
    }
    Ok(g)
}

fn state_mask_of(e: &ChainElement, alpha: &[usize]) -> Result<u64, ChainError> {
    let mut mask = 0u64;
    for &v in alpha {
        if v >= e.graph.n() {
            return Err(ChainError::VertexOutOfRange(v));
        }
        if e.left.contains(&v) {
            return Err(ChainError::StateInLeft(v));
        }
        mask |= 1 << v;
    }
    Ok(mask)
}

/// Calls `visit` with each matching that covers all of `V \ (L ∪ α)`, avoids
/// `α`, and has every edge touching `V \ (L ∪ α)`. The second argument is the
/// set of covered vertices.
fn for_each_respectful(
    e: &ChainElement,
    alpha: u64,
    visit: &mut impl FnMut(&[(usize, usize)], u64),
) {
    fn go(
        g: &Graph,
        must: u64,
        alpha: u64,
        covered: u64,
        edges: &mut Vec<(usize, usize)>,
        visit: &mut impl FnMut(&[(usize, usize)], u64),
    ) {
        let open = must & !covered;
        if open == 0 {
            visit(edges, covered);
            return;
        }
        let v = open.trailing_zeros() as usize;
        for &u in g.adj(v) {
            let bit = 1u64 << u;
            if (alpha | covered) & bit != 0 {
                continue;
            }
            edges.push((v.min(u), v.max(u)));
            go(g, must, alpha, covered | bit | 1 << v, edges, visit);
            edges.pop();
        }
    }
    let all = if e.graph.n() == 64 { u64::MAX } else { (1u64 << e.graph.n()) - 1 };
    let must = all & !e.left_mask() & !alpha;
    go(&e.graph, must, alpha, 0, &mut Vec::new(), visit);
}

pub fn respectful_partial_matchings(
    e: &ChainElement,
    alpha: &[usize],
) -> Result<Vec<Vec<(usize, usize)>>, ChainError> {
    let alpha = state_mask_of(e, alpha)?;
    let mut out = Vec::new();
    for_each_respectful(e, alpha, &mut |m, _| {
        let mut m = m.to_vec();
        m.sort_unstable();
        out.push(m);
    });
    out.sort();
    Ok(out)
}

/// Perfect matchings of the element graph restricted to `alive`.
fn perfect_matchings(g: &Graph, alive: u64, memo: &mut HashMap<u64, BigUint>) -> BigUint {
    if alive == 0 {
        return BigUint::one();
    }
    if let Some(c) = memo.get(&alive) {
        return c.clone();
    }
    let v = alive.trailing_zeros() as usize;
    let rest = alive & !(1 << v);
    let mut total = BigUint::zero();
    for &u in g.adj(v) {
        if rest & 1 << u != 0 {
            total += perfect_matchings(g, rest & !(1 << u), memo);
        }
    }
    memo.insert(alive, total.clone());
    total
}

/// A sparse square matrix of non-negative big integers, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: Vec<Vec<(usize, BigUint)>>,
}

impl SparseMatrix {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> BigUint {
        self.rows[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map_or_else(BigUint::zero, |(_, x)| x.clone())
    }

    /// Non-zero entries of row `i`, by ascending column.
    pub fn row(&self, i: usize) -> &[(usize, BigUint)] {
        &self.rows[i]
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, BigUint> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        *acc.entry(*j).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows }
    }

    pub fn mul_vec(&self, v: &[BigUint]) -> Vec<BigUint> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(k, a)| a * &v[*k]).sum())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    states: Vec<usize>,
    matrix: SparseMatrix,
    initial: Vec<BigUint>,
}

impl TransitionSystem {
    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    /// Element vertices behind the state bits, ascending.
    pub fn state_vertices(&self) -> &[usize] {
        &self.states
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    /// `b[1]`: perfect matchings of the element with `α` deleted.
    pub fn initial(&self) -> &[BigUint] {
        &self.initial
    }

    /// State index of a vertex set. Panics if a vertex is not a state vertex.
    pub fn state_index(&self, alpha: &[usize]) -> usize {
        alpha.iter().fold(0, |m, v| {
            let bit = self.states.binary_search(v).expect("vertex outside L");
            m | 1 << bit
        })
    }

    pub fn state_set(&self, index: usize) -> Vec<usize> {
        self.states
            .iter()
            .enumerate()
            .filter(|&(i, _)| index & 1 << i != 0)
            .map(|(_, &v)| v)
            .collect()
    }
}

pub fn build_transition(e: &ChainElement) -> Result<TransitionSystem, ChainError> {
    let states = e.state_vertices();
    if states.len() > MAX_STATE_VERTICES {
        return Err(ChainError::TooManyStates(states.len()));
    }
    let dim = 1usize << states.len();
    let to_vertices = |index: usize| -> u64 {
        states
            .iter()
            .enumerate()
            .filter(|&(i, _)| index & 1 << i != 0)
            .fold(0, |m, (_, &v)| m | 1 << v)
    };
    let right_bits: Vec<usize> = e
        .right
        .iter()
        .map(|r| states.binary_search(r).expect("R is disjoint from L"))
        .collect();

    let mut rows = Vec::with_capacity(dim);
    for index in 0..dim {
        let alpha = to_vertices(index);
        let mut row: BTreeMap<usize, BigUint> = BTreeMap::new();
        for_each_respectful(e, alpha, &mut |_, covered| {
            // Boundary vertices this copy covers must be absent from the previous copy.
            let next = e
                .left
                .iter()
                .zip(&right_bits)
                .filter(|(l, _)| covered & 1 << **l != 0)
                .fold(0usize, |m, (_, &bit)| m | 1 << bit);
            *row.entry(next).or_default() += 1u32;
        });
        rows.push(row.into_iter().collect());
    }

    let full = if e.graph.n() == 64 { u64::MAX } else { (1u64 << e.graph.n()) - 1 };
    let mut memo = HashMap::new();
    let initial = (0..dim)
        .map(|index| perfect_matchings(&e.graph, full & !to_vertices(index), &mut memo))
        .collect();

    Ok(TransitionSystem {
        states,
        matrix: SparseMatrix { rows },
        initial,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCount {
    pub value: BigUint,
    /// Matrix-matrix products spent on `A^(n-1)`.
    pub multiplications: u32,
}

/// `A^e` for `e >= 1` by square-and-multiply over the bits of `e`.
fn power(a: &SparseMatrix, e: usize, multiplications: &mut u32) -> SparseMatrix {
    let top = usize::BITS - 1 - e.leading_zeros();
    let mut acc = a.clone();
    for bit in (0..top).rev() {
        acc = acc.mul(&acc);
        *multiplications += 1;
        if e & 1 << bit != 0 {
            acc = acc.mul(a);
            *multiplications += 1;
        }
    }
    acc
}

pub fn chain_pm_count(e: &ChainElement, n: usize) -> Result<ChainCount, ChainError> {
    if n == 0 {
        return Err(ChainError::ZeroLength);
    }
    let ts = build_transition(e)?;
    Ok(chain_pm_count_with(&ts, n))
}

/// Same as [`chain_pm_count`] with a prebuilt transition system.
pub fn chain_pm_count_with(ts: &TransitionSystem, n: usize) -> ChainCount {
    assert!(n >= 1, "chain length must be at least 1");
    let mut multiplications = 0;
    let b = if n == 1 {
        ts.initial.clone()
    } else {
        power(&ts.matrix, n - 1, &mut multiplications).mul_vec(&ts.initial)
    };
    ChainCount {
        value: b[0].clone(),
        multiplications,
    }
}

/// `b[n]` by applying `A` to `b[1]` `n - 1` times.
pub fn iterate_states(ts: &TransitionSystem, n: usize) -> Vec<BigUint> {
    let mut b = ts.initial.clone();
    for _ in 1..n {
        b = ts.matrix.mul_vec(&b);
    }
    b
}

/// Reads a chain element: a `.gr` graph plus `f <l> <r>` lines pairing the
/// boundaries (1-based, listed in `L` order).
pub fn parse_chain_element(text: &str) -> Result<ChainElement, ChainError> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut gr = String::with_capacity(text.len());
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("f ") {
            let ids: Vec<usize> = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .ok()
                .filter(|ids: &Vec<usize>| ids.len() == 2 && ids.iter().all(|&x| x > 0))
                .ok_or_else(|| ChainError::Parse {
                    line: idx + 1,
                    message: format!("malformed boundary pair `{line}`"),
                })?;
            left.push(ids[0] - 1);
            right.push(ids[1] - 1);
            // Keep line numbers aligned for the graph parser.
            gr.push_str("c\n");
        } else {
            gr.push_str(raw);
            gr.push('\n');
        }
    }
    let graph = parse_edge_list(&gr)?;
    ChainElement::new(graph, left, right)
}

pub fn emit_chain_element(e: &ChainElement) -> String {
    let mut out = e.graph.to_gr();
    for (l, r) in e.left.iter().zip(&e.right) {
        out.push_str(&format!("f {} {}\n", l + 1, r + 1));
    }
    out
}

/// The six-cycle worked example. Element vertex `i` is the cycle's `v(i+1)`.
pub mod hexagon {
    use super::*;
    use crate::graph::families;

    /// `L = {v1, v2}`, `R = {v5, v6}`, `f(v1) = v5`, `f(v2) = v6`.
    pub fn element() -> ChainElement {
        ChainElement::new(families::cycle(6), vec![0, 1], vec![4, 5]).expect("valid element")
    }

    /// `L = {v1, v2}`, `R = {v4, v5}`, `f(v1) = v4`, `f(v2) = v5`: the reading
    /// under which the published relations hold.
    pub fn opposite_edge_element() -> ChainElement {
        ChainElement::new(families::cycle(6), vec![0, 1], vec![3, 4]).expect("valid element")
    }

    /// The published state order, as 1-based `v` labels.
    pub const PUBLISHED_STATE_ORDER: [&[usize]; 16] = [
        &[],
        &[3],
        &[4],
        &[5],
        &[6],
        &[3, 4],
        &[3, 5],
        &[3, 6],
        &[4, 5],
        &[4, 6],
        &[5, 6],
        &[3, 4, 5],
        &[3, 4, 6],
        &[3, 5, 6],
        &[4, 5, 6],
        &[3, 4, 5, 6],
    ];

    /// Published `b[1]`, in [`PUBLISHED_STATE_ORDER`].
    pub const PUBLISHED_B1: [u64; 16] = [2, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 1];

    /// Published relations `b[n][α] = Σ b[n-1][β]` as (α, [β...]) in `v` labels.
    pub const PUBLISHED_RELATIONS: [(&[usize], &[&[usize]]); 10] = [
        (&[], &[&[], &[4, 5]]),
        (&[3], &[&[4]]),
        (&[4], &[&[5]]),
        (&[3, 4], &[&[]]),
        (&[3, 5], &[]),
        (&[3, 6], &[&[]]),
        (&[4, 5], &[&[4, 5]]),
        (&[3, 4, 5], &[&[4]]),
        (&[3, 4, 6], &[]),
        (&[3, 4, 5, 6], &[&[]]),
    ];

    /// Published 16×16 matrix as the non-zero columns of each row, both in
    /// [`PUBLISHED_STATE_ORDER`] positions.
    pub const PUBLISHED_MATRIX_ROWS: [&[usize]; 16] = [
        &[0, 8],
        &[3],
        &[2],
        &[3],
        &[2],
        &[0],
        &[],
        &[0],
        &[8],
        &[],
        &[0],
        &[3],
        &[],
        &[],
        &[2],
        &[0],
    ];

    fn label(set: &[usize]) -> String {
        if set.is_empty() {
            "∅".to_string()
        } else {
            set.iter().map(|v| v.to_string()).collect()
        }
    }

    fn index(ts: &TransitionSystem, labels: &[usize]) -> usize {
        let vertices: Vec<usize> = labels.iter().map(|v| v - 1).collect();
        ts.state_index(&vertices)
    }

    /// `perm[i]` is the internal state index of the `i`-th published state.
    pub fn published_permutation(ts: &TransitionSystem) -> [usize; 16] {
        PUBLISHED_STATE_ORDER.map(|s| index(ts, s))
    }

    /// One disagreement between a published item and the derived one.
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct Discrepancy {
        pub state: String,
        pub published: String,
        pub derived: String,
    }

    fn row_terms(ts: &TransitionSystem, i: usize) -> Vec<(String, BigUint)> {
        ts.matrix()
            .row(i)
            .iter()
            .map(|(j, c)| {
                let labels: Vec<usize> = ts.state_set(*j).iter().map(|v| v + 1).collect();
                (label(&labels), c.clone())
            })
            .collect()
    }

    fn show_terms(terms: &[(String, BigUint)]) -> String {
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = terms
            .iter()
            .map(|(s, c)| if c.is_one() { format!("b[{s}]") } else { format!("{c}·b[{s}]") })
            .collect();
        parts.sort();
        parts.join(" + ")
    }

    pub fn b1_discrepancies(ts: &TransitionSystem) -> Vec<Discrepancy> {
        PUBLISHED_STATE_ORDER
            .iter()
            .zip(PUBLISHED_B1)
            .filter_map(|(s, published)| {
                let derived = &ts.initial()[index(ts, s)];
                (*derived != BigUint::from(published)).then(|| Discrepancy {
                    state: label(s),
                    published: published.to_string(),
                    derived: derived.to_string(),
                })
            })
            .collect()
    }

    pub fn relation_discrepancies(ts: &TransitionSystem) -> Vec<Discrepancy> {
        PUBLISHED_RELATIONS
            .iter()
            .filter_map(|(alpha, terms)| {
                let published: Vec<(String, BigUint)> =
                    terms.iter().map(|t| (label(t), BigUint::one())).collect();
                let published = show_terms(&published);
                let derived = show_terms(&row_terms(ts, index(ts, alpha)));
                (published != derived).then(|| Discrepancy {
                    state: label(alpha),
                    published,
                    derived,
                })
            })
            .collect()
    }

    pub fn matrix_discrepancies(ts: &TransitionSystem) -> Vec<Discrepancy> {
        PUBLISHED_STATE_ORDER
            .iter()
            .zip(PUBLISHED_MATRIX_ROWS)
            .filter_map(|(alpha, cols)| {
                let published: Vec<(String, BigUint)> = cols
                    .iter()
                    .map(|&c| (label(PUBLISHED_STATE_ORDER[c]), BigUint::one()))
                    .collect();
                let published = show_terms(&published);
                let derived = show_terms(&row_terms(ts, index(ts, alpha)));
                (published != derived).then(|| Discrepancy {
                    state: label(alpha),
                    published,
                    derived,
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_perfect_matchings;
    use crate::decomposition::min_fill_nice;
    use crate::graph::families;

    #[test]
    fn element_validation() {
        let c6 = families::cycle(6);
        assert!(matches!(
            ChainElement::new(c6.clone(), vec![0], vec![3, 4]),
            Err(ChainError::BoundarySizes { .. })
        ));
        assert_eq!(
            ChainElement::new(c6.clone(), vec![0, 1], vec![1, 4]),
            Err(ChainError::BoundaryOverlap(1))
        );
        assert_eq!(
            ChainElement::new(c6.clone(), vec![0, 0], vec![3, 4]),
            Err(ChainError::DuplicateBoundaryVertex(0))
        );
        assert_eq!(
            ChainElement::new(c6.clone(), vec![0, 1], vec![3, 5]),
            Err(ChainError::NotIsomorphic(0, 1))
        );
        assert!(ChainElement::new(c6, vec![0, 2], vec![3, 5]).is_ok());
    }

    #[test]
    fn chain_sizes() {
        let e = hexagon::element();
        assert_eq!(build_chain(&e, 1).unwrap(), families::cycle(6));
        let two = build_chain(&e, 2).unwrap();
        assert_eq!((two.n(), two.m()), (10, 11));
        assert_eq!(build_chain(&e, 3).unwrap().n(), 14);
        assert_eq!(build_chain(&e, 0), Err(ChainError::ZeroLength));
    }

    #[test]
    fn respectful_matchings_of_the_hexagon() {
        let e = hexagon::element();
        // v-labels minus one.
        let empty = respectful_partial_matchings(&e, &[]).unwrap();
        assert_eq!(empty, vec![vec![(0, 5), (1, 2), (3, 4)], vec![(2, 3), (4, 5)]]);
        assert!(respectful_partial_matchings(&e, &[2, 4]).unwrap().is_empty());
        let everything = respectful_partial_matchings(&e, &[2, 3, 4, 5]).unwrap();
        assert_eq!(everything, vec![Vec::<(usize, usize)>::new()]);
        assert_eq!(respectful_partial_matchings(&e, &[0]), Err(ChainError::StateInLeft(0)));
    }

    #[test]
    fn hexagon_transition() {
        let e = hexagon::element();
        let ts = build_transition(&e).unwrap();
        assert_eq!(ts.dim(), 16);
        assert!(hexagon::b1_discrepancies(&ts).is_empty());
        let empty = ts.state_index(&[]);
        let r = ts.state_index(&[4, 5]);
        assert_eq!(ts.matrix().row(empty), &[(0, BigUint::one()), (r, BigUint::one())]);
        assert!(ts.matrix().row(ts.state_index(&[2, 4])).is_empty());
    }

    #[test]
    fn published_relations_fit_the_opposite_edge_reading() {
        let ts = build_transition(&hexagon::opposite_edge_element()).unwrap();
        assert!(hexagon::relation_discrepancies(&ts).is_empty());
        assert!(hexagon::b1_discrepancies(&ts).is_empty());
        let ts = build_transition(&hexagon::element()).unwrap();
        assert!(!hexagon::relation_discrepancies(&ts).is_empty());
    }

    #[test]
    fn agrees_with_the_decomposition_counter() {
        for e in [hexagon::element(), hexagon::opposite_edge_element()] {
            for n in 1..=6 {
                let g = build_chain(&e, n).unwrap();
                let dp = count_perfect_matchings(&g, &min_fill_nice(&g)).unwrap();
                let fast = chain_pm_count(&e, n).unwrap();
                assert_eq!(fast.value, dp, "n = {n}");
            }
        }
    }

    #[test]
    fn exponentiation_matches_iteration() {
        let e = hexagon::element();
        let ts = build_transition(&e).unwrap();
        for n in [1, 2, 3, 7, 50, 64, 65] {
            let fast = chain_pm_count_with(&ts, n);
            assert_eq!(fast.value, iterate_states(&ts, n)[0]);
            let bound = 2 * (n as f64).log2().ceil() as u32;
            assert!(fast.multiplications <= bound, "n = {n}: {}", fast.multiplications);
        }
    }

    #[test]
    fn linear_hexagon_chain_is_fibonacci_like() {
        // Linear acenes with n rings have n + 1 Kekulé structures.
        let e = hexagon::opposite_edge_element();
        for n in 1..=10 {
            assert_eq!(chain_pm_count(&e, n).unwrap().value, BigUint::from(n as u64 + 1));
        }
    }

    #[test]
    fn file_round_trip() {
        let e = hexagon::element();
        let text = emit_chain_element(&e);
        assert_eq!(parse_chain_element(&text).unwrap(), e);
        assert!(matches!(
            parse_chain_element("p tw 2 1\n1 2\nf 1 x\n"),
            Err(ChainError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_chain_element("p tw 2 1\n1 2\nf 1 1\n"),
            Err(ChainError::BoundaryOverlap(0))
        ));
    }
}
