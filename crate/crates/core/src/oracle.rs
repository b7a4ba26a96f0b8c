//! Exhaustive enumeration of matchings and independent sets.
//!
//! Exponential on purpose: it shares no code with the decomposition-based
//! counters and serves as the reference they are checked against.

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::Graph;
use crate::poly::SizePolynomial;

pub const ORACLE_MAX_EDGES: usize = 24;
pub const ORACLE_MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph with {n} vertices and {m} edges exceeds the oracle cap (m <= {ORACLE_MAX_EDGES} or n <= {ORACLE_MAX_VERTICES})")]
pub struct OracleTooLarge {
    pub n: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCounts {
    pub perfect_matchings: BigUint,
    pub matching_poly: SizePolynomial,
    pub independence_poly: SizePolynomial,
}

impl OracleCounts {
    pub fn hosoya(&self) -> BigUint {
        self.matching_poly.total()
    }

    pub fn merrifield_simmons(&self) -> BigUint {
        self.independence_poly.total()
    }
}

pub fn oracle_counts(g: &Graph) -> Result<OracleCounts, OracleTooLarge> {
    if g.m() > ORACLE_MAX_EDGES && g.n() > ORACLE_MAX_VERTICES {
        return Err(OracleTooLarge { n: g.n(), m: g.m() });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();

    let mut by_size = vec![0u64; g.n() / 2 + 1];
    let mut covered = vec![false; g.n()];
    enumerate_matchings(&edges, 0, 0, &mut covered, &mut by_size);
    let perfect = if g.n() % 2 == 0 { by_size[g.n() / 2] } else { 0 };

    let mut ind_by_size = vec![0u64; g.n() + 1];
    let mut chosen = vec![false; g.n()];
    enumerate_independent_sets(g, 0, 0, &mut chosen, &mut ind_by_size);

    Ok(OracleCounts {
        perfect_matchings: BigUint::from(perfect),
        matching_poly: SizePolynomial::from_u64s(&by_size),
        independence_poly: SizePolynomial::from_u64s(&ind_by_size),
    })
}

// Every edge is either in the subset or not; subsets that are not matchings
// are cut as soon as two chosen edges share a vertex.
fn enumerate_matchings(
    edges: &[(usize, usize)],
    next: usize,
    size: usize,
    covered: &mut [bool],
    by_size: &mut [u64],
) {
    if next == edges.len() {
        by_size[size] += 1;
        return;
    }
    enumerate_matchings(edges, next + 1, size, covered, by_size);
    let (u, v) = edges[next];
    if !covered[u] && !covered[v] {
        covered[u] = true;
        covered[v] = true;
        enumerate_matchings(edges, next + 1, size + 1, covered, by_size);
        covered[u] = false;
        covered[v] = false;
    }
}

fn enumerate_independent_sets(
    g: &Graph,
    next: usize,
    size: usize,
    chosen: &mut [bool],
    by_size: &mut [u64],
) {
    if next == g.n() {
        by_size[size] += 1;
        return;
    }
    enumerate_independent_sets(g, next + 1, size, chosen, by_size);
    if g.adj(next).iter().all(|&u| !chosen[u]) {
        chosen[next] = true;
        enumerate_independent_sets(g, next + 1, size + 1, chosen, by_size);
        chosen[next] = false;
    }
}
