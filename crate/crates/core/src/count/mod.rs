//! Counting perfect matchings, matchings and independent sets, in total and
//! by size, with one bottom-up sweep over a nice tree (or path) decomposition.
//!
//! Every entry point validates the decomposition against the graph first,
//! so a decomposition built for a different graph is an error rather than a
//! silently wrong count.

mod engine;
mod value;

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use thiserror::Error;

use crate::decomposition::{NiceDecomposition, NiceMismatch, MAX_WIDTH};
use crate::graph::Graph;
use crate::poly::SizePolynomial;

pub use engine::DpStats;
pub use value::CountValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("decomposition does not fit the graph: {0}")]
    Mismatch(#[from] NiceMismatch),
    #[error("decomposition width {width} exceeds the supported maximum of {MAX_WIDTH}")]
    TooWide { width: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("entropy of an all-zero size distribution is undefined")]
pub struct EmptyDistribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantity {
    PerfectMatchings,
    Matchings,
    IndependentSets,
    MatchingPolynomial,
    IndependencePolynomial,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::PerfectMatchings,
        Quantity::Matchings,
        Quantity::IndependentSets,
        Quantity::MatchingPolynomial,
        Quantity::IndependencePolynomial,
    ];

    /// Short name used in reports and CSV output.
    pub fn key(self) -> &'static str {
        match self {
            Quantity::PerfectMatchings => "pm",
            Quantity::Matchings => "hosoya",
            Quantity::IndependentSets => "ms",
            Quantity::MatchingPolynomial => "mpoly",
            Quantity::IndependencePolynomial => "ipoly",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountResult {
    Total(BigUint),
    Polynomial(SizePolynomial),
}

fn check(g: &Graph, nd: &NiceDecomposition) -> Result<(), CountError> {
    let width = nd.width();
    if width > MAX_WIDTH as i64 {
        return Err(CountError::TooWide { width });
    }
    nd.check_against(g)?;
    Ok(())
}

/// Runs one quantity's dynamic program without re-validating.
fn sweep(g: &Graph, nd: &NiceDecomposition, q: Quantity) -> (CountResult, DpStats) {
    match q {
        Quantity::PerfectMatchings => {
            let (v, s) = engine::matchings::<BigUint>(g, nd, true);
            (CountResult::Total(v), s)
        }
        Quantity::Matchings => {
            let (v, s) = engine::matchings::<BigUint>(g, nd, false);
            (CountResult::Total(v), s)
        }
        Quantity::IndependentSets => {
            let (v, s) = engine::independent_sets::<BigUint>(g, nd);
            (CountResult::Total(v), s)
        }
        Quantity::MatchingPolynomial => {
            let (v, s) = engine::matchings::<SizePolynomial>(g, nd, false);
            (CountResult::Polynomial(v), s)
        }
        Quantity::IndependencePolynomial => {
            let (v, s) = engine::independent_sets::<SizePolynomial>(g, nd);
            (CountResult::Polynomial(v), s)
        }
    }
}

/// Computes one quantity and reports the work done by the traversal.
pub fn count_with_stats(
    g: &Graph,
    nd: &NiceDecomposition,
    q: Quantity,
) -> Result<(CountResult, DpStats), CountError> {
    check(g, nd)?;
    Ok(sweep(g, nd, q))
}

fn total(g: &Graph, nd: &NiceDecomposition, q: Quantity) -> Result<BigUint, CountError> {
    match count_with_stats(g, nd, q)?.0 {
        CountResult::Total(v) => Ok(v),
        CountResult::Polynomial(_) => unreachable!("{q} is a total"),
    }
}

fn polynomial(g: &Graph, nd: &NiceDecomposition, q: Quantity) -> Result<SizePolynomial, CountError> {
    match count_with_stats(g, nd, q)?.0 {
        CountResult::Polynomial(p) => Ok(p),
        CountResult::Total(_) => unreachable!("{q} is a polynomial"),
    }
}

/// Number of perfect matchings (Kekulé structures).
pub fn count_perfect_matchings(g: &Graph, nd: &NiceDecomposition) -> Result<BigUint, CountError> {
    total(g, nd, Quantity::PerfectMatchings)
}

/// Number of matchings including the empty one (Hosoya index).
pub fn count_matchings(g: &Graph, nd: &NiceDecomposition) -> Result<BigUint, CountError> {
    total(g, nd, Quantity::Matchings)
}

/// Number of independent sets including the empty one (Merrifield–Simmons index).
pub fn count_independent_sets(g: &Graph, nd: &NiceDecomposition) -> Result<BigUint, CountError> {
    total(g, nd, Quantity::IndependentSets)
}

/// Matchings counted by size.
pub fn matching_polynomial(g: &Graph, nd: &NiceDecomposition) -> Result<SizePolynomial, CountError> {
    polynomial(g, nd, Quantity::MatchingPolynomial)
}

/// Independent sets counted by size.
pub fn independence_polynomial(
    g: &Graph,
    nd: &NiceDecomposition,
) -> Result<SizePolynomial, CountError> {
    polynomial(g, nd, Quantity::IndependencePolynomial)
}

/// `a / b` as a float, accurate even when both exceed the `f64` range.
fn ratio(a: &BigUint, b: &BigUint) -> f64 {
    let shift = b.bits().saturating_sub(64);
    let to_f64 = |x: BigUint| -> f64 {
        x.to_u64_digits()
            .iter()
            .rev()
            .fold(0.0, |acc, &d| acc * 18446744073709551616.0 + d as f64)
    };
    to_f64(a >> shift) / to_f64(b >> shift)
}

/// Shannon entropy, in bits, of the size distribution `p_k = a_k / Σ a_j`.
pub fn entropy(poly: &SizePolynomial) -> Result<f64, EmptyDistribution> {
    entropy_in_base(poly, 2.0)
}

pub fn entropy_in_base(poly: &SizePolynomial, base: f64) -> Result<f64, EmptyDistribution> {
    let sum = poly.total();
    if sum.bits() == 0 {
        return Err(EmptyDistribution);
    }
    let h: f64 = poly
        .coeffs()
        .iter()
        .filter(|c| c.bits() > 0)
        .map(|c| {
            let p = ratio(c, &sum);
            -p * p.log(base)
        })
        .sum();
    // A single size class gives -1 * log(1) = -0.0.
    Ok(h + 0.0)
}

/// All five quantities and both entropies for one graph and decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub n: usize,
    pub m: usize,
    pub width: i64,
    pub nice_nodes: usize,
    pub join_nodes: usize,
    pub perfect_matchings: BigUint,
    pub hosoya: BigUint,
    pub merrifield_simmons: BigUint,
    pub matching_poly: SizePolynomial,
    pub independence_poly: SizePolynomial,
    pub matching_entropy: f64,
    pub independence_entropy: f64,
    pub timings: Vec<(Quantity, Duration)>,
}

pub fn run_all(g: &Graph, nd: &NiceDecomposition) -> Result<Report, CountError> {
    check(g, nd)?;
    let mut timings = Vec::with_capacity(5);
    let mut results = Vec::with_capacity(5);
    for q in Quantity::ALL {
        let start = Instant::now();
        let (value, _) = sweep(g, nd, q);
        timings.push((q, start.elapsed()));
        results.push(value);
    }
    let mut it = results.into_iter();
    let mut next_total = || match it.next() {
        Some(CountResult::Total(v)) => v,
        _ => unreachable!("quantities are produced in ALL order"),
    };
    let perfect_matchings = next_total();
    let hosoya = next_total();
    let merrifield_simmons = next_total();
    let mut next_poly = || match it.next() {
        Some(CountResult::Polynomial(p)) => p,
        _ => unreachable!("quantities are produced in ALL order"),
    };
    let matching_poly = next_poly();
    let independence_poly = next_poly();

    // Both polynomials have a constant term of 1, so neither is zero.
    let matching_entropy = entropy(&matching_poly).expect("empty matching counted");
    let independence_entropy = entropy(&independence_poly).expect("empty set counted");
    Ok(Report {
        n: g.n(),
        m: g.m(),
        width: nd.width(),
        nice_nodes: nd.len(),
        join_nodes: nd.join_count(),
        perfect_matchings,
        hosoya,
        merrifield_simmons,
        matching_poly,
        independence_poly,
        matching_entropy,
        independence_entropy,
        timings,
    })
}
