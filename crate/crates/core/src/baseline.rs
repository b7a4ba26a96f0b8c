//! Naive branching counters, kept deliberately unclever as the benchmark
//! reference: pick the lowest edge (or the lowest non-isolated vertex),
//! branch on whether it belongs to the structure, recurse until no edges
//! remain. No memoisation, no component splitting.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;

use crate::graph::Graph;

/// Steps between clock reads.
const CLOCK_INTERVAL: u64 = 4096;

/// Limits on a baseline run. Both limits apply when both are set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub max_branches: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn time(limit: Duration) -> Self {
        Budget {
            time: Some(limit),
            max_branches: None,
        }
    }

    pub fn branches(limit: u64) -> Self {
        Budget {
            time: None,
            max_branches: Some(limit),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Value(BigUint),
    Timeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineResult {
    pub outcome: Outcome,
    pub elapsed: Duration,
    /// Nodes of the recursion tree visited, including the root call.
    pub branch_count: u64,
}

impl BaselineResult {
    pub fn value(&self) -> Option<&BigUint> {
        match &self.outcome {
            Outcome::Value(v) => Some(v),
            Outcome::Timeout => None,
        }
    }

    pub fn timed_out(&self) -> bool {
        self.outcome == Outcome::Timeout
    }
}

struct OutOfBudget;

struct Search {
    start: Instant,
    budget: Budget,
    steps: u64,
    acc: BigUint,
}

type Edges = Vec<(usize, usize)>;

impl Search {
    fn new(budget: Budget) -> Self {
        Search {
            start: Instant::now(),
            budget,
            steps: 0,
            acc: BigUint::default(),
        }
    }

    fn step(&mut self) -> Result<(), OutOfBudget> {
        self.steps += 1;
        if self.budget.max_branches.is_some_and(|max| self.steps > max) {
            return Err(OutOfBudget);
        }
        if self.steps % CLOCK_INTERVAL == 0
            && self.budget.time.is_some_and(|t| self.start.elapsed() > t)
        {
            return Err(OutOfBudget);
        }
        Ok(())
    }

    fn finish(self, run: Result<(), OutOfBudget>) -> BaselineResult {
        let steps = self.steps;
        BaselineResult {
            outcome: match run {
                Ok(()) => Outcome::Value(self.acc),
                Err(OutOfBudget) => Outcome::Timeout,
            },
            elapsed: self.start.elapsed(),
            branch_count: steps.min(self.budget.max_branches.unwrap_or(u64::MAX)),
        }
    }

    /// `perfect`: leaves with uncovered vertices count zero.
    fn matchings(&mut self, edges: &[(usize, usize)], alive: usize, perfect: bool) -> Result<(), OutOfBudget> {
        self.step()?;
        let Some(&(u, v)) = edges.first() else {
            if !perfect || alive == 0 {
                self.acc += 1u32;
            }
            return Ok(());
        };
        // The edge is in the matching: drop both endpoints.
        let rest: Edges = edges[1..]
            .iter()
            .copied()
            .filter(|&(a, b)| a != u && a != v && b != u && b != v)
            .collect();
        self.matchings(&rest, alive - 2, perfect)?;
        // The edge is not in the matching.
        self.matchings(&edges[1..], alive, perfect)
    }

    fn independent_sets(&mut self, edges: &[(usize, usize)], alive: usize) -> Result<(), OutOfBudget> {
        self.step()?;
        let Some(&(v, _)) = edges.first() else {
            self.acc += BigUint::one() << alive;
            return Ok(());
        };
        // Edges are sorted, so `v` is the lowest vertex with a neighbour.
        let closed: Vec<usize> = std::iter::once(v)
            .chain(edges.iter().filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            }))
            .collect();
        // v joins the set: its closed neighbourhood leaves the graph.
        let without_closed: Edges = edges
            .iter()
            .copied()
            .filter(|(a, b)| !closed.contains(a) && !closed.contains(b))
            .collect();
        self.independent_sets(&without_closed, alive - closed.len())?;
        // v stays out.
        let without_v: Edges = edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
        self.independent_sets(&without_v, alive - 1)
    }
}

pub fn baseline_pm(g: &Graph, budget: Budget) -> BaselineResult {
    let edges: Edges = g.edges().collect();
    let mut s = Search::new(budget);
    let run = s.matchings(&edges, g.n(), true);
    s.finish(run)
}

pub fn baseline_matchings(g: &Graph, budget: Budget) -> BaselineResult {
    let edges: Edges = g.edges().collect();
    let mut s = Search::new(budget);
    let run = s.matchings(&edges, g.n(), false);
    s.finish(run)
}

pub fn baseline_independent_sets(g: &Graph, budget: Budget) -> BaselineResult {
    let edges: Edges = g.edges().collect();
    let mut s = Search::new(budget);
    let run = s.independent_sets(&edges, g.n());
    s.finish(run)
}
