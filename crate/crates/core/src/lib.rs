//! Exact counting of Kekulé structures (perfect matchings), Hosoya and
//! Merrifield–Simmons indices, and matching/independence polynomials of
//! molecular graphs, by dynamic programming over nice tree decompositions.
//!
//! The usual pipeline is
//! [`smiles::parse_smiles`] → [`decomposition::min_fill_nice`] →
//! [`count::run_all`]. Exhaustive references live in [`oracle`] and the
//! naive branching algorithms in [`baseline`]; [`chain`] counts perfect
//! matchings of long periodic chains with a transfer matrix.

pub mod baseline;
pub mod bench;
pub mod chain;
pub mod count;
pub mod decomposition;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod smiles;

pub use count::{
    count_independent_sets, count_matchings, count_perfect_matchings, entropy,
    independence_polynomial, matching_polynomial, run_all, Quantity, Report,
};
pub use decomposition::{make_nice, NiceDecomposition, TreeDecomposition};
pub use graph::{parse_edge_list, Graph};
pub use poly::SizePolynomial;
pub use smiles::{parse_smiles, Molecule};
