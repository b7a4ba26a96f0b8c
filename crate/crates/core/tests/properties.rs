use std::collections::BTreeSet;

use kekule::baseline::{baseline_independent_sets, baseline_matchings, baseline_pm, Budget};
use kekule::chain::{build_chain, chain_pm_count, ChainElement};
use kekule::count::{
    count_independent_sets, count_matchings, count_perfect_matchings, count_with_stats,
    independence_polynomial, matching_polynomial, Quantity,
};
use kekule::decomposition::{
    decomposition_from_order, make_nice, min_degree_order, min_fill_order,
    path_decomposition_from_order, validate, EliminationOrder, NiceDecomposition, NodeKind,
};
use kekule::graph::Graph;
use kekule::oracle::oracle_counts;
use kekule::SizePolynomial;
use num_bigint::BigUint;
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn graph_with_order(max_n: usize) -> impl Strategy<Value = (Graph, EliminationOrder)> {
    graphs(max_n).prop_flat_map(|g| {
        let n = g.n();
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(move |ord| (g.clone(), EliminationOrder::new(ord, n).unwrap()))
    })
}

fn nice_tree(g: &Graph, ord: &EliminationOrder) -> NiceDecomposition {
    make_nice(&decomposition_from_order(g, ord)).unwrap()
}

fn nice_path(g: &Graph, ord: &EliminationOrder) -> NiceDecomposition {
    make_nice(&path_decomposition_from_order(g, ord)).unwrap()
}

/// Vertices appearing in the subtree of each node.
fn subtree_vertices(nd: &NiceDecomposition) -> Vec<BTreeSet<usize>> {
    let mut out: Vec<BTreeSet<usize>> = Vec::with_capacity(nd.len());
    for node in nd.nodes() {
        let mut set: BTreeSet<usize> = node.bag.iter().copied().collect();
        for &c in &node.children {
            set.extend(out[c].iter().copied());
        }
        out.push(set);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dp_matches_oracle((g, ord) in graph_with_order(9)) {
        let oracle = oracle_counts(&g).unwrap();
        for nd in [nice_tree(&g, &min_fill_order(&g)), nice_path(&g, &ord), nice_tree(&g, &ord)] {
            prop_assert_eq!(&count_perfect_matchings(&g, &nd).unwrap(), &oracle.perfect_matchings);
            prop_assert_eq!(count_matchings(&g, &nd).unwrap(), oracle.hosoya());
            prop_assert_eq!(count_independent_sets(&g, &nd).unwrap(), oracle.merrifield_simmons());
            prop_assert_eq!(&matching_polynomial(&g, &nd).unwrap(), &oracle.matching_poly);
            prop_assert_eq!(&independence_polynomial(&g, &nd).unwrap(), &oracle.independence_poly);
        }
    }

    #[test]
    fn decompositions_agree((g, ord) in graph_with_order(14)) {
        let decompositions = [
            nice_tree(&g, &min_fill_order(&g)),
            nice_tree(&g, &min_degree_order(&g)),
            nice_path(&g, &ord),
        ];
        let first = &decompositions[0];
        for nd in &decompositions[1..] {
            for q in Quantity::ALL {
                prop_assert_eq!(
                    count_with_stats(&g, first, q).unwrap().0,
                    count_with_stats(&g, nd, q).unwrap().0
                );
            }
        }
    }

    #[test]
    fn any_order_gives_a_valid_decomposition((g, ord) in graph_with_order(16)) {
        for td in [decomposition_from_order(&g, &ord), path_decomposition_from_order(&g, &ord)] {
            prop_assert!(validate(&g, &td).is_ok());
            let nd = make_nice(&td).unwrap();
            prop_assert_eq!(nd.width(), td.width());
            prop_assert!(nd.check_structure().is_ok());
            prop_assert!(nd.check_against(&g).is_ok());
        }
    }

    #[test]
    fn introduced_vertices_only_see_the_child_bag((g, ord) in graph_with_order(14)) {
        for nd in [nice_tree(&g, &ord), nice_path(&g, &ord)] {
            let below = subtree_vertices(&nd);
            for (i, node) in nd.nodes().iter().enumerate() {
                if let NodeKind::Introduce(v) = node.kind {
                    let child = &nd.node(node.children[0]).bag;
                    for &u in g.neighbors(v).unwrap() {
                        if below[i].contains(&u) {
                            prop_assert!(child.contains(&u), "neighbour {} of {} outside child bag", u, v);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn join_sides_are_separated_by_the_bag((g, ord) in graph_with_order(14)) {
        let nd = nice_tree(&g, &ord);
        let below = subtree_vertices(&nd);
        for node in nd.nodes() {
            if node.kind == NodeKind::Join {
                let bag: BTreeSet<usize> = node.bag.iter().copied().collect();
                let left: Vec<usize> = below[node.children[0]].difference(&bag).copied().collect();
                let right: BTreeSet<usize> = below[node.children[1]].difference(&bag).copied().collect();
                for &u in &left {
                    for &v in g.neighbors(u).unwrap() {
                        prop_assert!(!right.contains(&v));
                    }
                }
            }
        }
    }

    #[test]
    fn path_bags_form_intervals((g, ord) in graph_with_order(16)) {
        let td = path_decomposition_from_order(&g, &ord);
        prop_assert!(td.is_path());
        // Bag i hangs below bag i + 1, so bag indices run along the path.
        for v in 0..g.n() {
            let hits: Vec<usize> = (0..td.len()).filter(|&t| td.bag(t).contains(&v)).collect();
            prop_assert!(!hits.is_empty());
            prop_assert_eq!(hits.last().unwrap() - hits[0] + 1, hits.len());
        }
    }

    #[test]
    fn polynomial_identities(g in graphs(14)) {
        let nd = nice_tree(&g, &min_fill_order(&g));
        let mp = matching_polynomial(&g, &nd).unwrap();
        let ip = independence_polynomial(&g, &nd).unwrap();
        prop_assert_eq!(mp.coeff(0), BigUint::from(1u32));
        prop_assert_eq!(ip.coeff(0), BigUint::from(1u32));
        prop_assert_eq!(mp.total(), count_matchings(&g, &nd).unwrap());
        prop_assert_eq!(ip.total(), count_independent_sets(&g, &nd).unwrap());
        let pm = count_perfect_matchings(&g, &nd).unwrap();
        if g.n() % 2 == 0 {
            prop_assert_eq!(pm, mp.coeff(g.n() / 2));
        } else {
            prop_assert_eq!(pm, BigUint::from(0u32));
        }
    }

    #[test]
    fn edge_deletion_is_monotone(g in graphs(12), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.m() > 0);
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let (u, v) = edges[pick.index(edges.len())];
        let h = g.without_edge(u, v);
        let ng = nice_tree(&g, &min_fill_order(&g));
        let nh = nice_tree(&h, &min_fill_order(&h));
        prop_assert!(count_independent_sets(&h, &nh).unwrap() >= count_independent_sets(&g, &ng).unwrap());
        prop_assert!(count_matchings(&h, &nh).unwrap() <= count_matchings(&g, &ng).unwrap());
    }

    #[test]
    fn disjoint_unions_multiply(g in graphs(8), h in graphs(8)) {
        let u = g.disjoint_union(&h);
        let nd = |x: &Graph| nice_tree(x, &min_fill_order(x));
        let (ng, nh, nu) = (nd(&g), nd(&h), nd(&u));
        prop_assert_eq!(
            count_perfect_matchings(&u, &nu).unwrap(),
            count_perfect_matchings(&g, &ng).unwrap() * count_perfect_matchings(&h, &nh).unwrap()
        );
        prop_assert_eq!(
            count_independent_sets(&u, &nu).unwrap(),
            count_independent_sets(&g, &ng).unwrap() * count_independent_sets(&h, &nh).unwrap()
        );
        prop_assert_eq!(
            matching_polynomial(&u, &nu).unwrap(),
            SizePolynomial::convolve(&matching_polynomial(&g, &ng).unwrap(), &matching_polynomial(&h, &nh).unwrap())
        );
        prop_assert_eq!(
            independence_polynomial(&u, &nu).unwrap(),
            SizePolynomial::convolve(&independence_polynomial(&g, &ng).unwrap(), &independence_polynomial(&h, &nh).unwrap())
        );
    }

    #[test]
    fn join_work_is_bounded((g, ord) in graph_with_order(16)) {
        let nd = nice_tree(&g, &ord);
        let bound: u64 = nd
            .nodes()
            .iter()
            .filter(|n| n.kind == NodeKind::Join)
            .map(|n| 3u64.pow(n.bag.len() as u32))
            .sum();
        let (_, stats) = count_with_stats(&g, &nd, Quantity::Matchings).unwrap();
        prop_assert_eq!(stats.join_nodes, nd.join_count());
        prop_assert!(stats.join_products <= bound);

        let path = nice_path(&g, &ord);
        for q in Quantity::ALL {
            let (_, stats) = count_with_stats(&g, &path, q).unwrap();
            prop_assert_eq!(stats.join_nodes, 0);
            prop_assert_eq!(stats.join_products, 0);
        }
    }

    #[test]
    fn baselines_agree_with_dp(g in graphs(9)) {
        prop_assume!(g.m() <= 16);
        let nd = nice_tree(&g, &min_fill_order(&g));
        let bound = 1u64 << (g.m() + 1);
        let u = Budget::unlimited();
        let runs = [
            (baseline_pm(&g, u), count_perfect_matchings(&g, &nd).unwrap()),
            (baseline_matchings(&g, u), count_matchings(&g, &nd).unwrap()),
            (baseline_independent_sets(&g, u), count_independent_sets(&g, &nd).unwrap()),
        ];
        for (base, dp) in runs {
            prop_assert_eq!(base.value(), Some(&dp));
            prop_assert!(base.branch_count <= bound);
        }
    }
}

/// A chain element whose boundaries carry the same induced graph by construction.
fn chain_elements() -> impl Strategy<Value = ChainElement> {
    (1usize..=2, 0usize..=3).prop_flat_map(|(b, inner)| {
        let n = 2 * b + inner;
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(0.5), pairs).prop_map(move |bits| {
            // Vertices 0..b are L, b..2b are R, the rest are interior.
            let side = |v: usize| if v < b { Some((0, v)) } else if v < 2 * b { Some((1, v - b)) } else { None };
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    let keep = match (side(u), side(v)) {
                        (Some((0, i)), Some((0, j))) => bits[i * b + j],
                        (Some((1, i)), Some((1, j))) => bits[i * b + j],
                        _ => bits[k],
                    };
                    if keep {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            ChainElement::new(g, (0..b).collect(), (b..2 * b).collect()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_counts_match_dp(e in chain_elements()) {
        for n in 1..=5 {
            let g = build_chain(&e, n).unwrap();
            prop_assert_eq!(g.n(), n * e.graph().n() - (n - 1) * e.left().len());
            let dp = count_perfect_matchings(&g, &nice_tree(&g, &min_fill_order(&g))).unwrap();
            let fast = chain_pm_count(&e, n).unwrap();
            prop_assert_eq!(fast.value, dp);
            prop_assert!(fast.multiplications <= 2 * (n as f64).log2().ceil() as u32);
        }
    }
}
