// Building, checking and serialising decompositions of a 3×5 grid.

use kekule::count::count_matchings;
use kekule::decomposition::{
    bfs_order, decomposition_from_order, emit_td, make_nice, min_degree_order, min_fill_order,
    path_decomposition_from_order, validate,
};
use kekule::graph::families;

fn run() -> String {
    let g = families::grid(3, 5);
    let mut out = format!("grid 3x5: n={} m={}\n", g.n(), g.m());
    let candidates = [
        ("min-fill tree", decomposition_from_order(&g, &min_fill_order(&g))),
        ("min-degree tree", decomposition_from_order(&g, &min_degree_order(&g))),
        ("BFS path", path_decomposition_from_order(&g, &bfs_order(&g))),
    ];
    for (name, td) in &candidates {
        validate(&g, td).expect("heuristic decompositions are valid");
        let nice = make_nice(td).expect("valid decomposition");
        out += &format!(
            "{name:<16} bags={:<3} width={} nice nodes={:<4} joins={:<3} Hosoya={}\n",
            td.len(),
            td.width(),
            nice.len(),
            nice.join_count(),
            count_matchings(&g, &nice).unwrap()
        );
    }
    out += "\nBFS path decomposition in PACE .td format:\n";
    out += &emit_td(&candidates[2].1, g.n());
    out
}

fn main() {
    print!("{}", run());
}
