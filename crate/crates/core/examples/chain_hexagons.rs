// Kekulé structures of long hexagon chains by transfer-matrix powers.

use kekule::chain::{build_chain, build_transition, chain_pm_count_with, hexagon};
use kekule::count::count_perfect_matchings;
use kekule::decomposition::min_fill_nice;

fn run() -> String {
    let mut out = String::new();
    let readings = [
        ("kinked chain, R = {v5,v6}", hexagon::element()),
        ("linear chain, R = {v4,v5}", hexagon::opposite_edge_element()),
    ];
    for (name, element) in &readings {
        let ts = build_transition(element).expect("small element");
        out += &format!("{name}: {} states\n", ts.dim());
        for n in [1, 2, 3, 4, 5, 6] {
            let g = build_chain(element, n).unwrap();
            let dp = count_perfect_matchings(&g, &min_fill_nice(&g)).unwrap();
            let fast = chain_pm_count_with(&ts, n);
            out += &format!("  n={n:<3} transfer={:<4} dp={dp}\n", fast.value);
        }
        let long = chain_pm_count_with(&ts, 200);
        out += &format!("  n=200 {} ({} matrix products)\n", long.value, long.multiplications);
    }
    let ts = build_transition(&hexagon::element()).unwrap();
    for d in hexagon::relation_discrepancies(&ts) {
        out += &format!(
            "published relation for b[{}] is {}, derived under R = {{v5,v6}} is {}\n",
            d.state, d.published, d.derived
        );
    }
    out
}

fn main() {
    print!("{}", run());
}
