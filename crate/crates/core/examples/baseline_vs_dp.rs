// Decomposition counting against plain branching on growing ladders.

use std::time::{Duration, Instant};

use kekule::baseline::{baseline_matchings, Budget};
use kekule::count::count_matchings;
use kekule::decomposition::min_fill_nice;
use kekule::graph::families;

fn run() -> String {
    let mut out = String::from("rungs  edges  Hosoya                dp (ms)  baseline (ms)  branches\n");
    for k in [4, 8, 12, 16, 20] {
        let g = families::ladder(k);
        let start = Instant::now();
        let dp = count_matchings(&g, &min_fill_nice(&g)).unwrap();
        let dp_ms = start.elapsed().as_secs_f64() * 1e3;
        let base = baseline_matchings(&g, Budget::time(Duration::from_millis(500)));
        let base_ms = match base.value() {
            Some(v) => {
                assert_eq!(*v, dp);
                format!("{:.3}", base.elapsed.as_secs_f64() * 1e3)
            }
            None => "timeout".to_string(),
        };
        out += &format!(
            "{k:<6} {:<6} {dp:<21} {dp_ms:<8.3} {base_ms:<14} {}\n",
            g.m(),
            base.branch_count
        );
    }
    out
}

fn main() {
    print!("{}", run());
}
