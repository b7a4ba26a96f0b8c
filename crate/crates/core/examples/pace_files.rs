// Counting on a `.gr` graph with a hand-made `.td` decomposition.

use std::path::Path;

use kekule::bench::{count_instance, load_gr};
use kekule::count::Quantity;

fn run() -> String {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/fixtures");
    let supplied = load_gr(&dir.join("caffeine.gr"), Some(&dir.join("caffeine.td"))).expect("valid fixture");
    let heuristic = load_gr(&dir.join("caffeine.gr"), None).expect("valid fixture");
    let mut out = String::new();
    for (label, inst) in [("supplied decomposition", &supplied), ("min-fill", &heuristic)] {
        let outcome = count_instance(inst, &Quantity::ALL).expect("decomposition fits");
        out += &format!("[{label}]\n{}", outcome.text());
    }
    out
}

fn main() {
    print!("{}", run());
}
