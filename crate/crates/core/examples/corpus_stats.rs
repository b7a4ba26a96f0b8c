// Width histogram and a seeded DP-versus-baseline run over the bundled corpus.

use std::path::Path;

use kekule::baseline::Budget;
use kekule::bench::{self, BenchConfig, BENCH_QUANTITIES};

fn run() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus.smi");
    let (instances, rejects) = bench::load_smiles_corpus(&path).expect("bundled corpus");
    let stats = bench::cmd_stats(&instances, rejects.len(), 4);
    let mut out = format!("{} molecules, {} rejected\n{}", stats.accepted, stats.rejected, stats.csv());

    let config = BenchConfig {
        seed: 42,
        per_size: 1,
        budget: Budget::branches(1_000_000),
        quantities: BENCH_QUANTITIES.to_vec(),
        jobs: 4,
    };
    let records = bench::cmd_bench(&instances, &config).expect("DP and baselines agree");
    out += "\nm     quantity engine    runs timeouts\n";
    for s in bench::summarize(&records).iter().filter(|s| s.m % 10 == 0) {
        out += &format!(
            "{:<5} {:<8} {:<9} {:<4} {}\n",
            s.m,
            s.quantity,
            s.engine.as_str(),
            s.runs,
            s.timeouts
        );
    }
    out
}

fn main() {
    print!("{}", run());
}
