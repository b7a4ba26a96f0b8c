use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use kekule::baseline::Budget;
use kekule::bench::{self, BenchConfig, CountOutcome, Instance, BENCH_QUANTITIES};
use kekule::chain::{self, hexagon};
use kekule::count::Quantity;

#[derive(Parser)]
#[command(name = "kekule", version, about = "Kekulé structures, Hosoya and Merrifield–Simmons indices over tree decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count structures of one molecule, graph, or corpus.
    Count(CountArgs),
    /// Histogram of min-fill widths over a SMILES corpus.
    Stats(StatsArgs),
    /// Compare the decomposition counters with the branching baselines.
    Bench(BenchArgs),
    /// Count perfect matchings of a chain graph by transfer matrices.
    Chain(ChainArgs),
}

#[derive(Args)]
struct Output {
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report 0 in the millis column so runs are byte-comparable.
    #[arg(long)]
    no_timing: bool,
    /// Worker threads; row order does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    smiles: Option<String>,
    /// PACE `.gr` graph.
    #[arg(long)]
    gr: Option<PathBuf>,
    /// SMILES corpus, one `SMILES<TAB>NAME` per line.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Directory of `.gr` files.
    #[arg(long)]
    gr_dir: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    source: Source,
    /// PACE `.td` decomposition for `--gr`, validated before use.
    #[arg(long, requires = "gr")]
    td: Option<PathBuf>,
    #[arg(long)]
    pm: bool,
    #[arg(long)]
    hosoya: bool,
    #[arg(long)]
    ms: bool,
    #[arg(long)]
    mpoly: bool,
    #[arg(long)]
    ipoly: bool,
    /// Every quantity; the default when none is named.
    #[arg(long)]
    all: bool,
    /// CSV rows instead of the text summary.
    #[arg(long)]
    csv: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    corpus: Vec<PathBuf>,
    #[arg(long)]
    gr_dir: Vec<PathBuf>,
    /// Seed for per-edge-count sampling.
    #[arg(long)]
    seed: u64,
    /// Instances sampled per edge count.
    #[arg(long, default_value_t = 5)]
    per_size: usize,
    /// Wall-clock budget per baseline run, in milliseconds.
    #[arg(long, default_value_t = 10_000)]
    budget_ms: u64,
    /// Recursion-node budget per baseline run; deterministic, unlike `--budget-ms`.
    #[arg(long)]
    max_branches: Option<u64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "element_source")]
struct ElementSource {
    /// Chain element file: `.gr` lines plus `f <l> <r>` boundary pairs.
    #[arg(long)]
    element: Option<PathBuf>,
    /// The built-in six-cycle element with L = {v1,v2}, R = {v5,v6}.
    #[arg(long)]
    hexagon: bool,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    source: ElementSource,
    /// Number of copies.
    #[arg(long)]
    length: usize,
    /// Also list b[1] and the transition rows.
    #[arg(long)]
    states: bool,
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn bench_failure(e: bench::BenchError) -> Failure {
    match e {
        bench::BenchError::Disagreement { .. } => Failure::Invariant(e.to_string()),
        bench::BenchError::Count { .. } => Failure::Input(e.to_string()),
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(text.as_bytes()))
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(input),
    }
}

fn load(source: &Source, td: Option<&PathBuf>) -> Result<Vec<Instance>, Failure> {
    if let Some(s) = &source.smiles {
        return Ok(vec![bench::instance_from_smiles(s).map_err(input)?]);
    }
    if let Some(gr) = &source.gr {
        return Ok(vec![bench::load_gr(gr, td.map(PathBuf::as_path)).map_err(input)?]);
    }
    if let Some(dir) = &source.gr_dir {
        return bench::load_gr_dir(dir).map_err(input);
    }
    let path = source.corpus.as_ref().expect("clap requires one source");
    let (instances, rejects) = bench::load_smiles_corpus(path).map_err(input)?;
    report_rejects(&rejects);
    Ok(instances)
}

fn report_rejects(rejects: &[kekule::smiles::Reject]) {
    for r in rejects {
        eprintln!("skipped line {}: {} ({})", r.line, r.text, r.error);
    }
}

fn count(args: CountArgs) -> Result<(), Failure> {
    let instances = load(&args.source, args.td.as_ref())?;
    let flags = [args.pm, args.hosoya, args.ms, args.mpoly, args.ipoly];
    let quantities: Vec<Quantity> = if args.all || !flags.contains(&true) {
        Quantity::ALL.to_vec()
    } else {
        Quantity::ALL.into_iter().zip(flags).filter(|(_, f)| *f).map(|(q, _)| q).collect()
    };
    let outcomes = bench::cmd_count(&instances, &quantities, args.output.jobs)
        .map_err(bench_failure)?;
    let text = if args.csv {
        let records: Vec<_> = outcomes.iter().flat_map(CountOutcome::records).collect();
        bench::csv_string(&records, !args.output.no_timing)
    } else {
        outcomes.iter().map(CountOutcome::text).collect()
    };
    emit(&args.output, &text)
}

fn stats(args: StatsArgs) -> Result<(), Failure> {
    let (instances, rejects) = bench::load_smiles_corpus(&args.corpus).map_err(input)?;
    report_rejects(&rejects);
    let report = bench::cmd_stats(&instances, rejects.len(), args.output.jobs);
    eprintln!("accepted {} molecules, rejected {}", report.accepted, report.rejected);
    emit(&args.output, &report.csv())
}

fn bench_cmd(args: BenchArgs) -> Result<(), Failure> {
    let mut instances = Vec::new();
    for path in &args.corpus {
        let (found, rejects) = bench::load_smiles_corpus(path).map_err(input)?;
        report_rejects(&rejects);
        instances.extend(found);
    }
    for dir in &args.gr_dir {
        instances.extend(bench::load_gr_dir(dir).map_err(input)?);
    }
    let config = BenchConfig {
        seed: args.seed,
        per_size: args.per_size,
        budget: Budget {
            time: Some(Duration::from_millis(args.budget_ms)),
            max_branches: args.max_branches,
        },
        quantities: BENCH_QUANTITIES.to_vec(),
        jobs: args.output.jobs,
    };
    let records = bench::cmd_bench(&instances, &config).map_err(bench_failure)?;
    for s in bench::summarize(&records) {
        eprintln!(
            "m={:<4} {:<7} {:<8} runs={:<3} timeouts={:<3} mean={:.3} ms",
            s.m,
            s.quantity,
            s.engine.as_str(),
            s.runs,
            s.timeouts,
            s.mean_millis
        );
    }
    emit(&args.output, &bench::csv_string(&records, !args.output.no_timing))
}

fn chain_cmd(args: ChainArgs) -> Result<(), Failure> {
    let element = match &args.source.element {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            chain::parse_chain_element(&text).map_err(input)?
        }
        None => hexagon::element(),
    };
    if args.length == 0 {
        return Err(Failure::Input(chain::ChainError::ZeroLength.to_string()));
    }
    let ts = chain::build_transition(&element).map_err(input)?;
    let result = chain::chain_pm_count_with(&ts, args.length);
    let mut text = format!(
        "length = {}\npm = {}\nmatrix multiplications = {}\n",
        args.length, result.value, result.multiplications
    );
    if args.states {
        let name = |i: usize| {
            let set = ts.state_set(i);
            if set.is_empty() {
                "{}".to_string()
            } else {
                format!("{{{}}}", set.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(","))
            }
        };
        for i in 0..ts.dim() {
            let row: Vec<String> = ts
                .matrix()
                .row(i)
                .iter()
                .map(|(j, c)| format!("{c}·{}", name(*j)))
                .collect();
            text.push_str(&format!("b1{} = {}  next: {}\n", name(i), ts.initial()[i], row.join(" + ")));
        }
    }
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Count(a) => count(a),
        Command::Stats(a) => stats(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Chain(a) => chain_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(m) => eprintln!("error: {m}"),
                Failure::Invariant(m) => eprintln!("internal invariant violated: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
