//! Batch front end: loading instances, running counters over them, the
//! treewidth histogram, and the DP-versus-baseline benchmark. Results are
//! long-format CSV rows, one per (instance, quantity, engine).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::baseline::{
    baseline_independent_sets, baseline_matchings, baseline_pm, BaselineResult, Budget, Outcome,
};
use crate::count::{count_with_stats, entropy, CountError, CountResult, Quantity};
use crate::decomposition::{make_nice, min_fill_nice, parse_td, validate, NiceDecomposition};
use crate::graph::{parse_edge_list, GrParseError, Graph};
use crate::smiles::{parse_corpus, parse_smiles, Reject, SmilesError};

pub const CSV_HEADER: [&str; 9] = [
    "id", "n", "m", "width", "quantity", "value", "millis", "engine", "status",
];

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Gr {
        path: PathBuf,
        #[source]
        source: GrParseError,
    },
    #[error("{path}: {message}")]
    Td { path: PathBuf, message: String },
    #[error("SMILES: {0}")]
    Smiles(#[from] SmilesError),
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{id}: DP and baseline disagree on {quantity} ({dp} vs {baseline})")]
    Disagreement {
        id: String,
        quantity: Quantity,
        dp: BigUint,
        baseline: BigUint,
    },
    #[error("{id}: {source}")]
    Count {
        id: String,
        #[source]
        source: CountError,
    },
}

#[derive(Debug, Error)]
pub enum CsvReadError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {0:?}")]
    Header(Vec<String>),
    #[error("record {record}: bad {field}")]
    Field { record: usize, field: &'static str },
}

/// One graph to process.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub graph: Graph,
    /// Used instead of a min-fill decomposition when present.
    pub decomposition: Option<NiceDecomposition>,
}

impl Instance {
    pub fn new(id: impl Into<String>, graph: Graph) -> Self {
        Instance {
            id: id.into(),
            graph,
            decomposition: None,
        }
    }

    pub fn nice(&self) -> NiceDecomposition {
        self.decomposition
            .clone()
            .unwrap_or_else(|| min_fill_nice(&self.graph))
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

pub fn instance_from_smiles(smiles: &str) -> Result<Instance, InputError> {
    Ok(Instance::new(smiles, parse_smiles(smiles)?.graph))
}

/// A `.gr` file, optionally with a `.td` decomposition that must be valid for it.
pub fn load_gr(gr: &Path, td: Option<&Path>) -> Result<Instance, InputError> {
    let graph = parse_edge_list(&read(gr)?).map_err(|source| InputError::Gr {
        path: gr.to_path_buf(),
        source,
    })?;
    let mut instance = Instance::new(stem(gr), graph);
    if let Some(td) = td {
        let td_error = |message: String| InputError::Td {
            path: td.to_path_buf(),
            message,
        };
        let (decomposition, n) = parse_td(&read(td)?).map_err(|e| td_error(e.to_string()))?;
        if n != instance.graph.n() {
            return Err(td_error(format!(
                "declares {n} vertices, graph has {}",
                instance.graph.n()
            )));
        }
        validate(&instance.graph, &decomposition).map_err(|v| td_error(v.to_string()))?;
        instance.decomposition = Some(make_nice(&decomposition).map_err(|e| td_error(e.to_string()))?);
    }
    Ok(instance)
}

/// Corpus lines become instances named after their NAME column, or `line<k>`.
pub fn load_smiles_corpus(path: &Path) -> Result<(Vec<Instance>, Vec<Reject>), InputError> {
    let corpus = parse_corpus(&read(path)?);
    let instances = corpus
        .molecules
        .into_iter()
        .map(|e| {
            let id = e.molecule.name.unwrap_or_else(|| format!("line{}", e.line));
            Instance::new(id, e.molecule.graph)
        })
        .collect();
    Ok((instances, corpus.rejects))
}

/// Every `.gr` file in a directory, sorted by file name.
pub fn load_gr_dir(dir: &Path) -> Result<Vec<Instance>, InputError> {
    let io_error = |source| InputError::Io {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io_error)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io_error)?;
    paths.retain(|p| p.extension().is_some_and(|x| x == "gr"));
    paths.sort();
    paths.iter().map(|p| load_gr(p, None)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Dp,
    Baseline,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Dp => "dp",
            Engine::Baseline => "baseline",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Timeout,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
        }
    }
}

/// One CSV row. Polynomials are spread over rows `mpoly_k` / `ipoly_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub width: i64,
    pub quantity: String,
    pub value: Option<BigUint>,
    pub millis: f64,
    pub engine: Engine,
    pub status: Status,
}

/// Writes records with [`CSV_HEADER`]. Without `timing` every `millis` cell is `0`,
/// which makes output independent of the machine and the scheduler.
pub fn write_csv<W: io::Write>(records: &[RunRecord], out: W, timing: bool) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let millis = if timing {
            format!("{:.3}", r.millis)
        } else {
            "0".to_string()
        };
        w.write_record([
            r.id.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.width.to_string(),
            r.quantity.clone(),
            r.value.as_ref().map(BigUint::to_string).unwrap_or_default(),
            millis,
            r.engine.as_str().to_string(),
            r.status.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[RunRecord], timing: bool) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf, timing).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<RunRecord>, CsvReadError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(CsvReadError::Header(header));
    }
    let mut out = Vec::new();
    for (i, row) in r.records().enumerate() {
        let row = row?;
        let bad = |field| CsvReadError::Field { record: i + 1, field };
        let num = |k: usize, field| row[k].parse::<usize>().map_err(|_| bad(field));
        out.push(RunRecord {
            id: row[0].to_string(),
            n: num(1, "n")?,
            m: num(2, "m")?,
            width: row[3].parse().map_err(|_| bad("width"))?,
            quantity: row[4].to_string(),
            value: match &row[5] {
                "" => None,
                v => Some(v.parse().map_err(|_| bad("value"))?),
            },
            millis: row[6].parse().map_err(|_| bad("millis"))?,
            engine: match &row[7] {
                "dp" => Engine::Dp,
                "baseline" => Engine::Baseline,
                _ => return Err(bad("engine")),
            },
            status: match &row[8] {
                "ok" => Status::Ok,
                "timeout" => Status::Timeout,
                _ => return Err(bad("status")),
            },
        });
    }
    Ok(out)
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
}

/// Maps `f` over `items` on `jobs` threads, keeping input order.
fn ordered_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    pool(jobs).install(|| items.par_iter().map(f).collect())
}

/// Counter output for one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CountOutcome {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub width: i64,
    pub results: Vec<(Quantity, CountResult, Duration)>,
}

impl CountOutcome {
    pub fn records(&self) -> Vec<RunRecord> {
        let row = |quantity: String, value: BigUint, ms: f64| RunRecord {
            id: self.id.clone(),
            n: self.n,
            m: self.m,
            width: self.width,
            quantity,
            value: Some(value),
            millis: ms,
            engine: Engine::Dp,
            status: Status::Ok,
        };
        let mut out = Vec::new();
        for (q, result, elapsed) in &self.results {
            match result {
                CountResult::Total(v) => out.push(row(q.key().to_string(), v.clone(), millis(*elapsed))),
                CountResult::Polynomial(p) => {
                    for (k, c) in p.coeffs().iter().enumerate() {
                        out.push(row(format!("{}_{k}", q.key()), c.clone(), millis(*elapsed)));
                    }
                }
            }
        }
        out
    }

    /// Human-readable summary; polynomials also get their entropy in bits.
    pub fn text(&self) -> String {
        let mut s = format!("{}: n={} m={} width={}\n", self.id, self.n, self.m, self.width);
        for (q, result, _) in &self.results {
            match result {
                CountResult::Total(v) => writeln!(s, "  {q} = {v}"),
                CountResult::Polynomial(p) => {
                    let h = entropy(p).map_or_else(|e| e.to_string(), |h| format!("{h:.6} bits"));
                    writeln!(s, "  {q} = {p}  entropy = {h}")
                }
            }
            .expect("writing to a String");
        }
        s
    }
}

pub fn count_instance(instance: &Instance, quantities: &[Quantity]) -> Result<CountOutcome, CountError> {
    let nd = instance.nice();
    let mut results = Vec::with_capacity(quantities.len());
    for &q in quantities {
        let start = Instant::now();
        let (value, _) = count_with_stats(&instance.graph, &nd, q)?;
        results.push((q, value, start.elapsed()));
    }
    Ok(CountOutcome {
        id: instance.id.clone(),
        n: instance.graph.n(),
        m: instance.graph.m(),
        width: nd.width(),
        results,
    })
}

pub fn cmd_count(
    instances: &[Instance],
    quantities: &[Quantity],
    jobs: usize,
) -> Result<Vec<CountOutcome>, BenchError> {
    ordered_map(instances, jobs, |i| {
        count_instance(i, quantities).map_err(|source| BenchError::Count {
            id: i.id.clone(),
            source,
        })
    })
    .into_iter()
    .collect()
}

/// Treewidth-bound histogram of a corpus, as found by min-fill.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StatsReport {
    pub histogram: BTreeMap<i64, usize>,
    pub accepted: usize,
    pub rejected: usize,
}

impl StatsReport {
    /// `width,count`, one row per width seen, ascending.
    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["width", "count"]).expect("writing to memory");
        for (width, count) in &self.histogram {
            w.write_record([width.to_string(), count.to_string()])
                .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("CSV is UTF-8")
    }
}

pub fn cmd_stats(instances: &[Instance], rejected: usize, jobs: usize) -> StatsReport {
    let widths = ordered_map(instances, jobs, |i| min_fill_nice(&i.graph).width());
    let mut histogram = BTreeMap::new();
    for w in widths {
        *histogram.entry(w).or_insert(0) += 1;
    }
    StatsReport {
        histogram,
        accepted: instances.len(),
        rejected,
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub seed: u64,
    /// Instances drawn per edge count; groups this small or smaller are kept whole.
    pub per_size: usize,
    pub budget: Budget,
    pub quantities: Vec<Quantity>,
    pub jobs: usize,
}

/// Quantities with a baseline to compare against.
pub const BENCH_QUANTITIES: [Quantity; 3] = [
    Quantity::PerfectMatchings,
    Quantity::Matchings,
    Quantity::IndependentSets,
];

/// Indices of the sampled instances, grouped by ascending edge count and in
/// input order within a group.
pub fn sample_by_edge_count(instances: &[Instance], per_size: usize, seed: u64) -> Vec<usize> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, inst) in instances.iter().enumerate() {
        groups.entry(inst.graph.m()).or_default().push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = Vec::new();
    for group in groups.values() {
        let mut chosen: Vec<usize> = if group.len() <= per_size {
            group.clone()
        } else {
            group.choose_multiple(&mut rng, per_size).copied().collect()
        };
        chosen.sort_unstable();
        picked.extend(chosen);
    }
    picked
}

fn run_baseline(q: Quantity, g: &Graph, budget: Budget) -> BaselineResult {
    match q {
        Quantity::PerfectMatchings => baseline_pm(g, budget),
        Quantity::Matchings => baseline_matchings(g, budget),
        Quantity::IndependentSets => baseline_independent_sets(g, budget),
        _ => panic!("no baseline for {q}"),
    }
}

fn bench_instance(instance: &Instance, config: &BenchConfig) -> Result<Vec<RunRecord>, BenchError> {
    let quantities: Vec<Quantity> = config
        .quantities
        .iter()
        .copied()
        .filter(|q| BENCH_QUANTITIES.contains(q))
        .collect();
    let outcome = count_instance(instance, &quantities).map_err(|source| BenchError::Count {
        id: instance.id.clone(),
        source,
    })?;
    let mut records = Vec::with_capacity(2 * quantities.len());
    for (dp, (q, result, _)) in outcome.records().into_iter().zip(&outcome.results) {
        let CountResult::Total(dp_value) = result else {
            unreachable!("bench quantities are totals")
        };
        let base = run_baseline(*q, &instance.graph, config.budget);
        if let Outcome::Value(v) = &base.outcome {
            if v != dp_value {
                return Err(BenchError::Disagreement {
                    id: instance.id.clone(),
                    quantity: *q,
                    dp: dp_value.clone(),
                    baseline: v.clone(),
                });
            }
        }
        let base_record = RunRecord {
            value: base.value().cloned(),
            millis: millis(base.elapsed),
            engine: Engine::Baseline,
            status: if base.timed_out() { Status::Timeout } else { Status::Ok },
            ..dp.clone()
        };
        records.push(dp);
        records.push(base_record);
    }
    Ok(records)
}

/// Runs DP and baseline on a seeded sample. Any value disagreement is an error.
pub fn cmd_bench(instances: &[Instance], config: &BenchConfig) -> Result<Vec<RunRecord>, BenchError> {
    let sample: Vec<&Instance> = sample_by_edge_count(instances, config.per_size, config.seed)
        .into_iter()
        .map(|i| &instances[i])
        .collect();
    let mut out = Vec::new();
    for rows in ordered_map(&sample, config.jobs, |i| bench_instance(i, config)) {
        out.extend(rows?);
    }
    Ok(out)
}

/// Mean wall time per (edge count, quantity, engine); timed-out runs count at their cut-off.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeSummary {
    pub m: usize,
    pub quantity: String,
    pub engine: Engine,
    pub runs: usize,
    pub timeouts: usize,
    pub mean_millis: f64,
}

pub fn summarize(records: &[RunRecord]) -> Vec<SizeSummary> {
    let mut groups: BTreeMap<(usize, String, &str), (Engine, usize, usize, f64)> = BTreeMap::new();
    for r in records {
        let e = groups
            .entry((r.m, r.quantity.clone(), r.engine.as_str()))
            .or_insert((r.engine, 0, 0, 0.0));
        e.1 += 1;
        e.2 += usize::from(r.status == Status::Timeout);
        e.3 += r.millis;
    }
    groups
        .into_iter()
        .map(|((m, quantity, _), (engine, runs, timeouts, total))| SizeSummary {
            m,
            quantity,
            engine,
            runs,
            timeouts,
            mean_millis: total / runs as f64,
        })
        .collect()
}
