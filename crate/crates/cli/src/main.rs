//! `htec` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse or I/O error,
//! 3 disconnected input, 4 no convergence.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use htec::{
    capacity_convergence, check_weak_primitivity, generate_sunflower, htec, join_results,
    parse_hyperedge_list, parse_simplex_format, random_connected, scatter_export, stats,
    th_centrality, topk_curve, BaselineConfigF64, Hypergraph, LogExpMode, MappingModelF64,
    ParseOptions, ResultFile, Side, SolverConfigF64, TopkMode,
};

#[derive(Parser, Debug)]
#[command(name = "htec", version, about = "Two-steps eigenvector centrality for hypergraph nodes and hyperedges")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Input format
    #[arg(long, value_enum, default_value_t = InputFormat::Edgelist, global = true)]
    format: InputFormat,

    /// Keep only the largest connected component of the input
    #[arg(long, global = true)]
    largest_component: bool,

    /// Drop exact-duplicate hyperedges while reading
    #[arg(long, global = true)]
    dedupe_edges: bool,

    /// Convergence tolerance (default 1e-10 for compute, 1e-8 for baseline)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Iteration cap
    #[arg(long, default_value_t = 1000, global = true)]
    max_iter: usize,

    /// Output file (a directory for `compare`); stdout when omitted
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Output format; inferred from the --output extension when omitted
    #[arg(long, value_enum, global = true)]
    output_format: Option<OutputFormat>,

    /// Seed for randomized generators
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the two-steps eigenvector centrality
    Compute {
        /// Edge-list file, or for simplex input a directory or the nverts,
        /// simplices and optional labels files
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Compute a baseline node-edge centrality
    Baseline {
        #[arg(long, value_enum)]
        model: Model,
        /// Exponent of the max model's p-mean
        #[arg(long, default_value_t = 10.0)]
        p: f64,
        /// How the logexp model aggregates member scores
        #[arg(long, value_enum, default_value_t = LogExpArg::Geometric)]
        logexp_mode: LogExpArg,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Compare result files: scatter and top-k correlation CSVs for nodes and hyperedges
    Compare {
        /// Result files (JSON or CSV); the first is the reference
        #[arg(required = true, num_args = 2..)]
        results: Vec<PathBuf>,
        /// Comma-separated top-k sizes (default: 2, 5, 10, 20, 50, ... and the full size)
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value_t = TopkArg::Reference)]
        topk_mode: TopkArg,
    },
    /// Write a sunflower hypergraph with the given hyperedge sizes as an edge list
    Sunflower {
        #[arg(required = true)]
        sizes: Vec<usize>,
    },
    /// Write a random connected hypergraph as an edge list
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 2)]
        min_size: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Dataset statistics as JSON
    Stats {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Weak irreducibility and primitivity report as JSON
    Check {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Distance between normalized capacities and the centrality, as CSV t,gap
    Capacity {
        #[arg(long, default_value_t = 50)]
        t_max: usize,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputFormat {
    Edgelist,
    Simplex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Model {
    Linear,
    Max,
    Logexp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LogExpArg {
    Geometric,
    Product,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TopkArg {
    Reference,
    Union,
}

/// Command-line misuse detected after argument parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = exit_code(&err);
            if code == 3 {
                eprintln!("hint: pass --largest-component to analyse the largest connected part");
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 1;
        }
        if let Some(e) = cause.downcast_ref::<htec::Error>() {
            return match e {
                htec::Error::NotConnected { .. } => 3,
                htec::Error::NoConvergence { .. } => 4,
                htec::Error::InvalidArgument(_) => 1,
                _ => 2,
            };
        }
        if cause.is::<std::io::Error>() {
            return 2;
        }
    }
    2
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    if let Some(tol) = g.tol {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(usage(format!("--tol must be positive, got {tol}")));
        }
    }
    if g.max_iter == 0 {
        return Err(usage("--max-iter must be at least 1"));
    }
    match &cli.command {
        Command::Compute { inputs } => {
            let h = load(g, inputs)?;
            let cfg = SolverConfigF64::default()
                .with_tol(g.tol.unwrap_or(1e-10))
                .with_max_iter(g.max_iter);
            let r = htec(&h, &cfg)?;
            write_result(g, &ResultFile::from_htec(&h, &r))
        }
        Command::Baseline { model, p, logexp_mode, inputs } => {
            let model = match model {
                Model::Linear => MappingModelF64::Linear,
                Model::Max => MappingModelF64::Max { p: *p },
                Model::Logexp => MappingModelF64::LogExp {
                    mode: match logexp_mode {
                        LogExpArg::Geometric => LogExpMode::Geometric,
                        LogExpArg::Product => LogExpMode::Product,
                    },
                },
            };
            let h = load(g, inputs)?;
            let cfg = BaselineConfigF64 {
                tol: g.tol.unwrap_or(1e-8),
                max_iter: g.max_iter,
            };
            let r = th_centrality(&h, model, &cfg)?;
            write_result(g, &ResultFile::from_baseline(&h, &r))
        }
        Command::Compare { results, ks, topk_mode } => compare(g, results, ks.as_deref(), *topk_mode),
        Command::Sunflower { sizes } => {
            let h = generate_sunflower(sizes)?;
            emit(g, &h.to_edge_list()?)
        }
        Command::Random { nodes, edges, min_size, max_size } => {
            let h = random_connected(*nodes, *edges, *min_size, *max_size, g.seed)?;
            emit(g, &h.to_edge_list()?)
        }
        Command::Stats { inputs } => {
            let h = load(g, inputs)?;
            emit(g, &json(&stats(&h)?)?)
        }
        Command::Check { inputs } => {
            let h = load(g, inputs)?;
            emit(g, &json(&check_weak_primitivity(&h.bipartite()))?)
        }
        Command::Capacity { t_max, inputs } => {
            let h = load(g, inputs)?;
            let cfg = SolverConfigF64::default()
                .with_tol(g.tol.unwrap_or(1e-13))
                .with_max_iter(g.max_iter);
            let gaps = capacity_convergence(&h.bipartite(), *t_max, &cfg)?;
            let mut out = String::from("t,gap\n");
            for (t, gap) in gaps.iter().enumerate() {
                out.push_str(&format!("{t},{gap}\n"));
            }
            emit(g, &out)
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Finds the single file in `dir` whose name contains `needle`.
fn find_in_dir(dir: &Path, needle: &str) -> Result<Option<PathBuf>> {
    let mut hits = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("listing {}", dir.display()))? {
        let path = entry?.path();
        let matches = path
            .file_name()
            .and_then(|n| n.to_str())
            .is_some_and(|n| n.to_ascii_lowercase().contains(needle));
        if path.is_file() && matches {
            hits.push(path);
        }
    }
    hits.sort();
    match hits.len() {
        0 | 1 => Ok(hits.pop()),
        _ => Err(usage(format!(
            "{} holds several *{needle}* files; pass the files explicitly",
            dir.display()
        ))),
    }
}

fn load(g: &GlobalOpts, inputs: &[PathBuf]) -> Result<Hypergraph> {
    let opts = ParseOptions { dedupe_edges: g.dedupe_edges };
    let h = match g.format {
        InputFormat::Edgelist => {
            let [path] = inputs else {
                return Err(usage("edgelist input takes exactly one file"));
            };
            let parsed = parse_hyperedge_list(&read(path)?, opts)
                .with_context(|| format!("parsing {}", path.display()))?;
            if parsed.duplicate_labels > 0 {
                eprintln!("warning: {} repeated labels within hyperedges ignored", parsed.duplicate_labels);
            }
            if parsed.duplicate_edges_removed > 0 {
                eprintln!("note: {} duplicate hyperedges removed", parsed.duplicate_edges_removed);
            }
            parsed.hypergraph
        }
        InputFormat::Simplex => {
            let (nverts, simplices, labels) = match inputs {
                [dir] if dir.is_dir() => {
                    let nverts = find_in_dir(dir, "nverts")?
                        .ok_or_else(|| usage(format!("no *nverts* file in {}", dir.display())))?;
                    let simplices = find_in_dir(dir, "simplices")?
                        .ok_or_else(|| usage(format!("no *simplices* file in {}", dir.display())))?;
                    (nverts, simplices, find_in_dir(dir, "label")?)
                }
                [a, b] => (a.clone(), b.clone(), None),
                [a, b, c] => (a.clone(), b.clone(), Some(c.clone())),
                _ => {
                    return Err(usage(
                        "simplex input takes a directory or the nverts, simplices and optional labels files",
                    ))
                }
            };
            let labels = labels.as_deref().map(read).transpose()?;
            parse_simplex_format(&read(&nverts)?, &read(&simplices)?, labels.as_deref(), opts)
                .with_context(|| format!("parsing {} / {}", nverts.display(), simplices.display()))?
        }
    };
    Ok(if g.largest_component { h.largest_component() } else { h })
}

fn output_format(g: &GlobalOpts) -> OutputFormat {
    g.output_format.unwrap_or_else(|| match &g.output {
        Some(p) if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => OutputFormat::Csv,
        _ => OutputFormat::Json,
    })
}

fn emit(g: &GlobalOpts, text: &str) -> Result<()> {
    match &g.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_result(g: &GlobalOpts, r: &ResultFile) -> Result<()> {
    let text = match output_format(g) {
        OutputFormat::Json => {
            let mut s = r.to_json();
            s.push('\n');
            s
        }
        OutputFormat::Csv => r.to_csv(),
    };
    emit(g, &text)
}

fn read_result(path: &Path) -> Result<ResultFile> {
    let text = read(path)?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let parsed = if is_csv {
        let method = path.file_stem().and_then(|s| s.to_str()).unwrap_or("result");
        ResultFile::from_csv(&text, method)
    } else {
        ResultFile::from_json(&text)
    };
    parsed.with_context(|| format!("reading result file {}", path.display()))
}

/// Default top-k grid: 2, 5, 10, 20, 50, ... below `n`, then `n` itself.
fn default_ks(n: usize) -> Vec<usize> {
    let mut ks = Vec::new();
    let mut base = 1;
    'grid: loop {
        for m in [2, 5, 10] {
            let k = m * base;
            if k >= n {
                break 'grid;
            }
            ks.push(k);
        }
        base *= 10;
    }
    if n >= 2 {
        ks.push(n);
    }
    ks.dedup();
    ks
}

fn compare(g: &GlobalOpts, paths: &[PathBuf], ks: Option<&[usize]>, mode: TopkArg) -> Result<()> {
    let dir = g
        .output
        .as_ref()
        .ok_or_else(|| usage("compare needs --output <directory>"))?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;

    let mut files: Vec<(String, ResultFile)> = Vec::new();
    for path in paths {
        let r = read_result(path)?;
        let mut name = r.method.clone();
        let mut n = 2;
        while files.iter().any(|(existing, _)| *existing == name) {
            name = format!("{}_{n}", r.method);
            n += 1;
        }
        files.push((name, r));
    }
    let mode = match mode {
        TopkArg::Reference => TopkMode::Reference,
        TopkArg::Union => TopkMode::Union,
    };
    let reference = files[0].0.clone();
    for (side, tag) in [(Side::Nodes, "nodes"), (Side::Edges, "edges")] {
        let table = join_results(&files, side)?;
        if table.len() < 2 {
            eprintln!("note: fewer than two {tag}; skipping {tag} curves");
        }
        let grid = match ks {
            Some(ks) => {
                if let Some(bad) = ks.iter().find(|&&k| k < 2) {
                    return Err(usage(format!("--ks entries must be at least 2, got {bad}")));
                }
                let kept: Vec<usize> = ks.iter().copied().filter(|&k| k <= table.len()).collect();
                if kept.len() < ks.len() {
                    eprintln!("note: {tag}: dropping k above {}", table.len());
                }
                kept
            }
            None => default_ks(table.len()),
        };
        for (other, _) in &files[1..] {
            let stem = format!("{tag}_{reference}_vs_{other}");
            let scatter = scatter_export(&table, &reference, other)?;
            fs::write(dir.join(format!("{stem}_scatter.csv")), scatter)?;
            if table.len() >= 2 && !grid.is_empty() {
                let curve = topk_curve(&table, &reference, other, &grid, mode)
                    .with_context(|| format!("{tag} top-k curve"))?;
                fs::write(dir.join(format!("{stem}_topk.csv")), curve.to_csv())?;
            }
        }
    }
    Ok(())
}
