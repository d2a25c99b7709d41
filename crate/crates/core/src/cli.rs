//! Command-line front end: `train`, `eval`, `search` and `export`.
//!
//! Settings resolve as flags, then an optional `key=value` file, then
//! defaults. Every `train` run writes a manifest in that same format, so
//! `--config manifest.txt` replays the run.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use log::info;
use sha2::{Digest, Sha256};

use crate::embedding::{EmbeddingTable, FormatError};
use crate::eval::classify::{read_label_file, resolve_labels};
use crate::eval::link::comparison_vectors;
use crate::eval::{
    align_embeddings, build_link_dataset, iteration_trace, link_predict, node_classify, ClassificationSet, EvalError,
    LinkDataset, PairFeature, TraceHook,
};
use crate::export::{pca_2d, write_coordinates};
use crate::graph::{Graph, GraphError};
use crate::hetero::MappingMatrices;
use crate::rng::{stream_rng, Stream};
use crate::search::{spread_search, spread_search_from};
use crate::trainer::{mode_for, Mode, Model, TrainConfig, TrainError, Trainer};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "spreadembed", version, about = "Node embeddings by spreading activation")]
pub struct Cli {
    /// Print progress (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train embeddings and write them with a manifest and likelihood trace.
    Train(TrainArgs),
    /// Score embeddings on link prediction or node classification, or
    /// record metrics over a fresh training run.
    Eval(EvalArgs),
    /// Print one activation order: one label per line, a blank line between
    /// frontiers and two before each new component.
    Search(SearchArgs),
    /// Write 2-D coordinates or a normalized edge list.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct GraphArgs {
    /// Edge list: `src dst [weight]` per line.
    #[arg(long)]
    pub edges: Option<PathBuf>,
    /// Node types: `label type_name` per line.
    #[arg(long)]
    pub types: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// `key=value` settings file, e.g. a previous run's manifest.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Embedding dimension [default: 128].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim: Option<u64>,
    /// Training iterations [default: 30].
    #[arg(long)]
    pub iters: Option<usize>,
    /// Embedding learning rate [default: 0.025].
    #[arg(long, value_parser = positive_rate)]
    pub lr: Option<f64>,
    /// Negatives per positive neighbor [default: 5].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub neg: Option<u64>,
    /// Run seed [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
    /// Mapping-matrix learning rate [default: lr / 10].
    #[arg(long, value_parser = non_negative_rate)]
    pub matrix_lr: Option<f64>,
    /// Keep mapping matrices at identity.
    #[arg(long)]
    pub freeze_matrices: bool,
    /// Update each frontier concurrently; output is not reproducible.
    #[arg(long)]
    pub parallel: bool,
}

fn positive_rate(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(_) => Err("must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn non_negative_rate(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        Ok(_) => Err("must be a non-negative finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Link,
    Classify,
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FeatureArg {
    Abs,
    Signed,
}

impl From<FeatureArg> for PairFeature {
    fn from(f: FeatureArg) -> Self {
        match f {
            FeatureArg::Abs => PairFeature::AbsDifference,
            FeatureArg::Signed => PairFeature::Difference,
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub task: Task,
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Embedding file (link and classify).
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// Mapping matrices; link prediction then compares benchmark vectors.
    #[arg(long)]
    pub matrices: Option<PathBuf>,
    /// Label file: `label category [category ...]` per line.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Categories kept for classification.
    #[arg(long, default_value_t = 15)]
    pub top: usize,
    /// Link-prediction pair feature.
    #[arg(long, value_enum, default_value_t = FeatureArg::Abs)]
    pub feature: FeatureArg,
    /// Read link pairs from this file instead of sampling them.
    #[arg(long)]
    pub pairs_in: Option<PathBuf>,
    /// Save the link pairs used.
    #[arg(long)]
    pub pairs_out: Option<PathBuf>,
    /// Report file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Label of the first source node.
    #[arg(long)]
    pub start: Option<String>,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// Project benchmark vectors instead of raw embeddings.
    #[arg(long)]
    pub matrices: Option<PathBuf>,
    /// `label,x,y` principal-component coordinates.
    #[arg(long)]
    pub coords: Option<PathBuf>,
    /// Edge list that reloads with the same node ids.
    #[arg(long)]
    pub edge_list: Option<PathBuf>,
    /// Node-type file matching `--edge-list`.
    #[arg(long)]
    pub type_list: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Graph { path: PathBuf, source: GraphError },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error("{}: {message}", path.display())]
    Config { path: PathBuf, message: String },
    #[error("{}: sha256 {actual} does not match recorded {expected}", path.display())]
    DigestMismatch {
        path: PathBuf,
        expected: String,
        actual: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses arguments, runs the command and maps the outcome to an exit code.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Train(a) => cmd_train(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Search(a) => cmd_search(a),
        Command::Export(a) => cmd_export(a),
    }
}

/// Exits with a usage error (status 2) naming the missing flag.
fn missing_flag(flag: &str, sub: &str) -> ! {
    let mut cmd = Cli::command();
    let sub = cmd.find_subcommand_mut(sub).expect("known subcommand").clone();
    let name = format!("spreadembed {}", sub.get_name());
    sub.bin_name(name)
        .error(
            clap::error::ErrorKind::MissingRequiredArgument,
            format!("the following required argument was not provided: --{flag}"),
        )
        .exit()
}

/// Settings after merging flags, config file and defaults.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub edges: Option<PathBuf>,
    pub types: Option<PathBuf>,
    pub train: TrainConfig,
    digests: BTreeMap<String, String>,
}

/// Keys a settings file may contain.
const CONFIG_KEYS: &[&str] = &[
    "edges",
    "types",
    "dim",
    "iters",
    "lr",
    "neg",
    "seed",
    "matrix_lr",
    "freeze_matrices",
    "parallel",
    "edges_sha256",
    "types_sha256",
];

/// Informational manifest keys that are accepted and ignored.
const MANIFEST_ONLY_KEYS: &[&str] = &["version", "mode", "deterministic", "embeddings", "matrices", "trace"];

/// Reads `key=value` lines; `#` starts a comment line.
pub fn read_key_values(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let bad = |message: String| CliError::Config {
            path: path.to_path_buf(),
            message: format!("line {}: {message}", i + 1),
        };
        let (k, v) = t.split_once('=').ok_or_else(|| bad("expected `key=value`".into()))?;
        let (k, v) = (k.trim(), v.trim());
        if !CONFIG_KEYS.contains(&k) && !MANIFEST_ONLY_KEYS.contains(&k) {
            return Err(bad(format!("unknown key `{k}`")));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(bad(format!("duplicate key `{k}`")));
        }
    }
    Ok(map)
}

pub fn resolve(graph: &GraphArgs, flags: &ConfigArgs) -> Result<Resolved, CliError> {
    let file = match &flags.config {
        Some(p) => read_key_values(p)?,
        None => BTreeMap::new(),
    };
    let config_path = flags.config.clone().unwrap_or_default();
    fn parse<T: std::str::FromStr>(
        file: &BTreeMap<String, String>,
        path: &Path,
        key: &str,
    ) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        file.get(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| CliError::Config {
                    path: path.to_path_buf(),
                    message: format!("`{key}={v}`: {e}"),
                })
            })
            .transpose()
    }
    let p = config_path.as_path();
    let d = TrainConfig::default();
    let train = TrainConfig {
        dimension: flags
            .dim
            .map(|v| v as usize)
            .or(parse(&file, p, "dim")?)
            .unwrap_or(d.dimension),
        negative: flags
            .neg
            .map(|v| v as usize)
            .or(parse(&file, p, "neg")?)
            .unwrap_or(d.negative),
        learning_rate: flags.lr.or(parse(&file, p, "lr")?).unwrap_or(d.learning_rate),
        max_iterations: flags.iters.or(parse(&file, p, "iters")?).unwrap_or(d.max_iterations),
        seed: flags.seed.or(parse(&file, p, "seed")?).unwrap_or(d.seed),
        matrix_learning_rate: flags.matrix_lr.or(parse(&file, p, "matrix_lr")?),
        freeze_matrices: flags.freeze_matrices || parse(&file, p, "freeze_matrices")?.unwrap_or(false),
        parallel: flags.parallel || parse(&file, p, "parallel")?.unwrap_or(false),
    };
    train.validate()?;
    let digests = file
        .iter()
        .filter(|(k, _)| k.ends_with("_sha256"))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Ok(Resolved {
        edges: graph.edges.clone().or_else(|| file.get("edges").map(PathBuf::from)),
        types: graph.types.clone().or_else(|| file.get("types").map(PathBuf::from)),
        train,
        digests,
    })
}

pub fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

impl Resolved {
    /// Hashes the inputs, checking them against digests from the settings
    /// file when present.
    fn input_digests(&self) -> Result<Vec<(&'static str, PathBuf, String)>, CliError> {
        let mut out = Vec::new();
        for (key, path) in [("edges", &self.edges), ("types", &self.types)] {
            let Some(path) = path else { continue };
            let actual = sha256_file(path)?;
            if let Some(expected) = self.digests.get(&format!("{key}_sha256")) {
                if *expected != actual {
                    return Err(CliError::DigestMismatch {
                        path: path.clone(),
                        expected: expected.clone(),
                        actual,
                    });
                }
            }
            out.push((key, path.clone(), actual));
        }
        Ok(out)
    }

    fn load_graph(&self, sub: &str) -> Result<Graph, CliError> {
        let Some(edges) = &self.edges else {
            missing_flag("edges", sub)
        };
        load_graph(edges, self.types.as_deref())
    }
}

fn load_graph(edges: &Path, types: Option<&Path>) -> Result<Graph, CliError> {
    Graph::from_paths(edges, types).map_err(|source| CliError::Graph {
        path: types
            .filter(|_| matches!(source, GraphError::MissingType(_) | GraphError::ConflictingType { .. }))
            .unwrap_or(edges)
            .to_path_buf(),
        source,
    })
}

/// Writes through a temporary sibling file and renames it into place, so
/// a failed command never leaves a truncated artifact under `path`.
pub fn write_artifact<F>(path: &Path, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<File>) -> Result<(), CliError>,
{
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.partial"));
    let mut w = BufWriter::new(File::create(&tmp).map_err(io_err(&tmp))?);
    let result = body(&mut w).and_then(|()| w.flush().map_err(io_err(&tmp)));
    drop(w);
    match result {
        Ok(()) => fs::rename(&tmp, path).map_err(io_err(path)),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(e)
        }
    }
}

fn absolute(path: &Path) -> PathBuf {
    fs::canonicalize(path).unwrap_or_else(|_| path.to_path_buf())
}

fn cmd_train(args: TrainArgs) -> Result<(), CliError> {
    let run = resolve(&args.graph, &args.config)?;
    if run.edges.is_none() {
        missing_flag("edges", "train");
    }
    let digests = run.input_digests()?;
    let g = run.load_graph("train")?;
    let mode = mode_for(&g);
    info!(
        "{} nodes, {} edges, {} type(s)",
        g.node_count(),
        g.edge_count(),
        g.type_count()
    );

    let mut trainer = Trainer::new(&g, run.train.clone(), mode)?;
    let mut likelihood = vec![trainer.likelihood()];
    while trainer.iteration() < run.train.max_iterations {
        trainer.step()?;
        likelihood.push(trainer.likelihood());
        info!("iteration {} likelihood {}", trainer.iteration(), trainer.likelihood());
    }
    let model = trainer.into_model();

    fs::create_dir_all(&args.out).map_err(io_err(&args.out))?;
    let out = |name: &str| args.out.join(name);
    write_artifact(&out("embeddings.txt"), |w| {
        model
            .embeddings
            .write_text(g.labels(), w)
            .map_err(io_err(&out("embeddings.txt")))
    })?;
    if let Some(m) = &model.matrices {
        write_artifact(&out("matrices.txt"), |w| {
            m.write_text(g.type_names(), w).map_err(io_err(&out("matrices.txt")))
        })?;
    }
    write_artifact(&out("trace.csv"), |w| {
        let p = out("trace.csv");
        writeln!(w, "iteration,likelihood").map_err(io_err(&p))?;
        for (i, l) in likelihood.iter().enumerate() {
            writeln!(w, "{i},{l}").map_err(io_err(&p))?;
        }
        Ok(())
    })?;

    let c = &run.train;
    let mut manifest: Vec<(&str, String)> = vec![("version", VERSION.to_string())];
    for (key, path, digest) in &digests {
        manifest.push((key, absolute(path).display().to_string()));
        manifest.push((
            if *key == "edges" {
                "edges_sha256"
            } else {
                "types_sha256"
            },
            digest.clone(),
        ));
    }
    manifest.extend([
        (
            "mode",
            if mode == Mode::Heterogeneous {
                "heterogeneous"
            } else {
                "homogeneous"
            }
            .to_string(),
        ),
        ("dim", c.dimension.to_string()),
        ("iters", c.max_iterations.to_string()),
        ("lr", c.learning_rate.to_string()),
        ("neg", c.negative.to_string()),
        ("seed", c.seed.to_string()),
        ("matrix_lr", c.matrix_rate().to_string()),
        ("freeze_matrices", c.freeze_matrices.to_string()),
        ("parallel", c.parallel.to_string()),
        ("deterministic", (!c.parallel).to_string()),
        ("embeddings", "embeddings.txt".to_string()),
    ]);
    if model.matrices.is_some() {
        manifest.push(("matrices", "matrices.txt".to_string()));
    }
    manifest.push(("trace", "trace.csv".to_string()));
    write_artifact(&out("manifest.txt"), |w| {
        for (k, v) in &manifest {
            writeln!(w, "{k}={v}").map_err(io_err(&out("manifest.txt")))?;
        }
        Ok(())
    })?;
    println!(
        "trained {} nodes for {} iterations; final likelihood {}",
        g.node_count(),
        c.max_iterations,
        likelihood.last().unwrap()
    );
    Ok(())
}

fn read_embeddings(path: &Path) -> Result<(Vec<String>, EmbeddingTable), CliError> {
    let f = File::open(path).map_err(io_err(path))?;
    EmbeddingTable::read_text(BufReader::new(f)).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads mapping matrices and orders them by the graph's type indices.
fn read_matrices(path: &Path, g: &Graph, dimension: usize) -> Result<MappingMatrices, CliError> {
    let f = File::open(path).map_err(io_err(path))?;
    let (names, maps) = MappingMatrices::read_text(BufReader::new(f)).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |message: String| CliError::Config {
        path: path.to_path_buf(),
        message,
    };
    if maps.dimension() != dimension {
        return Err(bad(format!(
            "matrices are {0}x{0} but embeddings have dimension {dimension}",
            maps.dimension()
        )));
    }
    let mut ordered = Vec::with_capacity(g.type_count());
    let mut missing = Vec::new();
    for t in g.type_names() {
        match names.iter().position(|n| n == t) {
            Some(i) => ordered.push(maps.matrix(i).to_vec()),
            None => missing.push(t.clone()),
        }
    }
    if !missing.is_empty() {
        return Err(bad(format!("no matrix for type(s): {}", missing.join(", "))));
    }
    Ok(MappingMatrices::from_matrices(ordered, dimension))
}

fn load_model(g: &Graph, embeddings: &Path, matrices: Option<&Path>) -> Result<Model, CliError> {
    let (labels, table) = read_embeddings(embeddings)?;
    let embeddings_aligned = align_embeddings(g, &labels, &table)?;
    let matrices = matrices
        .map(|m| read_matrices(m, g, embeddings_aligned.dimension()))
        .transpose()?;
    Ok(Model {
        embeddings: embeddings_aligned,
        matrices,
    })
}

fn classification_set(g: &Graph, labels: &Path, top: usize, seed: u64) -> Result<ClassificationSet, CliError> {
    let f = File::open(labels).map_err(io_err(labels))?;
    let entries = resolve_labels(g, read_label_file(BufReader::new(f))?)?;
    Ok(ClassificationSet::new(
        entries,
        top,
        &mut stream_rng(seed, Stream::Split, 0),
    ))
}

fn link_pairs(args: &EvalArgs, g: &Graph, seed: u64) -> Result<LinkDataset, CliError> {
    let data = match &args.pairs_in {
        Some(p) => {
            let f = File::open(p).map_err(io_err(p))?;
            LinkDataset::read_text(g, BufReader::new(f))?
        }
        None => build_link_dataset(g, &mut stream_rng(seed, Stream::LinkPairs, 0))?,
    };
    if let Some(p) = &args.pairs_out {
        write_artifact(p, |w| data.write_text(g, w).map_err(io_err(p)))?;
    }
    Ok(data)
}

fn cmd_eval(args: EvalArgs) -> Result<(), CliError> {
    let run = resolve(&args.graph, &args.config)?;
    if run.edges.is_none() {
        missing_flag("edges", "eval");
    }
    run.input_digests()?;
    let g = run.load_graph("eval")?;
    let seed = run.train.seed;
    let feature = PairFeature::from(args.feature);

    let mut report: Vec<(String, String)> = vec![("task".into(), format!("{:?}", args.task).to_lowercase())];
    match args.task {
        Task::Link => {
            let Some(emb) = &args.embeddings else {
                missing_flag("embeddings", "eval")
            };
            let model = load_model(&g, emb, args.matrices.as_deref())?;
            let data = link_pairs(&args, &g, seed)?;
            let acc = link_predict(&data, &comparison_vectors(&g, &model), feature)?;
            println!("link_accuracy {acc}");
            report.extend([
                ("feature".into(), format!("{:?}", args.feature).to_lowercase()),
                ("train_pairs".into(), data.train.len().to_string()),
                ("test_pairs".into(), data.test.len().to_string()),
                ("link_accuracy".into(), acc.to_string()),
            ]);
        }
        Task::Classify => {
            let Some(labels) = &args.labels else {
                missing_flag("labels", "eval")
            };
            let Some(emb) = &args.embeddings else {
                missing_flag("embeddings", "eval")
            };
            let model = load_model(&g, emb, None)?;
            let set = classification_set(&g, labels, args.top, seed)?;
            let score = node_classify(&set, &model.embeddings)?;
            println!("{} {}", score.name(), score.value());
            report.extend([
                ("categories".into(), set.categories.len().to_string()),
                ("train_nodes".into(), set.train.len().to_string()),
                ("test_nodes".into(), set.test.len().to_string()),
                (score.name().into(), score.value().to_string()),
            ]);
        }
        Task::Trace => {
            let data = link_pairs(&args, &g, seed)?;
            let set = args
                .labels
                .as_deref()
                .map(|l| classification_set(&g, l, args.top, seed))
                .transpose()?;
            let mut hooks = vec![TraceHook::Likelihood, TraceHook::LinkAccuracy(&data, feature)];
            if let Some(s) = &set {
                hooks.push(TraceHook::Classification(s));
            }
            let mut table = iteration_trace(&g, &run.train, mode_for(&g), &hooks)?;
            // The report covers trained iterations only.
            table.rows.remove(0);
            let mut buf = Vec::new();
            table.write_delimited(&mut buf).expect("in-memory write");
            print!("{}", String::from_utf8_lossy(&buf));
            if let Some(p) = &args.report {
                write_artifact(p, |w| w.write_all(&buf).map_err(io_err(p)))?;
            }
            return Ok(());
        }
    }
    report.push(("seed".into(), seed.to_string()));
    if let Some(p) = &args.report {
        write_artifact(p, |w| {
            for (k, v) in &report {
                writeln!(w, "{k}={v}").map_err(io_err(p))?;
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), CliError> {
    let Some(edges) = &args.graph.edges else {
        missing_flag("edges", "search")
    };
    let g = load_graph(edges, args.graph.types.as_deref())?;
    let mut rng = stream_rng(args.seed, Stream::Search, 0);
    let order = match &args.start {
        Some(label) => {
            let v = g
                .node_id(label)
                .map_err(|e| CliError::Invalid(format!("--start: {e}")))?;
            spread_search_from(&g, v, &mut rng)
        }
        None => spread_search(&g, &mut rng),
    };
    let mut text = String::new();
    for (i, frontier) in order.frontiers().enumerate() {
        if i > 0 {
            text.push('\n');
            // A second blank line marks a restart in a new component.
            if order.seeds().contains(&frontier[0]) {
                text.push('\n');
            }
        }
        for v in frontier {
            text.push_str(g.label(*v));
            text.push('\n');
        }
    }
    match &args.out {
        Some(p) => write_artifact(p, |w| w.write_all(text.as_bytes()).map_err(io_err(p))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_export(args: ExportArgs) -> Result<(), CliError> {
    let Some(edges) = &args.graph.edges else {
        missing_flag("edges", "export")
    };
    if args.coords.is_none() && args.edge_list.is_none() && args.type_list.is_none() {
        return Err(CliError::Invalid(
            "nothing to export; pass --coords, --edge-list or --type-list".into(),
        ));
    }
    let g = load_graph(edges, args.graph.types.as_deref())?;
    if let Some(p) = &args.coords {
        let Some(emb) = &args.embeddings else {
            missing_flag("embeddings", "export")
        };
        let model = load_model(&g, emb, args.matrices.as_deref())?;
        let coords = pca_2d(&comparison_vectors(&g, &model));
        write_artifact(p, |w| write_coordinates(g.labels(), &coords, w).map_err(io_err(p)))?;
    }
    if let Some(p) = &args.edge_list {
        write_artifact(p, |w| {
            g.write_edge_list(w).map_err(|source| CliError::Graph {
                path: p.clone(),
                source,
            })
        })?;
    }
    if let Some(p) = &args.type_list {
        write_artifact(p, |w| g.write_node_types(w).map_err(io_err(p)))?;
    }
    Ok(())
}
