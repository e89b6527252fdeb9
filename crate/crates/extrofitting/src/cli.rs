//! Command-line frontend: `extrofit`, `retrofit`, `eval` and `neighbors`
//! subcommands over the library pipeline.
//!
//! Machine-readable results go to standard output; diagnostics and the run
//! manifest go to standard error. Exit codes: 0 success, 1 runtime error,
//! 2 flag misuse.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::embedding::{
    load_text_embeddings, open_text, save_text_embeddings, EmbeddingMatrix, LoadOptions,
    Precision, TextLoad,
};
use crate::error::Result;
use crate::eval::{evaluate, load_dataset, nearest_neighbors, DatasetFormat, DatasetOptions};
use crate::extrofit::{extrofit, ExtrofitConfig};
use crate::lda::Weighting;
use crate::lexicon::{build_classes, load_lexicon, LexiconLoad, LexiconOptions};
use crate::manifest::RunManifest;
use crate::retrofit::{retrofit, BetaMode, RetrofitConfig};

#[derive(Parser)]
#[command(
    name = "extrofitting",
    version,
    about = "Enrich pretrained word embeddings with semantic lexicons and evaluate them"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand, transfer synonym knowledge and LDA-project an embedding file
    Extrofit(ExtrofitArgs),
    /// Pull synonym vectors together with the iterative online update
    Retrofit(RetrofitArgs),
    /// Score embeddings on word-similarity benchmarks (Spearman)
    Eval(EvalArgs),
    /// Print the nearest words of a cue word by cosine similarity
    Neighbors(NeighborsArgs),
}

/// Fixed decimal places, or `full` for an exact round-trip representation.
#[derive(Debug, Clone, Copy)]
struct PrecisionArg(Precision);

impl FromStr for PrecisionArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "full" {
            return Ok(Self(Precision::Full));
        }
        match s.parse::<u32>() {
            Ok(p) if p >= 1 => Ok(Self(Precision::Fixed(p))),
            _ => Err(format!("precision must be a positive integer or \"full\", got {s:?}")),
        }
    }
}

fn parse_shrinkage(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(v),
        _ => Err(format!("shrinkage must be in [0, 1], got {s:?}")),
    }
}

fn parse_alpha(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("alpha must be a positive number, got {s:?}")),
    }
}

#[derive(Args)]
struct ExtrofitArgs {
    /// Pretrained embeddings in text format (.gz accepted)
    #[arg(long)]
    input: PathBuf,
    /// Semantic lexicon file (headword synonym_1 synonym_2 ...)
    #[arg(long)]
    lexicon: PathBuf,
    /// Where to write the enriched embeddings
    #[arg(long)]
    output: PathBuf,
    /// Number of expanded dimensions
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    expand: u64,
    /// Output dimension (defaults to the input dimension)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    components: Option<u64>,
    /// Within-class shrinkage in [0, 1]
    #[arg(long, default_value_t = 1e-4, value_parser = parse_shrinkage)]
    shrinkage: f64,
    /// Between-class scatter weighting: class-size or unweighted
    #[arg(long, default_value = "class-size")]
    weighting: Weighting,
    /// Lowercase tokens in the embeddings and the lexicon
    #[arg(long)]
    lowercase: bool,
    /// Output decimals, or "full"
    #[arg(long, default_value = "6")]
    precision: PrecisionArg,
    /// Append the run manifest to this file as one JSON line
    #[arg(long)]
    manifest_out: Option<PathBuf>,
}

#[derive(Args)]
struct RetrofitArgs {
    /// Pretrained embeddings in text format (.gz accepted)
    #[arg(long)]
    input: PathBuf,
    /// Semantic lexicon file (headword synonym_1 synonym_2 ...)
    #[arg(long)]
    lexicon: PathBuf,
    /// Where to write the retrofitted embeddings
    #[arg(long)]
    output: PathBuf,
    /// Number of full update sweeps
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    iters: u64,
    /// Anchor weight toward the original vectors
    #[arg(long, default_value_t = 1.0, value_parser = parse_alpha)]
    alpha: f64,
    /// Neighbor weighting: inverse-degree or constant
    #[arg(long, default_value = "inverse-degree")]
    beta: BetaMode,
    /// Lowercase tokens in the embeddings and the lexicon
    #[arg(long)]
    lowercase: bool,
    /// Output decimals, or "full"
    #[arg(long, default_value = "6")]
    precision: PrecisionArg,
    /// Append the run manifest to this file as one JSON line
    #[arg(long)]
    manifest_out: Option<PathBuf>,
}

/// `TAG=PATH[,PATH...]`: a dataset format plus one or more files evaluated
/// together.
#[derive(Debug, Clone)]
struct DatasetSpec {
    format: DatasetFormat,
    paths: Vec<PathBuf>,
}

impl FromStr for DatasetSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (tag, paths) = s
            .split_once('=')
            .ok_or_else(|| format!("expected TAG=PATH[,PATH...], got {s:?}"))?;
        let format = DatasetFormat::from_str(tag)?;
        let paths: Vec<PathBuf> = paths
            .split(',')
            .filter(|p| !p.is_empty())
            .map(PathBuf::from)
            .collect();
        if paths.is_empty() {
            return Err(format!("no path given for dataset {tag:?}"));
        }
        Ok(Self { format, paths })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Tsv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tsv" => Ok(Self::Tsv),
            "table" => Ok(Self::Table),
            other => Err(format!("unknown output format {other:?} (expected tsv or table)")),
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    /// Embeddings to evaluate (.gz accepted)
    #[arg(long)]
    vectors: PathBuf,
    /// Dataset as TAG=PATH[,PATH...]; repeat for more datasets
    #[arg(long = "dataset", required = true)]
    datasets: Vec<DatasetSpec>,
    /// Lowercase embedding tokens and dataset words
    #[arg(long)]
    lowercase: bool,
    /// Report layout on stdout
    #[arg(long, default_value = "tsv")]
    format: OutputFormat,
    /// Append the run manifest to this file as one JSON line
    #[arg(long)]
    manifest_out: Option<PathBuf>,
}

#[derive(Args)]
struct NeighborsArgs {
    /// Embeddings to search (.gz accepted)
    #[arg(long)]
    vectors: PathBuf,
    /// Cue word
    #[arg(long)]
    word: String,
    /// Number of neighbors to print
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    top: u64,
    /// Lowercase embedding tokens
    #[arg(long)]
    lowercase: bool,
    /// Append the run manifest to this file as one JSON line
    #[arg(long)]
    manifest_out: Option<PathBuf>,
}

/// Parses arguments from the process environment and runs one command.
/// Returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Same as [`run`] but with explicit arguments (used by tests).
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };

    let started = Instant::now();
    let (mut manifest, manifest_out) = match &cli.command {
        Command::Extrofit(a) => (RunManifest::new("extrofit"), a.manifest_out.clone()),
        Command::Retrofit(a) => (RunManifest::new("retrofit"), a.manifest_out.clone()),
        Command::Eval(a) => (RunManifest::new("eval"), a.manifest_out.clone()),
        Command::Neighbors(a) => (RunManifest::new("neighbors"), a.manifest_out.clone()),
    };
    let outcome = match &cli.command {
        Command::Extrofit(a) => cmd_extrofit(a, &mut manifest),
        Command::Retrofit(a) => cmd_retrofit(a, &mut manifest),
        Command::Eval(a) => cmd_eval(a, &mut manifest),
        Command::Neighbors(a) => cmd_neighbors(a, &mut manifest),
    };
    if let Err(err) = outcome {
        eprintln!("error: {err}");
        return 1;
    }
    manifest.duration_ms = started.elapsed().as_millis();
    eprintln!("{}", manifest.to_json());
    if let Some(path) = manifest_out {
        if let Err(err) = manifest.append_to(&path) {
            eprintln!("error: cannot append manifest to {}: {err}", path.display());
            return 1;
        }
    }
    0
}

fn load_embeddings(path: &Path, lowercase: bool, manifest: &mut RunManifest) -> Result<TextLoad> {
    manifest.input(path)?;
    let options = LoadOptions { lowercase, ..Default::default() };
    let loaded = load_text_embeddings(open_text(path)?, &options)?;
    if loaded.duplicates_dropped > 0 || loaded.malformed_dropped > 0 {
        eprintln!(
            "warning: {}: kept first of {} duplicate tokens, dropped {} malformed lines",
            path.display(),
            loaded.duplicates_dropped,
            loaded.malformed_dropped
        );
    }
    manifest.count("vocab", loaded.matrix.len() as u64);
    manifest.count("dim", loaded.matrix.dim() as u64);
    manifest.count("duplicates_dropped", loaded.duplicates_dropped as u64);
    manifest.count("malformed_dropped", loaded.malformed_dropped as u64);
    Ok(loaded)
}

fn load_graph(
    path: &Path,
    matrix: &EmbeddingMatrix,
    lowercase: bool,
    manifest: &mut RunManifest,
) -> Result<LexiconLoad> {
    manifest.input(path)?;
    let options = LexiconOptions { lowercase };
    let lexicon = load_lexicon(open_text(path)?, matrix.vocab(), &options)?;
    manifest.count("edges_kept", lexicon.graph.edge_count() as u64);
    manifest.count("edges_dropped_oov", lexicon.edges_dropped_oov as u64);
    Ok(lexicon)
}

fn write_output(m: &EmbeddingMatrix, path: &Path, precision: Precision) -> Result<()> {
    let file = std::fs::File::create(path)?;
    save_text_embeddings(m, file, precision)
}

fn cmd_extrofit(args: &ExtrofitArgs, manifest: &mut RunManifest) -> Result<()> {
    manifest.option("input", args.input.display());
    manifest.option("lexicon", args.lexicon.display());
    manifest.option("output", args.output.display());
    manifest.option("expand", args.expand);
    manifest.option("shrinkage", args.shrinkage);
    manifest.option("weighting", format!("{:?}", args.weighting));
    manifest.option("lowercase", args.lowercase);

    let loaded = load_embeddings(&args.input, args.lowercase, manifest)?;
    let lexicon = load_graph(&args.lexicon, &loaded.matrix, args.lowercase, manifest)?;
    let classes = build_classes(&lexicon.graph, loaded.matrix.vocab())?;
    manifest.count("n_classes", classes.n_classes() as u64);
    manifest.count(
        "n_nonsingleton_classes",
        classes.n_nonsingleton_classes() as u64,
    );
    manifest.count(
        "n_words_extrofitted",
        classes.n_words_in_nonsingleton_classes() as u64,
    );

    let cfg = ExtrofitConfig {
        n_expand: args.expand as usize,
        out_dim: args.components.map(|c| c as usize),
        shrinkage: args.shrinkage,
        weighting: args.weighting,
    };
    manifest.option("components", cfg.out_dim.unwrap_or(loaded.matrix.dim()));
    let enriched = extrofit(&loaded.matrix, &classes, &cfg)?;
    manifest.count("out_dim", enriched.matrix.dim() as u64);
    write_output(&enriched.matrix, &args.output, args.precision.0)?;
    Ok(())
}

fn cmd_retrofit(args: &RetrofitArgs, manifest: &mut RunManifest) -> Result<()> {
    manifest.option("input", args.input.display());
    manifest.option("lexicon", args.lexicon.display());
    manifest.option("output", args.output.display());
    manifest.option("iters", args.iters);
    manifest.option("alpha", args.alpha);
    manifest.option("beta", format!("{:?}", args.beta));
    manifest.option("lowercase", args.lowercase);

    let loaded = load_embeddings(&args.input, args.lowercase, manifest)?;
    let lexicon = load_graph(&args.lexicon, &loaded.matrix, args.lowercase, manifest)?;
    let cfg = RetrofitConfig {
        alpha: args.alpha,
        beta_mode: args.beta,
        iterations: args.iters as usize,
        convergence_eps: None,
    };
    let fitted = retrofit(&loaded.matrix, &lexicon.graph, &cfg)?;
    write_output(&fitted, &args.output, args.precision.0)?;
    Ok(())
}

fn cmd_eval(args: &EvalArgs, manifest: &mut RunManifest) -> Result<()> {
    manifest.option("vectors", args.vectors.display());
    manifest.option("lowercase", args.lowercase);
    let loaded = load_embeddings(&args.vectors, args.lowercase, manifest)?;
    let options = DatasetOptions { lowercase: args.lowercase };

    if args.format == OutputFormat::Table {
        println!("{:<12} {:>9} {:>9} {:>9}", "dataset", "spearman", "scored", "oov");
    }
    for spec in &args.datasets {
        let mut merged: Option<crate::eval::SimilarityDataset> = None;
        for path in &spec.paths {
            manifest.input(path)?;
            let part = load_dataset(open_text(path)?, spec.format, &options)?;
            if part.range_warnings > 0 {
                eprintln!(
                    "warning: {}: {} scores outside the {} range",
                    path.display(),
                    part.range_warnings,
                    spec.format.tag()
                );
            }
            match merged.as_mut() {
                Some(d) => d.extend(part.dataset),
                None => merged = Some(part.dataset),
            }
        }
        let dataset = merged.expect("dataset spec has at least one path");
        manifest.count(&format!("pairs_{}", dataset.name), dataset.pairs.len() as u64);
        match evaluate(&loaded.matrix, &dataset) {
            Ok(report) => match args.format {
                OutputFormat::Tsv => println!(
                    "{}\t{:.4}\t{}\t{}",
                    report.dataset, report.spearman, report.n_scored, report.n_skipped_oov
                ),
                OutputFormat::Table => println!(
                    "{:<12} {:>9.4} {:>9} {:>9}",
                    report.dataset, report.spearman, report.n_scored, report.n_skipped_oov
                ),
            },
            // A dataset that cannot be scored must not abort the others.
            Err(err) => {
                eprintln!("eval: {}: {err}", dataset.name);
                match args.format {
                    OutputFormat::Tsv => println!("{}\tNA\tNA\tNA", dataset.name),
                    OutputFormat::Table => {
                        println!("{:<12} {:>9} {:>9} {:>9}", dataset.name, "NA", "NA", "NA")
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_neighbors(args: &NeighborsArgs, manifest: &mut RunManifest) -> Result<()> {
    manifest.option("vectors", args.vectors.display());
    manifest.option("word", &args.word);
    manifest.option("top", args.top);
    let loaded = load_embeddings(&args.vectors, args.lowercase, manifest)?;
    let neighbors = nearest_neighbors(&loaded.matrix, &args.word, args.top as usize)?;
    if neighbors.zero_norm_excluded > 0 {
        eprintln!(
            "warning: excluded {} zero-norm vectors from the search",
            neighbors.zero_norm_excluded
        );
    }
    for (rank, (token, score)) in neighbors.items.iter().enumerate() {
        println!("{}\t{}\t{:.4}", rank + 1, token, score);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dataset_spec_parsing() {
        let spec: DatasetSpec = "men3k=a.txt,b.txt".parse().unwrap();
        assert_eq!(spec.format, DatasetFormat::Men3k);
        assert_eq!(spec.paths.len(), 2);
        assert!("bogus=a.txt".parse::<DatasetSpec>().is_err());
        assert!("men3k".parse::<DatasetSpec>().is_err());
        assert!("men3k=".parse::<DatasetSpec>().is_err());
    }

    #[test]
    fn precision_arg_parsing() {
        assert!(matches!("6".parse::<PrecisionArg>().unwrap().0, Precision::Fixed(6)));
        assert!(matches!("full".parse::<PrecisionArg>().unwrap().0, Precision::Full));
        assert!("0".parse::<PrecisionArg>().is_err());
        assert!("-1".parse::<PrecisionArg>().is_err());
    }
}
