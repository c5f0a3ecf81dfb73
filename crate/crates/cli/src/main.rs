mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Agent-Event-Target networks from dependency-parsed text.
#[derive(Debug, Parser)]
#[command(name = "teanet", version, about)]
pub struct Cli {
    /// Relation schema: `clear`, `ud`, or a path to a raw<TAB>canonical mapping.
    #[arg(long, global = true, default_value = "clear")]
    pub schema: String,
    /// Worker threads for document-level parallelism.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract triples from CoNLL-U files into an SVO table.
    Extract(ExtractArgs),
    /// Build the network from an SVO table and export it.
    Graph(GraphArgs),
    /// Node metrics (K, K*, F, RI) or normalized edge weights.
    Metrics(MetricsArgs),
    /// Compare two SVO tables around an anchor node.
    Compare(CompareArgs),
    /// Emotion z-scores of the words in an SVO table.
    Emotions(EmotionArgs),
    /// Score an extractor against gold triples.
    Validate(ValidateArgs),
    /// Concatenate SVO tables, keeping triple ids unique.
    Merge(MergeArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when omitted or `-`.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// CoNLL-U files; each file's stem is the document id unless it declares its own.
    #[arg(long, short, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    /// `tea` or the simpler `baseline`.
    #[arg(long, default_value = "tea")]
    pub extractor: String,
    /// Also write the hypergraph (one hyperedge per triple) to this file.
    #[arg(long)]
    pub hypergraph: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    #[arg(long)]
    pub agent: Option<String>,
    /// Matches the event head lemma or its full phrase.
    #[arg(long)]
    pub event: Option<String>,
    #[arg(long)]
    pub target: Option<String>,
    /// `active`, `passive` or `any`.
    #[arg(long, default_value = "any")]
    pub voice: String,
    /// Drop agentless passives.
    #[arg(long)]
    pub exclude_approx: bool,
    /// Key Event nodes by `head` lemma or full `phrase`.
    #[arg(long, default_value = "head")]
    pub event_key: String,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// SVO table (CSV).
    #[arg(long, short)]
    pub input: PathBuf,
    /// `graphml`, `json`, `edgelist` or `hypergraph`.
    #[arg(long, default_value = "graphml")]
    pub format: String,
    /// Valence lexicon (lemma<TAB>score); the bundled VADER list when omitted.
    #[arg(long)]
    pub valence: Option<PathBuf>,
    /// Synonym groups, one per line; the bundled sample when omitted.
    #[arg(long)]
    pub synonyms: Option<PathBuf>,
    /// Build without synonym edges.
    #[arg(long, conflicts_with = "synonyms")]
    pub no_synonyms: bool,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// SVO table (CSV).
    #[arg(long, short)]
    pub input: PathBuf,
    /// Node role for the node table; all three when omitted.
    #[arg(long)]
    pub role: Option<String>,
    /// Print normalized edge weights instead of node metrics.
    #[arg(long)]
    pub edges: bool,
    /// Sub-corpus name written in the edge table.
    #[arg(long, default_value = "all")]
    pub subcorpus: String,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// First SVO table.
    #[arg(long)]
    pub a: PathBuf,
    /// Second SVO table.
    #[arg(long)]
    pub b: PathBuf,
    /// Anchor node as `role:label`, for example `agent:i`.
    #[arg(long)]
    pub anchor: String,
    /// Key Event nodes by `head` lemma or full `phrase`.
    #[arg(long, default_value = "head")]
    pub event_key: String,
    /// Scalar norms (lemma<TAB>score) for a rank-sum comparison.
    #[arg(long)]
    pub norms: Option<PathBuf>,
    /// Role whose labels are scored with `--norms`.
    #[arg(long, default_value = "agent")]
    pub norm_role: String,
    /// `split` scores each word of a multiword label, `mean` averages them.
    #[arg(long, default_value = "split")]
    pub norm_mode: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct EmotionArgs {
    /// SVO table (CSV).
    #[arg(long, short)]
    pub input: PathBuf,
    /// NRC-format emotion lexicon; the bundled sample when omitted.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Roles whose labels are counted; all three when omitted.
    #[arg(long, num_args = 1..)]
    pub role: Vec<String>,
    /// Only count triples containing this node (`role:label`).
    #[arg(long)]
    pub anchor: Option<String>,
    /// Baseline sample count.
    #[arg(long, default_value_t = teanet::analytics::DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Key Event nodes by `head` lemma or full `phrase`.
    #[arg(long, default_value = "head")]
    pub event_key: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Benchmark parses; the bundled benchmark when omitted.
    #[arg(long, requires = "gold")]
    pub conllu: Option<PathBuf>,
    /// Gold triples (TSV).
    #[arg(long, requires = "conllu")]
    pub gold: Option<PathBuf>,
    /// `tea`, `baseline` or `both`.
    #[arg(long, default_value = "both")]
    pub extractor: String,
    /// Emit JSON instead of tables.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    /// SVO tables, in order.
    #[arg(long, short, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("teanet: {e}");
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
    }
}
